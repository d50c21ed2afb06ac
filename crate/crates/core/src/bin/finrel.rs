fn main() {
    std::process::exit(finrel::cli::main_with_args(std::env::args_os()));
}
