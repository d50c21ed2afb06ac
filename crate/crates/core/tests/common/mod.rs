#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use finrel::corpus::{self, AnnotatedDocument, GoldExample};
use finrel::records::{RelationRecord, VariableName};
use finrel::semvec::{self, EmbeddingTable};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
}

pub fn fixture_path() -> PathBuf {
    data_dir().join("fixtures.jsonl")
}

pub fn expected_path() -> PathBuf {
    data_dir().join("fixtures_expected.jsonl")
}

pub fn toy_path() -> PathBuf {
    data_dir().join("toy_embeddings.txt")
}

pub fn fixture_docs() -> Vec<AnnotatedDocument> {
    corpus::load_documents(fixture_path()).expect("fixture corpus loads")
}

pub fn expected() -> HashMap<String, String> {
    corpus::load_gold(expected_path())
        .expect("expected records load")
        .into_iter()
        .map(|g| (g.id, g.target_text))
        .collect()
}

pub fn toy_table() -> EmbeddingTable {
    semvec::load_embeddings(toy_path()).expect("toy table loads")
}

/// Plain O(nm) edit distance over chars.
pub fn levenshtein_oracle(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, cell) in d[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let sub = d[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

/// Match decision computed in integers: `1 - d/L >= t` iff `(L - d) * 1000 >= t1000 * L`.
pub fn fuzzy_oracle(a: &str, b: &str, threshold_per_mille: usize) -> bool {
    let (a, b) = (a.to_lowercase(), b.to_lowercase());
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return true;
    }
    let d = levenshtein_oracle(&a, &b);
    (longest - d) * 1000 >= threshold_per_mille * longest
}

/// (tp, tn, fp, fn) computed by walking both word lists by hand.
pub fn reference_counts(target: &str, predicted: &str) -> (u64, u64, u64, u64) {
    fn words(s: &str) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = String::new();
        for c in s.chars() {
            if c == '|' || c == ',' {
                continue;
            }
            if c.is_whitespace() {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            } else {
                cur.push(c);
            }
        }
        if !cur.is_empty() {
            out.push(cur);
        }
        out
    }
    let t = words(target);
    let p = words(predicted);
    if t.is_empty() && p.is_empty() {
        return (0, 1, 0, 0);
    }
    let (mut tp, mut fp, mut fneg) = (0, 0, 0);
    let common = t.len().min(p.len());
    for k in 0..common {
        if t[k].to_lowercase() == p[k].to_lowercase() {
            tp += 1;
        } else {
            fp += 1;
        }
    }
    if t.len() > common {
        fneg += (t.len() - common) as u64;
    }
    if p.len() > common {
        fp += (p.len() - common) as u64;
    }
    (tp, 0, fp, fneg)
}

const COMPANIES: [&str; 8] = [
    "Jumia",
    "Konga",
    "Paystack",
    "Andela",
    "Kuda",
    "Opay",
    "Chipper Cash",
    "MTN",
];
const VALUES: [&str; 8] = [
    "$1 million",
    "€41 million",
    "$9.4 million",
    "Nigeria",
    "Kenya",
    "Jane Doe",
    "$250000",
    "2 million users",
];
const DATES: [&str; 7] = [
    "2020",
    "Q4 2020",
    "March 3, 2021",
    "last year",
    "unknown-date",
    "2018",
    "",
];

pub fn random_record(rng: &mut impl Rng) -> RelationRecord {
    let name = *VariableName::ALL.choose(rng).unwrap();
    RelationRecord::new(
        COMPANIES.choose(rng).unwrap(),
        name,
        VALUES.choose(rng).unwrap(),
        DATES.choose(rng).unwrap(),
    )
    .unwrap()
}

pub fn random_records(rng: &mut impl Rng, max: usize) -> Vec<RelationRecord> {
    let n = rng.gen_range(0..=max);
    (0..n).map(|_| random_record(rng)).collect()
}

/// A gold corpus with some empty targets, some exact-duplicate information
/// and some examples whose records are a subset of another's.
pub fn random_gold(rng: &mut impl Rng) -> Vec<GoldExample> {
    if rng.gen_bool(0.2) {
        return saturated_gold(rng);
    }
    let n = rng.gen_range(5..60);
    let mut out: Vec<GoldExample> = Vec::with_capacity(n);
    for i in 0..n {
        let target = if !out.is_empty() && rng.gen_bool(0.25) {
            let src = &out[rng.gen_range(0..out.len())];
            let mut recs = src.records().unwrap();
            if rng.gen_bool(0.5) {
                recs.reverse();
                finrel::records::serialize(&recs).to_uppercase()
            } else if !recs.is_empty() && rng.gen_bool(0.5) {
                recs.truncate(rng.gen_range(0..recs.len()));
                finrel::records::serialize(&recs)
            } else {
                recs.push(random_record(rng));
                finrel::records::serialize(&recs)
            }
        } else if rng.gen_bool(0.3) {
            String::new()
        } else {
            let recs: Vec<_> = (0..rng.gen_range(1..4))
                .map(|_| random_record(rng))
                .collect();
            finrel::records::serialize(&recs)
        };
        out.push(GoldExample::new(
            &format!("g{i}"),
            &format!("paragraph {i}"),
            &target,
        ));
    }
    out
}

/// Many copies of one record list plus subsets of it and a few empty
/// examples; the copies outnumber the test request, so shrinkage is forced.
fn saturated_gold(rng: &mut impl Rng) -> Vec<GoldExample> {
    let base: Vec<RelationRecord> = (0..rng.gen_range(2..5))
        .map(|_| random_record(rng))
        .collect();
    let copies = rng.gen_range(6..20);
    let mut targets = vec![finrel::records::serialize(&base); copies];
    for _ in 0..rng.gen_range(2..10) {
        let mut sub = base.clone();
        sub.shuffle(rng);
        sub.truncate(rng.gen_range(1..base.len()));
        targets.push(finrel::records::serialize(&sub));
    }
    for _ in 0..rng.gen_range(0..3) {
        targets.push(String::new());
    }
    targets.shuffle(rng);
    targets
        .iter()
        .enumerate()
        .map(|(i, t)| GoldExample::new(&format!("s{i}"), &format!("paragraph {i}"), t))
        .collect()
}

/// Sorted normalized keys, computed without the crate's helper.
pub fn info(ex: &GoldExample) -> Vec<Vec<String>> {
    let mut keys: Vec<Vec<String>> = ex
        .records()
        .unwrap()
        .iter()
        .map(|r| {
            [
                r.company().to_string(),
                r.variable_name().to_string(),
                r.variable_value().to_string(),
                r.variable_date().to_string(),
            ]
            .iter()
            .map(|f| {
                f.split_whitespace()
                    .collect::<Vec<_>>()
                    .join(" ")
                    .to_lowercase()
            })
            .collect()
        })
        .collect();
    keys.sort();
    keys
}

/// `small` is a sub-multiset of `big`.
pub fn contains(big: &[Vec<String>], small: &[Vec<String>]) -> bool {
    let mut pool: Vec<&Vec<String>> = big.iter().collect();
    small
        .iter()
        .all(|s| match pool.iter().position(|b| *b == s) {
            Some(k) => {
                pool.swap_remove(k);
                true
            }
            None => false,
        })
}
