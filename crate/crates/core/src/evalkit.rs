//! Positional word-level scoring of predicted target strings.
//!
//! Both strings are stripped of record separators and split on whitespace.
//! The word at position `i` of the target is compared with the word at the
//! same position of the prediction:
//!
//! | target | prediction | outcome            |
//! |--------|------------|--------------------|
//! | word   | match      | true positive      |
//! | word   | mismatch   | false positive     |
//! | word   | absent     | false negative     |
//! | absent | word       | false positive     |
//!
//! A pair of empty strings counts as one true negative.

use std::collections::HashMap;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::corpus::GoldExample;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MatchMode {
    Exact,
    Fuzzy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub mode: MatchMode,
    /// Inclusive similarity threshold for fuzzy mode, in `(0, 1]`.
    pub fuzzy_threshold: f64,
    pub strip_separators: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            mode: MatchMode::Exact,
            fuzzy_threshold: 0.90,
            strip_separators: true,
        }
    }
}

impl EvalConfig {
    pub fn exact() -> Self {
        Self::default()
    }

    pub fn fuzzy(threshold: f64) -> Self {
        EvalConfig {
            mode: MatchMode::Fuzzy,
            fuzzy_threshold: threshold,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fuzzy_threshold > 0.0 && self.fuzzy_threshold <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "fuzzy threshold must lie in (0, 1], got {}",
                self.fuzzy_threshold
            )));
        }
        Ok(())
    }
}

/// Slack for comparing a similarity ratio against its threshold, so that
/// e.g. `1 - 1/10` meets `0.90`.
const THRESHOLD_EPSILON: f64 = 1e-9;

/// `1 - d(a, b) / max(|a|, |b|)` over characters; `1.0` for two empty strings.
pub fn similarity(a: &str, b: &str) -> f64 {
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return 1.0;
    }
    1.0 - strsim::levenshtein(a, b) as f64 / longest as f64
}

/// Case-folded word comparison under `cfg`.
pub fn word_match(a: &str, b: &str, cfg: &EvalConfig) -> bool {
    let a = a.trim().to_lowercase();
    let b = b.trim().to_lowercase();
    match cfg.mode {
        MatchMode::Exact => a == b,
        MatchMode::Fuzzy => similarity(&a, &b) + THRESHOLD_EPSILON >= cfg.fuzzy_threshold,
    }
}

/// Outcome counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl Counts {
    pub fn new(tp: u64, tn: u64, fp: u64, fn_: u64) -> Self {
        Counts { tp, tn, fp, fn_ }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.tn + self.fp + self.fn_
    }
}

impl Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts::new(
            self.tp + o.tp,
            self.tn + o.tn,
            self.fp + o.fp,
            self.fn_ + o.fn_,
        )
    }
}

impl AddAssign for Counts {
    fn add_assign(&mut self, o: Counts) {
        *self = *self + o;
    }
}

impl std::iter::Sum for Counts {
    fn sum<I: Iterator<Item = Counts>>(iter: I) -> Counts {
        iter.fold(Counts::default(), Add::add)
    }
}

/// Word sequence used for positional comparison.
pub fn tokenize(s: &str, strip_separators: bool) -> Vec<String> {
    let cleaned: String = if strip_separators {
        s.chars().filter(|&c| c != '|' && c != ',').collect()
    } else {
        s.to_string()
    };
    cleaned.split_whitespace().map(str::to_string).collect()
}

pub fn score_example(target: &str, predicted: &str, cfg: &EvalConfig) -> Counts {
    let t = tokenize(target, cfg.strip_separators);
    let p = tokenize(predicted, cfg.strip_separators);
    if t.is_empty() && p.is_empty() {
        return Counts::new(0, 1, 0, 0);
    }
    let mut c = Counts::default();
    for i in 0..t.len().max(p.len()) {
        match (t.get(i), p.get(i)) {
            (Some(a), Some(b)) if word_match(a, b, cfg) => c.tp += 1,
            (Some(_), Some(_)) => c.fp += 1,
            (Some(_), None) => c.fn_ += 1,
            (None, Some(_)) => c.fp += 1,
            (None, None) => unreachable!(),
        }
    }
    c
}

/// Counters and the five derived metrics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub specificity: f64,
    pub f1: f64,
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Harmonic mean of precision and recall; `0` when both are `0`.
pub fn f1_score(precision: f64, recall: f64) -> f64 {
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

impl EvalReport {
    pub fn from_counts(c: Counts) -> Self {
        let precision = ratio(c.tp, c.tp + c.fp);
        let recall = ratio(c.tp, c.tp + c.fn_);
        EvalReport {
            tp: c.tp,
            tn: c.tn,
            fp: c.fp,
            fn_: c.fn_,
            accuracy: ratio(c.tp + c.tn, c.total()),
            precision,
            recall,
            specificity: ratio(c.tn, c.tn + c.fp),
            f1: f1_score(precision, recall),
        }
    }

    pub fn counts(&self) -> Counts {
        Counts::new(self.tp, self.tn, self.fp, self.fn_)
    }

    /// The report with every metric rounded to four decimals.
    pub fn rounded(&self) -> Self {
        let r = |x: f64| (x * 1e4).round() / 1e4;
        EvalReport {
            accuracy: r(self.accuracy),
            precision: r(self.precision),
            recall: r(self.recall),
            specificity: r(self.specificity),
            f1: r(self.f1),
            ..*self
        }
    }

    /// Pretty JSON with metrics at four-decimal precision.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.rounded()).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn aggregate(scores: impl IntoIterator<Item = Counts>) -> EvalReport {
    EvalReport::from_counts(scores.into_iter().sum())
}

/// Per-example counters for a corpus, in gold order.
pub fn score_corpus(
    gold: &[GoldExample],
    predictions: &HashMap<String, String>,
    cfg: &EvalConfig,
) -> Result<Vec<(String, Counts)>> {
    cfg.validate()?;
    let missing: Vec<String> = gold
        .iter()
        .filter(|g| !predictions.contains_key(&g.id))
        .map(|g| g.id.clone())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingPredictions(missing));
    }
    Ok(gold
        .iter()
        .map(|g| {
            (
                g.id.clone(),
                score_example(&g.target_text, &predictions[&g.id], cfg),
            )
        })
        .collect())
}

pub fn evaluate_corpus(
    gold: &[GoldExample],
    predictions: &HashMap<String, String>,
    cfg: &EvalConfig,
) -> Result<EvalReport> {
    Ok(aggregate(
        score_corpus(gold, predictions, cfg)?
            .into_iter()
            .map(|(_, c)| c),
    ))
}
