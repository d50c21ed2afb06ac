//! Static word vectors and the lexicon-similarity classifiers that label money
//! phrases (revenue / investment) and person mentions (founder / other).

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Case-folded word → dense vector.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dimension: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    /// Builds a table from in-memory entries. Later duplicates are ignored.
    pub fn from_entries<S: AsRef<str>>(
        dimension: usize,
        entries: impl IntoIterator<Item = (S, Vec<f64>)>,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidArgument(
                "embedding dimension must be positive".into(),
            ));
        }
        let mut vectors = HashMap::new();
        for (word, v) in entries {
            let word = word.as_ref().to_lowercase();
            if v.len() != dimension {
                return Err(Error::InvalidArgument(format!(
                    "`{word}` has {} components, expected {dimension}",
                    v.len()
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "`{word}` has a non-finite component"
                )));
            }
            vectors.entry(word).or_insert(v);
        }
        Ok(EmbeddingTable { dimension, vectors })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.vectors.get(&word.to_lowercase()).map(Vec::as_slice)
    }

    /// Every vector multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        EmbeddingTable {
            dimension: self.dimension,
            vectors: self
                .vectors
                .iter()
                .map(|(w, v)| (w.clone(), v.iter().map(|x| x * factor).collect()))
                .collect(),
        }
    }

    /// Mean of the vectors of the phrase's in-vocabulary whitespace tokens.
    pub fn phrase_vector(&self, phrase: &str) -> Option<Vec<f64>> {
        let mut sum = vec![0.0; self.dimension];
        let mut found = 0usize;
        for word in phrase.split_whitespace() {
            if let Some(v) = self.get(word) {
                for (s, x) in sum.iter_mut().zip(v) {
                    *s += x;
                }
                found += 1;
            }
        }
        if found == 0 {
            return None;
        }
        for s in &mut sum {
            *s /= found as f64;
        }
        Some(sum)
    }
}

/// Parses a whitespace-separated vector file: `word x1 .. xD` per line, with
/// an optional leading `V D` header line.
pub fn load_embeddings(path: impl AsRef<Path>) -> Result<EmbeddingTable> {
    let path = path.as_ref();
    let contents = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_embeddings(&contents, path)
}

fn parse_embeddings(contents: &str, path: &Path) -> Result<EmbeddingTable> {
    let mut lines = contents
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
        .peekable();

    let mut dimension: Option<usize> = None;
    if let Some(&(_, first)) = lines.peek() {
        let fields: Vec<&str> = first.split_whitespace().collect();
        if let [v, d] = fields[..] {
            if let (Ok(_), Ok(d)) = (v.parse::<usize>(), d.parse::<usize>()) {
                dimension = Some(d);
                lines.next();
            }
        }
    }

    let mut vectors: HashMap<String, Vec<f64>> = HashMap::new();
    for (line_no, line) in lines {
        let mut fields = line.split_whitespace();
        let word = fields.next().expect("non-blank line").to_lowercase();
        let values = fields
            .map(|f| {
                f.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::parse(path, line_no, format!("invalid component `{f}`")))
            })
            .collect::<Result<Vec<f64>>>()?;
        let d = *dimension.get_or_insert(values.len());
        if values.len() != d || d == 0 {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected {d} components, found {}", values.len()),
            ));
        }
        if vectors.contains_key(&word) {
            log::warn!(
                "{}:{line_no}: duplicate word `{word}` ignored",
                path.display()
            );
            continue;
        }
        vectors.insert(word, values);
    }

    match dimension {
        Some(d) if d > 0 && !vectors.is_empty() => Ok(EmbeddingTable {
            dimension: d,
            vectors,
        }),
        _ => Err(Error::parse(
            path,
            1,
            "no vectors: dimension cannot be determined",
        )),
    }
}

/// Cosine similarity; `0.0` when either vector is all zeros.
pub fn cosine(u: &[f64], v: &[f64]) -> f64 {
    assert_eq!(
        u.len(),
        v.len(),
        "cosine of vectors with different dimensions"
    );
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv = v.iter().map(|b| b * b).sum::<f64>().sqrt();
    if nu == 0.0 || nv == 0.0 {
        log::warn!("cosine similarity of a zero vector taken as 0");
        return 0.0;
    }
    (dot / (nu * nv)).clamp(-1.0, 1.0)
}

fn default_revenue_words() -> Vec<String> {
    [
        "revenue", "income", "earnings", "proceeds", "returns", "made",
    ]
    .map(String::from)
    .to_vec()
}

fn default_investment_words() -> Vec<String> {
    ["raised", "investment", "received", "equity"]
        .map(String::from)
        .to_vec()
}

fn default_founder_words() -> Vec<String> {
    [
        "founder",
        "co-founder",
        "cofounder",
        "founded",
        "started",
        "created",
    ]
    .map(String::from)
    .to_vec()
}

fn default_threshold() -> f64 {
    0.5
}

/// Word lists and decision threshold for the similarity classifiers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LexiconConfig {
    #[serde(default = "default_revenue_words")]
    pub revenue_words: Vec<String>,
    #[serde(default = "default_investment_words")]
    pub investment_words: Vec<String>,
    #[serde(default = "default_founder_words")]
    pub founder_words: Vec<String>,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
}

impl Default for LexiconConfig {
    fn default() -> Self {
        LexiconConfig {
            revenue_words: default_revenue_words(),
            investment_words: default_investment_words(),
            founder_words: default_founder_words(),
            threshold: default_threshold(),
        }
    }
}

impl LexiconConfig {
    pub fn validate(&self) -> Result<()> {
        if self.revenue_words.is_empty()
            || self.investment_words.is_empty()
            || self.founder_words.is_empty()
        {
            return Err(Error::Lexicon("word lists must be non-empty".into()));
        }
        let revenue: Vec<String> = self
            .revenue_words
            .iter()
            .map(|w| w.to_lowercase())
            .collect();
        if let Some(w) = self
            .investment_words
            .iter()
            .find(|w| revenue.contains(&w.to_lowercase()))
        {
            return Err(Error::Lexicon(format!(
                "`{w}` is both a revenue and an investment word"
            )));
        }
        if !(0.0..=1.0).contains(&self.threshold) {
            return Err(Error::Lexicon(format!(
                "threshold {} outside [0, 1]",
                self.threshold
            )));
        }
        Ok(())
    }
}

/// Reads a JSON lexicon; omitted fields keep their defaults.
pub fn load_lexicon(path: impl AsRef<Path>) -> Result<LexiconConfig> {
    let path = path.as_ref();
    let contents = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let lex: LexiconConfig =
        serde_json::from_str(&contents).map_err(|e| Error::parse(path, e.line(), e.to_string()))?;
    lex.validate()?;
    Ok(lex)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoneyClass {
    Revenue,
    Investment,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PersonClass {
    Founder,
    Other,
}

/// The lexicon word most similar to a phrase.
#[derive(Debug, Clone, PartialEq)]
pub struct BestMatch {
    pub word: String,
    pub similarity: f64,
}

fn best_over<'w>(
    table: &EmbeddingTable,
    phrase_vec: &[f64],
    words: impl IntoIterator<Item = &'w String>,
) -> Option<BestMatch> {
    let mut best: Option<BestMatch> = None;
    for w in words {
        let Some(v) = table.get(w) else { continue };
        let sim = cosine(phrase_vec, v);
        if best.as_ref().is_none_or(|b| sim > b.similarity) {
            best = Some(BestMatch {
                word: w.clone(),
                similarity: sim,
            });
        }
    }
    best
}

/// Labels a monetary-variable phrase by its single most similar lexicon word.
/// A revenue word and an investment word tied at the maximum yield `Unknown`.
pub fn classify_money_phrase(
    table: &EmbeddingTable,
    lex: &LexiconConfig,
    phrase: &str,
) -> MoneyClass {
    explain_money_phrase(table, lex, phrase).0
}

/// [`classify_money_phrase`] together with the winning word, if any.
pub fn explain_money_phrase(
    table: &EmbeddingTable,
    lex: &LexiconConfig,
    phrase: &str,
) -> (MoneyClass, Option<BestMatch>) {
    let Some(pv) = table.phrase_vector(phrase) else {
        return (MoneyClass::Unknown, None);
    };
    let revenue = best_over(table, &pv, &lex.revenue_words);
    let investment = best_over(table, &pv, &lex.investment_words);
    let (class, best) = match (revenue, investment) {
        (None, None) => return (MoneyClass::Unknown, None),
        (Some(r), None) => (MoneyClass::Revenue, r),
        (None, Some(i)) => (MoneyClass::Investment, i),
        (Some(r), Some(i)) => {
            if r.similarity == i.similarity {
                return (MoneyClass::Unknown, Some(r));
            } else if r.similarity > i.similarity {
                (MoneyClass::Revenue, r)
            } else {
                (MoneyClass::Investment, i)
            }
        }
    };
    if best.similarity > lex.threshold {
        (class, Some(best))
    } else {
        (MoneyClass::Unknown, Some(best))
    }
}

/// Founder when the person's text plus its governing context is closer than
/// the threshold to some founder word.
pub fn classify_person_phrase(
    table: &EmbeddingTable,
    lex: &LexiconConfig,
    phrase: &str,
    context: &str,
) -> PersonClass {
    explain_person_phrase(table, lex, phrase, context).0
}

pub fn explain_person_phrase(
    table: &EmbeddingTable,
    lex: &LexiconConfig,
    phrase: &str,
    context: &str,
) -> (PersonClass, Option<BestMatch>) {
    let combined = format!("{phrase} {context}");
    let Some(pv) = table.phrase_vector(&combined) else {
        return (PersonClass::Other, None);
    };
    match best_over(table, &pv, &lex.founder_words) {
        Some(b) if b.similarity > lex.threshold => (PersonClass::Founder, Some(b)),
        other => (PersonClass::Other, other),
    }
}
