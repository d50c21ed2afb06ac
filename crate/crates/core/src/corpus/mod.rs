//! Annotated paragraphs and gold examples.
//!
//! Documents arrive pre-annotated, one JSON object per line:
//!
//! ```text
//! {"id": "...", "text": "...",
//!  "tokens": [{"i": 0, "text": "Apple", "lemma": "apple", "pos": "PROPN",
//!              "dep": "nsubj", "head": 1, "sent": 0}, ...],
//!  "entities": [{"start": 0, "end": 1, "label": "ORG"}, ...],
//!  "noun_chunks": [{"start": 0, "end": 1, "root": 0}, ...]}
//! ```
//!
//! Gold files carry `id`, `input_text` and `target_text` per line.

mod prepare;

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jsonl;
use crate::records::{self, RelationRecord};

pub use prepare::{balanced_subset, split_train_test, BalancedSubset, TrainTestSplit};

/// Coarse part-of-speech tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Noun,
    Propn,
    Verb,
    Adj,
    Adv,
    Adp,
    Det,
    Num,
    Sym,
    Punct,
    Pron,
    Aux,
    Cconj,
    Sconj,
    Part,
    Intj,
    X,
}

impl Pos {
    pub fn is_verbal(self) -> bool {
        matches!(self, Pos::Verb | Pos::Aux)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    #[serde(rename = "i")]
    pub index: usize,
    pub text: String,
    pub lemma: String,
    pub pos: Pos,
    pub dep: String,
    pub head: usize,
    #[serde(rename = "sent")]
    pub sentence: usize,
    /// Byte range of the token inside the document text, filled in on validation.
    #[serde(skip)]
    pub(crate) offsets: (usize, usize),
}

impl Token {
    pub fn new(
        index: usize,
        text: &str,
        lemma: &str,
        pos: Pos,
        dep: &str,
        head: usize,
        sentence: usize,
    ) -> Self {
        Token {
            index,
            text: text.to_string(),
            lemma: lemma.to_string(),
            pos,
            dep: dep.to_string(),
            head,
            sentence,
            offsets: (0, 0),
        }
    }

    pub fn is_root(&self) -> bool {
        self.head == self.index
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntityLabel {
    #[serde(rename = "ORG")]
    Org,
    #[serde(rename = "PERSON")]
    Person,
    #[serde(rename = "GPE")]
    Gpe,
    #[serde(rename = "MONEY")]
    Money,
    #[serde(rename = "DATE")]
    Date,
}

impl fmt::Display for EntityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntityLabel::Org => "ORG",
            EntityLabel::Person => "PERSON",
            EntityLabel::Gpe => "GPE",
            EntityLabel::Money => "MONEY",
            EntityLabel::Date => "DATE",
        })
    }
}

/// A labeled token range `[start, end)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntitySpan {
    pub start: usize,
    pub end: usize,
    pub label: EntityLabel,
    /// Surface form taken from the document text, filled in on validation.
    #[serde(skip)]
    pub text: String,
}

impl EntitySpan {
    pub fn new(start: usize, end: usize, label: EntityLabel) -> Self {
        EntitySpan {
            start,
            end,
            label,
            text: String::new(),
        }
    }

    pub fn contains(&self, t: usize) -> bool {
        self.start <= t && t < self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NounChunk {
    pub start: usize,
    pub end: usize,
    pub root: usize,
}

impl NounChunk {
    pub fn contains(&self, t: usize) -> bool {
        self.start <= t && t < self.end
    }
}

/// One paragraph with its parse and entity layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedDocument {
    pub id: String,
    pub text: String,
    pub tokens: Vec<Token>,
    pub entities: Vec<EntitySpan>,
    pub noun_chunks: Vec<NounChunk>,
}

impl AnnotatedDocument {
    /// Builds and validates a document.
    pub fn new(
        id: &str,
        text: &str,
        tokens: Vec<Token>,
        entities: Vec<EntitySpan>,
        noun_chunks: Vec<NounChunk>,
    ) -> Result<Self> {
        AnnotatedDocument {
            id: id.to_string(),
            text: text.to_string(),
            tokens,
            entities,
            noun_chunks,
        }
        .validated()
    }

    /// Checks every structural invariant, aligns tokens to the text, and
    /// fills in entity surface forms. Entities and chunks come back sorted by
    /// start index.
    pub fn validated(mut self) -> Result<Self> {
        let fail = |message: String| Error::validation(self.id.clone(), message);
        let n = self.tokens.len();

        let mut sentence_roots: Vec<usize> = Vec::new();
        for (pos, tok) in self.tokens.iter().enumerate() {
            if tok.index != pos {
                return Err(fail(format!(
                    "token at position {pos} has index {}",
                    tok.index
                )));
            }
            let expected_sentence = sentence_roots.len();
            if tok.sentence + 1 != expected_sentence && tok.sentence != expected_sentence {
                return Err(fail(format!(
                    "token {pos}: sentence id {} is not contiguous",
                    tok.sentence
                )));
            }
            if tok.sentence == expected_sentence {
                sentence_roots.push(0);
            }
            if tok.head >= n {
                return Err(fail(format!(
                    "token {pos}: head {} out of range (0..{n})",
                    tok.head
                )));
            }
            if (tok.dep == "ROOT") != tok.is_root() {
                return Err(fail(format!(
                    "token {pos}: dep `{}` with head {} (ROOT must head itself, and only ROOT)",
                    tok.dep, tok.head
                )));
            }
            if self.tokens[tok.head].sentence != tok.sentence {
                return Err(fail(format!(
                    "token {pos}: head {} is in another sentence",
                    tok.head
                )));
            }
            if tok.is_root() {
                sentence_roots[tok.sentence] += 1;
            }
        }
        if let Some(s) = sentence_roots.iter().position(|&c| c != 1) {
            return Err(fail(format!(
                "sentence {s} has {} ROOT tokens, expected exactly one",
                sentence_roots[s]
            )));
        }
        for start in 0..n {
            let mut t = start;
            let mut steps = 0;
            while !self.tokens[t].is_root() {
                t = self.tokens[t].head;
                steps += 1;
                if steps > n {
                    return Err(fail(format!("cyclic head chain from token {start}")));
                }
            }
        }

        let mut cursor = 0;
        for tok in &mut self.tokens {
            let Some(found) = self.text[cursor..].find(tok.text.as_str()) else {
                return Err(Error::validation(
                    self.id.clone(),
                    format!(
                        "token {} `{}` not found in text after byte {cursor}",
                        tok.index, tok.text
                    ),
                ));
            };
            let start = cursor + found;
            cursor = start + tok.text.len();
            tok.offsets = (start, cursor);
        }

        self.entities.sort_by_key(|e| (e.start, e.end));
        for (k, e) in self.entities.iter().enumerate() {
            if !(e.start < e.end && e.end <= n) {
                return Err(Error::validation(
                    self.id.clone(),
                    format!(
                        "entity {} [{}, {}) out of bounds for {n} tokens",
                        e.label, e.start, e.end
                    ),
                ));
            }
            if k > 0 && self.entities[k - 1].end > e.start {
                return Err(Error::validation(
                    self.id.clone(),
                    format!("entity [{}, {}) overlaps its predecessor", e.start, e.end),
                ));
            }
        }
        for e in &mut self.entities {
            e.text = self.text[self.tokens[e.start].offsets.0..self.tokens[e.end - 1].offsets.1]
                .to_string();
        }

        self.noun_chunks.sort_by_key(|c| (c.start, c.end));
        for (k, c) in self.noun_chunks.iter().enumerate() {
            if !(c.start <= c.root && c.root < c.end && c.end <= n) {
                return Err(Error::validation(
                    self.id.clone(),
                    format!(
                        "noun chunk [{}, {}) root {} is invalid",
                        c.start, c.end, c.root
                    ),
                ));
            }
            if k > 0 && self.noun_chunks[k - 1].end > c.start {
                return Err(Error::validation(
                    self.id.clone(),
                    format!(
                        "noun chunk [{}, {}) overlaps its predecessor",
                        c.start, c.end
                    ),
                ));
            }
        }
        Ok(self)
    }

    /// Surface text of the token range `[start, end)`, as written in the paragraph.
    pub fn span_text(&self, start: usize, end: usize) -> &str {
        &self.text[self.tokens[start].offsets.0..self.tokens[end - 1].offsets.1]
    }

    pub fn sentence_count(&self) -> usize {
        self.tokens.last().map_or(0, |t| t.sentence + 1)
    }
}

/// A manually labeled paragraph. An empty target means "no relevant information".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldExample {
    pub id: String,
    pub input_text: String,
    pub target_text: String,
}

impl GoldExample {
    pub fn new(id: &str, input_text: &str, target_text: &str) -> Self {
        GoldExample {
            id: id.to_string(),
            input_text: input_text.to_string(),
            target_text: target_text.to_string(),
        }
    }

    pub fn records(&self) -> Result<Vec<RelationRecord>> {
        records::parse(&self.target_text)
    }

    pub fn is_informative(&self) -> bool {
        self.target_text
            .chars()
            .any(|c| !c.is_whitespace() && c != '|')
    }
}

/// Loads and validates a line-delimited document file.
pub fn load_documents(path: impl AsRef<Path>) -> Result<Vec<AnnotatedDocument>> {
    jsonl::read::<AnnotatedDocument>(path.as_ref())?
        .into_iter()
        .map(|(_, doc)| doc.validated())
        .collect()
}

/// Line-delimited rendering of documents, the inverse of [`load_documents`].
pub fn documents_to_jsonl(docs: &[AnnotatedDocument]) -> String {
    jsonl::to_string(docs)
}

/// Loads a gold file; every non-empty target must parse as records.
pub fn load_gold(path: impl AsRef<Path>) -> Result<Vec<GoldExample>> {
    let path = path.as_ref();
    jsonl::read::<GoldExample>(path)?
        .into_iter()
        .map(|(line, ex)| match ex.records() {
            Ok(_) => Ok(ex),
            Err(e) => Err(Error::parse(path, line, e.to_string())),
        })
        .collect()
}

pub fn gold_to_jsonl(gold: &[GoldExample]) -> String {
    jsonl::to_string(gold)
}

/// Writes a gold file atomically.
pub fn write_gold(path: impl AsRef<Path>, gold: &[GoldExample]) -> Result<()> {
    jsonl::write_atomic(path.as_ref(), gold_to_jsonl(gold).as_bytes())
}
