//! Relation records and the `company, variable, value, date|` target format.
//!
//! A serialized string is a sequence of records, each rendered as four
//! comma-separated fields and terminated by `|`, with a single space between
//! consecutive records:
//!
//! ```text
//! Jumia, revenue, €41 million, Q4 2020| Jumia, revenue, €33.7 million, Q3 2020|
//! ```
//!
//! Parsing splits each record on its first three commas only, so dates such
//! as `March 3, 2021` survive. Company names and values may not contain a
//! comma or a pipe.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jsonl;

/// Literal used for records whose date could not be determined.
pub const UNKNOWN_DATE: &str = "unknown-date";

const RECORD_TERMINATOR: char = '|';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VariableName {
    #[serde(rename = "founder")]
    Founder,
    #[serde(rename = "country")]
    Country,
    #[serde(rename = "revenue")]
    Revenue,
    #[serde(rename = "customers/users")]
    CustomersUsers,
    #[serde(rename = "investment")]
    Investment,
}

impl VariableName {
    pub const ALL: [VariableName; 5] = [
        VariableName::Founder,
        VariableName::Country,
        VariableName::Revenue,
        VariableName::CustomersUsers,
        VariableName::Investment,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            VariableName::Founder => "founder",
            VariableName::Country => "country",
            VariableName::Revenue => "revenue",
            VariableName::CustomersUsers => "customers/users",
            VariableName::Investment => "investment",
        }
    }
}

impl fmt::Display for VariableName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VariableName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let folded = s.trim().to_lowercase();
        VariableName::ALL
            .into_iter()
            .find(|v| v.as_str() == folded)
            .ok_or_else(|| format!("unknown variable name `{}`", s.trim()))
    }
}

/// The fourth field of a record.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RecordDate {
    Known(String),
    Unknown,
}

impl RecordDate {
    fn from_field(s: &str) -> Self {
        let s = s.trim();
        if s.eq_ignore_ascii_case(UNKNOWN_DATE) {
            RecordDate::Unknown
        } else {
            RecordDate::Known(s.to_string())
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            RecordDate::Known(s) => s,
            RecordDate::Unknown => UNKNOWN_DATE,
        }
    }
}

impl fmt::Display for RecordDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One extracted or annotated tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelationRecord {
    company: String,
    variable_name: VariableName,
    variable_value: String,
    variable_date: RecordDate,
}

impl RelationRecord {
    /// Builds a record, trimming every field. Fails when the company or value
    /// is empty or contains a separator, or when the date contains a pipe.
    pub fn new(
        company: &str,
        variable_name: VariableName,
        variable_value: &str,
        variable_date: &str,
    ) -> Result<Self> {
        let company = company.trim();
        let value = variable_value.trim();
        let rendered = format!(
            "{company}, {variable_name}, {value}, {}",
            variable_date.trim()
        );
        let reject = |message: &str| Error::Record {
            record: rendered.clone(),
            message: message.to_string(),
        };
        if company.is_empty() {
            return Err(reject("company is empty"));
        }
        if value.is_empty() {
            return Err(reject("variable value is empty"));
        }
        if company.contains([',', RECORD_TERMINATOR]) {
            return Err(reject("company may not contain `,` or `|`"));
        }
        if value.contains([',', RECORD_TERMINATOR]) {
            return Err(reject("variable value may not contain `,` or `|`"));
        }
        if variable_date.contains(RECORD_TERMINATOR) {
            return Err(reject("date may not contain `|`"));
        }
        Ok(RelationRecord {
            company: company.to_string(),
            variable_name,
            variable_value: value.to_string(),
            variable_date: RecordDate::from_field(variable_date),
        })
    }

    pub fn company(&self) -> &str {
        &self.company
    }

    pub fn variable_name(&self) -> VariableName {
        self.variable_name
    }

    pub fn variable_value(&self) -> &str {
        &self.variable_value
    }

    pub fn variable_date(&self) -> &RecordDate {
        &self.variable_date
    }

    /// Case-folded, whitespace-collapsed fields used for information equality.
    pub fn normalized_key(&self) -> [String; 4] {
        [
            normalize_field(&self.company),
            self.variable_name.as_str().to_string(),
            normalize_field(&self.variable_value),
            normalize_field(self.variable_date.as_str()),
        ]
    }
}

impl fmt::Display for RelationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}, {}, {}, {}",
            self.company, self.variable_name, self.variable_value, self.variable_date
        )
    }
}

fn normalize_field(s: &str) -> String {
    s.split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders records in target-text form; an empty list renders as `""`.
pub fn serialize(records: &[RelationRecord]) -> String {
    records
        .iter()
        .map(|r| format!("{r}{RECORD_TERMINATOR}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses a target-text string. Empty (or whitespace-only) input yields no
/// records.
pub fn parse(s: &str) -> Result<Vec<RelationRecord>> {
    s.split(RECORD_TERMINATOR)
        .map(str::trim)
        .filter(|chunk| !chunk.is_empty())
        .map(parse_record)
        .collect()
}

fn parse_record(chunk: &str) -> Result<RelationRecord> {
    let fields: Vec<&str> = chunk.splitn(4, ',').collect();
    let [company, name, value, date] = fields[..] else {
        return Err(Error::Record {
            record: chunk.to_string(),
            message: format!("expected 4 comma-separated fields, found {}", fields.len()),
        });
    };
    let name = name
        .parse::<VariableName>()
        .map_err(|message| Error::Record {
            record: chunk.to_string(),
            message,
        })?;
    RelationRecord::new(company, name, value, date)
}

/// Sorted multiset of normalized record keys.
pub fn information_content(records: &[RelationRecord]) -> Vec<[String; 4]> {
    let mut keys: Vec<_> = records.iter().map(RelationRecord::normalized_key).collect();
    keys.sort();
    keys
}

/// Multiset equality after case-folding and whitespace normalization.
pub fn record_set_equal(a: &[RelationRecord], b: &[RelationRecord]) -> bool {
    information_content(a) == information_content(b)
}

/// One line of a prediction file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub id: String,
    pub predicted_text: String,
}

/// Loads a prediction file as an id → text map; duplicate ids are an error.
pub fn load_predictions(path: impl AsRef<Path>) -> Result<HashMap<String, String>> {
    let path = path.as_ref();
    let mut out = HashMap::new();
    for (line, p) in jsonl::read::<Prediction>(path)? {
        if out.insert(p.id.clone(), p.predicted_text).is_some() {
            return Err(Error::parse(
                path,
                line,
                format!("duplicate prediction id `{}`", p.id),
            ));
        }
    }
    Ok(out)
}

/// Writes predictions atomically, one per line, in the given order.
pub fn write_predictions(path: impl AsRef<Path>, predictions: &[Prediction]) -> Result<()> {
    jsonl::write_atomic(path.as_ref(), jsonl::to_string(predictions).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    const JUMIA: &str =
        "Jumia, revenue, €41 million, Q4 2020| Jumia, revenue, €33.7 million, Q3 2020|";

    fn rec(c: &str, n: VariableName, v: &str, d: &str) -> RelationRecord {
        RelationRecord::new(c, n, v, d).unwrap()
    }

    #[test]
    fn serializes_jumia_example() {
        let recs = vec![
            rec("Jumia", VariableName::Revenue, "€41 million", "Q4 2020"),
            rec("Jumia", VariableName::Revenue, "€33.7 million", "Q3 2020"),
        ];
        assert_eq!(serialize(&recs), JUMIA);
        assert_eq!(parse(JUMIA).unwrap(), recs);
    }

    #[test]
    fn empty_list_is_empty_string() {
        assert_eq!(serialize(&[]), "");
        assert!(parse("").unwrap().is_empty());
        assert!(parse("   ").unwrap().is_empty());
    }

    #[test]
    fn unknown_date_renders_literally() {
        let r = rec("Apple", VariableName::Revenue, "$9.4 million", UNKNOWN_DATE);
        assert_eq!(r.variable_date(), &RecordDate::Unknown);
        assert_eq!(
            serialize(&[r]),
            "Apple, revenue, $9.4 million, unknown-date|"
        );
    }

    #[test]
    fn missing_date_field_is_an_error() {
        let err = parse("Jumia, revenue, €41 million").unwrap_err();
        assert!(matches!(err, Error::Record { .. }), "{err}");
        assert!(err.to_string().contains("Jumia, revenue, €41 million"));
    }

    #[test]
    fn unknown_variable_name_is_rejected() {
        assert!(parse("Jumia, profit, €41 million, Q4 2020|").is_err());
    }

    #[test]
    fn dates_may_contain_commas() {
        let recs = parse("Kuda, investment, $25 million, March 3, 2021|").unwrap();
        assert_eq!(recs[0].variable_date().as_str(), "March 3, 2021");
        assert_eq!(
            serialize(&recs),
            "Kuda, investment, $25 million, March 3, 2021|"
        );
    }

    #[test]
    fn customers_users_round_trips() {
        let s = "Opay, customers/users, 5 million users, 2020|";
        assert_eq!(serialize(&parse(s).unwrap()), s);
    }

    #[test]
    fn values_with_commas_are_rejected_at_construction() {
        assert!(RelationRecord::new("Konga", VariableName::Revenue, "$250,000", "2020").is_err());
        assert!(RelationRecord::new("A|B", VariableName::Revenue, "$1", "2020").is_err());
        assert!(RelationRecord::new(" ", VariableName::Revenue, "$1", "2020").is_err());
    }

    #[test]
    fn set_equality_ignores_order_and_case() {
        let a = parse(JUMIA).unwrap();
        let mut b = a.clone();
        b.reverse();
        assert!(record_set_equal(&a, &b));

        let upper = parse(&JUMIA.to_uppercase()).unwrap();
        assert!(record_set_equal(&a, &upper));

        let spaced = parse(
            "jumia ,  revenue, €41   million, Q4 2020| Jumia, revenue, €33.7 million, Q3 2020|",
        )
        .unwrap();
        assert!(record_set_equal(&a, &spaced));

        let other =
            parse("Jumia, revenue, €42 million, Q4 2020| Jumia, revenue, €33.7 million, Q3 2020|")
                .unwrap();
        assert!(!record_set_equal(&a, &other));
    }

    #[test]
    fn set_equality_is_multiset() {
        let one = parse("A, revenue, $1, 2020|").unwrap();
        let two = parse("A, revenue, $1, 2020| A, revenue, $1, 2020|").unwrap();
        assert!(!record_set_equal(&one, &two));
    }

    #[test]
    fn one_pipe_per_record() {
        let recs = parse(JUMIA).unwrap();
        assert_eq!(serialize(&recs).matches('|').count(), recs.len());
    }
}
