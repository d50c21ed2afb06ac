//! Pairwise relation heuristics over dependency trees, and the per-paragraph
//! integration into [`RelationRecord`]s.
//!
//! Two heuristic families follow documented tree walks:
//!
//! * money → company: object/attribute money climbs its left ancestors to a
//!   subject, falls back to the governing verb's children, and prepositional
//!   money reads its monetary variable off the preposition's head;
//! * company → date: dates under prepositions around the company, dates
//!   hanging off the verb of an object company, and dates below the head or
//!   verb of a prepositional company.
//!
//! The remaining pairs (company-country, company-person, money-date,
//! person-country) use one shared rule: two entities relate when their roots
//! have the same nearest governing verb, or when one root sits inside a
//! prepositional dependent of the other's noun chunk. Each entity on the
//! value side keeps only its nearest partner.

use std::collections::BTreeSet;
use std::fmt;

use crate::corpus::{EntityLabel, EntitySpan};
use crate::deptree::TreeView;
use crate::records::{RelationRecord, VariableName, UNKNOWN_DATE};
use crate::semvec::{self, BestMatch, EmbeddingTable, LexiconConfig, MoneyClass, PersonClass};

/// Dependency edges followed one hop when looking for a company behind a token.
const COMPANY_HOPS: [&str; 3] = ["appos", "conj", "poss"];
/// Edges whose noun chunks extend an entity's prepositional scope.
const SCOPE_HOPS: [&str; 2] = ["appos", "conj"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    CompanyMoney,
    CompanyDate,
    CompanyCountry,
    CompanyPerson,
    MoneyDate,
    PersonCountry,
}

impl RelationKind {
    pub const ALL: [RelationKind; 6] = [
        RelationKind::CompanyMoney,
        RelationKind::CompanyDate,
        RelationKind::CompanyCountry,
        RelationKind::CompanyPerson,
        RelationKind::MoneyDate,
        RelationKind::PersonCountry,
    ];

    /// Expected (left, right) entity labels.
    pub fn labels(self) -> (EntityLabel, EntityLabel) {
        use EntityLabel::*;
        match self {
            RelationKind::CompanyMoney => (Org, Money),
            RelationKind::CompanyDate => (Org, Date),
            RelationKind::CompanyCountry => (Org, Gpe),
            RelationKind::CompanyPerson => (Org, Person),
            RelationKind::MoneyDate => (Money, Date),
            RelationKind::PersonCountry => (Person, Gpe),
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::CompanyMoney => "company-money",
            RelationKind::CompanyDate => "company-date",
            RelationKind::CompanyCountry => "company-country",
            RelationKind::CompanyPerson => "company-person",
            RelationKind::MoneyDate => "money-date",
            RelationKind::PersonCountry => "person-country",
        })
    }
}

/// Which heuristic produced a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Money object/attribute, subject found among its left ancestors' dependents.
    MoneySubject,
    /// Money object/attribute, company among the governing verb's children.
    MoneyVerbChildren,
    /// Prepositional money; variable from the preposition head, company from its verb.
    MoneyPrepositionHead,
    /// Date under a preposition in the company's left or right subtree.
    DatePrepositionSubtree,
    /// Object company; date among its verb's children.
    DateObjectVerb,
    /// Prepositional company; date below the preposition head or its verb.
    DatePrepositionalObject,
    SharedGovernor,
    PrepositionalScope,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::MoneySubject => "money/subject-of-left-ancestor",
            Rule::MoneyVerbChildren => "money/verb-children",
            Rule::MoneyPrepositionHead => "money/preposition-head",
            Rule::DatePrepositionSubtree => "date/preposition-subtree",
            Rule::DateObjectVerb => "date/object-verb-children",
            Rule::DatePrepositionalObject => "date/prepositional-object",
            Rule::SharedGovernor => "shared-governor",
            Rule::PrepositionalScope => "prepositional-scope",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseRelation {
    pub kind: RelationKind,
    pub left: EntitySpan,
    pub right: EntitySpan,
    pub left_root: usize,
    pub right_root: usize,
    /// The phrase linking the pair (the monetary variable for company-money).
    pub bridge_phrase: Option<String>,
    pub rule: Rule,
}

impl fmt::Display for PairwiseRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} `{}`, {} `{}`) via {}",
            self.kind,
            self.left.label,
            self.left.text,
            self.right.label,
            self.right.text,
            self.rule
        )?;
        if let Some(b) = &self.bridge_phrase {
            write!(f, " bridge `{b}`")?;
        }
        Ok(())
    }
}

fn relation(
    view: &TreeView<'_>,
    kind: RelationKind,
    left: &EntitySpan,
    right: &EntitySpan,
    bridge_phrase: Option<String>,
    rule: Rule,
) -> PairwiseRelation {
    debug_assert_eq!(kind.labels(), (left.label, right.label));
    PairwiseRelation {
        kind,
        left: left.clone(),
        right: right.clone(),
        left_root: view.entity_root(left),
        right_root: view.entity_root(right),
        bridge_phrase,
        rule,
    }
}

/// The company a token stands for: its own ORG span, or one reached over an
/// appositive, conjunct or possessive dependent.
fn company_behind<'a>(view: &TreeView<'a>, t: usize) -> Option<&'a EntitySpan> {
    if let Some(e) = view.entity_at(t).filter(|e| e.label == EntityLabel::Org) {
        return Some(e);
    }
    view.children(t)
        .iter()
        .filter(|&&c| COMPANY_HOPS.iter().any(|d| view.dep_is(c, d)))
        .find_map(|&c| view.entity_at(c).filter(|e| e.label == EntityLabel::Org))
}

fn chunk_tokens(view: &TreeView<'_>, t: usize) -> Vec<usize> {
    match view.noun_chunk_of(t) {
        Some(c) => (c.start..c.end).collect(),
        None => vec![t],
    }
}

/// The syntactic stand-in for a token: the root of its noun chunk, if any.
fn chunk_root(view: &TreeView<'_>, t: usize) -> usize {
    view.noun_chunk_of(t).map_or(t, |c| c.root)
}

/// Token texts in document order, skipping tokens inside entities.
fn phrase_text(view: &TreeView<'_>, tokens: &BTreeSet<usize>) -> String {
    tokens
        .iter()
        .filter(|&&t| view.entity_at(t).is_none())
        .map(|&t| view.text(t))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Monetary variable around a verb: the verb, its subjects' chunks, and the
/// chunk of the money token.
fn verb_bridge(view: &TreeView<'_>, verb: usize, money_chunk: Option<usize>) -> String {
    let mut tokens: BTreeSet<usize> = BTreeSet::from([verb]);
    for &c in view.children(verb) {
        if view.is_subject(c) {
            tokens.extend(chunk_tokens(view, c));
        }
    }
    if let Some(t) = money_chunk {
        if let Some(c) = view.noun_chunk_of(t) {
            tokens.extend(c.start..c.end);
        }
    }
    phrase_text(view, &tokens)
}

/// The ORG among `v`'s children whose root is nearest to `anchor`.
fn nearest_company_child<'a>(
    view: &TreeView<'a>,
    v: usize,
    anchor: usize,
) -> Option<&'a EntitySpan> {
    view.children(v)
        .iter()
        .filter_map(|&c| company_behind(view, c))
        .min_by_key(|e| {
            let r = view.entity_root(e);
            (r.abs_diff(anchor), r)
        })
}

/// Money → company relations; at most one per money entity.
pub fn relate_money_company(view: &TreeView<'_>) -> Vec<PairwiseRelation> {
    let mut out = Vec::new();
    for money in view.entities(EntityLabel::Money) {
        let root = view.entity_root(money);
        let t = chunk_root(view, root);
        let found = if view.is_attr(t) || view.is_direct_object(t) {
            money_from_subject(view, t).or_else(|| money_from_verb_children(view, t, root))
        } else if view.is_prepositional_object(t) {
            money_from_preposition(view, t, root)
        } else {
            None
        };
        if let Some((org, bridge, rule)) = found {
            out.push(relation(
                view,
                RelationKind::CompanyMoney,
                org,
                money,
                Some(bridge),
                rule,
            ));
        }
    }
    out
}

fn money_from_subject<'a>(view: &TreeView<'a>, t: usize) -> Option<(&'a EntitySpan, String, Rule)> {
    for a in view.left_ancestors(t) {
        let Some(&subject) = view.children(a).iter().find(|&&c| view.is_subject(c)) else {
            continue;
        };
        // The first subject decides; a non-company subject ends the climb.
        let org = company_behind(view, subject)?;
        return Some((org, verb_bridge(view, a, Some(t)), Rule::MoneySubject));
    }
    None
}

fn money_from_verb_children<'a>(
    view: &TreeView<'a>,
    t: usize,
    money_root: usize,
) -> Option<(&'a EntitySpan, String, Rule)> {
    let v = view.governing_verb(t)?;
    let org = nearest_company_child(view, v, money_root)?;
    Some((org, verb_bridge(view, v, Some(t)), Rule::MoneyVerbChildren))
}

fn money_from_preposition<'a>(
    view: &TreeView<'a>,
    t: usize,
    money_root: usize,
) -> Option<(&'a EntitySpan, String, Rule)> {
    let prep = view.head(t);
    let head = view.head(prep);
    if head == prep {
        return None;
    }
    let (bridge, verb) = if view.is_verbal(head) {
        (verb_bridge(view, head, None), Some(head))
    } else {
        let tokens: BTreeSet<usize> = chunk_tokens(view, head).into_iter().collect();
        (phrase_text(view, &tokens), view.governing_verb(head))
    };
    let org = nearest_company_child(view, verb?, money_root)?;
    Some((org, bridge, Rule::MoneyPrepositionHead))
}

/// Company → date relations, each (company, date) pair once.
pub fn relate_company_date(view: &TreeView<'_>) -> Vec<PairwiseRelation> {
    let mut out: Vec<PairwiseRelation> = Vec::new();
    for org in view.entities(EntityLabel::Org) {
        let c = chunk_root(view, view.entity_root(org));
        let mut found: Vec<(&EntitySpan, Rule)> = Vec::new();
        let mut add = |t: usize, rule: Rule| {
            if let Some(d) = view.entity_at(t).filter(|e| e.label == EntityLabel::Date) {
                if !found.iter().any(|(seen, _)| seen.start == d.start) {
                    found.push((d, rule));
                }
            }
        };

        // Core arguments look around their predicate; anything else around itself.
        let core = view.is_subject(c) || view.is_direct_object(c) || view.is_attr(c);
        let anchor = if core { view.head(c) } else { c };
        for p in view
            .left_subtree(anchor)
            .into_iter()
            .chain(view.right_subtree(anchor))
            .filter(|&p| view.is_preposition(p))
        {
            for &child in view.children(p) {
                add(child, Rule::DatePrepositionSubtree);
            }
        }

        if view.is_direct_object(c) {
            if let Some(v) = view.governing_verb(c) {
                for &child in view.children(v) {
                    add(child, Rule::DateObjectVerb);
                }
            }
        }

        if view.is_prepositional_object(c) {
            let prep = view.head(c);
            let head = view.head(prep);
            if head != prep && view.document().tokens[head].pos == crate::corpus::Pos::Propn {
                for d in view.descendants(head) {
                    add(d, Rule::DatePrepositionalObject);
                }
            }
            if let Some(v) = view.governing_verb(prep) {
                for d in view.descendants(v) {
                    add(d, Rule::DatePrepositionalObject);
                }
            }
        }

        found.sort_by_key(|(d, _)| d.start);
        for (date, rule) in found {
            out.push(relation(
                view,
                RelationKind::CompanyDate,
                org,
                date,
                None,
                rule,
            ));
        }
    }
    out
}

/// Tokens whose membership links an entity rooted at `root` to another:
/// subtrees of prepositions hanging off its noun chunk (and the chunks of its
/// appositives and conjuncts).
fn prepositional_scope(view: &TreeView<'_>, root: usize) -> BTreeSet<usize> {
    let mut holders: BTreeSet<usize> = chunk_tokens(view, root).into_iter().collect();
    for &c in view.children(root) {
        if SCOPE_HOPS.iter().any(|d| view.dep_is(c, d)) {
            holders.extend(chunk_tokens(view, c));
        }
    }
    let mut scope = BTreeSet::new();
    for &h in &holders {
        for &p in view.children(h) {
            if view.is_preposition(p) {
                scope.extend(view.subtree(p));
            }
        }
    }
    scope
}

fn shared_rule(view: &TreeView<'_>, a: usize, b: usize) -> Option<Rule> {
    if view.sentence(a) != view.sentence(b) {
        return None;
    }
    let ga = view.governing_verb(a);
    if ga.is_some() && ga == view.governing_verb(b) {
        return Some(Rule::SharedGovernor);
    }
    if prepositional_scope(view, a).contains(&b) || prepositional_scope(view, b).contains(&a) {
        return Some(Rule::PrepositionalScope);
    }
    None
}

/// For every `seeker` entity, the nearest qualifying `partner` entity.
fn nearest_partners<'a>(
    view: &TreeView<'a>,
    seeker: EntityLabel,
    partner: EntityLabel,
) -> Vec<(&'a EntitySpan, &'a EntitySpan, Rule)> {
    let mut out = Vec::new();
    for s in view.entities(seeker) {
        let sr = view.entity_root(s);
        let best = view
            .entities(partner)
            .filter_map(|p| {
                let pr = view.entity_root(p);
                shared_rule(view, sr, pr).map(|rule| ((sr.abs_diff(pr), pr), p, rule))
            })
            .min_by_key(|(key, _, _)| *key);
        if let Some((_, p, rule)) = best {
            out.push((s, p, rule));
        }
    }
    out
}

/// company-country, company-person, money-date and person-country relations.
pub fn relate_other_pairs(view: &TreeView<'_>) -> Vec<PairwiseRelation> {
    use EntityLabel::*;
    let mut out = Vec::new();
    for (gpe, org, rule) in nearest_partners(view, Gpe, Org) {
        out.push(relation(
            view,
            RelationKind::CompanyCountry,
            org,
            gpe,
            None,
            rule,
        ));
    }
    for (person, org, rule) in nearest_partners(view, Person, Org) {
        out.push(relation(
            view,
            RelationKind::CompanyPerson,
            org,
            person,
            None,
            rule,
        ));
    }
    for (money, date, rule) in nearest_partners(view, Money, Date) {
        out.push(relation(
            view,
            RelationKind::MoneyDate,
            money,
            date,
            None,
            rule,
        ));
    }
    for (person, gpe, rule) in nearest_partners(view, Person, Gpe) {
        out.push(relation(
            view,
            RelationKind::PersonCountry,
            person,
            gpe,
            None,
            rule,
        ));
    }
    out
}

/// Every pairwise relation in the document.
pub fn relate_all(view: &TreeView<'_>) -> Vec<PairwiseRelation> {
    let mut all = relate_money_company(view);
    all.extend(relate_company_date(view));
    all.extend(relate_other_pairs(view));
    all
}

/// Context words for founder classification: the person's chunk, its
/// appositives' chunks, and its head chain up to the governing verb.
fn person_context(view: &TreeView<'_>, root: usize) -> String {
    let mut tokens: BTreeSet<usize> = chunk_tokens(view, root).into_iter().collect();
    for &c in view.children(root) {
        if view.dep_is(c, "appos") {
            tokens.extend(chunk_tokens(view, c));
        }
    }
    for a in view.ancestors(root) {
        tokens.insert(a);
        if view.is_verbal(a) {
            break;
        }
    }
    tokens.remove(&root);
    phrase_text(view, &tokens)
}

/// A record plus the relation and classifier evidence behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractedRecord {
    pub record: RelationRecord,
    pub source: PairwiseRelation,
    /// Money class or founder verdict evidence; `None` for country records.
    pub evidence: Option<BestMatch>,
    pub company_root: usize,
    pub value_start: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Extraction {
    pub relations: Vec<PairwiseRelation>,
    pub records: Vec<ExtractedRecord>,
}

/// Separators cannot appear inside record fields.
fn field_text(s: &str) -> String {
    s.replace([',', '|'], "")
}

/// The date among `candidates` whose root is nearest to `anchor`.
fn nearest_date<'r>(
    candidates: impl Iterator<Item = &'r PairwiseRelation>,
    anchor: usize,
) -> String {
    candidates
        .min_by_key(|r| (r.right_root.abs_diff(anchor), r.right_root))
        .map_or_else(|| UNKNOWN_DATE.to_string(), |r| field_text(&r.right.text))
}

fn build_record(
    org: &EntitySpan,
    name: VariableName,
    value: &EntitySpan,
    date: &str,
) -> Option<RelationRecord> {
    match RelationRecord::new(&field_text(&org.text), name, &field_text(&value.text), date) {
        Ok(r) => Some(r),
        Err(e) => {
            log::warn!("dropping unrepresentable record: {e}");
            None
        }
    }
}

/// Runs every heuristic and integrates the relations into records.
pub fn extract_detailed(
    view: &TreeView<'_>,
    table: &EmbeddingTable,
    lex: &LexiconConfig,
) -> Extraction {
    let relations = relate_all(view);
    let of_kind = |kind: RelationKind| relations.iter().filter(move |r| r.kind == kind);
    let mut records = Vec::new();

    for rel in of_kind(RelationKind::CompanyMoney) {
        let bridge = rel.bridge_phrase.as_deref().unwrap_or("");
        let (class, evidence) = semvec::explain_money_phrase(table, lex, bridge);
        let name = match class {
            MoneyClass::Revenue => VariableName::Revenue,
            MoneyClass::Investment => VariableName::Investment,
            MoneyClass::Unknown => continue,
        };
        let dates = of_kind(RelationKind::MoneyDate)
            .filter(|d| d.left.start == rel.right.start)
            .chain(of_kind(RelationKind::CompanyDate).filter(|d| d.left.start == rel.left.start));
        let date = nearest_date(dates, rel.right_root);
        if let Some(record) = build_record(&rel.left, name, &rel.right, &date) {
            records.push(ExtractedRecord {
                record,
                source: rel.clone(),
                evidence,
                company_root: rel.left_root,
                value_start: rel.right.start,
            });
        }
    }

    for rel in of_kind(RelationKind::CompanyPerson) {
        let context = person_context(view, rel.right_root);
        let (class, evidence) =
            semvec::explain_person_phrase(table, lex, &rel.right.text, &context);
        if class != PersonClass::Founder {
            continue;
        }
        let dates = of_kind(RelationKind::CompanyDate).filter(|d| d.left.start == rel.left.start);
        let date = nearest_date(dates, rel.right_root);
        if let Some(record) = build_record(&rel.left, VariableName::Founder, &rel.right, &date) {
            records.push(ExtractedRecord {
                record,
                source: rel.clone(),
                evidence,
                company_root: rel.left_root,
                value_start: rel.right.start,
            });
        }
    }

    for rel in of_kind(RelationKind::CompanyCountry) {
        if let Some(record) =
            build_record(&rel.left, VariableName::Country, &rel.right, UNKNOWN_DATE)
        {
            records.push(ExtractedRecord {
                record,
                source: rel.clone(),
                evidence: None,
                company_root: rel.left_root,
                value_start: rel.right.start,
            });
        }
    }

    records.sort_by_key(|r| (r.company_root, r.value_start));
    Extraction { relations, records }
}

/// Records for one paragraph, ordered by company position then value position.
pub fn extract(
    view: &TreeView<'_>,
    table: &EmbeddingTable,
    lex: &LexiconConfig,
) -> Vec<RelationRecord> {
    extract_detailed(view, table, lex)
        .records
        .into_iter()
        .map(|r| r.record)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::AnnotatedDocument;
    use crate::records;

    const FIXTURES: &str = include_str!("../tests/data/fixtures.jsonl");
    const TOY: &str = include_str!("../tests/data/toy_embeddings.txt");

    fn fixture(id: &str) -> AnnotatedDocument {
        FIXTURES
            .lines()
            .map(|l| serde_json::from_str::<AnnotatedDocument>(l).unwrap())
            .find(|d| d.id == id)
            .unwrap_or_else(|| panic!("no fixture {id}"))
            .validated()
            .unwrap()
    }

    fn toy() -> EmbeddingTable {
        let entries: Vec<(String, Vec<f64>)> = TOY
            .lines()
            .skip(1)
            .map(|l| {
                let mut f = l.split_whitespace();
                let w = f.next().unwrap().to_string();
                (w, f.map(|x| x.parse().unwrap()).collect())
            })
            .collect();
        EmbeddingTable::from_entries(6, entries).unwrap()
    }

    fn pairs(rels: &[PairwiseRelation], kind: RelationKind) -> Vec<(String, String, Rule)> {
        rels.iter()
            .filter(|r| r.kind == kind)
            .map(|r| (r.left.text.clone(), r.right.text.clone(), r.rule))
            .collect()
    }

    #[test]
    fn apple_money_company_via_preposition_head() {
        let doc = fixture("apple");
        let rels = relate_money_company(&TreeView::new(&doc));
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].left.text, "Apple");
        assert_eq!(rels[0].right.text, "$9.4 million");
        assert_eq!(rels[0].bridge_phrase.as_deref(), Some("a net income"));
        assert_eq!(rels[0].rule, Rule::MoneyPrepositionHead);
    }

    #[test]
    fn konga_money_company_via_subject() {
        let doc = fixture("konga_raised");
        let rels = relate_money_company(&TreeView::new(&doc));
        assert_eq!(
            pairs(&rels, RelationKind::CompanyMoney),
            vec![("Konga".into(), "$10 million".into(), Rule::MoneySubject)]
        );
        assert_eq!(rels[0].bridge_phrase.as_deref(), Some("raised"));
    }

    #[test]
    fn money_without_company_yields_nothing() {
        let doc = fixture("government_spent");
        assert!(relate_money_company(&TreeView::new(&doc)).is_empty());
    }

    #[test]
    fn verb_children_fallback_when_subject_is_not_a_company() {
        let doc = fixture("kuda_gave");
        let rels = relate_money_company(&TreeView::new(&doc));
        assert_eq!(
            pairs(&rels, RelationKind::CompanyMoney),
            vec![("Kuda".into(), "$10 million".into(), Rule::MoneyVerbChildren)]
        );
    }

    #[test]
    fn possessive_subject_reaches_company() {
        let doc = fixture("jumia_attr");
        let rels = relate_money_company(&TreeView::new(&doc));
        assert_eq!(rels[0].left.text, "Jumia");
        assert_eq!(rels[0].bridge_phrase.as_deref(), Some("'s revenue was"));
    }

    #[test]
    fn company_date_paths() {
        let doc = fixture("paystack_acquired");
        let rels = relate_company_date(&TreeView::new(&doc));
        assert_eq!(
            pairs(&rels, RelationKind::CompanyDate),
            vec![(
                "Paystack".into(),
                "October 2020".into(),
                Rule::DatePrepositionSubtree
            )]
        );

        let doc = fixture("jumia_q4_revenue");
        let rels = relate_company_date(&TreeView::new(&doc));
        assert_eq!(
            pairs(&rels, RelationKind::CompanyDate),
            vec![(
                "Jumia".into(),
                "Q4 2020".into(),
                Rule::DatePrepositionSubtree
            )]
        );

        let doc = fixture("stripe_paystack_last_year");
        let rels = relate_company_date(&TreeView::new(&doc));
        assert_eq!(
            pairs(&rels, RelationKind::CompanyDate),
            vec![("Paystack".into(), "last year".into(), Rule::DateObjectVerb)]
        );

        let doc = fixture("piggyvest_cofounded");
        let rels = relate_company_date(&TreeView::new(&doc));
        assert_eq!(
            pairs(&rels, RelationKind::CompanyDate),
            vec![(
                "PiggyVest".into(),
                "2016".into(),
                Rule::DatePrepositionalObject
            )]
        );
    }

    #[test]
    fn company_without_date_yields_nothing() {
        let doc = fixture("konga_raised");
        assert!(relate_company_date(&TreeView::new(&doc)).is_empty());
    }

    #[test]
    fn flutterwave_other_pairs() {
        let doc = fixture("flutterwave_nigerian");
        let rels = relate_other_pairs(&TreeView::new(&doc));
        assert_eq!(
            pairs(&rels, RelationKind::CompanyPerson),
            vec![(
                "Flutterwave".into(),
                "Olugbenga Agboola".into(),
                Rule::SharedGovernor
            )]
        );
        assert_eq!(
            pairs(&rels, RelationKind::CompanyCountry),
            vec![(
                "Flutterwave".into(),
                "Nigerian".into(),
                Rule::SharedGovernor
            )]
        );
        assert_eq!(pairs(&rels, RelationKind::PersonCountry).len(), 1);
    }

    #[test]
    fn cross_sentence_entities_do_not_relate() {
        let doc = fixture("kuda_cross_sentence");
        let view = TreeView::new(&doc);
        for r in relate_all(&view) {
            assert_eq!(
                view.sentence(r.left_root),
                view.sentence(r.right_root),
                "{r}"
            );
            assert_ne!(r.kind, RelationKind::CompanyMoney);
            assert_ne!(r.kind, RelationKind::CompanyDate);
        }
    }

    #[test]
    fn prepositional_scope_links_apposition() {
        let doc = fixture("andela_cofounder_appos");
        let view = TreeView::new(&doc);
        let scope = prepositional_scope(&view, 1);
        assert!(scope.contains(&6), "{scope:?}");
    }

    #[test]
    fn apple_extracts_sample_output() {
        let doc = fixture("apple");
        let recs = extract(&TreeView::new(&doc), &toy(), &LexiconConfig::default());
        assert_eq!(
            records::serialize(&recs),
            "Apple, revenue, $9.4 million, unknown-date|"
        );
    }

    #[test]
    fn no_entities_no_records() {
        let doc = fixture("analysts_growth");
        assert!(extract(&TreeView::new(&doc), &toy(), &LexiconConfig::default()).is_empty());
    }

    #[test]
    fn founder_and_country_records() {
        let doc = fixture("flutterwave_from_nigeria");
        let recs = extract(&TreeView::new(&doc), &toy(), &LexiconConfig::default());
        assert_eq!(
            records::serialize(&recs),
            "Flutterwave, country, Nigeria, unknown-date| Flutterwave, founder, Olugbenga Agboola, unknown-date|"
        );
    }

    #[test]
    fn non_founder_person_is_dropped() {
        let doc = fixture("konga_ceo_said");
        let view = TreeView::new(&doc);
        let out = extract_detailed(&view, &toy(), &LexiconConfig::default());
        assert_eq!(pairs(&out.relations, RelationKind::CompanyPerson).len(), 1);
        assert!(out.records.is_empty());
        assert_eq!(person_context(&view, 3), "CEO said");
    }

    #[test]
    fn nearest_date_per_money() {
        let doc = fixture("jumia_two_quarters");
        let recs = extract(&TreeView::new(&doc), &toy(), &LexiconConfig::default());
        assert_eq!(
            records::serialize(&recs),
            "Jumia, revenue, €41 million, Q4 2020| Jumia, revenue, €33.7 million, Q3 2020|"
        );
    }

    #[test]
    fn commas_are_stripped_from_values() {
        let doc = fixture("konga_made_sales");
        let recs = extract(&TreeView::new(&doc), &toy(), &LexiconConfig::default());
        assert_eq!(recs[0].variable_value(), "$250000");
    }
}
