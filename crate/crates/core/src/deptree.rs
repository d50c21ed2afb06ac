//! Read-only navigation over a document's dependency trees.

use crate::corpus::{AnnotatedDocument, EntityLabel, EntitySpan, NounChunk};

/// A document plus its inverted head relation.
#[derive(Debug, Clone)]
pub struct TreeView<'a> {
    doc: &'a AnnotatedDocument,
    children: Vec<Vec<usize>>,
}

impl<'a> TreeView<'a> {
    /// `doc` must already be validated.
    pub fn new(doc: &'a AnnotatedDocument) -> Self {
        let mut children = vec![Vec::new(); doc.tokens.len()];
        for tok in &doc.tokens {
            if !tok.is_root() {
                children[tok.head].push(tok.index);
            }
        }
        TreeView { doc, children }
    }

    pub fn document(&self) -> &'a AnnotatedDocument {
        self.doc
    }

    pub fn len(&self) -> usize {
        self.doc.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doc.tokens.is_empty()
    }

    pub fn head(&self, t: usize) -> usize {
        self.doc.tokens[t].head
    }

    pub fn text(&self, t: usize) -> &'a str {
        &self.doc.tokens[t].text
    }

    pub fn sentence(&self, t: usize) -> usize {
        self.doc.tokens[t].sentence
    }

    /// Direct dependents of `t`, ascending.
    pub fn children(&self, t: usize) -> &[usize] {
        &self.children[t]
    }

    /// Head chain of `t` up to and including its sentence root.
    pub fn ancestors(&self, t: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = t;
        while !self.doc.tokens[cur].is_root() {
            cur = self.head(cur);
            out.push(cur);
        }
        out
    }

    /// Ancestors that precede `t` in the sentence, nearest first.
    pub fn left_ancestors(&self, t: usize) -> Vec<usize> {
        self.ancestors(t).into_iter().filter(|&a| a < t).collect()
    }

    /// `t` and all of its descendants, in document order.
    pub fn subtree(&self, t: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![t];
        while let Some(cur) = stack.pop() {
            out.push(cur);
            stack.extend(self.children(cur).iter().copied());
        }
        out.sort_unstable();
        out
    }

    /// Descendants of `t` (excluding `t`), in document order.
    pub fn descendants(&self, t: usize) -> Vec<usize> {
        self.subtree(t).into_iter().filter(|&d| d != t).collect()
    }

    pub fn left_subtree(&self, t: usize) -> Vec<usize> {
        self.subtree(t).into_iter().filter(|&d| d < t).collect()
    }

    pub fn right_subtree(&self, t: usize) -> Vec<usize> {
        self.subtree(t).into_iter().filter(|&d| d > t).collect()
    }

    /// Nearest strict ancestor tagged VERB or AUX.
    pub fn governing_verb(&self, t: usize) -> Option<usize> {
        self.ancestors(t)
            .into_iter()
            .find(|&a| self.doc.tokens[a].pos.is_verbal())
    }

    pub fn is_verbal(&self, t: usize) -> bool {
        self.doc.tokens[t].pos.is_verbal()
    }

    pub fn noun_chunk_of(&self, t: usize) -> Option<&'a NounChunk> {
        self.doc.noun_chunks.iter().find(|c| c.contains(t))
    }

    pub fn entity_at(&self, t: usize) -> Option<&'a EntitySpan> {
        self.doc.entities.iter().find(|e| e.contains(t))
    }

    pub fn label_at(&self, t: usize) -> Option<EntityLabel> {
        self.entity_at(t).map(|e| e.label)
    }

    /// The token inside `e` whose head lies outside it; the last token when
    /// every head is internal.
    pub fn entity_root(&self, e: &EntitySpan) -> usize {
        (e.start..e.end)
            .find(|&t| {
                let tok = &self.doc.tokens[t];
                tok.is_root() || !e.contains(tok.head)
            })
            .unwrap_or(e.end - 1)
    }

    pub fn entities(&self, label: EntityLabel) -> impl Iterator<Item = &'a EntitySpan> {
        self.doc.entities.iter().filter(move |e| e.label == label)
    }

    pub fn dep_is(&self, t: usize, label: &str) -> bool {
        self.doc.tokens[t].dep == label
    }

    pub fn is_subject(&self, t: usize) -> bool {
        self.dep_is(t, "nsubj") || self.dep_is(t, "nsubjpass")
    }

    pub fn is_direct_object(&self, t: usize) -> bool {
        self.dep_is(t, "dobj") || self.dep_is(t, "obj")
    }

    pub fn is_attr(&self, t: usize) -> bool {
        self.dep_is(t, "attr")
    }

    pub fn is_prepositional_object(&self, t: usize) -> bool {
        self.dep_is(t, "pobj")
    }

    pub fn is_preposition(&self, t: usize) -> bool {
        self.dep_is(t, "prep")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Pos, Token};

    const FIXTURES: &str = include_str!("../tests/data/fixtures.jsonl");

    fn apple() -> AnnotatedDocument {
        let line = FIXTURES.lines().next().unwrap();
        serde_json::from_str::<AnnotatedDocument>(line)
            .unwrap()
            .validated()
            .unwrap()
    }

    fn chain() -> AnnotatedDocument {
        // a <- b <- c, a is the root
        let tokens = vec![
            Token::new(0, "a", "a", Pos::Verb, "ROOT", 0, 0),
            Token::new(1, "b", "b", Pos::Noun, "dobj", 0, 0),
            Token::new(2, "c", "c", Pos::Noun, "nmod", 1, 0),
            Token::new(3, "d", "d", Pos::Noun, "ROOT", 3, 1),
        ];
        AnnotatedDocument::new("chain", "a b c d", tokens, vec![], vec![]).unwrap()
    }

    #[test]
    fn children_of_had() {
        let doc = apple();
        let v = TreeView::new(&doc);
        assert_eq!(v.children(1), &[0, 4]);
        assert!(v.children(2).is_empty());
        let doc = chain();
        assert!(TreeView::new(&doc).children(3).is_empty());
    }

    #[test]
    fn ancestors_walk_to_root() {
        let doc = apple();
        let v = TreeView::new(&doc);
        assert_eq!(v.ancestors(8), vec![5, 4, 1]);
        assert!(v.ancestors(1).is_empty());
        let doc = chain();
        assert_eq!(TreeView::new(&doc).ancestors(2), vec![1, 0]);
    }

    #[test]
    fn left_and_right_subtrees() {
        let doc = apple();
        let v = TreeView::new(&doc);
        assert_eq!(v.left_subtree(4), vec![2, 3]);
        assert_eq!(v.right_subtree(4), vec![5, 6, 7, 8]);
        assert_eq!(v.left_subtree(1), vec![0]);
        assert!(v.left_subtree(0).is_empty() && v.right_subtree(0).is_empty());
    }

    #[test]
    fn governing_verb_is_strict() {
        let doc = apple();
        let v = TreeView::new(&doc);
        assert_eq!(v.governing_verb(4), Some(1));
        assert_eq!(v.governing_verb(1), None);
        let tokens = vec![
            Token::new(0, "big", "big", Pos::Adj, "amod", 1, 0),
            Token::new(1, "news", "news", Pos::Noun, "ROOT", 1, 0),
        ];
        let frag = AnnotatedDocument::new("f", "big news", tokens, vec![], vec![]).unwrap();
        assert_eq!(TreeView::new(&frag).governing_verb(0), None);
    }

    #[test]
    fn noun_chunk_lookup() {
        let doc = apple();
        let v = TreeView::new(&doc);
        let c = v.noun_chunk_of(3).unwrap();
        assert_eq!((c.start, c.end, c.root), (2, 5, 4));
        assert_eq!(doc.span_text(c.start, c.end), "a net income");
        assert_eq!(v.noun_chunk_of(0).map(|c| (c.start, c.end)), Some((0, 1)));
        assert!(v.noun_chunk_of(5).is_none());
    }

    #[test]
    fn entity_lookup_and_root() {
        let doc = apple();
        let v = TreeView::new(&doc);
        let money = v.entity_at(7).unwrap();
        assert_eq!(money.label, EntityLabel::Money);
        assert_eq!(v.entity_root(money), 8);
        let org = v.entity_at(0).unwrap();
        assert_eq!(v.entity_root(org), 0);
        assert!(v.entity_at(2).is_none());
    }

    #[test]
    fn internally_headed_entity_falls_back_to_last_token() {
        // The whole sentence is one entity, so every head is internal.
        let tokens = vec![
            Token::new(0, "Big", "big", Pos::Propn, "compound", 1, 0),
            Token::new(1, "Co", "co", Pos::Propn, "ROOT", 1, 0),
        ];
        let ents = vec![EntitySpan::new(0, 2, EntityLabel::Org)];
        let doc = AnnotatedDocument::new("e", "Big Co", tokens, ents, vec![]).unwrap();
        let v = TreeView::new(&doc);
        // The root token has no external head; it is still the syntactic head.
        assert_eq!(v.entity_root(&doc.entities[0]), 1);
    }

    #[test]
    fn dependency_predicates() {
        let doc = apple();
        let v = TreeView::new(&doc);
        assert!(v.is_subject(0));
        assert!(v.is_prepositional_object(8));
        assert!(v.is_direct_object(4));
        assert!(v.is_preposition(5));
        let all = |t| {
            [
                v.is_subject(t),
                v.is_direct_object(t),
                v.is_attr(t),
                v.is_prepositional_object(t),
                v.is_preposition(t),
            ]
        };
        assert_eq!(all(2), [false; 5]);
    }
}
