//! Degree-truncated noncommutative Gröbner bases.
//!
//! Completion works one degree at a time: the input relations and the
//! overlap ambiguities of that degree are reduced by the rules found so far
//! and then put in reduced echelon form with respect to the deglex order.
//! Each echelon row becomes a rule whose lead is its largest word. Since all
//! input is homogeneous, the rules of degree `d` are final once degree `d`
//! has been processed, and the rule set is inter-reduced by construction.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use thiserror::Error;

use crate::exactla::{FieldSpec, SparseMatrix};
use crate::freealg::{FreeElement, GeneratorInfo, Letter, Word};
use crate::presentation::Presentation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("degree {requested} is above the certified degree {certified}")]
    UncertifiedDegree { requested: u32, certified: u32 },
}

/// `lead -> tail`, with `lead` larger than every word of `tail`.
#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    pub lead: Word,
    pub tail: FreeElement,
}

impl RewriteRule {
    /// The ideal element `lead - tail`.
    pub fn element(&self) -> FreeElement {
        FreeElement::from_word(self.tail.field(), self.lead.clone()).sub(&self.tail)
    }
}

const NONE: u32 = u32::MAX;

/// Trie over the rule leads for subword lookups.
#[derive(Debug, Clone)]
struct LeadTrie {
    width: usize,
    children: Vec<u32>,
    terminal: Vec<u32>,
}

impl LeadTrie {
    fn new(width: usize) -> Self {
        LeadTrie { width, children: vec![NONE; width], terminal: vec![NONE] }
    }

    fn insert(&mut self, word: &[Letter], rule: usize) {
        let mut node = 0usize;
        for &l in word {
            let slot = node * self.width + l as usize;
            if self.children[slot] == NONE {
                self.children[slot] = self.terminal.len() as u32;
                self.terminal.push(NONE);
                self.children.extend(std::iter::repeat_n(NONE, self.width));
            }
            node = self.children[slot] as usize;
        }
        self.terminal[node] = rule as u32;
    }

    /// Rule whose lead is a prefix of `word`, if any.
    fn prefix_match(&self, word: &[Letter]) -> Option<(usize, usize)> {
        let mut node = 0usize;
        for (i, &l) in word.iter().enumerate() {
            let next = self.children[node * self.width + l as usize];
            if next == NONE {
                return None;
            }
            node = next as usize;
            if self.terminal[node] != NONE {
                return Some((self.terminal[node] as usize, i + 1));
            }
        }
        None
    }

    fn exact(&self, word: &[Letter]) -> Option<usize> {
        let mut node = 0usize;
        for &l in word {
            let next = self.children[node * self.width + l as usize];
            if next == NONE {
                return None;
            }
            node = next as usize;
        }
        (self.terminal[node] != NONE).then_some(self.terminal[node] as usize)
    }
}

/// A truncated Gröbner basis together with its certificate.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    field: FieldSpec,
    generators: Vec<GeneratorInfo>,
    rules: Vec<RewriteRule>,
    degree_bound: u32,
    complete_below: u32,
    globally_complete: bool,
    max_lead_len: usize,
    trie: LeadTrie,
}

/// An occurrence of a rule lead inside a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occurrence {
    pub start: usize,
    pub rule: usize,
}

impl RewriteSystem {
    fn empty(field: FieldSpec, generators: Vec<GeneratorInfo>, degree_bound: u32) -> Self {
        let width = generators.len().max(1);
        RewriteSystem {
            field,
            generators,
            rules: Vec::new(),
            degree_bound,
            complete_below: degree_bound,
            globally_complete: false,
            max_lead_len: 0,
            trie: LeadTrie::new(width),
        }
    }

    fn push_rule(&mut self, rule: RewriteRule) -> usize {
        let idx = self.rules.len();
        self.trie.insert(rule.lead.letters(), idx);
        self.max_lead_len = self.max_lead_len.max(rule.lead.len());
        self.rules.push(rule);
        idx
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> &[GeneratorInfo] {
        &self.generators
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Every overlap of total degree up to this value has been resolved.
    pub fn complete_below(&self) -> u32 {
        self.complete_below
    }

    /// True when no ambiguity was skipped: the rule set is a full Gröbner
    /// basis and normal forms are certified in every degree.
    pub fn is_globally_complete(&self) -> bool {
        self.globally_complete
    }

    pub fn is_certified(&self, degree: u32) -> bool {
        self.globally_complete || degree <= self.complete_below
    }

    pub fn check_degree(&self, degree: u32) -> Result<(), GroebnerError> {
        if self.is_certified(degree) {
            Ok(())
        } else {
            Err(GroebnerError::UncertifiedDegree { requested: degree, certified: self.complete_below })
        }
    }

    pub fn max_lead_degree(&self) -> u32 {
        self.rules.iter().map(|r| r.lead.degree()).max().unwrap_or(0)
    }

    /// Number of rules per lead degree.
    pub fn rule_counts(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for r in &self.rules {
            *out.entry(r.lead.degree()).or_insert(0) += 1;
        }
        out
    }

    /// Leftmost occurrence of a lead in `word`.
    pub fn find_occurrence(&self, word: &[Letter]) -> Option<Occurrence> {
        (0..word.len()).find_map(|start| {
            self.trie.prefix_match(&word[start..]).map(|(rule, _)| Occurrence { start, rule })
        })
    }

    /// All occurrences of leads in `word`.
    pub fn occurrences(&self, word: &[Letter]) -> Vec<Occurrence> {
        (0..word.len())
            .filter_map(|start| self.trie.prefix_match(&word[start..]).map(|(rule, _)| Occurrence { start, rule }))
            .collect()
    }

    pub fn is_normal(&self, word: &[Letter]) -> bool {
        self.find_occurrence(word).is_none()
    }

    /// Whether some lead is a suffix of `word`.
    fn has_lead_suffix(&self, word: &[Letter]) -> bool {
        let lo = word.len().saturating_sub(self.max_lead_len);
        (lo..word.len()).any(|s| self.trie.exact(&word[s..]).is_some())
    }

    fn rewrite_at(&self, word: &Word, occ: Occurrence) -> impl Iterator<Item = (Word, &crate::exactla::Scalar)> + '_ {
        let rule = &self.rules[occ.rule];
        let end = occ.start + rule.lead.len();
        let left = word.slice(0, occ.start, &self.generators);
        let right = word.slice(end, word.len(), &self.generators);
        rule.tail.terms().map(move |(t, c)| (t.sandwich(&left, &right), c))
    }

    /// Normal form: no word of the result contains a lead. Certified when
    /// every degree of `e` passes [`Self::is_certified`].
    pub fn normal_form(&self, e: &FreeElement) -> FreeElement {
        let f = self.field;
        let mut todo = e.clone().into_terms();
        let mut out = FreeElement::zero(f);
        while let Some((w, c)) = todo.pop_last() {
            match self.find_occurrence(w.letters()) {
                None => out.add_term(w, &c),
                Some(occ) => {
                    for (nw, x) in self.rewrite_at(&w, occ) {
                        let add = f.mul(&c, x);
                        match todo.get_mut(&nw) {
                            Some(y) => {
                                *y = f.add(y, &add);
                                if f.is_zero(y) {
                                    todo.remove(&nw);
                                }
                            }
                            None => {
                                todo.insert(nw, add);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Normal form together with its certification status.
    pub fn normal_form_checked(&self, e: &FreeElement) -> (FreeElement, bool) {
        let certified = e.terms().all(|(w, _)| self.is_certified(w.degree()));
        (self.normal_form(e), certified)
    }

    /// Reduce by rewriting a randomly chosen reducible word at a randomly
    /// chosen occurrence until nothing is reducible.
    pub fn normal_form_randomized<R: Rng>(&self, e: &FreeElement, rng: &mut R) -> FreeElement {
        let mut cur = e.clone();
        loop {
            let reducible: Vec<(Word, Vec<Occurrence>)> = cur
                .terms()
                .map(|(w, _)| (w.clone(), self.occurrences(w.letters())))
                .filter(|(_, occ)| !occ.is_empty())
                .collect();
            if reducible.is_empty() {
                return cur;
            }
            let (w, occs) = &reducible[rng.gen_range(0..reducible.len())];
            let occ = occs[rng.gen_range(0..occs.len())];
            let c = cur.coefficient(w);
            let replacement = FreeElement::from_terms(
                self.field,
                self.rewrite_at(w, occ).map(|(nw, x)| (nw, self.field.mul(&c, x))),
            );
            cur.add_term(w.clone(), &self.field.neg(&c));
            cur.add_scaled(&replacement, &self.field.one());
        }
    }

    /// Normal form of a product.
    pub fn multiply(&self, a: &FreeElement, b: &FreeElement) -> FreeElement {
        self.normal_form(&a.mul(b))
    }

    /// Degree-`d` words containing no lead, in increasing order.
    pub fn normal_words(&self, d: u32) -> Result<Vec<Word>, GroebnerError> {
        self.check_degree(d)?;
        Ok(self.enumerate_normal(d).pop().unwrap_or_default())
    }

    /// Normal words of every degree `0..=d`, built by appending letters to
    /// shorter normal words.
    fn enumerate_normal(&self, d: u32) -> Vec<Vec<Word>> {
        let mut by_degree: Vec<Vec<Word>> = vec![vec![Word::empty()]];
        for deg in 1..=d {
            let mut words = Vec::new();
            for (g, info) in self.generators.iter().enumerate() {
                if info.degree > deg {
                    continue;
                }
                for u in &by_degree[(deg - info.degree) as usize] {
                    let mut letters = u.letters().to_vec();
                    letters.push(g as Letter);
                    if !self.has_lead_suffix(&letters) {
                        words.push(Word::from_parts(&letters, deg));
                    }
                }
            }
            words.sort();
            by_degree.push(words);
        }
        by_degree
    }

    /// Normal-word bases of `A_0 .. A_d` with lookup tables.
    pub fn normal_basis(&self, d: u32) -> Result<NormalBasis, GroebnerError> {
        self.check_degree(d)?;
        let words = self.enumerate_normal(d);
        let index = words
            .iter()
            .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
            .collect();
        Ok(NormalBasis { words, index })
    }
}

/// Bases of the graded pieces `A_0..A_D` by normal words.
#[derive(Debug, Clone)]
pub struct NormalBasis {
    words: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
}

impl NormalBasis {
    pub fn max_degree(&self) -> u32 {
        (self.words.len() - 1) as u32
    }

    /// `dim A_d`, zero for negative or out-of-range degrees.
    pub fn dim(&self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        self.words.get(d as usize).map_or(0, Vec::len)
    }

    pub fn words(&self, d: u32) -> &[Word] {
        &self.words[d as usize]
    }

    pub fn index_of(&self, w: &Word) -> usize {
        self.index[w.degree() as usize][w]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.words.iter().map(Vec::len).collect()
    }
}

/// Overlap ambiguities `u = a s`, `v = s b` with `s` nonempty and proper in
/// both; returns `(overlap degree, S-element)` pairs.
fn overlaps(rs: &RewriteSystem, fi: usize, gi: usize) -> Vec<(u32, FreeElement)> {
    let gens = &rs.generators;
    let (f, g) = (&rs.rules[fi], &rs.rules[gi]);
    let (u, v) = (f.lead.letters(), g.lead.letters());
    let mut out = Vec::new();
    for k in 1..u.len().min(v.len()) {
        if u[u.len() - k..] != v[..k] {
            continue;
        }
        let front = Word::new(&u[..u.len() - k], gens);
        let rest = Word::new(&v[k..], gens);
        let degree = f.lead.degree() + rest.degree();
        let mut s = g.tail.sandwich(&front, &Word::empty());
        s.add_scaled(&f.tail.sandwich(&Word::empty(), &rest), &rs.field.from_i64(-1));
        out.push((degree, s));
    }
    out
}

/// Complete the relations of `p` to a Gröbner basis resolved in every
/// degree up to `bound`.
pub fn complete(p: &Presentation, bound: u32) -> RewriteSystem {
    let f = p.field;
    let mut rs = RewriteSystem::empty(f, p.generators.clone(), bound);
    let mut overflow = false;
    let mut pending: BTreeMap<u32, Vec<FreeElement>> = BTreeMap::new();
    for r in &p.relations {
        let d = r.homogeneous_degree().expect("presentation relations are homogeneous");
        if d <= bound {
            pending.entry(d).or_default().push(r.clone());
        } else {
            overflow = true;
        }
    }
    for d in 1..=bound {
        let Some(cands) = pending.remove(&d) else { continue };
        let reduced: Vec<FreeElement> =
            cands.iter().map(|c| rs.normal_form(c)).filter(|c| !c.is_zero()).collect();
        if reduced.is_empty() {
            continue;
        }
        // Columns in decreasing word order, so pivots are leading words.
        let mut words: Vec<Word> = reduced.iter().flat_map(|c| c.terms().map(|(w, _)| w.clone())).collect();
        words.sort();
        words.dedup();
        words.reverse();
        let col: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let triplets = reduced
            .iter()
            .enumerate()
            .flat_map(|(r, c)| c.terms().map(move |(w, x)| (r, w, x.clone())).collect::<Vec<_>>())
            .map(|(r, w, x)| (r, col[w], x));
        let m = SparseMatrix::from_triplets(f, reduced.len(), words.len(), triplets)
            .expect("indices in range");
        let rref = m.rref();
        let first_new = rs.rules.len();
        for row in rref.matrix.rows().iter().take(rref.rank) {
            let (pivot, _) = &row[0];
            let lead = words[*pivot].clone();
            let tail = FreeElement::from_terms(f, row[1..].iter().map(|(c, x)| (words[*c].clone(), f.neg(x))));
            rs.push_rule(RewriteRule { lead, tail });
        }
        for ni in first_new..rs.rules.len() {
            for ri in 0..rs.rules.len() {
                let mut found = overlaps(&rs, ni, ri);
                if ri < first_new {
                    found.extend(overlaps(&rs, ri, ni));
                }
                for (deg, s) in found {
                    if deg <= bound {
                        pending.entry(deg).or_default().push(s);
                    } else {
                        overflow = true;
                    }
                }
            }
        }
    }
    rs.rules_sorted();
    rs.globally_complete = !overflow;
    rs
}

impl RewriteSystem {
    /// Re-index rules in increasing lead order so output is canonical.
    fn rules_sorted(&mut self) {
        let mut rules = std::mem::take(&mut self.rules);
        rules.sort_by(|a, b| a.lead.cmp(&b.lead));
        self.trie = LeadTrie::new(self.generators.len().max(1));
        self.max_lead_len = 0;
        for r in rules {
            self.push_rule(r);
        }
    }
}
