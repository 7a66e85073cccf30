//! Words and sparse linear combinations in the free associative algebra on
//! weighted generators.
//!
//! Words are ordered degree-lexicographically: first by weighted degree, then
//! lexicographically by generator index, generators ranked in the order they
//! are listed. This order is admissible (compatible with concatenation on
//! both sides) because every generator has positive degree.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::exactla::{FieldSpec, Scalar};

pub type Letter = u16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub degree: u32,
}

impl GeneratorInfo {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        GeneratorInfo { name: name.into(), degree }
    }
}

/// A monomial: a finite sequence of generator indices with its cached
/// weighted degree. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: SmallVec<[Letter; 14]>,
    degree: u32,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: SmallVec::new(), degree: 0 }
    }

    pub fn new(letters: &[Letter], gens: &[GeneratorInfo]) -> Self {
        let degree = letters.iter().map(|&l| gens[l as usize].degree).sum();
        Word { letters: letters.into(), degree }
    }

    /// Build from letters whose degree is already known.
    pub(crate) fn from_parts(letters: &[Letter], degree: u32) -> Self {
        Word { letters: letters.into(), degree }
    }

    pub fn letter(l: Letter, gens: &[GeneratorInfo]) -> Self {
        Word::new(&[l], gens)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters, degree: self.degree + other.degree }
    }

    /// `left * self * right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Word {
        let mut letters = SmallVec::with_capacity(left.len() + self.len() + right.len());
        letters.extend_from_slice(&left.letters);
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&right.letters);
        Word { letters, degree: left.degree + self.degree + right.degree }
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters, degree: self.degree }
    }

    /// Subword `letters[start..end]`.
    pub fn slice(&self, start: usize, end: usize, gens: &[GeneratorInfo]) -> Word {
        Word::new(&self.letters[start..end], gens)
    }

    /// Rename letters (e.g. to embed into a larger generator set).
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Word {
        Word { letters: self.letters.iter().map(|&l| f(l)).collect(), degree: self.degree }
    }

    pub fn display(&self, gens: &[GeneratorInfo]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&gens[l as usize].name);
            if run > 1 {
                out.push_str(&format!("^{run}"));
            }
            i += run;
        }
        out
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.letters.as_slice())
    }
}

/// Degree-lexicographic comparison.
pub fn compare_words(a: &Word, b: &Word) -> Ordering {
    a.degree.cmp(&b.degree).then_with(|| a.letters.cmp(&b.letters))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_words(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All words of weighted degree exactly `d`, increasing in deglex order.
pub fn enumerate_words(gens: &[GeneratorInfo], d: u32) -> Vec<Word> {
    fn go(gens: &[GeneratorInfo], left: u32, prefix: &mut Vec<Letter>, deg: u32, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(Word::from_parts(prefix, deg));
            return;
        }
        for (i, g) in gens.iter().enumerate() {
            if g.degree <= left {
                prefix.push(i as Letter);
                go(gens, left - g.degree, prefix, deg, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(gens, d, &mut Vec::new(), d, &mut out);
    // Lexicographic DFS order equals deglex order within one degree.
    out
}

/// A finite linear combination of words with nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeElement {
    field: FieldSpec,
    terms: BTreeMap<Word, Scalar>,
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl FreeElement {
    pub fn zero(field: FieldSpec) -> Self {
        FreeElement { field, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_word(field, Word::empty())
    }

    pub fn from_word(field: FieldSpec, w: Word) -> Self {
        Self::monomial(field, w, field.one())
    }

    pub fn monomial(field: FieldSpec, w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(w, c);
        }
        FreeElement { field, terms }
    }

    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut e = FreeElement::zero(field);
        for (w, c) in terms {
            e.add_term(w, &c);
        }
        e
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Largest word and its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Common degree of all words, `None` for zero or inhomogeneous elements.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let first = self.terms.keys().next()?.degree;
        self.terms.keys().all(|w| w.degree == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Word::degree).max()
    }

    /// `self += c * w`.
    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x = self.field.add(x, c);
                if self.field.is_zero(x) {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &FreeElement, c: &Scalar) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &self.field.mul(c, x));
        }
    }

    pub fn add(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        out.add_scaled(other, &self.field.one());
        out
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        out.add_scaled(other, &self.field.from_i64(-1));
        out
    }

    pub fn neg(&self) -> FreeElement {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> FreeElement {
        if self.field.is_zero(c) {
            return FreeElement::zero(self.field);
        }
        let terms = self.terms.iter().map(|(w, x)| (w.clone(), self.field.mul(c, x))).collect();
        FreeElement { field: self.field, terms }
    }

    /// Bilinear extension of concatenation.
    pub fn mul(&self, other: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &self.field.mul(a, b));
            }
        }
        out
    }

    /// `left * self * right` for words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> FreeElement {
        let terms = self.terms.iter().map(|(w, x)| (w.sandwich(left, right), x.clone())).collect();
        FreeElement { field: self.field, terms }
    }

    /// Part of degree `d`.
    pub fn graded_part(&self, d: u32) -> FreeElement {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| w.degree == d)
            .map(|(w, x)| (w.clone(), x.clone()))
            .collect();
        FreeElement { field: self.field, terms }
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> FreeElement {
        FreeElement::from_terms(self.field, self.terms.iter().map(|(w, x)| (f(w), x.clone())))
    }

    /// Image under the algebra map sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[FreeElement]) -> FreeElement {
        let mut out = FreeElement::zero(self.field);
        for (w, x) in &self.terms {
            let mut prod = FreeElement::one(self.field);
            for &l in w.letters() {
                prod = prod.mul(&images[l as usize]);
            }
            out.add_scaled(&prod, x);
        }
        out
    }

    /// Human-readable form using generator names, largest word first.
    pub fn display(&self, gens: &[GeneratorInfo]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = c.display_signed(&self.field);
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let word = w.display(gens);
            if mag == "1" {
                out.push_str(&word);
            } else if w.is_empty() {
                out.push_str(&mag);
            } else {
                out.push_str(&format!("{mag}*{word}"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn gens2() -> Vec<GeneratorInfo> {
        vec![GeneratorInfo::new("x", 1), GeneratorInfo::new("y", 1)]
    }

    fn var(i: Letter, g: &[GeneratorInfo]) -> FreeElement {
        FreeElement::from_word(Q, Word::letter(i, g))
    }

    #[test]
    fn product_of_generators() {
        let g = gens2();
        let p = var(0, &g).mul(&var(1, &g));
        assert_eq!(p.display(&g), "x*y");
    }

    #[test]
    fn noncommutative_expansion() {
        let g = gens2();
        let (x, y) = (var(0, &g), var(1, &g));
        let p = x.add(&y).mul(&x.sub(&y));
        let expect = FreeElement::from_terms(
            Q,
            [
                (Word::new(&[0, 0], &g), Q.from_i64(1)),
                (Word::new(&[0, 1], &g), Q.from_i64(-1)),
                (Word::new(&[1, 0], &g), Q.from_i64(1)),
                (Word::new(&[1, 1], &g), Q.from_i64(-1)),
            ],
        );
        assert_eq!(p, expect);
    }

    #[test]
    fn unit_is_identity() {
        let g = gens2();
        let w = FreeElement::from_word(Q, Word::new(&[1, 0, 1], &g));
        assert_eq!(FreeElement::one(Q).mul(&w), w);
        assert_eq!(w.mul(&FreeElement::one(Q)), w);
    }

    #[test]
    fn deglex_basics() {
        let g = gens2();
        assert!(Word::new(&[1], &g) < Word::new(&[0, 0], &g));
        assert!(Word::new(&[0, 1], &g) < Word::new(&[1, 0], &g));
    }

    #[test]
    fn enumerate_small() {
        let g = gens2();
        let ws = enumerate_words(&g, 2);
        let shown: Vec<String> = ws.iter().map(|w| w.display(&g)).collect();
        assert_eq!(shown, ["x^2", "x*y", "y*x", "y^2"]);
        assert_eq!(enumerate_words(&g, 0), vec![Word::empty()]);
        let weighted = vec![GeneratorInfo::new("x", 1), GeneratorInfo::new("y", 2)];
        let ws = enumerate_words(&weighted, 2);
        assert_eq!(ws, vec![Word::new(&[0, 0], &weighted), Word::new(&[1], &weighted)]);
    }

    #[test]
    fn word_count_is_power() {
        let g: Vec<_> = (0..3).map(|i| GeneratorInfo::new(format!("g{i}"), 1)).collect();
        for d in 0..6 {
            let ws = enumerate_words(&g, d);
            assert_eq!(ws.len(), 3usize.pow(d));
            assert!(ws.windows(2).all(|p| p[0] < p[1]));
        }
    }

    fn arb_word() -> impl Strategy<Value = Vec<Letter>> {
        proptest::collection::vec(0u16..3, 0..6)
    }

    fn arb_element() -> impl Strategy<Value = Vec<(Vec<Letter>, i64)>> {
        proptest::collection::vec((arb_word(), -3i64..4), 0..5)
    }

    fn weighted() -> Vec<GeneratorInfo> {
        vec![GeneratorInfo::new("a", 1), GeneratorInfo::new("b", 2), GeneratorInfo::new("c", 1)]
    }

    fn build(spec: &[(Vec<Letter>, i64)]) -> FreeElement {
        let g = weighted();
        FreeElement::from_terms(Q, spec.iter().map(|(w, c)| (Word::new(w, &g), Q.from_i64(*c))))
    }

    proptest! {
        #[test]
        fn order_is_admissible(u in arb_word(), v in arb_word(), w in arb_word()) {
            let g = weighted();
            let (u, v, w) = (Word::new(&u, &g), Word::new(&v, &g), Word::new(&w, &g));
            if u < v {
                prop_assert!(w.concat(&u) < w.concat(&v));
                prop_assert!(u.concat(&w) < v.concat(&w));
            }
        }

        #[test]
        fn multiplication_associates_and_distributes(a in arb_element(), b in arb_element(), c in arb_element()) {
            let (a, b, c) = (build(&a), build(&b), build(&c));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        }
    }
}
