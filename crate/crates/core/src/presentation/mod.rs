//! Presentations of connected graded algebras and the constructions built
//! on them: opposite and enveloping algebras, skew polynomial rings, Ore
//! extensions and homogenization of filtered presentations.

mod corpus;
mod group;
mod parse;

pub use corpus::{builtin, builtin_names, corpus_entry, CorpusEntry, ExpectedAs, Expectations};
pub use group::{group_algebra_oracle, GroupElement, OracleOutput, SUBALGEBRA_GENERATORS};
pub use parse::{parse, parse_document, parse_with_field, Document};

use std::collections::HashSet;

use thiserror::Error;

use crate::exactla::{FieldSpec, LinAlgError, Scalar};
use crate::freealg::{FreeElement, GeneratorInfo, Letter, Word};
use crate::groebner;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, col: usize, name: String },
    #[error("line {line}: relation `{relation}` is not homogeneous (degrees {degrees:?})")]
    Inhomogeneous { line: usize, relation: String, degrees: Vec<u32> },
    #[error("line {line}: relation is zero")]
    ZeroRelation { line: usize },
    #[error("relation `{0}` has degree 0")]
    DegreeZeroRelation(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have positive degree")]
    BadDegree(String),
    #[error("skew parameter p_{i}{j} is zero")]
    ZeroParameter { i: usize, j: usize },
    #[error("image of `{0}` is not homogeneous of the generator's degree")]
    NotDegreePreserving(String),
    #[error("endomorphism does not preserve relation `{0}`")]
    BrokenRelation(String),
    #[error("expected {expected} generator images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Field(#[from] LinAlgError),
}

/// A connected graded algebra `k<generators>/(relations)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub label: String,
    pub field: FieldSpec,
    pub generators: Vec<GeneratorInfo>,
    pub relations: Vec<FreeElement>,
}

fn check_generators(gens: &[GeneratorInfo]) -> Result<(), PresentationError> {
    let mut seen = HashSet::new();
    for g in gens {
        if g.degree == 0 {
            return Err(PresentationError::BadDegree(g.name.clone()));
        }
        if !seen.insert(g.name.as_str()) {
            return Err(PresentationError::DuplicateGenerator(g.name.clone()));
        }
    }
    Ok(())
}

impl Presentation {
    /// Validate and build. Zero relations are dropped silently; every other
    /// relation must be homogeneous of positive degree.
    pub fn new(
        label: impl Into<String>,
        field: FieldSpec,
        generators: Vec<GeneratorInfo>,
        relations: Vec<FreeElement>,
    ) -> Result<Self, PresentationError> {
        check_generators(&generators)?;
        let mut kept = Vec::with_capacity(relations.len());
        for r in relations {
            if r.is_zero() {
                continue;
            }
            match r.homogeneous_degree() {
                None => {
                    let mut degrees: Vec<u32> = r.terms().map(|(w, _)| w.degree()).collect();
                    degrees.dedup();
                    return Err(PresentationError::Inhomogeneous {
                        line: 0,
                        relation: r.display(&generators),
                        degrees,
                    });
                }
                Some(0) => return Err(PresentationError::DegreeZeroRelation(r.display(&generators))),
                Some(_) => kept.push(r),
            }
        }
        Ok(Presentation { label: label.into(), field, generators, relations: kept })
    }

    /// The free algebra on `generators`.
    pub fn free(label: impl Into<String>, field: FieldSpec, generators: Vec<GeneratorInfo>) -> Result<Self, PresentationError> {
        Self::new(label, field, generators, Vec::new())
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.relations.iter().filter_map(FreeElement::homogeneous_degree).max().unwrap_or(0)
    }

    pub fn all_degree_one(&self) -> bool {
        self.generators.iter().all(|g| g.degree == 1)
    }

    pub fn generator(&self, i: usize) -> FreeElement {
        FreeElement::from_word(self.field, Word::letter(i as Letter, &self.generators))
    }

    pub fn word(&self, letters: &[Letter]) -> Word {
        Word::new(letters, &self.generators)
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Render in the input language accepted by [`parse`].
    pub fn to_dsl(&self) -> String {
        let mut out = format!("algebra {} over {}\n", self.label, self.field);
        let degs: Vec<String> = self.generators.iter().map(|g| format!("{}={}", g.name, g.degree)).collect();
        out.push_str(&format!("deg {}\n", degs.join(", ")));
        for r in &self.relations {
            out.push_str(&format!("rel {}\n", r.display(&self.generators)));
        }
        out
    }
}

/// Same generators; every relation has its words reversed.
pub fn opposite(p: &Presentation) -> Presentation {
    let relations = p.relations.iter().map(|r| r.map_words(Word::reversed)).collect();
    Presentation {
        label: format!("{}-op", p.label),
        field: p.field,
        generators: p.generators.clone(),
        relations,
    }
}

/// `A ⊗ A°`: generators `x_i` (indices `0..n`) and `x_i°` (indices `n..2n`),
/// the relations of `A` on the left copy, those of `A°` on the right copy,
/// and commutators between the two copies.
pub fn enveloping(p: &Presentation) -> Presentation {
    let n = p.generators.len() as Letter;
    let mut generators = p.generators.clone();
    generators.extend(p.generators.iter().map(|g| GeneratorInfo::new(format!("{}°", g.name), g.degree)));
    let mut relations: Vec<FreeElement> = p.relations.clone();
    for r in &opposite(p).relations {
        relations.push(r.map_words(|w| w.map_letters(|l| l + n)));
    }
    let f = p.field;
    for i in 0..n {
        for j in 0..n {
            let a = Word::new(&[i, j + n], &generators);
            let b = Word::new(&[j + n, i], &generators);
            relations.push(FreeElement::from_terms(f, [(a, f.one()), (b, f.from_i64(-1))]));
        }
    }
    Presentation { label: format!("{}-env", p.label), field: f, generators, relations }
}

fn default_names(n: usize) -> Vec<String> {
    const SMALL: [&str; 4] = ["x", "y", "z", "w"];
    if n <= SMALL.len() {
        SMALL[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// `k_{p_ij}[x_1..x_n]`: degree-one generators with `x_j x_i = p_ij x_i x_j`
/// for `i < j`. `params[i][j]` is read for `i < j` only.
pub fn skew_polynomial(field: FieldSpec, n: usize, params: &[Vec<Scalar>]) -> Result<Presentation, PresentationError> {
    let generators: Vec<GeneratorInfo> = default_names(n).into_iter().map(|s| GeneratorInfo::new(s, 1)).collect();
    let mut relations = Vec::new();
    for (i, row) in params.iter().enumerate().take(n) {
        for (j, q) in row.iter().enumerate().take(n).skip(i + 1) {
            if field.is_zero(q) {
                return Err(PresentationError::ZeroParameter { i: i + 1, j: j + 1 });
            }
            let ji = Word::new(&[j as Letter, i as Letter], &generators);
            let ij = Word::new(&[i as Letter, j as Letter], &generators);
            relations.push(FreeElement::from_terms(field, [(ji, field.one()), (ij, field.neg(q))]));
        }
    }
    Presentation::new(format!("skew-{n}"), field, generators, relations)
}

/// Skew polynomial ring with every parameter equal to `q`.
pub fn skew_polynomial_uniform(field: FieldSpec, n: usize, q: i64) -> Result<Presentation, PresentationError> {
    let params = vec![vec![field.from_i64(q); n]; n];
    skew_polynomial(field, n, &params)
}

fn fresh_name(gens: &[GeneratorInfo], base: &str) -> String {
    let taken = |s: &str| gens.iter().any(|g| g.name == s);
    if !taken(base) {
        return base.to_string();
    }
    (1..).map(|i| format!("{base}{i}")).find(|s| !taken(s)).expect("unbounded")
}

/// Result of [`ore_extension`]: the new presentation together with the
/// caveat that only the endomorphism property was verified.
#[derive(Debug, Clone)]
pub struct OreExtension {
    pub presentation: Presentation,
    pub note: &'static str,
}

/// `A[t; α]` for a graded endomorphism `α` given on generators. Adds a
/// degree-one generator `t` with `t x_i = α(x_i) t`.
pub fn ore_extension(p: &Presentation, alpha: &[FreeElement]) -> Result<OreExtension, PresentationError> {
    if alpha.len() != p.generators.len() {
        return Err(PresentationError::ArityMismatch { expected: p.generators.len(), got: alpha.len() });
    }
    for (g, a) in p.generators.iter().zip(alpha) {
        if !a.is_zero() && a.homogeneous_degree() != Some(g.degree) {
            return Err(PresentationError::NotDegreePreserving(g.name.clone()));
        }
    }
    if !p.relations.is_empty() {
        let rs = groebner::complete(p, p.max_relation_degree());
        for r in &p.relations {
            if !rs.normal_form(&r.substitute(alpha)).is_zero() {
                return Err(PresentationError::BrokenRelation(r.display(&p.generators)));
            }
        }
    }
    let mut generators = p.generators.clone();
    let t = generators.len() as Letter;
    generators.push(GeneratorInfo::new(fresh_name(&p.generators, "t"), 1));
    let f = p.field;
    let tw = FreeElement::from_word(f, Word::letter(t, &generators));
    let mut relations = p.relations.clone();
    for (i, a) in alpha.iter().enumerate() {
        let x = FreeElement::from_word(f, Word::letter(i as Letter, &generators));
        let a = a.map_words(|w| Word::new(w.letters(), &generators));
        relations.push(tw.mul(&x).sub(&a.mul(&tw)));
    }
    let presentation = Presentation::new(format!("{}-ore", p.label), f, generators, relations)?;
    Ok(OreExtension { presentation, note: "endomorphism-checked only; invertibility not verified" })
}

/// A connected filtered algebra: generators carry filtration weights and
/// relations may mix degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredPresentation {
    pub label: String,
    pub field: FieldSpec,
    pub generators: Vec<GeneratorInfo>,
    pub relations: Vec<FreeElement>,
}

impl FilteredPresentation {
    pub fn new(
        label: impl Into<String>,
        field: FieldSpec,
        generators: Vec<GeneratorInfo>,
        relations: Vec<FreeElement>,
    ) -> Result<Self, PresentationError> {
        check_generators(&generators)?;
        let relations: Vec<FreeElement> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        for r in &relations {
            if r.max_degree() == Some(0) {
                return Err(PresentationError::DegreeZeroRelation(r.display(&generators)));
            }
        }
        Ok(FilteredPresentation { label: label.into(), field, generators, relations })
    }

    /// The associated graded presentation: top-degree parts of the relations.
    pub fn associated_graded(&self) -> Presentation {
        let relations = self
            .relations
            .iter()
            .map(|r| r.graded_part(r.max_degree().expect("nonzero relation")))
            .collect();
        Presentation {
            label: format!("{}-gr", self.label),
            field: self.field,
            generators: self.generators.clone(),
            relations,
        }
    }
}

/// The Rees ring presentation: a central degree-one generator `t` is
/// appended and each relation `sum_d r_d` of top degree `D` becomes
/// `sum_d r_d t^(D-d)`.
pub fn homogenize(fp: &FilteredPresentation) -> Presentation {
    // t goes first so it is the smallest letter and leading words avoid it.
    let mut generators = vec![GeneratorInfo::new(fresh_name(&fp.generators, "t"), 1)];
    generators.extend(fp.generators.iter().cloned());
    let t: Letter = 0;
    let f = fp.field;
    let mut relations = Vec::new();
    for r in &fp.relations {
        let top = r.max_degree().expect("nonzero relation");
        let h = FreeElement::from_terms(
            f,
            r.terms().map(|(w, c)| {
                let mut letters: Vec<Letter> = w.letters().iter().map(|l| l + 1).collect();
                letters.extend(std::iter::repeat_n(t, (top - w.degree()) as usize));
                (Word::new(&letters, &generators), c.clone())
            }),
        );
        relations.push(h);
    }
    for i in 1..generators.len() as Letter {
        let a = Word::new(&[t, i], &generators);
        let b = Word::new(&[i, t], &generators);
        relations.push(FreeElement::from_terms(f, [(b, f.one()), (a, f.from_i64(-1))]));
    }
    Presentation { label: format!("{}-h", fp.label), field: f, generators, relations }
}

/// Set the homogenizing generator (the first one) to 1 and drop the
/// centrality relations: the inverse of [`homogenize`] on relations.
pub fn dehomogenize(p: &Presentation) -> FilteredPresentation {
    let generators = p.generators[1..].to_vec();
    let relations = p
        .relations
        .iter()
        .map(|r| {
            FreeElement::from_terms(
                p.field,
                r.terms().map(|(w, c)| {
                    let letters: Vec<Letter> = w.letters().iter().filter(|&&l| l != 0).map(|l| l - 1).collect();
                    (Word::new(&letters, &generators), c.clone())
                }),
            )
        })
        .filter(|r| !r.is_zero())
        .collect();
    FilteredPresentation { label: p.label.clone(), field: p.field, generators, relations }
}
