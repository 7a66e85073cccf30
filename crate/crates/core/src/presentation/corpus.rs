//! Named presentations shipped with the crate, each with the invariants it
//! is known to have.

use super::{
    homogenize, parse_with_field, skew_polynomial, skew_polynomial_uniform, FilteredPresentation,
    Presentation, PresentationError,
};
use crate::exactla::FieldSpec;
use crate::freealg::{FreeElement, GeneratorInfo, Word};

const SMITH_ZHANG: &str = include_str!("../../corpus/smith-zhang.alg");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedAs {
    Regular { n: usize, l: i64 },
    Fails,
}

/// Known answers for a corpus entry. `None` means no expectation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Expectations {
    pub hilbert: Option<&'static str>,
    pub gldim: Option<usize>,
    pub koszul: Option<bool>,
    pub as_status: Option<ExpectedAs>,
}

#[derive(Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    build: fn(FieldSpec) -> Result<Presentation, PresentationError>,
    pub expectations: Expectations,
    /// Known facts that are not computed, shown next to the invariants.
    pub commentary: &'static [&'static str],
}

impl CorpusEntry {
    pub fn build(&self, field: FieldSpec) -> Result<Presentation, PresentationError> {
        let mut p = (self.build)(field)?;
        p.label = self.name.to_string();
        Ok(p)
    }
}

fn skew3(field: FieldSpec) -> Result<Presentation, PresentationError> {
    let mut params = vec![vec![field.one(); 3]; 3];
    params[0][1] = field.from_i64(2);
    params[0][2] = field.from_i64(3);
    params[1][2] = field.from_i64(5);
    skew_polynomial(field, 3, &params)
}

fn free2(field: FieldSpec) -> Result<Presentation, PresentationError> {
    Presentation::free("free-2", field, vec![GeneratorInfo::new("x", 1), GeneratorInfo::new("y", 1)])
}

fn cubic(field: FieldSpec) -> Result<Presentation, PresentationError> {
    parse_with_field("algebra cubic over Q; deg x=1, y=1; rel x*x*y - y*x*x; rel x*y*y - y*y*x", Some(field))
}

fn weyl(field: FieldSpec) -> Result<Presentation, PresentationError> {
    let gens = vec![GeneratorInfo::new("x", 1), GeneratorInfo::new("y", 1)];
    let rel = FreeElement::from_terms(
        field,
        [
            (Word::new(&[1, 0], &gens), field.one()),
            (Word::new(&[0, 1], &gens), field.from_i64(-1)),
            (Word::empty(), field.from_i64(-1)),
        ],
    );
    let fp = FilteredPresentation::new("weyl", field, gens, vec![rel])?;
    Ok(homogenize(&fp))
}

const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "polynomial-1",
        description: "k[x]",
        build: |f| skew_polynomial_uniform(f, 1, 1),
        expectations: Expectations {
            hilbert: Some("1/(1-t)"),
            gldim: Some(1),
            koszul: Some(true),
            as_status: Some(ExpectedAs::Regular { n: 1, l: 1 }),
        },
        commentary: &[],
    },
    CorpusEntry {
        name: "polynomial-2",
        description: "commutative k[x,y]",
        build: |f| skew_polynomial_uniform(f, 2, 1),
        expectations: Expectations {
            hilbert: Some("1/(1-t)^2"),
            gldim: Some(2),
            koszul: Some(true),
            as_status: Some(ExpectedAs::Regular { n: 2, l: 2 }),
        },
        commentary: &[],
    },
    CorpusEntry {
        name: "polynomial-3",
        description: "commutative k[x,y,z]",
        build: |f| skew_polynomial_uniform(f, 3, 1),
        expectations: Expectations {
            hilbert: Some("1/(1-t)^3"),
            gldim: Some(3),
            koszul: Some(true),
            as_status: Some(ExpectedAs::Regular { n: 3, l: 3 }),
        },
        commentary: &[],
    },
    CorpusEntry {
        name: "quantum-plane-2",
        description: "quantum plane yx = 2xy",
        build: |f| skew_polynomial_uniform(f, 2, 2),
        expectations: Expectations {
            hilbert: Some("1/(1-t)^2"),
            gldim: Some(2),
            koszul: Some(true),
            as_status: Some(ExpectedAs::Regular { n: 2, l: 2 }),
        },
        commentary: &[],
    },
    CorpusEntry {
        name: "skew-3",
        description: "skew polynomial ring with p12 = 2, p13 = 3, p23 = 5",
        build: skew3,
        expectations: Expectations {
            hilbert: Some("1/(1-t)^3"),
            gldim: Some(3),
            koszul: Some(true),
            as_status: Some(ExpectedAs::Regular { n: 3, l: 3 }),
        },
        commentary: &[],
    },
    CorpusEntry {
        name: "free-2",
        description: "free algebra on two generators",
        build: free2,
        expectations: Expectations {
            hilbert: Some("1/(1-2t)"),
            gldim: Some(1),
            koszul: Some(true),
            as_status: Some(ExpectedAs::Fails),
        },
        commentary: &[],
    },
    CorpusEntry {
        name: "cubic-as3",
        description: "cubic AS regular algebra x^2y = yx^2, xy^2 = y^2x",
        build: cubic,
        expectations: Expectations {
            hilbert: Some("1/((1-t)^2*(1-t^2))"),
            gldim: Some(3),
            koszul: Some(false),
            as_status: Some(ExpectedAs::Regular { n: 3, l: 4 }),
        },
        commentary: &[],
    },
    CorpusEntry {
        name: "weyl-homogenized",
        description: "Rees ring of the Weyl algebra: yx - xy = t^2, t central",
        build: weyl,
        expectations: Expectations {
            hilbert: Some("1/(1-t)^3"),
            gldim: Some(3),
            koszul: Some(true),
            as_status: Some(ExpectedAs::Regular { n: 3, l: 3 }),
        },
        commentary: &[],
    },
    CorpusEntry {
        name: "smith-zhang",
        description: "subalgebra of the group algebra of a nilpotent group; Koszul, not AS regular",
        build: |f| parse_with_field(SMITH_ZHANG, Some(f)),
        expectations: Expectations {
            hilbert: Some("1/(1-t)^4"),
            gldim: Some(4),
            koszul: Some(true),
            as_status: Some(ExpectedAs::Fails),
        },
        commentary: &[
            "expected: htr of the quotient division ring is 3, below its GK transcendence degree 4 (not computed)",
        ],
    },
];

pub fn builtin_names() -> Vec<&'static str> {
    CORPUS.iter().map(|e| e.name).collect()
}

pub fn corpus_entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}

pub fn builtin(name: &str, field: FieldSpec) -> Result<Presentation, PresentationError> {
    corpus_entry(name)
        .ok_or_else(|| PresentationError::UnknownBuiltin(name.to_string()))?
        .build(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::group_algebra_oracle;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn polynomial_3_is_uniform_skew() {
        let p = builtin("polynomial-3", Q).unwrap();
        assert_eq!(p.relations, skew_polynomial_uniform(Q, 3, 1).unwrap().relations);
    }

    #[test]
    fn quantum_plane() {
        let p = builtin("quantum-plane-2", Q).unwrap();
        assert_eq!(p.relations[0].display(&p.generators), "y*x - 2*x*y");
    }

    #[test]
    fn unknown_name() {
        assert_eq!(builtin("nope", Q).unwrap_err(), PresentationError::UnknownBuiltin("nope".into()));
    }

    #[test]
    fn every_entry_builds_over_large_prime() {
        for name in builtin_names() {
            let p = builtin(name, FieldSpec::Prime(32003)).unwrap();
            assert_eq!(p.label, name);
        }
    }

    #[test]
    fn smith_zhang_golden_matches_oracle() {
        let p = builtin("smith-zhang", Q).unwrap();
        assert_eq!(p.generators.len(), 4);
        assert_eq!(p.relations.len(), 6);
        assert!(p.relations.iter().all(|r| r.homogeneous_degree() == Some(2)));
        let derived = group_algebra_oracle(Q, 3);
        let mut golden = p.relations.clone();
        let mut fresh: Vec<FreeElement> = derived.relations.iter().flatten().cloned().collect();
        golden.sort_by_key(|r| r.leading().map(|(w, _)| w.clone()));
        fresh.sort_by_key(|r| r.leading().map(|(w, _)| w.clone()));
        assert_eq!(golden, fresh);
    }

    #[test]
    fn smith_zhang_golden_over_f2_matches_oracle() {
        let f2 = FieldSpec::Prime(2);
        let p = builtin("smith-zhang", f2).unwrap();
        let derived = group_algebra_oracle(f2, 2);
        let fresh: Vec<FreeElement> = derived.relations.iter().flatten().cloned().collect();
        for r in &fresh {
            assert!(p.relations.contains(r));
        }
        assert_eq!(fresh.len(), p.relations.len());
    }
}
