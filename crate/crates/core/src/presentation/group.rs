//! The group algebra `kG` of the nilpotent group `G = <a, b, c>` with
//! `ab = ba`, `ac = ca`, `bc = cba`, and the graded subalgebra generated by
//! `x = c`, `y = ac`, `z = bc`, `t = abc` (with `deg c = 1`, `deg a = deg b = 0`).
//!
//! The subalgebra's defining relations are not written down anywhere; this
//! module derives them degree by degree as the kernel of the evaluation map
//! from normal words into `kG`.

use std::collections::{BTreeMap, HashMap};

use super::{Presentation, PresentationError};
use crate::exactla::{collect_vec, Echelon, FieldSpec, Scalar, SparseMatrix};
use crate::freealg::{FreeElement, GeneratorInfo};
use crate::groebner;

/// `a^i b^j c^m`. Every element of `G` has exactly one such form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { a: 0, b: 0, c: 0 };

    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        GroupElement { a, b, c }
    }

    /// `a` is central and `c b = b c a^-1`, so `c^m b^j = b^j c^m a^(-jm)`.
    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        GroupElement { a: self.a + o.a - o.b * self.c, b: self.b + o.b, c: self.c + o.c }
    }
}

/// Images of `x, y, z, t` in `G`.
pub const SUBALGEBRA_GENERATORS: [(&str, GroupElement); 4] = [
    ("x", GroupElement::new(0, 0, 1)),
    ("y", GroupElement::new(1, 0, 1)),
    ("z", GroupElement::new(0, 1, 1)),
    ("t", GroupElement::new(1, 1, 1)),
];

/// A finitely supported element of `kG`.
#[derive(Debug, Clone, PartialEq)]
struct GroupAlgebraElement {
    terms: BTreeMap<GroupElement, Scalar>,
}

impl GroupAlgebraElement {
    fn basis(g: GroupElement, field: &FieldSpec) -> Self {
        GroupAlgebraElement { terms: BTreeMap::from([(g, field.one())]) }
    }

    fn mul(&self, o: &Self, field: &FieldSpec) -> Self {
        let mut terms: BTreeMap<GroupElement, Scalar> = BTreeMap::new();
        for (g, x) in &self.terms {
            for (h, y) in &o.terms {
                let e = terms.entry(g.mul(h)).or_insert_with(|| field.zero());
                field.add_mul_assign(e, x, y);
            }
        }
        terms.retain(|_, v| !field.is_zero(v));
        GroupAlgebraElement { terms }
    }
}

/// What the oracle computed up to its degree bound.
#[derive(Debug, Clone)]
pub struct OracleOutput {
    pub field: FieldSpec,
    pub generators: Vec<GeneratorInfo>,
    /// Minimal relations first needed in each degree (index = degree).
    pub relations: Vec<Vec<FreeElement>>,
    /// `dim A_d`, the rank of the evaluation of all degree-`d` words.
    pub image_dims: Vec<usize>,
}

impl OracleOutput {
    pub fn presentation(&self, label: &str) -> Result<Presentation, PresentationError> {
        let rels = self.relations.iter().flatten().cloned().collect();
        Presentation::new(label, self.field, self.generators.clone(), rels)
    }
}

fn images(field: &FieldSpec) -> Vec<GroupAlgebraElement> {
    SUBALGEBRA_GENERATORS.iter().map(|(_, g)| GroupAlgebraElement::basis(*g, field)).collect()
}

/// Rank of the span of `vectors` in `kG`.
fn span_basis(vectors: Vec<GroupAlgebraElement>, field: &FieldSpec) -> Vec<GroupAlgebraElement> {
    let mut index: HashMap<GroupElement, usize> = HashMap::new();
    for v in &vectors {
        for g in v.terms.keys() {
            let n = index.len();
            index.entry(*g).or_insert(n);
        }
    }
    let mut ech = Echelon::new(*field, index.len());
    let mut basis = Vec::new();
    for v in vectors {
        let sv = collect_vec(field, v.terms.iter().map(|(g, x)| (index[g], x.clone())));
        if ech.insert(sv).is_some() {
            basis.push(v);
        }
    }
    basis
}

/// Derive the relations of the subalgebra and its graded dimensions for
/// every degree up to `degree_bound`.
///
/// Image dimensions come straight from `kG` (span of the images of all
/// words of each degree). Relations in degree `d` are the kernel of the
/// evaluation map restricted to normal words of the presentation built from
/// the relations of lower degree.
pub fn group_algebra_oracle(field: FieldSpec, degree_bound: u32) -> OracleOutput {
    let gens: Vec<GeneratorInfo> =
        SUBALGEBRA_GENERATORS.iter().map(|(n, _)| GeneratorInfo::new(*n, 1)).collect();
    let imgs = images(&field);

    let mut image_dims = vec![1usize];
    let mut layer = vec![GroupAlgebraElement::basis(GroupElement::IDENTITY, &field)];
    for _ in 1..=degree_bound {
        let products = layer.iter().flat_map(|v| imgs.iter().map(|g| v.mul(g, &field))).collect();
        layer = span_basis(products, &field);
        image_dims.push(layer.len());
    }

    let mut relations: Vec<Vec<FreeElement>> = vec![Vec::new(); degree_bound as usize + 1];
    for d in 1..=degree_bound {
        let so_far: Vec<FreeElement> = relations.iter().flatten().cloned().collect();
        let p = Presentation::new("oracle", field, gens.clone(), so_far).expect("homogeneous relations");
        let rs = groebner::complete(&p, d);
        let mut words = rs.normal_words(d).expect("completed to d");
        words.reverse();
        let evals: Vec<GroupAlgebraElement> = words
            .iter()
            .map(|w| {
                w.letters().iter().fold(GroupAlgebraElement::basis(GroupElement::IDENTITY, &field), |acc, &l| {
                    acc.mul(&imgs[l as usize], &field)
                })
            })
            .collect();
        let mut row_of: HashMap<GroupElement, usize> = HashMap::new();
        for e in &evals {
            for g in e.terms.keys() {
                let n = row_of.len();
                row_of.entry(*g).or_insert(n);
            }
        }
        let triplets = evals
            .iter()
            .enumerate()
            .flat_map(|(col, e)| e.terms.iter().map(move |(g, x)| (*g, col, x.clone())))
            .map(|(g, col, x)| (row_of[&g], col, x))
            .collect::<Vec<_>>();
        let eval = SparseMatrix::from_triplets(field, row_of.len(), words.len(), triplets).expect("in range");
        let kernel = eval.kernel_basis().transpose();
        let canon = kernel.rref();
        for row in canon.matrix.rows().iter().take(canon.rank) {
            let rel = FreeElement::from_terms(field, row.iter().map(|(c, x)| (words[*c].clone(), x.clone())));
            relations[d as usize].push(rel);
        }
        debug_assert_eq!(words.len() - relations[d as usize].len(), image_dims[d as usize]);
    }
    OracleOutput { field, generators: gens, relations, image_dims }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relation_holds() {
        let a = GroupElement::new(1, 0, 0);
        let b = GroupElement::new(0, 1, 0);
        let c = GroupElement::new(0, 0, 1);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&c), c.mul(&a));
        assert_eq!(b.mul(&c), c.mul(&b).mul(&a));
    }

    #[test]
    fn group_law_is_associative() {
        let els: Vec<GroupElement> = (-1..=1)
            .flat_map(|i| (-1..=1).flat_map(move |j| (-1..=1).map(move |m| GroupElement::new(i, j, m))))
            .collect();
        for x in &els {
            for y in &els {
                for z in &els {
                    assert_eq!(x.mul(y).mul(z), x.mul(&y.mul(z)));
                }
            }
        }
    }

    #[test]
    fn low_degrees() {
        let out = group_algebra_oracle(FieldSpec::Rationals, 3);
        assert!(out.relations[1].is_empty());
        assert_eq!(out.image_dims[1], 4);
        assert_eq!(out.relations[2].len(), 6);
        assert_eq!(out.image_dims[2], 10);
        assert_eq!(out.image_dims[3], 20);
        assert!(out.relations[3].is_empty());
    }
}
