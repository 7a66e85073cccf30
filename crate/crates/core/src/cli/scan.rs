//! Brute-force search for normal elements over a small prime field.
//!
//! `v ∈ A_d` is normal when `vA = Av`; for a homogeneous `v` it suffices that
//! `g·v ∈ v·A_(deg g)` and `v·g ∈ A_(deg g)·v` for every generator `g`. The
//! scan enumerates every `v` up to scalars, so it only runs when `p^dim A_d`
//! is small, and a clean result is evidence over that field only.

use serde::Serialize;
use thiserror::Error;

use crate::exactla::FieldSpec;
use crate::freealg::{FreeElement, Word};
use crate::groebner::{GroebnerError, RewriteSystem};

/// Largest `p^dim A_d` the scan will enumerate.
pub const SCAN_GUARD: u64 = 1 << 22;

/// Examples listed per degree; the count covers the rest.
const MAX_EXAMPLES: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScanError {
    #[error("normal-element scan needs a prime field, got {0}")]
    NotPrimeField(FieldSpec),
    #[error("normal-element scan guard exceeded in degree {degree}: {p}^{dim} > 2^22 (use a smaller field or degree)")]
    GuardExceeded { degree: u32, p: u64, dim: usize },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanDegree {
    pub degree: u32,
    pub dim: usize,
    /// Nonzero vectors tested, one per line through the origin.
    pub tested: u64,
    pub normal_count: u64,
    pub examples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalScan {
    pub field: String,
    pub degrees: Vec<ScanDegree>,
    pub heuristic: bool,
    pub note: String,
}

impl NormalScan {
    pub fn found_any(&self) -> bool {
        self.degrees.iter().any(|d| d.normal_count > 0)
    }
}

/// Dense linear map `A_d -> A_e` as columns of residues mod `p`.
struct DenseMap {
    cols: Vec<Vec<u64>>,
}

fn to_dense(e: &FreeElement, index: impl Fn(&Word) -> usize, n: usize, p: u64) -> Vec<u64> {
    let mut v = vec![0u64; n];
    for (w, c) in e.terms() {
        let x = match c {
            crate::exactla::Scalar::Modular(x) => *x,
            crate::exactla::Scalar::Rational(_) => unreachable!("prime field"),
        };
        v[index(w)] = x % p;
    }
    v
}

/// `target ∈ span(vectors)` over `F_p`.
fn in_span(vectors: &[Vec<u64>], target: &[u64], p: u64) -> bool {
    let n = target.len();
    let mut rows: Vec<(usize, Vec<u64>)> = Vec::with_capacity(vectors.len());
    let reduce = |v: &mut Vec<u64>, rows: &[(usize, Vec<u64>)]| {
        for (piv, r) in rows {
            let c = v[*piv];
            if c != 0 {
                for k in 0..n {
                    v[k] = (v[k] + (p - c) * r[k]) % p;
                }
            }
        }
    };
    for v in vectors {
        let mut v = v.clone();
        reduce(&mut v, &rows);
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = mod_inv(v[piv], p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            rows.push((piv, v));
        }
    }
    let mut t = target.to_vec();
    reduce(&mut t, &rows);
    t.iter().all(|&x| x == 0)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut r, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

fn apply_delta(acc: &mut [u64], col: &[u64], delta: u64, p: u64) {
    if delta == 0 {
        return;
    }
    for (a, c) in acc.iter_mut().zip(col) {
        *a = (*a + delta * c) % p;
    }
}

/// Scan degrees `1..=dmax` for normal elements.
pub fn normal_element_scan(rs: &RewriteSystem, dmax: u32) -> Result<NormalScan, ScanError> {
    let field = rs.field();
    let FieldSpec::Prime(p) = field else { return Err(ScanError::NotPrimeField(field)) };
    let gens = rs.generators();
    let max_gen = gens.iter().map(|g| g.degree).max().unwrap_or(1);
    let basis = rs.normal_basis(dmax + max_gen)?;
    let mut degrees = Vec::new();
    for d in 1..=dmax {
        let dim = basis.dim(d as i64);
        if (dim as f64) * (p as f64).log2() > 22.0 {
            return Err(ScanError::GuardExceeded { degree: d, p, dim });
        }
        // for each generator g: L_g, R_g, and the maps v -> v·u, v -> u·v for u in A_(deg g)
        struct GenMaps {
            left_g: DenseMap,
            right_g: DenseMap,
            right_by: Vec<DenseMap>,
            left_by: Vec<DenseMap>,
        }
        let mult = |u: &Word, on_left: bool| -> DenseMap {
            let e = d + u.degree();
            let n = basis.dim(e as i64);
            let cols = basis
                .words(d)
                .iter()
                .map(|w| {
                    let prod = if on_left { u.concat(w) } else { w.concat(u) };
                    let nf = rs.normal_form(&FreeElement::from_word(field, prod));
                    to_dense(&nf, |x| basis.index_of(x), n, p)
                })
                .collect();
            DenseMap { cols }
        };
        let maps: Vec<GenMaps> = (0..gens.len())
            .map(|g| {
                let gw = Word::letter(g as crate::freealg::Letter, gens);
                let others = basis.words(gens[g].degree);
                GenMaps {
                    left_g: mult(&gw, true),
                    right_g: mult(&gw, false),
                    right_by: others.iter().map(|u| mult(u, false)).collect(),
                    left_by: others.iter().map(|u| mult(u, true)).collect(),
                }
            })
            .collect();
        let image_len = |g: usize| basis.dim((d + gens[g].degree) as i64);

        // odometer over F_p^dim with products kept up to date
        let mut v = vec![0u64; dim];
        let mut lg: Vec<Vec<u64>> = (0..gens.len()).map(|g| vec![0; image_len(g)]).collect();
        let mut rg = lg.clone();
        let mut rb: Vec<Vec<Vec<u64>>> = maps.iter().enumerate().map(|(g, m)| vec![vec![0; image_len(g)]; m.right_by.len()]).collect();
        let mut lb = rb.clone();
        let mut tested = 0u64;
        let mut normal_count = 0u64;
        let mut examples = Vec::new();
        loop {
            // increment
            let mut k = 0;
            loop {
                if k == dim {
                    break;
                }
                let old = v[k];
                let new = (old + 1) % p;
                v[k] = new;
                let delta = (new + p - old) % p;
                for (g, m) in maps.iter().enumerate() {
                    apply_delta(&mut lg[g], &m.left_g.cols[k], delta, p);
                    apply_delta(&mut rg[g], &m.right_g.cols[k], delta, p);
                    for (u, mm) in m.right_by.iter().enumerate() {
                        apply_delta(&mut rb[g][u], &mm.cols[k], delta, p);
                    }
                    for (u, mm) in m.left_by.iter().enumerate() {
                        apply_delta(&mut lb[g][u], &mm.cols[k], delta, p);
                    }
                }
                if new != 0 {
                    break;
                }
                k += 1;
            }
            if k == dim {
                break;
            }
            // one representative per line: first nonzero coordinate equal to 1
            if v.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            tested += 1;
            let normal = (0..gens.len()).all(|g| in_span(&rb[g], &lg[g], p) && in_span(&lb[g], &rg[g], p));
            if normal {
                normal_count += 1;
                if examples.len() < MAX_EXAMPLES {
                    let el = FreeElement::from_terms(
                        field,
                        v.iter()
                            .enumerate()
                            .filter(|(_, &x)| x != 0)
                            .map(|(i, &x)| (basis.words(d)[i].clone(), field.from_i64(x as i64))),
                    );
                    examples.push(el.display(gens));
                }
            }
        }
        degrees.push(ScanDegree { degree: d, dim, tested, normal_count, examples });
    }
    let note = format!("exhaustive over {field} in degrees 1..={dmax}; heuristic, evidence over this field only");
    Ok(NormalScan { field: field.to_string(), degrees, heuristic: true, note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::complete;
    use crate::presentation::{builtin, skew_polynomial_uniform};

    #[test]
    fn quantum_plane_generators_are_normal() {
        let f = FieldSpec::Prime(5);
        let rs = complete(&builtin("quantum-plane-2", f).unwrap(), 4);
        let scan = normal_element_scan(&rs, 1).unwrap();
        let d1 = &scan.degrees[0];
        assert_eq!(d1.tested, 6);
        assert_eq!(d1.normal_count, 2);
        assert_eq!(d1.examples, vec!["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn commutative_ring_everything_normal() {
        let f = FieldSpec::Prime(3);
        let rs = complete(&skew_polynomial_uniform(f, 2, 1).unwrap(), 4);
        let scan = normal_element_scan(&rs, 2).unwrap();
        for d in &scan.degrees {
            assert_eq!(d.tested, d.normal_count);
        }
    }

    #[test]
    fn guard_and_field_errors() {
        let rs = complete(&builtin("polynomial-3", FieldSpec::Prime(32003)).unwrap(), 4);
        assert!(matches!(normal_element_scan(&rs, 1), Err(ScanError::GuardExceeded { degree: 1, .. })));
        let rs = complete(&builtin("polynomial-1", FieldSpec::Rationals).unwrap(), 4);
        assert!(matches!(normal_element_scan(&rs, 1), Err(ScanError::NotPrimeField(_))));
    }
}
