//! Ext into the algebra: `Ext_A(k, A)` for the Artin-Schelter conditions,
//! `Ext_{A^e}(A, A^e)` for rigidity, and the invariant report built from them.
//!
//! Cochains of degree `j` on a free module `⊕_g B e_g` are tuples
//! `(φ(e_g))_g` with `φ(e_g) ∈ B_(j + s_g)`, so `k[x]` has `Ext^1(k, k[x])`
//! in degree `-1`. The coboundary is `(δφ)(e_g) = Σ_h d_(g,h) φ(e_h)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactla::{collect_vec, Echelon, FieldSpec, SparseMatrix, SparseVec};
use crate::freealg::{FreeElement, Letter, Word};
use crate::groebner::{complete, GroebnerError, NormalBasis, RewriteSystem};
use crate::hilbert::GradedDims;
use crate::presentation::{enveloping, Presentation};
use crate::resolution::{
    betti, cyclic_module_resolution, trivial_module_stage_bounds, BettiTable, GldimVerdict, Resolution, StageBound,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtSide {
    OverA,
    OverAe,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtEntry {
    pub i: usize,
    pub j: i64,
    pub dim: u64,
    pub certified: bool,
}

/// Cohomology dimensions per bidegree. Bidegrees the computation cannot
/// reach are absent rather than zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    pub entries: Vec<ExtEntry>,
    pub window: (i64, i64),
    pub side: ExtSide,
}

impl ExtTable {
    pub fn get(&self, i: usize, j: i64) -> Option<&ExtEntry> {
        self.entries.iter().find(|e| e.i == i && e.j == j)
    }

    pub fn certified_nonzero(&self) -> impl Iterator<Item = &ExtEntry> {
        self.entries.iter().filter(|e| e.certified && e.dim > 0)
    }
}

/// Coordinates of a cochain space `C^i_j = ⊕_g B_(j + s_g)`.
struct CochainBlocks {
    /// `(generator, offset, value degree)`.
    blocks: Vec<(usize, usize, u32)>,
    dim: usize,
}

impl CochainBlocks {
    /// `None` when some value degree exceeds what the basis covers.
    fn new(degrees: &[u32], j: i64, basis: &NormalBasis) -> Option<Self> {
        let mut blocks = Vec::new();
        let mut dim = 0;
        for (g, &s) in degrees.iter().enumerate() {
            let e = j + s as i64;
            if e < 0 {
                continue;
            }
            if e > basis.max_degree() as i64 {
                return None;
            }
            let n = basis.dim(e);
            blocks.push((g, dim, e as u32));
            dim += n;
        }
        Some(CochainBlocks { blocks, dim })
    }

    fn offset_of(&self, g: usize) -> Option<(usize, u32)> {
        self.blocks.iter().find(|b| b.0 == g).map(|b| (b.1, b.2))
    }

    fn decode(&self, v: &SparseVec, basis: &NormalBasis, n: usize, f: FieldSpec) -> Vec<FreeElement> {
        let mut out = vec![FreeElement::zero(f); n];
        for (c, x) in v {
            let k = self.blocks.partition_point(|b| b.1 <= *c) - 1;
            let (g, off, e) = self.blocks[k];
            out[g].add_term(basis.words(e)[c - off].clone(), x);
        }
        out
    }

    fn encode(&self, els: &[FreeElement], basis: &NormalBasis, f: FieldSpec) -> SparseVec {
        collect_vec(
            &f,
            self.blocks.iter().flat_map(|&(g, off, _)| {
                els[g].terms().map(move |(w, x)| (off + basis.index_of(w), x.clone())).collect::<Vec<_>>()
            }),
        )
    }
}

/// Matrix of `δ: C^(i-1)_j -> C^i_j` as rows indexed by the basis of the
/// source, each row the image vector.
fn coboundary_rows(
    rs: &RewriteSystem,
    basis: &NormalBasis,
    stage: &crate::resolution::ResolutionStage,
    src: &CochainBlocks,
    dst: &CochainBlocks,
) -> Vec<SparseVec> {
    let f = rs.field();
    let mut rows = Vec::with_capacity(src.dim);
    for &(h, _, e) in &src.blocks {
        for u in basis.words(e) {
            let mut entries = Vec::new();
            for (g, row) in stage.differential.iter().enumerate() {
                let a = &row[h];
                if a.is_zero() {
                    continue;
                }
                let (off, _) = dst.offset_of(g).expect("target block exists");
                let prod = rs.normal_form(&a.mul(&FreeElement::from_word(f, u.clone())));
                entries.extend(prod.terms().map(|(w, x)| (off + basis.index_of(w), x.clone())));
            }
            rows.push(collect_vec(&f, entries));
        }
    }
    rows
}

fn rank(f: FieldSpec, ncols: usize, rows: &[SparseVec]) -> usize {
    let mut e = Echelon::new(f, ncols);
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

/// Whether every generator of a stage lies inside the computed window.
fn stage_known(res: &Resolution, i: usize) -> bool {
    match res.stage_bounds.get(i).copied().unwrap_or(StageBound::Unknown) {
        StageBound::Empty => true,
        StageBound::AtMost(c) => i <= res.homological_bound && c <= res.degree_bound,
        StageBound::Unknown => false,
    }
}

fn stage_degrees(res: &Resolution, i: usize) -> &[u32] {
    res.stages.get(i).map_or(&[], |s| s.generator_degrees.as_slice())
}

/// Cohomology of `Hom_B(P, B)` for every `i ≤ hbound` and `j` in the window.
fn dual_cohomology(
    rs: &RewriteSystem,
    res: &Resolution,
    window: (i64, i64),
    side: ExtSide,
) -> Result<ExtTable, GroebnerError> {
    rs.check_degree(res.degree_bound)?;
    let f = rs.field();
    let basis = rs.normal_basis(res.degree_bound)?;
    let h = res.homological_bound;
    let mut entries = Vec::new();
    for j in window.0..=window.1 {
        // cochain spaces C^0..C^(h+1) at degree j
        let spaces: Vec<Option<CochainBlocks>> =
            (0..=h + 1).map(|i| CochainBlocks::new(stage_degrees(res, i), j, &basis)).collect();
        // rank of δ: C^(i-1) -> C^i, for i = 1..=h+1
        let mut ranks: Vec<Option<usize>> = vec![Some(0)];
        for i in 1..=h + 1 {
            let r = match (&spaces[i - 1], &spaces[i], res.stages.get(i)) {
                (Some(src), Some(dst), Some(stage)) => {
                    Some(rank(f, dst.dim, &coboundary_rows(rs, &basis, stage, src, dst)))
                }
                (Some(_), Some(dst), None) if dst.dim == 0 => Some(0),
                _ => None,
            };
            ranks.push(r);
        }
        for i in 0..=h {
            let (Some(space), Some(r_in), Some(r_out)) = (&spaces[i], ranks[i], ranks[i + 1]) else { continue };
            let dim = (space.dim - r_in - r_out) as u64;
            let certified = (i == 0 || stage_known(res, i - 1)) && stage_known(res, i) && stage_known(res, i + 1);
            entries.push(ExtEntry { i, j, dim, certified });
        }
    }
    Ok(ExtTable { entries, window, side })
}

/// Natural window for a resolution: degrees from minus the largest
/// generator degree up to the point where cochains still fit the basis.
pub fn default_window(res: &Resolution) -> (i64, i64) {
    let top = res.stages.iter().flat_map(|s| s.generator_degrees.iter().copied()).max().unwrap_or(0) as i64;
    let lo = -top;
    (lo, res.degree_bound as i64 - top)
}

/// `Ext^i_A(k, A)_j` from a resolution of `k` over `A`.
pub fn ext_k_a(rs: &RewriteSystem, res: &Resolution, window: (i64, i64)) -> Result<ExtTable, GroebnerError> {
    dual_cohomology(rs, res, window, ExtSide::OverA)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum AsVerdict {
    Regular { n: usize, l: i64 },
    GorensteinConditionsHold { n: usize, l: i64 },
    Fails { side: String, i: usize, j: i64, dim: u64, reason: String },
    Inconclusive { reason: String },
}

impl AsVerdict {
    pub fn regular(&self) -> Option<(usize, i64)> {
        match self {
            AsVerdict::Regular { n, l } => Some((*n, *l)),
            _ => None,
        }
    }
}

/// Either the unique certified nonzero entry of a one-dimensional Ext
/// pattern, or the first entry breaking the pattern.
enum Pattern {
    Single(usize, i64),
    Broken(ExtEntry, String),
    Empty,
}

fn pattern(t: &ExtTable) -> Pattern {
    let nz: Vec<&ExtEntry> = t.certified_nonzero().collect();
    let Some(top) = nz.iter().map(|e| e.i).max() else { return Pattern::Empty };
    if let Some(e) = nz.iter().find(|e| e.i < top) {
        return Pattern::Broken((*e).clone(), format!("Ext^{} is nonzero below the top degree {top}", e.i));
    }
    let at_top: Vec<&&ExtEntry> = nz.iter().filter(|e| e.i == top).collect();
    if at_top.len() > 1 || at_top[0].dim > 1 {
        let e = at_top.iter().max_by_key(|e| (e.dim, -e.j)).expect("nonempty");
        let total: u64 = at_top.iter().map(|e| e.dim).sum();
        return Pattern::Broken((**e).clone(), format!("Ext^{top} has total dimension {total} in the window, not 1"));
    }
    Pattern::Single(top, -at_top[0].j)
}

/// Artin-Schelter verdict from `Ext_A(k, A)`, `Ext_{A°}(k, A°)` and the
/// global dimension of `A`.
pub fn as_check(t_left: &ExtTable, t_right: &ExtTable, gldim: &GldimVerdict) -> AsVerdict {
    let left = pattern(t_left);
    let right = pattern(t_right);
    for (side, p) in [("left", &left), ("right", &right)] {
        if let Pattern::Broken(e, reason) = p {
            return AsVerdict::Fails { side: side.into(), i: e.i, j: e.j, dim: e.dim, reason: reason.clone() };
        }
    }
    match (left, right) {
        (Pattern::Single(n, l), Pattern::Single(n2, l2)) if n == n2 && l == l2 => match gldim {
            GldimVerdict::Exact { n: g, .. } if *g == n => AsVerdict::Regular { n, l },
            GldimVerdict::Exact { n: g, .. } => AsVerdict::Fails {
                side: "left".into(),
                i: n,
                j: -l,
                dim: 1,
                reason: format!("Ext pattern sits in degree {n} but the global dimension is {g}"),
            },
            GldimVerdict::AtLeast { .. } => AsVerdict::GorensteinConditionsHold { n, l },
        },
        (Pattern::Single(n, l), Pattern::Single(n2, l2)) => AsVerdict::Fails {
            side: "right".into(),
            i: n2,
            j: -l2,
            dim: 1,
            reason: format!("left pattern at ({n}, {}) but right pattern at ({n2}, {})", -l, -l2),
        },
        _ => AsVerdict::Inconclusive { reason: "no certified nonzero Ext in the window".into() },
    }
}

/// Resolution of `A` as a module over `A^e = A ⊗ A°`, with its Betti table.
/// Stage bounds come from the one-sided Anick chains of `A`, which index
/// the two-sided Anick resolution.
pub struct BimoduleResolution {
    pub enveloping: Presentation,
    pub rewrite: RewriteSystem,
    pub resolution: Resolution,
    pub betti: BettiTable,
}

pub fn diagonal_bimodule_resolution(
    p: &Presentation,
    hbound: usize,
    dbound: u32,
) -> Result<BimoduleResolution, GroebnerError> {
    let env = enveloping(p);
    let rs = complete(&env, dbound);
    let n = p.generators.len();
    let diagonal: Vec<FreeElement> = (0..n).map(|i| env.generator(i).sub(&env.generator(i + n))).collect();
    let one_sided = complete(p, dbound);
    let bounds = trivial_module_stage_bounds(&one_sided, hbound + 1);
    let resolution = cyclic_module_resolution(&rs, &diagonal, hbound, dbound)?.with_stage_bounds(bounds);
    let betti = betti(&resolution);
    Ok(BimoduleResolution { enveloping: env, rewrite: rs, resolution, betti })
}

/// `Ext^i_{A^e}(A, A^e)_j` from a diagonal bimodule resolution.
pub fn hochschild_ext(env_rs: &RewriteSystem, res: &Resolution, window: (i64, i64)) -> Result<ExtTable, GroebnerError> {
    dual_cohomology(env_rs, res, window, ExtSide::OverAe)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistImage {
    pub generator: String,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityVerdict {
    pub concentrated_at: Option<usize>,
    /// `l` with `Ext^n_j = dim A_(j + l)` on the certified window.
    pub shift: Option<i64>,
    pub graded_match: bool,
    pub twist_on_generators: Option<Vec<TwistImage>>,
    pub twist_preserves_relations: Option<bool>,
    pub certified_window: (i64, i64),
    pub note: String,
}

/// Find where `Ext_{A^e}(A, A^e)` lives, compare it to shifted `A`, and
/// read off the twist from the action of degree-one generators on the
/// lowest class.
pub fn rigidity_check(
    p: &Presentation,
    bimodule: &BimoduleResolution,
    t: &ExtTable,
    hilbert: &GradedDims,
) -> RigidityVerdict {
    let certified: Vec<&ExtEntry> = t.entries.iter().filter(|e| e.certified).collect();
    let window = (
        certified.iter().map(|e| e.j).min().unwrap_or(0),
        certified.iter().map(|e| e.j).max().unwrap_or(-1),
    );
    let mut nonzero_i: Vec<usize> = certified.iter().filter(|e| e.dim > 0).map(|e| e.i).collect();
    nonzero_i.sort();
    nonzero_i.dedup();
    let mut v = RigidityVerdict {
        concentrated_at: None,
        shift: None,
        graded_match: false,
        twist_on_generators: None,
        twist_preserves_relations: None,
        certified_window: window,
        note: String::new(),
    };
    let n = match nonzero_i.as_slice() {
        [n] => *n,
        [] => {
            v.note = "no certified nonzero entries".into();
            return v;
        }
        many => {
            v.note = format!("nonzero in cohomological degrees {many:?}; not rigid in the window");
            return v;
        }
    };
    v.concentrated_at = Some(n);
    let lowest = certified.iter().filter(|e| e.i == n && e.dim > 0).map(|e| e.j).min().expect("nonzero");
    let l = -lowest;
    v.shift = Some(l);
    let at_n: Vec<&&ExtEntry> = certified.iter().filter(|e| e.i == n).collect();
    let comparable: Vec<&&&ExtEntry> = at_n.iter().filter(|e| e.j + l <= hilbert.certified_to as i64).collect();
    v.graded_match = !comparable.is_empty() && comparable.iter().all(|e| e.dim == hilbert.get(e.j + l));
    if !v.graded_match {
        v.note = format!("Ext^{n} does not match A shifted by {l}");
        return v;
    }
    v.note = format!("Ext^{n} matches A shifted by {l} on the certified window");
    if p.all_degree_one() && hilbert.get(0) == 1 {
        if let Some((images, ok)) = extract_twist(p, bimodule, n, l) {
            v.twist_on_generators = Some(images);
            v.twist_preserves_relations = Some(ok);
        } else {
            v.note.push_str("; twist could not be read off the lowest class");
        }
    }
    v
}

/// Solve `[φ0·x_i°] = Σ_k M_ik [φ0·x_k]` in `Ext^n` at degree `1 - l`, where
/// `φ0` spans the lowest class, and return `σ(x_i) = Σ_k M_ik x_k` together
/// with whether `σ` kills every relation.
fn extract_twist(
    p: &Presentation,
    bimodule: &BimoduleResolution,
    n: usize,
    l: i64,
) -> Option<(Vec<TwistImage>, bool)> {
    let rs = &bimodule.rewrite;
    let res = &bimodule.resolution;
    let f = rs.field();
    let basis = rs.normal_basis(res.degree_bound).ok()?;
    let ngen = p.generators.len();
    let deg = |i: usize| stage_degrees(res, i);
    let stage = |i: usize| res.stages.get(i);

    // lowest class at degree -l
    let c_lo = CochainBlocks::new(deg(n), -l, &basis)?;
    let up_lo = CochainBlocks::new(deg(n + 1), -l, &basis)?;
    let prev_lo = CochainBlocks::new(deg(n - 1), -l, &basis)?;
    let cocycles = match stage(n + 1) {
        Some(st) if up_lo.dim > 0 => {
            let rows = coboundary_rows(rs, &basis, st, &c_lo, &up_lo);
            let m = SparseMatrix::from_rows(f, up_lo.dim, rows).ok()?;
            m.transpose().kernel_basis().transpose().rows().to_vec()
        }
        _ => SparseMatrix::identity(f, c_lo.dim).rows().to_vec(),
    };
    let mut bounds_lo = Echelon::new(f, c_lo.dim);
    for r in coboundary_rows(rs, &basis, stage(n)?, &prev_lo, &c_lo) {
        bounds_lo.insert(r);
    }
    let phi0 = cocycles.into_iter().find(|z| !bounds_lo.contains(z.clone()))?;
    let phi0_els = c_lo.decode(&phi0, &basis, deg(n).len(), f);

    // classes at degree 1 - l
    let c_hi = CochainBlocks::new(deg(n), 1 - l, &basis)?;
    let prev_hi = CochainBlocks::new(deg(n - 1), 1 - l, &basis)?;
    let mut bounds = Echelon::new(f, c_hi.dim);
    for r in coboundary_rows(rs, &basis, stage(n)?, &prev_hi, &c_hi) {
        bounds.insert(r);
    }
    let times = |g: usize| -> SparseVec {
        let x = FreeElement::from_word(f, Word::letter(g as Letter, rs.generators()));
        let els: Vec<FreeElement> = phi0_els.iter().map(|e| rs.normal_form(&e.mul(&x))).collect();
        bounds.reduce_full(c_hi.encode(&els, &basis, f))
    };
    let lefts: Vec<SparseVec> = (0..ngen).map(times).collect();
    let rights: Vec<SparseVec> = (0..ngen).map(|g| times(g + ngen)).collect();

    // rows [L_k | e_k]; reducing [R_i | 0] leaves [0 | -M_i]
    let width = c_hi.dim;
    let mut solver = Echelon::new(f, width + ngen);
    for (k, lk) in lefts.iter().enumerate() {
        let mut row = lk.clone();
        row.push((width + k, f.one()));
        solver.insert(row);
    }
    let mut images = Vec::with_capacity(ngen);
    let mut sigma = Vec::with_capacity(ngen);
    for r in &rights {
        let red = solver.reduce_full(r.clone());
        if red.iter().any(|(c, _)| *c < width) {
            return None;
        }
        let img = FreeElement::from_terms(
            f,
            red.iter().map(|(c, x)| (Word::letter((c - width) as Letter, &p.generators), f.neg(x))),
        );
        sigma.push(img);
    }
    for (g, img) in sigma.iter().enumerate() {
        images.push(TwistImage { generator: p.generators[g].name.clone(), image: img.display(&p.generators) });
    }
    let base = complete(p, p.max_relation_degree().max(2) + 1);
    let ok = p.relations.iter().all(|r| base.normal_form(&r.substitute(&sigma)).is_zero());
    Some((images, ok))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub fhtr: Option<usize>,
    pub htr_qa_conditional: Option<usize>,
    pub hammerhead: Option<usize>,
    pub statements: Vec<String>,
    pub commentary: Vec<String>,
    pub unchecked_hypotheses: Vec<String>,
}

pub const UNCHECKED_HYPOTHESES: [&str; 2] = [
    "A is Goldie prime (not machine-checked)",
    "A is an Ore domain, so the quotient division ring Q(A) exists (not machine-checked)",
];

/// Invariants that follow from the verdicts. Conditional statements carry
/// their side conditions; `commentary` holds expectations that were not
/// computed.
pub fn invariant_report(
    as_verdict: Option<&AsVerdict>,
    rigidity: Option<&RigidityVerdict>,
    b: &BettiTable,
    commentary: &[&str],
) -> InvariantReport {
    let mut r = InvariantReport {
        fhtr: None,
        htr_qa_conditional: None,
        hammerhead: None,
        statements: Vec::new(),
        commentary: commentary.iter().map(|s| s.to_string()).collect(),
        unchecked_hypotheses: UNCHECKED_HYPOTHESES.iter().map(|s| s.to_string()).collect(),
    };
    if let Some(AsVerdict::Regular { n, l }) = as_verdict {
        r.fhtr = Some(*n);
        r.htr_qa_conditional = Some(*n);
        r.statements.push(format!(
            "AS regular of dimension {n} (shift {l}): fhtr = {n}; htr of the quotient division ring = {n}, conditional on A being Goldie prime (not machine-checked)"
        ));
    }
    if let Some(rig) = rigidity {
        if let (Some(n), true) = (rig.concentrated_at, rig.graded_match) {
            r.fhtr = Some(n);
            r.hammerhead = Some(n);
            r.statements.push(format!(
                "Ext_(A^e)(A, A^e) concentrated in degree {n}: fhtr = {n} (certified in window {:?}); hammerhead of the rigid complex = {n}",
                rig.certified_window
            ));
        }
    }
    if r.statements.is_empty() {
        let total: u64 = b.entries.iter().map(|e| e.dim).sum();
        r.statements.push(format!("no invariant statement; raw tables only ({total} Betti generators in window)"));
    }
    r
}

/// Ext tables of `k` over `A` and `A°` with the resulting verdict.
pub struct AsComputation {
    pub left: ExtTable,
    pub right: ExtTable,
    pub verdict: AsVerdict,
}

/// Run the whole Artin-Schelter test for a presentation. The opposite
/// algebra has the same Tor dimensions as `A`, so its stage bounds are
/// taken from `A`.
pub fn as_regularity(
    p: &Presentation,
    rs: &RewriteSystem,
    res: &Resolution,
    gldim: &GldimVerdict,
) -> Result<AsComputation, GroebnerError> {
    let window = default_window(res);
    let left = ext_k_a(rs, res, window)?;
    let op = crate::presentation::opposite(p);
    let rs_op = complete(&op, res.degree_bound);
    let res_op = crate::resolution::minimal_resolution(&rs_op, res.homological_bound, res.degree_bound)?
        .with_stage_bounds(res.stage_bounds.clone());
    let right = ext_k_a(&rs_op, &res_op, default_window(&res_op))?;
    let verdict = as_check(&left, &right, gldim);
    Ok(AsComputation { left, right, verdict })
}

/// Dimensions of an Ext table as a map, for display.
pub fn table_map(t: &ExtTable) -> BTreeMap<(usize, i64), u64> {
    t.entries.iter().map(|e| ((e.i, e.j), e.dim)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::hilbert_function;
    use crate::presentation::{builtin, skew_polynomial_uniform};
    use crate::resolution::{gldim_upto, minimal_resolution};

    const P: FieldSpec = FieldSpec::Prime(32003);

    fn full_as(p: &Presentation, h: usize, d: u32) -> AsComputation {
        let rs = complete(p, d);
        let res = minimal_resolution(&rs, h, d).unwrap();
        let g = gldim_upto(&betti(&res));
        as_regularity(p, &rs, &res, &g).unwrap()
    }

    #[test]
    fn polynomial_one_variable() {
        let p = skew_polynomial_uniform(P, 1, 1).unwrap();
        let c = full_as(&p, 3, 6);
        let nz: Vec<(usize, i64, u64)> = c.left.certified_nonzero().map(|e| (e.i, e.j, e.dim)).collect();
        assert_eq!(nz, vec![(1, -1, 1)]);
        assert_eq!(c.verdict, AsVerdict::Regular { n: 1, l: 1 });
    }

    #[test]
    fn quantum_plane_is_regular() {
        let p = builtin("quantum-plane-2", P).unwrap();
        let c = full_as(&p, 3, 6);
        assert_eq!(c.left.get(2, -2).map(|e| e.dim), Some(1));
        assert_eq!(c.left.get(1, -1).map(|e| e.dim), Some(0));
        assert_eq!(c.verdict, AsVerdict::Regular { n: 2, l: 2 });
    }

    #[test]
    fn skew_three_and_cubic() {
        assert_eq!(full_as(&builtin("skew-3", P).unwrap(), 4, 6).verdict, AsVerdict::Regular { n: 3, l: 3 });
        assert_eq!(full_as(&builtin("cubic-as3", P).unwrap(), 4, 8).verdict, AsVerdict::Regular { n: 3, l: 4 });
    }

    #[test]
    fn free_algebra_fails() {
        let v = full_as(&builtin("free-2", P).unwrap(), 3, 6).verdict;
        assert!(matches!(v, AsVerdict::Fails { i: 1, .. }), "{v:?}");
    }

    #[test]
    fn smith_zhang_fails_with_witness() {
        let v = full_as(&builtin("smith-zhang", P).unwrap(), 5, 8).verdict;
        assert!(matches!(v, AsVerdict::Fails { .. }), "{v:?}");
    }

    #[test]
    fn bimodule_polynomial_one_variable() {
        let p = skew_polynomial_uniform(P, 1, 1).unwrap();
        let bm = diagonal_bimodule_resolution(&p, 3, 6).unwrap();
        let degs: Vec<Vec<u32>> = bm.resolution.stages.iter().map(|s| s.generator_degrees.clone()).collect();
        assert_eq!(degs, vec![vec![0], vec![1], vec![], vec![]]);
        let t = hochschild_ext(&bm.rewrite, &bm.resolution, default_window(&bm.resolution)).unwrap();
        assert!(t.entries.iter().filter(|e| e.i == 0).all(|e| e.dim == 0));
        let ext1: Vec<(i64, u64)> = t.entries.iter().filter(|e| e.i == 1 && e.certified).map(|e| (e.j, e.dim)).collect();
        assert!(ext1.iter().all(|&(j, d)| d == u64::from(j >= -1)));
        assert!(!ext1.is_empty());
    }

    #[test]
    fn quantum_plane_rigidity_and_twist() {
        let p = builtin("quantum-plane-2", P).unwrap();
        let bm = diagonal_bimodule_resolution(&p, 3, 6).unwrap();
        let one_sided = betti(&minimal_resolution(&complete(&p, 6), 3, 6).unwrap());
        assert_eq!(bm.betti.entries, one_sided.entries);
        let t = hochschild_ext(&bm.rewrite, &bm.resolution, default_window(&bm.resolution)).unwrap();
        let g = hilbert_function(&complete(&p, 6), 6).unwrap();
        let v = rigidity_check(&p, &bm, &t, &g);
        assert_eq!(v.concentrated_at, Some(2));
        assert_eq!(v.shift, Some(2));
        assert!(v.graded_match, "{v:?}");
        let tw = v.twist_on_generators.unwrap();
        assert_eq!(tw.len(), 2);
        for t in &tw {
            // a nonzero multiple of the generator itself
            assert!(t.image.ends_with(&t.generator), "{t:?}");
        }
        assert_eq!(v.twist_preserves_relations, Some(true));
    }

    #[test]
    fn commutative_twist_is_identity() {
        let p = skew_polynomial_uniform(P, 2, 1).unwrap();
        let bm = diagonal_bimodule_resolution(&p, 3, 5).unwrap();
        let t = hochschild_ext(&bm.rewrite, &bm.resolution, default_window(&bm.resolution)).unwrap();
        let g = hilbert_function(&complete(&p, 5), 5).unwrap();
        let v = rigidity_check(&p, &bm, &t, &g);
        let tw = v.twist_on_generators.unwrap();
        assert_eq!(tw[0].image, "x");
        assert_eq!(tw[1].image, "y");
    }

    #[test]
    fn report_for_regular_algebra() {
        let p = builtin("skew-3", P).unwrap();
        let c = full_as(&p, 4, 6);
        let rs = complete(&p, 6);
        let b = betti(&minimal_resolution(&rs, 4, 6).unwrap());
        let r = invariant_report(Some(&c.verdict), None, &b, &[]);
        assert_eq!(r.fhtr, Some(3));
        assert_eq!(r.htr_qa_conditional, Some(3));
        assert_eq!(r.unchecked_hypotheses.len(), 2);
    }
}
