//! Minimal graded free resolutions of cyclic modules (in particular the
//! trivial module `k`), Betti tables, global dimension and the Koszul test.
//!
//! Resolutions are computed degree by degree: at internal degree `j` the
//! free modules are finite-dimensional with bases `(generator, normal word)`,
//! so kernels and minimal generators come from exact linear algebra.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactla::{axpy, collect_vec, Echelon, FieldSpec, SparseMatrix, SparseVec};
use crate::freealg::{FreeElement, Letter, Word};
use crate::groebner::{complete, GroebnerError, NormalBasis, RewriteSystem};
use crate::hilbert::GradedDims;
use crate::presentation::Presentation;

/// One free module `P_i = ⊕_g B e_g` with its differential
/// `d(e_g) = Σ_h differential[g][h] e_h` into `P_(i-1)`.
#[derive(Debug, Clone)]
pub struct ResolutionStage {
    pub index: usize,
    pub generator_degrees: Vec<u32>,
    pub differential: Vec<Vec<FreeElement>>,
}

/// Upper bound on the internal degrees of the generators of a stage,
/// valid in every degree, not just the computed window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageBound {
    Empty,
    AtMost(u32),
    Unknown,
}

#[derive(Debug, Clone)]
pub struct Resolution {
    pub stages: Vec<ResolutionStage>,
    pub degree_bound: u32,
    pub homological_bound: usize,
    /// Bounds for stages `0..=homological_bound + 1`.
    pub stage_bounds: Vec<StageBound>,
    /// Graded dimensions of the resolved module up to `degree_bound`.
    pub module_dims: Vec<u64>,
}

impl Resolution {
    pub fn with_stage_bounds(mut self, bounds: Vec<StageBound>) -> Self {
        self.stage_bounds = bounds;
        self
    }
}

/// Coordinates of `(P_i)_j`: one block `B_(j - s_g)` per generator `g`.
#[derive(Debug, Clone)]
struct Blocks {
    /// `(generator, offset, word degree)`, in generator order.
    blocks: Vec<(usize, usize, u32)>,
    dim: usize,
}

impl Blocks {
    fn new(degrees: &[u32], j: u32, basis: &NormalBasis) -> Self {
        let mut blocks = Vec::new();
        let mut dim = 0;
        for (g, &s) in degrees.iter().enumerate() {
            if s <= j {
                let n = basis.dim((j - s) as i64);
                if n > 0 {
                    blocks.push((g, dim, j - s));
                    dim += n;
                }
            }
        }
        Blocks { blocks, dim }
    }

    /// `None` when the block is zero-dimensional.
    fn offset_of(&self, g: usize) -> Option<usize> {
        self.blocks.iter().find(|b| b.0 == g).map(|b| b.1)
    }

    fn locate(&self, coord: usize) -> (usize, usize, u32) {
        let k = self.blocks.partition_point(|b| b.1 <= coord) - 1;
        self.blocks[k]
    }
}

/// `table[x][e][u]` is `NF(x·u)` over the basis of `B_(e + deg x)`.
struct LeftMultiplication {
    table: Vec<Vec<Vec<SparseVec>>>,
}

impl LeftMultiplication {
    fn new(rs: &RewriteSystem, basis: &NormalBasis) -> Self {
        let gens = rs.generators();
        let f = rs.field();
        let top = basis.max_degree();
        let table = gens
            .iter()
            .enumerate()
            .map(|(x, info)| {
                (0..=top)
                    .map(|e| {
                        if e + info.degree > top {
                            return Vec::new();
                        }
                        basis
                            .words(e)
                            .iter()
                            .map(|u| {
                                let mut letters = vec![x as Letter];
                                letters.extend_from_slice(u.letters());
                                let nf = rs.normal_form(&FreeElement::from_word(f, Word::new(&letters, gens)));
                                collect_vec(&f, nf.terms().map(|(w, c)| (basis.index_of(w), c.clone())))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        LeftMultiplication { table }
    }

    fn get(&self, x: Letter, e: u32, u: usize) -> &SparseVec {
        &self.table[x as usize][e as usize][u]
    }
}

struct StageWork {
    degrees: Vec<u32>,
    /// Image of each generator in `P_(i-1)` at its own degree.
    vectors: Vec<SparseVec>,
    /// For each internal degree: coordinates of `(P_i)_j` and the images
    /// of its basis vectors in `(P_(i-1))_j`.
    hist: Vec<(Blocks, Vec<SparseVec>)>,
}

/// Images of the basis of `(P_i)_j` coming from generators of degree < j,
/// each obtained from a lower-degree image by left multiplication with the
/// first letter of its word.
fn old_images(
    st: &StageWork,
    below: &StageWork,
    j: u32,
    basis: &NormalBasis,
    lm: &LeftMultiplication,
    rs: &RewriteSystem,
) -> Vec<SparseVec> {
    let f = rs.field();
    let gens = rs.generators();
    let target = &below.hist[j as usize].0;
    let mut images = Vec::new();
    for (g, &s) in st.degrees.iter().enumerate() {
        if s >= j {
            continue;
        }
        let e = j - s;
        for w in basis.words(e) {
            let x = w.letters()[0];
            let rest = w.slice(1, w.len(), gens);
            let jj = (j - gens[x as usize].degree) as usize;
            let (src_blocks, src_images) = &st.hist[jj];
            // a suffix of a normal word is normal, so its block is present
            let src = &src_images[src_blocks.offset_of(g).expect("block present") + basis.index_of(&rest)];
            let src_target = &below.hist[jj].0;
            let mut out = SparseVec::new();
            for (c, a) in src {
                let (h, off, e2) = src_target.locate(*c);
                // x·u lands in a zero graded piece
                let Some(toff) = target.offset_of(h) else { continue };
                let shifted: SparseVec = lm.get(x, e2, c - off).iter().map(|(k, y)| (toff + k, y.clone())).collect();
                out = axpy(&f, &out, a, &shifted);
            }
            images.push(out);
        }
    }
    images
}

fn vector_to_row(v: &SparseVec, target: &Blocks, basis: &NormalBasis, ngens: usize, f: FieldSpec) -> Vec<FreeElement> {
    let mut out = vec![FreeElement::zero(f); ngens];
    for (c, x) in v {
        let (h, off, e) = target.locate(*c);
        out[h].add_term(basis.words(e)[c - off].clone(), x);
    }
    out
}

/// Left kernel of the map whose basis images are `rows`.
fn kernel_of(f: FieldSpec, target_dim: usize, rows: &[SparseVec]) -> Vec<SparseVec> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = SparseMatrix::from_rows(f, target_dim, rows.to_vec()).expect("coordinates in range");
    m.transpose().kernel_basis().transpose().rows().to_vec()
}

/// Minimal free resolution of the cyclic left module `B / Σ B·r` over the
/// algebra `B` presented by `rs`, through homological degree `hbound` and
/// internal degree `dbound`.
pub fn cyclic_module_resolution(
    rs: &RewriteSystem,
    module_relations: &[FreeElement],
    hbound: usize,
    dbound: u32,
) -> Result<Resolution, GroebnerError> {
    rs.check_degree(dbound)?;
    let f = rs.field();
    let gens = rs.generators();
    let basis = rs.normal_basis(dbound)?;
    let lm = LeftMultiplication::new(rs, &basis);

    let rels: Vec<(u32, SparseVec)> = module_relations
        .iter()
        .map(|r| rs.normal_form(r))
        .filter(|r| !r.is_zero())
        .map(|r| {
            let d = r.homogeneous_degree().expect("module relations are homogeneous");
            (d, collect_vec(&f, r.terms().map(|(w, c)| (basis.index_of(w), c.clone()))))
        })
        .collect();

    let mut work: Vec<StageWork> = (0..=hbound)
        .map(|i| StageWork {
            degrees: if i == 0 { vec![0] } else { Vec::new() },
            vectors: if i == 0 { vec![SparseVec::new()] } else { Vec::new() },
            hist: Vec::new(),
        })
        .collect();
    // ideal[d] is a basis of the degree-d part of Σ B·r
    let mut ideal: Vec<Vec<SparseVec>> = Vec::new();
    let mut module_dims = Vec::new();

    for j in 0..=dbound {
        let mut ech = Echelon::new(f, basis.dim(j as i64));
        let mut ideal_j = Vec::new();
        for (x, info) in gens.iter().enumerate() {
            if info.degree > j {
                continue;
            }
            let e = j - info.degree;
            for v in &ideal[e as usize] {
                let mut out = SparseVec::new();
                for (c, a) in v {
                    out = axpy(&f, &out, a, lm.get(x as Letter, e, *c));
                }
                if ech.insert(out.clone()).is_some() {
                    ideal_j.push(out);
                }
            }
        }
        for (d, r) in &rels {
            if *d == j && ech.insert(r.clone()).is_some() {
                ideal_j.push(r.clone());
            }
        }
        module_dims.push((basis.dim(j as i64) - ideal_j.len()) as u64);
        ideal.push(ideal_j.clone());

        let b0 = Blocks::new(&work[0].degrees, j, &basis);
        let zero_images = vec![SparseVec::new(); b0.dim];
        work[0].hist.push((b0, zero_images));

        let mut kernel = ideal_j;
        for i in 1..=hbound {
            let (lower, upper) = work.split_at_mut(i);
            let below = &lower[i - 1];
            let st = &mut upper[0];
            let target_dim = below.hist[j as usize].0.dim;
            let mut images = old_images(st, below, j, &basis, &lm, rs);
            let mut ech = Echelon::new(f, target_dim);
            for v in &images {
                ech.insert(v.clone());
            }
            for v in kernel.drain(..) {
                if ech.insert(v.clone()).is_some() {
                    st.degrees.push(j);
                    st.vectors.push(v.clone());
                    images.push(v);
                }
            }
            let blocks = Blocks::new(&st.degrees, j, &basis);
            debug_assert_eq!(blocks.dim, images.len());
            if i < hbound {
                kernel = kernel_of(f, target_dim, &images);
            }
            st.hist.push((blocks, images));
        }
    }

    let mut stages = Vec::with_capacity(work.len());
    for i in 0..work.len() {
        let st = &work[i];
        let differential = if i == 0 {
            vec![Vec::new()]
        } else {
            let below = &work[i - 1];
            st.vectors
                .iter()
                .zip(&st.degrees)
                .map(|(v, &s)| vector_to_row(v, &below.hist[s as usize].0, &basis, below.degrees.len(), f))
                .collect()
        };
        stages.push(ResolutionStage { index: i, generator_degrees: st.degrees.clone(), differential });
    }
    Ok(Resolution {
        stages,
        degree_bound: dbound,
        homological_bound: hbound,
        stage_bounds: vec![StageBound::Unknown; hbound + 2],
        module_dims,
    })
}

/// Minimal free resolution of the trivial module `k = B / B_+`, with
/// stage bounds from Anick chains when a finite Gröbner basis is available.
pub fn minimal_resolution(rs: &RewriteSystem, hbound: usize, dbound: u32) -> Result<Resolution, GroebnerError> {
    let f = rs.field();
    let gens: Vec<FreeElement> = (0..rs.generators().len())
        .map(|g| FreeElement::from_word(f, Word::letter(g as Letter, rs.generators())))
        .collect();
    let res = cyclic_module_resolution(rs, &gens, hbound, dbound)?;
    Ok(res.with_stage_bounds(trivial_module_stage_bounds(rs, hbound + 1)))
}

/// Anick chain bounds for the stages `0..=top` of the resolution of `k`,
/// from the leading words of a finite Gröbner basis.
///
/// Chains are paths in the graph whose vertices are letters and proper
/// suffixes of leading words, with an edge `u -> v` when `uv` contains
/// exactly one leading word and that word is a suffix of `uv` starting
/// inside `u`. The `n`-chains index a free resolution of `k`, so they bound
/// the minimal one. Returns `None` for an unfinished Gröbner basis.
pub fn anick_stage_bounds(rs: &RewriteSystem, top: usize) -> Option<Vec<StageBound>> {
    if !rs.is_globally_complete() {
        return None;
    }
    let gens = rs.generators();
    let leads: Vec<&[Letter]> = rs.rules().iter().map(|r| r.lead.letters()).collect();
    let mut vertices: Vec<Vec<Letter>> = (0..gens.len() as Letter).map(|x| vec![x]).collect();
    for l in &leads {
        for k in 1..l.len() {
            vertices.push(l[k..].to_vec());
        }
    }
    vertices.sort();
    vertices.dedup();
    let weight = |w: &[Letter]| -> u32 { w.iter().map(|&x| gens[x as usize].degree).sum() };
    let edges: Vec<Vec<usize>> = vertices
        .iter()
        .map(|u| {
            vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| {
                    let mut w = u.clone();
                    w.extend_from_slice(v);
                    let n = w.len();
                    let suffix_start = (0..u.len()).find(|&s| leads.iter().any(|l| l.len() == n - s && w[s..] == l[..]));
                    suffix_start.is_some() && !(0..n).any(|s| leads.iter().any(|l| s + l.len() < n && w[s..].starts_with(l)))
                })
                .map(|(k, _)| k)
                .collect()
        })
        .collect();

    let mut out = vec![StageBound::AtMost(0)];
    // best[v] = largest chain degree ending at vertex v
    let mut best: BTreeMap<usize, u32> = BTreeMap::new();
    for (x, info) in gens.iter().enumerate() {
        let k = vertices.iter().position(|v| v == &vec![x as Letter]).expect("letters are vertices");
        best.insert(k, info.degree);
    }
    for _ in 1..=top {
        if best.is_empty() {
            out.push(StageBound::Empty);
            continue;
        }
        out.push(StageBound::AtMost(*best.values().max().expect("nonempty")));
        let mut next: BTreeMap<usize, u32> = BTreeMap::new();
        for (&u, &d) in &best {
            for &v in &edges[u] {
                let nd = d + weight(&vertices[v]);
                let e = next.entry(v).or_insert(nd);
                *e = (*e).max(nd);
            }
        }
        best = next;
    }
    out.truncate(top + 1);
    Some(out)
}

fn first_empty(bounds: &[StageBound]) -> Option<usize> {
    bounds.iter().position(|b| *b == StageBound::Empty)
}

/// Stage bounds for `k`, trying every ordering of the generators when the
/// given one gives no empty stage. Tor over `B` does not depend on the
/// monomial order, so any finite Anick resolution bounds the minimal one.
pub fn trivial_module_stage_bounds(rs: &RewriteSystem, top: usize) -> Vec<StageBound> {
    const MAX_PERMUTED_GENERATORS: usize = 6;
    let given = anick_stage_bounds(rs, top);
    if given.as_deref().and_then(first_empty).is_some() {
        return given.expect("checked");
    }
    let n = rs.generators().len();
    let mut best = given;
    if n <= MAX_PERMUTED_GENERATORS && n > 1 {
        let relations: Vec<FreeElement> = rs.rules().iter().map(|r| r.element()).collect();
        for perm in permutations(n).into_iter().skip(1) {
            let Some(p) = permuted_presentation(rs, &relations, &perm) else { continue };
            let alt = complete(&p, rs.degree_bound());
            if let Some(b) = anick_stage_bounds(&alt, top) {
                let better = match (first_empty(&b), best.as_deref().and_then(first_empty)) {
                    (Some(x), Some(y)) => x < y,
                    (Some(_), None) => true,
                    _ => best.is_none(),
                };
                if better {
                    let done = first_empty(&b).is_some();
                    best = Some(b);
                    if done {
                        break;
                    }
                }
            }
        }
    }
    best.unwrap_or_else(|| vec![StageBound::Unknown; top + 1])
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

/// The same algebra with generator `g` moved to position `perm[g]`.
fn permuted_presentation(rs: &RewriteSystem, relations: &[FreeElement], perm: &[usize]) -> Option<Presentation> {
    let old = rs.generators();
    let mut gens = old.to_vec();
    for (g, &to) in perm.iter().enumerate() {
        gens[to] = old[g].clone();
    }
    let rels = relations
        .iter()
        .map(|r| r.map_words(|w| Word::new(w.map_letters(|x| perm[x as usize] as Letter).letters(), &gens)))
        .collect();
    Presentation::new("permuted", rs.field(), gens, rels).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: u32,
    pub dim: u64,
}

/// `dim Tor_i(k, k)_j` for the computed window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub entries: Vec<BettiEntry>,
    pub certified_internal: u32,
    pub certified_homological: usize,
    #[serde(skip)]
    pub stage_bounds: Vec<StageBound>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.iter().find(|e| e.i == i && e.j == j).map_or(0, |e| e.dim)
    }

    pub fn stage_total(&self, i: usize) -> u64 {
        self.entries.iter().filter(|e| e.i == i).map(|e| e.dim).sum()
    }

    /// Betti numbers as a map `(i, j) -> dim`, nonzero entries only.
    pub fn as_map(&self) -> BTreeMap<(usize, u32), u64> {
        self.entries.iter().map(|e| ((e.i, e.j), e.dim)).collect()
    }

    /// Grid with one row per internal degree minus homological degree,
    /// in the usual Macaulay layout.
    pub fn grid(&self) -> String {
        let h = self.certified_homological;
        let rows = self.entries.iter().map(|e| e.j as i64 - e.i as i64).max().unwrap_or(0).max(0);
        let mut s = String::from("     ");
        for i in 0..=h {
            s.push_str(&format!("{i:>6}"));
        }
        s.push('\n');
        for r in 0..=rows {
            s.push_str(&format!("{r:>4}:"));
            for i in 0..=h {
                let j = i as i64 + r;
                let v = if j <= self.certified_internal as i64 { self.get(i, j as u32) } else { 0 };
                let cell = if j > self.certified_internal as i64 {
                    "?".to_string()
                } else if v == 0 {
                    "-".to_string()
                } else {
                    v.to_string()
                };
                s.push_str(&format!("{cell:>6}"));
            }
            s.push('\n');
        }
        s
    }
}

pub fn betti(res: &Resolution) -> BettiTable {
    let mut counts: BTreeMap<(usize, u32), u64> = BTreeMap::new();
    for st in &res.stages {
        for &s in &st.generator_degrees {
            *counts.entry((st.index, s)).or_default() += 1;
        }
    }
    BettiTable {
        entries: counts.into_iter().map(|((i, j), dim)| BettiEntry { i, j, dim }).collect(),
        certified_internal: res.degree_bound,
        certified_homological: res.homological_bound,
        stage_bounds: res.stage_bounds.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum GldimVerdict {
    /// Stage `n` is nonzero and every later stage is provably empty.
    Exact { n: usize, certificate: String },
    /// Only a lower bound is available from the window.
    AtLeast { n: usize },
}

impl GldimVerdict {
    pub fn exact(&self) -> Option<usize> {
        match self {
            GldimVerdict::Exact { n, .. } => Some(*n),
            GldimVerdict::AtLeast { .. } => None,
        }
    }
}

/// Projective dimension of `k` from a Betti table: exact when the first
/// empty computed stage is also empty beyond the window, i.e. its possible
/// generators all live in degrees the computation has covered.
pub fn gldim_upto(b: &BettiTable) -> GldimVerdict {
    let h = b.certified_homological;
    let top = (0..=h).rev().find(|&i| b.stage_total(i) > 0).unwrap_or(0);
    if top < h || b.stage_bounds.get(top + 1) == Some(&StageBound::Empty) {
        let next = top + 1;
        match b.stage_bounds.get(next).copied().unwrap_or(StageBound::Unknown) {
            StageBound::Empty => {
                return GldimVerdict::Exact { n: top, certificate: format!("stage {next} has no Anick chains") }
            }
            StageBound::AtMost(c) if c <= b.certified_internal && next <= h => {
                return GldimVerdict::Exact {
                    n: top,
                    certificate: format!(
                        "stage {next} generators have degree at most {c}, within computed degree {}",
                        b.certified_internal
                    ),
                }
            }
            _ => {}
        }
    }
    GldimVerdict::AtLeast { n: top }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum KoszulVerdict {
    /// Generators are not all of degree 1.
    NotApplicable,
    /// Diagonal Betti table and the numerical identity hold up to `(h, d)`.
    Koszul { h: usize, d: u32 },
    /// Off-diagonal Betti number at `(i, j)`.
    OffDiagonal { i: usize, j: u32 },
    /// `(Σ β_ii (-t)^i) H(t) = 1` fails in this degree.
    IdentityFails { degree: u32 },
}

impl KoszulVerdict {
    pub fn is_koszul(&self) -> bool {
        matches!(self, KoszulVerdict::Koszul { .. })
    }
}

/// Koszul test on a Betti table of `k` over an algebra generated in degree 1.
pub fn koszul_check(b: &BettiTable, hilbert: &GradedDims, generator_degrees: &[u32]) -> KoszulVerdict {
    if generator_degrees.iter().any(|&d| d != 1) {
        return KoszulVerdict::NotApplicable;
    }
    if let Some(e) = b.entries.iter().find(|e| e.j as usize != e.i) {
        return KoszulVerdict::OffDiagonal { i: e.i, j: e.j };
    }
    // beyond stage h the diagonal terms are only known when the resolution closed
    let closed = gldim_upto(b).exact().is_some();
    let limit = if closed { b.certified_internal } else { b.certified_internal.min(b.certified_homological as u32) };
    let limit = limit.min(hilbert.certified_to);
    for d in 0..=limit {
        let mut acc: i128 = 0;
        for i in 0..=d {
            let beta = b.get(i as usize, i) as i128;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            acc += sign * beta * hilbert.get((d - i) as i64) as i128;
        }
        if acc != i128::from(d == 0) {
            return KoszulVerdict::IdentityFails { degree: d };
        }
    }
    KoszulVerdict::Koszul { h: b.certified_homological, d: limit }
}

/// `d_i ∘ d_(i+1)`, reduced to normal form, for every pair of stages.
/// Returns the first nonzero entry `(i, row, column)` if any.
#[allow(clippy::needless_range_loop)]
pub fn composition_defect(rs: &RewriteSystem, res: &Resolution) -> Option<(usize, usize, usize)> {
    let f = rs.field();
    for i in 2..res.stages.len() {
        let upper = &res.stages[i].differential;
        let lower = &res.stages[i - 1].differential;
        let width = res.stages[i - 2].generator_degrees.len();
        for (g, row) in upper.iter().enumerate() {
            for k in 0..width {
                let mut acc = FreeElement::zero(f);
                for (h, a) in row.iter().enumerate() {
                    if !a.is_zero() && !lower[h][k].is_zero() {
                        acc = acc.add(&a.mul(&lower[h][k]));
                    }
                }
                if !rs.normal_form(&acc).is_zero() {
                    return Some((i, g, k));
                }
            }
        }
    }
    None
}

/// Alternating sum `Σ_i (-1)^i Σ_s β_(i,s) dim B_(j-s)` minus `dim M_j` for
/// every internal degree covered by the computed stages.
pub fn euler_defects(res: &Resolution, algebra: &GradedDims) -> Vec<(u32, i64)> {
    let h = res.homological_bound;
    let lowest_missing = match res.stage_bounds.get(h + 1) {
        Some(StageBound::Empty) => u32::MAX,
        // stage h + 1 starts in degree at least h + 1 when generators have degree >= 1
        _ => h as u32 + 1,
    };
    let mut out = Vec::new();
    for j in 0..=res.degree_bound.min(lowest_missing.saturating_sub(1)) {
        let mut acc: i64 = 0;
        for st in &res.stages {
            let sign = if st.index % 2 == 0 { 1 } else { -1 };
            for &s in &st.generator_degrees {
                if s <= j {
                    acc += sign * algebra.get((j - s) as i64) as i64;
                }
            }
        }
        let defect = acc - res.module_dims[j as usize] as i64;
        if defect != 0 {
            out.push((j, defect));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::FieldSpec;
    use crate::hilbert::hilbert_function;
    use crate::presentation::{builtin, ore_extension, skew_polynomial_uniform};

    const P: FieldSpec = FieldSpec::Prime(32003);

    fn degrees(res: &Resolution) -> Vec<Vec<u32>> {
        res.stages.iter().map(|s| s.generator_degrees.clone()).collect()
    }

    #[test]
    fn polynomial_ring_in_two_variables() {
        let rs = complete(&skew_polynomial_uniform(P, 2, 1).unwrap(), 6);
        let res = minimal_resolution(&rs, 3, 6).unwrap();
        assert_eq!(degrees(&res), vec![vec![0], vec![1, 1], vec![2], vec![]]);
        let b = betti(&res);
        assert_eq!(b.get(1, 1), 2);
        assert_eq!(gldim_upto(&b).exact(), Some(2));
        assert_eq!(composition_defect(&rs, &res), None);
    }

    #[test]
    fn free_algebra() {
        let rs = complete(&builtin("free-2", P).unwrap(), 5);
        let res = minimal_resolution(&rs, 3, 5).unwrap();
        assert_eq!(degrees(&res), vec![vec![0], vec![1, 1], vec![], vec![]]);
        assert_eq!(gldim_upto(&betti(&res)).exact(), Some(1));
    }

    #[test]
    fn cubic_relations() {
        let rs = complete(&builtin("cubic-as3", P).unwrap(), 8);
        let res = minimal_resolution(&rs, 4, 8).unwrap();
        assert_eq!(degrees(&res), vec![vec![0], vec![1, 1], vec![3, 3], vec![4], vec![]]);
        let b = betti(&res);
        assert_eq!(gldim_upto(&b).exact(), Some(3));
        let g = hilbert_function(&rs, 8).unwrap();
        assert_eq!(koszul_check(&b, &g, &[1, 1]), KoszulVerdict::OffDiagonal { i: 2, j: 3 });
    }

    #[test]
    fn weighted_generators_not_koszul_applicable() {
        let p = crate::presentation::parse("algebra w; deg x=1, y=2; rel y*x - x*y").unwrap();
        let rs = complete(&p, 6);
        let res = minimal_resolution(&rs, 3, 6).unwrap();
        assert_eq!(degrees(&res), vec![vec![0], vec![1, 2], vec![3], vec![]]);
        let b = betti(&res);
        let g = hilbert_function(&rs, 6).unwrap();
        assert_eq!(koszul_check(&b, &g, &[1, 2]), KoszulVerdict::NotApplicable);
        assert!(euler_defects(&res, &g).is_empty());
        assert_eq!(composition_defect(&rs, &res), None);
    }

    #[test]
    fn cyclic_module_over_polynomial_ring() {
        let p = skew_polynomial_uniform(P, 2, 1).unwrap();
        let rs = complete(&p, 6);
        let res = cyclic_module_resolution(&rs, &[p.generator(0)], 3, 6).unwrap();
        assert_eq!(degrees(&res), vec![vec![0], vec![1], vec![], vec![]]);
        assert_eq!(res.module_dims, vec![1; 7]);
    }

    #[test]
    fn all_generators_as_module_relations_give_k() {
        let p = builtin("quantum-plane-2", P).unwrap();
        let rs = complete(&p, 6);
        let gens: Vec<FreeElement> = (0..2).map(|g| p.generator(g)).collect();
        let a = cyclic_module_resolution(&rs, &gens, 3, 6).unwrap();
        let b = minimal_resolution(&rs, 3, 6).unwrap();
        assert_eq!(degrees(&a), degrees(&b));
    }

    #[test]
    fn smith_zhang_resolution() {
        let rs = complete(&builtin("smith-zhang", P).unwrap(), 8);
        let res = minimal_resolution(&rs, 5, 8).unwrap();
        let b = betti(&res);
        let diag: Vec<u64> = (0..=5).map(|i| b.get(i, i as u32)).collect();
        assert_eq!(diag, vec![1, 4, 6, 4, 1, 0]);
        assert_eq!(b.entries.iter().map(|e| e.dim).sum::<u64>(), 16);
        assert_eq!(gldim_upto(&b).exact(), Some(4));
        let g = hilbert_function(&rs, 8).unwrap();
        assert!(koszul_check(&b, &g, &[1; 4]).is_koszul());
        assert_eq!(composition_defect(&rs, &res), None);
        assert!(euler_defects(&res, &g).is_empty());
    }

    #[test]
    fn homogenized_weyl_adds_one() {
        let rs = complete(&builtin("weyl-homogenized", P).unwrap(), 6);
        let b = betti(&minimal_resolution(&rs, 4, 6).unwrap());
        assert_eq!(gldim_upto(&b).exact(), Some(3));
        let kxy = complete(&skew_polynomial_uniform(P, 2, 1).unwrap(), 6);
        assert_eq!(gldim_upto(&betti(&minimal_resolution(&kxy, 4, 6).unwrap())).exact(), Some(2));
    }

    #[test]
    fn ore_extension_raises_gldim() {
        let qp = builtin("quantum-plane-2", P).unwrap();
        let alpha = vec![qp.generator(0).scale(&P.from_i64(3)), qp.generator(1)];
        let ext = ore_extension(&qp, &alpha).unwrap().presentation;
        let rs = complete(&ext, 6);
        let b = betti(&minimal_resolution(&rs, 4, 6).unwrap());
        assert_eq!(gldim_upto(&b).exact(), Some(3));
    }

    #[test]
    fn truncated_window_gives_lower_bound() {
        let rs = complete(&skew_polynomial_uniform(P, 3, 1).unwrap(), 6);
        let b = betti(&minimal_resolution(&rs, 2, 6).unwrap());
        assert_eq!(gldim_upto(&b), GldimVerdict::AtLeast { n: 2 });
    }

    #[test]
    fn exterior_algebra_is_finite_dimensional() {
        let p = crate::presentation::parse_with_field(
            "algebra ext over Q; deg x=1, y=1; rel x*x; rel y*y; rel y*x + x*y",
            Some(P),
        )
        .unwrap();
        let rs = complete(&p, 6);
        let g = crate::hilbert::hilbert_function(&rs, 6).unwrap();
        assert_eq!(g.dims, vec![1, 2, 1, 0, 0, 0, 0]);
        let res = minimal_resolution(&rs, 4, 6).unwrap();
        assert_eq!(degrees(&res), vec![vec![0], vec![1; 2], vec![2; 3], vec![3; 4], vec![4; 5]]);
        assert_eq!(composition_defect(&rs, &res), None);
        assert!(euler_defects(&res, &g).is_empty());
    }
}
