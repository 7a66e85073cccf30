//! Sparse exact linear algebra: vectors, row-major matrices and incremental
//! row echelon forms.

use std::collections::BTreeMap;

use super::{FieldSpec, LinAlgError, Scalar};

/// Sparse vector: strictly increasing column indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `v + c * w`.
pub fn axpy(field: &FieldSpec, v: &[(usize, Scalar)], c: &Scalar, w: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        if j == w.len() || (i < v.len() && v[i].0 < w[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i == v.len() || w[j].0 < v[i].0 {
            out.push((w[j].0, field.mul(c, &w[j].1)));
            j += 1;
        } else {
            let mut s = v[i].1.clone();
            field.add_mul_assign(&mut s, c, &w[j].1);
            if !field.is_zero(&s) {
                out.push((v[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(field: &FieldSpec, v: &[(usize, Scalar)], c: &Scalar) -> SparseVec {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(c, x))).collect()
}

/// Collect `(index, value)` pairs (any order, repeats summed) into a sparse vector.
pub fn collect_vec(field: &FieldSpec, entries: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, x) in entries {
        match acc.get_mut(&i) {
            Some(y) => *y = field.add(y, &x),
            None => {
                acc.insert(i, x);
            }
        }
    }
    acc.into_iter().filter(|(_, x)| !field.is_zero(x)).collect()
}

/// Row echelon form built one vector at a time.
///
/// Every stored row is monic and its first entry is its pivot; no two rows
/// share a pivot. Rows are only reduced at their leading position on insert,
/// so the stored form is an echelon form, not a reduced one.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: FieldSpec,
    ncols: usize,
    pivot_row: Vec<u32>,
    rows: Vec<SparseVec>,
}

const NO_PIVOT: u32 = u32::MAX;

impl Echelon {
    pub fn new(field: FieldSpec, ncols: usize) -> Self {
        Echelon { field, ncols, pivot_row: vec![NO_PIVOT; ncols], rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot_of(&self, col: usize) -> Option<usize> {
        match self.pivot_row[col] {
            NO_PIVOT => None,
            r => Some(r as usize),
        }
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c] != NO_PIVOT).collect()
    }

    /// Reduce until the leading column is not a pivot column.
    pub fn reduce_leading(&self, mut v: SparseVec) -> SparseVec {
        while let Some((c, x)) = v.first() {
            let r = self.pivot_row[*c];
            if r == NO_PIVOT {
                break;
            }
            let c = self.field.neg(x);
            v = axpy(&self.field, &v, &c, &self.rows[r as usize]);
        }
        v
    }

    /// Eliminate every pivot column from `v`. The result is a canonical
    /// representative of `v` modulo the row space.
    pub fn reduce_full(&self, mut v: SparseVec) -> SparseVec {
        let mut pos = 0;
        while pos < v.len() {
            let r = self.pivot_row[v[pos].0];
            if r == NO_PIVOT {
                pos += 1;
                continue;
            }
            let coeff = self.field.neg(&v[pos].1);
            v = axpy(&self.field, &v, &coeff, &self.rows[r as usize]);
        }
        v
    }

    /// Insert `v`; returns the new pivot column if `v` was independent.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let v = self.reduce_leading(v);
        let (c, lead) = v.first()?;
        let c = *c;
        let inv = self.field.inv(lead);
        let v = scale(&self.field, &v, &inv);
        self.pivot_row[c] = self.rows.len() as u32;
        self.rows.push(v);
        Some(c)
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce_leading(v).is_empty()
    }

    /// Bring the stored rows to reduced form and return them sorted by pivot.
    pub fn into_reduced_rows(self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = self.pivots();
        order.reverse();
        let mut done = Echelon::new(self.field, self.ncols);
        let mut rows = self.rows;
        for c in order {
            let r = self.pivot_row[c] as usize;
            let row = std::mem::take(&mut rows[r]);
            let (head, tail) = row.split_first().expect("stored rows are nonzero");
            let mut reduced = vec![head.clone()];
            reduced.extend(done.reduce_full(tail.to_vec()));
            done.pivot_row[c] = done.rows.len() as u32;
            done.rows.push(reduced);
        }
        done.rows.reverse();
        done.rows
    }
}

/// Row-major sparse matrix over a [`FieldSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    field: FieldSpec,
    nrows: usize,
    ncols: usize,
    data: Vec<SparseVec>,
}

/// Output of [`SparseMatrix::rref`].
#[derive(Debug, Clone, PartialEq)]
pub struct Rref {
    pub matrix: SparseMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl SparseMatrix {
    pub fn zeros(field: FieldSpec, nrows: usize, ncols: usize) -> Self {
        SparseMatrix { field, nrows, ncols, data: vec![Vec::new(); nrows] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, field.one())]).collect();
        SparseMatrix { field, nrows: n, ncols: n, data }
    }

    pub fn from_rows(field: FieldSpec, ncols: usize, rows: Vec<SparseVec>) -> Result<Self, LinAlgError> {
        for row in &rows {
            let mut last = None;
            for (c, x) in row {
                if *c >= ncols || last.is_some_and(|l| l >= *c) || field.is_zero(x) {
                    return Err(LinAlgError::MalformedRow);
                }
                last = Some(*c);
            }
        }
        Ok(SparseMatrix { field, nrows: rows.len(), ncols, data: rows })
    }

    pub fn from_dense(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(c, v)| (c, field.from_i64(*v)))
                    .filter(|(_, x)| !field.is_zero(x))
                    .collect()
            })
            .collect();
        SparseMatrix { field, nrows: rows.len(), ncols, data }
    }

    pub fn from_triplets(
        field: FieldSpec,
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self, LinAlgError> {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
        for (r, c, x) in entries {
            if r >= nrows || c >= ncols {
                return Err(LinAlgError::IndexOutOfRange { row: r, col: c });
            }
            buckets[r].push((c, x));
        }
        let data = buckets.into_iter().map(|b| collect_vec(&field, b)).collect();
        Ok(SparseMatrix { field, nrows, ncols, data })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[r].binary_search_by_key(&c, |(i, _)| *i) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, x) in row {
                data[*c].push((r, x.clone()));
            }
        }
        SparseMatrix { field: self.field, nrows: self.ncols, ncols: self.nrows, data }
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinAlgError> {
        if self.ncols != other.nrows {
            return Err(LinAlgError::ShapeMismatch {
                left: (self.nrows, self.ncols),
                right: (other.nrows, other.ncols),
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SparseVec = Vec::new();
                for (k, x) in row {
                    acc = axpy(&self.field, &acc, x, &other.data[*k]);
                }
                acc
            })
            .collect();
        Ok(SparseMatrix { field: self.field, nrows: self.nrows, ncols: other.ncols, data })
    }

    /// Reduced row echelon form. Rows are fed to the elimination shortest
    /// first, which keeps fill-in low on the sparse differentials we build.
    pub fn rref(&self) -> Rref {
        let mut order: Vec<usize> = (0..self.nrows).collect();
        order.sort_by_key(|&r| (self.data[r].len(), r));
        let mut ech = Echelon::new(self.field, self.ncols);
        for r in order {
            ech.insert(self.data[r].clone());
        }
        let rank = ech.rank();
        let reduced = ech.into_reduced_rows();
        let pivots: Vec<usize> = reduced.iter().map(|r| r[0].0).collect();
        let mut data = reduced;
        data.resize(self.nrows, Vec::new());
        Rref {
            matrix: SparseMatrix { field: self.field, nrows: self.nrows, ncols: self.ncols, data },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.field, self.ncols);
        let mut order: Vec<usize> = (0..self.nrows).collect();
        order.sort_by_key(|&r| (self.data[r].len(), r));
        for r in order {
            ech.insert(self.data[r].clone());
        }
        ech.rank()
    }

    /// Basis of the right kernel, one basis vector per column of the result,
    /// indexed by the free columns in increasing order.
    pub fn kernel_basis(&self) -> SparseMatrix {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.ncols).filter(|&c| !is_pivot[c]).collect();
        let mut columns = Vec::with_capacity(free.len());
        for &f in &free {
            let mut entries = vec![(f, self.field.one())];
            for (i, &p) in rref.pivots.iter().enumerate() {
                let x = rref.matrix.get(i, f);
                if !self.field.is_zero(&x) {
                    entries.push((p, self.field.neg(&x)));
                }
            }
            entries.sort_by_key(|(i, _)| *i);
            columns.push(entries);
        }
        SparseMatrix { field: self.field, nrows: free.len(), ncols: self.ncols, data: columns }
            .transpose()
    }

    /// `self * v` for a sparse column vector.
    pub fn apply(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = self.field.zero();
            let (mut i, mut j) = (0, 0);
            while i < row.len() && j < v.len() {
                match row[i].0.cmp(&v[j].0) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        self.field.add_mul_assign(&mut acc, &row[i].1, &v[j].1);
                        i += 1;
                        j += 1;
                    }
                }
            }
            if !self.field.is_zero(&acc) {
                out.push((r, acc));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn rref_identity() {
        let id = SparseMatrix::identity(Q, 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_zero() {
        let z = SparseMatrix::zeros(Q, 3, 3);
        let r = z.rref();
        assert!(r.matrix.is_zero());
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_dependent_rows() {
        let m = SparseMatrix::from_dense(Q, &[vec![1, 2], vec![2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, SparseMatrix::from_dense(Q, &[vec![1, 2], vec![0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = SparseMatrix::identity(Q, 2).kernel_basis();
        assert_eq!(k.nrows(), 2);
        assert_eq!(k.ncols(), 0);
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let k = SparseMatrix::from_dense(Q, &[vec![1, 1]]).kernel_basis();
        assert_eq!(k.ncols(), 1);
        assert_eq!(k.get(0, 0), Q.from_i64(-1));
        assert_eq!(k.get(1, 0), Q.from_i64(1));
    }

    fn random_rank_r(field: FieldSpec, rows: usize, cols: usize, r: usize, seed: u64) -> SparseMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gen = |n, m| {
            let dense: Vec<Vec<i64>> =
                (0..n).map(|_| (0..m).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            SparseMatrix::from_dense(field, &dense)
        };
        let a = gen(rows, r);
        let b = gen(r, cols);
        a.mul(&b).unwrap()
    }

    #[test]
    fn random_kernel_over_prime_field() {
        let f = FieldSpec::Prime(32003);
        for seed in 0..5 {
            let m = random_rank_r(f, 5, 8, 3, seed);
            let rank = m.rank();
            let k = m.kernel_basis();
            assert_eq!(k.ncols(), 8 - rank);
            assert!(m.mul(&k).unwrap().is_zero());
            assert_eq!(k.transpose().rank(), k.ncols());
        }
    }

    #[test]
    fn reduce_full_is_canonical() {
        let m = SparseMatrix::from_dense(Q, &[vec![1, 1, 0], vec![0, 1, 1]]);
        let mut e = Echelon::new(Q, 3);
        for r in m.rows() {
            e.insert(r.clone());
        }
        let a = e.reduce_full(vec![(0, Q.one())]);
        let b = e.reduce_full(vec![(1, Q.from_i64(-1))]);
        assert_eq!(a, b);
        assert_eq!(a, vec![(2, Q.one())]);
    }
}
