//! Exact sparse linear algebra over a [`Field`].
//!
//! The workhorse is [`ColumnEchelon`], an incremental column reduction.
//! Columns are reduced against the pivots found so far; the pivot of a basis
//! vector is its *first* nonzero row and is normalized to one. Because every
//! basis vector vanishes above its pivot, reducing a vector at pivot rows in
//! increasing order yields a normal form that depends only on the column
//! space, not on the order columns were inserted.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F> Default for SparseVec<F> {
    fn default() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from `(index, value)` pairs in any order; duplicates are summed.
    pub fn from_pairs(mut pairs: Vec<(usize, F)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w += &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(values: &[F]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn unit(index: usize) -> Self {
        SparseVec {
            entries: vec![(index, F::one())],
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> F {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    /// First nonzero entry.
    pub fn leading(&self) -> Option<&(usize, F)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&mut self, c: &F) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in &mut self.entries {
            *v *= c;
        }
    }

    pub fn scaled(&self, c: &F) -> Self {
        let mut out = self.clone();
        out.scale(c);
        out
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &F, other: &SparseVec<F>) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut merged = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => merged.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, w) = b.next().unwrap();
                    merged.push((*j, c.clone() * w.clone()));
                }
                (Some(_), Some(_)) => {
                    let (i, mut v) = a.next().unwrap();
                    let (_, w) = b.next().unwrap();
                    v += &(c.clone() * w.clone());
                    if !v.is_zero() {
                        merged.push((i, v));
                    }
                }
                (Some(_), None) => merged.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, w) = b.next().unwrap();
                    merged.push((*j, c.clone() * w.clone()));
                }
                (None, None) => break,
            }
        }
        self.entries = merged;
    }

    pub fn dot_dense(&self, dense: &[F]) -> F {
        let mut acc = F::zero();
        for (i, v) in &self.entries {
            acc += &(v.clone() * dense[*i].clone());
        }
        acc
    }

    /// Re-index through `map`; entries mapped to `None` are dropped.
    pub fn remap(&self, map: impl Fn(usize) -> Option<usize>) -> Self {
        SparseVec::from_pairs(
            self.entries
                .iter()
                .filter_map(|(i, v)| map(*i).map(|j| (j, v.clone())))
                .collect(),
        )
    }
}

/// Sparse matrix stored by columns. Absent entries are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<F>>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            columns: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec<F>>) -> Result<Self> {
        if let Some(bad) = columns
            .iter()
            .find(|c| c.max_index().is_some_and(|i| i >= rows))
        {
            return Err(Error::Dimension(format!(
                "column entry at row {} in a matrix with {rows} rows",
                bad.max_index().unwrap()
            )));
        }
        Ok(Matrix {
            rows,
            cols: columns.len(),
            columns,
        })
    }

    /// Row-major dense input. All rows must have the same length.
    pub fn from_rows(rows: &[Vec<F>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let columns = (0..cols)
            .map(|c| SparseVec::from_dense(&rows.iter().map(|r| r[c].clone()).collect::<Vec<_>>()))
            .collect();
        Ok(Matrix {
            rows: rows.len(),
            cols,
            columns,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let conv: Vec<Vec<F>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
            .collect();
        Self::from_rows(&conv)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &SparseVec<F> {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.columns[c].get(r)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col.entries() {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut pairs: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col.entries() {
                pairs[*r].push((c, v.clone()));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            columns: pairs.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut acc = SparseVec::new();
        for (c, x) in v.iter().enumerate() {
            acc.axpy(x, &self.columns[c]);
        }
        Ok(acc.to_dense(self.rows))
    }

    pub fn mul_sparse(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = SparseVec::new();
        for (c, x) in v.entries() {
            acc.axpy(x, &self.columns[*c]);
        }
        acc
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other.columns.iter().map(|c| self.mul_sparse(c)).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }
}

/// Incremental column echelon form, optionally tracking how each basis
/// vector is combined from the inserted columns.
#[derive(Clone, Debug)]
pub struct ColumnEchelon<F> {
    dim: usize,
    pivot_slot: Vec<Option<usize>>,
    basis: Vec<SparseVec<F>>,
    combos: Option<Vec<SparseVec<F>>>,
    pivot_columns: Vec<usize>,
    kernel: Vec<SparseVec<F>>,
    inserted: usize,
}

impl<F: Field> ColumnEchelon<F> {
    /// Empty echelon for vectors of length `dim`.
    pub fn new(dim: usize, track: bool) -> Self {
        ColumnEchelon {
            dim,
            pivot_slot: vec![None; dim],
            basis: Vec::new(),
            combos: track.then(Vec::new),
            pivot_columns: Vec::new(),
            kernel: Vec::new(),
            inserted: 0,
        }
    }

    /// Reduce every column of `m` in column order.
    pub fn of_matrix(m: &Matrix<F>, track: bool) -> Self {
        let mut e = Self::new(m.rows(), track);
        for col in m.columns() {
            e.insert(col.clone());
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Echelon basis of the span, pivots normalized to one.
    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    /// Indices of inserted columns that contributed a new pivot.
    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_columns
    }

    pub fn is_pivot_row(&self, row: usize) -> bool {
        self.pivot_slot[row].is_some()
    }

    /// Null-space vectors (only when tracking): one per dependent column, with
    /// coefficient one at that column and otherwise supported on pivot columns.
    pub fn kernel(&self) -> &[SparseVec<F>] {
        &self.kernel
    }

    fn reduce_inner(&self, v: &mut SparseVec<F>, mut comb: Option<&mut SparseVec<F>>) {
        let mut pos = 0;
        while pos < v.entries.len() {
            let (row, coeff) = &v.entries[pos];
            match self.pivot_slot[*row] {
                Some(slot) => {
                    let c = -coeff.clone();
                    v.axpy(&c, &self.basis[slot]);
                    if let (Some(comb), Some(combos)) = (comb.as_deref_mut(), self.combos.as_ref())
                    {
                        comb.axpy(&c, &combos[slot]);
                    }
                }
                None => pos += 1,
            }
        }
    }

    /// Normal form of `v` modulo the span: zero at every pivot row.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut out = v.clone();
        self.reduce_inner(&mut out, None);
        out
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert a column; returns true if it enlarged the span.
    pub fn insert(&mut self, mut v: SparseVec<F>) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let mut comb = SparseVec::unit(index);
        let tracking = self.combos.is_some();
        self.reduce_inner(&mut v, tracking.then_some(&mut comb));
        let Some((row, lead)) = v.leading().cloned() else {
            if tracking {
                self.kernel.push(comb);
            }
            return false;
        };
        let inv = lead.inverse().expect("leading entry is nonzero");
        v.scale(&inv);
        self.pivot_slot[row] = Some(self.basis.len());
        self.basis.push(v);
        if let Some(combos) = self.combos.as_mut() {
            comb.scale(&inv);
            combos.push(comb);
        }
        self.pivot_columns.push(index);
        true
    }

    /// Express `v` as a combination of the inserted columns, if it lies in
    /// their span. Requires tracking.
    pub fn preimage(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        assert!(self.combos.is_some(), "preimage requires a tracked echelon");
        let mut rest = v.clone();
        let mut comb = SparseVec::new();
        self.reduce_inner(&mut rest, Some(&mut comb));
        if rest.is_zero() {
            comb.scale(&-F::one());
            Some(comb)
        } else {
            None
        }
    }
}

/// Rank and reduced-echelon null-space basis of `m`.
///
/// Kernel vectors are listed by increasing free column; each has a one at its
/// free column, zero at the other free columns.
pub fn rank_and_kernel<F: Field>(m: &Matrix<F>) -> (usize, Vec<Vec<F>>) {
    let e = ColumnEchelon::of_matrix(m, true);
    let kernel = e.kernel().iter().map(|k| k.to_dense(m.cols())).collect();
    (e.rank(), kernel)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    ColumnEchelon::of_matrix(m, false).rank()
}

/// Some `x` with `m x = b`, or `None` when `b` is outside the column space.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Result<Option<Vec<F>>> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    let e = ColumnEchelon::of_matrix(m, true);
    Ok(e.preimage(&SparseVec::from_dense(b))
        .map(|x| x.to_dense(m.cols())))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant<F: Field>(rows: &[Vec<F>]) -> Result<F> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(
            "determinant of a non-square matrix".into(),
        ));
    }
    if n == 0 {
        return Ok(F::one());
    }
    let mut a: Vec<Vec<F>> = rows.to_vec();
    let mut sign = F::one();
    let mut prev = F::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(F::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num / prev.clone();
            }
            a[i][k] = F::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(sign * a[n - 1][n - 1].clone())
}
