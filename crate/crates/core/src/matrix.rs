//! Sparse real operators on a labelled basis, plus the dense text format.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Entries with magnitude below this are dropped on construction.
pub const PRUNE: f64 = 1e-14;

/// Largest dimension converted to a dense matrix.
pub const DENSE_LIMIT: usize = 4096;

/// A square operator stored as sorted sparse rows.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    rows: Vec<Vec<(usize, f64)>>,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        OperatorMatrix {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let rows = diag
            .iter()
            .enumerate()
            .map(|(i, &v)| if v.abs() < PRUNE { vec![] } else { vec![(i, v)] })
            .collect();
        OperatorMatrix { dim: diag.len(), rows }
    }

    /// Builds from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(dim: usize, triplets: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); dim];
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "triplet ({r}, {c}) outside dimension {dim}");
            rows[r].push((c, v));
        }
        for row in &mut rows {
            normalize_row(row);
        }
        OperatorMatrix { dim, rows }
    }

    /// Builds column by column; `column(j)` lists the non-zero `(row, value)`
    /// entries of column `j`.
    pub fn from_columns(dim: usize, columns: Vec<Vec<(usize, f64)>>) -> Self {
        assert_eq!(columns.len(), dim);
        let trip = columns
            .into_iter()
            .enumerate()
            .flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v)));
        Self::from_triplets(dim, trip)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        match self.rows[r].binary_search_by_key(&c, |&(col, _)| col) {
            Ok(k) => self.rows[r][k].1,
            Err(_) => 0.0,
        }
    }

    pub fn row(&self, r: usize) -> &[(usize, f64)] {
        &self.rows[r]
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.dim, self.entries().map(|(r, c, v)| (c, r, v)))
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::from_triplets(self.dim, self.entries().map(|(r, c, v)| (r, c, k * v)))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1.0)
    }

    fn combine(&self, other: &Self, k: f64) -> Self {
        assert_eq!(self.dim, other.dim);
        let trip = self.entries().chain(other.entries().map(|(r, c, v)| (r, c, k * v)));
        Self::from_triplets(self.dim, trip)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut acc = vec![0.0; self.dim];
        let mut touched = vec![false; self.dim];
        let mut cols = Vec::new();
        let mut rows = Vec::with_capacity(self.dim);
        for row in &self.rows {
            for &(k, a) in row {
                for &(c, b) in &other.rows[k] {
                    if !touched[c] {
                        touched[c] = true;
                        cols.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            cols.sort_unstable();
            let mut out = Vec::with_capacity(cols.len());
            for &c in &cols {
                if acc[c].abs() >= PRUNE {
                    out.push((c, acc[c]));
                }
                acc[c] = 0.0;
                touched[c] = false;
            }
            cols.clear();
            rows.push(out);
        }
        OperatorMatrix { dim: self.dim, rows }
    }

    /// `self · x` for a dense vector.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(c, v)| v * x[c]).sum())
            .collect()
    }

    /// Largest elementwise `|self - other|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            let (a, b) = (&self.rows[r], &other.rows[r]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                let ca = a.get(i).map_or(usize::MAX, |e| e.0);
                let cb = b.get(j).map_or(usize::MAX, |e| e.0);
                let d = if ca == cb {
                    let d = a[i].1 - b[j].1;
                    i += 1;
                    j += 1;
                    d
                } else if ca < cb {
                    i += 1;
                    a[i - 1].1
                } else {
                    j += 1;
                    b[j - 1].1
                };
                worst = worst.max(d.abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().fold(0.0, |m, (_, _, v)| m.max(v.abs()))
    }

    /// Max-norm of `self - selfᵀ`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.transpose())
    }

    /// Max-norm of `self² - self`.
    pub fn idempotency_defect(&self) -> f64 {
        self.mul(self).max_abs_diff(self)
    }

    /// Max-norm of `[self, other]`.
    pub fn commutator_norm(&self, other: &Self) -> f64 {
        self.mul(other).max_abs_diff(&other.mul(self))
    }

    /// Relabels the basis: state `i` becomes state `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim);
        Self::from_triplets(self.dim, self.entries().map(|(r, c, v)| (perm[r], perm[c], v)))
    }

    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        if self.dim > DENSE_LIMIT {
            return Err(Error::Precondition(format!(
                "dimension {} exceeds the dense limit {DENSE_LIMIT}",
                self.dim
            )));
        }
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (r, c, v) in self.entries() {
            m[(r, c)] = v;
        }
        Ok(m)
    }

    /// Eigenvalues of the symmetric part, ascending.
    pub fn symmetric_eigenvalues(&self) -> Result<Vec<f64>> {
        let dense = self.to_dense()?;
        let sym = (&dense + dense.transpose()) * 0.5;
        let mut ev: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        Ok(ev)
    }

    /// Rank of a Hermitian projector: eigenvalues above one half.
    pub fn projector_rank(&self) -> Result<usize> {
        Ok(self.symmetric_eigenvalues()?.iter().filter(|&&x| x > 0.5).count())
    }

    /// Writes the dense text format: a `matrix N` header followed by `N`
    /// rows of `N` space-separated `re im` pairs.
    pub fn write_dense_text(&self, mut out: impl Write) -> Result<()> {
        writeln!(out, "# row-major, one row per line, (re im) pairs")?;
        writeln!(out, "matrix {}", self.dim)?;
        let mut line = String::new();
        for row in &self.rows {
            line.clear();
            let mut it = row.iter().peekable();
            for c in 0..self.dim {
                let v = match it.peek() {
                    Some(&&(col, v)) if col == c => {
                        it.next();
                        v
                    }
                    _ => 0.0,
                };
                if c > 0 {
                    line.push(' ');
                }
                write!(line, "{v:?} 0.0").unwrap();
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    /// Reads the dense text format. Imaginary parts must vanish.
    pub fn read_dense_text(input: impl BufRead) -> Result<Self> {
        let mut dim = None;
        let mut trip = Vec::new();
        let mut row = 0;
        for (ln, line) in input.lines().enumerate() {
            let line = line?;
            let ln = ln + 1;
            let body = line.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let Some(n) = dim else {
                let n: usize = body
                    .strip_prefix("matrix")
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| Error::parse(ln, "expected `matrix N` header"))?;
                dim = Some(n);
                continue;
            };
            if row >= n {
                return Err(Error::parse(ln, "more rows than the declared dimension"));
            }
            let nums: Vec<f64> = body
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(ln, format!("bad number {t:?}"))))
                .collect::<Result<_>>()?;
            if nums.len() != 2 * n {
                return Err(Error::parse(
                    ln,
                    format!("expected {} numbers, found {}", 2 * n, nums.len()),
                ));
            }
            for (c, pair) in nums.chunks(2).enumerate() {
                if pair[1] != 0.0 {
                    return Err(Error::parse(ln, "non-zero imaginary part"));
                }
                if pair[0] != 0.0 {
                    trip.push((row, c, pair[0]));
                }
            }
            row += 1;
        }
        let n = dim.ok_or_else(|| Error::parse(0, "missing `matrix N` header"))?;
        if row != n {
            return Err(Error::parse(0, format!("expected {n} rows, found {row}")));
        }
        // keep exact values, including ones below the prune threshold
        let mut rows = vec![Vec::new(); n];
        for (r, c, v) in trip {
            rows[r].push((c, v));
        }
        Ok(OperatorMatrix { dim: n, rows })
    }
}

fn normalize_row(row: &mut Vec<(usize, f64)>) {
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, f64)> = Vec::with_capacity(row.len());
    for &(c, v) in row.iter() {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| e.1.abs() >= PRUNE);
    *row = out;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small(dim: usize, trip: &[(usize, usize, f64)]) -> OperatorMatrix {
        OperatorMatrix::from_triplets(dim, trip.iter().copied())
    }

    #[test]
    fn product_and_trace() {
        let a = small(2, &[(0, 0, 1.0), (0, 1, 2.0), (1, 0, 3.0), (1, 1, 4.0)]);
        let p = a.mul(&a);
        assert_eq!(p.get(0, 0), 7.0);
        assert_eq!(p.get(0, 1), 10.0);
        assert_eq!(p.get(1, 0), 15.0);
        assert_eq!(p.get(1, 1), 22.0);
        assert_eq!(a.trace(), 5.0);
        assert_eq!(a.hermiticity_defect(), 1.0);
    }

    #[test]
    fn pruning_and_duplicates() {
        let a = small(3, &[(0, 0, 1.0), (0, 0, -1.0), (1, 2, 1e-16), (2, 1, 0.5), (2, 1, 0.5)]);
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.get(2, 1), 1.0);
    }

    #[test]
    fn projector_rank_of_diagonal() {
        let p = OperatorMatrix::diagonal(&[1.0, 0.0, 1.0, 1.0]);
        assert_eq!(p.projector_rank().unwrap(), 3);
        assert_eq!(p.idempotency_defect(), 0.0);
    }

    #[test]
    fn dense_limit() {
        let big = OperatorMatrix::zeros(DENSE_LIMIT + 1);
        assert!(big.to_dense().is_err());
    }

    #[test]
    fn rejects_bad_text() {
        assert!(OperatorMatrix::read_dense_text("matrix 2\n1 0 0 0\n".as_bytes()).is_err());
        assert!(OperatorMatrix::read_dense_text("matrix 1\n1 2\n".as_bytes()).is_err());
        assert!(OperatorMatrix::read_dense_text("1 0\n".as_bytes()).is_err());
    }

    proptest! {
        #[test]
        fn text_round_trip(vals in prop::collection::vec(-10.0f64..10.0, 9)) {
            let m = OperatorMatrix::from_triplets(3, vals.iter().enumerate().map(|(k, &v)| (k / 3, k % 3, v)));
            let mut buf = Vec::new();
            m.write_dense_text(&mut buf).unwrap();
            let back = OperatorMatrix::read_dense_text(buf.as_slice()).unwrap();
            prop_assert_eq!(back, m);
        }

        #[test]
        fn permutation_preserves_spectrum(seed in 0u64..1000) {
            let n = 5;
            let mut trip = Vec::new();
            let mut x = seed;
            for r in 0..n {
                for c in r..n {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let v = ((x >> 33) % 7) as f64 - 3.0;
                    trip.push((r, c, v));
                    if r != c { trip.push((c, r, v)); }
                }
            }
            let m = OperatorMatrix::from_triplets(n, trip);
            let perm = [3, 0, 4, 1, 2];
            let a = m.symmetric_eigenvalues().unwrap();
            let b = m.permute(&perm).symmetric_eigenvalues().unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() < 1e-9);
            }
        }
    }
}
