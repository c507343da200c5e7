use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{make_primitive, to_primitive_ints, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, super::scalar(1));
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { left: cols, right: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(ExactMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| super::scalar(x)).collect()).collect();
        Self::from_rows(cols, rows).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }
}

/// Integer Gauss-Jordan on primitive rows; returns pivot columns and the
/// eliminated rows (pivot rows first, in pivot order).
fn integer_gauss_jordan(mut rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        make_primitive(&mut rows[rank]);
        if rows[rank][col].is_negative() {
            for x in rows[rank].iter_mut() {
                *x = -&*x;
            }
        }
        let (head, tail) = rows.split_at_mut(rank);
        let (pivot_row, tail) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if other[col].is_zero() {
                continue;
            }
            let g = pivot_row[col].gcd(&other[col]);
            let a = &pivot_row[col] / &g;
            let b = &other[col] / &g;
            for (x, p) in other.iter_mut().zip(pivot_row.iter()) {
                *x = &a * &*x - &b * p;
            }
            make_primitive(other);
        }
        pivots.push(col);
        rank += 1;
    }
    (rows, pivots)
}

/// Reduced row-echelon form and rank. Canonical: equal row spaces give equal output.
pub fn rref(m: &ExactMatrix) -> (ExactMatrix, usize) {
    let rows: Vec<Vec<BigInt>> = (0..m.rows).map(|r| to_primitive_ints(m.row(r))).collect();
    let (rows, pivots) = integer_gauss_jordan(rows, m.cols);
    let mut out = ExactMatrix::zeros(m.rows, m.cols);
    for (r, &pc) in pivots.iter().enumerate() {
        let lead = rows[r][pc].clone();
        for c in 0..m.cols {
            out.set(r, c, Scalar::new(rows[r][c].clone(), lead.clone()));
        }
    }
    (out, pivots.len())
}

fn rref_with_pivots(m: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let (r, rank) = rref(m);
    let pivots = (0..rank)
        .map(|i| (0..m.cols).find(|&c| !r.get(i, c).is_zero()).unwrap())
        .collect();
    (r, pivots)
}

/// Null space `{ x : M x = 0 }`.
pub fn kernel(m: &ExactMatrix) -> Subspace {
    let (r, pivots) = rref_with_pivots(m);
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); m.cols];
        v[free] = super::scalar(1);
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -r.get(i, free).clone();
        }
        basis.push(v);
    }
    Subspace::from_spanning(m.cols, &basis).expect("kernel vectors have matching length")
}

/// A subspace of `Q^d` held as its canonical reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let id = ExactMatrix::identity(ambient_dim);
        Subspace { ambient_dim, basis: (0..ambient_dim).map(|r| id.row(r).to_vec()).collect() }
    }

    pub fn from_spanning(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch { left: ambient_dim, right: v.len() });
        }
        let m = ExactMatrix::from_rows(ambient_dim, vectors.to_vec())?;
        let (r, rank) = rref(&m);
        Ok(Subspace { ambient_dim, basis: (0..rank).map(|i| r.row(i).to_vec()).collect() })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    fn check(&self, d: usize) -> Result<()> {
        if d != self.ambient_dim {
            return Err(Error::DimensionMismatch { left: self.ambient_dim, right: d });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        self.check(v.len())?;
        let mut w = v.to_vec();
        for row in &self.basis {
            let pc = row.iter().position(|x| !x.is_zero()).unwrap();
            if w[pc].is_zero() {
                continue;
            }
            let f = w[pc].clone();
            for (x, r) in w.iter_mut().zip(row) {
                *x -= &f * r;
            }
        }
        Ok(w.iter().all(Zero::is_zero))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other.ambient_dim)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.ambient_dim, &all)
    }

    /// Solves `sum a_i s_i = sum b_j t_j` and maps the `a` part back.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other.ambient_dim)?;
        let (s, t) = (self.dim(), other.dim());
        let mut stacked = ExactMatrix::zeros(self.ambient_dim, s + t);
        for (j, v) in self.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                stacked.set(i, j, x.clone());
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                stacked.set(i, s + j, -x.clone());
            }
        }
        let rel = kernel(&stacked);
        let vectors: Vec<Vec<Scalar>> = rel
            .basis()
            .iter()
            .map(|coeffs| {
                let mut v = vec![Scalar::zero(); self.ambient_dim];
                for (a, sv) in coeffs[..s].iter().zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(sv) {
                        *x += a * y;
                    }
                }
                v
            })
            .collect();
        Subspace::from_spanning(self.ambient_dim, &vectors)
    }
}
