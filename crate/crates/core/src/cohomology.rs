//! The operator `del p (X,Y) = [p(X), Y] - [p(Y), X] mod n_a` on
//! `Hom(n_a, m_a)` and its kernel `H^{1,1}`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::liealg::{levi_action_on_m, root_marks, Cell, GlElement, TangentModel};
use crate::linalg::{kernel_of_columns, Scalar, SparseVec, Subspace};
use crate::partitions::Partition;

/// Matrix of `del : Hom(n_a, m_a) -> Hom(wedge^2 n_a, m/n_a)`, stored by columns.
///
/// Domain coordinate `s * dim m_a + t` is the map `v_s -> X_t`. Codomain
/// coordinate `pair * qdim + u` pairs `(v_i, v_j)`, `i < j`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct DelComplex {
    pub ma_basis: Vec<GlElement>,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub columns: Vec<SparseVec>,
}

fn pair_index(k: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < k);
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

fn unit(idx: usize) -> SparseVec {
    SparseVec::from([(idx, Scalar::from_integer(1.into()))])
}

fn reject_degenerate(a: &Partition) -> Result<()> {
    if a.is_degenerate() {
        return Err(Error::DegeneratePartition(a.to_string()));
    }
    Ok(())
}

pub fn del_complex(model: &TangentModel) -> Result<DelComplex> {
    del_complex_with_basis(model, model.ma_levi_basis())
}

pub(crate) fn del_complex_with_basis(model: &TangentModel, ma_basis: Vec<GlElement>) -> Result<DelComplex> {
    reject_degenerate(model.partition())?;
    let amb = model.ambient();
    let (k, q, d) = (model.k(), model.qdim(), ma_basis.len());
    let codomain_dim = k * (k - 1) / 2 * q;
    // images[t][w] = [X_t, v_w] mod n_a, indexed by quotient position
    let mut images = Vec::with_capacity(d);
    for x in &ma_basis {
        let mut row = Vec::with_capacity(k);
        for c in model.na_cells() {
            let img = levi_action_on_m(amb, x, &unit(c.index(amb)))?;
            let reduced: Vec<(usize, Scalar)> =
                img.into_iter().filter_map(|(idx, v)| model.quotient_position(idx).map(|u| (u, v))).collect();
            row.push(reduced);
        }
        images.push(row);
    }
    let mut columns = Vec::with_capacity(k * d);
    for s in 0..k {
        for img_t in &images {
            let mut col = SparseVec::new();
            for w in (0..k).filter(|&w| w != s) {
                let (pair, sign) = if s < w { (pair_index(k, s, w), 1) } else { (pair_index(k, w, s), -1) };
                for (u, v) in &img_t[w] {
                    let val = if sign > 0 { v.clone() } else { -v.clone() };
                    col.insert(pair * q + u, val);
                }
            }
            columns.push(col);
        }
    }
    Ok(DelComplex { ma_basis, domain_dim: k * d, codomain_dim, columns })
}

#[derive(Debug, Clone)]
pub struct H11 {
    pub kernel: Subspace,
    pub ma_basis: Vec<GlElement>,
}

impl H11 {
    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    /// `p(v_s)` as an element of `gl(n)` for a domain vector `p`.
    pub fn value(&self, p: &[Scalar], s: usize) -> GlElement {
        let d = self.ma_basis.len();
        let n = self.ma_basis.first().map_or(1, GlElement::n);
        let mut out = GlElement::zero(n);
        for (t, x) in self.ma_basis.iter().enumerate() {
            let c = &p[s * d + t];
            if !c.is_zero() {
                out = out.add(&x.scale(c));
            }
        }
        out
    }
}

pub fn h11(model: &TangentModel) -> Result<H11> {
    let del = del_complex(model)?;
    h11_from(del)
}

fn h11_from(del: DelComplex) -> Result<H11> {
    let kernel = kernel_of_columns(None, del.codomain_dim, &del.columns)?;
    Ok(H11 { kernel, ma_basis: del.ma_basis })
}

/// The linear fiber of the first prolongation: admissible 2-jets are exactly
/// the kernel of `del`, so this is `H^{1,1}` viewed as a subspace.
pub fn prolongation_fiber(model: &TangentModel) -> Result<Subspace> {
    Ok(h11(model)?.kernel)
}

/// Re-checks `[p(X),Y] - [p(Y),X]` lands in `n_a` using raw `gl(n)` brackets.
pub fn verify_kernel_element(model: &TangentModel, h: &H11, p: &[Scalar]) -> bool {
    let amb = model.ambient();
    let na = model.na_cells();
    let as_matrix = |c: &Cell| {
        let (r, col) = c.gl_entry(amb);
        GlElement::elementary(amb.n(), r, col)
    };
    for (u, cu) in na.iter().enumerate() {
        for (w, cw) in na.iter().enumerate().skip(u + 1) {
            let diff = h.value(p, u).bracket(&as_matrix(cw)).add(&h.value(p, w).bracket(&as_matrix(cu)).scale(&Scalar::from_integer((-1).into())));
            for &(i, j) in diff.entries().keys() {
                if i <= amb.m() || j > amb.m() {
                    return false;
                }
                let cell = Cell::new(j, i - amb.m());
                if model.na_position(cell.index(amb)).is_none() {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionMode {
    /// `b` has `n_b` inside `n_a`; test vanishing on `n_b`.
    Foliation,
    /// `n_a` inside `n_b`; test vanishing everywhere.
    Inclusion,
}

/// Whether every `p` in `H^{1,1}(a)`, composed with the block projection
/// `m_a -> m_b`, vanishes on `n_b` (foliation) or identically (inclusion).
pub fn projected_vanishing(a: &Partition, b: &Partition, mode: ProjectionMode) -> Result<bool> {
    if a.ambient() != b.ambient() {
        return Err(Error::IncompatiblePair(format!("{a} and {b} live in different Grassmannians")));
    }
    reject_degenerate(a)?;
    let ta = TangentModel::new(a)?;
    let tb = TangentModel::new(b)?;
    let amb = a.ambient();
    let na_a = ta.na_cells();
    let na_b = tb.na_cells();
    let (inner, outer, what) = match mode {
        ProjectionMode::Foliation => (na_b, na_a, "n_b is not contained in n_a"),
        ProjectionMode::Inclusion => (na_a, na_b, "n_a is not contained in n_b"),
    };
    if !inner.iter().all(|c| outer.contains(c)) {
        return Err(Error::IncompatiblePair(format!("{what} for a = {a}, b = {b}")));
    }
    if !root_marks(a).s_a.is_subset(&root_marks(b).s_a) {
        return Err(Error::IncompatiblePair(format!("no quotient of the parabolic of {a} onto that of {b}")));
    }

    let h = h11(&ta)?;
    let in_mb: Vec<bool> = h
        .ma_basis
        .iter()
        .map(|x| tb.ma_levi_basis().iter().any(|y| y.entries().keys().eq(x.entries().keys())))
        .collect();
    let test_cells: Vec<usize> = match mode {
        ProjectionMode::Foliation => na_b.iter().map(|c| ta.na_position(c.index(amb)).unwrap()).collect(),
        ProjectionMode::Inclusion => (0..ta.k()).collect(),
    };
    let d = h.ma_basis.len();
    for p in h.kernel.basis() {
        for &s in &test_cells {
            if (0..d).any(|t| in_mb[t] && !p[s * d + t].is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
