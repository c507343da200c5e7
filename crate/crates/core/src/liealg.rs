//! The model `m = E* (x) Q` inside `gl(n)`, the Schubert tangent space `n_a`,
//! its Levi block structure, and the subalgebra `m_a`.
//!
//! Conventions: `E` has basis `e_1..e_m` (matrix columns `1..m`), `Q` has
//! basis `q_1..q_{n-m}` (matrix rows `m+1..n`). The cell `(i,p)` is
//! `e_i* (x) q_p`, the `gl(n)` entry `(m+p, i)`. Cells are ordered row-major.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseVec, Subspace};
use crate::partitions::{Ambient, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cell {
    /// Q-index `p` (row of the box).
    pub row: usize,
    /// E-index `i` (column of the box).
    pub col: usize,
}

impl Cell {
    pub fn new(col: usize, row: usize) -> Self {
        Cell { row, col }
    }

    /// Position of the cell in the canonical order of `m`.
    pub fn index(&self, ambient: Ambient) -> usize {
        (self.row - 1) * ambient.m() + (self.col - 1)
    }

    pub fn from_index(ambient: Ambient, idx: usize) -> Cell {
        Cell { row: idx / ambient.m() + 1, col: idx % ambient.m() + 1 }
    }

    /// The matrix entry of `gl(n)` this cell occupies.
    pub fn gl_entry(&self, ambient: Ambient) -> (usize, usize) {
        (ambient.m() + self.row, self.col)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

/// Sparse `n x n` matrix with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlElement {
    n: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl GlElement {
    pub fn zero(n: usize) -> Self {
        GlElement { n, entries: BTreeMap::new() }
    }

    /// The elementary matrix `E_{i,j}`.
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut x = Self::zero(n);
        x.add_entry(i, j, Scalar::from_integer(1.into()));
        x
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_entry(&mut self, i: usize, j: usize, v: Scalar) {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j), "index out of range");
        let e = self.entries.entry((i, j)).or_insert_with(Scalar::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &GlElement) -> GlElement {
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            out.add_entry(i, j, v.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> GlElement {
        let mut out = Self::zero(self.n);
        for (&(i, j), v) in &self.entries {
            out.add_entry(i, j, v * s);
        }
        out
    }

    pub fn mul(&self, other: &GlElement) -> GlElement {
        let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (&(k, j), v) in &other.entries {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut out = Self::zero(self.n);
        for (&(i, k), x) in &self.entries {
            for &(j, y) in by_row.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                out.add_entry(i, j, x * y);
            }
        }
        out
    }

    /// `XY - YX`.
    pub fn bracket(&self, other: &GlElement) -> GlElement {
        self.mul(other).add(&other.mul(self).scale(&Scalar::from_integer((-1).into())))
    }
}

/// Nonzero entries of `n_a`: cells `(i,p)` with `p <= n-m-a_i`, in canonical order.
pub fn na_cells(a: &Partition) -> Vec<Cell> {
    let amb = a.ambient();
    let mut cells: Vec<Cell> = (1..=amb.m())
        .flat_map(|i| (1..=amb.c() - a.part(i)).map(move |p| Cell::new(i, p)))
        .collect();
    cells.sort();
    cells
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockStructure {
    pub e_sizes: Vec<usize>,
    pub q_sizes: Vec<usize>,
    /// Pairs `(i, alpha)` of E-block and Q-block with `E_i* (x) Q_alpha` inside `n_a`.
    pub pi: BTreeSet<(usize, usize)>,
}

fn ranges(sizes: &[usize]) -> Vec<RangeInclusive<usize>> {
    let mut start = 1;
    sizes
        .iter()
        .map(|&s| {
            let r = start..=start + s - 1;
            start += s;
            r
        })
        .collect()
}

fn block_of(sizes: &[usize], idx: usize) -> usize {
    let mut end = 0;
    for (b, &s) in sizes.iter().enumerate() {
        end += s;
        if idx <= end {
            return b + 1;
        }
    }
    panic!("index {idx} outside blocks {sizes:?}")
}

impl BlockStructure {
    pub fn of(a: &Partition) -> Result<Self> {
        let amb = a.ambient();
        let exp = a.exp_form();
        let mut e_sizes: Vec<usize> = exp.multiplicities().collect();
        let used: usize = e_sizes.iter().sum();
        if used < amb.m() {
            e_sizes.push(amb.m() - used);
        }
        let values: Vec<usize> = exp.values().collect();
        let mut q_sizes = Vec::new();
        let mut prev = amb.c();
        for &p in &values {
            q_sizes.push(prev - p);
            prev = p;
        }
        q_sizes.push(prev);
        if q_sizes[0] == 0 {
            q_sizes.remove(0);
        }

        let cells: BTreeSet<Cell> = na_cells(a).into_iter().collect();
        let (e_ranges, q_ranges) = (ranges(&e_sizes), ranges(&q_sizes));
        let mut pi = BTreeSet::new();
        for (i, er) in e_ranges.iter().enumerate() {
            for (alpha, qr) in q_ranges.iter().enumerate() {
                let hits = er
                    .clone()
                    .flat_map(|col| qr.clone().map(move |row| Cell::new(col, row)))
                    .filter(|c| cells.contains(c))
                    .count();
                if hits == er.clone().count() * qr.clone().count() {
                    pi.insert((i + 1, alpha + 1));
                } else if hits != 0 {
                    return Err(Error::InternalInconsistency(format!(
                        "n_a is not constant on block E_{} x Q_{} of {a}",
                        i + 1,
                        alpha + 1
                    )));
                }
            }
        }
        Ok(BlockStructure { e_sizes, q_sizes, pi })
    }

    pub fn r_e(&self) -> usize {
        self.e_sizes.len()
    }

    pub fn r_q(&self) -> usize {
        self.q_sizes.len()
    }

    /// Columns belonging to `E_i`.
    pub fn e_range(&self, i: usize) -> RangeInclusive<usize> {
        ranges(&self.e_sizes)[i - 1].clone()
    }

    /// Rows belonging to `Q_alpha`.
    pub fn q_range(&self, alpha: usize) -> RangeInclusive<usize> {
        ranges(&self.q_sizes)[alpha - 1].clone()
    }

    pub fn e_block_of(&self, col: usize) -> usize {
        block_of(&self.e_sizes, col)
    }

    pub fn q_block_of(&self, row: usize) -> usize {
        block_of(&self.q_sizes, row)
    }

    pub fn in_pi(&self, i: usize, alpha: usize) -> bool {
        self.pi.contains(&(i, alpha))
    }

    /// `Pi_{i,j} = { alpha : (i,alpha) not in Pi, (j,alpha) in Pi }`.
    pub fn pi_ij(&self, i: usize, j: usize) -> Vec<usize> {
        (1..=self.r_q()).filter(|&al| !self.in_pi(i, al) && self.in_pi(j, al)).collect()
    }

    /// `Pi_{b,a} = { i : (i,b) in Pi, (i,a) not in Pi }`.
    pub fn pi_ba(&self, b: usize, a: usize) -> Vec<usize> {
        (1..=self.r_e()).filter(|&i| self.in_pi(i, b) && !self.in_pi(i, a)).collect()
    }

    /// Levi block sizes along the diagonal of `gl(n)`: E blocks then Q blocks.
    pub fn levi_sizes(&self) -> Vec<usize> {
        self.e_sizes.iter().chain(&self.q_sizes).copied().collect()
    }
}

/// Simple-root bookkeeping over `alpha_1..alpha_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootMarks {
    /// `S^1`: all simple roots except `alpha_m`.
    pub s1: BTreeSet<usize>,
    pub removed: BTreeSet<usize>,
    pub s_a: BTreeSet<usize>,
    pub levi_blocks: Vec<usize>,
}

pub fn root_marks(a: &Partition) -> RootMarks {
    let amb = a.ambient();
    let n = amb.n();
    let s1: BTreeSet<usize> = (1..n).filter(|&i| i != amb.m()).collect();
    let exp = a.exp_form();
    let mut removed = BTreeSet::new();
    let mut acc = 0;
    for (p, q) in exp.pairs.iter().copied() {
        acc += q;
        removed.insert(acc);
        removed.insert(n - p);
    }
    let s_a: BTreeSet<usize> = s1.difference(&removed).copied().collect();
    let mut levi_blocks = Vec::new();
    let mut size = 1;
    for i in 1..n {
        if s_a.contains(&i) {
            size += 1;
        } else {
            levi_blocks.push(size);
            size = 1;
        }
    }
    levi_blocks.push(size);
    RootMarks { s1, removed, s_a, levi_blocks }
}

/// Whether the parabolic of `a` maps onto that of `b` (`S_a` contained in `S_b`).
pub fn quotient_exists(a: &Partition, b: &Partition) -> Result<bool> {
    if a.ambient() != b.ambient() {
        return Err(Error::IncompatiblePair(format!("{a} and {b} live in different Grassmannians")));
    }
    Ok(root_marks(a).s_a.is_subset(&root_marks(b).s_a))
}

fn neg(x: &Scalar) -> Scalar {
    -x.clone()
}

fn add_to(v: &mut SparseVec, k: usize, x: Scalar) {
    let e = v.entry(k).or_insert_with(Scalar::zero);
    *e += x;
    if e.is_zero() {
        v.remove(&k);
    }
}

/// `Z -> BZ - ZA` for `X = diag(A, B)`, on a vector of `m` given in cell indices.
pub fn levi_action_on_m(ambient: Ambient, x: &GlElement, v: &SparseVec) -> Result<SparseVec> {
    let m = ambient.m();
    let mut out = SparseVec::new();
    for (&(k, l), xv) in x.entries() {
        match (k <= m, l <= m) {
            (true, true) => {
                for (&idx, y) in v {
                    let c = Cell::from_index(ambient, idx);
                    if c.col == k {
                        add_to(&mut out, Cell::new(l, c.row).index(ambient), neg(&(xv * y)));
                    }
                }
            }
            (false, false) => {
                let (s, t) = (k - m, l - m);
                for (&idx, y) in v {
                    let c = Cell::from_index(ambient, idx);
                    if c.row == t {
                        add_to(&mut out, Cell::new(c.col, s).index(ambient), xv * y);
                    }
                }
            }
            _ => return Err(Error::NotBlockDiagonal),
        }
    }
    Ok(out)
}

/// Explicit coordinates for `m`, `n_a`, `m/n_a` and `Hom(n_a, m/n_a)`.
///
/// `Hom(n_a, m/n_a)` has coordinate `s * qdim + u` for the map sending the
/// `s`-th cell of `n_a` to the `u`-th complement cell.
#[derive(Debug, Clone)]
pub struct TangentModel {
    partition: Partition,
    blocks: BlockStructure,
    na: Vec<Cell>,
    quotient: Vec<Cell>,
    na_pos: Vec<Option<usize>>,
    quot_pos: Vec<Option<usize>>,
}

impl TangentModel {
    pub fn new(a: &Partition) -> Result<Self> {
        let amb = a.ambient();
        let blocks = BlockStructure::of(a)?;
        let na = na_cells(a);
        let mut na_pos = vec![None; amb.dim()];
        for (s, c) in na.iter().enumerate() {
            na_pos[c.index(amb)] = Some(s);
        }
        let mut quot_pos = vec![None; amb.dim()];
        let mut quotient = Vec::new();
        for idx in 0..amb.dim() {
            if na_pos[idx].is_none() {
                quot_pos[idx] = Some(quotient.len());
                quotient.push(Cell::from_index(amb, idx));
            }
        }
        Ok(TangentModel { partition: a.clone(), blocks, na, quotient, na_pos, quot_pos })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn ambient(&self) -> Ambient {
        self.partition.ambient()
    }

    pub fn blocks(&self) -> &BlockStructure {
        &self.blocks
    }

    pub fn na_cells(&self) -> &[Cell] {
        &self.na
    }

    pub fn quotient_cells(&self) -> &[Cell] {
        &self.quotient
    }

    /// `k = dim n_a`.
    pub fn k(&self) -> usize {
        self.na.len()
    }

    pub fn mdim(&self) -> usize {
        self.ambient().dim()
    }

    pub fn qdim(&self) -> usize {
        self.quotient.len()
    }

    pub fn hom_dim(&self) -> usize {
        self.k() * self.qdim()
    }

    pub fn hom_index(&self, s: usize, u: usize) -> usize {
        s * self.qdim() + u
    }

    pub fn hom_coords(&self, idx: usize) -> (usize, usize) {
        (idx / self.qdim(), idx % self.qdim())
    }

    pub fn cell_index(&self, c: Cell) -> usize {
        c.index(self.ambient())
    }

    /// Position of a cell (by `m` index) among the `n_a` cells.
    pub fn na_position(&self, idx: usize) -> Option<usize> {
        self.na_pos[idx]
    }

    pub fn quotient_position(&self, idx: usize) -> Option<usize> {
        self.quot_pos[idx]
    }

    /// Drops the `n_a` components of a vector of `m`, leaving the complement-cell lift.
    pub fn mod_na(&self, v: &SparseVec) -> SparseVec {
        v.iter().filter(|(&k, _)| self.na_pos[k].is_none()).map(|(&k, x)| (k, x.clone())).collect()
    }

    pub fn act(&self, x: &GlElement) -> impl Fn(&SparseVec) -> Result<SparseVec> + '_ {
        let x = x.clone();
        move |v| levi_action_on_m(self.ambient(), &x, v)
    }

    /// `phi(v_s)` as a vector of `m` supported on complement cells.
    pub fn hom_apply(&self, phi: &SparseVec, s: usize) -> SparseVec {
        let q = self.qdim();
        phi.range(s * q..(s + 1) * q).map(|(&idx, x)| (self.quotient[idx - s * q].index(self.ambient()), x.clone())).collect()
    }

    fn hom_from_images(&self, images: impl IntoIterator<Item = (usize, SparseVec)>) -> SparseVec {
        let mut out = SparseVec::new();
        for (s, img) in images {
            for (k, x) in img {
                if let Some(u) = self.quot_pos[k] {
                    add_to(&mut out, self.hom_index(s, u), x);
                }
            }
        }
        out
    }

    /// The map `v -> Xv mod n_a` on `n_a`.
    pub fn restrict(&self, x: &GlElement) -> Result<SparseVec> {
        let amb = self.ambient();
        let mut images = Vec::new();
        for (s, c) in self.na.iter().enumerate() {
            let v = SparseVec::from([(c.index(amb), Scalar::from_integer(1.into()))]);
            images.push((s, levi_action_on_m(amb, x, &v)?));
        }
        Ok(self.hom_from_images(images))
    }

    /// `(X.phi)(v) = X phi(v) - phi(X v)` modulo `n_a`.
    pub fn hom_action(&self, x: &GlElement, phi: &SparseVec) -> Result<SparseVec> {
        let amb = self.ambient();
        let mut images = Vec::new();
        for (s, c) in self.na.iter().enumerate() {
            let mut img = levi_action_on_m(amb, x, &self.hom_apply(phi, s))?;
            let v = SparseVec::from([(c.index(amb), Scalar::from_integer(1.into()))]);
            for (k, y) in levi_action_on_m(amb, x, &v)? {
                let t = self.na_pos[k].ok_or_else(|| {
                    Error::InternalInconsistency(format!("Levi element moved {c} out of n_a"))
                })?;
                for (j, z) in self.hom_apply(phi, t) {
                    add_to(&mut img, j, neg(&(&y * z)));
                }
            }
            images.push((s, img));
        }
        Ok(self.hom_from_images(images))
    }

    /// Elementary basis of `m_a`: strictly lower block triangles of `gl(E)` and `gl(Q)`.
    pub fn ma_levi_basis(&self) -> Vec<GlElement> {
        let amb = self.ambient();
        let (n, m) = (amb.n(), amb.m());
        let b = &self.blocks;
        let mut out = Vec::new();
        for j in 1..=b.r_e() {
            for i in 1..j {
                for k in b.e_range(j) {
                    for l in b.e_range(i) {
                        out.push(GlElement::elementary(n, k, l));
                    }
                }
            }
        }
        for al in 1..=b.r_q() {
            for be in 1..al {
                for s in b.q_range(al) {
                    for t in b.q_range(be) {
                        out.push(GlElement::elementary(n, m + s, m + t));
                    }
                }
            }
        }
        out
    }

    /// Each `m_a` basis element with its restriction to `n_a`; the flag marks zero maps.
    pub fn ma_embedded(&self) -> Result<Vec<(GlElement, SparseVec, bool)>> {
        self.ma_levi_basis()
            .into_iter()
            .map(|x| {
                let h = self.restrict(&x)?;
                let zero = h.is_empty();
                Ok((x, h, zero))
            })
            .collect()
    }

    /// The embedded `m_a` as a subspace of `Hom(n_a, m/n_a)`.
    pub fn ma_image(&self) -> Result<Subspace> {
        let vecs: Vec<Vec<Scalar>> =
            self.ma_embedded()?.into_iter().map(|(_, h, _)| dense(&h, self.hom_dim())).collect();
        Subspace::from_spanning(self.hom_dim(), &vecs)
    }

    /// Predicted `dim m_a` image from the index sets.
    pub fn ma_image_dim_formula(&self) -> usize {
        let b = &self.blocks;
        let mut d = 0;
        for j in 1..=b.r_e() {
            for i in 1..j {
                if !b.pi_ij(i, j).is_empty() {
                    d += b.e_sizes[i - 1] * b.e_sizes[j - 1];
                }
            }
        }
        for al in 1..=b.r_q() {
            for be in 1..al {
                if !b.pi_ba(be, al).is_empty() {
                    d += b.q_sizes[be - 1] * b.q_sizes[al - 1];
                }
            }
        }
        d
    }

    /// All `E_{k,l}` with `k, l` in one Levi block (diagonal included).
    pub fn levi_generators(&self) -> Vec<GlElement> {
        self.levi_elementaries(|_, _| true)
    }

    /// Elementary matrices that raise weights: strictly lower within each Levi block.
    pub fn raising_generators(&self) -> Vec<GlElement> {
        self.levi_elementaries(|k, l| k > l)
    }

    /// Diagonal elementary matrices (a basis of the Cartan).
    pub fn cartan_generators(&self) -> Vec<GlElement> {
        let n = self.ambient().n();
        (1..=n).map(|k| GlElement::elementary(n, k, k)).collect()
    }

    fn levi_elementaries(&self, keep: impl Fn(usize, usize) -> bool) -> Vec<GlElement> {
        let amb = self.ambient();
        let (n, m) = (amb.n(), amb.m());
        let mut out = Vec::new();
        for i in 1..=self.blocks.r_e() {
            let r = self.blocks.e_range(i);
            for k in r.clone() {
                for l in r.clone() {
                    if keep(k, l) {
                        out.push(GlElement::elementary(n, k, l));
                    }
                }
            }
        }
        for al in 1..=self.blocks.r_q() {
            let r = self.blocks.q_range(al);
            for s in r.clone() {
                for t in r.clone() {
                    if keep(s, t) {
                        out.push(GlElement::elementary(n, m + s, m + t));
                    }
                }
            }
        }
        out
    }
}

/// All off-diagonal elementary matrices of `gl(E)` and of `gl(Q)`.
pub fn gl_off_diagonal(ambient: Ambient) -> Vec<GlElement> {
    let (n, m) = (ambient.n(), ambient.m());
    let mut out = Vec::new();
    for k in 1..=m {
        for l in (1..=m).filter(|&l| l != k) {
            out.push(GlElement::elementary(n, k, l));
        }
    }
    for k in m + 1..=n {
        for l in (m + 1..=n).filter(|&l| l != k) {
            out.push(GlElement::elementary(n, k, l));
        }
    }
    out
}

pub fn dense(v: &SparseVec, dim: usize) -> Vec<Scalar> {
    let mut d = vec![Scalar::zero(); dim];
    for (&k, x) in v {
        d[k] = x.clone();
    }
    d
}

pub fn sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect()
}
