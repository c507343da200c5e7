//! Levi-irreducible pieces of the complement of `m_a` in `Hom(n_a, m/n_a)`,
//! each given by a highest weight vector.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{dense, Cell, GlElement, TangentModel};
use crate::linalg::{Insertion, Scalar, SparseEchelon, SparseVec, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    /// A decomposable vector `x_alpha* (x) x_beta`.
    Type1,
    /// Identity sum over a shared Q-block.
    Type2,
    /// Identity sum over a shared E-block.
    Type3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementComponent {
    pub kind: ComponentKind,
    /// Block `(j, b)` inside `Pi` that the map reads from.
    pub source: (usize, usize),
    /// Block `(i, a)` outside `Pi` that the map writes to.
    pub target: (usize, usize),
    /// Dimension predicted from block sizes.
    pub predicted_dim: usize,
    /// `(source cell, target cell)` pairs, each with coefficient one.
    pub terms: Vec<(Cell, Cell)>,
}

impl ComplementComponent {
    /// The highest weight vector as a map on the cells of `n_a`, zero elsewhere.
    pub fn certificate_map(&self, model: &TangentModel) -> SparseVec {
        let amb = model.ambient();
        let one = Scalar::from_integer(1.into());
        self.terms
            .iter()
            .map(|(src, dst)| {
                let s = model.na_position(src.index(amb)).expect("source cell lies in n_a");
                let u = model.quotient_position(dst.index(amb)).expect("target cell lies outside n_a");
                (model.hom_index(s, u), one.clone())
            })
            .collect()
    }
}

/// Highest weight vectors of every irreducible piece of the complement.
pub fn complement_components(model: &TangentModel) -> Result<Vec<ComplementComponent>> {
    let a = model.partition();
    if a.is_degenerate() {
        return Err(Error::DegeneratePartition(a.to_string()));
    }
    let b = model.blocks();
    let r = |i: usize| b.e_sizes[i - 1];
    let s = |al: usize| b.q_sizes[al - 1];
    let first_col = |i: usize| *b.e_range(i).start();
    let last_col = |i: usize| *b.e_range(i).end();
    let first_row = |al: usize| *b.q_range(al).start();
    let last_row = |al: usize| *b.q_range(al).end();

    let mut out = Vec::new();
    for &(j, be) in &b.pi {
        for i in 1..=b.r_e() {
            for al in 1..=b.r_q() {
                if b.in_pi(i, al) {
                    continue;
                }
                let decomposable = |dim| ComplementComponent {
                    kind: ComponentKind::Type1,
                    source: (j, be),
                    target: (i, al),
                    predicted_dim: dim,
                    terms: vec![(Cell::new(last_col(j), first_row(be)), Cell::new(first_col(i), last_row(al)))],
                };
                if i != j && al != be {
                    out.push(decomposable(r(i) * r(j) * s(al) * s(be)));
                } else if i == j {
                    if r(i) >= 2 {
                        out.push(decomposable((r(i) * r(i) - 1) * s(al) * s(be)));
                    }
                    if i < b.r_e() && b.in_pi(i + 1, be) && !b.in_pi(i + 1, al) {
                        let terms = b
                            .e_range(i)
                            .map(|col| (Cell::new(col, first_row(be)), Cell::new(col, last_row(al))))
                            .collect();
                        out.push(ComplementComponent {
                            kind: ComponentKind::Type3,
                            source: (j, be),
                            target: (i, al),
                            predicted_dim: s(al) * s(be),
                            terms,
                        });
                    }
                } else {
                    if s(al) >= 2 {
                        out.push(decomposable(r(i) * r(j) * (s(al) * s(al) - 1)));
                    }
                    if al > 1 && b.in_pi(j, al - 1) && !b.in_pi(i, al - 1) {
                        let terms = b
                            .q_range(al)
                            .map(|row| (Cell::new(last_col(j), row), Cell::new(first_col(i), row)))
                            .collect();
                        out.push(ComplementComponent {
                            kind: ComponentKind::Type2,
                            source: (j, be),
                            target: (i, al),
                            predicted_dim: r(i) * r(j),
                            terms,
                        });
                    }
                }
            }
        }
    }
    out.sort_by_key(|x| (x.source, x.target, x.kind));
    Ok(out)
}

/// Smallest subspace of `Hom(n_a, m/n_a)` containing `seed` and stable under `generators`.
pub fn generate_hom_module(model: &TangentModel, seed: &SparseVec, generators: &[GlElement]) -> Result<Subspace> {
    let mut ech = SparseEchelon::new(model.hom_dim());
    let mut queue = VecDeque::new();
    if let Insertion::Independent(_) = ech.insert(seed)? {
        queue.push_back(seed.clone());
    }
    while let Some(v) = queue.pop_front() {
        for x in generators {
            let y = model.hom_action(x, &v)?;
            if y.is_empty() {
                continue;
            }
            if let Insertion::Independent(_) = ech.insert(&y)? {
                queue.push_back(y);
            }
        }
    }
    let basis: Vec<Vec<Scalar>> = ech.canonical_basis().iter().map(|v| dense(v, model.hom_dim())).collect();
    Subspace::from_spanning(model.hom_dim(), &basis)
}

/// Whether `v` is a weight vector killed by every raising operator of the Levi.
pub fn is_highest_weight(model: &TangentModel, v: &SparseVec) -> Result<bool> {
    for x in model.raising_generators() {
        if !model.hom_action(&x, v)?.is_empty() {
            return Ok(false);
        }
    }
    for h in model.cartan_generators() {
        let hv = model.hom_action(&h, v)?;
        let Some((&k, x)) = v.iter().next() else { return Ok(true) };
        let ratio = hv.get(&k).cloned().unwrap_or_default() / x;
        let scaled: SparseVec = v.iter().map(|(&k, y)| (k, y * &ratio)).filter(|(_, y)| *y != Scalar::default()).collect();
        if scaled != hv {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditEntry {
    pub component: ComplementComponent,
    pub generated_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionAudit {
    pub hom_dim: usize,
    pub ma_dim: usize,
    pub entries: Vec<AuditEntry>,
    /// The pieces together with `m_a` span all of `Hom(n_a, m/n_a)`.
    pub spans: bool,
}

impl DecompositionAudit {
    pub fn accounted(&self) -> usize {
        self.ma_dim + self.entries.iter().map(|e| e.generated_dim).sum::<usize>()
    }
}

/// Checks `dim Hom(n_a, m/n_a) = dim m_a + sum of component dimensions`, each
/// component generated from its highest weight vector, and that the sum is direct.
pub fn decomposition_audit(model: &TangentModel) -> Result<DecompositionAudit> {
    let comps = complement_components(model)?;
    let gens = model.levi_generators();
    let ma = model.ma_image()?;
    let mut total = ma.clone();
    let mut entries = Vec::new();
    let mut problems = Vec::new();
    for c in comps {
        let hwv = c.certificate_map(model);
        if !is_highest_weight(model, &hwv)? {
            problems.push(format!("{:?} {:?}->{:?} is not a highest weight vector", c.kind, c.source, c.target));
        }
        let module = generate_hom_module(model, &hwv, &gens)?;
        if module.dim() != c.predicted_dim {
            problems.push(format!(
                "{:?} {:?}->{:?} generates {} dimensions, predicted {}",
                c.kind,
                c.source,
                c.target,
                module.dim(),
                c.predicted_dim
            ));
        }
        total = total.sum(&module)?;
        entries.push(AuditEntry { component: c, generated_dim: module.dim() });
    }
    let audit = DecompositionAudit { hom_dim: model.hom_dim(), ma_dim: ma.dim(), entries, spans: total.dim() == model.hom_dim() };
    let missing = audit.hom_dim as i64 - audit.accounted() as i64;
    if missing != 0 || !audit.spans || total.dim() != audit.accounted() {
        problems.push(format!("spanned {} of {}", total.dim(), audit.hom_dim));
    }
    if !problems.is_empty() {
        return Err(Error::AuditFailure { missing, detail: problems.join("; ") });
    }
    Ok(audit)
}
