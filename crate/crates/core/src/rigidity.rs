//! Verdict assembly: theorem condition, certificate run, tangent comparison,
//! exception boxes, smoothness and the foliation/induction trace.

use serde::Serialize;

use crate::cohomology::{self, ProjectionMode};
use crate::error::{Error, Result};
use crate::exterior::{self, phi_k, SchurModule, DEFAULT_MAX_WEDGE_DIM};
use crate::hwv::{self, ComplementComponent, ComponentKind};
use crate::liealg::{self, BlockStructure, TangentModel};
use crate::linalg::{kernel_of_columns, Subspace};
use crate::partitions::{Ambient, ExpForm, Partition};

pub const SCHEMA_VERSION: &str = "schubert-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Smoothness {
    Smooth { p: usize, q: usize },
    Singular,
}

/// Matches `a = ((n-m)^{m-q}, (n-m-p)^q)` with `1 <= p <= n-m`, `1 <= q <= m`.
pub fn smoothness_class(a: &Partition) -> Result<Smoothness> {
    if a.is_degenerate() {
        return Err(Error::DegeneratePartition(a.to_string()));
    }
    let c = a.ambient().c();
    let parts = a.parts();
    let top = parts.iter().take_while(|&&x| x == c).count();
    let rest = &parts[top..];
    let v = rest[0];
    if rest.iter().all(|&x| x == v) {
        return Ok(Smoothness::Smooth { p: c - v, q: rest.len() });
    }
    Ok(Smoothness::Singular)
}

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Largest coordinate space a single elimination may use.
    pub max_wedge_dim: u128,
}

impl Limits {
    pub fn new(max_wedge_dim: u128) -> Self {
        Limits { max_wedge_dim }
    }

    fn check(&self, what: impl Into<String>, size: usize) -> Result<()> {
        if size as u128 > self.max_wedge_dim {
            return Err(Error::ResourceExceeded { what: what.into(), size: size as u128, cap: self.max_wedge_dim });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_wedge_dim: DEFAULT_MAX_WEDGE_DIM }
    }
}

/// Quotient boxes `(i, alpha)` reached by an exceptional first-order deformation.
///
/// A source box `(i+1, alpha-1)` in `Pi` next to a target `(i, alpha)` outside it
/// spans a 2x2 square whose other two corners are both in `Pi` or both out.
/// The move is exceptional when the target block is 1x1 in the first case and
/// when the source block is 1x1 in the second. Checked against the tangent
/// comparison in the tests.
pub fn exception_boxes(blocks: &BlockStructure) -> Vec<(usize, usize)> {
    let unit_e = |i: usize| blocks.e_sizes[i - 1] == 1;
    let unit_q = |al: usize| blocks.q_sizes[al - 1] == 1;
    let mut out = Vec::new();
    for i in 1..blocks.r_e() {
        for al in 2..=blocks.r_q() {
            let (j, be) = (i + 1, al - 1);
            if blocks.in_pi(i, al) || !blocks.in_pi(j, be) {
                continue;
            }
            let corners = blocks.in_pi(i, be);
            debug_assert_eq!(corners, blocks.in_pi(j, al));
            let exceptional = if corners { unit_e(i) && unit_q(al) } else { unit_e(j) && unit_q(be) };
            if exceptional {
                out.push((i, al));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateResult {
    pub kind: ComponentKind,
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub component_dim: usize,
    pub in_ia: bool,
}

/// For each complement piece, whether `phi^k(v_1 ^ ... ^ v_k)` of its highest
/// weight vector falls in `I_a`.
pub fn certificate_check(model: &TangentModel, ia: &SchurModule) -> Result<Vec<CertificateResult>> {
    let comps = hwv::complement_components(model)?;
    comps
        .iter()
        .map(|c: &ComplementComponent| {
            let w = phi_k(&c.certificate_map(model), model)?;
            Ok(CertificateResult {
                kind: c.kind,
                source: c.source,
                target: c.target,
                component_dim: c.predicted_dim,
                in_ia: exterior::membership_in_ia(&w, ia, model)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Equality {
    Equal,
    ProperInclusion { gap: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct TangentComparison {
    pub dim_ta: usize,
    pub dim_ma: usize,
    pub verdict: Equality,
    #[serde(skip)]
    pub ta: Subspace,
}

/// `T_a = { phi : phi^k(v_1 ^ ... ^ v_k) in I_a }`, compared with the embedded `m_a`.
pub fn tangent_comparison(model: &TangentModel, ia: &SchurModule) -> Result<TangentComparison> {
    let binom = ia.binomials();
    let columns = (0..model.hom_dim())
        .map(|j| {
            let e = crate::linalg::SparseVec::from([(j, crate::linalg::scalar(1))]);
            Ok(phi_k(&e, model)?.to_sparse(binom))
        })
        .collect::<Result<Vec<_>>>()?;
    let ta = kernel_of_columns(Some(ia.echelon()), ia.ambient_dim(), &columns)?;
    let ma = model.ma_image()?;
    if ma.intersect(&ta)?.dim() != ma.dim() {
        return Err(Error::InternalInconsistency(format!("m_a is not contained in T_a for {}", model.partition())));
    }
    let verdict = if ta.dim() == ma.dim() { Equality::Equal } else { Equality::ProperInclusion { gap: ta.dim() - ma.dim() } };
    Ok(TangentComparison { dim_ta: ta.dim(), dim_ma: ma.dim(), verdict, ta })
}

/// `b = ((n-m)^q, 0^{m-q})` in `P(m,n)` and leaf space `c = ((n-m-p)^q)*` in `P(q,n)` for `a = (p^q, 0^{m-q})`.
pub fn foliation_data(a: &Partition) -> Result<(Partition, Partition)> {
    let exp = a.exp_form();
    if exp.r() != 1 {
        return Err(Error::NotApplicable(format!("{a} is not of the form (p^q)")));
    }
    let (p, q) = exp.pairs[0];
    let amb = a.ambient();
    let (m, n, c) = (amb.m(), amb.n(), amb.c());
    let mut b = vec![c; q];
    b.resize(m, 0);
    let b = Partition::new(amb, b)?;
    let leaf = Partition::new(Ambient::new(q, n)?, vec![c - p; q])?.dual();
    Ok((b, leaf))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeRole {
    Root,
    FoliationB,
    LeafSpaceC,
    RectangleB,
    Reduced,
    ReducedD,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeStatus {
    /// Point or whole Grassmannian.
    Trivial,
    Smooth { p: usize, q: usize },
    /// A single nonzero part value: foliated by smooth Schubert varieties.
    Base,
    /// Reduced further; see children.
    Reduced,
    /// Auxiliary partition attached to its parent step.
    Datum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InductionNode {
    pub partition: Partition,
    pub role: NodeRole,
    pub status: NodeStatus,
    /// For foliation partitions: whether `H^{1,1}` of the parent projects to zero on `n_b`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projected_vanishing: Option<bool>,
    pub children: Vec<InductionNode>,
}

impl InductionNode {
    fn datum(partition: Partition, role: NodeRole) -> Self {
        InductionNode { partition, role, status: NodeStatus::Datum, projected_vanishing: None, children: Vec::new() }
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = &InductionNode> + '_> {
        Box::new(std::iter::once(self).chain(self.children.iter().flat_map(|c| c.iter())))
    }
}

/// Whether `H^{1,1}(a)` vanishes after projecting to `m_b` on `n_b`, if affordable.
fn foliation_check(a: &Partition, b: &Partition, limits: &Limits) -> Option<bool> {
    let k = a.dim_sigma();
    let q = a.ambient().dim() - k;
    if b.is_degenerate() || k * k.saturating_sub(1) / 2 * q > limits.max_wedge_dim as usize {
        return None;
    }
    cohomology::projected_vanishing(a, b, ProjectionMode::Foliation).ok()
}

fn trace_node(a: &Partition, role: NodeRole, limits: &Limits) -> Result<InductionNode> {
    let mut node = InductionNode::datum(a.clone(), role);
    if a.is_degenerate() {
        node.status = NodeStatus::Trivial;
        return Ok(node);
    }
    if let Smoothness::Smooth { p, q } = smoothness_class(a)? {
        node.status = NodeStatus::Smooth { p, q };
        return Ok(node);
    }
    let amb = a.ambient();
    let (m, n, c) = (amb.m(), amb.n(), amb.c());
    let exp = a.exp_form();
    let r = exp.r();
    let q_sum: usize = exp.multiplicities().sum();
    let (p1, q1) = exp.pairs[0];
    let pr = exp.pairs[r - 1].0;

    if q_sum == m {
        // every part is at least p_r: a sits in the rectangle (p_r^m)
        let rect = Partition::new(amb, vec![pr; m])?;
        node.children.push(InductionNode::datum(rect, NodeRole::RectangleB));
        node.children.push(trace_node(&a.shifted_down(pr)?, NodeRole::Reduced, limits)?);
        node.status = NodeStatus::Reduced;
        return Ok(node);
    }
    if p1 == c {
        let mut rect = vec![c; q1];
        rect.resize(m, 0);
        node.children.push(InductionNode::datum(Partition::new(amb, rect)?, NodeRole::RectangleB));
        let tail = Partition::new(Ambient::new(m - q1, n - q1)?, a.parts()[q1..].to_vec())?;
        node.children.push(trace_node(&tail, NodeRole::Reduced, limits)?);
        node.status = NodeStatus::Reduced;
        return Ok(node);
    }

    let mut b = vec![c; q_sum];
    b.resize(m, 0);
    let b = Partition::new(amb, b)?;
    let mut b_node = InductionNode::datum(b.clone(), NodeRole::FoliationB);
    b_node.projected_vanishing = foliation_check(a, &b, limits);
    let leaf_parts: Vec<usize> = exp.pairs.iter().flat_map(|&(p, q)| std::iter::repeat_n(p + m - q_sum, q)).collect();
    let leaf = Partition::new(Ambient::new(q_sum, n)?, leaf_parts)?;
    node.children.push(b_node);
    node.children.push(InductionNode::datum(leaf, NodeRole::LeafSpaceC));
    if r == 1 {
        node.status = NodeStatus::Base;
        return Ok(node);
    }
    let mut d: Vec<usize> = exp.pairs[..r - 1].iter().flat_map(|&(p, q)| std::iter::repeat_n(p - pr, q)).collect();
    d.resize(q_sum, 0);
    let d = Partition::new(Ambient::new(q_sum, n - m + q_sum - pr)?, d)?;
    node.children.push(trace_node(&d, NodeRole::ReducedD, limits)?);
    node.status = NodeStatus::Reduced;
    Ok(node)
}

/// The foliation/induction tree; only defined when the theorem condition holds.
pub fn induction_trace(a: &Partition, limits: &Limits) -> Result<InductionNode> {
    if !a.theorem_condition()? {
        return Err(Error::NotApplicable(format!("multiplicity condition fails for {a}")));
    }
    trace_node(a, NodeRole::Root, limits)
}

/// Outcome of a computation that may be skipped for resource reasons.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Step<T> {
    Computed { value: T },
    Skipped { reason: String },
    NotApplicable { reason: String },
}

impl<T> Step<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Step::Computed { value } => Some(value),
            _ => None,
        }
    }

    fn from_result(r: Result<T>) -> Result<Step<T>> {
        match r {
            Ok(value) => Ok(Step::Computed { value }),
            Err(e @ Error::ResourceExceeded { .. }) => Ok(Step::Skipped { reason: e.to_string() }),
            Err(Error::NotApplicable(reason)) => Ok(Step::NotApplicable { reason }),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct H11Summary {
    pub dim: usize,
    pub domain_dim: usize,
    /// `H^{1,1} = 0`, the computable half of strong rigidity.
    pub vanishes: bool,
    /// Integrability is geometric and never decided here.
    pub integrability: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditSummary {
    pub hom_dim: usize,
    pub ma_dim: usize,
    pub components: usize,
    pub accounted: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// Point or whole Grassmannian.
    Trivial,
    /// Theorem condition, equality certificate and induction trace all agree.
    SchurRigid,
    /// The multiplicity condition fails; data is reported but no claim is made.
    NotCovered,
    /// A computation needed for the verdict exceeded the resource cap.
    Skipped { reason: String },
    /// Independent computations disagree.
    ConsistencyFailure { reasons: Vec<String> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothable {
    NotSmoothable,
    Smooth,
    Undetermined,
}

#[derive(Debug, Clone, Serialize)]
pub struct RigidityReport {
    pub schema_version: &'static str,
    pub partition: Partition,
    pub m: usize,
    pub n: usize,
    pub parts: Vec<usize>,
    pub codim: usize,
    pub dim: usize,
    pub exp_form: ExpForm,
    pub conjugate_exp_form: ExpForm,
    pub theorem_condition: Option<bool>,
    pub smoothness: Option<Smoothness>,
    pub blocks: BlockStructure,
    pub s_a: Vec<usize>,
    pub h11: Step<H11Summary>,
    pub certificates: Step<Vec<CertificateResult>>,
    pub tangent: Step<TangentComparison>,
    pub exception_boxes: Vec<(usize, usize)>,
    pub audit: Step<AuditSummary>,
    pub induction_trace: Step<InductionNode>,
    pub verdict: Verdict,
    pub smoothable: Smoothable,
}

impl RigidityReport {
    pub fn is_consistency_failure(&self) -> bool {
        matches!(self.verdict, Verdict::ConsistencyFailure { .. })
    }
}

fn h11_summary(model: &TangentModel, limits: &Limits) -> Result<H11Summary> {
    let k = model.k();
    limits.check("dim Hom(wedge^2 n_a, m/n_a)", k * k.saturating_sub(1) / 2 * model.qdim())?;
    let h = cohomology::h11(model)?;
    Ok(H11Summary {
        dim: h.dim(),
        domain_dim: h.kernel.ambient_dim(),
        vanishes: h.dim() == 0,
        integrability: "not evaluated",
    })
}

fn audit_summary(model: &TangentModel, limits: &Limits) -> Result<AuditSummary> {
    limits.check("dim Hom(n_a, m/n_a)", model.hom_dim())?;
    let a = hwv::decomposition_audit(model)?;
    Ok(AuditSummary { hom_dim: a.hom_dim, ma_dim: a.ma_dim, components: a.entries.len(), accounted: a.accounted() })
}

/// Everything computable about `a`, with cross-checks between independent pillars.
pub fn verdict(a: &Partition, limits: &Limits) -> Result<RigidityReport> {
    let amb = a.ambient();
    let model = TangentModel::new(a)?;
    let degenerate = a.is_degenerate();
    let mut report = RigidityReport {
        schema_version: SCHEMA_VERSION,
        partition: a.clone(),
        m: amb.m(),
        n: amb.n(),
        parts: a.parts().to_vec(),
        codim: a.codim(),
        dim: a.dim_sigma(),
        exp_form: a.exp_form(),
        conjugate_exp_form: a.conjugate().exp_form(),
        theorem_condition: None,
        smoothness: None,
        blocks: model.blocks().clone(),
        s_a: liealg::root_marks(a).s_a.into_iter().collect(),
        h11: Step::NotApplicable { reason: "degenerate partition".into() },
        certificates: Step::NotApplicable { reason: "degenerate partition".into() },
        tangent: Step::NotApplicable { reason: "degenerate partition".into() },
        exception_boxes: Vec::new(),
        audit: Step::NotApplicable { reason: "degenerate partition".into() },
        induction_trace: Step::NotApplicable { reason: "degenerate partition".into() },
        verdict: Verdict::Trivial,
        smoothable: Smoothable::Smooth,
    };
    if degenerate {
        return Ok(report);
    }

    let theorem = a.theorem_condition()?;
    let smooth = smoothness_class(a)?;
    report.theorem_condition = Some(theorem);
    report.smoothness = Some(smooth);
    report.exception_boxes = exception_boxes(model.blocks());
    report.h11 = Step::from_result(h11_summary(&model, limits))?;
    report.audit = Step::from_result(audit_summary(&model, limits))?;
    report.induction_trace = Step::from_result(induction_trace(a, limits))?;

    let ia = Step::from_result(exterior::build_ia(&model, limits.max_wedge_dim))?;
    let mut reasons = Vec::new();
    if let Some(ia) = ia.value() {
        let expected = exterior::expected_ia_dim(a);
        if num_bigint::BigUint::from(ia.dim()) != expected {
            reasons.push(format!("dim I_a = {} but the Schur dimension count gives {expected}", ia.dim()));
        }
        report.certificates = Step::Computed { value: certificate_check(&model, ia)? };
        report.tangent = Step::Computed { value: tangent_comparison(&model, ia)? };
    } else {
        let reason = match &ia {
            Step::Skipped { reason } | Step::NotApplicable { reason } => reason.clone(),
            Step::Computed { .. } => unreachable!(),
        };
        report.certificates = Step::Skipped { reason: reason.clone() };
        report.tangent = Step::Skipped { reason };
    }

    // cross-checks between independent computations
    let certified = report.certificates.value().map(|cs| cs.iter().all(|c| !c.in_ia));
    let equal = report.tangent.value().map(|t| t.verdict == Equality::Equal);
    if let (Some(c), Some(e)) = (certified, equal) {
        if c != e {
            reasons.push(format!("certificates {} but tangent comparison {}", if c { "certify" } else { "fail" }, if e { "is equal" } else { "is a proper inclusion" }));
        }
    }
    if !report.exception_boxes.is_empty() && equal == Some(true) {
        reasons.push("exception boxes present but T_a equals m_a".into());
    }
    if theorem {
        if !report.exception_boxes.is_empty() {
            reasons.push("theorem condition holds but exception boxes exist".into());
        }
        if certified == Some(false) {
            reasons.push("theorem condition holds but a certificate lands in I_a".into());
        }
        if equal == Some(false) {
            reasons.push("theorem condition holds but T_a is larger than m_a".into());
        }
    }
    if let Step::Skipped { .. } = report.audit {
    } else if report.audit.value().is_none() {
        reasons.push("decomposition audit did not run".into());
    }

    report.verdict = if !reasons.is_empty() {
        Verdict::ConsistencyFailure { reasons }
    } else if !theorem {
        Verdict::NotCovered
    } else if let (Some(true), Some(true), Some(_)) = (certified, equal, report.induction_trace.value()) {
        Verdict::SchurRigid
    } else {
        let why = match (&report.certificates, &report.induction_trace) {
            (Step::Skipped { reason }, _) | (_, Step::Skipped { reason }) => reason.clone(),
            _ => "verdict pillars incomplete".into(),
        };
        Verdict::Skipped { reason: why }
    };
    report.smoothable = match (smooth, &report.verdict) {
        (Smoothness::Smooth { .. }, _) => Smoothable::Smooth,
        (Smoothness::Singular, Verdict::SchurRigid) => Smoothable::NotSmoothable,
        _ => Smoothable::Undetermined,
    };
    Ok(report)
}

/// Convenience wrapper with default limits, rejecting degenerate input.
pub fn analyze(a: &Partition) -> Result<RigidityReport> {
    verdict(a, &Limits::default())
}

/// Whether `T_a` equals `m_a` for `a`, computing `I_a` on the way.
pub fn check_equality(a: &Partition, limits: &Limits) -> Result<TangentComparison> {
    if a.is_degenerate() {
        return Err(Error::DegeneratePartition(a.to_string()));
    }
    let model = TangentModel::new(a)?;
    let ia = exterior::build_ia(&model, limits.max_wedge_dim)?;
    tangent_comparison(&model, &ia)
}
