//! Text rendering of [`RigidityReport`] and the JSON schema of its serialized form.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::rigidity::{
    Equality, InductionNode, NodeStatus, RigidityReport, Smoothable, Smoothness, Step, Verdict, SCHEMA_VERSION,
};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pairs(v: &[(usize, usize)]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    v.iter().map(|(i, a)| format!("({i},{a})")).collect::<Vec<_>>().join(" ")
}

fn list(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn step_line<T>(step: &Step<T>, f: impl FnOnce(&T) -> String) -> String {
    match step {
        Step::Computed { value } => f(value),
        Step::Skipped { reason } => format!("SKIPPED ({reason})"),
        Step::NotApplicable { reason } => format!("not applicable ({reason})"),
    }
}

pub fn verdict_label(v: &Verdict) -> String {
    match v {
        Verdict::Trivial => "trivial (point or whole Grassmannian)".into(),
        Verdict::SchurRigid => "Schur rigid".into(),
        Verdict::NotCovered => "not covered by the multiplicity condition".into(),
        Verdict::Skipped { reason } => format!("SKIPPED ({reason})"),
        Verdict::ConsistencyFailure { reasons } => format!("CONSISTENCY FAILURE: {}", reasons.join("; ")),
    }
}

pub fn smoothable_label(s: Smoothable) -> &'static str {
    match s {
        Smoothable::NotSmoothable => "not smoothable",
        Smoothable::Smooth => "smooth",
        Smoothable::Undetermined => "undetermined",
    }
}

pub fn smoothness_label(s: Option<Smoothness>) -> String {
    match s {
        Some(Smoothness::Smooth { p, q }) => format!("smooth (p={p}, q={q})"),
        Some(Smoothness::Singular) => "singular".into(),
        None => "n/a".into(),
    }
}

pub fn equality_label(e: &Equality) -> String {
    match e {
        Equality::Equal => "equal".into(),
        Equality::ProperInclusion { gap } => format!("proper inclusion (gap {gap})"),
    }
}

fn render_node(out: &mut String, node: &InductionNode, depth: usize) {
    let status = match &node.status {
        NodeStatus::Trivial => "trivial".to_string(),
        NodeStatus::Smooth { p, q } => format!("smooth (p={p}, q={q})"),
        NodeStatus::Base => "base: single nonzero value".into(),
        NodeStatus::Reduced => "reduced".into(),
        NodeStatus::Datum => String::new(),
    };
    let role = serde_json::to_value(node.role).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let _ = write!(out, "    {}{role} {}", "  ".repeat(depth), node.partition);
    if !status.is_empty() {
        let _ = write!(out, "  {status}");
    }
    if let Some(pv) = node.projected_vanishing {
        let _ = write!(out, "  projected H^(1,1) vanishes: {}", yes_no(pv));
    }
    out.push('\n');
    for c in &node.children {
        render_node(out, c, depth + 1);
    }
}

pub fn render_text(r: &RigidityReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "{}", r.partition);
    let _ = writeln!(w, "  codim {}, dim {}", r.codim, r.dim);
    let _ = writeln!(w, "  exp form           {}", r.exp_form);
    let _ = writeln!(w, "  conjugate exp form {}", r.conjugate_exp_form);
    let _ = writeln!(w, "  theorem condition  {}", r.theorem_condition.map_or("n/a", yes_no));
    let _ = writeln!(w, "  smoothness         {}", smoothness_label(r.smoothness));
    let _ = writeln!(
        w,
        "  blocks             E {}  Q {}  Pi {}",
        list(&r.blocks.e_sizes),
        list(&r.blocks.q_sizes),
        pairs(&r.blocks.pi.iter().copied().collect::<Vec<_>>())
    );
    let _ = writeln!(w, "  S_a                {{{}}}", list(&r.s_a));
    let _ = writeln!(
        w,
        "  H^(1,1)            {}",
        step_line(&r.h11, |h| format!(
            "dim {} (of {}), vanishes: {}; integrability {}",
            h.dim,
            h.domain_dim,
            yes_no(h.vanishes),
            h.integrability
        ))
    );
    let _ = writeln!(
        w,
        "  decomposition      {}",
        step_line(&r.audit, |a| format!(
            "Hom {} = m_a {} + {} components, accounted {}",
            a.hom_dim, a.ma_dim, a.components, a.accounted
        ))
    );
    let _ = writeln!(
        w,
        "  certificates       {}",
        step_line(&r.certificates, |cs| format!(
            "{} components, {} in I_a",
            cs.len(),
            cs.iter().filter(|c| c.in_ia).count()
        ))
    );
    if let Some(cs) = r.certificates.value() {
        for c in cs {
            let kind = serde_json::to_value(c.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            let _ = writeln!(
                w,
                "    {kind} ({},{}) -> ({},{}) dim {}: {}",
                c.source.0,
                c.source.1,
                c.target.0,
                c.target.1,
                c.component_dim,
                if c.in_ia { "in I_a" } else { "not in I_a" }
            );
        }
    }
    let _ = writeln!(
        w,
        "  tangent            {}",
        step_line(&r.tangent, |t| format!("T_a {}, m_a {}: {}", t.dim_ta, t.dim_ma, equality_label(&t.verdict)))
    );
    let _ = writeln!(w, "  exception boxes    {}", pairs(&r.exception_boxes));
    match &r.induction_trace {
        Step::Computed { value } => {
            let _ = writeln!(w, "  induction trace");
            render_node(w, value, 0);
        }
        other => {
            let _ = writeln!(w, "  induction trace    {}", step_line(other, |_: &InductionNode| String::new()));
        }
    }
    let _ = writeln!(w, "  verdict            {}", verdict_label(&r.verdict));
    let _ = writeln!(w, "  smoothable         {}", smoothable_label(r.smoothable));
    out
}

fn step_schema(value: Value) -> Value {
    json!({
        "oneOf": [
            {
                "type": "object",
                "required": ["status", "value"],
                "additionalProperties": false,
                "properties": { "status": { "const": "computed" }, "value": value }
            },
            {
                "type": "object",
                "required": ["status", "reason"],
                "additionalProperties": false,
                "properties": {
                    "status": { "enum": ["skipped", "not_applicable"] },
                    "reason": { "type": "string" }
                }
            }
        ]
    })
}

fn object(required: &[&str], properties: Value) -> Value {
    json!({ "type": "object", "required": required, "additionalProperties": false, "properties": properties })
}

/// JSON Schema (draft 2020-12) for one serialized report. A survey is an array of these.
pub fn schema() -> Value {
    let count = json!({ "type": "integer", "minimum": 0 });
    let pair = json!({ "type": "array", "items": count, "minItems": 2, "maxItems": 2 });
    let counts = json!({ "type": "array", "items": count });
    let pairs = json!({ "type": "array", "items": pair });
    let exp_form = object(&["pairs", "zero_count"], json!({ "pairs": pairs, "zero_count": count }));
    let smoothness = json!({
        "oneOf": [
            { "type": "null" },
            object(&["kind"], json!({ "kind": { "const": "singular" } })),
            object(&["kind", "p", "q"], json!({ "kind": { "const": "smooth" }, "p": count, "q": count }))
        ]
    });
    let h11 = object(
        &["dim", "domain_dim", "vanishes", "integrability"],
        json!({ "dim": count, "domain_dim": count, "vanishes": { "type": "boolean" }, "integrability": { "type": "string" } }),
    );
    let certificate = object(
        &["kind", "source", "target", "component_dim", "in_ia"],
        json!({
            "kind": { "enum": ["type1", "type2", "type3"] },
            "source": pair, "target": pair, "component_dim": count, "in_ia": { "type": "boolean" }
        }),
    );
    let equality = json!({
        "oneOf": [
            object(&["kind"], json!({ "kind": { "const": "equal" } })),
            object(&["kind", "gap"], json!({ "kind": { "const": "proper_inclusion" }, "gap": count }))
        ]
    });
    let tangent = object(&["dim_ta", "dim_ma", "verdict"], json!({ "dim_ta": count, "dim_ma": count, "verdict": equality }));
    let audit = object(
        &["hom_dim", "ma_dim", "components", "accounted"],
        json!({ "hom_dim": count, "ma_dim": count, "components": count, "accounted": count }),
    );
    let node_status = json!({
        "oneOf": [
            object(&["kind"], json!({ "kind": { "enum": ["trivial", "base", "reduced", "datum"] } })),
            object(&["kind", "p", "q"], json!({ "kind": { "const": "smooth" }, "p": count, "q": count }))
        ]
    });
    let node = json!({
        "type": "object",
        "required": ["partition", "role", "status", "children"],
        "additionalProperties": false,
        "properties": {
            "partition": { "$ref": "#/$defs/partition" },
            "role": { "enum": ["root", "foliation_b", "leaf_space_c", "rectangle_b", "reduced", "reduced_d"] },
            "status": node_status,
            "projected_vanishing": { "type": "boolean" },
            "children": { "type": "array", "items": { "$ref": "#/$defs/node" } }
        }
    });
    let verdict = json!({
        "oneOf": [
            object(&["kind"], json!({ "kind": { "enum": ["trivial", "schur_rigid", "not_covered"] } })),
            object(&["kind", "reason"], json!({ "kind": { "const": "skipped" }, "reason": { "type": "string" } })),
            object(
                &["kind", "reasons"],
                json!({ "kind": { "const": "consistency_failure" }, "reasons": { "type": "array", "items": { "type": "string" } } })
            )
        ]
    });
    let blocks = object(&["e_sizes", "q_sizes", "pi"], json!({ "e_sizes": counts, "q_sizes": counts, "pi": pairs }));

    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$id": SCHEMA_VERSION,
        "title": "Schubert variety rigidity report",
        "type": "object",
        "additionalProperties": false,
        "required": [
            "schema_version", "partition", "m", "n", "parts", "codim", "dim", "exp_form", "conjugate_exp_form",
            "theorem_condition", "smoothness", "blocks", "s_a", "h11", "certificates", "tangent",
            "exception_boxes", "audit", "induction_trace", "verdict", "smoothable"
        ],
        "$defs": {
            "partition": { "type": "string", "pattern": "^gr\\(\\d+,\\d+\\):\\d+(,\\d+)*$" },
            "node": node
        },
        "properties": {
            "schema_version": { "const": SCHEMA_VERSION },
            "partition": { "$ref": "#/$defs/partition" },
            "m": count,
            "n": count,
            "parts": counts,
            "codim": count,
            "dim": count,
            "exp_form": exp_form,
            "conjugate_exp_form": exp_form,
            "theorem_condition": { "type": ["boolean", "null"] },
            "smoothness": smoothness,
            "blocks": blocks,
            "s_a": counts,
            "h11": step_schema(h11),
            "certificates": step_schema(json!({ "type": "array", "items": certificate })),
            "tangent": step_schema(tangent),
            "exception_boxes": pairs,
            "audit": step_schema(audit),
            "induction_trace": step_schema(json!({ "$ref": "#/$defs/node" })),
            "verdict": verdict,
            "smoothable": { "enum": ["not_smoothable", "smooth", "undetermined"] }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::rigidity::analyze;

    fn report(s: &str) -> RigidityReport {
        analyze(&s.parse::<Partition>().unwrap()).unwrap()
    }

    #[test]
    fn text_carries_verdict_data() {
        for s in ["gr(3,5):2,1,0", "gr(3,5):2,2,0", "gr(4,8):2,2,0,0", "gr(2,4):0,0"] {
            let r = report(s);
            let text = render_text(&r);
            assert!(text.contains(&verdict_label(&r.verdict)), "{s}");
            assert!(text.contains(smoothable_label(r.smoothable)));
            assert!(text.contains(&pairs(&r.exception_boxes)));
            if let Some(t) = r.tangent.value() {
                assert!(text.contains(&format!("T_a {}, m_a {}: {}", t.dim_ta, t.dim_ma, equality_label(&t.verdict))));
            }
            if let Some(h) = r.h11.value() {
                assert!(text.contains(&format!("dim {} (of {})", h.dim, h.domain_dim)));
            }
            if let Some(trace) = r.induction_trace.value() {
                for node in trace.iter() {
                    assert!(text.contains(&node.partition.to_string()));
                }
            }
        }
    }

    #[test]
    fn schema_is_versioned() {
        let s = schema();
        assert_eq!(s["properties"]["schema_version"]["const"], SCHEMA_VERSION);
        let r = serde_json::to_value(report("gr(3,5):2,2,0")).unwrap();
        assert_eq!(r["schema_version"], SCHEMA_VERSION);
        let mut required: Vec<&str> = s["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        required.sort_unstable();
        let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(required, keys);
    }
}
