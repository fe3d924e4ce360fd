//! JSON (schema "indmod/1") and DOT rendering. All maps go through
//! serde_json's sorted-key representation and element lists are emitted in
//! canonical id order, so output is byte-identical across runs.

use serde_json::{json, Value};

use indmod_core::decomp::DecompositionReport;
use indmod_core::sl2lab::{ChainCertificate, SubmoduleLattice};
use indmod_core::weyl::{ElementId, WeylGroup};
use indmod_core::Subset;

use crate::suites::CheckResult;

pub const SCHEMA: &str = "indmod/1";

/// 1-based generator indices of a subset of I.
pub fn subset_json(s: Subset) -> Value {
    Value::Array(s.iter().map(|i| json!(i + 1)).collect())
}

/// 1-based word of a Weyl group element.
pub fn word_json(group: &WeylGroup, w: ElementId) -> Value {
    Value::Array(group.word(w).iter().map(|&i| json!(i as u64 + 1)).collect())
}

pub fn word_text(group: &WeylGroup, w: ElementId) -> String {
    if group.length(w) == 0 {
        return "e".to_string();
    }
    group.word(w).iter().map(|&i| format!("s{}", i + 1)).collect()
}

pub fn decomposition_json(
    group: &WeylGroup,
    report: &DecompositionReport,
    q: Option<u64>,
    a: Option<u32>,
) -> Value {
    let dims = match (q, a, report.series_exists) {
        (Some(q), Some(a), true) => {
            indmod_core::decomp::finite_level_dimensions(report, q, a).ok()
        }
        _ => None,
    };
    let factors: Vec<Value> = report
        .factors
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let mut obj = json!({
                "J": subset_json(f.j),
                "zset": Value::Array(f.z_set.iter().map(|&w| word_json(group, w)).collect()),
                "dim_poly": f.dim_poly.coeffs().to_vec(),
                "multiplicity": f.multiplicity,
                "has_fixed_line": f.has_fixed_line,
            });
            if let Some(dims) = &dims {
                obj["dim_at_qa"] = json!(dims[k].to_string());
            }
            obj
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "mode": match report.mode {
            indmod_core::decomp::Mode::Cross => "cross",
            indmod_core::decomp::Mode::Natural => "natural",
        },
        "itheta": subset_json(report.itheta),
        "theta": report.theta.as_ref().map(|w| w.coords.clone()),
        "series_exists": report.series_exists,
        "witness": report.witness.map(|i| i + 1),
        "factors": factors,
        "head": report.head.map(subset_json),
        "irreducible": report.irreducible,
        "notes": report.notes,
    })
}

pub fn lattice_json(lattice: &SubmoduleLattice) -> Value {
    json!({
        "schema": SCHEMA,
        "m": lattice.m.to_string(),
        "p": lattice.p.to_string(),
        "members": lattice.members.iter().map(|d| json!({
            "generators": d.generators.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "factor_weights": d.factor_weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "hasse": lattice.hasse.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

pub fn certificate_json(cert: &ChainCertificate) -> Value {
    json!({
        "schema": SCHEMA,
        "lambda": cert.lambda.to_string(),
        "q": cert.q.to_string(),
        "a": cert.a,
        "t": cert.t,
        "tprime": cert.tprime,
        "mu_s": cert.mu_s.to_string(),
        "lambda_e": cert.lambda_e.to_string(),
        "i_e": cert.i_e,
        "distinguishing_index": cert.distinguishing_index.to_string(),
        "membership_row": cert.membership_row.to_string(),
        "membership_binom_nonzero": cert.membership_binom_nonzero,
        "membership_row_in_range": cert.membership_row_in_range,
        "noncomparability": cert.noncomparability.iter().map(|w| json!({
            "e_prime": w.e_prime,
            "competing_exponent": w.competing_exponent,
            "exponent_inequality": w.exponent_inequality,
            "support_not_contained": w.support_not_contained,
            "closure_excludes": w.closure_excludes,
        })).collect::<Vec<_>>(),
        "low_family_support_ok": cert.low_family_support_ok,
        "low_family_closure_ok": cert.low_family_closure_ok,
        "valid": cert.is_valid(),
    })
}

/// `timings: false` keeps the payload byte-identical across runs.
pub fn results_json(results: &[CheckResult], timings: bool) -> Value {
    json!({
        "schema": SCHEMA,
        "results": results.iter().map(|r| {
            let mut item = json!({
                "name": r.name,
                "pass": r.passed,
                "detail": r.detail,
                "budget_secs": r.budget_secs,
            });
            if timings {
                item["millis"] = json!(r.millis as u64);
            }
            item
        }).collect::<Vec<_>>(),
        "all_pass": results.iter().all(|r| r.passed),
    })
}

/// Bruhat order Hasse diagram of a Weyl group.
pub fn bruhat_hasse_dot(group: &WeylGroup) -> String {
    let mut out = String::from("digraph bruhat {\n  rankdir=BT;\n  node [shape=box];\n");
    for w in group.elements() {
        out.push_str(&format!("  w{} [label=\"{}\"];\n", w.0, word_text(group, w)));
    }
    for (y, w) in group.bruhat_covers() {
        out.push_str(&format!("  w{} -> w{};\n", y.0, w.0));
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of a submodule lattice; nodes carry the generating weights.
pub fn lattice_dot(lattice: &SubmoduleLattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (idx, d) in lattice.members.iter().enumerate() {
        let label = if d.generators.is_empty() {
            "0".to_string()
        } else {
            d.generators
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        out.push_str(&format!("  n{idx} [label=\"<{label}>\"];\n"));
    }
    for &(lo, hi) in &lattice.hasse {
        out.push_str(&format!("  n{lo} -> n{hi};\n"));
    }
    out.push_str("}\n");
    out
}
