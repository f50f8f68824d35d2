//! Text, JSON and LaTeX renderings.
//!
//! Text uses ASCII stand-ins: `d([lo,hi];rho)` for a segment, ` x ` for
//! both products, `(x)` for the tensor product. LaTeX spells out
//! `\delta`, `\nu`, `\times`, `\rtimes` and `\otimes`.

use serde_json::{json, Value};

use crate::classify::{ValidationReport, Violation};
use crate::cli::document::{RepSpecDocument, SegmentDocument};
use crate::jacquet::MuStarTerm;
use crate::types::{LanglandsData, SPRep, SPTuple, Segment};
use crate::verify::SuiteReport;

const GREEK: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa",
    "lambda", "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "upsilon", "phi", "chi", "psi",
    "omega",
];

/// `rho1` -> `\rho_1`, `sigma_cusp` -> `\sigma_{cusp}`, `pi` -> `\pi`,
/// other names in `\mathrm{}`.
pub fn latex_label(label: &str) -> String {
    let (base, sub) = match label.split_once('_') {
        Some((b, s)) => (b, s),
        None => {
            let cut = label.trim_end_matches(|c: char| c.is_ascii_digit()).len();
            label.split_at(cut)
        }
    };
    let base = if base.is_empty() {
        return format!("\\mathrm{{{}}}", label.replace('_', "\\_"));
    } else if GREEK.contains(&base) {
        format!("\\{base}")
    } else {
        format!("\\mathrm{{{base}}}")
    };
    match sub.chars().count() {
        0 => base,
        1 => format!("{base}_{sub}"),
        _ => format!("{base}_{{{}}}", sub.replace('_', "\\_")),
    }
}

pub fn segment_latex(s: &Segment) -> String {
    let rho = latex_label(s.rho());
    match s.bounds() {
        Some((lo, hi)) => format!("\\delta([\\nu^{{{lo}}}{rho}, \\nu^{{{hi}}}{rho}])"),
        None => "\\emptyset".to_string(),
    }
}

fn segment_json(s: &Segment) -> Value {
    serde_json::to_value(SegmentDocument::from_segment(s)).expect("serializable")
}

pub fn langlands_text(d: &LanglandsData) -> String {
    if d.is_cuspidal() {
        return d.cuspidal_support.clone();
    }
    let mut parts: Vec<String> = d.segments().iter().map(ToString::to_string).collect();
    parts.push(d.cuspidal_support.clone());
    format!("L( {} )", parts.join(" x "))
}

pub fn langlands_latex(d: &LanglandsData) -> String {
    let cusp = latex_label(&d.cuspidal_support);
    if d.is_cuspidal() {
        return cusp;
    }
    let parts: Vec<String> = d.segments().iter().map(segment_latex).collect();
    format!("L({} \\rtimes {cusp})", parts.join(" \\times "))
}

pub fn langlands_json(d: &LanglandsData, lines: &[SPTuple]) -> Value {
    let mut v = json!({
        "group": d.family.as_str(),
        "cuspidal_support": d.cuspidal_support,
        "segments": d.segments().iter().map(segment_json).collect::<Vec<_>>(),
        "contragredience": lines
            .iter()
            .map(|t| d.family.contragredience(t.line.rho(), d.central_character.as_deref()))
            .collect::<Vec<_>>(),
    });
    if let Some(c) = &d.central_character {
        v["central_character"] = json!(c);
    }
    v
}

/// Text form of the strongly positive factor: the support label when
/// cuspidal, otherwise the non-cuspidal lines' tuples.
pub fn sp_factor_text(rep: &SPRep) -> String {
    let lines: Vec<String> = rep
        .lines
        .iter()
        .filter(|t| !t.is_all_empty())
        .map(|t| format!("{}:{t}", t.line.rho()))
        .collect();
    if lines.is_empty() {
        rep.cuspidal_support.clone()
    } else {
        format!("sigma[{}]", lines.join("; "))
    }
}

fn sp_factor_latex(rep: &SPRep) -> String {
    let lines: Vec<String> = rep
        .lines
        .iter()
        .filter(|t| !t.is_all_empty())
        .map(|t| {
            let entries: Vec<String> = t.entries.iter().map(ToString::to_string).collect();
            format!("{}:({})", latex_label(t.line.rho()), entries.join(", "))
        })
        .collect();
    if lines.is_empty() {
        latex_label(&rep.cuspidal_support)
    } else {
        format!("\\sigma_{{{}}}", lines.join("; "))
    }
}

pub fn term_text(t: &MuStarTerm) -> String {
    t.to_string()
}

pub fn term_latex(t: &MuStarTerm) -> String {
    let gl = if t.gl_part.is_empty() {
        "1".to_string()
    } else {
        let parts: Vec<String> = t.gl_part.iter().map(segment_latex).collect();
        format!("L({})", parts.join(" \\times "))
    };
    let m = if t.multiplicity == 1 {
        String::new()
    } else {
        format!("{} \\cdot ", t.multiplicity)
    };
    format!("{m}{gl} \\otimes {}", sp_factor_latex(&t.sp_part))
}

pub fn term_json(t: &MuStarTerm) -> Value {
    json!({
        "multiplicity": t.multiplicity,
        "gl": t.gl_part.iter().map(segment_json).collect::<Vec<_>>(),
        "sp": RepSpecDocument::from_rep(&t.sp_part),
    })
}

fn violation_json(v: &Violation) -> Value {
    json!({
        "code": v.code.as_str(),
        "message": v.message,
        "line": v.line,
        "index": v.index,
    })
}

pub fn report_json(r: &ValidationReport) -> Value {
    json!({
        "ok": r.ok(),
        "violations": r.violations.iter().map(violation_json).collect::<Vec<_>>(),
        "warnings": r.warnings.iter().map(violation_json).collect::<Vec<_>>(),
    })
}

pub fn suite_json(r: &SuiteReport) -> Value {
    json!({
        "passed": r.passed(),
        "single_line_inputs": r.single_line_inputs,
        "multi_line_inputs": r.multi_line_inputs,
        "checks": r.tallies.iter().map(|(c, t)| json!({
            "name": c.name(),
            "passed": t.passed,
            "failed": t.failed,
            "skipped": t.skipped,
        })).collect::<Vec<_>>(),
        "counterexamples": r.counterexamples.iter().map(|c| json!({
            "check": c.check.name(),
            "input": RepSpecDocument::from_rep(&c.input),
            "expected": c.expected,
            "actual": c.actual,
        })).collect::<Vec<_>>(),
        "warnings": r.warnings,
        "elapsed_ms": r.elapsed.as_millis() as u64,
    })
}
