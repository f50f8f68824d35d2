//! Aubert duals of strongly positive data.
//!
//! Two independent routes produce the Langlands data of the dual of one
//! cuspidal line:
//!
//! * [`dual_closed_line`] evaluates the closed-form product: for
//!   `i = 1..=k` and `j` running over `-a_{k-i+1}, ..., -a_{k-i} - 2`, one
//!   segment `[j - i + 1, j]`, where `a_0 = alpha - ceil(alpha) - 1`.
//! * [`dual_iterative_line`] peels exponents off the working tuple: each
//!   step takes `x = b_k`, picks `j` (1 if `b` is consecutive, otherwise the
//!   last index with a gap `b_{j-1} < b_j - 1`), emits `[-x, -b_j]` and
//!   lowers `b_j, ..., b_k` by one, until `b` is the all-empty tuple.
//!
//! Lines are independent, so [`dual`] merges per-line closed forms.

use crate::classify::{first_nonempty, validate_sp, validate_tuple, ValidationReport, ViolationCode};
use crate::rational::Rational;
use crate::types::{sort_segments, LanglandsData, Result, SPRep, SPTuple, Segment};

/// One peeling step of the iterative algorithm.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TraceStep {
    pub tuple_before: Vec<Rational>,
    /// 1-based index `j_m`.
    pub j: usize,
    pub x: Rational,
    pub y: Rational,
    pub emitted: Segment,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualTrace {
    pub steps: Vec<TraceStep>,
    pub final_tuple: Vec<Rational>,
}

/// Closed-form dual of one line, `e`-sorted.
pub fn dual_closed_line(t: &SPTuple) -> Result<Vec<Segment>> {
    validate_tuple(t).into_result()?;
    let k = t.entries.len();
    let a0 = t.line.empty_value(0);
    let a = |idx: usize| if idx == 0 { &a0 } else { &t.entries[idx - 1] };
    let mut out = Vec::new();
    for i in 1..=k {
        let start = -a(k - i + 1);
        let end = (-a(k - i)).shift(-2);
        // Lattice points start, start + 1, ..., end; empty if start > end.
        let count = end.steps_from(&start).expect("entries share the lattice") + 1;
        for step in 0..count.max(0) {
            let j = start.shift(step);
            let lo = j.shift(1 - i as i64);
            out.push(Segment::new(t.line.rho(), lo, j).expect("length i segment"));
        }
    }
    sort_segments(&mut out);
    Ok(out)
}

/// Index `j_m` for a working tuple: 1 when consecutive, otherwise the last
/// index `l >= 2` with `b_{l-1} < b_l - 1`.
fn peel_index(b: &[Rational]) -> usize {
    (2..=b.len())
        .rev()
        .find(|&l| b[l - 2] < b[l - 1].shift(-1))
        .unwrap_or(1)
}

/// Iterative dual of one line, `e`-sorted, together with its trace.
pub fn dual_iterative_line(t: &SPTuple) -> Result<(Vec<Segment>, DualTrace)> {
    validate_tuple(t).into_result()?;
    let target = t.line.all_empty();
    let mut b = t.entries.clone();
    let mut steps = Vec::new();
    // Each step lowers sum(b) by at least one lattice unit.
    let bound: i64 = b
        .iter()
        .zip(&target)
        .map(|(x, e)| x.steps_from(e).expect("valid tuple"))
        .sum();
    while b != target {
        assert!(
            (steps.len() as i64) < bound,
            "peeling did not terminate for {t}"
        );
        let k = b.len();
        let j = peel_index(&b);
        let x = b[k - 1].clone();
        let y = b[j - 1].clone();
        let emitted = Segment::new(t.line.rho(), -&x, -&y).expect("x >= y on the lattice");
        let before = b.clone();
        for v in &mut b[j - 1..] {
            *v = v.shift(-1);
        }
        steps.push(TraceStep {
            tuple_before: before,
            j,
            x,
            y,
            emitted,
        });
    }
    let mut segments: Vec<Segment> = steps.iter().map(|s| s.emitted.clone()).collect();
    sort_segments(&mut segments);
    Ok((
        segments,
        DualTrace {
            steps,
            final_tuple: b,
        },
    ))
}

/// Dual of a full datum: per-line closed forms merged in canonical order,
/// over the same cuspidal support, family and central character.
pub fn dual(rep: &SPRep) -> Result<LanglandsData> {
    validate_sp(rep).into_result()?;
    let mut segments = Vec::new();
    for t in &rep.lines {
        segments.extend(dual_closed_line(t)?);
    }
    LanglandsData::new(
        segments,
        rep.cuspidal_support.clone(),
        rep.family,
        rep.central_character.clone(),
    )
}

/// Checks the recurrences a peeling trace must satisfy. The `j_m >= k'`
/// property is reported as a warning only.
pub fn check_trace(t: &SPTuple, trace: &DualTrace) -> ValidationReport {
    use ViolationCode::*;
    let mut r = ValidationReport::default();
    let steps = &trace.steps;
    if trace.final_tuple != t.line.all_empty() {
        r.push(
            FinalNotEmpty,
            None,
            None,
            format!(
                "final tuple {} is not the all-empty tuple",
                t.with_entries(trace.final_tuple.clone())
            ),
        );
    }
    if let (Some(first), Some(top)) = (steps.first(), t.entries.last()) {
        if first.x != *top {
            r.push(
                FirstXNotTop,
                None,
                Some(1),
                format!("x_1 = {} but a_k = {top}", first.x),
            );
        }
    }
    let k_prime = first_nonempty(t);
    for (m, s) in steps.iter().enumerate() {
        let step = m + 1;
        let b = &s.tuple_before;
        let before = t.with_entries(b.clone());
        if !validate_tuple(&before).ok() {
            r.push(
                InvalidIntermediate,
                None,
                Some(step),
                format!("working tuple {before} is not valid classification data"),
            );
            continue;
        }
        let k = b.len();
        if s.j == 0 || s.j > k {
            r.push(BadStep, None, Some(step), format!("j = {} out of range", s.j));
            continue;
        }
        let expected = Segment::new(t.line.rho(), -&s.x, -&s.y).ok();
        if s.x != b[k - 1] || expected.as_ref() != Some(&s.emitted) {
            r.push(
                BadStep,
                None,
                Some(step),
                format!("step does not emit [-b_k, -y] (x = {}, b_k = {})", s.x, b[k - 1]),
            );
        }
        if s.y != b[s.j - 1] {
            r.push(
                YNotAtJ,
                None,
                Some(step),
                format!("y = {} differs from b_j = {}", s.y, b[s.j - 1]),
            );
        }
        if s.j >= 2 && b[s.j - 1] < b[s.j - 2].shift(2) {
            r.push(
                NoGapBelowJ,
                None,
                Some(step),
                format!(
                    "b_j = {} < b_(j-1) + 2 = {}",
                    b[s.j - 1],
                    b[s.j - 2].shift(2)
                ),
            );
        }
        // y + r = b_(j+r) for r = 0..=x-y, i.e. b_j..b_k is a consecutive run.
        let run_ok = (s.j..=k).all(|idx| b[idx - 1] == s.y.shift((idx - s.j) as i64))
            && s.x.steps_from(&s.y) == Some((k - s.j) as i64);
        if !run_ok {
            r.push(
                RunNotConsecutive,
                None,
                Some(step),
                format!("b_j..b_k is not the run y, y + 1, ..., x in {before}"),
            );
        }
        if let Some(kp) = k_prime {
            if s.j < kp {
                r.warn(
                    JBelowKPrime,
                    None,
                    Some(step),
                    format!("j = {} < k' = {kp}", s.j),
                );
            }
        }
        if let Some(next) = steps.get(m + 1) {
            if next.x != s.x.shift(-1) {
                r.push(
                    XNotDecrementing,
                    None,
                    Some(step + 1),
                    format!("x_(m+1) = {} != x_m - 1 = {}", next.x, s.x.shift(-1)),
                );
            }
            if next.y >= s.y {
                r.push(
                    YNotDecreasing,
                    None,
                    Some(step + 1),
                    format!("y_(m+1) = {} is not < y_m = {}", next.y, s.y),
                );
            }
            if next.j > s.j {
                r.push(
                    JIncreasing,
                    None,
                    Some(step + 1),
                    format!("j_(m+1) = {} > j_m = {}", next.j, s.j),
                );
            }
        }
    }
    r
}
