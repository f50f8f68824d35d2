//! Validation and elementary derived data for strongly positive
//! classification tuples.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::rational::Rational;
use crate::types::{CuspidalLine, Error, ExponentMultiset, Result, SPRep, SPTuple, Segment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationCode {
    NegativeAlpha,
    DuplicateRho,
    LengthMismatch,
    NotIncreasing,
    NotAboveMinusOne,
    OffLattice,
    BelowEmpty,
    // Trace checks.
    FirstXNotTop,
    XNotDecrementing,
    YNotDecreasing,
    JIncreasing,
    YNotAtJ,
    NoGapBelowJ,
    RunNotConsecutive,
    InvalidIntermediate,
    BadStep,
    FinalNotEmpty,
    JBelowKPrime,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        use ViolationCode::*;
        match self {
            NegativeAlpha => "negative-alpha",
            DuplicateRho => "duplicate-rho",
            LengthMismatch => "length-mismatch",
            NotIncreasing => "not-increasing",
            NotAboveMinusOne => "not-above-minus-one",
            OffLattice => "off-lattice",
            BelowEmpty => "below-empty",
            FirstXNotTop => "first-x-not-top",
            XNotDecrementing => "x-not-decrementing",
            YNotDecreasing => "y-not-decreasing",
            JIncreasing => "j-increasing",
            YNotAtJ => "y-not-at-j",
            NoGapBelowJ => "no-gap-below-j",
            RunNotConsecutive => "run-not-consecutive",
            InvalidIntermediate => "invalid-intermediate",
            BadStep => "bad-step",
            FinalNotEmpty => "final-not-empty",
            JBelowKPrime => "j-below-k-prime",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
    /// Offending line (0-based) within the datum, if any.
    pub line: Option<usize>,
    /// Offending position (1-based tuple index or trace step), if any.
    pub index: Option<usize>,
}

/// Outcome of a report-style check. `ok` iff no violations; warnings do not
/// affect `ok`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    pub(crate) fn push(
        &mut self,
        code: ViolationCode,
        line: Option<usize>,
        index: Option<usize>,
        message: String,
    ) {
        self.violations.push(Violation {
            code,
            message,
            line,
            index,
        });
    }

    pub(crate) fn warn(
        &mut self,
        code: ViolationCode,
        line: Option<usize>,
        index: Option<usize>,
        message: String,
    ) {
        self.warnings.push(Violation {
            code,
            message,
            line,
            index,
        });
    }

    fn at_line(mut self, line: usize) -> Self {
        for v in self.violations.iter_mut().chain(self.warnings.iter_mut()) {
            v.line = Some(line);
        }
        self
    }

    fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.warnings.extend(other.warnings);
    }

    pub fn into_result(self) -> Result<()> {
        if self.ok() {
            Ok(())
        } else {
            Err(Error::Invalid(Box::new(self)))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() && self.warnings.is_empty() {
            return f.write_str("OK");
        }
        for (kind, list) in [("error", &self.violations), ("warning", &self.warnings)] {
            for v in list {
                write!(f, "{kind} [{}]", v.code)?;
                if let Some(l) = v.line {
                    write!(f, " line {l}")?;
                }
                if let Some(i) = v.index {
                    write!(f, " index {i}")?;
                }
                writeln!(f, ": {}", v.message)?;
            }
        }
        Ok(())
    }
}

/// Checks one tuple against the classification constraints. Violations
/// carry 1-based tuple indices and no line number.
pub fn validate_tuple(t: &SPTuple) -> ValidationReport {
    use ViolationCode::*;
    let mut r = ValidationReport::default();
    let line = &t.line;
    let alpha = line.alpha();
    if alpha.is_negative() {
        r.push(
            NegativeAlpha,
            None,
            None,
            format!("reducibility point {alpha} of {} is negative", line.rho()),
        );
    }
    let k = line.k();
    if t.entries.len() != k {
        r.push(
            LengthMismatch,
            None,
            None,
            format!(
                "tuple length {} != ceil(alpha) = {k} (alpha = {alpha})",
                t.entries.len()
            ),
        );
    }
    for (pos, w) in t.entries.windows(2).enumerate() {
        if w[0] >= w[1] {
            r.push(
                NotIncreasing,
                None,
                Some(pos + 2),
                format!("entries not strictly increasing: {} >= {}", w[0], w[1]),
            );
        }
    }
    if let Some(a1) = t.entries.first() {
        if *a1 <= Rational::from(-1) {
            r.push(
                NotAboveMinusOne,
                None,
                Some(1),
                format!("a_1 = {a1} is not > -1"),
            );
        }
    }
    for (pos, a) in t.entries.iter().enumerate() {
        let i = pos + 1;
        if !a.same_lattice(alpha) {
            r.push(
                OffLattice,
                None,
                Some(i),
                format!("a_{i} - alpha = {} is not an integer", a - alpha),
            );
        } else if t.entries.len() == k && *a < line.empty_value(i) {
            r.push(
                BelowEmpty,
                None,
                Some(i),
                format!(
                    "a_{i} = {a} is below alpha - k + {i} - 1 = {}",
                    line.empty_value(i)
                ),
            );
        }
    }
    r
}

/// Checks a full datum; all problems are reported, none thrown.
pub fn validate_sp(rep: &SPRep) -> ValidationReport {
    let mut r = ValidationReport::default();
    let mut seen = HashSet::new();
    for (l, t) in rep.lines.iter().enumerate() {
        if !seen.insert(t.line.rho()) {
            r.push(
                ViolationCode::DuplicateRho,
                Some(l),
                None,
                format!("cuspidal label `{}` appears more than once", t.line.rho()),
            );
        }
        r.merge(validate_tuple(t).at_line(l));
    }
    r
}

fn ensure_valid(t: &SPTuple) -> Result<()> {
    validate_tuple(t).into_result()
}

/// First index whose inducing segment is nonempty; `None` for the cuspidal
/// tuple.
pub fn k_prime(t: &SPTuple) -> Result<Option<usize>> {
    ensure_valid(t)?;
    Ok(first_nonempty(t))
}

pub(crate) fn first_nonempty(t: &SPTuple) -> Option<usize> {
    t.entries
        .iter()
        .enumerate()
        .map(|(p, a)| (p + 1, a))
        .find(|(i, a)| **a >= t.line.segment_start(*i))
        .map(|(i, _)| i)
}

/// Nonempty segments `[alpha - k + i, a_i]` in index order.
pub fn inducing_segments(t: &SPTuple) -> Result<Vec<Segment>> {
    ensure_valid(t)?;
    Ok(raw_inducing_segments(t))
}

pub(crate) fn raw_inducing_segments(t: &SPTuple) -> Vec<Segment> {
    t.entries
        .iter()
        .enumerate()
        .map(|(p, a)| {
            Segment::new(t.line.rho(), t.line.segment_start(p + 1), a.clone())
                .expect("valid tuple gives well-formed segments")
        })
        .filter(|s| !s.is_empty())
        .collect()
}

/// Exponents of the cuspidal support contributed by one line.
pub fn line_support(t: &SPTuple) -> Result<ExponentMultiset> {
    ensure_valid(t)?;
    Ok(raw_inducing_segments(t)
        .iter()
        .flat_map(Segment::exponents)
        .collect())
}

/// Cuspidal support per `rho` label.
pub fn cuspidal_support(rep: &SPRep) -> Result<BTreeMap<String, ExponentMultiset>> {
    validate_sp(rep).into_result()?;
    rep.lines
        .iter()
        .map(|t| Ok((t.line.rho().to_string(), line_support(t)?)))
        .collect()
}

/// All valid tuples on `line` with `a_k <= max_exponent`, lexicographic.
pub fn enumerate_sp(line: &CuspidalLine, max_exponent: &Rational) -> Result<Vec<SPTuple>> {
    let k = line.k();
    if k == 0 {
        return Ok(vec![SPTuple::new(line.clone(), Vec::new())]);
    }
    if !max_exponent.same_lattice(line.alpha()) {
        return Err(Error::Lattice {
            value: max_exponent.clone(),
            alpha: line.alpha().clone(),
        });
    }
    let floor = line.alpha().shift(-1);
    if *max_exponent < floor {
        return Err(Error::BelowRange {
            max: max_exponent.clone(),
            floor,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    extend_tuples(line, max_exponent, &mut current, &mut out);
    Ok(out)
}

fn extend_tuples(
    line: &CuspidalLine,
    max: &Rational,
    current: &mut Vec<Rational>,
    out: &mut Vec<SPTuple>,
) {
    let k = line.k();
    let i = current.len() + 1;
    if i > k {
        out.push(SPTuple::new(line.clone(), current.clone()));
        return;
    }
    let mut lo = line.empty_value(i);
    if let Some(prev) = current.last() {
        if *prev >= lo {
            lo = prev.shift(1);
        }
    }
    // Leave room for the k - i strictly larger entries after this one.
    let hi = max.shift(i as i64 - k as i64);
    let mut a = lo;
    while a <= hi {
        current.push(a.clone());
        extend_tuples(line, max, current, out);
        current.pop();
        a = a.shift(1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::types::GroupFamily;

    fn tuple(alpha: Rational, entries: &[Rational]) -> SPTuple {
        SPTuple::new(CuspidalLine::new("rho", alpha), entries.to_vec())
    }

    fn codes(r: &ValidationReport) -> Vec<ViolationCode> {
        r.violations.iter().map(|v| v.code).collect()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_tuple(&tuple(q(3, 2), &[q(1, 2), q(3, 2)])).ok());
        let r = validate_tuple(&tuple(q(3, 2), &[q(3, 2), q(1, 2)]));
        assert!(r.has(ViolationCode::NotIncreasing));
        let r = validate_tuple(&tuple(q(1, 2), &[q(1, 2), q(3, 2)]));
        assert_eq!(codes(&r), vec![ViolationCode::LengthMismatch]);
    }

    #[test]
    fn validate_reports_every_problem() {
        let t = tuple(q(-1, 2), &[q(-3, 2), q(0, 1)]);
        let r = validate_tuple(&t);
        let c = codes(&r);
        assert!(c.contains(&ViolationCode::NegativeAlpha));
        assert!(c.contains(&ViolationCode::LengthMismatch));
        assert!(c.contains(&ViolationCode::NotAboveMinusOne));
        assert!(c.contains(&ViolationCode::OffLattice));

        let t = tuple(q(5, 2), &[q(-1, 2), q(-1, 2), q(3, 2)]);
        let r = validate_tuple(&t);
        assert_eq!(
            codes(&r),
            vec![ViolationCode::NotIncreasing, ViolationCode::BelowEmpty]
        );
        assert_eq!(r.violations[1].index, Some(2));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let t = tuple(q(1, 2), &[q(1, 2)]);
        let rep = SPRep::new(GroupFamily::Metaplectic, "s")
            .with_line(t.clone())
            .with_line(t);
        let r = validate_sp(&rep);
        assert_eq!(codes(&r), vec![ViolationCode::DuplicateRho]);
        assert_eq!(r.violations[0].line, Some(1));
    }

    #[test]
    fn k_prime_examples() {
        assert_eq!(k_prime(&tuple(q(3, 2), &[q(1, 2), q(3, 2)])).unwrap(), Some(1));
        assert_eq!(k_prime(&tuple(q(3, 2), &[q(-1, 2), q(3, 2)])).unwrap(), Some(2));
        assert_eq!(k_prime(&tuple(q(3, 2), &[q(-1, 2), q(1, 2)])).unwrap(), None);
        assert!(k_prime(&tuple(q(3, 2), &[q(1, 2)])).is_err());
    }

    #[test]
    fn inducing_segment_examples() {
        let s = inducing_segments(&tuple(q(3, 2), &[q(1, 2), q(5, 2)])).unwrap();
        let shown: Vec<String> = s.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["d([1/2,1/2];rho)", "d([3/2,5/2];rho)"]);
        assert!(inducing_segments(&tuple(q(3, 2), &[q(-1, 2), q(1, 2)]))
            .unwrap()
            .is_empty());
        let s = inducing_segments(&tuple(q(1, 2), &[q(3, 2)])).unwrap();
        assert_eq!(s, vec![Segment::new("rho", q(1, 2), q(3, 2)).unwrap()]);
    }

    #[test]
    fn support_examples() {
        let sup = |alpha, e: &[Rational]| {
            let m = line_support(&tuple(alpha, e)).unwrap();
            m.iter()
                .flat_map(|(x, n)| std::iter::repeat_n(x.clone(), n))
                .collect::<Vec<_>>()
        };
        assert_eq!(sup(q(3, 2), &[q(1, 2), q(5, 2)]), [q(1, 2), q(3, 2), q(5, 2)]);
        assert!(sup(q(3, 2), &[q(-1, 2), q(1, 2)]).is_empty());
        assert_eq!(sup(q(1, 1), &[q(2, 1)]), [q(1, 1), q(2, 1)]);
        // ceil(1) = 1, so a two-entry tuple is not data on this line.
        assert!(line_support(&tuple(q(1, 1), &[q(0, 1), q(2, 1)])).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let show = |alpha: Rational, max: Rational| -> Vec<String> {
            enumerate_sp(&CuspidalLine::new("rho", alpha), &max)
                .unwrap()
                .iter()
                .map(ToString::to_string)
                .collect()
        };
        assert_eq!(show(q(1, 2), q(3, 2)), ["(-1/2)", "(1/2)", "(3/2)"]);
        assert_eq!(
            show(q(3, 2), q(3, 2)),
            ["(-1/2, 1/2)", "(-1/2, 3/2)", "(1/2, 3/2)"]
        );
        assert_eq!(show(q(0, 1), q(7, 1)), ["()"]);
    }

    #[test]
    fn enumerate_rejects_bad_bounds() {
        let line = CuspidalLine::new("rho", q(3, 2));
        assert!(matches!(
            enumerate_sp(&line, &q(2, 1)),
            Err(Error::Lattice { .. })
        ));
        assert!(matches!(
            enumerate_sp(&line, &q(-1, 2)),
            Err(Error::BelowRange { .. })
        ));
        // max = alpha - 1 leaves only the cuspidal tuple.
        assert_eq!(enumerate_sp(&line, &q(1, 2)).unwrap().len(), 1);
    }

    #[test]
    fn k_one_count_is_offset_plus_two() {
        for n in 0..8 {
            let line = CuspidalLine::new("rho", q(1, 2));
            let v = enumerate_sp(&line, &q(1, 2).shift(n)).unwrap();
            assert_eq!(v.len() as i64, n + 2);
        }
    }

    /// Brute force: every tuple in the per-index box, filtered by validation.
    fn brute_enumerate(alpha: Rational, max: Rational) -> Vec<Vec<Rational>> {
        let line = CuspidalLine::new("rho", alpha);
        let k = line.k();
        let mut out: Vec<Vec<Rational>> = vec![vec![]];
        for i in 1..=k {
            let lo = line.empty_value(i);
            let n = max.steps_from(&lo).unwrap();
            out = out
                .into_iter()
                .flat_map(|p| {
                    let lo = lo.clone();
                    (0..=n.max(-1)).map(move |s| {
                        let mut p = p.clone();
                        p.push(lo.shift(s));
                        p
                    })
                })
                .collect();
        }
        out.into_iter()
            .filter(|e| validate_tuple(&SPTuple::new(line.clone(), e.clone())).ok())
            .collect()
    }

    #[test]
    fn enumeration_matches_validation_filter() {
        for alpha in [q(1, 2), q(1, 1), q(3, 2), q(2, 1), q(5, 2), q(3, 1), q(7, 3)] {
            for off in 0..5 {
                let max = alpha.shift(off);
                let line = CuspidalLine::new("rho", alpha.clone());
                let got: Vec<Vec<Rational>> = enumerate_sp(&line, &max)
                    .unwrap()
                    .into_iter()
                    .map(|t| t.entries)
                    .collect();
                let mut want = brute_enumerate(alpha.clone(), max);
                want.sort();
                assert_eq!(got, want, "alpha {alpha} offset {off}");
            }
        }
    }

    #[test]
    fn cuspidal_iff_no_segments_iff_empty_support() {
        for alpha in [q(1, 2), q(2, 1), q(5, 2)] {
            let line = CuspidalLine::new("rho", alpha.clone());
            for t in enumerate_sp(&line, &alpha.shift(3)).unwrap() {
                let none = k_prime(&t).unwrap().is_none();
                assert_eq!(none, inducing_segments(&t).unwrap().is_empty());
                assert_eq!(none, line_support(&t).unwrap().is_empty());
                assert_eq!(none, t.is_all_empty());
                let expected: i64 = t
                    .entries
                    .iter()
                    .enumerate()
                    .map(|(p, a)| (a.steps_from(&line.segment_start(p + 1)).unwrap() + 1).max(0))
                    .sum();
                assert_eq!(line_support(&t).unwrap().len() as i64, expected);
            }
        }
    }
}
