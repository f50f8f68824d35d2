//! Batch verification harness.
//!
//! Single-line checks run over every enumerated tuple; multi-line checks run
//! over seeded random samples. Failures never abort a run: each one becomes
//! a replayable [`Counterexample`] in the [`SuiteReport`].

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classify::{enumerate_sp, line_support, validate_sp, validate_tuple};
use crate::dual::{check_trace, dual, dual_closed_line, dual_iterative_line};
use crate::jacquet::{mu_star, mu_star_line, MuStarTerm};
use crate::rational::Rational;
use crate::types::{
    is_sorted_by_e, CuspidalLine, ExponentMultiset, GroupFamily, Result, SPRep, SPTuple, Segment,
    DEFAULT_CUSPIDAL_SUPPORT,
};

/// Deliberate defects for negative-control runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// The closed form silently drops its last segment.
    TruncateClosedForm,
}

/// Closed-form dual of one line, with an optional injected defect.
pub fn closed_form_with(mutation: Option<Mutation>, t: &SPTuple) -> Result<Vec<Segment>> {
    let mut segments = dual_closed_line(t)?;
    if mutation == Some(Mutation::TruncateClosedForm) {
        segments.pop();
    }
    Ok(segments)
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub alphas: Vec<Rational>,
    /// Single-line tuples are enumerated with `a_k <= alpha + max_offset`.
    pub max_offset: u32,
    pub families: Vec<GroupFamily>,
    pub max_lines: usize,
    pub seed: u64,
    /// Number of sampled multi-line data.
    pub samples: usize,
    /// Multi-line `mu*` expansions larger than this are skipped.
    pub max_mu_terms: usize,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            alphas: [(1, 2), (1, 1), (3, 2), (2, 1), (5, 2), (3, 1)]
                .iter()
                .map(|&(n, d)| Rational::new(n, d))
                .collect(),
            max_offset: 4,
            families: GroupFamily::ALL.to_vec(),
            max_lines: 3,
            seed: 0,
            samples: 200,
            max_mu_terms: 5_000,
            mutation: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    DualRoutesAgree,
    SupportNegation,
    LanglandsShape,
    CuspidalFixedPoint,
    MuStarCount,
    MuStarClosure,
    MuStarBookkeeping,
    TraceRecurrences,
    FamilyNeutrality,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::DualRoutesAgree,
        Check::SupportNegation,
        Check::LanglandsShape,
        Check::CuspidalFixedPoint,
        Check::MuStarCount,
        Check::MuStarClosure,
        Check::MuStarBookkeeping,
        Check::TraceRecurrences,
        Check::FamilyNeutrality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::DualRoutesAgree => "dual-routes-agree",
            Check::SupportNegation => "support-negation",
            Check::LanglandsShape => "langlands-shape",
            Check::CuspidalFixedPoint => "cuspidal-fixed-point",
            Check::MuStarCount => "mu-star-count",
            Check::MuStarClosure => "mu-star-closure",
            Check::MuStarBookkeeping => "mu-star-bookkeeping",
            Check::TraceRecurrences => "trace-recurrences",
            Check::FamilyNeutrality => "family-neutrality",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckTally {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// A failed check with the exact input that reproduces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub check: Check,
    pub input: SPRep,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub tallies: BTreeMap<Check, CheckTally>,
    pub counterexamples: Vec<Counterexample>,
    pub warnings: Vec<String>,
    pub single_line_inputs: usize,
    pub multi_line_inputs: usize,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.tallies.values().map(|t| t.failed).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn tally(&self, check: Check) -> CheckTally {
        self.tallies.get(&check).copied().unwrap_or_default()
    }
}

#[derive(Default)]
struct Outcomes {
    results: Vec<(Check, Outcome)>,
    warnings: Vec<String>,
}

enum Outcome {
    Pass,
    Skip,
    Fail(Counterexample),
}

impl Outcomes {
    fn record(&mut self, check: Check, input: &SPRep, ok: bool, expected: impl fmt::Display, actual: impl fmt::Display) {
        let outcome = if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(Counterexample {
                check,
                input: input.clone(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            })
        };
        self.results.push((check, outcome));
    }

    fn skip(&mut self, check: Check) {
        self.results.push((check, Outcome::Skip));
    }
}

fn show_segments(segments: &[Segment]) -> String {
    let parts: Vec<String> = segments.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn segment_exponents(segments: &[Segment]) -> ExponentMultiset {
    segments.iter().flat_map(Segment::exponents).collect()
}

/// Independent count of admissible `b` tuples: walk the full box
/// `prod_i [alpha - k + i - 1, a_i]` and keep the strictly increasing ones.
pub fn brute_force_mu_count(t: &SPTuple) -> usize {
    let k = t.entries.len();
    let widths: Vec<i64> = (0..k)
        .map(|p| {
            t.entries[p]
                .steps_from(&t.line.empty_value(p + 1))
                .map_or(0, |d| d + 1)
        })
        .collect();
    if widths.iter().any(|&w| w <= 0) {
        return 0;
    }
    let mut odometer = vec![0i64; k];
    let mut count = 0;
    loop {
        let b: Vec<Rational> = (0..k)
            .map(|p| t.line.empty_value(p + 1).shift(odometer[p]))
            .collect();
        if b.windows(2).all(|w| w[0] < w[1]) {
            count += 1;
        }
        // Advance the odometer; done when it wraps around.
        let mut p = 0;
        loop {
            if p == k {
                return count;
            }
            odometer[p] += 1;
            if odometer[p] < widths[p] {
                break;
            }
            odometer[p] = 0;
            p += 1;
        }
    }
}

fn single_line_rep(t: &SPTuple, family: GroupFamily) -> SPRep {
    SPRep::new(family, DEFAULT_CUSPIDAL_SUPPORT).with_line(t.clone())
}

fn check_single_line(t: &SPTuple, cfg: &SuiteConfig) -> Outcomes {
    let mut out = Outcomes::default();
    let rep = single_line_rep(t, GroupFamily::Metaplectic);

    let closed = match closed_form_with(cfg.mutation, t) {
        Ok(c) => c,
        Err(e) => {
            out.record(Check::DualRoutesAgree, &rep, false, "a dual", e);
            return out;
        }
    };
    let (iterative, trace) = dual_iterative_line(t).expect("enumerated tuples are valid");
    out.record(
        Check::DualRoutesAgree,
        &rep,
        closed == iterative,
        show_segments(&iterative),
        show_segments(&closed),
    );

    let support = line_support(t).expect("valid");
    let negated = support.negated();
    let covered = segment_exponents(&closed);
    out.record(Check::SupportNegation, &rep, covered == negated, &negated, &covered);

    let shape_ok = closed.iter().all(|s| s.e().is_ok_and(|e| e.is_negative()))
        && is_sorted_by_e(&closed);
    out.record(
        Check::LanglandsShape,
        &rep,
        shape_ok,
        "e-sorted segments with e < 0",
        show_segments(&closed),
    );

    if t.is_all_empty() {
        out.record(
            Check::CuspidalFixedPoint,
            &rep,
            closed.is_empty() && iterative.is_empty(),
            "[]",
            show_segments(&closed),
        );
    }

    let trace_report = check_trace(t, &trace);
    out.record(
        Check::TraceRecurrences,
        &rep,
        trace_report.ok(),
        "OK",
        &trace_report,
    );
    for w in &trace_report.warnings {
        out.warnings.push(format!("{t} (alpha = {}): {}", t.line.alpha(), w.message));
    }

    let terms = mu_star_line(t, DEFAULT_CUSPIDAL_SUPPORT, GroupFamily::Metaplectic)
        .expect("valid");
    let brute = brute_force_mu_count(t);
    out.record(Check::MuStarCount, &rep, terms.len() == brute, brute, terms.len());
    check_terms(&mut out, &rep, &terms);

    check_family_neutrality(&mut out, &rep, cfg);
    out
}

fn check_terms(out: &mut Outcomes, rep: &SPRep, terms: &[MuStarTerm]) {
    let whole = support_by_line(rep);
    let mut closure_ok = true;
    let mut closure_bad = String::new();
    let mut books_ok = true;
    let mut books_detail = (String::new(), String::new());
    for term in terms {
        let report = validate_sp(&term.sp_part);
        if !report.ok() && closure_ok {
            closure_ok = false;
            closure_bad = format!("{term}: {report}");
        }
        if !report.ok() {
            continue;
        }
        let mut got = support_by_line(&term.sp_part);
        for s in &term.gl_part {
            got.entry(s.rho().to_string())
                .or_default()
                .extend(s.exponents());
        }
        if got != whole && books_ok {
            books_ok = false;
            books_detail = (format!("{whole:?}"), format!("{term}: {got:?}"));
        }
    }
    out.record(Check::MuStarClosure, rep, closure_ok, "every factor valid", closure_bad);
    out.record(
        Check::MuStarBookkeeping,
        rep,
        books_ok,
        books_detail.0,
        books_detail.1,
    );
}

fn support_by_line(rep: &SPRep) -> BTreeMap<String, ExponentMultiset> {
    rep.lines
        .iter()
        .map(|t| {
            (
                t.line.rho().to_string(),
                line_support(t).unwrap_or_default(),
            )
        })
        .collect()
}

fn check_family_neutrality(out: &mut Outcomes, rep: &SPRep, cfg: &SuiteConfig) {
    let duals: Vec<_> = cfg
        .families
        .iter()
        .map(|&f| dual(&rep.in_family(f)))
        .collect();
    let neutral = duals.iter().all(|d| match (d, &duals[0]) {
        (Ok(a), Ok(b)) => a.segments() == b.segments() && a.cuspidal_support == b.cuspidal_support,
        _ => false,
    });
    let shown: Vec<String> = duals
        .iter()
        .map(|d| match d {
            Ok(d) => format!("{}: {}", d.family, show_segments(d.segments())),
            Err(e) => e.to_string(),
        })
        .collect();
    out.record(
        Check::FamilyNeutrality,
        rep,
        neutral,
        "identical segments for every family",
        shown.join("; "),
    );
}

fn check_multi_line(rep: &SPRep, cfg: &SuiteConfig) -> Outcomes {
    let mut out = Outcomes::default();
    let d = match dual(rep) {
        Ok(d) => d,
        Err(e) => {
            out.record(Check::LanglandsShape, rep, false, "a dual", e);
            return out;
        }
    };
    let mut closed_all = Vec::new();
    let mut routes_ok = true;
    for t in &rep.lines {
        let closed = closed_form_with(cfg.mutation, t).expect("valid");
        let (iterative, _) = dual_iterative_line(t).expect("valid");
        routes_ok &= closed == iterative;
        closed_all.extend(closed);
    }
    out.record(
        Check::DualRoutesAgree,
        rep,
        routes_ok,
        "per-line routes agree",
        show_segments(&closed_all),
    );

    let mut expected: BTreeMap<String, ExponentMultiset> = BTreeMap::new();
    for (rho, m) in support_by_line(rep) {
        if !m.is_empty() {
            expected.insert(rho, m.negated());
        }
    }
    let mut actual: BTreeMap<String, ExponentMultiset> = BTreeMap::new();
    for s in &closed_all {
        actual
            .entry(s.rho().to_string())
            .or_default()
            .extend(s.exponents());
    }
    out.record(
        Check::SupportNegation,
        rep,
        expected == actual,
        format!("{expected:?}"),
        format!("{actual:?}"),
    );

    let segs = d.segments();
    let shape_ok =
        segs.iter().all(|s| s.e().is_ok_and(|e| e.is_negative())) && is_sorted_by_e(segs);
    out.record(
        Check::LanglandsShape,
        rep,
        shape_ok,
        "e-sorted segments with e < 0",
        show_segments(segs),
    );

    let expected_terms: usize = rep.lines.iter().map(brute_force_mu_count).product();
    if expected_terms <= cfg.max_mu_terms {
        let terms = mu_star(rep).expect("valid");
        out.record(
            Check::MuStarCount,
            rep,
            terms.len() == expected_terms,
            expected_terms,
            terms.len(),
        );
        check_terms(&mut out, rep, &terms);
    } else {
        out.skip(Check::MuStarCount);
        out.skip(Check::MuStarClosure);
        out.skip(Check::MuStarBookkeeping);
    }

    check_family_neutrality(&mut out, rep, cfg);
    out
}

/// Seeded multi-line data: 1..=max_lines lines with distinct labels, each
/// a random tuple from the single-line enumeration of a random alpha.
pub fn sample_multi_line(
    cfg: &SuiteConfig,
    pools: &[(Rational, Vec<SPTuple>)],
) -> Vec<SPRep> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pools: Vec<_> = pools.iter().filter(|(_, v)| !v.is_empty()).collect();
    if pools.is_empty() || cfg.max_lines == 0 {
        return Vec::new();
    }
    let families = if cfg.families.is_empty() {
        vec![GroupFamily::Metaplectic]
    } else {
        cfg.families.clone()
    };
    (0..cfg.samples)
        .map(|_| {
            let n = rng.random_range(1..=cfg.max_lines);
            let family = *families.choose(&mut rng).expect("nonempty");
            let mut rep = SPRep::new(family, DEFAULT_CUSPIDAL_SUPPORT);
            if family == GroupFamily::GSpinOdd {
                rep.central_character = Some("omega".into());
            }
            for l in 0..n {
                let (_, tuples) = pools.choose(&mut rng).expect("nonempty");
                let t = tuples.choose(&mut rng).expect("nonempty");
                let line = CuspidalLine::new(format!("rho{}", l + 1), t.line.alpha().clone());
                rep.lines.push(SPTuple::new(line, t.entries.clone()));
            }
            rep
        })
        .collect()
}

/// Runs every check over the configured inputs.
pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let start = Instant::now();
    let mut pools = Vec::new();
    let mut setup_failures = Vec::new();
    for alpha in &cfg.alphas {
        let line = CuspidalLine::new("rho", alpha.clone());
        match enumerate_sp(&line, &alpha.shift(cfg.max_offset as i64)) {
            Ok(v) => pools.push((alpha.clone(), v)),
            Err(e) => setup_failures.push(format!("alpha = {alpha}: {e}")),
        }
    }
    let singles: Vec<&SPTuple> = pools.iter().flat_map(|(_, v)| v.iter()).collect();
    let multis = sample_multi_line(cfg, &pools);

    let single_outcomes: Vec<Outcomes> = singles
        .par_iter()
        .map(|t| check_single_line(t, cfg))
        .collect();
    let multi_outcomes: Vec<Outcomes> = multis
        .par_iter()
        .map(|rep| check_multi_line(rep, cfg))
        .collect();

    let mut tallies: BTreeMap<Check, CheckTally> =
        Check::ALL.iter().map(|&c| (c, CheckTally::default())).collect();
    let mut counterexamples = Vec::new();
    let mut warnings = setup_failures;
    for o in single_outcomes.into_iter().chain(multi_outcomes) {
        warnings.extend(o.warnings);
        for (check, outcome) in o.results {
            let tally = tallies.entry(check).or_default();
            match outcome {
                Outcome::Pass => tally.passed += 1,
                Outcome::Skip => tally.skipped += 1,
                Outcome::Fail(c) => {
                    tally.failed += 1;
                    counterexamples.push(c);
                }
            }
        }
    }
    SuiteReport {
        tallies,
        counterexamples,
        warnings,
        single_line_inputs: singles.len(),
        multi_line_inputs: multis.len(),
        elapsed: start.elapsed(),
    }
}

/// Re-runs a counterexample's check on its recorded input; true when the
/// failure reproduces.
pub fn replay(c: &Counterexample, mutation: Option<Mutation>) -> bool {
    let cfg = SuiteConfig {
        mutation,
        families: GroupFamily::ALL.to_vec(),
        max_mu_terms: usize::MAX,
        ..SuiteConfig::default()
    };
    if validate_sp(&c.input).ok() && c.input.lines.len() == 1 && validate_tuple(&c.input.lines[0]).ok() {
        let single = check_single_line(&c.input.lines[0], &cfg);
        let multi = check_multi_line(&c.input, &cfg);
        single
            .results
            .iter()
            .chain(multi.results.iter())
            .any(|(check, o)| *check == c.check && matches!(o, Outcome::Fail(_)))
    } else {
        check_multi_line(&c.input, &cfg)
            .results
            .iter()
            .any(|(check, o)| *check == c.check && matches!(o, Outcome::Fail(_)))
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "inputs: {} single-line, {} multi-line",
            self.single_line_inputs, self.multi_line_inputs
        )?;
        for (check, t) in &self.tallies {
            write!(f, "{:<22} passed {:>6}  failed {:>4}", check.name(), t.passed, t.failed)?;
            if t.skipped > 0 {
                write!(f, "  skipped {}", t.skipped)?;
            }
            writeln!(f)?;
        }
        for c in &self.counterexamples {
            writeln!(f, "counterexample [{}]", c.check)?;
            for t in &c.input.lines {
                writeln!(f, "  {}: alpha = {}, tuple = {}", t.line.rho(), t.line.alpha(), t)?;
            }
            writeln!(f, "  expected: {}", c.expected)?;
            writeln!(f, "  actual:   {}", c.actual)?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        writeln!(f, "elapsed: {:.3}s", self.elapsed.as_secs_f64())?;
        write!(
            f,
            "{}",
            if self.passed() {
                "result: PASS".to_string()
            } else {
                format!("result: FAIL ({} failures)", self.failures())
            }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn tuple(alpha: Rational, entries: &[Rational]) -> SPTuple {
        SPTuple::new(CuspidalLine::new("rho", alpha), entries.to_vec())
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_mu_count(&tuple(q(1, 2), &[q(1, 2)])), 2);
        assert_eq!(brute_force_mu_count(&tuple(q(3, 2), &[q(1, 2), q(3, 2)])), 3);
        assert_eq!(brute_force_mu_count(&tuple(q(3, 2), &[q(-1, 2), q(1, 2)])), 1);
        assert_eq!(brute_force_mu_count(&tuple(q(0, 1), &[])), 1);
    }

    #[test]
    fn half_alpha_suite() {
        let cfg = SuiteConfig {
            alphas: vec![q(1, 2)],
            max_offset: 2,
            ..SuiteConfig::default()
        };
        let r = run_suite(&cfg);
        assert_eq!(r.single_line_inputs, 4);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn zero_alpha_suite() {
        let cfg = SuiteConfig {
            alphas: vec![q(0, 1)],
            ..SuiteConfig::default()
        };
        let r = run_suite(&cfg);
        assert_eq!(r.single_line_inputs, 1);
        assert!(r.passed(), "{r}");
        assert_eq!(r.tally(Check::CuspidalFixedPoint).passed, 1);
    }

    #[test]
    fn mutation_is_caught_and_replays() {
        let cfg = SuiteConfig {
            alphas: vec![q(3, 2)],
            max_offset: 2,
            samples: 20,
            mutation: Some(Mutation::TruncateClosedForm),
            ..SuiteConfig::default()
        };
        let r = run_suite(&cfg);
        assert!(!r.passed());
        assert!(r.tally(Check::DualRoutesAgree).failed > 0);
        for c in &r.counterexamples {
            assert!(replay(c, cfg.mutation), "{c:?}");
            assert!(!replay(c, None), "{c:?}");
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let cfg = SuiteConfig {
            samples: 50,
            seed: 7,
            max_offset: 2,
            max_mu_terms: 500,
            ..SuiteConfig::default()
        };
        let pools: Vec<_> = cfg
            .alphas
            .iter()
            .map(|a| {
                let line = CuspidalLine::new("rho", a.clone());
                (a.clone(), enumerate_sp(&line, &a.shift(2)).unwrap())
            })
            .collect();
        assert_eq!(sample_multi_line(&cfg, &pools), sample_multi_line(&cfg, &pools));
        let a = run_suite(&cfg);
        let b = run_suite(&cfg);
        assert_eq!(a.tallies, b.tallies);
        assert_eq!(a.counterexamples, b.counterexamples);
    }
}
