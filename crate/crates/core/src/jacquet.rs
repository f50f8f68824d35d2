//! Jacquet module expansion `mu*` of strongly positive data.
//!
//! For a single cuspidal line with tuple `a`, `mu*(sigma_a)` is the sum over
//! strictly increasing `b` with `alpha - k + i - 1 <= b_i <= a_i` of
//! `L(delta([b_1 + 1, a_1]) x ... x delta([b_k + 1, a_k])) (x) sigma_b`.
//! Several lines are expanded independently and multiplied out.

use std::fmt;

use crate::classify::{validate_sp, validate_tuple};
use crate::rational::Rational;
use crate::types::{sort_segments, Error, DEFAULT_CUSPIDAL_SUPPORT, GroupFamily, Result, SPRep, SPTuple, Segment};

/// One summand `GL factor (x) strongly positive factor`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MuStarTerm {
    /// Langlands data of the GL factor, `e`-sorted, nonempty segments only.
    pub gl_part: Vec<Segment>,
    pub sp_part: SPRep,
    pub multiplicity: u32,
}

impl fmt::Display for MuStarTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicity != 1 {
            write!(f, "{} * ", self.multiplicity)?;
        }
        if self.gl_part.is_empty() {
            f.write_str("1")?;
        } else {
            f.write_str("L( ")?;
            for (i, s) in self.gl_part.iter().enumerate() {
                if i > 0 {
                    f.write_str(" x ")?;
                }
                write!(f, "{s}")?;
            }
            f.write_str(" )")?;
        }
        write!(f, " (x) {}", crate::cli::render::sp_factor_text(&self.sp_part))
    }
}

/// The term indexed by `b`, or `None` when `b` is outside the box or not
/// strictly increasing. The factor lives over the default support label.
pub fn term_for_b(t: &SPTuple, b: &[Rational]) -> Result<Option<MuStarTerm>> {
    term_for_b_in(t, b, DEFAULT_CUSPIDAL_SUPPORT, GroupFamily::Metaplectic)
}

pub fn term_for_b_in(
    t: &SPTuple,
    b: &[Rational],
    support: &str,
    family: GroupFamily,
) -> Result<Option<MuStarTerm>> {
    validate_tuple(t).into_result()?;
    if b.len() != t.entries.len() {
        return Err(Error::LengthMismatch {
            expected: t.entries.len(),
            actual: b.len(),
        });
    }
    let line = &t.line;
    let in_box = b.iter().zip(&t.entries).enumerate().all(|(p, (bi, ai))| {
        bi.same_lattice(line.alpha()) && *bi >= line.empty_value(p + 1) && bi <= ai
    });
    let increasing = b.windows(2).all(|w| w[0] < w[1]);
    if !(in_box && increasing) {
        return Ok(None);
    }
    Ok(Some(build_term(t, b, support, family)))
}

fn build_term(t: &SPTuple, b: &[Rational], support: &str, family: GroupFamily) -> MuStarTerm {
    let mut gl_part: Vec<Segment> = b
        .iter()
        .zip(&t.entries)
        .map(|(bi, ai)| {
            Segment::new(t.line.rho(), bi.shift(1), ai.clone()).expect("b_i <= a_i on lattice")
        })
        .filter(|s| !s.is_empty())
        .collect();
    sort_segments(&mut gl_part);
    MuStarTerm {
        gl_part,
        sp_part: SPRep::new(family, support).with_line(t.with_entries(b.to_vec())),
        multiplicity: 1,
    }
}

/// `mu*` of one line, terms in lexicographic `b` order.
pub fn mu_star_line(t: &SPTuple, support: &str, family: GroupFamily) -> Result<Vec<MuStarTerm>> {
    validate_tuple(t).into_result()?;
    let mut terms = Vec::new();
    let mut b = Vec::with_capacity(t.entries.len());
    fill_b(t, &mut b, &mut |b| terms.push(build_term(t, b, support, family)));
    Ok(terms)
}

/// Admissible `b` tuples of one line, lexicographic.
pub fn b_tuples(t: &SPTuple) -> Result<Vec<Vec<Rational>>> {
    validate_tuple(t).into_result()?;
    let mut out = Vec::new();
    let mut b = Vec::with_capacity(t.entries.len());
    fill_b(t, &mut b, &mut |b| out.push(b.to_vec()));
    Ok(out)
}

fn fill_b(t: &SPTuple, b: &mut Vec<Rational>, emit: &mut dyn FnMut(&[Rational])) {
    let i = b.len() + 1;
    if i > t.entries.len() {
        emit(b);
        return;
    }
    let mut lo = t.line.empty_value(i);
    if let Some(prev) = b.last() {
        if *prev >= lo {
            lo = prev.shift(1);
        }
    }
    let hi = &t.entries[i - 1];
    let mut x = lo;
    while x <= *hi {
        b.push(x.clone());
        fill_b(t, b, emit);
        b.pop();
        x = x.shift(1);
    }
}

/// `mu*` of a full datum: the product of the per-line expansions.
pub fn mu_star(rep: &SPRep) -> Result<Vec<MuStarTerm>> {
    validate_sp(rep).into_result()?;
    let mut acc = vec![MuStarTerm {
        gl_part: Vec::new(),
        sp_part: SPRep {
            lines: Vec::new(),
            ..rep.clone()
        },
        multiplicity: 1,
    }];
    for t in &rep.lines {
        let factors = mu_star_line(t, &rep.cuspidal_support, rep.family)?;
        acc = acc
            .iter()
            .flat_map(|left| {
                factors.iter().map(move |right| {
                    let mut gl_part = left.gl_part.clone();
                    gl_part.extend(right.gl_part.iter().cloned());
                    sort_segments(&mut gl_part);
                    let mut sp_part = left.sp_part.clone();
                    sp_part.lines.extend(right.sp_part.lines.iter().cloned());
                    MuStarTerm {
                        gl_part,
                        sp_part,
                        multiplicity: left.multiplicity * right.multiplicity,
                    }
                })
            })
            .collect();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{inducing_segments, line_support};
    use crate::rational::q;
    use crate::types::{CuspidalLine, ExponentMultiset};

    fn tuple(rho: &str, alpha: Rational, entries: &[Rational]) -> SPTuple {
        SPTuple::new(CuspidalLine::new(rho, alpha), entries.to_vec())
    }

    fn seg(lo: Rational, hi: Rational) -> Segment {
        Segment::new("rho", lo, hi).unwrap()
    }

    #[test]
    fn single_entry_line() {
        let t = tuple("rho", q(1, 2), &[q(1, 2)]);
        let terms = mu_star_line(&t, "sigma_cusp", GroupFamily::Metaplectic).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].sp_part.lines[0].entries, vec![q(-1, 2)]);
        assert_eq!(terms[0].gl_part, vec![seg(q(1, 2), q(1, 2))]);
        assert!(terms[0].sp_part.is_cuspidal());
        assert_eq!(terms[1].sp_part.lines[0].entries, vec![q(1, 2)]);
        assert!(terms[1].gl_part.is_empty());
    }

    #[test]
    fn two_entry_line() {
        let t = tuple("rho", q(3, 2), &[q(1, 2), q(3, 2)]);
        let terms = mu_star_line(&t, "s", GroupFamily::Metaplectic).unwrap();
        let bs: Vec<_> = terms
            .iter()
            .map(|x| x.sp_part.lines[0].entries.clone())
            .collect();
        assert_eq!(
            bs,
            vec![
                vec![q(-1, 2), q(1, 2)],
                vec![q(-1, 2), q(3, 2)],
                vec![q(1, 2), q(3, 2)]
            ]
        );
        assert_eq!(
            terms[0].gl_part,
            vec![seg(q(1, 2), q(1, 2)), seg(q(3, 2), q(3, 2))]
        );
        assert_eq!(terms[1].gl_part, vec![seg(q(1, 2), q(1, 2))]);
        assert!(terms[2].gl_part.is_empty());
    }

    #[test]
    fn cuspidal_line_has_single_term() {
        let t = tuple("rho", q(3, 2), &[q(-1, 2), q(1, 2)]);
        let terms = mu_star_line(&t, "s", GroupFamily::Metaplectic).unwrap();
        assert_eq!(terms.len(), 1);
        assert!(terms[0].gl_part.is_empty());
        assert!(terms[0].sp_part.is_cuspidal());
    }

    #[test]
    fn term_for_b_examples() {
        let t = tuple("rho", q(3, 2), &[q(1, 2), q(3, 2)]);
        let term = term_for_b(&t, &[q(-1, 2), q(3, 2)]).unwrap().unwrap();
        assert_eq!(term.gl_part, vec![seg(q(1, 2), q(1, 2))]);
        assert_eq!(term.sp_part.lines[0].entries, vec![q(-1, 2), q(3, 2)]);
        assert_eq!(term_for_b(&t, &[q(1, 2), q(1, 2)]).unwrap(), None);
        assert_eq!(term_for_b(&t, &[q(-3, 2), q(1, 2)]).unwrap(), None);
        let top = term_for_b(&t, &t.entries).unwrap().unwrap();
        assert!(top.gl_part.is_empty());
        assert_eq!(top.sp_part.lines[0], t);
        assert!(matches!(
            term_for_b(&t, &[q(1, 2)]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn product_over_lines() {
        let rep = SPRep::new(GroupFamily::Metaplectic, "s")
            .with_line(tuple("rho1", q(1, 2), &[q(1, 2)]))
            .with_line(tuple("rho2", q(3, 2), &[q(1, 2), q(3, 2)]));
        let terms = mu_star(&rep).unwrap();
        assert_eq!(terms.len(), 6);
        assert!(terms.iter().all(|t| t.multiplicity == 1));
        assert!(terms.iter().all(|t| t.sp_part.lines.len() == 2));

        let single = SPRep::new(GroupFamily::Metaplectic, "s")
            .with_line(tuple("rho", q(3, 2), &[q(1, 2), q(3, 2)]));
        assert_eq!(
            mu_star(&single).unwrap(),
            mu_star_line(&single.lines[0], "s", GroupFamily::Metaplectic).unwrap()
        );

        let cusp = SPRep::new(GroupFamily::GSpinOdd, "s");
        let terms = mu_star(&cusp).unwrap();
        assert_eq!(terms.len(), 1);
        assert!(terms[0].gl_part.is_empty() && terms[0].sp_part.lines.is_empty());
    }

    #[test]
    fn extreme_terms_and_bookkeeping() {
        for alpha in [q(1, 2), q(2, 1), q(5, 2)] {
            let line = CuspidalLine::new("rho", alpha.clone());
            for t in crate::classify::enumerate_sp(&line, &alpha.shift(3)).unwrap() {
                let terms = mu_star_line(&t, "s", GroupFamily::Metaplectic).unwrap();
                let top = terms.last().unwrap();
                assert!(top.gl_part.is_empty());
                assert_eq!(top.sp_part.lines[0], t);
                let bottom = &terms[0];
                assert!(bottom.sp_part.is_cuspidal());
                assert_eq!(bottom.gl_part, inducing_segments(&t).unwrap());
                let whole = line_support(&t).unwrap();
                for term in &terms {
                    let gl: ExponentMultiset =
                        term.gl_part.iter().flat_map(Segment::exponents).collect();
                    let sp = line_support(&term.sp_part.lines[0]).unwrap();
                    assert_eq!(gl.union(&sp), whole);
                }
            }
        }
    }

    #[test]
    fn chain_consistency() {
        let alpha = q(2, 1);
        let line = CuspidalLine::new("rho", alpha.clone());
        for a in crate::classify::enumerate_sp(&line, &alpha.shift(3)).unwrap() {
            let from_a = b_tuples(&a).unwrap();
            for b in &from_a {
                for c in b_tuples(&a.with_entries(b.clone())).unwrap() {
                    assert!(from_a.contains(&c), "{a}: {b:?} -> {c:?}");
                }
            }
        }
    }
}
