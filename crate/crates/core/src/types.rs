//! Domain vocabulary: cuspidal lines, segments, classification tuples and
//! Langlands data.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::classify::ValidationReport;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("segment [{lo}, {hi}] has non-integral or negative length")]
    SegmentShape { lo: Rational, hi: Rational },
    #[error("e(δ) is undefined for the empty segment")]
    EmptySegment,
    #[error("Langlands data must consist of nonempty segments with e < 0 (offending: {0})")]
    NotLanglands(String),
    #[error("{value} is not on the lattice {alpha} + Z")]
    Lattice { value: Rational, alpha: Rational },
    #[error("maximum exponent {max} is below alpha - 1 = {floor}")]
    BelowRange { max: Rational, floor: Rational },
    #[error("expected a tuple of length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("invalid representation data:\n{0}")]
    Invalid(Box<ValidationReport>),
}

/// Label used when no partial cuspidal support is named.
pub const DEFAULT_CUSPIDAL_SUPPORT: &str = "sigma_cusp";

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which family of groups the data lives on. The tag only affects how
/// contragredience is described; exponent arithmetic is identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupFamily {
    Metaplectic,
    GSpinOdd,
}

impl GroupFamily {
    pub const ALL: [GroupFamily; 2] = [GroupFamily::Metaplectic, GroupFamily::GSpinOdd];

    /// Document spelling: `metaplectic` or `gspin_odd`.
    pub fn as_str(self) -> &'static str {
        match self {
            GroupFamily::Metaplectic => "metaplectic",
            GroupFamily::GSpinOdd => "gspin_odd",
        }
    }

    pub fn parse(s: &str) -> Option<GroupFamily> {
        match s {
            "metaplectic" | "mp" => Some(GroupFamily::Metaplectic),
            "gspin_odd" | "gspin" => Some(GroupFamily::GSpinOdd),
            _ => None,
        }
    }

    /// The self-contragredience condition satisfied by each cuspidal `rho`.
    pub fn contragredience(self, rho: &str, central_character: Option<&str>) -> String {
        match self {
            GroupFamily::Metaplectic => format!("{rho} ~ alpha * {rho}^vee"),
            GroupFamily::GSpinOdd => {
                let omega = central_character.unwrap_or("omega");
                format!("{rho} ~ {omega} * {rho}^vee")
            }
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A cuspidal `rho` together with its reducibility point `alpha` against the
/// fixed partial cuspidal support. `k` is `ceil(alpha)`, clamped at zero for
/// (invalid) negative `alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CuspidalLine {
    rho: String,
    alpha: Rational,
    k: usize,
}

impl CuspidalLine {
    pub fn new(rho: impl Into<String>, alpha: Rational) -> Self {
        let c = alpha.ceil();
        let k = if c.is_negative() {
            0
        } else {
            c.to_usize().expect("reducibility point too large")
        };
        CuspidalLine {
            rho: rho.into(),
            alpha,
            k,
        }
    }

    pub fn rho(&self) -> &str {
        &self.rho
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Start exponent `alpha - k + i` of the i-th (1-based) inducing segment.
    pub fn segment_start(&self, i: usize) -> Rational {
        self.alpha.shift(i as i64 - self.k as i64)
    }

    /// The entry value `alpha - k + i - 1` that encodes an empty i-th segment.
    pub fn empty_value(&self, i: usize) -> Rational {
        self.alpha.shift(i as i64 - self.k as i64 - 1)
    }

    /// `(alpha - k, ..., alpha - 1)`: the tuple of the cuspidal datum.
    pub fn all_empty(&self) -> Vec<Rational> {
        (1..=self.k).map(|i| self.empty_value(i)).collect()
    }
}

/// A segment `[nu^lo rho, nu^hi rho]`, or the explicit empty segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Segment {
    Empty { rho: String },
    Span { rho: String, lo: Rational, hi: Rational },
}

impl Segment {
    /// Builds `[lo, hi]`. `lo = hi + 1` gives the empty segment; any other
    /// non-integral or negative length is rejected.
    pub fn new(rho: impl Into<String>, lo: Rational, hi: Rational) -> Result<Segment> {
        match hi.steps_from(&lo) {
            Some(d) if d >= 0 => Ok(Segment::Span {
                rho: rho.into(),
                lo,
                hi,
            }),
            Some(-1) => Ok(Segment::Empty { rho: rho.into() }),
            _ => Err(Error::SegmentShape { lo, hi }),
        }
    }

    pub fn rho(&self) -> &str {
        match self {
            Segment::Empty { rho } | Segment::Span { rho, .. } => rho,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Segment::Empty { .. })
    }

    pub fn bounds(&self) -> Option<(&Rational, &Rational)> {
        match self {
            Segment::Empty { .. } => None,
            Segment::Span { lo, hi, .. } => Some((lo, hi)),
        }
    }

    /// `e(delta([lo, hi])) = (lo + hi) / 2`.
    pub fn e(&self) -> Result<Rational> {
        match self {
            Segment::Empty { .. } => Err(Error::EmptySegment),
            Segment::Span { lo, hi, .. } => Ok((lo + hi).half()),
        }
    }

    /// Exponents `lo, lo + 1, ..., hi`.
    pub fn exponents(&self) -> Vec<Rational> {
        match self {
            Segment::Empty { .. } => Vec::new(),
            Segment::Span { lo, hi, .. } => {
                let n = hi.steps_from(lo).expect("segment length is integral");
                (0..=n).map(|t| lo.shift(t)).collect()
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Segment::Empty { .. } => 0,
            Segment::Span { lo, hi, .. } => hi.steps_from(lo).unwrap_or(0) as usize + 1,
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Segment::Empty { rho } => write!(f, "d(empty;{rho})"),
            Segment::Span { rho, lo, hi } => write!(f, "d([{lo},{hi}];{rho})"),
        }
    }
}

/// Canonical order on nonempty segments: `e` ascending, then `rho` label,
/// then `lo`. Empty segments sort last.
pub fn segment_order(a: &Segment, b: &Segment) -> Ordering {
    match (a, b) {
        (Segment::Empty { rho: ra }, Segment::Empty { rho: rb }) => ra.cmp(rb),
        (Segment::Empty { .. }, _) => Ordering::Greater,
        (_, Segment::Empty { .. }) => Ordering::Less,
        (
            Segment::Span {
                rho: ra,
                lo: la,
                hi: ha,
            },
            Segment::Span {
                rho: rb,
                lo: lb,
                hi: hb,
            },
        ) => (la + ha)
            .cmp(&(lb + hb))
            .then_with(|| ra.cmp(rb))
            .then_with(|| la.cmp(lb)),
    }
}

pub fn sort_segments(segments: &mut [Segment]) {
    segments.sort_by(segment_order);
}

pub fn is_sorted_by_e(segments: &[Segment]) -> bool {
    segments
        .windows(2)
        .all(|w| segment_order(&w[0], &w[1]) != Ordering::Greater)
}

/// One classification tuple `(a_1, ..., a_k)` on a cuspidal line. Entries
/// are not checked on construction; see [`crate::classify::validate_tuple`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SPTuple {
    pub line: CuspidalLine,
    pub entries: Vec<Rational>,
}

impl SPTuple {
    pub fn new(line: CuspidalLine, entries: Vec<Rational>) -> Self {
        SPTuple { line, entries }
    }

    /// The tuple encoding the cuspidal datum on `line`.
    pub fn cuspidal(line: CuspidalLine) -> Self {
        let entries = line.all_empty();
        SPTuple { line, entries }
    }

    pub fn is_all_empty(&self) -> bool {
        self.entries == self.line.all_empty()
    }

    pub fn with_entries(&self, entries: Vec<Rational>) -> SPTuple {
        SPTuple {
            line: self.line.clone(),
            entries,
        }
    }
}

impl fmt::Display for SPTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Strongly positive representation datum: one tuple per cuspidal line
/// over a partial cuspidal support. No lines (or only all-empty tuples)
/// means the cuspidal representation itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SPRep {
    pub family: GroupFamily,
    pub lines: Vec<SPTuple>,
    pub cuspidal_support: String,
    pub central_character: Option<String>,
}

impl SPRep {
    pub fn new(family: GroupFamily, cuspidal_support: impl Into<String>) -> Self {
        SPRep {
            family,
            lines: Vec::new(),
            cuspidal_support: cuspidal_support.into(),
            central_character: None,
        }
    }

    pub fn with_line(mut self, line: SPTuple) -> Self {
        self.lines.push(line);
        self
    }

    pub fn with_central_character(mut self, label: impl Into<String>) -> Self {
        self.central_character = Some(label.into());
        self
    }

    pub fn is_cuspidal(&self) -> bool {
        self.lines.iter().all(SPTuple::is_all_empty)
    }

    /// Same numeric data, different family tag.
    pub fn in_family(&self, family: GroupFamily) -> SPRep {
        SPRep {
            family,
            ..self.clone()
        }
    }
}

/// Inducing data `L(delta_1 x ... x delta_m x| sigma_cusp)` of a
/// non-tempered representation: nonempty segments, `e`-sorted, all `e < 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LanglandsData {
    segments: Vec<Segment>,
    pub cuspidal_support: String,
    pub family: GroupFamily,
    pub central_character: Option<String>,
}

impl LanglandsData {
    /// Sorts `segments` canonically and checks the Langlands shape.
    pub fn new(
        mut segments: Vec<Segment>,
        cuspidal_support: impl Into<String>,
        family: GroupFamily,
        central_character: Option<String>,
    ) -> Result<Self> {
        for s in &segments {
            match s.e() {
                Ok(e) if e.is_negative() => {}
                _ => return Err(Error::NotLanglands(s.to_string())),
            }
        }
        sort_segments(&mut segments);
        Ok(LanglandsData {
            segments,
            cuspidal_support: cuspidal_support.into(),
            family,
            central_character,
        })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_cuspidal(&self) -> bool {
        self.segments.is_empty()
    }
}

/// Multiset of exponents, stored as value -> multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ExponentMultiset(BTreeMap<Rational, usize>);

impl ExponentMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, x: Rational) {
        *self.0.entry(x).or_insert(0) += 1;
    }

    pub fn extend<I: IntoIterator<Item = Rational>>(&mut self, xs: I) {
        for x in xs {
            self.insert(x);
        }
    }

    /// Multiset union (sum of multiplicities).
    pub fn union(&self, other: &ExponentMultiset) -> ExponentMultiset {
        let mut out = self.clone();
        for (x, n) in &other.0 {
            *out.0.entry(x.clone()).or_insert(0) += n;
        }
        out
    }

    pub fn negated(&self) -> ExponentMultiset {
        ExponentMultiset(self.0.iter().map(|(x, n)| (-x, *n)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, x: &Rational) -> usize {
        self.0.get(x).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rational, usize)> {
        self.0.iter().map(|(x, n)| (x, *n))
    }
}

impl FromIterator<Rational> for ExponentMultiset {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        let mut m = ExponentMultiset::new();
        m.extend(iter);
        m
    }
}

impl fmt::Display for ExponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (x, n) in self.iter() {
            for _ in 0..n {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                write!(f, "{x}")?;
            }
        }
        f.write_str("}")
    }
}
