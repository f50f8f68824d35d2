//! JSON representation documents.
//!
//! ```json
//! {
//!   "group": "metaplectic",
//!   "cuspidal_support": "sigma_cusp",
//!   "lines": [{ "rho": "rho1", "alpha": "3/2", "tuple": ["1/2", "3/2"] }]
//! }
//! ```
//!
//! Rationals are always strings (`"p/q"` or `"p"`), never JSON numbers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{ParseRationalError, Rational};
use crate::types::{CuspidalLine, GroupFamily, SPRep, SPTuple, Segment, DEFAULT_CUSPIDAL_SUPPORT};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpecDocument {
    pub group: String,
    #[serde(default = "default_support")]
    pub cuspidal_support: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_character: Option<String>,
    #[serde(default)]
    pub lines: Vec<LineDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineDocument {
    pub rho: String,
    pub alpha: String,
    pub tuple: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentDocument {
    pub rho: String,
    pub lo: String,
    pub hi: String,
}

fn default_support() -> String {
    DEFAULT_CUSPIDAL_SUPPORT.to_string()
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown group `{0}` (expected `metaplectic` or `gspin_odd`)")]
    UnknownGroup(String),
    #[error("line {line} (`{rho}`): {source}")]
    Rational {
        line: usize,
        rho: String,
        source: ParseRationalError,
    },
}

impl RepSpecDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Converts to representation data. Only syntax is checked here;
    /// semantic problems are left for validation.
    pub fn to_rep(&self) -> Result<SPRep, DocumentError> {
        let family = GroupFamily::parse(&self.group)
            .ok_or_else(|| DocumentError::UnknownGroup(self.group.clone()))?;
        let mut rep = SPRep::new(family, self.cuspidal_support.clone());
        rep.central_character = self.central_character.clone();
        for (l, line) in self.lines.iter().enumerate() {
            let parse = |s: &str| {
                s.parse::<Rational>().map_err(|source| DocumentError::Rational {
                    line: l,
                    rho: line.rho.clone(),
                    source,
                })
            };
            let alpha = parse(&line.alpha)?;
            let entries = line
                .tuple
                .iter()
                .map(|s| parse(s))
                .collect::<Result<Vec<_>, _>>()?;
            rep.lines
                .push(SPTuple::new(CuspidalLine::new(line.rho.clone(), alpha), entries));
        }
        Ok(rep)
    }

    pub fn from_rep(rep: &SPRep) -> Self {
        RepSpecDocument {
            group: rep.family.as_str().to_string(),
            cuspidal_support: rep.cuspidal_support.clone(),
            central_character: rep.central_character.clone(),
            lines: rep
                .lines
                .iter()
                .map(|t| LineDocument {
                    rho: t.line.rho().to_string(),
                    alpha: t.line.alpha().to_string(),
                    tuple: t.entries.iter().map(ToString::to_string).collect(),
                })
                .collect(),
        }
    }
}

impl SegmentDocument {
    pub fn from_segment(s: &Segment) -> Option<Self> {
        let (lo, hi) = s.bounds()?;
        Some(SegmentDocument {
            rho: s.rho().to_string(),
            lo: lo.to_string(),
            hi: hi.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_document() {
        let doc = RepSpecDocument::parse(
            r#"{"group":"gspin_odd","central_character":"omega",
                "lines":[{"rho":"rho1","alpha":"3/2","tuple":["1/2","3/2"]}]}"#,
        )
        .unwrap();
        assert_eq!(doc.cuspidal_support, "sigma_cusp");
        let rep = doc.to_rep().unwrap();
        assert_eq!(rep.family, GroupFamily::GSpinOdd);
        assert_eq!(rep.lines[0].line.k(), 2);
        assert_eq!(RepSpecDocument::from_rep(&rep), doc);
    }

    #[test]
    fn float_rational_is_rejected_with_token() {
        let doc = RepSpecDocument::parse(
            r#"{"group":"metaplectic","lines":[{"rho":"r","alpha":"1.5","tuple":[]}]}"#,
        )
        .unwrap();
        let err = doc.to_rep().unwrap_err();
        assert!(err.to_string().contains("`1.5`"), "{err}");
    }

    #[test]
    fn numbers_are_not_rationals() {
        assert!(RepSpecDocument::parse(
            r#"{"group":"metaplectic","lines":[{"rho":"r","alpha":1.5,"tuple":[]}]}"#
        )
        .is_err());
    }

    #[test]
    fn unknown_group_rejected() {
        let doc = RepSpecDocument::parse(r#"{"group":"so_odd"}"#).unwrap();
        assert!(matches!(doc.to_rep(), Err(DocumentError::UnknownGroup(_))));
    }
}
