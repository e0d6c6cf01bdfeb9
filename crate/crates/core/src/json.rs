//! Machine-readable records for states, superpositions and probe reports.
//!
//! ```
//! use qreal::json::StateRecord;
//!
//! let s = "110+1;1-".parse().unwrap();
//! let rec = StateRecord::from_state(&s);
//! assert_eq!(rec.value, "6.5-1i");
//! let text = serde_json::to_string(&rec).unwrap();
//! let back: StateRecord = serde_json::from_str(&text).unwrap();
//! assert_eq!(back.to_state().unwrap(), s);
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::notation::parse_compact;
use crate::sequence::{CauchyVerdict, GapVerdict, ProbeRow, Refutation, Status};
use crate::state::{eigenvalue, LatticeSite, StringState};
use crate::superposition::{Amplitude, Superposition};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    /// Canonical compact text.
    pub text: String,
    /// Exact decimal value; informative only.
    pub value: String,
    #[serde(default)]
    pub site: LatticeSite,
}

impl StateRecord {
    pub fn from_state(s: &StringState) -> Self {
        StateRecord { text: s.to_string(), value: eigenvalue(s).to_string(), site: s.site }
    }

    pub fn to_state(&self) -> Result<StringState> {
        Ok(parse_compact(&self.text)?.at(self.site))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub state: String,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionRecord {
    #[serde(default)]
    pub site: LatticeSite,
    pub terms: Vec<TermRecord>,
}

impl SuperpositionRecord {
    pub fn from_superposition(psi: &Superposition) -> Self {
        let terms = psi.terms().map(|(s, a)| TermRecord { state: s.to_string(), re: a.re, im: a.im }).collect();
        SuperpositionRecord { site: psi.site(), terms }
    }

    pub fn to_superposition(&self) -> Result<Superposition> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((parse_compact(&t.state)?, Amplitude::new(t.re, t.im))))
            .collect::<Result<Vec<_>>>()?;
        Superposition::new(self.site, terms)
    }
}

/// A verdict with the probes behind it; the rows are `(ell, h, j, k, P)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub subject: String,
    pub status: Status,
    #[serde(default)]
    pub witness: BTreeMap<u32, usize>,
    #[serde(default)]
    pub gap: Option<(u32, usize)>,
    #[serde(default)]
    pub refutation: Option<Refutation>,
    #[serde(default)]
    pub rows: Vec<ProbeRow>,
}

impl ProbeReport {
    pub fn from_cauchy(subject: impl Into<String>, v: &CauchyVerdict) -> Self {
        ProbeReport {
            subject: subject.into(),
            status: v.status,
            witness: v.witness.clone(),
            gap: None,
            refutation: v.refutation,
            rows: v.probes.clone(),
        }
    }

    pub fn from_gap(subject: impl Into<String>, v: &GapVerdict) -> Self {
        ProbeReport {
            subject: subject.into(),
            status: v.status,
            witness: BTreeMap::new(),
            gap: v.witness,
            refutation: None,
            rows: v.probes.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{cauchy_check, cycle_seq, Horizon};

    #[test]
    fn superposition_round_trip() {
        let site = LatticeSite::new(2, -1);
        let psi = Superposition::uniform(site, ["1+".parse().unwrap(), "0+;1-".parse().unwrap()]).unwrap();
        let rec = SuperpositionRecord::from_superposition(&psi);
        let text = serde_json::to_string(&rec).unwrap();
        let back: SuperpositionRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_superposition().unwrap(), psi);
    }

    #[test]
    fn report_round_trip() {
        let seq = cycle_seq(&["0+".parse().unwrap(), "1+".parse().unwrap()], LatticeSite::default());
        let v = cauchy_check(&seq, &Horizon::new(2, 4, 2).unwrap());
        let rep = ProbeReport::from_cauchy("alternating", &v);
        assert!(!rep.rows.is_empty());
        let text = serde_json::to_string(&rep).unwrap();
        assert!(text.contains(r#""status":"refuted""#));
        let back: ProbeReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rep);
    }
}
