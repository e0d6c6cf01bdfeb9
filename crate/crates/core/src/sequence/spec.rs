//! Declarative sequence descriptions; also the JSON sequence file format.

use serde::{Deserialize, Serialize};

use super::lift::{inverse_seq, lift_div, lift_op, metric_d, representative, LiftOp};
use super::{constant_seq, cycle_seq, frozen_prefix_seq, gaussian_seq, BitPattern, Horizon, StateSequence};
use crate::error::{Error, Result};
use crate::notation::parse_compact;
use crate::state::LatticeSite;

/// What a frozen-prefix element holds at exponent `-n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// The pattern's own digits; every element is a basis state.
    None,
    /// `(|1> + |0>)/sqrt 2` on the real digit.
    #[default]
    Plain,
    /// `(|1,1> + |0,0>)/sqrt 2` on the real and imaginary digits.
    Bell,
    /// `(|1,0> + |0,1>)/sqrt 2` on the real and imaginary digits.
    AntiBell,
}

/// Values are compact state text and patterns are [`BitPattern`] text.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceSpec {
    Constant {
        value: String,
    },
    FrozenPrefix {
        s: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t: Option<String>,
        #[serde(default)]
        tail: Tail,
    },
    Gaussian {
        center: String,
        sigma: String,
        #[serde(default)]
        u: i64,
        #[serde(default = "default_max_bits")]
        max_bits: u32,
    },
    Cycle {
        values: Vec<String>,
    },
    Lifted {
        op: LiftOp,
        left: Box<SequenceSpec>,
        right: Box<SequenceSpec>,
    },
    Div {
        left: Box<SequenceSpec>,
        right: Box<SequenceSpec>,
    },
    Inverse {
        of: Box<SequenceSpec>,
        ell: u32,
    },
    Representative {
        of: Box<SequenceSpec>,
        ell: u32,
    },
    Metric {
        left: Box<SequenceSpec>,
        right: Box<SequenceSpec>,
        ell: u32,
    },
}

fn default_max_bits() -> u32 {
    super::DEFAULT_MAX_BITS
}

impl SequenceSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    /// Builds the sequence at `site`. `hz` supplies the probe horizon for
    /// the zero checks of division and inversion; representative-based
    /// specs carry their own accuracy.
    pub fn build(&self, site: LatticeSite, hz: &Horizon) -> Result<StateSequence> {
        let with_ell = |ell: u32| -> Result<Horizon> { Horizon::new(ell, hz.h_max, hz.window) };
        Ok(match self {
            SequenceSpec::Constant { value } => constant_seq(&parse_compact(value)?.at(site)),
            SequenceSpec::FrozenPrefix { s, t, tail } => {
                let s = BitPattern::parse(s)?;
                let t = t.as_deref().map(BitPattern::parse).transpose()?;
                frozen_prefix_seq(&s, t.as_ref(), *tail, site)
            }
            SequenceSpec::Gaussian { center, sigma, u, max_bits } => {
                let sigma = parse_compact(sigma)?;
                if !sigma.is_real() {
                    return Err(Error::BadSigma);
                }
                gaussian_seq(&BitPattern::parse(center)?, &sigma.re, *u, *max_bits, site)?
            }
            SequenceSpec::Cycle { values } => {
                if values.is_empty() {
                    return Err(Error::Record("cycle needs at least one value".into()));
                }
                let vals = values.iter().map(|v| parse_compact(v)).collect::<Result<Vec<_>, _>>()?;
                cycle_seq(&vals, site)
            }
            SequenceSpec::Lifted { op, left, right } => lift_op(*op, &left.build(site, hz)?, &right.build(site, hz)?),
            SequenceSpec::Div { left, right } => lift_div(&left.build(site, hz)?, &right.build(site, hz)?, hz)?,
            SequenceSpec::Inverse { of, ell } => inverse_seq(&of.build(site, hz)?, &with_ell(*ell)?)?,
            SequenceSpec::Representative { of, ell } => representative(&of.build(site, hz)?, &with_ell(*ell)?),
            SequenceSpec::Metric { left, right, ell } => {
                metric_d(&left.build(site, hz)?, &right.build(site, hz)?, &with_ell(*ell)?)
            }
        })
    }
}
