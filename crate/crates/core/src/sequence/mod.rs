//! Cauchy sequences of superpositions.
//!
//! A [`StateSequence`] is a total function from indices `n >= 1` to
//! normalized superpositions at one site. Generators cover constant
//! sequences, frozen-prefix sequences (with plain or Bell-type tails) and
//! the Gaussian family. The probe engine in [`probe`] checks the Cauchy
//! condition and the lifted relations on a finite horizon, and [`lift`]
//! provides field operations, representatives, the metric and the
//! diagonal inverse.

mod certificate;
mod complete;
mod gaussian;
pub mod lift;
mod pattern;
pub mod probe;
mod spec;

use std::fmt;
use std::sync::Arc;

pub use certificate::CauchyCertificate;
pub use complete::{diagonal_limit, DiagonalLimit, Grid};
pub use gaussian::{gaussian_seq, gaussian_weight, DEFAULT_MAX_BITS};
pub use lift::{inverse_seq, lift_div, lift_op, metric_d, representative, select_representative, LiftOp};
pub use pattern::BitPattern;
pub use probe::{
    cauchy_check, complex_order, is_equiv, pair_prob, seq_eq, seq_le, seq_lt, trichotomy, CauchyVerdict, GapVerdict,
    Horizon, ProbeRow, Refutation, Relation, Status, PROBABILITY_TOLERANCE, REFUTATION_MARGIN,
};
pub use spec::{SequenceSpec, Tail};

use crate::state::{LatticeSite, RealComponent, StringState};
use crate::superposition::{Amplitude, Superposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    Constant,
    FrozenPrefix,
    Bell,
    Gaussian,
    Lifted,
    Custom,
}

/// How a sequence was built. Two sequences with equal structured
/// provenance have the same elements up to their site.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Spec(SequenceSpec),
    Custom(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Spec(s) => write!(f, "{}", serde_json::to_string(s).map_err(|_| fmt::Error)?),
            Provenance::Custom(label) => f.write_str(label),
        }
    }
}

pub type ElementFn = Arc<dyn Fn(usize) -> Superposition + Send + Sync>;

#[derive(Clone)]
pub struct StateSequence {
    at: ElementFn,
    site: LatticeSite,
    kind: SequenceKind,
    provenance: Provenance,
    certificate: Option<CauchyCertificate>,
}

impl fmt::Debug for StateSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StateSequence")
            .field("site", &self.site)
            .field("kind", &self.kind)
            .field("provenance", &self.provenance)
            .field("certificate", &self.certificate)
            .finish()
    }
}

impl StateSequence {
    /// A sequence from an arbitrary element function. Elements are moved to
    /// `site`.
    pub fn custom<F>(label: impl Into<String>, site: LatticeSite, f: F) -> Self
    where
        F: Fn(usize) -> Superposition + Send + Sync + 'static,
    {
        StateSequence {
            at: Arc::new(f),
            site,
            kind: SequenceKind::Custom,
            provenance: Provenance::Custom(label.into()),
            certificate: None,
        }
    }

    pub(crate) fn from_parts(
        at: ElementFn,
        site: LatticeSite,
        kind: SequenceKind,
        provenance: Provenance,
        certificate: Option<CauchyCertificate>,
    ) -> Self {
        StateSequence { at, site, kind, provenance, certificate }
    }

    /// The `n`th element, `n >= 1`.
    pub fn at(&self, n: usize) -> Superposition {
        assert!(n >= 1, "sequence indices start at 1");
        let s = (self.at)(n);
        if s.site() == self.site {
            s
        } else {
            s.translate(self.site)
        }
    }

    pub fn site(&self) -> LatticeSite {
        self.site
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn certificate(&self) -> Option<&CauchyCertificate> {
        self.certificate.as_ref()
    }

    /// The [`SequenceSpec`] this sequence was built from, if any.
    pub fn spec(&self) -> Option<&SequenceSpec> {
        match &self.provenance {
            Provenance::Spec(s) => Some(s),
            Provenance::Custom(_) => None,
        }
    }

    /// The same sequence placed at another site.
    pub fn translate(&self, site: LatticeSite) -> Self {
        StateSequence { site, ..self.clone() }
    }

    /// The single state of a constant sequence.
    pub fn constant_value(&self) -> Option<StringState> {
        if self.kind == SequenceKind::Constant {
            self.at(1).as_basis().cloned()
        } else {
            None
        }
    }

    pub(crate) fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }
}

/// Smallest `m` with both components of `x` at most `2^m` in absolute value.
pub(crate) fn magnitude_exponent(x: &StringState) -> i64 {
    let comp = |c: &RealComponent| -> i64 {
        match (c.digits.top_set(), c.digits.lowest_set()) {
            (None, _) => i64::MIN / 4,
            (Some(t), Some(l)) if t == l => t,
            (Some(t), _) => t + 1,
        }
    };
    comp(&x.re).max(comp(&x.im)).max(-64)
}

/// `|x>` at every index; certified with witness 1.
pub fn constant_seq(x: &StringState) -> StateSequence {
    let x = crate::state::canonicalize(x);
    let site = x.site;
    let spec = SequenceSpec::Constant { value: x.to_string() };
    let cert = CauchyCertificate::Constant { magnitude: magnitude_exponent(&x) };
    let basis = Superposition::basis(x);
    StateSequence::from_parts(
        Arc::new(move |_| basis.clone()),
        site,
        SequenceKind::Constant,
        Provenance::Spec(spec),
        Some(cert),
    )
}

/// Frozen digits at exponents `0..=-(n-1)` followed by a tail at `-n`.
///
/// `s` gives the real digits and `t` (default all zeros) the imaginary
/// digits, both with their top digit at exponent 0. The tail decides what
/// sits at exponent `-n`; see [`Tail`].
///
/// ```
/// use qreal::sequence::{frozen_prefix_seq, BitPattern, Tail};
/// use qreal::LatticeSite;
///
/// let seq = frozen_prefix_seq(&BitPattern::zeros(), None, Tail::Plain, LatticeSite::default());
/// let mut texts: Vec<String> = seq.at(2).terms().map(|(s, _)| s.to_string()).collect();
/// texts.sort();
/// assert_eq!(texts, ["0+", "0+01"]);
/// ```
pub fn frozen_prefix_seq(s: &BitPattern, t: Option<&BitPattern>, tail: Tail, site: LatticeSite) -> StateSequence {
    let spec = SequenceSpec::FrozenPrefix { s: s.to_string(), t: t.map(|p| p.to_string()), tail };
    let kind = match tail {
        Tail::Bell | Tail::AntiBell => SequenceKind::Bell,
        Tail::None | Tail::Plain => SequenceKind::FrozenPrefix,
    };
    let s = s.clone();
    let t = t.cloned().unwrap_or_else(BitPattern::zeros);
    let at = move |n: usize| -> Superposition {
        let low = -(n as i64);
        let prefix = |p: &BitPattern, bit: bool| {
            let mut d = p.truncate(0, low + 1);
            if bit {
                d = crate::state::DigitString::from_exponents(d.set_exponents().chain([low]));
            }
            RealComponent::new(crate::state::Sign::Plus, d)
        };
        let state = |rb: bool, ib: bool| StringState::new(prefix(&s, rb), prefix(&t, ib), site);
        let pair = |a: StringState, b: StringState| {
            let h = Amplitude::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            Superposition::new(site, [(a, h), (b, h)]).expect("two distinct unit-weight terms")
        };
        let (sn, tn) = (s.digit(n), t.digit(n));
        match tail {
            Tail::None => Superposition::basis(state(sn, tn)),
            Tail::Plain => pair(state(true, tn), state(false, tn)),
            Tail::Bell => pair(state(true, true), state(false, false)),
            Tail::AntiBell => pair(state(true, false), state(false, true)),
        }
    };
    StateSequence::from_parts(
        Arc::new(at),
        site,
        kind,
        Provenance::Spec(spec),
        Some(CauchyCertificate::FrozenPrefix { magnitude: 1 }),
    )
}

/// The values in turn, repeating: `values[(n - 1) % len]`.
pub fn cycle_seq(values: &[StringState], site: LatticeSite) -> StateSequence {
    assert!(!values.is_empty(), "cycle needs at least one value");
    let spec = SequenceSpec::Cycle { values: values.iter().map(|v| v.to_string()).collect() };
    let values: Vec<Superposition> = values.iter().map(|v| Superposition::basis(v.clone().at(site))).collect();
    StateSequence::from_parts(
        Arc::new(move |n| values[(n - 1) % values.len()].clone()),
        site,
        SequenceKind::Custom,
        Provenance::Spec(spec),
        None,
    )
}
