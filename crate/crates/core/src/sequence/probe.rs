//! Finite-horizon checks of the Cauchy condition and of the lifted
//! relations between sequences.
//!
//! The Cauchy condition asks, for every accuracy `ell`, for an index `h`
//! past which every pair of elements agrees within `2^-ell` with
//! probability 1. On a horizon `(ell_max, h_max, window)` the engine looks,
//! for each `ell <= ell_max`, for the first `h <= h_max` such that every
//! pair `j, k` in `(h, h + window]` reaches probability 1 (within
//! [`PROBABILITY_TOLERANCE`]) and the last window `(h_max, h_max + window]`
//! does too. Sequences with an analytic certificate skip the probes.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{constant_seq, Provenance, StateSequence};
use crate::arith::{abs_a, lt_a_real, sub_a, Accuracy, Part};
use crate::error::{Error, Result};
use crate::index::{Test, ValueIndex};
use crate::state::StringState;
use crate::superposition::{direct_mass, leq_with_gap, lt_with_gap, pair_probability, Superposition, DIRECT_LIMIT};

/// A probability counts as 1 when it is at least `1 - PROBABILITY_TOLERANCE`.
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;

/// A failing accuracy is refuted when the worst probability in the last
/// window is no better than in the first and at most `1 - REFUTATION_MARGIN`.
pub const REFUTATION_MARGIN: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Horizon {
    pub ell_max: u32,
    pub h_max: usize,
    pub window: usize,
}

impl Horizon {
    pub fn new(ell_max: u32, h_max: usize, window: usize) -> Result<Self> {
        if ell_max == 0 || h_max == 0 {
            return Err(Error::BadHorizon("all entries must be positive".into()));
        }
        if window < 2 {
            return Err(Error::BadHorizon("window must be at least 2".into()));
        }
        Ok(Horizon { ell_max, h_max, window })
    }

    /// Number of elements the probes touch.
    pub fn extent(&self) -> usize {
        self.h_max + self.window
    }
}

impl Default for Horizon {
    fn default() -> Self {
        Horizon { ell_max: 8, h_max: 32, window: 8 }
    }
}

impl FromStr for Horizon {
    type Err = Error;
    /// `ell_max,h_max,window`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::BadHorizon(format!("expected ell_max,h_max,window, got '{s}'"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let ell = parts[0].parse().map_err(|_| bad())?;
        let h = parts[1].parse().map_err(|_| bad())?;
        let w = parts[2].parse().map_err(|_| bad())?;
        Horizon::new(ell, h, w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// An analytic witness covers every accuracy.
    Certified,
    /// Every probe on the horizon passed.
    Supported,
    /// Some accuracy fails with probability stuck away from 1.
    Refuted,
    /// The horizon ran out without a decision.
    Inconclusive,
}

impl Status {
    pub fn holds(self) -> bool {
        matches!(self, Status::Certified | Status::Supported)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Refutation {
    pub ell: u32,
    pub j: usize,
    pub k: usize,
    pub probability: f64,
}

/// One evaluated probability.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub ell: u32,
    pub h: usize,
    pub j: usize,
    pub k: usize,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchyVerdict {
    pub status: Status,
    /// `ell -> h`; present when the status holds.
    pub witness: BTreeMap<u32, usize>,
    pub refutation: Option<Refutation>,
    #[serde(skip)]
    pub probes: Vec<ProbeRow>,
}

impl CauchyVerdict {
    pub fn holds(&self) -> bool {
        self.status.holds()
    }

    fn certified(hz: &Horizon, witness: impl Fn(u32) -> usize) -> Self {
        CauchyVerdict {
            status: Status::Certified,
            witness: (1..=hz.ell_max).map(|l| (l, witness(l))).collect(),
            refutation: None,
            probes: Vec::new(),
        }
    }
}

/// Result of a strict-order search: the accuracy and index of the gap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapVerdict {
    pub status: Status,
    pub witness: Option<(u32, usize)>,
    #[serde(skip)]
    pub probes: Vec<ProbeRow>,
}

impl GapVerdict {
    pub fn holds(&self) -> bool {
        self.status.holds()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Lt,
    Eq,
    Gt,
    Inconclusive,
}

/// Elements `1..=count` generated once, with value tables built on demand.
pub(crate) struct Elements {
    items: Vec<Superposition>,
    by_re: Vec<OnceCell<ValueIndex>>,
    by_im: Vec<OnceCell<ValueIndex>>,
}

impl Elements {
    pub(crate) fn new(seq: &StateSequence, count: usize) -> Self {
        let items: Vec<_> = (1..=count).map(|n| seq.at(n)).collect();
        let by_re = (0..count).map(|_| OnceCell::new()).collect();
        let by_im = (0..count).map(|_| OnceCell::new()).collect();
        Elements { items, by_re, by_im }
    }

    pub(crate) fn get(&self, n: usize) -> &Superposition {
        &self.items[n - 1]
    }

    fn index(&self, n: usize, by_imaginary: bool) -> &ValueIndex {
        let cells = if by_imaginary { &self.by_im } else { &self.by_re };
        cells[n - 1].get_or_init(|| ValueIndex::new(&self.items[n - 1], by_imaginary))
    }
}

fn mass(a: &Elements, j: usize, b: &Elements, k: usize, acc: Accuracy, part: Part, test: Test) -> f64 {
    let (x, y) = (a.get(j), b.get(k));
    if x.len() * y.len() <= DIRECT_LIMIT {
        direct_mass(x, y, acc, part, test)
    } else {
        let key = ValueIndex::key_for(part);
        crate::index::pair_mass(a.index(j, key), b.index(k, key), acc, part, test)
    }
}

struct Probe<'a> {
    a: &'a Elements,
    b: &'a Elements,
    part: Part,
    test: Test,
    hz: Horizon,
    rows: Vec<ProbeRow>,
}

impl Probe<'_> {
    fn eval(&mut self, ell: u32, h: usize, j: usize, k: usize) -> f64 {
        let acc = Accuracy::new(ell).expect("ell >= 1");
        let p = mass(self.a, j, self.b, k, acc, self.part, self.test);
        self.rows.push(ProbeRow { ell, h, j, k, probability: p });
        p
    }

    fn pairs(&self, h: usize) -> impl Iterator<Item = (usize, usize)> {
        let w = self.hz.window;
        (h + 1..=h + w).flat_map(move |j| (h + 1..=h + w).map(move |k| (j, k)))
    }

    fn window_passes(&mut self, ell: u32, h: usize) -> bool {
        let pairs: Vec<_> = self.pairs(h).collect();
        pairs.into_iter().all(|(j, k)| self.eval(ell, h, j, k) >= 1.0 - PROBABILITY_TOLERANCE)
    }

    fn window_min(&mut self, ell: u32, h: usize) -> Refutation {
        let pairs: Vec<_> = self.pairs(h).collect();
        let mut worst = Refutation { ell, j: h + 1, k: h + 1, probability: f64::INFINITY };
        for (j, k) in pairs {
            let p = self.eval(ell, h, j, k);
            if p < worst.probability {
                worst = Refutation { ell, j, k, probability: p };
            }
        }
        worst
    }

    /// First `h` whose window and the final window both pass.
    fn find_h(&mut self, ell: u32) -> Option<usize> {
        if !self.window_passes(ell, self.hz.h_max) {
            return None;
        }
        (1..=self.hz.h_max).find(|&h| self.window_passes(ell, h))
    }

    fn nest(mut self) -> CauchyVerdict {
        let mut witness = BTreeMap::new();
        let mut refutation = None;
        let mut failed = false;
        for ell in 1..=self.hz.ell_max {
            match self.find_h(ell) {
                Some(h) => {
                    witness.insert(ell, h);
                }
                None => {
                    failed = true;
                    if refutation.is_none() {
                        let first = self.window_min(ell, 1);
                        let last = self.window_min(ell, self.hz.h_max);
                        let stuck = last.probability <= first.probability + PROBABILITY_TOLERANCE;
                        if stuck && last.probability <= 1.0 - REFUTATION_MARGIN {
                            refutation = Some(last);
                        }
                    }
                }
            }
        }
        let status = if refutation.is_some() {
            Status::Refuted
        } else if failed {
            Status::Inconclusive
        } else {
            Status::Supported
        };
        if !status.holds() {
            witness.clear();
        }
        CauchyVerdict { status, witness, refutation, probes: self.rows }
    }

    fn gap(mut self, ells: RangeInclusive<u32>) -> GapVerdict {
        for ell in ells {
            if let Some(h) = self.find_h(ell) {
                return GapVerdict { status: Status::Supported, witness: Some((ell, h)), probes: self.rows };
            }
        }
        GapVerdict { status: Status::Inconclusive, witness: None, probes: self.rows }
    }
}

/// `P_{j,k,ell}`: the probability that the `j`th element of `seq1` and the
/// `k`th element of `seq2` agree within `2^-ell` in both components.
pub fn pair_prob(seq1: &StateSequence, seq2: &StateSequence, j: usize, k: usize, acc: Accuracy) -> f64 {
    pair_probability(&seq1.at(j), &seq2.at(k), acc, Part::Both)
}

/// Cauchy verdict for one sequence.
///
/// ```
/// use qreal::sequence::{cauchy_check, cycle_seq, Horizon, Status};
/// use qreal::{LatticeSite, StringState};
///
/// let zero: StringState = "0+".parse().unwrap();
/// let one: StringState = "1+".parse().unwrap();
/// let alternating = cycle_seq(&[zero, one], LatticeSite::default());
/// let v = cauchy_check(&alternating, &Horizon::default());
/// assert_eq!(v.status, Status::Refuted);
/// assert_eq!(v.refutation.unwrap().ell, 1);
/// ```
pub fn cauchy_check(seq: &StateSequence, hz: &Horizon) -> CauchyVerdict {
    if let Some(cert) = seq.certificate() {
        return CauchyVerdict::certified(hz, |l| cert.witness(l));
    }
    let e = Elements::new(seq, hz.extent());
    Probe { a: &e, b: &e, part: Part::Both, test: Test::Within, hz: *hz, rows: Vec::new() }.nest()
}

fn same_construction(a: &StateSequence, b: &StateSequence) -> bool {
    matches!((a.provenance(), b.provenance()), (Provenance::Spec(x), Provenance::Spec(y)) if x == y)
}

fn parts_within(d: &StringState, acc: Accuracy, part: Part) -> bool {
    let gap = acc.gap();
    (!part.real() || !lt_a_real(&gap, &abs_a(&d.re))) && (!part.imaginary() || !lt_a_real(&gap, &abs_a(&d.im)))
}

/// Equality `=_R`, `=_I` or `=_C` of two sequences, selected by `part`.
pub fn seq_eq(seq1: &StateSequence, seq2: &StateSequence, part: Part, hz: &Horizon) -> CauchyVerdict {
    if let (Some(x), Some(y)) = (seq1.constant_value(), seq2.constant_value()) {
        let d = sub_a(&x, &y);
        if parts_within(&d, Accuracy::new(1).expect("1 >= 1"), part)
            && (!part.real() || d.re.is_zero())
            && (!part.imaginary() || d.im.is_zero())
        {
            return CauchyVerdict::certified(hz, |_| 1);
        }
        let ell = (1..).find(|&l| !parts_within(&d, Accuracy::new(l).expect("l >= 1"), part)).expect("d != 0");
        return CauchyVerdict {
            status: Status::Refuted,
            witness: BTreeMap::new(),
            refutation: Some(Refutation { ell, j: 1, k: 1, probability: 0.0 }),
            probes: Vec::new(),
        };
    }
    if same_construction(seq1, seq2) {
        if let Some(cert) = seq1.certificate() {
            return CauchyVerdict::certified(hz, |l| cert.witness(l));
        }
    }
    let a = Elements::new(seq1, hz.extent());
    let b = Elements::new(seq2, hz.extent());
    Probe { a: &a, b: &b, part, test: Test::Within, hz: *hz, rows: Vec::new() }.nest()
}

/// Equivalence of sequences: `=_C`. A sequence stands for its class.
pub fn is_equiv(seq1: &StateSequence, seq2: &StateSequence, hz: &Horizon) -> CauchyVerdict {
    seq_eq(seq1, seq2, Part::Both, hz)
}

pub(crate) fn gap_search(
    a: &Elements,
    b: &Elements,
    part: Part,
    ells: RangeInclusive<u32>,
    hz: &Horizon,
) -> GapVerdict {
    Probe { a, b, part, test: Test::Below, hz: *hz, rows: Vec::new() }.gap(ells)
}

/// Strict order `<_R` or `<_I`: a gap `2^-ell` and an index `h` past which
/// `x_j + 2^-ell < y_k` with probability 1.
pub fn seq_lt(seq1: &StateSequence, seq2: &StateSequence, part: Part, hz: &Horizon) -> GapVerdict {
    if let (Some(x), Some(y)) = (seq1.constant_value(), seq2.constant_value()) {
        let below = |c1: &crate::state::RealComponent, c2| lt_a_real(c1, c2);
        let strictly = (!part.real() || below(&x.re, &y.re)) && (!part.imaginary() || below(&x.im, &y.im));
        if !strictly {
            return GapVerdict { status: Status::Refuted, witness: None, probes: Vec::new() };
        }
        let ell = (1..)
            .find(|&l| lt_with_gap(&x, &y, Accuracy::new(l).expect("l >= 1"), part))
            .expect("a positive difference exceeds some power of two");
        return GapVerdict { status: Status::Certified, witness: Some((ell, 1)), probes: Vec::new() };
    }
    let a = Elements::new(seq1, hz.extent());
    let b = Elements::new(seq2, hz.extent());
    gap_search(&a, &b, part, 1..=hz.ell_max, hz)
}

/// Order `<=_R` or `<=_I`: for every `ell` an index `h` past which
/// `x_j <= y_k + 2^-ell` with probability 1.
pub fn seq_le(seq1: &StateSequence, seq2: &StateSequence, part: Part, hz: &Horizon) -> CauchyVerdict {
    if let (Some(x), Some(y)) = (seq1.constant_value(), seq2.constant_value()) {
        let fails = |l: u32| !leq_with_gap(&x, &y, Accuracy::new(l).expect("l >= 1"), part);
        let above = (part.real() && lt_a_real(&y.re, &x.re)) || (part.imaginary() && lt_a_real(&y.im, &x.im));
        if !above {
            return CauchyVerdict::certified(hz, |_| 1);
        }
        let ell = (1..).find(|&l| fails(l)).expect("a positive excess exceeds some power of two");
        return CauchyVerdict {
            status: Status::Refuted,
            witness: BTreeMap::new(),
            refutation: Some(Refutation { ell, j: 1, k: 1, probability: 0.0 }),
            probes: Vec::new(),
        };
    }
    let a = Elements::new(seq1, hz.extent());
    let b = Elements::new(seq2, hz.extent());
    Probe { a: &a, b: &b, part, test: Test::AtMost, hz: *hz, rows: Vec::new() }.nest()
}

/// Which of `<`, `=`, `>` holds on the horizon. With [`Part::Both`] the
/// real and imaginary verdicts must agree; see [`complex_order`].
pub fn trichotomy(seq1: &StateSequence, seq2: &StateSequence, part: Part, hz: &Horizon) -> Relation {
    if part == Part::Both {
        let (r, i) = complex_order(seq1, seq2, hz);
        return if r == i { r } else { Relation::Inconclusive };
    }
    let lt = seq_lt(seq1, seq2, part, hz).holds();
    let gt = seq_lt(seq2, seq1, part, hz).holds();
    let eq = seq_eq(seq1, seq2, part, hz).holds();
    match (lt, eq, gt) {
        (true, false, false) => Relation::Lt,
        (false, true, false) => Relation::Eq,
        (false, false, true) => Relation::Gt,
        _ => Relation::Inconclusive,
    }
}

/// The real and imaginary relations separately. Complex sequences are only
/// partially ordered: `(Lt, Gt)` means neither is below the other.
pub fn complex_order(seq1: &StateSequence, seq2: &StateSequence, hz: &Horizon) -> (Relation, Relation) {
    (trichotomy(seq1, seq2, Part::Real, hz), trichotomy(seq1, seq2, Part::Imaginary, hz))
}

/// The constant sequence `2^-ell (1 + i)` at `seq`'s site.
pub(crate) fn gap_constant(seq: &StateSequence, ell: u32) -> StateSequence {
    let g = Accuracy::new(ell).expect("ell >= 1").gap();
    constant_seq(&StringState::new(g.clone(), g, seq.site()))
}
