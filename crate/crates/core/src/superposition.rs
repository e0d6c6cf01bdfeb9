//! Finite superpositions of number states, measurement probabilities, and
//! entangled arithmetic.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::arith::{abs_a, add_a, div_a, ell_inverse_state, eq_a, lt_a_real, mul_a, sub_a, Accuracy, Part};
use crate::error::{Error, Result};
use crate::index::{Test, ValueIndex};
use crate::state::{canonicalize, LatticeSite, RealComponent, StringState};

pub type Amplitude = Complex64;

/// Allowed deviation of the squared norm from 1.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// `sum_k a_k |s_k>` over distinct canonical states at one site.
#[derive(Clone, Debug, PartialEq)]
pub struct Superposition {
    site: LatticeSite,
    terms: BTreeMap<StringState, Amplitude>,
}

impl Superposition {
    /// Canonicalizes and merges duplicate states, then checks that the
    /// squared norm is 1 within [`NORM_TOLERANCE`].
    pub fn new<I>(site: LatticeSite, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (StringState, Amplitude)>,
    {
        let terms = merge_terms(site, terms)?;
        let norm_sqr: f64 = terms.values().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Superposition { site, terms })
    }

    /// Merges duplicates, then scales the amplitudes to unit norm.
    pub fn normalized<I>(site: LatticeSite, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (StringState, Amplitude)>,
    {
        let mut terms = merge_terms(site, terms)?;
        let norm = terms.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in terms.values_mut() {
            *a /= norm;
        }
        Ok(Superposition { site, terms })
    }

    pub fn basis(state: StringState) -> Self {
        let site = state.site;
        let mut terms = BTreeMap::new();
        terms.insert(canonicalize(&state), Amplitude::new(1.0, 0.0));
        Superposition { site, terms }
    }

    /// Equal real amplitudes over the given states.
    pub fn uniform<I: IntoIterator<Item = StringState>>(site: LatticeSite, states: I) -> Result<Self> {
        Self::normalized(site, states.into_iter().map(|s| (s, Amplitude::new(1.0, 0.0))))
    }

    /// Amplitudes `sqrt(p)` for each outcome of a mixture.
    pub fn from_mixture(m: &Mixture, site: LatticeSite) -> Self {
        let terms = m.outcomes.iter().map(|(s, p)| (s.clone().at(site), Amplitude::new(p.sqrt(), 0.0))).collect();
        Superposition { site, terms }
    }

    pub fn site(&self) -> LatticeSite {
        self.site
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&StringState, &Amplitude)> {
        self.terms.iter()
    }

    /// States with their measurement probabilities `|a|^2`.
    pub fn probabilities(&self) -> impl Iterator<Item = (&StringState, f64)> {
        self.terms.iter().map(|(s, a)| (s, a.norm_sqr()))
    }

    pub fn amplitude(&self, state: &StringState) -> Amplitude {
        self.terms.get(&canonicalize(state).at(self.site)).copied().unwrap_or_default()
    }

    /// The single state of a basis superposition.
    pub fn as_basis(&self) -> Option<&StringState> {
        if self.terms.len() == 1 {
            self.terms.keys().next()
        } else {
            None
        }
    }

    pub fn translate(&self, site: LatticeSite) -> Self {
        Superposition { site, terms: self.terms.iter().map(|(s, a)| (s.clone().at(site), *a)).collect() }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }
}

fn merge_terms<I>(site: LatticeSite, terms: I) -> Result<BTreeMap<StringState, Amplitude>>
where
    I: IntoIterator<Item = (StringState, Amplitude)>,
{
    let mut merged: BTreeMap<StringState, Amplitude> = BTreeMap::new();
    for (s, a) in terms {
        let key = canonicalize(&s).at(site);
        if !a.re.is_finite() || !a.im.is_finite() {
            return Err(Error::NonFiniteAmplitude { term: key.to_string() });
        }
        *merged.entry(key).or_default() += a;
    }
    merged.retain(|_, a| a.norm_sqr() > 0.0);
    if merged.is_empty() {
        return Err(Error::EmptySuperposition);
    }
    Ok(merged)
}

/// A classical probability distribution over canonical states.
#[derive(Clone, Debug, PartialEq)]
pub struct Mixture {
    outcomes: BTreeMap<StringState, f64>,
}

impl Mixture {
    pub fn new<I: IntoIterator<Item = (StringState, f64)>>(outcomes: I) -> Result<Self> {
        let mut merged: BTreeMap<StringState, f64> = BTreeMap::new();
        for (s, p) in outcomes {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::BadMixture { sum: p });
            }
            *merged.entry(canonicalize(&s).at(LatticeSite::default())).or_default() += p;
        }
        merged.retain(|_, p| *p > 0.0);
        let sum: f64 = merged.values().sum();
        if merged.is_empty() || (sum - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::BadMixture { sum });
        }
        Ok(Mixture { outcomes: merged })
    }

    pub fn outcomes(&self) -> impl Iterator<Item = (&StringState, f64)> {
        self.outcomes.iter().map(|(s, p)| (s, *p))
    }

    pub fn probability(&self, state: &StringState) -> f64 {
        self.outcomes.get(&canonicalize(state).at(LatticeSite::default())).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }
}

/// Probability that independent measurements of `psi` and `phi` give
/// equal values.
pub fn prob_eq_a(psi: &Superposition, phi: &Superposition) -> f64 {
    let mut total = 0.0;
    for (x, p) in psi.probabilities() {
        for (y, q) in phi.probabilities() {
            if eq_a(x, y) {
                total += p * q;
            }
        }
    }
    total
}

/// `x + 2^-ell < y` on the selected part(s).
pub fn lt_with_gap(x: &StringState, y: &StringState, acc: Accuracy, part: Part) -> bool {
    let gap = StringState::real(acc.gap());
    let gap = if part == Part::Imaginary {
        StringState::new(RealComponent::zero(), acc.gap(), x.site)
    } else if part == Part::Both {
        StringState::new(acc.gap(), acc.gap(), x.site)
    } else {
        gap
    };
    let shifted = add_a(x, &gap);
    (!part.real() || lt_a_real(&shifted.re, &y.re)) && (!part.imaginary() || lt_a_real(&shifted.im, &y.im))
}

/// `x <= y + 2^-ell` on the selected part(s).
pub fn leq_with_gap(x: &StringState, y: &StringState, acc: Accuracy, part: Part) -> bool {
    let g = acc.gap();
    let shifted = add_a(y, &StringState::new(g.clone(), g, y.site));
    (!part.real() || crate::arith::leq_a_real(&x.re, &shifted.re))
        && (!part.imaginary() || crate::arith::leq_a_real(&x.im, &shifted.im))
}

/// Probability that a measurement of `psi` lies below one of `phi` by more
/// than `2^-ell` on the selected part(s).
pub fn prob_lt_gap(psi: &Superposition, phi: &Superposition, acc: Accuracy, part: Part) -> f64 {
    pair_mass(psi, phi, acc, part, Test::Below)
}

/// Probability that independent measurements of `psi` and `phi` lie within
/// `2^-ell` of each other on the selected part(s).
pub fn pair_probability(psi: &Superposition, phi: &Superposition, acc: Accuracy, part: Part) -> f64 {
    pair_mass(psi, phi, acc, part, Test::Within)
}

// Both routes divide the passing mass by the total pair mass, summed in
// the same order, so a certain event comes out as exactly 1 whatever the
// round-off in the squared amplitudes.

/// Term-pair count above which the sorted-table route is used.
pub(crate) const DIRECT_LIMIT: usize = 256;

pub(crate) fn pair_mass(psi: &Superposition, phi: &Superposition, acc: Accuracy, part: Part, test: Test) -> f64 {
    if psi.len() * phi.len() <= DIRECT_LIMIT {
        return direct_mass(psi, phi, acc, part, test);
    }
    let key = ValueIndex::key_for(part);
    crate::index::pair_mass(&ValueIndex::new(psi, key), &ValueIndex::new(phi, key), acc, part, test)
}

pub(crate) fn direct_mass(psi: &Superposition, phi: &Superposition, acc: Accuracy, part: Part, test: Test) -> f64 {
    let (mut pass, mut all) = (0.0, 0.0);
    for (x, p) in psi.probabilities() {
        for (y, q) in phi.probabilities() {
            let ok = match test {
                Test::Within => within_gap(x, y, acc, part),
                Test::WithinStrict => within_gap_strict(x, y, acc, part),
                Test::Below => lt_with_gap(x, y, acc, part),
                Test::AtMost => leq_with_gap(x, y, acc, part),
            };
            if ok {
                pass += p * q;
            }
            all += p * q;
        }
    }
    pass / all
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div(Accuracy),
}

impl ArithOp {
    pub fn apply(self, x: &StringState, y: &StringState) -> Result<StringState> {
        match self {
            ArithOp::Add => Ok(add_a(x, y)),
            ArithOp::Sub => Ok(sub_a(x, y)),
            ArithOp::Mul => Ok(mul_a(x, y)),
            ArithOp::Div(acc) => div_a(x, y, acc),
        }
    }
}

/// One branch `a_k b_l |x_k>|y_l>|x_k op y_l>` of the entangled result.
#[derive(Clone, Debug, PartialEq)]
pub struct EntangledTerm {
    pub amplitude: Amplitude,
    pub left: StringState,
    pub right: StringState,
    pub result: StringState,
}

/// Applies `op` to every pair of terms, keeping the operands alongside the
/// result. A zero divisor term is an error.
pub fn apply_op_entangled(op: ArithOp, psi: &Superposition, phi: &Superposition) -> Result<Vec<EntangledTerm>> {
    let mut out = Vec::with_capacity(psi.len() * phi.len());
    for (x, a) in psi.terms() {
        for (y, b) in phi.terms() {
            if matches!(op, ArithOp::Div(_)) && y.is_zero() {
                return Err(Error::ZeroDivisorTerm { term: y.to_string() });
            }
            out.push(EntangledTerm { amplitude: a * b, left: x.clone(), right: y.clone(), result: op.apply(x, y)? });
        }
    }
    Ok(out)
}

/// Traces out the operands: each result value gets the summed
/// probability of the branches that produce it.
pub fn trace_result(terms: &[EntangledTerm]) -> Mixture {
    let mut outcomes: BTreeMap<StringState, f64> = BTreeMap::new();
    for t in terms {
        *outcomes.entry(canonicalize(&t.result).at(LatticeSite::default())).or_default() += t.amplitude.norm_sqr();
    }
    outcomes.retain(|_, p| *p > 0.0);
    Mixture { outcomes }
}

/// The traced result of `op` on two independent superpositions.
pub fn op_mixture(op: ArithOp, psi: &Superposition, phi: &Superposition) -> Result<Mixture> {
    Ok(trace_result(&apply_op_entangled(op, psi, phi)?))
}

/// `|Re d| <= 2^-ell` and `|Im d| <= 2^-ell` for `d = x - y`, restricted to
/// the selected part(s).
pub fn within_gap(x: &StringState, y: &StringState, acc: Accuracy, part: Part) -> bool {
    let d = sub_a(x, y);
    let gap = acc.gap();
    (!part.real() || crate::arith::leq_a_real(&abs_a(&d.re), &gap))
        && (!part.imaginary() || crate::arith::leq_a_real(&abs_a(&d.im), &gap))
}

/// `|Re d| < 2^-ell` and `|Im d| < 2^-ell` for `d = x - y` on the
/// selected part(s).
pub fn within_gap_strict(x: &StringState, y: &StringState, acc: Accuracy, part: Part) -> bool {
    let d = sub_a(x, y);
    let gap = acc.gap();
    (!part.real() || lt_a_real(&abs_a(&d.re), &gap)) && (!part.imaginary() || lt_a_real(&abs_a(&d.im), &gap))
}

/// The `ell`-inverse with the unit element substituted for zero.
pub(crate) fn inverse_or_unit(x: &StringState, acc: Accuracy) -> StringState {
    if x.is_zero() {
        StringState::one().at(x.site)
    } else {
        ell_inverse_state(x, acc).expect("nonzero state")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> StringState {
        s.parse().unwrap()
    }

    fn acc(l: u32) -> Accuracy {
        Accuracy::new(l).unwrap()
    }

    #[test]
    fn duplicates_merge_and_norm_is_checked() {
        let site = LatticeSite::default();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = Superposition::new(site, [(st("1+"), Amplitude::new(h, 0.0)), (st("01+0"), Amplitude::new(h, 0.0))]);
        assert!(matches!(s, Err(Error::NotNormalized { .. })));
        let s = Superposition::uniform(site, [st("1+"), st("01+0")]).unwrap();
        assert_eq!(s.len(), 1);
        assert!(matches!(Superposition::uniform(site, []), Err(Error::EmptySuperposition)));
    }

    #[test]
    fn equality_probability() {
        let site = LatticeSite::default();
        let psi = Superposition::uniform(site, [st("0+"), st("1+")]).unwrap();
        let zero = Superposition::basis(st("0+"));
        assert!((prob_eq_a(&psi, &psi) - 0.5).abs() < 1e-15);
        assert!((prob_eq_a(&psi, &zero) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn gap_probability() {
        let site = LatticeSite::default();
        let psi = Superposition::uniform(site, [st("0+"), st("1+")]).unwrap();
        let two = Superposition::basis(st("10+"));
        assert!((prob_lt_gap(&psi, &two, acc(1), Part::Real) - 1.0).abs() < 1e-15);
        // 1 + 1/2 < 1 fails, 0 + 1/2 < 1 holds
        let one = Superposition::basis(st("1+"));
        assert!((prob_lt_gap(&psi, &one, acc(1), Part::Real) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn indexed_route_matches_direct() {
        let site = LatticeSite::default();
        let mk = |lo: i64, n: i64, im: bool| {
            Superposition::uniform(
                site,
                (0..n).map(|k| {
                    let v = crate::oracle::DyadicComplex::new(
                        num_bigint::BigInt::from(lo + 3 * k - n),
                        num_bigint::BigInt::from(if im { k % 5 - 2 } else { 0 }),
                        3,
                    );
                    StringState::from_dyadic(&v)
                }),
            )
            .unwrap()
        };
        for (a_im, b_im) in [(false, false), (true, false), (true, true)] {
            let a = mk(0, 20, a_im);
            let b = mk(7, 25, b_im);
            for l in 1..6 {
                for part in [Part::Real, Part::Imaginary, Part::Both] {
                    for test in [Test::Within, Test::WithinStrict, Test::Below, Test::AtMost] {
                        let key = ValueIndex::key_for(part);
                        let fast = crate::index::pair_mass(
                            &ValueIndex::new(&a, key),
                            &ValueIndex::new(&b, key),
                            acc(l),
                            part,
                            test,
                        );
                        let slow = direct_mass(&a, &b, acc(l), part, test);
                        assert!((fast - slow).abs() < 1e-12, "{part:?} {test:?} {l}: {fast} {slow}");
                    }
                }
                let fast = crate::index::strict_neighbor_mass(&a, acc(l));
                for ((x, _), q) in a.terms().zip(fast) {
                    let slow: f64 = a
                        .probabilities()
                        .filter(|(y, _)| within_gap_strict(x, y, acc(l), Part::Both))
                        .map(|(_, p)| p)
                        .sum();
                    assert!((q - slow).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn entangled_sum_traces_to_mixture() {
        let site = LatticeSite::default();
        let psi = Superposition::uniform(site, [st("0+"), st("1+")]).unwrap();
        let terms = apply_op_entangled(ArithOp::Add, &psi, &psi).unwrap();
        assert_eq!(terms.len(), 4);
        let m = trace_result(&terms);
        assert!((m.probability(&st("1+")) - 0.5).abs() < 1e-15);
        assert!((m.probability(&st("10+")) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn zero_divisor_is_rejected() {
        let site = LatticeSite::default();
        let psi = Superposition::uniform(site, [st("0+"), st("1+")]).unwrap();
        let r = apply_op_entangled(ArithOp::Div(acc(4)), &psi, &psi);
        assert!(matches!(r, Err(Error::ZeroDivisorTerm { .. })));
    }
}
