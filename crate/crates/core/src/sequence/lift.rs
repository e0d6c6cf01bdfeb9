//! Field operations on sequences, representatives, the componentwise
//! metric and the diagonal inverse.
//!
//! Operations act elementwise: the `n`th element of `a + b` is the traced
//! result of adding the `n`th elements, with amplitudes `sqrt p` over the
//! resulting mixture.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::probe::{seq_eq, Horizon};
use super::{constant_seq, CauchyCertificate, Provenance, SequenceKind, SequenceSpec, StateSequence};
use crate::arith::{abs_a, mul_a, sub_a, Accuracy, Part};
use crate::error::{Error, Result};
use crate::index::strict_neighbor_mass;
use crate::state::StringState;
use crate::superposition::{inverse_or_unit, op_mixture, ArithOp, Mixture, Superposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftOp {
    Add,
    Sub,
    Mul,
}

impl LiftOp {
    fn arith(self) -> ArithOp {
        match self {
            LiftOp::Add => ArithOp::Add,
            LiftOp::Sub => ArithOp::Sub,
            LiftOp::Mul => ArithOp::Mul,
        }
    }
}

fn spec_or_label(
    a: &StateSequence,
    b: &StateSequence,
    spec: impl FnOnce(SequenceSpec, SequenceSpec) -> SequenceSpec,
    label: &str,
) -> Provenance {
    match (a.spec(), b.spec()) {
        (Some(l), Some(r)) => Provenance::Spec(spec(l.clone(), r.clone())),
        _ => Provenance::Custom(format!("{label}({}, {})", a.provenance(), b.provenance())),
    }
}

/// `a op b`, elementwise. The result sits at `a`'s site.
///
/// ```
/// use qreal::sequence::{constant_seq, lift_op, LiftOp};
///
/// let three = constant_seq(&"11+".parse().unwrap());
/// let half = constant_seq(&"0+1".parse().unwrap());
/// let p = lift_op(LiftOp::Mul, &three, &half);
/// assert_eq!(p.constant_value().unwrap().to_string(), "1+1");
/// ```
pub fn lift_op(op: LiftOp, a: &StateSequence, b: &StateSequence) -> StateSequence {
    let site = a.site();
    let prov = spec_or_label(
        a,
        b,
        |l, r| SequenceSpec::Lifted { op, left: Box::new(l), right: Box::new(r) },
        &format!("{op:?}").to_lowercase(),
    );
    if let (Some(x), Some(y)) = (a.constant_value(), b.constant_value()) {
        let v = op.arith().apply(&x, &y).expect("ring operations are total");
        return constant_seq(&v.at(site)).with_provenance(prov);
    }
    let certificate = match (a.certificate(), b.certificate()) {
        (Some(ca), Some(cb)) => Some(match op {
            LiftOp::Add | LiftOp::Sub => CauchyCertificate::sum(ca.clone(), cb.clone()),
            LiftOp::Mul => CauchyCertificate::product(ca.clone(), cb.clone()),
        }),
        _ => None,
    };
    let (a, b) = (a.clone(), b.clone());
    let at = move |n: usize| {
        let m = op_mixture(op.arith(), &a.at(n), &b.at(n)).expect("ring operations are total");
        Superposition::from_mixture(&m, site)
    };
    StateSequence::from_parts(Arc::new(at), site, SequenceKind::Lifted, prov, certificate)
}

fn zero_check(b: &StateSequence, hz: &Horizon) -> Result<()> {
    let zero = constant_seq(&StringState::zero().at(b.site()));
    if seq_eq(b, &zero, Part::Both, hz).holds() {
        return Err(Error::ZeroSequence);
    }
    Ok(())
}

/// `a / b`: the `n`th element multiplies each term of `a_n` by the
/// `n`-inverse of each term of `b_n`. Zero terms of the divisor use 1 in
/// place of their inverse; a divisor equal to zero on the horizon is an
/// error.
pub fn lift_div(a: &StateSequence, b: &StateSequence, hz: &Horizon) -> Result<StateSequence> {
    zero_check(b, hz)?;
    let site = a.site();
    let prov = spec_or_label(a, b, |l, r| SequenceSpec::Div { left: Box::new(l), right: Box::new(r) }, "div");
    let (a, b) = (a.clone(), b.clone());
    let at = move |n: usize| {
        let acc = Accuracy::new(n as u32).expect("n >= 1");
        let (x, y) = (a.at(n), b.at(n));
        let mut outcomes = Vec::with_capacity(x.len() * y.len());
        for (ys, q) in y.probabilities() {
            let inv = inverse_or_unit(ys, acc);
            for (xs, p) in x.probabilities() {
                outcomes.push((mul_a(&inv, xs), p * q));
            }
        }
        let m = Mixture::new(outcomes).expect("products of probabilities sum to 1");
        Superposition::from_mixture(&m, site)
    };
    Ok(StateSequence::from_parts(Arc::new(at), site, SequenceKind::Lifted, prov, None))
}

/// The term of `psi` with the most probability strictly within `2^-ell`
/// of it in both components. Near-ties (within `1e-12`) go to the smallest
/// compact text.
pub fn select_representative(psi: &Superposition, acc: Accuracy) -> StringState {
    let mass = strict_neighbor_mass(psi, acc);
    let mut best: Option<(f64, String, &StringState)> = None;
    for ((s, _), q) in psi.terms().zip(mass) {
        let text = s.to_string();
        let better = match &best {
            None => true,
            Some((bq, bt, _)) => q > bq + 1e-12 || ((q - bq).abs() <= 1e-12 && text < *bt),
        };
        if better {
            best = Some((q, text, s));
        }
    }
    best.expect("superpositions are nonempty").2.clone()
}

/// The sequence of representatives at accuracy `hz.ell_max`; constants
/// are returned unchanged.
pub fn representative(seq: &StateSequence, hz: &Horizon) -> StateSequence {
    if seq.kind() == SequenceKind::Constant {
        return seq.clone();
    }
    let acc = Accuracy::new(hz.ell_max).expect("horizon is validated");
    let prov = match seq.spec() {
        Some(s) => Provenance::Spec(SequenceSpec::Representative { of: Box::new(s.clone()), ell: hz.ell_max }),
        None => Provenance::Custom(format!("representative({})", seq.provenance())),
    };
    let site = seq.site();
    let cert = seq.certificate().cloned();
    let inner = seq.clone();
    let at = move |n: usize| Superposition::basis(select_representative(&inner.at(n), acc));
    StateSequence::from_parts(Arc::new(at), site, SequenceKind::Lifted, prov, cert)
}

/// The diagonal inverse: element `ell` is the `ell`-inverse of the `ell`th
/// representative.
pub fn inverse_seq(seq: &StateSequence, hz: &Horizon) -> Result<StateSequence> {
    zero_check(seq, hz)?;
    let rep = representative(seq, hz);
    let prov = match seq.spec() {
        Some(s) => Provenance::Spec(SequenceSpec::Inverse { of: Box::new(s.clone()), ell: hz.ell_max }),
        None => Provenance::Custom(format!("inverse({})", seq.provenance())),
    };
    let site = seq.site();
    let at = move |n: usize| {
        let x = rep.at(n).as_basis().expect("representatives are basis states").clone();
        Superposition::basis(inverse_or_unit(&x, Accuracy::new(n as u32).expect("n >= 1")))
    };
    Ok(StateSequence::from_parts(Arc::new(at), site, SequenceKind::Lifted, prov, None))
}

fn abs_parts(d: &StringState) -> StringState {
    StringState::new(abs_a(&d.re), abs_a(&d.im), d.site)
}

/// `D(a, b)`: `|Re(x - y)| + i |Im(x - y)|` of the representatives.
///
/// ```
/// use qreal::sequence::{constant_seq, metric_d, Horizon};
///
/// let a = constant_seq(&"1+;10-".parse().unwrap());
/// let b = constant_seq(&"11+;0+".parse().unwrap());
/// let d = metric_d(&a, &b, &Horizon::default());
/// assert_eq!(d.constant_value().unwrap().to_string(), "10+;10+");
/// ```
pub fn metric_d(a: &StateSequence, b: &StateSequence, hz: &Horizon) -> StateSequence {
    let site = a.site();
    let prov = spec_or_label(
        a,
        b,
        |l, r| SequenceSpec::Metric { left: Box::new(l), right: Box::new(r), ell: hz.ell_max },
        "metric",
    );
    if let (Some(x), Some(y)) = (a.constant_value(), b.constant_value()) {
        return constant_seq(&abs_parts(&sub_a(&x, &y)).at(site)).with_provenance(prov);
    }
    let (ra, rb) = (representative(a, hz), representative(b, hz));
    let certificate = match (ra.certificate(), rb.certificate()) {
        (Some(ca), Some(cb)) => Some(CauchyCertificate::sum(ca.clone(), cb.clone())),
        _ => None,
    };
    let at = move |n: usize| {
        let x = ra.at(n).as_basis().expect("representatives are basis states").clone();
        let y = rb.at(n).as_basis().expect("representatives are basis states").clone();
        Superposition::basis(abs_parts(&sub_a(&x, &y)).at(site))
    };
    StateSequence::from_parts(Arc::new(at), site, SequenceKind::Lifted, prov, certificate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{cauchy_check, frozen_prefix_seq, seq_lt, BitPattern, Status, Tail};
    use crate::state::LatticeSite;

    fn st(s: &str) -> StringState {
        s.parse().unwrap()
    }

    fn exam1() -> StateSequence {
        frozen_prefix_seq(&BitPattern::zeros(), None, Tail::Plain, LatticeSite::default())
    }

    #[test]
    fn lifted_sum_of_exam1_with_itself() {
        let e = exam1();
        let s = lift_op(LiftOp::Add, &e, &e);
        let mut terms: Vec<(String, f64)> = s.at(2).probabilities().map(|(s, p)| (s.to_string(), p)).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(terms.len(), 3);
        let texts: Vec<&str> = terms.iter().map(|t| t.0.as_str()).collect();
        assert_eq!(texts, ["0+", "0+01", "0+1"]);
        for (t, p) in terms.iter().zip([0.25, 0.5, 0.25]) {
            assert!((t.1 - p).abs() < 1e-12);
        }
        assert_eq!(cauchy_check(&s, &Horizon::default()).status, Status::Certified);
    }

    #[test]
    fn provenance_nests_specs() {
        let e = exam1();
        let s = lift_op(LiftOp::Mul, &e, &constant_seq(&st("1+")));
        assert!(matches!(s.spec(), Some(SequenceSpec::Lifted { op: LiftOp::Mul, .. })));
        let c = StateSequence::custom("c", LatticeSite::default(), |_| Superposition::basis(StringState::one()));
        assert!(matches!(lift_op(LiftOp::Add, &e, &c).provenance(), Provenance::Custom(_)));
    }

    #[test]
    fn division_by_a_constant() {
        let hz = Horizon::default();
        let one = constant_seq(&st("1+"));
        let three = constant_seq(&st("11+"));
        let q = lift_div(&one, &three, &hz).unwrap();
        let x = q.at(10).as_basis().unwrap().clone();
        let v = crate::state::eigenvalue(&x).to_f64_parts().0;
        assert!((v - 1.0 / 3.0).abs() <= 2f64.powi(-9), "{v}");
        assert!(matches!(lift_div(&one, &constant_seq(&st("0+")), &hz), Err(Error::ZeroSequence)));
        assert!(matches!(inverse_seq(&exam1(), &hz), Err(Error::ZeroSequence)));
    }

    #[test]
    fn representative_prefers_concentrated_mass() {
        let site = LatticeSite::default();
        let psi = Superposition::normalized(
            site,
            [
                (st("1+"), crate::superposition::Amplitude::new(1.0, 0.0)),
                (st("1+0001"), crate::superposition::Amplitude::new(1.0, 0.0)),
                (st("11+"), crate::superposition::Amplitude::new(1.2, 0.0)),
            ],
        )
        .unwrap();
        assert_eq!(select_representative(&psi, Accuracy::new(2).unwrap()), st("1+"));
        assert_eq!(select_representative(&psi, Accuracy::new(5).unwrap()), st("11+"));
    }

    #[test]
    fn exam1_representative_ties_break_on_text() {
        let rep = representative(&exam1(), &Horizon::default());
        for n in 1..12 {
            assert_eq!(rep.at(n).as_basis().unwrap(), &st("0+"));
        }
    }

    #[test]
    fn metric_of_exam1_and_zero_is_small() {
        let hz = Horizon::default();
        let d = metric_d(&exam1(), &constant_seq(&st("0+")), &hz);
        let g = constant_seq(&st("0+0001;0+0001"));
        assert!(seq_lt(&d, &g, Part::Real, &hz).holds());
    }

    #[test]
    fn inverse_of_three() {
        let hz = Horizon::default();
        let inv = inverse_seq(&constant_seq(&st("11+")), &hz).unwrap();
        let v = crate::state::eigenvalue(inv.at(12).as_basis().unwrap()).to_f64_parts().0;
        assert!((v - 1.0 / 3.0).abs() <= 2f64.powi(-11));
    }
}
