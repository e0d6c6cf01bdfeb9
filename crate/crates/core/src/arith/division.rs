use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::magnitude::{cmp_mag, shift_mag, sub_mag};
use super::ops::mul_a;
use super::{negate, Part};
use crate::error::{Error, Result};
use crate::state::{DigitString, RealComponent, Sign, StringState};

/// An accuracy index `ell >= 1`, standing for the tolerance `2^-ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Accuracy(u32);

impl Accuracy {
    pub fn new(ell: u32) -> Result<Self> {
        if ell == 0 {
            Err(Error::BadAccuracy)
        } else {
            Ok(Accuracy(ell))
        }
    }

    pub fn ell(self) -> u32 {
        self.0
    }

    /// The real component `2^-ell`.
    pub fn gap(self) -> RealComponent {
        RealComponent::pow2(-(self.0 as i64))
    }
}

impl TryFrom<u32> for Accuracy {
    type Error = Error;
    fn try_from(ell: u32) -> Result<Self> {
        Accuracy::new(ell)
    }
}

impl From<Accuracy> for u32 {
    fn from(a: Accuracy) -> u32 {
        a.0
    }
}

/// The `ell`-inverse of a positive real component.
///
/// Binary long division of 1 by `c`, most significant quotient digit first.
/// The remainder `1 - x c` is tracked exactly and the division stops as soon
/// as it drops to `2^-ell` or below, so `x c` lies in `[1 - 2^-ell, 1]` and
/// the lowest set digit of `x` is as high as the window allows.
pub fn ell_inverse(c: &RealComponent, acc: Accuracy) -> Result<RealComponent> {
    if c.is_zero() || c.sign != Sign::Plus {
        return Err(Error::NotPositive(crate::format_compact(&StringState::real(c.clone()))));
    }
    let gap = DigitString::from_exponents([-(acc.ell() as i64)]);
    let top = c.digits.top_set().expect("nonzero");
    let mut rem = DigitString::from_exponents([0]);
    let mut quotient = Vec::new();
    let mut e = -top;
    while cmp_mag(&rem, &gap) == Ordering::Greater {
        let trial = shift_mag(&c.digits, e);
        if cmp_mag(&trial, &rem) != Ordering::Greater {
            rem = sub_mag(&rem, &trial);
            quotient.push(e);
        }
        e -= 1;
    }
    Ok(RealComponent::new(Sign::Plus, DigitString::from_exponents(quotient)))
}

/// `ell`-inverse of a nonzero state.
///
/// Real states invert their magnitude directly and keep their sign. States
/// with an imaginary part go through the conjugate: `conj(b) / (b conj(b))`.
pub fn ell_inverse_state(b: &StringState, acc: Accuracy) -> Result<StringState> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if b.is_real() {
        let mag = RealComponent::new(Sign::Plus, b.re.digits.clone());
        let inv = ell_inverse(&mag, acc)?;
        let re = RealComponent::new(b.re.sign, inv.digits).canonical();
        return Ok(StringState::new(re, RealComponent::zero(), b.site));
    }
    let conj = negate(b, Part::Imaginary);
    let norm = mul_a(b, &conj);
    let inv = ell_inverse(&norm.re, acc)?;
    Ok(mul_a(&StringState::new(inv, RealComponent::zero(), b.site), &conj))
}

/// `a / b` at accuracy `acc`, as `a` times the `ell`-inverse of `b`.
pub fn div_a(a: &StringState, b: &StringState, acc: Accuracy) -> Result<StringState> {
    let inv = ell_inverse_state(b, acc)?;
    Ok(mul_a(&inv, a).at(a.site))
}
