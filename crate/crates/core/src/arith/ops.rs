use std::cmp::Ordering;

use super::magnitude::{add_mag, cmp_mag, mul_mag, shift_mag, sub_mag};
use super::Part;
use crate::error::{Error, Result};
use crate::state::{DigitString, RealComponent, StringState};

/// Adds `2^e` to the magnitude, keeping the sign. Digits are padded out to
/// `e` and the carry ripples upward.
pub fn succ(c: &RealComponent, e: i64) -> RealComponent {
    let mut d: DigitString = c.digits.clone();
    let mut j = e;
    while d.bit(j) {
        d.set_bit(j, false);
        j += 1;
    }
    d.set_bit(j, true);
    RealComponent::new(c.sign, d).canonical()
}

/// Subtracts `2^e` from the magnitude, keeping the sign. The borrow ripples
/// upward; a magnitude below `2^e` is an underflow.
pub fn pred(c: &RealComponent, e: i64) -> Result<RealComponent> {
    if cmp_mag(&c.digits, &DigitString::from_exponents([e])) == Ordering::Less {
        return Err(Error::Underflow { exponent: e });
    }
    let mut d = c.digits.clone();
    let mut j = e;
    while !d.bit(j) {
        d.set_bit(j, true);
        j += 1;
    }
    d.set_bit(j, false);
    Ok(RealComponent::new(c.sign, d).canonical())
}

fn neg_c(c: &RealComponent) -> RealComponent {
    RealComponent::new(c.sign.flipped(), c.digits.clone()).canonical()
}

pub fn negate(state: &StringState, which: Part) -> StringState {
    let mut out = state.clone();
    if which.real() {
        out.re = neg_c(&state.re);
    }
    if which.imaginary() {
        out.im = neg_c(&state.im);
    }
    out
}

pub fn abs_a(c: &RealComponent) -> RealComponent {
    RealComponent::new(crate::state::Sign::Plus, c.digits.clone()).canonical()
}

/// Multiplies both components by `2^k`.
pub fn shift(state: &StringState, k: i64) -> StringState {
    let sh = |c: &RealComponent| RealComponent::new(c.sign, shift_mag(&c.digits, k)).canonical();
    StringState::new(sh(&state.re), sh(&state.im), state.site)
}

pub(crate) fn add_c(a: &RealComponent, b: &RealComponent) -> RealComponent {
    if a.sign == b.sign {
        return RealComponent::new(a.sign, add_mag(&a.digits, &b.digits)).canonical();
    }
    // opposite signs: the larger magnitude keeps its sign
    if cmp_mag(&a.digits, &b.digits) != Ordering::Less {
        RealComponent::new(a.sign, sub_mag(&a.digits, &b.digits)).canonical()
    } else {
        RealComponent::new(b.sign, sub_mag(&b.digits, &a.digits)).canonical()
    }
}

pub(crate) fn mul_c(a: &RealComponent, b: &RealComponent) -> RealComponent {
    RealComponent::new(a.sign.times(b.sign), mul_mag(&a.digits, &b.digits)).canonical()
}

/// Componentwise sum; the result sits at `a`'s site.
pub fn add_a(a: &StringState, b: &StringState) -> StringState {
    StringState::new(add_c(&a.re, &b.re), add_c(&a.im, &b.im), a.site)
}

pub fn sub_a(a: &StringState, b: &StringState) -> StringState {
    add_a(a, &negate(b, Part::Both))
}

/// Complex product assembled from four real shift-and-add products.
pub fn mul_a(a: &StringState, b: &StringState) -> StringState {
    let re = add_c(&mul_c(&a.re, &b.re), &neg_c(&mul_c(&a.im, &b.im)));
    let im = add_c(&mul_c(&a.re, &b.im), &mul_c(&a.im, &b.re));
    StringState::new(re, im, a.site)
}
