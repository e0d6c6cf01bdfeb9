//! Ripple algorithms on unsigned digit strings.

use std::cmp::Ordering;

use crate::state::DigitString;

/// Compares magnitudes from the most significant aligned digit down.
pub(crate) fn cmp_mag(a: &DigitString, b: &DigitString) -> Ordering {
    let hi = a.hi().max(b.hi());
    let lo = a.lo().min(b.lo());
    for e in (lo..=hi).rev() {
        match (a.bit(e), b.bit(e)) {
            (true, false) => return Ordering::Greater,
            (false, true) => return Ordering::Less,
            _ => {}
        }
    }
    Ordering::Equal
}

pub(crate) fn add_mag(a: &DigitString, b: &DigitString) -> DigitString {
    let lo = a.lo().min(b.lo());
    let hi = a.hi().max(b.hi()) + 1;
    let mut bits = Vec::with_capacity((hi - lo + 1) as usize);
    let mut carry = false;
    for e in lo..=hi {
        let (x, y) = (a.bit(e), b.bit(e));
        bits.push(x ^ y ^ carry);
        carry = (x && y) || (carry && (x ^ y));
    }
    DigitString::new(lo, bits).expect("interval spans the binal point").canonical()
}

/// `a - b`; the caller guarantees `a >= b`.
pub(crate) fn sub_mag(a: &DigitString, b: &DigitString) -> DigitString {
    debug_assert!(cmp_mag(a, b) != Ordering::Less);
    let lo = a.lo().min(b.lo());
    let hi = a.hi().max(b.hi());
    let mut bits = Vec::with_capacity((hi - lo + 1) as usize);
    let mut borrow = false;
    for e in lo..=hi {
        let (x, y) = (a.bit(e), b.bit(e));
        bits.push(x ^ y ^ borrow);
        borrow = (!x && (y || borrow)) || (x && y && borrow);
    }
    DigitString::new(lo, bits).expect("interval spans the binal point").canonical()
}

/// Multiplication by `2^k`.
pub(crate) fn shift_mag(a: &DigitString, k: i64) -> DigitString {
    DigitString::from_exponents(a.set_exponents().map(|e| e + k))
}

/// Shift-and-add over the set digits of `a`.
pub(crate) fn mul_mag(a: &DigitString, b: &DigitString) -> DigitString {
    let mut acc = DigitString::zero();
    for e in a.set_exponents() {
        acc = add_mag(&acc, &shift_mag(b, e));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(hi: i64, text: &str) -> DigitString {
        let bits: Vec<bool> = text.chars().map(|c| c == '1').collect();
        let lo = hi - bits.len() as i64 + 1;
        DigitString::from_msb(hi, lo, &bits).unwrap()
    }

    #[test]
    fn ripple_add_and_sub() {
        // 110.1 + 1001.11 = 10000.01
        let s = add_mag(&ds(2, "1101"), &ds(3, "100111"));
        assert_eq!(s.to_string(), "10000.01");
        let d = sub_mag(&s, &ds(2, "1101"));
        assert_eq!(d.to_string(), "1001.11");
        assert!(sub_mag(&s, &s).is_zero());
    }

    #[test]
    fn compare_aligned() {
        assert_eq!(cmp_mag(&ds(2, "1101"), &ds(3, "01101")), Ordering::Equal);
        assert_eq!(cmp_mag(&ds(0, "0111"), &ds(0, "1")), Ordering::Less);
    }

    #[test]
    fn product() {
        // 5 * 0.00110011 = 0.11111111
        let p = mul_mag(&ds(2, "101"), &ds(0, "000110011"));
        assert_eq!(p.to_string(), "0.11111111");
    }
}
