//! Qubit-string number states and their eigenvalues.

use std::fmt;

use num_bigint::{BigInt, Sign as BigSign};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::DyadicComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Binary digits on a contiguous exponent interval `[lo, hi]` with
/// `lo <= 0 <= hi`. Exponents are relative to the binal point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitString {
    lo: i64,
    // bits[i] is the digit at exponent lo + i
    bits: Vec<bool>,
}

impl DigitString {
    pub fn zero() -> Self {
        DigitString { lo: 0, bits: vec![false] }
    }

    /// `bits` ordered from exponent `lo` upward.
    pub fn new(lo: i64, bits: Vec<bool>) -> Result<Self> {
        let hi = lo + bits.len() as i64 - 1;
        if bits.is_empty() || lo > 0 || hi < 0 {
            return Err(Error::BadInterval { lo, hi });
        }
        Ok(DigitString { lo, bits })
    }

    /// Digits written most significant first, covering `[lo, hi]`.
    pub fn from_msb(hi: i64, lo: i64, msb_first: &[bool]) -> Result<Self> {
        if lo > 0 || hi < 0 || hi < lo {
            return Err(Error::BadInterval { lo, hi });
        }
        let expected = (hi - lo + 1) as usize;
        if msb_first.len() != expected {
            return Err(Error::BitCount { expected, got: msb_first.len() });
        }
        let bits = msb_first.iter().rev().copied().collect();
        Ok(DigitString { lo, bits })
    }

    /// Canonical string with ones exactly at `exponents`.
    pub fn from_exponents<I: IntoIterator<Item = i64>>(exponents: I) -> Self {
        let exps: Vec<i64> = exponents.into_iter().collect();
        let lo = exps.iter().copied().min().unwrap_or(0).min(0);
        let hi = exps.iter().copied().max().unwrap_or(0).max(0);
        let mut bits = vec![false; (hi - lo + 1) as usize];
        for e in exps {
            bits[(e - lo) as usize] = true;
        }
        DigitString { lo, bits }.canonical()
    }

    /// Magnitude of a real dyadic value as a canonical string.
    pub fn from_dyadic_magnitude(v: &DyadicComplex) -> Self {
        let num = v.re_num().abs();
        let scale = v.scale() as i64;
        let exps = (0..num.bits()).filter(|&i| num.bit(i)).map(|i| i as i64 - scale);
        Self::from_exponents(exps)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.bits.len() as i64 - 1
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    /// Digit at exponent `e`; zero outside the stored interval.
    pub fn bit(&self, e: i64) -> bool {
        if e < self.lo || e > self.hi() {
            false
        } else {
            self.bits[(e - self.lo) as usize]
        }
    }

    /// Digits from `hi` down to `lo`.
    pub fn msb_first(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().rev().copied()
    }

    /// Exponents of the set digits, highest first.
    pub fn set_exponents(&self) -> impl Iterator<Item = i64> + '_ {
        let lo = self.lo;
        self.bits.iter().enumerate().rev().filter(|(_, b)| **b).map(move |(i, _)| lo + i as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    pub fn top_set(&self) -> Option<i64> {
        self.set_exponents().next()
    }

    pub fn lowest_set(&self) -> Option<i64> {
        self.bits.iter().position(|b| *b).map(|i| self.lo + i as i64)
    }

    /// Leading and trailing zeros trimmed back to the binal point.
    pub fn canonical(&self) -> Self {
        let hi = self.top_set().unwrap_or(0).max(0);
        let lo = self.lowest_set().unwrap_or(0).min(0);
        self.padded_to(lo, hi)
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// Same digits on the interval `[lo, hi]`; set digits outside it are lost.
    pub(crate) fn padded_to(&self, lo: i64, hi: i64) -> Self {
        let bits = (lo..=hi).map(|e| self.bit(e)).collect();
        DigitString { lo, bits }
    }

    pub(crate) fn set_bit(&mut self, e: i64, value: bool) {
        if e < self.lo || e > self.hi() {
            let lo = self.lo.min(e);
            let hi = self.hi().max(e);
            *self = self.padded_to(lo, hi);
        }
        let idx = (e - self.lo) as usize;
        self.bits[idx] = value;
    }

    /// Magnitude as `num / 2^scale`.
    pub fn magnitude(&self) -> (BigInt, u64) {
        let mut num = BigInt::zero();
        for b in self.msb_first() {
            num <<= 1;
            if b {
                num += 1;
            }
        }
        if self.lo >= 0 {
            (num << self.lo as u64, 0)
        } else {
            (num, self.lo.unsigned_abs())
        }
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in (0..=self.hi()).rev() {
            f.write_str(if self.bit(e) { "1" } else { "0" })?;
        }
        if self.lo < 0 {
            f.write_str(".")?;
            for e in (self.lo..0).rev() {
                f.write_str(if self.bit(e) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// One signed real component of a number state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealComponent {
    pub sign: Sign,
    pub digits: DigitString,
}

impl RealComponent {
    pub fn new(sign: Sign, digits: DigitString) -> Self {
        RealComponent { sign, digits }
    }

    pub fn zero() -> Self {
        RealComponent::new(Sign::Plus, DigitString::zero())
    }

    pub fn pow2(e: i64) -> Self {
        RealComponent::new(Sign::Plus, DigitString::from_exponents([e]))
    }

    pub fn from_dyadic(v: &DyadicComplex) -> Self {
        let sign = if v.re_num().sign() == BigSign::Minus { Sign::Minus } else { Sign::Plus };
        RealComponent::new(sign, DigitString::from_dyadic_magnitude(v)).canonical()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_zero()
    }

    /// Trimmed digits; zero always carries `+`.
    pub fn canonical(&self) -> Self {
        let digits = self.digits.canonical();
        let sign = if digits.is_zero() { Sign::Plus } else { self.sign };
        RealComponent { sign, digits }
    }

    pub fn value(&self) -> DyadicComplex {
        let (num, scale) = self.digits.magnitude();
        let num = if self.sign == Sign::Minus { -num } else { num };
        DyadicComplex::real(num, scale)
    }
}

/// Location of a number on the lattice: the binal site `m` and a label `h`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeSite {
    pub m: i64,
    pub h: i64,
}

impl LatticeSite {
    pub fn new(m: i64, h: i64) -> Self {
        LatticeSite { m, h }
    }
}

/// A complex number state `|gamma s, gamma' t>` at a lattice site.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringState {
    pub re: RealComponent,
    pub im: RealComponent,
    pub site: LatticeSite,
}

impl StringState {
    pub fn new(re: RealComponent, im: RealComponent, site: LatticeSite) -> Self {
        StringState { re, im, site }
    }

    pub fn real(re: RealComponent) -> Self {
        StringState::new(re, RealComponent::zero(), LatticeSite::default())
    }

    pub fn zero() -> Self {
        StringState::real(RealComponent::zero())
    }

    pub fn one() -> Self {
        StringState::real(RealComponent::pow2(0))
    }

    pub fn imaginary_unit() -> Self {
        StringState::new(RealComponent::zero(), RealComponent::pow2(0), LatticeSite::default())
    }

    pub fn from_dyadic(v: &DyadicComplex) -> Self {
        StringState::new(
            RealComponent::from_dyadic(&v.re()),
            RealComponent::from_dyadic(&v.im()),
            LatticeSite::default(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn at(mut self, site: LatticeSite) -> Self {
        self.site = site;
        self
    }
}

impl fmt::Display for StringState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::format_compact(self))
    }
}

impl std::str::FromStr for StringState {
    type Err = crate::error::ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        crate::notation::parse_compact(s)
    }
}

/// Trims both components; zero components get sign `+`.
pub fn canonicalize(state: &StringState) -> StringState {
    StringState { re: state.re.canonical(), im: state.im.canonical(), site: state.site }
}

pub fn is_canonical(state: &StringState) -> bool {
    *state == canonicalize(state)
}

/// The eigenvalue of the number operator on this state.
pub fn eigenvalue(state: &StringState) -> DyadicComplex {
    let re = state.re.value();
    let im = state.im.value();
    &re + &(&im * &DyadicComplex::i())
}

/// Moves the state to another site; digits are stored relative to the
/// binal point, so only the label changes.
pub fn translate(state: &StringState, site: LatticeSite) -> StringState {
    state.clone().at(site)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> StringState {
        s.parse().unwrap()
    }

    #[test]
    fn interval_must_contain_binal_point() {
        assert!(DigitString::new(1, vec![true]).is_err());
        assert!(DigitString::new(-3, vec![true, false]).is_err());
        assert!(DigitString::new(-1, vec![true, false]).is_ok());
        assert!(DigitString::from_msb(2, 0, &[true, true]).is_err());
    }

    #[test]
    fn canonical_trims_both_ends() {
        let d = DigitString::from_msb(3, -3, &[false, true, true, false, true, false, false]).unwrap();
        let c = d.canonical();
        assert_eq!((c.hi(), c.lo()), (2, -1));
        assert_eq!(c.to_string(), "110.1");
        assert!(DigitString::from_msb(2, -2, &[false; 5]).unwrap().canonical() == DigitString::zero());
    }

    #[test]
    fn negative_zero_becomes_positive() {
        let s = StringState::real(RealComponent::new(Sign::Minus, DigitString::zero()));
        assert_eq!(canonicalize(&s).re.sign, Sign::Plus);
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(eigenvalue(&st("110+1")).to_string(), "6.5");
        assert_eq!(eigenvalue(&st("110-1")).to_string(), "-6.5");
        assert_eq!(eigenvalue(&st("110-1;1+")).to_string(), "-6.5+1i");
        assert_eq!(eigenvalue(&st("10000+01")).to_string(), "16.25");
        assert_eq!(eigenvalue(&st("0+")), DyadicComplex::zero());
    }

    #[test]
    fn translation_keeps_value() {
        let s = st("101+11");
        let t = translate(&s, LatticeSite::new(7, -2));
        assert_eq!(eigenvalue(&s), eigenvalue(&t));
        assert_eq!(t.site, LatticeSite::new(7, -2));
    }

    #[test]
    fn dyadic_round_trip() {
        let s = st("1011-0011;1+1");
        assert_eq!(StringState::from_dyadic(&eigenvalue(&s)), s);
    }
}
