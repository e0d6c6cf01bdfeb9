//! Exact dyadic complex values and brute-force reference searches.
//!
//! Nothing here touches digit strings except to report results, so the
//! routines act as an independent check on the string arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign as BigSign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::state::DigitString;

/// `(re_num + i im_num) / 2^scale`, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicComplex {
    re_num: BigInt,
    im_num: BigInt,
    scale: u64,
}

impl DyadicComplex {
    pub fn new(re_num: BigInt, im_num: BigInt, scale: u64) -> Self {
        let mut v = DyadicComplex { re_num, im_num, scale };
        v.reduce();
        v
    }

    pub fn real(num: BigInt, scale: u64) -> Self {
        Self::new(num, BigInt::zero(), scale)
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigInt::from(n), 0)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(BigInt::zero(), BigInt::one(), 0)
    }

    /// `2^e` for any integer `e`.
    pub fn pow2(e: i64) -> Self {
        if e >= 0 {
            Self::real(BigInt::one() << e as u64, 0)
        } else {
            Self::real(BigInt::one(), e.unsigned_abs())
        }
    }

    fn reduce(&mut self) {
        let tz = |n: &BigInt| n.trailing_zeros().unwrap_or(u64::MAX);
        let k = tz(&self.re_num).min(tz(&self.im_num)).min(self.scale);
        if k > 0 {
            self.re_num >>= k;
            self.im_num >>= k;
            self.scale -= k;
        }
        if self.re_num.is_zero() && self.im_num.is_zero() {
            self.scale = 0;
        }
    }

    pub fn re_num(&self) -> &BigInt {
        &self.re_num
    }

    pub fn im_num(&self) -> &BigInt {
        &self.im_num
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.re_num.is_zero() && self.im_num.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im_num.is_zero()
    }

    pub fn re(&self) -> DyadicComplex {
        Self::real(self.re_num.clone(), self.scale)
    }

    /// The imaginary part as a real value.
    pub fn im(&self) -> DyadicComplex {
        Self::real(self.im_num.clone(), self.scale)
    }

    pub fn conj(&self) -> DyadicComplex {
        Self::new(self.re_num.clone(), -&self.im_num, self.scale)
    }

    /// Componentwise absolute value `|re| + i |im|`.
    pub fn abs_parts(&self) -> DyadicComplex {
        Self::new(self.re_num.abs(), self.im_num.abs(), self.scale)
    }

    pub fn to_f64_parts(&self) -> (f64, f64) {
        let conv = |n: &BigInt| -> f64 {
            let bits = n.bits();
            // keep 62 significant bits so the integer fits in i64
            let (m, extra) = if bits > 62 {
                let drop = bits - 62;
                ((n >> drop).try_into().unwrap_or(0i64), drop as i64)
            } else {
                (n.try_into().unwrap_or(0i64), 0)
            };
            let exp = extra - self.scale as i64;
            (m as f64) * 2f64.powi(exp.clamp(-2000, 2000) as i32)
        };
        (conv(&self.re_num), conv(&self.im_num))
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, BigInt, BigInt, u64) {
        let s = self.scale.max(other.scale);
        let a = s - self.scale;
        let b = s - other.scale;
        (&self.re_num << a, &self.im_num << a, &other.re_num << b, &other.im_num << b, s)
    }

    /// Total order of the real parts.
    pub fn cmp_re(&self, other: &Self) -> Ordering {
        let (ar, _, br, _, _) = self.aligned(other);
        ar.cmp(&br)
    }

    /// Total order of the imaginary parts.
    pub fn cmp_im(&self, other: &Self) -> Ordering {
        let (_, ai, _, bi, _) = self.aligned(other);
        ai.cmp(&bi)
    }

    /// Numerators of both parts rewritten over `2^scale`; `scale` must be at
    /// least `self.scale()`.
    pub fn numerators_at(&self, scale: u64) -> (BigInt, BigInt) {
        let k = scale - self.scale;
        (&self.re_num << k, &self.im_num << k)
    }
}

impl Add for &DyadicComplex {
    type Output = DyadicComplex;
    fn add(self, rhs: &DyadicComplex) -> DyadicComplex {
        let (ar, ai, br, bi, s) = self.aligned(rhs);
        DyadicComplex::new(ar + br, ai + bi, s)
    }
}

impl Sub for &DyadicComplex {
    type Output = DyadicComplex;
    fn sub(self, rhs: &DyadicComplex) -> DyadicComplex {
        let (ar, ai, br, bi, s) = self.aligned(rhs);
        DyadicComplex::new(ar - br, ai - bi, s)
    }
}

impl Mul for &DyadicComplex {
    type Output = DyadicComplex;
    fn mul(self, rhs: &DyadicComplex) -> DyadicComplex {
        let re = &self.re_num * &rhs.re_num - &self.im_num * &rhs.im_num;
        let im = &self.re_num * &rhs.im_num + &self.im_num * &rhs.re_num;
        DyadicComplex::new(re, im, self.scale + rhs.scale)
    }
}

impl Neg for &DyadicComplex {
    type Output = DyadicComplex;
    fn neg(self) -> DyadicComplex {
        DyadicComplex::new(-&self.re_num, -&self.im_num, self.scale)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for DyadicComplex {
            type Output = DyadicComplex;
            fn $m(self, rhs: DyadicComplex) -> DyadicComplex {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for DyadicComplex {
    type Output = DyadicComplex;
    fn neg(self) -> DyadicComplex {
        -&self
    }
}

fn decimal(num: &BigInt, scale: u64) -> String {
    let neg = num.sign() == BigSign::Minus;
    let mag = num.abs() * num_traits::pow(BigInt::from(5), scale as usize);
    let mut digits = mag.to_string();
    let scale = scale as usize;
    if digits.len() <= scale {
        digits = format!("{}{}", "0".repeat(scale + 1 - digits.len()), digits);
    }
    let (int, frac) = digits.split_at(digits.len() - scale);
    let frac = frac.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Display for DyadicComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = decimal(&self.re_num, self.scale);
        if self.im_num.is_zero() {
            return f.write_str(&re);
        }
        let im = decimal(&self.im_num.abs(), self.scale);
        let op = if self.im_num.is_negative() { '-' } else { '+' };
        if self.re_num.is_zero() {
            let lead = if self.im_num.is_negative() { "-" } else { "" };
            write!(f, "{lead}{im}i")
        } else {
            write!(f, "{re}{op}{im}i")
        }
    }
}

/// `(1 - 2^-ell) <= x c <= 1` for positive real `c` and `x`.
pub fn is_admissible_inverse(c: &DyadicComplex, x: &DyadicComplex, ell: u32) -> bool {
    let p = c * x;
    if !p.is_real() {
        return false;
    }
    let one = DyadicComplex::one();
    let low = &one - &DyadicComplex::pow2(-(ell as i64));
    p.cmp_re(&low) != Ordering::Less && p.cmp_re(&one) != Ordering::Greater
}

/// Every admissible `x = k 2^L` (k odd) with `L >= lowest`, in decreasing `L`.
pub fn admissible_inverses(c: &DyadicComplex, ell: u32, lowest: i64) -> Result<Vec<DyadicComplex>> {
    if !c.is_real() || c.re_num().sign() != BigSign::Plus {
        return Err(Error::NotPositive(c.to_string()));
    }
    let cn = c.re_num().clone();
    let sc = c.scale() as i64;
    let two_l = BigInt::one() << ell as u64;
    // 1/c < 2^top
    let top = (sc - (cn.bits() as i64 - 1)) + 1;
    let mut out = Vec::new();
    for big_l in (lowest..=top).rev() {
        // conditions: (2^ell - 1) 2^t <= cn k 2^ell and cn k <= 2^t, t = sc - L
        let t = sc - big_l;
        let (lo_num, lo_den, hi_num, hi_den) = if t >= 0 {
            ((&two_l - 1u32) << t as u64, &cn * &two_l, BigInt::one() << t as u64, cn.clone())
        } else {
            let u = (-t) as u64;
            (&two_l - 1u32, (&cn * &two_l) << u, BigInt::one(), &cn << u)
        };
        let k_min = ceil_div(&lo_num, &lo_den);
        let k_max = &hi_num / &hi_den;
        let mut k = if (&k_min % 2u32).is_zero() { k_min + 1u32 } else { k_min };
        while k <= k_max {
            let x = if big_l >= 0 {
                DyadicComplex::real(&k << big_l as u64, 0)
            } else {
                DyadicComplex::real(k.clone(), big_l.unsigned_abs())
            };
            out.push(x);
            k += 2u32;
        }
    }
    Ok(out)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a + b - 1u32) / b
}

/// Reference l-inverse: the admissible string whose lowest set bit is
/// highest, found by enumeration down to exponent `-(ell + width_cap)`.
pub fn brute_ell_inverse(c: &DyadicComplex, ell: u32, width_cap: u32) -> Result<DigitString> {
    let lowest = -((ell + width_cap) as i64);
    let all = admissible_inverses(c, ell, lowest)?;
    let first = all.first().ok_or(Error::SearchExhausted { lowest })?;
    Ok(DigitString::from_dyadic_magnitude(first))
}
