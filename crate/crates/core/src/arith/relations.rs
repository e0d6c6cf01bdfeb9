use std::cmp::Ordering;

use super::magnitude::cmp_mag;
use crate::state::{RealComponent, Sign, StringState};

/// Equality of canonical digits and signs in both components. The site is
/// a label and does not take part.
pub fn eq_a(a: &StringState, b: &StringState) -> bool {
    a.re.canonical() == b.re.canonical() && a.im.canonical() == b.im.canonical()
}

/// Signed order of two real components. Magnitudes are compared digit by
/// digit; for two negatives the magnitude order flips.
pub fn cmp_real(a: &RealComponent, b: &RealComponent) -> Ordering {
    let sa = if a.is_zero() { None } else { Some(a.sign) };
    let sb = if b.is_zero() { None } else { Some(b.sign) };
    match (sa, sb) {
        (None, None) => Ordering::Equal,
        (None, Some(Sign::Plus)) | (Some(Sign::Minus), None) => Ordering::Less,
        (None, Some(Sign::Minus)) | (Some(Sign::Plus), None) => Ordering::Greater,
        (Some(Sign::Minus), Some(Sign::Plus)) => Ordering::Less,
        (Some(Sign::Plus), Some(Sign::Minus)) => Ordering::Greater,
        (Some(Sign::Plus), Some(Sign::Plus)) => cmp_mag(&a.digits, &b.digits),
        (Some(Sign::Minus), Some(Sign::Minus)) => cmp_mag(&b.digits, &a.digits),
    }
}

pub fn leq_a_real(a: &RealComponent, b: &RealComponent) -> bool {
    cmp_real(a, b) != Ordering::Greater
}

pub fn lt_a_real(a: &RealComponent, b: &RealComponent) -> bool {
    cmp_real(a, b) == Ordering::Less
}

/// `Some(true)` when both parts satisfy `<=`, `Some(false)` when both
/// satisfy `>=` without both being equal, `None` when the parts disagree.
pub fn leq_a_complex(a: &StringState, b: &StringState) -> Option<bool> {
    let r = cmp_real(&a.re, &b.re);
    let i = cmp_real(&a.im, &b.im);
    if r != Ordering::Greater && i != Ordering::Greater {
        Some(true)
    } else if r != Ordering::Less && i != Ordering::Less {
        Some(false)
    } else {
        None
    }
}
