//! The Gaussian family: superpositions over non-negative grid values
//! weighted by `exp(-n (x - c_n)^2 / sigma^2)`, where `c_n` is the center
//! truncated at exponent `-n`.

use std::f64::consts::LN_2;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{BitPattern, Provenance, SequenceKind, SequenceSpec, StateSequence};
use crate::error::{Error, Result};
use crate::oracle::DyadicComplex;
use crate::state::{LatticeSite, RealComponent, Sign, StringState};
use crate::superposition::{Amplitude, Superposition};

/// Default cap on the grid resolution: support values sit on multiples of
/// `2^-min(n, max_bits)`.
pub const DEFAULT_MAX_BITS: u32 = 10;

/// `exp(-z)` evaluated to accuracy `n`: a Taylor sum whose truncation error
/// is far below `2^-n`, rounded to the nearest multiple of `2^-n`.
pub fn gaussian_weight(z: f64, n: u32) -> f64 {
    let scale = 2f64.powi(n as i32);
    // exp(-z) < 2^-(n+2) rounds to zero
    if z > (n as f64 + 2.0) * LN_2 {
        return 0.0;
    }
    let mut y = z.max(0.0);
    let mut squarings = 0;
    while y > 0.5 {
        y /= 2.0;
        squarings += 1;
    }
    // each squaring doubles the relative error
    let tol = 2f64.powi(-(n as i32) - 8 - squarings);
    let (mut term, mut sum, mut k) = (1.0f64, 1.0f64, 1.0f64);
    while term.abs() > tol {
        term *= -y / k;
        sum += term;
        k += 1.0;
    }
    for _ in 0..squarings {
        sum *= sum;
    }
    (sum * scale).round() / scale
}

fn center_value(center: &BitPattern, u: i64, n: usize) -> f64 {
    let digits = center.truncate(u, -(n as i64));
    RealComponent::new(Sign::Plus, digits).value().to_f64_parts().0
}

/// Weight of the grid point nearest the truncated center.
fn nearest_point_weight(center: &BitPattern, u: i64, n: u32, bits: u32, sigma: f64) -> f64 {
    let c = center_value(center, u, n as usize);
    let grid = 2f64.powi(bits as i32);
    let d = c - (c * grid).round() / grid;
    gaussian_weight(n as f64 * d * d / (sigma * sigma), n)
}

pub fn gaussian_seq(
    center: &BitPattern,
    sigma: &RealComponent,
    u: i64,
    max_bits: u32,
    site: LatticeSite,
) -> Result<StateSequence> {
    if sigma.is_zero() || sigma.sign != Sign::Plus || max_bits == 0 {
        return Err(Error::BadSigma);
    }
    let sigma_f = sigma.value().to_f64_parts().0;
    // Up to max_bits the nearest grid point is checked directly. Beyond it
    // the step is fixed, the nearest point is at most half a step away, and
    // the rounding threshold only loosens with n.
    for n in 1..=max_bits + 1 {
        if nearest_point_weight(center, u, n, n.min(max_bits), sigma_f) == 0.0 {
            return Err(Error::EmptySupport { n: n as usize });
        }
    }
    let step = 2f64.powi(-(max_bits as i32) - 1);
    if step * step / (sigma_f * sigma_f) > LN_2 {
        return Err(Error::EmptySupport { n: max_bits as usize + 2 });
    }
    let spec = SequenceSpec::Gaussian {
        center: center.to_string(),
        sigma: StringState::real(sigma.clone()).to_string(),
        u,
        max_bits,
    };
    let center = center.clone();
    let at = move |n: usize| -> Superposition {
        let n32 = n as u32;
        let bits = n32.min(max_bits);
        let c = center_value(&center, u, n);
        let grid = 2f64.powi(bits as i32);
        let upper = 2f64.powi((u + n as i64 + 1).min(1000) as i32);
        let weight = |k: i64| -> f64 {
            let x = k as f64 / grid;
            if x >= upper {
                return 0.0;
            }
            let d = x - c;
            gaussian_weight(n as f64 * d * d / (sigma_f * sigma_f), n32)
        };
        let kc = (c * grid).round() as i64;
        let mut terms = Vec::new();
        let mut k = kc;
        loop {
            let w = weight(k);
            if w == 0.0 {
                break;
            }
            terms.push((k, w));
            k += 1;
        }
        let mut k = kc - 1;
        while k >= 0 {
            let w = weight(k);
            if w == 0.0 {
                break;
            }
            terms.push((k, w));
            k -= 1;
        }
        let states = terms.into_iter().map(|(k, w)| {
            let v = DyadicComplex::real(BigInt::from(k), bits as u64);
            (StringState::from_dyadic(&v).at(site), Amplitude::new(w, 0.0))
        });
        Superposition::normalized(site, states).expect("support checked at construction")
    };
    Ok(StateSequence::from_parts(Arc::new(at), site, SequenceKind::Gaussian, Provenance::Spec(spec), None))
}
