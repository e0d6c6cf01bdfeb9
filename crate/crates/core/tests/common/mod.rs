#![allow(dead_code)]

use proptest::prelude::*;
use qreal::{DigitString, LatticeSite, RealComponent, Sign, StringState};
use rand::Rng;

/// A component with at most `max_width` digits around the binal point.
pub fn random_component<R: Rng>(rng: &mut R, max_width: usize) -> RealComponent {
    let width = rng.gen_range(1..=max_width);
    let lo = -(rng.gen_range(0..width) as i64);
    let bits = (0..width).map(|_| rng.gen_bool(0.5)).collect();
    let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    RealComponent::new(sign, DigitString::new(lo, bits).unwrap())
}

/// Complex about three times in four.
pub fn random_state<R: Rng>(rng: &mut R, max_width: usize) -> StringState {
    let re = random_component(rng, max_width);
    let im = if rng.gen_bool(0.75) { random_component(rng, max_width) } else { RealComponent::zero() };
    StringState::new(re, im, LatticeSite::default())
}

pub fn component(max_width: usize) -> impl Strategy<Value = RealComponent> {
    (1..=max_width).prop_flat_map(|w| (0..w, proptest::collection::vec(any::<bool>(), w), any::<bool>())).prop_map(
        |(shift, bits, neg)| {
            let sign = if neg { Sign::Minus } else { Sign::Plus };
            RealComponent::new(sign, DigitString::new(-(shift as i64), bits).unwrap())
        },
    )
}

pub fn state(max_width: usize) -> impl Strategy<Value = StringState> {
    (component(max_width), prop_oneof![Just(None), component(max_width).prop_map(Some)])
        .prop_map(|(re, im)| StringState::new(re, im.unwrap_or_else(RealComponent::zero), LatticeSite::default()))
}

pub fn st(text: &str) -> StringState {
    text.parse().unwrap()
}
