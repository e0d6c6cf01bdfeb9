//! Sorted value tables for probability sums over large supports.
//!
//! Term values are held exactly as integers over a common power of two, so
//! the range queries below give the same answers as comparing the states
//! digit by digit.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{Accuracy, Part};
use crate::state::eigenvalue;
use crate::superposition::Superposition;

/// The relation tested between a term `x` of the left operand and a term
/// `y` of the right one, per selected component, with `g = 2^-ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Test {
    /// `|x - y| <= g`
    Within,
    /// `|x - y| < g`
    WithinStrict,
    /// `x + g < y`
    Below,
    /// `x <= y + g`
    AtMost,
}

impl Test {
    fn holds(self, x: &BigInt, y: &BigInt, g: &BigInt) -> bool {
        match self {
            Test::Within => {
                let d = x - y;
                &d <= g && -d <= *g
            }
            Test::WithinStrict => {
                let d = x - y;
                &d < g && -d < *g
            }
            Test::Below => &(x + g) < y,
            Test::AtMost => x <= &(y + g),
        }
    }
}

struct Entry {
    key: BigInt,
    other: BigInt,
    p: f64,
}

pub(crate) struct ValueIndex {
    scale: u64,
    by_imaginary: bool,
    entries: Vec<Entry>,
    // prefix[i] = sum of p over entries[..i]
    prefix: Vec<f64>,
    other_all_zero: bool,
}

impl ValueIndex {
    pub(crate) fn new(psi: &Superposition, by_imaginary: bool) -> Self {
        let values: Vec<_> = psi.probabilities().map(|(s, p)| (eigenvalue(s), p)).collect();
        let scale = values.iter().map(|(v, _)| v.scale()).max().unwrap_or(0);
        let mut entries: Vec<Entry> = values
            .iter()
            .map(|(v, p)| {
                let (re, im) = v.numerators_at(scale);
                let (key, other) = if by_imaginary { (im, re) } else { (re, im) };
                Entry { key, other, p: *p }
            })
            .collect();
        entries.sort_by(|a, b| a.key.cmp(&b.key));
        let mut prefix = Vec::with_capacity(entries.len() + 1);
        prefix.push(0.0);
        for e in &entries {
            prefix.push(prefix.last().unwrap() + e.p);
        }
        let other_all_zero = entries.iter().all(|e| e.other.is_zero());
        ValueIndex { scale, by_imaginary, entries, prefix, other_all_zero }
    }

    pub(crate) fn key_for(part: Part) -> bool {
        !part.real()
    }
}

/// `sum p_x q_y` over term pairs passing `test` on the selected part(s).
/// Both indexes must be keyed on the first selected component.
pub(crate) fn pair_mass(a: &ValueIndex, b: &ValueIndex, acc: Accuracy, part: Part, test: Test) -> f64 {
    debug_assert_eq!(a.by_imaginary, ValueIndex::key_for(part));
    debug_assert_eq!(b.by_imaginary, ValueIndex::key_for(part));
    let ell = acc.ell() as u64;
    let s = a.scale.max(b.scale).max(ell);
    let g = BigInt::one() << (s - ell);
    let (sa, sb) = (s - a.scale, s - b.scale);
    let bkeys: Vec<BigInt> = b.entries.iter().map(|e| &e.key << sb).collect();
    let secondary = part == Part::Both;
    let zero = BigInt::zero();
    let trivial_secondary =
        if secondary && a.other_all_zero && b.other_all_zero { Some(test.holds(&zero, &zero, &g)) } else { None };
    let b_all = b.prefix[b.entries.len()];
    let (mut total, mut all) = (0.0, 0.0);
    for x in &a.entries {
        all += x.p * (b_all - b.prefix[0]);
        let xk = &x.key << sa;
        let (lo, hi) = match test {
            Test::Within => {
                let (l, h) = (&xk - &g, &xk + &g);
                (bkeys.partition_point(|y| *y < l), bkeys.partition_point(|y| *y <= h))
            }
            Test::WithinStrict => {
                let (l, h) = (&xk - &g, &xk + &g);
                (bkeys.partition_point(|y| *y <= l), bkeys.partition_point(|y| *y < h))
            }
            Test::Below => {
                let l = &xk + &g;
                (bkeys.partition_point(|y| *y <= l), bkeys.len())
            }
            Test::AtMost => {
                let l = &xk - &g;
                (bkeys.partition_point(|y| *y < l), bkeys.len())
            }
        };
        if lo >= hi {
            continue;
        }
        let mass = match (secondary, trivial_secondary) {
            (false, _) => b.prefix[hi] - b.prefix[lo],
            (true, Some(true)) => b.prefix[hi] - b.prefix[lo],
            (true, Some(false)) => 0.0,
            (true, None) => {
                let xo = &x.other << sa;
                let passing: Vec<f64> =
                    b.entries[lo..hi].iter().filter(|y| test.holds(&xo, &(&y.other << sb), &g)).map(|y| y.p).collect();
                if passing.len() == hi - lo {
                    b.prefix[hi] - b.prefix[lo]
                } else {
                    passing.iter().sum()
                }
            }
        };
        total += x.p * mass;
    }
    total / all
}

/// For each term of `psi`, in term order, the probability that a
/// measurement of `psi` lands strictly within `2^-ell` of it in both
/// components.
pub(crate) fn strict_neighbor_mass(psi: &Superposition, acc: Accuracy) -> Vec<f64> {
    let values: Vec<_> = psi.probabilities().map(|(s, p)| (eigenvalue(s), p)).collect();
    let ell = acc.ell() as u64;
    let scale = values.iter().map(|(v, _)| v.scale()).max().unwrap_or(0).max(ell);
    let g = BigInt::one() << (scale - ell);
    let points: Vec<(BigInt, BigInt, f64)> = values
        .iter()
        .map(|(v, p)| {
            let (re, im) = v.numerators_at(scale);
            (re, im, *p)
        })
        .collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].0.cmp(&points[b].0));
    let keys: Vec<&BigInt> = order.iter().map(|&i| &points[i].0).collect();
    points
        .iter()
        .map(|(re, im, _)| {
            let (l, h) = (re - &g, re + &g);
            let lo = keys.partition_point(|k| **k <= l);
            let hi = keys.partition_point(|k| **k < h);
            order[lo..hi]
                .iter()
                .map(|&i| &points[i])
                .filter(|(_, oim, _)| Test::WithinStrict.holds(im, oim, &g))
                .map(|(_, _, p)| p)
                .sum()
        })
        .collect()
}
