//! A literal interpreter of the successor and padding operators.
//!
//! Sites hold a qubit value or are unoccupied. Strings are built and added
//! to one power of two at a time, the way the operator products act on a
//! basis state. It is slow on purpose and serves as a second route to the
//! ripple arithmetic for differential tests.

use std::collections::BTreeMap;

use crate::state::DigitString;

/// Occupied sites of one real component, keyed by exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Register {
    sites: BTreeMap<i64, bool>,
}

impl Register {
    pub fn vacuum() -> Self {
        Register::default()
    }

    pub fn from_digits(d: &DigitString) -> Self {
        Register { sites: (d.lo()..=d.hi()).map(|e| (e, d.bit(e))).collect() }
    }

    /// Canonical digits; the vacuum reads as zero.
    pub fn to_digits(&self) -> DigitString {
        DigitString::from_exponents(self.sites.iter().filter(|(_, v)| **v).map(|(e, _)| *e))
    }

    pub fn is_occupied(&self, j: i64) -> bool {
        self.sites.contains_key(&j)
    }

    /// Padding operator: if site `j` is unoccupied, fill zeros from `j`
    /// back toward the binal site until an occupied site is met.
    pub fn pad(&mut self, j: i64) {
        if self.is_occupied(j) {
            return;
        }
        self.sites.insert(j, false);
        match j.cmp(&0) {
            std::cmp::Ordering::Greater => self.pad(j - 1),
            std::cmp::Ordering::Less => self.pad(j + 1),
            std::cmp::Ordering::Equal => {}
        }
    }

    /// Successor at site `j`. Returns false when the operator annihilates
    /// the state (site `j` unoccupied).
    pub fn successor(&mut self, j: i64) -> bool {
        match self.sites.get(&j).copied() {
            None => false,
            Some(false) => {
                self.sites.insert(j, true);
                true
            }
            Some(true) => {
                self.sites.insert(j, false);
                if self.is_occupied(j + 1) {
                    self.successor(j + 1)
                } else {
                    self.sites.insert(j + 1, true);
                    true
                }
            }
        }
    }

    /// Adjoint of the successor at site `j`; false when it annihilates
    /// (unoccupied site or a borrow running off the top).
    pub fn predecessor(&mut self, j: i64) -> bool {
        match self.sites.get(&j).copied() {
            None => false,
            Some(true) => {
                self.sites.insert(j, false);
                true
            }
            Some(false) => {
                self.sites.insert(j, true);
                let top_one = self.sites.get(&(j + 1)) == Some(&true) && !self.is_occupied(j + 2);
                if top_one && j + 1 > 0 {
                    self.sites.remove(&(j + 1));
                    true
                } else {
                    self.predecessor(j + 1)
                }
            }
        }
    }

    /// Pad then step: adds `2^j`.
    pub fn add_power(&mut self, j: i64) {
        self.pad(j);
        let ok = self.successor(j);
        debug_assert!(ok, "padded site is occupied");
    }

    /// Pad then step down: subtracts `2^j`, or returns false on underflow.
    pub fn sub_power(&mut self, j: i64) -> bool {
        self.pad(j);
        self.predecessor(j)
    }
}

/// `(N Z)^s` applied to the vacuum.
pub fn build_from_vacuum(s: &DigitString) -> DigitString {
    add_via_operators(&DigitString::zero(), s).canonical()
}

pub fn add_via_operators(a: &DigitString, b: &DigitString) -> DigitString {
    let mut reg = Register::from_digits(a);
    for e in b.set_exponents() {
        reg.add_power(e);
    }
    reg.to_digits()
}

/// `a - b`, or `None` when `b > a`.
pub fn sub_via_operators(a: &DigitString, b: &DigitString) -> Option<DigitString> {
    let mut reg = Register::from_digits(a);
    for e in b.set_exponents() {
        if !reg.sub_power(e) {
            return None;
        }
    }
    Some(reg.to_digits())
}

/// Sums translated copies of `b`, one per set digit of `a`.
pub fn mul_via_operators(a: &DigitString, b: &DigitString) -> DigitString {
    let mut reg = Register::vacuum();
    for ea in a.set_exponents() {
        for eb in b.set_exponents() {
            reg.add_power(ea + eb);
        }
    }
    reg.to_digits()
}
