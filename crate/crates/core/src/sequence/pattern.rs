//! Infinite digit patterns written as text.
//!
//! Digits are listed from the top exponent downward. A parenthesized group
//! at the end repeats forever, `...` repeats the last digit, and otherwise
//! the digits continue as zeros: `0(01)` is 1/3, `0...` is zero, `1...`
//! is an endless run of ones.

use std::fmt;

use crate::error::{Error, Result};
use crate::state::DigitString;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitPattern {
    prefix: Vec<bool>,
    cycle: Vec<bool>,
}

impl BitPattern {
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::BadPattern(text.to_string());
        let bits = |s: &str| -> Result<Vec<bool>> {
            s.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(bad()),
                })
                .collect()
        };
        if let Some(head) = text.strip_suffix("...") {
            let prefix = bits(head)?;
            let last = *prefix.last().ok_or_else(bad)?;
            return Ok(BitPattern { prefix, cycle: vec![last] });
        }
        if let Some(open) = text.find('(') {
            let inner = text[open + 1..].strip_suffix(')').ok_or_else(bad)?;
            let cycle = bits(inner)?;
            if cycle.is_empty() {
                return Err(bad());
            }
            return Ok(BitPattern { prefix: bits(&text[..open])?, cycle });
        }
        let prefix = bits(text)?;
        if prefix.is_empty() {
            return Err(bad());
        }
        Ok(BitPattern { prefix, cycle: Vec::new() })
    }

    pub fn zeros() -> Self {
        BitPattern { prefix: Vec::new(), cycle: vec![false] }
    }

    /// The `k`-th digit below the top (`k = 0` is the top digit).
    pub fn digit(&self, k: usize) -> bool {
        if k < self.prefix.len() {
            self.prefix[k]
        } else if self.cycle.is_empty() {
            false
        } else {
            self.cycle[(k - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Digits placed with the top digit at exponent `top`, kept down to
    /// exponent `lowest`.
    pub fn truncate(&self, top: i64, lowest: i64) -> DigitString {
        DigitString::from_exponents((lowest..=top).filter(|e| self.digit((top - e) as usize)))
    }
}

impl fmt::Display for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.prefix {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        if !self.cycle.is_empty() {
            f.write_str("(")?;
            for b in &self.cycle {
                f.write_str(if *b { "1" } else { "0" })?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BitPattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BitPattern::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        let third = BitPattern::parse("0(01)").unwrap();
        assert_eq!(third.truncate(0, -6).to_string(), "0.010101");
        let ones = BitPattern::parse("1...").unwrap();
        assert!((0..50).all(|k| ones.digit(k)));
        let finite = BitPattern::parse("101").unwrap();
        assert_eq!(finite.truncate(0, -5).to_string(), "1.01");
        assert_eq!(finite.truncate(2, -1).to_string(), "101");
        assert!(!BitPattern::parse("0...").unwrap().digit(9));
    }

    #[test]
    fn rejects_garbage() {
        for t in ["", "012", "0(", "0()", "...", "0(1)1"] {
            assert!(BitPattern::parse(t).is_err(), "{t}");
        }
    }
}
