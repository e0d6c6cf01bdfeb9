//! Compact sign/binal text.
//!
//! A real component is written as its integer digits, a sign character
//! standing in for the binal point, then its fraction digits:
//! `110+1` is 6.5 and `110-1` is -6.5. A complex state joins two such
//! components with `;`. Only the digits `0` and `1` are accepted.
//!
//! ```
//! use qreal::{format_compact, parse_compact};
//!
//! let s = parse_compact("0110+10;0-01").unwrap();
//! assert_eq!(format_compact(&s), "110+1;0-01");
//! ```

use crate::error::{ParseError, ParseErrorKind};
use crate::state::{canonicalize, DigitString, RealComponent, Sign, StringState};

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<Vec<bool>, ParseError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            match c {
                b'0' => out.push(false),
                b'1' => out.push(true),
                b'2'..=b'9' => return Err(ParseError::new(self.pos, ParseErrorKind::NonBinaryDigit(c as char))),
                _ => break,
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn unexpected(&self) -> ParseError {
        let c = std::str::from_utf8(&self.text[self.pos..]).ok().and_then(|s| s.chars().next()).unwrap_or('?');
        ParseError::new(self.pos, ParseErrorKind::UnexpectedChar(c))
    }

    fn real(&mut self) -> Result<RealComponent, ParseError> {
        let start = self.pos;
        let int = self.digits()?;
        let sign = match self.peek() {
            Some(b'+') => Sign::Plus,
            Some(b'-') => Sign::Minus,
            None if !int.is_empty() => return Err(ParseError::new(self.pos, ParseErrorKind::MissingSign)),
            None => return Err(ParseError::new(start, ParseErrorKind::MissingIntegerDigits)),
            Some(b';') if !int.is_empty() => return Err(ParseError::new(self.pos, ParseErrorKind::MissingSign)),
            Some(_) => return Err(self.unexpected()),
        };
        if int.is_empty() {
            return Err(ParseError::new(start, ParseErrorKind::MissingIntegerDigits));
        }
        self.pos += 1;
        let frac = self.digits()?;
        let hi = int.len() as i64 - 1;
        let lo = -(frac.len() as i64);
        let msb: Vec<bool> = int.into_iter().chain(frac).collect();
        let digits = DigitString::from_msb(hi, lo, &msb).expect("interval spans the binal point");
        Ok(RealComponent::new(sign, digits))
    }
}

/// Reads `REAL` or `REAL;REAL` into a canonical state at the default site.
pub fn parse_compact(text: &str) -> Result<StringState, ParseError> {
    if text.is_empty() {
        return Err(ParseError::new(0, ParseErrorKind::Empty));
    }
    let mut cur = Cursor { text: text.as_bytes(), pos: 0 };
    let re = cur.real()?;
    let im = match cur.peek() {
        None => RealComponent::zero(),
        Some(b';') => {
            cur.pos += 1;
            cur.real()?
        }
        Some(_) => return Err(cur.unexpected()),
    };
    if cur.peek().is_some() {
        return Err(ParseError::new(cur.pos, ParseErrorKind::TrailingInput));
    }
    Ok(canonicalize(&StringState::real(re).with_im(im)))
}

fn write_real(out: &mut String, c: &RealComponent) {
    let c = c.canonical();
    for e in (0..=c.digits.hi()).rev() {
        out.push(if c.digits.bit(e) { '1' } else { '0' });
    }
    out.push(c.sign.as_char());
    for e in (c.digits.lo()..0).rev() {
        out.push(if c.digits.bit(e) { '1' } else { '0' });
    }
}

/// Canonical compact text; the imaginary part is omitted when it is zero.
pub fn format_compact(state: &StringState) -> String {
    let mut out = String::new();
    write_real(&mut out, &state.re);
    if !state.im.is_zero() {
        out.push(';');
        write_real(&mut out, &state.im);
    }
    out
}

impl StringState {
    fn with_im(mut self, im: RealComponent) -> Self {
        self.im = im;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::eigenvalue;

    #[test]
    fn examples() {
        assert_eq!(eigenvalue(&parse_compact("110+1").unwrap()).to_string(), "6.5");
        assert_eq!(eigenvalue(&parse_compact("110-1").unwrap()).to_string(), "-6.5");
        let z = parse_compact("0+").unwrap();
        assert!(z.is_zero());
        let s = parse_compact("0+00110011;10-1").unwrap();
        assert_eq!(eigenvalue(&s).to_string(), "0.19921875-2.5i");
    }

    #[test]
    fn canonical_text() {
        assert_eq!(format_compact(&parse_compact("000+000").unwrap()), "0+");
        assert_eq!(format_compact(&parse_compact("0-").unwrap()), "0+");
        assert_eq!(format_compact(&parse_compact("01-0100").unwrap()), "1-01");
        assert_eq!(format_compact(&parse_compact("1+;0-").unwrap()), "1+");
        assert_eq!(format_compact(&parse_compact("0+;1-").unwrap()), "0+;1-");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_compact("10+12").unwrap_err();
        assert_eq!(e.position, 4);
        assert_eq!(e.kind, ParseErrorKind::NonBinaryDigit('2'));
        assert_eq!(parse_compact("101").unwrap_err().kind, ParseErrorKind::MissingSign);
        assert_eq!(parse_compact("+1").unwrap_err().kind, ParseErrorKind::MissingIntegerDigits);
        assert_eq!(parse_compact("1+1;").unwrap_err().position, 4);
        assert_eq!(parse_compact("1+1;1+0;").unwrap_err().kind, ParseErrorKind::TrailingInput);
        assert_eq!(parse_compact("1+x").unwrap_err().position, 2);
        assert_eq!(parse_compact("").unwrap_err().kind, ParseErrorKind::Empty);
    }
}
