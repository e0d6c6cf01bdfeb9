//! Infix expressions over compact literals.
//!
//! ```text
//! expr := term (("+" | "-") term)*
//! term := atom (("*" | "/:" DIGITS) atom)*
//! atom := LITERAL | "(" expr ")"
//! ```
//!
//! A literal takes its sign character with it, so `1+ - 1+` is one minus
//! one and `1+1` is one and a half. Division carries its accuracy:
//! `1+ /:7 101+`.

use std::fmt;

use qreal::arith::{add_a, div_a, mul_a, sub_a, Accuracy};
use qreal::{parse_compact, StringState};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub position: usize,
    pub message: String,
}

impl ExprError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ExprError { position, message: message.into() }
    }

    /// The message, the input, and a caret under the offending column.
    pub fn render(&self, input: &str) -> String {
        let col = input[..self.position.min(input.len())].chars().count();
        format!("error: {}\n  {}\n  {}^", self.message, input, " ".repeat(col))
    }
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at column {}", self.message, self.position + 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Literal(StringState),
    Plus,
    Minus,
    Times,
    Div(u32),
    Open,
    Close,
}

fn literal_end(bytes: &[u8], start: usize) -> usize {
    let digits = |mut i: usize| {
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        i
    };
    let real = |i: usize| {
        let j = digits(i);
        if j < bytes.len() && matches!(bytes[j], b'+' | b'-') {
            digits(j + 1)
        } else {
            j
        }
    };
    let end = real(start);
    if end < bytes.len() && bytes[end] == b';' && end + 1 < bytes.len() && bytes[end + 1].is_ascii_digit() {
        real(end + 1)
    } else {
        end
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let end = literal_end(bytes, i);
                let text = &input[i..end];
                let s = parse_compact(text).map_err(|e| ExprError::new(i + e.position, e.kind.to_string()))?;
                out.push((i, Token::Literal(s)));
                i = end;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Times,
            b'(' => Token::Open,
            b')' => Token::Close,
            b'/' => {
                if bytes.get(i + 1) != Some(&b':') {
                    return Err(ExprError::new(i, "division needs an accuracy, as in /:7"));
                }
                let start = i + 2;
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let ell: u32 = input[start..end]
                    .parse()
                    .map_err(|_| ExprError::new(start, "expected accuracy digits after /:"))?;
                if ell == 0 {
                    return Err(ExprError::new(start, "accuracy must be at least 1"));
                }
                out.push((i, Token::Div(ell)));
                i = end;
                continue;
            }
            _ => {
                let ch = input[i..].chars().next().unwrap_or('?');
                return Err(ExprError::new(i, format!("unexpected character '{ch}'")));
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<StringState, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = add_a(&acc, &self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = sub_a(&acc, &self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<StringState, ExprError> {
        let mut acc = self.atom()?;
        loop {
            match self.peek().cloned() {
                Some(Token::Times) => {
                    self.pos += 1;
                    acc = mul_a(&acc, &self.atom()?);
                }
                Some(Token::Div(ell)) => {
                    self.pos += 1;
                    let at = self.here();
                    let rhs = self.atom()?;
                    let acc_ell = Accuracy::new(ell).expect("checked by the lexer");
                    acc = div_a(&acc, &rhs, acc_ell).map_err(|e| ExprError::new(at, e.to_string()))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<StringState, ExprError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Token::Literal(s)) => {
                self.pos += 1;
                Ok(s)
            }
            Some(Token::Open) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(ExprError::new(self.here(), "expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            None => Err(ExprError::new(at, "expected a literal")),
            Some(_) => Err(ExprError::new(at, "expected a literal or '('")),
        }
    }
}

pub fn evaluate(input: &str) -> Result<StringState, ExprError> {
    let tokens = lex(input)?;
    let mut p = Parser { tokens: &tokens, pos: 0, end: input.len() };
    let v = p.expr()?;
    if p.pos != tokens.len() {
        return Err(ExprError::new(p.here(), "expected an operator"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str) -> String {
        evaluate(s).unwrap().to_string()
    }

    #[test]
    fn examples() {
        assert_eq!(eval("110+1 * 10+1"), "10000+01");
        assert_eq!(eval("1+ /:7 101+"), "0+00110011");
        assert_eq!(eval("1+ - 1+"), "0+");
        assert_eq!(eval("0+;1+ * 0+;1+"), "1-");
        assert_eq!(eval("(1+ + 1+) * 11+"), "110+");
        assert_eq!(eval("1+ + 1+ * 11+"), "100+");
        assert_eq!(eval("1++1+"), "10+");
    }

    #[test]
    fn errors_point_at_the_problem() {
        let e = evaluate("1+ * 12+").unwrap_err();
        assert_eq!(e.position, 6);
        assert_eq!(e.render("1+ * 12+"), "error: non-binary digit '2'\n  1+ * 12+\n        ^");
        assert_eq!(evaluate("1+ 1+").unwrap_err().position, 3);
        assert_eq!(evaluate("1+ / 11+").unwrap_err().position, 3);
        assert_eq!(evaluate("1+ *").unwrap_err().position, 4);
        assert_eq!(evaluate("(1+").unwrap_err().message, "expected ')'");
        assert!(evaluate("1+ /:3 0+").unwrap_err().message.contains("zero"));
        assert_eq!(evaluate("1+ # 1+").unwrap_err().position, 3);
    }
}
