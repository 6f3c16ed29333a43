//! Text form: `s^4 + 3*s^2*t + 2*t^2`.
//!
//! ```text
//! poly   := "0" | ["+" | "-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := "s" ["^" uint] | "t" ["^" uint] | uint
//! ```
//!
//! Whitespace between tokens is ignored. Output lists terms in canonical
//! order, omits unit coefficients except on the constant term, and binds the
//! sign to the term it belongs to.

use std::fmt::{self, Write};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use thiserror::Error;

use super::{pack, Polynomial, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_canonical(self, f)
    }
}

impl Polynomial {
    /// Writes the canonical text form without building a `String`.
    pub fn write_text<W: Write>(&self, out: &mut W) -> fmt::Result {
        write_canonical(self, out)
    }
}

/// Streams the canonical text form into any `fmt::Write` sink.
pub(crate) fn write_canonical<W: Write>(p: &Polynomial, out: &mut W) -> fmt::Result {
    if p.is_zero() {
        return out.write_str("0");
    }
    for (i, term) in p.terms.iter().enumerate() {
        let negative = term.coeff.sign() == Sign::Minus;
        match (i, negative) {
            (0, false) => {}
            (0, true) => out.write_char('-')?,
            (_, false) => out.write_str(" + ")?,
            (_, true) => out.write_str(" - ")?,
        }
        write_term_body(term, out)?;
    }
    Ok(())
}

fn write_term_body<W: Write>(term: &Term, out: &mut W) -> fmt::Result {
    let magnitude = term.coeff.magnitude();
    let is_constant = term.s_exp == 0 && term.t_exp == 0;
    let mut need_star = false;
    if is_constant || !magnitude.is_one() {
        write!(out, "{magnitude}")?;
        need_star = true;
    }
    for (name, e) in [('s', term.s_exp), ('t', term.t_exp)] {
        if e == 0 {
            continue;
        }
        if need_star {
            out.write_char('*')?;
        }
        out.write_char(name)?;
        if e > 1 {
            write!(out, "^{e}")?;
        }
        need_star = true;
    }
    Ok(())
}

impl FromStr for Polynomial {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
        .poly()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let mut terms: Vec<(u64, BigInt)> = Vec::new();
        let mut negative = match self.peek() {
            None => return self.err("empty input"),
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            Some(_) => false,
        };
        loop {
            let (key, mut coeff) = self.term()?;
            if negative {
                coeff = -coeff;
            }
            terms.push((key, coeff));
            negative = match self.peek() {
                None => break,
                Some(b'+') => false,
                Some(b'-') => true,
                Some(c) => return self.err(format!("expected '+' or '-', found {:?}", c as char)),
            };
            self.pos += 1;
        }
        Ok(Polynomial::from_keyed(terms))
    }

    fn term(&mut self) -> Result<(u64, BigInt), ParseError> {
        let mut coeff = BigUint::one();
        let (mut s_exp, mut t_exp) = (0u32, 0u32);
        loop {
            match self.peek() {
                Some(b's') | Some(b't') => {
                    let var = self.src[self.pos];
                    self.pos += 1;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.peek();
                        self.exponent()?
                    } else {
                        1
                    };
                    let slot = if var == b's' { &mut s_exp } else { &mut t_exp };
                    *slot = match slot.checked_add(e) {
                        Some(v) => v,
                        None => return self.err("exponent out of range"),
                    };
                }
                Some(c) if c.is_ascii_digit() => coeff *= self.uint(),
                Some(c) => return self.err(format!("expected a factor, found {:?}", c as char)),
                None => return self.err("expected a factor, found end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((pack(s_exp, t_exp), BigInt::from_biguint(Sign::Plus, coeff)))
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn uint(&mut self) -> BigUint {
        self.digits().parse().unwrap_or_else(|_| BigUint::zero())
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            self.pos = start;
            return self.err("expected an unsigned exponent");
        }
        match digits.parse::<u32>() {
            Ok(e) => Ok(e),
            Err(_) => {
                self.pos = start;
                self.err("exponent out of range")
            }
        }
    }
}
