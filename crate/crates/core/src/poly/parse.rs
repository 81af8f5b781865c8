//! Text grammar for polynomials.
//!
//! ```text
//! expression  = [sign] term (sign term)*
//! term        = coefficient ['*' power ('*' power)*] | power ('*' power)*
//! coefficient = ['-'] int ['/' positive-int]
//! power       = var ['^' positive-int]
//! var         = ('x' | 'y') digit+
//! ```
//!
//! Whitespace is insignificant. A leading sign and a signed coefficient
//! after a `+` are accepted so that the canonical printer's output, which
//! writes negative terms as `+ -2*x0`, parses back.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Family, Monomial};
use crate::error::{Error, Result};

/// A parsed term: rational coefficient, exponent vector and the family of
/// its variables (if it has any).
pub(crate) struct RawTerm {
    pub coeff: BigRational,
    pub monomial: Monomial,
    pub family: Option<(Family, usize)>,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit string parses"))
    }

    fn positive_usize(&mut self, what: &str) -> Result<usize> {
        let at = self.pos;
        let v = self.digits()?;
        let v: usize = v.try_into().map_err(|_| Error::Syntax {
            position: at,
            message: format!("{what} too large"),
        })?;
        Ok(v)
    }
}

pub(crate) fn parse_terms(text: &str, nvars: usize) -> Result<Vec<RawTerm>> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    if lx.peek().is_none() {
        return lx.err("empty polynomial");
    }
    let mut terms = Vec::new();
    let mut negate = if lx.eat(b'-') {
        true
    } else {
        lx.eat(b'+');
        false
    };
    loop {
        let mut t = parse_term(&mut lx, nvars)?;
        if negate {
            t.coeff = -t.coeff;
        }
        terms.push(t);
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.pos += 1;
                negate = false;
            }
            Some(b'-') => {
                lx.pos += 1;
                negate = true;
            }
            Some(c) => return lx.err(format!("unexpected character '{}'", c as char)),
        }
    }
    Ok(terms)
}

fn parse_term(lx: &mut Lexer<'_>, nvars: usize) -> Result<RawTerm> {
    let mut coeff = BigRational::one();
    let mut exps = vec![0u32; nvars];
    let mut family: Option<(Family, usize)> = None;
    let mut need_power = true;

    match lx.peek() {
        Some(c) if c == b'-' || c.is_ascii_digit() => {
            let neg = lx.eat(b'-');
            let num = lx.digits()?;
            let den = if lx.eat(b'/') {
                let at = lx.pos;
                let d = lx.digits()?;
                if d.is_zero() {
                    lx.pos = at;
                    return lx.err("zero denominator");
                }
                d
            } else {
                BigInt::one()
            };
            coeff = BigRational::new(if neg { -num } else { num }, den);
            if !lx.eat(b'*') {
                need_power = false;
            }
        }
        _ => {}
    }

    if need_power {
        loop {
            parse_power(lx, nvars, &mut exps, &mut family)?;
            if !lx.eat(b'*') {
                break;
            }
        }
    }
    Ok(RawTerm {
        coeff,
        monomial: Monomial::new(exps),
        family,
    })
}

fn parse_power(
    lx: &mut Lexer<'_>,
    nvars: usize,
    exps: &mut [u32],
    family: &mut Option<(Family, usize)>,
) -> Result<()> {
    let start = {
        lx.skip_ws();
        lx.pos
    };
    let fam = match lx.peek() {
        Some(b'x') => Family::Primal,
        Some(b'y') => Family::Dual,
        _ => return lx.err("expected a variable 'x<i>' or 'y<i>'"),
    };
    lx.pos += 1;
    // Digits must follow the letter immediately.
    if !lx.src.get(lx.pos).is_some_and(u8::is_ascii_digit) {
        return lx.err("expected a variable index");
    }
    let index = lx.positive_usize("variable index")?;
    if index >= nvars {
        return Err(Error::VariableOutOfRange { index, nvars });
    }
    match family {
        Some((f, _)) if *f != fam => {
            return Err(Error::Syntax {
                position: start,
                message: "mixed 'x' and 'y' variables in one term".into(),
            })
        }
        _ => *family = Some((fam, start)),
    }
    let exp = if lx.eat(b'^') {
        let at = lx.pos;
        let e = lx.positive_usize("exponent")?;
        if e == 0 {
            lx.pos = at;
            return lx.err("exponent must be positive");
        }
        u32::try_from(e).map_err(|_| Error::Syntax {
            position: at,
            message: "exponent too large".into(),
        })?
    } else {
        1
    };
    exps[index] += exp;
    Ok(())
}
