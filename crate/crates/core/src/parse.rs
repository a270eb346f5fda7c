//! Polynomial expression parser.
//!
//! Grammar (whitespace ignored, implicit multiplication rejected):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | variable | '(' expr ')'
//! ```
//!
//! Division is accepted only by a nonzero constant, which lets rational
//! coefficients printed as `3/4*s` read back in.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{BigradedPoly, Monomial, Poly, Rational, TPoly, VarSet};

const MAX_EXPONENT: u32 = 10_000;

/// Parses an element of `Q[s,u,t,v]`.
pub fn parse_poly(text: &str) -> Result<BigradedPoly> {
    parse_in(text)
}

/// Parses an element of `Q[T1,T2,T3,T4]`.
pub fn parse_tpoly(text: &str) -> Result<TPoly> {
    parse_in(text)
}

pub fn parse_in<V: VarSet>(text: &str) -> Result<Poly<V>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, _v: std::marker::PhantomData::<V> };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        let c = p.src[p.pos] as char;
        let msg = if c.is_ascii_alphanumeric() || c == '(' {
            format!("unexpected '{c}' (implicit multiplication is not allowed, write '*')")
        } else {
            format!("unexpected '{c}'")
        };
        return Err(p.err(&msg));
    }
    Ok(out)
}

struct Parser<'a, V> {
    src: &'a [u8],
    pos: usize,
    _v: std::marker::PhantomData<V>,
}

impl<V: VarSet> Parser<'_, V> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while !self.at_end() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly<V>> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<V>> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = &acc * &rhs;
            } else {
                let d = constant_value(&rhs).ok_or(Error::Syntax {
                    pos: at,
                    msg: "division is only allowed by a constant".into(),
                })?;
                if d.is_zero() {
                    return Err(Error::Syntax { pos: at, msg: "division by zero".into() });
                }
                acc = acc.scale(&(Rational::from_integer(1.into()) / d));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly<V>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly<V>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected a non-negative integer exponent"));
            }
            let e: u32 = digits
                .parse()
                .ok()
                .filter(|e| *e <= MAX_EXPONENT)
                .ok_or(Error::Syntax { pos: start, msg: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while !self.at_end() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly<V>> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while !self.at_end()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match V::NAMES.iter().position(|n| *n == name) {
                    Some(i) => Ok(Poly::term(Monomial::var(i), Rational::from_integer(1.into()))),
                    None => Err(Error::UnknownVariable { name, pos: start }),
                }
            }
            Some(c) => Err(self.err(&format!("unexpected '{}'", c as char))),
        }
    }
}

fn constant_value<V: VarSet>(p: &Poly<V>) -> Option<Rational> {
    if p.is_zero() {
        return Some(Rational::zero());
    }
    match p.leading_term() {
        Some((m, c)) if p.num_terms() == 1 && *m == Monomial::ONE => Some(c.clone()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn leading_terms_of_a_bicubic() {
        let p = parse_poly("s^2*t^3+2*s*u*t^3").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&Monomial([2, 0, 3, 0])), rat(1));
        assert_eq!(p.coeff(&Monomial([1, 1, 3, 0])), rat(2));
    }

    #[test]
    fn parentheses_expand() {
        assert_eq!(parse_poly("s*(t+v)").unwrap(), parse_poly("s*t + s*v").unwrap());
        assert_eq!(parse_poly("-(s-u)^2").unwrap(), parse_poly("-s^2+2*s*u-u^2").unwrap());
    }

    #[test]
    fn unknown_variable_reports_position() {
        assert_eq!(
            parse_poly("s+x"),
            Err(Error::UnknownVariable { name: "x".into(), pos: 2 })
        );
        assert!(matches!(parse_tpoly("T5"), Err(Error::UnknownVariable { .. })));
    }

    #[test]
    fn implicit_multiplication_rejected() {
        assert!(matches!(parse_poly("2s"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("s t"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("s+"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(s"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("s^"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn rational_coefficients() {
        let p = parse_poly("3/4*s - 1/2").unwrap();
        assert_eq!(p.to_string(), "3/4*s - 1/2");
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        assert!(parse_poly("s/t").is_err());
        assert!(parse_poly("s/0").is_err());
    }

    #[test]
    fn tpoly_parse() {
        let q = parse_tpoly("3*T1^2*T2 - T3^3").unwrap();
        assert_eq!(q.to_string(), "3*T1^2*T2 - T3^3");
    }
}
