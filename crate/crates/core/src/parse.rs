//! Recursive descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor (('*' factor) | ('/' integer))*
//! factor := atom ['^' ['-'] integer]
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! `*` is mandatory between factors. A negative exponent is only accepted
//! directly on an invertible variable. Rendering is the `Display` impl of
//! [`Polynomial`]; the two round-trip on canonical forms.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::signature::Signature;

pub fn parse_polynomial<F: Field>(text: &str, sig: &Arc<Signature>) -> Result<Polynomial<F>> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        sig,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.syntax(format!("unexpected `{}`", parser.chars[parser.pos])));
    }
    Ok(p)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    sig: &'a Arc<Signature>,
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<F: Field>(&mut self) -> Result<Polynomial<F>> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<F: Field>(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc * self.factor()?;
            } else if self.eat('/') {
                self.skip_ws();
                let at = self.pos;
                let d = self.integer()?;
                if d.is_zero() {
                    self.pos = at;
                    return Err(self.syntax("division by zero"));
                }
                let inv = BigRational::new(1.into(), d);
                acc = acc.scale(&self.coefficient(&inv)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor<F: Field>(&mut self) -> Result<Polynomial<F>> {
        self.skip_ws();
        let start = self.pos;
        let (base, var) = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        self.skip_ws();
        let exp_at = self.pos;
        let k = self
            .integer()?
            .to_i32()
            .ok_or_else(|| Error::Syntax {
                position: exp_at,
                message: "exponent too large".into(),
            })?;
        if !negative {
            return Ok(base.pow(k as u32));
        }
        match var {
            Some(i) if self.sig.is_invertible(i) => {
                let mut e = vec![0; self.sig.len()];
                e[i] = -k;
                Polynomial::from_monomial(self.sig, Monomial::from_exponents(e), F::one())
            }
            Some(i) => Err(Error::NegativeExponent {
                name: self.sig.name(i).to_string(),
                position: start,
            }),
            None => Err(Error::Syntax {
                position: start,
                message: "negative exponent is only allowed directly on an invertible variable".into(),
            }),
        }
    }

    /// Returns the parsed atom and, if it was a bare variable, its index.
    fn atom<F: Field>(&mut self) -> Result<(Polynomial<F>, Option<usize>)> {
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.syntax("expected `)`"));
                }
                Ok((inner, None))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let c = self.coefficient(&BigRational::from_integer(n))?;
                Ok((Polynomial::constant(self.sig, c), None))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let mut end = self.pos;
                while self
                    .chars
                    .get(end)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    end += 1;
                }
                let name: String = self.chars[self.pos..end].iter().collect();
                let i = self.sig.index_of(&name).ok_or(Error::UnknownVariable {
                    name,
                    position: start,
                })?;
                self.pos = end;
                Ok((Polynomial::var(self.sig, i), Some(i)))
            }
            Some(c) => Err(self.syntax(format!("unexpected `{c}`"))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn coefficient<F: Field>(&self, q: &BigRational) -> Result<F> {
        F::from_rational(q).ok_or_else(|| Error::Unrepresentable(q.to_string()))
    }
}
