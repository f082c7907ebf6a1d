//! Text form of state vectors:
//!
//! ```text
//! vector := term (('+'|'-') term)*
//! term   := [coeff '*'] mode* 'vac'
//! coeff  := rational | '(' poly ')'
//! mode   := ('L'|'Wt') '(' integer ')'
//! ```
//!
//! e.g. `Wt(-3)Wt(-3)vac - 19/36*L(-3)L(-3)vac`. The literal `0` denotes
//! the zero vector.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::mode::{Family, Mode};
use super::module::{StateVector, W3Module};
use crate::error::{Error, Result};
use crate::exact::{Poly, Rational};

/// A parsed term before it is put into PBW form: coefficient and the
/// (not necessarily canonical) word of modes.
pub type RawTerm = (Poly, Vec<Mode>);

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: msg.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected digits"));
        }
        let n = self.rest()[..len].parse().unwrap();
        self.pos += len;
        Ok(n)
    }

    fn signed_integer(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let start = self.pos;
        let n = self.digits()?;
        let n: i64 = n.try_into().map_err(|_| Error::Syntax {
            position: start,
            message: "index out of range".into(),
        })?;
        Ok(if neg { -n } else { n })
    }

    fn coefficient(&mut self) -> Result<Option<Poly>> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let value = if self.eat('/') {
                    let d = self.digits()?;
                    if d == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    Rational::new(n, d)
                } else {
                    Rational::from_integer(n)
                };
                Ok(Some(Poly::constant(value)))
            }
            Some('(') => {
                let start = self.pos + 1;
                let mut depth = 0usize;
                let mut end = None;
                for (i, ch) in self.rest().char_indices() {
                    match ch {
                        '(' => depth += 1,
                        ')' => {
                            depth -= 1;
                            if depth == 0 {
                                end = Some(self.pos + i);
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                let end = end.ok_or_else(|| self.err("unbalanced parenthesis"))?;
                let poly: Poly = self.src[start..end].parse().map_err(|e| match e {
                    Error::Syntax { position, message } => Error::Syntax {
                        position: start + position,
                        message,
                    },
                    other => other,
                })?;
                self.pos = end + 1;
                Ok(Some(poly))
            }
            _ => Ok(None),
        }
    }

    fn term(&mut self) -> Result<RawTerm> {
        let coeff = match self.coefficient()? {
            Some(c) => {
                if !self.eat('*') {
                    return Err(self.err("expected `*` after coefficient"));
                }
                c
            }
            None => Poly::one(),
        };
        let mut word = Vec::new();
        loop {
            self.skip_ws();
            let ident_len = self
                .rest()
                .bytes()
                .take_while(u8::is_ascii_alphanumeric)
                .count();
            if ident_len == 0 {
                return Err(self.err("expected a mode or `vac`"));
            }
            let ident = &self.rest()[..ident_len];
            self.pos += ident_len;
            let family = match ident {
                "vac" => return Ok((coeff, word)),
                "L" => Family::L,
                "Wt" => Family::Wt,
                other => return Err(Error::UnknownGenerator(other.to_string())),
            };
            if !self.eat('(') {
                return Err(self.err("expected `(`"));
            }
            let index = self.signed_integer()?;
            if !self.eat(')') {
                return Err(self.err("expected `)`"));
            }
            let mode = Mode { family, index };
            if index >= 0 {
                return Err(Error::NotCreation(mode.to_string()));
            }
            word.push(mode);
        }
    }

    fn vector(&mut self) -> Result<Vec<RawTerm>> {
        if self.peek() == Some('0') {
            let save = self.pos;
            self.pos += 1;
            if self.peek().is_none() {
                return Ok(Vec::new());
            }
            self.pos = save;
        }
        let mut terms = Vec::new();
        let mut negate = self.eat('-');
        loop {
            let (c, w) = self.term()?;
            terms.push((if negate { -c } else { c }, w));
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(terms)
    }
}

/// Parses the expression into raw (coefficient, word) terms.
pub fn parse_terms(text: &str) -> Result<Vec<RawTerm>> {
    Parser { src: text, pos: 0 }.vector()
}

impl W3Module {
    /// Parses a vector expression and brings it into PBW form in this module.
    pub fn parse_vector(&self, text: &str) -> Result<StateVector> {
        let mut acc = self.zero_vector();
        let hw = self.highest_weight_vector();
        for (c, word) in parse_terms(text)? {
            let v = self.apply_word(&word, &hw)?;
            acc = acc.add(&v.scale_poly(&c))?;
        }
        Ok(acc)
    }
}

/// Prints a vector in the expression grammar.
pub fn format_vector(v: &StateVector) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in v.terms().iter().enumerate() {
        match c.as_constant() {
            Some(r) => {
                let neg = r.is_negative();
                if i == 0 {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                let mag = r.abs();
                if !mag.is_one() {
                    write!(out, "{}*", mag).unwrap();
                }
            }
            None => {
                if i > 0 {
                    out.push_str(" + ");
                }
                write!(out, "({})*", c).unwrap();
            }
        }
        write!(out, "{}", m).unwrap();
    }
    out
}

impl std::fmt::Display for StateVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_vector(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Var};
    use crate::w3core::{AlgebraParams, Monomial};

    #[test]
    fn parse_single_mode() {
        let vm = W3Module::vacuum_c_minus_two();
        let v = vm.parse_vector("L(-2)vac").unwrap();
        assert_eq!(v, vm.basis_vector(&Monomial(vec![Mode::l(-2)])));
    }

    #[test]
    fn positive_index_is_rejected() {
        let vm = W3Module::vacuum_c_minus_two();
        assert_eq!(
            vm.parse_vector("L(2)vac"),
            Err(Error::NotCreation("L(2)".into()))
        );
        assert_eq!(
            vm.parse_vector("X(-2)vac"),
            Err(Error::UnknownGenerator("X".into()))
        );
        assert!(matches!(
            vm.parse_vector("L(-2)"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            vm.parse_vector("3/4 L(-2)vac"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn parse_puts_words_in_pbw_form() {
        let vm = W3Module::vacuum_c_minus_two();
        // L_{-2} L_{-3} = L_{-3} L_{-2} + L_{-5}
        let v = vm.parse_vector("L(-2)L(-3)vac").unwrap();
        let w = vm.parse_vector("L(-3)L(-2)vac + L(-5)vac").unwrap();
        assert_eq!(v, w);
        assert!(vm.parse_vector("L(-1)vac").unwrap().is_zero());
        assert!(vm.parse_vector("0").unwrap().is_zero());
    }

    #[test]
    fn round_trip_with_polynomial_coefficients() {
        let verma = W3Module::verma_symbolic(AlgebraParams::c_minus_two());
        let v = verma.parse_vector("L(1)L(-1)vac").err();
        assert!(v.is_some());
        let v = verma
            .parse_vector("(t - w)*L(-1)vac - 3/2*Wt(-2)vac")
            .unwrap();
        assert_eq!(
            v.coeff(&Monomial(vec![Mode::l(-1)])),
            &Poly::var(Var::T) - &Poly::var(Var::W)
        );
        let again = verma.parse_vector(&format_vector(&v)).unwrap();
        assert_eq!(v, again);
        assert_eq!(
            v.coeff(&Monomial(vec![Mode::wt(-2)])),
            Poly::constant(rat(-3, 2))
        );
    }
}
