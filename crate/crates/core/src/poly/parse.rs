//! Recursive-descent parser for the polynomial text grammar.
//!
//! Terms are separated by `+`/`-`; a term is an optional coefficient
//! (integer or `a/b`) followed by `*`-separated factors `x<k>` or
//! `x<k>^<e>`. Whitespace is insignificant. Variables run `x0..x<n>`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldValue};
use crate::poly::{HomogPoly, Monomial, PolySum};

/// Parses `text` into a sum of homogeneous components over `field`.
///
/// Example: `1/2*x0^2*x1 - x2^3`.
pub fn parse_poly(text: &str, nvars: usize, field: &FieldDescriptor) -> Result<PolySum> {
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
        nvars,
        field: *field,
    }
    .parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    nvars: usize,
    field: FieldDescriptor,
}

impl Parser<'_> {
    fn parse(mut self) -> Result<PolySum> {
        let mut terms: Vec<(Monomial, FieldValue)> = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.syntax("empty polynomial"));
        }
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negate { c.neg() } else { c }));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    negate = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    negate = true;
                    self.pos += 1;
                }
                Some(c) => {
                    return Err(self.syntax(format!("expected `+` or `-`, found `{}`", c as char)))
                }
            }
        }
        let mut by_degree: std::collections::BTreeMap<u32, Vec<(Monomial, FieldValue)>> =
            std::collections::BTreeMap::new();
        for (m, c) in terms {
            by_degree.entry(m.degree()).or_default().push((m, c));
        }
        PolySum::from_components(
            self.field,
            self.nvars,
            by_degree
                .into_iter()
                .map(|(d, ts)| HomogPoly::from_terms(self.field, self.nvars, d, ts))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// One term: `coefficient? ('*'? factor)*` where factors are joined by `*`.
    fn term(&mut self) -> Result<(Monomial, FieldValue)> {
        self.skip_ws();
        let mut coeff = FieldValue::one(&self.field);
        let mut monomial = Monomial::one(self.nvars);
        let mut saw_factor = false;

        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.number()?;
            saw_factor = true;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                saw_factor = false; // a variable factor must follow
            } else if matches!(self.peek(), Some(b'x')) {
                return Err(self.syntax("expected `*` between coefficient and variable"));
            }
        }

        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'x') => {
                    let (idx, exp) = self.factor()?;
                    let mut exps = vec![0u32; self.nvars];
                    exps[idx] = exp;
                    monomial = monomial.mul(&Monomial::new(exps));
                    self.skip_ws();
                    if self.peek() == Some(b'*') {
                        self.pos += 1;
                        saw_factor = false;
                        continue;
                    }
                    break;
                }
                _ if !saw_factor => {
                    return Err(self.syntax("expected a coefficient or variable"));
                }
                _ => break,
            }
        }
        Ok((monomial, coeff))
    }

    /// `x<k>` or `x<k>^<e>`.
    fn factor(&mut self) -> Result<(usize, u32)> {
        let start = self.pos;
        self.pos += 1; // consume 'x'
        let idx_digits = self.digits()?;
        let idx: usize = idx_digits
            .parse()
            .map_err(|_| self.syntax_at(start, "variable index out of range"))?;
        if idx >= self.nvars {
            return Err(Error::UnknownVariable {
                name: format!("x{idx}"),
                pos: start,
            });
        }
        let mut exp = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e_digits = self.digits()?;
            exp = e_digits
                .parse()
                .map_err(|_| self.syntax("exponent out of range"))?;
        }
        Ok((idx, exp))
    }

    /// Unsigned integer or `a/b` fraction, mapped into the field.
    fn number(&mut self) -> Result<FieldValue> {
        let num: BigInt = self.digits()?.parse().expect("digits parse as BigInt");
        let num = FieldValue::parse(&num.to_string(), &self.field)?;
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                return Err(self.syntax("expected denominator digits"));
            }
            let den: BigInt = self.digits()?.parse().expect("digits parse as BigInt");
            let den = FieldValue::parse(&den.to_string(), &self.field)?;
            return num.try_div(&den);
        }
        Ok(num)
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax("expected digits"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .to_string())
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        self.syntax_at(self.pos, message)
    }

    fn syntax_at(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::SyntaxError {
            pos,
            message: message.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    #[test]
    fn accepts_documented_grammar() {
        let s = parse_poly("2*x0*x1 - x2^2", 3, &Q).unwrap();
        let h = s.as_homogeneous().unwrap();
        assert_eq!(h.degree(), 2);
        assert_eq!(h.terms().count(), 2);

        let mixed = parse_poly("x0^2 + x1", 2, &Q).unwrap();
        assert_eq!(mixed.components().len(), 2);

        let frac = parse_poly("1/2*x0^2*x1 - x2^3", 3, &Q).unwrap();
        assert_eq!(frac.as_homogeneous().unwrap().degree(), 3);
    }

    #[test]
    fn rejects_double_sign() {
        let err = parse_poly("x0 + + x1", 2, &Q).unwrap_err();
        assert!(matches!(err, Error::SyntaxError { .. }), "{err:?}");
    }

    #[test]
    fn rejects_unknown_variable() {
        let err = parse_poly("x0 + x5", 2, &Q).unwrap_err();
        assert!(matches!(err, Error::UnknownVariable { ref name, .. } if name == "x5"));
    }

    #[test]
    fn rejects_trailing_garbage() {
        assert!(parse_poly("x0 x1", 2, &Q).is_err());
        assert!(parse_poly("", 2, &Q).is_err());
        assert!(parse_poly("3 *", 2, &Q).is_err());
    }

    #[test]
    fn constants_and_cancellation() {
        let c = parse_poly("5", 1, &Q).unwrap();
        assert_eq!(c.components().len(), 1);
        assert_eq!(c.degree(), Some(0));
        let z = parse_poly("x0 - x0", 1, &Q).unwrap();
        assert!(z.is_zero());
        let z2 = parse_poly("0", 1, &Q).unwrap();
        assert!(z2.is_zero());
    }

    #[test]
    fn modular_coefficients_reduce() {
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        let s = parse_poly("9*x0 + 1/2*x1", 2, &f7).unwrap();
        let h = s.as_homogeneous().unwrap();
        // 9 ≡ 2 and 1/2 ≡ 4 mod 7
        let two = FieldValue::from_integer(&f7, 2);
        let four = FieldValue::from_integer(&f7, 4);
        assert_eq!(h.coefficient(&Monomial::variable(2, 0)), two);
        assert_eq!(h.coefficient(&Monomial::variable(2, 1)), four);
    }
}
