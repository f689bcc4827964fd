//! Exact arithmetic over the ground fields: the rationals and prime fields.
//!
//! Every other module is generic over [`FieldValue`], which wraps either an
//! arbitrary-precision reduced fraction or a canonical residue mod a prime.
//! Mixing values from different fields is an error, never a coercion.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller–Rabin; the fixed base set decides primality for
/// every u64.
fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if p == small {
            return true;
        }
        if p.is_multiple_of(small) {
            return false;
        }
    }
    let mut d = p - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, p);
        if x == 1 || x == p - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_pow(x, 2, p);
            if x == p - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The ground field of a computation: `ℚ` or `𝔽_p`.
///
/// Text form is `Q` or `Fp:<p>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(Prime),
}

impl FieldDescriptor {
    pub fn prime_field(p: u64) -> Result<Self> {
        Ok(FieldDescriptor::PrimeField(Prime::new(p)?))
    }

    /// 0 for the rationals, p for 𝔽_p.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::PrimeField(p) => p.get(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldDescriptor::PrimeField(_))
    }

    /// Iterates over every field element exactly once.
    ///
    /// Errors with [`Error::InfiniteField`] over the rationals.
    pub fn elements(&self) -> Result<FieldElements> {
        match self {
            FieldDescriptor::Rationals => Err(Error::InfiniteField),
            FieldDescriptor::PrimeField(p) => Ok(FieldElements { p: *p, next: 0 }),
        }
    }

    pub fn zero(&self) -> FieldValue {
        FieldValue::zero(self)
    }

    pub fn one(&self) -> FieldValue {
        FieldValue::one(self)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p.parse().map_err(|_| Error::InvalidLiteral {
                text: s.to_string(),
            })?;
            return FieldDescriptor::prime_field(p);
        }
        Err(Error::InvalidLiteral {
            text: s.to_string(),
        })
    }
}

/// Iterator over the elements of a prime field.
#[derive(Debug, Clone)]
pub struct FieldElements {
    p: Prime,
    next: u64,
}

impl Iterator for FieldElements {
    type Item = FieldValue;

    fn next(&mut self) -> Option<FieldValue> {
        if self.next >= self.p.get() {
            return None;
        }
        let v = FieldValue::modular(self.p, self.next);
        self.next += 1;
        Some(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Modular { p: Prime, residue: u64 },
}

/// An exact scalar in ℚ or 𝔽_p.
///
/// Rational payloads are kept in lowest terms with positive denominator;
/// modular payloads are canonical residues in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldValue(Repr);

impl FieldValue {
    pub fn zero(field: &FieldDescriptor) -> Self {
        match field {
            FieldDescriptor::Rationals => FieldValue(Repr::Rational(BigRational::zero())),
            FieldDescriptor::PrimeField(p) => FieldValue(Repr::Modular { p: *p, residue: 0 }),
        }
    }

    pub fn one(field: &FieldDescriptor) -> Self {
        match field {
            FieldDescriptor::Rationals => FieldValue(Repr::Rational(BigRational::one())),
            FieldDescriptor::PrimeField(p) => FieldValue::modular(*p, 1),
        }
    }

    pub fn from_integer(field: &FieldDescriptor, n: i64) -> Self {
        match field {
            FieldDescriptor::Rationals => {
                FieldValue(Repr::Rational(BigRational::from(BigInt::from(n))))
            }
            FieldDescriptor::PrimeField(p) => {
                let m = p.get() as i128;
                let r = ((n as i128 % m) + m) % m;
                FieldValue(Repr::Modular {
                    p: *p,
                    residue: r as u64,
                })
            }
        }
    }

    /// A rational `num/den`. Errors if `den` is zero.
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldValue(Repr::Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        ))))
    }

    pub fn from_bigrational(r: BigRational) -> Self {
        FieldValue(Repr::Rational(r))
    }

    /// The canonical residue of `r` in 𝔽_p.
    pub fn modular(p: Prime, r: u64) -> Self {
        FieldValue(Repr::Modular {
            p,
            residue: r % p.get(),
        })
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match &self.0 {
            Repr::Rational(_) => FieldDescriptor::Rationals,
            Repr::Modular { p, .. } => FieldDescriptor::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_zero(),
            Repr::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_one(),
            Repr::Modular { residue, .. } => *residue == 1,
        }
    }

    /// The rational payload, if this value lives in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Modular { .. } => None,
        }
    }

    /// The canonical residue, if this value lives in a prime field.
    pub fn as_residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Modular { residue, .. } => Some(*residue),
            Repr::Rational(_) => None,
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.descriptor() == other.descriptor() {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => FieldValue(Repr::Rational(a + b)),
            (Repr::Modular { p, residue: a }, Repr::Modular { residue: b, .. }) => {
                let m = p.get() as u128;
                FieldValue(Repr::Modular {
                    p: *p,
                    residue: ((*a as u128 + *b as u128) % m) as u64,
                })
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => FieldValue(Repr::Rational(a * b)),
            (Repr::Modular { p, residue: a }, Repr::Modular { residue: b, .. }) => {
                let m = p.get() as u128;
                FieldValue(Repr::Modular {
                    p: *p,
                    residue: ((*a as u128 * *b as u128) % m) as u64,
                })
            }
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// Equality as a field operation; mixed fields are an error, not `false`.
    pub fn try_eq(&self, other: &Self) -> Result<bool> {
        self.same_field(other)?;
        Ok(self == other)
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Rational(a) => FieldValue(Repr::Rational(-a)),
            Repr::Modular { p, residue } => {
                let m = p.get();
                FieldValue(Repr::Modular {
                    p: *p,
                    residue: if *residue == 0 { 0 } else { m - residue },
                })
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(a) => FieldValue(Repr::Rational(a.recip())),
            Repr::Modular { p, residue } => {
                // Fermat: a^(p-2) inverts a for prime p.
                FieldValue(Repr::Modular {
                    p: *p,
                    residue: mod_pow(*residue, p.get() - 2, p.get()),
                })
            }
        })
    }

    /// Integer power, with negative exponents via inversion.
    ///
    /// `0^0 = 1`; `0^e` for `e < 0` is [`Error::DivisionByZero`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = FieldValue::one(&self.descriptor());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.try_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Parses an integer or `a/b` literal into the given field.
    pub fn parse(text: &str, field: &FieldDescriptor) -> Result<Self> {
        let bad = || Error::InvalidLiteral {
            text: text.to_string(),
        };
        let text = text.trim();
        let (num_text, den_text) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let num: BigInt = num_text.parse().map_err(|_| bad())?;
        let num = bigint_into_field(&num, field);
        match den_text {
            None => Ok(num),
            Some(d) => {
                let den: BigInt = d.parse().map_err(|_| bad())?;
                num.try_div(&bigint_into_field(&den, field))
            }
        }
    }
}

fn bigint_into_field(n: &BigInt, field: &FieldDescriptor) -> FieldValue {
    match field {
        FieldDescriptor::Rationals => FieldValue(Repr::Rational(BigRational::from(n.clone()))),
        FieldDescriptor::PrimeField(p) => {
            let m = BigInt::from(p.get());
            let mut r = n % &m;
            if r.is_negative() {
                r += &m;
            }
            let (_, digits) = r.to_u64_digits();
            FieldValue(Repr::Modular {
                p: *p,
                residue: digits.first().copied().unwrap_or(0),
            })
        }
    }
}

fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) => write!(f, "{r}"),
            Repr::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

macro_rules! arith_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &FieldValue {
            type Output = FieldValue;

            fn $method(self, rhs: &FieldValue) -> FieldValue {
                self.$checked(rhs).expect("mixed field descriptors")
            }
        }
    };
}

arith_op!(Add, add, try_add);
arith_op!(Sub, sub, try_sub);
arith_op!(Mul, mul, try_mul);

impl std::ops::Neg for &FieldValue {
    type Output = FieldValue;

    fn neg(self) -> FieldValue {
        FieldValue::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldValue {
        FieldValue::rational(n, d).unwrap()
    }

    fn fp(p: u64, r: u64) -> FieldValue {
        FieldValue::modular(Prime::new(p).unwrap(), r)
    }

    #[test]
    fn rational_add_reduces() {
        assert_eq!(q(2, 3).try_add(&q(1, 6)).unwrap(), q(5, 6));
        // 1/2 + 1/2 must normalize all the way to 1/1
        let s = q(1, 2).try_add(&q(1, 2)).unwrap();
        assert!(s.is_one());
        assert_eq!(s.to_string(), "1");
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(fp(7, 3).inv().unwrap(), fp(7, 5));
        assert_eq!(fp(7, 3).try_mul(&fp(7, 5)).unwrap(), fp(7, 1));
    }

    #[test]
    fn additive_identity() {
        let a = q(-7, 4);
        assert_eq!(a.try_add(&FieldValue::zero(&a.descriptor())).unwrap(), a);
        let b = fp(11, 6);
        assert_eq!(b.try_add(&FieldValue::zero(&b.descriptor())).unwrap(), b);
    }

    #[test]
    fn inversion_exhaustive_small_primes() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let field = FieldDescriptor::prime_field(p).unwrap();
            for a in field.elements().unwrap() {
                if a.is_zero() {
                    assert_eq!(a.inv(), Err(Error::DivisionByZero));
                } else {
                    assert!(a.inv().unwrap().try_mul(&a).unwrap().is_one());
                }
            }
        }
    }

    #[test]
    fn enumeration() {
        let f2 = FieldDescriptor::prime_field(2).unwrap();
        let elems: Vec<_> = f2.elements().unwrap().collect();
        assert_eq!(elems, vec![fp(2, 0), fp(2, 1)]);
        let f3 = FieldDescriptor::prime_field(3).unwrap();
        assert_eq!(f3.elements().unwrap().count(), 3);
        assert_eq!(
            FieldDescriptor::Rationals.elements().err(),
            Some(Error::InfiniteField)
        );
    }

    #[test]
    fn mixed_fields_is_hard_error() {
        let a = q(1, 2);
        let b = fp(5, 2);
        assert_eq!(a.try_add(&b), Err(Error::MixedFields));
        assert_eq!(a.try_eq(&b), Err(Error::MixedFields));
    }

    #[test]
    fn division_by_zero() {
        let z = FieldValue::zero(&FieldDescriptor::Rationals);
        assert_eq!(q(1, 1).try_div(&z), Err(Error::DivisionByZero));
        assert_eq!(z.pow(-1), Err(Error::DivisionByZero));
        assert!(z.pow(0).unwrap().is_one());
    }

    #[test]
    fn pow_negative_exponent() {
        assert_eq!(q(2, 3).pow(-2).unwrap(), q(9, 4));
        assert_eq!(fp(7, 3).pow(-1).unwrap(), fp(7, 5));
    }

    #[test]
    fn descriptor_text_form() {
        assert_eq!(FieldDescriptor::Rationals.to_string(), "Q");
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        assert_eq!(f7.to_string(), "Fp:7");
        assert_eq!("Fp:7".parse::<FieldDescriptor>().unwrap(), f7);
        assert_eq!("Q".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rationals);
        assert!("Fp:6".parse::<FieldDescriptor>().is_err());
        assert!("R".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn value_literals() {
        let f5 = FieldDescriptor::prime_field(5).unwrap();
        assert_eq!(FieldValue::parse("7", &f5).unwrap(), fp(5, 2));
        assert_eq!(FieldValue::parse("-1", &f5).unwrap(), fp(5, 4));
        assert_eq!(FieldValue::parse("1/2", &f5).unwrap(), fp(5, 3));
        assert_eq!(
            FieldValue::parse("-3/4", &FieldDescriptor::Rationals).unwrap(),
            q(-3, 4)
        );
        assert!(FieldValue::parse("x", &f5).is_err());
    }

    #[test]
    fn prime_validation() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(97).is_ok());
        assert_eq!(Prime::new(1).err(), Some(Error::NotPrime(1)));
        assert_eq!(Prime::new(91).err(), Some(Error::NotPrime(91)));
        // Carmichael numbers and large inputs
        assert_eq!(Prime::new(561).err(), Some(Error::NotPrime(561)));
        assert!(Prime::new((1 << 61) - 1).is_ok()); // Mersenne prime
        assert!(Prime::new(u64::MAX).is_err());
        assert!(Prime::new(18_446_744_073_709_551_557).is_ok()); // largest u64 prime
    }

    #[test]
    fn arithmetic_near_u64_boundary() {
        let p = Prime::new(18_446_744_073_709_551_557).unwrap();
        let a = FieldValue::modular(p, p.get() - 1);
        let b = FieldValue::modular(p, p.get() - 2);
        let product = a.try_mul(&b).unwrap();
        // (−1)·(−2) = 2
        assert_eq!(product, FieldValue::modular(p, 2));
        assert!(a.try_mul(&a.inv().unwrap()).unwrap().is_one());
    }
}
