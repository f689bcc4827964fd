//! Sparse homogeneous multivariate forms in `x0..xn` over an exact field.
//!
//! A [`HomogPoly`] is the concrete stand-in for a symmetric power: evaluation
//! on the diagonal `v ↦ A(v,…,v)` is polynomial evaluation, and the same
//! representation doubles for symmetric tensors in "dual variables".
//! A [`PolySum`] is a general polynomial split into its homogeneous
//! components.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldValue};

mod parse;

pub use parse::parse_poly;

/// A monomial as an exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn eval(&self, point: &[FieldValue]) -> Result<FieldValue> {
        if point.len() != self.exps.len() {
            return Err(Error::DimensionMismatch {
                expected: self.exps.len(),
                got: point.len(),
            });
        }
        let field = point
            .first()
            .map(|v| v.descriptor())
            .unwrap_or(FieldDescriptor::Rationals);
        let mut acc = FieldValue::one(&field);
        for (v, &e) in point.iter().zip(&self.exps) {
            if e > 0 {
                acc = acc.try_mul(&v.pow(e as i64)?)?;
            }
        }
        Ok(acc)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: compare total degree, then exponents left to
    /// right.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All degree-`d` monomials in `nvars` variables, in descending graded-lex
/// order (pure power of `x0` first).
pub fn monomial_basis(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn fill(out: &mut Vec<Monomial>, prefix: &mut Vec<u32>, remaining: u32, left: usize) {
        if left == 1 {
            prefix.push(remaining);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            fill(out, prefix, remaining - e, left - 1);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    fill(&mut out, &mut Vec::new(), degree, nvars);
    out
}

/// A homogeneous form of a fixed degree.
///
/// Zero coefficients are never stored; the zero form keeps an explicit degree
/// annotation so degree bookkeeping survives cancellation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogPoly {
    field: FieldDescriptor,
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, FieldValue>,
}

impl HomogPoly {
    pub fn zero(field: FieldDescriptor, nvars: usize, degree: u32) -> Self {
        HomogPoly {
            field,
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldDescriptor, nvars: usize, value: FieldValue) -> Self {
        let mut p = HomogPoly::zero(field, nvars, 0);
        if !value.is_zero() {
            p.terms.insert(Monomial::one(nvars), value);
        }
        p
    }

    pub fn one(field: FieldDescriptor, nvars: usize) -> Self {
        HomogPoly::constant(field, nvars, FieldValue::one(&field))
    }

    pub fn variable(field: FieldDescriptor, nvars: usize, i: usize) -> Self {
        let mut p = HomogPoly::zero(field, nvars, 1);
        p.terms
            .insert(Monomial::variable(nvars, i), FieldValue::one(&field));
        p
    }

    /// The linear form `Σ coeffs[i]·xi`.
    pub fn linear_form(field: FieldDescriptor, coeffs: &[FieldValue]) -> Result<Self> {
        let mut p = HomogPoly::zero(field, coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            if c.descriptor() != field {
                return Err(Error::MixedFields);
            }
            if !c.is_zero() {
                p.terms.insert(Monomial::variable(coeffs.len(), i), c.clone());
            }
        }
        Ok(p)
    }

    /// A single term `coeff·m`, with the degree annotation taken from `m`.
    pub fn monomial_term(
        field: FieldDescriptor,
        nvars: usize,
        m: Monomial,
        coeff: FieldValue,
    ) -> Result<Self> {
        if m.nvars() != nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                got: m.nvars(),
            });
        }
        if coeff.descriptor() != field {
            return Err(Error::MixedFields);
        }
        let mut p = HomogPoly::zero(field, nvars, m.degree());
        if !coeff.is_zero() {
            p.terms.insert(m, coeff);
        }
        Ok(p)
    }

    pub fn from_terms(
        field: FieldDescriptor,
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, FieldValue)>,
    ) -> Result<Self> {
        let mut p = HomogPoly::zero(field, nvars, degree);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: m.nvars(),
                });
            }
            if m.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree as i64,
                    got: m.degree() as i64,
                });
            }
            if c.descriptor() != field {
                return Err(Error::MixedFields);
            }
            p.accumulate(m, &c);
        }
        Ok(p)
    }

    fn accumulate(&mut self, m: Monomial, c: &FieldValue) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldValue)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldValue {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| FieldValue::zero(&self.field))
    }

    fn compatible(&self, other: &HomogPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: self.degree as i64,
                got: other.degree as i64,
            });
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut out = HomogPoly::zero(self.field, self.nvars, degree);
        out.terms = self.terms.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.add(&other.scale(&FieldValue::one(&other.field).neg())?)
    }

    pub fn scale(&self, by: &FieldValue) -> Result<HomogPoly> {
        if by.descriptor() != self.field {
            return Err(Error::MixedFields);
        }
        let mut out = HomogPoly::zero(self.field, self.nvars, self.degree);
        if by.is_zero() {
            return Ok(out);
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * by);
        }
        Ok(out)
    }

    /// Product of homogeneous forms; degrees add.
    pub fn mul(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.compatible(other)?;
        let mut out = HomogPoly::zero(self.field, self.nvars, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.accumulate(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> HomogPoly {
        let mut acc = HomogPoly::one(self.field, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self).expect("same field and variable count");
        }
        acc
    }

    /// The polynomial function `v ↦ A(v,…,v)` at `v`.
    pub fn eval(&self, point: &[FieldValue]) -> Result<FieldValue> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        for v in point {
            if v.descriptor() != self.field {
                return Err(Error::MixedFields);
            }
        }
        let mut acc = FieldValue::zero(&self.field);
        for (m, c) in &self.terms {
            acc = acc.try_add(&c.try_mul(&m.eval(point)?)?)?;
        }
        Ok(acc)
    }

    /// Checks `f(λv) = λ^d f(v)` by direct evaluation.
    ///
    /// Always true for a well-formed form; `λ` should be nonzero.
    pub fn homogeneity_check(&self, point: &[FieldValue], lambda: &FieldValue) -> Result<bool> {
        let scaled: Vec<FieldValue> = point
            .iter()
            .map(|v| v.try_mul(lambda))
            .collect::<Result<_>>()?;
        let lhs = self.eval(&scaled)?;
        let rhs = lambda.pow(self.degree as i64)?.try_mul(&self.eval(point)?)?;
        Ok(lhs == rhs)
    }

    /// Formal partial derivative with respect to `xi`; works in any
    /// characteristic.
    pub fn formal_derivative(&self, i: usize) -> HomogPoly {
        let degree = self.degree.saturating_sub(1);
        let mut out = HomogPoly::zero(self.field, self.nvars, degree);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            let coeff = c.try_mul(&FieldValue::from_integer(&self.field, e as i64));
            out.accumulate(Monomial::new(exps), &coeff.expect("same field"));
        }
        out
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms())
    }
}

/// A polynomial as a sum of nonzero homogeneous components of distinct
/// degrees, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySum {
    field: FieldDescriptor,
    nvars: usize,
    components: Vec<HomogPoly>,
}

impl PolySum {
    pub fn zero(field: FieldDescriptor, nvars: usize) -> Self {
        PolySum {
            field,
            nvars,
            components: Vec::new(),
        }
    }

    pub fn from_components(
        field: FieldDescriptor,
        nvars: usize,
        components: impl IntoIterator<Item = HomogPoly>,
    ) -> Result<Self> {
        let mut by_degree: BTreeMap<u32, HomogPoly> = BTreeMap::new();
        for c in components {
            if c.field() != field {
                return Err(Error::MixedFields);
            }
            if c.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: c.nvars(),
                });
            }
            match by_degree.entry(c.degree()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let merged = e.get().add(&c)?;
                    *e.get_mut() = merged;
                }
            }
        }
        Ok(PolySum {
            field,
            nvars,
            components: by_degree.into_values().filter(|c| !c.is_zero()).collect(),
        })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Homogeneous components, ascending by degree.
    pub fn components(&self) -> &[HomogPoly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Total degree, if nonzero.
    pub fn degree(&self) -> Option<u32> {
        self.components.last().map(HomogPoly::degree)
    }

    /// The single component, if this sum is homogeneous.
    pub fn as_homogeneous(&self) -> Option<&HomogPoly> {
        match self.components.as_slice() {
            [single] => Some(single),
            _ => None,
        }
    }

    pub fn eval(&self, point: &[FieldValue]) -> Result<FieldValue> {
        let mut acc = FieldValue::zero(&self.field);
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        for c in &self.components {
            acc = acc.try_add(&c.eval(point)?)?;
        }
        Ok(acc)
    }

    pub fn formal_derivative(&self, i: usize) -> PolySum {
        PolySum::from_components(
            self.field,
            self.nvars,
            self.components.iter().map(|c| c.formal_derivative(i)),
        )
        .expect("components stay compatible")
    }
}

impl From<HomogPoly> for PolySum {
    fn from(p: HomogPoly) -> Self {
        let field = p.field();
        let nvars = p.nvars();
        PolySum::from_components(field, nvars, [p]).expect("single component")
    }
}

impl fmt::Display for PolySum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.components.iter().flat_map(|c| c.terms()))
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Monomial, &'a FieldValue)>,
) -> fmt::Result {
    let mut any = false;
    for (m, c) in terms {
        let negative = c
            .as_rational()
            .map(num_traits::Signed::is_negative)
            .unwrap_or(false);
        let magnitude = if negative { c.neg() } else { c.clone() };
        if any {
            write!(f, " {} ", if negative { "-" } else { "+" })?;
        } else if negative {
            write!(f, "-")?;
        }
        any = true;
        if m.degree() == 0 {
            write!(f, "{magnitude}")?;
        } else if magnitude.is_one() {
            write!(f, "{m}")?;
        } else {
            write!(f, "{magnitude}*{m}")?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    fn qv(n: i64) -> FieldValue {
        FieldValue::from_integer(&Q, n)
    }

    fn p(text: &str, nvars: usize) -> PolySum {
        parse_poly(text, nvars, &Q).unwrap()
    }

    fn ph(text: &str, nvars: usize) -> HomogPoly {
        p(text, nvars).as_homogeneous().unwrap().clone()
    }

    #[test]
    fn eval_examples() {
        let sq = ph("x0^2 + x1^2", 2);
        assert_eq!(sq.eval(&[qv(1), qv(2)]).unwrap(), qv(5));
        // homogeneous of positive degree vanishes at the origin
        assert!(sq.eval(&[qv(0), qv(0)]).unwrap().is_zero());
        let m = ph("x0^2*x1", 2);
        assert_eq!(m.eval(&[qv(2), qv(3)]).unwrap(), qv(12));
    }

    #[test]
    fn homogeneity_examples() {
        let f = ph("x0*x1", 2);
        assert!(f
            .homogeneity_check(&[qv(1), qv(1)], &qv(3))
            .unwrap());
        assert!(f.homogeneity_check(&[qv(5), qv(-2)], &qv(1)).unwrap());

        let f5 = FieldDescriptor::prime_field(5).unwrap();
        let cube = parse_poly("x0^3", 2, &f5)
            .unwrap()
            .as_homogeneous()
            .unwrap()
            .clone();
        let two = FieldValue::from_integer(&f5, 2);
        let v = [FieldValue::from_integer(&f5, 2), FieldValue::zero(&f5)];
        assert!(cube.homogeneity_check(&v, &two).unwrap());
        // 64 ≡ 4 mod 5 on both routes
        let scaled = [FieldValue::from_integer(&f5, 4), FieldValue::zero(&f5)];
        assert_eq!(cube.eval(&scaled).unwrap(), FieldValue::from_integer(&f5, 4));
    }

    #[test]
    fn multiplication() {
        let x0 = HomogPoly::variable(Q, 2, 0);
        let x1 = HomogPoly::variable(Q, 2, 1);
        assert_eq!(x0.mul(&x1).unwrap(), ph("x0*x1", 2));
        let f = ph("3*x0^2 - x0*x1", 2);
        assert_eq!(f.mul(&HomogPoly::one(Q, 2)).unwrap(), f);
        let sum = ph("x0 + x1", 2);
        let diff = ph("x0 - x1", 2);
        assert_eq!(sum.mul(&diff).unwrap(), ph("x0^2 - x1^2", 2));
    }

    #[test]
    fn basis_counts_and_order() {
        let b = monomial_basis(2, 3);
        let names: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["x0^3", "x0^2*x1", "x0*x1^2", "x1^3"]);
        assert_eq!(monomial_basis(3, 0).len(), 1);
        assert_eq!(monomial_basis(3, 2).len(), 6);
    }

    #[test]
    fn binomial_count_oracle() {
        // brute force: count exponent tuples by nested enumeration
        fn brute(nvars: usize, d: u32) -> usize {
            if nvars == 1 {
                return 1;
            }
            (0..=d).map(|e| brute(nvars - 1, d - e)).sum()
        }
        for n in 0..=4usize {
            for d in 0..=6u32 {
                assert_eq!(monomial_basis(n + 1, d).len(), brute(n + 1, d));
            }
        }
    }

    #[test]
    fn degree_annotation_survives_cancellation() {
        let f = ph("x0^2", 2);
        let z = f.sub(&f).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 2);
    }

    #[test]
    fn formal_derivative_any_characteristic() {
        let f = ph("x0^3 + 2*x0*x1^2", 2);
        assert_eq!(f.formal_derivative(0), ph("3*x0^2 + 2*x1^2", 2));
        // d/dx (x^p) = 0 in characteristic p
        let f5 = FieldDescriptor::prime_field(5).unwrap();
        let x5 = parse_poly("x0^5", 1, &f5).unwrap();
        assert!(x5.formal_derivative(0).is_zero());
    }

    #[test]
    fn polysum_splits_degrees() {
        let s = p("x0^2 + x1", 2);
        let degrees: Vec<u32> = s.components().iter().map(HomogPoly::degree).collect();
        assert_eq!(degrees, [1, 2]);
        assert_eq!(s.eval(&[qv(3), qv(4)]).unwrap(), qv(13));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "x0^2*x1 - x2^3",
            "1/2*x0^2 + x1^2 - 3*x0*x1",
            "0",
            "2 + x0 + x0^2",
            "-x0 + x1",
        ] {
            let parsed = p(text, 3);
            let reparsed = p(&parsed.to_string(), 3);
            assert_eq!(parsed, reparsed, "round trip failed for {text}");
        }
    }
}
