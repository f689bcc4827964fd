//! The line bundles O(e), e ∈ ℤ, presented by their local trivializations
//! over the standard charts and the unified transition law
//! `g_{k←j} = (x_j/x_k)^e`.
//!
//! For `e = −d` this is `a_k = (x_k/x_j)^d a_j` and for `e = +d` it is
//! `a_k = (x_j/x_k)^d a_j`, so both trivialization laws are instances of one
//! code path. The only total-space elements modeled are the O(1) fiber
//! (pairs `[a ⊕ v]`) and the image of O(−d) inside the trivial Symᵈ(V)
//! bundle.

use std::fmt;
use std::ops::{Add, Neg};

use crate::error::{Error, Result};
use crate::field::FieldValue;
use crate::poly::HomogPoly;
use crate::projspace::ProjPoint;

/// The degree of a line bundle O(e).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundleDegree(pub i64);

impl BundleDegree {
    /// Degree of a tensor product: degrees add.
    pub fn tensor(self, other: BundleDegree) -> BundleDegree {
        BundleDegree(self.0 + other.0)
    }

    /// Degree of the dual bundle.
    pub fn dual(self) -> BundleDegree {
        BundleDegree(-self.0)
    }
}

impl Add for BundleDegree {
    type Output = BundleDegree;

    fn add(self, rhs: BundleDegree) -> BundleDegree {
        self.tensor(rhs)
    }
}

impl Neg for BundleDegree {
    type Output = BundleDegree;

    fn neg(self) -> BundleDegree {
        self.dual()
    }
}

impl fmt::Display for BundleDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({})", self.0)
    }
}

/// The transition factor `g_{k←j} = (x_j/x_k)^e` of O(e) at `p`, converting
/// chart-`j` trivialized values into chart-`k` values.
///
/// The exponent is homogeneous of degree zero, so any representative gives
/// the same value.
pub fn transition(e: BundleDegree, j: usize, k: usize, p: &ProjPoint) -> Result<FieldValue> {
    if !p.in_chart(j) || !p.in_chart(k) {
        return Err(Error::OutsideOverlap);
    }
    p.coords()[j].try_div(&p.coords()[k])?.pow(e.0)
}

/// The cocycle product `g_{i←k}·g_{k←j}·g_{j←i}` at `p`, which must equal 1.
pub fn cocycle_check(
    e: BundleDegree,
    i: usize,
    j: usize,
    k: usize,
    p: &ProjPoint,
) -> Result<bool> {
    if !(p.in_chart(i) && p.in_chart(j) && p.in_chart(k)) {
        return Err(Error::OutsideOverlap);
    }
    let product = transition(e, k, i, p)?
        .try_mul(&transition(e, j, k, p)?)?
        .try_mul(&transition(e, i, j, p)?)?;
    Ok(product.is_one())
}

/// A scalar in a named chart's trivialization of O(e) over a base point.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalValue {
    degree: BundleDegree,
    chart: usize,
    base: ProjPoint,
    value: FieldValue,
}

impl LocalValue {
    pub fn new(
        degree: BundleDegree,
        chart: usize,
        base: ProjPoint,
        value: FieldValue,
    ) -> Result<Self> {
        if !base.in_chart(chart) {
            return Err(Error::OutsideChart { chart });
        }
        if value.descriptor() != base.field() {
            return Err(Error::MixedFields);
        }
        Ok(LocalValue {
            degree,
            chart,
            base,
            value,
        })
    }

    pub fn degree(&self) -> BundleDegree {
        self.degree
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn value(&self) -> &FieldValue {
        &self.value
    }

    /// Re-expresses the value in chart `k` by the transition law; transport
    /// to the same chart is the identity.
    pub fn transport(&self, k: usize) -> Result<LocalValue> {
        let factor = transition(self.degree, self.chart, k, &self.base)?;
        Ok(LocalValue {
            degree: self.degree,
            chart: k,
            base: self.base.clone(),
            value: self.value.try_mul(&factor)?,
        })
    }

    /// The image of a degree `−d` local value under the canonical inclusion
    /// of O(−d) into the trivial Symᵈ(V) bundle: `a·x_j^{−d}·v^{⊗d}`,
    /// written as the degree-`d` form `a·x_j^{−d}·(Σ vᵢ·xᵢ)^d` in dual
    /// variables.
    ///
    /// Chart-independent: transporting first yields the identical form.
    pub fn to_symmetric_tensor(&self) -> Result<HomogPoly> {
        if self.degree.0 >= 0 {
            return Err(Error::WrongDegreeSign);
        }
        let d = (-self.degree.0) as u32;
        let v = self.base.coords();
        let linear = HomogPoly::linear_form(self.base.field(), v)?;
        let scale = self.value.try_mul(&v[self.chart].pow(-(d as i64))?)?;
        linear.pow(d).scale(&scale)
    }
}

/// An element `[a ⊕ v]` of the O(1) fiber over `[v]`, stored relative to the
/// canonical representative of the base.
///
/// With the origin `[0 ⊕ v]`, the fiber is a vector space via
/// `[a⊕v] + [b⊕v] = [(a+b)⊕v]` and `α[a⊕v] = [(αa)⊕v]`.
#[derive(Debug, Clone, PartialEq)]
pub struct O1FiberElement {
    base: ProjPoint,
    a: FieldValue,
}

impl O1FiberElement {
    pub fn new(base: ProjPoint, a: FieldValue) -> Result<Self> {
        if a.descriptor() != base.field() {
            return Err(Error::MixedFields);
        }
        Ok(O1FiberElement { base, a })
    }

    /// The distinguished origin `[0 ⊕ v]`.
    pub fn zero(base: ProjPoint) -> Self {
        let a = FieldValue::zero(&base.field());
        O1FiberElement { base, a }
    }

    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn scalar(&self) -> &FieldValue {
        &self.a
    }

    pub fn add(&self, other: &O1FiberElement) -> Result<O1FiberElement> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        Ok(O1FiberElement {
            base: self.base.clone(),
            a: self.a.try_add(&other.a)?,
        })
    }

    pub fn scale(&self, alpha: &FieldValue) -> Result<O1FiberElement> {
        Ok(O1FiberElement {
            base: self.base.clone(),
            a: self.a.try_mul(alpha)?,
        })
    }
}

/// The fiberwise surjection `ℙ(V) × V* → O(1)`: `([v], A) ↦ [A(v) ⊕ v]`,
/// computed on the canonical representative. Its kernel over `[v]` is the
/// annihilator of the line `[v]`.
pub fn hyperplane_eval(p: &ProjPoint, covector: &[FieldValue]) -> Result<O1FiberElement> {
    if covector.len() != p.coords().len() {
        return Err(Error::DimensionMismatch {
            expected: p.coords().len(),
            got: covector.len(),
        });
    }
    let mut a = FieldValue::zero(&p.field());
    for (c, v) in covector.iter().zip(p.coords()) {
        a = a.try_add(&c.try_mul(v)?)?;
    }
    O1FiberElement::new(p.clone(), a)
}
