//! Coordinate affine spaces over a field: point/vector arithmetic, the
//! vector-space structure induced by a choice of origin, affine-subspace
//! tests over finite fields, and linear parts of affine maps.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldValue};
use crate::linalg::Matrix;

/// A point of the coordinate affine space `Fⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffinePoint {
    coords: Vec<FieldValue>,
}

impl AffinePoint {
    pub fn new(coords: Vec<FieldValue>) -> Result<Self> {
        let field = coords.first().ok_or(Error::EmptySet)?.descriptor();
        if coords.iter().any(|c| c.descriptor() != field) {
            return Err(Error::MixedFields);
        }
        Ok(AffinePoint { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn field(&self) -> FieldDescriptor {
        self.coords[0].descriptor()
    }

    pub fn coords(&self) -> &[FieldValue] {
        &self.coords
    }

    fn check_dim(&self, other: &AffinePoint) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        if self.field() != other.field() {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    /// The unique vector `self − other` with `other + (self − other) = self`.
    pub fn diff(&self, other: &AffinePoint) -> Result<Vec<FieldValue>> {
        self.check_dim(other)?;
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.try_sub(b))
            .collect()
    }

    /// Acts by the model vector space: `self + v`.
    pub fn translate(&self, v: &[FieldValue]) -> Result<AffinePoint> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(AffinePoint {
            coords: self
                .coords
                .iter()
                .zip(v)
                .map(|(a, b)| a.try_add(b))
                .collect::<Result<_>>()?,
        })
    }
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Vector addition and scalar multiplication in the vector-space structure
/// with origin `x0`: returns `x1 + x2 = x0 + ((x1−x0) + (x2−x0))` and
/// `a·x1 = x0 + a(x1−x0)`.
pub fn vectorize_ops(
    x0: &AffinePoint,
    x1: &AffinePoint,
    x2: &AffinePoint,
    a: &FieldValue,
) -> Result<(AffinePoint, AffinePoint)> {
    let d1 = x1.diff(x0)?;
    let d2 = x2.diff(x0)?;
    let sum_vec: Vec<FieldValue> = d1
        .iter()
        .zip(&d2)
        .map(|(u, v)| u.try_add(v))
        .collect::<Result<_>>()?;
    let scaled_vec: Vec<FieldValue> = d1.iter().map(|u| u.try_mul(a)).collect::<Result<_>>()?;
    Ok((x0.translate(&sum_vec)?, x0.translate(&scaled_vec)?))
}

/// Whether `{y − x0 : y ∈ points}` is a linear subspace, checked
/// exhaustively; requires a finite ground field.
pub fn is_affine_subspace(points: &[AffinePoint]) -> Result<bool> {
    let x0 = points.first().ok_or(Error::EmptySet)?;
    let field = x0.field();
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let diffs: Vec<Vec<FieldValue>> = points
        .iter()
        .map(|y| y.diff(x0))
        .collect::<Result<_>>()?;
    let set: HashSet<Vec<FieldValue>> = diffs.iter().cloned().collect();
    for u in &diffs {
        for v in &diffs {
            let sum: Vec<FieldValue> = u
                .iter()
                .zip(v)
                .map(|(a, b)| a.try_add(b))
                .collect::<Result<_>>()?;
            if !set.contains(&sum) {
                return Ok(false);
            }
        }
        for a in field.elements()? {
            let scaled: Vec<FieldValue> =
                u.iter().map(|c| c.try_mul(&a)).collect::<Result<_>>()?;
            if !set.contains(&scaled) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An affine map recorded by its linear part and its value at a base point:
/// `φ(x) = φ(x0) + L(φ)(x − x0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    linear: Matrix,
    base_point: AffinePoint,
    image_base: AffinePoint,
}

impl AffineMap {
    pub fn new(linear: Matrix, base_point: AffinePoint, image_base: AffinePoint) -> Result<Self> {
        if linear.cols() != base_point.dim() {
            return Err(Error::DimensionMismatch {
                expected: base_point.dim(),
                got: linear.cols(),
            });
        }
        if linear.rows() != image_base.dim() {
            return Err(Error::DimensionMismatch {
                expected: image_base.dim(),
                got: linear.rows(),
            });
        }
        Ok(AffineMap {
            linear,
            base_point,
            image_base,
        })
    }

    pub fn linear(&self) -> &Matrix {
        &self.linear
    }

    pub fn base_point(&self) -> &AffinePoint {
        &self.base_point
    }

    pub fn image_base(&self) -> &AffinePoint {
        &self.image_base
    }

    pub fn apply(&self, x: &AffinePoint) -> Result<AffinePoint> {
        let v = x.diff(&self.base_point)?;
        self.image_base.translate(&self.linear.mul_vec(&v)?)
    }
}

/// Recovers the linear part of `phi` columnwise via
/// `L(φ)(eᵢ) = φ(x0 + eᵢ) − φ(x0)`, then verifies
/// `φ(x) = φ(x0) + L(φ)(x − x0)` on every sample.
///
/// Returns [`Error::NotAffine`] with a witness sample on failure.
pub fn linear_part<F>(phi: F, x0: &AffinePoint, samples: &[AffinePoint]) -> Result<AffineMap>
where
    F: Fn(&AffinePoint) -> AffinePoint,
{
    let field = x0.field();
    let image_base = phi(x0);
    let mut columns = Vec::with_capacity(x0.dim());
    for i in 0..x0.dim() {
        let mut e = vec![FieldValue::zero(&field); x0.dim()];
        e[i] = FieldValue::one(&field);
        let shifted = phi(&x0.translate(&e)?);
        columns.push(shifted.diff(&image_base)?);
    }
    let linear = Matrix::from_cols(columns)?;
    let map = AffineMap::new(linear, x0.clone(), image_base)?;
    for x in samples {
        if phi(x) != map.apply(x)? {
            return Err(Error::NotAffine {
                witness: x.coords().to_vec(),
            });
        }
    }
    Ok(map)
}
