//! Points of ℙⁿ(F) in canonical form, standard and general affine charts,
//! and the overlap maps between charts.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldValue};

/// Raw-vector guard for exhaustive projective enumeration.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

/// A point of ℙⁿ(F) as homogeneous coordinates in canonical form: the
/// leftmost nonzero coordinate equals 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<FieldValue>,
}

impl ProjPoint {
    /// Canonicalizes a nonzero coordinate vector; `normalize(λv) = normalize(v)`.
    pub fn normalize(raw: &[FieldValue]) -> Result<Self> {
        let field = raw.first().ok_or(Error::ZeroVector)?.descriptor();
        if raw.iter().any(|c| c.descriptor() != field) {
            return Err(Error::MixedFields);
        }
        let pivot = raw.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
        let inv = pivot.inv()?;
        Ok(ProjPoint {
            coords: raw.iter().map(|c| c * &inv).collect(),
        })
    }

    /// Dimension `n` of the ambient ℙⁿ.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// The canonical representative, length `n + 1`.
    pub fn coords(&self) -> &[FieldValue] {
        &self.coords
    }

    pub fn field(&self) -> FieldDescriptor {
        self.coords[0].descriptor()
    }

    /// Index of the leftmost nonzero coordinate (which equals 1).
    pub fn pivot(&self) -> usize {
        self.coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("canonical form is nonzero")
    }

    /// Whether the point lies in the standard chart `U_j`.
    pub fn in_chart(&self, j: usize) -> bool {
        j < self.coords.len() && !self.coords[j].is_zero()
    }

    /// Parses the text form `[a0:a1:...:an]`.
    pub fn parse(text: &str, field: &FieldDescriptor) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidLiteral {
                text: text.to_string(),
            })?;
        let coords: Vec<FieldValue> = inner
            .split(':')
            .map(|part| FieldValue::parse(part, field))
            .collect::<Result<_>>()?;
        ProjPoint::normalize(&coords)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Affine coordinates of `P` in the standard chart `U_j`: divide by `x_j`
/// and drop the `j`-th coordinate.
pub fn standard_chart_fwd(j: usize, p: &ProjPoint) -> Result<Vec<FieldValue>> {
    if !p.in_chart(j) {
        return Err(Error::OutsideChart { chart: j });
    }
    let inv = p.coords()[j].inv()?;
    Ok(p.coords()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != j)
        .map(|(_, c)| c * &inv)
        .collect())
}

/// Inverse of [`standard_chart_fwd`]: reinsert 1 at slot `j`.
pub fn standard_chart_inv(field: &FieldDescriptor, j: usize, u: &[FieldValue]) -> Result<ProjPoint> {
    if j > u.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            got: j,
        });
    }
    let mut coords = Vec::with_capacity(u.len() + 1);
    coords.extend_from_slice(&u[..j]);
    coords.push(FieldValue::one(field));
    coords.extend_from_slice(&u[j..]);
    ProjPoint::normalize(&coords)
}

/// The overlap map of the standard covering: chart-`k` coordinates to
/// chart-`j` coordinates. `overlap(j, j, u) = u`; on ℙ¹, `overlap(0,1,u) = 1/u`.
pub fn overlap(j: usize, k: usize, u: &[FieldValue]) -> Result<Vec<FieldValue>> {
    let n = u.len();
    if j > n || k > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: j.max(k),
        });
    }
    let field = u
        .first()
        .map(|c| c.descriptor())
        .ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
    // lift to homogeneous coordinates through chart k
    let mut lift = Vec::with_capacity(n + 1);
    lift.extend_from_slice(&u[..k]);
    lift.push(FieldValue::one(&field));
    lift.extend_from_slice(&u[k..]);
    if lift[j].is_zero() {
        return Err(Error::OutsideOverlap);
    }
    let inv = lift[j].inv()?;
    Ok(lift
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != j)
        .map(|(_, c)| c * &inv)
        .collect())
}

/// A chart from a covector `ℓ` and an origin vector `e_O` with `ℓ(e_O) = 1`:
/// `[v] ↦ v/ℓ(v) − e_O`, an affine isomorphism of `ℙ(V)∖ℙ(ker ℓ)` with
/// `ker ℓ` sending `[e_O]` to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralChart {
    ell: Vec<FieldValue>,
    origin: Vec<FieldValue>,
}

impl GeneralChart {
    /// Builds a chart; the origin vector is rescaled so that `ℓ(e_O) = 1`.
    pub fn new(ell: Vec<FieldValue>, origin: Vec<FieldValue>) -> Result<Self> {
        if ell.len() != origin.len() {
            return Err(Error::DimensionMismatch {
                expected: ell.len(),
                got: origin.len(),
            });
        }
        if ell.iter().all(FieldValue::is_zero) {
            return Err(Error::ZeroVector);
        }
        let value = pair(&ell, &origin)?;
        if value.is_zero() {
            return Err(Error::PointInHyperplane);
        }
        let inv = value.inv()?;
        Ok(GeneralChart {
            origin: origin.iter().map(|c| c * &inv).collect(),
            ell,
        })
    }

    /// The standard chart `U_j`: `ℓ = x_j`, `e_O = e_j`.
    pub fn standard(field: &FieldDescriptor, nvars: usize, j: usize) -> Self {
        let mut ell = vec![FieldValue::zero(field); nvars];
        ell[j] = FieldValue::one(field);
        GeneralChart {
            origin: ell.clone(),
            ell,
        }
    }

    pub fn ell(&self) -> &[FieldValue] {
        &self.ell
    }

    pub fn origin(&self) -> &[FieldValue] {
        &self.origin
    }

    /// `[v] ↦ v/ℓ(v) − e_O`, returned as a full-length vector in `ker ℓ`.
    pub fn fwd(&self, p: &ProjPoint) -> Result<Vec<FieldValue>> {
        if p.coords().len() != self.ell.len() {
            return Err(Error::DimensionMismatch {
                expected: self.ell.len(),
                got: p.coords().len(),
            });
        }
        let v_o = pair(&self.ell, p.coords())?;
        if v_o.is_zero() {
            return Err(Error::PointInHyperplane);
        }
        let inv = v_o.inv()?;
        p.coords()
            .iter()
            .zip(&self.origin)
            .map(|(c, o)| (c * &inv).try_sub(o))
            .collect()
    }

    /// `u ↦ [e_O + u]` for `u ∈ ker ℓ`.
    pub fn inv(&self, u: &[FieldValue]) -> Result<ProjPoint> {
        if u.len() != self.ell.len() {
            return Err(Error::DimensionMismatch {
                expected: self.ell.len(),
                got: u.len(),
            });
        }
        if !pair(&self.ell, u)?.is_zero() {
            return Err(Error::NotInHyperplane);
        }
        let coords: Vec<FieldValue> = self
            .origin
            .iter()
            .zip(u)
            .map(|(o, c)| o.try_add(c))
            .collect::<Result<_>>()?;
        ProjPoint::normalize(&coords)
    }
}

fn pair(ell: &[FieldValue], v: &[FieldValue]) -> Result<FieldValue> {
    let field = ell[0].descriptor();
    let mut acc = FieldValue::zero(&field);
    for (a, b) in ell.iter().zip(v) {
        acc = acc.try_add(&a.try_mul(b)?)?;
    }
    Ok(acc)
}

/// All points of ℙⁿ(𝔽_p), each exactly once, in canonical form: pivots
/// ascending, then remaining coordinates counting up in base `p`.
pub fn enumerate_proj(field: &FieldDescriptor, n: usize) -> Result<Vec<ProjPoint>> {
    let FieldDescriptor::PrimeField(prime) = field else {
        return Err(Error::InfiniteField);
    };
    let p = prime.get() as u128;
    match p.checked_pow(n as u32 + 1) {
        Some(raw) if raw <= ENUMERATION_LIMIT => {}
        Some(raw) => {
            return Err(Error::TooLarge {
                size: raw,
                limit: ENUMERATION_LIMIT,
            })
        }
        None => {
            return Err(Error::TooLarge {
                size: u128::MAX,
                limit: ENUMERATION_LIMIT,
            })
        }
    }
    let mut out = Vec::new();
    for pivot in 0..=n {
        let tail = (n - pivot) as u32;
        for idx in 0..p.pow(tail) as u64 {
            let mut coords = vec![FieldValue::zero(field); pivot];
            coords.push(FieldValue::one(field));
            // decompose idx base p, most significant digit first
            let mut digits = vec![0u64; tail as usize];
            let mut rest = idx;
            for slot in digits.iter_mut().rev() {
                *slot = rest % prime.get();
                rest /= prime.get();
            }
            coords.extend(digits.into_iter().map(|r| FieldValue::modular(*prime, r)));
            out.push(ProjPoint::normalize(&coords)?);
        }
    }
    Ok(out)
}
