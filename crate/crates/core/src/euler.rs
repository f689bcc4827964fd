//! Fiberwise linear algebra of the tautological, hyperplane, and Euler
//! sequences, tangent fibers `[v]* ⊗ V/[v]`, and the comparison
//! `Tℙ¹ ≅ O(2)` via formal derivatives of the overlap maps.

use crate::bundles::{transition, BundleDegree};
use crate::error::{Error, Result};
use crate::field::FieldValue;
use crate::linalg::Matrix;
use crate::poly::HomogPoly;
use crate::projspace::{standard_chart_fwd, ProjPoint};

/// The fiber of a short exact sequence `0 → A → B → C → 0`: an injection,
/// a surjection, and the dimensions `(a, b, c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberSequence {
    left: Matrix,
    right: Matrix,
    dims: (usize, usize, usize),
}

impl FiberSequence {
    pub fn left(&self) -> &Matrix {
        &self.left
    }

    pub fn right(&self) -> &Matrix {
        &self.right
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    /// Exactness: `right∘left = 0`, `rank(left) = a`, `rank(right) = c`,
    /// and `rank(left) + rank(right) = b`.
    pub fn is_exact(&self) -> bool {
        let (a, b, c) = self.dims;
        let composed = match self.right.mul(&self.left) {
            Ok(m) => m,
            Err(_) => return false,
        };
        composed.is_zero()
            && self.left.rank() == a
            && self.right.rank() == c
            && a + c == b
    }
}

/// Coset representatives for `V/[v]`: the canonical representative is
/// completed to a basis by the standard basis vectors away from its pivot.
fn quotient_rows(p: &ProjPoint) -> Vec<Vec<FieldValue>> {
    let v = p.coords();
    let n1 = v.len();
    let field = p.field();
    let t = p.pivot();
    let mut rows = Vec::with_capacity(n1 - 1);
    for i in (0..n1).filter(|&i| i != t) {
        // coefficient of e_i in w − w_t·v
        let mut row = vec![FieldValue::zero(&field); n1];
        row[i] = FieldValue::one(&field);
        row[t] = v[i].neg();
        rows.push(row);
    }
    rows
}

/// The fiber over `p` of the tautological sequence
/// `0 → O(−1) → ℙ(V)×V → Q_V → 0`: the line `[v]` included as the column
/// `v`, then projection onto the chosen coset basis of `V/[v]`.
pub fn taut_sequence_fiber(p: &ProjPoint) -> FiberSequence {
    let n1 = p.coords().len();
    let left = Matrix::from_cols(vec![p.coords().to_vec()]).expect("nonzero representative");
    let rows = quotient_rows(p);
    let right = Matrix::from_fn(p.field(), n1 - 1, n1, |r, c| rows[r][c].clone());
    FiberSequence {
        left,
        right,
        dims: (1, n1, n1 - 1),
    }
}

/// The fiber over `p` of the hyperplane sequence
/// `0 → K_V → ℙ(V)×V* → O(1) → 0`: the annihilator of `[v]` included into
/// `V*`, then evaluation at `v`.
pub fn hyperplane_sequence_fiber(p: &ProjPoint) -> FiberSequence {
    let v = p.coords();
    let n1 = v.len();
    let field = p.field();
    let t = p.pivot();
    let mut cols = Vec::with_capacity(n1 - 1);
    for i in (0..n1).filter(|&i| i != t) {
        // the covector δ_i − v_i·δ_t kills v
        let mut col = vec![FieldValue::zero(&field); n1];
        col[i] = FieldValue::one(&field);
        col[t] = v[i].neg();
        cols.push(col);
    }
    let left = Matrix::from_fn(field, n1, n1 - 1, |r, c| cols[c][r].clone());
    let right = Matrix::from_rows(vec![v.to_vec()]).expect("evaluation row");
    FiberSequence {
        left,
        right,
        dims: (n1 - 1, n1, 1),
    }
}

/// The fiber over `p` of the Euler sequence
/// `0 → F → V⊗O(1) → Tℙ(V) → 0`, in the trivialization of `O(1)_{[v]}` by
/// the covector dual to the canonical representative: the unit maps to the
/// column `v`, followed by the twisted quotient projection.
pub fn euler_sequence_fiber(p: &ProjPoint) -> FiberSequence {
    let n1 = p.coords().len();
    let left = Matrix::from_cols(vec![p.coords().to_vec()]).expect("nonzero representative");
    let rows = quotient_rows(p);
    let right = Matrix::from_fn(p.field(), n1 - 1, n1, |r, c| rows[r][c].clone());
    FiberSequence {
        left,
        right,
        dims: (1, n1, n1 - 1),
    }
}

/// The tangent fiber `T_[v]ℙ(V) = [v]* ⊗ V/[v]` presented by bases.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentFiber {
    base: ProjPoint,
    line_basis: Vec<FieldValue>,
    quotient_basis: Vec<Vec<FieldValue>>,
}

impl TangentFiber {
    pub fn new(base: ProjPoint) -> Self {
        let line_basis = base.coords().to_vec();
        let field = base.field();
        let t = base.pivot();
        let n1 = line_basis.len();
        let quotient_basis = (0..n1)
            .filter(|&i| i != t)
            .map(|i| {
                let mut e = vec![FieldValue::zero(&field); n1];
                e[i] = FieldValue::one(&field);
                e
            })
            .collect();
        TangentFiber {
            base,
            line_basis,
            quotient_basis,
        }
    }

    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn line_basis(&self) -> &[FieldValue] {
        &self.line_basis
    }

    /// Coset representatives; together with the line basis they span `V`.
    pub fn quotient_basis(&self) -> &[Vec<FieldValue>] {
        &self.quotient_basis
    }

    pub fn dim(&self) -> usize {
        self.quotient_basis.len()
    }
}

/// The tangent-bundle transition on ℙ¹ from chart `j` to chart `k`: the
/// formal derivative of the overlap map at the chart-`j` coordinate of `p`.
///
/// The overlap map is the rational expression `1/u`; its derivative is
/// computed symbolically by the quotient rule, so this is defined in any
/// characteristic. For `j ≠ k` the value is `−1/u²`.
pub fn tangent_transition_p1(j: usize, k: usize, p: &ProjPoint) -> Result<FieldValue> {
    if p.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: p.dim(),
        });
    }
    if j > 1 || k > 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: j.max(k),
        });
    }
    if !p.in_chart(j) || !p.in_chart(k) {
        return Err(Error::OutsideOverlap);
    }
    let field = p.field();
    if j == k {
        return Ok(FieldValue::one(&field));
    }
    // overlap(k, j, ·) = N/D with N = 1, D = u
    let numerator = HomogPoly::one(field, 1);
    let denominator = HomogPoly::variable(field, 1, 0);
    // quotient rule: (N'D − ND')/D²
    let deriv_num = numerator
        .formal_derivative(0)
        .mul(&denominator)?
        .sub(&numerator.mul(&denominator.formal_derivative(0))?)?;
    let deriv_den = denominator.mul(&denominator)?;
    let u = standard_chart_fwd(j, p)?.remove(0);
    deriv_num.eval(std::slice::from_ref(&u))?.try_div(&deriv_den.eval(&[u])?)
}

/// Compares the ℙ¹ tangent transitions with the O(2) transitions on a
/// sample: the ratio must be one nowhere-vanishing constant `λ` across all
/// points, which is returned (expected `−1`; in characteristic 2 that
/// equals `1`).
pub fn p1_tangent_iso_check(samples: &[ProjPoint]) -> Result<FieldValue> {
    let mut lambda: Option<FieldValue> = None;
    if samples.is_empty() {
        return Err(Error::EmptySet);
    }
    for p in samples {
        let tangent = tangent_transition_p1(0, 1, p)?;
        let o2 = transition(BundleDegree(2), 0, 1, p)?;
        let ratio = tangent.try_div(&o2)?;
        match &lambda {
            None => lambda = Some(ratio),
            Some(l) if *l == ratio => {}
            Some(_) => {
                return Err(Error::NotProportional {
                    witness: p.coords().to_vec(),
                })
            }
        }
    }
    Ok(lambda.expect("nonempty sample"))
}
