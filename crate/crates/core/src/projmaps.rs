//! Morphisms of projective spaces: induced linear maps, the Veronese and
//! Segre embeddings, and equal-degree component morphisms.

use crate::error::{Error, Result};
use crate::field::FieldValue;
use crate::linalg::Matrix;
use crate::poly::{monomial_basis, HomogPoly, Monomial};
use crate::projspace::{enumerate_proj, ProjPoint};

/// A linear map `A` inducing `ℙ(A)([v]) = [A(v)]` away from `ℙ(ker A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearInduced {
    matrix: Matrix,
}

impl LinearInduced {
    pub fn new(matrix: Matrix) -> Self {
        LinearInduced { matrix }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `[v] ↦ [A(v)]`; representative-independent by linearity.
    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let image = self.matrix.mul_vec(p.coords())?;
        if image.iter().all(FieldValue::is_zero) {
            return Err(Error::InKernel);
        }
        ProjPoint::normalize(&image)
    }
}

/// The Veronese embedding `[v] ↦ [v^{⊗d}]`: coordinates are the degree-`d`
/// monomials of a representative in descending graded-lex order.
pub fn veronese(d: u32, p: &ProjPoint) -> Result<ProjPoint> {
    if d == 0 {
        return Err(Error::WrongDegree {
            expected: 1,
            got: 0,
        });
    }
    let coords: Vec<FieldValue> = monomial_basis(p.coords().len(), d)
        .iter()
        .map(|m| m.eval(p.coords()))
        .collect::<Result<_>>()?;
    ProjPoint::normalize(&coords)
}

/// Index of the pure power `x_j^d` among the Veronese coordinates of ℙⁿ;
/// chart `j` upstairs corresponds to this chart downstairs.
pub fn veronese_chart_index(n: usize, d: u32, j: usize) -> usize {
    let mut exps = vec![0u32; n + 1];
    exps[j] = d;
    let target = Monomial::new(exps);
    monomial_basis(n + 1, d)
        .iter()
        .position(|m| *m == target)
        .expect("pure power is a degree-d monomial")
}

/// The Segre embedding `([u],[v]) ↦ [u ⊗ v]` with coordinates
/// `z_{ij} = u_i v_j` in row-major order; all 2×2 minors of `z` vanish.
pub fn segre(p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint> {
    if p.field() != q.field() {
        return Err(Error::MixedFields);
    }
    let mut coords = Vec::with_capacity(p.coords().len() * q.coords().len());
    for u in p.coords() {
        for v in q.coords() {
            coords.push(u.try_mul(v)?);
        }
    }
    ProjPoint::normalize(&coords)
}

/// Evidence that morphism components have no common projective zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseLocusCertificate {
    /// Every point of ℙⁿ(𝔽_p) was scanned.
    ExhaustiveFiniteField,
    /// Taken on trust; evaluation may still hit an indeterminacy point.
    Assumed,
}

/// A morphism `[v] ↦ [f_0(v) : … : f_m(v)]` given by homogeneous components
/// of one common degree.
#[derive(Debug, Clone, PartialEq)]
pub struct MorphismData {
    components: Vec<HomogPoly>,
    base_locus: BaseLocusCertificate,
}

impl MorphismData {
    /// Builds a morphism, certifying base-locus emptiness exhaustively over
    /// a finite field; over ℚ the certificate is assumed.
    pub fn new(components: Vec<HomogPoly>) -> Result<Self> {
        let m = Self::check_shape(components)?;
        let field = m.components[0].field();
        if !field.is_finite() {
            return Ok(m);
        }
        let n = m.components[0].nvars() - 1;
        for p in enumerate_proj(&field, n)? {
            let all_zero = m
                .components
                .iter()
                .map(|c| c.eval(p.coords()))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .all(FieldValue::is_zero);
            if all_zero {
                return Err(Error::IndeterminacyPoint);
            }
        }
        Ok(MorphismData {
            base_locus: BaseLocusCertificate::ExhaustiveFiniteField,
            ..m
        })
    }

    /// Builds a morphism without scanning for base points.
    pub fn with_assumed_base_locus(components: Vec<HomogPoly>) -> Result<Self> {
        Self::check_shape(components)
    }

    fn check_shape(components: Vec<HomogPoly>) -> Result<Self> {
        let first = components.first().ok_or(Error::EmptySet)?;
        let degree = first.degree();
        let nvars = first.nvars();
        let field = first.field();
        for c in &components {
            if c.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree as i64,
                    got: c.degree() as i64,
                });
            }
            if c.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: c.nvars(),
                });
            }
            if c.field() != field {
                return Err(Error::MixedFields);
            }
        }
        if components.iter().all(HomogPoly::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(MorphismData {
            components,
            base_locus: BaseLocusCertificate::Assumed,
        })
    }

    pub fn components(&self) -> &[HomogPoly] {
        &self.components
    }

    pub fn base_locus_certificate(&self) -> BaseLocusCertificate {
        self.base_locus
    }

    /// `[v] ↦ [f_0(v) : … : f_m(v)]`; equal degrees make this
    /// representative-independent.
    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let values: Vec<FieldValue> = self
            .components
            .iter()
            .map(|c| c.eval(p.coords()))
            .collect::<Result<_>>()?;
        if values.iter().all(FieldValue::is_zero) {
            return Err(Error::IndeterminacyPoint);
        }
        ProjPoint::normalize(&values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use crate::poly::parse_poly;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    fn qv(n: i64) -> FieldValue {
        FieldValue::from_integer(&Q, n)
    }

    fn qpoint(coords: &[i64]) -> ProjPoint {
        ProjPoint::normalize(&coords.iter().map(|&n| qv(n)).collect::<Vec<_>>()).unwrap()
    }

    fn ph(text: &str, nvars: usize) -> HomogPoly {
        parse_poly(text, nvars, &Q)
            .unwrap()
            .as_homogeneous()
            .unwrap()
            .clone()
    }

    #[test]
    fn induced_map_examples() {
        let id = LinearInduced::new(Matrix::identity(Q, 3));
        let p = qpoint(&[2, 5, 1]);
        assert_eq!(id.apply(&p).unwrap(), p);

        let diag = LinearInduced::new(
            Matrix::from_rows(vec![vec![qv(1), qv(0)], vec![qv(0), qv(0)]]).unwrap(),
        );
        assert_eq!(diag.apply(&qpoint(&[0, 1])), Err(Error::InKernel));

        let swap = LinearInduced::new(
            Matrix::from_rows(vec![vec![qv(0), qv(1)], vec![qv(1), qv(0)]]).unwrap(),
        );
        assert_eq!(swap.apply(&qpoint(&[1, 2])).unwrap(), qpoint(&[2, 1]));
    }

    #[test]
    fn veronese_examples() {
        let p = qpoint(&[1, 2]);
        let image = veronese(2, &p).unwrap();
        assert_eq!(image, qpoint(&[1, 2, 4]));
        // y0·y2 − y1² = 0
        let y = image.coords();
        assert_eq!(y[0].try_mul(&y[2]).unwrap(), y[1].try_mul(&y[1]).unwrap());
        // d = 1 is the identity
        assert_eq!(veronese(1, &p).unwrap(), p);
        assert!(matches!(veronese(0, &p), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn veronese_chart_correspondence() {
        assert_eq!(veronese_chart_index(1, 3, 0), 0);
        assert_eq!(veronese_chart_index(1, 3, 1), 3);
        assert_eq!(veronese_chart_index(2, 2, 1), 3); // x1^2 in x0²,x0x1,x0x2,x1²,…
    }

    #[test]
    fn segre_examples() {
        let image = segre(&qpoint(&[1, 2]), &qpoint(&[1, 3])).unwrap();
        assert_eq!(image, qpoint(&[1, 3, 2, 6]));
        let z = image.coords();
        assert_eq!(z[0].try_mul(&z[3]).unwrap(), z[1].try_mul(&z[2]).unwrap());

        assert_eq!(
            segre(&qpoint(&[1, 0]), &qpoint(&[1, 0])).unwrap(),
            qpoint(&[1, 0, 0, 0])
        );

        let f5 = FieldDescriptor::prime_field(5).unwrap();
        let v = |n: i64| FieldValue::from_integer(&f5, n);
        let a = ProjPoint::normalize(&[v(1), v(2)]).unwrap();
        let b = ProjPoint::normalize(&[v(1), v(4)]).unwrap();
        let ab = segre(&a, &b).unwrap();
        assert_eq!(ab.to_string(), "[1:4:2:3]");
    }

    #[test]
    fn morphism_examples() {
        // coordinate functions give the identity
        let id = MorphismData::new(vec![ph("x0", 2), ph("x1", 2)]).unwrap();
        let p = qpoint(&[3, 7]);
        assert_eq!(id.apply(&p).unwrap(), p);

        // degree-d monomials reproduce the Veronese embedding
        let ver = MorphismData::new(vec![ph("x0^2", 2), ph("x0*x1", 2), ph("x1^2", 2)]).unwrap();
        for pt in [qpoint(&[1, 2]), qpoint(&[5, -3]), qpoint(&[0, 1])] {
            assert_eq!(ver.apply(&pt).unwrap(), veronese(2, &pt).unwrap());
        }

        // common zero of (x1², x0x1) at [1:0]
        let partial = MorphismData::new(vec![ph("x1^2", 2), ph("x0*x1", 2)]).unwrap();
        assert_eq!(partial.apply(&qpoint(&[1, 0])), Err(Error::IndeterminacyPoint));
        assert_eq!(partial.base_locus_certificate(), BaseLocusCertificate::Assumed);

        // over a finite field, the scan catches the base point at construction
        let f3 = FieldDescriptor::prime_field(3).unwrap();
        let comps = vec![
            parse_poly("x1^2", 2, &f3).unwrap().as_homogeneous().unwrap().clone(),
            parse_poly("x0*x1", 2, &f3).unwrap().as_homogeneous().unwrap().clone(),
        ];
        assert_eq!(MorphismData::new(comps.clone()), Err(Error::IndeterminacyPoint));
        assert!(MorphismData::with_assumed_base_locus(comps).is_ok());

        // base-point-free over F_3: the full Veronese system
        let ver3 = MorphismData::new(vec![
            parse_poly("x0^2", 2, &f3).unwrap().as_homogeneous().unwrap().clone(),
            parse_poly("x0*x1", 2, &f3).unwrap().as_homogeneous().unwrap().clone(),
            parse_poly("x1^2", 2, &f3).unwrap().as_homogeneous().unwrap().clone(),
        ])
        .unwrap();
        assert_eq!(
            ver3.base_locus_certificate(),
            BaseLocusCertificate::ExhaustiveFiniteField
        );
    }

    #[test]
    fn morphism_shape_errors() {
        assert_eq!(MorphismData::new(vec![]), Err(Error::EmptySet));
        assert!(matches!(
            MorphismData::new(vec![ph("x0", 2), ph("x1^2", 2)]),
            Err(Error::DegreeMismatch { .. })
        ));
        let zero = HomogPoly::zero(Q, 2, 1);
        assert_eq!(
            MorphismData::new(vec![zero.clone(), zero]),
            Err(Error::ZeroVector)
        );
    }
}
