//! Regular functions and global regular sections of O(e).
//!
//! A section of degree `e` is stored as one global rational pair `(N, D)`
//! with `deg N − deg D = e` and a certified nowhere-vanishing denominator;
//! per-chart representatives `s_j = (N/D)(x) · x_j^{−e}` are derived, which
//! makes the transformation law `s_k = (x_j/x_k)^e s_j` a theorem rather
//! than a constraint to maintain. For `e = −d < 0` the Symᵈ(V)-valued value
//! `(N/D)(v)·v^{⊗d}` is reconstructed on demand.

use std::fmt;

use crate::bundles::BundleDegree;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldValue};
use crate::poly::{monomial_basis, parse_poly, HomogPoly, Monomial, PolySum};
use crate::projspace::{enumerate_proj, ProjPoint};

/// Whether a rational map is a function on a vector space or on a
/// projective space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    Affine,
    Projective,
}

/// A quotient `N/D` of polynomials, regular wherever `D` does not vanish.
///
/// The projective kind requires `N` and `D` homogeneous of one common
/// degree, so the value is independent of the representative.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMap {
    numerator: PolySum,
    denominator: PolySum,
    kind: DomainKind,
}

impl RationalMap {
    pub fn affine(numerator: PolySum, denominator: PolySum) -> Result<Self> {
        if numerator.field() != denominator.field() {
            return Err(Error::MixedFields);
        }
        if numerator.nvars() != denominator.nvars() {
            return Err(Error::DimensionMismatch {
                expected: numerator.nvars(),
                got: denominator.nvars(),
            });
        }
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalMap {
            numerator,
            denominator,
            kind: DomainKind::Affine,
        })
    }

    pub fn projective(numerator: HomogPoly, denominator: HomogPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !numerator.is_zero() && numerator.degree() != denominator.degree() {
            return Err(Error::DegreeMismatch {
                expected: denominator.degree() as i64,
                got: numerator.degree() as i64,
            });
        }
        if numerator.field() != denominator.field() {
            return Err(Error::MixedFields);
        }
        if numerator.nvars() != denominator.nvars() {
            return Err(Error::DimensionMismatch {
                expected: numerator.nvars(),
                got: denominator.nvars(),
            });
        }
        Ok(RationalMap {
            numerator: numerator.into(),
            denominator: denominator.into(),
            kind: DomainKind::Projective,
        })
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn numerator(&self) -> &PolySum {
        &self.numerator
    }

    pub fn denominator(&self) -> &PolySum {
        &self.denominator
    }

    /// Evaluates an affine-kind map at a coordinate vector.
    pub fn eval_affine(&self, v: &[FieldValue]) -> Result<FieldValue> {
        if self.kind != DomainKind::Affine {
            return Err(Error::DomainKindMismatch);
        }
        self.eval_raw(v)
    }

    /// Evaluates a projective-kind map on the canonical representative;
    /// equal degrees make the value representative-independent.
    pub fn eval_projective(&self, p: &ProjPoint) -> Result<FieldValue> {
        if self.kind != DomainKind::Projective {
            return Err(Error::DomainKindMismatch);
        }
        self.eval_raw(p.coords())
    }

    fn eval_raw(&self, v: &[FieldValue]) -> Result<FieldValue> {
        let den = self.denominator.eval(v)?;
        if den.is_zero() {
            return Err(Error::DenominatorVanishes {
                witness: v.to_vec(),
            });
        }
        self.numerator.eval(v)?.try_div(&den)
    }
}

/// Machine-checkable evidence that a homogeneous denominator has no nonzero
/// root over the working field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonvanishingCertificate {
    /// Every point of ℙⁿ(𝔽_p) was scanned.
    ExhaustiveFiniteField,
    /// Over ℚ: a positive combination of squared monomials containing a pure
    /// even power of every variable, hence positive away from the origin.
    PositiveDiagonalEvenForm,
    /// Taken on trust; downstream evaluation may still fail.
    Assumed,
}

/// Result of attempting to certify a denominator.
#[derive(Debug, Clone, PartialEq)]
pub enum CertifyOutcome {
    Certified(NonvanishingCertificate),
    /// Sound but incomplete over ℚ: no certificate, no witness found.
    Undecided,
    VanishesAt(ProjPoint),
}

/// Decides nonvanishing of a homogeneous form on `Fⁿ⁺¹ ∖ {0}`.
///
/// Over 𝔽_p this is an exhaustive projective scan (guarded by the
/// enumeration limit); over ℚ it is the syntactic positive-diagonal-even
/// pattern, plus the basis-vector witness check `D(eᵢ) = 0`. It never
/// returns a false certificate.
pub fn certify_nonvanishing(d: &HomogPoly) -> Result<CertifyOutcome> {
    if d.is_zero() {
        return Err(Error::ZeroVector);
    }
    let field = d.field();
    // a nonzero constant never vanishes, over any field
    if d.degree() == 0 {
        return Ok(match field {
            FieldDescriptor::Rationals => {
                let positive = d
                    .coefficient(&Monomial::one(d.nvars()))
                    .as_rational()
                    .map(num_traits::Signed::is_positive)
                    .unwrap_or(false);
                if positive {
                    CertifyOutcome::Certified(NonvanishingCertificate::PositiveDiagonalEvenForm)
                } else {
                    CertifyOutcome::Undecided
                }
            }
            FieldDescriptor::PrimeField(_) => {
                CertifyOutcome::Certified(NonvanishingCertificate::ExhaustiveFiniteField)
            }
        });
    }
    match field {
        FieldDescriptor::PrimeField(_) => {
            for p in enumerate_proj(&field, d.nvars() - 1)? {
                if d.eval(p.coords())?.is_zero() {
                    return Ok(CertifyOutcome::VanishesAt(p));
                }
            }
            Ok(CertifyOutcome::Certified(
                NonvanishingCertificate::ExhaustiveFiniteField,
            ))
        }
        FieldDescriptor::Rationals => {
            for i in 0..d.nvars() {
                let mut exps = vec![0u32; d.nvars()];
                exps[i] = d.degree();
                if d.coefficient(&Monomial::new(exps)).is_zero() {
                    // D(e_i) is exactly that coefficient, so e_i is a root
                    let mut e = vec![FieldValue::zero(&field); d.nvars()];
                    e[i] = FieldValue::one(&field);
                    return Ok(CertifyOutcome::VanishesAt(ProjPoint::normalize(&e)?));
                }
            }
            let all_even_positive = d.terms().all(|(m, c)| {
                m.exponents().iter().all(|e| e % 2 == 0)
                    && c.as_rational()
                        .map(num_traits::Signed::is_positive)
                        .unwrap_or(false)
            });
            if all_even_positive {
                Ok(CertifyOutcome::Certified(
                    NonvanishingCertificate::PositiveDiagonalEvenForm,
                ))
            } else {
                Ok(CertifyOutcome::Undecided)
            }
        }
    }
}

/// A global regular section of O(e) as a rational pair `(N, D)` with
/// `deg N − deg D = e` and a nonvanishing certificate for `D`.
///
/// A zero numerator represents the zero section; its stored degree is then
/// authoritative.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSection {
    degree: BundleDegree,
    numerator: HomogPoly,
    denominator: HomogPoly,
    cert: NonvanishingCertificate,
}

impl RationalSection {
    /// Builds a section and certifies the denominator; refuses denominators
    /// that vanish or cannot be certified.
    pub fn new(numerator: HomogPoly, denominator: HomogPoly) -> Result<Self> {
        let (numerator, denominator) = Self::check_shape(numerator, denominator)?;
        let cert = match certify_nonvanishing(&denominator)? {
            CertifyOutcome::Certified(cert) => cert,
            CertifyOutcome::Undecided => return Err(Error::CannotCertify),
            CertifyOutcome::VanishesAt(p) => {
                return Err(Error::DenominatorVanishes {
                    witness: p.coords().to_vec(),
                })
            }
        };
        let degree = BundleDegree(numerator.degree() as i64 - denominator.degree() as i64);
        Ok(RationalSection {
            degree,
            numerator,
            denominator,
            cert,
        })
    }

    /// Builds a section whose denominator is taken on trust
    /// ([`NonvanishingCertificate::Assumed`]).
    pub fn with_assumed_nonvanishing(
        numerator: HomogPoly,
        denominator: HomogPoly,
    ) -> Result<Self> {
        let (numerator, denominator) = Self::check_shape(numerator, denominator)?;
        let degree = BundleDegree(numerator.degree() as i64 - denominator.degree() as i64);
        Ok(RationalSection {
            degree,
            numerator,
            denominator,
            cert: NonvanishingCertificate::Assumed,
        })
    }

    fn check_shape(
        numerator: HomogPoly,
        denominator: HomogPoly,
    ) -> Result<(HomogPoly, HomogPoly)> {
        if numerator.field() != denominator.field() {
            return Err(Error::MixedFields);
        }
        if numerator.nvars() != denominator.nvars() {
            return Err(Error::DimensionMismatch {
                expected: numerator.nvars(),
                got: denominator.nvars(),
            });
        }
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok((numerator, denominator))
    }

    /// The zero section of O(e).
    pub fn zero(field: FieldDescriptor, nvars: usize, degree: BundleDegree) -> Self {
        RationalSection {
            degree,
            numerator: HomogPoly::zero(field, nvars, degree.0.max(0) as u32),
            denominator: HomogPoly::one(field, nvars),
            cert: match field {
                FieldDescriptor::Rationals => NonvanishingCertificate::PositiveDiagonalEvenForm,
                FieldDescriptor::PrimeField(_) => NonvanishingCertificate::ExhaustiveFiniteField,
            },
        }
    }

    pub fn degree(&self) -> BundleDegree {
        self.degree
    }

    pub fn numerator(&self) -> &HomogPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &HomogPoly {
        &self.denominator
    }

    pub fn certificate(&self) -> NonvanishingCertificate {
        self.cert
    }

    pub fn field(&self) -> FieldDescriptor {
        self.numerator.field()
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The value `h(v) = N(v)/D(v)` on the canonical representative.
    fn h(&self, p: &ProjPoint) -> Result<FieldValue> {
        let den = self.denominator.eval(p.coords())?;
        if den.is_zero() {
            return Err(Error::DenominatorVanishes {
                witness: p.coords().to_vec(),
            });
        }
        self.numerator.eval(p.coords())?.try_div(&den)
    }

    /// The chart-`j` trivialized value `s_j = h(x)/x_j^e`, a degree-zero
    /// expression of the representative. Satisfies
    /// `s_k = (x_j/x_k)^e · s_j` on overlaps.
    pub fn local_rep(&self, j: usize, p: &ProjPoint) -> Result<FieldValue> {
        if !p.in_chart(j) {
            return Err(Error::OutsideChart { chart: j });
        }
        self.h(p)?.try_mul(&p.coords()[j].pow(-self.degree.0)?)
    }

    /// For `e = −d < 0`: the Symᵈ(V)-valued section value
    /// `(N/D)(v) · v^{⊗d}` as a degree-`d` form in dual variables.
    pub fn sigma_hat_tensor(&self, p: &ProjPoint) -> Result<HomogPoly> {
        if self.degree.0 >= 0 {
            return Err(Error::WrongDegreeSign);
        }
        let d = (-self.degree.0) as u32;
        let linear = HomogPoly::linear_form(self.field(), p.coords())?;
        linear.pow(d).scale(&self.h(p)?)
    }

    /// For `e = −1`: the V-valued section value `(N/D)(v) · v`, a point on
    /// the line `[v]`.
    pub fn sigma_hat_vector(&self, p: &ProjPoint) -> Result<Vec<FieldValue>> {
        if self.degree.0 != -1 {
            return Err(Error::WrongDegree {
                expected: -1,
                got: self.degree.0,
            });
        }
        let h = self.h(p)?;
        p.coords().iter().map(|c| c.try_mul(&h)).collect()
    }

    /// The `d`-fold tensor power of a degree −1 section: `(N^d, D^d)` of
    /// degree `−d`, with the certificate inherited.
    pub fn tensor_power(&self, d: u32) -> Result<RationalSection> {
        if self.degree.0 != -1 {
            return Err(Error::WrongDegree {
                expected: -1,
                got: self.degree.0,
            });
        }
        if d == 0 {
            return Err(Error::WrongDegree {
                expected: 1,
                got: 0,
            });
        }
        Ok(RationalSection {
            degree: BundleDegree(-(d as i64)),
            numerator: self.numerator.pow(d),
            denominator: self.denominator.pow(d),
            cert: self.cert,
        })
    }

    /// Parses the text form `degree=<e>; N=<poly>; D=<poly>`.
    ///
    /// Certification is attempted; an uncertifiable denominator yields an
    /// [`NonvanishingCertificate::Assumed`] section rather than an error.
    pub fn parse(text: &str, nvars: usize, field: &FieldDescriptor) -> Result<Self> {
        let mut degree: Option<i64> = None;
        let mut numerator: Option<PolySum> = None;
        let mut denominator: Option<PolySum> = None;
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            if let Some(e) = part.strip_prefix("degree=") {
                degree = Some(e.trim().parse().map_err(|_| Error::InvalidLiteral {
                    text: part.to_string(),
                })?);
            } else if let Some(n) = part.strip_prefix("N=") {
                numerator = Some(parse_poly(n, nvars, field)?);
            } else if let Some(d) = part.strip_prefix("D=") {
                denominator = Some(parse_poly(d, nvars, field)?);
            } else {
                return Err(Error::InvalidLiteral {
                    text: part.to_string(),
                });
            }
        }
        let (Some(degree), Some(numerator), Some(denominator)) = (degree, numerator, denominator)
        else {
            return Err(Error::InvalidLiteral {
                text: text.to_string(),
            });
        };
        let den = denominator
            .as_homogeneous()
            .cloned()
            .ok_or(Error::DivisionByZero)?;
        let num = if numerator.is_zero() {
            HomogPoly::zero(*field, nvars, degree.max(0) as u32)
        } else {
            numerator.as_homogeneous().cloned().ok_or_else(|| {
                Error::SyntaxError {
                    pos: 0,
                    message: "numerator is not homogeneous".to_string(),
                }
            })?
        };
        if !num.is_zero() {
            let actual = num.degree() as i64 - den.degree() as i64;
            if actual != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: actual,
                });
            }
        }
        let mut section = match certify_nonvanishing(&den)? {
            CertifyOutcome::Certified(_) => RationalSection::new(num, den)?,
            CertifyOutcome::Undecided => RationalSection::with_assumed_nonvanishing(num, den)?,
            CertifyOutcome::VanishesAt(p) => {
                return Err(Error::DenominatorVanishes {
                    witness: p.coords().to_vec(),
                })
            }
        };
        section.degree = BundleDegree(degree);
        Ok(section)
    }
}

impl fmt::Display for RationalSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree={}; N={}; D={}",
            self.degree.0, self.numerator, self.denominator
        )
    }
}

/// The regular section `σ_A` with `N = A` and `D = 1`; the assignment
/// `A ↦ σ_A` is injective.
pub fn section_from_form(a: HomogPoly) -> Result<RationalSection> {
    let one = HomogPoly::one(a.field(), a.nvars());
    RationalSection::new(a, one)
}

/// The degree −1 sections on ℙ¹(ℚ) from the Möbius-bundle family:
/// `N = p` (paired with the tautological direction), `D = x0^{2k} + x1^{2k}`.
pub fn mobius_section(k: u32, p: HomogPoly) -> Result<RationalSection> {
    if k == 0 {
        return Err(Error::WrongDegree {
            expected: 1,
            got: 0,
        });
    }
    if p.nvars() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: p.nvars(),
        });
    }
    if p.degree() != 2 * k - 1 {
        return Err(Error::DegreeMismatch {
            expected: (2 * k - 1) as i64,
            got: p.degree() as i64,
        });
    }
    let field = p.field();
    let x0 = HomogPoly::variable(field, 2, 0).pow(2 * k);
    let x1 = HomogPoly::variable(field, 2, 1).pow(2 * k);
    RationalSection::new(p, x0.add(&x1)?)
}

/// The monomial sections `σ_m` of O(d) on ℙⁿ, one per degree-`d` monomial in
/// descending graded-lex order; there are `C(n+d, n)` of them and they are
/// linearly independent.
pub fn section_basis(
    field: FieldDescriptor,
    n: usize,
    d: u32,
) -> Result<Vec<RationalSection>> {
    monomial_basis(n + 1, d)
        .into_iter()
        .map(|m| {
            let coeff = FieldValue::one(&field);
            section_from_form(HomogPoly::monomial_term(field, n + 1, m, coeff)?)
        })
        .collect()
}
