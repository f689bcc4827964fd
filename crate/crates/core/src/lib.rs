//! Exact projective geometry over ℚ and prime fields: charts, the line
//! bundles O(e), their transition cocycles, regular sections, Veronese and
//! Segre embeddings, and the tautological/hyperplane/Euler sequences.
//!
//! Everything is computed in exact arithmetic — arbitrary-precision
//! rationals or canonical residues mod p — so every identity asserted by the
//! library and its tests holds with tolerance zero. Values are immutable and
//! all operations are pure.
//!
//! A quick tour:
//!
//! ```
//! use opv::{BundleDegree, FieldDescriptor, ProjPoint, transition, cocycle_check};
//!
//! let f = FieldDescriptor::Rationals;
//! let p = ProjPoint::parse("[1:2:3]", &f)?;
//! // transition of O(2) from chart 0 to chart 1 is (x0/x1)^2
//! let g = transition(BundleDegree(2), 0, 1, &p)?;
//! assert_eq!(g.to_string(), "1/4");
//! assert!(cocycle_check(BundleDegree(-3), 0, 1, 2, &p)?);
//! # Ok::<(), opv::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod affine;
pub mod bundles;
pub mod error;
pub mod euler;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod projmaps;
pub mod projspace;
pub mod sample;
pub mod sections;

pub use affine::{is_affine_subspace, linear_part, vectorize_ops, AffineMap, AffinePoint};
pub use bundles::{
    cocycle_check, hyperplane_eval, transition, BundleDegree, LocalValue, O1FiberElement,
};
pub use error::{Error, Result};
pub use euler::{
    euler_sequence_fiber, hyperplane_sequence_fiber, p1_tangent_iso_check, tangent_transition_p1,
    taut_sequence_fiber, FiberSequence, TangentFiber,
};
pub use field::{FieldDescriptor, FieldValue, Prime};
pub use linalg::Matrix;
pub use poly::{monomial_basis, parse_poly, HomogPoly, Monomial, PolySum};
pub use projmaps::{segre, veronese, veronese_chart_index, LinearInduced, MorphismData};
pub use projspace::{
    enumerate_proj, overlap, standard_chart_fwd, standard_chart_inv, GeneralChart, ProjPoint,
};
pub use sample::SampleRng;
pub use sections::{
    certify_nonvanishing, mobius_section, section_basis, section_from_form, CertifyOutcome,
    DomainKind, NonvanishingCertificate, RationalMap, RationalSection,
};
