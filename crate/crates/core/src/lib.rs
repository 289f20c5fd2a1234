//! Exact degreewise computation of graded local cohomology, graded Hom and
//! Ext, ideal transforms, and coarsening functors for multigraded modules
//! over polynomial rings.
//!
//! All algebra is generic over a coefficient [`Field`]; the aliases at the
//! bottom of this file fix it to exact arbitrary-precision rationals, which
//! is what the higher-level checkers and the command line use.

pub mod coarsen;
pub mod error;
pub mod grading;
pub mod homres;
pub mod linalg;
pub mod localcoh;
pub mod monoidx;
pub mod ringcore;
pub mod scalar;

pub use error::{Error, Result};
pub use grading::{Degree, DegreeGroup, DegreeWindow, GroupEpimorphism};
pub use ringcore::{GradedPolynomialRing, HilbertTable, Monomial, MonomialIdeal};
pub use scalar::Field;

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Rational matrices.
pub type QMatrix = linalg::Matrix<Rational>;
/// Rational polynomials.
pub type QPoly = ringcore::Poly<Rational>;
/// Finitely presented graded modules over the rationals.
pub type Module = ringcore::Presentation<Rational>;
