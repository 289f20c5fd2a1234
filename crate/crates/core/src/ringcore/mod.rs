//! Multigraded polynomial rings, monomial ideals, finitely presented graded
//! modules and their degreewise linear algebra.

mod hilbert;
mod ideal;
mod module;
mod poly;
mod ring;

pub use hilbert::{hilbert, ideal_component_dim, HilbertTable};
pub use ideal::MonomialIdeal;
pub use module::{ComponentBasis, Presentation, RelationColumn};
pub use poly::Poly;
pub use ring::{certificate_is_positive, GradedPolynomialRing, Monomial};

#[cfg(test)]
mod tests;
