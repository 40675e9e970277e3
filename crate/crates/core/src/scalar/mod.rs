//! Exact scalar tower: Z[q] polynomials, the fraction field Q(q1,..,ql),
//! and its Gaussian extension.

mod gauss;
mod qpoly;
mod qscalar;

pub use gauss::GaussScalar;
pub use qpoly::{gcd as qpoly_gcd, grevlex_cmp, QPoly};
pub use qscalar::QScalar;

pub(crate) use qpoly::grevlex_cmp_u32;
