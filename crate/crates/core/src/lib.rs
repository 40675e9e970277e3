//! Exact computer algebra for the mirror symmetry of smooth toric Fano
//! manifolds.
//!
//! Given a polytope/fan presentation, the crate constructs the mirror
//! Landau-Ginzburg model, its Jacobian ring over Q(q1,..,ql), the
//! loop-space convolution algebra with its disc-counting generators, and
//! the semi-flat and toric SYZ transforms on exact exterior forms. A
//! numeric branch finds critical points and evaluates Floer data.
//!
//! ```
//! use syzkit::{loops, mirror, presets};
//!
//! let fp = presets::preset("CP2").unwrap();
//! let w = mirror::build_superpotential(&fp).unwrap();
//! assert_eq!(w.poly.to_text(), "z1 + z2 + q1*z1^-1*z2^-1");
//!
//! // The Fourier series of the disc-counting function recovers W, and
//! // the Jacobian ring has dimension 3.
//! assert_eq!(loops::psi_total(&fp).unwrap().fourier(), w.poly);
//! let jac = mirror::jacobian_ring(&w).unwrap();
//! assert_eq!(jac.dimension(), Some(3));
//! ```

pub mod brane;
pub mod error;
pub mod forms;
pub mod lattice;
pub mod laurent;
pub mod loops;
pub mod mirror;
pub mod presets;
pub mod quotient;
pub mod scalar;

pub use error::{Error, Result};
