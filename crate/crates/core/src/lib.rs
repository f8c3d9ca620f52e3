//! Exact computer algebra for the quantum torus `A_q` (with `σz = qzσ`) and
//! for left `A_q`-modules that are finitely generated over `A = K[z, z⁻¹]`.
//!
//! Everything is computed over `Q` with no rounding. The parameter `q` is
//! ambient; see [`scalars::with_q`].

pub mod aq;
pub mod cohomology;
pub mod duality;
pub mod error;
pub mod ideals;
pub mod laurent;
pub mod lmatrix;
pub mod modules;
pub mod qlinalg;
pub mod sample;
pub mod scalars;
pub mod verify;

pub use aq::AqElement;
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use lmatrix::LaurentMatrix;
pub use scalars::{QParam, Scalar};
