//! Exact linear algebra over `Q(sqrt p)` for Frobenius-nilpotent pairs
//! `(Phi, N)` in `GL_n`: twisted adjoint operators, associated
//! cocharacters, deformation complexes and the local structure of the
//! moduli of such pairs in small rank.
//!
//! ```
//! use phinmod::components::singularity_certificate;
//! use phinmod::{Mat, QuadField};
//!
//! let field = QuadField::new(2)?;
//! let phi = Mat::diag(field, &[field.one(), field.int(2), field.int(2)]);
//! let cert = singularity_certificate(&phi)?;
//! assert!(!cert.in_x_reg);
//! # Ok::<(), phinmod::Error>(())
//! ```

pub mod adjoint;
pub mod cli;
pub mod components;
pub mod dual;
pub mod error;
pub mod field;
pub mod json;
pub mod linalg;
pub mod moduli;
pub mod nilpotent;
pub mod sample;
pub mod selftest;

pub use error::{Error, Result};
pub use field::{QuadField, Scalar};
pub use linalg::Mat;
