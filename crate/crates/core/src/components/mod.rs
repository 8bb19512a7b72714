//! Component analyses in low rank: the `GL_2` divisor, the regular
//! resolution and the `GL_3` subregular resolution.

pub mod gl2;
pub mod regular;
pub mod subregular;

pub use gl2::{divisor_gradient, divisor_value, gl2_charpoly_formula, gl2_report, gl2_x0_tangent, Gl2Report, Gl2X0Tangent};
pub use regular::reg_filtration_reconstruct;
pub use subregular::{
    singularity_certificate, sub_fiber, sub_tangent_image, Cardinality, FiberRay, SingularityCertificate, SubFiber,
    Verdict,
};
