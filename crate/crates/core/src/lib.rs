//! Fluctuation-induced electromagnetic forces on small polarizable particles.
//!
//! The crate evaluates two observables for a point dipole in the quantized
//! electromagnetic field, both in natural units (ħ = k_B = c = 1):
//!
//! * the equilibrium attraction between a particle and a dielectric half
//!   space, as a Matsubara sum over imaginary frequencies
//!   ([`casimir_polder`]), and
//! * the velocity-linear drag on a particle moving uniformly through
//!   blackbody radiation ([`friction`]).
//!
//! Supporting layers: material and particle response models on the real and
//! imaginary frequency axes ([`response`]), two-branch contour algebra and
//! the free-photon on-shell structure ([`keldysh`]), deterministic adaptive
//! quadrature and Matsubara summation ([`numerics`]), and a numerical check
//! of the real-axis ↔ imaginary-axis equivalence for rational response
//! functions ([`wick`]). The [`suite`] module packages the release
//! acceptance checks behind the `validate` command of the CLI.

pub mod casimir_polder;
pub mod friction;
pub mod keldysh;
pub mod numerics;
pub mod response;
pub mod suite;
pub mod tensor;
pub mod wick;

pub use numerics::{IntegralResult, MatsubaraGrid, NumericsPolicy};
pub use response::{PermittivityModel, PolarizabilityModel};
pub use tensor::Tensor3C;
