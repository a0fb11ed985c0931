//! Sliding minimal cones with a weighted boundary energy.
//!
//! The toolkit evaluates the functional J_α = H²(E \ Γ) + α·H²(E ∩ Γ) for
//! cones whose boundary may slide along the plane Γ = {z = 0}, and offers:
//!
//! * [`geom`]: regular simplices and the rotations used by tilted cones;
//! * [`cones`]: symbolic cone families and their window meshes;
//! * [`energy`]: exact and mesh energies, slicing checks;
//! * [`calibration`]: paired-calibration certificates;
//! * [`competitor`]: the analytic push-down competitor of the half
//!   tetrahedral cone;
//! * [`onedim`]: one-dimensional profiles and their classification;
//! * [`spherical`]: side-length relations of spherical Taylor networks;
//! * [`evolver`]: projected gradient descent on tagged meshes and the
//!   topology surgeries producing better competitors;
//! * [`cli`]: the command-line front end.

pub mod calibration;
pub mod cli;
pub mod competitor;
pub mod cones;
pub mod energy;
pub mod error;
pub mod evolver;
pub mod geom;
pub mod meshing;
pub mod onedim;
pub mod quadrature;
pub mod spherical;

pub use error::{Error, Result};
