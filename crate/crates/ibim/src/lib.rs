//! Lattice quadrature for implicitly represented boundaries.
//!
//! The crate evaluates boundary integrals of smooth functions over
//! curves and surfaces given through their signed distance function, by
//! summing over the points of a uniform Cartesian lattice that fall in a
//! narrow tube around the boundary:
//!
//! `I_h(f) = h^d * sum_n f(P x_n) * theta_eps(d(x_n)) * J(x_n, d(x_n))`
//!
//! where `P` is the closest-point projection, `theta_eps` a compactly
//! supported averaging kernel, and `J` the level-set Jacobian. On top of
//! the quadrature engine sit experiment drivers that fit convergence
//! rates and the variance of the quadrature value under random rigid
//! transformations of the lattice.
//!
//! See the `examples/` directory for runnable entry points covering each
//! capability.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod lattice;
pub mod math;
pub mod numbertheory;
pub mod quadrature;
pub mod reference;
pub mod summation;
pub mod weights;

pub use error::{Error, Result};
pub use geometry::{Boundary, CurvatureData, JacobianMode, Point};
pub use lattice::{enumerate_tube, sample_frame, LatticeFrame, TransformMode};
pub use quadrature::{ibim_integrate, quadrature_error, Integrand, QuadratureResult};
pub use weights::{WeightFunction, WeightKind};
