//! Galilean frame changes for quantum systems: exact displacement algebra with
//! phase cocycles, symplectic-affine frame maps, transformed quadratic
//! Hamiltonians, and two dynamics engines (split-step grids and Gaussian
//! moments) to check them against each other.
//!
//! Algebra is generic over [`Scalar`] so that it runs on exact rationals as
//! well as floats. Dynamics run on [`Real`] types.

pub mod error;
pub mod frames;
pub mod gaussian;
pub mod grid;
pub mod linalg;
pub mod model;
pub mod phase;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{parse_rational, Real, Scalar};

/// Arbitrary-precision rational, the scalar for all exact checks.
pub type Rational = num_rational::BigRational;

pub type RationalMatrix = linalg::Mat<Rational>;
pub type RationalPolynomial = poly::Polynomial<Rational>;
pub type RationalWeyl = phase::WeylElement<Rational>;
pub type RationalHamiltonian = frames::QuadraticHamiltonian<Rational>;
pub type RationalFrameMap = frames::AffineFrameMap<Rational>;
pub type RationalTrajectory = model::FrameTrajectory<Rational>;

pub type Grid = grid::GridState<f64>;
pub type Gaussian = gaussian::GaussianState<f64>;
