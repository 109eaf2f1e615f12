//! Shared domain types: units, particles, frame trajectories and phase-space labelling.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Unit system of a run. Only the reduced Planck constant matters.
#[derive(Clone, Debug, PartialEq)]
pub struct Units<T> {
    hbar: T,
}

impl<T: Scalar> Units<T> {
    pub fn new(hbar: T) -> Result<Self> {
        if !hbar.is_positive() {
            return Err(Error::InvalidParameter(format!("hbar must be positive, got {hbar}")));
        }
        Ok(Self { hbar })
    }

    pub fn hbar(&self) -> &T {
        &self.hbar
    }
}

impl<T: Scalar> Default for Units<T> {
    fn default() -> Self {
        Self { hbar: T::one() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParticleSpec<T> {
    pub label: String,
    mass: T,
}

impl<T: Scalar> ParticleSpec<T> {
    pub fn new(label: impl Into<String>, mass: T) -> Result<Self> {
        let label = label.into();
        if !mass.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "mass of {label} must be positive, got {mass}"
            )));
        }
        Ok(Self { label, mass })
    }

    pub fn mass(&self) -> &T {
        &self.mass
    }
}

/// Position `X(t)` of a classical frame, polynomial in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameTrajectory<T> {
    position: Polynomial<T>,
}

/// `X`, `Ẋ`, `Ẍ` and `∫_0^t Ẋ² dt'` at one instant.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryPoint<T> {
    pub position: T,
    pub velocity: T,
    pub acceleration: T,
    pub velocity_squared_integral: T,
}

impl<T: Scalar> FrameTrajectory<T> {
    pub fn new(coefficients: Vec<T>) -> Self {
        Self {
            position: Polynomial::new(coefficients),
        }
    }

    pub fn from_polynomial(position: Polynomial<T>) -> Self {
        Self { position }
    }

    pub fn at_rest() -> Self {
        Self::new(Vec::new())
    }

    /// `X(t) = a`.
    pub fn constant(a: T) -> Self {
        Self::new(vec![a])
    }

    /// `X(t) = v t`.
    pub fn uniform(v: T) -> Self {
        Self::new(vec![T::zero(), v])
    }

    /// `X(t) = g t² / 2`.
    pub fn uniformly_accelerated(g: T) -> Self {
        let two = T::one() + T::one();
        Self::new(vec![T::zero(), T::zero(), g / two])
    }

    pub fn position(&self) -> &Polynomial<T> {
        &self.position
    }

    pub fn velocity(&self) -> Polynomial<T> {
        self.position.derivative()
    }

    pub fn acceleration(&self) -> Polynomial<T> {
        self.position.derivative().derivative()
    }

    /// `t -> ∫_0^t Ẋ(t')² dt'` as a polynomial.
    pub fn velocity_squared_integral(&self) -> Polynomial<T> {
        let v = self.velocity();
        (&v * &v).integral()
    }

    pub fn eval(&self, t: &T) -> TrajectoryPoint<T> {
        TrajectoryPoint {
            position: self.position.eval(t),
            velocity: self.velocity().eval(t),
            acceleration: self.acceleration().eval(t),
            velocity_squared_integral: self.velocity_squared_integral().eval(t),
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::from_polynomial(&self.position + &other.position)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxisKind {
    Position,
    Momentum,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Axis {
    pub particle: String,
    pub kind: AxisKind,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AxisKind::Position => write!(f, "x[{}]", self.particle),
            AxisKind::Momentum => write!(f, "p[{}]", self.particle),
        }
    }
}

/// Ordered phase-space axes `(x_1, p_1, ..., x_N, p_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSystem {
    particles: Vec<String>,
}

impl CoordinateSystem {
    pub fn new<S: Into<String>>(particles: impl IntoIterator<Item = S>) -> Self {
        Self {
            particles: particles.into_iter().map(Into::into).collect(),
        }
    }

    pub fn particles(&self) -> &[String] {
        &self.particles
    }

    pub fn particle_count(&self) -> usize {
        self.particles.len()
    }

    pub fn dimension(&self) -> usize {
        2 * self.particles.len()
    }

    pub fn position_index(&self, particle: usize) -> usize {
        2 * particle
    }

    pub fn momentum_index(&self, particle: usize) -> usize {
        2 * particle + 1
    }

    pub fn axis(&self, index: usize) -> Axis {
        Axis {
            particle: self.particles[index / 2].clone(),
            kind: if index % 2 == 0 {
                AxisKind::Position
            } else {
                AxisKind::Momentum
            },
        }
    }

    pub fn axes(&self) -> Vec<Axis> {
        (0..self.dimension()).map(|i| self.axis(i)).collect()
    }

    pub fn index_of(&self, particle: &str, kind: AxisKind) -> Option<usize> {
        let k = self.particles.iter().position(|p| p == particle)?;
        Some(match kind {
            AxisKind::Position => 2 * k,
            AxisKind::Momentum => 2 * k + 1,
        })
    }

    pub fn is_position(index: usize) -> bool {
        index % 2 == 0
    }

    /// Same particles with a suffix appended to each label.
    pub fn primed(&self, suffix: &str) -> Self {
        Self::new(self.particles.iter().map(|p| format!("{p}{suffix}")))
    }
}

/// Canonical symplectic form: `[r_i, r_j] = iħ J_ij`, blocks `[[0, 1], [-1, 0]]`.
pub fn symplectic_form<T: Scalar>(cs: &CoordinateSystem) -> Mat<T> {
    let n = cs.dimension();
    let mut j = Mat::zeros(n, n);
    for k in 0..cs.particle_count() {
        j[(2 * k, 2 * k + 1)] = T::one();
        j[(2 * k + 1, 2 * k)] = -T::one();
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::Rational;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        ratio(n, 1)
    }

    #[test]
    fn trajectory_examples() {
        let zero = FrameTrajectory::<Rational>::at_rest().eval(&r(5));
        assert_eq!(
            (zero.position, zero.velocity, zero.acceleration, zero.velocity_squared_integral),
            (r(0), r(0), r(0), r(0))
        );

        let uniform = FrameTrajectory::uniform(r(3)).eval(&r(2));
        assert_eq!(
            (uniform.position, uniform.velocity, uniform.acceleration, uniform.velocity_squared_integral),
            (r(6), r(3), r(0), r(18))
        );

        let fall = FrameTrajectory::uniformly_accelerated(r(2)).eval(&r(1));
        assert_eq!(
            (fall.position, fall.velocity, fall.acceleration, fall.velocity_squared_integral),
            (r(1), r(2), r(2), ratio(4, 3))
        );
    }

    #[test]
    fn symplectic_form_small_cases() {
        let j1: Mat<Rational> = symplectic_form(&CoordinateSystem::new(["P"]));
        assert_eq!(j1, Mat::from_rows(vec![vec![r(0), r(1)], vec![r(-1), r(0)]]));
        let j2: Mat<Rational> = symplectic_form(&CoordinateSystem::new(["S", "P"]));
        assert_eq!(j2.select(&[0, 1], &[0, 1]), j1);
        assert_eq!(j2.select(&[2, 3], &[2, 3]), j1);
        assert!(j2.select(&[0, 1], &[2, 3]).is_zero());
    }

    #[test]
    fn symplectic_form_identities() {
        for n in 1..=4 {
            let cs = CoordinateSystem::new((0..n).map(|k| format!("q{k}")));
            let j: Mat<Rational> = symplectic_form(&cs);
            let id = Mat::identity(2 * n);
            assert_eq!(&j * &j.transpose(), id);
            assert_eq!(j.transpose(), -&j);
            assert_eq!(&j * &j, -&id);
        }
    }

    #[test]
    fn rejects_nonpositive_inputs() {
        assert!(Units::new(r(0)).is_err());
        assert!(ParticleSpec::new("P", r(-1)).is_err());
        assert!(ParticleSpec::new("P", ratio(1, 3)).is_ok());
    }

    #[test]
    fn axis_labels() {
        let cs = CoordinateSystem::new(["S", "P"]);
        assert_eq!(cs.axis(3).to_string(), "p[P]");
        assert_eq!(cs.index_of("S", AxisKind::Momentum), Some(1));
        assert_eq!(cs.primed("'").particles(), ["S'", "P'"]);
    }

    proptest! {
        #[test]
        fn theta_integral_derivative_is_velocity_squared(
            cs in prop::collection::vec((-12i64..12, 1i64..6), 0..5),
            t in (-6i64..6, 1i64..4),
        ) {
            let traj = FrameTrajectory::new(cs.iter().map(|&(n, d)| ratio(n, d)).collect());
            let v = traj.velocity();
            prop_assert_eq!(traj.velocity_squared_integral().derivative(), &v * &v);
            let t = ratio(t.0, t.1);
            let pt = traj.eval(&t);
            prop_assert_eq!(pt.velocity.clone() * pt.velocity, (&v * &v).eval(&t));
        }
    }
}
