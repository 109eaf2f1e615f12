//! Symbolic Heisenberg equations for quadratic Hamiltonians.
//!
//! Observables are linear forms `gᵀr + h(t)`. Their time derivative under
//! `ṙ = J(Ar + b(t))` is again a linear form, so accelerations come out in
//! closed form.

use std::fmt;

use crate::error::{Error, Result};
use crate::frames::hamiltonian::{unit, QuadraticHamiltonian};
use crate::frames::map::AffineFrameMap;
use crate::linalg::dot;
use crate::model::{symplectic_form, CoordinateSystem};
use crate::poly::Polynomial;
use crate::scalar::{Real, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<T> {
    pub coeffs: Vec<T>,
    pub constant: Polynomial<T>,
}

impl<T: Scalar> LinearForm<T> {
    pub fn axis(n: usize, i: usize) -> Self {
        Self {
            coeffs: unit(n, i),
            constant: Polynomial::zero(),
        }
    }

    pub fn constant(n: usize, c: Polynomial<T>) -> Self {
        Self {
            coeffs: vec![T::zero(); n],
            constant: c,
        }
    }

    /// True when the form is a pure function of time.
    pub fn is_state_independent(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, r: &[T], t: &T) -> T {
        dot(&self.coeffs, r) + self.constant.eval(t)
    }

    pub fn eval_real<F: Real>(&self, r: &[F], t: F) -> F {
        self.coeffs
            .iter()
            .zip(r)
            .fold(self.constant.eval_real(t), |acc, (c, x)| acc + c.to_real::<F>() * *x)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
            constant: self.constant.scale(s),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
            constant: &self.constant - &other.constant,
        }
    }

    /// Re-expresses a form over the map's source coordinates in its target
    /// coordinates, using `r = S⁻¹(r' − d(t))`.
    pub fn to_target(&self, map: &AffineFrameMap<T>) -> Result<Self> {
        let s_inv = map.linear().inverse()?;
        let coeffs = s_inv.transpose().mul_vec(&self.coeffs);
        let shift = (0..coeffs.len()).fold(Polynomial::zero(), |acc, j| {
            &acc + &map.offset()[j].scale(&coeffs[j])
        });
        Ok(Self {
            coeffs,
            constant: &self.constant - &shift,
        })
    }

    /// Re-expresses a form over target coordinates in source coordinates.
    pub fn to_source(&self, map: &AffineFrameMap<T>) -> Self {
        let coeffs = map.linear().transpose().mul_vec(&self.coeffs);
        let shift = (0..self.coeffs.len()).fold(Polynomial::zero(), |acc, j| {
            &acc + &map.offset()[j].scale(&self.coeffs[j])
        });
        Self {
            coeffs,
            constant: &self.constant + &shift,
        }
    }
}

/// Formats a form with the axis names of a coordinate system.
pub struct Named<'a, T>(pub &'a LinearForm<T>, pub &'a CoordinateSystem);

impl<T: Scalar> fmt::Display for Named<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .0
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*{}", self.1.axis(i)))
            .collect();
        if !self.0.constant.is_zero() || parts.is_empty() {
            parts.push(format!("({})", self.0.constant));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `d/dt (gᵀr + h(t)) = gᵀJ(A r + b(t)) + ḣ(t)`.
///
/// Linear and harmonic potentials are folded into `(A, b)`. Any other
/// potential is allowed only when it cannot reach the form, i.e. `gᵀJℓ = 0`.
pub fn time_derivative<T: Scalar>(h: &QuadraticHamiltonian<T>, form: &LinearForm<T>) -> Result<LinearForm<T>> {
    let n = h.dimension();
    if form.coeffs.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: form.coeffs.len(),
        });
    }
    let j = symplectic_form::<T>(&h.cs);
    // w = Jᵀ g, so gᵀJ v = wᵀ v
    let w = j.transpose().mul_vec(&form.coeffs);
    let (a, b, _, rest) = h.absorb_polynomial_potentials();
    for term in rest {
        if !dot(&w, &term.direction).is_zero() {
            return Err(Error::NonQuadratic(format!(
                "{:?} potential enters the equation of motion",
                term.shape
            )));
        }
    }
    let coeffs = a.transpose().mul_vec(&w);
    let constant = (0..n).fold(form.constant.derivative(), |acc, k| &acc + &b[k].scale(&w[k]));
    Ok(LinearForm { coeffs, constant })
}

pub fn heisenberg_velocity<T: Scalar>(h: &QuadraticHamiltonian<T>, axis: usize) -> Result<LinearForm<T>> {
    time_derivative(h, &LinearForm::axis(h.dimension(), axis))
}

/// Second time derivative of a phase-space axis in the Heisenberg picture.
pub fn heisenberg_acceleration<T: Scalar>(h: &QuadraticHamiltonian<T>, axis: usize) -> Result<LinearForm<T>> {
    time_derivative(h, &heisenberg_velocity(h, axis)?)
}
