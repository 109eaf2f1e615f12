//! Strang split-step propagation for Hamiltonians that split into a
//! momentum-diagonal and a position-diagonal part.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frames::{PotentialShape, PotentialTerm, QuadraticHamiltonian};
use crate::grid::{Fourier, GridSpec, GridState};
use crate::linalg::Mat;
use crate::poly::Polynomial;
use crate::scalar::{Real, Scalar};

/// How often (in steps) the boundary monitor runs.
const MONITOR_EVERY: usize = 32;

/// Precomputed split-step data for one Hamiltonian on one grid.
///
/// Writing `r = (x₁, p₁, ..., x_N, p_N)`, the Hamiltonian is split as
/// `T(p, t) = ½ pᵀA_pp p + b_p(t)ᵀp` and
/// `V(x, t) = ½ xᵀA_xx x + b_x(t)ᵀx + c(t) + Σ V_k(ℓ_kᵀx + o_k(t))`.
/// Coefficients are sampled at the midpoint of every step.
pub struct SplitStepPropagator<F: Real> {
    spec: GridSpec<F>,
    hbar: F,
    fourier: Fourier<F>,
    /// `½ pᵀA_pp p` on the momentum grid.
    kinetic_static: Vec<F>,
    /// Static part of `V`: quadratic form plus time-independent potentials.
    potential_static: Vec<F>,
    /// Per-axis linear momentum coefficients `b_p`.
    b_mom: Vec<Polynomial<F>>,
    /// Per-axis linear position coefficients `b_x`.
    b_pos: Vec<Polynomial<F>>,
    c: Polynomial<F>,
    moving: Vec<PotentialTerm<F>>,
    monitor: bool,
}

impl<F: Real> SplitStepPropagator<F> {
    pub fn new<T: Scalar>(spec: &GridSpec<F>, h: &QuadraticHamiltonian<T>, hbar: F) -> Result<Self> {
        let h: QuadraticHamiltonian<F> = h.to_real();
        let nd = spec.ndim();
        if h.cs.particle_count() != nd {
            return Err(Error::Dimension {
                expected: nd,
                got: h.cs.particle_count(),
            });
        }
        let a = &h.a;
        for i in 0..nd {
            for j in 0..nd {
                if !a[(2 * i, 2 * j + 1)].is_zero() {
                    return Err(Error::NonSeparable(format!(
                        "{} couples to {}",
                        h.cs.axis(2 * i),
                        h.cs.axis(2 * j + 1)
                    )));
                }
            }
        }
        for term in &h.potentials {
            if let PotentialShape::Opaque { name } = &term.shape {
                return Err(Error::NonQuadratic(format!("potential `{name}` has no numerical form")));
            }
        }
        let fourier = Fourier::new(spec, hbar);
        let a_pp = a.select(&odd(nd), &odd(nd));
        let a_xx = a.select(&even(nd), &even(nd));
        let half = F::from_f64(0.5).unwrap();

        let kinetic_static = (0..spec.len())
            .into_par_iter()
            .map(|idx| {
                let ij = spec.unravel(idx);
                let p: Vec<F> = (0..nd).map(|k| fourier.momenta(k)[ij[k]]).collect();
                half * quad(&a_pp, &p)
            })
            .collect();

        let (fixed, moving): (Vec<_>, Vec<_>) = h.potentials.iter().cloned().partition(|p| p.offset.is_constant());
        let potential_static = (0..spec.len())
            .into_par_iter()
            .map(|idx| {
                let x = coords(spec, idx);
                fixed.iter().fold(half * quad(&a_xx, &x), |acc, term| {
                    acc + term_value(term, &x, F::zero())
                })
            })
            .collect();

        Ok(Self {
            spec: spec.clone(),
            hbar,
            fourier,
            kinetic_static,
            potential_static,
            b_mom: (0..nd).map(|k| h.b[2 * k + 1].clone()).collect(),
            b_pos: (0..nd).map(|k| h.b[2 * k].clone()).collect(),
            c: h.c.clone(),
            moving,
            monitor: true,
        })
    }

    /// Disables the boundary monitor (used by convergence studies).
    pub fn without_monitor(mut self) -> Self {
        self.monitor = false;
        self
    }

    /// Multiplies by `e^{−i f(x) τ/ħ}` where `f = V(·, t)`.
    fn potential_kick(&self, psi: &mut [Complex<F>], t: F, tau: F) {
        let nd = self.spec.ndim();
        let s = -tau / self.hbar;
        let b: Vec<F> = self.b_pos.iter().map(|p| p.eval_real(t)).collect();
        let c = self.c.eval_real(t);
        // separable linear phases per axis
        let axis_phase: Vec<Vec<Complex<F>>> = self
            .spec
            .axes()
            .iter()
            .zip(&b)
            .map(|(ax, &bk)| ax.points().into_iter().map(|x| Complex::from_polar(F::one(), s * bk * x)).collect())
            .collect();
        let global = Complex::from_polar(F::one(), s * c);
        let spec = &self.spec;
        psi.par_iter_mut().enumerate().for_each(|(idx, z)| {
            let ij = spec.unravel(idx);
            let mut v = self.potential_static[idx];
            if !self.moving.is_empty() {
                let x = coords(spec, idx);
                v = self.moving.iter().fold(v, |acc, term| acc + term_value(term, &x, t));
            }
            let mut f = Complex::from_polar(F::one(), s * v) * global;
            for (k, ph) in axis_phase.iter().enumerate().take(nd) {
                f = f * ph[ij[k]];
            }
            *z = *z * f;
        });
    }

    fn kinetic_kick(&self, phi: &mut [Complex<F>], t: F, tau: F) {
        let nd = self.spec.ndim();
        let s = -tau / self.hbar;
        let b: Vec<F> = self.b_mom.iter().map(|p| p.eval_real(t)).collect();
        let axis_phase: Vec<Vec<Complex<F>>> = (0..nd)
            .map(|k| {
                self.fourier
                    .momenta(k)
                    .iter()
                    .map(|&p| Complex::from_polar(F::one(), s * b[k] * p))
                    .collect()
            })
            .collect();
        let spec = &self.spec;
        phi.par_iter_mut().enumerate().for_each(|(idx, z)| {
            let ij = spec.unravel(idx);
            let mut f = Complex::from_polar(F::one(), s * self.kinetic_static[idx]);
            for (k, ph) in axis_phase.iter().enumerate() {
                f = f * ph[ij[k]];
            }
            *z = *z * f;
        });
    }

    /// One Strang step `e^{−iVτ/2ħ} e^{−iTτ/ħ} e^{−iVτ/2ħ}` with coefficients at `t + τ/2`.
    pub fn step(&self, state: &mut GridState<F>, tau: F) {
        let half = F::from_f64(0.5).unwrap();
        let t_mid = state.time + half * tau;
        self.potential_kick(&mut state.psi, t_mid, half * tau);
        self.fourier.forward(&mut state.psi);
        self.kinetic_kick(&mut state.psi, t_mid, tau);
        self.fourier.inverse(&mut state.psi);
        self.potential_kick(&mut state.psi, t_mid, half * tau);
        state.time = state.time + tau;
    }

    /// Evolves to `t_final` with steps no longer than `dt`, calling `observe`
    /// on the initial state and after every step.
    pub fn evolve_observed(
        &self,
        state: &GridState<F>,
        t_final: F,
        dt: F,
        mut observe: impl FnMut(&GridState<F>),
    ) -> Result<GridState<F>> {
        if state.spec != self.spec {
            return Err(Error::GridMismatch("state and propagator use different grids".into()));
        }
        if !(dt > F::zero()) {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
        }
        let span = t_final - state.time;
        if span < F::zero() {
            return Err(Error::InvalidParameter("t_final precedes the state time".into()));
        }
        let steps = step_count(span, dt);
        let tau = if steps == 0 { F::zero() } else { span / F::from_usize(steps).unwrap() };
        let mut s = state.clone();
        observe(&s);
        for k in 0..steps {
            self.step(&mut s, tau);
            observe(&s);
            if self.monitor && ((k + 1) % MONITOR_EVERY == 0 || k + 1 == steps) {
                s.check_boundaries()?;
            }
        }
        s.time = t_final;
        Ok(s)
    }

    pub fn evolve(&self, state: &GridState<F>, t_final: F, dt: F) -> Result<GridState<F>> {
        self.evolve_observed(state, t_final, dt, |_| {})
    }
}

/// Number of uniform steps covering `span` with step at most `dt`.
pub(crate) fn step_count<F: Real>(span: F, dt: F) -> usize {
    let q = span / dt;
    let r = q.round();
    if (q - r).abs() <= F::from_f64(1e-9).unwrap() * r.max(F::one()) {
        r.to_usize().unwrap()
    } else {
        q.ceil().to_usize().unwrap()
    }
}

/// Convenience wrapper: builds a propagator and evolves once.
pub fn propagate<T: Scalar, F: Real>(
    state: &GridState<F>,
    h: &QuadraticHamiltonian<T>,
    t_final: F,
    dt: F,
    hbar: F,
) -> Result<GridState<F>> {
    SplitStepPropagator::new(&state.spec, h, hbar)?.evolve(state, t_final, dt)
}

fn even(nd: usize) -> Vec<usize> {
    (0..nd).map(|k| 2 * k).collect()
}

fn odd(nd: usize) -> Vec<usize> {
    (0..nd).map(|k| 2 * k + 1).collect()
}

fn quad<F: Real>(a: &Mat<F>, v: &[F]) -> F {
    let av = a.mul_vec(v);
    av.iter().zip(v).fold(F::zero(), |acc, (x, y)| acc + *x * *y)
}

fn coords<F: Real>(spec: &GridSpec<F>, idx: usize) -> Vec<F> {
    (0..spec.ndim()).map(|a| spec.coordinate(idx, a)).collect()
}

/// `V(ℓᵀr + o(t))` with `r` restricted to the position axes.
fn term_value<F: Real>(term: &PotentialTerm<F>, x: &[F], t: F) -> F {
    let y = x
        .iter()
        .enumerate()
        .fold(term.offset.eval_real(t), |acc, (k, xk)| acc + term.direction[2 * k] * *xk);
    term.shape.value(y).unwrap_or_else(F::zero)
}
