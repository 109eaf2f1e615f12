//! Wavefunctions of one or two particles on periodic uniform grids.

mod checkpoint;
mod fft;
mod propagate;

use std::fmt;
use std::sync::Arc;

use log::warn;
use num_complex::Complex;
use rayon::prelude::*;

pub use checkpoint::{read_checkpoint, write_checkpoint};
pub use fft::Fourier;
pub use propagate::{propagate, SplitStepPropagator};
pub(crate) use propagate::step_count;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::model::Units;
use crate::phase::WeylElement;
use crate::scalar::{Real, Scalar};

/// Packets must keep this many standard deviations from either boundary.
pub const BOUNDARY_SIGMAS: f64 = 8.0;

/// Relative tolerance deciding whether a shift lands on a whole number of cells.
const CELL_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct GridAxis<F> {
    pub x_min: F,
    pub x_max: F,
    pub n: usize,
}

impl<F: Real> GridAxis<F> {
    pub fn new(x_min: F, x_max: F, n: usize) -> Result<Self> {
        if !n.is_power_of_two() || n < 4 {
            return Err(Error::InvalidParameter(format!("grid size {n} is not a power of two ≥ 4")));
        }
        if x_max <= x_min {
            return Err(Error::InvalidParameter("empty grid extent".into()));
        }
        Ok(Self { x_min, x_max, n })
    }

    /// Symmetric axis `[-L/2, L/2)`.
    pub fn centered(length: F, n: usize) -> Result<Self> {
        let half = length / F::from_f64(2.0).unwrap();
        Self::new(-half, half, n)
    }

    pub fn spacing(&self) -> F {
        (self.x_max - self.x_min) / F::from_usize(self.n).unwrap()
    }

    pub fn length(&self) -> F {
        self.x_max - self.x_min
    }

    pub fn point(&self, j: usize) -> F {
        self.x_min + F::from_usize(j).unwrap() * self.spacing()
    }

    pub fn points(&self) -> Vec<F> {
        (0..self.n).map(|j| self.point(j)).collect()
    }

    /// Momentum values `2πħk/L` in FFT order.
    pub fn momenta(&self, hbar: F) -> Vec<F> {
        let n = self.n as i64;
        let scale = F::TAU() * hbar / self.length();
        (0..n)
            .map(|k| {
                let signed = if k < n / 2 { k } else { k - n };
                F::from_i64(signed).unwrap() * scale
            })
            .collect()
    }

    /// Whole number of cells in `shift`, if it is one.
    pub fn cells(&self, shift: F) -> Option<i64> {
        let s = shift / self.spacing();
        let r = s.round();
        let tol = F::from_f64(CELL_TOLERANCE).unwrap() * r.abs().max(F::one());
        ((s - r).abs() <= tol).then(|| r.to_i64().unwrap())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec<F> {
    axes: Vec<GridAxis<F>>,
}

impl<F: Real> GridSpec<F> {
    pub fn new(axes: Vec<GridAxis<F>>) -> Result<Self> {
        if axes.is_empty() || axes.len() > 2 {
            return Err(Error::InvalidParameter(format!(
                "grids have one or two axes, got {}",
                axes.len()
            )));
        }
        Ok(Self { axes })
    }

    pub fn one_dim(axis: GridAxis<F>) -> Self {
        Self { axes: vec![axis] }
    }

    pub fn two_dim(a: GridAxis<F>, b: GridAxis<F>) -> Self {
        Self { axes: vec![a, b] }
    }

    pub fn axes(&self) -> &[GridAxis<F>] {
        &self.axes
    }

    pub fn ndim(&self) -> usize {
        self.axes.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.n).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.n).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Volume element `Δx₁ ⋯ Δx_N`.
    pub fn cell_volume(&self) -> F {
        self.axes.iter().fold(F::one(), |acc, a| acc * a.spacing())
    }

    /// Per-axis index of a flat (row-major) index.
    pub fn unravel(&self, idx: usize) -> [usize; 2] {
        match self.axes.len() {
            1 => [idx, 0],
            _ => [idx / self.axes[1].n, idx % self.axes[1].n],
        }
    }

    /// Coordinate of a flat index along an axis.
    pub fn coordinate(&self, idx: usize, axis: usize) -> F {
        self.axes[axis].point(self.unravel(idx)[axis])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridState<F> {
    pub spec: GridSpec<F>,
    pub psi: Vec<Complex<F>>,
    pub time: F,
}

/// Observable evaluated on a grid state.
#[derive(Clone)]
pub enum Observable {
    Position(usize),
    Momentum(usize),
    PositionSquared(usize),
    MomentumSquared(usize),
    /// Multiplication by a real function of the grid coordinates.
    Diagonal(Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>),
}

impl fmt::Debug for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Position(a) => write!(f, "Position({a})"),
            Self::Momentum(a) => write!(f, "Momentum({a})"),
            Self::PositionSquared(a) => write!(f, "PositionSquared({a})"),
            Self::MomentumSquared(a) => write!(f, "MomentumSquared({a})"),
            Self::Diagonal(_) => write!(f, "Diagonal(..)"),
        }
    }
}

fn gaussian_profile<F: Real>(x: F, x0: F, p0: F, sigma: F, hbar: F) -> Complex<F> {
    let four = F::from_f64(4.0).unwrap();
    let d = x - x0;
    Complex::from_polar((-(d * d) / (four * sigma * sigma)).exp(), p0 * x / hbar)
}

fn check_fit<F: Real>(axis: &GridAxis<F>, x0: F, sigma: F) -> Result<()> {
    let margin = F::from_f64(BOUNDARY_SIGMAS).unwrap() * sigma;
    if !(sigma > F::zero()) || x0 - margin < axis.x_min || x0 + margin > axis.x_max {
        return Err(Error::PacketTooWide(format!(
            "centre {x0} ± {margin} outside [{}, {}]",
            axis.x_min, axis.x_max
        )));
    }
    Ok(())
}

/// Single-particle packet `∝ exp(−(x−x₀)²/4σ² + ip₀x/ħ)`, so `Var(x̂) = σ²`.
pub fn make_gaussian<F: Real>(spec: &GridSpec<F>, x0: F, p0: F, sigma: F, hbar: F) -> Result<GridState<F>> {
    if spec.ndim() != 1 {
        return Err(Error::Dimension {
            expected: 1,
            got: spec.ndim(),
        });
    }
    make_product_gaussian(spec, &[(x0, p0, sigma)], hbar)
}

/// Product of independent packets, one `(x₀, p₀, σ)` per axis.
pub fn make_product_gaussian<F: Real>(spec: &GridSpec<F>, packets: &[(F, F, F)], hbar: F) -> Result<GridState<F>> {
    if packets.len() != spec.ndim() {
        return Err(Error::Dimension {
            expected: spec.ndim(),
            got: packets.len(),
        });
    }
    for (axis, &(x0, _, sigma)) in spec.axes().iter().zip(packets) {
        check_fit(axis, x0, sigma)?;
    }
    let factors: Vec<Vec<Complex<F>>> = spec
        .axes()
        .iter()
        .zip(packets)
        .map(|(axis, &(x0, p0, s))| axis.points().into_iter().map(|x| gaussian_profile(x, x0, p0, s, hbar)).collect())
        .collect();
    let psi: Vec<Complex<F>> = (0..spec.len())
        .map(|idx| {
            let ij = spec.unravel(idx);
            factors.iter().enumerate().fold(Complex::new(F::one(), F::zero()), |acc, (a, f)| acc * f[ij[a]])
        })
        .collect();
    let mut state = GridState {
        spec: spec.clone(),
        psi,
        time: F::zero(),
    };
    state.normalize();
    Ok(state)
}

impl<F: Real> GridState<F> {
    pub fn norm(&self) -> F {
        self.psi.par_iter().map(|z| z.norm_sqr()).sum::<F>() * self.spec.cell_volume()
    }

    pub fn normalize(&mut self) {
        let s = F::one() / self.norm().sqrt();
        self.psi.par_iter_mut().for_each(|z| *z = *z * s);
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &Self) -> Complex<F> {
        let s: Complex<F> = self
            .psi
            .par_iter()
            .zip(&other.psi)
            .map(|(a, b)| a.conj() * b)
            .reduce(|| Complex::new(F::zero(), F::zero()), |a, b| a + b);
        s * self.spec.cell_volume()
    }

    /// `|⟨self|other⟩|`.
    pub fn fidelity(&self, other: &Self) -> F {
        self.overlap(other).norm()
    }

    fn momentum_weights(&self, fourier: &Fourier<F>) -> Vec<F> {
        let mut phi = self.psi.clone();
        fourier.forward(&mut phi);
        let w: Vec<F> = phi.par_iter().map(|z| z.norm_sqr()).collect();
        let total: F = w.par_iter().copied().sum();
        w.into_par_iter().map(|x| x / total).collect()
    }

    fn momentum_of(&self, fourier: &Fourier<F>, idx: usize, axis: usize) -> F {
        fourier.momenta(axis)[self.spec.unravel(idx)[axis]]
    }

    pub fn expectation(&self, obs: &Observable) -> Result<F> {
        self.expectation_with_hbar(obs, F::one())
    }

    /// `⟨obs⟩`, normalised by the state norm.
    pub fn expectation_with_hbar(&self, obs: &Observable, hbar: F) -> Result<F> {
        let check = |a: usize| {
            if a < self.spec.ndim() {
                Ok(a)
            } else {
                Err(Error::Dimension {
                    expected: self.spec.ndim(),
                    got: a + 1,
                })
            }
        };
        let dv = self.spec.cell_volume();
        let norm = self.norm();
        let position_moment = |a: usize, power: i32| -> F {
            self.psi
                .par_iter()
                .enumerate()
                .map(|(idx, z)| z.norm_sqr() * self.spec.coordinate(idx, a).powi(power))
                .sum::<F>()
                * dv
                / norm
        };
        Ok(match obs {
            Observable::Position(a) => position_moment(check(*a)?, 1),
            Observable::PositionSquared(a) => position_moment(check(*a)?, 2),
            Observable::Momentum(a) | Observable::MomentumSquared(a) => {
                let a = check(*a)?;
                let power = if matches!(obs, Observable::Momentum(_)) { 1 } else { 2 };
                let fourier = Fourier::new(&self.spec, hbar);
                let w = self.momentum_weights(&fourier);
                w.par_iter()
                    .enumerate()
                    .map(|(idx, &wi)| wi * self.momentum_of(&fourier, idx, a).powi(power))
                    .sum()
            }
            Observable::Diagonal(f) => {
                let total: f64 = self
                    .psi
                    .par_iter()
                    .enumerate()
                    .map(|(idx, z)| {
                        let coords: Vec<f64> = (0..self.spec.ndim())
                            .map(|a| self.spec.coordinate(idx, a).to_f64().unwrap())
                            .collect();
                        z.norm_sqr().to_f64().unwrap() * f(&coords)
                    })
                    .sum();
                F::from_f64(total).unwrap() * dv / norm
            }
        })
    }

    /// Mean vector and symmetrised covariance over `(x₁, p₁, ..., x_N, p_N)`.
    pub fn moments(&self, hbar: F) -> (Vec<F>, Mat<F>) {
        let nd = self.spec.ndim();
        let dim = 2 * nd;
        let dv = self.spec.cell_volume();
        let norm = self.norm();
        let fourier = Fourier::new(&self.spec, hbar);
        let w = self.momentum_weights(&fourier);
        let x = |idx: usize, a: usize| self.spec.coordinate(idx, a);
        let p = |idx: usize, a: usize| self.momentum_of(&fourier, idx, a);

        let mut raw = Mat::zeros(dim, dim);
        let mut mean = vec![F::zero(); dim];
        for a in 0..nd {
            mean[2 * a] = self.psi.par_iter().enumerate().map(|(i, z)| z.norm_sqr() * x(i, a)).sum::<F>() * dv / norm;
            mean[2 * a + 1] = w.par_iter().enumerate().map(|(i, &wi)| wi * p(i, a)).sum();
            for b in 0..nd {
                raw[(2 * a, 2 * b)] = self
                    .psi
                    .par_iter()
                    .enumerate()
                    .map(|(i, z)| z.norm_sqr() * x(i, a) * x(i, b))
                    .sum::<F>()
                    * dv
                    / norm;
                raw[(2 * a + 1, 2 * b + 1)] = w.par_iter().enumerate().map(|(i, &wi)| wi * p(i, a) * p(i, b)).sum();
            }
        }
        // Re⟨x_a p_b⟩ via p_b ψ computed spectrally
        for b in 0..nd {
            let mut pb = self.psi.clone();
            fourier.forward(&mut pb);
            pb.par_iter_mut().enumerate().for_each(|(i, z)| *z = *z * p(i, b));
            fourier.inverse(&mut pb);
            for a in 0..nd {
                let v: F = self
                    .psi
                    .par_iter()
                    .zip(&pb)
                    .enumerate()
                    .map(|(i, (z, pz))| (z.conj() * *pz).re * x(i, a))
                    .sum::<F>()
                    * dv
                    / norm;
                raw[(2 * a, 2 * b + 1)] = v;
                raw[(2 * b + 1, 2 * a)] = v;
            }
        }
        let cov = Mat::from_fn(dim, dim, |i, j| raw[(i, j)] - mean[i] * mean[j]);
        (mean, cov)
    }

    /// Per-axis position mean and standard deviation.
    pub fn position_spread(&self, axis: usize) -> (F, F) {
        let dv = self.spec.cell_volume();
        let norm = self.norm();
        let (m1, m2) = self
            .psi
            .par_iter()
            .enumerate()
            .map(|(i, z)| {
                let x = self.spec.coordinate(i, axis);
                let w = z.norm_sqr();
                (w * x, w * x * x)
            })
            .reduce(|| (F::zero(), F::zero()), |a, b| (a.0 + b.0, a.1 + b.1));
        let mean = m1 * dv / norm;
        let var = m2 * dv / norm - mean * mean;
        (mean, var.max(F::zero()).sqrt())
    }

    /// Fails when a marginal's mean ± 8σ leaves the grid.
    pub fn check_boundaries(&self) -> Result<()> {
        let k = F::from_f64(BOUNDARY_SIGMAS).unwrap();
        for (a, axis) in self.spec.axes().iter().enumerate() {
            let (mean, sd) = self.position_spread(a);
            if mean - k * sd < axis.x_min || mean + k * sd > axis.x_max {
                return Err(Error::BoundaryBreach {
                    axis: a,
                    time: self.time.to_f64().unwrap(),
                });
            }
        }
        Ok(())
    }
}

/// Active application `ψ ↦ 𝒢†ψ` of a displacement element on one axis:
/// `(𝒢†ψ)(x) = e^{−iφ} e^{−iKx/ħ} ψ(x + X)`.
///
/// Whole-cell shifts are exact index rotations; other shifts fall back to
/// spectral interpolation with a warning.
pub fn apply_weyl_on<T: Scalar, F: Real>(
    state: &GridState<F>,
    element: &WeylElement<T>,
    axis: usize,
    t: &T,
    units: &Units<T>,
) -> Result<GridState<F>> {
    if axis >= state.spec.ndim() {
        return Err(Error::Dimension {
            expected: state.spec.ndim(),
            got: axis + 1,
        });
    }
    let (shift, kick, phase) = element.at(t);
    let mut out = state.clone();
    let spec = &state.spec;
    let ax = &spec.axes()[axis];
    let hbar: F = units.hbar().to_real();

    if !shift.is_zero() {
        let shift_f: F = shift.to_real();
        match ax.cells(shift_f) {
            Some(cells) => roll_axis(&mut out, axis, cells),
            None => {
                warn!("shift {shift} is not a whole number of cells; interpolating spectrally");
                let fourier = Fourier::new(spec, hbar);
                fourier.forward(&mut out.psi);
                out.psi.par_iter_mut().enumerate().for_each(|(i, z)| {
                    let p = fourier.momenta(axis)[spec.unravel(i)[axis]];
                    *z = *z * Complex::from_polar(F::one(), p * shift_f / hbar);
                });
                fourier.inverse(&mut out.psi);
            }
        }
    }
    if !kick.is_zero() || !phase.is_zero() {
        let kick: F = kick.to_real();
        let phase: F = phase.to_real();
        out.psi.par_iter_mut().enumerate().for_each(|(i, z)| {
            let x = spec.coordinate(i, axis);
            *z = *z * Complex::from_polar(F::one(), -phase - kick * x / hbar);
        });
    }
    Ok(out)
}

/// [`apply_weyl_on`] for single-particle grids.
pub fn apply_weyl<T: Scalar, F: Real>(
    state: &GridState<F>,
    element: &WeylElement<T>,
    t: &T,
    units: &Units<T>,
) -> Result<GridState<F>> {
    apply_weyl_on(state, element, 0, t, units)
}

/// Active application of the product `U_n ⋯ U_1` of `[U_1, ..., U_n]`:
/// `ψ ↦ U_1† ⋯ U_n† ψ`.
pub fn apply_weyl_product<T: Scalar, F: Real>(
    state: &GridState<F>,
    elements: &[WeylElement<T>],
    t: &T,
    units: &Units<T>,
) -> Result<GridState<F>> {
    elements
        .iter()
        .rev()
        .try_fold(state.clone(), |s, u| apply_weyl(&s, u, t, units))
}

/// `ψ'(x_j) = ψ(x_{j+cells})` along one axis, periodic.
fn roll_axis<F: Real>(state: &mut GridState<F>, axis: usize, cells: i64) {
    let shape = state.spec.shape();
    let n = shape[axis] as i64;
    let s = cells.rem_euclid(n) as usize;
    if s == 0 {
        return;
    }
    match (shape.len(), axis) {
        (1, _) => state.psi.rotate_left(s),
        (_, 1) => state.psi.par_chunks_mut(shape[1]).for_each(|row| row.rotate_left(s)),
        _ => state.psi.rotate_left(s * shape[1]),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftDirection {
    /// `ψ(X, x) ↦ ψ(X, x + X)`, the active frame change `e^{iX̂p̂/ħ}`.
    Forward,
    /// `ψ(X, x) ↦ ψ(X, x − X)`.
    Inverse,
}

/// Row-wise exact permutation implementing the frame-conditioned translation
/// on a two-particle grid (axis 0: frame, axis 1: particle).
pub fn apply_conditional_shift<F: Real>(state: &GridState<F>, direction: ShiftDirection) -> Result<GridState<F>> {
    let axes = state.spec.axes();
    if axes.len() != 2 {
        return Err(Error::GridMismatch("conditional shift needs a two-axis grid".into()));
    }
    let (frame, particle) = (&axes[0], &axes[1]);
    let dx = particle.spacing();
    let rel = ((frame.spacing() - dx) / dx).abs();
    if rel > F::from_f64(1e-12).unwrap() {
        return Err(Error::GridMismatch(format!(
            "frame spacing {} differs from particle spacing {dx}",
            frame.spacing()
        )));
    }
    let Some(origin) = particle.cells(frame.x_min) else {
        return Err(Error::GridMismatch(format!(
            "frame grid origin {} is not a whole number of cells",
            frame.x_min
        )));
    };
    let n1 = particle.n as i64;
    let mut out = state.clone();
    out.psi.par_chunks_mut(particle.n).enumerate().for_each(|(i, row)| {
        let cells = origin + i as i64;
        let cells = match direction {
            ShiftDirection::Forward => cells,
            ShiftDirection::Inverse => -cells,
        };
        row.rotate_left(cells.rem_euclid(n1) as usize);
    });
    Ok(out)
}

pub fn expectation_series<F: Real>(states: &[GridState<F>], obs: &Observable, hbar: F) -> Result<Vec<F>> {
    states.iter().map(|s| s.expectation_with_hbar(obs, hbar)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdAcceleration<F> {
    pub value: F,
    pub error_estimate: F,
}

/// Second derivative at the middle sample of a uniformly spaced series:
/// central differences with steps `h` and `2h`, combined by Richardson.
pub fn fd_acceleration<F: Real>(series: &[F], dt: F) -> Result<FdAcceleration<F>> {
    if series.len() < 5 {
        return Err(Error::InsufficientSamples {
            need: 5,
            got: series.len(),
        });
    }
    let c = series.len() / 2;
    let two = F::from_f64(2.0).unwrap();
    let four = F::from_f64(4.0).unwrap();
    let three = F::from_f64(3.0).unwrap();
    let a_h = (series[c + 1] - two * series[c] + series[c - 1]) / (dt * dt);
    let a_2h = (series[c + 2] - two * series[c] + series[c - 2]) / (four * dt * dt);
    Ok(FdAcceleration {
        value: (four * a_h - a_2h) / three,
        error_estimate: (a_h - a_2h).abs() / three,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::scalar::ratio;
    use crate::Rational;

    fn spec1(n: usize) -> GridSpec<f64> {
        GridSpec::one_dim(GridAxis::new(-32.0, 32.0, n).unwrap())
    }

    #[test]
    fn gaussian_moments() {
        let s = make_gaussian(&spec1(4096), 0.0, 0.0, 1.0, 1.0).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-12);
        assert!(s.expectation(&Observable::Position(0)).unwrap().abs() < 1e-10);
        assert!(s.expectation(&Observable::Momentum(0)).unwrap().abs() < 1e-10);
        let s = make_gaussian(&spec1(4096), 1.5, 0.5, 1.25, 1.0).unwrap();
        let x = s.expectation(&Observable::Position(0)).unwrap();
        let x2 = s.expectation(&Observable::PositionSquared(0)).unwrap();
        assert!((x2 - x * x - 1.5625).abs() < 1e-8);
        let (mean, cov) = s.moments(1.0);
        assert!((mean[1] - 0.5).abs() < 1e-10);
        // minimum uncertainty: Var(p) = ħ²/4σ²
        assert!((cov[(1, 1)] - 0.16).abs() < 1e-10);
        assert!(cov[(0, 1)].abs() < 1e-10);
    }

    #[test]
    fn packet_must_fit() {
        assert!(matches!(
            make_gaussian(&spec1(1024), 28.0, 0.0, 1.0, 1.0),
            Err(Error::PacketTooWide(_))
        ));
    }

    #[test]
    fn fd_acceleration_of_quadratic() {
        let dt = 0.1;
        let series: Vec<f64> = (0..7).map(|k| 3.0 - 0.5 * (k as f64 * dt).powi(2)).collect();
        let a = fd_acceleration(&series, dt).unwrap();
        assert!((a.value + 1.0).abs() < 1e-10);
        assert!(matches!(
            fd_acceleration(&series[..4], dt),
            Err(Error::InsufficientSamples { need: 5, got: 4 })
        ));
    }

    #[test]
    fn identity_element_is_bit_exact() {
        let s = make_gaussian(&spec1(1024), 0.3, 0.7, 1.0, 1.0).unwrap();
        let u = Units::<Rational>::default();
        let out = apply_weyl(&s, &WeylElement::identity(), &ratio(1, 1), &u).unwrap();
        assert_eq!(out.psi, s.psi);
    }

    #[test]
    fn whole_cell_shift_moves_mean_exactly() {
        let spec = spec1(4096);
        let dx = spec.axes()[0].spacing();
        let s = make_gaussian(&spec, 0.0, 0.0, 1.0, 1.0).unwrap();
        let u = Units::<Rational>::default();
        // 16 cells of 1/64
        let shift = WeylElement::translation(Polynomial::constant(ratio(16, 64)));
        let out = apply_weyl(&s, &shift, &ratio(0, 1), &u).unwrap();
        let before = s.expectation(&Observable::Position(0)).unwrap();
        let after = out.expectation(&Observable::Position(0)).unwrap();
        assert!((before - after - 16.0 * dx).abs() < 1e-12);
        assert!((out.norm() - s.norm()).abs() < 1e-15);
    }

    #[test]
    fn kick_moves_momentum() {
        let s = make_gaussian(&spec1(4096), 0.0, 0.0, 1.0, 1.0).unwrap();
        let u = Units::<Rational>::default();
        let kick = WeylElement::kick_only(Polynomial::constant(ratio(3, 2)));
        let out = apply_weyl(&s, &kick, &ratio(0, 1), &u).unwrap();
        let p = out.expectation(&Observable::Momentum(0)).unwrap();
        assert!((p + 1.5).abs() < 1e-8, "{p}");
    }

    #[test]
    fn conditional_shift_round_trip_and_delta_row() {
        let ax = GridAxis::new(-8.0, 8.0, 64).unwrap();
        let spec = GridSpec::two_dim(ax.clone(), ax.clone());
        let mut s = GridState {
            spec: spec.clone(),
            psi: vec![Complex::new(0.0, 0.0); 64 * 64],
            time: 0.0,
        };
        // frame at X = 4Δx (row 36), particle at x = 0 (column 32)
        s.psi[36 * 64 + 32] = Complex::new(1.0, 0.0);
        let fwd = apply_conditional_shift(&s, ShiftDirection::Forward).unwrap();
        // ψ'(X, x) = ψ(X, x + X): the particle now sits 4 cells lower
        assert_eq!(fwd.psi[36 * 64 + 28], Complex::new(1.0, 0.0));
        let back = apply_conditional_shift(&fwd, ShiftDirection::Inverse).unwrap();
        assert_eq!(back.psi, s.psi);
    }

    #[test]
    fn conditional_shift_rejects_mismatched_spacing() {
        let spec = GridSpec::two_dim(GridAxis::new(-8.0, 8.0, 64).unwrap(), GridAxis::new(-4.0, 4.0, 64).unwrap());
        let s = make_product_gaussian(&spec, &[(0.0, 0.0, 0.5), (0.0, 0.0, 0.25)], 1.0).unwrap();
        assert!(matches!(
            apply_conditional_shift(&s, ShiftDirection::Forward),
            Err(Error::GridMismatch(_))
        ));
    }
}
