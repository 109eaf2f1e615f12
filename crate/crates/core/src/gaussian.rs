//! Gaussian states as mean vector and covariance matrix, evolved exactly under
//! quadratic Hamiltonians.
//!
//! With `K = JA` the moments obey `μ̇ = Kμ + Jb(t)` and `Σ̇ = KΣ + ΣKᵀ`.

use std::io::Write;

use crate::error::{Error, Result};
use crate::frames::{
    builtin_map, conjugate_hamiltonian, heisenberg_acceleration, AffineFrameMap, BuiltinMap, PotentialShape,
    QuadraticHamiltonian,
};
use crate::grid::{fd_acceleration, FdAcceleration};
use crate::linalg::Mat;
use crate::model::{symplectic_form, ParticleSpec};
use crate::poly::Polynomial;
use crate::scalar::{Real, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct GaussianState<F> {
    pub mean: Vec<F>,
    pub cov: Mat<F>,
    pub time: F,
}

impl<F: Real> GaussianState<F> {
    pub fn new(mean: Vec<F>, cov: Mat<F>, time: F) -> Result<Self> {
        if cov.rows() != mean.len() || cov.cols() != mean.len() || mean.len() % 2 != 0 {
            return Err(Error::Dimension {
                expected: mean.len(),
                got: cov.rows(),
            });
        }
        let tol = F::from_f64(1e-12).unwrap() * cov.max_abs().max(F::one());
        for i in 0..cov.rows() {
            for j in 0..i {
                if (cov[(i, j)] - cov[(j, i)]).abs() > tol {
                    return Err(Error::InvalidParameter("covariance is not symmetric".into()));
                }
            }
        }
        Ok(Self { mean, cov, time })
    }

    /// Product of minimum-uncertainty packets, one `(x₀, p₀, σ)` per particle,
    /// with `Var(x) = σ²` and `Var(p) = ħ²/4σ²`.
    pub fn product(packets: &[(F, F, F)], hbar: F) -> Self {
        let n = 2 * packets.len();
        let four = F::from_f64(4.0).unwrap();
        let mut mean = vec![F::zero(); n];
        let mut cov = Mat::zeros(n, n);
        for (k, &(x0, p0, s)) in packets.iter().enumerate() {
            mean[2 * k] = x0;
            mean[2 * k + 1] = p0;
            cov[(2 * k, 2 * k)] = s * s;
            cov[(2 * k + 1, 2 * k + 1)] = hbar * hbar / (four * s * s);
        }
        Self {
            mean,
            cov,
            time: F::zero(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.mean.len()
    }

    /// True when `Σ + iħJ/2 ⪰ −tol`, tested on the real form
    /// `[[Σ, −ħJ/2], [ħJ/2, Σ]]` by Cholesky with a `tol` shift.
    pub fn satisfies_uncertainty(&self, hbar: F, tol: F) -> bool {
        let n = self.dimension();
        let half = F::from_f64(0.5).unwrap();
        let j: Mat<F> = jn(n / 2);
        let big = Mat::from_fn(2 * n, 2 * n, |r, c| {
            let (bi, bj) = (r / n, c / n);
            let (i, k) = (r % n, c % n);
            let v = match (bi, bj) {
                (0, 0) | (1, 1) => self.cov[(i, k)],
                (0, 1) => -half * hbar * j[(i, k)],
                _ => half * hbar * j[(i, k)],
            };
            if r == c {
                v + tol
            } else {
                v
            }
        });
        cholesky_ok(&big)
    }

    pub fn is_positive_definite(&self) -> bool {
        cholesky_ok(&self.cov)
    }
}

fn jn<F: Real>(particles: usize) -> Mat<F> {
    let cs = crate::model::CoordinateSystem::new((0..particles).map(|k| k.to_string()));
    symplectic_form(&cs)
}

fn cholesky_ok<F: Real>(m: &Mat<F>) -> bool {
    let n = m.rows();
    let mut l = Mat::<F>::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)];
        for k in 0..j {
            d = d - l[(j, k)] * l[(j, k)];
        }
        if !(d > F::zero()) {
            return false;
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s = s - l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    true
}

/// Quadratic data `(K = JA, Jb(t))` with all polynomial potentials absorbed.
struct Flow<F: Real> {
    k: Mat<F>,
    /// `J b(t)` as polynomials.
    jb: Vec<Polynomial<F>>,
}

impl<F: Real> Flow<F> {
    fn new<T: Scalar>(h: &QuadraticHamiltonian<T>) -> Result<Self> {
        let (a, b, _, rest) = h.absorb_polynomial_potentials();
        if let Some(term) = rest.first() {
            return Err(Error::NonQuadratic(format!(
                "{:?} potential is not quadratic",
                term.shape
            )));
        }
        let j = symplectic_form::<T>(&h.cs);
        let k = (&j * &a).to_real();
        let n = h.dimension();
        let jb = (0..n)
            .map(|i| {
                (0..n)
                    .fold(Polynomial::<T>::zero(), |acc, l| &acc + &b[l].scale(&j[(i, l)]))
                    .to_real()
            })
            .collect();
        Ok(Self { k, jb })
    }

    fn dim(&self) -> usize {
        self.k.rows()
    }

    fn drive(&self, t: F) -> Vec<F> {
        self.jb.iter().map(|p| p.eval_real(t)).collect()
    }

    fn degree(&self) -> usize {
        self.jb.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Exact propagation over `u`, via the exponential of the system augmented
    /// with `w_k = u^k/k!` so that the polynomial drive becomes linear.
    fn exact(&self, s: &GaussianState<F>, u: F) -> GaussianState<F> {
        let n = self.dim();
        let deg = self.degree();
        let m = n + deg + 1;
        // b(t₀ + u) = Σ_k b⁽ᵏ⁾(t₀) u^k/k!
        let mut derivs: Vec<Vec<Polynomial<F>>> = vec![self.jb.clone()];
        for k in 1..=deg {
            derivs.push(derivs[k - 1].iter().map(Polynomial::derivative).collect());
        }
        let mut big = Mat::zeros(m, m);
        for i in 0..n {
            for j in 0..n {
                big[(i, j)] = self.k[(i, j)];
            }
            for k in 0..=deg {
                big[(i, n + k)] = derivs[k][i].eval_real(s.time);
            }
        }
        for k in 1..=deg {
            big[(n + k, n + k - 1)] = F::one();
        }
        let e = big.scale(&u).expm();
        let mut init = s.mean.clone();
        init.push(F::one());
        init.extend(std::iter::repeat(F::zero()).take(deg));
        let mean = e.mul_vec(&init)[..n].to_vec();
        let phi = e.select(&(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
        let cov = &(&phi * &s.cov) * &phi.transpose();
        GaussianState {
            mean,
            cov: symmetrize(cov),
            time: s.time + u,
        }
    }

    fn derivative(&self, mean: &[F], cov: &Mat<F>, t: F) -> (Vec<F>, Mat<F>) {
        let drive = self.drive(t);
        let dm = self.k.mul_vec(mean).into_iter().zip(drive).map(|(a, b)| a + b).collect();
        let kc = &self.k * cov;
        let dc = &kc + &kc.transpose();
        (dm, dc)
    }

    fn rk4(&self, s: &GaussianState<F>, h: F) -> GaussianState<F> {
        let half = F::from_f64(0.5).unwrap();
        let sixth = F::one() / F::from_f64(6.0).unwrap();
        let two = F::from_f64(2.0).unwrap();
        let axpy = |m: &[F], d: &[F], c: F| -> Vec<F> { m.iter().zip(d).map(|(a, b)| *a + c * *b).collect() };
        let (k1m, k1c) = self.derivative(&s.mean, &s.cov, s.time);
        let (k2m, k2c) = self.derivative(&axpy(&s.mean, &k1m, half * h), &(&s.cov + &k1c.scale(&(half * h))), s.time + half * h);
        let (k3m, k3c) = self.derivative(&axpy(&s.mean, &k2m, half * h), &(&s.cov + &k2c.scale(&(half * h))), s.time + half * h);
        let (k4m, k4c) = self.derivative(&axpy(&s.mean, &k3m, h), &(&s.cov + &k3c.scale(&h)), s.time + h);
        let mean = (0..s.mean.len())
            .map(|i| s.mean[i] + sixth * h * (k1m[i] + two * k2m[i] + two * k3m[i] + k4m[i]))
            .collect();
        let dc = &(&(&k1c + &k2c.scale(&two)) + &k3c.scale(&two)) + &k4c;
        GaussianState {
            mean,
            cov: symmetrize(&s.cov + &dc.scale(&(sixth * h))),
            time: s.time + h,
        }
    }

    /// `μ̈ = K(Kμ + Jb) + Jḃ`.
    fn mean_acceleration(&self, s: &GaussianState<F>) -> Vec<F> {
        let v: Vec<F> = self
            .k
            .mul_vec(&s.mean)
            .into_iter()
            .zip(self.drive(s.time))
            .map(|(a, b)| a + b)
            .collect();
        self.k
            .mul_vec(&v)
            .into_iter()
            .zip(&self.jb)
            .map(|(a, p)| a + p.derivative().eval_real(s.time))
            .collect()
    }
}

fn symmetrize<F: Real>(m: Mat<F>) -> Mat<F> {
    let half = F::from_f64(0.5).unwrap();
    Mat::from_fn(m.rows(), m.cols(), |i, j| half * (m[(i, j)] + m[(j, i)]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Integrator {
    /// Matrix exponential of the augmented linear system; exact for polynomial drives.
    #[default]
    Exact,
    /// Classic fourth-order Runge–Kutta with the sampling step.
    Rk4,
}

/// Samples of a Gaussian evolution on a uniform time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianTrajectory<F> {
    pub states: Vec<GaussianState<F>>,
}

impl<F: Real> GaussianTrajectory<F> {
    pub fn last(&self) -> &GaussianState<F> {
        self.states.last().expect("trajectories are never empty")
    }

    pub fn times(&self) -> Vec<F> {
        self.states.iter().map(|s| s.time).collect()
    }

    pub fn mean_series(&self, axis: usize) -> Vec<F> {
        self.states.iter().map(|s| s.mean[axis]).collect()
    }

    /// Columns `t, mu_1..mu_2N, sigma_i_j` with `vech(Σ)` taken column-wise
    /// from the lower triangle.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let n = self.states.first().map_or(0, |s| s.dimension());
        let mut wtr = csv::Writer::from_writer(w);
        let mut header = vec!["t".to_string()];
        header.extend((1..=n).map(|i| format!("mu_{i}")));
        for j in 0..n {
            for i in j..n {
                header.push(format!("sigma_{}_{}", i + 1, j + 1));
            }
        }
        wtr.write_record(&header).map_err(csv_err)?;
        for s in &self.states {
            let mut row = vec![s.time.to_string()];
            row.extend(s.mean.iter().map(|x| x.to_string()));
            for j in 0..n {
                for i in j..n {
                    row.push(s.cov[(i, j)].to_string());
                }
            }
            wtr.write_record(&row).map_err(csv_err)?;
        }
        wtr.flush()?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Evolves to `t_final`, sampling every `dt` (the last step may be shorter
/// to land on `t_final`). Exact samples are computed from the initial state,
/// so no error accumulates.
pub fn evolve<T: Scalar, F: Real>(
    state: &GaussianState<F>,
    h: &QuadraticHamiltonian<T>,
    t_final: F,
    dt: F,
    integrator: Integrator,
) -> Result<GaussianTrajectory<F>> {
    if h.dimension() != state.dimension() {
        return Err(Error::Dimension {
            expected: h.dimension(),
            got: state.dimension(),
        });
    }
    if !(dt > F::zero()) || t_final < state.time {
        return Err(Error::InvalidParameter("need dt > 0 and t_final ≥ t₀".into()));
    }
    let flow = Flow::new(h)?;
    let steps = crate::grid::step_count(t_final - state.time, dt);
    let tau = if steps == 0 {
        F::zero()
    } else {
        (t_final - state.time) / F::from_usize(steps).unwrap()
    };
    let mut states = Vec::with_capacity(steps + 1);
    states.push(state.clone());
    for k in 1..=steps {
        let next = match integrator {
            Integrator::Exact => flow.exact(state, tau * F::from_usize(k).unwrap()),
            Integrator::Rk4 => flow.rk4(&states[k - 1], tau),
        };
        states.push(next);
    }
    Ok(GaussianTrajectory { states })
}

/// `μ' = Sμ + d(t)`, `Σ' = SΣSᵀ`.
pub fn map_state<T: Scalar, F: Real>(state: &GaussianState<F>, map: &AffineFrameMap<T>) -> Result<GaussianState<F>> {
    if map.dimension() != state.dimension() {
        return Err(Error::Dimension {
            expected: map.dimension(),
            got: state.dimension(),
        });
    }
    let s: Mat<F> = map.linear().to_real();
    let mean = s
        .mul_vec(&state.mean)
        .into_iter()
        .zip(map.offset())
        .map(|(x, d)| x + d.eval_real(state.time))
        .collect();
    let cov = symmetrize(&(&s * &state.cov) * &s.transpose());
    Ok(GaussianState {
        mean,
        cov,
        time: state.time,
    })
}

/// Exact `d²⟨r⟩/dt²` at the state's time.
pub fn mean_acceleration<T: Scalar, F: Real>(h: &QuadraticHamiltonian<T>, state: &GaussianState<F>) -> Result<Vec<F>> {
    Ok(Flow::new(h)?.mean_acceleration(state))
}

/// Acceleration of one axis obtained two ways.
#[derive(Clone, Debug, PartialEq)]
pub struct AccelerationPaths<F> {
    /// Closed-form Heisenberg acceleration evaluated on the mean, if available.
    pub symbolic: Option<F>,
    /// Richardson-refined second difference of sampled means.
    pub numeric: FdAcceleration<F>,
}

/// Acceleration of `axis` at `state.time + 2h`, symbolically when the
/// Hamiltonian allows it and from five exact samples spaced by `h`.
pub fn acceleration_paths<T: Scalar, F: Real>(
    h: &QuadraticHamiltonian<T>,
    state: &GaussianState<F>,
    axis: usize,
    step: F,
) -> Result<AccelerationPaths<F>> {
    let two = F::from_f64(2.0).unwrap();
    let four = F::from_f64(4.0).unwrap();
    let traj = evolve(state, h, state.time + four * step, step, Integrator::Exact)?;
    let numeric = fd_acceleration(&traj.mean_series(axis), step)?;
    let centre = &traj.states[2];
    let symbolic = heisenberg_acceleration(h, axis)
        .ok()
        .map(|form| form.eval_real(&centre.mean, state.time + two * step));
    Ok(AccelerationPaths { symbolic, numeric })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoubleBoostReport<F> {
    /// `⟨ẍ'⟩` relative to the first frame, sampled along the run.
    pub prime: Vec<F>,
    /// `⟨ẍ''⟩` relative to the second frame.
    pub double_prime: Vec<F>,
    /// `−Ẍ₁` and `−Ẍ₂` from the absolute-coordinate Heisenberg equations.
    pub expected_prime: F,
    pub expected_double_prime: F,
    /// Closed-form `ẍ''` from the doubly transformed Hamiltonian, when state independent.
    pub symbolic_double_prime: Option<F>,
}

impl<F: Real> DoubleBoostReport<F> {
    pub fn max_deviation(&self) -> F {
        let dev = |xs: &[F], e: F| xs.iter().fold(F::zero(), |m, x| m.max((*x - e).abs()));
        dev(&self.prime, self.expected_prime).max(dev(&self.double_prime, self.expected_double_prime))
    }
}

/// Evolves a set-1 Gaussian state under the first frame's Hamiltonian (without
/// the centre-of-mass kinetic term), boosts it to the second frame and
/// compares both relative accelerations with the absolute-frame prediction.
///
/// `masses` are `[M₁, M₂, m]`; the optional potential acts on `X₂ − X₁`.
pub fn double_boost_check<T: Scalar, F: Real>(
    masses: &[T; 3],
    potential: Option<PotentialShape<T>>,
    initial: &GaussianState<F>,
    t_final: F,
    dt: F,
) -> Result<DoubleBoostReport<F>> {
    if let Some(shape) = &potential {
        if !matches!(shape, PotentialShape::Linear { .. }) {
            return Err(Error::NonQuadratic("double boost check needs a linear or zero potential".into()));
        }
    }
    let labels = ["S1", "S2", "P"];
    let particles = labels
        .iter()
        .zip(masses)
        .map(|(l, m)| ParticleSpec::new(*l, m.clone()))
        .collect::<Result<Vec<_>>>()?;
    let absolute = QuadraticHamiltonian::three_body(&masses[0], &masses[1], &masses[2], potential);
    let set1 = builtin_map(BuiltinMap::Set1, &particles, None)?;
    let boost = builtin_map(BuiltinMap::DoubleBoost, &particles, None)?;
    let h1 = conjugate_hamiltonian(&absolute, &set1)?.without_quadratic(1, 1);
    let h2 = conjugate_hamiltonian(&h1, &boost)?;

    let expected = |axis: usize| -> Result<F> {
        let form = heisenberg_acceleration(&absolute, axis)?;
        if !form.is_state_independent() {
            return Err(Error::NonQuadratic("frame acceleration depends on the state".into()));
        }
        Ok(-form.constant.eval_real(F::zero()))
    };
    let symbolic_double_prime = heisenberg_acceleration(&h2, 4)
        .ok()
        .filter(|f| f.is_state_independent())
        .map(|f| f.constant.eval_real(F::zero()));

    let traj = evolve(initial, &h1, t_final, dt, Integrator::Exact)?;
    let flow1 = Flow::new(&h1)?;
    let flow2 = Flow::new(&h2)?;
    let mut prime = Vec::with_capacity(traj.states.len());
    let mut double_prime = Vec::with_capacity(traj.states.len());
    for s in &traj.states {
        prime.push(flow1.mean_acceleration(s)[4]);
        double_prime.push(flow2.mean_acceleration(&map_state(s, &boost)?)[4]);
    }
    Ok(DoubleBoostReport {
        prime,
        double_prime,
        expected_prime: expected(0)?,
        expected_double_prime: expected(2)?,
        symbolic_double_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::alpha_hamiltonian;
    use crate::model::FrameTrajectory;
    use crate::scalar::ratio;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        ratio(n, d)
    }

    #[test]
    fn free_particle_exact() {
        let s = GaussianState::<f64>::product(&[(0.5, 2.0, 1.0)], 1.0);
        let h = QuadraticHamiltonian::free_particle("P", &q(4, 1));
        for integ in [Integrator::Exact, Integrator::Rk4] {
            let traj = evolve(&s, &h, 2.0, 0.25, integ).unwrap();
            let last = traj.last();
            assert!((last.mean[0] - 1.5).abs() < 1e-13);
            assert!((last.mean[1] - 2.0).abs() < 1e-13);
            // Var(x) grows as σ² + (Var p) t²/m²
            assert!((last.cov[(0, 0)] - (1.0 + 0.25 * 4.0 / 16.0)).abs() < 1e-12);
            assert!(last.satisfies_uncertainty(1.0, 1e-10));
        }
    }

    #[test]
    fn polynomial_drive_is_exact() {
        let traj = FrameTrajectory::new(vec![q(0, 1), q(0, 1), q(1, 1), q(1, 3)]);
        let h = alpha_hamiltonian(&q(2, 1), &traj, &q(1, 2));
        let s = GaussianState::<f64>::product(&[(0.0, 0.0, 1.0)], 1.0);
        let exact = evolve(&s, &h, 1.0, 0.1, Integrator::Exact).unwrap();
        let rk = evolve(&s, &h, 1.0, 0.001, Integrator::Rk4).unwrap();
        assert!((exact.last().mean[0] - rk.last().mean[0]).abs() < 1e-11);
        // ẍ' = −Ẍ = −(2 + 2t)
        let acc = mean_acceleration(&h, exact.last()).unwrap();
        assert!((acc[0] + 4.0).abs() < 1e-12);
    }

    #[test]
    fn both_paths_agree() {
        let h = alpha_hamiltonian(&q(1, 1), &FrameTrajectory::uniformly_accelerated(q(2, 1)), &q(0, 1));
        let s = GaussianState::<f64>::product(&[(0.0, 0.0, 1.0)], 1.0);
        let paths = acceleration_paths(&h, &s, 0, 0.05).unwrap();
        assert_eq!(paths.symbolic, Some(-2.0));
        assert!((paths.numeric.value + 2.0).abs() < 1e-9);
    }

    #[test]
    fn map_round_trip_and_definiteness() {
        let ps: Vec<_> = [("S1", 2), ("S2", 5), ("P", 1)]
            .iter()
            .map(|(l, m)| ParticleSpec::new(*l, q(*m, 1)).unwrap())
            .collect();
        let map = builtin_map(BuiltinMap::Set2, &ps, None).unwrap();
        let s = GaussianState::<f64>::product(&[(0.0, 0.1, 1.0), (2.0, 0.0, 0.5), (-1.0, 0.3, 0.7)], 1.0);
        let m = map_state(&s, &map).unwrap();
        assert!(m.is_positive_definite());
        let back = map_state(&m, &map.inverse().unwrap()).unwrap();
        for i in 0..6 {
            assert!((back.mean[i] - s.mean[i]).abs() < 1e-13);
            for j in 0..6 {
                assert!((back.cov[(i, j)] - s.cov[(i, j)]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn double_boost_free_and_forced() {
        let masses = [q(1, 1), q(1, 1), q(1, 1)];
        let s = GaussianState::<f64>::product(&[(0.0, 0.0, 1.0), (3.0, 0.2, 1.0), (1.0, -0.1, 1.0)], 1.0);
        let r = double_boost_check::<Rational, f64>(&masses, None, &s, 1.0, 0.1).unwrap();
        assert!(r.max_deviation() < 1e-12);
        assert_eq!(r.expected_prime, 0.0);

        let forced = Some(PotentialShape::Linear { slope: q(-2, 1) });
        let r = double_boost_check::<Rational, f64>(&[q(2, 1), q(3, 1), q(1, 1)], forced, &s, 1.0, 0.1).unwrap();
        // V = −2(X₂ − X₁): S₂ feels +2/M₂, S₁ feels −2/M₁
        assert!((r.expected_double_prime + 2.0 / 3.0).abs() < 1e-15);
        assert!((r.expected_prime - 1.0).abs() < 1e-15);
        assert!(r.max_deviation() < 1e-9);
        assert_eq!(r.symbolic_double_prime, Some(r.expected_double_prime));
    }

    #[test]
    fn csv_layout() {
        let s = GaussianState::<f64>::product(&[(0.0, 0.0, 1.0)], 1.0);
        let h = QuadraticHamiltonian::free_particle("P", &q(1, 1));
        let traj = evolve(&s, &h, 0.5, 0.25, Integrator::Exact).unwrap();
        let mut out = Vec::new();
        traj.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,mu_1,mu_2,sigma_1_1,sigma_2_1,sigma_2_2"));
        assert_eq!(text.lines().count(), 4);
    }
}
