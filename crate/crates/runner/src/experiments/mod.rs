//! The experiment catalogue. Each experiment turns its parameters into a list
//! of claims; nothing here decides pass/fail except through [`tolerances`].
//!
//! [`tolerances`]: crate::tolerances

mod bargmann;
mod composition;
mod cyclic;
mod decay_model;
mod eep;
mod gauge;
mod three_body;

use std::time::Instant;

use num_traits::ToPrimitive;
use qrf_core::frames::{AffineFrameMap, QuadraticHamiltonian};
use qrf_core::gaussian::{evolve, map_state, GaussianState, Integrator};
use qrf_core::grid::{GridAxis, GridState};
use qrf_core::model::Units;
use qrf_core::scalar::format_rational;
use qrf_core::Rational;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{ExperimentId, Params, Rat, ScenarioConfig};
use crate::error::{Result, RunnerError};
use crate::report::{Claim, RunReport};
use crate::sampling::rng_for;

/// Resolved view of the parameters for one experiment.
pub(crate) struct Context<'a> {
    pub params: &'a Params,
    pub seed: u64,
    pub id: ExperimentId,
}

impl Context<'_> {
    pub fn rat(&self, value: &Option<Rat>, default: (i64, i64)) -> Rational {
        value
            .as_ref()
            .map(|r| r.0.clone())
            .unwrap_or_else(|| qrf_core::scalar::ratio(default.0, default.1))
    }

    pub fn hbar(&self) -> Rational {
        self.rat(&self.params.hbar, (1, 1))
    }

    pub fn units(&self) -> Result<Units<Rational>> {
        Ok(Units::new(self.hbar())?)
    }

    pub fn samples(&self, default: usize) -> usize {
        self.params.samples.unwrap_or(default)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        rng_for(self.seed, self.id)
    }

    /// Centred axis of `grid_n` points over `grid_extent`.
    pub fn axis(&self, n: usize, extent: (i64, i64)) -> Result<GridAxis<f64>> {
        let n = self.params.grid_n.unwrap_or(n);
        let extent = self.rat(&self.params.grid_extent, extent);
        Ok(GridAxis::centered(f(&extent), n)?)
    }

    /// `t_final`, `dt` and the number of steps, which must be a whole
    /// multiple of `intervals`.
    pub fn stepping(&self, t: (i64, i64), dt: (i64, i64), intervals: usize) -> Result<Stepping> {
        let t_final = self.rat(&self.params.t_final, t);
        let dt = self.rat(&self.params.dt, dt);
        let q = &t_final / &dt;
        let steps = if q.is_integer() { q.to_integer().to_usize() } else { None };
        match steps {
            Some(s) if s > 0 && s % intervals == 0 => Ok(Stepping {
                t_final: f(&t_final),
                dt: f(&dt),
                every: s / intervals,
            }),
            _ => Err(RunnerError::Config(format!(
                "t_final/dt = {} must be a positive multiple of {intervals}",
                format_rational(&q)
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Stepping {
    pub t_final: f64,
    pub dt: f64,
    /// Grid steps between recorded samples.
    pub every: usize,
}

impl Stepping {
    pub fn sample_dt(&self) -> f64 {
        self.dt * self.every as f64
    }
}

pub(crate) fn f(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Largest relative moment discrepancy, unit floor, over means and covariances.
pub(crate) fn moment_deviation(grid: &GridState<f64>, gaussian: &GaussianState<f64>, hbar: f64) -> f64 {
    let (mean, cov) = grid.moments(hbar);
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
    let mut worst = 0.0f64;
    for i in 0..mean.len() {
        worst = worst.max(rel(mean[i], gaussian.mean[i]));
        for j in 0..mean.len() {
            worst = worst.max(rel(cov[(i, j)], gaussian.cov[(i, j)]));
        }
    }
    worst
}

/// Largest absolute moment gap between `map∘evolve(H)` and
/// `evolve(H')∘map` with `H'` the conjugated Hamiltonian.
pub(crate) fn passive_active_gap(
    h: &QuadraticHamiltonian<Rational>,
    map: &AffineFrameMap<Rational>,
    state: &GaussianState<f64>,
    t_final: f64,
    dt: f64,
) -> Result<f64> {
    let hp = qrf_core::frames::conjugate_hamiltonian(h, map)?;
    let direct = evolve(state, h, t_final, dt, Integrator::Exact)?;
    let moved = evolve(&map_state(state, map)?, &hp, t_final, dt, Integrator::Exact)?;
    let mut worst = 0.0f64;
    for (a, b) in direct.states.iter().zip(&moved.states) {
        let a = map_state(a, map)?;
        for i in 0..a.dimension() {
            worst = worst.max((a.mean[i] - b.mean[i]).abs());
            for j in 0..a.dimension() {
                worst = worst.max((a.cov[(i, j)] - b.cov[(i, j)]).abs());
            }
        }
    }
    Ok(worst)
}

pub(crate) fn passive_active_claim(label: &str, gap: f64) -> Claim {
    Claim::at_most(
        format!("passive/active: {label} moments, map∘evolve against evolve∘map"),
        gap,
        crate::tolerances::PASSIVE_ACTIVE,
    )
}

/// Runs one experiment and times it.
pub fn run(id: ExperimentId, params: &Params, seed: u64) -> Result<RunReport> {
    params.validate()?;
    let ctx = Context { params, seed, id };
    let start = Instant::now();
    let claims = match id {
        ExperimentId::E1 => bargmann::run(&ctx),
        ExperimentId::E2 => cyclic::run(&ctx),
        ExperimentId::E3 => gauge::run(&ctx),
        ExperimentId::E4 => composition::run(&ctx),
        ExperimentId::E5 => eep::run(&ctx),
        ExperimentId::E6 => three_body::run(&ctx),
        ExperimentId::E7 => decay_model::run(&ctx),
    }?;
    let seconds = start.elapsed().as_secs_f64();
    log::info!("{id}: {} claims in {seconds:.3} s", claims.len());
    Ok(RunReport {
        experiment: id,
        title: id.title().into(),
        seed,
        seconds,
        claims,
    })
}

/// Runs every selected experiment concurrently, reports in experiment order.
pub fn run_config(cfg: &ScenarioConfig) -> Result<Vec<RunReport>> {
    cfg.params.validate()?;
    cfg.experiments()
        .par_iter()
        .map(|id| run(*id, &cfg.params, cfg.seed))
        .collect()
}
