//! E2: the four-factor cycle applied factor by factor to a grid state.

use std::f64::consts::{PI, TAU};

use qrf_core::grid::{make_gaussian, GridSpec, Observable};
use qrf_core::phase::{bargmann_factors, compose_sequence, cyclic_expectation_invariance};
use qrf_core::poly::Polynomial;
use qrf_core::scalar::format_rational;
use qrf_core::Rational;

use super::{f, Context};
use crate::error::{Result, RunnerError};
use crate::report::{float, Claim};
use crate::tolerances::CYCLIC_GRID;

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    if d > PI {
        TAU - d
    } else {
        d
    }
}

pub(crate) fn run(ctx: &Context) -> Result<Vec<Claim>> {
    let p = ctx.params;
    let a = ctx.rat(&p.a, (1, 4));
    let v = ctx.rat(&p.v, (1, 2));
    let m = ctx.rat(&p.m, (1, 1));
    let t = ctx.rat(&p.t_final, (1, 1));
    let sigma = ctx.rat(&p.sigma, (1, 1));
    let hbar = ctx.hbar();
    let units = ctx.units()?;
    let n = p.grid_n.unwrap_or(4096);
    let extent = ctx.rat(&p.grid_extent, (64, 1));

    // Every shift must be a whole number of cells for the permutation to be exact.
    for (name, shift) in [("a", a.clone()), ("v·t", &v * &t)] {
        let cells = &shift * Rational::from_integer(n.into()) / &extent;
        if !cells.is_integer() {
            return Err(RunnerError::Config(format!(
                "{name} = {} is {} grid cells; choose a whole number",
                format_rational(&shift),
                format_rational(&cells)
            )));
        }
    }

    let factors = bargmann_factors(&a, &v, &m, &units);
    let product = compose_sequence(&factors, &units);
    let expected_phase = &a * &v * &m / &hbar;
    let mut claims = vec![
        Claim::exact("composed element is a pure phase", &true, &product.is_pure_phase()),
        Claim::exact(
            "composed phase = a v m/ħ",
            &Polynomial::constant(expected_phase.clone()),
            &product.phase,
        ),
    ];

    let spec = GridSpec::one_dim(ctx.axis(n, (64, 1))?);
    let hbar_f = f(&hbar);
    let psi = make_gaussian(&spec, 0.5, 0.5, f(&sigma), hbar_f)?;
    let mut last = None;
    for (label, obs) in [
        ("⟨x⟩", Observable::Position(0)),
        ("⟨p⟩", Observable::Momentum(0)),
        ("⟨p²⟩", Observable::MomentumSquared(0)),
    ] {
        let (before, after, state) = cyclic_expectation_invariance(&factors, &psi, &obs, &t, &units)?;
        claims.push(Claim::at_most(format!("|Δ{label}| after the cycle"), (after - before).abs(), CYCLIC_GRID));
        last = Some(state);
    }
    let final_state = last.expect("three observables checked");
    let fidelity = psi.fidelity(&final_state);
    claims.push(Claim::new(
        "fidelity |⟨ψ|ψ_final⟩|",
        "1",
        float(fidelity),
        format!("≥ 1 − {}", float(CYCLIC_GRID)),
        fidelity >= 1.0 - CYCLIC_GRID,
    ));
    let overlap = psi.overlap(&final_state).arg();
    let gap = angle_gap(overlap, -f(&expected_phase));
    claims.push(Claim::new(
        "overlap phase = −a v m/ħ mod 2π",
        float(-f(&expected_phase)),
        float(overlap),
        format!("abs {} mod 2π", float(CYCLIC_GRID)),
        gap <= CYCLIC_GRID,
    ));
    Ok(claims)
}
