//! E3: a particle seen from a uniformly accelerated frame, in the translated
//! frame, the fully Galilean frame and the one-parameter family in between.

use qrf_core::frames::{alpha_hamiltonian, heisenberg_acceleration, passive_hamiltonian_timedep, QuadraticHamiltonian};
use qrf_core::gaussian::{acceleration_paths, evolve, GaussianState, Integrator};
use qrf_core::grid::{apply_weyl, fd_acceleration, make_gaussian, GridSpec, GridState, SplitStepPropagator};
use qrf_core::model::FrameTrajectory;
use qrf_core::phase::WeylElement;
use qrf_core::poly::Polynomial;
use qrf_core::scalar::{format_rational, ratio};
use qrf_core::Rational;
use rayon::prelude::*;

use super::{f, moment_deviation, Context, Stepping};
use crate::error::Result;
use crate::reference::{galilean_frame, same_coefficients, shift_only_frame};
use crate::report::{float, Claim};
use crate::tolerances::{GAUGE_FIDELITY, GAUSSIAN_ACCELERATION, GRID_ACCELERATION_REL, NORM_DRIFT, ORACLE_MOMENTS_REL};

const SAMPLES: usize = 20;

struct Case {
    label: String,
    h: QuadraticHamiltonian<Rational>,
}

struct Setup {
    g: Rational,
    hbar: f64,
    sigma: f64,
    spec: GridSpec<f64>,
    stepping: Stepping,
}

fn run_case(case: &Case, s: &Setup) -> Result<(Vec<Claim>, GridState<f64>)> {
    let label = &case.label;
    let target = -f(&s.g);
    let mut claims = Vec::new();

    let form = heisenberg_acceleration(&case.h, 0)?;
    let expected = Polynomial::constant(-s.g.clone());
    let (measured, pass) = if form.is_state_independent() {
        (form.constant.to_string(), form.constant == expected)
    } else {
        ("state dependent".to_string(), false)
    };
    claims.push(Claim::new(format!("closed-form ẍ [{label}]"), expected.to_string(), measured, "exact", pass));

    let g0 = GaussianState::product(&[(0.0, 0.0, s.sigma)], s.hbar);
    let dts = s.stepping.sample_dt();
    let paths = acceleration_paths(&case.h, &g0, 0, dts)?;
    if let Some(v) = paths.symbolic {
        claims.push(Claim::absolute(format!("gaussian ⟨ẍ⟩ closed form [{label}]"), target, v, GAUSSIAN_ACCELERATION));
    }
    claims.push(Claim::absolute(
        format!("gaussian ⟨ẍ⟩ from exact moments [{label}]"),
        target,
        paths.numeric.value,
        GAUSSIAN_ACCELERATION,
    ));

    let oracle = evolve(&g0, &case.h, s.stepping.t_final, dts, Integrator::Exact)?;
    let psi = make_gaussian(&s.spec, 0.0, 0.0, s.sigma, s.hbar)?;
    let prop = SplitStepPropagator::new(&s.spec, &case.h, s.hbar)?;
    let mut k = 0;
    let mut xs = Vec::with_capacity(SAMPLES + 1);
    let mut worst = 0.0f64;
    let fin = prop.evolve_observed(&psi, s.stepping.t_final, s.stepping.dt, |st| {
        if k % s.stepping.every == 0 {
            let i = k / s.stepping.every;
            xs.push(st.moments(s.hbar).0[0]);
            worst = worst.max(moment_deviation(st, &oracle.states[i], s.hbar));
        }
        k += 1;
    })?;
    let fd = fd_acceleration(&xs, dts)?;
    claims.push(Claim::relative(
        format!("grid finite-difference ⟨ẍ⟩ [{label}]"),
        target,
        fd.value,
        GRID_ACCELERATION_REL,
    ));
    claims.push(Claim::at_most(
        format!("oracle: grid vs gaussian moments over the run [{label}]"),
        worst,
        ORACLE_MOMENTS_REL,
    ));
    claims.push(Claim::at_most(
        format!("grid norm drift [{label}]"),
        (fin.norm() - psi.norm()).abs(),
        NORM_DRIFT,
    ));
    Ok((claims, fin))
}

pub(crate) fn run(ctx: &Context) -> Result<Vec<Claim>> {
    let p = ctx.params;
    let g = ctx.rat(&p.g, (2, 1));
    let m = ctx.rat(&p.m, (1, 1));
    let alphas: Vec<Rational> = match &p.alpha {
        Some(list) => list.iter().map(|r| r.0.clone()).collect(),
        None => [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)]
            .iter()
            .map(|&(n, d)| ratio(n, d))
            .collect(),
    };
    let units = ctx.units()?;
    let traj = FrameTrajectory::uniformly_accelerated(g.clone());
    let free = QuadraticHamiltonian::free_particle("P", &m);
    let shift = passive_hamiltonian_timedep(&free, &WeylElement::translation(traj.position().clone()), 0, &units)?;
    let generator = WeylElement::galilean(&m, &traj, &units);
    let galilean = passive_hamiltonian_timedep(&free, &generator, 0, &units)?;

    let mut claims = vec![
        Claim::exact(
            "translated-frame Hamiltonian = p²/2m − Ẋp",
            &true,
            &same_coefficients(&shift, &shift_only_frame(&m, &traj)),
        ),
        Claim::exact(
            "Galilean-frame Hamiltonian = p²/2m + mẌx",
            &true,
            &same_coefficients(&galilean, &galilean_frame(&m, &traj)),
        ),
        Claim::exact(
            "α = 0 member equals the Galilean-frame Hamiltonian",
            &true,
            &same_coefficients(&alpha_hamiltonian(&m, &traj, &ratio(0, 1)), &galilean),
        ),
    ];
    let mut shifted_back = shift_only_frame(&m, &traj);
    let v = traj.velocity();
    shifted_back.c = (&v * &v).scale(&(&m / ratio(2, 1)));
    claims.push(Claim::exact(
        "α = 1 member equals the translated frame plus mẊ²/2",
        &true,
        &same_coefficients(&alpha_hamiltonian(&m, &traj, &ratio(1, 1)), &shifted_back),
    ));

    let mut cases = vec![
        Case {
            label: "translated frame".into(),
            h: shift,
        },
        Case {
            label: "Galilean frame".into(),
            h: galilean,
        },
    ];
    cases.extend(alphas.iter().map(|a| Case {
        label: format!("α = {}", format_rational(a)),
        h: alpha_hamiltonian(&m, &traj, a),
    }));

    let hbar = f(&ctx.hbar());
    let setup = Setup {
        g,
        hbar,
        sigma: f(&ctx.rat(&p.sigma, (1, 1))),
        spec: GridSpec::one_dim(ctx.axis(4096, (64, 1))?),
        stepping: ctx.stepping((1, 1), (1, 1000), SAMPLES)?,
    };
    let results: Vec<(Vec<Claim>, GridState<f64>)> =
        cases.par_iter().map(|c| run_case(c, &setup)).collect::<Result<_>>()?;

    // The translated and Galilean frame states differ by the frame kick mẊ(t)
    // and the phase θ(t); undo both and compare.
    let t = ctx.rat(&p.t_final, (1, 1));
    let (_, kick, theta) = generator.at(&t);
    let undo = WeylElement::new(Polynomial::zero(), Polynomial::constant(kick), Polynomial::constant(theta));
    let corrected = apply_weyl(&results[0].1, &undo, &t, &units)?;
    let fidelity = corrected.fidelity(&results[1].1);
    claims.push(Claim::new(
        "translated and Galilean frame states agree once the frame kick is applied",
        "1",
        float(fidelity),
        format!("≥ 1 − {}", float(GAUGE_FIDELITY)),
        fidelity >= 1.0 - GAUGE_FIDELITY,
    ));
    for (c, _) in results {
        claims.extend(c);
    }
    Ok(claims)
}
