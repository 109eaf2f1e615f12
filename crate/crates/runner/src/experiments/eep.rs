//! E5: frame and particle in the field `V = −MgX`, seen through the
//! frame-conditioned translation and through centre-of-mass/relative
//! coordinates. The relative acceleration must be `−g` either way.

use qrf_core::frames::{
    builtin_map, conjugate_hamiltonian, heisenberg_acceleration, BuiltinMap, PotentialShape, QuadraticHamiltonian,
};
use qrf_core::gaussian::{acceleration_paths, evolve, mean_acceleration, GaussianState, Integrator};
use qrf_core::grid::{fd_acceleration, make_product_gaussian, GridSpec, SplitStepPropagator};
use qrf_core::model::ParticleSpec;
use qrf_core::poly::Polynomial;
use qrf_core::Rational;
use rayon::prelude::*;

use super::{f, moment_deviation, passive_active_claim, passive_active_gap, Context, Stepping};
use crate::error::Result;
use crate::reference::{aharonov_kaufherr, relative_in_gravity, same_absorbed, same_coefficients};
use crate::report::Claim;
use crate::tolerances::{GAUSSIAN_ACCELERATION, GRID_ACCELERATION_REL, NORM_DRIFT, ORACLE_MOMENTS_REL};

const SAMPLES: usize = 10;
/// Index of the particle's relative position in `(X', P', x', p')`.
const REL: usize = 2;

struct Case {
    label: &'static str,
    h: QuadraticHamiltonian<Rational>,
}

struct Setup {
    g: f64,
    hbar: f64,
    sigma: f64,
    spec: GridSpec<f64>,
    stepping: Stepping,
}

fn dynamics(case: &Case, s: &Setup) -> Result<Vec<Claim>> {
    let label = case.label;
    let target = -s.g;
    let packets = [(0.0, 0.0, s.sigma), (0.0, 0.0, s.sigma)];
    let g0 = GaussianState::product(&packets, s.hbar);
    let dts = s.stepping.sample_dt();
    let mut claims = vec![Claim::absolute(
        format!("gaussian ⟨ẍ'⟩ closed form [{label}]"),
        target,
        mean_acceleration(&case.h, &g0)?[REL],
        GAUSSIAN_ACCELERATION,
    )];
    let paths = acceleration_paths(&case.h, &g0, REL, dts)?;
    claims.push(Claim::absolute(
        format!("gaussian ⟨ẍ'⟩ from exact moments [{label}]"),
        target,
        paths.numeric.value,
        GAUSSIAN_ACCELERATION,
    ));

    let oracle = evolve(&g0, &case.h, s.stepping.t_final, dts, Integrator::Exact)?;
    let psi = make_product_gaussian(&s.spec, &packets, s.hbar)?;
    let prop = SplitStepPropagator::new(&s.spec, &case.h, s.hbar)?;
    let mut k = 0;
    let mut xs = Vec::with_capacity(SAMPLES + 1);
    let mut worst = 0.0f64;
    let fin = prop.evolve_observed(&psi, s.stepping.t_final, s.stepping.dt, |st| {
        if k % s.stepping.every == 0 {
            xs.push(st.moments(s.hbar).0[REL]);
            worst = worst.max(moment_deviation(st, &oracle.states[k / s.stepping.every], s.hbar));
        }
        k += 1;
    })?;
    claims.push(Claim::relative(
        format!("2D grid finite-difference ⟨ẍ'⟩ [{label}]"),
        target,
        fd_acceleration(&xs, dts)?.value,
        GRID_ACCELERATION_REL,
    ));
    claims.push(Claim::at_most(
        format!("oracle: 2D grid vs gaussian moments over the run [{label}]"),
        worst,
        ORACLE_MOMENTS_REL,
    ));
    claims.push(Claim::at_most(
        format!("2D grid norm drift [{label}]"),
        (fin.norm() - psi.norm()).abs(),
        NORM_DRIFT,
    ));
    Ok(claims)
}

pub(crate) fn run(ctx: &Context) -> Result<Vec<Claim>> {
    let p = ctx.params;
    let big = ctx.rat(&p.big_mass, (3, 1));
    let m = ctx.rat(&p.m, (1, 1));
    let g = ctx.rat(&p.g, (1, 1));
    let field = PotentialShape::Linear { slope: -(&big * &g) };
    let absolute = QuadraticHamiltonian::frame_and_particle(&big, &m, Some(field.clone()));
    let particles = vec![ParticleSpec::new("S", big.clone())?, ParticleSpec::new("P", m.clone())?];
    let ak = builtin_map(BuiltinMap::AharonovKaufherr, &particles, None)?;
    let rel = builtin_map(BuiltinMap::RelativeCm, &particles, None)?;
    let h_ak = conjugate_hamiltonian(&absolute, &ak)?;
    let h_rel = conjugate_hamiltonian(&absolute, &rel)?;
    let mu = &big * &m / (&big + &m);

    let expected = Polynomial::constant(-g.clone());
    let closed = |h: &QuadraticHamiltonian<Rational>| -> Result<String> {
        let form = heisenberg_acceleration(h, REL)?;
        Ok(if form.is_state_independent() {
            form.constant.to_string()
        } else {
            "state dependent".into()
        })
    };
    let mut claims = vec![
        Claim::exact(
            "transformed Hamiltonian = P'²/2M + p'²/2μ − P'p'/M + V(X')",
            &true,
            &same_coefficients(&h_ak, &aharonov_kaufherr(&big, &m, Some(field))),
        ),
        Claim::exact(
            "relative Hamiltonian = P'²/2M_T + p'²/2μ − MgX' + μg x'",
            &true,
            &same_absorbed(&h_rel, &relative_in_gravity(&big, &m, &g)),
        ),
        Claim::exact(
            "gravitational term coefficient on x' = μg",
            &Polynomial::constant(&mu * &g),
            &h_rel.absorb_polynomial_potentials().1[REL],
        ),
        Claim::exact("closed-form ẍ' [frame-conditioned]", &expected.to_string(), &closed(&h_ak)?),
        Claim::exact("closed-form ẍ' [relative]", &expected.to_string(), &closed(&h_rel)?),
    ];

    let s0 = GaussianState::product(&[(0.5, 0.2, 0.8), (-1.0, 0.4, 1.1)], f(&ctx.hbar()));
    claims.push(passive_active_claim(
        "frame-conditioned translation",
        passive_active_gap(&absolute, &ak, &s0, 2.0, 0.25)?,
    ));
    claims.push(passive_active_claim("centre of mass/relative", passive_active_gap(&absolute, &rel, &s0, 2.0, 0.25)?));

    let setup = Setup {
        g: f(&g),
        hbar: f(&ctx.hbar()),
        sigma: f(&ctx.rat(&p.sigma, (1, 1))),
        spec: {
            let ax = ctx.axis(512, (32, 1))?;
            GridSpec::two_dim(ax.clone(), ax)
        },
        stepping: ctx.stepping((1, 1), (1, 100), SAMPLES)?,
    };
    let cases = [
        Case {
            label: "frame-conditioned",
            h: h_ak,
        },
        Case {
            label: "relative",
            h: h_rel,
        },
    ];
    let results: Vec<Vec<Claim>> = cases.par_iter().map(|c| dynamics(c, &setup)).collect::<Result<_>>()?;
    claims.extend(results.into_iter().flatten());
    Ok(claims)
}
