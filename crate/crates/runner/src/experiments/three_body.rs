//! E6: two frames and a particle. Canonicity of both coordinate sets, their
//! mixed commutators, the transformed Hamiltonians, and the boost from the
//! first frame's description to the second's.

use qrf_core::frames::{
    builtin_map, check_canonical, conjugate_hamiltonian, mixed_commutator, BuiltinMap, DerivedMasses, PotentialShape,
    QuadraticHamiltonian,
};
use qrf_core::gaussian::{double_boost_check, map_state, GaussianState};
use qrf_core::model::ParticleSpec;
use qrf_core::scalar::ratio;
use qrf_core::Rational;

use super::{f, passive_active_claim, passive_active_gap, Context};
use crate::error::{Result, RunnerError};
use crate::reference::{double_boosted, same_coefficients, set1, set2};
use crate::report::{float, Claim};
use crate::sampling::positive_rational;
use crate::tolerances::{DOUBLE_BOOST_FREE, DOUBLE_BOOST_LINEAR};

fn particles(m: &[Rational; 3]) -> Result<Vec<ParticleSpec<Rational>>> {
    ["S1", "S2", "P"]
        .iter()
        .zip(m)
        .map(|(l, m)| Ok(ParticleSpec::new(*l, m.clone())?))
        .collect()
}

fn opaque() -> Option<PotentialShape<Rational>> {
    Some(PotentialShape::Opaque { name: "V".into() })
}

/// Structural checks for one mass triple, as booleans in a fixed order.
fn structure(m: &[Rational; 3]) -> Result<[bool; 5]> {
    let ps = particles(m)?;
    let s1 = builtin_map(BuiltinMap::Set1, &ps, None)?;
    let s2 = builtin_map(BuiltinMap::Set2, &ps, None)?;
    let [m1, m2, m] = m;
    let h = QuadraticHamiltonian::three_body(m1, m2, m, opaque());
    Ok([
        check_canonical(&s1).0,
        check_canonical(&s2).0,
        mixed_commutator(&s1, 2, &s2, 5)? == m / (m1 + m),
        mixed_commutator(&s1, 4, &s2, 3)? == m2 / (m1 + m2),
        same_coefficients(&conjugate_hamiltonian(&h, &s1)?, &set1(m1, m2, m, opaque()))
            && same_coefficients(&conjugate_hamiltonian(&h, &s2)?, &set2(m1, m2, m, opaque())),
    ])
}

/// The first frame's Hamiltonian without its centre-of-mass kinetic term.
fn first_frame(m: &[Rational; 3], v: Option<PotentialShape<Rational>>) -> Result<QuadraticHamiltonian<Rational>> {
    let s1 = builtin_map(BuiltinMap::Set1, &particles(m)?, None)?;
    Ok(conjugate_hamiltonian(&QuadraticHamiltonian::three_body(&m[0], &m[1], &m[2], v), &s1)?.without_quadratic(1, 1))
}

fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

pub(crate) fn run(ctx: &Context) -> Result<Vec<Claim>> {
    let p = ctx.params;
    let masses: [Rational; 3] = match &p.masses {
        Some(list) => {
            let v: Vec<Rational> = list.iter().map(|r| r.0.clone()).collect();
            v.try_into()
                .map_err(|_| RunnerError::Config("masses needs [M1, M2, m]".into()))?
        }
        None => [ratio(2, 1), ratio(3, 1), ratio(1, 1)],
    };
    let [m1, m2, m] = &masses;
    let d = DerivedMasses::three_body(m1.clone(), m2.clone(), m.clone());
    let ps = particles(&masses)?;
    let mut claims = Vec::new();

    let checks = structure(&masses)?;
    claims.push(Claim::exact("first set is canonical", &true, &checks[0]));
    claims.push(Claim::exact("second set is canonical", &true, &checks[1]));
    let s1 = builtin_map(BuiltinMap::Set1, &ps, None)?;
    let s2 = builtin_map(BuiltinMap::Set2, &ps, None)?;
    claims.push(Claim::exact(
        "[X₂' (first set), p' (second set)] = iħ m/(M₁+m)",
        &(m / (m1 + m)),
        &mixed_commutator(&s1, 2, &s2, 5)?,
    ));
    claims.push(Claim::exact(
        "[x' (first set), P₂' (second set)] = iħ M₂/(M₁+M₂)",
        &(m2 / (m1 + m2)),
        &mixed_commutator(&s1, 4, &s2, 3)?,
    ));
    let h = QuadraticHamiltonian::three_body(m1, m2, m, opaque());
    let h_s1 = conjugate_hamiltonian(&h, &s1)?;
    let h_s2 = conjugate_hamiltonian(&h, &s2)?;
    claims.push(Claim::exact(
        "first-set Hamiltonian = P₁'²/2M_T + P₂'²/2μ₂ + p'²/2μ + P₂'p'/M₁ + V(X₂')",
        &true,
        &same_coefficients(&h_s1, &set1(m1, m2, m, opaque())),
    ));
    claims.push(Claim::exact(
        "second-set Hamiltonian = P₁'²/2M_T + γ(P₂'²/2μ₂ + p'²/2μ − P₂'p'/M₁) + V(X₂' + μx'/M₁)",
        &true,
        &same_coefficients(&h_s2, &set2(m1, m2, m, opaque())),
    ));
    claims.push(Claim::exact(
        "second-set kinetic prefactor γ = M₁M₂m/(M_T μ₂ μ)",
        &d.gamma,
        &(&h_s2.a[(3, 3)] * &d.mu2),
    ));

    let n = ctx.samples(20);
    let mut rng = ctx.rng();
    let mut tally = [0usize; 5];
    for _ in 0..n {
        let triple = [positive_rational(&mut rng), positive_rational(&mut rng), positive_rational(&mut rng)];
        for (t, ok) in tally.iter_mut().zip(structure(&triple)?) {
            *t += ok as usize;
        }
    }
    for (name, passed) in [
        "random triples: first set canonical",
        "random triples: second set canonical",
        "random triples: mixed commutator m/(M₁+m)",
        "random triples: mixed commutator M₂/(M₁+M₂)",
        "random triples: both set Hamiltonians match term by term",
    ]
    .into_iter()
    .zip(tally)
    {
        claims.push(Claim::sweep(name, passed, n));
    }

    // Second-frame Hamiltonian, first with the configured masses, then the equal-mass example.
    let boost = builtin_map(BuiltinMap::DoubleBoost, &ps, None)?;
    claims.push(Claim::exact(
        "second-frame Hamiltonian = P₂''²/2μ₂' + p''²/2μ' + V(X₂'' − m x''/(m+M₂))",
        &true,
        &same_coefficients(&conjugate_hamiltonian(&first_frame(&masses, opaque())?, &boost)?, &double_boosted(m1, m2, m, opaque())),
    ));
    let unit = [ratio(1, 1), ratio(1, 1), ratio(1, 1)];
    let ones = DerivedMasses::three_body(ratio(1, 1), ratio(1, 1), ratio(1, 1));
    let unit_boost = builtin_map(BuiltinMap::DoubleBoost, &particles(&unit)?, None)?;
    let h2 = conjugate_hamiltonian(&first_frame(&unit, None)?, &unit_boost)?;
    claims.push(Claim::exact("equal masses: μ' = 1/2", &ratio(1, 2), &ones.mu_prime));
    claims.push(Claim::exact("equal masses: μ₂' = 2/3", &ratio(2, 3), &ones.mu2_prime));
    claims.push(Claim::exact("equal masses: p''² coefficient 1/2μ' = 1", &ratio(1, 1), &(&h2.a[(5, 5)] / ratio(2, 1))));
    claims.push(Claim::exact("equal masses: P₂''² coefficient 1/2μ₂' = 3/4", &ratio(3, 4), &(&h2.a[(3, 3)] / ratio(2, 1))));

    let hbar = f(&ctx.hbar());
    let start = GaussianState::product(&[(0.0, 0.1, 1.0), (2.0, -0.3, 0.6), (-1.0, 0.2, 0.9)], hbar);
    let free = double_boost_check(&masses, None, &start, 2.0, 0.25)?;
    claims.push(Claim::at_most("no interaction: max |⟨ẍ'⟩| along the run", max_abs(&free.prime), DOUBLE_BOOST_FREE));
    claims.push(Claim::at_most(
        "no interaction: max |⟨ẍ''⟩| along the run",
        max_abs(&free.double_prime),
        DOUBLE_BOOST_FREE,
    ));
    let g = ctx.rat(&p.g, (1, 1));
    let pull = PotentialShape::Linear { slope: -(m1 * &g) };
    let forced = double_boost_check(&masses, Some(pull), &start, 2.0, 0.25)?;
    claims.push(Claim::at_most(
        "uniform force: ⟨ẍ'⟩ = −Ẍ₁ and ⟨ẍ''⟩ = −Ẍ₂ along the run",
        forced.max_deviation(),
        DOUBLE_BOOST_LINEAR,
    ));
    if let Some(v) = forced.symbolic_double_prime {
        claims.push(Claim::absolute(
            "uniform force: closed-form ẍ'' = −Ẍ₂",
            forced.expected_double_prime,
            v,
            DOUBLE_BOOST_LINEAR,
        ));
    } else {
        claims.push(Claim::new("uniform force: closed-form ẍ'' = −Ẍ₂", float(forced.expected_double_prime), "state dependent", "exact", false));
    }

    let spring = Some(PotentialShape::Harmonic { stiffness: ratio(3, 2) });
    let h_abs = QuadraticHamiltonian::three_body(m1, m2, m, spring);
    claims.push(passive_active_claim("first set", passive_active_gap(&h_abs, &s1, &start, 2.0, 0.25)?));
    claims.push(passive_active_claim("second set", passive_active_gap(&h_abs, &s2, &start, 2.0, 0.25)?));
    let in_first = map_state(&start, &s1)?;
    claims.push(passive_active_claim(
        "second-frame boost",
        passive_active_gap(&conjugate_hamiltonian(&h_abs, &s1)?, &boost, &in_first, 2.0, 0.25)?,
    ));
    Ok(claims)
}
