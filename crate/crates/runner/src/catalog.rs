//! Named Hamiltonians for `--show-hamiltonian`, produced by the frame algebra
//! from the absolute-coordinate Hamiltonian and the configured parameters.

use qrf_core::frames::{
    alpha_hamiltonian, builtin_map, conjugate_hamiltonian, passive_hamiltonian_timedep, BuiltinMap, PotentialShape,
    QuadraticHamiltonian,
};
use qrf_core::model::{FrameTrajectory, ParticleSpec, Units};
use qrf_core::phase::WeylElement;
use qrf_core::scalar::ratio;
use qrf_core::Rational;

use crate::config::{Params, Rat};
use crate::error::{Result, RunnerError};

pub const NAMES: [&str; 10] = [
    "free",
    "translated",
    "galilean",
    "alpha",
    "two_body",
    "aharonov_kaufherr",
    "relative_cm",
    "three_body",
    "set1",
    "set2",
];

fn get(r: &Option<Rat>, n: i64) -> Rational {
    r.as_ref().map(|r| r.0.clone()).unwrap_or_else(|| ratio(n, 1))
}

/// The Hamiltonian as a list of terms, one line per coordinate system.
pub fn show(name: &str, p: &Params) -> Result<String> {
    let hbar = get(&p.hbar, 1);
    let units = Units::new(hbar)?;
    let m = get(&p.m, 1);
    let g = get(&p.g, 2);
    let big = get(&p.big_mass, 3);
    let traj = FrameTrajectory::uniformly_accelerated(g.clone());
    let free = QuadraticHamiltonian::free_particle("P", &m);
    let two_body = QuadraticHamiltonian::frame_and_particle(&big, &m, Some(PotentialShape::Linear { slope: -(&big * &g) }));
    let pair = || -> Result<Vec<ParticleSpec<Rational>>> {
        Ok(vec![ParticleSpec::new("S", big.clone())?, ParticleSpec::new("P", m.clone())?])
    };
    let masses: Vec<Rational> = match &p.masses {
        Some(v) => v.iter().map(|r| r.0.clone()).collect(),
        None => vec![ratio(2, 1), ratio(3, 1), ratio(1, 1)],
    };
    let three = || QuadraticHamiltonian::three_body(&masses[0], &masses[1], &masses[2], Some(PotentialShape::Opaque { name: "V".into() }));
    let triple = || -> Result<Vec<ParticleSpec<Rational>>> {
        ["S1", "S2", "P"]
            .iter()
            .zip(&masses)
            .map(|(l, m)| Ok(ParticleSpec::new(*l, m.clone())?))
            .collect()
    };
    let h = match name {
        "free" => free,
        "translated" => passive_hamiltonian_timedep(&free, &WeylElement::translation(traj.position().clone()), 0, &units)?,
        "galilean" => passive_hamiltonian_timedep(&free, &WeylElement::galilean(&m, &traj, &units), 0, &units)?,
        "alpha" => {
            let a = p.alpha.as_ref().and_then(|v| v.first()).map(|r| r.0.clone()).unwrap_or_else(|| ratio(1, 2));
            alpha_hamiltonian(&m, &traj, &a)
        }
        "two_body" => two_body,
        "aharonov_kaufherr" => conjugate_hamiltonian(&two_body, &builtin_map(BuiltinMap::AharonovKaufherr, &pair()?, None)?)?,
        "relative_cm" => conjugate_hamiltonian(&two_body, &builtin_map(BuiltinMap::RelativeCm, &pair()?, None)?)?,
        "three_body" => three(),
        "set1" => conjugate_hamiltonian(&three(), &builtin_map(BuiltinMap::Set1, &triple()?, None)?)?,
        "set2" => conjugate_hamiltonian(&three(), &builtin_map(BuiltinMap::Set2, &triple()?, None)?)?,
        other => {
            return Err(RunnerError::Config(format!(
                "unknown Hamiltonian {other:?}; known: {}",
                NAMES.join(", ")
            )))
        }
    };
    Ok(format!("{name}: H = {h}"))
}
