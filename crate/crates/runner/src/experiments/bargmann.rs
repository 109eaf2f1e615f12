//! E1: the translate/boost/translate back/boost back cycle and the relative
//! phase between two mass branches.

use qrf_core::model::Units;
use qrf_core::phase::{bargmann_cycle, bargmann_report, mass_superposition_relative_phase};
use qrf_core::Rational;

use super::Context;
use crate::error::Result;
use crate::report::Claim;
use crate::sampling::{nonzero_rational, positive_rational};

pub(crate) fn run(ctx: &Context) -> Result<Vec<Claim>> {
    let p = ctx.params;
    let a = ctx.rat(&p.a, (1, 1));
    let v = ctx.rat(&p.v, (1, 1));
    let m = ctx.rat(&p.m, (1, 1));
    let m2 = ctx.rat(&p.m2, (3, 1));
    let hbar = ctx.hbar();
    let units = ctx.units()?;
    let mut claims = Vec::new();

    let phase = bargmann_cycle(&a, &v, &m, &units)?;
    claims.push(Claim::exact("cycle phase = a v m/ħ", &(&a * &v * &m / &hbar), &phase));
    let report = bargmann_report(&a, &v, &[m.clone(), m2.clone()], &units)?;
    claims.push(Claim::exact("cycle product has no net shift or kick", &true, &report.is_cyclic()));
    let relative = mass_superposition_relative_phase(&a, &v, &m, &m2, &units)?;
    claims.push(Claim::exact(
        "relative phase of mass branches = a v Δm/ħ",
        &(&a * &v * (&m2 - &m) / &hbar),
        &relative,
    ));

    let n = ctx.samples(100);
    let mut rng = ctx.rng();
    let unit: Units<Rational> = Units::default();
    let (mut cycle_ok, mut relative_ok, mut scaling_ok) = (0, 0, 0);
    for _ in 0..n {
        let a = nonzero_rational(&mut rng);
        let v = nonzero_rational(&mut rng);
        let m = positive_rational(&mut rng);
        let m2 = positive_rational(&mut rng);
        let phase = bargmann_cycle(&a, &v, &m, &units)?;
        if phase == &a * &v * &m / &hbar {
            cycle_ok += 1;
        }
        if mass_superposition_relative_phase(&a, &v, &m, &m2, &units)? == &a * &v * (&m2 - &m) / &hbar {
            relative_ok += 1;
        }
        if &phase * &hbar == bargmann_cycle(&a, &v, &m, &unit)? {
            scaling_ok += 1;
        }
    }
    claims.push(Claim::sweep("random draws: cycle phase = a v m/ħ", cycle_ok, n));
    claims.push(Claim::sweep("random draws: relative phase = a v Δm/ħ", relative_ok, n));
    claims.push(Claim::sweep("random draws: ħ · phase independent of ħ", scaling_ok, n));
    Ok(claims)
}
