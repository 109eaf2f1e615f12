//! Displacement unitaries with scalar phases and their composition cocycle.
//!
//! Every element is kept in the normal-ordered form
//!
//! ```text
//! U = e^{iφ(t)} · e^{-i X(t) p̂/ħ} · e^{i K(t) x̂/ħ}
//! ```
//!
//! Moving the kick of `U2` past the shift of `U1` with `[x̂, p̂] = iħ` gives
//! `e^{iK₂x̂/ħ} e^{-iX₁p̂/ħ} = e^{iK₂X₁/ħ} e^{-iX₁p̂/ħ} e^{iK₂x̂/ħ}`, hence
//! `U2·U1 = (X₁+X₂, K₁+K₂, φ₁+φ₂+K₂X₁/ħ)`.

use crate::error::{Error, Result};
use crate::grid::{GridState, Observable};
use crate::model::{FrameTrajectory, ParticleSpec, Units};
use crate::poly::Polynomial;
use crate::scalar::{Real, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct WeylElement<T> {
    pub shift: Polynomial<T>,
    pub kick: Polynomial<T>,
    /// Radians, never reduced modulo 2π.
    pub phase: Polynomial<T>,
    pub mass_tag: Option<String>,
}

impl<T: Scalar> WeylElement<T> {
    pub fn new(shift: Polynomial<T>, kick: Polynomial<T>, phase: Polynomial<T>) -> Self {
        Self {
            shift,
            kick,
            phase,
            mass_tag: None,
        }
    }

    pub fn identity() -> Self {
        Self::new(Polynomial::zero(), Polynomial::zero(), Polynomial::zero())
    }

    /// Pure translation `e^{-iXp̂/ħ}`.
    pub fn translation(shift: Polynomial<T>) -> Self {
        Self::new(shift, Polynomial::zero(), Polynomial::zero())
    }

    /// Pure kick `e^{iKx̂/ħ}`.
    pub fn kick_only(kick: Polynomial<T>) -> Self {
        Self::new(Polynomial::zero(), kick, Polynomial::zero())
    }

    /// The composite Galilean generator `e^{-iXp̂/ħ} e^{imẊx̂/ħ} e^{iθ(X)}` with
    /// `θ(X) = (m/2ħ)∫_0^t Ẋ²`. The mass is not required to be positive here.
    pub fn galilean(mass: &T, traj: &FrameTrajectory<T>, units: &Units<T>) -> Self {
        let two = T::one() + T::one();
        let theta = traj
            .velocity_squared_integral()
            .scale(&(mass.clone() / (two * units.hbar().clone())));
        Self::new(
            traj.position().clone(),
            traj.velocity().scale(mass),
            theta,
        )
    }

    pub fn with_mass_tag(mut self, tag: impl Into<String>) -> Self {
        self.mass_tag = Some(tag.into());
        self
    }

    pub fn is_identity(&self) -> bool {
        self.shift.is_zero() && self.kick.is_zero() && self.phase.is_zero()
    }

    /// True when shift and kick vanish identically in `t`.
    pub fn is_pure_phase(&self) -> bool {
        self.shift.is_zero() && self.kick.is_zero()
    }

    pub fn inverse(&self, units: &Units<T>) -> Self {
        let phase = &(&self.kick * &self.shift).scale(&(T::one() / units.hbar().clone())) - &self.phase;
        Self {
            shift: -&self.shift,
            kick: -&self.kick,
            phase,
            mass_tag: self.mass_tag.clone(),
        }
    }

    /// Shift, kick and phase at a given instant.
    pub fn at(&self, t: &T) -> (T, T, T) {
        (self.shift.eval(t), self.kick.eval(t), self.phase.eval(t))
    }
}

/// `weyl_from_trajectory`: the Galilean generator for a particle following a frame.
pub fn weyl_from_trajectory<T: Scalar>(
    particle: &ParticleSpec<T>,
    traj: &FrameTrajectory<T>,
    units: &Units<T>,
) -> WeylElement<T> {
    WeylElement::galilean(particle.mass(), traj, units).with_mass_tag(particle.label.clone())
}

/// Operator product `second · first` in normal order.
pub fn compose<T: Scalar>(
    second: &WeylElement<T>,
    first: &WeylElement<T>,
    units: &Units<T>,
) -> WeylElement<T> {
    let cross = (&second.kick * &first.shift).scale(&(T::one() / units.hbar().clone()));
    let mass_tag = match (&second.mass_tag, &first.mass_tag) {
        (Some(a), Some(b)) if a == b => Some(a.clone()),
        (Some(a), None) | (None, Some(a)) => Some(a.clone()),
        _ => None,
    };
    WeylElement {
        shift: &first.shift + &second.shift,
        kick: &first.kick + &second.kick,
        phase: &(&first.phase + &second.phase) + &cross,
        mass_tag,
    }
}

/// Product `U_n ··· U_2 U_1` of `[U_1, U_2, ..., U_n]`: the first element acts first.
pub fn compose_sequence<T: Scalar>(elements: &[WeylElement<T>], units: &Units<T>) -> WeylElement<T> {
    elements
        .iter()
        .fold(WeylElement::identity(), |acc, u| compose(u, &acc, units))
}

/// `Θ_m(X₁, X₂) = θ(X₁) + θ(X₂) − θ(X₁+X₂) + mX₁Ẋ₂/ħ`, written out directly.
pub fn composition_phase<T: Scalar>(
    mass: &T,
    first: &FrameTrajectory<T>,
    second: &FrameTrajectory<T>,
    units: &Units<T>,
) -> Polynomial<T> {
    let two = T::one() + T::one();
    let theta = |x: &FrameTrajectory<T>| {
        x.velocity_squared_integral()
            .scale(&(mass.clone() / (two.clone() * units.hbar().clone())))
    };
    let both = first.sum(second);
    let cross = (first.position() * &second.velocity()).scale(&(mass.clone() / units.hbar().clone()));
    &(&(&theta(first) + &theta(second)) - &theta(&both)) + &cross
}

#[derive(Clone, Debug, PartialEq)]
pub struct MassPhase<T> {
    pub mass: T,
    pub phase: Polynomial<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleReport<T> {
    pub net_shift: Polynomial<T>,
    pub net_kick: Polynomial<T>,
    pub global_phase: Polynomial<T>,
    pub per_mass_phases: Vec<MassPhase<T>>,
}

impl<T: Scalar> CycleReport<T> {
    pub fn is_cyclic(&self) -> bool {
        self.net_shift.is_zero() && self.net_kick.is_zero()
    }
}

/// Reduces a phase into `[0, 2π)` for display. Exact values stay unreduced elsewhere.
pub fn wrap_phase<T: Scalar>(phase: &T) -> f64 {
    phase.to_real::<f64>().rem_euclid(std::f64::consts::TAU)
}

fn check_cyclic<T: Scalar>(u: &WeylElement<T>) -> Result<()> {
    if u.is_pure_phase() {
        Ok(())
    } else {
        Err(Error::NonCyclic {
            net_shift: u.shift.to_string(),
            net_kick: u.kick.to_string(),
        })
    }
}

/// The four Galilean factors of the cyclic translation/boost sequence in the
/// order they act: translate by `a`, boost by `vt`, translate back, boost back.
pub fn bargmann_factors<T: Scalar>(a: &T, v: &T, mass: &T, units: &Units<T>) -> Vec<WeylElement<T>> {
    [
        FrameTrajectory::constant(a.clone()),
        FrameTrajectory::uniform(v.clone()),
        FrameTrajectory::constant(-a.clone()),
        FrameTrajectory::uniform(-v.clone()),
    ]
    .iter()
    .map(|x| WeylElement::galilean(mass, x, units))
    .collect()
}

/// Net phase of `G_{-vt} G_{-a} G_{vt} G_a` for mass `m`; equals `avm/ħ`.
pub fn bargmann_cycle<T: Scalar>(a: &T, v: &T, mass: &T, units: &Units<T>) -> Result<T> {
    let product = compose_sequence(&bargmann_factors(a, v, mass, units), units);
    check_cyclic(&product)?;
    if !product.phase.is_constant() {
        return Err(Error::NonCyclic {
            net_shift: "0".into(),
            net_kick: format!("0 (time-dependent phase {})", product.phase),
        });
    }
    Ok(product.phase.coeff(0))
}

/// Relative phase acquired by the mass-`m2` branch against the mass-`m1` branch.
pub fn mass_superposition_relative_phase<T: Scalar>(
    a: &T,
    v: &T,
    m1: &T,
    m2: &T,
    units: &Units<T>,
) -> Result<T> {
    Ok(bargmann_cycle(a, v, m2, units)? - bargmann_cycle(a, v, m1, units)?)
}

/// Runs the Bargmann cycle once per mass channel and collects the phases.
pub fn bargmann_report<T: Scalar>(a: &T, v: &T, masses: &[T], units: &Units<T>) -> Result<CycleReport<T>> {
    let mut per_mass_phases = Vec::with_capacity(masses.len());
    let mut net_shift = Polynomial::zero();
    let mut net_kick = Polynomial::zero();
    for m in masses {
        let product = compose_sequence(&bargmann_factors(a, v, m, units), units);
        check_cyclic(&product)?;
        net_shift = product.shift.clone();
        net_kick = product.kick.clone();
        per_mass_phases.push(MassPhase {
            mass: m.clone(),
            phase: product.phase,
        });
    }
    // Common phase of all channels; only differences between channels are observable.
    let global_phase = per_mass_phases
        .first()
        .map(|p| p.phase.clone())
        .unwrap_or_default();
    Ok(CycleReport {
        net_shift,
        net_kick,
        global_phase,
        per_mass_phases,
    })
}

/// Report for an arbitrary product of elements (first acts first).
pub fn cycle_report<T: Scalar>(elements: &[WeylElement<T>], units: &Units<T>) -> CycleReport<T> {
    let product = compose_sequence(elements, units);
    CycleReport {
        net_shift: product.shift,
        net_kick: product.kick,
        global_phase: product.phase,
        per_mass_phases: Vec::new(),
    }
}

/// Applies a cyclic product actively to a grid state factor by factor and
/// returns `⟨obs⟩` before and after.
///
/// The product must be a pure phase as a function of `t`; shifts at time `t`
/// must land on whole grid cells.
pub fn cyclic_expectation_invariance<T: Scalar, F: Real>(
    elements: &[WeylElement<T>],
    state: &GridState<F>,
    obs: &Observable,
    t: &T,
    units: &Units<T>,
) -> Result<(F, F, GridState<F>)> {
    let product = compose_sequence(elements, units);
    check_cyclic(&product)?;
    let hbar: F = units.hbar().to_real();
    let before = state.expectation_with_hbar(obs, hbar)?;
    let after_state = crate::grid::apply_weyl_product(state, elements, t, units)?;
    let after = after_state.expectation_with_hbar(obs, hbar)?;
    Ok((before, after, after_state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::Rational;

    fn one() -> Units<Rational> {
        Units::default()
    }

    fn c(n: i64, d: i64) -> Polynomial<Rational> {
        Polynomial::constant(ratio(n, d))
    }

    #[test]
    fn galilean_generator_examples() {
        let u = one();
        let p1 = ParticleSpec::new("P", ratio(1, 1)).unwrap();
        assert!(weyl_from_trajectory(&p1, &FrameTrajectory::at_rest(), &u).is_identity());

        let p2 = ParticleSpec::new("P", ratio(2, 1)).unwrap();
        let g = weyl_from_trajectory(&p2, &FrameTrajectory::uniform(ratio(3, 1)), &u);
        assert_eq!(g.at(&ratio(1, 1)), (ratio(3, 1), ratio(6, 1), ratio(9, 1)));
        assert_eq!(g.mass_tag.as_deref(), Some("P"));

        let a = weyl_from_trajectory(&p1, &FrameTrajectory::constant(ratio(5, 2)), &u);
        assert_eq!(a.at(&ratio(7, 1)), (ratio(5, 2), ratio(0, 1), ratio(0, 1)));
    }

    #[test]
    fn composition_basics() {
        let u = one();
        let x = WeylElement::new(c(1, 2), c(3, 1), c(-1, 5));
        assert_eq!(compose(&WeylElement::identity(), &x, &u), x);
        assert_eq!(compose(&x, &WeylElement::identity(), &u), x);
        let t1 = WeylElement::translation(c(1, 3));
        let t2 = WeylElement::translation(c(2, 7));
        assert_eq!(compose(&t2, &t1, &u), WeylElement::translation(c(13, 21)));
        assert!(compose(&x, &x.inverse(&u), &u).is_identity());
        assert!(compose(&x.inverse(&u), &x, &u).is_identity());
    }

    #[test]
    fn boost_after_translation_excess_phase_is_av() {
        let u = one();
        let m = ratio(1, 1);
        let a = ratio(3, 2);
        let v = ratio(-2, 5);
        let xa = FrameTrajectory::constant(a.clone());
        let xv = FrameTrajectory::uniform(v.clone());
        let product = compose(
            &WeylElement::galilean(&m, &xv, &u),
            &WeylElement::galilean(&m, &xa, &u),
            &u,
        );
        let direct = WeylElement::galilean(&m, &xa.sum(&xv), &u);
        assert_eq!(product.shift, direct.shift);
        assert_eq!(product.kick, direct.kick);
        assert_eq!(&product.phase - &direct.phase, c(-3, 5));
    }

    #[test]
    fn bargmann_examples() {
        let u = one();
        let r = |n, d| ratio(n, d);
        assert_eq!(bargmann_cycle(&r(0, 1), &r(4, 1), &r(1, 1), &u).unwrap(), r(0, 1));
        assert_eq!(bargmann_cycle(&r(4, 1), &r(0, 1), &r(1, 1), &u).unwrap(), r(0, 1));
        assert_eq!(bargmann_cycle(&r(1, 1), &r(1, 1), &r(1, 1), &u).unwrap(), r(1, 1));
        assert_eq!(bargmann_cycle(&r(2, 1), &r(3, 1), &r(1, 2), &u).unwrap(), r(3, 1));
    }

    #[test]
    fn relative_phase_examples() {
        let u = one();
        let r = |n, d| ratio(n, d);
        let rel = |a, v, m1, m2| mass_superposition_relative_phase(&a, &v, &m1, &m2, &u).unwrap();
        assert_eq!(rel(r(2, 1), r(5, 1), r(3, 1), r(3, 1)), r(0, 1));
        assert_eq!(rel(r(1, 1), r(1, 1), r(1, 1), r(3, 1)), r(2, 1));
        assert_eq!(rel(r(1, 2), r(4, 1), r(0, 1), r(5, 1)), r(10, 1));
    }

    #[test]
    fn wrong_factor_order_is_not_cyclic() {
        let u = one();
        let m = ratio(1, 1);
        let mut factors = bargmann_factors(&ratio(1, 1), &ratio(1, 1), &m, &u);
        factors.remove(3);
        assert!(matches!(
            check_cyclic(&compose_sequence(&factors, &u)),
            Err(Error::NonCyclic { .. })
        ));
    }

    #[test]
    fn report_per_mass() {
        let u = one();
        let masses = [ratio(1, 1), ratio(3, 1)];
        let rep = bargmann_report(&ratio(1, 1), &ratio(1, 1), &masses, &u).unwrap();
        assert!(rep.is_cyclic());
        assert_eq!(rep.per_mass_phases[1].phase, c(3, 1));
        assert!((wrap_phase(&ratio(7, 1)) - (7.0 - std::f64::consts::TAU)).abs() < 1e-15);
    }
}
