//! E7: an atom that decays into a field mode. Tracing out the field leaves a
//! mixture with no interference contrast, while the same amplitudes on the
//! atom alone show full contrast.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex;
use qrf_core::scalar::ratio;
use qrf_core::Rational;

use super::{f, Context};
use crate::decay::{purity, reduced_atom_state, visibility, visibility_squared, DecayState};
use crate::error::Result;
use crate::report::Claim;
use crate::sampling::rational;
use crate::tolerances::DECAY_FLOAT;

/// The last two arguments are the expected purity and contrast visibility.
fn float_claims(label: &str, a: f64, b: f64, theta: f64, purity_expected: f64, contrast_expected: f64) -> Vec<Claim> {
    let s = DecayState::from_angle(a, b, theta);
    let rho = reduced_atom_state(&s.entangled());
    let contrast = reduced_atom_state(&s.contrast());
    vec![
        Claim::absolute(format!("{label}: purity = a⁴ + b⁴"), purity_expected, purity(&rho), DECAY_FLOAT),
        Claim::absolute(format!("{label}: visibility"), 0.0, visibility(&rho), DECAY_FLOAT),
        Claim::absolute(format!("{label}: contrast visibility = 2ab"), contrast_expected, visibility(&contrast), DECAY_FLOAT),
    ]
}

pub(crate) fn run(ctx: &Context) -> Result<Vec<Claim>> {
    let n = ctx.samples(50);
    let mut rng = ctx.rng();
    let zero = ratio(0, 1);
    let (mut normalized, mut pure, mut blind, mut contrast) = (0, 0, 0, 0);
    for _ in 0..n {
        let s = DecayState::rational(&rational(&mut rng), &rational(&mut rng));
        if s.normalization_defects() == (zero.clone(), zero.clone()) {
            normalized += 1;
        }
        let rho = reduced_atom_state(&s.entangled());
        let a2 = &s.a * &s.a;
        let b2 = &s.b * &s.b;
        if purity(&rho) == &a2 * &a2 + &b2 * &b2 {
            pure += 1;
        }
        if visibility_squared(&rho) == zero && rho[0][1] == Complex::new(zero.clone(), zero.clone()) {
            blind += 1;
        }
        let two_ab: Rational = ratio(2, 1) * &s.a * &s.b;
        if visibility_squared(&reduced_atom_state(&s.contrast())) == &two_ab * &two_ab {
            contrast += 1;
        }
    }
    let mut claims = vec![
        Claim::sweep("random exact states: a² + b² = 1 and |e^{iθ}| = 1", normalized, n),
        Claim::sweep("random exact states: purity = a⁴ + b⁴", pure, n),
        Claim::sweep("random exact states: reduced off-diagonal and visibility = 0", blind, n),
        Claim::sweep("random exact states: contrast visibility² = (2ab)²", contrast, n),
    ];
    claims.extend(float_claims("a = 1, b = 0", 1.0, 0.0, 0.0, 1.0, 0.0));
    claims.extend(float_claims("a = b = 1/√2, θ = 0.7", FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.7, 0.5, 1.0));
    if let Some(a) = &ctx.params.amplitude {
        let a = f(&a.0);
        let b = (1.0 - a * a).sqrt();
        claims.extend(float_claims(&format!("a = {a}"), a, b, 1.3, a.powi(4) + b.powi(4), 2.0 * a * b));
    }
    Ok(claims)
}
