//! E4: composing two Galilean generators against the generator of the summed
//! trajectory, checked three independent ways.

use qrf_core::linalg::Mat;
use qrf_core::model::{FrameTrajectory, Units};
use qrf_core::phase::{compose, composition_phase, WeylElement};
use qrf_core::poly::Polynomial;
use qrf_core::Rational;

use super::Context;
use crate::error::Result;
use crate::report::Claim;
use crate::sampling::{positive_rational, rational, trajectory};

/// `[[1, K, ħφ], [0, 1, X], [0, 0, 1]]`, a faithful matrix image of the element at `t`.
fn heisenberg_matrix(u: &WeylElement<Rational>, t: &Rational, hbar: &Rational) -> Mat<Rational> {
    let (x, k, phi) = u.at(t);
    let (zero, one) = (Rational::from_integer(0.into()), Rational::from_integer(1.into()));
    Mat::from_rows(vec![
        vec![one.clone(), k, hbar * phi],
        vec![zero.clone(), one.clone(), x],
        vec![zero.clone(), zero, one],
    ])
}

/// `(m/ħ)(X₁Ẋ₂ − ∫₀ᵗ Ẋ₁Ẋ₂)`.
fn by_hand(m: &Rational, x1: &FrameTrajectory<Rational>, x2: &FrameTrajectory<Rational>, hbar: &Rational) -> Polynomial<Rational> {
    let cross = x1.position() * &x2.velocity();
    let overlap = (&x1.velocity() * &x2.velocity()).integral();
    (&cross - &overlap).scale(&(m / hbar))
}

pub(crate) fn run(ctx: &Context) -> Result<Vec<Claim>> {
    let hbar = ctx.hbar();
    let units = ctx.units()?;
    let unit: Units<Rational> = Units::default();
    let n = ctx.samples(100);
    let mut rng = ctx.rng();
    let (mut generators, mut law, mut hand, mut matrix, mut scaling) = (0, 0, 0, 0, 0);
    for _ in 0..n {
        let m = positive_rational(&mut rng);
        let x1 = trajectory(&mut rng);
        let x2 = trajectory(&mut rng);
        let t = rational(&mut rng);
        let g1 = WeylElement::galilean(&m, &x1, &units);
        let g2 = WeylElement::galilean(&m, &x2, &units);
        let both = WeylElement::galilean(&m, &x1.sum(&x2), &units);
        let product = compose(&g2, &g1, &units);
        if product.shift == both.shift && product.kick == both.kick {
            generators += 1;
        }
        let excess = &product.phase - &both.phase;
        let theta = composition_phase(&m, &x1, &x2, &units);
        if excess == theta {
            law += 1;
        }
        if theta == by_hand(&m, &x1, &x2, &hbar) {
            hand += 1;
        }
        let lhs = &heisenberg_matrix(&g2, &t, &hbar) * &heisenberg_matrix(&g1, &t, &hbar);
        if lhs == heisenberg_matrix(&product, &t, &hbar) {
            matrix += 1;
        }
        if theta.scale(&hbar) == composition_phase(&m, &x1, &x2, &unit) {
            scaling += 1;
        }
    }
    Ok(vec![
        Claim::sweep("G(X₂)G(X₁) has the shift and kick of G(X₁+X₂)", generators, n),
        Claim::sweep("G(X₂)G(X₁) = e^{iΘ_m} G(X₁+X₂) with Θ_m from θ differences", law, n),
        Claim::sweep("Θ_m = (m/ħ)(X₁Ẋ₂ − ∫Ẋ₁Ẋ₂)", hand, n),
        Claim::sweep("composition agrees with the 3×3 Heisenberg-group matrix product", matrix, n),
        Claim::sweep("ħ · Θ_m independent of ħ", scaling, n),
    ])
}
