//! Displacement algebra checked against a 3×3 upper-triangular matrix model of
//! the Heisenberg group, built from nilpotent exponentials.

use proptest::prelude::*;
use qrf_core::linalg::Mat;
use qrf_core::model::{FrameTrajectory, Units};
use qrf_core::phase::{bargmann_cycle, compose, composition_phase, mass_superposition_relative_phase, WeylElement};
use qrf_core::poly::Polynomial;
use qrf_core::scalar::ratio;
use qrf_core::Rational;

/// `exp(N)` for a strictly upper-triangular 3×3 `N` (so `N³ = 0`).
fn expn(n: &Mat<Rational>) -> Mat<Rational> {
    let n2 = n * n;
    let half = ratio(1, 2);
    &(&Mat::identity(3) + n) + &n2.scale(&half)
}

fn e(i: usize, j: usize, c: Rational) -> Mat<Rational> {
    Mat::from_fn(3, 3, |r, s| if (r, s) == (i, j) { c.clone() } else { ratio(0, 1) })
}

/// `exp(ħφ E₁₃) exp(X E₂₃) exp(K E₁₂)` at time `t`.
fn model(u: &WeylElement<Rational>, t: &Rational, units: &Units<Rational>) -> Mat<Rational> {
    let (x, k, phi) = u.at(t);
    let c = expn(&e(0, 2, units.hbar().clone() * phi));
    let s = expn(&e(1, 2, x));
    let kk = expn(&e(0, 1, k));
    &(&c * &s) * &kk
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn polynomial() -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec(rational(), 0..4).prop_map(Polynomial::new)
}

fn element() -> impl Strategy<Value = WeylElement<Rational>> {
    (polynomial(), polynomial(), polynomial()).prop_map(|(x, k, p)| WeylElement::new(x, k, p))
}

fn trajectory() -> impl Strategy<Value = FrameTrajectory<Rational>> {
    prop::collection::vec(rational(), 0..4).prop_map(FrameTrajectory::new)
}

fn units() -> impl Strategy<Value = Units<Rational>> {
    prop_oneof![Just(ratio(1, 1)), Just(ratio(1, 137)), (1i64..=9, 1i64..=9).prop_map(|(n, d)| ratio(n, d))]
        .prop_map(|h| Units::new(h).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn compose_matches_matrix_product(u1 in element(), u2 in element(), t in rational(), hb in units()) {
        let lhs = model(&compose(&u2, &u1, &hb), &t, &hb);
        let rhs = &model(&u2, &t, &hb) * &model(&u1, &t, &hb);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn associativity(u1 in element(), u2 in element(), u3 in element(), hb in units()) {
        let left = compose(&u3, &compose(&u2, &u1, &hb), &hb);
        let right = compose(&compose(&u3, &u2, &hb), &u1, &hb);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_is_exact(u in element(), hb in units()) {
        prop_assert!(compose(&u, &u.inverse(&hb), &hb).is_identity());
        prop_assert!(compose(&u.inverse(&hb), &u, &hb).is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn theta_law(x1 in trajectory(), x2 in trajectory(), m in rational(), t in rational(), hb in units()) {
        let g1 = WeylElement::galilean(&m, &x1, &hb);
        let g2 = WeylElement::galilean(&m, &x2, &hb);
        let g12 = WeylElement::galilean(&m, &x1.sum(&x2), &hb);
        let product = compose(&g2, &g1, &hb);
        prop_assert_eq!(&product.shift, &g12.shift);
        prop_assert_eq!(&product.kick, &g12.kick);
        let excess = &product.phase - &g12.phase;
        prop_assert_eq!(&excess, &composition_phase(&m, &x1, &x2, &hb));

        // same excess read off the matrix model at time t: ħΔφ = c(M₂M₁) − c(M₁₂)
        let mm = &model(&g2, &t, &hb) * &model(&g1, &t, &hb);
        let m12 = model(&g12, &t, &hb);
        prop_assert_eq!((mm[(0, 2)].clone() - m12[(0, 2)].clone()) / hb.hbar().clone(), excess.eval(&t));

        // hand-expanded form: m/ħ (X₁Ẋ₂ − ∫Ẋ₁Ẋ₂)
        let v1 = x1.velocity();
        let v2 = x2.velocity();
        let hand = (&(x1.position() * &v2) - &(&v1 * &v2).integral()).scale(&(m.clone() / hb.hbar().clone()));
        prop_assert_eq!(excess, hand);
    }

    #[test]
    fn bargmann_is_linear_in_each_argument(
        a in rational(), b in rational(), v in rational(), w in rational(), m in rational(), n in rational(), hb in units()
    ) {
        let f = |a: &Rational, v: &Rational, m: &Rational| bargmann_cycle(a, v, m, &hb).unwrap();
        prop_assert_eq!(f(&(a.clone() + b.clone()), &v, &m), f(&a, &v, &m) + f(&b, &v, &m));
        prop_assert_eq!(f(&a, &(v.clone() + w.clone()), &m), f(&a, &v, &m) + f(&a, &w, &m));
        prop_assert_eq!(f(&a, &v, &(m.clone() + n.clone())), f(&a, &v, &m) + f(&a, &v, &n));
        prop_assert_eq!(f(&a, &v, &m), a.clone() * v.clone() * m.clone() / hb.hbar().clone());
        prop_assert_eq!(
            mass_superposition_relative_phase(&a, &v, &m, &n, &hb).unwrap(),
            a * v * (n - m) / hb.hbar().clone()
        );
    }
}

#[test]
fn boost_after_translation_excess_is_av() {
    let u = Units::default();
    let (a, v) = (ratio(3, 2), ratio(-2, 5));
    let ga = WeylElement::galilean(&ratio(1, 1), &FrameTrajectory::constant(a.clone()), &u);
    let gv = WeylElement::galilean(&ratio(1, 1), &FrameTrajectory::uniform(v.clone()), &u);
    let both = WeylElement::galilean(&ratio(1, 1), &FrameTrajectory::new(vec![a.clone(), v.clone()]), &u);
    let excess = &compose(&gv, &ga, &u).phase - &both.phase;
    assert_eq!(excess, Polynomial::constant(a * v));
}
