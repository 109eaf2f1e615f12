//! Two-level atom emitting into a two-level field mode.
//!
//! Basis order of the 2⊗2 space: `|atom⟩|field⟩` with atom `0 = Mc²`,
//! `1 = mc²` and field `0 = vacuum`, `1 = ħω`. The energies are labels only.

use std::ops::Neg;

use num_complex::Complex;
use num_traits::{Float, Num};
use qrf_core::Rational;

/// `a|Mc²⟩|0⟩ + b e^{iθ}|mc²⟩|ħω⟩`. The phase is carried as the unit
/// complex number `e^{iθ}` so that rational states stay exact.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayState<T> {
    pub a: T,
    pub b: T,
    pub phase: Complex<T>,
}

pub type Density<T> = [[Complex<T>; 2]; 2];

impl<T: Clone + Num + Neg<Output = T>> DecayState<T> {
    pub fn new(a: T, b: T, phase: Complex<T>) -> Self {
        Self { a, b, phase }
    }

    /// `a² + b² − 1` and `|e^{iθ}|² − 1`.
    pub fn normalization_defects(&self) -> (T, T) {
        (
            self.a.clone() * self.a.clone() + self.b.clone() * self.b.clone() - T::one(),
            self.phase.norm_sqr() - T::one(),
        )
    }

    /// The entangled four-component state vector.
    pub fn entangled(&self) -> [Complex<T>; 4] {
        let zero = Complex::new(T::zero(), T::zero());
        [
            Complex::new(self.a.clone(), T::zero()),
            zero.clone(),
            zero,
            self.phase.clone() * self.b.clone(),
        ]
    }

    /// The same amplitudes on the atom alone, field in vacuum:
    /// `(a|Mc²⟩ + b e^{iθ}|mc²⟩)|0⟩`.
    pub fn contrast(&self) -> [Complex<T>; 4] {
        let zero = Complex::new(T::zero(), T::zero());
        [
            Complex::new(self.a.clone(), T::zero()),
            zero.clone(),
            self.phase.clone() * self.b.clone(),
            zero,
        ]
    }
}

impl DecayState<f64> {
    pub fn from_angle(a: f64, b: f64, theta: f64) -> Self {
        Self::new(a, b, Complex::from_polar(1.0, theta))
    }
}

impl DecayState<Rational> {
    /// Exact normalized state from two rationals through the rational
    /// parametrization of the unit circle: `(a, b) = ((1−s²), 2s)/(1+s²)`
    /// and `e^{iθ} = ((1−u²) + 2iu)/(1+u²)`.
    pub fn rational(s: &Rational, u: &Rational) -> Self {
        let circle = |t: &Rational| {
            let one = Rational::from_integer(1.into());
            let two = Rational::from_integer(2.into());
            let d = one.clone() + t * t;
            ((one - t * t) / d.clone(), two * t / d)
        };
        let (a, b) = circle(s);
        let (re, im) = circle(u);
        Self::new(a, b, Complex::new(re, im))
    }
}

/// Partial trace over the field of `|ψ⟩⟨ψ|`.
pub fn reduced_atom_state<T: Clone + Num + Neg<Output = T>>(psi: &[Complex<T>; 4]) -> Density<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut rho = [[zero.clone(), zero.clone()], [zero.clone(), zero]];
    for (i, row) in rho.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            for f in 0..2 {
                *entry = entry.clone() + psi[2 * i + f].clone() * psi[2 * j + f].conj();
            }
        }
    }
    rho
}

/// `Tr ρ²`.
pub fn purity<T: Clone + Num + Neg<Output = T>>(rho: &Density<T>) -> T {
    let mut acc = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            acc = acc + (rho[i][j].clone() * rho[j][i].clone()).re;
        }
    }
    acc
}

/// `(2|ρ₀₁|)²`, exact for rational states.
pub fn visibility_squared<T: Clone + Num + Neg<Output = T>>(rho: &Density<T>) -> T {
    let four = T::one() + T::one() + T::one() + T::one();
    four * rho[0][1].norm_sqr()
}

/// `2|ρ₀₁|`.
pub fn visibility<T: Float>(rho: &Density<T>) -> T {
    (T::one() + T::one()) * rho[0][1].norm()
}
