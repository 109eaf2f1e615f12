//! Transformed Hamiltonians written out by hand, term by term. The
//! experiments compare these against what the frame algebra produces.

use qrf_core::frames::{DerivedMasses, PotentialShape, PotentialTerm, QuadraticHamiltonian};
use qrf_core::model::{CoordinateSystem, FrameTrajectory};
use qrf_core::poly::Polynomial;
use qrf_core::Scalar;

fn two<T: Scalar>() -> T {
    T::one() + T::one()
}

/// `½ c r_i²` convention of the quadratic form: adds `r_i²/(2·den)`.
fn kinetic<T: Scalar>(h: &mut QuadraticHamiltonian<T>, i: usize, den: &T) {
    h.add_quadratic(i, i, T::one() / (two::<T>() * den.clone()));
}

fn potential<T: Scalar>(h: &mut QuadraticHamiltonian<T>, direction: Vec<T>, shape: PotentialShape<T>) {
    h.add_potential(PotentialTerm::new(direction, shape))
        .expect("direction built on position axes");
}

fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

/// Translated frame only: `p²/2m − Ẋ p`.
pub fn shift_only_frame<T: Scalar>(m: &T, traj: &FrameTrajectory<T>) -> QuadraticHamiltonian<T> {
    let mut h = QuadraticHamiltonian::free_particle("P", m);
    h.add_linear(1, -traj.velocity());
    h
}

/// Translated and boosted frame: `p²/2m + mẌ x`.
pub fn galilean_frame<T: Scalar>(m: &T, traj: &FrameTrajectory<T>) -> QuadraticHamiltonian<T> {
    let mut h = QuadraticHamiltonian::free_particle("P", m);
    h.add_linear(0, traj.acceleration().scale(m));
    h
}

/// Frame-conditioned translation: `P'²/2M + p'²/2μ − P'p'/M + V(X')`.
pub fn aharonov_kaufherr<T: Scalar>(big: &T, m: &T, v: Option<PotentialShape<T>>) -> QuadraticHamiltonian<T> {
    let mu = big.clone() * m.clone() / (big.clone() + m.clone());
    let mut h = QuadraticHamiltonian::zero(CoordinateSystem::new(["S'", "P'"]));
    kinetic(&mut h, 1, big);
    kinetic(&mut h, 3, &mu);
    h.add_quadratic(1, 3, -(T::one() / big.clone()));
    if let Some(shape) = v {
        potential(&mut h, unit(4, 0), shape);
    }
    h
}

/// Centre of mass and relative coordinates in the field `V = −MgX`:
/// `P'²/2M_T + p'²/2μ − MgX' + μg x'`.
pub fn relative_in_gravity<T: Scalar>(big: &T, m: &T, g: &T) -> QuadraticHamiltonian<T> {
    let total = big.clone() + m.clone();
    let mu = big.clone() * m.clone() / total.clone();
    let mut h = QuadraticHamiltonian::zero(CoordinateSystem::new(["S'", "P'"]));
    kinetic(&mut h, 1, &total);
    kinetic(&mut h, 3, &mu);
    h.add_linear(0, Polynomial::constant(-(big.clone() * g.clone())));
    h.add_linear(2, Polynomial::constant(mu * g.clone()));
    h
}

/// First three-body set:
/// `P₁'²/2M_T + P₂'²/2μ₂ + p'²/2μ + P₂'p'/M₁ + V(X₂')`.
pub fn set1<T: Scalar>(m1: &T, m2: &T, m: &T, v: Option<PotentialShape<T>>) -> QuadraticHamiltonian<T> {
    let d = DerivedMasses::three_body(m1.clone(), m2.clone(), m.clone());
    let mut h = QuadraticHamiltonian::zero(CoordinateSystem::new(["S1'", "S2'", "P'"]));
    kinetic(&mut h, 1, &d.total);
    kinetic(&mut h, 3, &d.mu2);
    kinetic(&mut h, 5, &d.mu);
    h.add_quadratic(3, 5, T::one() / d.m1.clone());
    if let Some(shape) = v {
        potential(&mut h, unit(6, 2), shape);
    }
    h
}

/// Second three-body set:
/// `P₁'²/2M_T + γ(P₂'²/2μ₂ + p'²/2μ − P₂'p'/M₁) + V(X₂' + (μ/M₁)x')`.
pub fn set2<T: Scalar>(m1: &T, m2: &T, m: &T, v: Option<PotentialShape<T>>) -> QuadraticHamiltonian<T> {
    let d = DerivedMasses::three_body(m1.clone(), m2.clone(), m.clone());
    let mut h = QuadraticHamiltonian::zero(CoordinateSystem::new(["S1'", "S2'", "P'"]));
    kinetic(&mut h, 1, &d.total);
    kinetic(&mut h, 3, &(d.mu2.clone() / d.gamma.clone()));
    kinetic(&mut h, 5, &(d.mu.clone() / d.gamma.clone()));
    h.add_quadratic(3, 5, -(d.gamma.clone() / d.m1.clone()));
    if let Some(shape) = v {
        let mut dir = unit(6, 2);
        dir[4] = d.mu / d.m1;
        potential(&mut h, dir, shape);
    }
    h
}

/// The first set's relative Hamiltonian seen from the second frame, centre of
/// mass dropped: `P₂''²/2μ₂' + p''²/2μ' + V(X₂'' − m x''/(m+M₂))`.
pub fn double_boosted<T: Scalar>(m1: &T, m2: &T, m: &T, v: Option<PotentialShape<T>>) -> QuadraticHamiltonian<T> {
    let d = DerivedMasses::three_body(m1.clone(), m2.clone(), m.clone());
    let mut h = QuadraticHamiltonian::zero(CoordinateSystem::new(["S1''", "S2''", "P''"]));
    kinetic(&mut h, 3, &d.mu2_prime);
    kinetic(&mut h, 5, &d.mu_prime);
    if let Some(shape) = v {
        let mut dir = unit(6, 2);
        dir[4] = -(m.clone() / (m.clone() + m2.clone()));
        potential(&mut h, dir, shape);
    }
    h
}

/// Coefficient-level equality, coordinate labels ignored.
pub fn same_coefficients<T: Scalar>(a: &QuadraticHamiltonian<T>, b: &QuadraticHamiltonian<T>) -> bool {
    a.a == b.a && a.b == b.b && a.c == b.c && a.potentials == b.potentials
}

/// Equality after folding linear and harmonic potentials into `(A, b, c)`.
pub fn same_absorbed<T: Scalar>(a: &QuadraticHamiltonian<T>, b: &QuadraticHamiltonian<T>) -> bool {
    let (aa, ab, ac, ar) = a.absorb_polynomial_potentials();
    let (ba, bb, bc, br) = b.absorb_polynomial_potentials();
    aa == ba && ab == bb && ac == bc && ar == br
}
