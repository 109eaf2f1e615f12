//! Quadratic Hamiltonians `H = ½ rᵀA r + b(t)ᵀ r + c(t) + Σ V(ℓᵀr + o(t))` and
//! their passive transformation under frame maps.

use std::fmt;

use crate::error::{Error, Result};
use crate::frames::map::AffineFrameMap;
use crate::linalg::{dot, Mat};
use crate::model::{CoordinateSystem, FrameTrajectory, Units};
use crate::phase::WeylElement;
use crate::poly::Polynomial;
use crate::scalar::{Real, Scalar};

/// One-dimensional potential profile `V(y)`.
#[derive(Clone, Debug, PartialEq)]
pub enum PotentialShape<T> {
    /// `V(y) = slope · y` (uniform force).
    Linear { slope: T },
    /// `V(y) = ½ stiffness · y²`.
    Harmonic { stiffness: T },
    /// `V(y) = −depth · exp(−y²/(2 width²))`; numerical only.
    Gaussian { depth: T, width: T },
    /// An unspecified profile carried symbolically.
    Opaque { name: String },
}

impl<T: Scalar> PotentialShape<T> {
    pub fn is_polynomial_degree_le_2(&self) -> bool {
        matches!(self, Self::Linear { .. } | Self::Harmonic { .. })
    }

    pub fn to_real<F: Real>(&self) -> PotentialShape<F> {
        match self {
            Self::Linear { slope } => PotentialShape::Linear { slope: slope.to_real() },
            Self::Harmonic { stiffness } => PotentialShape::Harmonic {
                stiffness: stiffness.to_real(),
            },
            Self::Gaussian { depth, width } => PotentialShape::Gaussian {
                depth: depth.to_real(),
                width: width.to_real(),
            },
            Self::Opaque { name } => PotentialShape::Opaque { name: name.clone() },
        }
    }
}

impl<F: Real> PotentialShape<F> {
    /// `None` for opaque profiles, which have no numerical value.
    pub fn value(&self, y: F) -> Option<F> {
        let half = F::from_f64(0.5).unwrap();
        match self {
            Self::Linear { slope } => Some(*slope * y),
            Self::Harmonic { stiffness } => Some(half * *stiffness * y * y),
            Self::Gaussian { depth, width } => {
                Some(-*depth * (-(y * y) / (*width * *width + *width * *width)).exp())
            }
            Self::Opaque { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PotentialTerm<T> {
    /// `ℓ`, zero on every momentum axis.
    pub direction: Vec<T>,
    pub offset: Polynomial<T>,
    pub shape: PotentialShape<T>,
}

impl<T: Scalar> PotentialTerm<T> {
    pub fn new(direction: Vec<T>, shape: PotentialShape<T>) -> Self {
        Self {
            direction,
            offset: Polynomial::zero(),
            shape,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticHamiltonian<T> {
    pub cs: CoordinateSystem,
    pub a: Mat<T>,
    pub b: Vec<Polynomial<T>>,
    pub c: Polynomial<T>,
    pub potentials: Vec<PotentialTerm<T>>,
}

impl<T: Scalar> QuadraticHamiltonian<T> {
    pub fn zero(cs: CoordinateSystem) -> Self {
        let n = cs.dimension();
        Self {
            cs,
            a: Mat::zeros(n, n),
            b: vec![Polynomial::zero(); n],
            c: Polynomial::zero(),
            potentials: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.cs.dimension()
    }

    /// Adds `coef · r_i r_j` (for `i == j`, `coef · r_i²`).
    pub fn add_quadratic(&mut self, i: usize, j: usize, coef: T) -> &mut Self {
        if i == j {
            let two = T::one() + T::one();
            self.a[(i, i)] = self.a[(i, i)].clone() + two * coef;
        } else {
            self.a[(i, j)] = self.a[(i, j)].clone() + coef.clone();
            self.a[(j, i)] = self.a[(j, i)].clone() + coef;
        }
        self
    }

    /// Adds `p_k² / 2m` for particle `k`.
    pub fn add_kinetic(&mut self, particle: usize, mass: &T) -> &mut Self {
        let i = self.cs.momentum_index(particle);
        self.a[(i, i)] = self.a[(i, i)].clone() + T::one() / mass.clone();
        self
    }

    pub fn add_linear(&mut self, i: usize, coef: Polynomial<T>) -> &mut Self {
        self.b[i] = &self.b[i] + &coef;
        self
    }

    pub fn add_potential(&mut self, term: PotentialTerm<T>) -> Result<&mut Self> {
        if term.direction.len() != self.dimension() {
            return Err(Error::Dimension {
                expected: self.dimension(),
                got: term.direction.len(),
            });
        }
        if term
            .direction
            .iter()
            .enumerate()
            .any(|(i, l)| !CoordinateSystem::is_position(i) && !l.is_zero())
        {
            return Err(Error::InvalidParameter(
                "potential argument must involve positions only".into(),
            ));
        }
        self.potentials.push(term);
        Ok(self)
    }

    /// Single free particle `p²/2m`.
    pub fn free_particle(label: &str, mass: &T) -> Self {
        let mut h = Self::zero(CoordinateSystem::new([label]));
        h.add_kinetic(0, mass);
        h
    }

    /// Frame `S` (mass `M`) in potential `V(X)` plus free particle `P` (mass `m`).
    pub fn frame_and_particle(big: &T, small: &T, v: Option<PotentialShape<T>>) -> Self {
        let mut h = Self::zero(CoordinateSystem::new(["S", "P"]));
        h.add_kinetic(0, big).add_kinetic(1, small);
        if let Some(shape) = v {
            h.add_potential(PotentialTerm::new(unit(4, 0), shape)).unwrap();
        }
        h
    }

    /// Two frames `S1`, `S2` interacting through `V(X₂ − X₁)` plus a free particle `P`.
    pub fn three_body(m1: &T, m2: &T, m: &T, v: Option<PotentialShape<T>>) -> Self {
        let mut h = Self::zero(CoordinateSystem::new(["S1", "S2", "P"]));
        h.add_kinetic(0, m1).add_kinetic(1, m2).add_kinetic(2, m);
        if let Some(shape) = v {
            let mut dir = vec![T::zero(); 6];
            dir[2] = T::one();
            dir[0] = -T::one();
            h.add_potential(PotentialTerm::new(dir, shape)).unwrap();
        }
        h
    }

    /// Quadratic form with polynomial-degree-≤2 potentials absorbed into `(A, b, c)`.
    /// Other potentials are returned untouched.
    pub fn absorb_polynomial_potentials(&self) -> (Mat<T>, Vec<Polynomial<T>>, Polynomial<T>, Vec<&PotentialTerm<T>>) {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        let mut c = self.c.clone();
        let mut rest = Vec::new();
        let n = self.dimension();
        for term in &self.potentials {
            let l = &term.direction;
            match &term.shape {
                PotentialShape::Linear { slope } => {
                    for i in 0..n {
                        b[i] = &b[i] + &Polynomial::constant(slope.clone() * l[i].clone());
                    }
                    c = &c + &term.offset.scale(slope);
                }
                PotentialShape::Harmonic { stiffness } => {
                    let two = T::one() + T::one();
                    for i in 0..n {
                        for j in 0..n {
                            a[(i, j)] = a[(i, j)].clone() + stiffness.clone() * l[i].clone() * l[j].clone();
                        }
                        b[i] = &b[i] + &term.offset.scale(&(stiffness.clone() * l[i].clone()));
                    }
                    c = &c + &(&term.offset * &term.offset).scale(&(stiffness.clone() / two));
                }
                _ => rest.push(term),
            }
        }
        (a, b, c, rest)
    }

    pub fn to_real<F: Real>(&self) -> QuadraticHamiltonian<F> {
        QuadraticHamiltonian {
            cs: self.cs.clone(),
            a: self.a.to_real(),
            b: self.b.iter().map(Polynomial::to_real).collect(),
            c: self.c.to_real(),
            potentials: self
                .potentials
                .iter()
                .map(|p| PotentialTerm {
                    direction: p.direction.iter().map(|x| x.to_real()).collect(),
                    offset: p.offset.to_real(),
                    shape: p.shape.to_real(),
                })
                .collect(),
        }
    }

    /// Same Hamiltonian with the quadratic coefficient `A_ij` (and `A_ji`) cleared.
    pub fn without_quadratic(&self, i: usize, j: usize) -> Self {
        let mut h = self.clone();
        h.a[(i, j)] = T::zero();
        h.a[(j, i)] = T::zero();
        h
    }

    /// Relabels the coordinate system, keeping every coefficient.
    pub fn relabel(mut self, cs: CoordinateSystem) -> Self {
        assert_eq!(cs.dimension(), self.dimension());
        self.cs = cs;
        self
    }
}

pub(crate) fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

/// Rewrites `H` in the target coordinates of a time-independent map by
/// substituting `r = S⁻¹(r' − d)`.
pub fn conjugate_hamiltonian<T: Scalar>(
    h: &QuadraticHamiltonian<T>,
    map: &AffineFrameMap<T>,
) -> Result<QuadraticHamiltonian<T>> {
    if h.dimension() != map.dimension() {
        return Err(Error::Dimension {
            expected: map.dimension(),
            got: h.dimension(),
        });
    }
    if !map.is_time_independent() {
        return Err(Error::UnsupportedGenerator(format!(
            "map `{}` depends on time; use the displacement-generator transform",
            map.name
        )));
    }
    let n = h.dimension();
    let s_inv = map.linear().inverse()?;
    let d: Vec<T> = map.offset().iter().map(|p| p.coeff(0)).collect();
    // r = T r' + e
    let e: Vec<T> = s_inv.mul_vec(&d).into_iter().map(|x| -x).collect();
    let tt = s_inv.transpose();
    let a = &(&tt * &h.a) * &s_inv;
    let ae = h.a.mul_vec(&e);
    // b' = Tᵀ(A e + b)
    let b: Vec<Polynomial<T>> = (0..n)
        .map(|i| {
            (0..n).fold(Polynomial::zero(), |acc, k| {
                let inner = &h.b[k] + &Polynomial::constant(ae[k].clone());
                &acc + &inner.scale(&tt[(i, k)])
            })
        })
        .collect();
    let two = T::one() + T::one();
    let mut c = &h.c + &Polynomial::constant(dot(&e, &ae) / two);
    for k in 0..n {
        c = &c + &h.b[k].scale(&e[k]);
    }
    let mut potentials = Vec::with_capacity(h.potentials.len());
    for term in &h.potentials {
        let direction = tt.mul_vec(&term.direction);
        if direction
            .iter()
            .enumerate()
            .any(|(i, l)| !CoordinateSystem::is_position(i) && !l.is_zero())
        {
            return Err(Error::InvalidParameter(format!(
                "map `{}` makes a potential momentum dependent",
                map.name
            )));
        }
        potentials.push(PotentialTerm {
            direction,
            offset: &term.offset + &Polynomial::constant(dot(&term.direction, &e)),
            shape: term.shape.clone(),
        });
    }
    Ok(QuadraticHamiltonian {
        cs: map.target().clone(),
        a,
        b,
        c,
        potentials,
    })
}

/// Transformed Hamiltonian `H' = H(f⁻¹(r')) + iħ𝒢∂ₜ𝒢†` for a displacement
/// generator acting on one particle.
///
/// With `x' = x − X`, `p' = p − K`, the extra term works out to
/// `ħφ̇ − Ẋ(p' + K) + K̇x'`.
pub fn passive_hamiltonian_timedep<T: Scalar>(
    h: &QuadraticHamiltonian<T>,
    generator: &WeylElement<T>,
    particle: usize,
    units: &Units<T>,
) -> Result<QuadraticHamiltonian<T>> {
    if particle >= h.cs.particle_count() {
        return Err(Error::UnsupportedGenerator(format!(
            "generator targets particle {particle}, Hamiltonian has {}",
            h.cs.particle_count()
        )));
    }
    let n = h.dimension();
    let (ix, ip) = (h.cs.position_index(particle), h.cs.momentum_index(particle));
    let mut delta = vec![Polynomial::<T>::zero(); n];
    delta[ix] = generator.shift.clone();
    delta[ip] = generator.kick.clone();

    // r = r' + δ(t)
    let mut b = h.b.clone();
    for i in 0..n {
        for j in [ix, ip] {
            b[i] = &b[i] + &delta[j].scale(&h.a[(i, j)]);
        }
    }
    let two = T::one() + T::one();
    let mut c = h.c.clone();
    for i in [ix, ip] {
        c = &c + &(&h.b[i] * &delta[i]);
        for j in [ix, ip] {
            c = &c + &(&delta[i] * &delta[j]).scale(&(h.a[(i, j)].clone() / two.clone()));
        }
    }
    let potentials = h
        .potentials
        .iter()
        .map(|term| PotentialTerm {
            direction: term.direction.clone(),
            offset: &term.offset + &delta[ix].scale(&term.direction[ix]),
            shape: term.shape.clone(),
        })
        .collect();

    let x_dot = generator.shift.derivative();
    let k_dot = generator.kick.derivative();
    b[ix] = &b[ix] + &k_dot;
    b[ip] = &b[ip] - &x_dot;
    c = &(&c + &generator.phase.derivative().scale(units.hbar())) - &(&x_dot * &generator.kick);

    Ok(QuadraticHamiltonian {
        cs: h.cs.clone(),
        a: h.a.clone(),
        b,
        c,
        potentials,
    })
}

/// `(p' − αmẊ)²/2m + (1−α)mẌx'`.
pub fn alpha_hamiltonian<T: Scalar>(mass: &T, traj: &FrameTrajectory<T>, alpha: &T) -> QuadraticHamiltonian<T> {
    let mut h = QuadraticHamiltonian::free_particle("P'", mass);
    let one = T::one();
    let two = T::one() + T::one();
    let v = traj.velocity();
    h.add_linear(0, traj.acceleration().scale(&((one - alpha.clone()) * mass.clone())));
    h.add_linear(1, v.scale(&(-alpha.clone())));
    h.c = (&v * &v).scale(&(alpha.clone() * alpha.clone() * mass.clone() / two));
    h
}

impl<T: Scalar> fmt::Display for QuadraticHamiltonian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.cs.axes().iter().map(ToString::to_string).collect();
        let n = self.dimension();
        let two = T::one() + T::one();
        let mut terms: Vec<String> = Vec::new();
        for i in 0..n {
            for j in i..n {
                let coef = if i == j {
                    self.a[(i, i)].clone() / two.clone()
                } else {
                    self.a[(i, j)].clone()
                };
                if coef.is_zero() {
                    continue;
                }
                let mono = if i == j {
                    format!("{}^2", names[i])
                } else {
                    format!("{}*{}", names[i], names[j])
                };
                terms.push(format!("({coef})*{mono}"));
            }
        }
        for (i, b) in self.b.iter().enumerate() {
            if !b.is_zero() {
                terms.push(format!("({b})*{}", names[i]));
            }
        }
        for term in &self.potentials {
            let mut arg: Vec<String> = term
                .direction
                .iter()
                .enumerate()
                .filter(|(_, l)| !l.is_zero())
                .map(|(i, l)| {
                    if l.is_one() {
                        names[i].clone()
                    } else {
                        format!("({l})*{}", names[i])
                    }
                })
                .collect();
            if !term.offset.is_zero() {
                arg.push(format!("({})", term.offset));
            }
            let arg = arg.join(" + ");
            terms.push(match &term.shape {
                PotentialShape::Linear { slope } => format!("({slope})*[{arg}]"),
                PotentialShape::Harmonic { stiffness } => format!("({stiffness})/2*[{arg}]^2"),
                PotentialShape::Gaussian { depth, width } => {
                    format!("-({depth})*exp(-[{arg}]^2/(2*({width})^2))")
                }
                PotentialShape::Opaque { name } => format!("{name}({arg})"),
            });
        }
        if !self.c.is_zero() {
            terms.push(format!("({})", self.c));
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
