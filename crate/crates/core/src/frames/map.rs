//! Symplectic-affine coordinate maps `r' = S r + d(t)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::frames::masses::{reduced_mass, DerivedMasses};
use crate::linalg::{dot, Mat};
use crate::model::{symplectic_form, CoordinateSystem, FrameTrajectory, ParticleSpec};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct AffineFrameMap<T> {
    pub name: String,
    s: Mat<T>,
    d: Vec<Polynomial<T>>,
    source: CoordinateSystem,
    target: CoordinateSystem,
    jacobian: T,
}

impl<T: Scalar> AffineFrameMap<T> {
    pub fn new(
        name: impl Into<String>,
        s: Mat<T>,
        d: Vec<Polynomial<T>>,
        source: CoordinateSystem,
        target: CoordinateSystem,
    ) -> Result<Self> {
        let n = source.dimension();
        if s.rows() != n || s.cols() != n || d.len() != n || target.dimension() != n {
            return Err(Error::Dimension {
                expected: n,
                got: s.rows(),
            });
        }
        if s.determinant().is_zero() {
            return Err(Error::SingularMap);
        }
        let positions: Vec<usize> = (0..source.particle_count()).map(|k| 2 * k).collect();
        let jacobian = s.select(&positions, &positions).determinant().abs();
        Ok(Self {
            name: name.into(),
            s,
            d,
            source,
            target,
            jacobian,
        })
    }

    pub fn identity(cs: &CoordinateSystem) -> Self {
        let n = cs.dimension();
        Self::new("identity", Mat::identity(n), vec![Polynomial::zero(); n], cs.clone(), cs.clone())
            .expect("identity is invertible")
    }

    pub fn linear(&self) -> &Mat<T> {
        &self.s
    }

    pub fn offset(&self) -> &[Polynomial<T>] {
        &self.d
    }

    pub fn source(&self) -> &CoordinateSystem {
        &self.source
    }

    pub fn target(&self) -> &CoordinateSystem {
        &self.target
    }

    /// Absolute determinant of the position block of `S`.
    pub fn jacobian(&self) -> &T {
        &self.jacobian
    }

    pub fn dimension(&self) -> usize {
        self.source.dimension()
    }

    pub fn is_time_independent(&self) -> bool {
        self.d.iter().all(Polynomial::is_constant)
    }

    /// Expansion of target axis `i` in source coordinates (row `i` of `S`).
    pub fn row(&self, i: usize) -> Vec<T> {
        self.s.row(i)
    }

    pub fn inverse(&self) -> Result<Self> {
        let s_inv = self.s.inverse()?;
        let d = (0..self.dimension())
            .map(|i| {
                (0..self.dimension()).fold(Polynomial::zero(), |acc, j| {
                    &acc - &self.d[j].scale(&s_inv[(i, j)])
                })
            })
            .collect();
        Self::new(
            format!("{}^-1", self.name),
            s_inv,
            d,
            self.target.clone(),
            self.source.clone(),
        )
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Self) -> Result<Self> {
        if first.target.dimension() != self.source.dimension() {
            return Err(Error::Dimension {
                expected: self.source.dimension(),
                got: first.target.dimension(),
            });
        }
        let s = &self.s * &first.s;
        let d = (0..self.dimension())
            .map(|i| {
                (0..self.dimension()).fold(self.d[i].clone(), |acc, j| {
                    &acc + &first.d[j].scale(&self.s[(i, j)])
                })
            })
            .collect();
        Self::new(
            format!("{}∘{}", self.name, first.name),
            s,
            d,
            first.source.clone(),
            self.target.clone(),
        )
    }

    /// Maps a phase-space point at time `t`.
    pub fn apply(&self, r: &[T], t: &T) -> Vec<T> {
        self.s
            .mul_vec(r)
            .into_iter()
            .zip(&self.d)
            .map(|(x, d)| x + d.eval(t))
            .collect()
    }
}

/// `(canonical, S J Sᵀ − J)`.
pub fn check_canonical<T: Scalar>(map: &AffineFrameMap<T>) -> (bool, Mat<T>) {
    let j = symplectic_form::<T>(&map.source);
    let witness = &(&(&map.s * &j) * &map.s.transpose()) - &j;
    (witness.is_zero(), witness)
}

/// Coefficient of `iħ` in `[r'_a, r'_b]` for axes taken from two maps sharing a source.
pub fn mixed_commutator<T: Scalar>(
    map_a: &AffineFrameMap<T>,
    axis_a: usize,
    map_b: &AffineFrameMap<T>,
    axis_b: usize,
) -> Result<T> {
    if map_a.source != map_b.source {
        return Err(Error::InvalidParameter(
            "maps must share a source coordinate system".into(),
        ));
    }
    let n = map_a.dimension();
    if axis_a >= n || axis_b >= n {
        return Err(Error::Dimension {
            expected: n,
            got: axis_a.max(axis_b) + 1,
        });
    }
    let j = symplectic_form::<T>(&map_a.source);
    let u = map_a.row(axis_a);
    let w = map_b.row(axis_b);
    Ok(dot(&u, &j.mul_vec(&w)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinMap {
    /// `x' = x − X(t)`, `p' = p`.
    ShiftOnly,
    /// `x' = x − X(t)`, `p' = p − mẊ(t)`.
    GalileiFull,
    /// `X' = X`, `P' = P + p`, `x' = x − X`, `p' = p`.
    AharonovKaufherr,
    /// Centre of mass plus coordinates of the particle relative to the frame.
    RelativeCm,
    /// Three-body set built on the light frame, canonical.
    Set1,
    /// Three-body set with rescaled relative positions (non-unit Jacobian).
    Set2,
    /// From the first frame's relative description to the second frame's.
    DoubleBoost,
}

impl BuiltinMap {
    pub const ALL: [BuiltinMap; 7] = [
        Self::ShiftOnly,
        Self::GalileiFull,
        Self::AharonovKaufherr,
        Self::RelativeCm,
        Self::Set1,
        Self::Set2,
        Self::DoubleBoost,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::ShiftOnly => "shift_only",
            Self::GalileiFull => "galilei_full",
            Self::AharonovKaufherr => "aharonov_kaufherr",
            Self::RelativeCm => "relative_cm",
            Self::Set1 => "set1",
            Self::Set2 => "set2",
            Self::DoubleBoost => "double_boost",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Self::ShiftOnly | Self::GalileiFull => 1,
            Self::AharonovKaufherr | Self::RelativeCm => 2,
            Self::Set1 | Self::Set2 | Self::DoubleBoost => 3,
        }
    }

    pub fn needs_trajectory(self) -> bool {
        matches!(self, Self::ShiftOnly | Self::GalileiFull)
    }
}

impl fmt::Display for BuiltinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s.replace('-', "_"))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown map {s:?}")))
    }
}

/// Row builder: linear combination over source axes.
struct Rows<T> {
    n: usize,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> Rows<T> {
    fn new(n: usize) -> Self {
        Self { n, rows: Vec::new() }
    }

    fn push(&mut self, terms: &[(usize, T)]) {
        let mut row = vec![T::zero(); self.n];
        for (i, c) in terms {
            row[*i] = row[*i].clone() + c.clone();
        }
        self.rows.push(row);
    }

    fn build(self) -> Mat<T> {
        Mat::from_rows(self.rows)
    }
}

/// Exact `S`, `d(t)` of one of the named transformations.
///
/// Particle order: one particle `[P]`; two particles `[S, P]` (frame first);
/// three particles `[S1, S2, P]`. `DoubleBoost` acts on the `Set1` coordinates.
pub fn builtin_map<T: Scalar>(
    kind: BuiltinMap,
    particles: &[ParticleSpec<T>],
    traj: Option<&FrameTrajectory<T>>,
) -> Result<AffineFrameMap<T>> {
    if particles.len() != kind.arity() {
        return Err(Error::Arity {
            map: kind.name().into(),
            expected: kind.arity(),
            got: particles.len(),
        });
    }
    let source = CoordinateSystem::new(particles.iter().map(|p| p.label.clone()));
    let target = source.primed("'");
    let n = source.dimension();
    let one = T::one;
    let zero_offset = || vec![Polynomial::zero(); n];
    let mass = |k: usize| particles[k].mass().clone();

    let (s, d) = match kind {
        BuiltinMap::ShiftOnly | BuiltinMap::GalileiFull => {
            let traj = traj.ok_or_else(|| Error::MissingTrajectory(kind.name().into()))?;
            let kick = if kind == BuiltinMap::GalileiFull {
                -traj.velocity().scale(&mass(0))
            } else {
                Polynomial::zero()
            };
            (Mat::identity(2), vec![-traj.position().clone(), kick])
        }
        BuiltinMap::AharonovKaufherr => {
            let mut r = Rows::new(n);
            r.push(&[(0, one())]);
            r.push(&[(1, one()), (3, one())]);
            r.push(&[(2, one()), (0, -one())]);
            r.push(&[(3, one())]);
            (r.build(), zero_offset())
        }
        BuiltinMap::RelativeCm => {
            let (big, small) = (mass(0), mass(1));
            let total = big.clone() + small.clone();
            let mu = reduced_mass(&big, &small);
            let mut r = Rows::new(n);
            r.push(&[(0, big.clone() / total.clone()), (2, small.clone() / total)]);
            r.push(&[(1, one()), (3, one())]);
            r.push(&[(2, one()), (0, -one())]);
            r.push(&[(3, mu.clone() / small), (1, -mu / big)]);
            (r.build(), zero_offset())
        }
        BuiltinMap::Set1 | BuiltinMap::Set2 => {
            let dm = DerivedMasses::three_body(mass(0), mass(1), mass(2));
            let (m1, m2, m, mt) = (dm.m1.clone(), dm.m2.clone(), dm.m.clone(), dm.total.clone());
            // indices: X1 0, P1 1, X2 2, P2 3, x 4, p 5
            let cm = [(0, m1.clone() / mt.clone()), (2, m2.clone() / mt.clone()), (4, m.clone() / mt.clone())];
            let total_p = [(1, one()), (3, one()), (5, one())];
            let mut r = Rows::new(n);
            r.push(&cm);
            r.push(&total_p);
            if kind == BuiltinMap::Set1 {
                r.push(&[(2, one()), (0, -one())]);
                let f2 = m2.clone() / mt.clone();
                r.push(&[(3, one()), (1, -f2.clone()), (3, -f2.clone()), (5, -f2)]);
                r.push(&[(4, one()), (0, -one())]);
                let f = m.clone() / mt.clone();
                r.push(&[(5, one()), (1, -f.clone()), (3, -f.clone()), (5, -f)]);
            } else {
                // X2' = (M2/μ2)(X2 − X1'), x' = (m/μ)(x − X1')
                let k2 = m2.clone() / dm.mu2.clone();
                let mut x2: Vec<(usize, T)> = vec![(2, k2.clone())];
                x2.extend(cm.iter().map(|(i, c)| (*i, -(k2.clone() * c.clone()))));
                r.push(&x2);
                r.push(&[(3, dm.mu2.clone() / m2.clone()), (1, -(dm.mu2.clone() / m1.clone()))]);
                let k = m.clone() / dm.mu.clone();
                let mut xp: Vec<(usize, T)> = vec![(4, k.clone())];
                xp.extend(cm.iter().map(|(i, c)| (*i, -(k.clone() * c.clone()))));
                r.push(&xp);
                r.push(&[(5, dm.mu.clone() / m.clone()), (1, -(dm.mu.clone() / m1))]);
            }
            (r.build(), zero_offset())
        }
        BuiltinMap::DoubleBoost => {
            // acts on (X1', P1', X2', P2', x', p'), keeps the centre of mass
            let (m2, m) = (mass(1), mass(2));
            let pair = m.clone() + m2.clone();
            let mu_prime = reduced_mass(&m, &m2);
            let mut r = Rows::new(n);
            r.push(&[(0, one())]);
            r.push(&[(1, one())]);
            r.push(&[(4, m.clone() / pair.clone()), (2, m2.clone() / pair)]);
            r.push(&[(5, one()), (3, one())]);
            r.push(&[(4, one()), (2, -one())]);
            r.push(&[(5, mu_prime.clone() / m), (3, -mu_prime / m2)]);
            let src = source.primed("'");
            let tgt = source.primed("''");
            return AffineFrameMap::new(kind.name(), r.build(), zero_offset(), src, tgt);
        }
    };
    AffineFrameMap::new(kind.name(), s, d, source, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::Rational;

    fn particles(masses: &[(i64, i64)]) -> Vec<ParticleSpec<Rational>> {
        let labels = ["S1", "S2", "P"];
        let labels: &[&str] = match masses.len() {
            1 => &["P"],
            2 => &["S", "P"],
            _ => &labels,
        };
        masses
            .iter()
            .zip(labels)
            .map(|(&(n, d), l)| ParticleSpec::new(*l, ratio(n, d)).unwrap())
            .collect()
    }

    #[test]
    fn galilei_full_offsets() {
        let traj = FrameTrajectory::uniform(ratio(1, 1));
        let map = builtin_map(BuiltinMap::GalileiFull, &particles(&[(1, 1)]), Some(&traj)).unwrap();
        assert_eq!(*map.linear(), Mat::identity(2));
        assert_eq!(map.offset()[0], Polynomial::new(vec![ratio(0, 1), ratio(-1, 1)]));
        assert_eq!(map.offset()[1], Polynomial::constant(ratio(-1, 1)));
        assert!(check_canonical(&map).0);
    }

    #[test]
    fn aharonov_kaufherr_is_mass_independent() {
        let a = builtin_map(BuiltinMap::AharonovKaufherr, &particles(&[(3, 1), (1, 1)]), None).unwrap();
        let b = builtin_map(BuiltinMap::AharonovKaufherr, &particles(&[(7, 2), (5, 9)]), None).unwrap();
        assert_eq!(a.linear(), b.linear());
        let r = |n| ratio(n, 1);
        assert_eq!(a.row(1), vec![r(0), r(1), r(0), r(1)]);
        assert_eq!(a.row(2), vec![r(-1), r(0), r(1), r(0)]);
        assert!(check_canonical(&a).0);
    }

    #[test]
    fn set2_relative_momentum_equal_masses() {
        let map = builtin_map(BuiltinMap::Set2, &particles(&[(1, 1), (1, 1), (1, 1)]), None).unwrap();
        // p' = μ(p/m − P1/M1), μ = 1/2
        let z = ratio(0, 1);
        assert_eq!(map.row(5), vec![z.clone(), ratio(-1, 2), z.clone(), z.clone(), z, ratio(1, 2)]);
    }

    #[test]
    fn builtin_maps_are_canonical() {
        let traj = FrameTrajectory::uniformly_accelerated(ratio(2, 1));
        for kind in BuiltinMap::ALL {
            let ps = match kind.arity() {
                1 => particles(&[(3, 2)]),
                2 => particles(&[(3, 1), (1, 2)]),
                _ => particles(&[(2, 1), (5, 3), (1, 4)]),
            };
            let map = builtin_map(kind, &ps, Some(&traj)).unwrap();
            let (ok, witness) = check_canonical(&map);
            assert!(ok, "{kind} not canonical:\n{witness}");
        }
    }

    #[test]
    fn identity_is_canonical_and_set_jacobians() {
        let cs = CoordinateSystem::new(["A", "B"]);
        assert!(check_canonical(&AffineFrameMap::<Rational>::identity(&cs)).0);
        let ps = particles(&[(2, 1), (5, 3), (1, 4)]);
        let s1 = builtin_map(BuiltinMap::Set1, &ps, None).unwrap();
        let s2 = builtin_map(BuiltinMap::Set2, &ps, None).unwrap();
        assert_eq!(*s1.jacobian(), ratio(1, 1));
        let dm = DerivedMasses::three_body(ratio(2, 1), ratio(5, 3), ratio(1, 4));
        assert_eq!(*s2.jacobian(), dm.gamma);
    }

    #[test]
    fn arity_and_trajectory_errors() {
        assert!(matches!(
            builtin_map(BuiltinMap::Set1, &particles(&[(1, 1)]), None),
            Err(Error::Arity { expected: 3, got: 1, .. })
        ));
        assert!(matches!(
            builtin_map(BuiltinMap::ShiftOnly, &particles(&[(1, 1)]), None),
            Err(Error::MissingTrajectory(_))
        ));
    }

    #[test]
    fn light_frame_commutators() {
        let ps = particles(&[(1, 1), (1, 1), (1, 1)]);
        let s1 = builtin_map(BuiltinMap::Set1, &ps, None).unwrap();
        let s2 = builtin_map(BuiltinMap::Set2, &ps, None).unwrap();
        assert_eq!(mixed_commutator(&s1, 4, &s1, 5).unwrap(), ratio(1, 1));
        assert_eq!(mixed_commutator(&s1, 2, &s2, 5).unwrap(), ratio(1, 2));

        let ps = particles(&[(3, 1), (1, 1), (1, 1)]);
        let s1 = builtin_map(BuiltinMap::Set1, &ps, None).unwrap();
        let s2 = builtin_map(BuiltinMap::Set2, &ps, None).unwrap();
        assert_eq!(mixed_commutator(&s1, 4, &s2, 3).unwrap(), ratio(1, 4));
    }

    #[test]
    fn inverse_and_composition() {
        let ps = particles(&[(2, 1), (5, 3), (1, 4)]);
        let s2 = builtin_map(BuiltinMap::Set2, &ps, None).unwrap();
        let round = s2.inverse().unwrap().after(&s2).unwrap();
        assert_eq!(*round.linear(), Mat::identity(6));
        let traj = FrameTrajectory::uniform(ratio(3, 1));
        let g = builtin_map(BuiltinMap::GalileiFull, &particles(&[(2, 1)]), Some(&traj)).unwrap();
        let back = g.inverse().unwrap().after(&g).unwrap();
        assert!(back.offset().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn double_boost_relative_coordinates_in_absolute_terms() {
        // x'' = x − X2, p'' = μ'(p/m − P2/M2) in lab coordinates
        let ps = particles(&[(2, 1), (5, 3), (1, 4)]);
        let set1 = builtin_map(BuiltinMap::Set1, &ps, None).unwrap();
        let boost = builtin_map(BuiltinMap::DoubleBoost, &ps, None).unwrap();
        let total = boost.after(&set1).unwrap();
        let z = ratio(0, 1);
        let one = ratio(1, 1);
        assert_eq!(total.row(4), vec![z.clone(), z.clone(), -one.clone(), z.clone(), one, z.clone()]);
        let mu_p = reduced_mass(&ratio(1, 4), &ratio(5, 3));
        assert_eq!(
            total.row(5),
            vec![z.clone(), z.clone(), z.clone(), -(mu_p.clone() / ratio(5, 3)), z, mu_p / ratio(1, 4)]
        );
    }
}
