use qrf_core::frames::{
    alpha_hamiltonian, builtin_map, conjugate_hamiltonian, BuiltinMap, PotentialShape, PotentialTerm,
    QuadraticHamiltonian,
};
use qrf_core::gaussian::{evolve, map_state, GaussianState, Integrator};
use qrf_core::grid::{
    apply_conditional_shift, make_gaussian, make_product_gaussian, GridAxis, GridSpec, GridState, ShiftDirection,
    SplitStepPropagator,
};
use qrf_core::model::{symplectic_form, FrameTrajectory, ParticleSpec};
use qrf_core::scalar::ratio;
use qrf_core::Rational;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}

fn assert_moments(grid: &GridState<f64>, g: &GaussianState<f64>, rel: f64) {
    let (mean, cov) = grid.moments(1.0);
    for i in 0..mean.len() {
        assert!(close(mean[i], g.mean[i], rel), "mean {i}: {} vs {}", mean[i], g.mean[i]);
        for j in 0..mean.len() {
            assert!(close(cov[(i, j)], g.cov[(i, j)], rel), "cov {i}{j}: {} vs {}", cov[(i, j)], g.cov[(i, j)]);
        }
    }
}

fn line() -> GridSpec<f64> {
    GridSpec::one_dim(GridAxis::new(-32.0, 32.0, 4096).unwrap())
}

fn oscillator(m: i64, k: i64) -> QuadraticHamiltonian<Rational> {
    let mut h = QuadraticHamiltonian::free_particle("P", &ratio(m, 1));
    h.add_potential(PotentialTerm::new(vec![ratio(1, 1), ratio(0, 1)], PotentialShape::Harmonic {
        stiffness: ratio(k, 1),
    }))
    .unwrap();
    h
}

#[test]
fn grid_tracks_gaussian_moments_in_one_dimension() {
    let traj = FrameTrajectory::uniformly_accelerated(ratio(2, 1));
    let mut cases: Vec<QuadraticHamiltonian<Rational>> = [ratio(0, 1), ratio(1, 2), ratio(1, 1)]
        .iter()
        .map(|a| alpha_hamiltonian(&ratio(1, 1), &traj, a))
        .collect();
    cases.push(QuadraticHamiltonian::free_particle("P", &ratio(3, 2)));
    for h in cases {
        let psi = make_gaussian(&line(), 0.5, 0.5, 1.0, 1.0).unwrap();
        let g0 = GaussianState::product(&[(0.5, 0.5, 1.0)], 1.0);
        let prop = SplitStepPropagator::new(&line(), &h, 1.0).unwrap();
        let gtraj = evolve(&g0, &h, 1.0, 0.125, Integrator::Exact).unwrap();
        let mut k = 0;
        let mut checked = 0;
        prop.evolve_observed(&psi, 1.0, 1e-3, |s| {
            if k % 125 == 0 {
                assert_moments(s, &gtraj.states[k / 125], 1e-6);
                checked += 1;
            }
            k += 1;
        })
        .unwrap();
        assert_eq!(checked, 9);
    }
}

#[test]
fn strang_error_is_second_order() {
    let h = oscillator(1, 4);
    let psi = make_gaussian(&line(), 1.0, 0.0, 0.7, 1.0).unwrap();
    let exact = evolve(&GaussianState::product(&[(1.0, 0.0, 0.7)], 1.0), &h, 1.0, 1.0, Integrator::Exact).unwrap();
    let prop = SplitStepPropagator::new(&line(), &h, 1.0).unwrap();
    let err = |dt: f64| {
        let s = prop.evolve(&psi, 1.0, dt).unwrap();
        (s.moments(1.0).0[0] - exact.last().mean[0]).abs()
    };
    let (e1, e2) = (err(0.02), err(0.01));
    let order = (e1 / e2).log2();
    assert!((order - 2.0).abs() < 0.1, "observed order {order} ({e1}, {e2})");
}

#[test]
fn unitarity_over_a_thousand_steps() {
    let traj = FrameTrajectory::uniformly_accelerated(ratio(2, 1));
    let h = alpha_hamiltonian(&ratio(1, 1), &traj, &ratio(1, 4));
    let psi = make_gaussian(&line(), 0.0, 0.0, 1.0, 1.0).unwrap();
    let s = SplitStepPropagator::new(&line(), &h, 1.0).unwrap().evolve(&psi, 1.0, 1e-3).unwrap();
    assert!((s.norm() - psi.norm()).abs() < 1e-10);
}

fn pair(m_big: &Rational, m: &Rational) -> Vec<ParticleSpec<Rational>> {
    vec![
        ParticleSpec::new("S", m_big.clone()).unwrap(),
        ParticleSpec::new("P", m.clone()).unwrap(),
    ]
}

fn triple() -> Vec<ParticleSpec<Rational>> {
    [("S1", ratio(2, 1)), ("S2", ratio(5, 3)), ("P", ratio(1, 2))]
        .into_iter()
        .map(|(l, m)| ParticleSpec::new(l, m).unwrap())
        .collect()
}

/// Transport-then-evolve against evolve-then-transport for every
/// time-independent builtin map.
#[test]
fn passive_and_active_pictures_agree() {
    let two = pair(&ratio(3, 1), &ratio(1, 1));
    let h2 = QuadraticHamiltonian::frame_and_particle(
        &ratio(3, 1),
        &ratio(1, 1),
        Some(PotentialShape::Harmonic { stiffness: ratio(2, 1) }),
    );
    let s2 = GaussianState::product(&[(0.5, 0.2, 0.8), (-1.0, 0.4, 1.1)], 1.0);
    let three = triple();
    let h3 = QuadraticHamiltonian::three_body(&ratio(2, 1), &ratio(5, 3), &ratio(1, 2), Some(PotentialShape::Harmonic {
        stiffness: ratio(3, 2),
    }));
    let s3 = GaussianState::product(&[(0.0, 0.1, 1.0), (2.0, -0.3, 0.6), (-1.0, 0.2, 0.9)], 1.0);

    let mut cases: Vec<(QuadraticHamiltonian<Rational>, GaussianState<f64>, qrf_core::frames::AffineFrameMap<Rational>)> = Vec::new();
    for kind in [BuiltinMap::AharonovKaufherr, BuiltinMap::RelativeCm] {
        cases.push((h2.clone(), s2.clone(), builtin_map(kind, &two, None).unwrap()));
    }
    for kind in [BuiltinMap::Set1, BuiltinMap::Set2] {
        cases.push((h3.clone(), s3.clone(), builtin_map(kind, &three, None).unwrap()));
    }
    let set1 = builtin_map(BuiltinMap::Set1, &three, None).unwrap();
    cases.push((
        conjugate_hamiltonian(&h3, &set1).unwrap(),
        map_state(&s3, &set1).unwrap(),
        builtin_map(BuiltinMap::DoubleBoost, &three, None).unwrap(),
    ));

    for (h, s, map) in cases {
        let hp = conjugate_hamiltonian(&h, &map).unwrap();
        let a = evolve(&s, &h, 2.0, 0.25, Integrator::Exact).unwrap();
        let b = evolve(&map_state(&s, &map).unwrap(), &hp, 2.0, 0.25, Integrator::Exact).unwrap();
        for (x, y) in a.states.iter().zip(&b.states) {
            let x = map_state(x, &map).unwrap();
            for i in 0..x.dimension() {
                assert!((x.mean[i] - y.mean[i]).abs() < 1e-9, "{}: mean {i}", map.name);
                for j in 0..x.dimension() {
                    assert!((x.cov[(i, j)] - y.cov[(i, j)]).abs() < 1e-9, "{}: cov {i}{j}", map.name);
                }
            }
        }
    }
}

/// The relative sector of the centre-of-mass/relative Hamiltonian is a free
/// particle of reduced mass, and decouples from the centre of mass.
#[test]
fn relative_sector_is_a_reduced_mass_particle() {
    for (mb, m) in [(ratio(3, 1), ratio(1, 1)), (ratio(7, 2), ratio(2, 9))] {
        let map = builtin_map(BuiltinMap::RelativeCm, &pair(&mb, &m), None).unwrap();
        let h = QuadraticHamiltonian::frame_and_particle(&mb, &m, None);
        let hp = conjugate_hamiltonian(&h, &map).unwrap();
        let j = symplectic_form::<Rational>(&hp.cs);
        let k = &j * &hp.a;
        let mu = mb.clone() * m.clone() / (mb.clone() + m.clone());
        let free = QuadraticHamiltonian::free_particle("P", &mu);
        let kf = &symplectic_form::<Rational>(&free.cs) * &free.a;
        assert_eq!(k.select(&[2, 3], &[2, 3]), kf);
        assert!(k.select(&[0, 1], &[2, 3]).is_zero());
        assert!(k.select(&[2, 3], &[0, 1]).is_zero());
        let total = QuadraticHamiltonian::free_particle("S", &(mb + m));
        assert_eq!(hp.a.select(&[0, 1], &[0, 1]), total.a);
    }
}

#[test]
fn conditional_shift_moves_moments_like_the_relative_map() {
    let ax = GridAxis::new(-16.0, 16.0, 256).unwrap();
    let spec = GridSpec::two_dim(ax.clone(), ax);
    let packets: [(f64, f64, f64); 2] = [(1.5, 0.3, 0.8), (-0.5, -0.2, 0.6)];
    let psi = make_product_gaussian(&spec, &packets, 1.0).unwrap();
    let shifted = apply_conditional_shift(&psi, ShiftDirection::Forward).unwrap();
    assert_eq!(apply_conditional_shift(&shifted, ShiftDirection::Inverse).unwrap(), psi);
    let mut a: Vec<_> = psi.psi.iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect();
    let mut b: Vec<_> = shifted.psi.iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect();
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);

    let ak = builtin_map(BuiltinMap::AharonovKaufherr, &pair(&ratio(1, 1), &ratio(1, 1)), None).unwrap();
    let predicted = map_state(&GaussianState::product(&packets, 1.0), &ak).unwrap();
    assert_moments(&shifted, &predicted, 1e-8);
    // the shift entangles: position covariance appears
    let (_, cov) = shifted.moments(1.0);
    assert!(cov[(0, 2)].abs() > 0.1);
}

#[test]
fn cross_momentum_term_propagates_on_two_dimensional_grids() {
    let ak = builtin_map(BuiltinMap::AharonovKaufherr, &pair(&ratio(3, 1), &ratio(1, 1)), None).unwrap();
    let h = QuadraticHamiltonian::frame_and_particle(&ratio(3, 1), &ratio(1, 1), Some(PotentialShape::Linear {
        slope: ratio(-3, 1),
    }));
    let hp = conjugate_hamiltonian(&h, &ak).unwrap();
    let ax = GridAxis::new(-16.0, 16.0, 256).unwrap();
    let spec = GridSpec::two_dim(ax.clone(), ax);
    let packets: [(f64, f64, f64); 2] = [(0.0, 0.0, 1.0), (0.0, 0.0, 1.0)];
    let psi = make_product_gaussian(&spec, &packets, 1.0).unwrap();
    let g0 = GaussianState::product(&packets, 1.0);
    let s = SplitStepPropagator::new(&spec, &hp, 1.0).unwrap().evolve(&psi, 1.0, 1e-2).unwrap();
    let g = evolve(&g0, &hp, 1.0, 1.0, Integrator::Exact).unwrap();
    assert_moments(&s, g.last(), 1e-6);
}
