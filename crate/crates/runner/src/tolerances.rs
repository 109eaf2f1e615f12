//! Every pass/fail threshold used by the experiments, in one place.

/// Grid fidelity after a cyclic product, and the allowed change of `⟨x⟩`,
/// `⟨p⟩`, `⟨p²⟩`. Shifts are exact index rotations, so only kick rounding remains.
pub const CYCLIC_GRID: f64 = 1e-10;

/// Relative error of a grid finite-difference acceleration.
pub const GRID_ACCELERATION_REL: f64 = 5e-3;

/// Absolute error of Gaussian-engine accelerations read off exact moments.
pub const GAUSSIAN_ACCELERATION: f64 = 1e-9;

/// Double-boost accelerations with no interaction.
pub const DOUBLE_BOOST_FREE: f64 = 1e-12;

/// Grid against Gaussian moments, relative with a unit floor.
pub const ORACLE_MOMENTS_REL: f64 = 1e-6;

/// Moments transported then evolved against evolved then transported.
pub const PASSIVE_ACTIVE: f64 = 1e-9;

/// Fidelity of the two frame-gauge final states once the known kick is undone.
pub const GAUGE_FIDELITY: f64 = 1e-6;

/// Floating checks of the decay model (irrational amplitudes).
pub const DECAY_FLOAT: f64 = 1e-12;

/// Norm drift over a full grid run.
pub const NORM_DRIFT: f64 = 1e-10;

/// `|a − b| ≤ tol · max(1, |b|)`.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

/// Double-boost relative acceleration against `−Ẍ₂` under a uniform force.
pub const DOUBLE_BOOST_LINEAR: f64 = 1e-9;
