//! Symplectic-affine frame maps, commutators of mixed coordinate sets, and the
//! passive transformation of quadratic Hamiltonians.

pub mod dynamics;
pub mod hamiltonian;
pub mod map;
pub mod masses;

pub use dynamics::{heisenberg_acceleration, heisenberg_velocity, time_derivative, LinearForm};
pub use hamiltonian::{
    alpha_hamiltonian, conjugate_hamiltonian, passive_hamiltonian_timedep, PotentialShape,
    PotentialTerm, QuadraticHamiltonian,
};
pub use map::{builtin_map, check_canonical, mixed_commutator, AffineFrameMap, BuiltinMap};
pub use masses::{reduced_mass, DerivedMasses};
