//! Solvability, exact counting and full enumeration of multivariate linear
//! congruences `a₁x₁ + … + aₙxₙ ≡ b (mod m)` and of systems of them with
//! per-row moduli.
//!
//! All arithmetic is exact ([`num_bigint::BigInt`]). The [`oracle`] module
//! provides an exhaustive reference used throughout the tests.

pub mod congruence;
pub mod error;
pub mod intlinalg;
pub mod oracle;
pub mod solution;
pub mod system;

use num_bigint::BigInt;

pub use congruence::{LinearCongruence, SolutionCount};
pub use error::{Error, Result};
pub use intlinalg::{AffineLattice, BezoutCertificate};
pub use solution::{ParametricSolution, SolutionSet};
pub use system::{crt_compatible, solve_crt, CongruenceSystem, SystemSolution};

/// Converts small literals into big integers.
pub fn big_vec(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}
