//! Exhaustive ground truth.
//!
//! Walks every tuple of a complete residue system and substitutes it
//! directly. Nothing here goes through the solver code paths: the
//! evaluation and the odometer are local to this module.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::congruence::LinearCongruence;
use crate::error::{Error, Result};
use crate::solution::SolutionSet;
use crate::system::CongruenceSystem;

/// Default cap on the number of candidate tuples.
pub const DEFAULT_SEARCH_BOUND: u64 = 10_000_000;

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub set: SolutionSet,
    pub elapsed: Duration,
    /// Number of candidate tuples examined: `mⁿ`.
    pub search_space: BigInt,
}

/// One row as plain data: coefficients, rhs, positive modulus.
struct Row {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
    modulus: BigInt,
}

impl Row {
    fn holds(&self, x: &[BigInt]) -> bool {
        let mut lhs = BigInt::zero();
        for (a, xi) in self.coeffs.iter().zip(x) {
            lhs += a * xi;
        }
        (lhs - &self.rhs).mod_floor(&self.modulus).is_zero()
    }
}

fn search(rows: &[Row], modulus: &BigInt, arity: usize, bound: u64) -> Result<OracleReport> {
    let start = Instant::now();
    let search_space: BigInt = Pow::pow(modulus, arity);
    if search_space > BigInt::from(bound) {
        return Err(Error::Capacity {
            count: search_space,
            cap: bound.into(),
        });
    }
    let total = search_space.to_u64().expect("bounded above");
    let mut set = SolutionSet::empty(modulus.clone(), arity);
    let mut x = vec![BigInt::zero(); arity];
    for _ in 0..total {
        if rows.iter().all(|r| r.holds(&x)) {
            set.insert(x.clone());
        }
        // Odometer, last coordinate fastest.
        for xi in x.iter_mut().rev() {
            *xi += 1;
            if &*xi < modulus {
                break;
            }
            xi.set_zero();
        }
    }
    Ok(OracleReport {
        set,
        elapsed: start.elapsed(),
        search_space,
    })
}

pub fn brute_force(c: &LinearCongruence) -> Result<OracleReport> {
    brute_force_bounded(c, DEFAULT_SEARCH_BOUND)
}

pub fn brute_force_bounded(c: &LinearCongruence, bound: u64) -> Result<OracleReport> {
    if c.modulus().is_zero() {
        return Err(Error::usage("exhaustive search needs a non-zero modulus"));
    }
    let modulus = c.modulus().abs();
    let row = Row {
        coeffs: c.coeffs().to_vec(),
        rhs: c.rhs().clone(),
        modulus: modulus.clone(),
    };
    search(&[row], &modulus, c.arity(), bound)
}

pub fn brute_force_system(sys: &CongruenceSystem) -> Result<OracleReport> {
    brute_force_system_bounded(sys, DEFAULT_SEARCH_BOUND)
}

/// Searches `[0, L)ⁿ` with `L` the lcm of the row moduli.
pub fn brute_force_system_bounded(sys: &CongruenceSystem, bound: u64) -> Result<OracleReport> {
    let rows: Vec<Row> = sys
        .rows()
        .iter()
        .map(|r| Row {
            coeffs: r.coeffs().to_vec(),
            rhs: r.rhs().clone(),
            modulus: r.modulus().abs(),
        })
        .collect();
    let modulus = rows
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(&r.modulus));
    search(&rows, &modulus, sys.arity(), bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big_vec;

    fn cong(coeffs: &[i64], rhs: i64, m: i64) -> LinearCongruence {
        LinearCongruence::from_i64(coeffs, rhs, m).unwrap()
    }

    #[test]
    fn single_congruence_examples() {
        let report = brute_force(&cong(&[2, 3], 2, 5)).unwrap();
        assert_eq!(report.search_space, BigInt::from(25));
        let listed: Vec<_> = report.set.iter().cloned().collect();
        let expected: Vec<_> = [[0, 4], [1, 0], [2, 1], [3, 2], [4, 3]].iter().map(|v| big_vec(v)).collect();
        assert_eq!(listed, expected);

        assert!(brute_force(&cong(&[2], 3, 4)).unwrap().set.is_empty());
        assert_eq!(brute_force(&cong(&[2, 7, -6], -3, 4)).unwrap().set.len(), 16);
    }

    #[test]
    fn errors() {
        assert!(matches!(brute_force(&cong(&[1], 0, 0)), Err(Error::Usage(_))));
        let err = brute_force_bounded(&cong(&[1, 1, 1], 0, 10), 999).unwrap_err();
        assert_eq!(err, Error::Capacity { count: 1000.into(), cap: 999.into() });
    }

    #[test]
    fn system_examples() {
        let sys = CongruenceSystem::from_rows(vec![cong(&[1, 1, 1], 0, 2), cong(&[0, -1, 1], 1, 3)]).unwrap();
        let report = brute_force_system(&sys).unwrap();
        assert_eq!(report.search_space, BigInt::from(216));
        assert_eq!(report.set.len(), 36);

        let sys = CongruenceSystem::from_rows(vec![cong(&[1], 0, 2), cong(&[1], 1, 2)]).unwrap();
        assert!(brute_force_system(&sys).unwrap().set.is_empty());

        let sys = CongruenceSystem::from_rows(vec![cong(&[1], 2, 3), cong(&[1], 3, 5)]).unwrap();
        let report = brute_force_system(&sys).unwrap();
        assert_eq!(report.set.modulus(), &BigInt::from(15));
        assert_eq!(report.set.iter().cloned().collect::<Vec<_>>(), vec![big_vec(&[8])]);
    }
}
