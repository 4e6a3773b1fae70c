//! Systems of linear congruences with per-row moduli.
//!
//! Row `i` reads `aᵢ₁x₁ + … + aᵢₙxₙ ≡ bᵢ (mod mᵢ)`. The system is solvable
//! iff the integer system `aᵢ₁x₁ + … + aᵢₙxₙ − mᵢyᵢ = bᵢ` is, and its
//! solutions are periodic modulo `L = lcm(mᵢ)`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::congruence::LinearCongruence;
use crate::error::{Error, Result};
use crate::intlinalg::{divides, ext_gcd, lcm_vec, solve_diophantine_system, AffineLattice};
use crate::solution::{ParametricSolution, SolutionSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSystem {
    variables: Vec<String>,
    rows: Vec<LinearCongruence>,
}

/// All solutions of a system, as residues modulo the lcm of its moduli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSolution {
    pub modulus: BigInt,
    pub set: SolutionSet,
}

impl CongruenceSystem {
    pub fn new(variables: Vec<String>, rows: Vec<LinearCongruence>) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::usage("a system needs at least one congruence"))?;
        let n = first.arity();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.arity() != n) {
            return Err(Error::usage(format!(
                "row {} has {} unknowns, expected {n}",
                i + 1,
                row.arity()
            )));
        }
        if let Some(i) = rows.iter().position(|r| r.modulus().is_zero()) {
            return Err(Error::usage(format!("row {} has modulus 0", i + 1)));
        }
        if variables.len() != n {
            return Err(Error::usage(format!(
                "{} variable names for {n} unknowns",
                variables.len()
            )));
        }
        let distinct: HashSet<&String> = variables.iter().collect();
        if distinct.len() != variables.len() {
            return Err(Error::usage("duplicate variable names"));
        }
        Ok(CongruenceSystem { variables, rows })
    }

    /// Names the unknowns `x1, x2, …`.
    pub fn from_rows(rows: Vec<LinearCongruence>) -> Result<Self> {
        let n = rows.first().map_or(0, LinearCongruence::arity);
        Self::new((1..=n).map(|i| format!("x{i}")).collect(), rows)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn rows(&self) -> &[LinearCongruence] {
        &self.rows
    }

    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    /// `L = lcm(m₁, …, m_r)`, positive.
    pub fn lcm_modulus(&self) -> BigInt {
        let moduli: Vec<BigInt> = self.rows.iter().map(|r| r.modulus().clone()).collect();
        lcm_vec(&moduli).expect("moduli are non-zero")
    }

    pub fn is_satisfied_by(&self, x: &[BigInt]) -> bool {
        self.rows.iter().all(|r| r.is_satisfied_by(x))
    }

    /// The integer system over `(x₁, …, xₙ, y₁, …, y_r)` with each row
    /// normalized first.
    fn diophantine_form(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let n = self.arity();
        let r = self.rows.len();
        let mut matrix = Vec::with_capacity(r);
        let mut rhs = Vec::with_capacity(r);
        for (i, row) in self.rows.iter().enumerate() {
            let norm = row.normalize().expect("non-zero modulus");
            let mut line = norm.coeffs().to_vec();
            line.resize(n + r, BigInt::zero());
            line[n + i] = -norm.modulus();
            matrix.push(line);
            rhs.push(norm.rhs().clone());
        }
        (matrix, rhs)
    }

    fn integer_solutions(&self) -> Option<AffineLattice> {
        let (matrix, rhs) = self.diophantine_form();
        solve_diophantine_system(&matrix, &rhs)
            .expect("well-formed system")
            .map(|lattice| lattice.truncate(self.arity()))
    }

    pub fn is_solvable(&self) -> bool {
        self.integer_solutions().is_some()
    }

    /// Parametric solution modulo `L`, or `None` when unsolvable.
    pub fn general_solution(&self) -> Option<ParametricSolution> {
        let l = self.lcm_modulus();
        self.integer_solutions()
            .map(|lattice| ParametricSolution::from_lattice(&lattice, &l))
    }

    /// Exact number of distinct solutions modulo `L`, without enumerating.
    pub fn count_solutions(&self) -> BigInt {
        self.general_solution()
            .map_or_else(BigInt::zero, |form| form.distinct_count())
    }

    /// Every solution modulo `L`; `None` when the system is unsolvable.
    pub fn solve(&self, cap: u64) -> Result<Option<SystemSolution>> {
        let Some(form) = self.general_solution() else {
            return Ok(None);
        };
        let count = form.distinct_count();
        if count > BigInt::from(cap) {
            return Err(Error::Capacity {
                count,
                cap: cap.into(),
            });
        }
        let set = form.generate();
        if BigInt::from(set.len()) != count {
            return Err(Error::Verification(format!(
                "generated {} solutions, expected {count}",
                set.len()
            )));
        }
        for v in &set {
            if let Some(row) = self.rows.iter().find(|r| !r.is_satisfied_by(v)) {
                return Err(Error::Verification(format!("{v:?} does not satisfy {row}")));
            }
        }
        Ok(Some(SystemSolution {
            modulus: form.modulus,
            set,
        }))
    }

    /// Pairwise test for `aᵢx ≡ bᵢ (mod mᵢ)`: every `(aᵢ, mᵢ) | bᵢ` and every
    /// `(aᵢmⱼ, aⱼmᵢ) | aᵢbⱼ − aⱼbᵢ`.
    ///
    /// Diagnostic only; [`CongruenceSystem::solve`] never relies on it.
    pub fn univariate_pair_compatible(&self) -> Result<bool> {
        if self.arity() != 1 {
            return Err(Error::usage(format!(
                "pairwise test needs one unknown, system has {}",
                self.arity()
            )));
        }
        let rows: Vec<(&BigInt, &BigInt, &BigInt)> = self
            .rows
            .iter()
            .map(|r| (&r.coeffs()[0], r.rhs(), r.modulus()))
            .collect();
        let each = rows.iter().all(|(a, b, m)| divides(&a.gcd(m), b));
        let pairs = rows.iter().enumerate().all(|(i, (ai, bi, mi))| {
            rows[i + 1..].iter().all(|(aj, bj, mj)| {
                let d = (*ai * *mj).gcd(&(*aj * *mi));
                divides(&d, &(*ai * *bj - *aj * *bi))
            })
        });
        Ok(each && pairs)
    }
}

fn check_crt_input(residues: &[BigInt], moduli: &[BigInt]) -> Result<()> {
    if residues.is_empty() {
        return Err(Error::usage("no congruences given"));
    }
    if residues.len() != moduli.len() {
        return Err(Error::usage(format!(
            "{} residues but {} moduli",
            residues.len(),
            moduli.len()
        )));
    }
    if moduli.iter().any(Zero::is_zero) {
        return Err(Error::usage("modulus 0"));
    }
    Ok(())
}

/// `x ≡ bᵢ (mod mᵢ)` is solvable iff `(mᵢ, mⱼ) | bᵢ − bⱼ` for every pair.
pub fn crt_compatible(residues: &[BigInt], moduli: &[BigInt]) -> Result<bool> {
    check_crt_input(residues, moduli)?;
    Ok((0..residues.len()).all(|i| {
        (i + 1..residues.len())
            .all(|j| divides(&moduli[i].gcd(&moduli[j]), &(&residues[i] - &residues[j])))
    }))
}

/// Merges `x ≡ bᵢ (mod mᵢ)` into a single class `x ≡ r (mod lcm)`, with
/// `0 ≤ r < lcm`. Moduli need not be coprime.
pub fn solve_crt(residues: &[BigInt], moduli: &[BigInt]) -> Result<Option<(BigInt, BigInt)>> {
    check_crt_input(residues, moduli)?;
    let mut r = BigInt::zero();
    let mut m = BigInt::from(1);
    for (b, mi) in residues.iter().zip(moduli) {
        let mi = mi.abs();
        let cert = ext_gcd(&m, &mi);
        let diff = b - &r;
        if !divides(&cert.gcd, &diff) {
            return Ok(None);
        }
        // m·u ≡ g (mod mi), so r + m·u·(diff/g) ≡ b (mod mi).
        let step = &m * &cert.coefficients[0] * (&diff / &cert.gcd);
        let l = m.lcm(&mi);
        r = (r + step).mod_floor(&l);
        m = l;
    }
    Ok(Some((r, m)))
}
