//! A single multivariate linear congruence `a₁x₁ + … + aₙxₙ ≡ b (mod m)`.
//!
//! With `d = gcd(a₁, …, aₙ, m)` the congruence is solvable iff `d | b`, and
//! then has exactly `d·|m|ⁿ⁻¹` distinct solutions modulo `m`. The
//! parametric solution comes from the integer equation
//! `a₁x₁ + … + aₙxₙ − m·y = b` with the slack `y` dropped.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{divides, gcd_vec, solve_linear_diophantine};
use crate::solution::{ParametricSolution, SolutionSet};

/// One linear congruence. The modulus may be zero (plain equation over ℤ)
/// or negative; nothing is normalized at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearCongruence {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
    modulus: BigInt,
}

/// How many distinct solutions a congruence has.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionCount {
    None,
    Finite(BigInt),
    /// Only for modulus 0 with a free direction.
    Infinite,
}

impl fmt::Display for SolutionCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionCount::None => f.write_str("0"),
            SolutionCount::Finite(n) => write!(f, "{n}"),
            SolutionCount::Infinite => f.write_str("infinite"),
        }
    }
}

impl LinearCongruence {
    pub fn new(coeffs: Vec<BigInt>, rhs: BigInt, modulus: BigInt) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::usage("a congruence needs at least one unknown"));
        }
        Ok(LinearCongruence { coeffs, rhs, modulus })
    }

    /// Convenience constructor for small literals.
    pub fn from_i64(coeffs: &[i64], rhs: i64, modulus: i64) -> Result<Self> {
        Self::new(crate::big_vec(coeffs), rhs.into(), modulus.into())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &BigInt {
        &self.rhs
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    /// `d = gcd(a₁, …, aₙ, m)`.
    pub fn gcd(&self) -> BigInt {
        let mut values = self.coeffs.clone();
        values.push(self.modulus.clone());
        gcd_vec(&values).expect("non-empty").gcd
    }

    /// Direct substitution of an integer vector.
    pub fn is_satisfied_by(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.arity(), "vector arity");
        let lhs: BigInt = self.coeffs.iter().zip(x).map(|(a, xi)| a * xi).sum();
        divides(&self.modulus, &(lhs - &self.rhs))
    }

    fn require_nonzero_modulus(&self, what: &str) -> Result<()> {
        if self.modulus.is_zero() {
            Err(Error::usage(format!("{what} needs a non-zero modulus")))
        } else {
            Ok(())
        }
    }

    /// Positive modulus, every coefficient and the right-hand side in `[0, m)`.
    pub fn normalize(&self) -> Result<LinearCongruence> {
        self.require_nonzero_modulus("normalization")?;
        let m = self.modulus.abs();
        Ok(LinearCongruence {
            coeffs: self.coeffs.iter().map(|a| a.mod_floor(&m)).collect(),
            rhs: self.rhs.mod_floor(&m),
            modulus: m,
        })
    }

    /// `gcd(a₁, …, aₙ, m) | b`, with `0 | b` only for `b = 0`.
    pub fn is_solvable(&self) -> bool {
        divides(&self.gcd(), &self.rhs)
    }

    /// `d·|m|ⁿ⁻¹` when solvable and `m ≠ 0`.
    ///
    /// For `m = 0` a solvable single-unknown equation `a·x = b` with `a ≠ 0`
    /// has exactly one solution; any other solvable equation over ℤ has
    /// infinitely many.
    pub fn count_solutions(&self) -> SolutionCount {
        if !self.is_solvable() {
            return SolutionCount::None;
        }
        if self.modulus.is_zero() {
            let has_free_direction = self.arity() > 1 || self.coeffs[0].is_zero();
            return if has_free_direction {
                SolutionCount::Infinite
            } else {
                SolutionCount::Finite(BigInt::one())
            };
        }
        let m = self.modulus.abs();
        SolutionCount::Finite(self.gcd() * Pow::pow(&m, self.arity() - 1))
    }

    /// The general solution modulo `|m|`, or `None` when unsolvable.
    pub fn general_solution(&self) -> Result<Option<ParametricSolution>> {
        let norm = self.normalize()?;
        let n = norm.arity();
        let mut extended = norm.coeffs.clone();
        extended.push(-&norm.modulus);
        let Some(lattice) = solve_linear_diophantine(&extended, &norm.rhs)? else {
            return Ok(None);
        };
        Ok(Some(ParametricSolution::from_lattice(
            &lattice.truncate(n),
            &norm.modulus,
        )))
    }

    /// Every distinct solution modulo `|m|`.
    ///
    /// Fails with [`Error::Capacity`] when the exact count exceeds `cap`;
    /// an unsolvable congruence yields the empty set.
    pub fn enumerate_solutions(&self, cap: u64) -> Result<SolutionSet> {
        self.require_nonzero_modulus("enumeration")?;
        let m = self.modulus.abs();
        let expected = match self.count_solutions() {
            SolutionCount::Finite(n) => n,
            _ => return Ok(SolutionSet::empty(m, self.arity())),
        };
        if expected > BigInt::from(cap) {
            return Err(Error::Capacity {
                count: expected,
                cap: cap.into(),
            });
        }
        let form = self
            .general_solution()?
            .ok_or_else(|| Error::Verification("solvable congruence without a parametric form".into()))?;
        let set = form.generate();
        if BigInt::from(set.len()) != expected {
            return Err(Error::Verification(format!(
                "generated {} solutions, expected {expected}",
                set.len()
            )));
        }
        if let Some(bad) = set.iter().find(|v| !self.is_satisfied_by(v)) {
            return Err(Error::Verification(format!("{bad:?} does not satisfy {self}")));
        }
        Ok(set)
    }

    /// Multiplies coefficients and right-hand side by `k` coprime to the
    /// modulus. The solution set does not change.
    pub fn scale_coprime(&self, k: &BigInt) -> Result<LinearCongruence> {
        self.require_nonzero_modulus("coprime scaling")?;
        if !k.gcd(&self.modulus).is_one() {
            return Err(Error::usage(format!(
                "{k} is not coprime to the modulus {}",
                self.modulus
            )));
        }
        Ok(LinearCongruence {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
            rhs: &self.rhs * k,
            modulus: self.modulus.clone(),
        })
    }

    /// Multiplies the whole congruence, modulus included, by `k > 0`.
    /// Solutions mod `k·m` are the preimage of the old ones mod `m`.
    pub fn scale_full(&self, k: &BigInt) -> Result<LinearCongruence> {
        self.require_nonzero_modulus("amplification")?;
        if !k.is_positive() {
            return Err(Error::usage(format!("amplification factor {k} must be positive")));
        }
        Ok(LinearCongruence {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
            rhs: &self.rhs * k,
            modulus: &self.modulus * k,
        })
    }

    /// Divides the whole congruence, modulus included, by a common factor
    /// `k > 0`. Solutions mod `m/k` are the projection of the old ones.
    pub fn reduce_common_factor(&self, k: &BigInt) -> Result<LinearCongruence> {
        self.require_nonzero_modulus("simplification")?;
        if !k.is_positive() {
            return Err(Error::usage(format!("simplification factor {k} must be positive")));
        }
        let all_divisible = self
            .coeffs
            .iter()
            .chain([&self.rhs, &self.modulus])
            .all(|x| x.is_multiple_of(k));
        if !all_divisible {
            return Err(Error::usage(format!(
                "{k} does not divide every coefficient, the right-hand side and the modulus"
            )));
        }
        Ok(LinearCongruence {
            coeffs: self.coeffs.iter().map(|a| a / k).collect(),
            rhs: &self.rhs / k,
            modulus: &self.modulus / k,
        })
    }
}

impl fmt::Display for LinearCongruence {
    /// Unknowns are printed as `x1, x2, …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.coeffs.iter().enumerate() {
            if i == 0 {
                write!(f, "{a}*x{}", i + 1)?;
            } else if a.is_negative() {
                write!(f, " - {}*x{}", -a, i + 1)?;
            } else {
                write!(f, " + {a}*x{}", i + 1)?;
            }
        }
        write!(f, " = {} (mod {})", self.rhs, self.modulus)
    }
}
