//! Residue-vector solution sets and their parametric generators.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{gcd_vec, lattice_index, AffineLattice};

/// Duplicate-free residue vectors, kept in lexicographic order. With
/// modulus 0 the vectors are plain integer solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    modulus: BigInt,
    arity: usize,
    vectors: BTreeSet<Vec<BigInt>>,
}

impl SolutionSet {
    pub fn empty(modulus: BigInt, arity: usize) -> Self {
        SolutionSet {
            modulus,
            arity,
            vectors: BTreeSet::new(),
        }
    }

    /// Builds a set from arbitrary integer vectors, reducing each component
    /// into `[0, modulus)`. Modulus 0 keeps the vectors as given.
    pub fn from_vectors<I>(modulus: BigInt, arity: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut set = SolutionSet::empty(modulus, arity);
        for v in vectors {
            set.insert(v);
        }
        set
    }

    pub(crate) fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.arity, "vector arity");
        if !self.modulus.is_zero() {
            for x in v.iter_mut() {
                *x = x.mod_floor(&self.modulus);
            }
        }
        self.vectors.insert(v)
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.vectors.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.vectors.iter()
    }

    /// Componentwise reduction onto a divisor of the modulus.
    pub fn project(&self, modulus: &BigInt) -> Result<SolutionSet> {
        if modulus <= &BigInt::zero() || !self.modulus.is_multiple_of(modulus) {
            return Err(Error::usage(format!(
                "cannot project residues mod {} onto mod {modulus}",
                self.modulus
            )));
        }
        Ok(SolutionSet::from_vectors(
            modulus.clone(),
            self.arity,
            self.vectors.iter().cloned(),
        ))
    }
}

impl<'a> IntoIterator for &'a SolutionSet {
    type Item = &'a Vec<BigInt>;
    type IntoIter = std::collections::btree_set::Iter<'a, Vec<BigInt>>;

    fn into_iter(self) -> Self::IntoIter {
        self.vectors.iter()
    }
}

/// `x ≡ offset + Σ kⱼ·basis[j] (mod modulus)`, with parameter `j` ranging
/// over `0..param_ranges[j]`.
///
/// `param_ranges[j] = modulus / gcd(basis[j] ∪ {modulus})` is the additive
/// order of `basis[j]` modulo `modulus`, so those values already produce
/// every solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricSolution {
    pub modulus: BigInt,
    pub offset: Vec<BigInt>,
    /// One residue vector per parameter.
    pub basis: Vec<Vec<BigInt>>,
    pub param_ranges: Vec<BigInt>,
}

impl ParametricSolution {
    /// Reduces an integer lattice modulo a positive modulus.
    pub fn from_lattice(lattice: &AffineLattice, modulus: &BigInt) -> Self {
        assert!(modulus > &BigInt::zero(), "modulus must be positive");
        let reduce = |v: &[BigInt]| v.iter().map(|x| x.mod_floor(modulus)).collect::<Vec<_>>();
        let offset = reduce(&lattice.particular);
        let basis: Vec<Vec<BigInt>> = lattice.basis.iter().map(|v| reduce(v)).collect();
        let param_ranges = basis
            .iter()
            .map(|column| {
                let mut values = column.clone();
                values.push(modulus.clone());
                let d = gcd_vec(&values).expect("non-empty").gcd;
                modulus / d
            })
            .collect();
        ParametricSolution {
            modulus: modulus.clone(),
            offset,
            basis,
            param_ranges,
        }
    }

    pub fn arity(&self) -> usize {
        self.offset.len()
    }

    /// The residue vector for one parameter assignment.
    pub fn point(&self, params: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(params.len(), self.basis.len(), "one value per parameter");
        let mut x = self.offset.clone();
        for (k, column) in params.iter().zip(&self.basis) {
            for (xi, ci) in x.iter_mut().zip(column) {
                *xi += k * ci;
            }
        }
        x.iter().map(|xi| xi.mod_floor(&self.modulus)).collect()
    }

    /// Number of distinct residue vectors this form generates, computed
    /// without enumerating: `modulusⁿ / [ℤⁿ : span(basis, modulus·ℤⁿ)]`.
    pub fn distinct_count(&self) -> BigInt {
        let n = self.arity();
        let mut generators = self.basis.clone();
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = self.modulus.clone();
            generators.push(e);
        }
        let index = lattice_index(&generators, n)
            .expect("generators have the arity")
            .expect("modulus·ℤⁿ is full rank");
        Pow::pow(&self.modulus, n) / index
    }

    /// Every generated residue vector, duplicates removed.
    ///
    /// Parameters are swept one at a time over their ranges, merging
    /// repeats after each sweep, so the working set never exceeds the
    /// final solution count.
    pub fn generate(&self) -> SolutionSet {
        let mut current: HashSet<Vec<BigInt>> = HashSet::new();
        current.insert(self.offset.clone());
        for (column, range) in self.basis.iter().zip(&self.param_ranges) {
            if range.is_one() {
                continue;
            }
            let mut next = HashSet::with_capacity(current.len());
            for start in &current {
                let mut x = start.clone();
                let mut k = BigInt::zero();
                while &k < range {
                    next.insert(x.clone());
                    for (xi, ci) in x.iter_mut().zip(column) {
                        *xi += ci;
                        if *xi >= self.modulus {
                            *xi -= &self.modulus;
                        }
                    }
                    k += 1;
                }
            }
            current = next;
        }
        SolutionSet::from_vectors(self.modulus.clone(), self.arity(), current)
    }
}
