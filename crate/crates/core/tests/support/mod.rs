//! Test-only oracles for integer lattices. Independent of the library's
//! elimination code: rational Gauss-Jordan for membership, plain loops for
//! the solution search.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Decides `v ∈ particular + span_ℤ(basis)` for linearly independent basis
/// vectors, using `t = D⁻¹·N·v` on a set of rows where the basis is
/// invertible.
pub struct Membership {
    particular: Vec<i128>,
    basis: Vec<Vec<i128>>,
    rows: Vec<usize>,
    /// `denominator · inverse` of the selected square block.
    numerators: Vec<Vec<i128>>,
    denominator: i128,
}

impl Membership {
    pub fn new(particular: &[BigInt], basis: &[Vec<BigInt>]) -> Self {
        let to_i = |x: &BigInt| x.to_i128().expect("small lattice entries");
        let particular: Vec<i128> = particular.iter().map(to_i).collect();
        let basis: Vec<Vec<i128>> = basis.iter().map(|v| v.iter().map(to_i).collect()).collect();
        let n = particular.len();
        let k = basis.len();
        if k == 0 {
            return Membership { particular, basis, rows: vec![], numerators: vec![], denominator: 1 };
        }

        // Pick k independent rows of the n×k matrix B greedily.
        let mut rows = Vec::new();
        let mut echelon: Vec<Vec<BigRational>> = Vec::new();
        for i in 0..n {
            let mut r: Vec<BigRational> = basis.iter().map(|v| BigRational::from_integer(v[i].into())).collect();
            for e in &echelon {
                let p = e.iter().position(|x| !x.is_zero()).unwrap();
                if !r[p].is_zero() {
                    let f = &r[p] / &e[p];
                    for (a, b) in r.iter_mut().zip(e) {
                        *a -= &f * b;
                    }
                }
            }
            if r.iter().any(|x| !x.is_zero()) {
                echelon.push(r);
                rows.push(i);
                if rows.len() == k {
                    break;
                }
            }
        }
        assert_eq!(rows.len(), k, "basis vectors must be linearly independent");

        // Invert the selected k×k block by Gauss-Jordan over ℚ.
        let mut aug: Vec<Vec<BigRational>> = rows
            .iter()
            .enumerate()
            .map(|(ri, &i)| {
                let mut line: Vec<BigRational> = basis.iter().map(|v| BigRational::from_integer(v[i].into())).collect();
                line.extend((0..k).map(|c| if c == ri { BigRational::one() } else { BigRational::zero() }));
                line
            })
            .collect();
        for col in 0..k {
            let piv = (col..k).find(|&r| !aug[r][col].is_zero()).expect("invertible block");
            aug.swap(col, piv);
            let inv = aug[col][col].recip();
            for x in aug[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..k {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    let pivot_row = aug[col].clone();
                    for (a, b) in aug[r].iter_mut().zip(&pivot_row) {
                        *a -= &f * b;
                    }
                }
            }
        }
        let inverse: Vec<Vec<BigRational>> = aug.into_iter().map(|line| line[k..].to_vec()).collect();
        let denominator = inverse
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let numerators = inverse
            .iter()
            .map(|line| {
                line.iter()
                    .map(|x| (x * BigRational::from_integer(denominator.clone())).to_integer().to_i128().unwrap())
                    .collect()
            })
            .collect();
        Membership { particular, basis, rows, numerators, denominator: denominator.to_i128().unwrap() }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let diff: Vec<i128> = v.iter().zip(&self.particular).map(|(&a, b)| a as i128 - b).collect();
        let mut t = Vec::with_capacity(self.basis.len());
        for line in &self.numerators {
            let s: i128 = line.iter().zip(&self.rows).map(|(c, &i)| c * diff[i]).sum();
            if s % self.denominator != 0 {
                return false;
            }
            t.push(s / self.denominator);
        }
        (0..diff.len()).all(|i| {
            let combo: i128 = t.iter().zip(&self.basis).map(|(tj, b)| tj * b[i]).sum();
            combo == diff[i]
        })
    }
}

/// Every integer solution of `matrix·x = rhs` inside `[-radius, radius]ⁿ`.
///
/// One unknown with a non-zero coefficient is solved for instead of
/// swept; everything else is exhaustive.
pub fn integer_solutions_in_cube(matrix: &[Vec<i64>], rhs: &[i64], radius: i64) -> Vec<Vec<i64>> {
    let n = matrix[0].len();
    let pivot = (0..n).find_map(|j| matrix.iter().position(|row| row[j] != 0).map(|i| (i, j)));
    let swept: Vec<usize> = match pivot {
        Some((_, j)) => (0..n).filter(|&c| c != j).collect(),
        None => (0..n).collect(),
    };
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let mut digits = vec![-radius; swept.len()];
    loop {
        for (d, &c) in digits.iter().zip(&swept) {
            x[c] = *d;
        }
        let mut ok = true;
        if let Some((i, j)) = pivot {
            let rest: i64 = (0..n).filter(|&c| c != j).map(|c| matrix[i][c] * x[c]).sum();
            let num = rhs[i] - rest;
            if num % matrix[i][j] != 0 {
                ok = false;
            } else {
                x[j] = num / matrix[i][j];
                ok = x[j].abs() <= radius;
            }
        }
        if ok && matrix.iter().zip(rhs).all(|(row, b)| row.iter().zip(&x).map(|(a, v)| a * v).sum::<i64>() == *b) {
            out.push(x.clone());
        }
        // Odometer over the swept coordinates.
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if digits[pos] < radius {
                digits[pos] += 1;
                break;
            }
            digits[pos] = -radius;
        }
    }
}

/// `matrix·x` in plain integers.
pub fn apply(matrix: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
    matrix
        .iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}
