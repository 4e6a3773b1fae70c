//! Exact integer linear algebra.
//!
//! Everything here works on [`BigInt`]. Systems `A·x = b` are solved by
//! reducing `A` to a lower column-echelon (Hermite-style) form `H = A·U`
//! with `U` unimodular, recording every column operation in `U`. A
//! particular solution is read off `H` by forward substitution and the
//! trailing columns of `U` span the integer null space.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A gcd together with Bézout coefficients: `Σ coefficients[i]·input[i] = gcd`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub gcd: BigInt,
    pub coefficients: Vec<BigInt>,
}

impl BezoutCertificate {
    /// Recomputes `Σ coefficients[i]·inputs[i]`.
    pub fn combine(&self, inputs: &[BigInt]) -> BigInt {
        self.coefficients
            .iter()
            .zip(inputs)
            .map(|(c, a)| c * a)
            .sum()
    }
}

/// `0 | x` holds only for `x = 0`.
pub fn divides(d: &BigInt, x: &BigInt) -> bool {
    if d.is_zero() {
        x.is_zero()
    } else {
        (x % d).is_zero()
    }
}

/// Extended Euclid on two integers. The gcd is non-negative and `gcd(0, 0) = 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> BezoutCertificate {
    if a.is_zero() && b.is_zero() {
        return BezoutCertificate {
            gcd: BigInt::zero(),
            coefficients: vec![BigInt::zero(), BigInt::zero()],
        };
    }
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    BezoutCertificate {
        gcd: old_r,
        coefficients: vec![old_s, old_t],
    }
}

/// Gcd of a non-empty list with a Bézout certificate, folded pairwise.
pub fn gcd_vec(values: &[BigInt]) -> Result<BezoutCertificate> {
    let (first, rest) = values
        .split_first()
        .ok_or_else(|| Error::usage("gcd of an empty list"))?;
    let mut gcd = first.abs();
    let mut coefficients = vec![if first.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    }];
    for value in rest {
        let step = ext_gcd(&gcd, value);
        let [u, v]: [BigInt; 2] = step.coefficients.try_into().expect("pair certificate");
        for c in coefficients.iter_mut() {
            *c *= &u;
        }
        coefficients.push(v);
        gcd = step.gcd;
    }
    Ok(BezoutCertificate { gcd, coefficients })
}

/// Positive least common multiple of non-zero integers.
pub fn lcm_vec(values: &[BigInt]) -> Result<BigInt> {
    if values.is_empty() {
        return Err(Error::usage("lcm of an empty list"));
    }
    values.iter().try_fold(BigInt::one(), |acc, v| {
        if v.is_zero() {
            Err(Error::usage("lcm of a list containing 0"))
        } else {
            Ok(acc.lcm(v))
        }
    })
}

/// `particular + Σ kⱼ·basis[j]`, kⱼ ∈ ℤ: the integer solutions of a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineLattice {
    pub particular: Vec<BigInt>,
    pub basis: Vec<Vec<BigInt>>,
}

impl AffineLattice {
    pub fn arity(&self) -> usize {
        self.particular.len()
    }

    /// The lattice point for the given parameter values.
    pub fn point(&self, params: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(params.len(), self.basis.len(), "one parameter per basis vector");
        let mut x = self.particular.clone();
        for (k, v) in params.iter().zip(&self.basis) {
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += k * vi;
            }
        }
        x
    }

    /// Keeps the first `arity` coordinates, dropping slack unknowns.
    pub fn truncate(&self, arity: usize) -> AffineLattice {
        AffineLattice {
            particular: self.particular[..arity].to_vec(),
            basis: self.basis.iter().map(|v| v[..arity].to_vec()).collect(),
        }
    }
}

/// Result of reducing `A` (r×n) to lower column-echelon form `H = A·U`.
/// Matrices are stored column-major.
struct ColumnEchelon {
    h: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot; columns are `0..rank` in order.
    pivots: Vec<(usize, usize)>,
}

impl ColumnEchelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `col_p, col_j <- u·col_p + v·col_j, -(b/g)·col_p + (a/g)·col_j`.
/// The 2×2 transform has determinant 1.
fn bezout_combine(cols: &mut [Vec<BigInt>], p: usize, j: usize, cert: &BezoutCertificate, a_g: &BigInt, b_g: &BigInt) {
    let (u, v) = (&cert.coefficients[0], &cert.coefficients[1]);
    let (left, right) = cols.split_at_mut(j);
    let (cp, cj) = (&mut left[p], &mut right[0]);
    for (xp, xj) in cp.iter_mut().zip(cj.iter_mut()) {
        let new_p = u * &*xp + v * &*xj;
        let new_j = a_g * &*xj - b_g * &*xp;
        *xp = new_p;
        *xj = new_j;
    }
}

fn sub_multiple(cols: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    debug_assert!(source != target);
    let src = cols[source].clone();
    for (t, s) in cols[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

fn column_echelon(columns: Vec<Vec<BigInt>>, rows: usize) -> ColumnEchelon {
    let n = columns.len();
    let mut h = columns;
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            e
        })
        .collect();
    let mut pivots = Vec::new();
    let mut col = 0;
    for row in 0..rows {
        if col == n {
            break;
        }
        for j in col + 1..n {
            if h[j][row].is_zero() {
                continue;
            }
            let (a, b) = (h[col][row].clone(), h[j][row].clone());
            let cert = ext_gcd(&a, &b);
            let a_g = &a / &cert.gcd;
            let b_g = &b / &cert.gcd;
            bezout_combine(&mut h, col, j, &cert, &a_g, &b_g);
            bezout_combine(&mut u, col, j, &cert, &a_g, &b_g);
        }
        if h[col][row].is_zero() {
            continue;
        }
        if h[col][row].is_negative() {
            for x in h[col].iter_mut().chain(u[col].iter_mut()) {
                *x = -&*x;
            }
        }
        // Hermite reduction of the entries left of the pivot keeps growth in check.
        let pivot = h[col][row].clone();
        for k in 0..col {
            let q = h[k][row].div_floor(&pivot);
            if !q.is_zero() {
                sub_multiple(&mut h, k, col, &q);
                sub_multiple(&mut u, k, col, &q);
            }
        }
        pivots.push((row, col));
        col += 1;
    }
    ColumnEchelon { h, u, pivots }
}

fn check_shape(matrix: &[Vec<BigInt>], rhs: &[BigInt]) -> Result<usize> {
    let first = matrix
        .first()
        .ok_or_else(|| Error::usage("system has no rows"))?;
    let n = first.len();
    if n == 0 {
        return Err(Error::usage("system has no unknowns"));
    }
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::usage("rows of different lengths"));
    }
    if rhs.len() != matrix.len() {
        return Err(Error::usage(format!(
            "{} rows but {} right-hand sides",
            matrix.len(),
            rhs.len()
        )));
    }
    Ok(n)
}

/// All integer solutions of `matrix·x = rhs`, or `None` if there are none.
///
/// The basis spans the full integer null space and has `n − rank` vectors.
pub fn solve_diophantine_system(matrix: &[Vec<BigInt>], rhs: &[BigInt]) -> Result<Option<AffineLattice>> {
    let n = check_shape(matrix, rhs)?;
    let rows = matrix.len();
    let columns: Vec<Vec<BigInt>> = (0..n)
        .map(|j| matrix.iter().map(|row| row[j].clone()).collect())
        .collect();
    let ech = column_echelon(columns, rows);

    // Forward substitution on H·y = rhs; free coordinates of y stay 0.
    let mut y = vec![BigInt::zero(); n];
    let mut next_pivot = ech.pivots.iter().peekable();
    let mut assigned = 0;
    for (row, b) in rhs.iter().enumerate() {
        let mut residual = b.clone();
        for (column, yk) in ech.h.iter().zip(&y).take(assigned) {
            residual -= &column[row] * yk;
        }
        match next_pivot.peek() {
            Some(&&(prow, pcol)) if prow == row => {
                let (q, r) = residual.div_rem(&ech.h[pcol][row]);
                if !r.is_zero() {
                    return Ok(None);
                }
                y[pcol] = q;
                assigned += 1;
                next_pivot.next();
            }
            _ => {
                if !residual.is_zero() {
                    return Ok(None);
                }
            }
        }
    }

    let mut particular = vec![BigInt::zero(); n];
    for (yk, uk) in y.iter().zip(&ech.u) {
        if yk.is_zero() {
            continue;
        }
        for (x, e) in particular.iter_mut().zip(uk) {
            *x += yk * e;
        }
    }
    let basis = ech.u[ech.rank()..].to_vec();
    Ok(Some(AffineLattice { particular, basis }))
}

/// All integer solutions of `Σ coeffs[i]·xᵢ = rhs`.
pub fn solve_linear_diophantine(coeffs: &[BigInt], rhs: &BigInt) -> Result<Option<AffineLattice>> {
    solve_diophantine_system(&[coeffs.to_vec()], std::slice::from_ref(rhs))
}

/// Index of the lattice spanned by `generators` inside ℤ^dim, i.e. the
/// absolute determinant of any basis of it. `None` when the span is not
/// full rank (infinite index).
pub fn lattice_index(generators: &[Vec<BigInt>], dim: usize) -> Result<Option<BigInt>> {
    if generators.iter().any(|g| g.len() != dim) {
        return Err(Error::usage("generator of the wrong dimension"));
    }
    let ech = column_echelon(generators.to_vec(), dim);
    if ech.rank() < dim {
        return Ok(None);
    }
    Ok(Some(
        ech.pivots
            .iter()
            .map(|&(row, col)| ech.h[col][row].clone())
            .product(),
    ))
}
