//! Exact rational linear algebra: fraction-free echelon reduction, kernel
//! bases, rank, span membership and small determinants.
//!
//! Rows are cleared to primitive integer vectors and reduced with Bareiss'
//! fraction-free elimination, so intermediate entries stay integral; kernels
//! are then recovered by exact back-substitution over the rationals. Pivoting
//! is deterministic (first nonzero entry in column order), which keeps kernel
//! bases reproducible across runs and platforms.

use crate::arith::{GaussRat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Echelon form of the integer row list together with its pivot columns.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivot_cols: Vec<usize>,
}

fn to_primitive_int_row(row: &[Rat]) -> Option<Vec<BigInt>> {
    if row.iter().all(|x| x.is_zero()) {
        return None;
    }
    let mut lcm = BigInt::one();
    for x in row {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for v in &ints {
        gcd = gcd.gcd(v);
    }
    Some(ints.into_iter().map(|v| v / &gcd).collect())
}

fn bareiss_echelon(rows: &[Vec<Rat>], ncols: usize) -> Echelon {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter_map(|r| to_primitive_int_row(r))
        .collect();
    let mut pivot_cols = Vec::new();
    let mut prev_pivot = BigInt::one();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        // Bareiss update: rows with a zero in the pivot column are still
        // rescaled by pivot/prev_pivot so later exact divisions go through.
        for r in rank + 1..m.len() {
            let factor = m[r][col].clone();
            for c in 0..ncols {
                let v = &m[r][c] * &pivot - &factor * &m[rank][c];
                m[r][c] = v / &prev_pivot;
            }
        }
        prev_pivot = pivot;
        pivot_cols.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    Echelon {
        rows: m,
        pivot_cols,
    }
}

/// Rank of the row list (exact).
pub fn rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    bareiss_echelon(rows, ncols).pivot_cols.len()
}

/// Basis of the right kernel `{x : A x = 0}`. One vector per free column, in
/// ascending column order; entries are exact rationals with the free
/// coordinate set to one.
pub fn kernel_basis(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let ech = bareiss_echelon(rows, ncols);
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; ncols];
        for (i, &c) in ech.pivot_cols.iter().enumerate() {
            v[c] = Some(i);
        }
        v
    };
    let free_cols: Vec<usize> = (0..ncols).filter(|c| pivot_set[*c].is_none()).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &f in &free_cols {
        let mut x = vec![Rat::zero(); ncols];
        x[f] = Rat::one();
        // back-substitute pivot coordinates bottom-up
        for i in (0..ech.pivot_cols.len()).rev() {
            let pc = ech.pivot_cols[i];
            let mut acc = Rat::zero();
            for c in pc + 1..ncols {
                if !x[c].is_zero() && !ech.rows[i][c].is_zero() {
                    acc += Rat::from_integer(ech.rows[i][c].clone()) * x[c].clone();
                }
            }
            x[pc] = -acc / Rat::from_integer(ech.rows[i][pc].clone());
        }
        basis.push(x);
    }
    basis
}

/// Scales a rational vector to primitive integer coordinates with a positive
/// leading (first nonzero) entry. The zero vector is returned unchanged.
pub fn primitive_normalize(v: &[Rat]) -> Vec<Rat> {
    let Some(int_row) = to_primitive_int_row(v) else {
        return v.to_vec();
    };
    let sign = int_row
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    int_row
        .into_iter()
        .map(|x| Rat::from_integer(if sign { -x } else { x }))
        .collect()
}

/// True when `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat], ncols: usize) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    let base_rank = rank(basis, ncols);
    let mut extended: Vec<Vec<Rat>> = basis.to_vec();
    extended.push(v.to_vec());
    rank(&extended, ncols) == base_rank
}

/// Coordinates of `target` in the given (independent) spanning set, or `None`
/// when `target` is outside the span. Solves `sum_i lambda_i basis_i = target`
/// by exact Gauss-Jordan elimination over the rationals.
pub fn solve_coordinates(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis.len();
    let n = target.len();
    if k == 0 {
        return if target.iter().all(|x| x.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    // augmented system over the unknown lambdas: rows indexed by coordinate
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0usize;
    for col in 0..k {
        let Some(pr) = (next_row..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next_row, pr);
        let inv = Rat::one() / m[next_row][col].clone();
        for c in col..=k {
            let v = m[next_row][c].clone() * inv.clone();
            m[next_row][c] = v;
        }
        for r in 0..n {
            if r != next_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=k {
                    let v = m[r][c].clone() - f.clone() * m[next_row][c].clone();
                    m[r][c] = v;
                }
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
        if next_row == n {
            break;
        }
    }
    // inconsistent rows?
    for r in next_row..n {
        if !m[r][k].is_zero() {
            return None;
        }
    }
    let mut lambda = vec![Rat::zero(); k];
    for (r, c) in pivots {
        lambda[c] = m[r][k].clone();
    }
    Some(lambda)
}

/// Determinant of a square Gaussian-rational matrix by cofactor expansion
/// (matrices here are tiny: Levi forms and linear parts).
pub fn det_gauss(m: &[Vec<GaussRat>]) -> GaussRat {
    let n = m.len();
    match n {
        0 => GaussRat::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        _ => {
            let mut acc = GaussRat::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<GaussRat>> = (1..n)
                    .map(|r| {
                        (0..n)
                            .filter(|c| *c != j)
                            .map(|c| m[r][c].clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].clone() * det_gauss(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}
