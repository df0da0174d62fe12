//! Exact integer linear algebra helpers: rank, independent-row selection and
//! Hermite-normal-form solves of `A x = b` over the integers.
//!
//! Rank is computed by Gaussian elimination over two large prime fields and
//! taking the maximum; the rank over the rationals equals the mod-p rank for
//! all but finitely many primes, and the callers additionally verify the
//! resulting square systems, so a simultaneous false drop at both primes
//! (probability ~2^-122 for adversarial inputs, zero in practice for the tiny
//! exponent matrices here) would still be caught downstream.

use crate::{Error, Result};

// two Mersenne primes: 2^61 - 1 and 2^31 - 1
const PRIMES: [i128; 2] = [(1 << 61) - 1, (1 << 31) - 1];

fn rank_mod_p(rows: &[Vec<i64>], p: i128) -> usize {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| (v as i128).rem_euclid(p)).collect())
        .collect();
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = mod_inv(a[rank][col], p);
        for j in col..ncols {
            a[rank][j] = mulmod(a[rank][j], inv, p);
        }
        for i in 0..nrows {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in col..ncols {
                    let s = mulmod(f, a[rank][j], p);
                    a[i][j] = (a[i][j] - s).rem_euclid(p);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

fn mulmod(a: i128, b: i128, p: i128) -> i128 {
    // p < 2^62, so a*b < 2^124 fits in i128
    (a * b).rem_euclid(p)
}

fn mod_inv(a: i128, p: i128) -> i128 {
    // Fermat: p prime
    let mut base = a.rem_euclid(p);
    let mut exp = p - 2;
    let mut acc = 1i128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    PRIMES.iter().map(|&p| rank_mod_p(rows, p)).max().unwrap()
}

/// Greedy maximal independent subset of rows, scanned in the given order.
/// Returns the kept indices (sorted ascending).
pub fn independent_rows(rows: &[Vec<i64>], order: &[usize]) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for &i in order {
        basis.push(rows[i].clone());
        if rank(&basis) == basis.len() {
            kept.push(i);
        } else {
            basis.pop();
        }
    }
    kept.sort_unstable();
    kept
}

/// Solve `A x = b` over ℤ via column Hermite reduction: find unimodular U
/// with A·U in column echelon form, back-substitute, and map back through U.
pub fn hnf_solve(a: &[Vec<i64>], b: &[i64]) -> Result<Vec<i64>> {
    let nrows = a.len();
    if nrows == 0 {
        return Ok(vec![]);
    }
    let ncols = a[0].len();
    if b.len() != nrows {
        return Err(Error::Dimension("hnf_solve: rhs length mismatch".into()));
    }
    let mut h: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| i128::from(i == j)).collect())
        .collect();
    let col_op = |h: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, j: usize, k: usize, f: i128| {
        // col_j -= f * col_k
        for row in h.iter_mut() {
            row[j] -= f * row[k];
        }
        for row in u.iter_mut() {
            row[j] -= f * row[k];
        }
    };
    let swap_cols = |h: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, j: usize, k: usize| {
        for row in h.iter_mut() {
            row.swap(j, k);
        }
        for row in u.iter_mut() {
            row.swap(j, k);
        }
    };
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut pcol = 0;
    for row in 0..nrows {
        if pcol == ncols {
            break;
        }
        // gcd-reduce the entries of this row across columns pcol..ncols
        loop {
            let mut nz: Vec<usize> = (pcol..ncols).filter(|&j| h[row][j] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&j| h[row][j].abs());
            let k = nz[0];
            for &j in &nz[1..] {
                let f = h[row][j] / h[row][k];
                col_op(&mut h, &mut u, j, k, f);
            }
        }
        if let Some(j) = (pcol..ncols).find(|&j| h[row][j] != 0) {
            if h[row][j] < 0 {
                col_op(&mut h, &mut u, j, j, 2); // negate: col -= 2*col
            }
            swap_cols(&mut h, &mut u, pcol, j);
            pivots.push((row, pcol));
            pcol += 1;
        }
    }
    // back-substitute: y over the pivot columns, zero elsewhere
    let mut y = vec![0i128; ncols];
    let mut resid: Vec<i128> = b.iter().map(|&v| v as i128).collect();
    for &(row, col) in &pivots {
        let piv = h[row][col];
        if resid[row] % piv != 0 {
            return Err(Error::NoFlattening);
        }
        let yc = resid[row] / piv;
        y[col] = yc;
        for r in 0..nrows {
            resid[r] -= yc * h[r][col];
        }
    }
    if resid.iter().any(|&v| v != 0) {
        return Err(Error::NoFlattening);
    }
    let mut x = vec![0i128; ncols];
    for (i, xi) in x.iter_mut().enumerate() {
        *xi = (0..ncols).map(|j| u[i][j] * y[j]).sum();
    }
    let out: Vec<i64> = x
        .iter()
        .map(|&v| i64::try_from(v).map_err(|_| Error::NoFlattening))
        .collect::<Result<_>>()?;
    // exact verification
    for (i, row) in a.iter().enumerate() {
        let dot: i128 = row.iter().zip(&out).map(|(&ai, &xi)| ai as i128 * xi as i128).sum();
        if dot != b[i] as i128 {
            return Err(Error::NoFlattening);
        }
    }
    Ok(out)
}
