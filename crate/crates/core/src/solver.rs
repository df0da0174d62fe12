//! Numerical solving of gluing(+cusp) systems, Neumann-Zagier reduction,
//! flattenings and the 1-loop invariant.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cmatrix::CMat;
use crate::cusp::{cusp_to_nz, generate_cusp};
use crate::gluing::{generate, to_nz, NZMatrices};
use crate::intmat;
use crate::triangulation::ConcreteTriangulation;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            tol: 1e-9,
            max_iter: 100,
            restarts: 200,
            seed: 0,
        }
    }
}

/// Damped Newton in logarithmic variables from seeded random starts.
/// Returns deduplicated solutions in a canonical order; every returned
/// vector has multiplicative residual below `tol` and stays away from 0, 1.
pub fn newton_solve(nz: &NZMatrices, cfg: &SolveConfig) -> Vec<Vec<Complex64>> {
    let ncols = nz.a.first().map_or(0, |r| r.len());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut sols: Vec<Vec<Complex64>> = Vec::new();
    for _ in 0..cfg.restarts {
        let start: Vec<Complex64> = (0..ncols).map(|_| random_start(&mut rng)).collect();
        let Some(z) = newton_run(nz, start, cfg) else {
            continue;
        };
        if crate::gluing::verify_solution(nz, &z, cfg.tol).map_or(true, |r| r > cfg.tol) {
            continue;
        }
        let dup = sols.iter().any(|s| {
            s.iter()
                .zip(&z)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
                < 1e-6
        });
        if !dup {
            sols.push(z);
        }
    }
    sols.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b) {
            let ord = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
        std::cmp::Ordering::Equal
    });
    sols
}

fn random_start(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let r = (rng.gen_range(0.1f64.ln()..10.0f64.ln())).exp();
        let th = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = Complex64::from_polar(r, th);
        if (z - 1.0).norm() > 0.1 && z.norm() > 0.1 {
            return z;
        }
    }
}

fn wrap(mut x: f64) -> f64 {
    while x > std::f64::consts::PI {
        x -= std::f64::consts::TAU;
    }
    while x <= -std::f64::consts::PI {
        x += std::f64::consts::TAU;
    }
    x
}

fn log_residual(nz: &NZMatrices, z: &[Complex64]) -> Vec<Complex64> {
    nz.a.iter()
        .zip(&nz.b)
        .zip(&nz.rhs)
        .map(|((arow, brow), &rhs)| {
            let mut g = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                g += (arow[j] as f64) * zj.ln() + (brow[j] as f64) * (1.0 - zj).ln();
            }
            if rhs == -1 {
                g -= Complex64::new(0.0, std::f64::consts::PI);
            }
            Complex64::new(g.re, wrap(g.im))
        })
        .collect()
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn newton_run(nz: &NZMatrices, mut z: Vec<Complex64>, cfg: &SolveConfig) -> Option<Vec<Complex64>> {
    let nrows = nz.a.len();
    let ncols = z.len();
    for _ in 0..cfg.max_iter {
        let g = log_residual(nz, &z);
        let gn = norm2(&g);
        if gn < 1e-13 {
            break;
        }
        // J_{rj} = A_{rj} - B_{rj} z_j / (1 - z_j), in log variables u = log z
        let mut jac = CMat::zeros(nrows, ncols);
        for r in 0..nrows {
            for j in 0..ncols {
                jac[(r, j)] = Complex64::new(nz.a[r][j] as f64, 0.0)
                    - (nz.b[r][j] as f64) * z[j] / (1.0 - z[j]);
            }
        }
        // normal equations with a Levenberg fallback
        let jh = jac.transpose_conj();
        let jhj = jh.mul(&jac);
        let rhs: Vec<Complex64> = {
            let mut v = vec![Complex64::new(0.0, 0.0); ncols];
            for (j, vj) in v.iter_mut().enumerate() {
                for r in 0..nrows {
                    *vj -= jac[(r, j)].conj() * g[r];
                }
            }
            v
        };
        let mut lambda = 0.0;
        let step = loop {
            let mut m = jhj.clone();
            for i in 0..ncols {
                m[(i, i)] += Complex64::new(lambda, 0.0);
            }
            match m.solve(&rhs) {
                Ok(s) => break s,
                Err(_) if lambda < 1e6 => lambda = if lambda == 0.0 { 1e-8 } else { lambda * 100.0 },
                Err(_) => return None,
            }
        };
        // backtracking damping on the log-residual norm
        let mut t = 1.0;
        let mut improved = false;
        for _ in 0..30 {
            let cand: Vec<Complex64> = z
                .iter()
                .zip(&step)
                .map(|(&zj, &dj)| zj * (t * dj).exp())
                .collect();
            if cand
                .iter()
                .all(|c| c.norm() > 1e-8 && (c - 1.0).norm() > 1e-8 && c.norm() < 1e8)
                && norm2(&log_residual(nz, &cand)) < gn
            {
                z = cand;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if !improved {
            return None;
        }
    }
    Some(z)
}

impl CMat {
    fn transpose_conj(&self) -> CMat {
        let mut out = CMat::zeros(self.m, self.n);
        for i in 0..self.n {
            for j in 0..self.m {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DropStrategy {
    Forward,
    Reverse,
}

/// The reduced square system of §7.1-style meridian substitution: `n-1`
/// dependent gluing rows replaced by the meridian's cusp rows.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    /// `∏ z^A (1-z)^B = rhs` form (for solving/verifying).
    pub ab: NZMatrices,
    /// `∏ z^A_dg z''^B_dg = (-1)^ν` form (for flattenings and 1-loop).
    pub a_dg: Vec<Vec<i64>>,
    pub b_dg: Vec<Vec<i64>>,
    pub nu: Vec<i64>,
    /// Indices of the gluing rows that were removed.
    pub dropped: Vec<usize>,
}

/// Enhanced Neumann-Zagier datum: reduced matrices, a solution and a
/// flattening.
#[derive(Clone, Debug)]
pub struct NZDatum {
    pub a: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
    pub nu: Vec<i64>,
    pub z: Vec<Complex64>,
    pub f: Vec<i64>,
    pub f2: Vec<i64>,
}

fn dg_row(arow: &[i64], brow: &[i64], rhs: i8) -> (Vec<i64>, Vec<i64>, i64) {
    // (1-z) = -z·z'': ∏ z^A (1-z)^B = rhs  ⇔  ∏ z^{A+B} z''^B = rhs·(-1)^{ΣB}
    let a_dg: Vec<i64> = arow.iter().zip(brow).map(|(a, b)| a + b).collect();
    let nu = brow.iter().sum::<i64>() + i64::from(rhs == -1);
    (a_dg, brow.to_vec(), nu)
}

pub fn nz_reduce(
    tri: &ConcreteTriangulation,
    n: usize,
    meridian: &str,
    strategy: DropStrategy,
) -> Result<ReducedSystem> {
    let sys = generate(tri, n)?;
    let gl = to_nz(&sys.equations)?;
    let rows = gl.ab_rows();
    let r = rows.len();
    let order: Vec<usize> = match strategy {
        DropStrategy::Forward => (0..r).collect(),
        DropStrategy::Reverse => (0..r).rev().collect(),
    };
    let kept = intmat::independent_rows(&rows, &order);
    let dropped: Vec<usize> = (0..r).filter(|i| !kept.contains(i)).collect();
    if dropped.len() != n - 1 {
        return Err(Error::RankMismatch {
            expected: n - 1,
            found: dropped.len(),
        });
    }
    let cusp = cusp_to_nz(&generate_cusp(tri, n, meridian)?);
    let mut ab = NZMatrices {
        a: Vec::new(),
        b: Vec::new(),
        rhs: Vec::new(),
    };
    let mut a_dg = Vec::new();
    let mut b_dg = Vec::new();
    let mut nu = Vec::new();
    for &i in &kept {
        ab.a.push(gl.a[i].clone());
        ab.b.push(gl.b[i].clone());
        ab.rhs.push(gl.rhs[i]);
        let (ar, br, v) = dg_row(&gl.a[i], &gl.b[i], gl.rhs[i]);
        a_dg.push(ar);
        b_dg.push(br);
        nu.push(v);
    }
    for i in 0..cusp.a.len() {
        ab.a.push(cusp.a[i].clone());
        ab.b.push(cusp.b[i].clone());
        ab.rhs.push(cusp.rhs[i]);
        let (ar, br, v) = dg_row(&cusp.a[i], &cusp.b[i], cusp.rhs[i]);
        a_dg.push(ar);
        b_dg.push(br);
        nu.push(v);
    }
    Ok(ReducedSystem {
        ab,
        a_dg,
        b_dg,
        nu,
        dropped,
    })
}

/// Integer solution of `A f + B f'' = ν`.
pub fn find_flattening(a: &[Vec<i64>], b: &[Vec<i64>], nu: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
    let ncols = a.first().map_or(0, |r| r.len());
    let joint: Vec<Vec<i64>> = a
        .iter()
        .zip(b)
        .map(|(ar, br)| ar.iter().chain(br).copied().collect())
        .collect();
    let x = intmat::hnf_solve(&joint, nu)?;
    Ok((x[..ncols].to_vec(), x[ncols..].to_vec()))
}

/// `τ = ±½ det(A Δ_{z''} + B Δ_z^{-1}) · z^{f''} · z''^{-f}` (defined up to
/// sign).
pub fn one_loop(datum: &NZDatum) -> Result<Complex64> {
    let ncols = datum.z.len();
    let one = Complex64::new(1.0, 0.0);
    let zpp: Vec<Complex64> = datum.z.iter().map(|&z| -(one - z) / z).collect();
    let mut m = CMat::zeros(datum.a.len(), ncols);
    for (r, (arow, brow)) in datum.a.iter().zip(&datum.b).enumerate() {
        for j in 0..ncols {
            m[(r, j)] = (arow[j] as f64) * zpp[j] + (brow[j] as f64) / datum.z[j];
        }
    }
    if m.n != m.m {
        return Err(Error::Dimension("one_loop needs a square datum".into()));
    }
    let mut tau = m.det() * 0.5;
    for j in 0..ncols {
        tau *= datum.z[j].powi(datum.f2[j] as i32) * zpp[j].powi(-(datum.f[j] as i32));
    }
    Ok(tau)
}
