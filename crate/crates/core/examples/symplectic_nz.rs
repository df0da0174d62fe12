//! Neumann-Zagier matrices and the exact structural theorems: symplectic
//! row-pairing and the chain complex β* ∘ β = 0.
//!
//!     cargo run --example symplectic_nz

use glueq::fixtures;
use glueq::gluing::{beta_matrices, generate, symplectic_pairing, to_nz};

fn main() {
    for (name, tri) in [("fig8", fixtures::fig8()), ("five_tet", fixtures::five_tet())] {
        for n in 2..=5 {
            let sys = generate(&tri, n).unwrap();
            let nz = to_nz(&sys.equations).unwrap();
            let rows = nz.symplectic_rows(&tri.eps, sys.subs.len());
            let r = rows.len();
            let mut worst = 0i64;
            for i in 0..r {
                for j in i + 1..r {
                    worst = worst.max(symplectic_pairing(&rows[i], &rows[j]).unwrap().abs());
                }
            }
            println!(
                "{} n={}: (A|B) is {}x{}, max |<row_i, row_j>| = {}",
                name,
                n,
                r,
                rows[0].len(),
                worst
            );
        }
    }

    // β* ∘ β vanishes identically
    let tri = fixtures::fig8();
    for n in 2..=4 {
        let (beta, beta_star) = beta_matrices(&tri, n).unwrap();
        let r = beta_star.len();
        let mut max = 0i64;
        for i in 0..r {
            for j in 0..beta[0].len() {
                let dot: i64 = (0..beta.len()).map(|k| beta_star[i][k] * beta[k][j]).sum();
                max = max.max(dot.abs());
            }
        }
        println!("fig8 n={}: max |(β*∘β)_ij| = {}", n, max);
    }
}
