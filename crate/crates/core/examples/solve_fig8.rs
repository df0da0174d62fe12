//! Numerically solve the figure-eight gluing + cusp equations by damped
//! Newton iteration from seeded random starts.
//!
//!     cargo run --release --example solve_fig8

use glueq::cusp::{cusp_to_nz, generate_cusp};
use glueq::fixtures;
use glueq::gluing::{generate, to_nz};
use glueq::solver::{newton_solve, SolveConfig};

fn main() {
    let tri = fixtures::fig8();
    for n in [2usize, 3] {
        let sys = generate(&tri, n).unwrap();
        let mut nz = to_nz(&sys.equations).unwrap();
        for curve in ["mu", "lambda"] {
            let cu = cusp_to_nz(&generate_cusp(&tri, n, curve).unwrap());
            nz.a.extend(cu.a);
            nz.b.extend(cu.b);
            nz.rhs.extend(cu.rhs);
        }
        let cfg = SolveConfig {
            restarts: 200,
            seed: 1,
            ..Default::default()
        };
        let sols = newton_solve(&nz, &cfg);
        println!("n={}: {} solutions of {} equations in {} unknowns", n, sols.len(), nz.a.len(), sys.num_cols());
        for s in &sols {
            let txt: Vec<String> = s.iter().map(|z| format!("{:.4}{:+.4}i", z.re, z.im)).collect();
            println!("  [{}]", txt.join(", "));
        }
    }
}
