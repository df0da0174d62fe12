//! Generalized gluing equations for the figure-eight knot complement.
//!
//!     cargo run --example gluing_equations

use glueq::fixtures;
use glueq::gluing::{equation_text, generate};

fn main() {
    let tri = fixtures::fig8();
    for n in [2usize, 3] {
        let sys = generate(&tri, n).unwrap();
        println!("n={}: {} equations in {} shape columns", n, sys.equations.len(), sys.num_cols());
        for eq in &sys.equations {
            println!("  {}", equation_text(&sys, eq));
        }
    }
}
