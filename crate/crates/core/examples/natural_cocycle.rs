//! The natural cocycle on the doubly truncated simplex: face products,
//! the SL/PGL coboundary, and unipotent peripheral holonomy for the
//! geometric figure-eight solution.
//!
//!     cargo run --example natural_cocycle

use glueq::cocycle::{
    cocycle_condition_residual, holonomy, is_unipotent, pgl_cocycle_from_shapes,
    sl_cocycle_from_ptolemy,
};
use glueq::fixtures;
use glueq::ptolemy::{decoration_to_ptolemy, mu, random_decoration};
use glueq::shape::ShapeAssignment;
use num_complex::Complex64 as C;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    // single simplex: cocycle condition and det β̃ = 1 for random data
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=4 {
        let g = random_decoration(n, &mut rng);
        let c = decoration_to_ptolemy(n, &g).unwrap();
        let z = mu(&c, 1e-8).unwrap();
        let pgl = pgl_cocycle_from_shapes(&z, 0).unwrap();
        let sl = sl_cocycle_from_ptolemy(&c, 0);
        let det = sl.cocycle.beta[&[0, 1, 2]].det();
        println!(
            "n={}: all 14 face products scalar: {}, det β̃^012 = {:.4}{:+.4}i",
            n,
            cocycle_condition_residual(&pgl, 1e-8).unwrap(),
            det.re,
            det.im
        );
    }

    // geometric n=3 figure-eight solution: boundary-unipotent holonomy
    let tri = fixtures::fig8();
    let w3 = C::new(0.5, -(3f64.sqrt()) / 2.0);
    let z3 = C::new(1.0, 0.0) - w3;
    let z = ShapeAssignment::from_flat(3, 2, &[z3, z3, z3, z3, w3, w3, w3, w3]);
    let cocs: Vec<_> = (0..2)
        .map(|t| pgl_cocycle_from_shapes(&z, t).unwrap())
        .collect();
    for curve in ["mu", "lambda"] {
        let steps = &tri.curve(curve).unwrap().steps;
        let h = holonomy(&tri, &cocs, steps).unwrap();
        println!(
            "fig8 n=3 geometric, {}: holonomy unipotent = {}",
            curve,
            is_unipotent(&h, 1e-6)
        );
    }
}
