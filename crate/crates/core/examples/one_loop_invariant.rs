//! Neumann-Zagier reduction, flattenings, and the 1-loop invariant at the
//! geometric figure-eight solution: |τ₂| = √3/2 and |τ₃| = 21/2.
//!
//!     cargo run --example one_loop_invariant

use glueq::fixtures;
use glueq::solver::{find_flattening, nz_reduce, one_loop, DropStrategy, NZDatum};
use num_complex::Complex64 as C;

fn main() {
    let tri = fixtures::fig8();
    let x = C::from_polar(1.0, std::f64::consts::PI / 3.0);

    // with ε = (+1, -1) the second tetrahedron carries the conjugate shape
    let geometric: [(usize, Vec<C>); 2] = [
        (2, vec![x, x.conj()]),
        (3, {
            let w3 = x.conj();
            let z3 = C::new(1.0, 0.0) - w3;
            vec![z3, z3, z3, z3, w3, w3, w3, w3]
        }),
    ];

    for (n, z) in geometric {
        let red = nz_reduce(&tri, n, "mu", DropStrategy::Forward).unwrap();
        let res = glueq::gluing::verify_solution(&red.ab, &z, 1e-9).unwrap();
        let (f, f2) = find_flattening(&red.a_dg, &red.b_dg, &red.nu).unwrap();
        let datum = NZDatum {
            a: red.a_dg.clone(),
            b: red.b_dg.clone(),
            nu: red.nu.clone(),
            z,
            f,
            f2,
        };
        let tau = one_loop(&datum).unwrap();
        println!(
            "n={}: residual {:.2e}, flattening f={:?} f''={:?}, |τ| = {:.9}",
            n, res, datum.f, datum.f2, tau.norm()
        );
    }
}
