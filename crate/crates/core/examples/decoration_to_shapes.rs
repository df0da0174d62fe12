//! From a random generic decoration to Ptolemy coordinates to shapes: the
//! monomial map μ and the equations it satisfies by construction.
//!
//!     cargo run --example decoration_to_shapes

use glueq::ptolemy::{decoration_to_ptolemy, mu, random_decoration};
use glueq::shape::internal_determinacy_residual;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for n in 2..=4 {
        let g = random_decoration(n, &mut rng);
        let c = decoration_to_ptolemy(n, &g).unwrap();
        println!(
            "n={}: Ptolemy relation residual {:.2e}",
            n,
            c.relation_residual()
        );
        let z = mu(&c, 1e-8).unwrap();
        // shapes of one subsimplex multiply to -1 pairwise-correctly, and the
        // interior equations hold identically in the image of μ
        println!("      interior residual of μ(c): {:.2e}", internal_determinacy_residual(&z));
        let s = glueq::lattice::subsimplices(n)[0];
        let z0 = z.z_at(0, s);
        println!(
            "      first shape z_{}{}{}{} = {:.4}{:+.4}i, z z' z'' = {:.4}",
            s[0],
            s[1],
            s[2],
            s[3],
            z0.re,
            z0.im,
            (z0 * (1.0 / (1.0 - z0)) * (-(1.0 - z0) / z0)).re
        );
    }
}
