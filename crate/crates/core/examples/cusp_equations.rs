//! Level cusp equations along the peripheral curves of the figure-eight
//! triangulation, and their symplectic compatibility with the gluing rows.
//!
//!     cargo run --example cusp_equations

use glueq::cusp::{cusp_to_nz, generate_cusp};
use glueq::fixtures;
use glueq::gluing::{generate, symplectic_pairing, to_nz};
use glueq::lattice::Role;

fn role_char(r: Role) -> &'static str {
    match r {
        Role::Z => "",
        Role::Zp => "'",
        Role::Zpp => "''",
    }
}

fn main() {
    let tri = fixtures::fig8();
    let n = 3;
    let sys = generate(&tri, n).unwrap();
    for curve in ["mu", "lambda"] {
        let eqs = generate_cusp(&tri, n, curve).unwrap();
        println!("{}:", curve);
        for eq in &eqs {
            let factors: Vec<String> = eq
                .role_row(&sys)
                .iter()
                .map(|(&(tet, s, role), &m)| {
                    let var = if tet == 0 { "z" } else { "w" };
                    let exp = if m == 1 { String::new() } else { format!("^{}", m) };
                    format!("{}{}_{}{}{}{}{}", var, role_char(role), s[0], s[1], s[2], s[3], exp)
                })
                .collect();
            println!(
                "  level {}: {} = {}",
                eq.level,
                factors.join(" "),
                eq.rhs_sign
            );
        }
    }

    // every cusp row Poisson-commutes with every gluing row
    let spn = sys.subs.len();
    let gl = to_nz(&sys.equations).unwrap().symplectic_rows(&tri.eps, spn);
    let mut worst = 0i64;
    for curve in ["mu", "lambda"] {
        let cu = cusp_to_nz(&generate_cusp(&tri, n, curve).unwrap()).symplectic_rows(&tri.eps, spn);
        for c in &cu {
            for g in &gl {
                worst = worst.max(symplectic_pairing(c, g).unwrap().abs());
            }
        }
    }
    println!("max |<cusp row, gluing row>| = {}", worst);
}
