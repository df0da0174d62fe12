//! Integral points of Δ³_n and their identification classes on a
//! triangulation.
//!
//!     cargo run --example lattice_points

use glueq::lattice::{classify, points, quotient, subsimplices, PointKind};
use glueq::{fixtures, lattice};

fn main() {
    for n in 2..=4 {
        let pts = points(n);
        let by_kind = |k: PointKind| pts.iter().filter(|&&t| classify(t) == k).count();
        println!(
            "n={}: {} lattice points ({} vertex, {} edge, {} face, {} interior), {} subsimplices",
            n,
            pts.len(),
            by_kind(PointKind::Vertex),
            by_kind(PointKind::Edge),
            by_kind(PointKind::Face),
            by_kind(PointKind::Interior),
            subsimplices(n).len(),
        );
    }

    let tri = fixtures::fig8();
    for n in 2..=4 {
        let q = quotient(&tri, n).unwrap();
        let classes: Vec<_> = q.non_vertex_classes().collect();
        println!(
            "fig8 n={}: {} non-vertex classes (t*C(n+1,3) = {})",
            n,
            classes.len(),
            tri.num_tet() * lattice::binomial(n + 1, 3)
        );
        // each class lists its (tet, point) representatives with signs
        if n == 2 {
            for (i, cls) in &classes {
                let members: Vec<String> = cls
                    .reps
                    .iter()
                    .zip(&cls.signs)
                    .map(|(&(tet, t), &s)| {
                        format!(
                            "{}{}{}{}{}@{}",
                            if s < 0 { "-" } else { "+" },
                            t[0], t[1], t[2], t[3], tet
                        )
                    })
                    .collect();
                println!("  class {} ({:?}): {}", i, cls.kind, members.join(" "));
            }
        }
    }
}
