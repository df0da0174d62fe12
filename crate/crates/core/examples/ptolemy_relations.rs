//! Ptolemy relations with identification signs on a triangulation.
//!
//!     cargo run --example ptolemy_relations

use glueq::fixtures;
use glueq::lattice::quotient;
use glueq::ptolemy::{generate_relations, relation_text};

fn main() {
    let tri = fixtures::fig8();
    for n in [2usize, 3] {
        let q = quotient(&tri, n).unwrap();
        let rels = generate_relations(&tri, n).unwrap();
        println!("n={}: {} relations", n, rels.len());
        for rel in &rels {
            println!("  {}", relation_text(rel, &q));
        }
    }
}
