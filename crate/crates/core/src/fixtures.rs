//! Bundled triangulations used by tests and examples.

use crate::triangulation::ConcreteTriangulation;

pub const FIG8_JSON: &str = include_str!("../fixtures/fig8.json");
pub const FIVE_TET_JSON: &str = include_str!("../fixtures/five_tet.json");

/// The standard 2-tetrahedron triangulation of the figure-eight knot
/// complement, with meridian and longitude curves.
pub fn fig8() -> ConcreteTriangulation {
    ConcreteTriangulation::parse(FIG8_JSON).expect("bundled fig8 fixture is valid")
}

/// A 5-tetrahedron retriangulation of the same manifold (no curves).
pub fn five_tet() -> ConcreteTriangulation {
    ConcreteTriangulation::parse(FIVE_TET_JSON).expect("bundled five_tet fixture is valid")
}

/// Reference equation sets transcribed from the published figure-eight
/// computations, with the parser for their token format.
pub mod expected {
    use crate::gluing::RoleRow;
    use crate::lattice::{self, role_of_edge, LatticePoint, EDGES};

    pub const FIG8_N3_GLUING: &str = include_str!("../fixtures/expected/fig8_n3_gluing.txt");
    pub const FIG8_N4_GLUING: &str = include_str!("../fixtures/expected/fig8_n4_gluing.txt");
    pub const FIG8_N3_CUSP_MU: &str = include_str!("../fixtures/expected/fig8_n3_cusp_mu.txt");
    pub const FIG8_N4_CUSP_MU: &str = include_str!("../fixtures/expected/fig8_n4_cusp_mu.txt");
    pub const FIG8_N3_CUSP_LAMBDA: &str =
        include_str!("../fixtures/expected/fig8_n3_cusp_lambda.txt");
    pub const FIG8_N4_CUSP_LAMBDA: &str =
        include_str!("../fixtures/expected/fig8_n4_cusp_lambda.txt");

    #[derive(Clone, Debug, PartialEq, Eq)]
    pub struct ExpectedRow {
        pub row: RoleRow,
        pub rhs: i8,
    }

    fn digits(s: &str) -> LatticePoint {
        let b = s.as_bytes();
        assert_eq!(b.len(), 4, "bad 4-digit group {:?}", s);
        [b[0] - b'0', b[1] - b'0', b[2] - b'0', b[3] - b'0']
    }

    /// One row per non-comment line.  Tokens: `z^{eeee}_{ssss}` (shape
    /// factor, `z` = tet 0, `w` = tet 1) and `X_{tttt}` (face X-coordinate,
    /// `X` = tet 0, `Y` = tet 1), each with an optional `^-1` suffix.
    /// X factors are expanded into shape exponents via `X_t = -∏_{s+e=t}
    /// z^e_s`, with each X token multiplying the right-hand side by -1.
    pub fn parse(text: &str, n: usize) -> Vec<ExpectedRow> {
        let mut out = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut row = RoleRow::new();
            let mut rhs = 1i8;
            let put = |row: &mut RoleRow, tet: usize, s: LatticePoint, e: LatticePoint, m: i64| {
                let key = (tet, s, role_of_edge(e));
                *row.entry(key).or_insert(0) += m;
                if row[&key] == 0 {
                    row.remove(&key);
                }
            };
            for tok in line.split_whitespace() {
                let (body, m) = match tok.strip_suffix("^-1") {
                    Some(b) => (b, -1i64),
                    None => (tok, 1i64),
                };
                let kind = body.as_bytes()[0] as char;
                let tet = match kind {
                    'z' | 'X' => 0,
                    'w' | 'Y' => 1,
                    _ => panic!("bad token {:?}", tok),
                };
                match kind {
                    'z' | 'w' => {
                        // z^{eeee}_{ssss}
                        let rest = &body[1..];
                        let e = digits(&rest[2..6]);
                        let s = digits(&rest[9..13]);
                        put(&mut row, tet, s, e, m);
                    }
                    _ => {
                        // X_{tttt}: expand and flip rhs
                        let t = digits(&body[3..7]);
                        for e in EDGES {
                            let Some(s) = lattice::sub(t, e) else { continue };
                            if lattice::level(s) == n - 2 {
                                put(&mut row, tet, s, e, m);
                            }
                        }
                        rhs = -rhs;
                    }
                }
            }
            out.push(ExpectedRow { row, rhs });
        }
        out
    }
}
