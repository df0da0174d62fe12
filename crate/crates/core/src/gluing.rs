//! Generalized gluing equations, Neumann-Zagier matrices and the β/β* chain
//! complex.
//!
//! Variables are one shape coordinate per (tetrahedron, subsimplex), columns
//! ordered by tetrahedron and then lexicographic subsimplex.  Each non-vertex
//! integral point class yields one equation
//! `∏_{(Δ,t)∈p} ∏_{t=s+e} (z^e_{s,Δ})^{ε_Δ} = 1`,
//! recorded as role-exponent vectors `A'` (z), `B'` (z'), `C'` (z'').

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::lattice::{
    self, role_of_edge, subsimplices, LatticePoint, PointKind, Quotient, Role,
    EDGES,
};
use crate::triangulation::ConcreteTriangulation;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct GluingEquation {
    /// Class id in the quotient, and its canonical representative.
    pub class_id: usize,
    pub rep: (usize, LatticePoint),
    pub kind: PointKind,
    /// Role exponent vectors indexed by column (tet, subsimplex).
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    /// Always +1 for gluing equations; cusp equations reuse the type with ±1.
    pub rhs_sign: i8,
}

#[derive(Clone, Debug)]
pub struct GluingSystem {
    pub n: usize,
    pub num_tet: usize,
    /// Lexicographically ordered subsimplices of Δ³_n (points of Δ³_{n-2}).
    pub subs: Vec<LatticePoint>,
    pub quotient: Quotient,
    pub equations: Vec<GluingEquation>,
}

/// Neumann-Zagier form: `∏ z^A (1-z)^B = rhs`.
#[derive(Clone, Debug)]
pub struct NZMatrices {
    pub a: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
    pub rhs: Vec<i8>,
}

impl GluingSystem {
    pub fn num_cols(&self) -> usize {
        self.num_tet * self.subs.len()
    }

    pub fn col(&self, tet: usize, s: LatticePoint) -> usize {
        let si = self.subs.binary_search(&s).expect("not a subsimplex");
        tet * self.subs.len() + si
    }

    pub fn col_label(&self, col: usize) -> (usize, LatticePoint) {
        (col / self.subs.len(), self.subs[col % self.subs.len()])
    }
}

/// One gluing equation per non-vertex integral point class.
pub fn generate(tri: &ConcreteTriangulation, n: usize) -> Result<GluingSystem> {
    let quotient = lattice::quotient(tri, n)?;
    let subs = subsimplices(n);
    let num_tet = tri.num_tet();
    let ncols = num_tet * subs.len();
    let mut equations = Vec::new();
    for (class_id, class) in quotient.non_vertex_classes() {
        let mut eq = GluingEquation {
            class_id,
            rep: class.reps[0],
            kind: class.kind,
            a: vec![0; ncols],
            b: vec![0; ncols],
            c: vec![0; ncols],
            rhs_sign: 1,
        };
        for &(tet, t) in &class.reps {
            for e in EDGES {
                let Some(s) = lattice::sub(t, e) else { continue };
                let Ok(si) = subs.binary_search(&s) else { continue };
                let col = tet * subs.len() + si;
                let eps = i64::from(tri.eps[tet]);
                match role_of_edge(e) {
                    Role::Z => eq.a[col] += eps,
                    Role::Zp => eq.b[col] += eps,
                    Role::Zpp => eq.c[col] += eps,
                }
            }
        }
        equations.push(eq);
    }
    Ok(GluingSystem {
        n,
        num_tet,
        subs,
        quotient,
        equations,
    })
}

/// Substitute `z' = 1/(1-z)`, `z'' = -(1-z)/z`:
/// `z^{A'} z'^{B'} z''^{C'} = (-1)^{ΣC'} z^{A'-C'} (1-z)^{C'-B'}`.
/// Requires every ΣC' even so the sign is absorbed.
pub fn to_nz(equations: &[GluingEquation]) -> Result<NZMatrices> {
    let mut a = Vec::with_capacity(equations.len());
    let mut b = Vec::with_capacity(equations.len());
    let mut rhs = Vec::with_capacity(equations.len());
    for eq in equations {
        let csum: i64 = eq.c.iter().sum();
        if csum.rem_euclid(2) != 0 {
            return Err(Error::OddCSum(format!("{:?}", eq.rep)));
        }
        a.push(eq.a.iter().zip(&eq.c).map(|(x, y)| x - y).collect());
        b.push(eq.c.iter().zip(&eq.b).map(|(x, y)| x - y).collect());
        rhs.push(eq.rhs_sign);
    }
    Ok(NZMatrices { a, b, rhs })
}

impl NZMatrices {
    /// Rows of the combined `(A|B)` matrix.
    pub fn ab_rows(&self) -> Vec<Vec<i64>> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(a, b)| a.iter().chain(b).copied().collect())
            .collect()
    }

    /// Rows of `(A|B)` in the orientation-adapted symplectic basis.
    ///
    /// The per-tetrahedron form follows the tetrahedron's orientation, so for
    /// tetrahedra whose vertex ordering disagrees with the manifold
    /// orientation (ε = -1) the natural basis pair is `(0110, 1100)` instead
    /// of `(1100, 0110)`; in matrix terms the A- and B-entries of those
    /// columns swap.  In this basis all row pairs Poisson-commute under the
    /// standard form [[0,I],[-I,0]].
    pub fn symplectic_rows(&self, eps: &[i8], cols_per_tet: usize) -> Vec<Vec<i64>> {
        let m = self.a.first().map_or(0, |r| r.len());
        self.a
            .iter()
            .zip(&self.b)
            .map(|(a, b)| {
                let mut r = vec![0i64; 2 * m];
                for j in 0..m {
                    if eps[j / cols_per_tet] == 1 {
                        r[j] = a[j];
                        r[m + j] = b[j];
                    } else {
                        r[j] = b[j];
                        r[m + j] = a[j];
                    }
                }
                r
            })
            .collect()
    }
}

/// `v·J·wᵀ` with `J = [[0,I],[-I,0]]` in exact integer arithmetic.
pub fn symplectic_pairing(v: &[i64], w: &[i64]) -> Result<i64> {
    if v.len() != w.len() || v.len() % 2 != 0 {
        return Err(Error::Dimension(format!(
            "symplectic pairing needs equal even lengths, got {} and {}",
            v.len(),
            w.len()
        )));
    }
    let h = v.len() / 2;
    let mut out = 0i64;
    for i in 0..h {
        out = out
            .checked_add(v[i].checked_mul(w[h + i]).unwrap())
            .unwrap()
            .checked_sub(v[h + i].checked_mul(w[i]).unwrap())
            .unwrap();
    }
    Ok(out)
}

/// The chain-complex matrices: `β` (2m × r, columns = non-vertex classes,
/// rows = the basis {(Δ,s,1100)} ∪ {(Δ,s,0110)}) and `β*` (r × 2m).
///
/// `β` blocks are `A'-C'` (1100 rows) and `B'-C'` (0110 rows); the second
/// block is the negative of the NZ `B`, which is the convention under which
/// `β*∘β = 0` holds.  `β*` is the transpose of the exponent matrix of the
/// monomial map from Ptolemy to shape coordinates.
pub fn beta_matrices(tri: &ConcreteTriangulation, n: usize) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let sys = generate(tri, n)?;
    let m = sys.num_cols();
    let r = sys.equations.len();
    // class id -> equation row position
    let mut row_of_class = BTreeMap::new();
    for (i, eq) in sys.equations.iter().enumerate() {
        row_of_class.insert(eq.class_id, i);
    }
    let mut beta = vec![vec![0i64; r]; 2 * m];
    for (i, eq) in sys.equations.iter().enumerate() {
        for col in 0..m {
            beta[col][i] = eq.a[col] - eq.c[col];
            beta[m + col][i] = eq.b[col] - eq.c[col];
        }
    }
    let mut beta_star = vec![vec![0i64; 2 * m]; r];
    for tet in 0..sys.num_tet {
        for (si, &s) in sys.subs.iter().enumerate() {
            let col = tet * sys.subs.len() + si;
            let mut put = |e: [u8; 4], block: usize, coeff: i64| {
                let t = lattice::add(s, e);
                let (cid, _) = sys.quotient.class_of(tet, t);
                let row = row_of_class[&cid];
                beta_star[row][block * m + col] += coeff;
            };
            // z^{1100}_s = c_{s+1001} c_{s+0110} / (c_{s+1010} c_{s+0101})
            put([1, 0, 0, 1], 0, 1);
            put([0, 1, 1, 0], 0, 1);
            put([1, 0, 1, 0], 0, -1);
            put([0, 1, 0, 1], 0, -1);
            // z^{0110}_s = c_{s+0101} c_{s+1010} / (c_{s+1100} c_{s+0011})
            put([1, 0, 1, 0], 1, 1);
            put([0, 1, 0, 1], 1, 1);
            put([1, 1, 0, 0], 1, -1);
            put([0, 0, 1, 1], 1, -1);
        }
    }
    Ok((beta, beta_star))
}

/// Max-modulus residual of `∏ z^A (1-z)^B - rhs` over all rows.
pub fn verify_solution(nz: &NZMatrices, z: &[Complex64], tol: f64) -> Result<f64> {
    check_nondegenerate(z, tol)?;
    let mut worst = 0.0f64;
    for (row, (arow, brow)) in nz.a.iter().zip(&nz.b).enumerate() {
        if arow.len() != z.len() {
            return Err(Error::Dimension(format!(
                "row has {} columns, solution has {}",
                arow.len(),
                z.len()
            )));
        }
        let mut p = Complex64::new(1.0, 0.0);
        for (j, &zj) in z.iter().enumerate() {
            p *= zj.powi(arow[j] as i32) * (Complex64::new(1.0, 0.0) - zj).powi(brow[j] as i32);
        }
        let res = (p - f64::from(nz.rhs[row])).norm();
        worst = worst.max(res);
    }
    Ok(worst)
}

pub fn check_nondegenerate(z: &[Complex64], tol: f64) -> Result<()> {
    for &zj in z {
        if zj.norm() < tol {
            return Err(Error::DegenerateShape(0, zj.norm()));
        }
        if (zj - 1.0).norm() < tol {
            return Err(Error::DegenerateShape(1, (zj - 1.0).norm()));
        }
    }
    Ok(())
}

/// A canonical sparse signature of a role-exponent row: zero entries dropped,
/// and the whole row inverted if the exponent at the least key is negative.
/// Gluing rows are only well-defined up to inversion (rhs is 1), and the
/// printed reference sets mix both conventions.
pub type RoleRow = BTreeMap<(usize, LatticePoint, Role), i64>;

pub fn canonical_row(row: &RoleRow) -> RoleRow {
    let mut out: RoleRow = row.iter().filter(|&(_, &v)| v != 0).map(|(k, &v)| (*k, v)).collect();
    if let Some((_, &first)) = out.iter().next() {
        if first < 0 {
            for v in out.values_mut() {
                *v = -*v;
            }
        }
    }
    out
}

impl GluingEquation {
    pub fn role_row(&self, sys: &GluingSystem) -> RoleRow {
        let mut row = RoleRow::new();
        for col in 0..sys.num_cols() {
            let (tet, s) = sys.col_label(col);
            for (role, val) in [
                (Role::Z, self.a[col]),
                (Role::Zp, self.b[col]),
                (Role::Zpp, self.c[col]),
            ] {
                if val != 0 {
                    row.insert((tet, s, role), val);
                }
            }
        }
        row
    }
}

/// Text form mirroring the usual notation, e.g.
/// `z_{1200,0}^{1100} * z_{0102,1}^{0110} = 1`.
pub fn equation_text(sys: &GluingSystem, eq: &GluingEquation) -> String {
    let mut parts = Vec::new();
    for ((tet, s, role), val) in eq.role_row(sys) {
        let e = lattice::edge_of_role(role);
        let estr: String = e.iter().map(|x| x.to_string()).collect();
        let sstr: String = s.iter().map(|x| x.to_string()).collect();
        let mut part = format!("z_{{{},{}}}^{{{}}}", sstr, tet, estr);
        if val != 1 {
            part.push_str(&format!("^{}", val));
        }
        parts.push(part);
    }
    format!(
        "{} = {}",
        parts.join(" * "),
        if eq.rhs_sign == 1 { "1" } else { "-1" }
    )
}

pub fn system_json(sys: &GluingSystem) -> serde_json::Value {
    let cols: Vec<_> = (0..sys.num_cols())
        .map(|c| {
            let (tet, s) = sys.col_label(c);
            serde_json::json!({"tet": tet, "s": s})
        })
        .collect();
    let eqs: Vec<_> = sys
        .equations
        .iter()
        .map(|eq| {
            serde_json::json!({
                "rep": {"tet": eq.rep.0, "point": eq.rep.1},
                "kind": format!("{:?}", eq.kind).to_lowercase(),
                "a_prime": eq.a, "b_prime": eq.b, "c_prime": eq.c,
                "rhs_sign": eq.rhs_sign,
            })
        })
        .collect();
    serde_json::json!({"n": sys.n, "columns": cols, "equations": eqs})
}

pub fn nz_csv(nz: &NZMatrices) -> String {
    let mut out = String::new();
    for (arow, brow) in nz.a.iter().zip(&nz.b) {
        let cells: Vec<String> = arow.iter().chain(brow).map(|v| v.to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::triangulation::single_simplex;

    #[test]
    fn counting_fig8() {
        let tri = fixtures::fig8();
        for (n, want) in [(2usize, 2usize), (3, 8), (4, 20), (5, 40)] {
            let sys = generate(&tri, n).unwrap();
            assert_eq!(sys.equations.len(), want, "n = {}", n);
            // torus boundary: equations = shape coordinates
            assert_eq!(sys.num_cols(), want);
        }
    }

    #[test]
    fn single_simplex_interior_n7() {
        // interior point (2,2,2,1) of one free simplex: one factor per edge
        let sys = generate(&single_simplex(), 7).unwrap();
        let eq = sys
            .equations
            .iter()
            .find(|e| e.rep.1 == [2, 2, 2, 1])
            .unwrap();
        let row = eq.role_row(&sys);
        // one factor per decomposition t = s + e, six edges total
        let mut expect = RoleRow::new();
        for e in EDGES {
            let s = lattice::sub([2, 2, 2, 1], e).unwrap();
            expect.insert((0, s, role_of_edge(e)), 1);
        }
        assert_eq!(row, expect);
    }

    #[test]
    fn even_c_sums_and_nz_shape() {
        let tri = fixtures::fig8();
        for n in 2..=5 {
            let sys = generate(&tri, n).unwrap();
            let nz = to_nz(&sys.equations).unwrap();
            assert_eq!(nz.a.len(), sys.equations.len());
            assert_eq!(nz.a[0].len(), sys.num_cols());
        }
    }

    #[test]
    fn symplectic_basics() {
        assert_eq!(symplectic_pairing(&[1, 0, 0, 0], &[0, 0, 1, 0]).unwrap(), 1);
        let v = [3, -1, 4, 7];
        assert_eq!(symplectic_pairing(&v, &v).unwrap(), 0);
        assert!(symplectic_pairing(&[1, 2], &[1, 2, 3]).is_err());
        assert!(symplectic_pairing(&[1, 2, 3], &[1, 2, 3]).is_err());
    }

    #[test]
    fn rows_poisson_commute() {
        for tri in [fixtures::fig8(), fixtures::five_tet()] {
            for n in 2..=4 {
                let sys = generate(&tri, n).unwrap();
                let rows = to_nz(&sys.equations)
                    .unwrap()
                    .symplectic_rows(&tri.eps, sys.subs.len());
                for i in 0..rows.len() {
                    for j in i..rows.len() {
                        assert_eq!(symplectic_pairing(&rows[i], &rows[j]).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn beta_star_beta_zero() {
        let tri = fixtures::fig8();
        for n in 2..=4 {
            let (beta, beta_star) = beta_matrices(&tri, n).unwrap();
            let r = beta[0].len();
            for i in 0..beta_star.len() {
                for j in 0..r {
                    let dot: i64 = (0..beta.len()).map(|k| beta_star[i][k] * beta[k][j]).sum();
                    assert_eq!(dot, 0, "(β*∘β)[{}][{}] != 0 at n={}", i, j, n);
                }
            }
        }
    }

    #[test]
    fn verify_regular_shape_n2() {
        let tri = fixtures::fig8();
        let sys = generate(&tri, 2).unwrap();
        let nz = to_nz(&sys.equations).unwrap();
        let x = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let z = vec![x; sys.num_cols()];
        assert!(verify_solution(&nz, &z, 1e-9).unwrap() < 1e-12);
    }

    #[test]
    fn canonical_row_inversion() {
        let mut row = RoleRow::new();
        row.insert((0, [1, 0, 0, 0], Role::Z), -1);
        row.insert((1, [0, 1, 0, 0], Role::Zp), 2);
        let c = canonical_row(&row);
        assert_eq!(c[&(0, [1, 0, 0, 0], Role::Z)], 1);
        assert_eq!(c[&(1, [0, 1, 0, 0], Role::Zp)], -2);
    }
}
