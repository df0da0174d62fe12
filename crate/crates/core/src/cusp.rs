//! Level cusp equations along peripheral edge paths, in simplified
//! multiplicative form over the same shape-coordinate columns as the gluing
//! system.
//!
//! Each short-edge step contributes a single factor `(z^{v0+v1}_s)^{-ε⟲·dir}`
//! at `s = (l-1)v0 + (n-1-l)v1`; each middle-edge step contributes the
//! X-coordinate factors `-∏_k X_{k}^{ε⟲·dir}` at `t_k = k·v2 + l·v0 +
//! (n-k-l)·v1`, expanded into shape exponents via `X_t = -∏_{s+e=t} z^e_s`,
//! with the minus signs accumulated into `rhs_sign`.

use num_complex::Complex64;

use crate::gluing::{GluingSystem, NZMatrices, RoleRow};
use crate::lattice::{self, role_of_edge, subsimplices, LatticePoint, Role, EDGES};
use crate::ptolemy::eps_cyclic;
use crate::shape::ShapeAssignment;
use crate::triangulation::{ConcreteTriangulation, StepKind};
use crate::Result;

#[derive(Clone, Debug)]
pub struct CuspEquation {
    pub curve: String,
    pub level: usize,
    /// Role exponents per column (tet, subsimplex), as in [`GluingSystem`].
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    pub rhs_sign: i8,
}

pub fn generate_cusp(
    tri: &ConcreteTriangulation,
    n: usize,
    curve_name: &str,
) -> Result<Vec<CuspEquation>> {
    let curve = tri.curve(curve_name)?;
    let subs = subsimplices(n);
    let ncols = tri.num_tet() * subs.len();
    let mut out = Vec::with_capacity(n - 1);
    for level in 1..n {
        let mut eq = CuspEquation {
            curve: curve_name.to_string(),
            level,
            a: vec![0; ncols],
            b: vec![0; ncols],
            c: vec![0; ncols],
            rhs_sign: 1,
        };
        let put = |eq: &mut CuspEquation, tet: usize, s: LatticePoint, e: LatticePoint, m: i64| {
            let si = subs.binary_search(&s).expect("not a subsimplex");
            let col = tet * subs.len() + si;
            match role_of_edge(e) {
                Role::Z => eq.a[col] += m,
                Role::Zp => eq.b[col] += m,
                Role::Zpp => eq.c[col] += m,
            }
        };
        for step in &curve.steps {
            let [v0, v1, v2] = step.triple.map(usize::from);
            let ep = i64::from(eps_cyclic(step.triple));
            let d = i64::from(step.dir);
            match step.kind {
                StepKind::Short => {
                    let e = lattice::add(lattice::unit(v0), lattice::unit(v1));
                    let mut s = [0u8; 4];
                    s[v0] = (level - 1) as u8;
                    s[v1] += (n - 1 - level) as u8;
                    put(&mut eq, step.tet, s, e, -ep * d);
                }
                StepKind::Middle => {
                    // each middle step multiplies the rhs by (-1)^{n-l}
                    if (n - level) % 2 == 1 {
                        eq.rhs_sign = -eq.rhs_sign;
                    }
                    for k in 1..n - level {
                        let mut t = [0u8; 4];
                        t[v2] += k as u8;
                        t[v0] += level as u8;
                        t[v1] += (n - k - level) as u8;
                        for e in EDGES {
                            let Some(s) = lattice::sub(t, e) else { continue };
                            if subs.binary_search(&s).is_ok() {
                                put(&mut eq, step.tet, s, e, ep * d);
                            }
                        }
                    }
                }
            }
        }
        out.push(eq);
    }
    Ok(out)
}

impl CuspEquation {
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

    /// Value of the monomial minus `rhs_sign` on a shape assignment.
    pub fn residual(&self, z: &ShapeAssignment, sys: &GluingSystem) -> f64 {
        let mut p = Complex64::new(1.0, 0.0);
        for ((tet, s, role), m) in self.role_row(sys) {
            p *= crate::shape::role_value(z.z_at(tet, s), role).powi(m as i32);
        }
        (p - f64::from(self.rhs_sign)).norm()
    }
}

/// Convert cusp equations into NZ rows over the same columns:
/// `∏ z^{A'-C'} (1-z)^{C'-B'} = rhs_sign · (-1)^{ΣC'}`.
pub fn cusp_to_nz(equations: &[CuspEquation]) -> NZMatrices {
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut rhs = Vec::new();
    for eq in equations {
        let csum: i64 = eq.c.iter().sum();
        a.push(eq.a.iter().zip(&eq.c).map(|(x, y)| x - y).collect());
        b.push(eq.c.iter().zip(&eq.b).map(|(x, y)| x - y).collect());
        rhs.push(if csum.rem_euclid(2) == 0 {
            eq.rhs_sign
        } else {
            -eq.rhs_sign
        });
    }
    NZMatrices { a, b, rhs }
}

/// Max residual over equations.
pub fn verify_cusp(
    equations: &[CuspEquation],
    z: &ShapeAssignment,
    sys: &GluingSystem,
    tol: f64,
) -> Result<f64> {
    z.check_generic(tol)?;
    Ok(equations
        .iter()
        .map(|eq| eq.residual(z, sys))
        .fold(0.0, f64::max))
}
