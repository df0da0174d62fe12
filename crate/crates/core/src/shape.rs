//! Shape assignments: one cross-ratio coordinate `z = z^{1100}_s` per
//! (tetrahedron, subsimplex), with the other five edge parameters derived
//! through `z' = 1/(1-z)`, `z'' = -(1-z)/z` and the opposite-edge symmetry.

use num_complex::Complex64;

use crate::lattice::{self, role_of_edge, subsimplices, LatticePoint, PointKind, Role, EDGES};
use crate::perm::Perm4;
use crate::{Error, Result};

pub fn role_value(z: Complex64, role: Role) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    match role {
        Role::Z => z,
        Role::Zp => one / (one - z),
        Role::Zpp => -(one - z) / z,
    }
}

#[derive(Clone, Debug)]
pub struct ShapeAssignment {
    pub n: usize,
    /// Lexicographically ordered subsimplices, shared across tetrahedra.
    pub subs: Vec<LatticePoint>,
    /// `z[tet][sub_index]` is `z^{1100}` at that subsimplex.
    pub z: Vec<Vec<Complex64>>,
}

impl ShapeAssignment {
    pub fn new(n: usize, z: Vec<Vec<Complex64>>) -> Self {
        let subs = subsimplices(n);
        assert!(z.iter().all(|row| row.len() == subs.len()));
        ShapeAssignment { n, subs, z }
    }

    /// Flat vector in column order (tet, lex subsimplex) — the gluing-system
    /// variable order.
    pub fn flat(&self) -> Vec<Complex64> {
        self.z.iter().flatten().copied().collect()
    }

    pub fn from_flat(n: usize, num_tet: usize, flat: &[Complex64]) -> Self {
        let subs = subsimplices(n);
        assert_eq!(flat.len(), num_tet * subs.len());
        let z = flat.chunks(subs.len()).map(|c| c.to_vec()).collect();
        ShapeAssignment { n, subs, z }
    }

    pub fn num_tet(&self) -> usize {
        self.z.len()
    }

    pub fn z_at(&self, tet: usize, s: LatticePoint) -> Complex64 {
        let si = self.subs.binary_search(&s).expect("not a subsimplex");
        self.z[tet][si]
    }

    /// `z^e_s` for any of the six edges `e`.
    pub fn edge_value(&self, tet: usize, s: LatticePoint, e: LatticePoint) -> Complex64 {
        role_value(self.z_at(tet, s), role_of_edge(e))
    }

    /// Check `z ∉ {0,1}` for every coordinate.
    pub fn check_generic(&self, tol: f64) -> Result<()> {
        for row in &self.z {
            for &z in row {
                if z.norm() < tol {
                    return Err(Error::DegenerateShape(0, z.norm()));
                }
                if (z - 1.0).norm() < tol {
                    return Err(Error::DegenerateShape(1, (z - 1.0).norm()));
                }
            }
        }
        Ok(())
    }
}

/// `(σ*z)^e_s = (z^{σ(e)}_{σ(s)})^{sgn σ}` on a single simplex.
pub fn pullback_shape(sigma: &Perm4, z: &ShapeAssignment) -> ShapeAssignment {
    assert_eq!(z.num_tet(), 1);
    let vals = z
        .subs
        .iter()
        .map(|&s| {
            let v = z.edge_value(0, lattice::act(sigma, s), lattice::act(sigma, [1, 1, 0, 0]));
            if sigma.is_even() {
                v
            } else {
                1.0 / v
            }
        })
        .collect();
    ShapeAssignment::new(z.n, vec![vals])
}

/// `X_t = -∏_{t=s+e} z^e_s` at a face point `t`.
pub fn x_coordinate_from_shapes(
    z: &ShapeAssignment,
    tet: usize,
    t: LatticePoint,
) -> Result<Complex64> {
    if lattice::classify(t) != PointKind::Face {
        return Err(Error::NotFacePoint(t));
    }
    let mut p = Complex64::new(-1.0, 0.0);
    for e in EDGES {
        let Some(s) = lattice::sub(t, e) else { continue };
        if z.subs.binary_search(&s).is_ok() {
            p *= z.edge_value(tet, s, e);
        }
    }
    Ok(p)
}

/// Recompute each `z_s` with `s₂,s₃ > 0` from the single-simplex interior
/// equation at `t = s + 1100` and return the worst deviation from the stored
/// value.  A shape assignment that satisfies the interior equations is
/// determined by its values on the two faces `s₂ = 0` and `s₃ = 0`.
pub fn internal_determinacy_residual(z: &ShapeAssignment) -> f64 {
    assert_eq!(z.num_tet(), 1);
    let mut worst = 0.0f64;
    for &s in &z.subs {
        if s[2] == 0 || s[3] == 0 {
            continue;
        }
        let t = lattice::add(s, [1, 1, 0, 0]);
        let mut rest = Complex64::new(1.0, 0.0);
        for e in EDGES {
            if e == [1, 1, 0, 0] {
                continue;
            }
            let Some(se) = lattice::sub(t, e) else { continue };
            if z.subs.binary_search(&se).is_ok() {
                rest *= z.edge_value(0, se, e);
            }
        }
        let recomputed = 1.0 / rest;
        worst = worst.max((recomputed - z.z_at(0, s)).norm());
    }
    worst
}
