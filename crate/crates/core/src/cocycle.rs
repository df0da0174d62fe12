//! Natural cocycles on doubly truncated simplices.
//!
//! Vertices of the doubly truncated simplex (the S4 permutohedron) are
//! ordered vertex triples `v0v1v2`; the three edge families are
//!
//! * long:   `v0v1v2 -> v1v0v2` labeled `α`,
//! * middle: `v0v1v2 -> v0v2v1` labeled `β`,
//! * short:  `v0v1v2 -> v0v1v3` labeled `γ`.
//!
//! From shapes the `(PGL(n,C),B,H)` labels are `α = q₁`,
//! `β = ∏_k (∏_i x_i(1) ∏_i H_i(X_{k,i}^{ε⟲})) d±1`,
//! `γ = ∏_i H_i(z_i^{-ε⟲})`; from a Ptolemy assignment the `(SL(n,C),N)`
//! labels are `α̃ = q(ratio coordinates)`, `β̃ = ∏ x_i(d_{k,i})`, `γ̃ = id`,
//! related by the coboundary `τ = ∏ H_i(d_{1,i})`.

use std::collections::HashMap;


use crate::cmatrix::{CMat, C};
use crate::lattice::unit;
use crate::ptolemy::{self, eps_cyclic, PtolemyAssignment};
use crate::shape::ShapeAssignment;
use crate::triangulation::{ConcreteTriangulation, CurveStep, StepKind};
use crate::Result;

fn one() -> C {
    C::new(1.0, 0.0)
}

/// Counter-diagonal matrix: entry `(i, n+1-i)` is `a_{n+1-i}` (1-based).
pub fn q(a: &[C]) -> CMat {
    let n = a.len();
    let mut m = CMat::zeros(n, n);
    for j in 0..n {
        m[(n - 1 - j, j)] = a[j];
    }
    m
}

pub fn d(a: &[C]) -> CMat {
    CMat::diag(a)
}

pub fn q1(n: usize) -> CMat {
    q(&vec![one(); n])
}

/// `d((-1)^{n-k})_{k=1..n}`.
pub fn d_pm1(n: usize) -> CMat {
    d(&(1..=n)
        .map(|k| C::new(if (n - k) % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
        .collect::<Vec<_>>())
}

/// `H_i(x) = d(x,..,x,1,..,1)` with `i` copies of `x` (1-based `i`).
pub fn h_i(n: usize, i: usize, x: C) -> CMat {
    let mut a = vec![one(); n];
    for aj in a.iter_mut().take(i) {
        *aj = x;
    }
    d(&a)
}

/// `x_i(t) = I + t·E_{i,i+1}` (1-based `i`).
pub fn x_i(n: usize, i: usize, t: C) -> CMat {
    let mut m = CMat::identity(n);
    m[(i - 1, i)] = t;
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeType {
    Long,
    Middle,
    Short,
}

/// Apply an edge move to a triple.
pub fn edge_target(triple: [u8; 3], ty: EdgeType) -> [u8; 3] {
    let [v0, v1, v2] = triple;
    match ty {
        EdgeType::Long => [v1, v0, v2],
        EdgeType::Middle => [v0, v2, v1],
        EdgeType::Short => {
            let v3 = (0..4u8).find(|v| !triple.contains(v)).unwrap();
            [v0, v1, v3]
        }
    }
}

pub fn all_triples() -> Vec<[u8; 3]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                if a != b && b != c && a != c {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Edge labels on one doubly truncated simplex.
#[derive(Clone, Debug)]
pub struct DoublyTruncatedCocycle {
    pub n: usize,
    pub alpha: HashMap<[u8; 3], CMat>,
    pub beta: HashMap<[u8; 3], CMat>,
    pub gamma: HashMap<[u8; 3], CMat>,
}

impl DoublyTruncatedCocycle {
    pub fn label(&self, triple: [u8; 3], ty: EdgeType) -> &CMat {
        match ty {
            EdgeType::Long => &self.alpha[&triple],
            EdgeType::Middle => &self.beta[&triple],
            EdgeType::Short => &self.gamma[&triple],
        }
    }
}

/// The natural PGL cocycle of a shape assignment, on one tetrahedron.
pub fn pgl_cocycle_from_shapes(
    z: &ShapeAssignment,
    tet: usize,
) -> Result<DoublyTruncatedCocycle> {
    let n = z.n;
    let mut alpha = HashMap::new();
    let mut beta = HashMap::new();
    let mut gamma = HashMap::new();
    for triple in all_triples() {
        let [v0, v1, v2] = triple.map(usize::from);
        let eps = i32::from(eps_cyclic(triple));
        alpha.insert(triple, q1(n));

        let mut b = CMat::identity(n);
        for k in 1..n {
            for i in 1..=n - k {
                b = b.mul(&x_i(n, i, one()));
            }
            for i in 1..n - k {
                let mut t = [0u8; 4];
                t[v2] += k as u8;
                t[v0] += i as u8;
                t[v1] += (n - k - i) as u8;
                let x = crate::shape::x_coordinate_from_shapes(z, tet, t)?;
                b = b.mul(&h_i(n, i, x.powi(eps)));
            }
        }
        beta.insert(triple, b.mul(&d_pm1(n)));

        let mut g = CMat::identity(n);
        for i in 1..n {
            let mut s = [0u8; 4];
            s[v0] += (i - 1) as u8;
            s[v1] += (n - 1 - i) as u8;
            let e = crate::lattice::add(unit(v0), unit(v1));
            let zi = z.edge_value(tet, s, e);
            g = g.mul(&h_i(n, i, zi.powi(-eps)));
        }
        gamma.insert(triple, g);
    }
    Ok(DoublyTruncatedCocycle {
        n,
        alpha,
        beta,
        gamma,
    })
}

/// The natural SL cocycle of a single-simplex Ptolemy assignment, plus the
/// coboundary `τ` relating it to the PGL cocycle of `μ(c)`.
pub struct SlCocycle {
    pub cocycle: DoublyTruncatedCocycle,
    pub tau: HashMap<[u8; 3], CMat>,
}

pub fn sl_cocycle_from_ptolemy(c: &PtolemyAssignment, tet: usize) -> SlCocycle {
    let n = c.n;
    let mut alpha = HashMap::new();
    let mut beta = HashMap::new();
    let mut gamma = HashMap::new();
    let mut tau = HashMap::new();
    let diamond_ki = |triple: [u8; 3], k: usize, i: usize| {
        let [v0, v1, v2] = triple.map(usize::from);
        let mut al = [0u8; 4];
        al[v0] += (i - 1) as u8;
        al[v1] += (n - i - k) as u8;
        al[v2] += (k - 1) as u8;
        ptolemy::diamond(c, tet, triple, al)
    };
    for triple in all_triples() {
        let [v0, v1, _] = triple.map(usize::from);
        // α̃ = q(e^{v0v1}_{(n-1)v0}, ..., e^{v0v1}_{(n-1)v1})
        let ratios: Vec<C> = (1..=n)
            .map(|j| ptolemy::ratio(c, tet, [v0 as u8, v1 as u8], n - j))
            .collect();
        alpha.insert(triple, q(&ratios));
        // β̃ = ∏_{k=1}^{n-1} ∏_{i=1}^{n-k} x_i(d_{k,i})
        let mut b = CMat::identity(n);
        for k in 1..n {
            for i in 1..=n - k {
                b = b.mul(&x_i(n, i, diamond_ki(triple, k, i)));
            }
        }
        beta.insert(triple, b);
        gamma.insert(triple, CMat::identity(n));
        // τ = ∏_{i=1}^{n-1} H_i(d_{1,i})
        let mut t = CMat::identity(n);
        for i in 1..n {
            t = t.mul(&h_i(n, i, diamond_ki(triple, 1, i)));
        }
        tau.insert(triple, t);
    }
    SlCocycle {
        cocycle: DoublyTruncatedCocycle {
            n,
            alpha,
            beta,
            gamma,
        },
        tau,
    }
}

/// Equality in PGL: `A·B⁻¹` is within `tol` (relative) of a scalar matrix.
pub fn pgl_equal(a: &CMat, b: &CMat, tol: f64) -> Result<bool> {
    let m = a.mul(&b.inverse()?);
    let n = m.n;
    let scalar = (0..n)
        .map(|i| m[(i, i)])
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .unwrap();
    if scalar.norm() < 1e-300 {
        return Ok(false);
    }
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { scalar } else { C::new(0.0, 0.0) };
            worst = worst.max((m[(i, j)] - want).norm());
        }
    }
    Ok(worst <= tol * scalar.norm())
}

/// The 14 boundary faces of the permutohedron as directed edge cycles
/// `(start triple, edge type)`: 4 truncated-vertex hexagons (short/middle
/// alternating), 4 truncated-face hexagons (long/middle alternating) and 6
/// truncated-edge squares (short/long alternating).
pub fn face_cycles() -> Vec<Vec<([u8; 3], EdgeType)>> {
    let mut out = Vec::new();
    // alternate the two edge types `steps` times, starting from `start`
    let cycle = |start: [u8; 3], pair: [EdgeType; 2], steps: usize| {
        let mut cyc = Vec::new();
        let mut cur = start;
        for k in 0..steps {
            let ty = pair[k % 2];
            cyc.push((cur, ty));
            cur = edge_target(cur, ty);
        }
        assert_eq!(cur, start, "face cycle does not close");
        cyc
    };
    use EdgeType::{Long, Middle, Short};
    // vertex hexagons: all triples starting with v0
    for v0 in 0..4u8 {
        let rest: Vec<u8> = (0..4u8).filter(|&v| v != v0).collect();
        out.push(cycle([v0, rest[0], rest[1]], [Short, Middle], 6));
    }
    // face hexagons: all orderings of a 3-subset {a,b,c} (missing vertex m)
    for m in 0..4u8 {
        let abc: Vec<u8> = (0..4u8).filter(|&v| v != m).collect();
        out.push(cycle([abc[0], abc[1], abc[2]], [Long, Middle], 6));
    }
    // edge squares: first two vertices {a,b} fixed as a set
    for a in 0..4u8 {
        for b in a + 1..4u8 {
            let c = (0..4u8).find(|&v| v != a && v != b).unwrap();
            out.push(cycle([a, b, c], [Short, Long], 4));
        }
    }
    out
}

/// Ordered product of the labels around a directed edge cycle.
pub fn cycle_product(cocycle: &DoublyTruncatedCocycle, cyc: &[([u8; 3], EdgeType)]) -> CMat {
    let mut m = CMat::identity(cocycle.n);
    for &(triple, ty) in cyc {
        m = m.mul(cocycle.label(triple, ty));
    }
    m
}

/// Max deviation from a scalar matrix over all 14 face cycles.
pub fn cocycle_condition_residual(cocycle: &DoublyTruncatedCocycle, tol: f64) -> Result<bool> {
    let id = CMat::identity(cocycle.n);
    for cyc in face_cycles() {
        if !pgl_equal(&cycle_product(cocycle, cyc.as_slice()), &id, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Holonomy along a peripheral curve: the ordered product of the step labels
/// (γ for short steps, β for middle, inverted for reversed steps).
pub fn holonomy(
    tri: &ConcreteTriangulation,
    cocycles: &[DoublyTruncatedCocycle],
    steps: &[CurveStep],
) -> Result<CMat> {
    assert_eq!(cocycles.len(), tri.num_tet());
    let n = cocycles.first().map_or(0, |c| c.n);
    let mut m = CMat::identity(n);
    for step in steps {
        let ty = match step.kind {
            StepKind::Short => EdgeType::Short,
            StepKind::Middle => EdgeType::Middle,
        };
        let label = cocycles[step.tet].label(step.triple, ty);
        if step.dir == 1 {
            m = m.mul(label);
        } else {
            m = m.mul(&label.inverse()?);
        }
    }
    Ok(m)
}

/// `m` is unipotent iff `(m - I)^n = 0`; checking nilpotency directly is far
/// more accurate than root-finding near an `n`-fold eigenvalue.
pub fn is_unipotent(m: &CMat, tol: f64) -> bool {
    let n = m.n;
    let nil = m.add(&CMat::identity(n).scale(C::new(-1.0, 0.0)));
    let scale = nil.max_norm().max(1.0);
    let mut p = nil.clone();
    for _ in 1..n {
        p = p.mul(&nil);
    }
    p.max_norm() <= tol * scale.powi(n as i32)
}

/// Check the coboundary relation between the SL and PGL cocycles of the same
/// data: `τ⁻¹ β̃ τ' = β` etc.; used by tests.
pub fn coboundary_residual(sl: &SlCocycle, pgl: &DoublyTruncatedCocycle, tol: f64) -> Result<bool> {
    for triple in all_triples() {
        let t_inv = sl.tau[&triple].inverse()?;
        // middle: τ(v0v1v2)^{-1} β̃(v0v1v2) τ(v0v2v1)
        let mid = t_inv
            .mul(&sl.cocycle.beta[&triple])
            .mul(&sl.tau[&edge_target(triple, EdgeType::Middle)]);
        if !pgl_equal(&mid, &pgl.beta[&triple], tol)? {
            return Ok(false);
        }
        // long: τ^{-1} α̃ τ(v1v0v2) = q1
        let long = t_inv
            .mul(&sl.cocycle.alpha[&triple])
            .mul(&sl.tau[&edge_target(triple, EdgeType::Long)]);
        if !pgl_equal(&long, &pgl.alpha[&triple], tol)? {
            return Ok(false);
        }
        // short: τ^{-1} τ(v0v1v3) = γ
        let short = t_inv.mul(&sl.tau[&edge_target(triple, EdgeType::Short)]);
        if !pgl_equal(&short, &pgl.gamma[&triple], tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptolemy::decoration_to_ptolemy;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_decoration(n: usize, rng: &mut ChaCha8Rng) -> [CMat; 4] {
        std::array::from_fn(|_| {
            let mut m = CMat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
            }
            m
        })
    }

    #[test]
    fn builder_identities() {
        // q1 is an involution
        let p = q1(4).mul(&q1(4));
        assert!((p.add(&CMat::identity(4).scale(C::new(-1.0, 0.0)))).max_norm() < 1e-12);
        // n=2: x_1(1)·d±1 = [[-1,1],[0,1]]
        let b = x_i(2, 1, C::new(1.0, 0.0)).mul(&d_pm1(2));
        assert!((b[(0, 0)] - C::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((b[(0, 1)] - C::new(1.0, 0.0)).norm() < 1e-12);
        assert!(b[(1, 0)].norm() < 1e-12);
        assert!((b[(1, 1)] - C::new(1.0, 0.0)).norm() < 1e-12);
        // commutator relation x_i(y) = H_i(y) x_i(1) H_i(y)^{-1}
        let y = C::new(0.3, -1.2);
        for i in 1..4 {
            let lhs = x_i(4, i, y);
            let rhs = h_i(4, i, y)
                .mul(&x_i(4, i, C::new(1.0, 0.0)))
                .mul(&h_i(4, i, y).inverse().unwrap());
            let mut diff = lhs.clone();
            for r in 0..4 {
                for c in 0..4 {
                    diff[(r, c)] -= rhs[(r, c)];
                }
            }
            assert!(diff.max_norm() < 1e-12);
        }
    }

    #[test]
    fn face_cycles_well_formed() {
        let cycles = face_cycles();
        assert_eq!(cycles.len(), 14);
        let hexes = cycles.iter().filter(|c| c.len() == 6).count();
        let squares = cycles.iter().filter(|c| c.len() == 4).count();
        assert_eq!((hexes, squares), (8, 6));
    }

    #[test]
    fn printed_beta_n2_n3() {
        // n=2 example: β^{012} = [[-1,1],[0,1]], γ^{012} = diag(z^{-1},1)
        let z0 = C::new(0.3, 0.9);
        let z = ShapeAssignment::new(2, vec![vec![z0]]);
        let coc = pgl_cocycle_from_shapes(&z, 0).unwrap();
        let b = &coc.beta[&[0, 1, 2]];
        assert!((b[(0, 0)] + C::new(1.0, 0.0)).norm() < 1e-12);
        assert!((b[(0, 1)] - C::new(1.0, 0.0)).norm() < 1e-12);
        let g = &coc.gamma[&[0, 1, 2]];
        assert!((g[(0, 0)] - 1.0 / z0).norm() < 1e-12);
        assert!((g[(1, 1)] - C::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn printed_beta_n3_structure() {
        // β^{012} at n=3 is [[X,−X−1,1],[0,−1,1],[0,0,1]] with X = X_{1,1}
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = random_decoration(3, &mut rng);
        let c = decoration_to_ptolemy(3, &g).unwrap();
        let z = crate::ptolemy::mu(&c, 1e-8).unwrap();
        let coc = pgl_cocycle_from_shapes(&z, 0).unwrap();
        let x = crate::shape::x_coordinate_from_shapes(&z, 0, [1, 1, 1, 0]).unwrap();
        let b = &coc.beta[&[0, 1, 2]];
        assert!((b[(0, 0)] - x).norm() < 1e-9);
        assert!((b[(0, 1)] + x + C::new(1.0, 0.0)).norm() < 1e-9);
        assert!((b[(0, 2)] - C::new(1.0, 0.0)).norm() < 1e-9);
        assert!((b[(1, 1)] + C::new(1.0, 0.0)).norm() < 1e-9);
        assert!((b[(1, 2)] - C::new(1.0, 0.0)).norm() < 1e-9);
        assert!((b[(2, 2)] - C::new(1.0, 0.0)).norm() < 1e-9);
        for (i, j) in [(1, 0), (2, 0), (2, 1)] {
            assert!(b[(i, j)].norm() < 1e-9);
        }
    }

    #[test]
    fn cocycle_condition_on_random_decorations() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 2..=4 {
            let g = random_decoration(n, &mut rng);
            let c = decoration_to_ptolemy(n, &g).unwrap();
            let z = crate::ptolemy::mu(&c, 1e-7).unwrap();
            let coc = pgl_cocycle_from_shapes(&z, 0).unwrap();
            assert!(cocycle_condition_residual(&coc, 1e-8).unwrap(), "n={}", n);
        }
    }

    #[test]
    fn sl_pgl_coboundary() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in 2..=4 {
            let g = random_decoration(n, &mut rng);
            let c = decoration_to_ptolemy(n, &g).unwrap();
            let z = crate::ptolemy::mu(&c, 1e-7).unwrap();
            let sl = sl_cocycle_from_ptolemy(&c, 0);
            // det β̃ = 1: product of unipotents
            for triple in all_triples() {
                assert!((sl.cocycle.beta[&triple].det() - C::new(1.0, 0.0)).norm() < 1e-8);
            }
            let pgl = pgl_cocycle_from_shapes(&z, 0).unwrap();
            assert!(coboundary_residual(&sl, &pgl, 1e-8).unwrap(), "n={}", n);
        }
    }

    #[test]
    fn pgl_equal_basics() {
        let a = CMat::from_rows(&[
            vec![C::new(1.0, 2.0), C::new(0.5, 0.0)],
            vec![C::new(0.0, 1.0), C::new(-1.0, 0.0)],
        ]);
        assert!(pgl_equal(&a, &a.scale(C::new(2.0, -1.0)), 1e-10).unwrap());
        assert!(!pgl_equal(&CMat::identity(2), &q1(2), 1e-6).unwrap());
    }

    #[test]
    fn unipotent_detection() {
        let mut m = CMat::identity(3);
        m[(0, 1)] = C::new(4.0, 1.0);
        m[(1, 2)] = C::new(-2.0, 0.0);
        assert!(is_unipotent(&m, 1e-6));
        m[(0, 0)] = C::new(1.5, 0.0);
        assert!(!is_unipotent(&m, 1e-3));
    }
}
