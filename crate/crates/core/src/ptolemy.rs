//! Ptolemy coordinates: relations with identification signs, pullbacks, the
//! monomial map to shapes, decoration determinants, and X/diamond/ratio
//! coordinates.

use num_complex::Complex64;

use crate::cmatrix::CMat;
use crate::lattice::{
    self, classify, identification_sign, points, subsimplices, LatticePoint, PointKind, Quotient,
};
use crate::perm::Perm4;
use crate::shape::ShapeAssignment;
use crate::triangulation::ConcreteTriangulation;
use crate::{Error, Result};

/// Ptolemy values per tetrahedron at every integral point of Δ³_n, with
/// vertex points extended to 1.  On a triangulation the values of identified
/// points agree up to the identification sign; constructors enforce this.
#[derive(Clone, Debug)]
pub struct PtolemyAssignment {
    pub n: usize,
    /// Lexicographically ordered points of Δ³_n.
    pub points: Vec<LatticePoint>,
    /// `c[tet][point_index]`.
    pub c: Vec<Vec<Complex64>>,
}

/// One occurrence of a Ptolemy variable, resolved to its class representative:
/// the value at the occurrence is `sign * c_{class}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedVar {
    pub class_id: usize,
    pub sign: i8,
}

/// `c_{s+1001}c_{s+0110} + c_{s+1100}c_{s+0011} = c_{s+1010}c_{s+0101}`
/// with each factor resolved through the identifications.
#[derive(Clone, Debug)]
pub struct PtolemyRelation {
    pub tet: usize,
    pub s: LatticePoint,
    /// [first plus pair, second plus pair, right-hand pair].
    pub terms: [[SignedVar; 2]; 3],
}

/// The three unordered point-pairs of the relation at `s`, before resolution.
pub fn relation_points(s: LatticePoint) -> [[LatticePoint; 2]; 3] {
    let p = |e: [u8; 4]| lattice::add(s, e);
    [
        [p([1, 0, 0, 1]), p([0, 1, 1, 0])],
        [p([1, 1, 0, 0]), p([0, 0, 1, 1])],
        [p([1, 0, 1, 0]), p([0, 1, 0, 1])],
    ]
}

pub fn generate_relations(tri: &ConcreteTriangulation, n: usize) -> Result<Vec<PtolemyRelation>> {
    let quotient = lattice::quotient(tri, n)?;
    let subs = subsimplices(n);
    let mut out = Vec::with_capacity(tri.num_tet() * subs.len());
    for tet in 0..tri.num_tet() {
        for &s in &subs {
            let pts = relation_points(s);
            let resolve = |t: LatticePoint| {
                let (class_id, sign) = quotient.class_of(tet, t);
                SignedVar { class_id, sign }
            };
            out.push(PtolemyRelation {
                tet,
                s,
                terms: pts.map(|pair| pair.map(resolve)),
            });
        }
    }
    Ok(out)
}

pub fn relation_text(rel: &PtolemyRelation, quotient: &Quotient) -> String {
    let name = |v: &SignedVar| {
        let (_, t) = quotient.classes[v.class_id].reps[0];
        let body: String = t.iter().map(|x| x.to_string()).collect();
        if v.sign == 1 {
            format!("c_{{{}}}", body)
        } else {
            format!("-c_{{{}}}", body)
        }
    };
    format!(
        "{} * {} + {} * {} = {} * {}",
        name(&rel.terms[0][0]),
        name(&rel.terms[0][1]),
        name(&rel.terms[1][0]),
        name(&rel.terms[1][1]),
        name(&rel.terms[2][0]),
        name(&rel.terms[2][1]),
    )
}

impl PtolemyAssignment {
    pub fn new(n: usize, c: Vec<Vec<Complex64>>) -> Self {
        let points = points(n);
        assert!(c.iter().all(|row| row.len() == points.len()));
        PtolemyAssignment { n, points, c }
    }

    pub fn num_tet(&self) -> usize {
        self.c.len()
    }

    pub fn at(&self, tet: usize, t: LatticePoint) -> Complex64 {
        let pi = self.points.binary_search(&t).expect("not a point");
        self.c[tet][pi]
    }

    /// Max residual of the Ptolemy relation over all (tet, subsimplex).
    pub fn relation_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for tet in 0..self.num_tet() {
            for &s in &subsimplices(self.n) {
                let [p1, p2, p3] = relation_points(s);
                let prod =
                    |pair: [LatticePoint; 2]| self.at(tet, pair[0]) * self.at(tet, pair[1]);
                worst = worst.max((prod(p1) + prod(p2) - prod(p3)).norm());
            }
        }
        worst
    }

    /// Check the identification compatibility `c_(Δ',t') = sign · c_(Δ,t)`
    /// across every class of the quotient.
    pub fn identification_residual(&self, quotient: &Quotient) -> f64 {
        let mut worst = 0.0f64;
        for class in &quotient.classes {
            if class.kind == PointKind::Vertex {
                continue;
            }
            let base = self.at(class.reps[0].0, class.reps[0].1);
            for (&(tet, t), &sign) in class.reps.iter().zip(&class.signs) {
                worst = worst.max((self.at(tet, t) - f64::from(sign) * base).norm());
            }
        }
        worst
    }
}

/// `(σ*c)_t = det(I_{σ,σ(t)}) c_{σ(t)}` on a single simplex.
pub fn pullback_ptolemy(sigma: &Perm4, c: &PtolemyAssignment) -> PtolemyAssignment {
    assert_eq!(c.num_tet(), 1);
    let vals = c
        .points
        .iter()
        .map(|&t| f64::from(identification_sign(sigma, t)) * c.at(0, lattice::act(sigma, t)))
        .collect();
    PtolemyAssignment::new(c.n, vec![vals])
}

/// The monomial map to shapes:
/// `z^{1100}_s = c_{s+1001}c_{s+0110} / (c_{s+1010}c_{s+0101})`.
pub fn mu(c: &PtolemyAssignment, tol: f64) -> Result<ShapeAssignment> {
    let res = c.relation_residual();
    if res > tol {
        return Err(Error::ResidualTooLarge(res, tol));
    }
    let subs = subsimplices(c.n);
    let z = (0..c.num_tet())
        .map(|tet| {
            subs.iter()
                .map(|&s| {
                    let [p1, _, p3] = relation_points(s);
                    c.at(tet, p1[0]) * c.at(tet, p1[1]) / (c.at(tet, p3[0]) * c.at(tet, p3[1]))
                })
                .collect()
        })
        .collect();
    Ok(ShapeAssignment::new(c.n, z))
}

/// Exponent matrix of μ on class representatives (rows: all `(Δ,s,1100)`
/// then all `(Δ,s,0110)`; columns: non-vertex classes), together with the
/// per-row product of identification signs.  The matrix equals `(β*)ᵀ`.
pub fn mu_exponent_matrix(
    tri: &ConcreteTriangulation,
    n: usize,
) -> Result<(Vec<Vec<i64>>, Vec<i8>)> {
    let quotient = lattice::quotient(tri, n)?;
    let subs = subsimplices(n);
    let classes: Vec<usize> = quotient.non_vertex_classes().map(|(i, _)| i).collect();
    let col_of: std::collections::BTreeMap<usize, usize> =
        classes.iter().enumerate().map(|(j, &i)| (i, j)).collect();
    let m = tri.num_tet() * subs.len();
    let mut mat = vec![vec![0i64; classes.len()]; 2 * m];
    let mut signs = vec![1i8; 2 * m];
    for tet in 0..tri.num_tet() {
        for (si, &s) in subs.iter().enumerate() {
            let base = tet * subs.len() + si;
            let [p1, p2, p3] = relation_points(s);
            let mut put = |row: usize, t: LatticePoint, coeff: i64| {
                let (cid, sign) = quotient.class_of(tet, t);
                mat[row][col_of[&cid]] += coeff;
                signs[row] *= sign;
            };
            // z^{1100}_s = c_{s+1001}c_{s+0110}/(c_{s+1010}c_{s+0101})
            put(base, p1[0], 1);
            put(base, p1[1], 1);
            put(base, p3[0], -1);
            put(base, p3[1], -1);
            // z^{0110}_s = c_{s+0101}c_{s+1010}/(c_{s+1100}c_{s+0011})
            put(m + base, p3[0], 1);
            put(m + base, p3[1], 1);
            put(m + base, p2[0], -1);
            put(m + base, p2[1], -1);
        }
    }
    Ok((mat, signs))
}

/// `c_t = det( first t₀ columns of g₀ | ... | first t₃ columns of g₃ )` for
/// every integral point of Δ³_n.  Generic means every non-vertex determinant
/// stays well away from zero relative to the column norms.
pub fn decoration_to_ptolemy(n: usize, g: &[CMat; 4]) -> Result<PtolemyAssignment> {
    for gi in g {
        assert_eq!((gi.n, gi.m), (n, n));
    }
    let pts = points(n);
    let mut vals = Vec::with_capacity(pts.len());
    for &t in &pts {
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
        for (i, gi) in g.iter().enumerate() {
            for j in 0..t[i] as usize {
                cols.push((0..n).map(|r| gi[(r, j)]).collect());
            }
        }
        let mut mat = CMat::zeros(n, n);
        let mut scale = 1.0f64;
        for (j, col) in cols.iter().enumerate() {
            let norm: f64 = col.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            scale *= norm.max(1e-300);
            for r in 0..n {
                mat[(r, j)] = col[r];
            }
        }
        let det = mat.det();
        if classify(t) != PointKind::Vertex && det.norm() < 1e-8 * scale {
            return Err(Error::NonGenericDecoration(det.norm()));
        }
        vals.push(if classify(t) == PointKind::Vertex {
            Complex64::new(1.0, 0.0)
        } else {
            det
        });
    }
    Ok(PtolemyAssignment {
        n,
        points: pts,
        c: vec![vals],
    })
}

/// `X_t` at a face point, as the 6-fold Ptolemy ratio: with `i<j<k` the
/// nonzero-coordinate positions of the face,
/// `X_t = ∏_{(a,b) cyclic in (i,j,k)} c_{t+e_a-e_b} / c_{t+e_b-e_a}`.
pub fn x_coordinate_from_ptolemy(
    c: &PtolemyAssignment,
    tet: usize,
    t: LatticePoint,
) -> Result<Complex64> {
    if classify(t) != PointKind::Face {
        return Err(Error::NotFacePoint(t));
    }
    let idx: Vec<usize> = (0..4).filter(|&i| t[i] > 0).collect();
    let (i, j, k) = (idx[0], idx[1], idx[2]);
    let mut num = Complex64::new(1.0, 0.0);
    let mut den = Complex64::new(1.0, 0.0);
    for (a, b) in [(i, j), (j, k), (k, i)] {
        let shift = |from: usize, to: usize| {
            let mut p = t;
            p[from] += 1;
            p[to] -= 1;
            p
        };
        num *= c.at(tet, shift(a, b));
        den *= c.at(tet, shift(b, a));
    }
    // the cyclic product above is the ε⟲ = +1 convention for (i,j,k)
    let x = num / den;
    Ok(if eps_cyclic([i as u8, j as u8, k as u8]) == 1 {
        x
    } else {
        1.0 / x
    })
}

/// `ε_<`: sign of the permutation sorting `(v0,v1,v2)` ascending.
pub fn eps_triple(triple: [u8; 3]) -> i8 {
    let mut s = 1i8;
    for i in 0..3 {
        for j in i + 1..3 {
            if triple[i] > triple[j] {
                s = -s;
            }
        }
    }
    s
}

/// `ε⟲`: +1 iff `(v0,v1,v2)` lies in the A₄ orbit of `(0,1,2)`, i.e. the
/// parity of the full permutation `(v0,v1,v2,v3)` with `v3` the complement.
pub fn eps_cyclic(triple: [u8; 3]) -> i8 {
    let v3 = 6 - triple.iter().map(|&x| x as i8).sum::<i8>();
    let full = [triple[0] as i8, triple[1] as i8, triple[2] as i8, v3];
    let mut s = 1i8;
    for i in 0..4 {
        for j in i + 1..4 {
            if full[i] > full[j] {
                s = -s;
            }
        }
    }
    s
}

/// Diamond coordinate
/// `d^{v0v1v2}_α = -ε_< c_{α+2v0}c_{α+v1+v2} / (c_{α+v0+v1}c_{α+v0+v2})`
/// with `ε_<` the parity sign of `(v0,v1,v2)`.
pub fn diamond(
    c: &PtolemyAssignment,
    tet: usize,
    triple: [u8; 3],
    alpha: LatticePoint,
) -> Complex64 {
    let [v0, v1, v2] = triple.map(usize::from);
    let eps = f64::from(eps_triple(triple));
    let p = |adds: &[usize]| {
        let mut t = alpha;
        for &a in adds {
            t[a] += 1;
        }
        c.at(tet, t)
    };
    -eps * p(&[v0, v0]) * p(&[v1, v2]) / (p(&[v0, v1]) * p(&[v0, v2]))
}

/// Ratio coordinate on the long edge `v0v1`:
/// `e^{v0v1}_{kv0+lv1} = (-1)^l c_{kv0+(l+1)v1} / c_{(k+1)v0+lv1}`, `k+l = n-1`.
pub fn ratio(c: &PtolemyAssignment, tet: usize, pair: [u8; 2], k: usize) -> Complex64 {
    let [v0, v1] = pair.map(usize::from);
    let l = c.n - 1 - k;
    let mut num = [0u8; 4];
    num[v0] = k as u8;
    num[v1] = (l + 1) as u8;
    let mut den = [0u8; 4];
    den[v0] = (k + 1) as u8;
    den[v1] = l as u8;
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    sign * c.at(tet, num) / c.at(tet, den)
}

/// A random generic decoration: four n×n matrices with entries uniform in
/// the unit square, as `rng`-seeded input for [`decoration_to_ptolemy`].
pub fn random_decoration<R: rand::Rng>(n: usize, rng: &mut R) -> [CMat; 4] {
    std::array::from_fn(|_| {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        m
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::triangulation::single_simplex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }


    #[test]
    fn relation_counts() {
        let tri = fixtures::fig8();
        for (n, want) in [(2usize, 2usize), (3, 8)] {
            let rels = generate_relations(&tri, n).unwrap();
            assert_eq!(rels.len(), want);
        }
    }

    #[test]
    fn single_simplex_relation_text_n6() {
        let tri = single_simplex();
        let quotient = lattice::quotient(&tri, 6).unwrap();
        let rels = generate_relations(&tri, 6).unwrap();
        let rel = rels.iter().find(|r| r.s == [0, 1, 3, 0]).unwrap();
        assert_eq!(
            relation_text(rel, &quotient),
            "c_{1131} * c_{0240} + c_{1230} * c_{0141} = c_{1140} * c_{0231}"
        );
    }

    #[test]
    fn mu_printed_example_n2() {
        // c_{1001}=3, others as given: z = 3/4, z' = 4, z'' = -1/3
        let mut vals = vec![c64(1.0, 0.0); points(2).len()];
        let pts = points(2);
        let set = |vals: &mut Vec<Complex64>, t: [u8; 4], v: f64| {
            let i = pts.binary_search(&t).unwrap();
            vals[i] = c64(v, 0.0);
        };
        set(&mut vals, [1, 0, 0, 1], 3.0);
        set(&mut vals, [1, 0, 1, 0], 2.0);
        set(&mut vals, [0, 1, 0, 1], 2.0);
        let c = PtolemyAssignment::new(2, vec![vals]);
        assert!(c.relation_residual() < 1e-12); // 3 + 1 = 4
        let z = mu(&c, 1e-9).unwrap();
        let zv = z.z_at(0, [0, 0, 0, 0]);
        assert!((zv - c64(0.75, 0.0)).norm() < 1e-12);
        use crate::lattice::Role;
        use crate::shape::role_value;
        assert!((role_value(zv, Role::Zp) - c64(4.0, 0.0)).norm() < 1e-12);
        assert!((role_value(zv, Role::Zpp) - c64(-1.0 / 3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn decoration_gives_ptolemy_and_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=4 {
            let g = random_decoration(n, &mut rng);
            let c = decoration_to_ptolemy(n, &g).unwrap();
            assert!(c.relation_residual() < 1e-10 * 10.0);
            let z = mu(&c, 1e-8).unwrap();
            if n >= 3 {
                assert!(crate::shape::internal_determinacy_residual(&z) < 1e-9);
            }
        }
    }

    #[test]
    fn repeated_matrix_is_non_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_decoration(3, &mut rng);
        let bad = [g[0].clone(), g[0].clone(), g[2].clone(), g[3].clone()];
        assert!(matches!(
            decoration_to_ptolemy(3, &bad),
            Err(Error::NonGenericDecoration(_))
        ));
    }

    #[test]
    fn decoration_pullback_compatibility() {
        // σ*(C(g0..g3)) = C(g_{σ(0)}..g_{σ(3)})
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let g = random_decoration(3, &mut rng);
        let c = decoration_to_ptolemy(3, &g).unwrap();
        for sigma in Perm4::all() {
            let permuted: [CMat; 4] = std::array::from_fn(|i| g[sigma.apply(i)].clone());
            let cp = decoration_to_ptolemy(3, &permuted).unwrap();
            let pb = pullback_ptolemy(&sigma, &c);
            for (&t, (a, b)) in c.points.iter().zip(pb.c[0].iter().zip(&cp.c[0])) {
                if classify(t) == PointKind::Vertex {
                    continue; // vertex extension is 1, not a determinant
                }
                assert!((a - b).norm() < 1e-9, "σ={:?} t={:?}", sigma, t);
            }
        }
    }

    #[test]
    fn x_coordinates_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_decoration(3, &mut rng);
        let c = decoration_to_ptolemy(3, &g).unwrap();
        let z = mu(&c, 1e-8).unwrap();
        for &t in &c.points {
            if classify(t) != PointKind::Face {
                continue;
            }
            let xp = x_coordinate_from_ptolemy(&c, 0, t).unwrap();
            let xs = crate::shape::x_coordinate_from_shapes(&z, 0, t).unwrap();
            assert!((xp - xs).norm() < 1e-9, "t = {:?}", t);
        }
        assert!(x_coordinate_from_ptolemy(&c, 0, [3, 0, 0, 0]).is_err());
    }

    #[test]
    fn diamond_printed_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_decoration(6, &mut rng);
        let c = decoration_to_ptolemy(6, &g).unwrap();
        // d^{102}_{1120} = c_{1320}c_{2130}/(c_{2220}c_{1230})
        let d = diamond(&c, 0, [1, 0, 2], [1, 1, 2, 0]);
        let want = c.at(0, [1, 3, 2, 0]) * c.at(0, [2, 1, 3, 0])
            / (c.at(0, [2, 2, 2, 0]) * c.at(0, [1, 2, 3, 0]));
        assert!((d - want).norm() < 1e-12);
        // d^{312}_{0121} = -c_{0123}c_{0231}/(c_{0222}c_{0132})
        let d2 = diamond(&c, 0, [3, 1, 2], [0, 1, 2, 1]);
        let want2 = -c.at(0, [0, 1, 2, 3]) * c.at(0, [0, 2, 3, 1])
            / (c.at(0, [0, 2, 2, 2]) * c.at(0, [0, 1, 3, 2]));
        assert!((d2 - want2).norm() < 1e-12);
    }

    #[test]
    fn x_from_diamonds() {
        // X_t = (d^{v0v1v2}_{t-v0-v1} / d^{v0v1v2}_{t-v0-v2})^{ε⟲}
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = random_decoration(4, &mut rng);
        let c = decoration_to_ptolemy(4, &g).unwrap();
        let t = [1, 2, 1, 0];
        let x = x_coordinate_from_ptolemy(&c, 0, t).unwrap();
        let triple = [0u8, 1, 2];
        let sub2 = |a: usize, b: usize| {
            let mut p = t;
            p[a] -= 1;
            p[b] -= 1;
            p
        };
        let dq = diamond(&c, 0, triple, sub2(0, 1)) / diamond(&c, 0, triple, sub2(0, 2));
        let want = if eps_cyclic(triple) == 1 { dq } else { 1.0 / dq };
        assert!((x - want).norm() < 1e-10);
    }
}
