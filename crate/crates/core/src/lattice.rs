use crate::perm::Perm4;
use crate::triangulation::ConcreteTriangulation;
use crate::{Error, Result};

/// A lattice point of `Δ³_n(Z)`: four non-negative coordinates summing to n.
pub type LatticePoint = [u8; 4];

pub fn level(t: LatticePoint) -> usize {
    t.iter().map(|&x| x as usize).sum()
}

pub fn add(a: LatticePoint, b: LatticePoint) -> LatticePoint {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// `a - b`, or None if any coordinate would go negative.
pub fn sub(a: LatticePoint, b: LatticePoint) -> Option<LatticePoint> {
    let mut r = [0u8; 4];
    for i in 0..4 {
        if a[i] < b[i] {
            return None;
        }
        r[i] = a[i] - b[i];
    }
    Some(r)
}

pub fn unit(i: usize) -> LatticePoint {
    let mut r = [0u8; 4];
    r[i] = 1;
    r
}

/// The six edge midpoints of `Δ³_2(Z)`, i.e. the possible `e` in `t = s + e`.
pub const EDGES: [LatticePoint; 6] = [
    [1, 1, 0, 0],
    [1, 0, 1, 0],
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [0, 1, 0, 1],
    [0, 0, 1, 1],
];

/// The three canonical shape coordinate roles per subsimplex.  Opposite edges
/// of a subsimplex carry equal shape parameters, so `{1100,0011}` is `Z`,
/// `{0110,1001}` is `Zp` (z') and `{1010,0101}` is `Zpp` (z'').
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Z,
    Zp,
    Zpp,
}

pub const ROLES: [Role; 3] = [Role::Z, Role::Zp, Role::Zpp];

pub fn role_of_edge(e: LatticePoint) -> Role {
    match e {
        [1, 1, 0, 0] | [0, 0, 1, 1] => Role::Z,
        [0, 1, 1, 0] | [1, 0, 0, 1] => Role::Zp,
        [1, 0, 1, 0] | [0, 1, 0, 1] => Role::Zpp,
        _ => panic!("not an edge midpoint: {:?}", e),
    }
}

/// The representative edge for a role (used when printing).
pub fn edge_of_role(r: Role) -> LatticePoint {
    match r {
        Role::Z => [1, 1, 0, 0],
        Role::Zp => [0, 1, 1, 0],
        Role::Zpp => [1, 0, 1, 0],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointKind {
    Vertex,
    Edge,
    Face,
    Interior,
}

pub fn classify(t: LatticePoint) -> PointKind {
    match t.iter().filter(|&&x| x > 0).count() {
        1 => PointKind::Vertex,
        2 => PointKind::Edge,
        3 => PointKind::Face,
        4 => PointKind::Interior,
        _ => unreachable!(),
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// All points of `Δ³_n(Z)` in lexicographic order.
pub fn points(n: usize) -> Vec<LatticePoint> {
    let mut out = Vec::with_capacity(binomial(n + 3, 3));
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                out.push([a as u8, b as u8, c as u8, (n - a - b - c) as u8]);
            }
        }
    }
    out
}

/// `(all, non_vertex, interior)` point lists at level n, lexicographic.
pub fn enumerate_points(
    n: usize,
) -> Result<(Vec<LatticePoint>, Vec<LatticePoint>, Vec<LatticePoint>)> {
    if n < 2 {
        return Err(Error::BadLevel(n));
    }
    let all = points(n);
    let non_vertex: Vec<_> = all
        .iter()
        .copied()
        .filter(|&t| classify(t) != PointKind::Vertex)
        .collect();
    let interior: Vec<_> = all
        .iter()
        .copied()
        .filter(|&t| classify(t) == PointKind::Interior)
        .collect();
    Ok((all, non_vertex, interior))
}

/// Subsimplex translates: the points of `Δ³_{n-2}(Z)`.
pub fn subsimplices(n: usize) -> Vec<LatticePoint> {
    points(n - 2)
}

/// The S4 action on lattice points: `σ(x)_{σ(i)} = x_i`.
pub fn act(sigma: &Perm4, t: LatticePoint) -> LatticePoint {
    let mut r = [0u8; 4];
    for i in 0..4 {
        r[sigma.apply(i)] = t[i];
    }
    r
}

/// Sign of the permutation a face pairing induces on the odd entries of `t`
/// (the determinant `det(I_{σ,σ(t)})` relating identified Ptolemy
/// coordinates).
pub fn identification_sign(sigma: &Perm4, t: LatticePoint) -> i8 {
    let imgs: Vec<usize> = (0..4)
        .filter(|&i| t[i] % 2 == 1)
        .map(|i| sigma.apply(i))
        .collect();
    let mut s = 1i8;
    for i in 0..imgs.len() {
        for j in i + 1..imgs.len() {
            if imgs[i] > imgs[j] {
                s = -s;
            }
        }
    }
    s
}

/// An equivalence class of `(tetrahedron, point)` pairs under the face
/// identifications of a triangulation.
#[derive(Clone, Debug)]
pub struct IntegralPointClass {
    /// Sorted representatives; the first is the canonical one.
    pub reps: Vec<(usize, LatticePoint)>,
    /// Identification sign of each representative relative to `reps[0]`:
    /// `c_{reps[i]} = signs[i] * c_{reps[0]}`.
    pub signs: Vec<i8>,
    pub kind: PointKind,
}

/// The quotient set of integral points of a triangulation at level n.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub n: usize,
    pub classes: Vec<IntegralPointClass>,
    num_tet: usize,
    index: Vec<(usize, i8)>, // (class id, sign rel. to canonical rep) per dense (tet,point)
    points: Vec<LatticePoint>,
}

impl Quotient {
    pub fn class_of(&self, tet: usize, t: LatticePoint) -> (usize, i8) {
        let pi = self
            .points
            .binary_search(&t)
            .expect("point not at this level");
        self.index[tet * self.points.len() + pi]
    }

    pub fn non_vertex_classes(&self) -> impl Iterator<Item = (usize, &IntegralPointClass)> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.kind != PointKind::Vertex)
    }

    pub fn num_tet(&self) -> usize {
        self.num_tet
    }
}

/// Union-find quotient of all `(tet, point)` pairs at level n, identifying
/// boundary points across each face pairing, with Ptolemy identification
/// signs tracked along the way.
pub fn quotient(tri: &ConcreteTriangulation, n: usize) -> Result<Quotient> {
    let pts = points(n);
    let np = pts.len();
    let total = tri.num_tet() * np;
    let mut parent: Vec<usize> = (0..total).collect();
    let mut psign: Vec<i8> = vec![1; total]; // sign relative to parent
    // psign[y] is the sign of c_y relative to c_parent[y]; find compresses the
    // path and leaves psign relative to the root
    fn find(parent: &mut [usize], psign: &mut [i8], x: usize) -> (usize, i8) {
        let mut path = Vec::new();
        let mut r = x;
        while parent[r] != r {
            path.push(r);
            r = parent[r];
        }
        let mut s = 1i8;
        for &y in path.iter().rev() {
            s *= psign[y];
            parent[y] = r;
            psign[y] = s;
        }
        let sx = if x == r { 1 } else { psign[x] };
        (r, sx)
    }
    for tet in 0..tri.num_tet() {
        for face in 0..4 {
            let Some((to, sigma)) = tri.pairing(tet, face) else {
                continue;
            };
            for (pi, &t) in pts.iter().enumerate() {
                if t[face as usize] != 0 {
                    continue;
                }
                let a = tet * np + pi;
                let img = act(&sigma, t);
                let qi = pts.binary_search(&img).unwrap();
                let b = to * np + qi;
                // c_a = sign * c_b
                let sign = identification_sign(&sigma, t);
                let (ra, sa) = find(&mut parent, &mut psign, a);
                let (rb, sb) = find(&mut parent, &mut psign, b);
                if ra == rb {
                    if sa != sign * sb {
                        return Err(Error::SignConflict(format!("tet {} point {:?}", tet, t)));
                    }
                } else {
                    // c_ra = sa * c_a = sa * sign * sb * c_rb
                    parent[ra] = rb;
                    psign[ra] = sa * sign * sb;
                }
            }
        }
    }
    // gather classes, canonical rep = least (tet, point)
    let mut groups: std::collections::BTreeMap<usize, Vec<(usize, i8)>> = Default::default();
    for x in 0..total {
        let (r, s) = find(&mut parent, &mut psign, x);
        groups.entry(r).or_default().push((x, s));
    }
    let mut classes: Vec<IntegralPointClass> = Vec::new();
    let mut index = vec![(usize::MAX, 0i8); total];
    let mut ordered: Vec<Vec<(usize, i8)>> = groups.into_values().collect();
    for g in &mut ordered {
        g.sort();
    }
    ordered.sort();
    for g in ordered {
        // sign of element x relative to root is s_x; re-express relative to
        // the canonical (least) representative
        let (first, s0) = g[0];
        let cid = classes.len();
        let mut reps = Vec::with_capacity(g.len());
        let mut signs = Vec::with_capacity(g.len());
        for &(x, sx) in &g {
            let tet = x / np;
            let t = pts[x % np];
            // c_x = sx * c_root, c_first = s0 * c_root  =>  c_x = sx*s0 * c_first
            reps.push((tet, t));
            signs.push(sx * s0);
            index[x] = (cid, sx * s0);
        }
        let kind = classify(pts[first % np]);
        debug_assert!(reps.iter().all(|&(_, t)| classify(t) == kind));
        classes.push(IntegralPointClass { reps, signs, kind });
    }
    Ok(Quotient {
        n,
        classes,
        num_tet: tri.num_tet(),
        index,
        points: pts,
    })
}
