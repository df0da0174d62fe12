use serde::{Deserialize, Serialize};

use crate::perm::Perm4;
use crate::{Error, Result};

/// One step of a peripheral edge path on the boundary decomposition into
/// doubly truncated simplices.  The step traverses the short or middle edge
/// whose initial vertex is `(tet, v0v1v2)`; `dir = -1` traverses it backwards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveStep {
    pub tet: usize,
    pub triple: [u8; 3],
    pub kind: StepKind,
    pub dir: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Short,
    Middle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeripheralCurve {
    pub name: String,
    pub steps: Vec<CurveStep>,
}

/// A face pairing, viewed from one side: face `from_face` of `from_tet` is
/// glued to face `perm(from_face)` of `to_tet` by the extension `perm` in S4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FacePairing {
    pub from_tet: usize,
    pub from_face: usize,
    pub to_tet: usize,
    pub perm: Perm4,
}

impl FacePairing {
    pub fn to_face(&self) -> usize {
        self.perm.apply(self.from_face)
    }
}

/// A concrete triangulation: tetrahedra with a fixed vertex ordering, S4 face
/// pairings, orientation signs and optional peripheral curves.
///
/// Faces may be left unglued; that is used by the local models
/// ([`edge_local_model`], [`face_local_model`]) and by [`single_simplex`].
/// Parsed manifold files always have every face glued exactly once.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcreteTriangulation {
    pub name: String,
    pairings: Vec<[Option<(usize, Perm4)>; 4]>,
    pub eps: Vec<i8>,
    pub curves: Vec<PeripheralCurve>,
}

// Raw JSON schema (SnapPy-style neighbors/gluings arrays).
#[derive(Serialize, Deserialize)]
struct RawTriangulation {
    name: String,
    num_tetrahedra: usize,
    tetrahedra: Vec<RawTet>,
    #[serde(default)]
    peripheral_curves: Vec<PeripheralCurve>,
}

#[derive(Serialize, Deserialize)]
struct RawTet {
    neighbors: [usize; 4],
    gluings: [[u8; 4]; 4],
}

impl ConcreteTriangulation {
    /// Build from explicit pairing data (None = unglued face) and validate.
    pub fn from_pairings(
        name: &str,
        pairings: Vec<[Option<(usize, Perm4)>; 4]>,
        curves: Vec<PeripheralCurve>,
    ) -> Result<Self> {
        let mut tri = ConcreteTriangulation {
            name: name.to_string(),
            pairings,
            eps: Vec::new(),
            curves,
        };
        tri.validate_pairings()?;
        tri.eps = orientation_signs(&tri)?;
        for ci in 0..tri.curves.len() {
            tri.validate_curve(ci)?;
        }
        Ok(tri)
    }

    /// Parse and validate the JSON triangulation format.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawTriangulation = serde_json::from_str(text)?;
        if raw.tetrahedra.len() != raw.num_tetrahedra {
            return Err(Error::Malformed(format!(
                "num_tetrahedra = {} but {} tetrahedra listed",
                raw.num_tetrahedra,
                raw.tetrahedra.len()
            )));
        }
        let mut pairings = Vec::with_capacity(raw.tetrahedra.len());
        for (i, tet) in raw.tetrahedra.iter().enumerate() {
            let mut faces: [Option<(usize, Perm4)>; 4] = [None; 4];
            for f in 0..4 {
                let to = tet.neighbors[f];
                if to >= raw.num_tetrahedra {
                    return Err(Error::Malformed(format!(
                        "tet {} face {} glued to nonexistent tet {}",
                        i, f, to
                    )));
                }
                faces[f] = Some((to, Perm4::new(tet.gluings[f])?));
            }
            pairings.push(faces);
        }
        Self::from_pairings(&raw.name, pairings, raw.peripheral_curves)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let tets: Vec<_> = self
            .pairings
            .iter()
            .map(|faces| {
                let neighbors: Vec<_> = faces.iter().map(|g| g.unwrap().0).collect();
                let gluings: Vec<_> = faces.iter().map(|g| g.unwrap().1.image()).collect();
                serde_json::json!({"neighbors": neighbors, "gluings": gluings})
            })
            .collect();
        serde_json::json!({
            "name": self.name,
            "num_tetrahedra": self.num_tet(),
            "tetrahedra": tets,
            "peripheral_curves": self.curves,
        })
    }

    pub fn num_tet(&self) -> usize {
        self.pairings.len()
    }

    pub fn pairing(&self, tet: usize, face: usize) -> Option<(usize, Perm4)> {
        self.pairings[tet][face]
    }

    pub fn face_pairings(&self) -> impl Iterator<Item = FacePairing> + '_ {
        (0..self.num_tet()).flat_map(move |tet| {
            (0..4).filter_map(move |face| {
                self.pairings[tet][face].map(|(to, perm)| FacePairing {
                    from_tet: tet,
                    from_face: face,
                    to_tet: to,
                    perm,
                })
            })
        })
    }

    pub fn curve(&self, name: &str) -> Result<&PeripheralCurve> {
        self.curves
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::NoSuchCurve(name.to_string()))
    }

    fn validate_pairings(&mut self) -> Result<()> {
        // every pairing has an inverse partner at the image face, and no face
        // is targeted twice
        let mut hit = vec![[0usize; 4]; self.num_tet()];
        for tet in 0..self.num_tet() {
            for face in 0..4 {
                if let Some((to, perm)) = self.pairings[tet][face] {
                    let tf = perm.apply(face);
                    hit[to][tf] += 1;
                }
            }
        }
        for tet in 0..self.num_tet() {
            for face in 0..4 {
                if hit[tet][face] > 1 {
                    return Err(Error::FaceMultiplyGlued { tet, face });
                }
            }
        }
        for tet in 0..self.num_tet() {
            for face in 0..4 {
                let glued = self.pairings[tet][face].is_some();
                if glued != (hit[tet][face] == 1) {
                    return Err(Error::InconsistentPairing { tet, face });
                }
                if let Some((to, perm)) = self.pairings[tet][face] {
                    let tf = perm.apply(face);
                    match self.pairings[to][tf] {
                        Some((back, q)) if back == tet && q == perm.inverse() => {}
                        Some(_) => return Err(Error::InconsistentPairing { tet, face }),
                        None => return Err(Error::UnpairedFace { tet: to, face: tf }),
                    }
                }
            }
        }
        Ok(())
    }

    /// Require that every face is glued (manifold triangulations, as opposed
    /// to local models).
    pub fn require_closed(&self) -> Result<()> {
        for tet in 0..self.num_tet() {
            for face in 0..4 {
                if self.pairings[tet][face].is_none() {
                    return Err(Error::UnpairedFace { tet, face });
                }
            }
        }
        Ok(())
    }

    /// End vertex of a curve step, before identification across faces.
    fn step_end(step: &CurveStep) -> (usize, [u8; 3]) {
        let [v0, v1, v2] = step.triple;
        let v3 = (0..4u8).find(|v| !step.triple.contains(v)).unwrap();
        let fwd = match step.kind {
            StepKind::Short => [v0, v1, v3],
            StepKind::Middle => [v0, v2, v1],
        };
        if step.dir == 1 {
            (step.tet, fwd)
        } else {
            (step.tet, step.triple)
        }
    }

    fn step_start(step: &CurveStep) -> (usize, [u8; 3]) {
        if step.dir == 1 {
            (step.tet, step.triple)
        } else {
            let (t, v) = Self::step_end(&CurveStep { dir: 1, ..step.clone() });
            (t, v)
        }
    }

    /// The other representative of a boundary vertex `(tet, v0v1v2)`: the
    /// triple lies in the face spanned by its three vertices, which may be
    /// glued to another tetrahedron.
    pub fn identify_vertex(&self, tet: usize, triple: [u8; 3]) -> Option<(usize, [u8; 3])> {
        let face = (0..4u8).find(|v| !triple.contains(v)).unwrap() as usize;
        let (to, sigma) = self.pairings[tet][face]?;
        Some((
            to,
            [
                sigma.apply(triple[0] as usize) as u8,
                sigma.apply(triple[1] as usize) as u8,
                sigma.apply(triple[2] as usize) as u8,
            ],
        ))
    }

    fn same_boundary_vertex(&self, a: (usize, [u8; 3]), b: (usize, [u8; 3])) -> bool {
        a == b || self.identify_vertex(a.0, a.1) == Some(b)
    }

    fn validate_curve(&self, ci: usize) -> Result<()> {
        let curve = &self.curves[ci];
        if curve.steps.is_empty() {
            return Ok(());
        }
        for (i, step) in curve.steps.iter().enumerate() {
            if step.dir != 1 && step.dir != -1 {
                return Err(Error::Malformed(format!(
                    "curve {:?} step {}: dir must be +-1",
                    curve.name, i
                )));
            }
            let mut seen = [false; 4];
            for &v in &step.triple {
                if v > 3 || seen[v as usize] {
                    return Err(Error::Malformed(format!(
                        "curve {:?} step {}: bad triple",
                        curve.name, i
                    )));
                }
                seen[v as usize] = true;
            }
            let next = &curve.steps[(i + 1) % curve.steps.len()];
            if !self.same_boundary_vertex(Self::step_end(step), Self::step_start(next)) {
                return Err(Error::BrokenPath {
                    name: curve.name.clone(),
                    step: i,
                });
            }
        }
        Ok(())
    }
}

/// BFS orientation-sign assignment: across each pairing `ε_Δ ε_Δ' = -sign(σ)`,
/// first tetrahedron of each connected component gets `+1`.
pub fn orientation_signs(tri: &ConcreteTriangulation) -> Result<Vec<i8>> {
    let mut eps = vec![0i8; tri.num_tet()];
    for start in 0..tri.num_tet() {
        if eps[start] != 0 {
            continue;
        }
        eps[start] = 1;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for face in 0..4 {
                if let Some((j, sigma)) = tri.pairing(i, face) {
                    let want = -sigma.sign() * eps[i];
                    if eps[j] == 0 {
                        eps[j] = want;
                        queue.push_back(j);
                    } else if eps[j] != want {
                        return Err(Error::NonOrientable);
                    }
                }
            }
        }
    }
    Ok(eps)
}

/// Reorder the vertices of each tetrahedron: vertex `v` of the new `Δ_i` is
/// vertex `σ_i(v)` of the old one.  Pairings conjugate as `τ' = σ_j⁻¹ τ σ_i`,
/// faces relabel by `σ_i⁻¹`, curve triples by `σ_i⁻¹`, and ε is recomputed.
pub fn reorder(tri: &ConcreteTriangulation, sigmas: &[Perm4]) -> Result<ConcreteTriangulation> {
    assert_eq!(sigmas.len(), tri.num_tet());
    let mut pairings = vec![[None; 4]; tri.num_tet()];
    for i in 0..tri.num_tet() {
        for face in 0..4 {
            if let Some((j, tau)) = tri.pairing(i, face) {
                let new_face = sigmas[i].inverse().apply(face);
                let new_tau = sigmas[j].inverse().compose(&tau).compose(&sigmas[i]);
                pairings[i][new_face] = Some((j, new_tau));
            }
        }
    }
    let curves = tri
        .curves
        .iter()
        .map(|c| PeripheralCurve {
            name: c.name.clone(),
            steps: c
                .steps
                .iter()
                .map(|s| CurveStep {
                    tet: s.tet,
                    triple: s.triple.map(|v| sigmas[s.tet].inverse().apply(v as usize) as u8),
                    kind: s.kind,
                    dir: s.dir,
                })
                .collect(),
        })
        .collect();
    ConcreteTriangulation::from_pairings(&tri.name, pairings, curves)
}

/// A single unglued ordered simplex.
pub fn single_simplex() -> ConcreteTriangulation {
    ConcreteTriangulation {
        name: "simplex".into(),
        pairings: vec![[None; 4]],
        eps: vec![1],
        curves: vec![],
    }
}

/// Edge local model: k simplices cyclically glued along the common edge 01,
/// pairing face 3 of simplex i to face 2 of simplex i+1 via the transposition
/// (23).  The outer faces stay unglued.
pub fn edge_local_model(k: usize) -> ConcreteTriangulation {
    assert!(k >= 3);
    let swap = Perm4::transposition(2, 3);
    let mut pairings = vec![[None; 4]; k];
    for i in 0..k {
        let j = (i + 1) % k;
        pairings[i][3] = Some((j, swap));
        pairings[j][2] = Some((i, swap));
    }
    ConcreteTriangulation::from_pairings("edge-local", pairings, vec![]).unwrap()
}

/// Face local model: two simplices glued along the face 012 by the identity
/// extension (order preserving).
pub fn face_local_model() -> ConcreteTriangulation {
    let id = Perm4::identity();
    let mut pairings = vec![[None; 4]; 2];
    pairings[0][3] = Some((1, id));
    pairings[1][3] = Some((0, id));
    ConcreteTriangulation::from_pairings("face-local", pairings, vec![]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fig8_parses_with_mixed_signs() {
        let tri = fixtures::fig8();
        assert_eq!(tri.num_tet(), 2);
        assert_eq!(tri.eps, vec![1, -1]);
        tri.require_closed().unwrap();
    }

    #[test]
    fn self_glued_tet_all_odd_is_orientable() {
        // one tet, face 0 <-> face 1 via (01), face 2 <-> face 3 via (23):
        // both odd, so ε propagation is consistent with ε = (+1)
        let p01 = Perm4::transposition(0, 1);
        let p23 = Perm4::transposition(2, 3);
        let pairings = vec![[
            Some((0, p01)),
            Some((0, p01)),
            Some((0, p23)),
            Some((0, p23)),
        ]];
        let tri = ConcreteTriangulation::from_pairings("gieseking-like", pairings, vec![]).unwrap();
        assert_eq!(tri.eps, vec![1]);
    }

    #[test]
    fn even_odd_cycle_is_non_orientable() {
        // two tets glued along two faces, one even and one odd extension:
        // going around the cycle forces ε = −ε
        let id = Perm4::identity(); // even, face 3 <-> face 3
        let odd = Perm4::transposition(0, 1); // odd, face 2 <-> face 2
        let mut pairings = vec![[None; 4]; 2];
        pairings[0][3] = Some((1, id));
        pairings[1][3] = Some((0, id));
        pairings[0][2] = Some((1, odd));
        pairings[1][2] = Some((0, odd));
        let err = ConcreteTriangulation::from_pairings("bad", pairings, vec![]);
        assert!(matches!(err, Err(Error::NonOrientable)));
    }

    #[test]
    fn multiply_glued_face_detected() {
        // tet0 faces 0 and 1 both target tet1 face 0
        let p0 = Perm4::new([0, 1, 2, 3]).unwrap();
        let p1 = Perm4::new([1, 0, 2, 3]).unwrap(); // apply(1) = 0
        let mut pairings = vec![[None; 4]; 2];
        pairings[0][0] = Some((1, p0));
        pairings[0][1] = Some((1, p1));
        pairings[1][0] = Some((0, p0));
        let err = ConcreteTriangulation::from_pairings("bad", pairings, vec![]);
        assert!(matches!(err, Err(Error::FaceMultiplyGlued { .. })));
    }

    #[test]
    fn reorder_roundtrip() {
        let tri = fixtures::fig8();
        let ids = vec![Perm4::identity(); 2];
        assert_eq!(reorder(&tri, &ids).unwrap(), tri);
        let sig = vec![Perm4::transposition(0, 1), Perm4::new([2, 0, 3, 1]).unwrap()];
        let back: Vec<Perm4> = sig.iter().map(|s| s.inverse()).collect();
        let there = reorder(&tri, &sig).unwrap();
        assert_ne!(there, tri);
        assert_eq!(reorder(&there, &back).unwrap(), tri);
    }

    #[test]
    fn local_models_validate() {
        for k in 3..=6 {
            let m = edge_local_model(k);
            assert_eq!(m.num_tet(), k);
            assert!(m.eps.iter().all(|&e| e == 1));
        }
        let f = face_local_model();
        assert_eq!(f.eps, vec![1, -1]);
    }
}
