//! Vertex cover on cubic plane graphs as connected face cover on the
//! subdivided dual, and back.

use std::collections::{BTreeMap, BTreeSet};

use crate::cover_solver::next_combination;
use crate::plane_graph::{FaceId, GraphError, PlaneGraph};
use crate::split_engine::{CoverError, FaceCover};

pub const VC_VERTEX_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("NotCubic: vertex `{0}` has degree {1}")]
    NotCubic(String, usize),
    #[error("NotBiconnected: instance graph is not biconnected")]
    NotBiconnected,
    #[error("NotACover: edge {0}-{1} is not covered")]
    NotACover(String, String),
    #[error("NotAVertexCover: edge {0}-{1} is not covered")]
    NotAVertexCover(String, String),
    #[error("CapExceeded: {actual} vertices, limit {limit}")]
    CapExceeded { actual: usize, limit: usize },
    #[error("face cover rejected: {0}")]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Replaces every edge `uw` by a path `u - x - w` through a fresh vertex `x`
/// named `u-w`, placed where the edge was in both rotations.
pub fn all_one_subdivision(g: &PlaneGraph) -> PlaneGraph {
    let mut taken: BTreeSet<String> = g.names().iter().cloned().collect();
    let mut middle: BTreeMap<(usize, usize), String> = BTreeMap::new();
    for (u, w) in g.edges() {
        let mut name = format!("{}-{}", g.name(u), g.name(w));
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        middle.insert((u, w), name);
    }
    let mid = |a: usize, b: usize| middle[&(a.min(b), a.max(b))].clone();
    let mut entries: Vec<(String, Vec<String>)> = (0..g.vertex_count())
        .map(|v| (g.name(v).to_string(), g.rotation(v).iter().map(|&w| mid(v, w)).collect()))
        .collect();
    for ((u, w), name) in &middle {
        entries.push((name.clone(), vec![g.name(*u).to_string(), g.name(*w).to_string()]));
    }
    PlaneGraph::from_named(entries).expect("subdivision keeps the embedding valid")
}

/// The dual of `g` as a plane graph with vertices `f<id>`. Fails with
/// `ParallelEdge` when two faces share more than one edge.
pub fn dual_plane_graph(g: &PlaneGraph) -> Result<PlaneGraph, GraphError> {
    let faces = g.faces();
    let entries = faces
        .iter()
        .map(|f| {
            let across = f
                .boundary()
                .iter()
                .map(|&(u, w)| format!("f{}", faces.dart_face(w, u).expect("dart exists").0))
                .collect();
            (format!("f{}", f.id().0), across)
        })
        .collect();
    PlaneGraph::from_named(entries)
}

/// A vertex cover instance on a cubic biconnected plane graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcInstance {
    graph: PlaneGraph,
    k: usize,
}

impl VcInstance {
    pub fn new(graph: PlaneGraph, k: usize) -> Result<Self, ReductionError> {
        if let Some(v) = (0..graph.vertex_count()).find(|&v| graph.degree(v) != 3) {
            return Err(ReductionError::NotCubic(graph.name(v).to_string(), graph.degree(v)));
        }
        if !graph.is_biconnected() {
            return Err(ReductionError::NotBiconnected);
        }
        Ok(Self { graph, k })
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// The subdivided dual `D*` with its faces matched to instance vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfcInstance {
    graph: PlaneGraph,
    vertex_face: Vec<FaceId>,
    face_vertex: BTreeMap<FaceId, usize>,
}

impl CfcInstance {
    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    /// Face of `D*` that corresponds to instance vertex `v`.
    pub fn face_of(&self, v: usize) -> FaceId {
        self.vertex_face[v]
    }

    pub fn vertex_of(&self, f: FaceId) -> Option<usize> {
        self.face_vertex.get(&f).copied()
    }

    pub fn correspondence(&self) -> &BTreeMap<FaceId, usize> {
        &self.face_vertex
    }
}

/// Builds `D*`: face nodes `f<id>` of the dual, each dual edge subdivided by a
/// node `e<i>` for the `i`-th instance edge.
pub fn build_cfc_instance(inst: &VcInstance) -> Result<CfcInstance, ReductionError> {
    let g = &inst.graph;
    let faces = g.faces();
    let edges = g.edges();
    let edge_index: BTreeMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let edge_of = |u: usize, w: usize| edge_index[&(u.min(w), u.max(w))];

    let mut entries: Vec<(String, Vec<String>)> = faces
        .iter()
        .map(|f| {
            let around = f.boundary().iter().map(|&(u, w)| format!("e{}", edge_of(u, w))).collect();
            (format!("f{}", f.id().0), around)
        })
        .collect();
    for &(u, w) in &edges {
        let a = faces.dart_face(u, w).expect("dart exists");
        let b = faces.dart_face(w, u).expect("dart exists");
        entries.push((format!("e{}", edge_of(u, w)), vec![format!("f{}", a.0), format!("f{}", b.0)]));
    }
    let d_star = PlaneGraph::from_named(entries)?;

    // A face of D* runs through the edge nodes of exactly one instance vertex.
    let mut vertex_face = vec![None; g.vertex_count()];
    let mut face_vertex = BTreeMap::new();
    for f in d_star.faces().iter() {
        let mut common: Option<BTreeSet<usize>> = None;
        for &x in f.incident_vertices() {
            let Some(i) = d_star.name(x).strip_prefix('e') else { continue };
            let (u, w) = edges[i.parse::<usize>().expect("edge node index")];
            let ends = BTreeSet::from([u, w]);
            common = Some(match common {
                None => ends,
                Some(c) => c.intersection(&ends).copied().collect(),
            });
        }
        let v = common
            .filter(|c| c.len() == 1)
            .and_then(|c| c.first().copied())
            .expect("faces of the subdivided dual surround single vertices");
        vertex_face[v] = Some(f.id());
        face_vertex.insert(f.id(), v);
    }
    Ok(CfcInstance {
        graph: d_star,
        vertex_face: vertex_face.into_iter().map(|f| f.expect("bijection")).collect(),
        face_vertex,
    })
}

fn uncovered_edge(g: &PlaneGraph, set: &BTreeSet<usize>) -> Option<(usize, usize)> {
    g.edges().into_iter().find(|(u, w)| !set.contains(u) && !set.contains(w))
}

/// Maps a connected face cover of `D*` to a vertex cover of the instance.
pub fn cfc_to_vc(inst: &VcInstance, d_star: &CfcInstance, cover: &FaceCover) -> Result<BTreeSet<usize>, ReductionError> {
    let vc: BTreeSet<usize> = cover
        .faces()
        .iter()
        .map(|&f| d_star.vertex_of(f).ok_or(CoverError::UnknownFace(f)))
        .collect::<Result<_, _>>()?;
    if let Some((u, w)) = uncovered_edge(&inst.graph, &vc) {
        return Err(ReductionError::NotACover(inst.graph.name(u).into(), inst.graph.name(w).into()));
    }
    debug_assert_eq!(vc.len(), cover.len());
    Ok(vc)
}

/// Maps a vertex cover of the instance to a connected face cover of `D*`.
pub fn vc_to_cfc(inst: &VcInstance, d_star: &CfcInstance, vc: &BTreeSet<usize>) -> Result<FaceCover, ReductionError> {
    if let Some((u, w)) = uncovered_edge(&inst.graph, vc) {
        return Err(ReductionError::NotAVertexCover(inst.graph.name(u).into(), inst.graph.name(w).into()));
    }
    let faces: BTreeSet<FaceId> = vc.iter().map(|&v| d_star.face_of(v)).collect();
    Ok(FaceCover::certify(&d_star.graph, &faces)?)
}

/// Lexicographically least minimum vertex cover by exhaustive search.
pub fn brute_min_vc(g: &PlaneGraph) -> Result<BTreeSet<usize>, ReductionError> {
    let n = g.vertex_count();
    if n > VC_VERTEX_CAP {
        return Err(ReductionError::CapExceeded {
            actual: n,
            limit: VC_VERTEX_CAP,
        });
    }
    let edges = g.edges();
    for size in 0..=n {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let mask = pick.iter().fold(0u64, |m, &v| m | 1 << v);
            if edges.iter().all(|&(u, w)| mask >> u & 1 == 1 || mask >> w & 1 == 1) {
                return Ok(pick.into_iter().collect());
            }
            if size == 0 || !next_combination(&mut pick, n) {
                break;
            }
        }
    }
    unreachable!("all vertices cover every edge")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover_solver::brute_min_cfc;
    use crate::generators::{cube, cycle, k4};

    #[test]
    fn subdivision_counts() {
        let t = all_one_subdivision(&cycle(3).unwrap());
        assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (6, 6, 2));
        let s = all_one_subdivision(&k4());
        assert_eq!((s.vertex_count(), s.edge_count(), s.face_count()), (10, 12, 4));
        assert!(s.faces().iter().all(|f| f.len() == 6));
        let faces = s.faces();
        let fresh: Vec<usize> = (0..10).filter(|&v| s.name(v).contains('-')).collect();
        assert_eq!(fresh.len(), 6);
        for v in fresh {
            assert_eq!(s.degree(v), 2);
            assert_eq!(faces.faces_at(v).len(), 2);
        }
    }

    #[test]
    fn subdivision_names_avoid_collisions() {
        let g = PlaneGraph::build([
            ("a", vec!["b", "a-b"]),
            ("b", vec!["a-b", "a"]),
            ("a-b", vec!["a", "b"]),
        ])
        .unwrap();
        let s = all_one_subdivision(&g);
        assert_eq!(s.vertex_count(), 6);
    }

    #[test]
    fn dual_of_k4_is_k4() {
        let d = dual_plane_graph(&k4()).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count()), (4, 6));
        assert!(d.is_maximal_planar());
        assert!(matches!(dual_plane_graph(&cycle(3).unwrap()), Err(GraphError::ParallelEdge(..))));
    }

    #[test]
    fn k4_instance() {
        let inst = VcInstance::new(k4(), 3).unwrap();
        let d = build_cfc_instance(&inst).unwrap();
        let h = d.graph();
        assert_eq!((h.vertex_count(), h.edge_count(), h.face_count()), (10, 12, 4));
        assert!(h.faces().iter().all(|f| f.len() == 6));
        assert_eq!(d.correspondence().len(), 4);

        let vc = brute_min_vc(inst.graph()).unwrap();
        assert_eq!(vc, BTreeSet::from([0, 1, 2]));
        let cfc = brute_min_cfc(h).unwrap();
        assert_eq!(cfc.len(), 3);
        let back = cfc_to_vc(&inst, &d, &cfc).unwrap();
        assert_eq!(back.len(), 3);
        let there = vc_to_cfc(&inst, &d, &vc).unwrap();
        assert_eq!(cfc_to_vc(&inst, &d, &there).unwrap(), vc);

        let all: BTreeSet<usize> = (0..4).collect();
        assert_eq!(vc_to_cfc(&inst, &d, &all).unwrap().len(), 4);
        assert!(matches!(
            vc_to_cfc(&inst, &d, &BTreeSet::from([0, 1])),
            Err(ReductionError::NotAVertexCover(..))
        ));
    }

    #[test]
    fn cube_instance() {
        let inst = VcInstance::new(cube(), 4).unwrap();
        assert_eq!(brute_min_vc(inst.graph()).unwrap().len(), 4);
        let d = build_cfc_instance(&inst).unwrap();
        assert_eq!(d.graph().face_count(), 8);
        assert!(d.graph().faces().iter().all(|f| f.len() == 6));
        assert_eq!(brute_min_cfc(d.graph()).unwrap().len(), 4);
    }

    #[test]
    fn instance_validation() {
        assert!(matches!(VcInstance::new(cycle(4).unwrap(), 2), Err(ReductionError::NotCubic(..))));
        assert_eq!(brute_min_vc(&cycle(3).unwrap()).unwrap().len(), 2);
    }
}
