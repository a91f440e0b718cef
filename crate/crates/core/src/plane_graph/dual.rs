use std::collections::{BTreeMap, BTreeSet};

use super::{FaceId, Faces, PlaneGraph};

/// Dual multigraph: one node per face, one edge per primal edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    nodes: Vec<FaceId>,
    edges: Vec<(FaceId, FaceId)>,
    outer: Option<FaceId>,
}

impl DualGraph {
    /// Builds the dual from already extracted faces. Edges are listed in primal
    /// edge order with endpoints normalised to `(min, max)`.
    pub fn new(g: &PlaneGraph, faces: &Faces, outer: Option<FaceId>) -> Self {
        let edges = g
            .edges()
            .into_iter()
            .map(|(u, w)| {
                let a = faces.dart_face(u, w).expect("edge darts exist");
                let b = faces.dart_face(w, u).expect("edge darts exist");
                (a.min(b), a.max(b))
            })
            .collect();
        Self {
            nodes: faces.ids().collect(),
            edges,
            outer,
        }
    }

    /// A dual multigraph given directly by its node and edge lists.
    pub fn from_parts(nodes: Vec<FaceId>, edges: Vec<(FaceId, FaceId)>, outer: Option<FaceId>) -> Self {
        let mut nodes = nodes;
        nodes.sort_unstable();
        nodes.dedup();
        let edges = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        Self { nodes, edges, outer }
    }

    pub fn nodes(&self) -> &[FaceId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(FaceId, FaceId)] {
        &self.edges
    }

    pub fn outer_node(&self) -> Option<FaceId> {
        self.outer
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degree with multiplicity; a self-loop counts twice.
    pub fn degree(&self, f: FaceId) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == f) + usize::from(b == f))
            .sum()
    }

    pub fn has_self_loop(&self) -> bool {
        self.edges.iter().any(|(a, b)| a == b)
    }

    /// Edge multiplicities between distinct nodes.
    pub fn multiplicities(&self) -> BTreeMap<(FaceId, FaceId), usize> {
        let mut out = BTreeMap::new();
        for &e in &self.edges {
            *out.entry(e).or_insert(0) += 1;
        }
        out
    }

    /// The subgraph induced by all nodes except `removed`.
    pub fn without(&self, removed: &BTreeSet<FaceId>) -> DualGraph {
        DualGraph {
            nodes: self
                .nodes
                .iter()
                .copied()
                .filter(|f| !removed.contains(f))
                .collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|(a, b)| !removed.contains(a) && !removed.contains(b))
                .collect(),
            outer: self.outer.filter(|f| !removed.contains(f)),
        }
    }

    /// Drops the outer node and its edges.
    pub fn weak(&self) -> DualGraph {
        match self.outer {
            Some(o) => {
                let mut w = self.without(&BTreeSet::from([o]));
                w.outer = None;
                w
            }
            None => self.clone(),
        }
    }

    /// True iff the multigraph has no cycle; parallel edges and self-loops are cycles.
    pub fn is_forest(&self) -> bool {
        let index: BTreeMap<FaceId, usize> = self.nodes.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, index[a]), find(&mut parent, index[b]));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
}

/// Bipartite face-vertex incidence graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    vertices: Vec<usize>,
    faces: Vec<FaceId>,
    edges: Vec<(usize, FaceId)>,
}

impl IncidenceGraph {
    pub fn new(g: &PlaneGraph, faces: &Faces) -> Self {
        let edges = (0..g.vertex_count())
            .flat_map(|v| faces.faces_at(v).iter().map(move |&f| (v, f)))
            .collect();
        Self {
            vertices: (0..g.vertex_count()).collect(),
            faces: faces.ids().collect(),
            edges,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn faces(&self) -> &[FaceId] {
        &self.faces
    }

    /// Incidences `(vertex, face)` sorted by vertex, then face.
    pub fn edges(&self) -> &[(usize, FaceId)] {
        &self.edges
    }
}
