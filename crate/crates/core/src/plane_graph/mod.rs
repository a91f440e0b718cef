//! Plane graphs given by a rotation system.
//!
//! A [`PlaneGraph`] stores, for every vertex, the clockwise cyclic order of its
//! neighbours. That order is the only source of embedding information: faces,
//! the dual and the face-vertex incidence graph are all derived from it.
//!
//! Vertices are addressed by dense indices. Indices follow the natural order of
//! the vertex names (digit runs compare numerically), so two graphs built from
//! the same name → neighbour-list map are identical regardless of input order.

mod dual;
mod faces;

pub use dual::{DualGraph, IncidenceGraph};
pub use faces::{Face, Faces, OuterplaneStatus};

pub(crate) use faces::{trace_cycles, Darts};

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

/// Identifier of a face.
///
/// Freshly extracted faces are numbered `0..F` by their smallest boundary slot.
/// During a split sequence a merged face keeps the smaller of its two ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceId(pub u32);

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("AsymmetricRotation: `{0}` lists `{1}` but `{1}` does not list `{0}`")]
    AsymmetricRotation(String, String),
    #[error("SelfLoop: `{0}` lists itself as a neighbour")]
    SelfLoop(String),
    #[error("Disconnected: the graph has {0} connected components")]
    Disconnected(usize),
    #[error("DuplicateVertex: `{0}` has more than one rotation entry")]
    DuplicateVertex(String),
    #[error("ParallelEdge: `{0}` lists `{1}` more than once")]
    ParallelEdge(String, String),
    #[error("EmptyGraph: a plane graph needs at least one edge")]
    EmptyGraph,
    #[error("NotPlanar: the rotation system describes a surface of genus {0}")]
    NotPlanar(usize),
    #[error("UnknownVertex: `{0}`")]
    UnknownVertex(String),
    #[error("UnknownFace: face {0} does not exist")]
    UnknownFace(FaceId),
    #[error("OuterFaceUnset: no outer face has been designated")]
    OuterFaceUnset,
}

/// A connected graph together with a rotation system of genus zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    rotation: Vec<Vec<usize>>,
    outer_face: Option<FaceId>,
}

impl PlaneGraph {
    /// Builds a plane graph from a map `vertex → clockwise neighbour list`.
    ///
    /// Rejects asymmetric rotations, self-loops, parallel edges, disconnected
    /// graphs and rotation systems whose face count violates Euler's formula.
    pub fn build<I, V, N, S>(adjacency: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (V, N)>,
        V: Into<String>,
        N: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let entries = adjacency
            .into_iter()
            .map(|(v, nbrs)| (v.into(), nbrs.into_iter().map(Into::into).collect()))
            .collect();
        Self::from_named(entries)
    }

    pub(crate) fn from_named(mut entries: Vec<(String, Vec<String>)>) -> Result<Self, GraphError> {
        entries.sort_by(|a, b| natural_cmp(&a.0, &b.0));
        let mut index = HashMap::with_capacity(entries.len());
        for (i, (name, _)) in entries.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
        }

        let mut rotation = Vec::with_capacity(entries.len());
        for (name, nbrs) in &entries {
            let mut seen = HashSet::with_capacity(nbrs.len());
            let mut row = Vec::with_capacity(nbrs.len());
            for nb in nbrs {
                if nb == name {
                    return Err(GraphError::SelfLoop(name.clone()));
                }
                let Some(&j) = index.get(nb) else {
                    return Err(GraphError::AsymmetricRotation(name.clone(), nb.clone()));
                };
                if !seen.insert(j) {
                    return Err(GraphError::ParallelEdge(name.clone(), nb.clone()));
                }
                row.push(j);
            }
            rotation.push(row);
        }
        let names: Vec<String> = entries.into_iter().map(|(n, _)| n).collect();
        Self::from_indexed(names, index, rotation)
    }

    fn from_indexed(
        names: Vec<String>,
        index: HashMap<String, usize>,
        rotation: Vec<Vec<usize>>,
    ) -> Result<Self, GraphError> {
        let adjacency: Vec<HashSet<usize>> = rotation
            .iter()
            .map(|r| r.iter().copied().collect())
            .collect();
        for (v, row) in rotation.iter().enumerate() {
            for &w in row {
                if !adjacency[w].contains(&v) {
                    return Err(GraphError::AsymmetricRotation(names[v].clone(), names[w].clone()));
                }
            }
        }
        let darts: usize = rotation.iter().map(Vec::len).sum();
        if darts == 0 {
            return Err(GraphError::EmptyGraph);
        }

        let components = count_components(&rotation);
        if components != 1 {
            return Err(GraphError::Disconnected(components));
        }

        // V - E + F = 2 - 2g for a connected rotation system.
        let faces = trace_cycles(&Darts::new(&rotation)).len() as isize;
        let euler = rotation.len() as isize - (darts / 2) as isize + faces;
        if euler != 2 {
            return Err(GraphError::NotPlanar(((2 - euler) / 2) as usize));
        }

        Ok(Self {
            names,
            index,
            rotation,
            outer_face: None,
        })
    }

    /// Builds from index-based rotations, naming vertex `i` by `names[i]`.
    pub(crate) fn from_rotation(names: Vec<String>, rotation: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let entries = rotation
            .iter()
            .enumerate()
            .map(|(v, row)| (names[v].clone(), row.iter().map(|&w| names[w].clone()).collect()))
            .collect();
        Self::from_named(entries)
    }

    /// Returns a copy with `face` (a canonical face id of this graph) designated as outer face.
    pub fn with_outer_face(mut self, face: FaceId) -> Result<Self, GraphError> {
        if face.0 as usize >= self.face_count() {
            return Err(GraphError::UnknownFace(face));
        }
        self.outer_face = Some(face);
        Ok(self)
    }

    pub fn without_outer_face(mut self) -> Self {
        self.outer_face = None;
        self
    }

    pub fn outer_face(&self) -> Option<FaceId> {
        self.outer_face
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Number of faces, which Euler's formula fixes at `E - V + 2`.
    pub fn face_count(&self) -> usize {
        self.edge_count() + 2 - self.vertex_count()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Clockwise neighbours of `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub(crate) fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.rotation[u].contains(&w)
    }

    /// Edges as index pairs `(u, w)` with `u < w`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .rotation
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&&w| u < w).map(move |&w| (u, w)))
            .collect();
        out.sort_unstable();
        out
    }

    /// The rotation system as `(name, clockwise neighbour names)` in vertex order.
    pub fn adjacency(&self) -> Vec<(String, Vec<String>)> {
        self.rotation
            .iter()
            .enumerate()
            .map(|(v, row)| {
                (
                    self.names[v].clone(),
                    row.iter().map(|&w| self.names[w].clone()).collect(),
                )
            })
            .collect()
    }

    /// Faces with canonical ids.
    pub fn faces(&self) -> Faces {
        Faces::extract(self)
    }

    /// True iff the graph has at least three vertices and no cut vertex, so
    /// that every facial walk is a simple cycle.
    pub fn is_biconnected(&self) -> bool {
        self.vertex_count() >= 3 && cut_vertices(&self.rotation).is_empty()
    }

    pub fn cut_vertices(&self) -> Vec<usize> {
        cut_vertices(&self.rotation)
    }

    /// Checks whether some face is incident to every vertex.
    pub fn is_outerplane(&self) -> OuterplaneStatus {
        self.faces().outerplane_status(self.outer_face)
    }

    /// True iff every face is a triangle and the graph has at least four vertices.
    pub fn is_maximal_planar(&self) -> bool {
        self.vertex_count() >= 4 && self.edge_count() == 3 * self.vertex_count() - 6
    }

    /// The dual multigraph; requires a designated outer face.
    pub fn dual(&self) -> Result<DualGraph, GraphError> {
        let outer = self.outer_face.ok_or(GraphError::OuterFaceUnset)?;
        Ok(DualGraph::new(self, &self.faces(), Some(outer)))
    }

    /// The dual without the outer face node.
    pub fn weak_dual(&self) -> Result<DualGraph, GraphError> {
        Ok(self.dual()?.weak())
    }

    pub fn incidence_graph(&self) -> IncidenceGraph {
        IncidenceGraph::new(self, &self.faces())
    }
}

/// Orders names so that embedded digit runs compare by numeric value
/// (`v2 < v10`), falling back to plain byte order on ties such as `01` vs `1`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut xs, mut ys) = (a.as_bytes(), b.as_bytes());
    loop {
        match (xs.first(), ys.first()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let xl = xs.iter().take_while(|c| c.is_ascii_digit()).count();
                let yl = ys.iter().take_while(|c| c.is_ascii_digit()).count();
                let xd = trim_zeros(&xs[..xl]);
                let yd = trim_zeros(&ys[..yl]);
                let ord = xd.len().cmp(&yd.len()).then_with(|| xd.cmp(yd));
                if ord != Ordering::Equal {
                    return ord;
                }
                xs = &xs[xl..];
                ys = &ys[yl..];
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(y);
                }
                xs = &xs[1..];
                ys = &ys[1..];
            }
        }
    }
}

fn trim_zeros(digits: &[u8]) -> &[u8] {
    let lead = digits.iter().take_while(|&&c| c == b'0').count();
    &digits[lead..]
}

fn count_components(rotation: &[Vec<usize>]) -> usize {
    let n = rotation.len();
    let mut seen = vec![false; n];
    let mut components = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in &rotation[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    components
}

/// Articulation points by iterative low-link search.
fn cut_vertices(rotation: &[Vec<usize>]) -> Vec<usize> {
    let n = rotation.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbour position)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, pos) = *top;
            if pos < rotation[v].len() {
                top.2 += 1;
                let w = rotation[v][pos];
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}
