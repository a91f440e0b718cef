use std::collections::{BTreeSet, VecDeque};

use crate::plane_graph::{FaceId, Faces, PlaneGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("empty face set")]
    Empty,
    #[error("face {0} does not exist")]
    UnknownFace(FaceId),
    #[error("vertex `{0}` is not incident to any chosen face")]
    Uncovered(String),
    #[error("incidence subgraph is disconnected ({reached} of {total} nodes reachable)")]
    Disconnected { reached: usize, total: usize },
}

/// A node of the spanning tree, in BFS discovery order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeNode {
    Face { face: FaceId, parent: Option<usize> },
    Vertex { vertex: usize, parent: FaceId },
}

/// A connected face cover together with a spanning tree of its incidence subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCover {
    faces: BTreeSet<FaceId>,
    tree: Vec<TreeNode>,
}

impl FaceCover {
    /// Checks the cover and connectivity conditions on the canonical faces of
    /// `g` and returns the BFS spanning tree rooted at the smallest face.
    pub fn certify(g: &PlaneGraph, faces: &BTreeSet<FaceId>) -> Result<Self, CoverError> {
        Self::certify_with(g, &g.faces(), faces)
    }

    pub fn certify_with(g: &PlaneGraph, all: &Faces, faces: &BTreeSet<FaceId>) -> Result<Self, CoverError> {
        let root = *faces.first().ok_or(CoverError::Empty)?;
        for &f in faces {
            if all.get(f).is_none() {
                return Err(CoverError::UnknownFace(f));
            }
        }
        let n = g.vertex_count();
        if let Some(v) = (0..n).find(|&v| !all.faces_at(v).iter().any(|f| faces.contains(f))) {
            return Err(CoverError::Uncovered(g.name(v).to_string()));
        }

        let mut seen_vertex = vec![false; n];
        let mut seen_face = BTreeSet::from([root]);
        let mut tree = vec![TreeNode::Face { face: root, parent: None }];
        let mut queue = VecDeque::from([TreeNode::Face { face: root, parent: None }]);
        while let Some(node) = queue.pop_front() {
            match node {
                TreeNode::Face { face, .. } => {
                    for &v in all.get(face).expect("checked above").incident_vertices() {
                        if !seen_vertex[v] {
                            seen_vertex[v] = true;
                            let child = TreeNode::Vertex { vertex: v, parent: face };
                            tree.push(child);
                            queue.push_back(child);
                        }
                    }
                }
                TreeNode::Vertex { vertex, .. } => {
                    for &f in all.faces_at(vertex) {
                        if faces.contains(&f) && seen_face.insert(f) {
                            let child = TreeNode::Face {
                                face: f,
                                parent: Some(vertex),
                            };
                            tree.push(child);
                            queue.push_back(child);
                        }
                    }
                }
            }
        }
        let total = n + faces.len();
        if tree.len() != total {
            return Err(CoverError::Disconnected {
                reached: tree.len(),
                total,
            });
        }
        Ok(Self {
            faces: faces.clone(),
            tree,
        })
    }

    pub fn faces(&self) -> &BTreeSet<FaceId> {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn root(&self) -> FaceId {
        match self.tree[0] {
            TreeNode::Face { face, .. } => face,
            TreeNode::Vertex { .. } => unreachable!("the tree is rooted at a face"),
        }
    }

    /// Spanning tree nodes in BFS order from the root.
    pub fn tree(&self) -> &[TreeNode] {
        &self.tree
    }

    /// Tree edges `(vertex, face)`.
    pub fn tree_edges(&self) -> Vec<(usize, FaceId)> {
        self.tree
            .iter()
            .filter_map(|node| match *node {
                TreeNode::Face { face, parent: Some(v) } => Some((v, face)),
                TreeNode::Vertex { vertex, parent } => Some((vertex, parent)),
                TreeNode::Face { parent: None, .. } => None,
            })
            .collect()
    }

    /// Primal vertices in BFS order.
    pub fn vertex_order(&self) -> Vec<usize> {
        self.tree
            .iter()
            .filter_map(|node| match *node {
                TreeNode::Vertex { vertex, .. } => Some(vertex),
                TreeNode::Face { .. } => None,
            })
            .collect()
    }

    /// Faces adjacent to `v` in the tree: its parent first, then its children.
    pub fn tree_faces_at(&self, v: usize) -> Vec<FaceId> {
        let mut out = Vec::new();
        for node in &self.tree {
            match *node {
                TreeNode::Vertex { vertex, parent } if vertex == v => out.insert(0, parent),
                TreeNode::Face { face, parent: Some(p) } if p == v => out.push(face),
                _ => {}
            }
        }
        out
    }
}
