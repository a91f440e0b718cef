//! Embedding-preserving vertex splits.
//!
//! A split of `v` with respect to two faces `f1 ≠ f2` on its boundary cuts the
//! clockwise rotation of `v` at the angle of `f1` and at the angle of `f2`. With
//! `w_1` the neighbour right after the `f1` angle and `w_i` the neighbour right
//! after the `f2` angle, copy `v.2` receives `w_1 .. w_{i-1}` and copy `v.1`
//! receives `w_i .. w_d`. The two faces become one.
//!
//! An [`Embedding`] carries face labels through a sequence of splits: untouched
//! faces keep their label and a merged face keeps the smaller label of the two.
//! Split-sequence files refer to faces by these labels.

mod cover;
mod realize;

pub use cover::{CoverError, FaceCover, TreeNode};
pub use realize::{extract_cover, merge_faces_at_vertex, realize_cover};

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::plane_graph::{trace_cycles, Darts, FaceId, Faces, GraphError, OuterplaneStatus, PlaneGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error("UnknownVertex: `{0}`")]
    UnknownVertex(String),
    #[error("NotIncident: face {face} is not on the boundary of `{vertex}`")]
    NotIncident { vertex: String, face: FaceId },
    #[error("SameFace: cannot split at face {0} twice")]
    SameFace(FaceId),
    #[error("DanglingVertex: `{0}` has degree below 2")]
    DanglingVertex(String),
    #[error("NameCollision: copy name `{0}` is already taken")]
    NameCollision(String),
    #[error("CopyMismatch: split of `{vertex}` yields `{expected}` but the sequence names `{found}`")]
    CopyMismatch {
        vertex: String,
        expected: String,
        found: String,
    },
    #[error("InvalidCover: {0}")]
    InvalidCover(#[from] CoverError),
    #[error("ReplayFailure at split {step}: {source}")]
    ReplayFailure { step: usize, source: Box<SplitError> },
    #[error("NotOuterplane: no face is incident to every vertex after the splits")]
    NotOuterplane,
    #[error("{0}")]
    Graph(#[from] GraphError),
}

/// One split, as recorded in a split sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitOp {
    pub vertex: String,
    pub face_a: FaceId,
    pub face_b: FaceId,
    pub copy_1: String,
    pub copy_2: String,
}

impl SplitOp {
    pub fn copy_names(vertex: &str) -> (String, String) {
        (format!("{vertex}.1"), format!("{vertex}.2"))
    }
}

impl fmt::Display for SplitOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SPLIT {} {} {} -> {} {}",
            self.vertex, self.face_a, self.face_b, self.copy_1, self.copy_2
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("ParseError at line {line}: {message}")]
pub struct SequenceParseError {
    pub line: usize,
    pub message: String,
}

impl FromStr for SplitOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        match tokens.as_slice() {
            ["SPLIT", v, a, b, "->", c1, c2] => {
                let face = |t: &str| {
                    t.parse::<u32>()
                        .map(FaceId)
                        .map_err(|_| format!("`{t}` is not a face id"))
                };
                Ok(SplitOp {
                    vertex: v.to_string(),
                    face_a: face(a)?,
                    face_b: face(b)?,
                    copy_1: c1.to_string(),
                    copy_2: c2.to_string(),
                })
            }
            _ => Err("expected `SPLIT <v> <f_a> <f_b> -> <copy1> <copy2>`".to_string()),
        }
    }
}

/// An ordered list of splits, replayable on the graph it was computed for.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitSequence {
    ops: Vec<SplitOp>,
    origin: BTreeMap<String, String>,
}

impl SplitSequence {
    pub fn from_ops(ops: Vec<SplitOp>) -> Self {
        let mut origin = BTreeMap::new();
        for op in &ops {
            let root = origin.get(&op.vertex).cloned().unwrap_or_else(|| op.vertex.clone());
            origin.insert(op.copy_1.clone(), root.clone());
            origin.insert(op.copy_2.clone(), root);
        }
        Self { ops, origin }
    }

    pub fn ops(&self) -> &[SplitOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Maps every copy (including intermediate ones) to its original vertex.
    pub fn origin(&self) -> &BTreeMap<String, String> {
        &self.origin
    }

    /// Applies the splits one by one, checking the recorded copy names.
    pub fn replay(&self, g: &PlaneGraph) -> Result<Embedding, SplitError> {
        let mut emb = Embedding::new(g);
        for (step, op) in self.ops.iter().enumerate() {
            let fail = |source| SplitError::ReplayFailure {
                step,
                source: Box::new(source),
            };
            let (next, done) = emb.split(&op.vertex, op.face_a, op.face_b).map_err(fail)?;
            for (expected, found) in [(&done.copy_1, &op.copy_1), (&done.copy_2, &op.copy_2)] {
                if expected != found {
                    return Err(fail(SplitError::CopyMismatch {
                        vertex: op.vertex.clone(),
                        expected: expected.clone(),
                        found: found.clone(),
                    }));
                }
            }
            emb = next;
        }
        Ok(emb)
    }

    pub fn parse(text: &str) -> Result<Self, SequenceParseError> {
        let mut ops = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let op = line.parse::<SplitOp>().map_err(|message| SequenceParseError {
                line: i + 1,
                message,
            })?;
            ops.push(op);
        }
        Ok(Self::from_ops(ops))
    }
}

impl fmt::Display for SplitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

/// A plane graph part-way through a split sequence, with stable face labels.
#[derive(Clone, Debug)]
pub struct Embedding {
    graph: PlaneGraph,
    faces: Faces,
    /// Current label → original faces merged into it.
    provenance: BTreeMap<FaceId, BTreeSet<FaceId>>,
    /// Copy name → original vertex name.
    origin: BTreeMap<String, String>,
    outer: Option<FaceId>,
}

impl Embedding {
    pub fn new(g: &PlaneGraph) -> Self {
        let faces = g.faces();
        let provenance = faces.ids().map(|f| (f, BTreeSet::from([f]))).collect();
        Self {
            outer: g.outer_face(),
            graph: g.clone().without_outer_face(),
            faces,
            provenance,
            origin: BTreeMap::new(),
        }
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn faces(&self) -> &Faces {
        &self.faces
    }

    /// Original faces merged into the face labelled `label`.
    pub fn provenance(&self, label: FaceId) -> Option<&BTreeSet<FaceId>> {
        self.provenance.get(&label)
    }

    /// Current label of the face that absorbed original face `original`.
    pub fn label_of(&self, original: FaceId) -> Option<FaceId> {
        self.provenance
            .iter()
            .find(|(_, group)| group.contains(&original))
            .map(|(&label, _)| label)
    }

    /// Original vertex a (possibly copied) vertex descends from.
    pub fn original_vertex<'a>(&'a self, name: &'a str) -> &'a str {
        self.origin.get(name).map(String::as_str).unwrap_or(name)
    }

    pub fn origin(&self) -> &BTreeMap<String, String> {
        &self.origin
    }

    pub fn outerplane_status(&self) -> OuterplaneStatus {
        self.faces.outerplane_status(self.outer)
    }

    /// The all-incident face that absorbed the most original faces; ties go to
    /// the outer label and then to the smaller label.
    pub fn final_face(&self) -> Option<FaceId> {
        self.faces.all_incident().into_iter().max_by_key(|f| {
            (
                self.provenance[f].len(),
                Some(*f) == self.outer,
                std::cmp::Reverse(*f),
            )
        })
    }

    /// Current vertices descending from (or equal to) the vertex named `name`.
    pub fn descendants(&self, name: &str) -> Vec<usize> {
        let prefix = format!("{name}.");
        (0..self.graph.vertex_count())
            .filter(|&v| {
                let n = self.graph.name(v);
                n == name || n.starts_with(&prefix)
            })
            .collect()
    }

    /// Splits vertex `name` at faces `face_a` and `face_b`. When a face meets the
    /// vertex at several angles, the first one in rotation order is used.
    pub fn split(&self, name: &str, face_a: FaceId, face_b: FaceId) -> Result<(Embedding, SplitOp), SplitError> {
        let v = self
            .graph
            .vertex(name)
            .ok_or_else(|| SplitError::UnknownVertex(name.to_string()))?;
        if face_a == face_b {
            return Err(SplitError::SameFace(face_a));
        }
        if self.graph.degree(v) < 2 {
            return Err(SplitError::DanglingVertex(name.to_string()));
        }
        let angle = |face: FaceId| {
            (0..self.graph.degree(v))
                .find(|&k| self.faces.angle_face(v, k) == face)
                .ok_or_else(|| SplitError::NotIncident {
                    vertex: name.to_string(),
                    face,
                })
        };
        let (ka, kb) = (angle(face_a)?, angle(face_b)?);
        self.split_at_angles(v, ka, kb)
    }

    /// Splits `v` at the angles before its `ka`-th and `kb`-th neighbours.
    pub(crate) fn split_at_angles(&self, v: usize, ka: usize, kb: usize) -> Result<(Embedding, SplitOp), SplitError> {
        let g = &self.graph;
        let name = g.name(v).to_string();
        let rot = g.rotation(v);
        let d = rot.len();
        if d < 2 {
            return Err(SplitError::DanglingVertex(name));
        }
        let (face_a, face_b) = (self.faces.angle_face(v, ka), self.faces.angle_face(v, kb));
        if face_a == face_b {
            return Err(SplitError::SameFace(face_a));
        }
        let (copy_1, copy_2) = SplitOp::copy_names(&name);
        for c in [&copy_1, &copy_2] {
            if g.vertex(c).is_some() {
                return Err(SplitError::NameCollision(c.clone()));
            }
        }

        let width = (kb + d - ka) % d;
        let second: Vec<usize> = (0..width).map(|i| rot[(ka + i) % d]).collect();
        let first: Vec<usize> = (0..d - width).map(|i| rot[(kb + i) % d]).collect();
        let to_first: HashSet<usize> = first.iter().copied().collect();

        let mut entries: Vec<(String, Vec<String>)> = Vec::with_capacity(g.vertex_count() + 1);
        for u in (0..g.vertex_count()).filter(|&u| u != v) {
            let row = g
                .rotation(u)
                .iter()
                .map(|&w| match w {
                    w if w != v => g.name(w).to_string(),
                    _ if to_first.contains(&u) => copy_1.clone(),
                    _ => copy_2.clone(),
                })
                .collect();
            entries.push((g.name(u).to_string(), row));
        }
        let names = |list: &[usize]| list.iter().map(|&w| g.name(w).to_string()).collect::<Vec<_>>();
        entries.push((copy_1.clone(), names(&first)));
        entries.push((copy_2.clone(), names(&second)));
        let graph = PlaneGraph::from_named(entries)?;

        // Every new dart maps back to an old dart; a face inherits the smallest
        // label found on its darts, which only differs from its old label for
        // the merged face.
        let old_vertex = |u: usize| -> usize {
            let n = graph.name(u);
            if n == copy_1 || n == copy_2 {
                v
            } else {
                g.vertex(n).expect("unsplit vertices keep their names")
            }
        };
        let darts = Darts::new(graph.rotations());
        let labelled: Vec<(FaceId, Vec<usize>)> = trace_cycles(&darts)
            .into_iter()
            .map(|cycle| {
                let label = cycle
                    .iter()
                    .map(|&dart| {
                        let (a, b) = (old_vertex(darts.source(dart)), old_vertex(darts.target(dart)));
                        let old = self.faces.darts().between(a, b).expect("split keeps every edge");
                        self.faces.face_of_dart(old)
                    })
                    .min()
                    .expect("facial walks are non-empty");
                (label, cycle)
            })
            .collect();
        debug_assert_eq!(labelled.len() + 1, self.faces.len());
        let faces = Faces::from_labelled(graph.vertex_count(), darts, labelled);

        let (keep, gone) = (face_a.min(face_b), face_a.max(face_b));
        let mut provenance = self.provenance.clone();
        let absorbed = provenance.remove(&gone).unwrap_or_default();
        provenance.entry(keep).or_default().extend(absorbed);

        let mut origin = self.origin.clone();
        let root = origin.get(&name).cloned().unwrap_or_else(|| name.clone());
        origin.insert(copy_1.clone(), root.clone());
        origin.insert(copy_2.clone(), root);

        let outer = self.outer.map(|o| if o == gone { keep } else { o });
        let op = SplitOp {
            vertex: name,
            face_a,
            face_b,
            copy_1,
            copy_2,
        };
        Ok((
            Embedding {
                graph,
                faces,
                provenance,
                origin,
                outer,
            },
            op,
        ))
    }

    /// The current graph with canonical face ids; the final face (or else the
    /// face carrying the outer label) is designated outer.
    pub fn to_plane_graph(&self) -> PlaneGraph {
        let target = self.final_face().or(self.outer);
        let g = self.graph.clone();
        let Some(label) = target else { return g };
        let face = self.faces.get(label).expect("labels name existing faces");
        let (v, w) = face.boundary()[0];
        let canonical = g.faces().dart_face(v, w).expect("dart exists");
        g.with_outer_face(canonical).expect("canonical id exists")
    }
}

/// Splits `v` in a fresh graph at two of its canonical faces.
pub fn split_vertex(g: &PlaneGraph, v: &str, f1: FaceId, f2: FaceId) -> Result<(PlaneGraph, SplitOp), SplitError> {
    let (emb, op) = Embedding::new(g).split(v, f1, f2)?;
    Ok((emb.graph, op))
}
