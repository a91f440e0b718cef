use std::collections::BTreeSet;

use super::{Embedding, FaceCover, SplitError, SplitOp, SplitSequence};
use crate::plane_graph::{FaceId, PlaneGraph};

impl Embedding {
    /// Merges the faces `set` (current labels, all on the boundary of `name`)
    /// into one with `|set| - 1` splits.
    ///
    /// The faces are ordered clockwise around the vertex starting from the
    /// smallest label `f1`, and `f1` is merged with each of the others in turn.
    /// Each merge happens at the copy of the vertex that touches both faces.
    pub fn merge_at_vertex(&self, name: &str, set: &BTreeSet<FaceId>) -> Result<(Embedding, Vec<SplitOp>), SplitError> {
        let v = self
            .graph
            .vertex(name)
            .ok_or_else(|| SplitError::UnknownVertex(name.to_string()))?;
        let at_v = self.faces.faces_at(v);
        if let Some(&face) = set.iter().find(|f| !at_v.contains(f)) {
            return Err(SplitError::NotIncident {
                vertex: name.to_string(),
                face,
            });
        }
        let Some(&first) = set.first() else {
            return Ok((self.clone(), Vec::new()));
        };
        if set.len() == 1 {
            return Ok((self.clone(), Vec::new()));
        }

        let d = self.graph.degree(v);
        let start = (0..d)
            .find(|&k| self.faces.angle_face(v, k) == first)
            .expect("incidence checked above");
        let mut order: Vec<FaceId> = Vec::with_capacity(set.len());
        for i in 0..d {
            let f = self.faces.angle_face(v, (start + i) % d);
            if set.contains(&f) && !order.contains(&f) {
                order.push(f);
            }
        }

        let mut emb = self.clone();
        let mut ops = Vec::with_capacity(order.len() - 1);
        for &other in &order[1..] {
            let copy = emb
                .descendants(name)
                .into_iter()
                .find(|&c| {
                    let fs = emb.faces.faces_at(c);
                    fs.contains(&first) && fs.contains(&other)
                })
                .ok_or_else(|| SplitError::NotIncident {
                    vertex: name.to_string(),
                    face: other,
                })?;
            let copy_name = emb.graph.name(copy).to_string();
            let (next, op) = emb.split(&copy_name, first, other)?;
            emb = next;
            ops.push(op);
        }
        Ok((emb, ops))
    }
}

/// Merges faces `set` of `g` (canonical ids) around vertex `v` with `|set| - 1` splits.
pub fn merge_faces_at_vertex(
    g: &PlaneGraph,
    v: &str,
    set: &BTreeSet<FaceId>,
) -> Result<(PlaneGraph, Vec<SplitOp>), SplitError> {
    let (emb, ops) = Embedding::new(g).merge_at_vertex(v, set)?;
    Ok((emb.graph, ops))
}

/// Turns a connected face cover into `|S| - 1` splits that merge all its faces.
///
/// Walks the cover's spanning tree in BFS order and, at every primal vertex,
/// merges its parent face with its child faces. Leaves of the tree touch a
/// single tree face and are never split.
pub fn realize_cover(g: &PlaneGraph, cover: &FaceCover) -> Result<SplitSequence, SplitError> {
    // The cover may come from another graph; its tree is rebuilt against `g`.
    let cover = FaceCover::certify(g, cover.faces())?;

    let mut emb = Embedding::new(g);
    let mut ops = Vec::with_capacity(cover.len().saturating_sub(1));
    for v in cover.vertex_order() {
        let tree_faces = cover.tree_faces_at(v);
        if tree_faces.len() < 2 {
            continue;
        }
        let labels: BTreeSet<FaceId> = tree_faces
            .iter()
            .map(|&f| emb.label_of(f).expect("original faces always have a label"))
            .collect();
        debug_assert_eq!(labels.len(), tree_faces.len());
        let (next, mut done) = emb.merge_at_vertex(g.name(v), &labels)?;
        emb = next;
        ops.append(&mut done);
    }

    let merged = emb.final_face().ok_or(SplitError::NotOuterplane)?;
    debug_assert_eq!(emb.provenance(merged), Some(cover.faces()));
    Ok(SplitSequence::from_ops(ops))
}

/// Recovers the set of original faces merged into the all-incident face after
/// replaying `seq` on `g`.
pub fn extract_cover(g: &PlaneGraph, seq: &SplitSequence) -> Result<FaceCover, SplitError> {
    let emb = seq.replay(g)?;
    let face = emb.final_face().ok_or(SplitError::NotOuterplane)?;
    let merged = emb.provenance(face).expect("final face has provenance").clone();
    Ok(FaceCover::certify(g, &merged)?)
}
