use std::collections::HashMap;

use super::{FaceId, PlaneGraph};

/// Directed edge slots of a rotation system.
///
/// Dart `offset[v] + k` points from `v` to its `k`-th clockwise neighbour. The
/// angle of `v` just before that neighbour belongs to the same face as the dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Darts {
    offset: Vec<usize>,
    source: Vec<usize>,
    target: Vec<usize>,
    twin: Vec<usize>,
    slot: HashMap<(usize, usize), usize>,
}

impl Darts {
    pub(crate) fn new(rotation: &[Vec<usize>]) -> Self {
        let mut offset = Vec::with_capacity(rotation.len() + 1);
        offset.push(0);
        for row in rotation {
            offset.push(offset.last().unwrap() + row.len());
        }
        let total = *offset.last().unwrap();
        let mut source = Vec::with_capacity(total);
        let mut target = Vec::with_capacity(total);
        let mut slot = HashMap::with_capacity(total);
        for (v, row) in rotation.iter().enumerate() {
            for &w in row {
                slot.insert((v, w), source.len());
                source.push(v);
                target.push(w);
            }
        }
        let twin = (0..total).map(|d| slot[&(target[d], source[d])]).collect();
        Self {
            offset,
            source,
            target,
            twin,
            slot,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.source.len()
    }

    pub(crate) fn dart(&self, v: usize, k: usize) -> usize {
        self.offset[v] + k
    }

    pub(crate) fn between(&self, v: usize, w: usize) -> Option<usize> {
        self.slot.get(&(v, w)).copied()
    }

    pub(crate) fn source(&self, d: usize) -> usize {
        self.source[d]
    }

    pub(crate) fn target(&self, d: usize) -> usize {
        self.target[d]
    }

    /// Successor of dart `u → w` along its face: leave `w` towards the
    /// neighbour that follows `u` clockwise.
    pub(crate) fn next(&self, d: usize) -> usize {
        let t = self.twin[d];
        let w = self.source[t];
        let start = self.offset[w];
        let deg = self.offset[w + 1] - start;
        start + (t - start + 1) % deg
    }
}

/// Facial walks as dart cycles, in order of their first dart.
pub(crate) fn trace_cycles(darts: &Darts) -> Vec<Vec<usize>> {
    let mut seen = vec![false; darts.len()];
    let mut cycles = Vec::new();
    for start in 0..darts.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            cycle.push(d);
            d = darts.next(d);
        }
        cycles.push(cycle);
    }
    cycles
}

/// A facial walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    id: FaceId,
    boundary: Vec<(usize, usize)>,
    incident: Vec<usize>,
}

impl Face {
    pub fn id(&self) -> FaceId {
        self.id
    }

    /// Directed slots `(vertex, successor)` of the walk, starting at the smallest slot.
    pub fn boundary(&self) -> &[(usize, usize)] {
        &self.boundary
    }

    /// Sorted distinct vertices on the walk.
    pub fn incident_vertices(&self) -> &[usize] {
        &self.incident
    }

    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn touches(&self, v: usize) -> bool {
        self.incident.binary_search(&v).is_ok()
    }

    /// True iff the walk visits no vertex twice.
    pub fn is_simple_cycle(&self) -> bool {
        self.incident.len() == self.boundary.len()
    }
}

/// Result of the outerplanarity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OuterplaneStatus {
    /// A face incident to every vertex, if any. The designated outer face is
    /// preferred; otherwise the smallest qualifying id is reported.
    pub face: Option<FaceId>,
}

impl OuterplaneStatus {
    pub fn is_outerplane(&self) -> bool {
        self.face.is_some()
    }
}

/// The faces of a plane graph together with dart and vertex lookups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faces {
    faces: Vec<Face>,
    dart_face: Vec<usize>,
    vertex_faces: Vec<Vec<FaceId>>,
    darts: Darts,
}

impl Faces {
    /// Traces all faces and numbers them by their lexicographically smallest
    /// `(vertex, neighbour)` slot.
    pub fn extract(g: &PlaneGraph) -> Self {
        let darts = Darts::new(g.rotations());
        let mut cycles = trace_cycles(&darts);
        cycles.sort_by_key(|c| min_slot(&darts, c));
        let labelled = cycles
            .into_iter()
            .enumerate()
            .map(|(i, c)| (FaceId(i as u32), c))
            .collect();
        Self::from_labelled(g.vertex_count(), darts, labelled)
    }

    pub(crate) fn from_labelled(n: usize, darts: Darts, mut cycles: Vec<(FaceId, Vec<usize>)>) -> Self {
        cycles.sort_by_key(|(id, _)| *id);
        let mut dart_face = vec![usize::MAX; darts.len()];
        let mut vertex_faces = vec![Vec::new(); n];
        let mut faces = Vec::with_capacity(cycles.len());
        for (pos, (id, cycle)) in cycles.into_iter().enumerate() {
            let start = cycle
                .iter()
                .enumerate()
                .min_by_key(|(_, &d)| (darts.source(d), darts.target(d)))
                .map(|(i, _)| i)
                .unwrap_or(0);
            let mut boundary = Vec::with_capacity(cycle.len());
            for i in 0..cycle.len() {
                let d = cycle[(start + i) % cycle.len()];
                dart_face[d] = pos;
                boundary.push((darts.source(d), darts.target(d)));
            }
            let mut incident: Vec<usize> = boundary.iter().map(|&(v, _)| v).collect();
            incident.sort_unstable();
            incident.dedup();
            for &v in &incident {
                vertex_faces[v].push(id);
            }
            faces.push(Face {
                id,
                boundary,
                incident,
            });
        }
        for fs in &mut vertex_faces {
            fs.sort_unstable();
        }
        Self {
            faces,
            dart_face,
            vertex_faces,
            darts,
        }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter()
    }

    pub fn ids(&self) -> impl Iterator<Item = FaceId> + '_ {
        self.faces.iter().map(|f| f.id)
    }

    pub fn get(&self, id: FaceId) -> Option<&Face> {
        self.position(id).map(|p| &self.faces[p])
    }

    fn position(&self, id: FaceId) -> Option<usize> {
        self.faces.binary_search_by_key(&id, |f| f.id).ok()
    }

    /// Faces incident to `v`, sorted by id.
    pub fn faces_at(&self, v: usize) -> &[FaceId] {
        &self.vertex_faces[v]
    }

    /// Face of the angle of `v` just before its `k`-th clockwise neighbour.
    pub fn angle_face(&self, v: usize, k: usize) -> FaceId {
        self.faces[self.dart_face[self.darts.dart(v, k)]].id
    }

    /// Face on the dart `v → w`.
    pub fn dart_face(&self, v: usize, w: usize) -> Option<FaceId> {
        self.darts
            .between(v, w)
            .map(|d| self.faces[self.dart_face[d]].id)
    }

    pub(crate) fn darts(&self) -> &Darts {
        &self.darts
    }

    pub(crate) fn face_of_dart(&self, d: usize) -> FaceId {
        self.faces[self.dart_face[d]].id
    }

    /// Faces incident to all `n` vertices; the preferred face is reported if it qualifies.
    pub fn outerplane_status(&self, preferred: Option<FaceId>) -> OuterplaneStatus {
        let n = self.vertex_faces.len();
        let qualifies = |f: &Face| f.incident.len() == n;
        if let Some(p) = preferred.and_then(|p| self.get(p)) {
            if qualifies(p) {
                return OuterplaneStatus { face: Some(p.id) };
            }
        }
        OuterplaneStatus {
            face: self.faces.iter().find(|f| qualifies(f)).map(|f| f.id),
        }
    }

    /// All faces incident to every vertex.
    pub fn all_incident(&self) -> Vec<FaceId> {
        let n = self.vertex_faces.len();
        self.faces
            .iter()
            .filter(|f| f.incident.len() == n)
            .map(|f| f.id)
            .collect()
    }
}

fn min_slot(darts: &Darts, cycle: &[usize]) -> (usize, usize) {
    cycle
        .iter()
        .map(|&d| (darts.source(d), darts.target(d)))
        .min()
        .expect("facial walks are non-empty")
}

#[cfg(test)]
mod tests {
    use super::super::tests::{k4, triangle};
    use super::*;

    #[test]
    fn triangle_has_two_faces_of_length_three() {
        let faces = triangle().faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 3 && f.is_simple_cycle()));
    }

    #[test]
    fn k4_faces_are_triangles() {
        let g = k4();
        let faces = g.faces();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 3));
        // a=0, b=1, c=2, d=3; ids follow the smallest slot of each walk.
        let firsts: Vec<_> = faces.iter().map(|f| f.boundary()[0]).collect();
        let mut sorted = firsts.clone();
        sorted.sort();
        assert_eq!(firsts, sorted);
    }

    #[test]
    fn slot_partition() {
        let g = k4();
        let faces = g.faces();
        let total: usize = faces.iter().map(Face::len).sum();
        assert_eq!(total, 2 * g.edge_count());
        let mut slots: Vec<_> = faces.iter().flat_map(|f| f.boundary().to_vec()).collect();
        slots.sort();
        slots.dedup();
        assert_eq!(slots.len(), 2 * g.edge_count());
    }

    #[test]
    fn angle_faces_match_darts() {
        let g = k4();
        let faces = g.faces();
        for v in 0..g.vertex_count() {
            for (k, &w) in g.rotation(v).iter().enumerate() {
                assert_eq!(faces.angle_face(v, k), faces.dart_face(v, w).unwrap());
            }
        }
    }

    #[test]
    fn degree_one_vertex_walk() {
        let path = PlaneGraph::build([("a", vec!["b"]), ("b", vec!["a", "c"]), ("c", vec!["b"])]).unwrap();
        let faces = path.faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces.iter().next().unwrap().len(), 4);
        assert!(path.is_outerplane().is_outerplane());
    }
}
