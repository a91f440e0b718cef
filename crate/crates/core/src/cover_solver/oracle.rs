//! Exhaustive reference solvers for small instances.

use std::collections::{BTreeMap, BTreeSet};

use super::{SolveError, FvsSolution};
use crate::plane_graph::{DualGraph, FaceId, PlaneGraph};
use crate::split_engine::FaceCover;

pub const DEFAULT_FACE_CAP: usize = 20;
pub const SPLIT_FACE_CAP: usize = 10;
const VERTEX_CAP: usize = 128;
const FVS_NODE_CAP: usize = 24;

pub fn brute_min_cfc(g: &PlaneGraph) -> Result<FaceCover, SolveError> {
    brute_min_cfc_capped(g, DEFAULT_FACE_CAP)
}

/// Smallest connected face cover; among equal sizes the lexicographically least.
pub fn brute_min_cfc_capped(g: &PlaneGraph, cap: usize) -> Result<FaceCover, SolveError> {
    let faces = g.faces();
    let nf = faces.len();
    let n = g.vertex_count();
    if nf > cap {
        return Err(SolveError::CapExceeded { what: "face count", actual: nf, limit: cap });
    }
    if n > VERTEX_CAP {
        return Err(SolveError::CapExceeded { what: "vertex count", actual: n, limit: VERTEX_CAP });
    }
    let ids: Vec<FaceId> = faces.ids().collect();
    let masks: Vec<u128> = faces
        .iter()
        .map(|f| f.incident_vertices().iter().fold(0u128, |m, &v| m | 1 << v))
        .collect();
    let all: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };

    for size in 1..=nf {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            if covers_connected(&pick, &masks, all) {
                let set: BTreeSet<FaceId> = pick.iter().map(|&i| ids[i]).collect();
                return FaceCover::certify_with(g, &faces, &set).map_err(SolveError::CertificateFailure);
            }
            if !next_combination(&mut pick, nf) {
                break;
            }
        }
    }
    unreachable!("the set of all faces is a connected cover")
}

fn covers_connected(pick: &[usize], masks: &[u128], all: u128) -> bool {
    if pick.iter().fold(0u128, |m, &i| m | masks[i]) != all {
        return false;
    }
    // Faces in the pick are linked when they share a vertex.
    let mut reached = masks[pick[0]];
    let mut done = vec![false; pick.len()];
    done[0] = true;
    loop {
        let mut grew = false;
        for (j, &i) in pick.iter().enumerate() {
            if !done[j] && masks[i] & reached != 0 {
                done[j] = true;
                reached |= masks[i];
                grew = true;
            }
        }
        if !grew {
            return done.iter().all(|&d| d);
        }
    }
}

pub(crate) fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Minimum feedback vertex set by enumerating node subsets by size.
pub fn brute_min_fvs(d: &DualGraph) -> Result<FvsSolution, SolveError> {
    let n = d.node_count();
    if n > FVS_NODE_CAP {
        return Err(SolveError::CapExceeded { what: "dual node count", actual: n, limit: FVS_NODE_CAP });
    }
    let index: BTreeMap<FaceId, usize> = d.nodes().iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let edges: Vec<(usize, usize)> = d.edges().iter().map(|(a, b)| (index[a], index[b])).collect();
    for size in 0..=n {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let mask = pick.iter().fold(0u32, |m, &i| m | 1 << i);
            if acyclic_without(n, &edges, mask) {
                let nodes = pick.iter().map(|&i| d.nodes()[i]).collect();
                return FvsSolution::verify(d, nodes);
            }
            if size == 0 || !next_combination(&mut pick, n) {
                break;
            }
        }
    }
    unreachable!("removing every node leaves a forest")
}

fn acyclic_without(n: usize, edges: &[(usize, usize)], removed: u32) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &[usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        if removed >> a & 1 == 1 || removed >> b & 1 == 1 {
            continue;
        }
        let (ra, rb) = (root(&parent, a), root(&parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Least number of vertex splits, at most `k_max`, that makes `g` outerplane.
///
/// Searches the split space directly on raw rotation lists; shares no code
/// with the split engine.
pub fn brute_osn_by_splits(g: &PlaneGraph, k_max: usize) -> Result<Option<usize>, SolveError> {
    let nf = g.face_count();
    if nf > SPLIT_FACE_CAP {
        return Err(SolveError::CapExceeded { what: "face count", actual: nf, limit: SPLIT_FACE_CAP });
    }
    let rot: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| g.rotation(v).to_vec()).collect();
    Ok((0..=k_max).find(|&k| reachable(&rot, k)))
}

struct RawFaces {
    /// Face of the angle just before neighbour `k` at `v`.
    angle: Vec<Vec<usize>>,
    /// Vertices on each face.
    touched: Vec<BTreeSet<usize>>,
}

fn raw_faces(rot: &[Vec<usize>]) -> RawFaces {
    let mut angle: Vec<Vec<usize>> = rot.iter().map(|r| vec![usize::MAX; r.len()]).collect();
    let mut touched = Vec::new();
    for v in 0..rot.len() {
        for k in 0..rot[v].len() {
            if angle[v][k] != usize::MAX {
                continue;
            }
            let id = touched.len();
            let mut on = BTreeSet::new();
            let (mut x, mut i) = (v, k);
            while angle[x][i] == usize::MAX {
                angle[x][i] = id;
                on.insert(x);
                let y = rot[x][i];
                let back = rot[y].iter().position(|&z| z == x).expect("symmetric rotation");
                (x, i) = (y, (back + 1) % rot[y].len());
            }
            touched.push(on);
        }
    }
    RawFaces { angle, touched }
}

fn reachable(rot: &[Vec<usize>], left: usize) -> bool {
    let n = rot.len();
    let faces = raw_faces(rot);
    if faces.touched.iter().any(|s| s.len() == n) {
        return true;
    }
    if left == 0 {
        return false;
    }
    // The final face is a union of at most `left + 1` current faces.
    let mut sizes: Vec<usize> = faces.touched.iter().map(BTreeSet::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    if sizes.iter().take(left + 1).sum::<usize>() < n {
        return false;
    }
    for v in 0..n {
        let d = rot[v].len();
        for a in 0..d {
            for b in a + 1..d {
                if faces.angle[v][a] != faces.angle[v][b] && reachable(&raw_split(rot, v, a, b), left - 1) {
                    return true;
                }
            }
        }
    }
    false
}

/// A new vertex takes neighbours `a..b` of `v`; `v` keeps the rest.
fn raw_split(rot: &[Vec<usize>], v: usize, a: usize, b: usize) -> Vec<Vec<usize>> {
    let fresh = rot.len();
    let mut out = rot.to_vec();
    let moved: Vec<usize> = rot[v][a..b].to_vec();
    let kept: Vec<usize> = rot[v][b..].iter().chain(&rot[v][..a]).copied().collect();
    for &w in &moved {
        for z in out[w].iter_mut() {
            if *z == v {
                *z = fresh;
            }
        }
    }
    out[v] = kept;
    out.push(moved);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> PlaneGraph {
        PlaneGraph::build([
            ("a", vec!["b", "c", "d"]),
            ("b", vec!["c", "a", "d"]),
            ("c", vec!["a", "b", "d"]),
            ("d", vec!["a", "c", "b"]),
        ])
        .unwrap()
    }

    fn triangle() -> PlaneGraph {
        PlaneGraph::build([("a", vec!["b", "c"]), ("b", vec!["c", "a"]), ("c", vec!["a", "b"])]).unwrap()
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut pick = vec![0, 1];
        let mut seen = vec![pick.clone()];
        while next_combination(&mut pick, 4) {
            seen.push(pick.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn cfc_small() {
        assert_eq!(brute_min_cfc(&triangle()).unwrap().faces(), &BTreeSet::from([FaceId(0)]));
        assert_eq!(brute_min_cfc(&k4()).unwrap().len(), 2);
        assert!(matches!(
            brute_min_cfc_capped(&k4(), 3),
            Err(SolveError::CapExceeded { .. })
        ));
    }

    #[test]
    fn raw_faces_match_euler() {
        let g = k4();
        let rot: Vec<Vec<usize>> = (0..4).map(|v| g.rotation(v).to_vec()).collect();
        assert_eq!(raw_faces(&rot).touched.len(), 4);
        let split = raw_split(&rot, 3, 0, 1);
        assert_eq!(raw_faces(&split).touched.len(), 3);
    }

    #[test]
    fn split_search_small() {
        assert_eq!(brute_osn_by_splits(&triangle(), 3).unwrap(), Some(0));
        assert_eq!(brute_osn_by_splits(&k4(), 0).unwrap(), None);
        assert_eq!(brute_osn_by_splits(&k4(), 3).unwrap(), Some(1));
    }

    #[test]
    fn fvs_oracle() {
        let g = k4();
        let d = DualGraph::new(&g, &g.faces(), None);
        assert_eq!(brute_min_fvs(&d).unwrap().len(), 2);
    }
}
