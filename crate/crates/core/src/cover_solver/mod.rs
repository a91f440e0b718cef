//! Minimum connected face covers via feedback vertex sets of the dual.

mod fvs;
mod oracle;

use std::collections::{BTreeMap, BTreeSet};

pub use oracle::{brute_min_cfc, brute_min_cfc_capped, brute_min_fvs, brute_osn_by_splits, DEFAULT_FACE_CAP, SPLIT_FACE_CAP};
pub(crate) use oracle::next_combination;

use crate::plane_graph::{DualGraph, FaceId, GraphError, PlaneGraph};
use crate::split_engine::{realize_cover, CoverError, FaceCover, SplitError, SplitSequence};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("SelfLoopPresent: dual node {0} has a self-loop")]
    SelfLoopPresent(FaceId),
    #[error("NotBiconnected: input graph is not biconnected")]
    NotBiconnected,
    #[error("NotAFeedbackSet: removing the given nodes leaves a cycle")]
    NotAFeedbackSet,
    #[error("CertificateFailure: {0}")]
    CertificateFailure(CoverError),
    #[error("CapExceeded: {what} is {actual}, limit {limit}")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A feedback vertex set of a dual multigraph with the remaining forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FvsSolution {
    nodes: BTreeSet<FaceId>,
    forest: DualGraph,
}

impl FvsSolution {
    /// Checks that `nodes` hits every cycle of `d`.
    pub fn verify(d: &DualGraph, nodes: BTreeSet<FaceId>) -> Result<Self, SolveError> {
        let forest = d.without(&nodes);
        if !forest.is_forest() {
            return Err(SolveError::NotAFeedbackSet);
        }
        Ok(Self { nodes, forest })
    }

    pub fn nodes(&self) -> &BTreeSet<FaceId> {
        &self.nodes
    }

    /// The acyclic remainder of the dual.
    pub fn forest(&self) -> &DualGraph {
        &self.forest
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Lexicographically least minimum feedback vertex set.
pub fn min_fvs(d: &DualGraph) -> Result<FvsSolution, SolveError> {
    if let Some(&(f, _)) = d.edges().iter().find(|(a, b)| a == b) {
        return Err(SolveError::SelfLoopPresent(f));
    }
    let index: BTreeMap<FaceId, usize> = d.nodes().iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let edges: Vec<(usize, usize)> = d.edges().iter().map(|(a, b)| (index[a], index[b])).collect();
    let nodes = fvs::lex_min_fvs(d.node_count(), &edges)
        .into_iter()
        .map(|i| d.nodes()[i])
        .collect();
    FvsSolution::verify(d, nodes)
}

/// The faces of a feedback vertex set of the dual form a connected face cover.
pub fn fvs_to_cover(g: &PlaneGraph, sol: &FvsSolution) -> Result<FaceCover, SolveError> {
    FaceCover::certify(g, sol.nodes()).map_err(SolveError::CertificateFailure)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OsnResult {
    pub osn: usize,
    pub fvs: FvsSolution,
    pub cover: FaceCover,
    pub splits: SplitSequence,
}

/// Outerplane splitting number with a witnessing cover and split sequence.
pub fn solve_osn(g: &PlaneGraph) -> Result<OsnResult, SolveError> {
    if !g.is_biconnected() {
        return Err(SolveError::NotBiconnected);
    }
    let faces = g.faces();
    let dual = DualGraph::new(g, &faces, g.outer_face());
    let fvs = min_fvs(&dual)?;
    let cover = fvs_to_cover(g, &fvs)?;
    let splits = realize_cover(g, &cover)?;
    let emb = splits.replay(g)?;
    if emb.final_face().is_none() {
        return Err(SplitError::NotOuterplane.into());
    }
    Ok(OsnResult {
        osn: cover.len() - 1,
        fvs,
        cover,
        splits,
    })
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

    fn cycle(n: usize) -> PlaneGraph {
        PlaneGraph::build((0..n).map(|i| (i.to_string(), vec![((i + 1) % n).to_string(), ((i + n - 1) % n).to_string()])))
            .unwrap()
    }

    fn dual(g: &PlaneGraph) -> DualGraph {
        DualGraph::new(g, &g.faces(), None)
    }

    #[test]
    fn tree_dual_needs_nothing() {
        let f = |i| FaceId(i);
        let d = DualGraph::from_parts(vec![f(0), f(1), f(2)], vec![(f(0), f(1)), (f(1), f(2))], None);
        assert!(min_fvs(&d).unwrap().is_empty());
    }

    #[test]
    fn k4_dual_fvs() {
        let d = dual(&k4());
        let sol = min_fvs(&d).unwrap();
        assert_eq!(sol.len(), brute_min_fvs(&d).unwrap().len());
        assert_eq!(sol.len(), 2);
        assert_eq!(sol.nodes(), &BTreeSet::from([FaceId(0), FaceId(1)]));
        assert!(sol.forest().is_forest());
    }

    #[test]
    fn triangle_dual_fvs() {
        let d = dual(&cycle(3));
        assert_eq!(d.multiplicities()[&(FaceId(0), FaceId(1))], 3);
        assert_eq!(min_fvs(&d).unwrap().nodes(), &BTreeSet::from([FaceId(0)]));
    }

    #[test]
    fn self_loop_is_rejected() {
        let d = DualGraph::from_parts(vec![FaceId(0)], vec![(FaceId(0), FaceId(0))], None);
        assert_eq!(min_fvs(&d).unwrap_err(), SolveError::SelfLoopPresent(FaceId(0)));
    }

    #[test]
    fn every_k4_fvs_yields_a_cover() {
        let g = k4();
        let d = dual(&g);
        for a in 0..4 {
            for b in a + 1..4 {
                let sol = FvsSolution::verify(&d, BTreeSet::from([FaceId(a), FaceId(b)])).unwrap();
                assert_eq!(fvs_to_cover(&g, &sol).unwrap().len(), 2);
            }
        }
        assert_eq!(
            FvsSolution::verify(&d, BTreeSet::from([FaceId(0)])).unwrap_err(),
            SolveError::NotAFeedbackSet
        );
    }

    #[test]
    fn osn_of_small_graphs() {
        let r = solve_osn(&k4()).unwrap();
        assert_eq!(r.osn, 1);
        assert_eq!(r.splits.len(), 1);
        assert_eq!(r.cover.len(), 2);

        for n in 3..7 {
            let r = solve_osn(&cycle(n)).unwrap();
            assert_eq!(r.osn, 0);
            assert!(r.splits.is_empty());
        }
    }

    #[test]
    fn osn_requires_biconnectivity() {
        let path = PlaneGraph::build([("a", vec!["b"]), ("b", vec!["a", "c"]), ("c", vec!["b"])]).unwrap();
        assert_eq!(solve_osn(&path).unwrap_err(), SolveError::NotBiconnected);
    }
}
