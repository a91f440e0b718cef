//! Closed-form bounds on the splitting number of maximal planar graphs.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_rational::Rational64;

use crate::plane_graph::{DualGraph, FaceId, PlaneGraph};

/// Below this order the upper bound is reported, not enforced.
pub const UPPER_BOUND_THRESHOLD: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("NotMaximalPlanar: the graph is not a triangulation on at least 4 vertices")]
    NotMaximalPlanar,
}

/// `(3n-10)/4`, `(2n-7)/3` or `(4n-13)/7` for minimum degree 3, 4 or 5.
pub fn upper_bound(g: &PlaneGraph) -> Result<Rational64, BoundsError> {
    if !g.is_maximal_planar() {
        return Err(BoundsError::NotMaximalPlanar);
    }
    let n = g.vertex_count() as i64;
    Ok(match g.min_degree() {
        3 => Rational64::new(3 * n - 10, 4),
        4 => Rational64::new(2 * n - 7, 3),
        5 => Rational64::new(4 * n - 13, 7),
        d => unreachable!("maximal planar graphs have minimum degree 3 to 5, got {d}"),
    })
}

/// `(n-3)/2`, valid for every maximal planar graph.
pub fn lower_bound_generic(n: usize) -> Rational64 {
    Rational64::new(n as i64 - 3, 2)
}

/// `(2 n_d - 8)/3` for the complete planar 3-tree of depth `d`.
pub fn lower_bound_3tree(d: u32) -> Rational64 {
    let n = crate::generators::complete_3tree_order(d) as i64;
    Rational64::new(2 * n - 8, 3)
}

/// Length of a shortest cycle in the dual multigraph; a parallel pair is a
/// 2-cycle and a loop a 1-cycle. `None` if the dual is a forest.
pub fn dual_girth(g: &PlaneGraph) -> Option<usize> {
    girth(&DualGraph::new(g, &g.faces(), None))
}

fn girth(d: &DualGraph) -> Option<usize> {
    if d.has_self_loop() {
        return Some(1);
    }
    let mult = d.multiplicities();
    if mult.values().any(|&m| m >= 2) {
        return Some(2);
    }
    let index: BTreeMap<FaceId, usize> = d.nodes().iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut adj = vec![Vec::new(); d.node_count()];
    for &(a, b) in mult.keys() {
        adj[index[&a]].push(index[&b]);
        adj[index[&b]].push(index[&a]);
    }
    let mut best: Option<usize> = None;
    for root in 0..adj.len() {
        let mut dist = vec![usize::MAX; adj.len()];
        let mut parent = vec![usize::MAX; adj.len()];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// One bound compared against a solved splitting number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub holds: bool,
    /// A failing advisory check is reported, not treated as an error.
    pub advisory: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub min_degree: usize,
    pub lower_generic: Rational64,
    pub lower_family: Option<Rational64>,
    pub upper: Option<Rational64>,
    pub osn: Option<usize>,
}

impl BoundReport {
    /// `depth` marks `g` as the complete planar 3-tree of that depth.
    pub fn new(g: &PlaneGraph, depth: Option<u32>, osn: Option<usize>) -> Self {
        Self {
            n: g.vertex_count(),
            min_degree: g.min_degree(),
            lower_generic: lower_bound_generic(g.vertex_count()),
            lower_family: depth.map(lower_bound_3tree),
            upper: upper_bound(g).ok(),
            osn,
        }
    }

    /// Integer comparisons `ceil(lower) <= osn <= floor(upper)`; empty without `osn`.
    pub fn check(&self) -> Vec<BoundCheck> {
        let Some(osn) = self.osn else {
            return Vec::new();
        };
        let osn = osn as i64;
        let mut out = vec![BoundCheck {
            name: "lower_generic",
            holds: self.lower_generic.ceil().to_integer() <= osn,
            advisory: false,
        }];
        if let Some(l) = self.lower_family {
            out.push(BoundCheck {
                name: "lower_3tree",
                holds: l.ceil().to_integer() <= osn,
                advisory: false,
            });
        }
        if let Some(u) = self.upper {
            out.push(BoundCheck {
                name: "upper",
                holds: osn <= u.floor().to_integer(),
                advisory: self.n < UPPER_BOUND_THRESHOLD,
            });
        }
        out
    }

    /// True unless a non-advisory check fails.
    pub fn consistent(&self) -> bool {
        self.check().iter().all(|c| c.holds || c.advisory)
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |r: Option<Rational64>| r.map_or_else(|| "-".to_string(), |r| r.to_string());
        writeln!(f, "n             {}", self.n)?;
        writeln!(f, "min_degree    {}", self.min_degree)?;
        writeln!(f, "lower_generic {}", self.lower_generic)?;
        writeln!(f, "lower_3tree   {}", opt(self.lower_family))?;
        writeln!(f, "upper         {}", opt(self.upper))?;
        write!(f, "osn           {}", self.osn.map_or_else(|| "-".to_string(), |o| o.to_string()))
    }
}
