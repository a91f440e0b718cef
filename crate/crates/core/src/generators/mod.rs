//! Plane graph families and seeded random instances.
//!
//! Vertices are named `0..n` in construction order.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::plane_graph::{GraphError, PlaneGraph};

pub const MAX_3TREE_DEPTH: u32 = 9;
const RETRIES: u64 = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("UnknownFamily: `{0}`")]
    UnknownFamily(String),
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
    #[error("DepthCap: depth {depth} exceeds {cap}")]
    DepthCap { depth: u32, cap: u32 },
    #[error("InfeasibleParameters: {0}")]
    InfeasibleParameters(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Builds a plane graph from consistently oriented facial walks.
///
/// A walk `.. u, w, x ..` fixes `x` as the clockwise successor of `u` around `w`.
pub fn from_faces(n: usize, faces: &[Vec<usize>]) -> Result<PlaneGraph, GraphError> {
    let rotation = rotation_from_faces(n, faces)?;
    PlaneGraph::from_rotation(numeric_names(n), rotation)
}

fn numeric_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn rotation_from_faces(n: usize, faces: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, GraphError> {
    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for face in faces {
        let k = face.len();
        for i in 0..k {
            let (u, w, x) = (face[i], face[(i + 1) % k], face[(i + 2) % k]);
            if succ[w].insert(u, x).is_some() {
                return Err(GraphError::ParallelEdge(u.to_string(), w.to_string()));
            }
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for (v, s) in succ.iter().enumerate() {
        let Some(&start) = s.keys().min() else {
            return Err(GraphError::Disconnected(2));
        };
        let mut row = vec![start];
        let mut cur = start;
        loop {
            cur = *s
                .get(&cur)
                .ok_or_else(|| GraphError::AsymmetricRotation(v.to_string(), cur.to_string()))?;
            if cur == start {
                break;
            }
            row.push(cur);
            if row.len() > s.len() {
                return Err(GraphError::AsymmetricRotation(v.to_string(), cur.to_string()));
            }
        }
        if row.len() != s.len() {
            // The angles at `v` form more than one cycle: not a disc neighbourhood.
            return Err(GraphError::NotPlanar(1));
        }
        rotation.push(row);
    }
    Ok(rotation)
}

/// Designates the face with exactly the vertex set `{0, 1, 2}` as outer face.
fn outer_012(g: PlaneGraph) -> PlaneGraph {
    let id = g
        .faces()
        .iter()
        .find(|f| f.incident_vertices() == [0, 1, 2])
        .map(|f| f.id())
        .expect("families built on K4 keep the face 0-1-2");
    g.with_outer_face(id).expect("face exists")
}

fn k4_faces() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2], vec![0, 3, 1], vec![1, 3, 2], vec![2, 3, 0]]
}

pub fn k4() -> PlaneGraph {
    outer_012(from_faces(4, &k4_faces()).expect("valid K4"))
}

pub fn cycle(n: usize) -> Result<PlaneGraph, GenError> {
    if n < 3 {
        return Err(GenError::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(from_faces(n, &[(0..n).collect(), (0..n).rev().collect()])?)
}

/// Apex `0` joined to every vertex of the path `1..n`.
pub fn fan(n: usize) -> Result<PlaneGraph, GenError> {
    if n < 3 {
        return Err(GenError::InvalidParameter(format!("fan needs n >= 3, got {n}")));
    }
    let mut faces: Vec<Vec<usize>> = (1..n - 1).map(|i| vec![0, i, i + 1]).collect();
    faces.push(std::iter::once(0).chain((1..n).rev()).collect());
    Ok(from_faces(n, &faces)?)
}

pub fn octahedron() -> PlaneGraph {
    let faces = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 1],
        [5, 2, 1],
        [5, 3, 2],
        [5, 4, 3],
        [5, 1, 4],
    ];
    from_faces(6, &faces.map(Vec::from)).expect("valid octahedron")
}

pub fn icosahedron() -> PlaneGraph {
    // Apex 0, upper ring 1..=5, lower ring 6..=10, apex 11; lower vertex 5+i
    // sits between upper vertices i and i+1.
    let up = |i: usize| 1 + (i - 1) % 5;
    let low = |i: usize| 6 + (i - 1) % 5;
    let mut faces = Vec::new();
    for i in 1..=5 {
        faces.push(vec![0, up(i), up(i + 1)]);
        faces.push(vec![up(i + 1), up(i), low(i)]);
        faces.push(vec![up(i + 1), low(i), low(i + 1)]);
        faces.push(vec![11, low(i + 1), low(i)]);
    }
    from_faces(12, &faces).expect("valid icosahedron")
}

/// The 3-cube as a square prism: top `0..4`, bottom `4..8`, `i` above `i + 4`.
pub fn cube() -> PlaneGraph {
    let mut faces = vec![vec![0, 1, 2, 3], vec![4, 7, 6, 5]];
    for i in 0..4 {
        let j = (i + 1) % 4;
        faces.push(vec![j, i, i + 4, j + 4]);
    }
    from_faces(8, &faces).expect("valid cube")
}

/// Complete planar 3-tree of depth `d`: K4, then a new vertex stacked into
/// every inner face of the previous level, in face order.
pub fn complete_3tree(d: u32) -> Result<PlaneGraph, GenError> {
    if d > MAX_3TREE_DEPTH {
        return Err(GenError::DepthCap {
            depth: d,
            cap: MAX_3TREE_DEPTH,
        });
    }
    let mut n = 4;
    let mut inner: Vec<[usize; 3]> = vec![[0, 3, 1], [1, 3, 2], [2, 3, 0]];
    for _ in 0..d {
        let mut next = Vec::with_capacity(inner.len() * 3);
        for [a, b, c] in inner {
            let x = n;
            n += 1;
            next.extend([[a, b, x], [b, c, x], [c, a, x]]);
        }
        inner = next;
    }
    let mut faces: Vec<Vec<usize>> = vec![vec![0, 1, 2]];
    faces.extend(inner.iter().map(|f| f.to_vec()));
    Ok(outer_012(from_faces(n, &faces)?))
}

/// Number of vertices of the complete planar 3-tree of depth `d`.
pub fn complete_3tree_order(d: u32) -> usize {
    (3usize.pow(d + 1) + 5) / 2
}

/// Random maximal planar graph: stacking into random faces, then random edge
/// flips that keep every degree at least 3.
pub fn random_triangulation(n: usize, seed: u64) -> Result<PlaneGraph, GenError> {
    if n < 4 {
        return Err(GenError::InvalidParameter(format!("triangulation needs n >= 4, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces: Vec<[usize; 3]> = k4_faces().into_iter().map(|f| [f[0], f[1], f[2]]).collect();
    for x in 4..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        faces.extend([[a, b, x], [b, c, x], [c, a, x]]);
    }
    let face_lists: Vec<Vec<usize>> = faces.iter().map(|f| f.to_vec()).collect();
    let mut rot = rotation_from_faces(n, &face_lists)?;
    for _ in 0..2 * n {
        let u = rng.gen_range(0..n);
        let v = rot[u][rng.gen_range(0..rot[u].len())];
        flip(&mut rot, u, v);
    }
    Ok(PlaneGraph::from_rotation(numeric_names(n), rot)?)
}

fn position(row: &[usize], x: usize) -> usize {
    row.iter().position(|&y| y == x).expect("neighbour present")
}

/// Replaces edge `uv` by the other diagonal of its two triangles, if the
/// result stays simple and both endpoints keep degree at least 3.
fn flip(rot: &mut [Vec<usize>], u: usize, v: usize) -> bool {
    if rot[u].len() <= 3 || rot[v].len() <= 3 {
        return false;
    }
    let w = rot[v][(position(&rot[v], u) + 1) % rot[v].len()];
    let z = rot[u][(position(&rot[u], v) + 1) % rot[u].len()];
    if w == z || rot[w].contains(&z) {
        return false;
    }
    // Face u→v→w: `u` follows `v` around `w`. Face v→u→z: `v` follows `u` around `z`.
    let pu = position(&rot[w], u);
    rot[w].insert(pu, z);
    let pv = position(&rot[z], v);
    rot[z].insert(pv, w);
    let i = position(&rot[u], v);
    rot[u].remove(i);
    let i = position(&rot[v], u);
    rot[v].remove(i);
    true
}

/// Random biconnected plane graph with `n` vertices and `m` edges, obtained by
/// deleting edges of a random triangulation while biconnectivity holds. When
/// deletion stalls above `m`, a graph on fewer vertices is built this way and
/// random edges are subdivided.
pub fn random_biconnected(n: usize, m: usize, seed: u64) -> Result<PlaneGraph, GenError> {
    if n < 3 || m < n || m > 3 * n - 6 {
        return Err(GenError::InfeasibleParameters(format!("need 3 <= n <= m <= 3n-6, got n={n}, m={m}")));
    }
    if n == 3 {
        return cycle(3);
    }
    for s in 0..=n - 3 {
        let (n2, m2) = (n - s, m - s);
        if n2 > 3 && m2 > 3 * n2 - 6 {
            break;
        }
        let attempts = if s == 0 { RETRIES } else { 4 };
        for attempt in 0..attempts {
            let sub = seed
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .wrapping_add((s as u64) << 32)
                .wrapping_add(attempt);
            let mut rng = ChaCha8Rng::seed_from_u64(sub);
            let base = if n2 == 3 { Some(cycle(3)?) } else { thin(n2, m2, &mut rng)? };
            if let Some(g) = base {
                return subdivide_random(g, s, &mut rng);
            }
        }
    }
    Err(GenError::InfeasibleParameters(format!("no biconnected graph with n={n}, m={m} found")))
}

fn thin(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Option<PlaneGraph>, GenError> {
    let mut g = random_triangulation(n, rng.gen())?;
    let mut edges = g.edges();
    edges.shuffle(rng);
    for (u, w) in edges {
        if g.edge_count() == m {
            break;
        }
        let mut rot: Vec<Vec<usize>> = (0..n).map(|v| g.rotation(v).to_vec()).collect();
        let i = position(&rot[u], w);
        rot[u].remove(i);
        let i = position(&rot[w], u);
        rot[w].remove(i);
        let h = PlaneGraph::from_rotation(g.names().to_vec(), rot)?;
        if h.is_biconnected() {
            g = h;
        }
    }
    Ok((g.edge_count() == m).then_some(g))
}

fn subdivide_random(mut g: PlaneGraph, count: usize, rng: &mut ChaCha8Rng) -> Result<PlaneGraph, GenError> {
    for _ in 0..count {
        let edges = g.edges();
        let (u, w) = edges[rng.gen_range(0..edges.len())];
        let x = g.vertex_count();
        let mut rot: Vec<Vec<usize>> = (0..x).map(|v| g.rotation(v).to_vec()).collect();
        let i = position(&rot[u], w);
        rot[u][i] = x;
        let i = position(&rot[w], u);
        rot[w][i] = x;
        rot.push(vec![u, w]);
        g = PlaneGraph::from_rotation(numeric_names(x + 1), rot)?;
    }
    Ok(g)
}

/// A named family with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    K4,
    Complete3Tree { d: u32 },
    Cycle { n: usize },
    Fan { n: usize },
    Octahedron,
    Icosahedron,
    Cube,
    RandomTriangulation { n: usize, seed: u64 },
    RandomBiconnected { n: usize, m: usize, seed: u64 },
}

impl FamilySpec {
    /// Parses a family name with its numeric parameters, e.g. `("cycle", [5])`.
    pub fn parse(name: &str, params: &[u64]) -> Result<Self, GenError> {
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(GenError::InvalidParameter(format!(
                    "`{name}` takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let p = |i: usize| params[i] as usize;
        Ok(match name {
            "k4" => arity(0).map(|_| Self::K4)?,
            "octahedron" => arity(0).map(|_| Self::Octahedron)?,
            "icosahedron" => arity(0).map(|_| Self::Icosahedron)?,
            "cube" => arity(0).map(|_| Self::Cube)?,
            "complete_3tree" | "3tree" => {
                arity(1)?;
                let d = u32::try_from(params[0]).map_err(|_| GenError::InvalidParameter("depth too large".into()))?;
                Self::Complete3Tree { d }
            }
            "cycle" => arity(1).map(|_| Self::Cycle { n: p(0) })?,
            "fan" => arity(1).map(|_| Self::Fan { n: p(0) })?,
            "random_triangulation" => arity(2).map(|_| Self::RandomTriangulation {
                n: p(0),
                seed: params[1],
            })?,
            "random_biconnected" => arity(3).map(|_| Self::RandomBiconnected {
                n: p(0),
                m: p(1),
                seed: params[2],
            })?,
            other => return Err(GenError::UnknownFamily(other.to_string())),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::K4 => write!(f, "k4"),
            Self::Complete3Tree { d } => write!(f, "complete_3tree {d}"),
            Self::Cycle { n } => write!(f, "cycle {n}"),
            Self::Fan { n } => write!(f, "fan {n}"),
            Self::Octahedron => write!(f, "octahedron"),
            Self::Icosahedron => write!(f, "icosahedron"),
            Self::Cube => write!(f, "cube"),
            Self::RandomTriangulation { n, seed } => write!(f, "random_triangulation {n} {seed}"),
            Self::RandomBiconnected { n, m, seed } => write!(f, "random_biconnected {n} {m} {seed}"),
        }
    }
}

pub fn named(spec: FamilySpec) -> Result<PlaneGraph, GenError> {
    match spec {
        FamilySpec::K4 => Ok(k4()),
        FamilySpec::Complete3Tree { d } => complete_3tree(d),
        FamilySpec::Cycle { n } => cycle(n),
        FamilySpec::Fan { n } => fan(n),
        FamilySpec::Octahedron => Ok(octahedron()),
        FamilySpec::Icosahedron => Ok(icosahedron()),
        FamilySpec::Cube => Ok(cube()),
        FamilySpec::RandomTriangulation { n, seed } => random_triangulation(n, seed),
        FamilySpec::RandomBiconnected { n, m, seed } => random_biconnected(n, m, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &PlaneGraph) -> Vec<usize> {
        (0..g.vertex_count()).map(|v| g.degree(v)).collect()
    }

    #[test]
    fn k4_shape() {
        let g = k4();
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count()), (4, 6, 4));
        assert!(g.is_maximal_planar());
        let outer = g.faces().get(g.outer_face().unwrap()).unwrap().incident_vertices().to_vec();
        assert_eq!(outer, vec![0, 1, 2]);
    }

    #[test]
    fn platonic_solids() {
        let o = octahedron();
        assert_eq!((o.vertex_count(), o.face_count(), o.min_degree()), (6, 8, 4));
        assert!(o.is_maximal_planar());
        let i = icosahedron();
        assert_eq!((i.vertex_count(), i.face_count()), (12, 20));
        assert!(degrees(&i).iter().all(|&d| d == 5));
        let c = cube();
        assert_eq!((c.vertex_count(), c.edge_count(), c.face_count()), (8, 12, 6));
        assert!(degrees(&c).iter().all(|&d| d == 3));
        assert!(c.is_biconnected());
        assert!(c.faces().iter().all(|f| f.len() == 4));
    }

    #[test]
    fn cycles_and_fans_are_outerplane() {
        for n in 3..9 {
            let c = cycle(n).unwrap();
            assert_eq!(c.face_count(), 2);
            assert!(c.is_outerplane().is_outerplane());
            let f = fan(n).unwrap();
            assert_eq!(f.edge_count(), 2 * n - 3);
            assert!(f.is_outerplane().is_outerplane());
            assert!(f.is_biconnected());
        }
        assert!(cycle(2).is_err());
    }

    #[test]
    fn three_tree_orders() {
        for d in 0..5 {
            let t = complete_3tree(d).unwrap();
            assert_eq!(t.vertex_count(), complete_3tree_order(d));
            assert_eq!(t.face_count(), 2 * t.vertex_count() - 4);
            assert!(t.is_maximal_planar());
        }
        assert_eq!(complete_3tree(0).unwrap(), k4());
        assert_eq!(complete_3tree(1).unwrap().vertex_count(), 7);
        assert_eq!(complete_3tree(2).unwrap().face_count(), 28);
        assert_eq!(complete_3tree_order(9), 29527);
        assert!(matches!(complete_3tree(10), Err(GenError::DepthCap { .. })));
    }

    #[test]
    fn three_tree_leaves() {
        for d in 1..=3 {
            let t = complete_3tree(d).unwrap();
            let leaves: Vec<usize> = (0..t.vertex_count()).filter(|&v| t.degree(v) == 3).collect();
            assert_eq!(leaves.len(), 3usize.pow(d));
            for f in t.faces().iter() {
                assert!(leaves.iter().filter(|&&v| f.touches(v)).count() <= 1);
            }
        }
    }

    #[test]
    fn random_triangulations() {
        assert_eq!(random_triangulation(4, 11).unwrap(), from_faces(4, &k4_faces()).unwrap());
        for n in 4..20 {
            for seed in 0..5 {
                let g = random_triangulation(n, seed).unwrap();
                assert_eq!(g.edge_count(), 3 * n - 6);
                assert_eq!(g.face_count(), 2 * n - 4);
                assert!(g.is_maximal_planar());
                assert!(g.faces().iter().all(|f| f.len() == 3));
                assert!(g.min_degree() >= 3);
                assert_eq!(g, random_triangulation(n, seed).unwrap());
            }
        }
    }

    #[test]
    fn flips_change_something() {
        let distinct: std::collections::BTreeSet<Vec<usize>> = (0..20)
            .map(|s| {
                let g = random_triangulation(10, s).unwrap();
                let mut d = degrees(&g);
                d.sort();
                d
            })
            .collect();
        assert!(distinct.len() > 1);
    }

    #[test]
    fn every_feasible_edge_count() {
        for n in 4..=14 {
            for m in n..=3 * n - 6 {
                for seed in 0..3 {
                    let g = random_biconnected(n, m, seed).unwrap();
                    assert_eq!((g.vertex_count(), g.edge_count()), (n, m));
                    assert!(g.is_biconnected());
                }
            }
        }
    }

    #[test]
    fn random_biconnected_graphs() {
        for n in 4..12 {
            for m in [n, (n + 3 * n - 6) / 2, 3 * n - 6] {
                let g = random_biconnected(n, m, 3).unwrap();
                assert_eq!((g.vertex_count(), g.edge_count()), (n, m));
                assert!(g.is_biconnected());
                assert!(g.faces().iter().all(|f| f.is_simple_cycle()));
            }
        }
        assert!(matches!(random_biconnected(6, 5, 0), Err(GenError::InfeasibleParameters(_))));
        assert!(matches!(random_biconnected(6, 13, 0), Err(GenError::InfeasibleParameters(_))));
    }

    #[test]
    fn family_dispatch() {
        assert_eq!(named(FamilySpec::parse("cycle", &[5]).unwrap()).unwrap().vertex_count(), 5);
        assert_eq!(FamilySpec::parse("k4", &[]).unwrap().to_string(), "k4");
        assert!(matches!(FamilySpec::parse("petersen", &[]), Err(GenError::UnknownFamily(_))));
        assert!(matches!(FamilySpec::parse("cycle", &[]), Err(GenError::InvalidParameter(_))));
        let spec = FamilySpec::RandomBiconnected { n: 7, m: 9, seed: 1 };
        let text = spec.to_string();
        let parts: Vec<&str> = text.split(' ').collect();
        let params: Vec<u64> = parts[1..].iter().map(|p| p.parse().unwrap()).collect();
        assert_eq!(FamilySpec::parse(parts[0], &params).unwrap(), spec);
    }
}
