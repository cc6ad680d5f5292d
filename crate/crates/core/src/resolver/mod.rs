//! Generator checking, greedy upper bounds, structural lower bounds and
//! the exact certified search for dim(G) and edim(G).

mod search;

pub use search::{
    certify_no_generator_of_size, exact_dimension, naive_oracle, Certificate, CertifyOutcome,
    SearchStats, SolveOptions, SolveResult,
};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{DistanceMatrix, EdgeRef, Graph};

/// Selects whether the objects to distinguish are vertices or edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kind {
    #[serde(rename = "vertex")]
    VertexMetric,
    #[serde(rename = "edge")]
    EdgeMetric,
}

impl Kind {
    pub fn object_count(self, g: &Graph) -> usize {
        match self {
            Kind::VertexMetric => g.n(),
            Kind::EdgeMetric => g.m(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("node budget exhausted before any witness was found")]
    BudgetExhausted,
    #[error("set budget exhausted, refutation inconclusive after {checked} sets")]
    CertifyBudgetExhausted { checked: u64 },
    #[error("graph too large for the brute-force oracle ({n} vertices, cap {cap})")]
    OracleCapExceeded { n: usize, cap: usize },
    #[error("boundary pieces overlap at vertex {v}")]
    OverlappingPieces { v: u32 },
    #[error("piece is not isometric in the host graph (vertices {u}, {v})")]
    NonIsometricPiece { u: u32, v: u32 },
    #[error("piece boundary mismatch at vertex {v}")]
    BoundaryMismatch { v: u32 },
    #[error("piece dimension was not certified")]
    UncertifiedPiece,
    #[error("piece kind does not match the requested kind")]
    PieceKindMismatch,
}

/// Sorted set of distinct vertex ids used as a candidate generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LandmarkSet(Vec<u32>);

impl LandmarkSet {
    pub fn new(mut ids: Vec<u32>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        LandmarkSet(ids)
    }

    pub fn empty() -> Self {
        LandmarkSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ids(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn with(&self, v: u32) -> Self {
        let mut ids = self.0.clone();
        ids.push(v);
        LandmarkSet::new(ids)
    }

    pub fn without(&self, v: u32) -> Self {
        LandmarkSet(self.0.iter().copied().filter(|&u| u != v).collect())
    }
}

impl std::fmt::Display for LandmarkSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Distance vector to the landmarks, in landmark order.
pub type Signature = Vec<u16>;

/// Either a vertex or an edge of the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Vertex(u32),
    Edge(EdgeRef),
}

/// An unresolved pair, reported as a counterexample by the checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectPair {
    Vertices(u32, u32),
    Edges(EdgeRef, EdgeRef),
}

impl std::fmt::Display for ObjectPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ObjectPair::Vertices(u, v) => write!(f, "vertices {u} and {v}"),
            ObjectPair::Edges(e, f_) => write!(f, "edges #{} and #{}", e.0, f_.0),
        }
    }
}

/// Distance rows for all objects of the given kind: `rows[obj][v]` is the
/// distance from object `obj` to vertex `v`. The graph must be connected.
pub(crate) fn object_distances(g: &Graph, d: &DistanceMatrix, kind: Kind) -> Vec<Vec<u16>> {
    match kind {
        Kind::VertexMetric => (0..g.n() as u32).map(|u| d.row(u).to_vec()).collect(),
        Kind::EdgeMetric => g
            .edges()
            .iter()
            .map(|&(x, y)| {
                d.row(x)
                    .iter()
                    .zip(d.row(y))
                    .map(|(&a, &b)| a.min(b))
                    .collect()
            })
            .collect(),
    }
}

/// Signature of a vertex or edge with respect to a landmark set.
pub fn signature_of(g: &Graph, d: &DistanceMatrix, s: &LandmarkSet, target: Target) -> Signature {
    match target {
        Target::Vertex(v) => s.ids().iter().map(|&l| d.dist(l, v)).collect(),
        Target::Edge(e) => s
            .ids()
            .iter()
            .map(|&l| crate::graph::edge_vertex_distance(g, d, e, l))
            .collect(),
    }
}

fn pair_of(kind: Kind, a: usize, b: usize) -> ObjectPair {
    match kind {
        Kind::VertexMetric => ObjectPair::Vertices(a as u32, b as u32),
        Kind::EdgeMetric => ObjectPair::Edges(EdgeRef(a as u32), EdgeRef(b as u32)),
    }
}

/// Returns `None` if `s` is a generator for the given kind, otherwise one
/// unresolved pair as a counterexample.
pub fn check_generator(
    g: &Graph,
    d: &DistanceMatrix,
    s: &LandmarkSet,
    kind: Kind,
) -> Result<Option<ObjectPair>, SolveError> {
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let rows = object_distances(g, d, kind);
    Ok(first_collision(&rows, s.ids()).map(|(a, b)| pair_of(kind, a, b)))
}

pub fn is_generator(g: &Graph, d: &DistanceMatrix, s: &LandmarkSet, kind: Kind) -> bool {
    matches!(check_generator(g, d, s, kind), Ok(None))
}

/// First pair of objects with equal signatures under `landmarks`, by
/// sorted signature order (deterministic, hash-free).
pub(crate) fn first_collision(rows: &[Vec<u16>], landmarks: &[u32]) -> Option<(usize, usize)> {
    let p = rows.len();
    if p < 2 {
        return None;
    }
    let sigs: Vec<Vec<u16>> = rows
        .iter()
        .map(|row| landmarks.iter().map(|&l| row[l as usize]).collect())
        .collect();
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]).then(a.cmp(&b)));
    for w in order.windows(2) {
        if sigs[w[0]] == sigs[w[1]] {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            return Some((a, b));
        }
    }
    None
}

/// Upper-bound seed: repeatedly add the vertex that separates the most
/// currently-unresolved pairs, lowest id on ties.
pub fn greedy_generator(g: &Graph, kind: Kind) -> Result<LandmarkSet, SolveError> {
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let d = g.distances();
    let rows = object_distances(g, &d, kind);
    Ok(greedy_from(g.n(), &rows, &[]))
}

/// Greedy completion starting from `seed`; always terminates because the
/// full vertex set resolves every pair.
pub(crate) fn greedy_from(n: usize, rows: &[Vec<u16>], seed: &[u32]) -> LandmarkSet {
    let p = rows.len();
    let mut chosen: Vec<u32> = seed.to_vec();
    let mut unresolved: Vec<(u32, u32)> = (0..p as u32)
        .flat_map(|a| (a + 1..p as u32).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            !chosen
                .iter()
                .any(|&v| rows[a as usize][v as usize] != rows[b as usize][v as usize])
        })
        .collect();
    while !unresolved.is_empty() {
        let mut best_v = 0u32;
        let mut best_gain = 0usize;
        for v in 0..n as u32 {
            if chosen.contains(&v) {
                continue;
            }
            let gain = unresolved
                .iter()
                .filter(|&&(a, b)| rows[a as usize][v as usize] != rows[b as usize][v as usize])
                .count();
            if gain > best_gain {
                best_gain = gain;
                best_v = v;
            }
        }
        assert!(best_gain > 0, "no vertex separates a remaining pair");
        chosen.push(best_v);
        unresolved
            .retain(|&(a, b)| rows[a as usize][best_v as usize] == rows[b as usize][best_v as usize]);
    }
    LandmarkSet::new(chosen)
}

/// Structural lower bound.
///
/// Vertex kind: distance-twin classes; from every class of mutually
/// indistinguishable-by-others vertices, all but one must be landmarks.
/// Edge kind: a packing of object pairs with pairwise-disjoint
/// distinguishing sets; a generator must hit every set.
pub fn twin_lower_bound(g: &Graph, d: &DistanceMatrix, kind: Kind) -> u32 {
    let rows = object_distances(g, d, kind);
    let p = rows.len();
    if p < 2 {
        return 0;
    }
    let bound = match kind {
        Kind::VertexMetric => twin_class_bound(&rows),
        Kind::EdgeMetric => disjoint_pair_bound(g.n(), &rows, u32::MAX),
    };
    bound.max(1)
}

fn twins(rows: &[Vec<u16>], u: usize, v: usize) -> bool {
    rows[u]
        .iter()
        .zip(&rows[v])
        .enumerate()
        .all(|(w, (&a, &b))| w == u || w == v || a == b)
}

fn twin_class_bound(rows: &[Vec<u16>]) -> u32 {
    let n = rows.len();
    let mut class = vec![usize::MAX; n];
    let mut classes = 0usize;
    let mut sizes: Vec<u32> = Vec::new();
    for u in 0..n {
        if class[u] != usize::MAX {
            continue;
        }
        class[u] = classes;
        sizes.push(1);
        for (v, cv) in class.iter_mut().enumerate().skip(u + 1) {
            if *cv == usize::MAX && twins(rows, u, v) {
                *cv = classes;
                sizes[classes] += 1;
            }
        }
        classes += 1;
    }
    sizes.iter().map(|&s| s - 1).sum()
}

/// Greedy packing of object pairs with disjoint distinguishing vertex
/// sets, smallest sets first. Stops early once `cap` is exceeded.
pub(crate) fn disjoint_pair_bound(n: usize, rows: &[Vec<u16>], cap: u32) -> u32 {
    let p = rows.len();
    let words = n.div_ceil(64);
    let mut sets: Vec<(u32, Vec<u64>)> = Vec::new();
    for a in 0..p {
        for b in a + 1..p {
            let mut bits = vec![0u64; words];
            let mut count = 0u32;
            for v in 0..n {
                if rows[a][v] != rows[b][v] {
                    bits[v / 64] |= 1 << (v % 64);
                    count += 1;
                }
            }
            sets.push((count, bits));
        }
    }
    sets.sort_by_key(|s| s.0);
    let mut acc = vec![0u64; words];
    let mut picked = 0u32;
    for (_, bits) in &sets {
        if bits.iter().zip(&acc).all(|(b, a)| b & a == 0) {
            for (a, b) in acc.iter_mut().zip(bits) {
                *a |= b;
            }
            picked += 1;
            if picked > cap {
                break;
            }
        }
    }
    picked
}

/// A vertex-disjoint region used by the decomposition lower bound.
#[derive(Debug, Clone)]
pub struct BoundaryPiece {
    /// Vertices of the piece, in the host graph's numbering.
    pub vertices: Vec<u32>,
    /// Piece vertices with at least one neighbor outside the piece.
    pub boundary: Vec<u32>,
    /// Certified dimension of the induced subgraph for `kind`.
    pub dimension: u32,
    pub kind: Kind,
    /// Whether `dimension` came from a certified solve.
    pub certified: bool,
}

/// Sum over pieces of max(0, c - t): every generator of the host graph
/// must contain at least c - t vertices of each piece's interior, where
/// t is the boundary size and c the piece's certified dimension. Valid
/// only for isometric pieces, which is validated here.
pub fn piece_lower_bound(
    g: &Graph,
    d: &DistanceMatrix,
    pieces: &[BoundaryPiece],
    kind: Kind,
) -> Result<u32, SolveError> {
    let mut seen = vec![false; g.n()];
    let mut total = 0u32;
    for piece in pieces {
        if piece.kind != kind {
            return Err(SolveError::PieceKindMismatch);
        }
        if !piece.certified {
            return Err(SolveError::UncertifiedPiece);
        }
        for &v in &piece.vertices {
            if seen[v as usize] {
                return Err(SolveError::OverlappingPieces { v });
            }
            seen[v as usize] = true;
        }
        let (sub, map) = g.induced(&piece.vertices);
        let sub_d = sub.distances();
        for i in 0..sub.n() as u32 {
            for j in i + 1..sub.n() as u32 {
                let inner = sub_d
                    .get(i, j)
                    .ok_or(SolveError::NonIsometricPiece { u: map[i as usize], v: map[j as usize] })?;
                if inner != d.dist(map[i as usize], map[j as usize]) {
                    return Err(SolveError::NonIsometricPiece {
                        u: map[i as usize],
                        v: map[j as usize],
                    });
                }
            }
        }
        let in_piece = |v: u32| piece.vertices.contains(&v);
        for &v in &piece.vertices {
            let has_outside = g.neighbors(v).iter().any(|&w| !in_piece(w));
            let declared = piece.boundary.contains(&v);
            if has_outside != declared {
                return Err(SolveError::BoundaryMismatch { v });
            }
        }
        let t = piece.boundary.len() as u32;
        total += piece.dimension.saturating_sub(t);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n as u32).map(|i| (i - 1, i))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)));
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn signature_examples() {
        let g = path(3);
        let d = g.distances();
        let s = LandmarkSet::new(vec![0]);
        assert_eq!(signature_of(&g, &d, &s, Target::Vertex(2)), vec![2]);
        let e = g.edge_index(1, 2).unwrap();
        assert_eq!(signature_of(&g, &d, &s, Target::Edge(e)), vec![1]);

        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let d = c4.distances();
        let s = LandmarkSet::new(vec![0, 1]);
        let e = c4.edge_index(2, 3).unwrap();
        // Edge distance takes the closer endpoint: vertex 3 for landmark
        // 0, vertex 2 for landmark 1.
        assert_eq!(signature_of(&c4, &d, &s, Target::Edge(e)), vec![1, 1]);
    }

    #[test]
    fn generator_check_k3() {
        let g = complete(3);
        let d = g.distances();
        for pair in [[0, 1], [0, 2], [1, 2]] {
            assert!(is_generator(&g, &d, &LandmarkSet::new(pair.to_vec()), Kind::VertexMetric));
        }
    }

    #[test]
    fn empty_set_fails_with_counterexample() {
        let g = path(3);
        let d = g.distances();
        let out = check_generator(&g, &d, &LandmarkSet::empty(), Kind::VertexMetric).unwrap();
        assert_eq!(out, Some(ObjectPair::Vertices(0, 1)));
    }

    #[test]
    fn check_disconnected_errors() {
        let g = Graph::from_edges(2, []).unwrap();
        let d = g.distances();
        assert_eq!(
            check_generator(&g, &d, &LandmarkSet::empty(), Kind::VertexMetric),
            Err(SolveError::Disconnected)
        );
    }

    #[test]
    fn greedy_sizes() {
        // An end vertex of a path resolves everything.
        assert_eq!(greedy_generator(&path(5), Kind::VertexMetric).unwrap().len(), 1);
        assert_eq!(greedy_generator(&complete(4), Kind::VertexMetric).unwrap().len(), 3);
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(greedy_generator(&c4, Kind::EdgeMetric).unwrap().len(), 2);
    }

    #[test]
    fn greedy_output_is_generator() {
        for g in [path(7), complete(5), complete(6)] {
            let d = g.distances();
            for kind in [Kind::VertexMetric, Kind::EdgeMetric] {
                let s = greedy_generator(&g, kind).unwrap();
                assert!(is_generator(&g, &d, &s, kind));
            }
        }
    }

    #[test]
    fn twin_bound_examples() {
        let k4 = complete(4);
        let d = k4.distances();
        assert_eq!(twin_lower_bound(&k4, &d, Kind::VertexMetric), 3);
        let p5 = path(5);
        let d = p5.distances();
        assert_eq!(twin_lower_bound(&p5, &d, Kind::VertexMetric), 1);
    }

    #[test]
    fn piece_bound_whole_graph() {
        let g = complete(4);
        let d = g.distances();
        let piece = BoundaryPiece {
            vertices: (0..4).collect(),
            boundary: vec![],
            dimension: 3,
            kind: Kind::VertexMetric,
            certified: true,
        };
        assert_eq!(piece_lower_bound(&g, &d, &[piece], Kind::VertexMetric), Ok(3));
    }

    #[test]
    fn piece_bound_rejects_overlap_and_uncertified() {
        let g = path(4);
        let d = g.distances();
        let mk = |verts: Vec<u32>, boundary: Vec<u32>| BoundaryPiece {
            vertices: verts,
            boundary,
            dimension: 1,
            kind: Kind::VertexMetric,
            certified: true,
        };
        let a = mk(vec![0, 1], vec![1]);
        let mut b = mk(vec![1, 2], vec![1, 2]);
        assert_eq!(
            piece_lower_bound(&g, &d, &[a.clone(), b.clone()], Kind::VertexMetric),
            Err(SolveError::OverlappingPieces { v: 1 })
        );
        b.vertices = vec![2, 3];
        b.boundary = vec![2];
        b.certified = false;
        assert_eq!(
            piece_lower_bound(&g, &d, &[a, b], Kind::VertexMetric),
            Err(SolveError::UncertifiedPiece)
        );
    }

    #[test]
    fn piece_bound_rejects_non_isometric() {
        // In C_4 the pair {0, 2} induces no edge but is at distance 2.
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let d = c4.distances();
        let piece = BoundaryPiece {
            vertices: vec![0, 2],
            boundary: vec![0, 2],
            dimension: 1,
            kind: Kind::VertexMetric,
            certified: true,
        };
        assert!(matches!(
            piece_lower_bound(&c4, &d, &[piece], Kind::VertexMetric),
            Err(SolveError::NonIsometricPiece { .. })
        ));
    }
}
