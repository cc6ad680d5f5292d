//! Constructors for the graph families exercised by the toolkit:
//! complete graphs, complete graphs minus a matching, stars, paths,
//! cycles and torus grids.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("complete graph needs n >= 1, got {0}")]
    CompleteTooSmall(usize),
    #[error("matching too large: need 2k <= n, got n = {n}, k = {k}")]
    MatchingTooLarge { n: usize, k: usize },
    #[error("star needs n >= 2, got {0}")]
    StarTooSmall(usize),
    #[error("cycle needs n >= 3, got {0}")]
    CycleTooSmall(usize),
    #[error("path needs n >= 1, got {0}")]
    PathTooSmall(usize),
    #[error("torus needs both cycle lengths >= 3, got {a} and {b}")]
    TorusTooSmall { a: usize, b: usize },
    #[error("chain parameters out of range (need 4 <= b < a, i.e. c1 >= 4 and c2 >= c1 + 2): c1 = {c1}, c2 = {c2}")]
    ChainOutOfRange { c1: u32, c2: u32 },
    #[error("no subdivided complete graph has edge metric dimension {0}; only values >= 2 other than 3 are attainable")]
    NoSelectorValue(u32),
    #[error("packing too small: need {needed} disjoint paths of length 2, got {got}")]
    PackingTooSmall { needed: usize, got: usize },
    #[error("packing is not a set of vertex-disjoint paths of length 2 in the base graph")]
    InvalidPacking,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Complete graph K_n.
pub fn complete(n: usize) -> Result<Graph, ConstructError> {
    if n < 1 {
        return Err(ConstructError::CompleteTooSmall(n));
    }
    let edges = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)));
    Ok(Graph::from_edges(n, edges)?)
}

/// K_n minus k independent edges; the deleted matching is the
/// lexicographically first one, {(0,1), (2,3), ..., (2k-2, 2k-1)}.
pub fn complete_minus_matching(n: usize, k: usize) -> Result<Graph, ConstructError> {
    if 2 * k > n {
        return Err(ConstructError::MatchingTooLarge { n, k });
    }
    let edges = (0..n as u32)
        .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
        .filter(|&(u, v)| !(v == u + 1 && u % 2 == 0 && (v as usize) < 2 * k));
    Ok(Graph::from_edges(n, edges)?)
}

/// Star K_{n-1,1} on n vertices; vertex 0 is the center.
pub fn star(n: usize) -> Result<Graph, ConstructError> {
    if n < 2 {
        return Err(ConstructError::StarTooSmall(n));
    }
    Ok(Graph::from_edges(n, (1..n as u32).map(|v| (0, v)))?)
}

/// Cycle C_n.
pub fn cycle(n: usize) -> Result<Graph, ConstructError> {
    if n < 3 {
        return Err(ConstructError::CycleTooSmall(n));
    }
    Ok(Graph::from_edges(
        n,
        (0..n as u32).map(|i| (i, (i + 1) % n as u32)),
    )?)
}

/// Path P_n.
pub fn path(n: usize) -> Result<Graph, ConstructError> {
    if n < 1 {
        return Err(ConstructError::PathTooSmall(n));
    }
    Ok(Graph::from_edges(n, (1..n as u32).map(|i| (i - 1, i)))?)
}

/// Cartesian product of cycles C_a and C_b; vertex (i, j) gets id i*b + j.
pub fn torus(a: usize, b: usize) -> Result<Graph, ConstructError> {
    if a < 3 || b < 3 {
        return Err(ConstructError::TorusTooSmall { a, b });
    }
    let id = |i: usize, j: usize| (i * b + j) as u32;
    let mut edges = Vec::with_capacity(2 * a * b);
    for i in 0..a {
        for j in 0..b {
            edges.push((id(i, j), id((i + 1) % a, j)));
            edges.push((id(i, j), id(i, (j + 1) % b)));
        }
    }
    Ok(Graph::from_edges(a * b, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_counts() {
        let g = complete(4).unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
    }

    #[test]
    fn matching_deletion() {
        let g = complete_minus_matching(7, 1).unwrap();
        assert_eq!((g.n(), g.m()), (7, 20));
        assert!(!g.has_edge(0, 1));
        let g = complete_minus_matching(8, 3).unwrap();
        assert_eq!(g.m(), 28 - 3);
        for e in [(0, 1), (2, 3), (4, 5)] {
            assert!(!g.has_edge(e.0, e.1));
        }
        assert!(g.has_edge(6, 7));
        assert_eq!(
            complete_minus_matching(5, 3),
            Err(ConstructError::MatchingTooLarge { n: 5, k: 3 })
        );
    }

    #[test]
    fn zero_matching_is_complete() {
        assert_eq!(complete_minus_matching(6, 0).unwrap(), complete(6).unwrap());
    }

    #[test]
    fn star_shape() {
        let g = star(9).unwrap();
        assert_eq!((g.n(), g.m()), (9, 8));
        assert_eq!(g.degree(0), 8);
    }

    #[test]
    fn torus_is_4_regular() {
        let g = torus(4, 4).unwrap();
        assert_eq!((g.n(), g.m()), (16, 32));
        for v in 0..16 {
            assert_eq!(g.degree(v), 4);
        }
        assert_eq!(torus(2, 4), Err(ConstructError::TorusTooSmall { a: 2, b: 4 }));
    }

    #[test]
    fn torus_vertex_numbering() {
        let g = torus(3, 5).unwrap();
        // (1, 2) -> 7; neighbors (0,2), (2,2), (1,1), (1,3).
        let mut nbrs = g.neighbors(7).to_vec();
        nbrs.sort_unstable();
        assert_eq!(nbrs, vec![2, 6, 8, 12]);
    }
}
