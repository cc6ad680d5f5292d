//! Simple undirected graphs with contiguous 0-based vertex ids, BFS
//! distance matrices and cut-vertex detection.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Hard cap on graph size. Dense distance matrices and per-pair bitsets
/// assume desk-scale instances.
pub const MAX_VERTICES: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed header, expected \"n m\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed edge line, expected \"u v\"")]
    MalformedEdge { line: usize },
    #[error("line {line}: endpoint {v} out of range (n = {n})")]
    EndpointOutOfRange { line: usize, v: u32, n: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: u32 },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: u32, v: u32 },
    #[error("expected {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("graph too large: {n} vertices (limit {MAX_VERTICES})")]
    TooLarge { n: usize },
    #[error("graph is disconnected")]
    Disconnected,
}

/// Index into a graph's canonical sorted edge list. Positional identity
/// keeps edge signatures reproducible across runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef(pub u32);

impl EdgeRef {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Simple undirected graph. Immutable after construction.
///
/// The adjacency lists and the canonical edge list (pairs with u < v,
/// sorted lexicographically) always describe the same edge set.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        // Labels are presentation only.
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list, canonicalizing edge order.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n });
        }
        let mut canon: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if a == b {
                return Err(GraphError::SelfLoop { line: 0, v: a });
            }
            if v as usize >= n {
                return Err(GraphError::EndpointOutOfRange { line: 0, v, n });
            }
            canon.push((u, v));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge {
                line: 0,
                u: w[0].0,
                v: w[0].1,
            });
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            n,
            adjacency,
            edges: canon,
            labels: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Position of edge (u, v) in the canonical edge list.
    pub fn edge_index(&self, u: u32, v: u32) -> Option<EdgeRef> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search(&key)
            .ok()
            .map(|i| EdgeRef(i as u32))
    }

    pub fn endpoints(&self, e: EdgeRef) -> (u32, u32) {
        self.edges[e.index()]
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
    }

    pub fn label(&self, v: u32) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v as usize].as_str())
    }

    /// Parses the edge-list file format: optional '#' comment lines, a
    /// "n m" header, then exactly m lines "u v".
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut n = 0usize;
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut seen: Vec<(u32, u32)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut it = trimmed.split_whitespace();
            match header {
                None => {
                    let hn = it.next().and_then(|t| t.parse::<usize>().ok());
                    let hm = it.next().and_then(|t| t.parse::<usize>().ok());
                    match (hn, hm, it.next()) {
                        (Some(hn), Some(hm), None) => {
                            if hn > MAX_VERTICES {
                                return Err(GraphError::TooLarge { n: hn });
                            }
                            n = hn;
                            header = Some((hn, hm));
                        }
                        _ => return Err(GraphError::MalformedHeader { line }),
                    }
                }
                Some((_, m)) => {
                    if edges.len() == m {
                        return Err(GraphError::EdgeCountMismatch {
                            expected: m,
                            found: m + 1,
                        });
                    }
                    let a = it.next().and_then(|t| t.parse::<u32>().ok());
                    let b = it.next().and_then(|t| t.parse::<u32>().ok());
                    let (a, b) = match (a, b, it.next()) {
                        (Some(a), Some(b), None) => (a, b),
                        _ => return Err(GraphError::MalformedEdge { line }),
                    };
                    if a == b {
                        return Err(GraphError::SelfLoop { line, v: a });
                    }
                    for &v in &[a, b] {
                        if v as usize >= n {
                            return Err(GraphError::EndpointOutOfRange { line, v, n });
                        }
                    }
                    let key = if a < b { (a, b) } else { (b, a) };
                    if seen.contains(&key) {
                        return Err(GraphError::DuplicateEdge {
                            line,
                            u: key.0,
                            v: key.1,
                        });
                    }
                    seen.push(key);
                    edges.push(key);
                }
            }
        }
        let (_, m) = header.ok_or(GraphError::MalformedHeader { line: 0 })?;
        if edges.len() != m {
            return Err(GraphError::EdgeCountMismatch {
                expected: m,
                found: edges.len(),
            });
        }
        Graph::from_edges(n, edges)
    }

    /// Canonical serialization: header then edges with u < v in
    /// lexicographic order, newline-terminated.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.n, self.edges.len()));
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u, v));
        }
        out
    }

    fn bfs(&self, src: u32, dist: &mut [u16]) {
        dist.fill(UNREACHABLE);
        dist[src as usize] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &w in self.neighbors(u) {
                if dist[w as usize] == UNREACHABLE {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    /// BFS hop distances between all vertex pairs.
    pub fn distances(&self) -> DistanceMatrix {
        let n = self.n;
        let mut data = vec![UNREACHABLE; n * n];
        for src in 0..n {
            self.bfs(src as u32, &mut data[src * n..(src + 1) * n]);
        }
        DistanceMatrix { n, data }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut dist = vec![UNREACHABLE; self.n];
        self.bfs(0, &mut dist);
        dist.iter().all(|&d| d != UNREACHABLE)
    }

    /// Cut vertices, via low-link DFS. Errors on disconnected input.
    pub fn articulation_points(&self) -> Result<Vec<u32>, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let n = self.n;
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut is_cut = vec![false; n];
        // Iterative DFS from vertex 0; the graph is connected.
        let mut stack: Vec<(u32, Option<u32>, usize)> = vec![(0, None, 0)];
        let mut root_children = 0usize;
        let mut timer = 1usize;
        disc[0] = 0;
        low[0] = 0;
        while let Some(&(u, parent, ni)) = stack.last() {
            let nbrs = self.neighbors(u);
            if ni < nbrs.len() {
                stack.last_mut().unwrap().2 += 1;
                let w = nbrs[ni];
                if Some(w) == parent {
                    continue;
                }
                if disc[w as usize] == usize::MAX {
                    disc[w as usize] = timer;
                    low[w as usize] = timer;
                    timer += 1;
                    if u == 0 {
                        root_children += 1;
                    }
                    stack.push((w, Some(u), 0));
                } else {
                    low[u as usize] = low[u as usize].min(disc[w as usize]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p as usize] = low[p as usize].min(low[u as usize]);
                    if p != 0 && low[u as usize] >= disc[p as usize] {
                        is_cut[p as usize] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[0] = true;
        }
        Ok((0..n as u32).filter(|&v| is_cut[v as usize]).collect())
    }

    /// Induced subgraph on `verts`; returns the subgraph and the map
    /// from new ids to original ids (sorted ascending).
    pub fn induced(&self, verts: &[u32]) -> (Graph, Vec<u32>) {
        let mut map: Vec<u32> = verts.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut inv = vec![u32::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            inv[old as usize] = new as u32;
        }
        let edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| inv[u as usize] != u32::MAX && inv[v as usize] != u32::MAX)
            .map(|&(u, v)| (inv[u as usize], inv[v as usize]))
            .collect();
        let g = Graph::from_edges(map.len(), edges).expect("induced subgraph is valid");
        (g, map)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_edge_list())
    }
}

const UNREACHABLE: u16 = u16::MAX;

/// All-pairs hop distances. Unreachable pairs hold a dedicated sentinel
/// rather than a large numeric value, so arithmetic on them is a bug
/// that surfaces as a panic, not a silently wrong distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u16>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Distance if reachable.
    pub fn get(&self, u: u32, v: u32) -> Option<u16> {
        let d = self.data[u as usize * self.n + v as usize];
        (d != UNREACHABLE).then_some(d)
    }

    /// Distance for a reachable pair; panics on unreachable.
    pub fn dist(&self, u: u32, v: u32) -> u16 {
        let d = self.data[u as usize * self.n + v as usize];
        assert!(d != UNREACHABLE, "vertices {u} and {v} are not connected");
        d
    }

    /// Row of distances from `u` (sentinel entries included).
    pub(crate) fn row(&self, u: u32) -> &[u16] {
        &self.data[u as usize * self.n..(u as usize + 1) * self.n]
    }
}

/// d(e, v) = min over the endpoints of e of their distance to v.
pub fn edge_vertex_distance(g: &Graph, d: &DistanceMatrix, e: EdgeRef, v: u32) -> u16 {
    let (x, y) = g.endpoints(e);
    d.dist(x, v).min(d.dist(y, v))
}
