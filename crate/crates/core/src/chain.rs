//! Path-like chains of subdivided complete graphs, built so that the
//! edge metric dimension (c1) and metric dimension (c2) are forced
//! independently: k - 1 copies of S(K_7) followed by one copy of S(K_q),
//! with two midpoint-to-midpoint connector edges per junction.

use crate::families::{complete, ConstructError};
use crate::graph::Graph;
use crate::resolver::{
    greedy_from, is_generator, object_distances, BoundaryPiece, Kind, LandmarkSet,
};
use crate::subdivision::{
    lemma1_q, subdivide, theorem2_generator, theorem3_generator, P3Packing, SubdivisionLabeling,
};

/// One subdivided complete graph inside a chain.
#[derive(Debug, Clone)]
pub struct CopyInfo {
    /// First chain vertex id of this copy.
    pub offset: u32,
    /// Order of the base complete graph (7 for all but the last copy).
    pub base_n: usize,
    pub labeling: SubdivisionLabeling,
}

impl CopyInfo {
    /// Number of chain vertices belonging to this copy.
    pub fn vertex_count(&self) -> usize {
        self.base_n + self.base_n * (self.base_n - 1) / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.offset..self.offset + self.vertex_count() as u32
    }
}

/// An assembled chain plus everything needed to address its vertices by
/// copy and base-graph role.
#[derive(Debug, Clone)]
pub struct ChainLayout {
    graph: Graph,
    c1: u32,
    c2: u32,
    q: u32,
    copies: Vec<CopyInfo>,
    connectors: Vec<[(u32, u32); 2]>,
}

/// A checker-validated basis candidate for a chain. `fell_back` records
/// that the structural composition failed and the set was completed
/// greedily instead.
#[derive(Debug, Clone)]
pub struct ChainCandidate {
    pub set: LandmarkSet,
    pub fell_back: bool,
}

/// The canonical packing of K_n into consecutive triples (0,1,2),
/// (3,4,5), ...; its midpoints are the connector-adjacent ones the chain
/// construction relies on.
pub fn consecutive_packing(n: usize, triples: usize) -> P3Packing {
    assert!(3 * triples <= n);
    (0..triples as u32).map(|i| (3 * i, 3 * i + 1, 3 * i + 2)).collect()
}

/// Builds the chain realizing edge metric dimension c1 and metric
/// dimension c2. Requires c1 >= 4 and c2 >= c1 + 2.
pub fn chain(c1: u32, c2: u32) -> Result<ChainLayout, ConstructError> {
    if c1 < 4 || c2 < c1 + 2 {
        return Err(ConstructError::ChainOutOfRange { c1, c2 });
    }
    let k = (c2 - c1) as usize;
    let q = lemma1_q(c1)?;
    let mut copies = Vec::with_capacity(k);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut offset = 0u32;
    for i in 0..k {
        let base_n = if i + 1 < k { 7 } else { q as usize };
        let base = complete(base_n)?;
        let (sg, labeling) = subdivide(&base);
        for &(u, v) in sg.edges() {
            edges.push((offset + u, offset + v));
        }
        for v in 0..sg.n() as u32 {
            labels.push(format!("G{}:{}", i + 1, sg.label(v).unwrap_or("")));
        }
        copies.push(CopyInfo {
            offset,
            base_n,
            labeling,
        });
        offset += sg.n() as u32;
    }
    let mid = |copies: &[CopyInfo], copy: usize, a: u32, b: u32| -> u32 {
        copies[copy].offset + copies[copy].labeling.midpoint_id(a, b).expect("base edge")
    };
    let mut connectors = Vec::with_capacity(k - 1);
    for i in 0..k - 1 {
        let top = (mid(&copies, i, 0, 1), mid(&copies, i + 1, 1, 2));
        let bottom = (mid(&copies, i, 3, 4), mid(&copies, i + 1, 4, 5));
        edges.push(top);
        edges.push(bottom);
        connectors.push([top, bottom]);
    }
    let mut graph = Graph::from_edges(offset as usize, edges)?;
    graph.set_labels(labels);
    debug_assert_eq!(
        graph.n(),
        28 * (k - 1) + q as usize + q as usize * (q as usize - 1) / 2
    );
    Ok(ChainLayout {
        graph,
        c1,
        c2,
        q,
        copies,
        connectors,
    })
}

impl ChainLayout {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn c1(&self) -> u32 {
        self.c1
    }

    pub fn c2(&self) -> u32 {
        self.c2
    }

    pub fn k(&self) -> usize {
        self.copies.len()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn copies(&self) -> &[CopyInfo] {
        &self.copies
    }

    pub fn connectors(&self) -> &[[(u32, u32); 2]] {
        &self.connectors
    }

    /// Chain id of the midpoint of base edge (a, b) in the given copy
    /// (0-based copy index, 0-based base vertex ids).
    pub fn midpoint(&self, copy: usize, a: u32, b: u32) -> u32 {
        self.copies[copy].offset
            + self.copies[copy]
                .labeling
                .midpoint_id(a, b)
                .expect("base edge exists")
    }

    /// Chain id of original base vertex v in the given copy.
    pub fn original(&self, copy: usize, v: u32) -> u32 {
        self.copies[copy].offset + v
    }

    /// Basis of the last copy alone (as chain ids), built from the
    /// consecutive packing, with its two connector-adjacent midpoints
    /// swapped for their first-copy mirrors.
    fn swapped_last_copy_basis(&self, kind: Kind) -> LandmarkSet {
        let k = self.k();
        let last = &self.copies[k - 1];
        let n = last.base_n;
        let local = match kind {
            Kind::EdgeMetric => {
                let packing = consecutive_packing(n, (n - 1) / 3);
                theorem3_generator(&last.labeling, &packing)
            }
            Kind::VertexMetric => {
                let packing = consecutive_packing(n, n / 3);
                theorem2_generator(&last.labeling, &packing)
            }
        }
        .expect("consecutive packing fits a complete base");
        let swap_out = [self.midpoint(k - 1, 1, 2), self.midpoint(k - 1, 4, 5)];
        let swap_in = [self.midpoint(0, 1, 2), self.midpoint(0, 4, 5)];
        let mut ids: Vec<u32> = local
            .ids()
            .iter()
            .map(|&v| last.offset + v)
            .filter(|v| !swap_out.contains(v))
            .collect();
        ids.extend_from_slice(&swap_in);
        LandmarkSet::new(ids)
    }

    fn validated(&self, ids: LandmarkSet, kind: Kind) -> ChainCandidate {
        let d = self.graph.distances();
        if is_generator(&self.graph, &d, &ids, kind) {
            return ChainCandidate {
                set: ids,
                fell_back: false,
            };
        }
        let rows = object_distances(&self.graph, &d, kind);
        let set = greedy_from(self.graph.n(), &rows, ids.ids());
        ChainCandidate {
            set,
            fell_back: true,
        }
    }

    /// Candidate edge metric basis of size c1.
    pub fn edge_basis_candidate(&self) -> ChainCandidate {
        self.validated(self.swapped_last_copy_basis(Kind::EdgeMetric), Kind::EdgeMetric)
    }

    /// Candidate metric basis of size c2: the swapped last-copy basis
    /// plus one interior vertex per remaining copy (the base vertex
    /// outside the packed triples).
    pub fn metric_basis_candidate(&self) -> ChainCandidate {
        let mut ids = self
            .swapped_last_copy_basis(Kind::VertexMetric)
            .ids()
            .to_vec();
        for copy in 0..self.k() - 1 {
            ids.push(self.original(copy, 6));
        }
        self.validated(LandmarkSet::new(ids), Kind::VertexMetric)
    }

    /// Decomposition pieces for the lower bound: one per copy, with the
    /// connector endpoints as boundary. Dimensions must come from
    /// certified solves of the copies, in copy order.
    pub fn boundary_pieces(&self, kind: Kind, copy_dims: &[u32]) -> Vec<BoundaryPiece> {
        assert_eq!(copy_dims.len(), self.k());
        let k = self.k();
        (0..k)
            .map(|i| {
                let mut boundary = Vec::new();
                if i > 0 {
                    boundary.push(self.midpoint(i, 1, 2));
                    boundary.push(self.midpoint(i, 4, 5));
                }
                if i + 1 < k {
                    boundary.push(self.midpoint(i, 0, 1));
                    boundary.push(self.midpoint(i, 3, 4));
                }
                boundary.sort_unstable();
                BoundaryPiece {
                    vertices: self.copies[i].vertices().collect(),
                    boundary,
                    dimension: copy_dims[i],
                    kind,
                    certified: true,
                }
            })
            .collect()
    }
}
