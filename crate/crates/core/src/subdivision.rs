//! Edge subdivision S(G), vertex-disjoint P3 packings, and the two
//! generator builders that realize the ceil(2n/3) vertex bound and the
//! ceil((2n-2)/3) edge bound on subdivision graphs.

use crate::families::ConstructError;
use crate::graph::Graph;
use crate::resolver::LandmarkSet;

/// Role of a vertex of S(G): an original base vertex, or the midpoint
/// inserted on a base edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Original(u32),
    Midpoint(u32, u32),
}

/// Maps S(G) vertex ids back to base-graph roles. Original vertex i
/// keeps id i; the midpoint of the e-th canonical base edge gets id
/// base_n + e.
#[derive(Debug, Clone)]
pub struct SubdivisionLabeling {
    base_n: usize,
    base_edges: Vec<(u32, u32)>,
}

impl SubdivisionLabeling {
    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn base_edges(&self) -> &[(u32, u32)] {
        &self.base_edges
    }

    pub fn role(&self, v: u32) -> Role {
        if (v as usize) < self.base_n {
            Role::Original(v)
        } else {
            let (i, j) = self.base_edges[v as usize - self.base_n];
            Role::Midpoint(i, j)
        }
    }

    pub fn original_id(&self, i: u32) -> u32 {
        assert!((i as usize) < self.base_n);
        i
    }

    /// S(G) id of the midpoint x_{i,j}, if ij is a base edge.
    pub fn midpoint_id(&self, i: u32, j: u32) -> Option<u32> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.base_edges
            .binary_search(&key)
            .ok()
            .map(|e| (self.base_n + e) as u32)
    }
}

/// Subdivides every edge of `g`: each edge uv becomes u-w-v through a
/// fresh midpoint w. The result has n + m vertices and 2m edges.
pub fn subdivide(g: &Graph) -> (Graph, SubdivisionLabeling) {
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.m());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let w = (n + e) as u32;
        edges.push((u, w));
        edges.push((v, w));
    }
    let mut sg = Graph::from_edges(n + g.m(), edges).expect("subdivision is a valid graph");
    let labels = (0..n)
        .map(|i| format!("v{i}"))
        .chain(g.edges().iter().map(|&(u, v)| format!("x{u},{v}")))
        .collect();
    sg.set_labels(labels);
    let labeling = SubdivisionLabeling {
        base_n: n,
        base_edges: g.edges().to_vec(),
    };
    (sg, labeling)
}

/// Ordered vertex triples (a, b, c), each a path of length 2 in the base
/// graph (edges ab and bc), pairwise vertex-disjoint.
pub type P3Packing = Vec<(u32, u32, u32)>;

/// Backtracking search for `count` vertex-disjoint paths of length 2.
/// Middle vertices are tried highest degree first; `None` only after the
/// search space is exhausted.
pub fn find_p3_packing(g: &Graph, count: usize) -> Option<P3Packing> {
    if count == 0 {
        return Some(Vec::new());
    }
    if 3 * count > g.n() {
        return None;
    }
    let mut order: Vec<u32> = (0..g.n() as u32).filter(|&v| g.degree(v) >= 2).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut used = vec![false; g.n()];
    let mut acc: P3Packing = Vec::with_capacity(count);
    fn rec(
        g: &Graph,
        order: &[u32],
        start: usize,
        used: &mut [bool],
        acc: &mut P3Packing,
        count: usize,
    ) -> bool {
        if acc.len() == count {
            return true;
        }
        for idx in start..order.len() {
            let b = order[idx];
            if used[b as usize] {
                continue;
            }
            let nbrs: Vec<u32> = g
                .neighbors(b)
                .iter()
                .copied()
                .filter(|&w| !used[w as usize])
                .collect();
            used[b as usize] = true;
            for (i, &a) in nbrs.iter().enumerate() {
                used[a as usize] = true;
                for &c in &nbrs[i + 1..] {
                    used[c as usize] = true;
                    acc.push((a, b, c));
                    if rec(g, order, idx + 1, used, acc, count) {
                        return true;
                    }
                    acc.pop();
                    used[c as usize] = false;
                }
                used[a as usize] = false;
            }
            used[b as usize] = false;
        }
        false
    }
    rec(g, &order, 0, &mut used, &mut acc, count).then_some(acc)
}

fn validate_packing(
    labeling: &SubdivisionLabeling,
    packing: &P3Packing,
    needed: usize,
) -> Result<(Vec<u32>, Vec<u32>), ConstructError> {
    if packing.len() < needed {
        return Err(ConstructError::PackingTooSmall {
            needed,
            got: packing.len(),
        });
    }
    let n = labeling.base_n();
    let mut covered = vec![false; n];
    let mut midpoints = Vec::with_capacity(2 * needed);
    for &(a, b, c) in &packing[..needed] {
        for &v in &[a, b, c] {
            if (v as usize) >= n || covered[v as usize] {
                return Err(ConstructError::InvalidPacking);
            }
            covered[v as usize] = true;
        }
        let ab = labeling
            .midpoint_id(a, b)
            .ok_or(ConstructError::InvalidPacking)?;
        let bc = labeling
            .midpoint_id(b, c)
            .ok_or(ConstructError::InvalidPacking)?;
        midpoints.push(ab);
        midpoints.push(bc);
    }
    let tail: Vec<u32> = (0..n as u32).filter(|&v| !covered[v as usize]).collect();
    Ok((midpoints, tail))
}

/// Generator of size ceil(2n/3) for the vertex metric on S(G): the two
/// midpoints inside each packed triple, plus the leftover base vertices.
pub fn theorem2_generator(
    labeling: &SubdivisionLabeling,
    packing: &P3Packing,
) -> Result<LandmarkSet, ConstructError> {
    let n = labeling.base_n();
    let needed = n / 3;
    let (mut ids, tail) = validate_packing(labeling, packing, needed)?;
    // Leftover vertices take the tail positions; all of them join the set.
    ids.extend(tail);
    let set = LandmarkSet::new(ids);
    debug_assert_eq!(set.len(), (2 * n).div_ceil(3));
    Ok(set)
}

/// Generator of size ceil((2n-2)/3) for the edge metric on S(G): as the
/// vertex builder but with floor((n-1)/3) triples, leaving the highest
/// leftover vertex out of the set entirely.
pub fn theorem3_generator(
    labeling: &SubdivisionLabeling,
    packing: &P3Packing,
) -> Result<LandmarkSet, ConstructError> {
    let n = labeling.base_n();
    let needed = (n - 1) / 3;
    let (mut ids, tail) = validate_packing(labeling, packing, needed)?;
    match n % 3 {
        1 => {}
        2 => ids.push(tail[0]),
        _ => ids.extend_from_slice(&tail[0..2]),
    }
    let set = LandmarkSet::new(ids);
    debug_assert_eq!(set.len(), (2 * n - 2).div_ceil(3));
    debug_assert!(!set.contains(*tail.last().expect("tail is nonempty")));
    Ok(set)
}

/// Smallest q such that the subdivided complete graph S(K_q) has edge
/// metric dimension c1 and metric dimension c1 + 1. Defined for every
/// c1 >= 2 except c1 = 3.
pub fn lemma1_q(c1: u32) -> Result<u32, ConstructError> {
    if c1 < 2 || c1 == 3 {
        return Err(ConstructError::NoSelectorValue(c1));
    }
    let t = c1 / 2;
    if c1.is_multiple_of(2) {
        Ok(3 * t + 1)
    } else {
        Ok(3 * t + 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, path, star};
    use crate::resolver::{is_generator, Kind};

    #[test]
    fn subdivide_sizes() {
        let (sk4, _) = subdivide(&complete(4).unwrap());
        assert_eq!((sk4.n(), sk4.m()), (10, 12));
        let (sp2, lab) = subdivide(&path(2).unwrap());
        assert_eq!((sp2.n(), sp2.m()), (3, 2));
        assert_eq!(lab.role(2), Role::Midpoint(0, 1));
        let (sk7, _) = subdivide(&complete(7).unwrap());
        assert_eq!((sk7.n(), sk7.m()), (28, 42));
        assert!(sk7.is_connected());
    }

    #[test]
    fn labeling_invariants() {
        let base = complete(4).unwrap();
        let (sg, lab) = subdivide(&base);
        for v in 0..sg.n() as u32 {
            match lab.role(v) {
                Role::Original(i) => {
                    assert_eq!(sg.degree(v), base.degree(i));
                }
                Role::Midpoint(i, j) => {
                    assert!(i < j);
                    assert_eq!(sg.neighbors(v), &[i, j]);
                }
            }
        }
    }

    #[test]
    fn subdivision_doubles_original_distances() {
        let base = complete(4).unwrap();
        let (sg, _) = subdivide(&base);
        let bd = base.distances();
        let sd = sg.distances();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(sd.dist(u, v), 2 * bd.dist(u, v));
            }
        }
    }

    #[test]
    fn subdivision_is_bipartite_and_triangle_free() {
        let (sg, lab) = subdivide(&complete(5).unwrap());
        for &(u, v) in sg.edges() {
            let original = |w: u32| matches!(lab.role(w), Role::Original(_));
            assert_ne!(original(u), original(v));
        }
    }

    #[test]
    fn packing_examples() {
        let k7 = complete(7).unwrap();
        assert!(find_p3_packing(&k7, 2).is_some());
        let k81 = star(9).unwrap();
        assert!(find_p3_packing(&k81, 2).is_none());
        assert!(find_p3_packing(&k81, 1).is_some());
        let p3 = path(3).unwrap();
        assert_eq!(find_p3_packing(&p3, 1), Some(vec![(0, 1, 2)]));
    }

    #[test]
    fn packing_needs_backtracking() {
        // Two triangles joined by a bridge; the greedy-looking choice of
        // a high-degree middle can block the second triple.
        let g = Graph::from_edges(
            6,
            [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)],
        )
        .unwrap();
        assert!(find_p3_packing(&g, 2).is_some());
    }

    #[test]
    fn builder_sizes_on_complete_graphs() {
        for n in 4..=9usize {
            let base = complete(n).unwrap();
            let (sg, lab) = subdivide(&base);
            let d = sg.distances();
            let p2 = find_p3_packing(&base, n / 3).unwrap();
            let t2 = theorem2_generator(&lab, &p2).unwrap();
            assert_eq!(t2.len(), (2 * n).div_ceil(3), "n = {n}");
            assert!(is_generator(&sg, &d, &t2, Kind::VertexMetric), "n = {n}");
            let p3 = find_p3_packing(&base, (n - 1) / 3).unwrap();
            let t3 = theorem3_generator(&lab, &p3).unwrap();
            assert_eq!(t3.len(), (2 * n - 2).div_ceil(3), "n = {n}");
            assert!(is_generator(&sg, &d, &t3, Kind::EdgeMetric), "n = {n}");
        }
    }

    #[test]
    fn builder_rejects_small_packing() {
        let base = complete(6).unwrap();
        let (_, lab) = subdivide(&base);
        let err = theorem2_generator(&lab, &vec![(0, 1, 2)]).unwrap_err();
        assert_eq!(err, ConstructError::PackingTooSmall { needed: 2, got: 1 });
    }

    #[test]
    fn selector_values() {
        assert_eq!(lemma1_q(2), Ok(4));
        assert_eq!(lemma1_q(4), Ok(7));
        assert_eq!(lemma1_q(5), Ok(8));
        assert_eq!(lemma1_q(6), Ok(10));
        assert_eq!(lemma1_q(3), Err(ConstructError::NoSelectorValue(3)));
        assert_eq!(lemma1_q(1), Err(ConstructError::NoSelectorValue(1)));
    }
}
