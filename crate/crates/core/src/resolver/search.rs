//! Exact certified search for the (edge) metric dimension.
//!
//! The search is a branch-and-bound on unresolved object pairs: pick the
//! unresolved pair with the fewest distinguishing vertices and branch on
//! those vertices in ascending id order, excluding vertices already tried
//! at the same node. A greedy packing of pairwise-disjoint distinguishing
//! sets prunes branches that cannot finish within the remaining budget.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use serde::Serialize;

use crate::graph::Graph;
use crate::resolver::{
    first_collision, greedy_from, object_distances, piece_lower_bound, twin_lower_bound,
    BoundaryPiece, Kind, LandmarkSet, SolveError,
};

/// Cap for the brute-force oracle; it enumerates all subsets.
pub const ORACLE_VERTEX_CAP: usize = 20;

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Use twin classes and pair packings as a certified floor.
    pub structural_bounds: bool,
    /// Extra decomposition pieces contributing to the lower bound.
    pub pieces: Vec<BoundaryPiece>,
    /// Worker threads for root-level branching (ignored in
    /// deterministic mode).
    pub threads: usize,
    /// Single-threaded, lexicographically-first witness, byte-identical
    /// reruns.
    pub deterministic: bool,
    /// Search node budget; on exhaustion the result degrades to
    /// `UpperBoundOnly`.
    pub node_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            structural_bounds: true,
            pieces: Vec::new(),
            threads: 1,
            deterministic: true,
            node_budget: u64::MAX,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Certificate {
    #[serde(rename = "certified")]
    Certified,
    #[serde(rename = "upper_bound_only")]
    UpperBoundOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub sets_checked: u64,
    pub millis: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub kind: Kind,
    pub dimension: u32,
    pub witness: LandmarkSet,
    pub certificate: Certificate,
    #[serde(flatten)]
    pub stats: SearchStats,
}

impl SolveResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("solve result serializes")
    }
}

struct PairTable {
    words: usize,
    /// Distinguishing-set bitset per pair, flattened; pairs are sorted
    /// by ascending set size.
    bits: Vec<u64>,
    counts: Vec<u32>,
}

impl PairTable {
    fn build(n: usize, rows: &[Vec<u16>]) -> Self {
        let p = rows.len();
        let words = n.div_ceil(64).max(1);
        let mut raw: Vec<(u32, Vec<u64>)> = Vec::with_capacity(p * (p - 1) / 2);
        for a in 0..p {
            for b in a + 1..p {
                let mut set = vec![0u64; words];
                let mut count = 0u32;
                for v in 0..n {
                    if rows[a][v] != rows[b][v] {
                        set[v / 64] |= 1 << (v % 64);
                        count += 1;
                    }
                }
                raw.push((count, set));
            }
        }
        raw.sort_by_key(|pair| pair.0);
        let mut bits = Vec::with_capacity(raw.len() * words);
        let mut counts = Vec::with_capacity(raw.len());
        for (c, set) in raw {
            counts.push(c);
            bits.extend_from_slice(&set);
        }
        PairTable { words, bits, counts }
    }

    fn len(&self) -> usize {
        self.counts.len()
    }

    fn set(&self, pair: usize) -> &[u64] {
        &self.bits[pair * self.words..(pair + 1) * self.words]
    }

    fn distinguishes(&self, pair: usize, v: u32) -> bool {
        self.set(pair)[v as usize / 64] >> (v as usize % 64) & 1 == 1
    }
}

enum Outcome {
    Found(Vec<u32>),
    Refuted,
    Budget,
}

struct SearchCtx<'a> {
    table: &'a PairTable,
    nodes: &'a AtomicU64,
    leaves: &'a AtomicU64,
    budget: u64,
    stop: &'a AtomicBool,
}

impl SearchCtx<'_> {
    /// Greedy packing of disjoint distinguishing sets among `unresolved`,
    /// stopping as soon as the count exceeds `cap`.
    fn packing_bound(&self, unresolved: &[u32], cap: usize) -> usize {
        let words = self.table.words;
        let mut acc = vec![0u64; words];
        let mut picked = 0usize;
        for &p in unresolved {
            let set = self.table.set(p as usize);
            if set.iter().zip(&acc).all(|(s, a)| s & a == 0) {
                for (a, s) in acc.iter_mut().zip(set) {
                    *a |= s;
                }
                picked += 1;
                if picked > cap {
                    return picked;
                }
            }
        }
        picked
    }

    fn dfs(
        &self,
        unresolved: &[u32],
        chosen: &mut Vec<u32>,
        banned: &mut [u64],
        size: usize,
    ) -> Outcome {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.stop.store(true, Ordering::Relaxed);
            return Outcome::Budget;
        }
        if self.stop.load(Ordering::Relaxed) {
            return Outcome::Budget;
        }
        if unresolved.is_empty() {
            self.leaves.fetch_add(1, Ordering::Relaxed);
            return Outcome::Found(chosen.clone());
        }
        let remaining = size - chosen.len();
        if remaining == 0 {
            self.leaves.fetch_add(1, Ordering::Relaxed);
            return Outcome::Refuted;
        }
        if self.packing_bound(unresolved, remaining) > remaining {
            return Outcome::Refuted;
        }
        // Unresolved pairs stay sorted by ascending distinguisher count,
        // so the head is the tightest pair to branch on.
        let pivot = unresolved[0] as usize;
        let set = self.table.set(pivot);
        let mut tried: Vec<u32> = Vec::new();
        let mut outcome = Outcome::Refuted;
        'branch: for w in 0..self.table.words {
            let mut word = set[w] & !banned[w];
            while word != 0 {
                let v = (w * 64 + word.trailing_zeros() as usize) as u32;
                word &= word - 1;
                chosen.push(v);
                let next: Vec<u32> = unresolved
                    .iter()
                    .copied()
                    .filter(|&q| !self.table.distinguishes(q as usize, v))
                    .collect();
                let sub = self.dfs(&next, chosen, banned, size);
                chosen.pop();
                match sub {
                    Outcome::Refuted => {}
                    other => {
                        outcome = other;
                        break 'branch;
                    }
                }
                banned[w] |= 1 << (v as usize % 64);
                tried.push(v);
            }
        }
        for v in tried {
            banned[v as usize / 64] &= !(1 << (v as usize % 64));
        }
        outcome
    }
}

/// Looks for a generator of exactly `size` landmarks; a `Refuted` answer
/// is a complete (exhaustive) search of the branching tree.
fn search_size(
    table: &PairTable,
    size: usize,
    opts: &SolveOptions,
    nodes: &AtomicU64,
    leaves: &AtomicU64,
) -> Outcome {
    let stop = AtomicBool::new(false);
    let ctx = SearchCtx {
        table,
        nodes,
        leaves,
        budget: opts.node_budget,
        stop: &stop,
    };
    let all: Vec<u32> = (0..table.len() as u32).collect();
    let parallel = !opts.deterministic && opts.threads > 1 && size > 0 && !all.is_empty();
    if !parallel {
        let mut banned = vec![0u64; table.words];
        return ctx.dfs(&all, &mut Vec::new(), &mut banned, size);
    }

    // Root-level parallelism: split the root pair's branches across
    // workers; branch i bans the vertices tried by branches 0..i.
    use rayon::prelude::*;
    let pivot = all[0] as usize;
    let set = table.set(pivot);
    let mut candidates: Vec<u32> = Vec::new();
    for (w, &bits) in set.iter().enumerate() {
        let mut word = bits;
        while word != 0 {
            candidates.push((w * 64 + word.trailing_zeros() as usize) as u32);
            word &= word - 1;
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .expect("thread pool");
    let budget_hit = AtomicBool::new(false);
    let found = pool.install(|| {
        candidates
            .par_iter()
            .enumerate()
            .find_map_any(|(i, &v)| {
                let mut banned = vec![0u64; table.words];
                for &earlier in &candidates[..i] {
                    banned[earlier as usize / 64] |= 1 << (earlier as usize % 64);
                }
                let next: Vec<u32> = all
                    .iter()
                    .copied()
                    .filter(|&q| !table.distinguishes(q as usize, v))
                    .collect();
                let mut chosen = vec![v];
                match ctx.dfs(&next, &mut chosen, &mut banned, size) {
                    Outcome::Found(set) => Some(set),
                    Outcome::Budget => {
                        budget_hit.store(true, Ordering::Relaxed);
                        None
                    }
                    Outcome::Refuted => None,
                }
            })
    });
    match found {
        Some(set) => Outcome::Found(set),
        None if budget_hit.load(Ordering::Relaxed) => Outcome::Budget,
        None => Outcome::Refuted,
    }
}

/// Exact (edge) metric dimension with a certificate.
///
/// The dimension is independent of the thread count; the witness is the
/// lexicographically first optimal set under the branching order when
/// `deterministic` is set.
pub fn exact_dimension(
    g: &Graph,
    kind: Kind,
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let d = g.distances();
    let rows = object_distances(g, &d, kind);
    let finish = |dimension: u32,
                  witness: LandmarkSet,
                  certificate: Certificate,
                  nodes: u64,
                  leaves: u64| SolveResult {
        kind,
        dimension,
        witness,
        certificate,
        stats: SearchStats {
            nodes,
            sets_checked: leaves,
            millis: start.elapsed().as_millis() as u64,
        },
    };
    if rows.len() <= 1 {
        return Ok(finish(0, LandmarkSet::empty(), Certificate::Certified, 0, 0));
    }
    let greedy = greedy_from(g.n(), &rows, &[]);
    let table = PairTable::build(g.n(), &rows);
    let mut lower = 1u32;
    if opts.structural_bounds {
        lower = lower.max(twin_lower_bound(g, &d, kind));
    }
    if !opts.pieces.is_empty() {
        lower = lower.max(piece_lower_bound(g, &d, &opts.pieces, kind)?);
    }
    let nodes = AtomicU64::new(0);
    let leaves = AtomicU64::new(0);
    for size in lower..=greedy.len() as u32 {
        match search_size(&table, size as usize, opts, &nodes, &leaves) {
            Outcome::Found(set) => {
                // Every smaller size was refuted by a complete search or
                // excluded by the structural floor.
                return Ok(finish(
                    size,
                    LandmarkSet::new(set),
                    Certificate::Certified,
                    nodes.load(Ordering::Relaxed),
                    leaves.load(Ordering::Relaxed),
                ));
            }
            Outcome::Refuted => continue,
            Outcome::Budget => {
                return Ok(finish(
                    greedy.len() as u32,
                    greedy,
                    Certificate::UpperBoundOnly,
                    nodes.load(Ordering::Relaxed),
                    leaves.load(Ordering::Relaxed),
                ));
            }
        }
    }
    unreachable!("the greedy generator bounds the search from above");
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifyOutcome {
    /// No landmark set of the given size is a generator; proof by
    /// exhaustion over all candidate sets.
    Refuted { sets_checked: u64 },
    /// A generator of the given size exists.
    Counterexample {
        witness: LandmarkSet,
        sets_checked: u64,
    },
}

/// Exhaustively enumerates every landmark set of the given size, in
/// lexicographic order, and checks each against all object pairs.
pub fn certify_no_generator_of_size(
    g: &Graph,
    kind: Kind,
    size: usize,
    set_budget: u64,
) -> Result<CertifyOutcome, SolveError> {
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let d = g.distances();
    let rows = object_distances(g, &d, kind);
    let n = g.n();
    let mut checked = 0u64;
    if size > n {
        return Ok(CertifyOutcome::Refuted { sets_checked: 0 });
    }
    let mut combo: Vec<u32> = (0..size as u32).collect();
    let mut keys: Vec<u128> = vec![0; rows.len()];
    let packable = size <= 8;
    loop {
        if checked >= set_budget {
            return Err(SolveError::CertifyBudgetExhausted { checked });
        }
        checked += 1;
        let resolved = if packable {
            for (o, row) in rows.iter().enumerate() {
                let mut key = 0u128;
                for &v in &combo {
                    key = key << 16 | row[v as usize] as u128;
                }
                keys[o] = key;
            }
            keys.sort_unstable();
            keys.windows(2).all(|w| w[0] != w[1])
        } else {
            first_collision(&rows, &combo).is_none()
        };
        if resolved {
            return Ok(CertifyOutcome::Counterexample {
                witness: LandmarkSet::new(combo),
                sets_checked: checked,
            });
        }
        if !next_combination(&mut combo, n) {
            return Ok(CertifyOutcome::Refuted {
                sets_checked: checked,
            });
        }
    }
}

/// Advances `combo` to the next size-k subset of 0..n in lexicographic
/// order; returns false after the last one.
fn next_combination(combo: &mut [u32], n: usize) -> bool {
    let k = combo.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < (n - k + i) as u32 {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Independent brute-force oracle: subsets in size order, smallest
/// first. Only for small graphs; used to cross-check the exact solver.
pub fn naive_oracle(g: &Graph, kind: Kind) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    if g.n() > ORACLE_VERTEX_CAP {
        return Err(SolveError::OracleCapExceeded {
            n: g.n(),
            cap: ORACLE_VERTEX_CAP,
        });
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let d = g.distances();
    let rows = object_distances(g, &d, kind);
    let mut checked = 0u64;
    for size in 0..=g.n() {
        let mut combo: Vec<u32> = (0..size as u32).collect();
        loop {
            checked += 1;
            if first_collision(&rows, &combo).is_none() {
                return Ok(SolveResult {
                    kind,
                    dimension: size as u32,
                    witness: LandmarkSet::new(combo),
                    certificate: Certificate::Certified,
                    stats: SearchStats {
                        nodes: 0,
                        sets_checked: checked,
                        millis: start.elapsed().as_millis() as u64,
                    },
                });
            }
            if !next_combination(&mut combo, g.n()) {
                break;
            }
        }
    }
    unreachable!("the full vertex set resolves every pair");
}
