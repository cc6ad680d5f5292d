//! Scripted verification suites. Each suite recomputes its expected
//! values from the closed-form formulas at run time, solves the
//! instances with certificates, and emits a machine-readable report.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chain::chain;
use crate::families::{complete, complete_minus_matching, star, torus};
use crate::graph::Graph;
use crate::resolver::{
    certify_no_generator_of_size, exact_dimension, is_generator, piece_lower_bound,
    Certificate, CertifyOutcome, Kind, SolveError, SolveOptions, SolveResult,
};
use crate::subdivision::{find_p3_packing, subdivide, theorem2_generator, theorem3_generator};

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub instance: String,
    pub expected: String,
    pub provenance: String,
    pub computed: String,
    pub certificate: String,
    pub millis: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub rows: Vec<ReportRow>,
    pub pass: bool,
    pub seed: u64,
    pub extended: bool,
}

impl VerificationReport {
    fn new(suite: &str, rows: Vec<ReportRow>, seed: u64, extended: bool) -> Self {
        let pass = rows.iter().all(|r| r.pass);
        VerificationReport {
            suite: suite.to_string(),
            rows,
            pass,
            seed,
            extended,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable table, one line per row.
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.suite));
        for row in &self.rows {
            out.push_str(&format!(
                "  [{}] {:<28} expected {:<22} computed {:<22} ({}, {} ms){}\n",
                if row.pass { "ok" } else { "FAIL" },
                row.instance,
                row.expected,
                row.computed,
                row.certificate,
                row.millis,
                row.note
                    .as_deref()
                    .map(|n| format!("  -- {n}"))
                    .unwrap_or_default(),
            ));
        }
        out.push_str(&format!(
            "  result: {}\n",
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

struct RowBuilder {
    instance: String,
    start: Instant,
}

impl RowBuilder {
    fn new(instance: impl Into<String>) -> Self {
        RowBuilder {
            instance: instance.into(),
            start: Instant::now(),
        }
    }

    fn row(
        self,
        expected: impl Into<String>,
        provenance: impl Into<String>,
        computed: impl Into<String>,
        certificate: impl Into<String>,
        pass: bool,
    ) -> ReportRow {
        ReportRow {
            instance: self.instance,
            expected: expected.into(),
            provenance: provenance.into(),
            computed: computed.into(),
            certificate: certificate.into(),
            millis: self.start.elapsed().as_millis() as u64,
            pass,
            note: None,
        }
    }
}

fn cert_str(c: Certificate) -> &'static str {
    match c {
        Certificate::Certified => "certified",
        Certificate::UpperBoundOnly => "upper_bound_only",
    }
}

/// Solve with certificate; an `UpperBoundOnly` outcome never satisfies
/// a row.
fn solved_row(
    instance: String,
    g: &Graph,
    kind: Kind,
    expected: u32,
    provenance: &str,
    opts: &SolveOptions,
) -> (ReportRow, Option<SolveResult>) {
    let b = RowBuilder::new(instance);
    let what = match kind {
        Kind::VertexMetric => "dim",
        Kind::EdgeMetric => "edim",
    };
    match exact_dimension(g, kind, opts) {
        Ok(result) => {
            let pass = result.dimension == expected && result.certificate == Certificate::Certified;
            let mut row = b.row(
                format!("{what}={expected}"),
                provenance,
                format!("{what}={}", result.dimension),
                cert_str(result.certificate),
                pass,
            );
            if result.certificate == Certificate::UpperBoundOnly {
                row.note = Some("inconclusive: node budget exhausted".into());
            }
            (row, Some(result))
        }
        Err(err) => {
            let mut row = b.row(format!("{what}={expected}"), provenance, "error", "none", false);
            row.note = Some(err.to_string());
            (row, None)
        }
    }
}

fn dim_formula(n: usize) -> u32 {
    (2 * n).div_ceil(3) as u32
}

fn edim_formula(n: usize) -> u32 {
    (2 * n - 2).div_ceil(3) as u32
}

/// Certified dim and edim of subdivided complete graphs: dim = ceil(2n/3)
/// except n = 5 (where it drops to 3), edim = ceil((2n-2)/3).
pub fn verify_prop1(ns: &[usize], opts: &SolveOptions) -> VerificationReport {
    let mut rows = Vec::new();
    for &n in ns {
        let (sg, _) = subdivide(&complete(n).expect("n >= 4"));
        let expected_dim = if n == 5 { 3 } else { dim_formula(n) };
        let dim_prov = if n == 5 {
            "exceptional value for the 5-clique subdivision".to_string()
        } else {
            "formula ceil(2n/3)".to_string()
        };
        let (row, _) = solved_row(
            format!("S(K_{n})"),
            &sg,
            Kind::VertexMetric,
            expected_dim,
            &dim_prov,
            opts,
        );
        rows.push(row);
        let (row, _) = solved_row(
            format!("S(K_{n})"),
            &sg,
            Kind::EdgeMetric,
            edim_formula(n),
            "formula ceil((2n-2)/3)",
            opts,
        );
        rows.push(row);
    }
    VerificationReport::new("prop1", rows, 0, false)
}

/// Certified dim and edim of S(K_n^k) against the closed formulas, plus
/// the equality-vs-difference-1 pattern between them.
pub fn verify_thm4(pairs: &[(usize, usize)], opts: &SolveOptions) -> VerificationReport {
    let mut rows = Vec::new();
    for &(n, k) in pairs {
        let ell = n % 3;
        let bound = (3 * k + 4 * ell).saturating_sub(2).max(4);
        let instance = format!("S(K_{n}^{k})");
        if n < bound {
            let b = RowBuilder::new(instance);
            let mut row = b.row(
                "n >= max(4, 3k+4l-2)",
                "formula precondition",
                format!("n={n} below bound {bound}"),
                "skipped",
                true,
            );
            row.note = Some("precondition violated; row skipped".into());
            rows.push(row);
            continue;
        }
        let base = complete_minus_matching(n, k).expect("2k <= n");
        let (sg, _) = subdivide(&base);
        let (dim_row, dim_res) = solved_row(
            instance.clone(),
            &sg,
            Kind::VertexMetric,
            dim_formula(n),
            "formula ceil(2n/3)",
            opts,
        );
        rows.push(dim_row);
        let (edim_row, edim_res) = solved_row(
            instance.clone(),
            &sg,
            Kind::EdgeMetric,
            edim_formula(n),
            "formula ceil((2n-2)/3)",
            opts,
        );
        rows.push(edim_row);
        if let (Some(dim), Some(edim)) = (dim_res, edim_res) {
            let expected_diff = if n % 3 == 0 { 0 } else { 1 };
            let diff = dim.dimension as i64 - edim.dimension as i64;
            let b = RowBuilder::new(format!("{instance} pattern"));
            rows.push(b.row(
                format!("dim - edim = {expected_diff}"),
                "equal iff n = 0 mod 3, else difference exactly 1",
                format!("dim - edim = {diff}"),
                "derived",
                diff == expected_diff,
            ));
        }
    }
    VerificationReport::new("thm4", rows, 0, false)
}

/// Full certification of a chain instance: 2-connectivity, both basis
/// candidates, exhaustive refutation below c1, the decomposition lower
/// bound reaching c2, and the cross-chain distance.
pub fn verify_lemma3(pairs: &[(u32, u32)], opts: &SolveOptions) -> VerificationReport {
    let mut rows = Vec::new();
    for &(c1, c2) in pairs {
        let layout = match chain(c1, c2) {
            Ok(layout) => layout,
            Err(err) => {
                let b = RowBuilder::new(format!("chain({c1},{c2})"));
                let mut row = b.row("valid parameters", "construction", "error", "none", false);
                row.note = Some(err.to_string());
                rows.push(row);
                continue;
            }
        };
        let name = format!("chain({c1},{c2})");
        let g = layout.graph();
        let d = g.distances();
        let k = layout.k();

        // (a) no cut vertices
        let b = RowBuilder::new(format!("{name} 2-connected"));
        let cuts = g.articulation_points().expect("chain is connected");
        rows.push(b.row(
            "no cut vertices",
            "chain construction claim",
            format!("{} cut vertices", cuts.len()),
            "exhaustive",
            cuts.is_empty(),
        ));

        // (b) edge basis candidate of size c1 passes the checker
        let b = RowBuilder::new(format!("{name} edge basis"));
        let edge_candidate = layout.edge_basis_candidate();
        let edge_ok = edge_candidate.set.len() as u32 == c1
            && is_generator(g, &d, &edge_candidate.set, Kind::EdgeMetric);
        let mut row = b.row(
            format!("generator of size {c1}"),
            "swapped last-copy basis",
            format!("size {}", edge_candidate.set.len()),
            "checker",
            edge_ok,
        );
        if edge_candidate.fell_back {
            row.note = Some("structural candidate failed; greedy fallback used".into());
        }
        rows.push(row);

        // (c) exhaustive refutation of size c1 - 1 edge sets
        let b = RowBuilder::new(format!("{name} edim floor"));
        match certify_no_generator_of_size(g, Kind::EdgeMetric, c1 as usize - 1, opts.node_budget) {
            Ok(CertifyOutcome::Refuted { sets_checked }) => rows.push(b.row(
                format!("no edge generator of size {}", c1 - 1),
                "exhaustive enumeration",
                format!("refuted, {sets_checked} sets checked"),
                "exhaustive",
                true,
            )),
            Ok(CertifyOutcome::Counterexample { witness, .. }) => rows.push(b.row(
                format!("no edge generator of size {}", c1 - 1),
                "exhaustive enumeration",
                format!("counterexample {witness}"),
                "exhaustive",
                false,
            )),
            Err(err) => {
                let mut row = b.row(
                    format!("no edge generator of size {}", c1 - 1),
                    "exhaustive enumeration",
                    "inconclusive",
                    "none",
                    false,
                );
                row.note = Some(err.to_string());
                rows.push(row);
            }
        }

        // (d) metric basis candidate of size c2 passes the checker
        let b = RowBuilder::new(format!("{name} metric basis"));
        let metric_candidate = layout.metric_basis_candidate();
        let metric_ok = metric_candidate.set.len() as u32 == c2
            && is_generator(g, &d, &metric_candidate.set, Kind::VertexMetric);
        let mut row = b.row(
            format!("generator of size {c2}"),
            "swapped last-copy basis plus interior vertices",
            format!("size {}", metric_candidate.set.len()),
            "checker",
            metric_ok,
        );
        if metric_candidate.fell_back {
            row.note = Some("structural candidate failed; greedy fallback used".into());
        }
        rows.push(row);

        // (e) decomposition lower bound reaches c2, with piece dimensions
        // certified on the copies by exhaustive refutation.
        let b = RowBuilder::new(format!("{name} dim floor"));
        let mut copy_dims = Vec::with_capacity(k);
        let mut piece_note = Vec::new();
        let mut pieces_ok = true;
        for (copy_n, copies) in [(7usize, k - 1), (layout.q() as usize, 1)] {
            if copies == 0 {
                continue;
            }
            let (copy_sg, _) = subdivide(&complete(copy_n).expect("valid"));
            let solve = exact_dimension(&copy_sg, Kind::VertexMetric, opts);
            let dim = match solve {
                Ok(r) if r.certificate == Certificate::Certified => r.dimension,
                _ => {
                    pieces_ok = false;
                    0
                }
            };
            if pieces_ok && dim > 0 {
                match certify_no_generator_of_size(
                    &copy_sg,
                    Kind::VertexMetric,
                    dim as usize - 1,
                    opts.node_budget,
                ) {
                    Ok(CertifyOutcome::Refuted { sets_checked }) => piece_note.push(format!(
                        "S(K_{copy_n}): dim {dim}, {sets_checked} refutations"
                    )),
                    _ => pieces_ok = false,
                }
            }
            copy_dims.extend(std::iter::repeat_n(dim, copies));
        }
        let bound = if pieces_ok {
            let pieces = layout.boundary_pieces(Kind::VertexMetric, &copy_dims);
            piece_lower_bound(g, &d, &pieces, Kind::VertexMetric)
        } else {
            Err(SolveError::UncertifiedPiece)
        };
        match bound {
            Ok(value) => {
                let mut row = b.row(
                    format!("piece lower bound {c2}"),
                    "per-copy certified dimensions minus boundary sizes",
                    format!("piece lower bound {value}"),
                    "certified",
                    value == c2,
                );
                row.note = Some(piece_note.join("; "));
                rows.push(row);
            }
            Err(err) => {
                let mut row = b.row(
                    format!("piece lower bound {c2}"),
                    "per-copy certified dimensions minus boundary sizes",
                    "error",
                    "none",
                    false,
                );
                row.note = Some(err.to_string());
                rows.push(row);
            }
        }

        // (f) the cross-chain distance between mirrored connector midpoints
        let b = RowBuilder::new(format!("{name} span"));
        let expected_a = 3 * (k as u16 - 1);
        let actual = d.dist(layout.midpoint(k - 1, 0, 1), layout.midpoint(0, 0, 1));
        rows.push(b.row(
            format!("distance {expected_a}"),
            "three steps per junction",
            format!("distance {actual}"),
            "derived",
            actual == expected_a,
        ));
    }
    VerificationReport::new("lemma3", rows, 0, false)
}

/// Random-base-graph property suite for the two generator builders.
/// Rows where the required packing does not exist are recorded as
/// vacuous.
pub fn verify_bounds(
    trials: usize,
    n_max: usize,
    edge_prob: f64,
    seed: u64,
) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for trial in 0..trials {
        let g = random_connected_graph(&mut rng, n_max, edge_prob);
        let n = g.n();
        let b = RowBuilder::new(format!("trial {trial} (n={n}, m={})", g.m()));
        let (sg, lab) = subdivide(&g);
        let d = sg.distances();
        let mut parts = Vec::new();
        let mut ok = true;
        let mut vacuous = true;
        if let Some(packing) = find_p3_packing(&g, n / 3) {
            vacuous = false;
            let t = theorem2_generator(&lab, &packing).expect("packing validated");
            let good =
                t.len() as u32 == dim_formula(n) && is_generator(&sg, &d, &t, Kind::VertexMetric);
            ok &= good;
            parts.push(format!("vertex builder size {} {}", t.len(), if good { "ok" } else { "BAD" }));
        } else {
            parts.push("vertex builder vacuous (no packing)".into());
        }
        if let Some(packing) = find_p3_packing(&g, (n - 1) / 3) {
            vacuous = false;
            let t = theorem3_generator(&lab, &packing).expect("packing validated");
            let good =
                t.len() as u32 == edim_formula(n) && is_generator(&sg, &d, &t, Kind::EdgeMetric);
            ok &= good;
            parts.push(format!("edge builder size {} {}", t.len(), if good { "ok" } else { "BAD" }));
        } else {
            parts.push("edge builder vacuous (no packing)".into());
        }
        let mut row = b.row(
            "builder outputs pass their checkers at formula size",
            "builder guarantees",
            parts.join("; "),
            if vacuous { "vacuous" } else { "checker" },
            ok,
        );
        if vacuous {
            row.note = Some("no packing of the required size".into());
        }
        rows.push(row);
    }
    VerificationReport::new("bounds", rows, seed, false)
}

fn random_connected_graph(rng: &mut ChaCha8Rng, n_max: usize, edge_prob: f64) -> Graph {
    loop {
        let n = rng.random_range(3..=n_max);
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if rng.random_bool(edge_prob) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges).expect("valid random graph");
        if g.is_connected() {
            return g;
        }
    }
}

/// Certified dim = edim = n - 2 on subdivided stars, exceeding the
/// ceil(2n/3) bound once n >= 9.
pub fn verify_star(ns: &[usize], opts: &SolveOptions) -> VerificationReport {
    let mut rows = Vec::new();
    for &n in ns {
        let (sg, _) = subdivide(&star(n).expect("n >= 2"));
        let expected = (n - 2) as u32;
        let (row, dim_res) = solved_row(
            format!("S(K_{},1)", n - 1),
            &sg,
            Kind::VertexMetric,
            expected,
            "star subdivisions need all but two leg tips",
            opts,
        );
        rows.push(row);
        let (row, _) = solved_row(
            format!("S(K_{},1)", n - 1),
            &sg,
            Kind::EdgeMetric,
            expected,
            "star subdivisions need all but two leg tips",
            opts,
        );
        rows.push(row);
        if n >= 9 {
            let b = RowBuilder::new(format!("S(K_{},1) strictness", n - 1));
            let computed = dim_res.map(|r| r.dimension).unwrap_or(0);
            rows.push(b.row(
                format!("{} > {}", expected, dim_formula(n)),
                "packing hypothesis fails, bound formula does not apply",
                format!("{} vs {}", computed, dim_formula(n)),
                "derived",
                computed > dim_formula(n),
            ));
        } else {
            let b = RowBuilder::new(format!("S(K_{},1) strictness", n - 1));
            let mut row = b.row(
                "not asserted",
                "no claim below n = 9",
                "recorded only",
                "skipped",
                true,
            );
            row.note = Some("inequality not asserted for n < 9".into());
            rows.push(row);
        }
    }
    VerificationReport::new("star", rows, 0, false)
}

/// The 4x4 torus: certified dim 4 and edim 3.
pub fn verify_torus(opts: &SolveOptions) -> VerificationReport {
    let g = torus(4, 4).expect("4 >= 3");
    let mut rows = Vec::new();
    let b = RowBuilder::new("C4 x C4 order");
    rows.push(b.row(
        "16 vertices",
        "product of two 4-cycles",
        format!("{} vertices", g.n()),
        "derived",
        g.n() == 16,
    ));
    let (row, _) = solved_row(
        "C4 x C4".into(),
        &g,
        Kind::VertexMetric,
        4,
        "known torus values",
        opts,
    );
    rows.push(row);
    let (row, _) = solved_row(
        "C4 x C4".into(),
        &g,
        Kind::EdgeMetric,
        3,
        "known torus values",
        opts,
    );
    rows.push(row);
    VerificationReport::new("torus", rows, 0, false)
}

/// Default and extended instance lists for the named suites.
pub fn run_suite(
    name: &str,
    extended: bool,
    seed: u64,
    opts: &SolveOptions,
) -> Option<Vec<VerificationReport>> {
    let mark = |mut report: VerificationReport| {
        report.extended = extended;
        report.seed = seed;
        report
    };
    let reports = match name {
        "prop1" => {
            let ns: Vec<usize> = if extended { (4..=10).collect() } else { (4..=8).collect() };
            vec![mark(verify_prop1(&ns, opts))]
        }
        "thm4" => {
            let mut pairs = vec![(7, 1), (9, 1), (7, 0)];
            if extended {
                pairs.extend([(10, 1), (10, 2)]);
            }
            vec![mark(verify_thm4(&pairs, opts))]
        }
        "lemma3" => {
            let mut pairs = vec![(4, 6)];
            if extended {
                pairs.extend([(4, 7), (5, 7)]);
            }
            vec![mark(verify_lemma3(&pairs, opts))]
        }
        "bounds" => vec![mark(verify_bounds(200, 12, 0.5, seed))],
        "star" => {
            let ns: &[usize] = if extended { &[9, 10] } else { &[9] };
            vec![mark(verify_star(ns, opts))]
        }
        "torus" => vec![mark(verify_torus(opts))],
        "all" => {
            let mut out = Vec::new();
            for suite in ["prop1", "thm4", "lemma3", "bounds", "star", "torus"] {
                out.extend(run_suite(suite, extended, seed, opts).expect("known suite"));
            }
            out
        }
        _ => return None,
    };
    Some(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prop1_small() {
        let report = verify_prop1(&[4, 5], &SolveOptions::default());
        assert!(report.pass, "{}", report.table());
    }

    #[test]
    fn torus_suite() {
        let report = verify_torus(&SolveOptions::default());
        assert!(report.pass, "{}", report.table());
    }

    #[test]
    fn bounds_reproducible() {
        let a = verify_bounds(5, 8, 0.5, 7);
        let b = verify_bounds(5, 8, 0.5, 7);
        assert!(a.pass);
        let strip = |r: &VerificationReport| {
            r.rows
                .iter()
                .map(|row| (row.instance.clone(), row.computed.clone(), row.pass))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn thm4_precondition_skip() {
        // (4, 1): l = 1, bound = max(4, 3 + 4 - 2) = 5 > 4.
        let report = verify_thm4(&[(4, 1)], &SolveOptions::default());
        assert!(report.pass);
        assert_eq!(report.rows.len(), 1);
        assert!(report.rows[0].note.as_deref().unwrap().contains("skipped"));
    }

    #[test]
    fn budget_exhaustion_fails_suite() {
        let opts = SolveOptions {
            node_budget: 1,
            ..SolveOptions::default()
        };
        let report = verify_prop1(&[6], &opts);
        assert!(!report.pass);
        assert!(report.rows.iter().any(|r| r
            .note
            .as_deref()
            .is_some_and(|n| n.contains("inconclusive"))));
    }

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("nope", false, 0, &SolveOptions::default()).is_none());
    }
}
