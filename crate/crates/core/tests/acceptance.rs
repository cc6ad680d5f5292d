//! End-to-end acceptance checks. Each criterion prints exactly one
//! PASS/FAIL line.

use metricdim::chain::chain;
use metricdim::families::{complete, star, torus};
use metricdim::graph::Graph;
use metricdim::harness::{
    verify_bounds, verify_lemma3, verify_prop1, verify_star, verify_thm4, verify_torus,
};
use metricdim::resolver::{
    certify_no_generator_of_size, exact_dimension, naive_oracle, Certificate, CertifyOutcome,
    Kind, SolveOptions,
};
use metricdim::subdivision::subdivide;

fn report(criterion: &str, pass: bool) {
    println!(
        "acceptance: {criterion} ... {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "acceptance criterion failed: {criterion}");
}

#[test]
fn criterion_1_subdivided_complete_graphs() {
    let report_ = verify_prop1(&[4, 5, 6, 7, 8], &SolveOptions::default());
    report("dim/edim of S(K_n), n = 4..8, certified", report_.pass);
}

#[test]
fn criterion_2_minus_matching_formulas() {
    let report_ = verify_thm4(&[(7, 1), (9, 1), (7, 0)], &SolveOptions::default());
    report("dim/edim of S(K_n^k) match the formulas", report_.pass);
}

#[test]
#[ignore = "larger instance; run with --ignored"]
fn criterion_2_extended_minus_matching() {
    let report_ = verify_thm4(&[(10, 1)], &SolveOptions::default());
    report("dim/edim of S(K_10^1) match the formulas", report_.pass);
}

#[test]
fn criterion_3_equality_pattern() {
    let opts = SolveOptions::default();
    let mut ok = true;
    for (n, k) in [(7usize, 1usize), (9, 1), (7, 0)] {
        let base = metricdim::complete_minus_matching(n, k).unwrap();
        let (sg, _) = subdivide(&base);
        let dim = exact_dimension(&sg, Kind::VertexMetric, &opts).unwrap();
        let edim = exact_dimension(&sg, Kind::EdgeMetric, &opts).unwrap();
        ok &= dim.certificate == Certificate::Certified
            && edim.certificate == Certificate::Certified;
        let diff = dim.dimension as i64 - edim.dimension as i64;
        ok &= diff == if n % 3 == 0 { 0 } else { 1 };
    }
    report("dim = edim iff n = 0 mod 3, else they differ by 1", ok);
}

#[test]
fn criterion_4_chain_4_6() {
    let mut ok = true;

    let layout = chain(4, 6).unwrap();
    ok &= layout
        .graph()
        .articulation_points()
        .unwrap()
        .is_empty();

    // edim = 4: witness of size 4 plus an exhaustive size-3 refutation
    // checking all C(56, 3) = 27720 sets.
    match certify_no_generator_of_size(layout.graph(), Kind::EdgeMetric, 3, u64::MAX) {
        Ok(CertifyOutcome::Refuted { sets_checked }) => ok &= sets_checked == 27_720,
        _ => ok = false,
    }

    // Each S(K_7) piece: dim 5 certified by C(28, 4) = 20475 refutations.
    let (sk7, _) = subdivide(&complete(7).unwrap());
    match certify_no_generator_of_size(&sk7, Kind::VertexMetric, 4, u64::MAX) {
        Ok(CertifyOutcome::Refuted { sets_checked }) => ok &= sets_checked == 20_475,
        _ => ok = false,
    }

    let report_ = verify_lemma3(&[(4, 6)], &SolveOptions::default());
    ok &= report_.pass;

    report(
        "chain(4,6): 2-connected, edim 4 and dim 6 fully certified",
        ok,
    );
}

#[test]
fn criterion_5_stars_exceed_the_bound() {
    let report_ = verify_star(&[9, 10], &SolveOptions::default());
    let mut ok = report_.pass;
    // The strictness rows must actually assert the inequality here.
    ok &= report_
        .rows
        .iter()
        .filter(|r| r.instance.contains("strictness"))
        .all(|r| r.certificate == "derived");
    report("subdivided stars: dim = edim = n - 2 > ceil(2n/3)", ok);
}

#[test]
fn criterion_6_torus() {
    let report_ = verify_torus(&SolveOptions::default());
    let g = torus(4, 4).unwrap();
    report(
        "C4 x C4: dim 4, edim 3, certified",
        report_.pass && g.n() == 16,
    );
}

/// All connected graphs on up to 6 vertices, enumerated by adjacency
/// bitmask.
fn all_connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, edges).unwrap();
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

#[test]
fn criterion_7_oracle_equivalence() {
    let opts = SolveOptions::default();
    let mut ok = true;
    let mut graphs = 0usize;
    for n in 1..=6 {
        for g in all_connected_graphs(n) {
            graphs += 1;
            for kind in [Kind::VertexMetric, Kind::EdgeMetric] {
                let exact = exact_dimension(&g, kind, &opts).unwrap();
                let oracle = naive_oracle(&g, kind).unwrap();
                ok &= exact.dimension == oracle.dimension
                    && exact.certificate == Certificate::Certified;
            }
        }
    }
    ok &= graphs > 26_000; // 26704 connected labelled graphs on 6 vertices alone
    report(
        "search agrees with the brute-force oracle on all connected graphs up to 6 vertices",
        ok,
    );
}

#[test]
fn criterion_8_random_builder_sweep() {
    let report_ = verify_bounds(200, 12, 0.5, 0);
    report(
        "generator builders pass their checkers on 200 random base graphs",
        report_.pass,
    );
}

#[test]
fn star_formulas_hold_exactly() {
    // Supporting check for criterion 5: the values really are n - 2.
    let opts = SolveOptions::default();
    let (sg, _) = subdivide(&star(9).unwrap());
    let dim = exact_dimension(&sg, Kind::VertexMetric, &opts).unwrap();
    let edim = exact_dimension(&sg, Kind::EdgeMetric, &opts).unwrap();
    assert_eq!((dim.dimension, edim.dimension), (7, 7));
}
