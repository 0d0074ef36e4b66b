//! Scan counts and catalogues fixed from verified runs. Each value is checked
//! against the brute-force reference before being compared to the library.

mod common;

use std::collections::BTreeSet;

use common::{naive_t5, permutations, scan, Naive};
use hambypass::verify::{
    check_theorem12, check_theorem8, check_theorem9, explore_no_bypass, Mode, RunConfig, TheoremReport,
};
use hambypass::{Condition, Digraph};

/// Strong digraphs satisfying `A_0`, by order.
const STRONG_A0: [(usize, u64); 2] = [(4, 660), (5, 97_524)];
/// Strong digraphs with `d(x) + d(y) >= 2n - 2` on non-adjacent pairs.
const STRONG_DEGREE_SUM_2N_MINUS_2: [(usize, u64); 2] = [(4, 1_092), (5, 239_871)];
/// Strong Meyniel digraphs.
const STRONG_MEYNIEL: [(usize, u64); 2] = [(4, 732), (5, 134_964)];

const EXPLORE_THM13_N5: &[&str] = &[
    "12482", "12825", "12935", "13693", "14296", "14863", "18565", "1aca7", "493c9", "56395", "8253c",
];
const EXPLORE_THM13_N5_SURVIVORS: u64 = 160_608;
const EXPLORE_THM14_N4: &[&str] = &["2a2", "2a3", "2ab"];
const EXPLORE_THM14_N4_SURVIVORS: u64 = 606;

fn cfg() -> RunConfig {
    RunConfig::default()
}

fn naive(g: &Digraph) -> Naive {
    Naive::from_arcs(g.order(), &g.arcs().collect::<Vec<_>>())
}

#[test]
fn strong_a0_counts() {
    for (n, want) in STRONG_A0 {
        let oracle = scan(n, |g| g.a_k(0) && g.strong()).len() as u64;
        assert_eq!(oracle, want, "oracle at n = {n}");
        let r = check_theorem12(n, Mode::Exhaustive, &cfg()).unwrap();
        assert_eq!(r.passed_filters, want);
        assert_eq!(r.scanned, 1 << (n * (n - 1)));
    }
}

#[test]
fn degree_sum_and_meyniel_counts() {
    for (n, want) in STRONG_DEGREE_SUM_2N_MINUS_2 {
        assert_eq!(scan(n, |g| g.degree_sum(-2) && g.strong()).len() as u64, want);
        assert_eq!(check_theorem8(n, Mode::Exhaustive, &cfg()).unwrap().passed_filters, want);
    }
    for (n, want) in STRONG_MEYNIEL {
        assert_eq!(scan(n, |g| g.degree_sum(-1) && g.strong()).len() as u64, want);
        assert_eq!(check_theorem9(n, Mode::Exhaustive, &cfg()).unwrap().passed_filters, want);
    }
}

#[test]
fn bypass_free_a0_digraphs_at_order_five_are_the_labelled_t5_copies() {
    let t = naive_t5();
    let copies: BTreeSet<Vec<(usize, usize)>> = permutations(5)
        .iter()
        .map(|p| {
            let mut arcs: Vec<_> = t.arcs().iter().map(|&(u, v)| (p[u], p[v])).collect();
            arcs.sort();
            arcs
        })
        .collect();
    let found: BTreeSet<Vec<(usize, usize)>> = scan(5, |g| g.a_k(0) && g.strong() && !g.has_bypass())
        .into_iter()
        .map(|(_, g)| g.arcs())
        .collect();
    assert_eq!(found, copies);
    let automorphisms = permutations(5)
        .iter()
        .filter(|p| t.arcs().iter().all(|&(u, v)| t.adj[p[u]][p[v]]))
        .count();
    assert_eq!(found.len() * automorphisms, 120);

    let r = check_theorem12(5, Mode::Exhaustive, &cfg()).unwrap();
    assert_eq!(r.exceptions.len(), 1);
    assert!(naive(&r.witnesses()[0]).isomorphic(&t));
}

fn check_catalogue(r: &TheoremReport, cond: Condition, hexes: &[&str], survivors: u64) {
    let got: Vec<_> = r.exceptions.iter().map(|e| e.canonical_hex.as_str()).collect();
    assert_eq!(got, hexes);
    assert_eq!(r.passed_filters, survivors);
    let reps: Vec<Naive> = r.witnesses().iter().map(naive).collect();
    for (i, a) in reps.iter().enumerate() {
        assert!(a.strong() && !a.has_bypass());
        for b in &reps[i + 1..] {
            assert!(!a.isomorphic(b));
        }
    }
    // Every bypass-free survivor is represented.
    let n = r.n;
    for mask in 0..1u64 << (n * (n - 1)) {
        let g = Digraph::from_arc_mask(n, mask);
        if !cond.holds(&g) {
            continue;
        }
        let ng = Naive::from_mask(n, mask);
        if ng.strong() && !ng.has_bypass() {
            assert!(reps.iter().any(|rep| rep.isomorphic(&ng)), "mask {mask:#x} unrepresented");
        }
    }
}

#[test]
fn explore_catalogues() {
    let r = explore_no_bypass(5, Condition::Thm13, Mode::Exhaustive, &cfg()).unwrap();
    check_catalogue(&r, Condition::Thm13, EXPLORE_THM13_N5, EXPLORE_THM13_N5_SURVIVORS);
    let r = explore_no_bypass(4, Condition::Thm14, Mode::Exhaustive, &cfg()).unwrap();
    check_catalogue(&r, Condition::Thm14, EXPLORE_THM14_N4, EXPLORE_THM14_N4_SURVIVORS);
}

#[test]
fn cross_theorem_consistency_at_order_five() {
    let a0 = Condition::AK { k: 0, inclusive: false };
    let explore = explore_no_bypass(5, a0, Mode::Exhaustive, &cfg()).unwrap();
    let thm12 = check_theorem12(5, Mode::Exhaustive, &cfg()).unwrap();
    assert_eq!(explore.exceptions, thm12.exceptions);
    assert_eq!(explore.passed_filters, thm12.passed_filters);
}
