use std::collections::BTreeSet;

use num_bigint::BigUint;
use snake_dimers::duality_paths::*;
use snake_dimers::permutation_bridge::{catalan_number, euler_number};

fn all_chains(len: usize, max_dim: u32) -> Vec<Vec<Factor>> {
    let mut out: Vec<Vec<Factor>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for chain in &out {
            let starts: Vec<u32> = match chain.last() {
                Some(f) => vec![f.b],
                None => (0..=max_dim).collect(),
            };
            for a in starts {
                for b in 0..=max_dim {
                    for f in [Factor::u(a, b), Factor::l(a, b)] {
                        let mut c: Vec<Factor> = chain.clone();
                        c.push(f);
                        next.push(c);
                    }
                }
            }
        }
        out = next;
    }
    out
}

#[test]
fn short_chains_multiply_like_their_blocks() {
    for len in 1..=3 {
        for chain in all_chains(len, 3) {
            let net = network_for_factors(&chain).unwrap();
            assert_eq!(path_weight_matrix(&net), structural_product(&chain).unwrap(), "{chain:?}");
        }
    }
}

#[test]
fn path_counts_match_the_matrix() {
    let chain = parse_chain("U22 L23 U32").unwrap();
    let net = network_for_factors(&chain).unwrap();
    let m = path_weight_matrix(&net);
    for i in 0..net.sources().len() {
        for j in 0..net.sinks().len() {
            assert_eq!(Some(net.count_paths(i, j)), m.get(i, j).to_biguint());
        }
    }
}

#[test]
fn chain_text_round_trips() {
    let chain = parse_chain("U11 * L12 U2,3").unwrap();
    let text: Vec<String> = chain.iter().map(|f| f.to_string()).collect();
    assert_eq!(parse_chain(&text.join(" ")).unwrap(), chain);
    assert!(parse_chain("X12").is_err());
}

#[test]
fn euler_and_catalan_chains_count_paths() {
    for n in 2..=8 {
        let (factors, s, t) = euler_chain(n).unwrap();
        let net = network_for_factors(&factors).unwrap();
        assert_eq!(net.count_paths(s, t), euler_number(n), "n = {n}");
        let (factors, s, t) = catalan_chain(n).unwrap();
        let net = network_for_factors(&factors).unwrap();
        assert_eq!(net.count_paths(s, t), catalan_number(n), "n = {n}");
    }
}

fn check_matching_graph(g: &MatchingGraph, want: &BigUint) {
    assert!(g.is_bipartite());
    assert!(g.is_perfectly_oriented());
    assert_eq!(&count_perfect_matchings(g), want);
    let paths = matching_paths(g);
    assert_eq!(&BigUint::from(paths.len()), want);
    let matchings: BTreeSet<Vec<usize>> = paths
        .iter()
        .map(|p| {
            let mut m = path_to_matching(g, p).unwrap();
            m.sort_unstable();
            m
        })
        .collect();
    assert_eq!(&BigUint::from(matchings.len()), want);
}

#[test]
fn matching_graphs_count_both_ways() {
    for n in 2..=7 {
        check_matching_graph(&euler_matching_graph(n).unwrap(), &euler_number(n));
    }
    for n in 1..=6 {
        check_matching_graph(&catalan_matching_graph(n).unwrap(), &catalan_number(n));
    }
}

#[test]
fn orientation_of_an_arbitrary_chain() {
    let chain = parse_chain("U12 L22 U21").unwrap();
    let net = network_for_factors(&chain).unwrap();
    let m = path_weight_matrix(&net);
    for s in 0..net.sources().len() {
        for t in 0..net.sinks().len() {
            let paths = m.get(s, t).to_biguint().unwrap();
            match perfectly_orient(&net, s, t) {
                Ok(g) => check_matching_graph(&g, &paths),
                Err(_) => assert_eq!(paths, BigUint::from(0u32), "ports {s} {t}"),
            }
        }
    }
}
