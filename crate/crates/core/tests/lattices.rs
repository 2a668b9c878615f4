use snake_dimers::permutation_bridge::{catalan_number, euler_number};
use snake_dimers::snake_core::*;
use snake_dimers::twist_lattice::*;

fn lattice(word: &str) -> TwistLattice {
    let g = build_snake(&word.parse().unwrap());
    build_lattice(&g, &standard_labeling(&g)).unwrap()
}

#[test]
fn straight_and_zigzag_sizes() {
    for t in 1..=5 {
        let s = lattice(&SnakeWord::straight(t).to_string());
        assert_eq!(num_bigint::BigUint::from(s.len()), euler_number(t + 2));
        let z = lattice(&SnakeWord::zigzag(t).to_string());
        assert_eq!(num_bigint::BigUint::from(z.len()), catalan_number(t + 1));
    }
}

#[test]
fn lattices_are_distributive_both_ways() {
    for len in 0..=3 {
        for w in SnakeWord::all_of_length(len) {
            let l = lattice(&w.to_string());
            let h = l.diagram();
            assert!(h.is_graded() && h.is_lattice(), "{w}");
            assert!(h.is_distributive() && h.is_distributive_exhaustive(), "{w}");
            assert_eq!(h.minimum(), Some(l.minimum()));
            assert_eq!(h.maximum(), Some(l.maximum()));
        }
    }
}

#[test]
fn zigzag_posets_are_staircases() {
    for t in 1..=5 {
        let l = lattice(&SnakeWord::zigzag(t).to_string());
        let b = birkhoff_round_trip(l.diagram()).unwrap();
        assert_eq!(b.poset.len(), t * (t + 1) / 2, "t = {t}");
        assert_eq!(ideal_lattice(&b.poset).len(), l.len());
    }
}

#[test]
fn pentagon_is_not_distributive() {
    let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    let n5 = HasseDiagram::new(labels, vec![(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
    assert!(n5.is_lattice());
    assert!(!n5.is_distributive());
    assert!(!n5.is_distributive_exhaustive());
    assert!(birkhoff_round_trip(&n5).is_err());
}

#[test]
fn diamond_is_not_distributive() {
    let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    let m3 = HasseDiagram::new(labels, vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
    assert!(m3.is_lattice());
    assert!(!m3.is_distributive());
    assert!(!m3.is_distributive_exhaustive());
}

#[test]
fn diagram_json_round_trip() {
    let l = lattice("RU");
    let h = l.diagram();
    let back = HasseDiagram::from_json(&h.to_json()).unwrap();
    assert_eq!(back.covers(), h.covers());
    assert_eq!(back.labels(), h.labels());
    assert!(h.to_dot().starts_with("digraph"));
}

#[test]
fn rank_polynomial_counts_elements() {
    let l = lattice("RRU");
    let total: num_bigint::BigInt = l.rank_polynomial().eval_ones();
    assert_eq!(total, num_bigint::BigInt::from(l.len()));
}
