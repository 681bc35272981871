use std::collections::{BTreeMap, HashSet};

use lossy_gossip::gossip::{
    construct_pessimal, element_length, enumerate_monoid, generators, is_irredundant_calls, verify_pessimal,
    EnumerationOptions, GossipState,
};
use lossy_gossip::trop::{phone_call_matrix, TropMatrix, TropScalar};

/// Breadth-first search over explicit min-plus matrices, independent of the bitset store.
fn naive_histogram(n: usize) -> BTreeMap<usize, u64> {
    let calls: Vec<TropMatrix> =
        generators(n).iter().map(|&(k, l)| phone_call_matrix(n, k, l, &TropScalar::zero()).unwrap()).collect();
    let mut seen: HashSet<TropMatrix> = HashSet::from([TropMatrix::identity(n)]);
    let mut frontier = vec![TropMatrix::identity(n)];
    let mut hist = BTreeMap::new();
    let mut depth = 0;
    while !frontier.is_empty() {
        hist.insert(depth, frontier.len() as u64);
        let mut next = Vec::new();
        for m in &frontier {
            for c in &calls {
                let p = m.tmul(c).unwrap();
                if seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    hist
}

#[test]
fn enumeration_matches_matrix_search() {
    for n in 1..=5 {
        let r = enumerate_monoid(n, &EnumerationOptions::default()).unwrap();
        assert_eq!(r.length_histogram, naive_histogram(n), "n = {n}");
    }
}

#[test]
fn state_dumps_round_trip() {
    let s = GossipState::identity(3).apply_call(0, 1).unwrap().apply_call(1, 2).unwrap();
    assert_eq!(GossipState::parse_dump(&s.dump()).unwrap(), s);
    assert_eq!(GossipState::from_matrix(&s.to_matrix()).unwrap(), s);
    assert_eq!(element_length(&s).unwrap(), Some(2));
    assert!(GossipState::parse_dump("3 1010").is_err());
}

#[test]
fn pessimal_chains_are_irredundant_prefix_free() {
    for n in 2..=6 {
        let calls = construct_pessimal(n);
        assert!(verify_pessimal(n, &calls));
        let mut longer = calls.clone();
        longer.push((0, 1));
        assert!(!verify_pessimal(n, &longer));
    }
    assert!(is_irredundant_calls(3, &[(0, 1), (1, 2), (0, 1)]).unwrap());
    assert!(!is_irredundant_calls(3, &[(0, 1), (0, 1)]).unwrap());
}
