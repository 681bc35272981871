//! Structural constructions on products of call matrices:
//! symmetric cores, metric decompositions, core witnesses and irredundant
//! products.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::calls::check_pair;
use super::{is_metric, Call, CallSequence, TropMatrix, TropScalar};
use crate::error::{Error, Result};

/// Unordered pairs `{i, j}` (as `(i, j)` with `i < j`) where `a_ij = a_ji`.
pub fn symmetric_core(a: &TropMatrix) -> BTreeSet<(usize, usize)> {
    let n = a.n();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| a.get(i, j) == a.get(j, i))
        .collect()
}

/// Whether the edges connect all of `0..n`.
pub fn is_connected(n: usize, edges: &BTreeSet<(usize, usize)>) -> bool {
    if n <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Writes a metric matrix as the product of its `C(n,2)` call matrices
/// `C_kl(a_kl)`, in lexicographic order of `(k, l)`.
pub fn metric_as_calls(a: &TropMatrix) -> Result<CallSequence> {
    if !is_metric(a) {
        return Err(Error::NotMetric);
    }
    let n = a.n();
    let calls = (0..n)
        .flat_map(|k| (k + 1..n).map(move |l| (k, l)))
        .map(|(k, l)| Call::new(k, l, a.get(k, l).clone()))
        .collect::<Result<Vec<_>>>()?;
    let seq = CallSequence::new(n, calls)?;
    debug_assert_eq!(&seq.product(), a);
    Ok(seq)
}

/// A call sequence whose product has symmetric core exactly `edges`.
///
/// Edge `t` (1-based) gets weight `1 + 2^-t` on the first pass and weight
/// `2^((p-1)·m + t)` on pass `p ≥ 1`. Passes repeat until a full pass leaves the
/// product unchanged; that final pass is not included.
pub fn core_witness(n: usize, edges: &[(usize, usize)]) -> Result<CallSequence> {
    let mut set = BTreeSet::new();
    for &(k, l) in edges {
        check_pair(n, k, l)?;
        set.insert((k.min(l), k.max(l)));
    }
    if !is_connected(n, &set) {
        return Err(Error::Disconnected);
    }
    let m = edges.len();
    let two = BigRational::from_integer(BigInt::from(2));
    let pow2 = |e: i32| -> BigRational {
        if e >= 0 {
            num_traits::pow(two.clone(), e as usize)
        } else {
            BigRational::one() / num_traits::pow(two.clone(), (-e) as usize)
        }
    };

    let mut seq = CallSequence::empty(n);
    let mut current = TropMatrix::identity(n);
    for pass in 0usize.. {
        let mut next = seq.clone();
        for (t, &(k, l)) in edges.iter().enumerate() {
            let t = t as i32 + 1;
            let w = if pass == 0 {
                BigRational::one() + pow2(-t)
            } else {
                pow2(((pass - 1) * m) as i32 + t)
            };
            next.push(Call::new(k, l, TropScalar::Finite(w))?)?;
        }
        let product = next.product();
        if product == current {
            break;
        }
        seq = next;
        current = product;
    }
    Ok(seq)
}

/// Whether deleting any single call changes the product.
pub fn is_irredundant(s: &CallSequence) -> bool {
    let full = s.product();
    (0..s.len()).all(|t| s.product_without(t) != full)
}

/// The recursive irredundant product `W_n = W_{n-1} ⊙ P_{n-1} ⊙ ⋯ ⊙ P_1` with
/// `C(n+1,3)` calls, where `W_{n-1}` lives on gossipers `1..n` (0-based) and
/// `P_h = C_{0,1} C_{1,2} ⋯ C_{h-1,h}`.
///
/// Weights are powers of two assigned along the hierarchy: the calls of
/// `W_{n-1}` (recursively) get `2^0, 2^1, …`, then `P_1`, then the calls of
/// `P_2` in order, and so on up to `P_{n-1}`. Each weight exceeds the sum of
/// all weights assigned before it.
pub fn build_w(n: usize) -> CallSequence {
    let mut counter = 0u32;
    let calls = build_w_calls(n, &mut counter);
    CallSequence { n, calls }
}

fn build_w_calls(n: usize, counter: &mut u32) -> Vec<Call> {
    if n <= 1 {
        return Vec::new();
    }
    let mut calls: Vec<Call> = build_w_calls(n - 1, counter)
        .into_iter()
        .map(|c| Call { a: c.a + 1, b: c.b + 1, weight: c.weight })
        .collect();
    // Hierarchy order P_1, …, P_{n-1}; product order is the reverse.
    let mut blocks: Vec<Vec<Call>> = Vec::new();
    for h in 1..n {
        let block = (0..h)
            .map(|t| {
                let w = num_traits::pow(BigInt::from(2), *counter as usize);
                *counter += 1;
                Call { a: t, b: t + 1, weight: TropScalar::Finite(BigRational::from_integer(w)) }
            })
            .collect();
        blocks.push(block);
    }
    for block in blocks.into_iter().rev() {
        calls.extend(block);
    }
    calls
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> TropMatrix {
        s.replace(';', "\n").parse().unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Multiplies out a sequence with explicit call matrices.
    fn product_by_matrices(s: &CallSequence) -> TropMatrix {
        s.calls
            .iter()
            .fold(TropMatrix::identity(s.n), |acc, c| acc.tmul(&c.matrix(s.n).unwrap()).unwrap())
    }

    #[test]
    fn core_of_small_example() {
        let a = m("0,3,7;3,0,4;inf,4,0");
        let core = symmetric_core(&a);
        assert_eq!(core, BTreeSet::from([(0, 1), (1, 2)]));
        assert!(is_connected(3, &core));
    }

    #[test]
    fn metric_core_is_complete() {
        let a = m("0,90,140;90,0,60;140,60,0");
        assert_eq!(symmetric_core(&a).len(), 3);
    }

    #[test]
    fn car_metric_as_calls() {
        let a = m("0,90,140;90,0,60;140,60,0");
        let seq = metric_as_calls(&a).unwrap();
        let weights: Vec<String> = seq.calls.iter().map(|c| c.weight.to_string()).collect();
        assert_eq!(weights, ["90", "140", "60"]);
        assert_eq!(product_by_matrices(&seq), a);
        assert_eq!(metric_as_calls(&m("0,1,3;1,0,1;3,1,0")).unwrap_err(), Error::NotMetric);
    }

    #[test]
    fn degenerate_metrics_as_calls() {
        let zero = metric_as_calls(&TropMatrix::zeros(3)).unwrap();
        assert!(zero.calls.iter().all(|c| c.weight.is_zero()));
        let id = metric_as_calls(&TropMatrix::identity(3)).unwrap();
        assert!(id.calls.iter().all(|c| c.weight.is_infinite()));
        assert_eq!(id.product(), TropMatrix::identity(3));
    }

    #[test]
    fn core_witness_on_a_path() {
        let seq = core_witness(3, &[(0, 1), (1, 2)]).unwrap();
        let a = product_by_matrices(&seq);
        // Frozen from multiplying out C12(3/2) C23(5/4) C12(2) C23(4) by hand.
        assert_eq!(seq.len(), 4);
        assert_eq!(a, m("0,3/2,11/4;3/2,0,5/4;13/4,5/4,0"));
        assert_eq!(symmetric_core(&a), BTreeSet::from([(0, 1), (1, 2)]));
    }

    #[test]
    fn core_witness_single_edge_and_star() {
        let seq = core_witness(2, &[(0, 1)]).unwrap();
        assert_eq!(symmetric_core(&product_by_matrices(&seq)), BTreeSet::from([(0, 1)]));

        let star = [(0, 1), (0, 2), (0, 3)];
        let a = product_by_matrices(&core_witness(4, &star).unwrap());
        assert_eq!(symmetric_core(&a), BTreeSet::from(star));
        assert!(a.entries().iter().all(TropScalar::is_finite));
    }

    #[test]
    fn core_witness_rejects_disconnected_graphs() {
        assert_eq!(core_witness(4, &[(0, 1), (2, 3)]).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn irredundancy_examples() {
        let redundant = CallSequence::new(
            3,
            vec![Call::new(0, 1, TropScalar::from_int(1)).unwrap(), Call::new(0, 1, TropScalar::from_int(2)).unwrap()],
        )
        .unwrap();
        assert!(!is_irredundant(&redundant));
        let single = CallSequence::new(3, vec![Call::new(1, 2, TropScalar::from_int(5)).unwrap()]).unwrap();
        assert!(is_irredundant(&single));
    }

    #[test]
    fn w_construction_is_irredundant() {
        assert!(build_w(1).is_empty());
        for n in 1..=6 {
            let w = build_w(n);
            assert_eq!(w.len(), binom(n + 1, 3), "n = {n}");
            assert!(is_irredundant(&w), "W_{n} is redundant");
        }
    }
}
