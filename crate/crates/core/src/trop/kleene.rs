use super::{TropMatrix, TropScalar};
use crate::error::{Error, Result};

/// Shortest-path closure `A* = I ⊕ A ⊕ … ⊕ A^(n-1)` computed by
/// Floyd–Warshall. Negative entries are rejected.
pub fn kleene_star(a: &TropMatrix) -> Result<TropMatrix> {
    if let Some((i, j)) = a.first_negative() {
        return Err(Error::NegativeEntry { i, j });
    }
    let n = a.n();
    let mut d: Vec<Vec<TropScalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { TropScalar::zero() } else { a.get(i, j).clone() }).collect())
        .collect();
    for m in 0..n {
        for i in 0..n {
            if d[i][m].is_infinite() {
                continue;
            }
            for j in 0..n {
                let via = &d[i][m] + &d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    TropMatrix::from_rows(d)
}

/// Membership in the closed metric cone: zero diagonal, symmetric,
/// nonnegative, and `a_ij + a_jk ≥ a_ik` with `∞` allowed.
pub fn is_metric(a: &TropMatrix) -> bool {
    let n = a.n();
    if !a.is_gossip_shaped() || !a.is_symmetric() {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if &(a.get(i, j) + a.get(j, k)) < a.get(i, k) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> TropMatrix {
        s.replace(';', "\n").parse().unwrap()
    }

    /// Independent route: `(I ⊕ A)^(n-1)` by repeated tropical products.
    fn star_by_powers(a: &TropMatrix) -> TropMatrix {
        let ia = TropMatrix::identity(a.n()).oplus(a).unwrap();
        ia.tpow(a.n().saturating_sub(1))
    }

    #[test]
    fn identity_is_fixed() {
        assert_eq!(kleene_star(&TropMatrix::identity(4)).unwrap(), TropMatrix::identity(4));
    }

    #[test]
    fn three_node_digraph() {
        let a = m("0,3,7;3,0,4;inf,4,0");
        let expected = m("0,3,7;3,0,4;7,4,0");
        assert_eq!(star_by_powers(&a), expected);
        assert_eq!(kleene_star(&a).unwrap(), expected);
    }

    #[test]
    fn negative_entries_are_rejected() {
        let a = m("0,-1;1,0");
        assert_eq!(kleene_star(&a).unwrap_err(), Error::NegativeEntry { i: 0, j: 1 });
    }

    #[test]
    fn metric_examples() {
        assert!(is_metric(&m("0,90,140;90,0,60;140,60,0")));
        assert!(is_metric(&TropMatrix::zeros(4)));
        assert!(is_metric(&TropMatrix::identity(3)));
        assert!(!is_metric(&m("0,1,3;1,0,1;3,1,0")));
        assert!(!is_metric(&m("0,1;2,0")));
        assert!(!is_metric(&m("0,1,inf;1,0,1;inf,1,0")));
    }
}
