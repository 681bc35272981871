use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sample::sample_sl_member;
use crate::error::{Error, Result};
use crate::trop::{TropMatrix, TropScalar};

/// The tropical determinant `min_π Σ a_{iπ(i)}` and the number of
/// permutations attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropDet {
    pub value: TropScalar,
    pub multiplicity: usize,
}

/// Exhaustive scan over all `n!` permutations. When every permutation sum is
/// `∞` the multiplicity counts all of them.
pub fn tdet(a: &TropMatrix) -> TropDet {
    let n = a.n();
    let mut value = TropScalar::Infinity;
    let mut multiplicity = 0;
    for perm in (0..n).permutations(n) {
        let sum = perm.iter().enumerate().fold(TropScalar::zero(), |s, (i, &p)| &s + a.get(i, p));
        match sum.cmp(&value) {
            std::cmp::Ordering::Less => {
                value = sum;
                multiplicity = 1;
            }
            std::cmp::Ordering::Equal => multiplicity += 1,
            std::cmp::Ordering::Greater => {}
        }
    }
    TropDet { value, multiplicity }
}

/// Membership in `Trop(SL_n)`: the determinant is zero, or negative and
/// attained at least twice.
pub fn in_trop_sl(a: &TropMatrix) -> bool {
    let d = tdet(a);
    d.value.is_zero() || (d.value.is_negative() && d.multiplicity >= 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// Products of two members that fail the membership test.
    pub failures: u64,
    pub first_failure: Option<(TropMatrix, TropMatrix)>,
    /// Pairs with `tdet(AB) > tdet(A) + tdet(B)`.
    pub submultiplicativity_violations: u64,
}

pub const MAX_SL_SAMPLE_N: usize = 5;

/// Multiplies random pairs of members of `Trop(SL_n)` and tests the product.
pub fn sl_closure_check(n: usize, trials: u64, seed: u64) -> Result<SlReport> {
    if n == 0 || n > MAX_SL_SAMPLE_N {
        return Err(Error::Unsupported(format!("sampling needs 1 <= n <= {MAX_SL_SAMPLE_N}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report =
        SlReport { n, trials, seed, failures: 0, first_failure: None, submultiplicativity_violations: 0 };
    for _ in 0..trials {
        let a = sample_sl_member(n, &mut rng);
        let b = sample_sl_member(n, &mut rng);
        let ab = a.tmul(&b)?;
        if !in_trop_sl(&ab) {
            report.failures += 1;
            report.first_failure.get_or_insert((a.clone(), b.clone()));
        }
        if tdet(&ab).value > &tdet(&a).value + &tdet(&b).value {
            report.submultiplicativity_violations += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[Option<i64>]]) -> TropMatrix {
        TropMatrix::from_int_rows(rows).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(tdet(&TropMatrix::identity(4)), TropDet { value: TropScalar::zero(), multiplicity: 1 });
        let d = tdet(&m(&[&[Some(1), Some(2)], &[Some(3), Some(1)]]));
        assert_eq!(d, TropDet { value: TropScalar::from_int(2), multiplicity: 1 });
        assert_eq!(tdet(&m(&[&[Some(0), Some(4)], &[Some(4), Some(0)]])).value, TropScalar::zero());
    }

    #[test]
    fn special_linear_membership() {
        assert!(in_trop_sl(&TropMatrix::identity(3)));
        assert!(!in_trop_sl(&m(&[&[Some(-1), None], &[None, Some(0)]])));
        assert!(in_trop_sl(&m(&[&[Some(-1), Some(-1)], &[Some(0), Some(0)]])));
    }

    #[test]
    fn two_by_two_grid_is_closed() {
        let values: Vec<TropScalar> =
            (-2..=2).map(TropScalar::from_int).chain(std::iter::once(TropScalar::Infinity)).collect();
        let members: Vec<TropMatrix> = itertools::repeat_n(values.iter(), 4)
            .multi_cartesian_product()
            .map(|e| TropMatrix::new(2, e.into_iter().cloned().collect()).unwrap())
            .filter(in_trop_sl)
            .collect();
        assert!(members.len() > 10);
        for a in &members {
            for b in &members {
                assert!(in_trop_sl(&a.tmul(b).unwrap()), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn sampled_products_stay_inside() {
        for n in 1..=3 {
            let r = sl_closure_check(n, 500, 11).unwrap();
            assert_eq!((r.failures, r.submultiplicativity_violations), (0, 0));
        }
        assert!(sl_closure_check(6, 1, 0).is_err());
    }
}
