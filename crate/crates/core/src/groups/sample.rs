use rand::Rng;

use super::det::{in_trop_sl, tdet};
use crate::trop::{Call, CallSequence, TropMatrix, TropScalar};

/// A small rational with denominator 1 or 2, or `∞` with probability `1/8`.
fn signed_entry(rng: &mut impl Rng) -> TropScalar {
    if rng.gen_ratio(1, 8) {
        TropScalar::Infinity
    } else {
        TropScalar::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=2))
    }
}

/// A random matrix over `ℚ ∪ {∞}` with small entries.
pub fn sample_signed_matrix(n: usize, rng: &mut impl Rng) -> TropMatrix {
    TropMatrix::from_fn(n, |_, _| signed_entry(rng))
}

/// A random member of `Trop(SL_n)`. Random signed matrices are rejected until
/// one passes the membership test; after 64 misses the last candidate is
/// shifted so its determinant becomes zero.
pub fn sample_sl_member(n: usize, rng: &mut impl Rng) -> TropMatrix {
    loop {
        let mut a = sample_signed_matrix(n, rng);
        for _ in 0..64 {
            if in_trop_sl(&a) {
                return a;
            }
            a = sample_signed_matrix(n, rng);
        }
        if let TropScalar::Finite(v) = tdet(&a).value {
            let shift = TropScalar::Finite(-v / num_bigint::BigInt::from(n as u64));
            let shifted = TropMatrix::from_fn(n, |i, j| a.get(i, j) + &shift);
            debug_assert!(in_trop_sl(&shifted));
            return shifted;
        }
    }
}

/// A random product of up to `2n` call matrices with small integer weights,
/// occasionally `∞`.
pub fn sample_gossip_element(n: usize, rng: &mut impl Rng) -> TropMatrix {
    if n < 2 {
        return TropMatrix::identity(n);
    }
    let len = rng.gen_range(0..=2 * n);
    let calls = (0..len)
        .map(|_| {
            let k = rng.gen_range(0..n);
            let l = (k + rng.gen_range(1..n)) % n;
            let w = if rng.gen_ratio(1, 10) { TropScalar::Infinity } else { TropScalar::from_int(rng.gen_range(0..=8)) };
            Call::new(k, l, w).expect("valid call")
        })
        .collect();
    CallSequence::new(n, calls).expect("valid sequence").product()
}
