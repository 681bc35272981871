use std::fmt;

use crate::error::{Error, Result};
use crate::trop::{TropMatrix, TropScalar};

pub const MAX_GOSSIPERS: usize = 9;

/// Knowledge matrix of the ordinary gossip monoid, bit-packed row-major:
/// bit `i*n + j` is set iff gossiper `j` knows gossip `i` (matrix entry `0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GossipState {
    n: u8,
    bits: u128,
}

impl GossipState {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_GOSSIPERS, "at most {MAX_GOSSIPERS} gossipers");
        let bits = (0..n).fold(0u128, |b, i| b | 1 << (i * n + i));
        Self { n: n as u8, bits }
    }

    /// Everyone knows everything: the all-zero tropical matrix.
    pub fn all_known(n: usize) -> Self {
        assert!(n <= MAX_GOSSIPERS, "at most {MAX_GOSSIPERS} gossipers");
        Self { n: n as u8, bits: mask(n * n) }
    }

    pub fn from_bits(n: usize, bits: u128) -> Result<Self> {
        if n > MAX_GOSSIPERS {
            return Err(Error::Unsupported(format!("n = {n} exceeds {MAX_GOSSIPERS}")));
        }
        if bits & !mask(n * n) != 0 {
            return Err(Error::Unsupported("bits outside the n×n grid".into()));
        }
        let s = Self { n: n as u8, bits };
        if (0..n).any(|i| !s.knows(i, i)) {
            return Err(Error::Unsupported("diagonal must be set".into()));
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// Whether gossiper `j` knows gossip `i`.
    pub fn knows(&self, i: usize, j: usize) -> bool {
        self.bits >> (i * self.n() + j) & 1 == 1
    }

    /// Number of (gossip, gossiper) pairs known.
    pub fn knowledge(&self) -> u32 {
        self.bits.count_ones()
    }

    /// `k` and `l` call and exchange everything: columns `k` and `l` become
    /// their union. This is right-multiplication by `C_kl(0)`.
    pub fn apply_call(&self, k: usize, l: usize) -> Result<Self> {
        let n = self.n();
        if k == l {
            return Err(Error::SelfCall(k));
        }
        if k >= n || l >= n {
            return Err(Error::IndexOutOfRange { index: k.max(l), n });
        }
        Ok(self.call_unchecked(k, l, column_mask(n)))
    }

    #[inline]
    pub(crate) fn call_unchecked(&self, k: usize, l: usize, col0: u128) -> Self {
        let merged = ((self.bits >> k) | (self.bits >> l)) & col0;
        Self { n: self.n, bits: self.bits | merged << k | merged << l }
    }

    pub fn to_matrix(&self) -> TropMatrix {
        TropMatrix::from_fn(self.n(), |i, j| if self.knows(i, j) { TropScalar::zero() } else { TropScalar::Infinity })
    }

    /// Reads a `{0, ∞}` matrix; any finite entry counts as known.
    pub fn from_matrix(m: &TropMatrix) -> Result<Self> {
        let n = m.n();
        if n > MAX_GOSSIPERS {
            return Err(Error::Unsupported(format!("n = {n} exceeds {MAX_GOSSIPERS}")));
        }
        let mut bits = 0u128;
        for i in 0..n {
            for j in 0..n {
                if m.get(i, j).is_finite() {
                    bits |= 1 << (i * n + j);
                }
            }
        }
        Self::from_bits(n, bits)
    }

    /// Compact key with the (always set) diagonal removed: `n(n-1)` bits.
    pub fn off_diagonal_key(&self) -> u128 {
        let n = self.n();
        let mut key = 0u128;
        let mut pos = 0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    key |= (self.bits >> (i * n + j) & 1) << pos;
                    pos += 1;
                }
            }
        }
        key
    }

    pub fn from_off_diagonal_key(n: usize, key: u128) -> Self {
        let mut s = Self::identity(n);
        let mut pos = 0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s.bits |= (key >> pos & 1) << (i * n + j);
                    pos += 1;
                }
            }
        }
        s
    }

    /// State dump: `n` followed by the `n²` bits row-major.
    pub fn dump(&self) -> String {
        let n = self.n();
        let mut out = format!("{n}");
        for i in 0..n {
            out.push(' ');
            for j in 0..n {
                out.push(if self.knows(i, j) { '1' } else { '0' });
            }
        }
        out
    }

    pub fn parse_dump(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let bad = || Error::Unsupported(format!("malformed state dump {s:?}"));
        let n: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let digits: String = parts.collect();
        if digits.len() != n * n {
            return Err(bad());
        }
        let mut bits = 0u128;
        for (p, ch) in digits.chars().enumerate() {
            match ch {
                '1' => bits |= 1 << p,
                '0' => {}
                _ => return Err(bad()),
            }
        }
        Self::from_bits(n, bits)
    }
}

impl fmt::Display for GossipState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

fn mask(bits: usize) -> u128 {
    if bits >= 128 {
        u128::MAX
    } else {
        (1u128 << bits) - 1
    }
}

/// Bits `i*n` for every row `i`: column 0 of the grid.
pub(crate) fn column_mask(n: usize) -> u128 {
    (0..n).fold(0u128, |m, i| m | 1 << (i * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trop::phone_call_matrix;

    #[test]
    fn first_call_example() {
        let s = GossipState::identity(3).apply_call(0, 1).unwrap();
        assert!(s.knows(0, 1) && s.knows(1, 0));
        assert!(!s.knows(2, 0) && !s.knows(0, 2));
        assert_eq!(s.apply_call(0, 1).unwrap(), s);
    }

    #[test]
    fn second_call_example() {
        let s = GossipState::identity(3).apply_call(0, 1).unwrap().apply_call(1, 2).unwrap();
        let expected: TropMatrix = "0,0,0\n0,0,0\ninf,0,0".parse().unwrap();
        assert_eq!(s.to_matrix(), expected);
    }

    #[test]
    fn self_call_rejected() {
        assert_eq!(GossipState::identity(3).apply_call(2, 2).unwrap_err(), Error::SelfCall(2));
    }

    #[test]
    fn agrees_with_tropical_product_exhaustively_for_three() {
        // Every state reachable within three calls, every call.
        let n = 3;
        let mut states = vec![GossipState::identity(n)];
        for _ in 0..3 {
            let mut next = states.clone();
            for s in &states {
                for (k, l) in [(0, 1), (0, 2), (1, 2)] {
                    let t = s.apply_call(k, l).unwrap();
                    let c = phone_call_matrix(n, k, l, &TropScalar::zero()).unwrap();
                    assert_eq!(t.to_matrix(), s.to_matrix().tmul(&c).unwrap());
                    next.push(t);
                }
            }
            next.sort();
            next.dedup();
            states = next;
        }
        assert_eq!(states.len(), 11);
    }

    #[test]
    fn keys_and_dumps_round_trip() {
        let s = GossipState::identity(4).apply_call(0, 3).unwrap().apply_call(1, 3).unwrap();
        assert_eq!(GossipState::from_off_diagonal_key(4, s.off_diagonal_key()), s);
        assert_eq!(GossipState::parse_dump(&s.dump()).unwrap(), s);
        assert_eq!(GossipState::from_matrix(&s.to_matrix()).unwrap(), s);
        assert!(GossipState::parse_dump("2 1101").is_ok());
        assert!(GossipState::parse_dump("2 0101").is_err());
    }
}
