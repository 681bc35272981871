use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::state::{column_mask, GossipState};
use crate::error::{Error, Result};

/// Published sizes of the ordinary gossip monoid, used for memory estimates.
pub const KNOWN_SIZES: [u64; 9] =
    [1, 2, 11, 189, 9152, 1_092_473, 293_656_554, 166_244_338_221, 188_620_758_836_916];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub n: usize,
    pub total_count: u64,
    pub length_histogram: BTreeMap<usize, u64>,
    pub max_length: usize,
    /// False when the run stopped at the memory budget; counts are then partial.
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    /// Permit `n ∈ {8, 9}`.
    pub allow_large: bool,
    pub memory_budget_bytes: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self { allow_large: false, memory_budget_bytes: 4 << 30 }
    }
}

/// Bytes needed to hold every element as a 64-bit key.
pub fn memory_estimate(n: usize) -> Option<u64> {
    KNOWN_SIZES.get(n.checked_sub(1)?).map(|&c| c.saturating_mul(8))
}

/// Call pairs `(k, l)`, `k < l`, in lexicographic order.
pub fn generators(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|k| (k + 1..n).map(move |l| (k, l))).collect()
}

const CHUNK: usize = 1 << 20;

/// Breadth-first closure of the identity under right-multiplication by all
/// `C_kl(0)`, level by level. Levels are kept as sorted key vectors, so the
/// result does not depend on how the expansion is scheduled.
pub fn enumerate_monoid(n: usize, opts: &EnumerationOptions) -> Result<EnumerationReport> {
    if n == 0 || n > 9 {
        return Err(Error::Unsupported(format!("n = {n} must lie in 1..=9")));
    }
    if n >= 8 && !opts.allow_large {
        return Err(Error::Unsupported(format!("n = {n} needs the large-run opt-in")));
    }
    if n == 9 {
        // 72-bit keys do not fit the 64-bit level store.
        return Err(Error::MemoryBudget(format!(
            "n = 9 needs about {} bytes",
            memory_estimate(9).unwrap_or(u64::MAX).saturating_mul(2)
        )));
    }
    let mut report = EnumerationReport {
        n,
        total_count: 0,
        length_histogram: BTreeMap::new(),
        max_length: 0,
        complete: true,
    };
    let budget_keys = opts.memory_budget_bytes / 8;
    let mut levels: Vec<Vec<u64>> = Vec::new();
    levels.push(vec![key64(&GossipState::identity(n))]);

    loop {
        let depth = levels.len() - 1;
        let frontier = &levels[depth];
        if frontier.is_empty() {
            levels.pop();
            break;
        }
        report.total_count += frontier.len() as u64;
        report.length_histogram.insert(depth, frontier.len() as u64);
        report.max_length = depth;
        if report.total_count > budget_keys {
            report.complete = false;
            return Ok(report);
        }
        let next = expand_level(n, &levels);
        levels.push(next);
    }
    Ok(report)
}

fn key64(s: &GossipState) -> u64 {
    s.off_diagonal_key() as u64
}

fn expand_level(n: usize, levels: &[Vec<u64>]) -> Vec<u64> {
    let gens = generators(n);
    let col0 = column_mask(n);
    let frontier = levels.last().expect("nonempty");
    let seen = |k: &u64| levels.iter().rev().any(|lvl| lvl.binary_search(k).is_ok());
    let mut next: Vec<u64> = Vec::new();
    for chunk in frontier.chunks(CHUNK) {
        let mut found: Vec<u64> = chunk
            .par_iter()
            .flat_map_iter(|&key| {
                let s = GossipState::from_off_diagonal_key(n, key as u128);
                gens.iter().map(move |&(k, l)| key64(&s.call_unchecked(k, l, col0)))
            })
            .collect();
        found.par_sort_unstable();
        found.dedup();
        found.retain(|k| !seen(k));
        next.append(&mut found);
    }
    next.par_sort_unstable();
    next.dedup();
    next
}

/// Breadth-first distance from the identity, or `None` if unreachable.
pub fn element_length(target: &GossipState) -> Result<Option<usize>> {
    let n = target.n();
    if n > 7 {
        return Err(Error::Unsupported(format!("element_length supports n ≤ 7, got {n}")));
    }
    let goal = key64(target);
    let mut levels: Vec<Vec<u64>> = vec![vec![key64(&GossipState::identity(n))]];
    loop {
        let depth = levels.len() - 1;
        let frontier = &levels[depth];
        if frontier.is_empty() {
            return Ok(None);
        }
        if frontier.binary_search(&goal).is_ok() {
            return Ok(Some(depth));
        }
        let next = expand_level(n, &levels);
        levels.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_monoids() {
        let opts = EnumerationOptions::default();
        let r1 = enumerate_monoid(1, &opts).unwrap();
        assert_eq!((r1.total_count, r1.max_length), (1, 0));
        let r3 = enumerate_monoid(3, &opts).unwrap();
        assert_eq!((r3.total_count, r3.max_length), (11, 3));
        assert_eq!(r3.length_histogram[&0], 1);
        assert_eq!(r3.length_histogram.values().sum::<u64>(), r3.total_count);
        let r4 = enumerate_monoid(4, &opts).unwrap();
        assert_eq!((r4.total_count, r4.max_length), (189, 4));
    }

    #[test]
    fn large_runs_need_opt_in() {
        assert!(enumerate_monoid(8, &EnumerationOptions::default()).is_err());
        assert!(enumerate_monoid(0, &EnumerationOptions::default()).is_err());
    }

    #[test]
    fn budget_abort_is_partial() {
        let opts = EnumerationOptions { allow_large: false, memory_budget_bytes: 8 * 50 };
        let r = enumerate_monoid(5, &opts).unwrap();
        assert!(!r.complete);
        assert!(r.total_count < 9152);
    }

    #[test]
    fn lengths() {
        assert_eq!(element_length(&GossipState::identity(4)).unwrap(), Some(0));
        assert_eq!(element_length(&GossipState::all_known(3)).unwrap(), Some(3));
        assert_eq!(element_length(&GossipState::all_known(4)).unwrap(), Some(4));
        // Gossiper 1 knows gossip 0 without the converse: no call does that.
        let lopsided = GossipState::from_bits(3, 0b100_010_011).unwrap();
        assert_eq!(element_length(&lopsided).unwrap(), None);
    }
}
