use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::enumerate::generators;
use super::state::{column_mask, GossipState};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Permit `n = 8`; the search then usually ends at the node limit.
    pub allow_large: bool,
    /// Stop after visiting this many search nodes; the result is then a lower bound.
    pub node_limit: Option<u64>,
    /// Length of the call prefix that must be lexicographically minimal under
    /// relabelling of the gossipers.
    pub canonical_prefix: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { allow_large: false, node_limit: None, canonical_prefix: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrredundantSearch {
    pub n: usize,
    /// Longest irredundant product found.
    pub length: usize,
    pub witness: Vec<(usize, usize)>,
    /// True when the search space was exhausted, so `length` is exact.
    pub complete: bool,
    pub nodes: u64,
}

/// Whether deleting any single call `C_kl(0)` changes the product.
pub fn is_irredundant_calls(n: usize, calls: &[(usize, usize)]) -> Result<bool> {
    let product = |skip: Option<usize>| -> Result<GossipState> {
        calls
            .iter()
            .enumerate()
            .filter(|&(t, _)| Some(t) != skip)
            .try_fold(GossipState::identity(n), |s, (_, &(k, l))| s.apply_call(k, l))
    };
    let full = product(None)?;
    for t in 0..calls.len() {
        if product(Some(t))? == full {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximum length of an irredundant product of lossless calls.
///
/// Depth-first search that only extends irredundant prefixes: if deleting
/// call `t` leaves a prefix's product unchanged, it leaves every extension's
/// product unchanged too, since extensions are right-multiplications. Two
/// further reductions keep the search small. Adjacent calls on disjoint pairs
/// commute and can be swapped without affecting irredundancy, so only the
/// order with the smaller pair first is explored. And the first few calls must
/// be lexicographically minimal among all relabellings of the gossipers. The
/// lexicographically least sequence of maximal length passes both filters.
pub fn max_irredundant_length(n: usize, opts: &SearchOptions) -> Result<IrredundantSearch> {
    if n > 8 || (n == 8 && !opts.allow_large) {
        return Err(Error::Unsupported(format!("irredundant search supports n ≤ 7 (8 with opt-in), got {n}")));
    }
    let pairs = generators(n);
    let mut search = Search {
        col0: column_mask(n),
        upper: pairs.len(),
        perms: (0..n).permutations(n).filter(|p| p.iter().enumerate().any(|(i, &v)| i != v)).collect(),
        pairs,
        prefix_len: opts.canonical_prefix,
        node_limit: opts.node_limit.unwrap_or(u64::MAX),
        nodes: 0,
        aborted: false,
        path: Vec::new(),
        best: Vec::new(),
    };
    if n >= 2 {
        search.extend(GossipState::identity(n), Vec::new());
    }
    let witness = search.best.iter().map(|&c| search.pairs[c]).collect::<Vec<_>>();
    Ok(IrredundantSearch {
        n,
        length: witness.len(),
        witness,
        complete: !search.aborted,
        nodes: search.nodes,
    })
}

struct Search {
    col0: u128,
    pairs: Vec<(usize, usize)>,
    upper: usize,
    perms: Vec<Vec<usize>>,
    prefix_len: usize,
    node_limit: u64,
    nodes: u64,
    aborted: bool,
    path: Vec<usize>,
    best: Vec<usize>,
}

impl Search {
    fn done(&self) -> bool {
        self.aborted || self.best.len() >= self.upper
    }

    /// `product` is the current product, `deleted[t]` the product with call `t` removed.
    fn extend(&mut self, product: GossipState, deleted: Vec<GossipState>) {
        for c in 0..self.pairs.len() {
            if self.done() {
                return;
            }
            let (k, l) = self.pairs[c];
            if let Some(&last) = self.path.last() {
                let (pk, pl) = self.pairs[last];
                if c < last && k != pk && k != pl && l != pk && l != pl {
                    continue;
                }
            }
            let next = product.call_unchecked(k, l, self.col0);
            if next == product {
                continue;
            }
            let mut next_deleted = Vec::with_capacity(deleted.len() + 1);
            let mut redundant = false;
            for d in &deleted {
                let e = d.call_unchecked(k, l, self.col0);
                if e == next {
                    redundant = true;
                    break;
                }
                next_deleted.push(e);
            }
            if redundant {
                continue;
            }
            next_deleted.push(product);

            self.path.push(c);
            if self.path.len() == self.prefix_len && !self.is_canonical_prefix() {
                self.path.pop();
                continue;
            }
            self.nodes += 1;
            if self.nodes >= self.node_limit {
                self.aborted = true;
            }
            if self.path.len() > self.best.len() {
                self.best = self.path.clone();
            }
            self.extend(next, next_deleted);
            self.path.pop();
        }
    }

    fn is_canonical_prefix(&self) -> bool {
        let prefix: Vec<(usize, usize)> = self.path.iter().map(|&c| self.pairs[c]).collect();
        self.perms.iter().all(|perm| {
            let relabelled = prefix.iter().map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            });
            relabelled.cmp(prefix.iter().copied()) != std::cmp::Ordering::Less
        })
    }
}
