use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::enumerate::generators;
use super::state::{column_mask, GossipState};

/// Gossiper `0` calls `i, i-1, …, 1` for each `i = 1, …, n-1`: `C(n,2)`
/// calls, each of which teaches somebody something.
pub fn construct_pessimal(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|i| (1..=i).rev().map(|j| (0, j))).collect()
}

/// Whether every call in the run strictly increases some participant's knowledge.
pub fn verify_pessimal(n: usize, calls: &[(usize, usize)]) -> bool {
    let mut state = GossipState::identity(n);
    for &(k, l) in calls {
        match state.apply_call(k, l) {
            Ok(next) if next != state => state = next,
            _ => return false,
        }
    }
    true
}

/// Longest chain found by `attempts` random runs that keep picking a random
/// informative call until none is left.
pub fn longest_random_pessimal(n: usize, attempts: u64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = generators(n);
    let col0 = column_mask(n);
    let mut best = Vec::new();
    let mut run = Vec::new();
    let mut options = Vec::with_capacity(pairs.len());
    for _ in 0..attempts {
        run.clear();
        let mut state = GossipState::identity(n);
        loop {
            options.clear();
            options.extend(pairs.iter().map(|&(k, l)| (k, l, state.call_unchecked(k, l, col0))).filter(|t| t.2 != state));
            let Some(&(k, l, next)) = options.choose(&mut rng) else { break };
            run.push((k, l));
            state = next;
        }
        if run.len() > best.len() {
            best = run.clone();
        }
    }
    best
}
