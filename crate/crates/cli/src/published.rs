//! Published reference values that runs are compared against.

/// Number of elements of the ordinary gossip monoid for `n = 1..=9`.
pub const MONOID_SIZES: [u64; 9] =
    [1, 2, 11, 189, 9152, 1_092_473, 293_656_554, 166_244_338_221, 188_620_758_836_916];

/// Maximal length of an element of the ordinary gossip monoid for `n = 1..=9`.
pub const MONOID_MAX_LENGTHS: [usize; 9] = [0, 1, 3, 4, 6, 10, 13, 16, 19];

/// Maximal length of an irredundant product of calls for `n = 1..=7`.
pub const IRREDUNDANT_LENGTHS: [usize; 7] = [0, 1, 3, 5, 8, 12, 16];

/// Length of the all-zero matrix for `n ≥ 2`.
pub fn zero_matrix_length(n: usize) -> usize {
    match n {
        2 => 1,
        3 => 3,
        _ => 2 * n - 4,
    }
}

/// Span counts for `n = 2, 3, 4`.
pub const SPAN_COUNTS: [usize; 3] = [1, 7, 289];

/// Orbit counts and `(size, count)` distributions for `n = 2, 3, 4`.
pub const ORBIT_COUNTS: [usize; 3] = [1, 2, 16];
pub const ORBIT_DISTRIBUTIONS: [&[(usize, usize)]; 3] = [&[(1, 1)], &[(1, 1), (6, 1)], &[(1, 1), (12, 6), (24, 9)]];
pub const ORBITS_WITH_TRANSPOSE_N4: usize = 11;

/// Face counts of the fan on products for four gossipers, rays first.
pub const F_VECTOR_N4: [usize; 6] = [43, 327, 1042, 1560, 1092, 289];

pub fn lookup<T: Copy>(table: &[T], n: usize, offset: usize) -> Option<T> {
    n.checked_sub(offset).and_then(|i| table.get(i).copied())
}
