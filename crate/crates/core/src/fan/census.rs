use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chamber::{coordinate_permutation, image_cones, permute_mask, MatrixCone};
use super::scheme::ProductScheme;
use crate::error::{Error, Result};
use crate::gossip::generators;
use crate::poly::{connected_components, fan_check, FanCheck, IntVec, LinearSubspace, PolyCone};
use crate::trop::{is_metric, kleene_star, phone_call_matrix, TropMatrix, TropScalar};

/// All full-dimensional image cones sharing one linear span (and `∞` pattern).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanClass {
    pub infinite_mask: u64,
    pub span: LinearSubspace,
    /// Distinct image cones with this span, sorted.
    pub cones: Vec<PolyCone>,
    /// Index of the cone containing all the others, if there is one.
    pub maximal: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanCensus {
    pub n: usize,
    pub k: usize,
    /// Schemes examined directly; the rest follow by relabelling.
    pub schemes_examined: usize,
    pub spans: Vec<SpanClass>,
}

type SpanKey = (u64, LinearSubspace);

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// Whether the scheme is lexicographically least among its relabellings.
fn is_canonical_scheme(scheme: &[usize], pair_maps: &[Vec<usize>]) -> bool {
    pair_maps.iter().all(|m| scheme.iter().map(|&p| m[p]).cmp(scheme.iter().copied()) != std::cmp::Ordering::Less)
}

/// Iterates over all products of `k` calls with free weights, keeps the image
/// cones of dimension `C(n,2)` and groups them by linear span.
///
/// Only schemes that are least among their relabellings are expanded; the
/// cones of the others are relabellings of these.
pub fn enumerate_spans(n: usize, k: usize) -> Result<SpanCensus> {
    if !(2..=4).contains(&n) || k == 0 || k > 8 {
        return Err(Error::Unsupported(format!("span census supports 2 ≤ n ≤ 4 and 1 ≤ k ≤ 8, got n = {n}, k = {k}")));
    }
    let pairs = generators(n);
    let perms = permutations(n);
    let pair_maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            pairs
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                    pairs.iter().position(|&q| q == (x, y)).expect("pair")
                })
                .collect()
        })
        .collect();
    let schemes: Vec<Vec<usize>> = (0..k)
        .map(|_| 0..pairs.len())
        .multi_cartesian_product()
        .filter(|s| is_canonical_scheme(s, &pair_maps))
        .collect();
    let target = binom2(n);

    let found: Vec<Vec<MatrixCone>> = schemes
        .par_iter()
        .map(|s| {
            let scheme = ProductScheme::new(n, s.iter().map(|&p| pairs[p]).collect())?;
            image_cones(&scheme, target)
        })
        .collect::<Result<_>>()?;
    let base: BTreeSet<MatrixCone> = found.into_iter().flatten().collect();

    let all: Vec<Vec<MatrixCone>> = base
        .par_iter()
        .map(|c| perms.iter().map(|p| c.relabel(p, false)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut classes: BTreeMap<SpanKey, BTreeSet<PolyCone>> = BTreeMap::new();
    for c in all.into_iter().flatten() {
        classes.entry((c.infinite_mask, c.cone.span())).or_default().insert(c.cone);
    }
    let spans = classes
        .into_par_iter()
        .map(|((infinite_mask, span), cones)| {
            let cones: Vec<PolyCone> = cones.into_iter().collect();
            let maximal = (0..cones.len()).find(|&i| cones.iter().all(|c| c.is_subset_of(&cones[i]).unwrap_or(false)));
            SpanClass { infinite_mask, span, cones, maximal }
        })
        .collect();
    Ok(SpanCensus { n, k, schemes_examined: schemes.len(), spans })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub with_transpose: bool,
    /// Orbits as sorted lists of span indices, ordered by their first member.
    pub orbits: Vec<Vec<usize>>,
    /// Orbit sizes, ascending.
    pub sizes: Vec<usize>,
    /// Orbit size ↦ number of orbits of that size.
    pub distribution: BTreeMap<usize, usize>,
}

fn permute_subspace(s: &LinearSubspace, coords: &[usize]) -> Result<LinearSubspace> {
    let moved: Vec<IntVec> = s
        .basis()
        .iter()
        .map(|v| {
            let mut w = vec![0; v.len()];
            v.iter().enumerate().for_each(|(i, &x)| w[coords[i]] = x);
            w
        })
        .collect();
    LinearSubspace::from_generators(s.ambient(), &moved)
}

/// Orbits of the spans under relabelling of the gossipers, optionally
/// together with transposition.
pub fn orbit_classify(census: &SpanCensus, with_transpose: bool) -> Result<OrbitReport> {
    let n = census.n;
    let index: HashMap<SpanKey, usize> =
        census.spans.iter().enumerate().map(|(i, s)| ((s.infinite_mask, s.span.clone()), i)).collect();
    let mut actions: Vec<Vec<usize>> = permutations(n).iter().map(|p| coordinate_permutation(n, p, false)).collect();
    if with_transpose {
        let id: Vec<usize> = (0..n).collect();
        actions.push(coordinate_permutation(n, &id, true));
    }
    let mut parent: Vec<usize> = (0..census.spans.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, s) in census.spans.iter().enumerate() {
        for coords in &actions {
            let key = (permute_mask(s.infinite_mask, coords), permute_subspace(&s.span, coords)?);
            let j = *index
                .get(&key)
                .ok_or_else(|| Error::Unsupported("span census is not closed under relabelling".into()))?;
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..census.spans.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let orbits: Vec<Vec<usize>> = groups.into_values().collect();
    let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let mut distribution = BTreeMap::new();
    for &s in &sizes {
        *distribution.entry(s).or_insert(0) += 1;
    }
    Ok(OrbitReport { with_transpose, orbits, sizes, distribution })
}

/// The fan on the set of products of lossy phone calls for small `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GossipFan {
    pub n: usize,
    /// Maximal cones, one per span.
    pub cones: Vec<MatrixCone>,
    pub check: FanCheck,
    pub is_pure: bool,
    pub codim1_connected: bool,
    /// Index of the cone equal to the closed cone of metrics.
    pub metric_cone: Option<usize>,
    /// Whether every span has a cone containing all others with that span.
    pub every_span_has_maximum: bool,
    /// Whether the Kleene star of every ray and interior point is a metric.
    pub kleene_lands_in_metrics: bool,
}

/// Closure of the cone of metrics in matrix coordinates.
pub fn metric_cone(n: usize) -> Result<PolyCone> {
    let unit = |p: usize| -> IntVec { (0..n * n).map(|q| i128::from(p == q)).collect() };
    let mut eqs: Vec<IntVec> = (0..n).map(|i| unit(i * n + i)).collect();
    let mut ineqs: Vec<IntVec> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut e = unit(i * n + j);
            e[j * n + i] = -1;
            eqs.push(e);
            ineqs.push(unit(i * n + j));
        }
    }
    for (i, j, k) in (0..n).cartesian_product(0..n).cartesian_product(0..n).map(|((i, j), k)| (i, j, k)) {
        if i != j && j != k && i != k {
            let mut t = vec![0; n * n];
            t[i * n + k] += 1;
            t[k * n + j] += 1;
            t[i * n + j] -= 1;
            ineqs.push(t);
        }
    }
    PolyCone::from_inequalities(n * n, &ineqs, &eqs)
}

/// Builds the fan for `n ∈ {2, 3, 4}` from products of `C(n,2)` calls.
pub fn gossip_fan(n: usize) -> Result<GossipFan> {
    if !(2..=4).contains(&n) {
        return Err(Error::Unsupported(format!("the fan is built for n ∈ {{2, 3, 4}}, got {n}")));
    }
    GossipFan::from_census(&enumerate_spans(n, binom2(n))?)
}

impl GossipFan {
    pub fn from_census(census: &SpanCensus) -> Result<Self> {
        let n = census.n;
        let every_span_has_maximum = census.spans.iter().all(|s| s.maximal.is_some());
        let cones: Vec<MatrixCone> = census
            .spans
            .iter()
            .filter_map(|s| s.maximal.map(|m| MatrixCone { n, infinite_mask: s.infinite_mask, cone: s.cones[m].clone() }))
            .collect();
        let polys: Vec<PolyCone> = cones.iter().map(|c| c.cone.clone()).collect();
        let check = fan_check(&polys)?;
        let top = binom2(n);
        let is_pure = cones.iter().all(|c| c.dim() == top);
        let codim1_connected = cones.len() <= 1 || connected_components(cones.len(), &check.codim1_pairs) == 1;
        let metric = metric_cone(n)?;
        let metric_cone = cones.iter().position(|c| c.infinite_mask == 0 && c.cone.span() == metric.span() && c.cone == metric);
        let kleene_lands_in_metrics = cones.par_iter().all(|c| {
            c.ray_matrices().into_iter().chain([c.interior_matrix()]).all(|m| kleene_star(&m).is_ok_and(|k| is_metric(&k)))
        });
        Ok(Self { n, cones, check, is_pure, codim1_connected, metric_cone, every_span_has_maximum, kleene_lands_in_metrics })
    }

    /// Index of a cone containing the matrix.
    pub fn locate(&self, m: &TropMatrix) -> Option<usize> {
        self.cones.iter().position(|c| c.contains_matrix(m).unwrap_or(false))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// Products that lie in no cone of the fan.
    pub escapes: u64,
    /// The first escaping product, if any.
    pub first_escape: Option<TropMatrix>,
}

fn random_ratio(rng: &mut ChaCha8Rng, max_numer: i64) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(1..=max_numer)), BigInt::from(rng.gen_range(1..=6)))
}

/// Multiplies random interior points of random maximal cones by random
/// lossy calls on either side and checks that the products stay in the fan.
pub fn closure_sample_check(fan: &GossipFan, trials: u64, seed: u64) -> Result<ClosureReport> {
    let n = fan.n;
    let pairs = generators(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut escapes = 0;
    let mut first_escape = None;
    for _ in 0..trials {
        let c = &fan.cones[rng.gen_range(0..fan.cones.len())];
        let mut point = vec![BigRational::from_integer(BigInt::from(0)); n * n];
        for r in c.cone.rays() {
            let coef = random_ratio(&mut rng, 30);
            point.iter_mut().zip(r).for_each(|(x, &y)| *x += &coef * BigInt::from(y));
        }
        let a = c.matrix_at(&point);
        let (k, l) = pairs[rng.gen_range(0..pairs.len())];
        let max = point.iter().max().cloned().unwrap_or_default();
        let weight = match rng.gen_range(0..10) {
            0 => TropScalar::zero(),
            1 => TropScalar::Infinity,
            _ => TropScalar::Finite(&max * random_ratio(&mut rng, 12) / BigInt::from(6)),
        };
        let call = phone_call_matrix(n, k, l, &weight)?;
        for product in [call.tmul(&a)?, a.tmul(&call)?] {
            if fan.locate(&product).is_none() {
                escapes += 1;
                first_escape.get_or_insert(product);
            }
        }
    }
    Ok(ClosureReport { n, trials, seed, escapes, first_escape })
}
