use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::scheme::{entry_path_forms, minimal_forms, LinForm, ProductScheme};
use crate::error::{Error, Result};
use crate::poly::{clear_denominators, rank, DdState, IntVec, PolyCone};
use crate::trop::{TropMatrix, TropScalar};

/// A cone of matrices in `[0,∞]^{n×n}`: the entries flagged infinite are `∞`
/// throughout, and the cone lives on the remaining coordinates (the flagged
/// coordinates are held at `0`). Coordinates are row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatrixCone {
    pub n: usize,
    /// Bit `i*n + j` is set when entry `(i, j)` is `∞`.
    pub infinite_mask: u64,
    pub cone: PolyCone,
}

/// Finite part of a matrix as a coordinate vector, with the `∞` mask.
pub fn matrix_coordinates(m: &TropMatrix) -> (u64, Vec<BigRational>) {
    let mut mask = 0u64;
    let coords = m
        .entries()
        .iter()
        .enumerate()
        .map(|(p, x)| match x {
            TropScalar::Finite(v) => v.clone(),
            TropScalar::Infinity => {
                mask |= 1 << p;
                BigRational::from_integer(BigInt::from(0))
            }
        })
        .collect();
    (mask, coords)
}

/// Coordinate index map of a relabelling of the gossipers, optionally
/// followed by transposition.
pub fn coordinate_permutation(n: usize, perm: &[usize], transpose: bool) -> Vec<usize> {
    (0..n * n)
        .map(|p| {
            let (i, j) = (perm[p / n], perm[p % n]);
            if transpose {
                j * n + i
            } else {
                i * n + j
            }
        })
        .collect()
}

pub(crate) fn permute_mask(mask: u64, coords: &[usize]) -> u64 {
    coords.iter().enumerate().filter(|&(p, _)| mask >> p & 1 == 1).fold(0, |m, (_, &q)| m | 1 << q)
}

impl MatrixCone {
    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn contains_matrix(&self, m: &TropMatrix) -> Result<bool> {
        if m.n() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: m.n() });
        }
        let (mask, coords) = matrix_coordinates(m);
        Ok(mask == self.infinite_mask && self.cone.contains_point(&clear_denominators(&coords))?)
    }

    /// The image under relabelling the gossipers by `perm`, then optionally transposing.
    pub fn relabel(&self, perm: &[usize], transpose: bool) -> Result<Self> {
        let coords = coordinate_permutation(self.n, perm, transpose);
        Ok(Self { n: self.n, infinite_mask: permute_mask(self.infinite_mask, &coords), cone: self.cone.permute_coordinates(&coords)? })
    }

    /// The matrix with the given coordinates on the finite support.
    pub fn matrix_at(&self, coords: &[BigRational]) -> TropMatrix {
        TropMatrix::from_fn(self.n, |i, j| {
            let p = i * self.n + j;
            if self.infinite_mask >> p & 1 == 1 {
                TropScalar::Infinity
            } else {
                TropScalar::Finite(coords[p].clone())
            }
        })
    }

    /// A point in the relative interior: the sum of the extreme rays.
    pub fn interior_matrix(&self) -> TropMatrix {
        let mut sum = vec![0i128; self.n * self.n];
        for r in self.cone.rays() {
            sum.iter_mut().zip(r).for_each(|(s, x)| *s += x);
        }
        self.matrix_at(&sum.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect::<Vec<_>>())
    }

    pub fn ray_matrices(&self) -> Vec<TropMatrix> {
        self.cone
            .rays()
            .iter()
            .map(|r| self.matrix_at(&r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect::<Vec<_>>()))
            .collect()
    }
}

/// A linearity region of `a ↦ C_{I_1}(a_1) ⊙ ⋯ ⊙ C_{I_k}(a_k)` on `a ≥ 0`: on
/// the region, each entry equals the chosen form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub scheme: ProductScheme,
    /// Row-major; `None` for entries that are `∞`.
    pub choice: Vec<Option<LinForm>>,
    pub region: PolyCone,
}

pub const MAX_CHAMBER_CALLS: usize = 10;

/// All full-dimensional linearity regions of the scheme.
pub fn chambers(scheme: &ProductScheme) -> Result<Vec<Chamber>> {
    if scheme.len() > MAX_CHAMBER_CALLS {
        return Err(Error::Unsupported(format!("chambers need at most {MAX_CHAMBER_CALLS} calls")));
    }
    let k = scheme.len();
    raw_chambers(scheme)
        .into_iter()
        .map(|(choice, region)| {
            let g = region.generators();
            let region = PolyCone::from_generators_with_lineality(k, &g.rays, &g.lineality)?;
            Ok(Chamber { scheme: scheme.clone(), choice, region })
        })
        .collect()
}

/// Choice functions with their regions, by depth-first search over the
/// entries with competing forms. A branch is cut as soon as its region stops
/// being full-dimensional.
pub(crate) fn raw_chambers(scheme: &ProductScheme) -> Vec<(Vec<Option<LinForm>>, DdState)> {
    let n = scheme.n();
    let k = scheme.len();
    let forms: Vec<Vec<LinForm>> = (0..n * n).map(|p| minimal_forms(&entry_path_forms(scheme, p / n, p % n))).collect();
    let choice: Vec<Option<LinForm>> = forms.iter().map(|f| if f.len() == 1 { Some(f[0]) } else { None }).collect();
    let competing: Vec<usize> = (0..n * n).filter(|&p| forms[p].len() > 1).collect();

    let mut region = DdState::new(k);
    for t in 0..k {
        region.add_inequality(&(0..k).map(|s| i128::from(s == t)).collect::<Vec<_>>());
    }
    let mut out = Vec::new();
    search(&forms, &competing, k, choice, region, &mut out);
    out
}

fn search(
    forms: &[Vec<LinForm>],
    competing: &[usize],
    k: usize,
    choice: Vec<Option<LinForm>>,
    region: DdState,
    out: &mut Vec<(Vec<Option<LinForm>>, DdState)>,
) {
    let Some((&p, rest)) = competing.split_first() else {
        out.push((choice, region));
        return;
    };
    for &f in &forms[p] {
        let mut next = region.clone();
        let fc = f.coefficients(k);
        for &g in forms[p].iter().filter(|&&g| g != f) {
            let row: IntVec = g.coefficients(k).iter().zip(&fc).map(|(a, b)| a - b).collect();
            next.add_inequality(&row);
        }
        if next.dim() == k {
            let mut c = choice.clone();
            c[p] = Some(f);
            search(forms, rest, k, c, next, out);
        }
    }
}

/// Image of `a` under the chosen forms, as a row-major coordinate vector.
pub(crate) fn image_vector(choice: &[Option<LinForm>], a: &[i128]) -> IntVec {
    choice
        .iter()
        .map(|f| f.map_or(0, |f| (0..a.len()).filter(|&t| f.uses(t)).map(|t| a[t]).sum()))
        .collect()
}

pub(crate) fn infinite_mask(choice: &[Option<LinForm>]) -> u64 {
    choice.iter().enumerate().filter(|(_, f)| f.is_none()).fold(0, |m, (p, _)| m | 1 << p)
}

/// Image cones of full-dimensional regions whose dimension is at least `min_dim`.
pub(crate) fn image_cones(scheme: &ProductScheme, min_dim: usize) -> Result<Vec<MatrixCone>> {
    let n = scheme.n();
    let mut out = Vec::new();
    for (choice, region) in raw_chambers(scheme) {
        let images: Vec<IntVec> = region.rays().map(|r| image_vector(&choice, r)).collect();
        if rank(&images) < min_dim {
            continue;
        }
        let cone = PolyCone::from_generators(n * n, &images)?;
        out.push(MatrixCone { n, infinite_mask: infinite_mask(&choice), cone });
    }
    Ok(out)
}

/// Image of the chamber's region in matrix space.
pub fn image_cone(chamber: &Chamber) -> Result<MatrixCone> {
    let n = chamber.scheme.n();
    if !chamber.region.is_pointed() {
        return Err(Error::NotPointed(chamber.region.lineality().dim()));
    }
    let images: Vec<IntVec> = chamber.region.rays().iter().map(|r| image_vector(&chamber.choice, r)).collect();
    Ok(MatrixCone { n, infinite_mask: infinite_mask(&chamber.choice), cone: PolyCone::from_generators(n * n, &images)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::trop::is_metric;

    fn scheme(n: usize, e: &[(usize, usize)]) -> ProductScheme {
        ProductScheme::new(n, e.to_vec()).unwrap()
    }

    /// Samples strictly inside each region and compares forms with the product.
    fn check_chambers_by_sampling(s: &ProductScheme, samples: usize, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for ch in chambers(s).unwrap() {
            assert_eq!(ch.region.dim(), s.len());
            for _ in 0..samples {
                let mut a = vec![0i128; s.len()];
                for r in ch.region.rays() {
                    let c = rng.gen_range(1..=9);
                    a.iter_mut().zip(r).for_each(|(x, y)| *x += c * y);
                }
                let w: Vec<TropScalar> = a.iter().map(|&x| TropScalar::from_int(x as i64)).collect();
                let product = s.evaluate(&w).unwrap();
                for (p, f) in ch.choice.iter().enumerate() {
                    let expected = f.map_or(TropScalar::Infinity, |f| f.evaluate(&w));
                    assert_eq!(product.get(p / s.n(), p % s.n()), &expected);
                }
            }
        }
    }

    #[test]
    fn triangle_scheme_has_four_chambers() {
        // Entries (1,3), (2,3) and (2,1) each have a direct and a two-step
        // form; at most one two-step form can win on an open set.
        let s = scheme(3, &[(0, 1), (1, 2), (0, 2)]);
        let ch = chambers(&s).unwrap();
        assert_eq!(ch.len(), 4);
        check_chambers_by_sampling(&s, 20, 1);
        let metric = ch
            .iter()
            .filter(|c| c.choice.iter().flatten().all(|f| f.0.count_ones() <= 1))
            .map(|c| image_cone(c).unwrap())
            .next()
            .unwrap();
        for m in metric.ray_matrices() {
            assert!(is_metric(&m));
        }
        assert!(is_metric(&metric.interior_matrix()));
    }

    #[test]
    fn single_call() {
        let s = scheme(2, &[(0, 1)]);
        let ch = chambers(&s).unwrap();
        assert_eq!(ch.len(), 1);
        let img = image_cone(&ch[0]).unwrap();
        assert_eq!(img.dim(), 1);
        assert_eq!(img.cone.rays(), [vec![0, 1, 1, 0]]);
        let img3 = image_cone(&chambers(&scheme(3, &[(0, 1)])).unwrap()[0]).unwrap();
        assert_eq!(img3.infinite_mask.count_ones(), 4);
    }

    #[test]
    fn random_four_gossiper_schemes_sample_correctly() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        for round in 0..12 {
            let e: Vec<_> = (0..6).map(|_| pairs[rng.gen_range(0..6)]).collect();
            check_chambers_by_sampling(&scheme(4, &e), 4, round);
        }
    }

    #[test]
    fn relabelling_moves_masks() {
        let img = image_cone(&chambers(&scheme(3, &[(0, 1)])).unwrap()[0]).unwrap();
        let moved = img.relabel(&[2, 1, 0], false).unwrap();
        let direct = image_cone(&chambers(&scheme(3, &[(1, 2)])).unwrap()[0]).unwrap();
        assert_eq!(moved, direct);
    }
}
