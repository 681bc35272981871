use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sample::sample_gossip_element;
use crate::error::{Error, Result};
use crate::trop::{is_metric, TropMatrix, TropScalar};

/// A polynomial in the `n²` entries of a matrix whose nonzero coefficients
/// are all `±1`, so every coefficient has valuation zero.
struct Equation {
    name: String,
    /// Exponent vectors over the entries in row-major order.
    monomials: Vec<Vec<u8>>,
    has_constant: bool,
}

/// Row and column orthonormality quadrics of `XXᵀ − I` and `XᵀX − I`, and `det X − 1`.
fn orthogonality_equations(n: usize) -> Vec<Equation> {
    let var = |i: usize, j: usize| i * n + j;
    let mut out = Vec::new();
    for (kind, by_rows) in [("row", true), ("col", false)] {
        for j in 0..n {
            for k in j..n {
                let monomials = (0..n)
                    .map(|i| {
                        let (p, q) = if by_rows { (var(j, i), var(k, i)) } else { (var(i, j), var(i, k)) };
                        let mut e = vec![0u8; n * n];
                        e[p] += 1;
                        e[q] += 1;
                        e
                    })
                    .collect();
                out.push(Equation { name: format!("{kind}({},{})", j + 1, k + 1), monomials, has_constant: j == k });
            }
        }
    }
    let monomials = (0..n)
        .permutations(n)
        .map(|perm| {
            let mut e = vec![0u8; n * n];
            perm.iter().enumerate().for_each(|(i, &p)| e[var(i, p)] += 1);
            e
        })
        .collect();
    out.push(Equation { name: "det".into(), monomials, has_constant: true });
    out
}

/// Value of a monomial at `w`; a zero exponent ignores the entry, `∞` included.
fn monomial_value(exponents: &[u8], a: &TropMatrix) -> TropScalar {
    exponents
        .iter()
        .zip(a.entries())
        .filter(|(&e, _)| e > 0)
        .fold(TropScalar::zero(), |s, (&e, w)| (0..e).fold(s, |s, _| &s + w))
}

/// The verdict for one tropical equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residue {
    pub equation: String,
    pub minimum: TropScalar,
    /// Number of terms attaining the minimum.
    pub attained: usize,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct O3Prevariety {
    pub satisfied: bool,
    pub residues: Vec<Residue>,
}

fn prevariety_check(a: &TropMatrix) -> O3Prevariety {
    let residues: Vec<Residue> = orthogonality_equations(a.n())
        .into_iter()
        .map(|eq| {
            let mut values: Vec<TropScalar> = eq.monomials.iter().map(|m| monomial_value(m, a)).collect();
            if eq.has_constant {
                values.push(TropScalar::zero());
            }
            let minimum = values.iter().min().cloned().unwrap_or(TropScalar::Infinity);
            let attained = values.iter().filter(|v| **v == minimum).count();
            Residue { equation: eq.name, minimum, attained, satisfied: attained >= 2 }
        })
        .collect();
    O3Prevariety { satisfied: residues.iter().all(|r| r.satisfied), residues }
}

fn require_n(a: &TropMatrix, n: usize) -> Result<()> {
    if a.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: a.n() });
    }
    Ok(())
}

/// Evaluates the tropicalized defining equations of `O_3`: for each, the
/// minimum over its terms (the constant contributing `0`) must be attained
/// at least twice. These equations define a prevariety containing
/// `Trop(O_3)`, not `Trop(O_3)` itself.
pub fn o3_prevariety_check(a: &TropMatrix) -> Result<O3Prevariety> {
    require_n(a, 3)?;
    Ok(prevariety_check(a))
}

/// The three cones making up `Trop(O_2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum O2Cone {
    /// `[[0,a],[a,0]]` with `a ∈ [0,∞]`; this is `G_2`.
    Gossip,
    /// `[[a,0],[0,a]]` with `a ∈ [0,∞]`.
    Swapped,
    /// `[[a,a],[a,a]]` with `a ≤ 0`.
    Balanced,
    Outside,
}

/// The cone of `Trop(O_2)` containing a 2×2 matrix; the first match wins on overlaps.
pub fn o2_classify(a: &TropMatrix) -> Result<O2Cone> {
    require_n(a, 2)?;
    let (p, q, r, s) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
    let nonneg = |x: &TropScalar| !x.is_negative();
    Ok(if p.is_zero() && s.is_zero() && q == r && nonneg(q) {
        O2Cone::Gossip
    } else if q.is_zero() && r.is_zero() && p == s && nonneg(p) {
        O2Cone::Swapped
    } else if p == q && q == r && r == s && (p.is_negative() || p.is_zero()) {
        O2Cone::Balanced
    } else {
        O2Cone::Outside
    })
}

/// The cone of `G_3` holding a nonnegative member of `Trop(O_3)` after its rows are permuted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum O3Cone {
    /// The closed metric cone.
    Metric,
    /// `[[0,a,b],[b+c,0,c],[b,c,0]]` with `a ≥ b+c`, after moving index `i` to `relabel[i]`.
    Asymmetric { relabel: Vec<usize>, a: TropScalar, b: TropScalar, c: TropScalar },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct O3Classification {
    pub in_sym3_g3: bool,
    /// Row `i` moves to row `permutation[i]`, which puts zeros on the diagonal.
    pub permutation: Vec<usize>,
    pub permuted: TropMatrix,
    pub cone: O3Cone,
}

fn asymmetric_form(b: &TropMatrix) -> Option<O3Cone> {
    (0..3).permutations(3).find_map(|relabel| {
        let m = b.relabel(&relabel);
        let (a, bb, c) = (m.get(0, 1), m.get(0, 2), m.get(1, 2));
        let sum = bb + c;
        let fits = m.get(1, 0) == &sum && m.get(2, 0) == bb && m.get(2, 1) == c && a >= &sum;
        fits.then(|| O3Cone::Asymmetric { relabel, a: a.clone(), b: bb.clone(), c: c.clone() })
    })
}

/// Places a nonnegative member of the prevariety into `Sym(3) · G_3`: a row
/// permutation brings zeros to the diagonal, and the result is either metric
/// or conjugate to the asymmetric form.
pub fn o3_nonneg_classify(a: &TropMatrix) -> Result<O3Classification> {
    require_n(a, 3)?;
    if let Some((i, j)) = a.first_negative() {
        return Err(Error::NegativeEntry { i, j });
    }
    if !prevariety_check(a).satisfied {
        return Err(Error::Unclassifiable(format!("{a} is outside the prevariety")));
    }
    let permutation = (0..3)
        .permutations(3)
        .find(|p| (0..3).all(|i| a.get(i, p[i]).is_zero()))
        .ok_or_else(|| Error::Unclassifiable(format!("{a} has no row permutation with zero diagonal")))?;
    let permuted = a.permute_rows(&permutation);
    let cone = if permuted.is_symmetric() {
        is_metric(&permuted).then_some(O3Cone::Metric)
    } else {
        asymmetric_form(&permuted)
    }
    .ok_or_else(|| Error::Unclassifiable(format!("{a} matches no cone of G_3 after permuting rows")))?;
    Ok(O3Classification { in_sym3_g3: true, permutation, permuted, cone })
}

/// Sampled products of two elements of `Sym(3) · G_3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct O3Evidence {
    pub trials: u64,
    pub seed: u64,
    pub outside_prevariety: u64,
    pub outside_sym3_g3: u64,
    pub first_outside: Option<TropMatrix>,
}

/// Experimental harness: whether products of row-permuted elements of
/// `G_3` stay in the prevariety and in `Sym(3) · G_3`. Reports counts only.
pub fn o3_product_evidence(trials: u64, seed: u64) -> Result<O3Evidence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ev = O3Evidence { trials, seed, outside_prevariety: 0, outside_sym3_g3: 0, first_outside: None };
    let sample = |rng: &mut ChaCha8Rng| {
        let mut perm = vec![0, 1, 2];
        perm.shuffle(rng);
        sample_gossip_element(3, rng).permute_rows(&perm)
    };
    for _ in 0..trials {
        let a = sample(&mut rng);
        let b = sample(&mut rng);
        let ab = a.tmul(&b)?;
        if !prevariety_check(&ab).satisfied {
            ev.outside_prevariety += 1;
        }
        if o3_nonneg_classify(&ab).is_err() {
            ev.outside_sym3_g3 += 1;
            ev.first_outside.get_or_insert(ab);
        }
    }
    Ok(ev)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> TropMatrix {
        let rows: Vec<Vec<Option<i64>>> = rows.iter().map(|r| r.iter().map(|&v| Some(v)).collect()).collect();
        let refs: Vec<&[Option<i64>]> = rows.iter().map(|r| r.as_slice()).collect();
        TropMatrix::from_int_rows(&refs).unwrap()
    }

    #[test]
    fn equation_count() {
        assert_eq!(orthogonality_equations(3).len(), 13);
        assert_eq!(orthogonality_equations(2).len(), 7);
    }

    #[test]
    fn two_by_two_cones() {
        assert_eq!(o2_classify(&m(&[&[0, 5], &[5, 0]])).unwrap(), O2Cone::Gossip);
        assert_eq!(o2_classify(&m(&[&[3, 0], &[0, 3]])).unwrap(), O2Cone::Swapped);
        assert_eq!(o2_classify(&m(&[&[-2, -2], &[-2, -2]])).unwrap(), O2Cone::Balanced);
        assert_eq!(o2_classify(&m(&[&[1, 2], &[3, 4]])).unwrap(), O2Cone::Outside);
        assert_eq!(o2_classify(&TropMatrix::identity(2)).unwrap(), O2Cone::Gossip);
        assert!(o2_classify(&TropMatrix::identity(3)).is_err());
    }

    #[test]
    fn two_by_two_cones_match_the_prevariety() {
        let values: Vec<TropScalar> =
            (-3..=3).map(TropScalar::from_int).chain(std::iter::once(TropScalar::Infinity)).collect();
        for e in itertools::repeat_n(values.iter(), 4).multi_cartesian_product() {
            let a = TropMatrix::new(2, e.into_iter().cloned().collect()).unwrap();
            let inside = o2_classify(&a).unwrap() != O2Cone::Outside;
            assert_eq!(inside, prevariety_check(&a).satisfied, "{a}");
        }
    }

    #[test]
    fn prevariety_examples() {
        let (a, b, c, d) = (-3, -2, -1, 1);
        assert!(o3_prevariety_check(&m(&[&[a, a, b], &[a, a, b], &[c, c, d]])).unwrap().satisfied);
        let r = o3_prevariety_check(&m(&[&[0, 1, 1], &[1, 0, 5], &[1, 5, 0]])).unwrap();
        assert!(!r.satisfied);
        assert!(r.residues.iter().any(|r| !r.satisfied && r.equation != "det"));
        assert!(o3_prevariety_check(&TropMatrix::identity(3)).unwrap().satisfied);
    }

    #[test]
    fn nonnegative_classification() {
        let metric = m(&[&[0, 1, 2], &[1, 0, 2], &[2, 2, 0]]);
        let c = o3_nonneg_classify(&metric).unwrap();
        assert_eq!((c.permutation, c.cone), (vec![0, 1, 2], O3Cone::Metric));
        let c = o3_nonneg_classify(&m(&[&[0, 9, 2], &[5, 0, 3], &[2, 3, 0]])).unwrap();
        assert_eq!(
            c.cone,
            O3Cone::Asymmetric {
                relabel: vec![0, 1, 2],
                a: TropScalar::from_int(9),
                b: TropScalar::from_int(2),
                c: TropScalar::from_int(3)
            }
        );
        let swapped = m(&[&[5, 0, 3], &[0, 9, 2], &[2, 3, 0]]);
        let c = o3_nonneg_classify(&swapped).unwrap();
        assert_eq!(c.permutation, vec![1, 0, 2]);
        assert_eq!(o3_nonneg_classify(&TropMatrix::identity(3)).unwrap().cone, O3Cone::Metric);
        assert!(matches!(o3_nonneg_classify(&m(&[&[0, 1, 1], &[1, 0, 5], &[1, 5, 0]])), Err(Error::Unclassifiable(_))));
    }

    #[test]
    fn sampled_gossip_elements_classify() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            let mut perm = vec![0, 1, 2];
            perm.shuffle(&mut rng);
            let g = sample_gossip_element(3, &mut rng);
            let a = g.permute_rows(&perm);
            let r = prevariety_check(&a);
            assert!(r.satisfied, "{a}");
            assert!(prevariety_check(&a.transpose()).satisfied);
            assert_eq!(r.satisfied, prevariety_check(&a.permute_cols(&[2, 0, 1])).satisfied);
            o3_nonneg_classify(&a).unwrap_or_else(|e| panic!("{e}"));
        }
    }

    #[test]
    fn evidence_harness_runs() {
        let e = o3_product_evidence(200, 1).unwrap();
        assert_eq!(e, o3_product_evidence(200, 1).unwrap());
    }
}
