//! Two ten-parameter cones of products for five gossipers whose closures
//! share a linear span and a full-dimensional intersection, but whose union
//! is not convex.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::poly::{rank, DdState, IntVec, LinearSubspace};
use crate::trop::{Call, CallSequence, TropMatrix, TropScalar};

const PARAMS: usize = 10;
const N: usize = 5;

/// `C45(a) C34(b) C45(c) C24(d) C45(e) C14(f) C12(g) C23(h) C13(i) C15(j)`, 1-based.
const P_CALLS: [(usize, usize); PARAMS] = [(4, 5), (3, 4), (4, 5), (2, 4), (4, 5), (1, 4), (1, 2), (2, 3), (1, 3), (1, 5)];
const P_MATRIX: [[&str; N]; N] = [
    ["0", "g", "i", "f", "j"],
    ["g", "0", "g+i", "d", "d+e"],
    ["i", "h", "0", "b", "b+c"],
    ["d+g", "d", "b", "0", "c"],
    ["j", "c+d", "a+b", "c", "0"],
];
const P_INEQUALITIES: [&str; 11] = [
    "a>c", "e>c", "f>d+g", "b+d>h", "h>g+i", "c+d+g+i>a+b", "b+i>d+g", "c+d+g>j", "i+j>b+c", "c+j>d+g", "g+j>d+e",
];

/// `C45(a) C34(b) C45(c) C24(d) C45(e) C15(f) C12(g) C24(h) C23(i) C13(j)`, 1-based.
const Q_CALLS: [(usize, usize); PARAMS] = [(4, 5), (3, 4), (4, 5), (2, 4), (4, 5), (1, 5), (1, 2), (2, 4), (2, 3), (1, 3)];
const Q_MATRIX: [[&str; N]; N] = [
    ["0", "g", "j", "g+h", "f"],
    ["g", "0", "g+j", "d", "d+e"],
    ["j", "i", "0", "b", "b+c"],
    ["d+g", "d", "b", "0", "c"],
    ["f", "c+d", "a+b", "c", "0"],
];
const Q_INEQUALITIES: [&str; 10] =
    ["a>c", "e>c", "c+d+g>f", "c+f>d+g", "f+g>c+d", "h>d", "b+d>i", "i>g+j", "f+j>a+b", "b+j>d+g"];

/// Q's parameters in terms of P's: `f → j`, `h → f − g`, `i → h`, `j → i`.
const SUBSTITUTION: [&str; PARAMS] = ["a", "b", "c", "d", "e", "j", "g", "f-g", "h", "i"];
/// Q's inequalities after the substitution.
const Q_SUBSTITUTED: [&str; 10] =
    ["a>c", "e>c", "c+d+g>j", "c+j>d+g", "g+j>c+d", "f>d+g", "b+d>h", "h>g+i", "i+j>a+b", "b+i>d+g"];

/// Coefficients of a signed sum of parameter letters such as `c+d-g`.
fn form(s: &str) -> IntVec {
    let mut v = vec![0; PARAMS];
    if s == "0" {
        return v;
    }
    let mut sign = 1;
    for ch in s.chars() {
        match ch {
            '+' => sign = 1,
            '-' => sign = -1,
            'a'..='j' => v[(ch as u8 - b'a') as usize] += sign,
            _ => unreachable!("bad form {s}"),
        }
    }
    v
}

/// `lhs > rhs` as the normal `lhs − rhs`.
fn inequality(s: &str) -> IntVec {
    let (l, r) = s.split_once('>').expect("inequality");
    form(l).iter().zip(form(r)).map(|(a, b)| a - b).collect()
}

fn matrix_forms(m: &[[&str; N]; N]) -> Vec<IntVec> {
    m.iter().flatten().map(|s| form(s)).collect()
}

/// Forms of `M ∘ S`, where `S` writes one parameter set in terms of another.
fn compose(forms: &[IntVec], subst: &[IntVec]) -> Vec<IntVec> {
    forms
        .iter()
        .map(|f| (0..PARAMS).map(|q| f.iter().zip(subst).map(|(c, s)| c * s[q]).sum()).collect())
        .collect()
}

fn sorted(mut v: Vec<IntVec>) -> Vec<IntVec> {
    v.sort();
    v
}

fn evaluate(f: &[i128], x: &[BigRational]) -> BigRational {
    f.iter().zip(x).fold(BigRational::zero(), |s, (&c, v)| s + v * BigInt::from(c))
}

fn matrix_at(forms: &[IntVec], x: &[BigRational]) -> TropMatrix {
    TropMatrix::from_fn(N, |i, j| TropScalar::Finite(evaluate(&forms[i * N + j], x)))
}

fn product_at(calls: &[(usize, usize)], x: &[BigRational]) -> Result<TropMatrix> {
    let calls = calls
        .iter()
        .zip(x)
        .map(|(&(k, l), w)| Call::new(k - 1, l - 1, TropScalar::Finite(w.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(CallSequence::new(N, calls)?.product())
}

/// Closed region `{x ≥ 0, A x ≥ 0}` and its extreme rays.
fn region_rays(inequalities: &[IntVec], nonnegative: &[IntVec]) -> Vec<IntVec> {
    let mut dd = DdState::new(PARAMS);
    nonnegative.iter().chain(inequalities).for_each(|a| dd.add_inequality(a));
    dd.generators().rays
}

fn units() -> Vec<IntVec> {
    (0..PARAMS).map(|i| (0..PARAMS).map(|j| i128::from(i == j)).collect()).collect()
}

/// A strictly positive combination of the rays.
fn interior_point(rays: &[IntVec], rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    let mut x = vec![BigRational::zero(); PARAMS];
    for r in rays {
        let u: i64 = rng.gen_range(0..12);
        let c = BigRational::new(BigInt::from(1 + u * u * u), BigInt::from(rng.gen_range(1..=4)));
        x.iter_mut().zip(r).for_each(|(xi, &ri)| *xi += &c * BigInt::from(ri));
    }
    x
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PqWitness {
    /// Parameters `a, …, j` of a point of `P` and of a point of `Q`, in `P`'s coordinates.
    pub p_point: Vec<TropScalar>,
    pub q_point: Vec<TropScalar>,
    pub p_matrix: TropMatrix,
    pub q_matrix: TropMatrix,
    /// The midpoint, which lies in neither closure.
    pub midpoint: TropMatrix,
    pub violates_p: String,
    pub violates_q: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PqReport {
    pub p_dim: usize,
    pub q_dim: usize,
    pub spans_equal: bool,
    pub span_dim: usize,
    /// The substitution turns `Q`'s matrix into `P`'s and its inequalities into the listed ones.
    pub substitution_matches: bool,
    /// The call products equal the displayed matrices at sampled interior points.
    pub products_match: bool,
    pub intersection_dim: usize,
    pub witness: Option<PqWitness>,
    pub seed: u64,
    pub attempts: u64,
}

/// Checks the example and searches for a non-convexity witness.
pub fn pq_example_check(seed: u64, attempts: u64) -> Result<PqReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p_forms = matrix_forms(&P_MATRIX);
    let q_forms = matrix_forms(&Q_MATRIX);
    let columns = |forms: &[IntVec]| -> Vec<IntVec> { (0..PARAMS).map(|t| forms.iter().map(|f| f[t]).collect()).collect() };
    let p_span = LinearSubspace::from_generators(N * N, &columns(&p_forms))?;
    let q_span = LinearSubspace::from_generators(N * N, &columns(&q_forms))?;

    let subst: Vec<IntVec> = SUBSTITUTION.iter().map(|s| form(s)).collect();
    let p_ineqs: Vec<IntVec> = P_INEQUALITIES.iter().map(|s| inequality(s)).collect();
    let q_ineqs: Vec<IntVec> = Q_INEQUALITIES.iter().map(|s| inequality(s)).collect();
    let q_pulled = compose(&q_ineqs, &subst);
    let substitution_matches = compose(&q_forms, &subst) == p_forms
        && sorted(q_pulled.clone()) == sorted(Q_SUBSTITUTED.iter().map(|s| inequality(s)).collect());

    let p_rays = region_rays(&p_ineqs, &units());
    let q_rays = region_rays(&q_ineqs, &units());
    let q_rays_pulled = region_rays(&q_pulled, &compose(&units(), &subst));
    let mut products_match = true;
    for _ in 0..8 {
        let x = interior_point(&p_rays, &mut rng);
        products_match &= product_at(&P_CALLS, &x)? == matrix_at(&p_forms, &x);
        let y = interior_point(&q_rays, &mut rng);
        products_match &= product_at(&Q_CALLS, &y)? == matrix_at(&q_forms, &y);
    }

    let mut both: Vec<IntVec> = p_ineqs.clone();
    both.extend(q_pulled.iter().cloned());
    let both_nonneg: Vec<IntVec> = units().into_iter().chain(compose(&units(), &subst)).collect();
    let intersection_dim = rank(&region_rays(&both, &both_nonneg));

    let violated = |ineqs: &[IntVec], names: &[&str], x: &[BigRational]| {
        ineqs.iter().zip(names).find(|(a, _)| evaluate(a, x).is_negative()).map(|(_, n)| n.to_string())
    };
    let mut witness = None;
    for _ in 0..attempts {
        let p = interior_point(&p_rays, &mut rng);
        let q = interior_point(&q_rays_pulled, &mut rng);
        let mid: Vec<BigRational> = p.iter().zip(&q).map(|(a, b)| (a + b) / BigInt::from(2)).collect();
        if let (Some(vp), Some(vq)) = (violated(&p_ineqs, &P_INEQUALITIES, &mid), violated(&q_pulled, &Q_SUBSTITUTED, &mid)) {
            witness = Some(PqWitness {
                p_matrix: matrix_at(&p_forms, &p),
                q_matrix: matrix_at(&p_forms, &q),
                midpoint: matrix_at(&p_forms, &mid),
                p_point: p.into_iter().map(TropScalar::Finite).collect(),
                q_point: q.into_iter().map(TropScalar::Finite).collect(),
                violates_p: vp,
                violates_q: vq,
            });
            break;
        }
    }
    Ok(PqReport {
        p_dim: rank(&p_rays),
        q_dim: rank(&q_rays),
        spans_equal: p_span == q_span,
        span_dim: p_span.dim(),
        substitution_matches,
        products_match,
        intersection_dim,
        witness,
        seed,
        attempts,
    })
}
