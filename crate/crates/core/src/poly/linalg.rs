//! Integer vectors and exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type IntVec = Vec<i128>;

const OVERFLOW: &str = "integer overflow in polyhedral arithmetic";

/// Divides by the gcd of the entries, keeping the direction.
pub fn primitive(mut v: IntVec) -> IntVec {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    v
}

/// Primitive representative of the line through `v`: first nonzero entry positive.
pub fn canonical_line(v: IntVec) -> IntVec {
    let mut v = primitive(v);
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

pub fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter()
        .zip(b)
        .try_fold(0i128, |acc, (&x, &y)| acc.checked_add(x.checked_mul(y)?))
        .expect(OVERFLOW)
}

/// `ca·a + cb·b`, made primitive.
pub fn combine(ca: i128, a: &[i128], cb: i128, b: &[i128]) -> IntVec {
    let v = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| ca.checked_mul(x).and_then(|p| cb.checked_mul(y).and_then(|q| p.checked_add(q))).expect(OVERFLOW))
        .collect();
    primitive(v)
}

pub fn is_zero(v: &[i128]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn to_rational(v: &[i128]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// Positive multiple of a rational vector with coprime integer entries.
pub fn clear_denominators(v: &[BigRational]) -> IntVec {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    ints.iter()
        .map(|x| if g.is_zero() { x.clone() } else { x / &g })
        .map(|x| x.to_i128().expect(OVERFLOW))
        .collect()
}

/// Rank by fraction-free elimination.
pub fn rank(rows: &[IntVec]) -> usize {
    let mut m: Vec<IntVec> = rows.iter().filter(|r| !is_zero(r)).cloned().collect();
    let Some(cols) = m.first().map(Vec::len) else { return 0 };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let pivot = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[c] != 0 {
                *row = combine(pivot[c], row, -row[c], &pivot);
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Reduced row echelon form over the rationals; returns the nonzero rows and pivot columns.
fn rref(mut m: Vec<Vec<BigRational>>, cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        m[r].iter_mut().for_each(|x| *x *= &inv);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x -= &f * y);
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// A linear subspace stored by its canonical basis: the reduced row echelon
/// form with each row scaled to coprime integers. Equal subspaces have
/// identical bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SubspaceJson", into = "SubspaceJson")]
pub struct LinearSubspace {
    ambient: usize,
    basis: Vec<IntVec>,
}

#[derive(Serialize, Deserialize)]
struct SubspaceJson {
    ambient: usize,
    basis: Vec<IntVec>,
}

impl TryFrom<SubspaceJson> for LinearSubspace {
    type Error = Error;
    fn try_from(j: SubspaceJson) -> Result<Self> {
        let s = Self::from_generators(j.ambient, &j.basis)?;
        if s.basis != j.basis {
            return Err(Error::Unsupported("subspace basis is not in canonical echelon form".into()));
        }
        Ok(s)
    }
}

impl From<LinearSubspace> for SubspaceJson {
    fn from(s: LinearSubspace) -> Self {
        Self { ambient: s.ambient, basis: s.basis }
    }
}

impl LinearSubspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| (0..ambient).map(|j| i128::from(i == j)).collect()).collect();
        Self { ambient, basis }
    }

    pub fn from_generators(ambient: usize, gens: &[IntVec]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch { left: ambient, right: g.len() });
        }
        let m = gens.iter().map(|g| to_rational(g)).collect();
        Ok(Self::from_rref(ambient, rref(m, ambient).0))
    }

    fn from_rref(ambient: usize, rows: Vec<Vec<BigRational>>) -> Self {
        Self { ambient, basis: rows.iter().map(|r| clear_denominators(r)).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        v.len() == self.ambient && {
            let mut rows = self.basis.clone();
            rows.push(v.to_vec());
            rank(&rows) == self.dim()
        }
    }

    pub fn contains_rational(&self, v: &[BigRational]) -> bool {
        self.contains(&clear_denominators(v))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// All vectors orthogonal to the subspace.
    pub fn orthogonal_complement(&self) -> Self {
        let m = self.basis.iter().map(|g| to_rational(g)).collect();
        let (rows, pivots) = rref(m, self.ambient);
        let free = (0..self.ambient).filter(|c| !pivots.contains(c));
        let null: Vec<Vec<BigRational>> = free
            .map(|f| {
                let mut v = vec![BigRational::zero(); self.ambient];
                v[f] = BigRational::one();
                for (row, &p) in rows.iter().zip(&pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect();
        Self::from_rref(self.ambient, rref(null, self.ambient).0)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Self::from_generators(self.ambient.max(other.ambient), &gens)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        Ok(self.orthogonal_complement().sum(&other.orthogonal_complement())?.orthogonal_complement())
    }

    /// Orthogonal projection onto the subspace, scaled to a primitive integer vector.
    pub fn project(&self, v: &[i128]) -> IntVec {
        if self.dim() == self.ambient {
            return primitive(v.to_vec());
        }
        if self.dim() == 0 {
            return vec![0; self.ambient];
        }
        let ortho = gram_schmidt(&self.basis);
        let x = to_rational(v);
        let mut p = vec![BigRational::zero(); self.ambient];
        for (u, uu) in &ortho {
            let c = rdot(&x, u) / uu;
            p.iter_mut().zip(u).for_each(|(pi, ui)| *pi += &c * ui);
        }
        clear_denominators(&p)
    }
}

fn rdot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Orthogonal basis together with squared norms.
fn gram_schmidt(basis: &[IntVec]) -> Vec<(Vec<BigRational>, BigRational)> {
    let mut out: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for b in basis {
        let mut v = to_rational(b);
        for (u, uu) in &out {
            let c = rdot(&v, u) / uu;
            v.iter_mut().zip(u).for_each(|(vi, ui)| *vi -= &c * ui);
        }
        let vv = rdot(&v, &v);
        if vv.is_positive() {
            out.push((v, vv));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms() {
        assert_eq!(primitive(vec![-4, 6, 0]), [-2, 3, 0]);
        assert_eq!(canonical_line(vec![0, -4, 6]), [0, 2, -3]);
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn canonical_bases_agree() {
        let a = LinearSubspace::from_generators(3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let b = LinearSubspace::from_generators(3, &[vec![1, 2, 1], vec![2, 1, -1], vec![3, 3, 0]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), [vec![1, 0, -1], vec![0, 1, 1]]);
        assert_eq!(a.orthogonal_complement().basis(), [vec![1, -1, 1]]);
        assert!(a.contains(&[1, 0, -1]) && !a.contains(&[1, 0, 0]));
    }

    #[test]
    fn projection_and_intersection() {
        let plane = LinearSubspace::from_generators(3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(plane.project(&[3, 6, 9]), [1, 2, 0]);
        let other = LinearSubspace::from_generators(3, &[vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(plane.intersection(&other).unwrap().basis(), [vec![0, 1, 0]]);
        let diag = LinearSubspace::from_generators(2, &[vec![1, 1]]).unwrap();
        assert_eq!(diag.project(&[1, 0]), [1, 1]);
    }

    #[test]
    fn json_is_checked() {
        let s = LinearSubspace::from_generators(3, &[vec![2, 0, 2]]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"ambient":3,"basis":[[1,0,1]]}"#);
        assert_eq!(serde_json::from_str::<LinearSubspace>(&text).unwrap(), s);
        assert!(serde_json::from_str::<LinearSubspace>(r#"{"ambient":3,"basis":[[2,0,2]]}"#).is_err());
    }
}
