use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dd::double_description;
use super::linalg::{dot, is_zero, primitive, rank, IntVec, LinearSubspace};
use crate::error::{Error, Result};

/// A polyhedral cone held in both descriptions, in canonical form:
/// rays are primitive and orthogonal to the lineality space, facet normals
/// are primitive and lie in the linear span, and both lists are sorted. Equal
/// cones therefore compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ConeJson", into = "ConeJson")]
pub struct PolyCone {
    ambient: usize,
    rays: Vec<IntVec>,
    lineality: LinearSubspace,
    /// Orthogonal complement of the span.
    equations: LinearSubspace,
    facets: Vec<IntVec>,
}

/// A face of a cone, by indices into the cone's rays and facets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub dim: usize,
    pub rays: Vec<usize>,
    pub facets: Vec<usize>,
}

fn check_dims(ambient: usize, vs: &[IntVec]) -> Result<()> {
    match vs.iter().find(|v| v.len() != ambient) {
        Some(v) => Err(Error::DimensionMismatch { left: ambient, right: v.len() }),
        None => Ok(()),
    }
}

fn dedup_sorted(mut vs: Vec<IntVec>) -> Vec<IntVec> {
    vs.sort();
    vs.dedup();
    vs
}

impl PolyCone {
    /// The cone generated by `rays`.
    pub fn from_generators(ambient: usize, rays: &[IntVec]) -> Result<Self> {
        Self::from_generators_with_lineality(ambient, rays, &[])
    }

    /// The cone `cone(rays) + span(lineality)`.
    pub fn from_generators_with_lineality(ambient: usize, rays: &[IntVec], lineality: &[IntVec]) -> Result<Self> {
        check_dims(ambient, rays)?;
        check_dims(ambient, lineality)?;
        // Facets are the extreme rays of the dual cone, equations its lineality.
        let dual = double_description(ambient, lineality, rays);
        let equations = LinearSubspace::from_generators(ambient, &dual.lineality)?;
        let span = equations.orthogonal_complement();
        let facets = dedup_sorted(dual.rays.iter().map(|f| span.project(f)).filter(|f| !is_zero(f)).collect());
        let primal = double_description(ambient, equations.basis(), &facets);
        let lineality = LinearSubspace::from_generators(ambient, &primal.lineality)?;
        let complement = lineality.orthogonal_complement();
        let rays = dedup_sorted(primal.rays.iter().map(|r| complement.project(r)).filter(|r| !is_zero(r)).collect());
        Ok(Self { ambient, rays, lineality, equations, facets })
    }

    /// The cone `{x : a·x ≥ 0 for a in inequalities, e·x = 0 for e in equations}`.
    pub fn from_inequalities(ambient: usize, inequalities: &[IntVec], equations: &[IntVec]) -> Result<Self> {
        check_dims(ambient, inequalities)?;
        check_dims(ambient, equations)?;
        let g = double_description(ambient, equations, inequalities);
        Self::from_generators_with_lineality(ambient, &g.rays, &g.lineality)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn lineality(&self) -> &LinearSubspace {
        &self.lineality
    }

    pub fn equations(&self) -> &LinearSubspace {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.dim()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.dim() == 0
    }

    pub fn span(&self) -> LinearSubspace {
        self.equations.orthogonal_complement()
    }

    pub fn contains_point(&self, v: &[i128]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: v.len() });
        }
        Ok(self.equations.basis().iter().all(|e| dot(e, v) == 0) && self.facets.iter().all(|f| dot(f, v) >= 0))
    }

    pub fn contains_rational(&self, v: &[BigRational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: v.len() });
        }
        let eval = |a: &IntVec| a.iter().zip(v).fold(BigRational::zero(), |s, (&x, y)| s + y * BigInt::from(x));
        Ok(self.equations.basis().iter().all(|e| eval(e).is_zero()) && self.facets.iter().all(|f| !eval(f).is_negative()))
    }

    /// Whether `v` lies in the relative interior.
    pub fn relative_interior_contains(&self, v: &[BigRational]) -> Result<bool> {
        let eval = |a: &IntVec| a.iter().zip(v).fold(BigRational::zero(), |s, (&x, y)| s + y * BigInt::from(x));
        Ok(self.contains_rational(v)? && self.facets.iter().all(|f| eval(f).is_positive()))
    }

    /// The image under the coordinate permutation sending coordinate `i` to `perm[i]`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: perm.len() });
        }
        let apply = |v: &IntVec| {
            let mut w = vec![0; v.len()];
            v.iter().enumerate().for_each(|(i, &x)| w[perm[i]] = x);
            w
        };
        let map_all = |vs: &[IntVec]| dedup_sorted(vs.iter().map(apply).collect());
        Ok(Self {
            ambient: self.ambient,
            rays: map_all(&self.rays),
            lineality: LinearSubspace::from_generators(self.ambient, &map_all(self.lineality.basis()))?,
            equations: LinearSubspace::from_generators(self.ambient, &map_all(self.equations.basis()))?,
            facets: map_all(&self.facets),
        })
    }

    /// The equations and inequalities of both cones together.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: other.ambient });
        }
        let (eqs, ineqs) = self.joint_h_rep(other);
        Self::from_inequalities(self.ambient, &ineqs, &eqs)
    }

    pub(crate) fn joint_h_rep(&self, other: &Self) -> (Vec<IntVec>, Vec<IntVec>) {
        let eqs = self.equations.basis().iter().chain(other.equations.basis()).cloned().collect();
        let ineqs = dedup_sorted(self.facets.iter().chain(&other.facets).cloned().collect());
        (eqs, ineqs)
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: other.ambient });
        }
        let line_inside = self.lineality.basis().iter().all(|l| {
            let neg: IntVec = l.iter().map(|x| -x).collect();
            other.contains_point(l).unwrap_or(false) && other.contains_point(&neg).unwrap_or(false)
        });
        Ok(line_inside && self.rays.iter().all(|r| other.contains_point(r).unwrap_or(false)))
    }

    fn tight_rays(&self, facets: &[usize]) -> Vec<usize> {
        (0..self.rays.len()).filter(|&r| facets.iter().all(|&f| dot(&self.facets[f], &self.rays[r]) == 0)).collect()
    }

    pub(crate) fn tight_facets(&self, vectors: &[IntVec]) -> Vec<usize> {
        (0..self.facets.len()).filter(|&f| vectors.iter().all(|v| dot(&self.facets[f], v) == 0)).collect()
    }

    fn face_dim(&self, rays: &[usize]) -> usize {
        let mut gens: Vec<IntVec> = rays.iter().map(|&r| self.rays[r].clone()).collect();
        gens.extend(self.lineality.basis().iter().cloned());
        rank(&gens)
    }

    /// All faces, including the minimal face (the lineality space) and the
    /// cone itself, sorted by dimension and then by ray indices.
    pub fn faces(&self) -> Vec<Face> {
        let whole: Vec<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([whole.clone()]);
        let mut stack = vec![whole];
        while let Some(face) = stack.pop() {
            for f in 0..self.facets.len() {
                let sub: Vec<usize> =
                    face.iter().copied().filter(|&r| dot(&self.facets[f], &self.rays[r]) == 0).collect();
                if sub.len() < face.len() && seen.insert(sub.clone()) {
                    stack.push(sub);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|rays| {
                let vs: Vec<IntVec> = rays.iter().map(|&r| self.rays[r].clone()).collect();
                let facets = self.tight_facets(&vs);
                Face { dim: self.face_dim(&rays), rays, facets }
            })
            .collect();
        faces.sort();
        faces
    }

    /// The face as a cone in its own right.
    pub fn face_cone(&self, face: &Face) -> Self {
        let rays: Vec<IntVec> = face.rays.iter().map(|&r| self.rays[r].clone()).collect();
        Self::from_generators_with_lineality(self.ambient, &rays, self.lineality.basis())
            .expect("face generators share the ambient dimension")
    }

    /// Faces as cones, grouped by dimension `0..=dim`.
    pub fn face_poset(&self) -> Result<Vec<Vec<PolyCone>>> {
        if !self.is_pointed() {
            return Err(Error::NotPointed(self.lineality.dim()));
        }
        let mut out = vec![Vec::new(); self.dim() + 1];
        for face in self.faces() {
            out[face.dim].push(self.face_cone(&face));
        }
        Ok(out)
    }

    /// Number of faces of each dimension `1..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim() + 1];
        for face in self.faces() {
            counts[face.dim] += 1;
        }
        counts.split_off(1)
    }

    /// The smallest face containing the given vectors, as ray indices.
    pub(crate) fn minimal_face_rays(&self, vectors: &[IntVec]) -> Vec<usize> {
        self.tight_rays(&self.tight_facets(vectors))
    }
}

#[derive(Serialize, Deserialize)]
struct ConeJson {
    ambient: usize,
    rays: Vec<IntVec>,
    facets: Vec<IntVec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    lineality: Vec<IntVec>,
}

impl TryFrom<ConeJson> for PolyCone {
    type Error = Error;
    fn try_from(j: ConeJson) -> Result<Self> {
        let c = Self::from_generators_with_lineality(j.ambient, &j.rays, &j.lineality)?;
        let facets = dedup_sorted(j.facets.into_iter().map(primitive).collect());
        if c.rays != dedup_sorted(j.rays.into_iter().map(primitive).collect()) || c.facets != facets {
            return Err(Error::Unsupported("cone JSON is not in canonical double description form".into()));
        }
        Ok(c)
    }
}

impl From<PolyCone> for ConeJson {
    fn from(c: PolyCone) -> Self {
        Self { ambient: c.ambient, rays: c.rays, facets: c.facets, lineality: c.lineality.basis().to_vec() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(d: usize, i: usize) -> IntVec {
        (0..d).map(|j| i128::from(i == j)).collect()
    }

    #[test]
    fn orthant_both_ways() {
        let gens: Vec<IntVec> = (0..3).map(|i| unit(3, i)).collect();
        let c = PolyCone::from_generators(3, &gens).unwrap();
        assert_eq!(c.facets(), [unit(3, 2), unit(3, 1), unit(3, 0)]);
        assert_eq!(c.dim(), 3);
        assert!(c.contains_point(&[1, 2, 3]).unwrap());
        assert!(!c.contains_point(&[1, -2, 3]).unwrap());
        assert_eq!(PolyCone::from_inequalities(3, &gens, &[]).unwrap(), c);
        assert_eq!(c.f_vector(), [3, 3, 1]);
    }

    #[test]
    fn redundant_generator_and_inequality() {
        let c = PolyCone::from_generators(2, &[vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(c.rays(), [vec![0, 1], vec![1, 0]]);
        assert_eq!(c.facets().len(), 2);
        let d = PolyCone::from_inequalities(2, &[vec![1, 0], vec![0, 1], vec![1, 1]], &[]).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn whole_plane_and_zero_cone() {
        let plane = PolyCone::from_inequalities(2, &[], &[]).unwrap();
        assert_eq!(plane.lineality().dim(), 2);
        assert!(plane.rays().is_empty() && plane.facets().is_empty());
        assert!(plane.face_poset().is_err());
        let origin = PolyCone::from_generators(3, &[]).unwrap();
        assert_eq!(origin.dim(), 0);
        assert_eq!(origin.f_vector(), Vec::<usize>::new());
    }

    #[test]
    fn square_cone_faces() {
        let c = PolyCone::from_generators(3, &[vec![1, 1, 1], vec![1, -1, 1], vec![-1, 1, 1], vec![-1, -1, 1]]).unwrap();
        assert_eq!(c.facets().len(), 4);
        assert_eq!(c.f_vector(), [4, 4, 1]);
        let poset = c.face_poset().unwrap();
        assert_eq!(poset.iter().map(Vec::len).collect::<Vec<_>>(), [1, 4, 4, 1]);
    }

    #[test]
    fn lower_dimensional_cone_is_canonical() {
        let a = PolyCone::from_generators(3, &[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let b = PolyCone::from_generators(3, &[vec![2, 2, 0], vec![1, 1, 1], vec![0, 0, 3]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.equations().basis(), [vec![1, -1, 0]]);
        let again = PolyCone::from_inequalities(3, a.facets(), a.equations().basis()).unwrap();
        assert_eq!(again, a);
    }

    #[test]
    fn permuted_cone_matches_rebuilt_cone() {
        let c = PolyCone::from_generators(3, &[vec![1, 1, 0], vec![0, 2, 1]]).unwrap();
        let perm = [2, 0, 1];
        let direct = PolyCone::from_generators(3, &[vec![1, 0, 1], vec![2, 1, 0]]).unwrap();
        assert_eq!(c.permute_coordinates(&perm).unwrap(), direct);
    }

    #[test]
    fn json_round_trip() {
        let c = PolyCone::from_generators(2, &[vec![1, 0], vec![1, 1]]).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"ambient":2,"rays":[[1,0],[1,1]],"facets":[[0,1],[1,-1]]}"#);
        assert_eq!(serde_json::from_str::<PolyCone>(&text).unwrap(), c);
    }
}
