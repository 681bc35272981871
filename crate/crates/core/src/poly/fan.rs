use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cone::PolyCone;
use super::dd::double_description;
use super::linalg::{rank, IntVec};
use crate::error::{Error, Result};

/// Outcome of checking that a family of cones and all their faces form a fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanCheck {
    pub is_fan: bool,
    /// Distinct faces of dimension `1..=max_dim` across all cones.
    pub f_vector: Vec<usize>,
    /// First pair (in index order) whose intersection is not a face of both.
    pub witness: Option<FanWitness>,
    pub max_dim: usize,
    /// Pairs of maximal cones meeting in a face of dimension `max_dim - 1`.
    pub codim1_pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanWitness {
    pub first: usize,
    pub second: usize,
    /// Rays of the intersection.
    pub intersection_rays: Vec<IntVec>,
}

/// Global identity of a face: its lineality basis and sorted ray vectors.
type FaceKey = (Vec<IntVec>, Vec<IntVec>);

/// Checks that any two of the cones meet in a common face. Faces of a single
/// cone always do, and faces of two cones meet in a common face whenever the
/// two cones do, so the pairwise test on the given cones suffices.
pub fn fan_check(cones: &[PolyCone]) -> Result<FanCheck> {
    let Some(ambient) = cones.first().map(PolyCone::ambient) else {
        return Ok(FanCheck { is_fan: true, f_vector: Vec::new(), witness: None, max_dim: 0, codim1_pairs: Vec::new() });
    };
    if let Some(c) = cones.iter().find(|c| c.ambient() != ambient) {
        return Err(Error::DimensionMismatch { left: ambient, right: c.ambient() });
    }
    let max_dim = cones.iter().map(PolyCone::dim).max().unwrap_or(0);

    let per_cone: Vec<Vec<(usize, FaceKey)>> = cones
        .par_iter()
        .map(|c| {
            c.faces()
                .into_iter()
                .map(|f| {
                    let rays = f.rays.iter().map(|&r| c.rays()[r].clone()).collect();
                    (f.dim, (c.lineality().basis().to_vec(), rays))
                })
                .collect()
        })
        .collect();
    let mut distinct: BTreeMap<usize, BTreeSet<FaceKey>> = BTreeMap::new();
    for (dim, key) in per_cone.into_iter().flatten() {
        distinct.entry(dim).or_default().insert(key);
    }
    let f_vector = (1..=max_dim).map(|d| distinct.get(&d).map_or(0, BTreeSet::len)).collect();

    let pairs: Vec<(usize, usize)> = (0..cones.len()).flat_map(|i| (i + 1..cones.len()).map(move |j| (i, j))).collect();
    let results: Vec<PairOutcome> = pairs.par_iter().map(|&(i, j)| check_pair(&cones[i], &cones[j])).collect();

    let mut witness = None;
    let mut codim1_pairs = Vec::new();
    for (&(i, j), r) in pairs.iter().zip(results) {
        if !r.is_common_face && witness.is_none() {
            witness = Some(FanWitness { first: i, second: j, intersection_rays: r.rays });
        } else if r.is_common_face
            && max_dim > 0
            && r.dim + 1 == max_dim
            && cones[i].dim() == max_dim
            && cones[j].dim() == max_dim
        {
            codim1_pairs.push((i, j));
        }
    }
    Ok(FanCheck { is_fan: witness.is_none(), f_vector, witness, max_dim, codim1_pairs })
}

struct PairOutcome {
    is_common_face: bool,
    dim: usize,
    rays: Vec<IntVec>,
}

fn check_pair(a: &PolyCone, b: &PolyCone) -> PairOutcome {
    let (eqs, ineqs) = a.joint_h_rep(b);
    let g = double_description(a.ambient(), &eqs, &ineqs);
    let mut gens = g.rays.clone();
    gens.extend(g.lineality.iter().cloned());
    let dim = rank(&gens);
    let is_common_face = is_face_of(a, b, &gens) && is_face_of(b, a, &gens);
    let mut rays = g.rays;
    rays.sort();
    PairOutcome { is_common_face, dim, rays }
}

/// Whether `a ∩ b`, spanned by `gens`, is the smallest face of `a` containing
/// it: that face lies in `a ∩ b` exactly when it lies in `b`.
fn is_face_of(a: &PolyCone, b: &PolyCone, gens: &[IntVec]) -> bool {
    let face = a.minimal_face_rays(gens);
    let inside = |v: &IntVec| b.contains_point(v).unwrap_or(false);
    face.iter().all(|&r| inside(&a.rays()[r]))
        && a.lineality().basis().iter().all(|l| inside(l) && inside(&l.iter().map(|x| -x).collect()))
}

/// Connected components of the graph on `0..n` with the given edges.
pub fn connected_components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut components = n;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components
}
