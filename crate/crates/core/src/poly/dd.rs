//! Double description: from `{x : E x = 0, A x ≥ 0}` to lineality and extreme rays.

use super::linalg::{combine, dot, is_zero, rank, IntVec};

/// Generators of a cone: a lineality basis and extreme rays modulo it.
#[derive(Clone, Debug, Default)]
pub(crate) struct Generators {
    pub lineality: Vec<IntVec>,
    pub rays: Vec<IntVec>,
}

#[derive(Clone)]
struct Ray {
    v: IntVec,
    /// Indices of processed inequalities that vanish on the ray.
    tight: Bits,
}

#[derive(Clone, PartialEq, Eq, Default)]
struct Bits(Vec<u64>);

impl Bits {
    fn set(&mut self, i: usize) {
        if self.0.len() <= i / 64 {
            self.0.resize(i / 64 + 1, 0);
        }
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Self) -> bool {
        self.0.iter().enumerate().all(|(i, a)| a & !o.0.get(i).copied().unwrap_or(0) == 0)
    }
}

/// Incremental double description, starting from the whole space. Rows are
/// added one at a time; pairs of rays are combined only when adjacent, which
/// is decided combinatorially: no third ray is tight on every inequality
/// tight on both.
#[derive(Clone)]
pub(crate) struct DdState {
    lineality: Vec<IntVec>,
    rays: Vec<Ray>,
    processed: Bits,
    inequalities: usize,
}

impl DdState {
    pub fn new(dim: usize) -> Self {
        let lineality = (0..dim).map(|i| (0..dim).map(|j| i128::from(i == j)).collect()).collect();
        Self { lineality, rays: Vec::new(), processed: Bits::default(), inequalities: 0 }
    }

    pub fn add_equation(&mut self, a: &[i128]) {
        self.add_row(a, None);
    }

    pub fn add_inequality(&mut self, a: &[i128]) {
        let index = self.inequalities;
        self.inequalities += 1;
        self.add_row(a, Some(index));
        self.processed.set(index);
    }

    /// Dimension of the current cone.
    pub fn dim(&self) -> usize {
        let mut gens: Vec<IntVec> = self.rays.iter().map(|r| r.v.clone()).collect();
        gens.extend(self.lineality.iter().cloned());
        rank(&gens)
    }

    pub fn rays(&self) -> impl Iterator<Item = &IntVec> {
        self.rays.iter().map(|r| &r.v)
    }

    pub fn generators(self) -> Generators {
        Generators { lineality: self.lineality, rays: self.rays.into_iter().map(|r| r.v).collect() }
    }

    fn add_row(&mut self, a: &[i128], index: Option<usize>) {
        if is_zero(a) {
            if let Some(i) = index {
                self.rays.iter_mut().for_each(|r| r.tight.set(i));
            }
            return;
        }
        if let Some(p) = self.lineality.iter().position(|l| dot(a, l) != 0) {
            // The row cuts the lineality space: project everything else onto
            // its kernel along `l0`, which becomes a new ray for inequalities.
            let mut l0 = self.lineality.remove(p);
            let mut s = dot(a, &l0);
            if s < 0 {
                l0.iter_mut().for_each(|x| *x = -*x);
                s = -s;
            }
            for l in self.lineality.iter_mut() {
                let t = dot(a, l);
                if t != 0 {
                    *l = combine(s, l, -t, &l0);
                }
            }
            for r in self.rays.iter_mut() {
                let t = dot(a, &r.v);
                if t != 0 {
                    r.v = combine(s, &r.v, -t, &l0);
                }
                if let Some(i) = index {
                    r.tight.set(i);
                }
            }
            if index.is_some() {
                self.rays.push(Ray { v: l0, tight: self.processed.clone() });
            }
            return;
        }
        let rays = &self.rays;
        let values: Vec<i128> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for (r, &t) in rays.iter().zip(&values) {
            if t == 0 {
                let mut r = r.clone();
                if let Some(i) = index {
                    r.tight.set(i);
                }
                next.push(r);
            } else if t > 0 && index.is_some() {
                next.push(r.clone());
            }
        }
        for (pi, (p, &tp)) in rays.iter().zip(&values).enumerate() {
            if tp <= 0 {
                continue;
            }
            for (qi, (q, &tq)) in rays.iter().zip(&values).enumerate() {
                if tq >= 0 {
                    continue;
                }
                let common = p.tight.and(&q.tight);
                let adjacent =
                    rays.iter().enumerate().all(|(ri, r)| ri == pi || ri == qi || !common.subset_of(&r.tight));
                if adjacent {
                    let mut tight = common;
                    if let Some(i) = index {
                        tight.set(i);
                    }
                    next.push(Ray { v: combine(tp, &q.v, -tq, &p.v), tight });
                }
            }
        }
        self.rays = next;
    }
}

/// Generators of `{x : E x = 0, A x ≥ 0}`, adding the equations first and
/// then the inequalities in the given order.
pub(crate) fn double_description(dim: usize, equations: &[IntVec], inequalities: &[IntVec]) -> Generators {
    let mut state = DdState::new(dim);
    equations.iter().for_each(|e| state.add_equation(e));
    inequalities.iter().for_each(|a| state.add_inequality(a));
    state.generators()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<IntVec>) -> Vec<IntVec> {
        v.sort();
        v
    }

    #[test]
    fn orthant() {
        let g = double_description(3, &[], &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(g.lineality.is_empty());
        assert_eq!(sorted(g.rays), [vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn square_cone() {
        // |x| ≤ z and |y| ≤ z: the cone over a square.
        let ineqs = vec![vec![1, 0, 1], vec![-1, 0, 1], vec![0, 1, 1], vec![0, -1, 1]];
        let g = double_description(3, &[], &ineqs);
        assert_eq!(sorted(g.rays), [vec![-1, -1, 1], vec![-1, 1, 1], vec![1, -1, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn half_plane_keeps_a_line() {
        let g = double_description(2, &[], &[vec![1, 0]]);
        assert_eq!(g.lineality, [vec![0, 1]]);
        assert_eq!(g.rays, [vec![1, 0]]);
    }

    #[test]
    fn equations_cut_dimension() {
        let g = double_description(3, &[vec![1, -1, 0]], &[vec![1, 0, 0], vec![0, 0, 1]]);
        assert!(g.lineality.is_empty());
        assert_eq!(sorted(g.rays), [vec![0, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn infeasible_strict_region_gives_origin() {
        let g = double_description(2, &[], &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]);
        assert!(g.lineality.is_empty() && g.rays.is_empty());
    }
}
