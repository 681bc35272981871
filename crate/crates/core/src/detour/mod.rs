//! Labelled weighted graphs with detours, which realise nonnegative
//! matrices with zero diagonal that need not be symmetric.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trop::{kleene_star, TropMatrix, TropScalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: TropScalar,
}

/// A walk from the vertex labelled `from` to the vertex labelled `to`,
/// given as its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detour {
    pub from: usize,
    pub to: usize,
    pub walk: Vec<usize>,
}

/// An undirected simple graph on `vertices` vertices with finite nonnegative
/// edge weights, a labelling of `0..n` by vertices, and at most one detour
/// per ordered pair of labels. Each detour is strictly heavier than a
/// shortest path between its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct DetourGraph {
    vertices: usize,
    edges: Vec<Edge>,
    labels: Vec<usize>,
    detours: Vec<Detour>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<Edge>,
    labels: Vec<usize>,
    detours: Vec<Detour>,
}

impl TryFrom<GraphJson> for DetourGraph {
    type Error = Error;

    fn try_from(g: GraphJson) -> Result<Self> {
        DetourGraph::new(g.vertices, g.edges, g.labels, g.detours)
    }
}

impl From<DetourGraph> for GraphJson {
    fn from(g: DetourGraph) -> Self {
        GraphJson { vertices: g.vertices, edges: g.edges, labels: g.labels, detours: g.detours }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidGraph(msg.into())
}

impl DetourGraph {
    pub fn new(vertices: usize, edges: Vec<Edge>, labels: Vec<usize>, detours: Vec<Detour>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for e in &edges {
            if e.u >= vertices || e.v >= vertices {
                return Err(invalid(format!("edge {}-{} leaves the vertex set", e.u, e.v)));
            }
            if e.u == e.v {
                return Err(invalid(format!("loop at vertex {}", e.u)));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(invalid(format!("parallel edges {}-{}", e.u, e.v)));
            }
            if e.weight.is_infinite() || e.weight.is_negative() {
                return Err(invalid(format!("edge {}-{} needs a finite nonnegative weight", e.u, e.v)));
            }
        }
        if let Some(&v) = labels.iter().find(|&&v| v >= vertices) {
            return Err(invalid(format!("label points at missing vertex {v}")));
        }
        let g = Self { vertices, edges, labels, detours };
        let distances = g.vertex_distances();
        let mut pairs = BTreeSet::new();
        for d in &g.detours {
            let n = g.labels.len();
            if d.from >= n || d.to >= n || d.from == d.to {
                return Err(invalid(format!("detour ({}, {}) needs two distinct labels", d.from, d.to)));
            }
            if !pairs.insert((d.from, d.to)) {
                return Err(invalid(format!("two detours from {} to {}", d.from, d.to)));
            }
            if d.walk.first() != Some(&g.labels[d.from]) || d.walk.last() != Some(&g.labels[d.to]) {
                return Err(invalid(format!("detour ({}, {}) has the wrong endpoints", d.from, d.to)));
            }
            let weight = g.walk_weight(&d.walk)?;
            if &weight <= distances.get(g.labels[d.from], g.labels[d.to]) {
                return Err(invalid(format!("detour ({}, {}) is not longer than a shortest path", d.from, d.to)));
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn detours(&self) -> &[Detour] {
        &self.detours
    }

    fn edge_weight(&self, u: usize, v: usize) -> Option<&TropScalar> {
        self.edges.iter().find(|e| (e.u, e.v) == (u, v) || (e.v, e.u) == (u, v)).map(|e| &e.weight)
    }

    fn walk_weight(&self, walk: &[usize]) -> Result<TropScalar> {
        walk.windows(2).try_fold(TropScalar::zero(), |s, w| {
            self.edge_weight(w[0], w[1])
                .map(|x| &s + x)
                .ok_or_else(|| invalid(format!("walk uses missing edge {}-{}", w[0], w[1])))
        })
    }

    /// Shortest-path distances between all vertices.
    fn vertex_distances(&self) -> TropMatrix {
        let mut adj = TropMatrix::from_fn(self.vertices, |i, j| {
            if i == j {
                TropScalar::zero()
            } else {
                TropScalar::Infinity
            }
        });
        for e in &self.edges {
            adj = adj.with_entry(e.u, e.v, e.weight.clone()).with_entry(e.v, e.u, e.weight.clone());
        }
        kleene_star(&adj).expect("nonnegative weights")
    }

    /// The same graph without its detours.
    pub fn without_detours(&self) -> Self {
        Self { detours: Vec::new(), ..self.clone() }
    }

    /// Detour weight minus the shortest distance, per ordered pair.
    pub fn surplus_lengths(&self) -> BTreeMap<(usize, usize), TropScalar> {
        let dist = self.vertex_distances();
        self.detours
            .iter()
            .map(|d| {
                let w = self.walk_weight(&d.walk).expect("validated walk");
                let base = dist.get(self.labels[d.from], self.labels[d.to]).as_rational().expect("finite").clone();
                ((d.from, d.to), TropScalar::Finite(w.as_rational().expect("finite") - base))
            })
            .collect()
    }
}

/// The realised matrix: detour weights where detours exist, shortest
/// distances between labelled vertices elsewhere.
pub fn realize(g: &DetourGraph) -> TropMatrix {
    let dist = g.vertex_distances();
    let mut a = TropMatrix::from_fn(g.n(), |i, j| dist.get(g.labels[i], g.labels[j]).clone());
    for d in &g.detours {
        a = a.with_entry(d.from, d.to, g.walk_weight(&d.walk).expect("validated walk"));
    }
    a
}

/// Reverses every detour, which transposes the realised matrix.
pub fn transpose_detours(g: &DetourGraph) -> DetourGraph {
    let detours = g
        .detours
        .iter()
        .map(|d| Detour { from: d.to, to: d.from, walk: d.walk.iter().rev().copied().collect() })
        .collect();
    DetourGraph { detours, ..g.clone() }
}

/// Whether forgetting the detours realises the Kleene star of the realised matrix.
pub fn kleene_compatible(g: &DetourGraph) -> bool {
    kleene_star(&realize(g)).is_ok_and(|star| star == realize(&g.without_detours()))
}

fn edge(u: usize, v: usize, weight: &TropScalar) -> Edge {
    Edge { u, v, weight: weight.clone() }
}

/// A path `ℓ(0) — x — ℓ(1)` with weights `a, b` and one detour from `0` to
/// `1` that runs back and forth once over the first edge. It realises
/// `[[0, 3a+b], [a+b, 0]]`; the detour requires `a > 0`.
pub fn path_with_detour(a: &TropScalar, b: &TropScalar) -> Result<DetourGraph> {
    DetourGraph::new(
        3,
        vec![edge(0, 1, a), edge(1, 2, b)],
        vec![0, 2],
        vec![Detour { from: 0, to: 1, walk: vec![0, 1, 0, 1, 2] }],
    )
}

/// The path `0 — 1 — 2 — 3` with weights `a, d, f`, pendant edges of weights
/// `b` at vertex 0, `c` at vertex 1 and `e` at vertex 2, and detours for the
/// pairs `(0,3), (1,3), (3,0), (3,1)` that bounce along the pendants. It
/// realises the simplicial six-dimensional cone
///
/// ```text
/// [ 0          a        a+d   a+2b+d+2e+f ]
/// [ a          0        d     2c+d+2e+f   ]
/// [ a+d        d        0     f           ]
/// [ f+2e+d+a   f+2e+d   f     0           ]
/// ```
///
/// The detours require `b, c, e > 0`.
pub fn six_parameter_graph(params: &[TropScalar; 6]) -> Result<DetourGraph> {
    let [a, b, c, d, e, f] = params;
    let (pb, pc, pe) = (4, 5, 6);
    DetourGraph::new(
        7,
        vec![edge(0, 1, a), edge(1, 2, d), edge(2, 3, f), edge(0, pb, b), edge(1, pc, c), edge(2, pe, e)],
        vec![0, 1, 2, 3],
        vec![
            Detour { from: 0, to: 3, walk: vec![0, pb, 0, 1, 2, pe, 2, 3] },
            Detour { from: 1, to: 3, walk: vec![1, pc, 1, 2, pe, 2, 3] },
            Detour { from: 3, to: 0, walk: vec![3, 2, pe, 2, 1, 0] },
            Detour { from: 3, to: 1, walk: vec![3, 2, pe, 2, 1] },
        ],
    )
}

/// Entry forms of the six-parameter cone over `(a, b, c, d, e, f)`, row-major.
pub fn six_parameter_forms() -> Vec<[i128; 6]> {
    let rows: [[[i128; 6]; 4]; 4] = [
        [[0; 6], [1, 0, 0, 0, 0, 0], [1, 0, 0, 1, 0, 0], [1, 2, 0, 1, 2, 1]],
        [[1, 0, 0, 0, 0, 0], [0; 6], [0, 0, 0, 1, 0, 0], [0, 0, 2, 1, 2, 1]],
        [[1, 0, 0, 1, 0, 0], [0, 0, 0, 1, 0, 0], [0; 6], [0, 0, 0, 0, 0, 1]],
        [[1, 0, 0, 1, 2, 1], [0, 0, 0, 1, 2, 1], [0, 0, 0, 0, 0, 1], [0; 6]],
    ];
    rows.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyCone;

    fn s(v: i64) -> TropScalar {
        TropScalar::from_int(v)
    }

    #[test]
    fn path_example() {
        let g = path_with_detour(&s(2), &s(5)).unwrap();
        assert_eq!(realize(&g), TropMatrix::from_rows(vec![vec![s(0), s(11)], vec![s(7), s(0)]]).unwrap());
        let t = transpose_detours(&g);
        assert_eq!(realize(&t), realize(&g).transpose());
        assert_eq!(transpose_detours(&t), g);
        assert!(!kleene_compatible(&g));
        assert!(path_with_detour(&s(0), &s(5)).is_err());
    }

    #[test]
    fn six_parameter_example() {
        let p = [1, 2, 3, 4, 5, 6].map(s);
        let g = six_parameter_graph(&p).unwrap();
        let a = realize(&g);
        for (k, form) in six_parameter_forms().iter().enumerate() {
            let v: i64 = form.iter().zip([1, 2, 3, 4, 5, 6]).map(|(&c, x)| c as i64 * x).sum();
            assert_eq!(a.entries()[k], s(v), "entry {k}");
        }
        assert_eq!(a.get(0, 3), &s(1 + 4 + 4 + 10 + 6));
        assert!(kleene_compatible(&g));
        assert_eq!(realize(&transpose_detours(&g)), a.transpose());
        assert_eq!(g.surplus_lengths()[&(0, 3)], s(14));
    }

    #[test]
    fn six_parameter_cone_is_simplicial() {
        let forms = six_parameter_forms();
        let rays: Vec<Vec<i128>> = (0..6).map(|t| forms.iter().map(|f| f[t]).collect()).collect();
        let cone = PolyCone::from_generators(16, &rays).unwrap();
        assert_eq!(cone.dim(), 6);
        assert_eq!(cone.rays().len(), 6);
        assert_eq!(cone.f_vector(), [6, 15, 20, 15, 6, 1]);
    }

    #[test]
    fn plain_graphs_realise_metrics() {
        let g = DetourGraph::new(3, vec![edge(0, 1, &s(1)), edge(1, 2, &s(2))], vec![0, 1, 2], vec![]).unwrap();
        let a = realize(&g);
        assert!(crate::trop::is_metric(&a));
        assert_eq!(realize(&transpose_detours(&g)), a);
        assert!(kleene_compatible(&g));
    }

    #[test]
    fn validation() {
        let e = vec![edge(0, 1, &s(1))];
        assert!(DetourGraph::new(2, vec![edge(0, 0, &s(1))], vec![0], vec![]).is_err());
        assert!(DetourGraph::new(2, e.clone(), vec![2], vec![]).is_err());
        let short = Detour { from: 0, to: 1, walk: vec![0, 1] };
        assert!(DetourGraph::new(2, e.clone(), vec![0, 1], vec![short]).is_err());
        let long = Detour { from: 0, to: 1, walk: vec![0, 1, 0, 1] };
        assert!(DetourGraph::new(2, e.clone(), vec![0, 1], vec![long.clone(), long.clone()]).is_err());
        let g = DetourGraph::new(2, e, vec![0, 1], vec![long]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<DetourGraph>(&json).unwrap(), g);
        assert!(serde_json::from_str::<DetourGraph>(&json.replace("[0,1,0,1]", "[0,1]")).is_err());
    }
}
