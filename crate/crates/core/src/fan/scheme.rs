use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trop::{check_pair, Call, CallSequence, TropMatrix, TropScalar};

/// Sum of a subset of the call weights `a_1, …, a_k`, as a bitmask over the
/// call positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinForm(pub u16);

impl LinForm {
    pub fn uses(&self, t: usize) -> bool {
        self.0 >> t & 1 == 1
    }

    pub fn coefficients(&self, k: usize) -> Vec<i128> {
        (0..k).map(|t| i128::from(self.uses(t))).collect()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn evaluate(&self, weights: &[TropScalar]) -> TropScalar {
        (0..weights.len()).filter(|&t| self.uses(t)).fold(TropScalar::zero(), |acc, t| &acc + &weights[t])
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("0");
        }
        let terms: Vec<String> = (0..16).filter(|&t| self.uses(t)).map(|t| format!("a{}", t + 1)).collect();
        f.write_str(&terms.join("+"))
    }
}

/// A product `C_{I_1}(a_1) ⊙ ⋯ ⊙ C_{I_k}(a_k)` with the pairs fixed and the
/// weights free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductScheme {
    n: usize,
    edges: Vec<(usize, usize)>,
}

pub const MAX_SCHEME_LENGTH: usize = 16;

impl ProductScheme {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.is_empty() || edges.len() > MAX_SCHEME_LENGTH {
            return Err(Error::Unsupported(format!("scheme length must lie in 1..={MAX_SCHEME_LENGTH}")));
        }
        for &(k, l) in &edges {
            check_pair(n, k, l)?;
        }
        let edges = edges.into_iter().map(|(k, l)| (k.min(l), k.max(l))).collect();
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The product at the given weights.
    pub fn evaluate(&self, weights: &[TropScalar]) -> Result<TropMatrix> {
        if weights.len() != self.len() {
            return Err(Error::DimensionMismatch { left: self.len(), right: weights.len() });
        }
        let calls = self
            .edges
            .iter()
            .zip(weights)
            .map(|(&(k, l), w)| Call::new(k, l, w.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(CallSequence::new(self.n, calls)?.product())
    }
}

/// All index-increasing simple paths from `i` to `j` along the scheme's
/// edges, as forms. Entry `(i, j)` of the product is the minimum of these
/// forms; an empty list means the entry is `∞`, and `i = j` gives the zero form.
pub fn entry_path_forms(scheme: &ProductScheme, i: usize, j: usize) -> Vec<LinForm> {
    if i == j {
        return vec![LinForm(0)];
    }
    let mut out = Vec::new();
    walk(scheme.edges(), i, j, 0, 1 << i, 0, &mut out);
    out.sort();
    out
}

fn walk(edges: &[(usize, usize)], at: usize, goal: usize, from: usize, visited: u32, form: u16, out: &mut Vec<LinForm>) {
    for (t, &(a, b)) in edges.iter().enumerate().skip(from) {
        let next = if a == at {
            b
        } else if b == at {
            a
        } else {
            continue;
        };
        if visited >> next & 1 == 1 {
            continue;
        }
        let f = form | 1 << t;
        if next == goal {
            out.push(LinForm(f));
        } else {
            walk(edges, next, goal, t + 1, visited | 1 << next, f, out);
        }
    }
}

/// The forms that are not pointwise dominated by another: minimal under inclusion.
pub fn minimal_forms(forms: &[LinForm]) -> Vec<LinForm> {
    forms.iter().copied().filter(|f| !forms.iter().any(|g| g != f && g.is_subset_of(f))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scheme(n: usize, e: &[(usize, usize)]) -> ProductScheme {
        ProductScheme::new(n, e.to_vec()).unwrap()
    }

    /// Every increasing walk, by brute force over subsequences of calls.
    fn brute_force_forms(s: &ProductScheme, i: usize, j: usize) -> Vec<LinForm> {
        let k = s.len();
        let mut out = Vec::new();
        for mask in 0u16..1 << k {
            let mut at = i;
            let mut ok = true;
            let mut seen = vec![i];
            for t in (0..k).filter(|&t| mask >> t & 1 == 1) {
                let (a, b) = s.edges()[t];
                at = if a == at { b } else if b == at { a } else { ok = false; break };
                if seen.contains(&at) {
                    ok = false;
                    break;
                }
                seen.push(at);
            }
            if ok && at == j && mask != 0 {
                out.push(LinForm(mask));
            }
        }
        out.sort();
        out
    }

    #[test]
    fn triangle_scheme_forms() {
        let s = scheme(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(entry_path_forms(&s, 0, 2), [LinForm(0b011), LinForm(0b100)]);
        assert_eq!(entry_path_forms(&s, 2, 0), [LinForm(0b100)]);
        assert!(entry_path_forms(&scheme(3, &[(0, 1)]), 0, 2).is_empty());
        assert_eq!(LinForm(0b011).to_string(), "a1+a2");
    }

    #[test]
    fn forms_match_brute_force_and_products() {
        let s = scheme(4, &[(0, 1), (1, 2), (0, 1), (2, 3), (0, 3), (1, 3)]);
        let weights: Vec<TropScalar> = [3, 1, 4, 1, 5, 9].iter().map(|&w| TropScalar::from_int(w)).collect();
        let product = s.evaluate(&weights).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let forms = entry_path_forms(&s, i, j);
                if i != j {
                    assert_eq!(forms, brute_force_forms(&s, i, j));
                }
                let best = forms.iter().map(|f| f.evaluate(&weights)).min().unwrap_or(TropScalar::Infinity);
                assert_eq!(&best, product.get(i, j), "entry ({i}, {j})");
            }
        }
    }

    #[test]
    fn dominated_forms_are_dropped() {
        let forms = [LinForm(0b001), LinForm(0b011), LinForm(0b110)];
        assert_eq!(minimal_forms(&forms), [LinForm(0b001), LinForm(0b110)]);
    }
}
