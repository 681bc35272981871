use serde::{Deserialize, Serialize};

use super::{TropMatrix, TropScalar};
use crate::error::{Error, Result};

/// The lossy phone call matrix `C_kl(a)` (0-based `k`, `l`).
pub fn phone_call_matrix(n: usize, k: usize, l: usize, a: &TropScalar) -> Result<TropMatrix> {
    check_pair(n, k, l)?;
    if a.is_negative() {
        return Err(Error::NegativeWeight);
    }
    Ok(TropMatrix::from_fn(n, |i, j| {
        if i == j {
            TropScalar::zero()
        } else if (i == k && j == l) || (i == l && j == k) {
            a.clone()
        } else {
            TropScalar::Infinity
        }
    }))
}

pub(crate) fn check_pair(n: usize, k: usize, l: usize) -> Result<()> {
    if k == l {
        return Err(Error::SelfCall(k));
    }
    for index in [k, l] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    Ok(())
}

/// One weighted call between the unordered pair `{a, b}`, stored with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Call {
    pub a: usize,
    pub b: usize,
    pub weight: TropScalar,
}

impl Call {
    pub fn new(k: usize, l: usize, weight: TropScalar) -> Result<Self> {
        if k == l {
            return Err(Error::SelfCall(k));
        }
        if weight.is_negative() {
            return Err(Error::NegativeWeight);
        }
        Ok(Self { a: k.min(l), b: k.max(l), weight })
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn matrix(&self, n: usize) -> Result<TropMatrix> {
        phone_call_matrix(n, self.a, self.b, &self.weight)
    }
}

/// An ordered list of calls among `n` gossipers; its product is the
/// tropical product of the call matrices in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CallSequence {
    pub n: usize,
    pub calls: Vec<Call>,
}

impl CallSequence {
    pub fn new(n: usize, calls: Vec<Call>) -> Result<Self> {
        for c in &calls {
            check_pair(n, c.a, c.b)?;
        }
        Ok(Self { n, calls })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, calls: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.calls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.calls.is_empty()
    }

    pub fn push(&mut self, call: Call) -> Result<()> {
        check_pair(self.n, call.a, call.b)?;
        self.calls.push(call);
        Ok(())
    }

    /// The product, computed by right-multiplying the identity call by call.
    pub fn product(&self) -> TropMatrix {
        product_of(self.n, self.calls.iter())
    }

    /// Product with the call at `skip` left out.
    pub fn product_without(&self, skip: usize) -> TropMatrix {
        product_of(
            self.n,
            self.calls.iter().enumerate().filter(|&(t, _)| t != skip).map(|(_, c)| c),
        )
    }

    /// Relabels gossipers by `perm` (0-based).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        Self {
            n: self.n,
            calls: self
                .calls
                .iter()
                .map(|c| Call::new(perm[c.a], perm[c.b], c.weight.clone()).expect("valid relabelling"))
                .collect(),
        }
    }
}

/// Right-multiplies by `C_kl(a)` in place of a full matrix product: columns
/// `k` and `l` both become `min(col_k, col_l + a)` and `min(col_l, col_k + a)`.
pub fn apply_lossy_call(m: &TropMatrix, call: &Call) -> TropMatrix {
    let n = m.n();
    let (k, l) = call.pair();
    let mut out = m.clone();
    for i in 0..n {
        let via_l = m.get(i, l) + &call.weight;
        let via_k = m.get(i, k) + &call.weight;
        if via_l < *m.get(i, k) {
            out = out.with_entry(i, k, via_l);
        }
        if via_k < *m.get(i, l) {
            out = out.with_entry(i, l, via_k);
        }
    }
    out
}

fn product_of<'a>(n: usize, calls: impl Iterator<Item = &'a Call>) -> TropMatrix {
    calls.fold(TropMatrix::identity(n), |acc, c| apply_lossy_call(&acc, c))
}
