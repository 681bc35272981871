use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::scalar::TropScalar;
use crate::error::{Error, ParseError, Result};

/// A square matrix over the min-plus semiring, stored row-major.
///
/// Elements of the gossip monoid have zero diagonal and nonnegative entries;
/// [`TropMatrix::is_gossip_shaped`] reports whether a matrix satisfies those
/// constraints. Matrices used as ambient points of tropicalised groups may
/// carry negative entries and arbitrary diagonals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropMatrix {
    n: usize,
    entries: Vec<TropScalar>,
}

impl TropMatrix {
    pub fn new(n: usize, entries: Vec<TropScalar>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { left: n * n, right: entries.len() });
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<TropScalar>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    /// Convenience constructor from integer rows, `None` meaning `∞`.
    pub fn from_int_rows(rows: &[&[Option<i64>]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|v| v.map_or(TropScalar::Infinity, TropScalar::from_int)).collect())
                .collect(),
        )
    }

    /// Tropical identity: zero diagonal, `∞` elsewhere.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { TropScalar::zero() } else { TropScalar::Infinity })
    }

    /// The all-zero matrix `J₀`.
    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| TropScalar::zero())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> TropScalar) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &TropScalar {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[TropScalar] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[TropScalar]> {
        self.entries.chunks(self.n.max(1))
    }

    /// Returns a copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: TropScalar) -> Self {
        let mut out = self.clone();
        out.entries[i * self.n + j] = value;
        out
    }

    /// Min-plus product `(A⊙B)_ij = min_m (A_im + B_mj)`.
    pub fn tmul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let n = self.n;
        Ok(Self::from_fn(n, |i, j| {
            (0..n)
                .map(|m| self.get(i, m) + other.get(m, j))
                .min()
                .unwrap_or(TropScalar::Infinity)
        }))
    }

    /// Entrywise minimum `A ⊕ B`.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(Self {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.oplus(b)).collect(),
        })
    }

    /// Tropical power; `A^0` is the identity.
    pub fn tpow(&self, exp: usize) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..exp {
            acc = acc.tmul(self).expect("same dimension");
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// Simultaneous relabelling of rows and columns: entry `(i, j)` moves to
    /// `(perm[i], perm[j])`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut entries = vec![TropScalar::Infinity; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                entries[perm[i] * self.n + perm[j]] = self.get(i, j).clone();
            }
        }
        Self { n: self.n, entries }
    }

    /// Row permutation: row `i` moves to row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut entries = vec![TropScalar::Infinity; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                entries[perm[i] * self.n + j] = self.get(i, j).clone();
            }
        }
        Self { n: self.n, entries }
    }

    /// Column permutation: column `j` moves to column `perm[j]`.
    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        self.transpose().permute_rows(perm).transpose()
    }

    pub fn is_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i).is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    /// Zero diagonal and nonnegative entries, as for elements of `G_n`.
    pub fn is_gossip_shaped(&self) -> bool {
        self.is_zero_diagonal() && self.is_nonnegative()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn first_negative(&self) -> Option<(usize, usize)> {
        let pos = self.entries.iter().position(|e| e.is_negative())?;
        Some((pos / self.n, pos % self.n))
    }

    /// Image under the quotient map sending finite entries to `0`.
    pub fn support_pattern(&self) -> Self {
        Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|e| if e.is_finite() { TropScalar::zero() } else { TropScalar::Infinity })
                .collect(),
        }
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.n,
            entries: self.rows().map(|r| r.iter().map(|e| e.to_string()).collect()).collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let rows = json
            .entries
            .iter()
            .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let m = Self::from_rows(rows)?;
        if m.n != json.n {
            return Err(Error::DimensionMismatch { left: json.n, right: m.n });
        }
        Ok(m)
    }
}

/// JSON mirror of the text format: `{"n": 3, "entries": [["0","1","inf"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

/// Text format: one row per line, entries separated by commas.
impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", line.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for TropMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split(',').map(|e| e.parse::<TropScalar>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(ParseError::Matrix(format!("expected {n} entries per row, found {}", bad.len())).into());
        }
        Self::from_rows(rows)
    }
}

impl Serialize for TropMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TropMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = MatrixJson::deserialize(deserializer)?;
        Self::from_json(&json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> TropMatrix {
        s.replace(';', "\n").parse().unwrap()
    }

    #[test]
    fn car_bike_product() {
        let car = m("0,90,140;90,0,60;140,60,0");
        let bike = m("0,630,640;630,0,20;640,20,0");
        assert_eq!(car.tmul(&bike).unwrap(), m("0,90,110;90,0,20;140,20,0"));
    }

    #[test]
    fn second_gossip_call() {
        let a = m("0,0,inf;0,0,inf;inf,inf,0");
        let b = m("0,inf,inf;inf,0,0;inf,0,0");
        assert_eq!(a.tmul(&b).unwrap(), m("0,0,0;0,0,0;inf,0,0"));
    }

    #[test]
    fn identity_is_neutral() {
        let a = m("0,1/2,inf;3,0,7;inf,2,0");
        let id = TropMatrix::identity(3);
        assert_eq!(a.tmul(&id).unwrap(), a);
        assert_eq!(id.tmul(&a).unwrap(), a);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = TropMatrix::identity(2).tmul(&TropMatrix::identity(3)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 2, right: 3 });
    }

    #[test]
    fn text_and_json_round_trip() {
        let a = m("0,1/2,inf;3,0,-7;inf,2,0");
        assert_eq!(a.to_string().parse::<TropMatrix>().unwrap(), a);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<TropMatrix>(&json).unwrap(), a);
        assert!("0,1\n2".parse::<TropMatrix>().is_err());
    }

    #[test]
    fn relabel_and_row_permutations() {
        let a = m("0,1,2;3,0,4;5,6,0");
        let r = a.relabel(&[1, 2, 0]);
        assert_eq!(r.get(1, 2), a.get(0, 1));
        assert!(r.is_zero_diagonal());
        let p = a.permute_rows(&[1, 0, 2]);
        assert_eq!(p.get(1, 1), a.get(0, 1));
        let c = a.permute_cols(&[1, 0, 2]);
        assert_eq!(c.get(0, 1), a.get(0, 0));
    }
}
