use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::trop::{TropMatrix, TropScalar};

/// The one-parameter family `[[0,a,a,∞],[∞,0,∞,a],[∞,∞,0,a],[∞,∞,∞,0]]`,
/// the tropicalization of a one-dimensional additive group of 4×4 matrices.
pub fn additive_family(a: &TropScalar) -> TropMatrix {
    let inf = TropScalar::Infinity;
    let z = TropScalar::zero();
    TropMatrix::from_rows(vec![
        vec![z.clone(), a.clone(), a.clone(), inf.clone()],
        vec![inf.clone(), z.clone(), inf.clone(), a.clone()],
        vec![inf.clone(), inf.clone(), z.clone(), a.clone()],
        vec![inf.clone(), inf.clone(), inf, z],
    ])
    .expect("square")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveReport {
    pub left: TropMatrix,
    pub right: TropMatrix,
    pub product: TropMatrix,
    /// The product has `min{a,b}` in the family's positions and `a+b` in the corner.
    pub product_has_expected_shape: bool,
    pub is_member: bool,
}

/// Multiplies two members of the family and tests whether the product stays inside.
pub fn additive_counterexample(a: &TropScalar, b: &TropScalar) -> Result<AdditiveReport> {
    let left = additive_family(a);
    let right = additive_family(b);
    let product = left.tmul(&right)?;
    let m = a.oplus(b);
    let expected = additive_family(&m).with_entry(0, 3, a + b);
    let is_member = product == additive_family(product.get(0, 1));
    Ok(AdditiveReport { product_has_expected_shape: product == expected, left, right, product, is_member })
}
