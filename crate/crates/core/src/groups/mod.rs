//! Tropicalized matrix groups: the tropical determinant, `Trop(SL_n)`, an
//! additive group whose tropicalization is not closed under products, and
//! the orthogonal groups in dimensions two and three.

mod additive;
mod det;
mod orthogonal;
mod sample;

pub use additive::{additive_counterexample, additive_family, AdditiveReport};
pub use det::{in_trop_sl, sl_closure_check, tdet, SlReport, TropDet};
pub use orthogonal::{
    o2_classify, o3_nonneg_classify, o3_prevariety_check, o3_product_evidence, O2Cone, O3Cone, O3Classification,
    O3Evidence, O3Prevariety, Residue,
};
pub use sample::{sample_gossip_element, sample_signed_matrix, sample_sl_member};

use crate::trop::TropMatrix;

/// Square matrices over `ℚ ∪ {∞}` with no sign or diagonal constraint.
pub type SignedTropMatrix = TropMatrix;
