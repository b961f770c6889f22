//! Lower and upper approximations in a generalized approximation space.

use crate::error::Result;
use crate::relation::{ensure_same, BinaryRelation, Subset};

fn collect(r: &BinaryRelation, x: &Subset, keep: impl Fn(usize) -> bool) -> Result<Subset> {
    ensure_same(r.universe(), x.universe(), "approximation")?;
    Subset::from_members(r.universe(), (0..r.size()).map(keep).collect())
}

/// `{x | R_s(x) ⊆ X}`. Elements with no successors always qualify.
pub fn lower_approx(r: &BinaryRelation, x: &Subset) -> Result<Subset> {
    collect(r, x, |e| r.succ_neighborhood(e).is_subset_of(x))
}

/// `{x | R_s(x) ∩ X ≠ ∅}`.
pub fn upper_approx(r: &BinaryRelation, x: &Subset) -> Result<Subset> {
    collect(r, x, |e| r.succ_neighborhood(e).meets(x))
}

/// `{x | R_p(x) ⊆ X}`.
pub fn lower_approx_pred(r: &BinaryRelation, x: &Subset) -> Result<Subset> {
    collect(r, x, |e| r.pred_neighborhood(e).is_subset_of(x))
}

/// `{x | R_p(x) ∩ X ≠ ∅}`.
pub fn upper_approx_pred(r: &BinaryRelation, x: &Subset) -> Result<Subset> {
    collect(r, x, |e| r.pred_neighborhood(e).meets(x))
}

/// A set is definable when it coincides with both of its approximations.
pub fn is_definable(r: &BinaryRelation, x: &Subset) -> Result<bool> {
    Ok(lower_approx(r, x)? == *x && upper_approx(r, x)? == *x)
}
