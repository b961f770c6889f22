//! Relations pushed forward and pulled back along a mapping.
//!
//! [`induce`] and [`inverse_induce`] are the pairwise forms. The
//! [`union_form`] module holds the fiber-by-fiber formulation of the same two
//! maps; it is kept separate so the law checker can compare the two.

use crate::error::Result;
use crate::mapping::{FiniteMapping, Side};
use crate::relation::{ensure_same, BinaryRelation, Subset};

/// `f̂(R) = {(f(x), f(y)) | (x, y) ∈ R}`.
pub fn induce(f: &FiniteMapping, r: &BinaryRelation) -> Result<BinaryRelation> {
    ensure_same(f.domain(), r.universe(), "induce")?;
    BinaryRelation::from_index_pairs(
        f.codomain(),
        r.pairs().map(|(x, y)| (f.apply(x), f.apply(y))),
    )
}

/// `f̂⁻¹(Q) = {(x, y) | (f(x), f(y)) ∈ Q}`.
pub fn inverse_induce(f: &FiniteMapping, q: &BinaryRelation) -> Result<BinaryRelation> {
    ensure_same(f.codomain(), q.universe(), "inverse induce")?;
    let n = f.domain().len();
    let pairs = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| q.contains(f.apply(x), f.apply(y)));
    BinaryRelation::from_index_pairs(f.domain(), pairs)
}

fn induced_neighborhood(
    f: &FiniteMapping,
    r: &BinaryRelation,
    y: usize,
    side: Side,
) -> Result<Subset> {
    ensure_same(f.domain(), r.universe(), "induced neighborhood")?;
    f.codomain().check_index(y)?;
    let mut out = Subset::empty(f.codomain());
    for x in f.fiber_over(y).iter() {
        out = out.union(&f.image(&side.neighborhood(r, x))?);
    }
    Ok(out)
}

/// `f̂(R)_p(y)` as the union of `f(R_p(x'))` over the fiber above `y`,
/// without building `f̂(R)`. Empty when `y` is outside the range of `f`.
pub fn induced_pred_neighborhood(
    f: &FiniteMapping,
    r: &BinaryRelation,
    y: usize,
) -> Result<Subset> {
    induced_neighborhood(f, r, y, Side::Predecessor)
}

/// Successor counterpart of [`induced_pred_neighborhood`].
pub fn induced_succ_neighborhood(
    f: &FiniteMapping,
    r: &BinaryRelation,
    y: usize,
) -> Result<Subset> {
    induced_neighborhood(f, r, y, Side::Successor)
}

pub mod union_form {
    //! `f̂(R) = ⋃_{x∈U} {f(x)} × f(R_s(x))` and
    //! `f̂⁻¹(Q) = ⋃_{y∈V} f⁻¹(y) × f⁻¹(Q_s(y))`.

    use super::*;

    pub fn induce(f: &FiniteMapping, r: &BinaryRelation) -> Result<BinaryRelation> {
        ensure_same(f.domain(), r.universe(), "induce (union form)")?;
        let mut pairs = Vec::new();
        for x in 0..f.domain().len() {
            let image = f.image(&r.succ_neighborhood(x))?;
            pairs.extend(image.iter().map(|z| (f.apply(x), z)));
        }
        BinaryRelation::from_index_pairs(f.codomain(), pairs)
    }

    pub fn inverse_induce(f: &FiniteMapping, q: &BinaryRelation) -> Result<BinaryRelation> {
        ensure_same(f.codomain(), q.universe(), "inverse induce (union form)")?;
        let mut pairs = Vec::new();
        for y in 0..f.codomain().len() {
            let sources = f.fiber_over(y);
            let targets = f.preimage(&q.succ_neighborhood(y))?;
            for a in sources.iter() {
                pairs.extend(targets.iter().map(|b| (a, b)));
            }
        }
        BinaryRelation::from_index_pairs(f.domain(), pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Layered;
    use crate::mapping::is_predecessor_consistent;
    use crate::relation::Universe;

    #[test]
    fn forward_image_of_layered_relation() {
        let s = Layered::new();
        let image = induce(&s.f1, &s.r).unwrap();
        assert_eq!(
            image.label_pairs(),
            vec![
                ("y1", "y2"),
                ("y2", "y4"),
                ("y2", "y5"),
                ("y4", "y6"),
                ("y5", "y6")
            ]
        );
        assert_eq!(union_form::induce(&s.f1, &s.r).unwrap(), image);
    }

    #[test]
    fn pullback_of_forward_image() {
        let s = Layered::new();
        let back = inverse_induce(&s.f1, &induce(&s.f1, &s.r).unwrap()).unwrap();
        assert_eq!(
            back.label_pairs(),
            vec![
                ("x1", "x2"),
                ("x1", "x3"),
                ("x2", "x4"),
                ("x2", "x5"),
                ("x3", "x4"),
                ("x3", "x5"),
                ("x4", "x6"),
                ("x4", "x7"),
                ("x5", "x6"),
                ("x5", "x7"),
            ]
        );
        assert!(s.r.is_subset_of(&back));
        let q = induce(&s.f1, &s.r).unwrap();
        assert_eq!(union_form::inverse_induce(&s.f1, &q).unwrap(), back);
    }

    #[test]
    fn degenerate_mappings() {
        let s = Layered::new();
        assert!(induce(&s.f1, &BinaryRelation::empty(&s.u))
            .unwrap()
            .is_empty());
        assert!(inverse_induce(&s.f1, &BinaryRelation::empty(&s.v))
            .unwrap()
            .is_empty());
        let id = FiniteMapping::identity(&s.u);
        assert_eq!(induce(&id, &s.r).unwrap(), s.r);

        // a bijection that reverses the order
        let w = Universe::canonical("w", 7).unwrap();
        let rev = FiniteMapping::new(&s.u, &w, (0..7).rev().collect()).unwrap();
        let there = induce(&rev, &s.r).unwrap();
        assert_eq!(there.len(), 9);
        assert_eq!(inverse_induce(&rev, &there).unwrap(), s.r);
    }

    #[test]
    fn induced_neighborhoods_without_materializing() {
        let s = Layered::new();
        let direct = induce(&s.f1, &s.r).unwrap();
        assert_eq!(
            induced_pred_neighborhood(&s.f1, &s.r, s.y("y6")).unwrap(),
            s.vset(&["y4", "y5"])
        );
        // y3 is not hit by f1
        assert!(induced_pred_neighborhood(&s.f1, &s.r, s.y("y3"))
            .unwrap()
            .is_empty());
        assert!(induced_succ_neighborhood(&s.f1, &s.r, s.y("y3"))
            .unwrap()
            .is_empty());
        for y in 0..6 {
            assert_eq!(
                induced_pred_neighborhood(&s.f1, &s.r, y).unwrap(),
                direct.pred_neighborhood(y)
            );
            assert_eq!(
                induced_succ_neighborhood(&s.f1, &s.r, y).unwrap(),
                direct.succ_neighborhood(y)
            );
        }
        assert!(is_predecessor_consistent(&s.f1, &s.r).unwrap());
        for x in 0..7 {
            assert_eq!(
                induced_pred_neighborhood(&s.f1, &s.r, s.f1.apply(x)).unwrap(),
                s.f1.image(&s.r.pred_neighborhood(x)).unwrap()
            );
        }
    }

    #[test]
    fn universe_checks() {
        let s = Layered::new();
        assert!(induce(&s.f1, &BinaryRelation::empty(&s.v)).is_err());
        assert!(inverse_induce(&s.f1, &s.r).is_err());
        assert!(induced_pred_neighborhood(&s.f1, &s.r, 6).is_err());
    }
}
