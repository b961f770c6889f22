//! Total mappings between universes and the consistency predicates.

use std::fmt;

use crate::error::{Error, Result};
use crate::relation::{ensure_same, BinaryRelation, Subset, Universe};

/// A total function from `domain` to `codomain`, stored as one codomain
/// index per domain element.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteMapping {
    domain: Universe,
    codomain: Universe,
    targets: Vec<usize>,
}

impl FiniteMapping {
    pub fn new(domain: &Universe, codomain: &Universe, targets: Vec<usize>) -> Result<Self> {
        if targets.len() != domain.len() {
            return Err(Error::MappingArity {
                expected: domain.len(),
                actual: targets.len(),
            });
        }
        for &t in &targets {
            codomain.check_index(t)?;
        }
        Ok(Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            targets,
        })
    }

    /// Builds a mapping from `(source label, target label)` assignments.
    /// Every domain element must be assigned exactly once.
    pub fn from_labels<I, A, B>(
        domain: &Universe,
        codomain: &Universe,
        assignments: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut targets: Vec<Option<usize>> = vec![None; domain.len()];
        for (a, b) in assignments {
            let i = domain.index_of(a.as_ref())?;
            let j = codomain.index_of(b.as_ref())?;
            if targets[i].replace(j).is_some_and(|prev| prev != j) {
                return Err(Error::ConflictingAssignment(a.as_ref().to_string()));
            }
        }
        let targets = targets
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| Error::UnassignedElement(domain.label(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            targets,
        })
    }

    pub fn identity(universe: &Universe) -> Self {
        Self {
            domain: universe.clone(),
            codomain: universe.clone(),
            targets: (0..universe.len()).collect(),
        }
    }

    pub fn domain(&self) -> &Universe {
        &self.domain
    }

    pub fn codomain(&self) -> &Universe {
        &self.codomain
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn apply(&self, x: usize) -> usize {
        self.targets[x]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        for &t in &self.targets {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        self.targets
            .iter()
            .all(|&t| !std::mem::replace(&mut hit[t], true))
    }

    /// `f(S)`.
    pub fn image(&self, set: &Subset) -> Result<Subset> {
        ensure_same(&self.domain, set.universe(), "image")?;
        let mut out = Subset::empty(&self.codomain);
        for x in set.iter() {
            out.insert(self.targets[x]);
        }
        Ok(out)
    }

    /// `f⁻¹(T)`.
    pub fn preimage(&self, set: &Subset) -> Result<Subset> {
        ensure_same(&self.codomain, set.universe(), "preimage")?;
        let members = self.targets.iter().map(|&t| set.contains(t)).collect();
        Subset::from_members(&self.domain, members)
    }

    /// `f(U)`.
    pub fn range(&self) -> Subset {
        let mut out = Subset::empty(&self.codomain);
        for &t in &self.targets {
            out.insert(t);
        }
        out
    }

    /// `[x]_f`: the domain elements sharing the image of `x`.
    pub fn fiber(&self, x: usize) -> Subset {
        let target = self.targets[x];
        let members = self.targets.iter().map(|&t| t == target).collect();
        Subset::from_members(&self.domain, members).expect("fiber has domain length")
    }

    /// `f⁻¹({y})` for a codomain element `y`.
    pub fn fiber_over(&self, y: usize) -> Subset {
        let members = self.targets.iter().map(|&t| t == y).collect();
        Subset::from_members(&self.domain, members).expect("fiber has domain length")
    }
}

impl fmt::Debug for FiniteMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .targets
            .iter()
            .enumerate()
            .map(|(i, &t)| format!("{} -> {}", self.domain.label(i), self.codomain.label(t)))
            .collect();
        write!(f, "FiniteMapping{{{}}}", entries.join(", "))
    }
}

/// A rule assigning each element of a universe a neighborhood.
pub trait NeighborhoodOperator {
    fn universe(&self) -> &Universe;
    fn neighborhood(&self, x: usize) -> Subset;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NeighborhoodKind {
    Predecessor,
    Successor,
    /// `R_p(x) ∩ R_s(x)`
    Meet,
    /// `R_p(x) ∪ R_s(x)`
    Join,
}

/// One of the four neighborhood operators induced by a relation.
#[derive(Debug, Clone, Copy)]
pub struct RelationNeighborhood<'a> {
    relation: &'a BinaryRelation,
    kind: NeighborhoodKind,
}

impl<'a> RelationNeighborhood<'a> {
    pub fn new(relation: &'a BinaryRelation, kind: NeighborhoodKind) -> Self {
        Self { relation, kind }
    }
}

impl NeighborhoodOperator for RelationNeighborhood<'_> {
    fn universe(&self) -> &Universe {
        self.relation.universe()
    }

    fn neighborhood(&self, x: usize) -> Subset {
        match self.kind {
            NeighborhoodKind::Predecessor => self.relation.pred_neighborhood(x),
            NeighborhoodKind::Successor => self.relation.succ_neighborhood(x),
            NeighborhoodKind::Meet => self.relation.meet_neighborhood(x),
            NeighborhoodKind::Join => self.relation.join_neighborhood(x),
        }
    }
}

/// A neighborhood operator backed by an arbitrary closure.
pub struct FnNeighborhood<F> {
    universe: Universe,
    rule: F,
}

impl<F: Fn(usize) -> Subset> FnNeighborhood<F> {
    pub fn new(universe: &Universe, rule: F) -> Self {
        Self {
            universe: universe.clone(),
            rule,
        }
    }
}

impl<F: Fn(usize) -> Subset> NeighborhoodOperator for FnNeighborhood<F> {
    fn universe(&self) -> &Universe {
        &self.universe
    }

    fn neighborhood(&self, x: usize) -> Subset {
        (self.rule)(x)
    }
}

/// Why a consistency predicate failed.
///
/// For the neighborhood-style predicates `x` and `y` share an image and
/// `element` lies in exactly one of their neighborhoods. For type-1, `element`
/// is a member of `[x]_f` outside `R_s(y)` although the two sets meet. For
/// type-2, `y ∈ [x]_f` and `element` separates `R_s(x)` from `R_s(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsistencyWitness {
    pub x: usize,
    pub y: usize,
    pub element: usize,
}

fn first_difference(a: &Subset, b: &Subset) -> Option<usize> {
    a.members()
        .iter()
        .zip(b.members())
        .position(|(p, q)| p != q)
}

/// First pair `(x, y)` in lexicographic order with `f(x) = f(y)` but
/// `n(x) ≠ n(y)`, if any.
pub fn neighborhood_witness<N>(f: &FiniteMapping, op: &N) -> Result<Option<ConsistencyWitness>>
where
    N: NeighborhoodOperator + ?Sized,
{
    ensure_same(f.domain(), op.universe(), "neighborhood consistency")?;
    let n = f.domain().len();
    let hoods: Vec<Subset> = (0..n).map(|x| op.neighborhood(x)).collect();
    for x in 0..n {
        for y in 0..n {
            if f.apply(x) != f.apply(y) {
                continue;
            }
            if let Some(element) = first_difference(&hoods[x], &hoods[y]) {
                return Ok(Some(ConsistencyWitness { x, y, element }));
            }
        }
    }
    Ok(None)
}

pub fn is_neighborhood_consistent<N>(f: &FiniteMapping, op: &N) -> Result<bool>
where
    N: NeighborhoodOperator + ?Sized,
{
    Ok(neighborhood_witness(f, op)?.is_none())
}

pub fn predecessor_witness(
    f: &FiniteMapping,
    r: &BinaryRelation,
) -> Result<Option<ConsistencyWitness>> {
    ensure_same(f.domain(), r.universe(), "predecessor consistency")?;
    neighborhood_witness(
        f,
        &RelationNeighborhood::new(r, NeighborhoodKind::Predecessor),
    )
}

pub fn successor_witness(
    f: &FiniteMapping,
    r: &BinaryRelation,
) -> Result<Option<ConsistencyWitness>> {
    ensure_same(f.domain(), r.universe(), "successor consistency")?;
    neighborhood_witness(
        f,
        &RelationNeighborhood::new(r, NeighborhoodKind::Successor),
    )
}

pub fn is_predecessor_consistent(f: &FiniteMapping, r: &BinaryRelation) -> Result<bool> {
    Ok(predecessor_witness(f, r)?.is_none())
}

pub fn is_successor_consistent(f: &FiniteMapping, r: &BinaryRelation) -> Result<bool> {
    Ok(successor_witness(f, r)?.is_none())
}

/// Type-1: for all `x, y`, either `[x]_f ⊆ R_s(y)` or `[x]_f ∩ R_s(y) = ∅`.
pub fn type1_witness(f: &FiniteMapping, r: &BinaryRelation) -> Result<Option<ConsistencyWitness>> {
    ensure_same(f.domain(), r.universe(), "type-1 consistency")?;
    let n = f.domain().len();
    for x in 0..n {
        let fiber = f.fiber(x);
        for y in 0..n {
            let succ = r.succ_neighborhood(y);
            if fiber.meets(&succ) {
                if let Some(element) = fiber.difference(&succ).iter().next() {
                    return Ok(Some(ConsistencyWitness { x, y, element }));
                }
            }
        }
    }
    Ok(None)
}

/// Type-2: `[x]_f ⊆ [x]_R` for every `x`.
pub fn type2_witness(f: &FiniteMapping, r: &BinaryRelation) -> Result<Option<ConsistencyWitness>> {
    ensure_same(f.domain(), r.universe(), "type-2 consistency")?;
    for x in 0..f.domain().len() {
        let outside = f.fiber(x).difference(&r.succ_equivalence_class(x));
        let first = outside.iter().next();
        if let Some(y) = first {
            let element = first_difference(&r.succ_neighborhood(x), &r.succ_neighborhood(y))
                .expect("y outside [x]_R has a different successor set");
            return Ok(Some(ConsistencyWitness { x, y, element }));
        }
    }
    Ok(None)
}

pub fn is_type1_consistent(f: &FiniteMapping, r: &BinaryRelation) -> Result<bool> {
    Ok(type1_witness(f, r)?.is_none())
}

pub fn is_type2_consistent(f: &FiniteMapping, r: &BinaryRelation) -> Result<bool> {
    Ok(type2_witness(f, r)?.is_none())
}

/// Which neighborhood a two-sided identity is stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Predecessor,
    Successor,
}

impl Side {
    pub fn neighborhood(self, r: &BinaryRelation, x: usize) -> Subset {
        match self {
            Side::Predecessor => r.pred_neighborhood(x),
            Side::Successor => r.succ_neighborhood(x),
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Predecessor => Side::Successor,
            Side::Successor => Side::Predecessor,
        }
    }
}

/// Both sides of `f((R ∩ Q)_•(x)) = f(R_•(x)) ∩ f(Q_•(x))` for the chosen
/// neighborhood side. The left side is always contained in the right.
pub fn image_of_intersection_check(
    f: &FiniteMapping,
    r: &BinaryRelation,
    q: &BinaryRelation,
    x: usize,
    side: Side,
) -> Result<(Subset, Subset)> {
    ensure_same(f.domain(), r.universe(), "image of intersection")?;
    let both = r.intersect(q)?;
    f.domain().check_index(x)?;
    let left = f.image(&side.neighborhood(&both, x))?;
    let right = f
        .image(&side.neighborhood(r, x))?
        .intersection(&f.image(&side.neighborhood(q, x))?);
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Layered;

    #[test]
    fn image_preimage_and_fibers() {
        let s = Layered::new();
        let f1 = &s.f1;
        assert_eq!(f1.image(&s.set(&["x2", "x3"])).unwrap(), s.vset(&["y2"]));
        assert_eq!(f1.preimage(&s.vset(&["y6"])).unwrap(), s.set(&["x6", "x7"]));
        assert!(f1.image(&Subset::empty(&s.u)).unwrap().is_empty());
        assert!(f1.preimage(&Subset::empty(&s.v)).unwrap().is_empty());
        assert_eq!(f1.fiber(s.x("x2")), s.set(&["x2", "x3"]));

        let id = FiniteMapping::identity(&s.u);
        let constant = FiniteMapping::new(&s.u, &s.v, vec![0; 7]).unwrap();
        for x in 0..7 {
            assert_eq!(id.fiber(x), Subset::from_indices(&s.u, [x]).unwrap());
            assert_eq!(constant.fiber(x), Subset::full(&s.u));
        }
        assert!(matches!(
            f1.image(&Subset::empty(&s.v)),
            Err(Error::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn mapping_construction_errors() {
        let s = Layered::new();
        assert!(matches!(
            FiniteMapping::from_labels(&s.u, &s.v, [("x1", "y1")]),
            Err(Error::UnassignedElement(l)) if l == "x2"
        ));
        assert!(matches!(
            FiniteMapping::from_labels(&s.u, &s.v, [("x1", "y1"), ("x1", "y2")]),
            Err(Error::ConflictingAssignment(_))
        ));
        assert!(FiniteMapping::new(&s.u, &s.v, vec![0; 6]).is_err());
        assert!(FiniteMapping::new(&s.u, &s.v, vec![6; 7]).is_err());
    }

    #[test]
    fn layered_classification() {
        let s = Layered::new();
        let r = &s.r;
        assert!(is_predecessor_consistent(&s.f1, r).unwrap());
        assert!(!is_successor_consistent(&s.f1, r).unwrap());
        assert!(!is_predecessor_consistent(&s.f2, r).unwrap());
        assert!(is_successor_consistent(&s.f2, r).unwrap());
        assert!(is_predecessor_consistent(&s.f3, r).unwrap());
        assert!(is_successor_consistent(&s.f3, r).unwrap());

        assert!(is_type1_consistent(&s.f1, r).unwrap());
        assert!(!is_type1_consistent(&s.f2, r).unwrap());
        assert!(is_type2_consistent(&s.f2, r).unwrap());
        assert!(!is_type2_consistent(&s.f1, r).unwrap());
    }

    #[test]
    fn witnesses_are_first_in_pair_order() {
        let s = Layered::new();
        // f1 merges x2, x3 whose successor sets {x4} and {x4, x5} differ at x5.
        let w = successor_witness(&s.f1, &s.r).unwrap().unwrap();
        assert_eq!((w.x, w.y, w.element), (s.x("x2"), s.x("x3"), s.x("x5")));
        // f2 merges x4, x5; R_p(x4) = {x2, x3}, R_p(x5) = {x3}.
        let w = predecessor_witness(&s.f2, &s.r).unwrap().unwrap();
        assert_eq!((w.x, w.y, w.element), (s.x("x4"), s.x("x5"), s.x("x2")));
        // [x4]_f2 = {x4, x5} meets R_s(x2) = {x4} without being inside it.
        let w = type1_witness(&s.f2, &s.r).unwrap().unwrap();
        assert_eq!((w.x, w.y, w.element), (s.x("x4"), s.x("x2"), s.x("x5")));
        let w = type2_witness(&s.f1, &s.r).unwrap().unwrap();
        assert_eq!((w.x, w.y, w.element), (s.x("x2"), s.x("x3"), s.x("x5")));
    }

    #[test]
    fn generic_neighborhood_operators() {
        let s = Layered::new();
        let pred = RelationNeighborhood::new(&s.r, NeighborhoodKind::Predecessor);
        assert!(is_neighborhood_consistent(&s.f3, &pred).unwrap());

        let u = s.u.clone();
        let singleton = FnNeighborhood::new(&u, |x| Subset::from_indices(&u, [x]).unwrap());
        let id = FiniteMapping::identity(&s.u);
        assert!(is_neighborhood_consistent(&id, &singleton).unwrap());
        let constant = FiniteMapping::new(&s.u, &s.v, vec![2; 7]).unwrap();
        assert!(!is_neighborhood_consistent(&constant, &singleton).unwrap());
    }

    #[test]
    fn injective_and_constant_edge_cases() {
        let s = Layered::new();
        let id = FiniteMapping::identity(&s.u);
        assert!(is_type1_consistent(&id, &s.r).unwrap());
        assert!(is_type2_consistent(&id, &s.r).unwrap());
        let constant = FiniteMapping::new(&s.u, &s.v, vec![0; 7]).unwrap();
        assert!(is_type2_consistent(&constant, &BinaryRelation::empty(&s.u)).unwrap());
    }

    #[test]
    fn image_of_intersection_sides() {
        let s = Layered::new();
        let q =
            BinaryRelation::from_pairs(&s.u, [("x2", "x4"), ("x3", "x5"), ("x4", "x7")]).unwrap();
        for x in 0..7 {
            for side in [Side::Predecessor, Side::Successor] {
                let (l, r) = image_of_intersection_check(&s.f1, &s.r, &s.r, x, side).unwrap();
                assert_eq!(l, r);
                let (l, r) = image_of_intersection_check(&s.f1, &s.r, &q, x, side).unwrap();
                assert!(l.is_subset_of(&r));
            }
            let (l, r) = image_of_intersection_check(&s.f1, &s.r, &q, x, Side::Successor).unwrap();
            assert_eq!(l, r, "f1 is predecessor-consistent w.r.t. R");
        }
    }

    #[test]
    fn surjectivity_and_injectivity() {
        let s = Layered::new();
        assert!(!s.f1.is_surjective());
        assert!(!s.f1.is_injective());
        assert!(FiniteMapping::identity(&s.u).is_injective());
        assert!(FiniteMapping::identity(&s.u).is_surjective());
        assert_eq!(s.f1.range(), s.vset(&["y1", "y2", "y4", "y5", "y6"]));
    }
}
