//! Universes, subsets and binary relations over a single finite universe.
//!
//! Every value carries the [`Universe`] it lives on. Universes compare by
//! identity: two universes built from the same label list are still distinct,
//! and relations or subsets over them never compare equal.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

struct UniverseData {
    labels: Vec<String>,
    positions: HashMap<String, usize>,
}

/// An ordered, finite, nonempty set of labeled elements.
///
/// Element identity is the position `0..len()`; labels are for presentation
/// and lookup only. Cloning is cheap and preserves identity.
#[derive(Clone)]
pub struct Universe(Arc<UniverseData>);

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut positions = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if positions.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self(Arc::new(UniverseData { labels, positions })))
    }

    /// A universe labeled `{prefix}0 .. {prefix}{size-1}`.
    pub fn canonical(prefix: &str, size: usize) -> Result<Self> {
        Self::new((0..size).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.0.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.0
            .positions
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn check_index(&self, index: usize) -> Result<usize> {
        if index < self.len() {
            Ok(index)
        } else {
            Err(Error::IndexOutOfRange {
                index,
                size: self.len(),
            })
        }
    }

    pub fn same_as(&self, other: &Universe) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Universe {}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Universe").field(&self.0.labels).finish()
    }
}

pub(crate) fn ensure_same(a: &Universe, b: &Universe, operation: &'static str) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(Error::UniverseMismatch { operation })
    }
}

/// A subset of a universe, stored as its characteristic vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Subset {
    universe: Universe,
    members: Vec<bool>,
}

impl Subset {
    pub fn empty(universe: &Universe) -> Self {
        Self {
            universe: universe.clone(),
            members: vec![false; universe.len()],
        }
    }

    pub fn full(universe: &Universe) -> Self {
        Self {
            universe: universe.clone(),
            members: vec![true; universe.len()],
        }
    }

    pub fn from_members(universe: &Universe, members: Vec<bool>) -> Result<Self> {
        if members.len() != universe.len() {
            return Err(Error::IndexOutOfRange {
                index: members.len(),
                size: universe.len(),
            });
        }
        Ok(Self {
            universe: universe.clone(),
            members,
        })
    }

    pub fn from_indices<I>(universe: &Universe, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty(universe);
        for i in indices {
            set.members[universe.check_index(i)?] = true;
        }
        Ok(set)
    }

    pub fn from_labels<I, S>(universe: &Universe, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = Self::empty(universe);
        for label in labels {
            set.members[universe.index_of(label.as_ref())?] = true;
        }
        Ok(set)
    }

    /// Bit `i` of `bits` decides membership of element `i`.
    pub fn from_bits(universe: &Universe, bits: u64) -> Self {
        let members = (0..universe.len()).map(|i| bits >> i & 1 == 1).collect();
        Self {
            universe: universe.clone(),
            members,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members[index]
    }

    pub(crate) fn insert(&mut self, index: usize) {
        self.members[index] = true;
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    pub fn count(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.iter().map(|i| self.universe.label(i)).collect()
    }

    fn zip_with(&self, other: &Subset, op: impl Fn(bool, bool) -> bool) -> Subset {
        assert!(
            self.universe.same_as(&other.universe),
            "subset operation across universes"
        );
        Subset {
            universe: self.universe.clone(),
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    /// # Panics
    /// If the two subsets live on different universes; the same holds for the
    /// other binary set operations.
    pub fn union(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Subset {
        Subset {
            universe: self.universe.clone(),
            members: self.members.iter().map(|&m| !m).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        assert!(self.universe.same_as(&other.universe));
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    pub fn meets(&self, other: &Subset) -> bool {
        assert!(self.universe.same_as(&other.universe));
        self.members
            .iter()
            .zip(&other.members)
            .any(|(&a, &b)| a && b)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(", "))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset{self}")
    }
}

/// A binary relation on one universe, as a dense row-major boolean table.
/// Entry `(i, j)` is set iff element `i` is related to element `j`.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryRelation {
    universe: Universe,
    matrix: Vec<bool>,
}

impl BinaryRelation {
    pub fn empty(universe: &Universe) -> Self {
        let n = universe.len();
        Self {
            universe: universe.clone(),
            matrix: vec![false; n * n],
        }
    }

    pub fn identity(universe: &Universe) -> Self {
        let mut r = Self::empty(universe);
        for i in 0..universe.len() {
            r.set(i, i);
        }
        r
    }

    pub fn full(universe: &Universe) -> Self {
        let n = universe.len();
        Self {
            universe: universe.clone(),
            matrix: vec![true; n * n],
        }
    }

    /// Builds a relation from labeled pairs. Duplicate pairs collapse.
    pub fn from_pairs<I, A, B>(universe: &Universe, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut r = Self::empty(universe);
        for (a, b) in pairs {
            let i = universe.index_of(a.as_ref())?;
            let j = universe.index_of(b.as_ref())?;
            r.set(i, j);
        }
        Ok(r)
    }

    pub fn from_index_pairs<I>(universe: &Universe, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut r = Self::empty(universe);
        for (i, j) in pairs {
            r.set(universe.check_index(i)?, universe.check_index(j)?);
        }
        Ok(r)
    }

    /// Bit `i * n + j` of `bits` decides entry `(i, j)`.
    pub fn from_bits(universe: &Universe, bits: u64) -> Self {
        let n = universe.len();
        debug_assert!(n * n <= 64);
        let matrix = (0..n * n).map(|k| bits >> k & 1 == 1).collect();
        Self {
            universe: universe.clone(),
            matrix,
        }
    }

    /// Inverse of [`from_bits`](Self::from_bits); only meaningful for n ≤ 8.
    pub fn to_bits(&self) -> u64 {
        self.matrix
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0, |acc, (k, _)| acc | 1 << k)
    }

    pub(crate) fn set(&mut self, i: usize, j: usize) {
        let n = self.universe.len();
        self.matrix[i * n + j] = true;
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.matrix[i * self.size() + j]
    }

    pub fn contains_labels(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.contains(self.universe.index_of(a)?, self.universe.index_of(b)?))
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        self.matrix
            .iter()
            .enumerate()
            .filter_map(move |(k, &b)| b.then_some((k / n, k % n)))
    }

    pub fn label_pairs(&self) -> Vec<(&str, &str)> {
        self.pairs()
            .map(|(i, j)| (self.universe.label(i), self.universe.label(j)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.matrix.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.matrix.iter().any(|&b| b)
    }

    pub fn is_subset_of(&self, other: &BinaryRelation) -> bool {
        self.universe.same_as(&other.universe)
            && self
                .matrix
                .iter()
                .zip(&other.matrix)
                .all(|(&a, &b)| !a || b)
    }

    pub fn inverse(&self) -> BinaryRelation {
        let n = self.size();
        let mut matrix = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                matrix[j * n + i] = self.matrix[i * n + j];
            }
        }
        BinaryRelation {
            universe: self.universe.clone(),
            matrix,
        }
    }

    fn zip_with(
        &self,
        other: &BinaryRelation,
        operation: &'static str,
        op: impl Fn(bool, bool) -> bool,
    ) -> Result<BinaryRelation> {
        ensure_same(&self.universe, &other.universe, operation)?;
        Ok(BinaryRelation {
            universe: self.universe.clone(),
            matrix: self
                .matrix
                .iter()
                .zip(&other.matrix)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn union(&self, other: &BinaryRelation) -> Result<BinaryRelation> {
        self.zip_with(other, "relation union", |a, b| a || b)
    }

    pub fn intersect(&self, other: &BinaryRelation) -> Result<BinaryRelation> {
        self.zip_with(other, "relation intersection", |a, b| a && b)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|i| self.contains(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(i, j)| self.contains(j, i))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.size();
        self.pairs()
            .all(|(i, j)| (0..n).all(|k| !self.contains(j, k) || self.contains(i, k)))
    }

    /// `R_p(x)`: every `y` with `(y, x) ∈ R`, i.e. column `x`.
    pub fn pred_neighborhood(&self, x: usize) -> Subset {
        let n = self.size();
        Subset {
            universe: self.universe.clone(),
            members: (0..n).map(|y| self.matrix[y * n + x]).collect(),
        }
    }

    /// `R_s(x)`: every `y` with `(x, y) ∈ R`, i.e. row `x`.
    pub fn succ_neighborhood(&self, x: usize) -> Subset {
        let n = self.size();
        Subset {
            universe: self.universe.clone(),
            members: self.matrix[x * n..(x + 1) * n].to_vec(),
        }
    }

    pub fn meet_neighborhood(&self, x: usize) -> Subset {
        self.pred_neighborhood(x)
            .intersection(&self.succ_neighborhood(x))
    }

    pub fn join_neighborhood(&self, x: usize) -> Subset {
        self.pred_neighborhood(x).union(&self.succ_neighborhood(x))
    }

    fn row(&self, x: usize) -> &[bool] {
        let n = self.size();
        &self.matrix[x * n..(x + 1) * n]
    }

    /// `[x]_R`: all `y` whose successor neighborhood equals that of `x`.
    pub fn succ_equivalence_class(&self, x: usize) -> Subset {
        let target = self.row(x);
        Subset {
            universe: self.universe.clone(),
            members: (0..self.size()).map(|y| self.row(y) == target).collect(),
        }
    }
}

impl fmt::Display for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self
            .label_pairs()
            .into_iter()
            .map(|(a, b)| format!("({a}, {b})"))
            .collect();
        write!(f, "{{{}}}", rendered.join(", "))
    }
}

impl fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryRelation{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seven() -> (Universe, BinaryRelation) {
        let u = Universe::new((1..=7).map(|i| format!("x{i}"))).unwrap();
        let r = BinaryRelation::from_pairs(
            &u,
            [
                ("x1", "x2"),
                ("x1", "x3"),
                ("x2", "x4"),
                ("x3", "x4"),
                ("x3", "x5"),
                ("x4", "x6"),
                ("x4", "x7"),
                ("x5", "x6"),
                ("x5", "x7"),
            ],
        )
        .unwrap();
        (u, r)
    }

    fn set(u: &Universe, labels: &[&str]) -> Subset {
        Subset::from_labels(u, labels).unwrap()
    }

    #[test]
    fn universe_rejects_empty_and_duplicates() {
        assert_eq!(
            Universe::new(Vec::<String>::new()).unwrap_err(),
            Error::EmptyUniverse
        );
        assert_eq!(
            Universe::new(["a", "b", "a"]).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
    }

    #[test]
    fn universes_compare_by_identity() {
        let a = Universe::new(["x"]).unwrap();
        let b = Universe::new(["x"]).unwrap();
        assert_ne!(a, b);
        assert_eq!(a, a.clone());
        assert_ne!(BinaryRelation::empty(&a), BinaryRelation::empty(&b));
    }

    #[test]
    fn make_relation_from_labels() {
        let (_, r) = seven();
        assert_eq!(r.len(), 9);

        let u = Universe::new(["x"]).unwrap();
        let empty = BinaryRelation::from_pairs(&u, Vec::<(&str, &str)>::new()).unwrap();
        assert!(empty.is_empty());
        let dup = BinaryRelation::from_pairs(&u, [("x", "x"), ("x", "x")]).unwrap();
        assert_eq!(dup.len(), 1);
        assert!(dup.contains(0, 0));

        let err = BinaryRelation::from_pairs(&u, [("x", "w")]).unwrap_err();
        assert_eq!(err, Error::UnknownLabel("w".into()));
    }

    #[test]
    fn inverse_transposes() {
        let u = Universe::new(["x", "y", "z"]).unwrap();
        let r = BinaryRelation::from_pairs(&u, [("x", "y")]).unwrap();
        let inv = r.inverse();
        assert_eq!(inv.label_pairs(), vec![("y", "x")]);
        assert_eq!(inv.inverse(), r);

        let (_, r) = seven();
        let inv = r.inverse();
        assert_eq!(inv.len(), 9);
        assert!(inv.contains_labels("x2", "x1").unwrap());
        for (i, j) in r.pairs() {
            assert!(inv.contains(j, i));
        }

        let id = BinaryRelation::identity(&u);
        assert_eq!(id.inverse(), id);
    }

    #[test]
    fn union_and_intersection() {
        let u = Universe::new(["x", "y"]).unwrap();
        let r = BinaryRelation::from_pairs(&u, [("x", "y")]).unwrap();
        let q = BinaryRelation::from_pairs(&u, [("y", "x")]).unwrap();
        let empty = BinaryRelation::empty(&u);
        assert_eq!(r.union(&empty).unwrap(), r);
        assert_eq!(r.intersect(&empty).unwrap(), empty);
        assert_eq!(r.union(&q).unwrap().len(), 2);
        assert_eq!(r.intersect(&q).unwrap().len(), 0);

        let other = Universe::new(["x", "y"]).unwrap();
        assert!(matches!(
            r.union(&BinaryRelation::empty(&other)),
            Err(Error::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn relation_properties() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let id = BinaryRelation::identity(&u);
        assert!(id.is_reflexive() && id.is_symmetric() && id.is_transitive());

        let (_, r) = seven();
        assert!(!r.is_reflexive());
        assert!(!r.is_symmetric());
        assert!(!r.is_transitive());
        assert!(r.contains_labels("x1", "x2").unwrap());
        assert!(r.contains_labels("x2", "x4").unwrap());
        assert!(!r.contains_labels("x1", "x4").unwrap());

        let single = BinaryRelation::from_pairs(&u, [("a", "b")]).unwrap();
        assert!(single.is_transitive());
    }

    #[test]
    fn neighborhoods_on_the_seven_element_chain() {
        let (u, r) = seven();
        let x = |l: &str| u.index_of(l).unwrap();
        assert_eq!(r.pred_neighborhood(x("x6")), set(&u, &["x4", "x5"]));
        assert_eq!(r.succ_neighborhood(x("x3")), set(&u, &["x4", "x5"]));
        assert_eq!(r.meet_neighborhood(x("x4")), Subset::empty(&u));
        assert_eq!(
            r.join_neighborhood(x("x4")),
            set(&u, &["x2", "x3", "x6", "x7"])
        );
        assert_eq!(r.succ_equivalence_class(x("x6")), set(&u, &["x6", "x7"]));
    }

    #[test]
    fn neighborhoods_of_degenerate_relations() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let empty = BinaryRelation::empty(&u);
        let id = BinaryRelation::identity(&u);
        for x in 0..3 {
            assert!(empty.pred_neighborhood(x).is_empty());
            assert!(empty.succ_neighborhood(x).is_empty());
            assert!(empty.meet_neighborhood(x).is_empty());
            assert!(empty.join_neighborhood(x).is_empty());
            assert_eq!(empty.succ_equivalence_class(x), Subset::full(&u));
            assert_eq!(
                id.succ_equivalence_class(x),
                Subset::from_indices(&u, [x]).unwrap()
            );
        }
        let sym = BinaryRelation::from_pairs(&u, [("a", "b"), ("b", "a"), ("c", "c")]).unwrap();
        for x in 0..3 {
            assert_eq!(sym.meet_neighborhood(x), sym.pred_neighborhood(x));
            assert_eq!(sym.join_neighborhood(x), sym.succ_neighborhood(x));
        }
    }

    #[test]
    fn bits_round_trip() {
        let u = Universe::canonical("u", 3).unwrap();
        for bits in [0u64, 1, 2, 0b100010001, 511] {
            assert_eq!(BinaryRelation::from_bits(&u, bits).to_bits(), bits);
        }
        let r = BinaryRelation::from_bits(&u, 0b10);
        assert_eq!(r.pairs().collect::<Vec<_>>(), vec![(0, 1)]);
    }
}
