//! Shared instances for unit tests.

use crate::mapping::FiniteMapping;
use crate::relation::{BinaryRelation, Subset, Universe};

/// Seven elements in four layers with three mappings onto six targets.
pub(crate) struct Layered {
    pub u: Universe,
    pub v: Universe,
    pub r: BinaryRelation,
    pub f1: FiniteMapping,
    pub f2: FiniteMapping,
    pub f3: FiniteMapping,
}

impl Layered {
    pub fn new() -> Self {
        let u = Universe::new((1..=7).map(|i| format!("x{i}"))).unwrap();
        let v = Universe::new((1..=6).map(|i| format!("y{i}"))).unwrap();
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
        // targets as 0-based y indices
        let f1 = FiniteMapping::new(&u, &v, vec![0, 1, 1, 3, 4, 5, 5]).unwrap();
        let f2 = FiniteMapping::new(&u, &v, vec![0, 1, 2, 3, 3, 5, 5]).unwrap();
        let f3 = FiniteMapping::new(&u, &v, vec![0, 1, 2, 3, 4, 5, 5]).unwrap();
        Self {
            u,
            v,
            r,
            f1,
            f2,
            f3,
        }
    }

    pub fn x(&self, label: &str) -> usize {
        self.u.index_of(label).unwrap()
    }

    pub fn y(&self, label: &str) -> usize {
        self.v.index_of(label).unwrap()
    }

    pub fn set(&self, labels: &[&str]) -> Subset {
        Subset::from_labels(&self.u, labels).unwrap()
    }

    pub fn vset(&self, labels: &[&str]) -> Subset {
        Subset::from_labels(&self.v, labels).unwrap()
    }
}
