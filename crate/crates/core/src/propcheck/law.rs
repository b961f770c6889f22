//! The closed registry of laws and their per-instance evaluation.

use std::fmt;
use std::str::FromStr;

use crate::approx::{is_definable, lower_approx, upper_approx};
use crate::error::{Error, Result};
use crate::mapping::{
    image_of_intersection_check, is_predecessor_consistent, is_successor_consistent,
    is_type1_consistent, is_type2_consistent, FiniteMapping, Side,
};
use crate::relation::{BinaryRelation, Subset};
use crate::relmap::{
    induce, induced_pred_neighborhood, induced_succ_neighborhood, inverse_induce, union_form,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LawId {
    T2_1a,
    T2_1b,
    T2_2,
    T2_3a,
    T2_3b,
    P2_1,
    P2_2,
    C2_1,
    T2_4a,
    T2_4b,
    D3_1Eq3_2,
    T3_1,
    T3_2c1,
    T3_2c2,
    T3_2c3,
    T3_2c4,
    T3_3,
    T3_4p,
    T3_4s,
    T3_6_1,
    T3_6_2,
    T3_6_3,
    T3_6_4,
    T3_6_5,
    F3_5_2,
    F3_5_4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Expectation {
    /// Must hold on every case.
    Valid,
    /// Must be refuted by at least one case.
    Falsifiable,
}

/// What a law quantifies over beyond one relation `R` on `U` and one
/// mapping `f: U → V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `(R, f)`
    Single,
    /// `(R, Q, f)` with `Q` on `U`
    TwoRelations,
    /// `(R, f, Q)` with `Q` on `V`
    CodomainRelation,
    /// `(R, f, X)` with `X ⊆ U`
    WithSubset,
}

impl LawId {
    pub const ALL: [LawId; 26] = [
        LawId::T2_1a,
        LawId::T2_1b,
        LawId::T2_2,
        LawId::T2_3a,
        LawId::T2_3b,
        LawId::P2_1,
        LawId::P2_2,
        LawId::C2_1,
        LawId::T2_4a,
        LawId::T2_4b,
        LawId::D3_1Eq3_2,
        LawId::T3_1,
        LawId::T3_2c1,
        LawId::T3_2c2,
        LawId::T3_2c3,
        LawId::T3_2c4,
        LawId::T3_3,
        LawId::T3_4p,
        LawId::T3_4s,
        LawId::T3_6_1,
        LawId::T3_6_2,
        LawId::T3_6_3,
        LawId::T3_6_4,
        LawId::T3_6_5,
        LawId::F3_5_2,
        LawId::F3_5_4,
    ];

    pub fn name(self) -> &'static str {
        use LawId::*;
        match self {
            T2_1a => "T2.1a",
            T2_1b => "T2.1b",
            T2_2 => "T2.2",
            T2_3a => "T2.3a",
            T2_3b => "T2.3b",
            P2_1 => "P2.1",
            P2_2 => "P2.2",
            C2_1 => "C2.1",
            T2_4a => "T2.4a",
            T2_4b => "T2.4b",
            D3_1Eq3_2 => "D3.1≡3.2",
            T3_1 => "T3.1",
            T3_2c1 => "T3.2c1",
            T3_2c2 => "T3.2c2",
            T3_2c3 => "T3.2c3",
            T3_2c4 => "T3.2c4",
            T3_3 => "T3.3",
            T3_4p => "T3.4p",
            T3_4s => "T3.4s",
            T3_6_1 => "T3.6.1",
            T3_6_2 => "T3.6.2",
            T3_6_3 => "T3.6.3",
            T3_6_4 => "T3.6.4",
            T3_6_5 => "T3.6.5",
            F3_5_2 => "F3.5.2",
            F3_5_4 => "F3.5.4",
        }
    }

    pub fn expectation(self) -> Expectation {
        match self {
            LawId::F3_5_2 | LawId::F3_5_4 => Expectation::Falsifiable,
            _ => Expectation::Valid,
        }
    }

    pub fn shape(self) -> Shape {
        use LawId::*;
        match self {
            T2_3a | T2_3b | P2_2 | T3_2c1 | T3_2c2 | T3_2c3 | T3_2c4 => Shape::TwoRelations,
            D3_1Eq3_2 => Shape::CodomainRelation,
            T3_6_1 | T3_6_2 | T3_6_3 | T3_6_4 | T3_6_5 | F3_5_2 | F3_5_4 => Shape::WithSubset,
            _ => Shape::Single,
        }
    }

    pub fn hypothesis(self) -> &'static str {
        use LawId::*;
        match self {
            T2_1a | T2_1b | P2_1 | P2_2 | T2_4a | T2_4b | D3_1Eq3_2 | T3_3 | T3_4p | T3_4s
            | T3_6_4 => "none",
            T2_2 => "R reflexive and transitive",
            C2_1 => "R symmetric",
            T2_3a => "f predecessor-consistent w.r.t. R or w.r.t. Q",
            T2_3b => "f successor-consistent w.r.t. R or w.r.t. Q",
            T3_1 => "R transitive and f successor-consistent w.r.t. R",
            T3_2c1 => "f predecessor- and successor-consistent w.r.t. R",
            T3_2c2 => "f predecessor- and successor-consistent w.r.t. Q",
            T3_2c3 => "f predecessor-consistent w.r.t. R, successor-consistent w.r.t. Q",
            T3_2c4 => "f successor-consistent w.r.t. R, predecessor-consistent w.r.t. Q",
            T3_6_1 | F3_5_4 => "f successor-consistent w.r.t. R",
            T3_6_2 => "f surjective and f⁻¹(f(X)) = X",
            T3_6_3 => "f surjective, successor-consistent, and f⁻¹(f(X)) = X",
            T3_6_5 => "f predecessor-consistent w.r.t. R",
            F3_5_2 => "f predecessor- and successor-consistent w.r.t. R, X definable",
        }
    }

    pub fn conclusion(self) -> &'static str {
        use LawId::*;
        match self {
            T2_1a => "predecessor-consistent ⇔ type-1 consistent",
            T2_1b => "successor-consistent ⇔ type-2 consistent",
            T2_2 => "R_p(x)=R_p(y) ⇔ R_s(x)=R_s(y) for all x, y; predecessor-consistent ⇔ successor-consistent",
            T2_3a => "f((R∩Q)_s(x)) = f(R_s(x)) ∩ f(Q_s(x)) for all x",
            T2_3b => "f((R∩Q)_p(x)) = f(R_p(x)) ∩ f(Q_p(x)) for all x",
            P2_1 => "predecessor-consistent w.r.t. R ⇔ successor-consistent w.r.t. R⁻¹, and dually",
            P2_2 => "f((R∪Q)_p(x)) = f(R_p(x)) ∪ f(Q_p(x)) and f((R∪Q)_s(x)) = f(R_s(x)) ∪ f(Q_s(x))",
            C2_1 => "predecessor-consistent ⇔ successor-consistent",
            T2_4a => "predecessor-consistent ⇔ f⁻¹(f(R_s(x))) = R_s(x) for all x",
            T2_4b => "successor-consistent ⇔ f⁻¹(f(R_p(x))) = R_p(x) for all x",
            D3_1Eq3_2 => "pairwise and fiber-union forms of f̂(R) and f̂⁻¹(Q) agree",
            T3_1 => "f̂(R) transitive",
            T3_2c1 | T3_2c2 | T3_2c3 | T3_2c4 => "f̂(R∩Q) = f̂(R) ∩ f̂(Q)",
            T3_3 => "f̂⁻¹(f̂(R)) = R ⇔ f predecessor- and successor-consistent",
            T3_4p => "f̂(R)_p(y) = ⋃ f(R_p(x')) over f(x')=y, ∅ off the range; = f(R_p(x)) when predecessor-consistent",
            T3_4s => "f̂(R)_s(y) = ⋃ f(R_s(x')) over f(x')=y, ∅ off the range; = f(R_s(x)) when successor-consistent",
            T3_6_1 => "f(lower_R X) ⊆ lower_f̂(R) f(X)",
            T3_6_2 => "lower_f̂(R) f(X) ⊆ f(lower_R X)",
            T3_6_3 => "f(lower_R X) = lower_f̂(R) f(X)",
            T3_6_4 => "f(upper_R X) ⊆ upper_f̂(R) f(X)",
            T3_6_5 => "f(upper_R X) = upper_f̂(R) f(X)",
            F3_5_2 => "f(lower_R X) = lower_f̂(R) f(X) = f(X)",
            F3_5_4 => "f(upper_R X) ⊇ upper_f̂(R) f(X)",
        }
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LawId {
    type Err = Error;

    /// Accepts the registry names plus a few ASCII spellings
    /// (`D3.1=3.2`, `T3.2(c1)`).
    fn from_str(s: &str) -> Result<Self> {
        let normalized = s
            .trim()
            .replace(['(', ')'], "")
            .replace("==", "≡")
            .replace('=', "≡");
        LawId::ALL
            .into_iter()
            .find(|law| law.name().eq_ignore_ascii_case(&normalized))
            .ok_or_else(|| Error::UnknownLaw(s.to_string()))
    }
}

/// One concrete case a law is evaluated on.
///
/// `second` is `Q`: on the domain for two-relation laws, on the codomain for
/// the definition-equivalence law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub mapping: FiniteMapping,
    pub relation: BinaryRelation,
    pub second: Option<BinaryRelation>,
    pub subset: Option<Subset>,
}

impl Instance {
    /// Equality by labels and contents, ignoring universe identity. Two
    /// sweeps build their own universes, so their witnesses are only ever
    /// equal in this sense.
    pub fn same_contents(&self, other: &Instance) -> bool {
        fn rel(a: &BinaryRelation, b: &BinaryRelation) -> bool {
            a.universe().labels() == b.universe().labels() && a.label_pairs() == b.label_pairs()
        }
        let f = &self.mapping;
        let g = &other.mapping;
        f.domain().labels() == g.domain().labels()
            && f.codomain().labels() == g.codomain().labels()
            && f.targets() == g.targets()
            && rel(&self.relation, &other.relation)
            && match (&self.second, &other.second) {
                (Some(a), Some(b)) => rel(a, b),
                (None, None) => true,
                _ => false,
            }
            && match (&self.subset, &other.subset) {
                (Some(a), Some(b)) => a.members() == b.members(),
                (None, None) => true,
                _ => false,
            }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Hypothesis did not hold.
    Vacuous,
    Holds,
    /// Conclusion failed; the string locates the failure.
    Violated(String),
}

impl Outcome {
    pub fn is_violation(&self) -> bool {
        matches!(self, Outcome::Violated(_))
    }
}

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Holds
    } else {
        Outcome::Violated(detail())
    }
}

fn iff(left: bool, right: bool, left_name: &str, right_name: &str) -> Outcome {
    verdict(left == right, || {
        format!("{left_name} is {left} but {right_name} is {right}")
    })
}

/// First domain point where `check` fails.
fn first_point(
    f: &FiniteMapping,
    mut check: impl FnMut(usize) -> Result<bool>,
) -> Result<Option<usize>> {
    for x in 0..f.domain().len() {
        if !check(x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn pointwise(f: &FiniteMapping, check: impl FnMut(usize) -> Result<bool>) -> Result<Outcome> {
    Ok(match first_point(f, check)? {
        None => Outcome::Holds,
        Some(x) => Outcome::Violated(format!("at x = {}", f.domain().label(x))),
    })
}

type ConsistencyTest = fn(&FiniteMapping, &BinaryRelation) -> Result<bool>;

fn require_second(law: LawId, instance: &Instance, on_codomain: bool) -> Result<&BinaryRelation> {
    let q = instance
        .second
        .as_ref()
        .ok_or_else(|| Error::InstanceShape {
            law: law.to_string(),
            reason: "a second relation Q is required".into(),
        })?;
    let expected = if on_codomain {
        instance.mapping.codomain()
    } else {
        instance.mapping.domain()
    };
    if !q.universe().same_as(expected) {
        return Err(Error::InstanceShape {
            law: law.to_string(),
            reason: format!(
                "Q must live on the mapping's {}",
                if on_codomain { "codomain" } else { "domain" }
            ),
        });
    }
    Ok(q)
}

fn require_subset(law: LawId, instance: &Instance) -> Result<&Subset> {
    let x = instance
        .subset
        .as_ref()
        .ok_or_else(|| Error::InstanceShape {
            law: law.to_string(),
            reason: "a subset X is required".into(),
        })?;
    if !x.universe().same_as(instance.mapping.domain()) {
        return Err(Error::InstanceShape {
            law: law.to_string(),
            reason: "X must be a subset of the mapping's domain".into(),
        });
    }
    Ok(x)
}

/// Evaluates `law` on one instance: hypothesis first, then the conclusion.
pub fn evaluate(law: LawId, instance: &Instance) -> Result<Outcome> {
    use LawId::*;
    let f = &instance.mapping;
    let r = &instance.relation;
    if !r.universe().same_as(f.domain()) {
        return Err(Error::InstanceShape {
            law: law.to_string(),
            reason: "R must live on the mapping's domain".into(),
        });
    }
    let pred = || is_predecessor_consistent(f, r);
    let succ = || is_successor_consistent(f, r);

    Ok(match law {
        T2_1a => iff(
            pred()?,
            is_type1_consistent(f, r)?,
            "predecessor-consistency",
            "type-1 consistency",
        ),
        T2_1b => iff(
            succ()?,
            is_type2_consistent(f, r)?,
            "successor-consistency",
            "type-2 consistency",
        ),
        T2_2 => {
            if !(r.is_reflexive() && r.is_transitive()) {
                return Ok(Outcome::Vacuous);
            }
            let n = r.size();
            for x in 0..n {
                for y in 0..n {
                    let same_pred = r.pred_neighborhood(x) == r.pred_neighborhood(y);
                    let same_succ = r.succ_neighborhood(x) == r.succ_neighborhood(y);
                    if same_pred != same_succ {
                        return Ok(Outcome::Violated(format!(
                            "neighborhoods of {} and {} disagree",
                            r.universe().label(x),
                            r.universe().label(y)
                        )));
                    }
                }
            }
            iff(
                pred()?,
                succ()?,
                "predecessor-consistency",
                "successor-consistency",
            )
        }
        C2_1 => {
            if !r.is_symmetric() {
                return Ok(Outcome::Vacuous);
            }
            iff(
                pred()?,
                succ()?,
                "predecessor-consistency",
                "successor-consistency",
            )
        }
        P2_1 => {
            let inv = r.inverse();
            match iff(
                pred()?,
                is_successor_consistent(f, &inv)?,
                "pred(R)",
                "succ(R⁻¹)",
            ) {
                Outcome::Holds => iff(
                    succ()?,
                    is_predecessor_consistent(f, &inv)?,
                    "succ(R)",
                    "pred(R⁻¹)",
                ),
                other => other,
            }
        }
        T2_3a | T2_3b => {
            let q = require_second(law, instance, false)?;
            let (side, consistent): (Side, ConsistencyTest) = if law == T2_3a {
                (Side::Successor, is_predecessor_consistent)
            } else {
                (Side::Predecessor, is_successor_consistent)
            };
            if !(consistent(f, r)? || consistent(f, q)?) {
                return Ok(Outcome::Vacuous);
            }
            pointwise(f, |x| {
                let (left, right) = image_of_intersection_check(f, r, q, x, side)?;
                Ok(left == right)
            })?
        }
        P2_2 => {
            let q = require_second(law, instance, false)?;
            let both = r.union(q)?;
            pointwise(f, |x| {
                for side in [Side::Predecessor, Side::Successor] {
                    let left = f.image(&side.neighborhood(&both, x))?;
                    let right = f
                        .image(&side.neighborhood(r, x))?
                        .union(&f.image(&side.neighborhood(q, x))?);
                    if left != right {
                        return Ok(false);
                    }
                }
                Ok(true)
            })?
        }
        T2_4a | T2_4b => {
            let (consistent, side) = if law == T2_4a {
                (pred()?, Side::Successor)
            } else {
                (succ()?, Side::Predecessor)
            };
            let saturated = first_point(f, |x| {
                let hood = side.neighborhood(r, x);
                Ok(f.preimage(&f.image(&hood)?)? == hood)
            })?;
            verdict(consistent == saturated.is_none(), || match saturated {
                Some(x) => format!(
                    "consistency holds but the neighborhood of {} is not saturated",
                    f.domain().label(x)
                ),
                None => "every neighborhood is saturated but consistency fails".into(),
            })
        }
        D3_1Eq3_2 => {
            let q = require_second(law, instance, true)?;
            if induce(f, r)? != union_form::induce(f, r)? {
                Outcome::Violated("forward forms differ".into())
            } else if inverse_induce(f, q)? != union_form::inverse_induce(f, q)? {
                Outcome::Violated("inverse forms differ".into())
            } else {
                Outcome::Holds
            }
        }
        T3_1 => {
            if !(r.is_transitive() && succ()?) {
                return Ok(Outcome::Vacuous);
            }
            verdict(induce(f, r)?.is_transitive(), || {
                "f̂(R) is not transitive".into()
            })
        }
        T3_2c1 | T3_2c2 | T3_2c3 | T3_2c4 => {
            let q = require_second(law, instance, false)?;
            let hypothesis = match law {
                T3_2c1 => pred()? && succ()?,
                T3_2c2 => is_predecessor_consistent(f, q)? && is_successor_consistent(f, q)?,
                T3_2c3 => pred()? && is_successor_consistent(f, q)?,
                _ => succ()? && is_predecessor_consistent(f, q)?,
            };
            if !hypothesis {
                return Ok(Outcome::Vacuous);
            }
            let left = induce(f, &r.intersect(q)?)?;
            let right = induce(f, r)?.intersect(&induce(f, q)?)?;
            verdict(left == right, || {
                format!("f̂(R∩Q) = {left} but f̂(R)∩f̂(Q) = {right}")
            })
        }
        T3_3 => {
            let round_trip = inverse_induce(f, &induce(f, r)?)? == *r;
            iff(
                round_trip,
                pred()? && succ()?,
                "f̂⁻¹(f̂(R)) = R",
                "two-sided consistency",
            )
        }
        T3_4p | T3_4s => {
            let (side, consistent) = if law == T3_4p {
                (Side::Predecessor, pred()?)
            } else {
                (Side::Successor, succ()?)
            };
            let direct = induce(f, r)?;
            let fiber_union = |y| match side {
                Side::Predecessor => induced_pred_neighborhood(f, r, y),
                Side::Successor => induced_succ_neighborhood(f, r, y),
            };
            for y in 0..f.codomain().len() {
                if fiber_union(y)? != side.neighborhood(&direct, y) {
                    return Ok(Outcome::Violated(format!(
                        "at y = {}",
                        f.codomain().label(y)
                    )));
                }
            }
            if consistent {
                pointwise(f, |x| {
                    Ok(side.neighborhood(&direct, f.apply(x))
                        == f.image(&side.neighborhood(r, x))?)
                })?
            } else {
                Outcome::Holds
            }
        }
        T3_6_1 | T3_6_2 | T3_6_3 | T3_6_4 | T3_6_5 | F3_5_2 | F3_5_4 => {
            let x = require_subset(law, instance)?;
            let saturated = || -> Result<bool> { Ok(f.preimage(&f.image(x)?)? == *x) };
            let hypothesis = match law {
                T3_6_1 | F3_5_4 => succ()?,
                T3_6_2 => f.is_surjective() && saturated()?,
                T3_6_3 => f.is_surjective() && succ()? && saturated()?,
                T3_6_4 => true,
                T3_6_5 => pred()?,
                _ => pred()? && succ()? && is_definable(r, x)?,
            };
            if !hypothesis {
                return Ok(Outcome::Vacuous);
            }
            let induced = induce(f, r)?;
            let fx = f.image(x)?;
            match law {
                T3_6_1 | T3_6_2 | T3_6_3 | F3_5_2 => {
                    let pushed = f.image(&lower_approx(r, x)?)?;
                    let lower = lower_approx(&induced, &fx)?;
                    let ok = match law {
                        T3_6_1 => pushed.is_subset_of(&lower),
                        T3_6_2 => lower.is_subset_of(&pushed),
                        T3_6_3 => pushed == lower,
                        _ => pushed == lower && lower == fx,
                    };
                    verdict(ok, || {
                        format!("f(lower_R X) = {pushed}, lower_f̂(R) f(X) = {lower}, f(X) = {fx}")
                    })
                }
                _ => {
                    let pushed = f.image(&upper_approx(r, x)?)?;
                    let upper = upper_approx(&induced, &fx)?;
                    let ok = match law {
                        T3_6_4 => pushed.is_subset_of(&upper),
                        T3_6_5 => pushed == upper,
                        _ => upper.is_subset_of(&pushed),
                    };
                    verdict(ok, || {
                        format!("f(upper_R X) = {pushed}, upper_f̂(R) f(X) = {upper}")
                    })
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::Universe;

    #[test]
    fn names_round_trip() {
        for law in LawId::ALL {
            assert_eq!(law.name().parse::<LawId>().unwrap(), law);
        }
        assert_eq!("D3.1=3.2".parse::<LawId>().unwrap(), LawId::D3_1Eq3_2);
        assert_eq!("T3.2(c3)".parse::<LawId>().unwrap(), LawId::T3_2c3);
        assert_eq!("t3.3".parse::<LawId>().unwrap(), LawId::T3_3);
        assert_eq!(
            "T9.9".parse::<LawId>(),
            Err(Error::UnknownLaw("T9.9".into()))
        );
    }

    #[test]
    fn only_two_falsifiable_laws() {
        let falsifiable: Vec<_> = LawId::ALL
            .into_iter()
            .filter(|l| l.expectation() == Expectation::Falsifiable)
            .collect();
        assert_eq!(falsifiable, vec![LawId::F3_5_2, LawId::F3_5_4]);
    }

    fn upper_gap() -> Instance {
        let u = Universe::new(["x", "y", "z"]).unwrap();
        let v = Universe::new(["a", "b"]).unwrap();
        Instance {
            mapping: FiniteMapping::from_labels(&u, &v, [("x", "a"), ("y", "b"), ("z", "b")])
                .unwrap(),
            relation: BinaryRelation::from_pairs(&u, [("x", "y")]).unwrap(),
            second: None,
            subset: Some(Subset::from_labels(&u, ["z"]).unwrap()),
        }
    }

    #[test]
    fn upper_gap_refutes_reverse_upper_inclusion() {
        let inst = upper_gap();
        assert!(evaluate(LawId::F3_5_4, &inst).unwrap().is_violation());
        assert_eq!(evaluate(LawId::T3_6_4, &inst).unwrap(), Outcome::Holds);
    }

    #[test]
    fn shape_errors() {
        let inst = upper_gap();
        assert!(matches!(
            evaluate(LawId::T3_2c1, &inst),
            Err(Error::InstanceShape { .. })
        ));
        let mut wrong = inst.clone();
        wrong.second = Some(BinaryRelation::empty(inst.mapping.domain()));
        assert!(matches!(
            evaluate(LawId::D3_1Eq3_2, &wrong),
            Err(Error::InstanceShape { .. })
        ));
        let mut no_x = inst;
        no_x.subset = None;
        assert!(evaluate(LawId::T3_6_1, &no_x).is_err());
    }
}
