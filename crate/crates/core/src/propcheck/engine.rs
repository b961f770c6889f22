//! Budgeted sweeps of a law over enumerated or sampled instances.
//!
//! Exhaustive sweeps visit `R` in increasing bit order, then `Q` (when the law
//! has one), then mappings in base-`m` order, then subsets `X` in bit order.
//! The outer `R` range is split into contiguous chunks that run in parallel;
//! chunk tallies are merged in chunk order, so the first witness is always
//! the smallest violating instance regardless of scheduling.

use std::ops::Range;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::enumerate::{
    canonical_codomain, canonical_domain, mapping_count, mapping_from_index, relation_count,
};
use super::law::{evaluate, Expectation, Instance, LawId, Outcome, Shape};
use crate::error::{Error, Result};
use crate::relation::{BinaryRelation, Subset, Universe};

pub const MAX_DOMAIN: usize = 5;
pub const MAX_CODOMAIN: usize = 4;
pub const DEFAULT_CASE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationMode {
    Exhaustive,
    /// `count` instances drawn from a ChaCha8 stream seeded with `seed`.
    Sampled {
        seed: u64,
        count: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub domain_size: usize,
    pub codomain_size: usize,
    pub relations: RelationMode,
    pub case_cap: u64,
    /// Restricts the outer relation `R` to this window of bit patterns.
    /// Exhaustive mode only.
    pub relation_range: Option<Range<u64>>,
}

impl EnumerationBudget {
    pub fn exhaustive(domain_size: usize, codomain_size: usize) -> Self {
        Self {
            domain_size,
            codomain_size,
            relations: RelationMode::Exhaustive,
            case_cap: DEFAULT_CASE_CAP,
            relation_range: None,
        }
    }

    pub fn sampled(domain_size: usize, codomain_size: usize, seed: u64, count: u64) -> Self {
        Self {
            relations: RelationMode::Sampled { seed, count },
            ..Self::exhaustive(domain_size, codomain_size)
        }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.case_cap = cap;
        self
    }

    pub fn with_relation_range(mut self, range: Range<u64>) -> Self {
        self.relation_range = Some(range);
        self
    }

    fn validate(&self) -> Result<()> {
        if !(1..=MAX_DOMAIN).contains(&self.domain_size) {
            return Err(Error::SizeOutOfRange {
                size: self.domain_size,
                max: MAX_DOMAIN,
            });
        }
        if !(1..=MAX_CODOMAIN).contains(&self.codomain_size) {
            return Err(Error::SizeOutOfRange {
                size: self.codomain_size,
                max: MAX_CODOMAIN,
            });
        }
        match (&self.relations, &self.relation_range) {
            (RelationMode::Sampled { count: 0, .. }, _) => {
                Err(Error::InvalidBudget("sample count must be positive".into()))
            }
            (RelationMode::Sampled { .. }, Some(_)) => Err(Error::InvalidBudget(
                "a relation range only applies to exhaustive sweeps".into(),
            )),
            (RelationMode::Exhaustive, Some(range)) => {
                let total = relation_count(self.domain_size);
                if range.start >= range.end || range.end > total {
                    Err(Error::InvalidBudget(format!(
                        "relation range {}..{} must be a nonempty window of 0..{total}",
                        range.start, range.end
                    )))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    fn outer_range(&self) -> Range<u64> {
        self.relation_range
            .clone()
            .unwrap_or(0..relation_count(self.domain_size))
    }

    fn inner_second_count(&self, shape: Shape) -> u64 {
        match shape {
            Shape::TwoRelations => relation_count(self.domain_size),
            Shape::CodomainRelation => relation_count(self.codomain_size),
            _ => 1,
        }
    }

    fn subset_count(&self, shape: Shape) -> u64 {
        match shape {
            Shape::WithSubset => 1 << self.domain_size,
            _ => 1,
        }
    }

    /// Number of cases a sweep of `law` would evaluate.
    pub fn case_count(&self, law: LawId) -> u128 {
        let shape = law.shape();
        let subsets = self.subset_count(shape) as u128;
        match self.relations {
            RelationMode::Sampled { count, .. } => count as u128 * subsets,
            RelationMode::Exhaustive => {
                let outer = self.outer_range();
                (outer.end - outer.start) as u128
                    * self.inner_second_count(shape) as u128
                    * mapping_count(self.domain_size, self.codomain_size) as u128
                    * subsets
            }
        }
    }

    pub fn describe(&self) -> String {
        let mode = match &self.relations {
            RelationMode::Exhaustive => match &self.relation_range {
                None => "exhaustive".to_string(),
                Some(r) => format!("exhaustive over relations {}..{}", r.start, r.end),
            },
            RelationMode::Sampled { seed, count } => format!("sampled count={count} seed={seed}"),
        };
        format!("n={} m={} {mode}", self.domain_size, self.codomain_size)
    }
}

/// A violating instance together with where it fails.
#[derive(Debug, Clone)]
pub struct Witness {
    pub instance: Instance,
    pub detail: String,
}

/// Compares contents, not universe identity.
impl PartialEq for Witness {
    fn eq(&self, other: &Self) -> bool {
        self.detail == other.detail && self.instance.same_contents(&other.instance)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Valid law, no violations, hypothesis fired at least once.
    Pass,
    /// Valid law violated.
    Fail,
    /// Falsifiable law, counterexample found.
    Refuted,
    /// Falsifiable law, hypothesis fired but nothing failed.
    Unrefuted,
    /// No violation, but the hypothesis never fired.
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Refuted => "REFUTED",
            Verdict::Unrefuted => "UNREFUTED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone)]
pub struct LawReport {
    pub law: LawId,
    pub budget: EnumerationBudget,
    pub cases_checked: u64,
    pub hypothesis_hits: u64,
    pub violations: u64,
    pub first_witness: Option<Witness>,
    pub elapsed: Duration,
}

/// Equality ignores `elapsed` and compares witnesses by contents.
impl PartialEq for LawReport {
    fn eq(&self, other: &Self) -> bool {
        self.law == other.law
            && self.budget == other.budget
            && self.cases_checked == other.cases_checked
            && self.hypothesis_hits == other.hypothesis_hits
            && self.violations == other.violations
            && self.first_witness == other.first_witness
    }
}

impl LawReport {
    pub fn verdict(&self) -> Verdict {
        match (self.law.expectation(), self.violations > 0) {
            (Expectation::Valid, true) => Verdict::Fail,
            (Expectation::Falsifiable, true) => Verdict::Refuted,
            _ if self.hypothesis_hits == 0 => Verdict::Inconclusive,
            (Expectation::Valid, false) => Verdict::Pass,
            (Expectation::Falsifiable, false) => Verdict::Unrefuted,
        }
    }

    /// A valid law must not be violated; a falsifiable one must be refuted.
    pub fn expectation_met(&self) -> bool {
        match self.law.expectation() {
            Expectation::Valid => self.violations == 0,
            Expectation::Falsifiable => self.violations > 0,
        }
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    hits: u64,
    violations: u64,
    first: Option<Witness>,
}

impl Tally {
    fn record(&mut self, law: LawId, instance: &Instance) -> Result<()> {
        self.cases += 1;
        match evaluate(law, instance)? {
            Outcome::Vacuous => {}
            Outcome::Holds => self.hits += 1,
            Outcome::Violated(detail) => {
                self.hits += 1;
                self.violations += 1;
                if self.first.is_none() {
                    self.first = Some(Witness {
                        instance: instance.clone(),
                        detail,
                    });
                }
            }
        }
        Ok(())
    }

    fn merge(mut self, later: Tally) -> Tally {
        self.cases += later.cases;
        self.hits += later.hits;
        self.violations += later.violations;
        if self.first.is_none() {
            self.first = later.first;
        }
        self
    }
}

struct Space {
    domain: Universe,
    codomain: Universe,
    mappings: Vec<crate::mapping::FiniteMapping>,
    subsets: Vec<Option<Subset>>,
}

impl Space {
    fn new(law: LawId, budget: &EnumerationBudget) -> Result<Self> {
        let domain = canonical_domain(budget.domain_size)?;
        let codomain = canonical_codomain(budget.codomain_size)?;
        let mappings = (0..mapping_count(budget.domain_size, budget.codomain_size))
            .map(|i| mapping_from_index(&domain, &codomain, i))
            .collect();
        let subsets = if law.shape() == Shape::WithSubset {
            (0..1u64 << budget.domain_size)
                .map(|bits| Some(Subset::from_bits(&domain, bits)))
                .collect()
        } else {
            vec![None]
        };
        Ok(Self {
            domain,
            codomain,
            mappings,
            subsets,
        })
    }

    fn second(&self, shape: Shape, bits: Option<u64>) -> Option<BinaryRelation> {
        let bits = bits?;
        Some(match shape {
            Shape::CodomainRelation => BinaryRelation::from_bits(&self.codomain, bits),
            _ => BinaryRelation::from_bits(&self.domain, bits),
        })
    }

    /// Every mapping and subset for a fixed `(R, Q)`.
    fn sweep_inner(
        &self,
        law: LawId,
        tally: &mut Tally,
        r: BinaryRelation,
        q: Option<BinaryRelation>,
        mappings: &[usize],
    ) -> Result<()> {
        let mut instance = Instance {
            mapping: self.mappings[mappings[0]].clone(),
            relation: r,
            second: q,
            subset: None,
        };
        for &fi in mappings {
            instance.mapping = self.mappings[fi].clone();
            for x in &self.subsets {
                instance.subset.clone_from(x);
                tally.record(law, &instance)?;
            }
        }
        Ok(())
    }
}

const CHUNKS_PER_THREAD: usize = 8;

fn chunked(range: Range<u64>) -> Vec<Range<u64>> {
    let len = range.end - range.start;
    let pieces = (rayon::current_num_threads() * CHUNKS_PER_THREAD).max(1) as u64;
    let step = len.div_ceil(pieces).max(1);
    (range.start..range.end)
        .step_by(step as usize)
        .map(|s| s..(s + step).min(range.end))
        .collect()
}

fn merge_all(tallies: Vec<Result<Tally>>) -> Result<Tally> {
    tallies
        .into_iter()
        .try_fold(Tally::default(), |acc, t| Ok(acc.merge(t?)))
}

fn sweep_exhaustive(law: LawId, budget: &EnumerationBudget, space: &Space) -> Result<Tally> {
    let shape = law.shape();
    let all_mappings: Vec<usize> = (0..space.mappings.len()).collect();
    let seconds = budget.inner_second_count(shape);
    let tallies: Vec<Result<Tally>> = chunked(budget.outer_range())
        .into_par_iter()
        .map(|chunk| {
            let mut tally = Tally::default();
            for r_bits in chunk {
                let r = BinaryRelation::from_bits(&space.domain, r_bits);
                for q_bits in 0..seconds {
                    let q = match shape {
                        Shape::TwoRelations | Shape::CodomainRelation => {
                            space.second(shape, Some(q_bits))
                        }
                        _ => None,
                    };
                    space.sweep_inner(law, &mut tally, r.clone(), q, &all_mappings)?;
                }
            }
            Ok(tally)
        })
        .collect();
    merge_all(tallies)
}

struct Sample {
    relation: u64,
    second: Option<u64>,
    mapping: usize,
}

fn draw_samples(law: LawId, budget: &EnumerationBudget, seed: u64, count: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let relations = relation_count(budget.domain_size);
    let seconds = budget.inner_second_count(law.shape());
    let mappings = mapping_count(budget.domain_size, budget.codomain_size);
    (0..count)
        .map(|_| {
            let relation = rng.gen_range(0..relations);
            let second = match law.shape() {
                Shape::TwoRelations | Shape::CodomainRelation => Some(rng.gen_range(0..seconds)),
                _ => None,
            };
            let mapping = rng.gen_range(0..mappings) as usize;
            Sample {
                relation,
                second,
                mapping,
            }
        })
        .collect()
}

fn sweep_sampled(
    law: LawId,
    budget: &EnumerationBudget,
    space: &Space,
    seed: u64,
    count: u64,
) -> Result<Tally> {
    let samples = draw_samples(law, budget, seed, count);
    let shape = law.shape();
    let tallies: Vec<Result<Tally>> = chunked(0..count)
        .into_par_iter()
        .map(|chunk| {
            let mut tally = Tally::default();
            for i in chunk {
                let s = &samples[i as usize];
                let r = BinaryRelation::from_bits(&space.domain, s.relation);
                let q = space.second(shape, s.second);
                space.sweep_inner(law, &mut tally, r, q, &[s.mapping])?;
            }
            Ok(tally)
        })
        .collect();
    merge_all(tallies)
}

/// Sweeps `law` over the budget and tallies cases, hypothesis hits and
/// violations. Refuses budgets whose case count exceeds the cap.
pub fn check_law(law: LawId, budget: &EnumerationBudget) -> Result<LawReport> {
    budget.validate()?;
    let cases = budget.case_count(law);
    if cases > budget.case_cap as u128 {
        return Err(Error::BudgetExceeded {
            cases,
            cap: budget.case_cap,
        });
    }
    let start = Instant::now();
    let space = Space::new(law, budget)?;
    let tally = match budget.relations {
        RelationMode::Exhaustive => sweep_exhaustive(law, budget, &space)?,
        RelationMode::Sampled { seed, count } => sweep_sampled(law, budget, &space, seed, count)?,
    };
    Ok(LawReport {
        law,
        budget: budget.clone(),
        cases_checked: tally.cases,
        hypothesis_hits: tally.hits,
        violations: tally.violations,
        first_witness: tally.first,
        elapsed: start.elapsed(),
    })
}

/// The first violating instance in sweep order, if any.
pub fn find_counterexample(law: LawId, budget: &EnumerationBudget) -> Result<Option<Witness>> {
    Ok(check_law(law, budget)?.first_witness)
}
