//! Plain and JSON renderings. Everything here is deterministic: sorted
//! labels, no timings.

use clap::ValueEnum;
use gapspace::mapping::ConsistencyWitness;
use gapspace::propcheck::{Expectation, LawId, LawReport, Outcome, Shape};
use gapspace::{BinaryRelation, FiniteMapping, Subset};
use serde_json::{json, Value};

use crate::instance::InstanceDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Structured,
}

fn to_json(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json value serializes");
    s.push('\n');
    s
}

fn yes_no(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "no"
    }
}

pub struct ConsistencyVerdicts<'a> {
    pub mapping: &'a str,
    pub relation: &'a str,
    pub predecessor: Option<ConsistencyWitness>,
    pub successor: Option<ConsistencyWitness>,
    pub type1: Option<ConsistencyWitness>,
    pub type2: Option<ConsistencyWitness>,
}

pub fn consistency(v: &ConsistencyVerdicts, f: &FiniteMapping, format: Format) -> String {
    let label = |i: usize| f.domain().label(i).to_string();
    let witness_json = |w: &Option<ConsistencyWitness>| match w {
        None => Value::Null,
        Some(w) => json!({ "x": label(w.x), "y": label(w.y), "element": label(w.element) }),
    };
    match format {
        Format::Structured => to_json(json!({
            "mapping": v.mapping,
            "relation": v.relation,
            "predecessor_consistent": v.predecessor.is_none(),
            "predecessor_witness": witness_json(&v.predecessor),
            "successor_consistent": v.successor.is_none(),
            "successor_witness": witness_json(&v.successor),
            "type1_consistent": v.type1.is_none(),
            "type1_witness": witness_json(&v.type1),
            "type2_consistent": v.type2.is_none(),
            "type2_witness": witness_json(&v.type2),
        })),
        Format::Plain => {
            let line = |name: &str,
                        w: &Option<ConsistencyWitness>,
                        explain: &dyn Fn(&ConsistencyWitness) -> String| {
                match w {
                    None => format!("{name}: yes\n"),
                    Some(w) => format!("{name}: no ({})\n", explain(w)),
                }
            };
            let shared = |kind: &'static str| {
                move |w: &ConsistencyWitness| {
                    format!(
                        "{} and {} share an image; {} is in exactly one of their {kind} neighborhoods",
                        label(w.x),
                        label(w.y),
                        label(w.element)
                    )
                }
            };
            let mut s = format!("mapping: {}\nrelation: {}\n", v.mapping, v.relation);
            s += &line(
                "predecessor-consistent",
                &v.predecessor,
                &shared("predecessor"),
            );
            s += &line("successor-consistent", &v.successor, &shared("successor"));
            s += &line("type-1 consistent", &v.type1, &|w| {
                format!(
                    "[{}]_f meets R_s({}) but {} lies outside it",
                    label(w.x),
                    label(w.y),
                    label(w.element)
                )
            });
            s += &line("type-2 consistent", &v.type2, &|w| {
                format!(
                    "{} is in [{}]_f but not in [{}]_R; {} separates their successor neighborhoods",
                    label(w.y),
                    label(w.x),
                    label(w.x),
                    label(w.element)
                )
            });
            s
        }
    }
}

pub fn relation(r: &BinaryRelation, format: Format) -> String {
    let pairs = r.label_pairs();
    match format {
        Format::Structured => {
            to_json(json!({ "pairs": pairs.iter().map(|(a, b)| [a, b]).collect::<Vec<_>>() }))
        }
        Format::Plain => {
            let mut s = format!("pairs: {}\n", pairs.len());
            for (a, b) in pairs {
                s += &format!("({a}, {b})\n");
            }
            s
        }
    }
}

pub fn approximation(operator: &str, set: &str, result: &Subset, format: Format) -> String {
    match format {
        Format::Structured => to_json(json!({
            "operator": operator,
            "set": set,
            "members": result.labels(),
        })),
        Format::Plain => format!("{operator}({set}) = {result}\n"),
    }
}

fn expectation_name(e: Expectation) -> &'static str {
    match e {
        Expectation::Valid => "valid",
        Expectation::Falsifiable => "falsifiable",
    }
}

fn shape_name(s: Shape) -> &'static str {
    match s {
        Shape::Single => "(R, f)",
        Shape::TwoRelations => "(R, Q, f)",
        Shape::CodomainRelation => "(R, f, Q on V)",
        Shape::WithSubset => "(R, f, X)",
    }
}

pub fn report(report: &LawReport, format: Format) -> String {
    let law = report.law;
    let verdict = report.verdict();
    let witness = report.first_witness.as_ref().map(|w| {
        (
            w.detail.clone(),
            InstanceDocument::from_instance(&w.instance),
        )
    });
    match format {
        Format::Structured => to_json(json!({
            "law": law.name(),
            "expectation": expectation_name(law.expectation()),
            "budget": report.budget.describe(),
            "cases": report.cases_checked,
            "hypothesis_hits": report.hypothesis_hits,
            "violations": report.violations,
            "verdict": verdict.label(),
            "expectation_met": report.expectation_met(),
            "first_witness": witness.map(|(detail, doc)| json!({
                "detail": detail,
                "instance": doc,
            })),
        })),
        Format::Plain => {
            let mut s = format!(
                "law: {}\nhypothesis: {}\nconclusion: {}\nexpectation: {}\nbudget: {}\ncases: {}\nhypothesis hits: {}\nviolations: {}\nverdict: {}\n",
                law,
                law.hypothesis(),
                law.conclusion(),
                expectation_name(law.expectation()),
                report.budget.describe(),
                report.cases_checked,
                report.hypothesis_hits,
                report.violations,
                verdict.label(),
            );
            if let Some((detail, doc)) = witness {
                s += &format!("first witness: {detail}\n{}\n", doc.to_json());
            }
            s
        }
    }
}

pub fn single_outcome(
    law: LawId,
    path: &str,
    outcome: &Outcome,
    met: bool,
    format: Format,
) -> String {
    let (status, detail) = match outcome {
        Outcome::Vacuous => ("vacuous", None),
        Outcome::Holds => ("holds", None),
        Outcome::Violated(d) => ("violated", Some(d.as_str())),
    };
    match format {
        Format::Structured => to_json(json!({
            "law": law.name(),
            "instance": path,
            "outcome": status,
            "detail": detail,
            "expectation_met": met,
        })),
        Format::Plain => {
            let mut s = format!("law: {law}\ninstance: {path}\noutcome: {status}\n");
            if let Some(d) = detail {
                s += &format!("detail: {d}\n");
            }
            s += &format!("expectation met: {}\n", yes_no(met));
            s
        }
    }
}

pub fn registry(format: Format) -> String {
    match format {
        Format::Structured => to_json(Value::Array(
            LawId::ALL
                .iter()
                .map(|law| {
                    json!({
                        "law": law.name(),
                        "expectation": expectation_name(law.expectation()),
                        "quantifies": shape_name(law.shape()),
                        "hypothesis": law.hypothesis(),
                        "conclusion": law.conclusion(),
                    })
                })
                .collect(),
        )),
        Format::Plain => LawId::ALL
            .iter()
            .map(|law| {
                format!(
                    "{:<9} {:<11} {:<15} if {}: {}\n",
                    law.name(),
                    expectation_name(law.expectation()),
                    shape_name(law.shape()),
                    law.hypothesis(),
                    law.conclusion()
                )
            })
            .collect(),
    }
}
