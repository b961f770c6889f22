//! Command-line definitions and command execution.

use std::fs;
use std::io::Write;
use std::ops::Range;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gapspace::approx::{lower_approx, lower_approx_pred, upper_approx, upper_approx_pred};
use gapspace::mapping::{predecessor_witness, successor_witness, type1_witness, type2_witness};
use gapspace::propcheck::{
    check_law, evaluate, EnumerationBudget, Expectation, Instance, LawId, Shape, DEFAULT_CASE_CAP,
};
use gapspace::relmap::{induce, inverse_induce};

use crate::error::{CliError, EXIT_EXPECTATION_VIOLATED, EXIT_OK};
use crate::instance::Model;
use crate::render::{self, Format};

#[derive(Debug, Parser)]
#[command(
    name = "gapspace",
    version,
    about = "Consistent mappings, relation mappings and rough approximations over finite universes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the four consistency predicates of a mapping w.r.t. a relation
    Check {
        file: String,
        mapping: String,
        relation: String,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Push a relation forward along a mapping, or pull one back
    Induce {
        file: String,
        mapping: String,
        relation: String,
        #[arg(long, value_enum, default_value_t = Direction::Forward)]
        direction: Direction,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Approximate a set through a relation
    Approx {
        file: String,
        relation: String,
        set: String,
        #[arg(long, value_enum)]
        operator: Operator,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Sweep a law over a budget, or evaluate it on one instance file
    Verify(VerifyArgs),
    /// Same as `verify`, restricted to the falsifiable laws
    Falsify(VerifyArgs),
    /// List the law registry
    Info {
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Operator {
    Lower,
    Upper,
    LowerPred,
    UpperPred,
}

impl Operator {
    pub fn name(self) -> &'static str {
        match self {
            Operator::Lower => "lower",
            Operator::Upper => "upper",
            Operator::LowerPred => "lower-pred",
            Operator::UpperPred => "upper-pred",
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub law: String,
    /// Domain size
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Codomain size
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Draw COUNT random instances instead of enumerating
    #[arg(long, value_name = "COUNT", requires = "seed")]
    pub sample: Option<u64>,
    #[arg(long, requires = "sample")]
    pub seed: Option<u64>,
    /// Refuse sweeps with more cases than this
    #[arg(long, default_value_t = DEFAULT_CASE_CAP)]
    pub cap: u64,
    /// Restrict the outer relation to bit patterns START..END
    #[arg(long, value_name = "START..END", value_parser = parse_range, conflicts_with = "sample")]
    pub relations: Option<Range<u64>>,
    /// Evaluate the law on this instance file instead of sweeping
    #[arg(long, value_name = "FILE", conflicts_with_all = ["sample", "relations"])]
    pub instance: Option<String>,
    #[arg(long, default_value = "f")]
    pub mapping_name: String,
    #[arg(long, default_value = "R")]
    pub relation_name: String,
    #[arg(long, default_value = "Q")]
    pub second_name: String,
    #[arg(long, default_value = "X")]
    pub set_name: String,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

fn parse_range(text: &str) -> Result<Range<u64>, String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("expected START..END, got `{text}`"))?;
    let start = a.trim().parse().map_err(|e| format!("bad start: {e}"))?;
    let end = b.trim().parse().map_err(|e| format!("bad end: {e}"))?;
    Ok(start..end)
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

/// Runs one command, writing the report to `out`. Returns the exit status
/// for commands that completed; errors map to their own exit codes.
pub fn execute(command: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = match command {
        Command::Check {
            file,
            mapping,
            relation,
            format,
        } => {
            let model = Model::from_source(&read(file)?)?;
            let f = model.mapping(mapping)?;
            let r = model.relation(relation)?;
            if !f.domain().same_as(r.universe()) {
                return Err(CliError::Usage(format!(
                    "relation `{relation}` does not live on the domain of mapping `{mapping}`"
                )));
            }
            let verdicts = render::ConsistencyVerdicts {
                mapping,
                relation,
                predecessor: predecessor_witness(f, r)?,
                successor: successor_witness(f, r)?,
                type1: type1_witness(f, r)?,
                type2: type2_witness(f, r)?,
            };
            render::consistency(&verdicts, f, *format)
        }
        Command::Induce {
            file,
            mapping,
            relation,
            direction,
            format,
        } => {
            let model = Model::from_source(&read(file)?)?;
            let f = model.mapping(mapping)?;
            let r = model.relation(relation)?;
            let (result, expected) = match direction {
                Direction::Forward => (induce(f, r), "domain"),
                Direction::Inverse => (inverse_induce(f, r), "codomain"),
            };
            let result = result.map_err(|_| {
                CliError::Usage(format!(
                    "relation `{relation}` does not live on the {expected} of mapping `{mapping}`"
                ))
            })?;
            render::relation(&result, *format)
        }
        Command::Approx {
            file,
            relation,
            set,
            operator,
            format,
        } => {
            let model = Model::from_source(&read(file)?)?;
            let r = model.relation(relation)?;
            let x = model.set(set)?;
            let op = match operator {
                Operator::Lower => lower_approx,
                Operator::Upper => upper_approx,
                Operator::LowerPred => lower_approx_pred,
                Operator::UpperPred => upper_approx_pred,
            };
            let result = op(r, x).map_err(|_| {
                CliError::Usage(format!(
                    "set `{set}` and relation `{relation}` live on different universes"
                ))
            })?;
            render::approximation(operator.name(), set, &result, *format)
        }
        Command::Verify(args) => return verify(args, false, out),
        Command::Falsify(args) => return verify(args, true, out),
        Command::Info { format } => render::registry(*format),
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|source| CliError::Io {
            path: "<output>".into(),
            source,
        })
}

fn verify(args: &VerifyArgs, falsify_only: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let law: LawId = args.law.parse()?;
    if falsify_only && law.expectation() != Expectation::Falsifiable {
        return Err(CliError::Usage(format!(
            "`falsify` only accepts falsifiable laws; use `verify {law}`"
        )));
    }
    if let Some(path) = &args.instance {
        let model = Model::from_source(&read(path)?)?;
        let instance = instance_from_model(law, &model, args)?;
        let outcome = evaluate(law, &instance)?;
        let met = match law.expectation() {
            Expectation::Valid => !outcome.is_violation(),
            Expectation::Falsifiable => outcome.is_violation(),
        };
        write_out(
            out,
            &render::single_outcome(law, path, &outcome, met, args.format),
        )?;
        return Ok(if met {
            EXIT_OK
        } else {
            EXIT_EXPECTATION_VIOLATED
        });
    }

    let mut budget = match (args.sample, args.seed) {
        (Some(count), Some(seed)) => EnumerationBudget::sampled(args.n, args.m, seed, count),
        _ => EnumerationBudget::exhaustive(args.n, args.m),
    }
    .with_cap(args.cap);
    if let Some(range) = &args.relations {
        budget = budget.with_relation_range(range.clone());
    }
    let report = check_law(law, &budget)?;
    write_out(out, &render::report(&report, args.format))?;
    Ok(if report.expectation_met() {
        EXIT_OK
    } else {
        EXIT_EXPECTATION_VIOLATED
    })
}

/// Picks `f`, `R` and, as the law requires, `Q` and `X` out of a model.
pub fn instance_from_model(
    law: LawId,
    model: &Model,
    args: &VerifyArgs,
) -> Result<Instance, CliError> {
    let mapping = model.mapping(&args.mapping_name)?.clone();
    let relation = model.relation(&args.relation_name)?.clone();
    let second = match law.shape() {
        Shape::TwoRelations | Shape::CodomainRelation => {
            Some(model.relation(&args.second_name)?.clone())
        }
        _ => None,
    };
    let subset = match law.shape() {
        Shape::WithSubset => Some(model.set(&args.set_name)?.clone()),
        _ => None,
    };
    Ok(Instance {
        mapping,
        relation,
        second,
        subset,
    })
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return e.exit_code();
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
