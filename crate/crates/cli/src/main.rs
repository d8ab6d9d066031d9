//! `kneser-chroma`: build, export and verify algebraic colorings of Kneser
//! graph squares.
//!
//! Exit codes: 0 pass, 1 confirmed violation, 2 usage or input error,
//! 3 no prime in the searched interval, 4 a violation that failed its
//! recheck (a verifier bug).

mod args;
mod export;

use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::Parser;
use kneser_chroma::matrix::desk_instances;
use kneser_chroma::{
    bounds_report, clique_witness, color_all, enumerate_vertices, exact_chromatic,
    find_prime_in_interval, recheck_table_violation, recheck_violation, verify_coloring,
    verify_table, Error, GraphSpec, Property, VerificationReport,
};
use serde::Serialize;

use args::{Cli, Command, Format};

enum Verdict {
    Pass,
    Violation,
    Unconfirmed,
}

impl Verdict {
    fn of(
        report: &VerificationReport,
        confirmed: impl FnOnce() -> anyhow::Result<bool>,
    ) -> anyhow::Result<Self> {
        if report.passed {
            Ok(Verdict::Pass)
        } else if confirmed()? {
            Ok(Verdict::Violation)
        } else {
            Ok(Verdict::Unconfirmed)
        }
    }

    fn code(&self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Violation => 1,
            Verdict::Unconfirmed => 4,
        }
    }
}

#[derive(Serialize)]
struct ExactOutput {
    spec: GraphSpec,
    chromatic_number: usize,
}

#[derive(Serialize)]
struct CliqueMember {
    mask: u64,
    positions: Vec<usize>,
}

#[derive(Serialize)]
struct CliqueOutput {
    k: usize,
    r: usize,
    n: usize,
    size: usize,
    members: Vec<CliqueMember>,
}

#[derive(Serialize)]
struct ReportRow {
    instance: &'static str,
    n: usize,
    k: usize,
    r: usize,
    construction: String,
    property: Property,
    entries: usize,
    claimed_pass: bool,
    passed: bool,
    agrees: bool,
    violations: u64,
    pairs_checked: u64,
    distinct_colors: usize,
    color_space: u64,
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Color {
            ground,
            out,
            format,
        } => {
            let set = ground.ground_set()?;
            let start = Instant::now();
            let table = color_all(&set, ground.k, ground.r)?;
            eprintln!(
                "colored {} vertices in {:.3?}",
                table.rows.len(),
                start.elapsed()
            );
            export::emit(&out, &export::coloring(&table, format)?)?;
            Ok(0)
        }
        Command::Verify {
            ground,
            property,
            m,
            coloring,
            workers,
            out,
        } => {
            let (spec, property, entries) = property.resolve(ground.n(), ground.k, ground.r, m)?;
            let set = ground.ground_set()?;
            let (report, verdict) = match coloring {
                Some(path) => {
                    let vertices = enumerate_vertices(spec.n, spec.k)?;
                    let colors = export::read_coloring(&path, &vertices)?;
                    let report =
                        verify_table(&spec, &set, entries, property, &colors, workers.count())?;
                    let verdict =
                        Verdict::of(&report, || Ok(recheck_table_violation(&report, &colors)?))?;
                    (report, verdict)
                }
                None => {
                    let report = verify_coloring(&spec, &set, entries, property, workers.count())?;
                    let verdict = Verdict::of(&report, || Ok(recheck_violation(&report)?))?;
                    (report, verdict)
                }
            };
            eprintln!(
                "{} pairs checked in {:.3?}: {}",
                report.pairs_checked,
                report.elapsed,
                match verdict {
                    Verdict::Pass => "pass",
                    Verdict::Violation => "violation",
                    Verdict::Unconfirmed => "violation did not recheck",
                }
            );
            export::emit(&out, &export::json(&report)?)?;
            Ok(verdict.code())
        }
        Command::Bounds { k, r, out } => {
            export::emit(&out, &export::json(&bounds_report(k, r)?)?)?;
            Ok(0)
        }
        Command::Exact {
            n,
            k,
            graph,
            m,
            out,
        } => {
            let spec = graph.spec(n, k, m)?;
            let start = Instant::now();
            let chromatic_number = exact_chromatic(&spec)?;
            eprintln!("exact search took {:.3?}", start.elapsed());
            export::emit(
                &out,
                &export::json(&ExactOutput {
                    spec,
                    chromatic_number,
                })?,
            )?;
            Ok(0)
        }
        Command::Prime { n, mode } => {
            let p = find_prime_in_interval(n, mode.into())?;
            println!("{p}");
            Ok(0)
        }
        Command::Clique { k, r, out } => {
            let members: Vec<CliqueMember> = clique_witness(k, r)?
                .iter()
                .map(|v| CliqueMember {
                    mask: v.mask(),
                    positions: v.positions().collect(),
                })
                .collect();
            let doc = CliqueOutput {
                k,
                r,
                n: 2 * k + r,
                size: members.len(),
                members,
            };
            export::emit(&out, &export::json(&doc)?)?;
            Ok(0)
        }
        Command::Report {
            all_desk_instances: _,
            format,
            workers,
            out,
        } => {
            let mut rows = Vec::new();
            for instance in desk_instances() {
                let report = instance
                    .run(workers.count())
                    .with_context(|| instance.name.to_string())?;
                eprintln!("{}: {:.3?}", instance.name, report.elapsed);
                rows.push(ReportRow {
                    instance: instance.name,
                    n: instance.n(),
                    k: instance.k,
                    r: instance.r,
                    construction: instance.construction.to_string(),
                    property: instance.property,
                    entries: instance.entries,
                    claimed_pass: instance.claimed_pass,
                    passed: report.passed,
                    agrees: report.passed == instance.claimed_pass,
                    violations: report.violations,
                    pairs_checked: report.pairs_checked,
                    distinct_colors: report.distinct_colors,
                    color_space: report.color_space,
                });
            }
            let bytes = match format {
                Format::Csv => export::csv_rows(&rows)?,
                Format::Json => export::json(&rows)?,
            };
            export::emit(&out, &bytes)?;
            Ok(if rows.iter().all(|row| row.agrees) {
                0
            } else {
                1
            })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(error_code(&err))
        }
    }
}

fn error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::NoPrimeInInterval { .. }) => 3,
        _ => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falsification_is_distinguished_from_usage_errors() {
        let falsified = anyhow::Error::from(Error::NoPrimeInInterval { lo: 10, hi: 14 });
        assert_eq!(error_code(&falsified), 3);
        assert_eq!(error_code(&falsified.context("prime search")), 3);
        assert_eq!(error_code(&anyhow::Error::from(Error::NotPrime(9))), 2);
        assert_eq!(error_code(&anyhow::anyhow!("--m must lie in 1..=r")), 2);
    }
}
