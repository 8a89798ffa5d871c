//! Batch front-end: config-driven construction, verification, invariant
//! reports, and the self-contained golden-table reproduction.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::config::{OutputFormat, RunConfig};
use crate::diffsets::{
    build_fx_diffset, paley_diffset, verify_skew_hadamard, DiffSetSpec, FXParams, SkewReport,
    VerifyMode,
};
use crate::error::{Error, Result};
use crate::finite_field::{FieldCtx, FieldParams};
use crate::invariants::{invariant_report, InvariantReport};
use crate::table1::{run_table1, Table1Report};

#[derive(Debug, Parser)]
#[command(
    name = "fxhad",
    about = "Skew Hadamard difference sets from cyclotomic classes: construction, \
             triple-intersection invariants, and inequivalence-to-Paley certification"
)]
pub struct Cli {
    /// TOML run configuration (required by all commands except table1).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output format override.
    #[arg(long, value_enum, global = true)]
    pub format: Option<OutputFormat>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Largest q for exhaustive shift verification; larger fields sample.
    #[arg(long, default_value_t = 20_000)]
    pub exact_verify_threshold: u64,

    /// RNG seed for sampled verification of large fields.
    #[arg(long, default_value_t = 0x5eed_cafe)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the configured difference sets and print their summaries.
    Construct,
    /// Verify the skew Hadamard property of the configured sets.
    Verify,
    /// Compute triple-intersection invariants and inequivalence verdicts.
    Invariant,
    /// Recompute the embedded golden table and diff every cell.
    Table1,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConstructSummary {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub n: u64,
    pub fx: Option<FXParams>,
    pub index_set: Vec<u64>,
    pub size: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerifySummary {
    pub index_set: Vec<u64>,
    pub report: SkewReport,
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config is required for this command".into()))?;
    RunConfig::load(path)
}

fn build_sets(ctx: &FieldCtx, cfg: &RunConfig) -> Result<Vec<DiffSetSpec>> {
    match cfg.fx {
        Some(fx) => cfg
            .index_sets
            .iter()
            .map(|input| {
                let residues = input.resolve(cfg.field.p, fx.n())?;
                build_fx_diffset(ctx, fx, &residues)
            })
            .collect(),
        None => Ok(vec![paley_diffset(ctx)?]),
    }
}

fn emit(cfg: &RunConfig, cli: &Cli, rendered: &str) -> Result<()> {
    match &cfg.output.path {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    let _ = cli;
    Ok(())
}

fn format_of(cfg: &RunConfig, cli: &Cli) -> OutputFormat {
    cli.format.unwrap_or(cfg.output.format)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

pub fn cmd_construct(cli: &Cli) -> Result<i32> {
    let cfg = load_config(cli)?;
    let ctx = FieldCtx::build(FieldParams::new(cfg.field.p, cfg.field.f)?)?;
    let sets = build_sets(&ctx, &cfg)?;
    let summaries: Vec<ConstructSummary> = sets
        .iter()
        .map(|d| ConstructSummary {
            p: d.p,
            f: d.f,
            q: d.q,
            n: d.n,
            fx: d.fx,
            index_set: d.index_set.clone(),
            size: d.size(),
        })
        .collect();
    let rendered = match format_of(&cfg, cli) {
        OutputFormat::Json => json(&summaries),
        OutputFormat::Tsv => {
            let mut out = String::from("p\tf\tq\tN\tindex_set\tsize\n");
            for s in &summaries {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    s.p,
                    s.f,
                    s.q,
                    s.n,
                    join(&s.index_set),
                    s.size
                ));
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for s in &summaries {
                out.push_str(&format!(
                    "D over F_{}^{} (q = {}), N = {}, I = {{{}}}, |D| = {}\n",
                    s.p,
                    s.f,
                    s.q,
                    s.n,
                    join(&s.index_set),
                    s.size
                ));
            }
            out
        }
    };
    emit(&cfg, cli, &rendered)?;
    Ok(0)
}

pub fn cmd_verify(cli: &Cli) -> Result<i32> {
    let cfg = load_config(cli)?;
    let ctx = FieldCtx::build(FieldParams::new(cfg.field.p, cfg.field.f)?)?;
    let sets = build_sets(&ctx, &cfg)?;
    let mode = if ctx.q() <= cli.exact_verify_threshold {
        VerifyMode::Exact
    } else {
        VerifyMode::Sampled {
            samples: 2000,
            seed: cli.seed,
        }
    };
    let summaries: Vec<VerifySummary> = sets
        .iter()
        .map(|d| VerifySummary {
            index_set: d.index_set.clone(),
            report: verify_skew_hadamard(&ctx, d, mode),
        })
        .collect();
    let pass = summaries.iter().all(|s| s.report.pass);
    let rendered = match format_of(&cfg, cli) {
        OutputFormat::Json => json(&summaries),
        OutputFormat::Tsv => {
            let mut out =
                String::from("index_set\tdisjoint_union\tlambda\tshifts_checked\tfailures\tpass\n");
            for s in &summaries {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    join(&s.index_set),
                    s.report.disjoint_union_ok,
                    s.report.lambda_expected,
                    s.report.shifts_checked,
                    s.report.failures.len(),
                    s.report.pass
                ));
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for s in &summaries {
                out.push_str(&format!(
                    "I = {{{}}}: disjoint union {}, lambda = {}, {} shifts checked, {} failures => {}\n",
                    join(&s.index_set),
                    if s.report.disjoint_union_ok { "ok" } else { "BROKEN" },
                    s.report.lambda_expected,
                    s.report.shifts_checked,
                    s.report.failures.len(),
                    if s.report.pass { "PASS" } else { "FAIL" }
                ));
            }
            out
        }
    };
    emit(&cfg, cli, &rendered)?;
    Ok(if pass { 0 } else { 1 })
}

pub fn cmd_invariant(cli: &Cli) -> Result<i32> {
    let cfg = load_config(cli)?;
    let ctx = FieldCtx::build(FieldParams::new(cfg.field.p, cfg.field.f)?)?;
    let sets = build_sets(&ctx, &cfg)?;
    let reports: Vec<InvariantReport> = sets
        .iter()
        .map(|d| invariant_report(&ctx, d, cfg.a, &cfg.t_list))
        .collect::<Result<_>>()?;
    let rendered = match format_of(&cfg, cli) {
        OutputFormat::Json => json(&reports),
        OutputFormat::Tsv => {
            let mut out = String::from("index_set\tt_set\tn_t\tcoverage\n");
            for r in &reports {
                let nts: Vec<String> = r
                    .n_t
                    .iter()
                    .map(|(t, v)| match v {
                        Some(v) => format!("n_{t}={v}"),
                        None => format!("n_{t}=-"),
                    })
                    .collect();
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    join(&r.index_set),
                    join(&r.t_set),
                    nts.join(","),
                    join(&r.coverage)
                ));
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for r in &reports {
                out.push_str(&format!(
                    "I = {{{}}} over F_{}^{} (a = {})\n  T values: {{{}}}\n",
                    join(&r.index_set),
                    r.p,
                    r.f,
                    r.a,
                    join(&r.t_set)
                ));
                let nts: Vec<String> = r
                    .n_t
                    .iter()
                    .map(|(t, v)| match v {
                        Some(v) => format!("n_{t} = {v}"),
                        None => format!("n_{t} undefined (gcd(t, N) > 1)"),
                    })
                    .collect();
                if !nts.is_empty() {
                    out.push_str(&format!("  {}\n", nts.join(", ")));
                }
                for v in &r.verdicts {
                    out.push_str(&format!("  {}: {}\n", v.claim, v.justification));
                }
                out.push_str(&format!("  covered degrees: {{{}}}\n", join(&r.coverage)));
            }
            out
        }
    };
    emit(&cfg, cli, &rendered)?;
    Ok(0)
}

pub fn cmd_table1(cli: &Cli) -> Result<i32> {
    let report: Table1Report = run_table1()?;
    let format = cli.format.unwrap_or(OutputFormat::Text);
    let rendered = match format {
        OutputFormat::Json => json(&report),
        OutputFormat::Tsv => {
            let mut out = String::from("p\trow\tcell\texpected\tactual\tpass\n");
            for c in &report.cells {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    c.p, c.row, c.cell, c.expected, c.actual, c.pass
                ));
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for c in &report.cells {
                out.push_str(&format!(
                    "[{}] p={} {} {}: expected {}, got {}\n",
                    if c.pass { "ok" } else { "FAIL" },
                    c.p,
                    c.row,
                    c.cell,
                    c.expected,
                    c.actual
                ));
            }
            out.push_str(&format!(
                "table: {}\n",
                if report.pass { "PASS" } else { "FAIL" }
            ));
            out
        }
    };
    print!("{rendered}");
    Ok(if report.pass { 0 } else { 1 })
}

fn join(v: &[u64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Dispatches a parsed command line; the returned integer is the process
/// exit code (0 pass, 1 mismatch, 2 invalid configuration or input).
pub fn run(cli: &Cli) -> Result<i32> {
    if let Some(n) = cli.threads {
        // Ignore the error when a global pool already exists (e.g. tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cli.command {
        Command::Construct => cmd_construct(cli),
        Command::Verify => cmd_verify(cli),
        Command::Invariant => cmd_invariant(cli),
        Command::Table1 => cmd_table1(cli),
    }
}
