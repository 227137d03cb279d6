//! `loday`: check instance files, run built-in examples and seeded random
//! suites. Exit status is 0 when everything verified holds, 1 when a
//! statement was falsified and 2 for unreadable input or bad usage.

mod examples;
mod instance;
mod pipeline;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use loday_core::suites::{self, SuiteConfig, SuiteOutcome};
use loday_core::{Error, DEFAULT_SEED};

use crate::instance::InstanceFile;
use crate::pipeline::Settings;
use crate::report::Report;

#[derive(Parser)]
#[command(name = "loday", version, about = "Exact checks for Loday brackets and their algebroids")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of random samples where a check samples.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Maximum polynomial degree for exterior samples.
    #[arg(long, global = true, default_value_t = 2)]
    degree: u32,
    /// One JSON object per line instead of text.
    #[arg(long, global = true)]
    machine: bool,
    /// Append wall-clock timings.
    #[arg(long, global = true)]
    timing: bool,
}

impl Common {
    fn settings(&self) -> Settings {
        Settings {
            seed: self.seed,
            samples: self.samples,
            degree: self.degree,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check one or more TOML instance files.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Run built-in examples.
    Examples {
        /// Example to run; see --list.
        name: Option<String>,
        /// List the available examples.
        #[arg(long, conflicts_with_all = ["name", "all"])]
        list: bool,
        /// Run every example and summarize.
        #[arg(long, conflicts_with = "name")]
        all: bool,
        /// Print the example's instance file instead of running it.
        #[arg(long, requires = "name")]
        emit: bool,
    },
    /// Run a seeded random suite.
    Random {
        /// Suite name; see --list.
        #[arg(long, required_unless_present = "list")]
        kind: Option<String>,
        /// Bracket dimension (or number of variables for exterior suites).
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
        /// Largest bracket dimension accepted.
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// List the available suites.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Falsified(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_invariant_violation() {
            Failure::Falsified(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn emit(report: &mut Report, started: Instant, common: &Common) -> bool {
    report.elapsed = Some(started.elapsed());
    if common.machine {
        print!("{}", report.render_machine(common.timing));
    } else {
        print!("{}", report.render_text(common.timing));
    }
    report.passed()
}

fn load(path: &Path) -> Result<instance::LoadedInstance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    InstanceFile::parse(&text)
        .and_then(|f| f.load())
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_check(files: &[PathBuf], common: &Common) -> Result<bool, Failure> {
    let loaded = files.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
    let mut ok = true;
    for l in &loaded {
        let started = Instant::now();
        let mut report = pipeline::check(l, &common.settings())?;
        ok &= emit(&mut report, started, common);
    }
    Ok(ok)
}

fn cmd_examples(name: Option<&str>, list: bool, all: bool, emit_file: bool, common: &Common) -> Result<bool, Failure> {
    if list {
        let registry = examples::registry();
        let width = registry.iter().map(|e| e.name().len()).max().unwrap_or(0);
        for e in &registry {
            println!("{:<width$}  {}", e.name(), e.description());
        }
        return Ok(true);
    }
    if all {
        let mut failing = Vec::new();
        let registry = examples::registry();
        for e in &registry {
            let started = Instant::now();
            let mut report = e.run(&common.settings())?;
            if !emit(&mut report, started, common) {
                failing.push(e.name().to_string());
            }
        }
        let passed = registry.len() - failing.len();
        if common.machine {
            let summary = serde_json::json!({ "summary": { "examples": registry.len(), "passed": passed, "failing": failing } });
            println!("{summary}");
        } else {
            println!("{passed} of {} examples pass", registry.len());
            for f in &failing {
                println!("  failing: {f}");
            }
        }
        return Ok(failing.is_empty());
    }
    let Some(name) = name else {
        return Err(Failure::Usage("give an example name, --list or --all".into()));
    };
    let e = examples::find(name).ok_or_else(|| Failure::Usage(format!("unknown example {name:?}; try --list")))?;
    if emit_file {
        let file = e
            .instance()
            .ok_or_else(|| Failure::Usage(format!("example {name} has no instance file")))?;
        print!("{}", file.to_toml());
        return Ok(true);
    }
    let started = Instant::now();
    let mut report = e.run(&common.settings())?;
    Ok(emit(&mut report, started, common))
}

fn outcome_text(out: &SuiteOutcome) -> String {
    let c = &out.config;
    let mut s = format!(
        "== random {} (seed {}, dim {}, count {})\n  agreements: {}/{}\n",
        out.suite, c.seed, c.dim, c.count, out.agreements, out.checked
    );
    for (label, n) in &out.tallies {
        s.push_str(&format!("  {label}: {n}\n"));
    }
    if let Some(ce) = &out.counterexample {
        s.push_str(&format!("  counterexample: {}\n", ce.message));
        if let Some(i) = &ce.instance {
            s.push_str("  instance file:\n");
            let file = InstanceFile::from_instance(&format!("{}-counterexample", out.suite), &ce.message, i);
            for line in file.to_toml().lines() {
                if line.is_empty() {
                    s.push('\n');
                } else {
                    s.push_str(&format!("    {line}\n"));
                }
            }
        }
    }
    s.push_str(&format!("  result: {}\n", if out.passed() { "ok" } else { "FAILED" }));
    s
}

fn outcome_json(out: &SuiteOutcome, elapsed_ms: Option<u64>) -> String {
    let c = &out.config;
    let tallies: serde_json::Map<String, serde_json::Value> =
        out.tallies.iter().map(|(l, n)| (l.clone(), (*n).into())).collect();
    let counterexample = out.counterexample.as_ref().map(|ce| {
        serde_json::json!({
            "sample": ce.sample,
            "message": ce.message,
            "instance": ce.instance.as_ref().map(|i| {
                InstanceFile::from_instance(&format!("{}-counterexample", out.suite), &ce.message, i).to_toml()
            }),
        })
    });
    let mut v = serde_json::json!({
        "suite": out.suite,
        "seed": c.seed,
        "dim": c.dim,
        "count": c.count,
        "checked": out.checked,
        "agreements": out.agreements,
        "tallies": tallies,
        "counterexample": counterexample,
        "passed": out.passed(),
    });
    if let Some(ms) = elapsed_ms {
        v["elapsed_ms"] = ms.into();
    }
    v.to_string()
}

fn cmd_random(
    kind: Option<&str>,
    dim: Option<usize>,
    count: Option<usize>,
    max_dim: usize,
    list: bool,
    common: &Common,
) -> Result<bool, Failure> {
    if list {
        for s in suites::registry() {
            let d = s.default_config();
            println!("{:<10} dim {} count {:<4} {}", s.name(), d.dim, d.count, s.description());
        }
        return Ok(true);
    }
    let kind = kind.unwrap_or_default();
    let suite = suites::find(kind).ok_or_else(|| Failure::Usage(format!("unknown suite {kind:?}; try --list")))?;
    let defaults = suite.default_config();
    let cfg = SuiteConfig {
        dim: dim.unwrap_or(defaults.dim),
        count: count.or(common.samples).unwrap_or(defaults.count),
        seed: common.seed,
        degree: common.degree,
    };
    if suite.counts_variables() {
        if cfg.dim == 0 || cfg.dim > loday_core::exterior::MAX_VARS {
            return Err(Failure::Usage(format!(
                "--dim {} out of range for {kind}: 1..={} variables",
                cfg.dim,
                loday_core::exterior::MAX_VARS
            )));
        }
    } else if cfg.dim > max_dim {
        return Err(Failure::Usage(format!("--dim {} exceeds the ceiling {max_dim} (raise it with --max-dim)", cfg.dim)));
    }
    let started = Instant::now();
    let out = suite.run(&cfg)?;
    let elapsed = started.elapsed();
    if common.machine {
        println!("{}", outcome_json(&out, common.timing.then_some(elapsed.as_millis() as u64)));
    } else {
        print!("{}", outcome_text(&out));
        if common.timing {
            println!("  elapsed: {} ms", elapsed.as_millis());
        }
    }
    Ok(out.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.common;
    let result = match &cli.command {
        Command::Check { files } => cmd_check(files, &common),
        Command::Examples { name, list, all, emit } => cmd_examples(name.as_deref(), *list, *all, *emit, &common),
        Command::Random {
            kind,
            dim,
            count,
            max_dim,
            list,
        } => cmd_random(kind.as_deref(), *dim, *count, *max_dim, *list, &common),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Falsified(msg)) => {
            eprintln!("falsified: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
