//! Argument parsing and command dispatch, kept out of `main` so tests can drive it in-process.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use lefschetz_core::lefschetz::{slp_check, wlp_check};
use lefschetz_core::quotient::hilbert_function;
use lefschetz_core::splitting::{gap_report, generic_splitting_type, predict_wlp_generic};
use lefschetz_core::SamplerConfig;

use crate::corpus::{builtin_corpus, load_corpus_dir, verify, BUILTIN};
use crate::error::{exit, CliError};
use crate::report::{Payload, RunReport, SplitResult};
use crate::spec_file::{parse_ideal_spec, ParsedSpec};
use crate::trials::{random_trials, TrialParams};

#[derive(Parser, Debug)]
#[command(name = "lefschetz", version, about = "Exact Lefschetz-property checks for Artinian quotients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit the machine-readable report instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Sampler seed (overrides the spec file).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Coefficient bound B for sampled forms.
    #[arg(long, global = true)]
    pub bound: Option<u32>,
    /// Number of sampled candidates.
    #[arg(long, global = true)]
    pub attempts: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert function of S/I.
    Hilbert(SpecArg),
    /// Weak Lefschetz check by a generic linear form.
    Wlp(SpecArg),
    /// Strong Lefschetz experiment with powers of a generic linear form.
    Slp(SpecArg),
    /// Splitting type of the syzygy bundle on a generic line (3 variables).
    Split(SpecArg),
    /// Formula-driven WLP prediction (powers of linear forms, 3 variables).
    Predict(SpecArg),
    /// Check the reference corpus.
    VerifyPaper {
        /// Directory of corpus files to use instead of the built-in ones.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Randomized sweep over ideals of powers of general linear forms.
    RandomTrials(TrialArgs),
}

#[derive(Args, Debug)]
pub struct SpecArg {
    /// Ideal spec file (TOML).
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub struct TrialArgs {
    #[arg(long, default_value_t = 3)]
    pub vars: usize,
    /// Largest number of generators.
    #[arg(long, default_value_t = 6)]
    pub gens: usize,
    /// Smallest number of generators (default: the number of variables).
    #[arg(long)]
    pub min_gens: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub min_degree: u32,
    #[arg(long, default_value_t = 8)]
    pub max_degree: u32,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
}

/// What a run printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let echo = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    match execute(&cli, format!("lefschetz {echo}")) {
        Ok((report, code)) => {
            let stderr = report.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            let stdout = if cli.json { report.to_json() + "\n" } else { report.to_text() };
            Outcome { code, stdout, stderr }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn sampler(cli: &Cli, spec: Option<&ParsedSpec>) -> Result<SamplerConfig, CliError> {
    let base = spec.and_then(|s| s.sampler).map_or_else(SamplerConfig::default, |s| s.apply(SamplerConfig::default()));
    let cfg = SamplerConfig {
        seed: cli.seed.unwrap_or(base.seed),
        bound: cli.bound.unwrap_or(base.bound),
        attempts: cli.attempts.unwrap_or(base.attempts),
    };
    cfg.validate().map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(cfg)
}

fn read_spec(file: &PathBuf) -> Result<(Vec<u8>, ParsedSpec), CliError> {
    let bytes = fs::read(file).map_err(|e| CliError::Io(format!("cannot read {}: {e}", file.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| CliError::Parse(format!("{} is not UTF-8", file.display())))?;
    let parsed = parse_ideal_spec(text).map_err(|e| match e {
        CliError::Parse(m) => CliError::Parse(format!("{}: {m}", file.display())),
        other => other,
    })?;
    Ok((bytes, parsed))
}

fn verdict_code(ok: bool) -> u8 {
    if ok {
        exit::OK
    } else {
        exit::VERDICT_FALSE
    }
}

fn execute(cli: &Cli, echo: String) -> Result<(RunReport, u8), CliError> {
    match &cli.command {
        Command::Hilbert(a) | Command::Wlp(a) | Command::Slp(a) | Command::Split(a) | Command::Predict(a) => {
            let (bytes, spec) = read_spec(&a.file)?;
            let cfg = sampler(cli, Some(&spec))?;
            let ideal = &spec.ideal;
            let (payload, code) = match &cli.command {
                Command::Hilbert(_) => (Payload::Hilbert(hilbert_function(ideal)?), exit::OK),
                Command::Wlp(_) => {
                    let r = wlp_check(ideal, &cfg)?;
                    let code = verdict_code(r.overall);
                    (Payload::Wlp(r), code)
                }
                Command::Slp(_) => {
                    let r = slp_check(ideal, &cfg)?;
                    let code = verdict_code(r.overall);
                    (Payload::Slp(r), code)
                }
                Command::Split(_) => {
                    // a splitting type only makes sense for a vector bundle
                    hilbert_function(ideal)?;
                    let st = generic_splitting_type(ideal, &cfg)?;
                    let (gap, balanced) = gap_report(&st);
                    (Payload::Split(SplitResult { splitting: st, gap, balanced }), exit::OK)
                }
                _ => {
                    hilbert_function(ideal)?;
                    let p = predict_wlp_generic(ideal, &cfg)?;
                    let code = verdict_code(p.predicted_wlp);
                    (Payload::Predict(p), code)
                }
            };
            Ok((RunReport::new(echo, &bytes, cfg.seed, spec.warnings, payload), code))
        }
        Command::VerifyPaper { corpus } => {
            let cfg = sampler(cli, None)?;
            let (entries, input) = match corpus {
                Some(dir) => {
                    let entries = load_corpus_dir(dir)?;
                    let input = serde_json::to_vec(&entries).expect("corpus serializes");
                    (entries, input)
                }
                None => (builtin_corpus()?, BUILTIN.iter().flat_map(|(_, t)| t.bytes()).collect()),
            };
            if entries.is_empty() {
                return Err(CliError::Parse("corpus is empty".into()));
            }
            let items = verify(&entries, &cfg);
            let code = verdict_code(items.iter().all(|i| i.passed));
            Ok((RunReport::new(echo, &input, cfg.seed, Vec::new(), Payload::VerifyPaper(items)), code))
        }
        Command::RandomTrials(t) => {
            let params = TrialParams {
                n_vars: t.vars,
                min_gens: t.min_gens.unwrap_or(t.vars).min(t.gens),
                max_gens: t.gens,
                min_degree: t.min_degree,
                max_degree: t.max_degree,
                trials: t.trials,
                sampler: sampler(cli, None)?,
            };
            let summary = random_trials(&params)?;
            let code = if summary.has_problems() { exit::VERDICT_FALSE } else { exit::OK };
            let input = serde_json::to_vec(&params).expect("params serialize");
            Ok((RunReport::new(echo, &input, params.sampler.seed, Vec::new(), Payload::RandomTrials(summary)), code))
        }
    }
}
