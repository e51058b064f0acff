use std::fmt::Write;

use lefschetz_core::lefschetz::sampler::PRNG_NAME;
use lefschetz_core::splitting::Regime;
use lefschetz_core::{HilbertFunction, LefschetzReport, SlpReport, SplittingType, WlpPrediction};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::corpus::VerifyItem;
use crate::trials::TrialSummary;

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, Serialize)]
pub struct SplitResult {
    pub splitting: SplittingType,
    pub gap: u32,
    pub balanced: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", content = "result", rename_all = "kebab-case")]
pub enum Payload {
    Hilbert(HilbertFunction),
    Wlp(LefschetzReport),
    Slp(SlpReport),
    Split(SplitResult),
    Predict(WlpPrediction),
    VerifyPaper(Vec<VerifyItem>),
    RandomTrials(TrialSummary),
}

/// Everything a run produced, deterministic given the input and the seed.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the input bytes.
    pub input_digest: String,
    pub tool_version: &'static str,
    pub seed: u64,
    pub prng: &'static str,
    pub warnings: Vec<String>,
    pub payload: Payload,
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl RunReport {
    pub fn new(command: String, input: &[u8], seed: u64, warnings: Vec<String>, payload: Payload) -> Self {
        RunReport { command, input_digest: digest(input), tool_version: TOOL_VERSION, seed, prng: PRNG_NAME, warnings, payload }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Hilbert(hf) => hilbert_text(&mut out, hf),
            Payload::Wlp(r) => lefschetz_text(&mut out, r, "WLP"),
            Payload::Slp(r) => slp_text(&mut out, r),
            Payload::Split(s) => split_text(&mut out, s),
            Payload::Predict(p) => predict_text(&mut out, p),
            Payload::VerifyPaper(items) => verify_text(&mut out, items),
            Payload::RandomTrials(t) => trials_text(&mut out, t),
        }
        let _ = writeln!(out, "({}; seed {}; input sha256 {})", self.tool_version, self.seed, &self.input_digest[..16]);
        out
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn hilbert_text(out: &mut String, hf: &HilbertFunction) {
    let _ = writeln!(out, "Hilbert function: {}", join(&hf.dims));
    let _ = writeln!(out, "socle degree: {}", hf.socle_degree);
    let _ = writeln!(out, "total dimension: {}", hf.total_dim());
}

fn lefschetz_text(out: &mut String, r: &LefschetzReport, what: &str) {
    let e = r.degree;
    let _ = writeln!(out, "multiplier (degree {e}): {}", r.multiplier);
    let _ = writeln!(out, "{:>4} {:>10} {:>12} {:>6}  verdict", "m", "dim A_m", format!("dim A_m+{e}"), "rank");
    for row in &r.rows {
        let _ = writeln!(out, "{:>4} {:>10} {:>12} {:>6}  {}", row.m, row.dim_source, row.dim_target, row.rank, row.verdict);
    }
    let label = if r.experimental { format!("{what} (experiment)") } else { what.to_string() };
    let _ = writeln!(out, "{label}: {} (attempts used: {})", r.overall, r.attempts_used);
    if !r.certified_failures.is_empty() {
        let _ = writeln!(out, "failure certified in every attempt at m = {}", join(&r.certified_failures));
    }
}

fn slp_text(out: &mut String, r: &SlpReport) {
    let _ = writeln!(out, "experiment: multiplication by powers of l = {}", r.line);
    for p in &r.powers {
        let _ = writeln!(out);
        lefschetz_text(out, p, &format!("maximal rank of l^{}", p.degree));
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "SLP (experiment): {} (attempts used: {})", r.overall, r.attempts_used);
}

fn split_text(out: &mut String, s: &SplitResult) {
    let st = &s.splitting;
    let _ = writeln!(out, "line: {}", st.line);
    let _ = writeln!(out, "splitting shifts: {}", join(&st.shifts));
    let _ = writeln!(out, "omega: {} (minimal generators after restriction: {})", st.omega, st.minimal_count);
    let _ = writeln!(out, "multiplicity of omega+1: {}, of omega+2: {}", st.a_count, st.b_count);
    let _ = writeln!(out, "tail: {}", if st.tail.is_empty() { "none".into() } else { join(&st.tail) });
    let _ = writeln!(out, "gap: {} ({})", s.gap, if s.balanced { "balanced" } else { "unbalanced" });
}

fn predict_text(out: &mut String, p: &WlpPrediction) {
    let _ = writeln!(out, "line: {}", p.splitting.line);
    let _ = writeln!(out, "splitting shifts: {}; omega = {}", join(&p.splitting.shifts), p.omega);
    let _ = writeln!(out, "{:>4} {:>11} {:>4} {:>4} {:>6} {:>4}  holds", "m", "regime", "h0", "h2", "im psi", "h1");
    for r in &p.rows {
        let regime = match r.regime {
            Regime::Injective => "injective",
            Regime::Surjective => "surjective",
        };
        let _ = writeln!(
            out,
            "{:>4} {:>11} {:>4} {:>4} {:>6} {:>4}  {}",
            r.m, regime, r.h0_restriction, r.h2, r.psi_image_dim, r.h1_restriction, r.holds
        );
    }
    let _ = writeln!(out, "degree condition without redundant generators: {}", p.no_redundancy_condition);
    let _ = writeln!(out, "predicted WLP: {}", p.predicted_wlp);
}

fn verify_text(out: &mut String, items: &[VerifyItem]) {
    for i in items {
        let tag = if i.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "[{tag}] {}: {}", i.entry, i.check);
        if !i.passed {
            let _ = writeln!(out, "    - expected {}", i.expected);
            let _ = writeln!(out, "    + actual   {}", i.actual);
        }
    }
    let passed = items.iter().filter(|i| i.passed).count();
    let _ = writeln!(out, "{passed}/{} checks passed", items.len());
}

fn trials_text(out: &mut String, t: &TrialSummary) {
    let p = &t.params;
    let _ = writeln!(
        out,
        "{} trials: {} variables, {}..={} generators, degrees {}..={}",
        p.trials, p.n_vars, p.min_gens, p.max_gens, p.min_degree, p.max_degree
    );
    let _ = writeln!(out, "WLP true: {}, WLP false: {}, errors: {}", t.wlp_true, t.wlp_false, t.errors);
    if p.n_vars == 3 {
        let _ = writeln!(out, "prediction agrees: {}, disagrees: {}", t.agreements, t.disagreements);
    }
    let _ = writeln!(out, "{:>5} {:>6} {:>6}", "gap", "WLP", "count");
    for g in &t.gap_table {
        let gap = g.gap.map_or("-".into(), |x| x.to_string());
        let _ = writeln!(out, "{gap:>5} {:>6} {:>6}", g.wlp, g.count);
    }
    for r in t.records.iter().filter(|r| r.error.is_some() || r.agree == Some(false)) {
        let _ = writeln!(out, "trial {} degrees {:?}: {}", r.index, r.degrees, r.error.as_deref().unwrap_or("prediction disagrees"));
    }
}
