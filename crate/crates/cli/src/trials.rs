//! Randomized sweeps over ideals generated by powers of general linear forms.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::thread;

use lefschetz_core::lefschetz::sampler::sample_power_ideal;
use lefschetz_core::lefschetz::wlp_check_quotient;
use lefschetz_core::splitting::{predict_wlp_generic, no_redundancy_condition, Regime};
use lefschetz_core::{GradedQuotient, IdealSpec, SamplerConfig};
use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrialParams {
    pub n_vars: usize,
    pub min_gens: usize,
    pub max_gens: usize,
    pub min_degree: u32,
    pub max_degree: u32,
    pub trials: u64,
    pub sampler: SamplerConfig,
}

impl TrialParams {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Parse(m));
        if self.n_vars < 2 {
            return bad("--vars must be at least 2".into());
        }
        if self.max_gens < 2 || self.min_gens > self.max_gens {
            return bad(format!("generator counts {}..={} are empty or below 2", self.min_gens, self.max_gens));
        }
        if self.min_gens < self.n_vars {
            return bad(format!(
                "at least {} generators are needed for an Artinian quotient in {} variables",
                self.n_vars, self.n_vars
            ));
        }
        if self.min_degree == 0 || self.min_degree > self.max_degree {
            return bad(format!("degree range {}..={} is empty or contains 0", self.min_degree, self.max_degree));
        }
        if self.trials == 0 {
            return bad("--trials must be at least 1".into());
        }
        self.sampler.validate().map_err(CliError::from)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub index: u64,
    pub ideal: IdealSpec,
    pub degrees: Vec<u32>,
    pub wlp: Option<bool>,
    pub wlp_failures: Vec<u32>,
    /// Prediction and splitting data exist only for three variables.
    pub predicted_wlp: Option<bool>,
    /// Prediction and direct check agree on the verdict and on every row's regime.
    pub agree: Option<bool>,
    pub gap: Option<u32>,
    pub no_redundancy_condition: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapCount {
    pub gap: Option<u32>,
    pub wlp: bool,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialSummary {
    pub params: TrialParams,
    pub wlp_true: usize,
    pub wlp_false: usize,
    pub errors: usize,
    pub agreements: usize,
    pub disagreements: usize,
    /// Counts of `(gap, WLP)` pairs; `gap` is absent outside three variables.
    pub gap_table: Vec<GapCount>,
    pub records: Vec<TrialRecord>,
}

impl TrialSummary {
    /// Errors or prediction mismatches; WLP failures alone are findings, not problems.
    pub fn has_problems(&self) -> bool {
        self.errors > 0 || self.disagreements > 0
    }
}

pub fn run_trial(params: &TrialParams, index: u64) -> TrialRecord {
    let cfg = &params.sampler;
    let ideal = sample_power_ideal(
        params.n_vars,
        params.min_gens..=params.max_gens,
        params.min_degree..=params.max_degree,
        cfg,
        index,
    )
    .expect("parameters validated");
    let degrees = ideal.degrees();
    let mut rec = TrialRecord {
        index,
        no_redundancy_condition: no_redundancy_condition(&degrees),
        degrees,
        ideal: ideal.clone(),
        wlp: None,
        wlp_failures: Vec::new(),
        predicted_wlp: None,
        agree: None,
        gap: None,
        error: None,
    };
    let report = GradedQuotient::new(ideal.clone()).and_then(|q| wlp_check_quotient(&q, cfg));
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    rec.wlp = Some(report.overall);
    rec.wlp_failures = report.failures();
    if params.n_vars == 3 {
        match predict_wlp_generic(&ideal, cfg) {
            Ok(pred) => {
                let rows_agree = report.rows.iter().all(|row| match pred.predicted_regime(row.m) {
                    Regime::Injective => row.verdict.is_injective(),
                    Regime::Surjective => row.verdict.is_surjective(),
                });
                rec.predicted_wlp = Some(pred.predicted_wlp);
                rec.agree = Some(rows_agree && pred.predicted_wlp == report.overall);
                rec.gap = Some(pred.splitting.gap);
            }
            Err(e) => rec.error = Some(e.to_string()),
        }
    }
    rec
}

/// Runs all trials on a small worker pool; records come back in index order.
pub fn random_trials(params: &TrialParams) -> Result<TrialSummary, CliError> {
    params.validate()?;
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(params.trials as usize);
    let next = AtomicU64::new(0);
    let slots: Mutex<Vec<Option<TrialRecord>>> = Mutex::new(vec![None; params.trials as usize]);
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= params.trials {
                    break;
                }
                let rec = run_trial(params, i);
                slots.lock().expect("no worker panicked")[i as usize] = Some(rec);
            });
        }
    });
    let records: Vec<TrialRecord> =
        slots.into_inner().expect("no worker panicked").into_iter().map(|r| r.expect("every trial ran")).collect();

    let mut gaps: BTreeMap<(Option<u32>, bool), usize> = BTreeMap::new();
    for r in &records {
        if let Some(w) = r.wlp {
            *gaps.entry((r.gap, w)).or_default() += 1;
        }
    }
    Ok(TrialSummary {
        params: *params,
        wlp_true: records.iter().filter(|r| r.wlp == Some(true)).count(),
        wlp_false: records.iter().filter(|r| r.wlp == Some(false)).count(),
        errors: records.iter().filter(|r| r.error.is_some()).count(),
        agreements: records.iter().filter(|r| r.agree == Some(true)).count(),
        disagreements: records.iter().filter(|r| r.agree == Some(false)).count(),
        gap_table: gaps.into_iter().map(|((gap, wlp), count)| GapCount { gap, wlp, count }).collect(),
        records,
    })
}
