//! Direct Lefschetz checks: exact ranks of multiplication maps `A_m -> A_{m+e}`.
//!
//! "Generic" multipliers are seeded random integer forms; a check tries up to
//! `attempts` of them and keeps the best.

pub mod sampler;

use serde::Serialize;

use crate::error::Result;
use crate::poly::{expand_power, GradedPoly, LinearForm};
use crate::quotient::ideal::IdealSpec;
use crate::quotient::{GradedQuotient, HilbertFunction};
use sampler::{sample_linear_form, SamplerConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "injective")]
    Injective,
    #[serde(rename = "surjective")]
    Surjective,
    #[serde(rename = "bijective")]
    Bijective,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn classify(dim_source: usize, dim_target: usize, rank: usize) -> Verdict {
        match (rank == dim_source, rank == dim_target) {
            (true, true) => Verdict::Bijective,
            (true, false) => Verdict::Injective,
            (false, true) => Verdict::Surjective,
            (false, false) => Verdict::Fail,
        }
    }

    pub fn is_full_rank(self) -> bool {
        self != Verdict::Fail
    }

    pub fn is_injective(self) -> bool {
        matches!(self, Verdict::Injective | Verdict::Bijective)
    }

    pub fn is_surjective(self) -> bool {
        matches!(self, Verdict::Surjective | Verdict::Bijective)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Injective => "injective",
            Verdict::Surjective => "surjective",
            Verdict::Bijective => "bijective",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzRow {
    pub m: u32,
    pub dim_source: usize,
    pub dim_target: usize,
    pub rank: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzReport {
    /// The multiplier whose rows are reported.
    pub multiplier: GradedPoly,
    pub degree: u32,
    pub rows: Vec<LefschetzRow>,
    /// True iff no row is FAIL.
    pub overall: bool,
    pub attempts_used: u32,
    /// Degrees where every attempted multiplier failed; empty unless all attempts failed.
    pub certified_failures: Vec<u32>,
    /// Set for runs that only gather evidence on open questions.
    pub experimental: bool,
}

impl LefschetzReport {
    pub fn failures(&self) -> Vec<u32> {
        self.rows.iter().filter(|r| r.verdict == Verdict::Fail).map(|r| r.m).collect()
    }

    fn score(&self) -> (usize, usize) {
        let full = self.rows.iter().filter(|r| r.verdict.is_full_rank()).count();
        (full, self.rows.iter().map(|r| r.rank).sum())
    }
}

/// Rows `m = 0..=socle` for multiplication by `g`.
pub fn multiplication_rows(q: &GradedQuotient, hf: &HilbertFunction, g: &GradedPoly) -> Result<Vec<LefschetzRow>> {
    let mult = q.multiplier(g)?;
    let e = g.degree();
    Ok((0..=hf.socle_degree)
        .map(|m| {
            let (ds, dt) = (hf.dim(m), hf.dim(m + e));
            let rank = if ds.min(dt) == 0 { 0 } else { q.multiplication_rank(&mult, m) };
            LefschetzRow { m, dim_source: ds, dim_target: dt, rank, verdict: Verdict::classify(ds, dt, rank) }
        })
        .collect())
}

fn single_report(q: &GradedQuotient, hf: &HilbertFunction, g: &GradedPoly, experimental: bool) -> Result<LefschetzReport> {
    let rows = multiplication_rows(q, hf, g)?;
    let overall = rows.iter().all(|r| r.verdict.is_full_rank());
    Ok(LefschetzReport {
        multiplier: g.clone(),
        degree: g.degree(),
        rows,
        overall,
        attempts_used: 1,
        certified_failures: Vec::new(),
        experimental,
    })
}

/// Keeps the best of several candidate reports and certifies degrees where all of them failed.
fn best_of(reports: Vec<LefschetzReport>) -> LefschetzReport {
    let attempts = reports.len() as u32;
    let all_failed = reports.iter().all(|r| !r.overall);
    let mut common: Option<Vec<u32>> = None;
    for r in &reports {
        let f = r.failures();
        common = Some(match common {
            None => f,
            Some(c) => c.into_iter().filter(|m| f.contains(m)).collect(),
        });
    }
    // first maximum wins, so ties keep the earliest draw
    let mut best = reports.into_iter().rev().max_by_key(LefschetzReport::score).expect("at least one attempt");
    best.attempts_used = attempts;
    if all_failed {
        best.certified_failures = common.unwrap_or_default();
    }
    best
}

/// WLP check: multiplication by generic linear forms in every degree.
pub fn wlp_check(ideal: &IdealSpec, cfg: &SamplerConfig) -> Result<LefschetzReport> {
    wlp_check_quotient(&GradedQuotient::new(ideal.clone())?, cfg)
}

/// [`wlp_check`] on a prepared quotient, sharing its cached pieces.
pub fn wlp_check_quotient(q: &GradedQuotient, cfg: &SamplerConfig) -> Result<LefschetzReport> {
    cfg.validate()?;
    let hf = q.hilbert_function()?;
    let r = q.ideal().num_vars();
    let mut reports = Vec::new();
    for attempt in 0..cfg.attempts {
        let l = sample_linear_form(r, cfg, attempt as u64);
        let report = single_report(q, &hf, &l.to_poly(), false)?;
        let done = report.overall;
        reports.push(report);
        if done {
            break;
        }
    }
    Ok(best_of(reports))
}

/// Ranks of multiplication by a given form in every degree. An experiment: a full-rank
/// outcome is evidence, not proof, for statements about general forms.
pub fn maximal_rank_check(ideal: &IdealSpec, g: &GradedPoly) -> Result<LefschetzReport> {
    let q = GradedQuotient::new(ideal.clone())?;
    let hf = q.hilbert_function()?;
    single_report(&q, &hf, g, true)
}

/// Reports for `l^k`, `k = 1..=socle`, for the best generic `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlpReport {
    pub line: LinearForm,
    pub powers: Vec<LefschetzReport>,
    pub overall: bool,
    pub attempts_used: u32,
    pub experimental: bool,
}

impl SlpReport {
    /// `(k, m)` pairs where `l^k: A_m -> A_{m+k}` is not of full rank.
    pub fn failures(&self) -> Vec<(u32, u32)> {
        self.powers.iter().flat_map(|r| r.failures().into_iter().map(move |m| (r.degree, m))).collect()
    }

    fn score(&self) -> (usize, usize) {
        self.powers.iter().map(LefschetzReport::score).fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
    }
}

/// SLP check over up to `attempts` generic linear forms. Labeled experimental.
pub fn slp_check(ideal: &IdealSpec, cfg: &SamplerConfig) -> Result<SlpReport> {
    cfg.validate()?;
    let q = GradedQuotient::new(ideal.clone())?;
    let hf = q.hilbert_function()?;
    let r = ideal.num_vars();
    let mut best: Option<SlpReport> = None;
    let mut used = 0;
    for attempt in 0..cfg.attempts {
        used += 1;
        let l = sample_linear_form(r, cfg, attempt as u64);
        let powers = (1..=hf.socle_degree.max(1))
            .map(|k| single_report(&q, &hf, &expand_power(&l, k)?, true))
            .collect::<Result<Vec<_>>>()?;
        let overall = powers.iter().all(|p| p.overall);
        let report = SlpReport { line: l, powers, overall, attempts_used: 0, experimental: true };
        if best.as_ref().is_none_or(|b| report.score() > b.score()) {
            best = Some(report);
        }
        if overall {
            break;
        }
    }
    let mut best = best.expect("at least one attempt");
    best.attempts_used = used;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar;
    use crate::poly::LinearForm;
    use crate::quotient::ideal::Generator;

    fn squares(r: usize) -> IdealSpec {
        IdealSpec::powers(r, &(0..r).map(|i| (LinearForm::variable(r, i), 2)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(Verdict::classify(3, 3, 3), Verdict::Bijective);
        assert_eq!(Verdict::classify(3, 6, 3), Verdict::Injective);
        assert_eq!(Verdict::classify(6, 3, 3), Verdict::Surjective);
        assert_eq!(Verdict::classify(3, 0, 0), Verdict::Surjective);
        assert_eq!(Verdict::classify(13, 13, 12), Verdict::Fail);
    }

    #[test]
    fn complete_intersection_has_wlp() {
        let rep = wlp_check(&squares(3), &SamplerConfig::default()).unwrap();
        assert!(rep.overall);
        assert_eq!(rep.attempts_used, 1);
        let verdicts: Vec<Verdict> = rep.rows.iter().map(|r| r.verdict).collect();
        assert_eq!(verdicts, [Verdict::Injective, Verdict::Bijective, Verdict::Surjective, Verdict::Surjective]);
    }

    #[test]
    fn special_line_fails_where_generic_succeeds() {
        // x kills x in A_1 of <x^2, y^2, z^2>: rank of A_1 -> A_2 drops to 2
        let q = GradedQuotient::new(squares(3)).unwrap();
        let hf = q.hilbert_function().unwrap();
        let rows = multiplication_rows(&q, &hf, &LinearForm::variable(3, 0).to_poly()).unwrap();
        assert_eq!(rows[1].rank, 2);
        assert_eq!(rows[1].verdict, Verdict::Fail);
    }

    #[test]
    fn slp_in_two_variables() {
        let rep = slp_check(&squares(2), &SamplerConfig::default()).unwrap();
        assert!(rep.overall);
        assert!(rep.experimental);
        assert_eq!(rep.powers.len(), 2);
    }

    #[test]
    fn top_power_reaches_socle() {
        let rep = slp_check(&squares(3), &SamplerConfig::default()).unwrap();
        let cube = &rep.powers[2];
        assert_eq!(cube.degree, 3);
        assert_eq!((cube.rows[0].dim_source, cube.rows[0].dim_target, cube.rows[0].rank), (1, 1, 1));
    }

    #[test]
    fn degree_one_experiment_matches_wlp_rows() {
        let i = squares(3);
        let rep = wlp_check(&i, &SamplerConfig::default()).unwrap();
        let same = maximal_rank_check(&i, &rep.multiplier).unwrap();
        assert_eq!(same.rows, rep.rows);
        assert!(same.experimental && !rep.experimental);
    }

    #[test]
    fn invariant_under_permutation_and_scaling() {
        let gens = vec![
            Generator::power(LinearForm::from_i64(&[1, 0, 0]), 3),
            Generator::power(LinearForm::from_i64(&[0, 1, 0]), 3),
            Generator::power(LinearForm::from_i64(&[0, 0, 1]), 3),
            Generator::poly(GradedPoly::from_terms(3, &[(scalar(1), vec![1, 1, 1])]).unwrap()),
        ];
        let cfg = SamplerConfig::default();
        let base = wlp_check(&IdealSpec::new(3, gens.clone()).unwrap(), &cfg).unwrap();
        let mut shuffled = gens;
        shuffled.reverse();
        shuffled[0] = Generator::poly(GradedPoly::from_terms(3, &[(scalar(-7), vec![1, 1, 1])]).unwrap());
        let other = wlp_check(&IdealSpec::new(3, shuffled).unwrap(), &cfg).unwrap();
        assert_eq!(base.rows, other.rows);
        assert_eq!(base.overall, other.overall);
    }
}
