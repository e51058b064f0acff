//! Restriction to a generic line in three variables: splitting types of the syzygy bundle and
//! the dimension formulas that predict where multiplication by the line is injective or
//! surjective.
//!
//! Restricting `I` modulo a linear form gives an ideal `J` of binary forms. Its syzygy module
//! is free, and its degrees are the splitting type.

use serde::Serialize;

use crate::binary::{minimal_subset, resolution_2vars, syzygy_shifts_oracle, BinaryPowerSpec};
use crate::error::{Error, Result};
use crate::lefschetz::sampler::{sample_linear_form_in, SamplerConfig, Stream};
use crate::poly::{restrict_mod_linear, restriction_map, GradedPoly, LinearForm};
use crate::quotient::ideal::{Generator, IdealSpec};
use crate::quotient::hilbert_function;

/// An ideal reduced modulo a linear form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedIdeal {
    /// Index of the variable solved for.
    pub eliminated: usize,
    /// Generators in the remaining variables, in input order.
    pub ideal: IdealSpec,
}

/// Reduces every generator modulo `l`; power generators stay powers.
pub fn restrict_ideal(ideal: &IdealSpec, l: &LinearForm) -> Result<RestrictedIdeal> {
    let r = ideal.num_vars();
    if l.num_vars() != r {
        return Err(Error::VarCountMismatch { expected: r, found: l.num_vars() });
    }
    if r < 2 {
        return Err(Error::InvalidInput("restriction needs at least two variables".into()));
    }
    let (eliminated, _) = restriction_map(l)?;
    let mut gens = Vec::with_capacity(ideal.generators().len());
    for (i, g) in ideal.generators().iter().enumerate() {
        let restricted = match g {
            Generator::Power { base, exponent } => {
                let b = restrict_mod_linear(&base.to_poly(), l)?;
                if b.is_zero() {
                    return Err(Error::Genericity(format!("base of generator {i} is a multiple of {l}")));
                }
                Generator::power(LinearForm::new(b.coeffs().to_vec()), *exponent)
            }
            Generator::Poly { form } => {
                let f = restrict_mod_linear(form, l)?;
                if f.is_zero() {
                    return Err(Error::Genericity(format!("generator {i} is divisible by {l}")));
                }
                Generator::poly(f)
            }
        };
        gens.push(restricted);
    }
    Ok(RestrictedIdeal { eliminated, ideal: IdealSpec::new(r - 1, gens)? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingType {
    /// The line the bundle was restricted to.
    pub line: LinearForm,
    /// `b_1 >= ... >= b_{n-1}` with the restriction `= sum O(-b_j)`.
    pub shifts: Vec<u32>,
    /// Socle degree of the restriction of the minimal generators.
    pub omega: u32,
    /// Multiplicity of `omega + 1`.
    pub a_count: u32,
    /// Multiplicity of `omega + 2`.
    pub b_count: u32,
    /// Shifts `>= omega + 3`, descending.
    pub tail: Vec<u32>,
    /// `b_1 - b_{n-1}`.
    pub gap: u32,
    /// Number of minimal generators after restriction.
    pub minimal_count: u32,
}

/// Splitting type of the syzygy bundle of a 3-variable ideal along the line `l = 0`.
///
/// The shifts come from all restricted generators, redundant ones included; `omega` comes
/// from the minimal ones.
pub fn splitting_type(ideal: &IdealSpec, l: &LinearForm) -> Result<SplittingType> {
    if ideal.num_vars() != 3 {
        return Err(Error::InvalidInput(format!(
            "splitting types need 3 variables, got {}",
            ideal.num_vars()
        )));
    }
    if ideal.generators().len() < 2 {
        return Err(Error::InvalidInput("splitting types need at least two generators".into()));
    }
    if let Some(powers) = ideal.power_generators() {
        for (i, (b, _)) in powers.iter().enumerate() {
            if powers[..i].iter().any(|(c, _)| c.is_proportional(b)) {
                return Err(Error::InvalidInput(format!("base form {b} repeats up to scaling")));
            }
        }
    }
    let restricted = restrict_ideal(ideal, l)?.ideal;
    let forms: Vec<GradedPoly> = restricted.generator_polys();
    let mut shifts = syzygy_shifts_oracle(&forms)?;
    shifts.sort_unstable_by(|a, b| b.cmp(a));

    let (omega, minimal_count) = match restricted.power_generators() {
        Some(powers) => {
            let spec = BinaryPowerSpec::new(powers)
                .map_err(|_| Error::Genericity(format!("two base forms become proportional modulo {l}")))?;
            let minimal = minimal_subset(&spec)?;
            (resolution_2vars(&minimal)?.omega, minimal.len() as u32)
        }
        None => {
            let hf = hilbert_function(&restricted)?;
            (hf.socle_degree, minimal_generator_count(&forms))
        }
    };

    let degree_sum: u32 = ideal.degrees().iter().sum();
    let shift_sum: u32 = shifts.iter().sum();
    if shift_sum != degree_sum {
        return Err(Error::Inconsistent(format!(
            "splitting shifts {shifts:?} sum to {shift_sum}, generator degrees to {degree_sum}"
        )));
    }
    let count = |v: u32| shifts.iter().filter(|&&b| b == v).count() as u32;
    Ok(SplittingType {
        line: l.clone(),
        a_count: count(omega + 1),
        b_count: count(omega + 2),
        tail: shifts.iter().copied().filter(|&b| b >= omega + 3).collect(),
        gap: shifts.first().zip(shifts.last()).map_or(0, |(hi, lo)| hi - lo),
        omega,
        minimal_count,
        shifts,
    })
}

/// Generators not in the ideal of the others of no larger degree.
fn minimal_generator_count(forms: &[GradedPoly]) -> u32 {
    let mut order: Vec<usize> = (0..forms.len()).collect();
    order.sort_by_key(|&i| forms[i].degree());
    let mut kept: Vec<GradedPoly> = Vec::new();
    for i in order {
        if !crate::quotient::ideal_contains(&kept, &forms[i]) {
            kept.push(forms[i].clone());
        }
    }
    kept.len() as u32
}

/// Length of the restricted quotient. Smaller means larger ranks in every degree of the
/// restricted ideal, i.e. a more generic line.
fn restriction_length(ideal: &IdealSpec, l: &LinearForm) -> Result<usize> {
    let restricted = restrict_ideal(ideal, l)?.ideal;
    Ok(hilbert_function(&restricted)?.total_dim())
}

/// Splitting type along a generic line: up to `attempts` seeded lines, the most generic one
/// (by [`restriction_length`]) wins, and its type must be reproduced by a second line.
pub fn generic_splitting_type(ideal: &IdealSpec, cfg: &SamplerConfig) -> Result<SplittingType> {
    cfg.validate()?;
    let mut found: Vec<(usize, SplittingType)> = Vec::new();
    let mut last_err = None;
    for i in 0..cfg.attempts {
        let l = sample_linear_form_in(Stream::Splitting, ideal.num_vars(), cfg, i as u64);
        match restriction_length(ideal, &l).and_then(|s| Ok((s, splitting_type(ideal, &l)?))) {
            Ok(hit) => found.push(hit),
            Err(e @ (Error::Genericity(_) | Error::NotArtinian { .. })) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    let best = found.iter().map(|(s, _)| *s).min().ok_or_else(|| {
        Error::Genericity(format!(
            "no usable line in {} attempts ({})",
            cfg.attempts,
            last_err.map_or_else(String::new, |e| e.to_string())
        ))
    })?;
    let top: Vec<&SplittingType> = found.iter().filter(|(s, _)| *s == best).map(|(_, st)| st).collect();
    for (i, st) in top.iter().enumerate() {
        if top[i + 1..].iter().any(|o| o.shifts == st.shifts) {
            return Ok((*st).clone());
        }
    }
    Err(Error::Genericity(format!(
        "no splitting type was reproduced by two of {} sampled lines",
        cfg.attempts
    )))
}

/// Whether `d_{t+1} (t - 1) <= d_1 + ... + d_t - t` for every `t` from 2 to `n - 1`.
pub fn no_redundancy_condition(degrees: &[u32]) -> bool {
    let mut d = degrees.to_vec();
    d.sort_unstable();
    (2..d.len()).all(|t| {
        let sum: i64 = d[..t].iter().map(|&x| x as i64).sum();
        d[t] as i64 * (t as i64 - 1) <= sum - t as i64
    })
}

/// `k choose 2`, zero for `k < 2`.
fn choose2(k: i64) -> u64 {
    if k < 2 {
        0
    } else {
        (k * (k - 1) / 2) as u64
    }
}

/// `h^2` of the twisted syzygy bundle: `sum C(d_i - m - 1, 2)`.
pub fn h2_syzygy(degrees: &[u32], m: u32) -> u64 {
    degrees.iter().map(|&d| choose2(d as i64 - m as i64 - 1)).sum()
}

/// `sum max(d_i - m - 2, 0)`.
pub fn psi_image_dim(degrees: &[u32], m: u32) -> u64 {
    degrees.iter().map(|&d| (d as i64 - m as i64 - 2).max(0) as u64).sum()
}

/// `h^1` of the restricted bundle: `sum max(b_j - m - 2, 0)`.
pub fn h1_restriction(st: &SplittingType, m: u32) -> u64 {
    st.shifts.iter().map(|&b| (b as i64 - m as i64 - 2).max(0) as u64).sum()
}

/// `h^0` of the restricted bundle: `sum max(m + 2 - b_j, 0)`.
pub fn h0_restriction(st: &SplittingType, m: u32) -> u64 {
    st.shifts.iter().map(|&b| (m as i64 + 2 - b as i64).max(0) as u64).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Injective,
    Surjective,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictionRow {
    pub m: u32,
    pub regime: Regime,
    /// Whether the vanishing that forces the regime holds.
    pub holds: bool,
    pub h0_restriction: u64,
    pub h2: u64,
    pub psi_image_dim: u64,
    pub h1_restriction: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WlpPrediction {
    pub splitting: SplittingType,
    pub omega: u32,
    /// Rows for `m = 0..=horizon`; every later row is surjective with all terms zero.
    pub rows: Vec<PredictionRow>,
    pub horizon: u32,
    pub predicted_wlp: bool,
    pub no_redundancy_condition: bool,
}

impl WlpPrediction {
    /// Predicted regime in any degree, including past the horizon.
    pub fn predicted_regime(&self, m: u32) -> Regime {
        if m < self.omega {
            Regime::Injective
        } else {
            Regime::Surjective
        }
    }
}

/// Formula-driven WLP prediction for powers of linear forms in 3 variables along the line `l`.
pub fn predict_wlp(ideal: &IdealSpec, l: &LinearForm) -> Result<WlpPrediction> {
    if !ideal.is_power_ideal() {
        return Err(Error::NotPowerIdeal);
    }
    prediction_from(ideal, splitting_type(ideal, l)?)
}

/// [`predict_wlp`] along a generic line chosen by [`generic_splitting_type`].
pub fn predict_wlp_generic(ideal: &IdealSpec, cfg: &SamplerConfig) -> Result<WlpPrediction> {
    if !ideal.is_power_ideal() {
        return Err(Error::NotPowerIdeal);
    }
    prediction_from(ideal, generic_splitting_type(ideal, cfg)?)
}

fn prediction_from(ideal: &IdealSpec, st: SplittingType) -> Result<WlpPrediction> {
    let degrees = ideal.degrees();
    let omega = st.omega;
    let horizon = omega.max(*degrees.iter().max().expect("nonempty ideal"));
    let rows: Vec<PredictionRow> = (0..=horizon)
        .map(|m| {
            let h0 = h0_restriction(&st, m);
            let h1 = h1_restriction(&st, m);
            let psi = psi_image_dim(&degrees, m);
            let (regime, holds) = if m < omega { (Regime::Injective, h0 == 0) } else { (Regime::Surjective, h1 == psi) };
            PredictionRow { m, regime, holds, h0_restriction: h0, h2: h2_syzygy(&degrees, m), psi_image_dim: psi, h1_restriction: h1 }
        })
        .collect();
    Ok(WlpPrediction {
        predicted_wlp: rows.iter().all(|r| r.holds),
        no_redundancy_condition: no_redundancy_condition(&degrees),
        splitting: st,
        omega,
        rows,
        horizon,
    })
}

/// `(b_1 - b_{n-1}, gap <= 1)`. Balance is context only; semistability is not decided.
pub fn gap_report(st: &SplittingType) -> (u32, bool) {
    (st.gap, st.gap <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lefschetz::wlp_check;

    fn powers(gens: &[(&[i64], u32)]) -> IdealSpec {
        let g: Vec<(LinearForm, u32)> = gens.iter().map(|(c, d)| (LinearForm::from_i64(c), *d)).collect();
        IdealSpec::powers(3, &g).unwrap()
    }

    const LINE: [i64; 3] = [3, -5, 7];

    fn general(degrees: &[u32]) -> IdealSpec {
        let bases: [&[i64]; 6] = [&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, -2, 3], &[2, 5, -1]];
        powers(&degrees.iter().zip(bases).map(|(&d, b)| (b, d)).collect::<Vec<_>>())
    }

    #[test]
    fn restriction_examples() {
        let sq = general(&[2, 2, 2]);
        let r = restrict_ideal(&sq, &LinearForm::from_i64(&[1, 1, 1])).unwrap();
        assert_eq!(r.eliminated, 0);
        let bases: Vec<LinearForm> = r.ideal.power_generators().unwrap().into_iter().map(|(b, _)| b).collect();
        assert_eq!(bases, vec![LinearForm::from_i64(&[-1, -1]), LinearForm::from_i64(&[1, 0]), LinearForm::from_i64(&[0, 1])]);

        let x5 = powers(&[(&[1, 0, 0], 5)]);
        assert!(matches!(restrict_ideal(&x5, &LinearForm::from_i64(&[1, 0, 0])), Err(Error::Genericity(_))));
    }

    #[test]
    fn splitting_examples() {
        let l = LinearForm::from_i64(&LINE);
        let st = splitting_type(&general(&[2, 2, 2]), &l).unwrap();
        assert_eq!((st.shifts.clone(), st.omega, st.gap), (vec![3, 3], 1, 0));
        let st = splitting_type(&general(&[3, 3, 3]), &l).unwrap();
        assert_eq!((st.shifts.clone(), st.omega, st.gap), (vec![5, 4], 3, 1));
        let st = splitting_type(&general(&[3, 3, 3, 3]), &l).unwrap();
        assert_eq!((st.shifts.clone(), st.omega, st.gap), (vec![4, 4, 4], 2, 0));
        assert_eq!((st.a_count, st.b_count), (0, 3));
    }

    #[test]
    fn redundant_generator_lands_in_tail() {
        let st = splitting_type(&general(&[3, 3, 3, 9]), &LinearForm::from_i64(&LINE)).unwrap();
        assert_eq!(st.shifts, vec![9, 5, 4]);
        assert_eq!(st.omega, 3);
        assert_eq!(st.tail, vec![9]);
        assert_eq!(st.minimal_count, 3);
        for m in st.omega..12 {
            assert_eq!(h1_restriction(&st, m), psi_image_dim(&[3, 3, 3, 9], m));
            let tail_only: u64 = st.tail.iter().map(|&d| (d as i64 - m as i64 - 2).max(0) as u64).sum();
            assert_eq!(h1_restriction(&st, m), tail_only);
        }
    }

    #[test]
    fn special_line_is_rejected_or_differs() {
        // the line through the points of two bases makes them proportional after restriction
        let i = general(&[2, 2, 2]);
        let bad = splitting_type(&i, &LinearForm::from_i64(&[0, 0, 1]));
        assert!(matches!(bad, Err(Error::Genericity(_))));
        let bad = splitting_type(&general(&[2, 2, 2, 2]), &LinearForm::from_i64(&[1, -1, 0]));
        assert!(matches!(bad, Err(Error::Genericity(_))), "{bad:?}");
    }

    #[test]
    fn generic_type_is_reproduced() {
        let st = generic_splitting_type(&general(&[3, 3, 3]), &SamplerConfig::default()).unwrap();
        assert_eq!(st.shifts, vec![5, 4]);
    }

    #[test]
    fn non_power_ideal_splitting() {
        let ex = IdealSpec::polys(
            3,
            vec![
                GradedPoly::monomial(&[5, 0, 0]),
                GradedPoly::monomial(&[0, 5, 0]),
                GradedPoly::monomial(&[0, 0, 5]),
                GradedPoly::monomial(&[2, 1, 1]),
                GradedPoly::monomial(&[1, 2, 1]),
            ],
        )
        .unwrap();
        let st = generic_splitting_type(&ex, &SamplerConfig::default()).unwrap();
        assert_eq!(st.shifts.len(), 4);
        assert_eq!(st.shifts.iter().sum::<u32>(), 23);
        assert!(matches!(predict_wlp(&ex, &st.line), Err(Error::NotPowerIdeal)));
    }

    #[test]
    fn no_redundancy_examples() {
        assert!(no_redundancy_condition(&[2, 2, 2]));
        assert!(!no_redundancy_condition(&[1, 1, 5]));
        assert!(no_redundancy_condition(&[3, 3, 3, 3]));
        assert!(no_redundancy_condition(&[4, 7]));
    }

    #[test]
    fn dimension_formulas() {
        assert_eq!(h2_syzygy(&[5, 5, 5, 4, 4], 4), 0);
        assert_eq!(h2_syzygy(&[3, 3, 3, 9], 3), 10);
        assert_eq!(h2_syzygy(&[3, 3, 3, 9], 4), 6);
        assert_eq!(psi_image_dim(&[3, 3, 3, 9], 3), 4);
        assert_eq!(psi_image_dim(&[3, 3, 3, 9], 7), 0);
        for m in 0..12 {
            assert_eq!(psi_image_dim(&[3, 3, 3, 9], m), h2_syzygy(&[3, 3, 3, 9], m) - h2_syzygy(&[3, 3, 3, 9], m + 1));
        }
        let st = |shifts: Vec<u32>| SplittingType {
            line: LinearForm::from_i64(&LINE),
            gap: shifts[0] - shifts[shifts.len() - 1],
            shifts,
            omega: 0,
            a_count: 0,
            b_count: 0,
            tail: vec![],
            minimal_count: 0,
        };
        assert_eq!(h1_restriction(&st(vec![3, 3]), 1), 0);
        assert_eq!(h1_restriction(&st(vec![9, 4, 4, 4]), 3), 4);
        assert_eq!(h1_restriction(&st(vec![5, 4]), 2), 1);
        assert_eq!(gap_report(&st(vec![9, 4, 4])), (5, false));
    }

    #[test]
    fn gap_examples() {
        let l = LinearForm::from_i64(&LINE);
        assert_eq!(gap_report(&splitting_type(&general(&[2, 2, 2]), &l).unwrap()), (0, true));
        assert_eq!(gap_report(&splitting_type(&general(&[3, 3, 3]), &l).unwrap()), (1, true));
        // the redundant ninth power sits far above the balanced part
        assert_eq!(gap_report(&splitting_type(&general(&[3, 3, 3, 9]), &l).unwrap()), (5, false));
    }

    #[test]
    fn predictions_match_direct_checks() {
        let l = LinearForm::from_i64(&LINE);
        let cfg = SamplerConfig::default();
        for degrees in [vec![2, 2, 2], vec![3, 3, 3, 9], vec![2, 2, 2, 3], vec![3, 3, 3, 3], vec![1, 4, 6, 6]] {
            let i = general(&degrees);
            let p = predict_wlp(&i, &l).unwrap();
            assert!(p.predicted_wlp, "{degrees:?}");
            let rep = wlp_check(&i, &cfg).unwrap();
            assert!(rep.overall, "{degrees:?}");
            for row in &rep.rows {
                match p.predicted_regime(row.m) {
                    Regime::Injective => assert!(row.verdict.is_injective(), "{degrees:?} m={}", row.m),
                    Regime::Surjective => assert!(row.verdict.is_surjective(), "{degrees:?} m={}", row.m),
                }
            }
        }
    }
}
