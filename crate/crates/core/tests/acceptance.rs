//! Acceptance suite: one pass/fail line per criterion, nonzero exit if any fails.
//!
//! Runs as a plain binary (`harness = false`) so the report reads top to bottom.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lefschetz_core::binary::{
    minimality_inequality, membership_oracle, minimal_subset, resolution_2vars, resolution_from_exponents,
    syzygy_shifts_oracle, BinaryPowerSpec,
};
use lefschetz_core::lefschetz::sampler::{sample_form, sample_power_ideal, sample_power_ideal_gens};
use lefschetz_core::lefschetz::{maximal_rank_check, slp_check, wlp_check, wlp_check_quotient};
use lefschetz_core::poly::{expand_power, monomial_count};
use lefschetz_core::quotient::{hilbert_function, ideal_piece_matrix};
use lefschetz_core::splitting::{
    generic_splitting_type, h1_restriction, h2_syzygy, predict_wlp_generic, no_redundancy_condition, psi_image_dim, Regime,
    SplittingType,
};
use lefschetz_core::{GradedPoly, GradedQuotient, IdealSpec, LinearForm, SamplerConfig};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    match limit {
        Some(l) if took > l => Err(format!("{detail}; took {took:.2?}, limit {l:?}")),
        Some(l) => Ok(format!("{detail}; {took:.2?} (limit {l:?})")),
        None => Ok(format!("{detail}; {took:.2?}")),
    }
}

fn monomials(r: usize, exps: &[&[u32]]) -> IdealSpec {
    IdealSpec::polys(r, exps.iter().map(|e| GradedPoly::monomial(e)).collect()).unwrap()
}

fn cfg() -> SamplerConfig {
    SamplerConfig::default()
}

/// Every nondecreasing tuple of length `t` with entries in `1..=max`.
fn sorted_tuples(t: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn go(t: usize, lo: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            go(t, v, max, cur, out);
            cur.pop();
        }
    }
    go(t, 1, max, &mut cur, &mut out);
    out
}

fn ideal_failure(ideal: &IdealSpec, hf_expect: &[usize], fail_m: u32, dims: (usize, usize)) -> Outcome {
    let hf = hilbert_function(ideal).map_err(|e| e.to_string())?;
    check(hf.dims == hf_expect, || format!("Hilbert function {:?}, expected {hf_expect:?}", hf.dims))?;
    let rep = wlp_check(ideal, &cfg()).map_err(|e| e.to_string())?;
    check(!rep.overall, || "WLP reported true".into())?;
    check(rep.failures() == [fail_m], || format!("failures at {:?}, expected [{fail_m}]", rep.failures()))?;
    check(rep.certified_failures == [fail_m], || format!("certified {:?}", rep.certified_failures))?;
    let row = &rep.rows[fail_m as usize];
    check((row.dim_source, row.dim_target) == dims, || format!("dims {}->{}", row.dim_source, row.dim_target))?;
    Ok(format!(
        "HF {:?}; FAIL only at m={fail_m} ({}->{}, rank {}) in all {} attempts",
        hf.dims, row.dim_source, row.dim_target, row.rank, rep.attempts_used
    ))
}

fn criterion_1() -> Outcome {
    let i = monomials(3, &[&[5, 0, 0], &[0, 5, 0], &[0, 0, 5], &[2, 1, 1], &[1, 2, 1]]);
    ideal_failure(&i, &[1, 3, 6, 10, 13, 13, 10, 6, 3], 4, (13, 13))
}

fn criterion_2() -> Outcome {
    let gens: Vec<(LinearForm, u32)> = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1]]
        .iter()
        .map(|c| (LinearForm::from_i64(c), 3))
        .collect();
    ideal_failure(&IdealSpec::powers(4, &gens).unwrap(), &[1, 4, 10, 15, 15, 6], 3, (15, 15))
}

const SWEEP_TRIALS: u64 = 100;

/// Splitting types computed by the randomized suites, for the conservation criterion.
struct Collected {
    types: Vec<(Vec<u32>, SplittingType)>,
}

fn criterion_3(collected: &mut Collected) -> Outcome {
    let cfg = cfg();
    let mut rows_checked = 0;
    for i in 0..SWEEP_TRIALS {
        let ideal = sample_power_ideal(3, 3..=6, 1..=8, &cfg, i).map_err(|e| e.to_string())?;
        let degrees = ideal.degrees();
        let q = GradedQuotient::new(ideal.clone()).map_err(|e| e.to_string())?;
        let rep = wlp_check_quotient(&q, &cfg).map_err(|e| format!("trial {i}: {e}"))?;
        check(rep.overall, || format!("trial {i} {degrees:?}: WLP false, failures {:?}", rep.failures()))?;
        let pred = predict_wlp_generic(&ideal, &cfg).map_err(|e| format!("trial {i}: {e}"))?;
        check(pred.predicted_wlp, || format!("trial {i} {degrees:?}: prediction false"))?;
        for row in &rep.rows {
            let ok = match pred.predicted_regime(row.m) {
                Regime::Injective => row.verdict.is_injective(),
                Regime::Surjective => row.verdict.is_surjective(),
            };
            check(ok, || {
                format!("trial {i} {degrees:?}: m={} predicted {:?}, direct {}", row.m, pred.predicted_regime(row.m), row.verdict)
            })?;
            rows_checked += 1;
        }
        collected.types.push((degrees, pred.splitting));
    }
    Ok(format!("{SWEEP_TRIALS}/{SWEEP_TRIALS} WLP true; {rows_checked} rows agree with the predicted regime"))
}

const DRAWS: u64 = 5;

fn binary_spec(exps: &[u32], seed_index: u64) -> BinaryPowerSpec {
    let bases = sample_power_ideal_gens(2, exps.len(), 1, 1, &cfg(), seed_index);
    BinaryPowerSpec::new(bases.into_iter().zip(exps).map(|((l, _), &e)| (l, e)).collect()).unwrap()
}

fn criterion_4() -> Outcome {
    let mut checks = 0;
    let mut index = 0;
    for t in 2..=5 {
        for exps in sorted_tuples(t, 6) {
            for _ in 0..DRAWS {
                index += 1;
                let spec = binary_spec(&exps, index);
                let new = &spec.forms()[t - 1];
                let outside = !membership_oracle(&spec.prefix(t - 1), new).map_err(|e| e.to_string())?;
                let formula = minimality_inequality(&exps[..t - 1], exps[t - 1]);
                check(outside == formula, || format!("{exps:?} draw {index}: oracle {outside}, formula {formula}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} tuple/draw pairs, zero disagreements"))
}

fn criterion_5() -> Outcome {
    let mut checks = 0;
    let mut index = 10_000;
    for t in 2..=5 {
        for exps in sorted_tuples(t, 6) {
            if !(1..t).all(|m| minimality_inequality(&exps[..m], exps[m])) {
                continue;
            }
            for _ in 0..DRAWS {
                index += 1;
                let spec = binary_spec(&exps, index);
                let minimal = minimal_subset(&spec).map_err(|e| e.to_string())?;
                check(minimal.len() == t, || format!("{exps:?}: pruned to {:?}", minimal.exponents()))?;
                let res = resolution_2vars(&spec).map_err(|e| e.to_string())?;
                let shifts = syzygy_shifts_oracle(&spec.forms()).map_err(|e| e.to_string())?;
                check(shifts == res.syzygy_shifts, || format!("{exps:?}: oracle {shifts:?}, formula {:?}", res.syzygy_shifts))?;
                let hf = hilbert_function(&spec.to_ideal().unwrap()).map_err(|e| e.to_string())?;
                check(hf.socle_degree == res.omega, || format!("{exps:?}: socle {}, omega {}", hf.socle_degree, res.omega))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} minimal tuple/draw pairs, zero disagreements"))
}

fn criterion_6(collected: &mut Collected) -> Outcome {
    let cfg = cfg();
    let mut checks = 0;
    let mut index = 20_000;
    for n in 2..=5 {
        for degrees in sorted_tuples(n, 7) {
            if !no_redundancy_condition(&degrees) {
                continue;
            }
            index += 1;
            let bases = sample_power_ideal_gens(3, n, 1, 1, &cfg, index);
            let gens: Vec<(LinearForm, u32)> = bases.into_iter().zip(&degrees).map(|((l, _), &d)| (l, d)).collect();
            let ideal = IdealSpec::powers(3, &gens).unwrap();
            let st = generic_splitting_type(&ideal, &cfg).map_err(|e| format!("{degrees:?}: {e}"))?;
            let expect = resolution_from_exponents(&degrees).map_err(|e| e.to_string())?;
            check(st.shifts == expect.syzygy_shifts, || {
                format!("{degrees:?}: computed {:?}, closed form {:?}", st.shifts, expect.syzygy_shifts)
            })?;
            check(st.omega == expect.omega, || format!("{degrees:?}: omega {} vs {}", st.omega, expect.omega))?;
            collected.types.push((degrees, st));
            checks += 1;
        }
    }
    Ok(format!("{checks} degree tuples satisfying the condition, zero disagreements"))
}

fn criterion_7(collected: &Collected) -> Outcome {
    let mut checks = 0;
    let mut with_tail = 0;
    for (degrees, st) in &collected.types {
        let top = st.omega.max(*degrees.iter().max().unwrap()) + 2;
        for m in st.omega..=top {
            let psi = psi_image_dim(degrees, m);
            let tele = h2_syzygy(degrees, m) - h2_syzygy(degrees, m + 1);
            let h1 = h1_restriction(st, m);
            check(psi == tele && tele == h1, || format!("{degrees:?} m={m}: psi {psi}, h2 difference {tele}, h1 {h1}"))?;
            checks += 1;
        }
        if !st.tail.is_empty() {
            with_tail += 1;
        }
    }
    check(with_tail > 0, || "no spec with a tail generator was exercised".into())?;
    Ok(format!("{checks} (spec, m) pairs over {} specs ({with_tail} with tail generators)", collected.types.len()))
}

fn criterion_8() -> Outcome {
    let gens: Vec<(LinearForm, u32)> =
        sample_power_ideal_gens(3, 4, 1, 1, &cfg(), 30_000).into_iter().map(|(l, _)| (l, 3)).collect();
    let ideal = IdealSpec::powers(3, &gens).unwrap();
    // brute force: dimensions of the Macaulay matrices of I
    let brute: Vec<usize> = (0..=5).map(|m| monomial_count(3, m) - ideal_piece_matrix(&ideal, m).rank()).collect();
    check(brute == [1, 3, 6, 6, 3, 0], || format!("brute-force HF {brute:?}"))?;
    let hf = hilbert_function(&ideal).map_err(|e| e.to_string())?;
    check(hf.dims == brute[..5], || format!("HF {:?} disagrees with brute force", hf.dims))?;

    let slp = slp_check(&ideal, &cfg()).map_err(|e| e.to_string())?;
    check(!slp.overall, || "SLP reported true".into())?;
    let cube_fails: Vec<u32> = slp.failures().into_iter().filter(|(k, _)| *k == 3).map(|(_, m)| m).collect();
    check(!cube_fails.is_empty(), || format!("no failure for the cube of l; failures {:?}", slp.failures()))?;
    let row = &slp.powers[2].rows[cube_fails[0] as usize];
    let cube = expand_power(&slp.line, 3).unwrap();
    check(slp.powers[2].multiplier == cube, || "third power report is not for l^3".into())?;

    let g = sample_form(3, 3, &cfg(), 0);
    let mr = maximal_rank_check(&ideal, &g).map_err(|e| e.to_string())?;
    check(mr.overall, || format!("generic cubic fails at {:?}", mr.failures()))?;
    Ok(format!(
        "HF {brute:?}; l^3 fails at A_{} -> A_{} ({}->{}, rank {}); generic cubic has maximal rank in all {} degrees",
        row.m,
        row.m + 3,
        row.dim_source,
        row.dim_target,
        row.rank,
        mr.rows.len()
    ))
}

fn criterion_9(collected: &Collected) -> Outcome {
    for (degrees, st) in &collected.types {
        let (a, b) = (st.shifts.iter().sum::<u32>(), degrees.iter().sum::<u32>());
        check(a == b, || format!("{degrees:?}: shifts {:?} sum to {a}, degrees to {b}", st.shifts))?;
        check(st.shifts.len() + 1 == degrees.len(), || format!("{degrees:?}: {} shifts", st.shifts.len()))?;
    }
    Ok(format!("{} splitting types conserve the degree sum", collected.types.len()))
}

fn main() -> ExitCode {
    let mut collected = Collected { types: Vec::new() };
    let secs = Duration::from_secs;
    let results = [
        ("1", "Hilbert function and WLP failure of the five-monomial ideal", timed(Some(secs(5)), criterion_1)),
        ("2", "Hilbert function and WLP failure of five cubes in four variables", timed(Some(secs(10)), criterion_2)),
        ("3", "randomized sweep of power ideals in three variables", timed(Some(secs(120)), || criterion_3(&mut collected))),
        ("4", "minimal-generator inequality against membership oracle", timed(None, criterion_4)),
        ("5", "socle degree and syzygy degrees against oracles", timed(None, criterion_5)),
        ("6", "balanced splitting types under the degree condition", timed(None, || criterion_6(&mut collected))),
        ("7", "cohomology dimension identities", timed(None, || criterion_7(&collected))),
        ("8", "cubes of four general forms: SLP failure, cubic of maximal rank", timed(Some(secs(5)), criterion_8)),
        ("9", "degree conservation of splitting types", timed(None, || criterion_9(&collected))),
    ];
    let mut failed = 0;
    for (n, name, res) in &results {
        match res {
            Ok(detail) => println!("[PASS] criterion {n}: {name} -- {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {n}: {name} -- {why}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
