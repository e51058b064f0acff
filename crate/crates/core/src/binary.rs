//! Ideals generated by powers of linear forms in two variables.
//!
//! For pairwise independent forms the closed formulas here are exact, and each one comes
//! with a linear-algebra oracle that does not depend on it.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::integer_rank;
use crate::poly::{expand_power, GradedPoly, LinearForm, MonomialBasis};
use crate::quotient::ideal::IdealSpec;
use crate::quotient::ideal_contains;

/// Powers `l_i^{alpha_i}` of pairwise independent binary linear forms, sorted by exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryPowerSpec {
    gens: Vec<(LinearForm, u32)>,
}

impl BinaryPowerSpec {
    /// Validates and stably sorts by exponent.
    pub fn new(mut gens: Vec<(LinearForm, u32)>) -> Result<Self> {
        for (i, (l, e)) in gens.iter().enumerate() {
            if l.num_vars() != 2 {
                return Err(Error::VarCountMismatch { expected: 2, found: l.num_vars() });
            }
            if l.is_zero() {
                return Err(Error::ZeroForm);
            }
            if *e == 0 {
                return Err(Error::InvalidInput("exponents must be at least 1".into()));
            }
            if gens[..i].iter().any(|(k, _)| k.is_proportional(l)) {
                return Err(Error::InvalidInput(format!("base form {l} is proportional to an earlier base")));
            }
        }
        gens.sort_by_key(|(_, e)| *e);
        Ok(BinaryPowerSpec { gens })
    }

    pub fn gens(&self) -> &[(LinearForm, u32)] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.gens.iter().map(|(_, e)| *e).collect()
    }

    pub fn forms(&self) -> Vec<GradedPoly> {
        self.gens.iter().map(|(l, e)| expand_power(l, *e).expect("validated nonzero")).collect()
    }

    /// The first `m` generators.
    pub fn prefix(&self, m: usize) -> BinaryPowerSpec {
        BinaryPowerSpec { gens: self.gens[..m].to_vec() }
    }

    pub fn to_ideal(&self) -> Result<IdealSpec> {
        IdealSpec::powers(2, &self.gens)
    }
}

/// The minimal-generator inequality `alpha_new * (m - 1) <= sum(prefix) - m`, in integers.
///
/// For `m = 1` the answer is always `true`: a power of a form is never divisible by a power of
/// an independent one. For `m = 0` the new generator is trivially minimal.
pub fn minimality_inequality(prefix: &[u32], alpha_new: u32) -> bool {
    let m = prefix.len() as i64;
    if m < 2 {
        return true;
    }
    let sum: i64 = prefix.iter().map(|&a| a as i64).sum();
    alpha_new as i64 * (m - 1) <= sum - m
}

/// Whether `new_base^alpha_new` is outside the ideal generated by `prefix`, by the closed formula.
pub fn is_minimal_generator(prefix: &BinaryPowerSpec, new_base: &LinearForm, alpha_new: u32) -> Result<bool> {
    if new_base.num_vars() != 2 {
        return Err(Error::VarCountMismatch { expected: 2, found: new_base.num_vars() });
    }
    if new_base.is_zero() {
        return Err(Error::ZeroForm);
    }
    if prefix.gens.iter().any(|(l, _)| l.is_proportional(new_base)) {
        return Err(Error::InvalidInput(format!("{new_base} is proportional to a prefix base form")));
    }
    if prefix.gens.last().is_some_and(|(_, e)| *e > alpha_new) {
        return Err(Error::InvalidInput("new exponent must not be smaller than the prefix exponents".into()));
    }
    Ok(minimality_inequality(&prefix.exponents(), alpha_new))
}

/// Whether `f` lies in the ideal generated by `prefix`, by a rank computation.
pub fn membership_oracle(prefix: &BinaryPowerSpec, f: &GradedPoly) -> Result<bool> {
    if f.num_vars() != 2 {
        return Err(Error::VarCountMismatch { expected: 2, found: f.num_vars() });
    }
    Ok(ideal_contains(&prefix.forms(), f))
}

/// Drops every generator lying in the ideal of the earlier ones, deciding membership with the
/// oracle and asserting the closed formula agrees.
pub fn minimal_subset(spec: &BinaryPowerSpec) -> Result<BinaryPowerSpec> {
    let forms = spec.forms();
    let exps = spec.exponents();
    let mut kept = Vec::new();
    for i in 0..spec.len() {
        let outside = !ideal_contains(&forms[..i], &forms[i]);
        if outside != minimality_inequality(&exps[..i], exps[i]) {
            return Err(Error::Inconsistent(format!(
                "membership of generator {i} (exponents {exps:?}) disagrees with the closed formula"
            )));
        }
        if outside {
            kept.push(spec.gens[i].clone());
        }
    }
    Ok(BinaryPowerSpec { gens: kept })
}

/// Socle degree and syzygy degrees of a minimally generated binary power ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Resolution2 {
    pub omega: u32,
    /// Multiplicity of the syzygy degree `omega + 2`.
    pub a: u32,
    pub t: u32,
    /// `omega + 2` repeated `a` times, then `omega + 1` repeated `t - 1 - a` times.
    pub syzygy_shifts: Vec<u32>,
}

/// Closed-form resolution from the exponents of a minimal generating set (`t >= 2`).
pub fn resolution_from_exponents(alphas: &[u32]) -> Result<Resolution2> {
    let t = alphas.len() as u32;
    if t < 2 {
        return Err(Error::InvalidInput("resolution formula needs at least two generators".into()));
    }
    let sum: u32 = alphas.iter().sum();
    let omega = (sum - t) / (t - 1);
    let a = sum - (t - 1) * (omega + 1);
    let mut syzygy_shifts = vec![omega + 2; a as usize];
    syzygy_shifts.extend(std::iter::repeat_n(omega + 1, (t - 1 - a) as usize));
    Ok(Resolution2 { omega, a, t, syzygy_shifts })
}

/// Closed-form resolution; the caller guarantees `spec` is minimal (see [`minimal_subset`]).
pub fn resolution_2vars(spec: &BinaryPowerSpec) -> Result<Resolution2> {
    resolution_from_exponents(&spec.exponents())
}

/// Degrees of a free basis of the syzygy module of binary forms, sorted descending.
///
/// Counts kernel dimensions of `(c_i) -> sum c_i g_i` degree by degree: a free module
/// `sum R(-beta)` has `sum (j - beta + 1)_+` elements in degree `j`, so each excess is a new
/// generator. Stops once `gens.len() - 1` generators are found.
pub fn syzygy_shifts_oracle(gens: &[GradedPoly]) -> Result<Vec<u32>> {
    if gens.is_empty() {
        return Err(Error::InvalidInput("syzygy oracle needs at least one generator".into()));
    }
    if let Some(g) = gens.iter().find(|g| g.num_vars() != 2) {
        return Err(Error::VarCountMismatch { expected: 2, found: g.num_vars() });
    }
    if gens.iter().any(GradedPoly::is_zero) {
        return Err(Error::InvalidInput("syzygy oracle needs nonzero generators".into()));
    }
    let target = gens.len() - 1;
    let degrees: Vec<u32> = gens.iter().map(GradedPoly::degree).collect();
    let min_d = *degrees.iter().min().expect("nonempty");
    let cap: u32 = degrees.iter().sum();
    let mut shifts: Vec<u32> = Vec::new();
    let mut j = min_d;
    while shifts.len() < target {
        if j > cap {
            return Err(Error::Inconsistent(format!(
                "found {} of {target} syzygy generators by degree {cap}",
                shifts.len()
            )));
        }
        let mut columns: Vec<Vec<BigInt>> = Vec::new();
        for g in gens.iter().filter(|g| g.degree() <= j) {
            for mu in MonomialBasis::new(2, j - g.degree()).monomials() {
                columns.push(g.mul_monomial(mu).integer_coeffs());
            }
        }
        let domain = columns.len();
        let kernel = domain - integer_rank(columns);
        let explained: usize = shifts.iter().map(|&b| (j - b + 1) as usize).sum();
        let fresh = kernel.checked_sub(explained).ok_or_else(|| {
            Error::Inconsistent(format!("syzygy dimension {kernel} in degree {j} below the {explained} already generated"))
        })?;
        shifts.extend(std::iter::repeat_n(j, fresh));
        j += 1;
    }
    if shifts.len() > target {
        return Err(Error::Inconsistent(format!("{} syzygy generators for {} forms", shifts.len(), gens.len())));
    }
    shifts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(shifts)
}
