//! Seeded sampling of "generic" forms.
//!
//! Every draw gets its own PCG64 stream: the state is the seed and the stream selector packs
//! a purpose tag and a draw index, so draws are reproducible and independent of call order.

use std::ops::RangeInclusive;

use rand::{Rng, RngCore};
use rand_pcg::Pcg64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::poly::{GradedPoly, LinearForm, MonomialBasis};
use crate::quotient::ideal::IdealSpec;

pub const DEFAULT_SEED: u64 = 20100601;
pub const DEFAULT_BOUND: u32 = 100;
pub const DEFAULT_ATTEMPTS: u32 = 5;

/// Name of the generator, recorded in reports.
pub const PRNG_NAME: &str = "pcg64 (rand_pcg Lcg128Xsl64; state = seed, stream = tag << 64 | index)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Coefficients are drawn uniformly from `[-bound, bound]`.
    pub bound: u32,
    pub attempts: u32,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { seed: DEFAULT_SEED, bound: DEFAULT_BOUND, attempts: DEFAULT_ATTEMPTS }
    }
}

impl SamplerConfig {
    pub fn new(seed: u64, bound: u32, attempts: u32) -> Result<Self> {
        let cfg = SamplerConfig { seed, bound, attempts };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.bound == 0 {
            return Err(Error::InvalidInput("coefficient bound must be at least 1".into()));
        }
        if self.attempts == 0 {
            return Err(Error::InvalidInput("attempts must be at least 1".into()));
        }
        Ok(())
    }
}

/// Independent families of draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    /// Multipliers for Lefschetz checks.
    Lefschetz = 1,
    /// Lines for splitting types.
    Splitting = 2,
    /// Forms of higher degree.
    Form = 3,
    /// Randomized trial instances.
    Trial = 4,
}

pub fn stream_rng(cfg: &SamplerConfig, stream: Stream, index: u64) -> Pcg64 {
    Pcg64::new(cfg.seed as u128, ((stream as u128) << 64) | index as u128)
}

fn draw_coeffs(rng: &mut impl RngCore, n: usize, bound: u32) -> Vec<i64> {
    let b = bound as i64;
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.random_range(-b..=b)).collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

/// Linear form with integer coefficients in `[-B, B]`, not all zero.
pub fn sample_linear_form(r: usize, cfg: &SamplerConfig, index: u64) -> LinearForm {
    sample_linear_form_in(Stream::Lefschetz, r, cfg, index)
}

pub fn sample_linear_form_in(stream: Stream, r: usize, cfg: &SamplerConfig, index: u64) -> LinearForm {
    let mut rng = stream_rng(cfg, stream, index);
    LinearForm::from_i64(&draw_coeffs(&mut rng, r, cfg.bound))
}

/// Form of degree `d` with integer coefficients in `[-B, B]` on every monomial, not all zero.
pub fn sample_form(r: usize, d: u32, cfg: &SamplerConfig, index: u64) -> GradedPoly {
    let mut rng = stream_rng(cfg, Stream::Form, index);
    let n = MonomialBasis::new(r, d).len();
    let coeffs = draw_coeffs(&mut rng, n, cfg.bound).into_iter().map(|c| Scalar::from_integer(c.into())).collect();
    GradedPoly::from_coeffs(r, d, coeffs).expect("length matches basis")
}

/// `n` pairwise independent linear forms in `r` variables with degrees in
/// `[min_degree, max_degree]`, drawn from the trial stream.
pub fn sample_power_ideal_gens(
    r: usize,
    n: usize,
    min_degree: u32,
    max_degree: u32,
    cfg: &SamplerConfig,
    index: u64,
) -> Vec<(LinearForm, u32)> {
    let mut rng = stream_rng(cfg, Stream::Trial, index);
    let mut gens: Vec<(LinearForm, u32)> = Vec::with_capacity(n);
    while gens.len() < n {
        let l = LinearForm::from_i64(&draw_coeffs(&mut rng, r, cfg.bound));
        if gens.iter().any(|(k, _)| k.is_proportional(&l)) {
            continue;
        }
        gens.push((l, rng.random_range(min_degree..=max_degree)));
    }
    gens
}

/// Random Artinian ideal of powers of pairwise independent linear forms, with the generator
/// count and every degree drawn uniformly from the given ranges. Draws whose bases fail to
/// span are discarded, so the result depends only on `(cfg.seed, index)`.
pub fn sample_power_ideal(
    r: usize,
    gens: RangeInclusive<usize>,
    degrees: RangeInclusive<u32>,
    cfg: &SamplerConfig,
    index: u64,
) -> Result<IdealSpec> {
    if *gens.start() < r || gens.is_empty() {
        return Err(Error::InvalidInput(format!("an Artinian ideal in {r} variables needs at least {r} generators")));
    }
    if *degrees.start() == 0 || degrees.is_empty() {
        return Err(Error::InvalidInput("generator degrees must be at least 1".into()));
    }
    let mut rng = stream_rng(cfg, Stream::Trial, index);
    loop {
        let n = rng.random_range(gens.clone());
        let mut picked: Vec<(LinearForm, u32)> = Vec::with_capacity(n);
        while picked.len() < n {
            let l = LinearForm::from_i64(&draw_coeffs(&mut rng, r, cfg.bound));
            if picked.iter().any(|(k, _)| k.is_proportional(&l)) {
                continue;
            }
            picked.push((l, rng.random_range(degrees.clone())));
        }
        let ideal = IdealSpec::powers(r, &picked)?;
        if ideal.base_forms_span() == Some(true) {
            return Ok(ideal);
        }
    }
}
