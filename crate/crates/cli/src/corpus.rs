//! Reference corpus: ideals with known Hilbert functions and Lefschetz behavior.

use std::fs;
use std::path::Path;

use lefschetz_core::lefschetz::sampler::sample_form;
use lefschetz_core::lefschetz::{maximal_rank_check, slp_check, wlp_check};
use lefschetz_core::quotient::hilbert_function;
use lefschetz_core::{IdealSpec, SamplerConfig};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::spec_file::IdealSpecFile;

/// Built-in entries as `(file name, contents)`.
pub const BUILTIN: &[(&str, &str)] = &[
    ("five_monomials.toml", include_str!("../corpus/five_monomials.toml")),
    ("five_cubes_four_vars.toml", include_str!("../corpus/five_cubes_four_vars.toml")),
    ("complete_intersection.toml", include_str!("../corpus/complete_intersection.toml")),
    ("four_cubes.toml", include_str!("../corpus/four_cubes.toml")),
];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    pub hilbert: Option<Vec<usize>>,
    pub wlp: Option<bool>,
    /// Degrees `m` where `A_m -> A_{m+1}` must fail for every sampled form.
    pub wlp_fail_degrees: Option<Vec<u32>>,
    pub wlp_fail_dims: Option<[usize; 2]>,
    pub slp: Option<bool>,
    /// `[k, m]` pairs: the `k`-th power fails from degree `m`.
    pub slp_fail: Option<Vec<[u32; 2]>>,
    /// Degree of a generic form whose multiplication maps are checked.
    pub maximal_rank_degree: Option<u32>,
    pub maximal_rank: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub about: String,
    pub ideal: IdealSpecFile,
    pub expect: Expectations,
}

impl CorpusEntry {
    pub fn parse(source: &str, text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Parse(format!("{source}: {e}")))
    }
}

pub fn builtin_corpus() -> Result<Vec<CorpusEntry>, CliError> {
    BUILTIN.iter().map(|(name, text)| CorpusEntry::parse(name, text)).collect()
}

/// Every `*.toml` file in `dir`, in file-name order.
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<CorpusEntry>, CliError> {
    let listing = fs::read_dir(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            CorpusEntry::parse(&p.display().to_string(), &text)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyItem {
    pub entry: String,
    pub check: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

fn item<T: PartialEq + std::fmt::Debug>(entry: &str, check: &str, expected: &T, actual: Result<T, String>) -> VerifyItem {
    let (passed, actual) = match actual {
        Ok(a) => (&a == expected, format!("{a:?}")),
        Err(e) => (false, format!("error: {e}")),
    };
    VerifyItem { entry: entry.into(), check: check.into(), passed, expected: format!("{expected:?}"), actual }
}

/// Checks every expectation of every entry; computation errors become failed items.
pub fn verify(entries: &[CorpusEntry], cfg: &SamplerConfig) -> Vec<VerifyItem> {
    let mut items = Vec::new();
    for entry in entries {
        let ideal = match entry.ideal.validate() {
            Ok(p) => p.ideal,
            Err(e) => {
                items.push(VerifyItem {
                    entry: entry.name.clone(),
                    check: "ideal".into(),
                    passed: false,
                    expected: "valid ideal".into(),
                    actual: e.to_string(),
                });
                continue;
            }
        };
        verify_entry(&entry.name, &ideal, &entry.expect, cfg, &mut items);
    }
    items
}

fn verify_entry(name: &str, ideal: &IdealSpec, ex: &Expectations, cfg: &SamplerConfig, items: &mut Vec<VerifyItem>) {
    let err = |e: lefschetz_core::Error| e.to_string();
    if let Some(h) = &ex.hilbert {
        items.push(item(name, "hilbert function", h, hilbert_function(ideal).map(|hf| hf.dims).map_err(err)));
    }
    if ex.wlp.is_some() || ex.wlp_fail_degrees.is_some() || ex.wlp_fail_dims.is_some() {
        let rep = wlp_check(ideal, cfg).map_err(err);
        if let Some(w) = ex.wlp {
            items.push(item(name, "wlp", &w, rep.as_ref().map(|r| r.overall).map_err(Clone::clone)));
        }
        if let Some(f) = &ex.wlp_fail_degrees {
            let got = rep.as_ref().map(|r| r.certified_failures.clone()).map_err(Clone::clone);
            items.push(item(name, "certified wlp failure degrees", f, got));
        }
        if let Some(d) = &ex.wlp_fail_dims {
            let got = rep.as_ref().map_err(Clone::clone).and_then(|r| {
                let m = *r.certified_failures.first().ok_or("no certified failure")?;
                let row = &r.rows[m as usize];
                Ok([row.dim_source, row.dim_target])
            });
            items.push(item(name, "dimensions at the failure", d, got));
        }
    }
    if ex.slp.is_some() || ex.slp_fail.is_some() {
        let rep = slp_check(ideal, cfg).map_err(err);
        if let Some(s) = ex.slp {
            items.push(item(name, "slp (experiment)", &s, rep.as_ref().map(|r| r.overall).map_err(Clone::clone)));
        }
        if let Some(f) = &ex.slp_fail {
            let got = rep.as_ref().map(|r| r.failures().into_iter().map(|(k, m)| [k, m]).collect()).map_err(Clone::clone);
            items.push(item(name, "slp failures [power, degree]", f, got));
        }
    }
    if let (Some(d), Some(expected)) = (ex.maximal_rank_degree, ex.maximal_rank) {
        let g = sample_form(ideal.num_vars(), d, cfg, 0);
        let got = maximal_rank_check(ideal, &g).map(|r| r.overall).map_err(err);
        items.push(item(name, &format!("generic degree-{d} form has maximal rank (experiment)"), &expected, got));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_corpus_parses_and_round_trips() {
        for entry in builtin_corpus().unwrap() {
            let parsed = entry.ideal.validate().unwrap();
            assert!(parsed.warnings.is_empty(), "{}", entry.name);
            let rendered = crate::spec_file::render_ideal_spec(&parsed.ideal, parsed.sampler);
            assert_eq!(crate::spec_file::parse_ideal_spec(&rendered).unwrap(), parsed, "{}", entry.name);
        }
    }

    #[test]
    fn builtin_corpus_passes() {
        let items = verify(&builtin_corpus().unwrap(), &SamplerConfig::default());
        let failed: Vec<_> = items.iter().filter(|i| !i.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(items.len() >= 10);
    }
}
