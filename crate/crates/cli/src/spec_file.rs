//! TOML ideal-spec files.
//!
//! ```toml
//! num_vars = 3
//!
//! [[generator]]
//! kind = "power"
//! form = [1, 0, "-1/2"]
//! exponent = 5
//!
//! [[generator]]
//! kind = "poly"
//! terms = [{ coeff = 1, exponents = [2, 1, 1] }]
//!
//! [sampler]          # optional
//! seed = 7
//! ```
//!
//! Coefficients are integers or strings holding an exact rational such as `"-3/4"`;
//! decimals are rejected.

use lefschetz_core::{GradedPoly, Generator, IdealSpec, LinearForm, SamplerConfig, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn to_scalar(&self, at: &str) -> Result<Scalar, CliError> {
        match self {
            Coeff::Int(n) => Ok(Scalar::from_integer((*n).into())),
            Coeff::Text(s) => s.trim().parse::<Scalar>().map_err(|_| {
                CliError::Parse(format!("{at}: `{s}` is not an exact integer or fraction p/q"))
            }),
        }
    }

    fn from_scalar(c: &Scalar) -> Coeff {
        match c.is_integer().then(|| i64::try_from(c.to_integer())).and_then(Result::ok) {
            Some(n) => Coeff::Int(n),
            None => Coeff::Text(c.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub coeff: Coeff,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GeneratorEntry {
    Power { form: Vec<Coeff>, exponent: u32 },
    Poly { terms: Vec<TermEntry> },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerEntry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attempts: Option<u32>,
}

impl SamplerEntry {
    /// Fills unset fields from `base`.
    pub fn apply(&self, base: SamplerConfig) -> SamplerConfig {
        SamplerConfig {
            seed: self.seed.unwrap_or(base.seed),
            bound: self.bound.unwrap_or(base.bound),
            attempts: self.attempts.unwrap_or(base.attempts),
        }
    }
}

/// On-disk form of an ideal spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpecFile {
    pub num_vars: usize,
    #[serde(rename = "generator")]
    pub generators: Vec<GeneratorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<SamplerEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedSpec {
    pub ideal: IdealSpec,
    pub sampler: Option<SamplerEntry>,
    pub warnings: Vec<String>,
}

pub fn parse_ideal_spec(text: &str) -> Result<ParsedSpec, CliError> {
    let file: IdealSpecFile = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    file.validate()
}

impl IdealSpecFile {
    /// Converts to a validated ideal, collapsing proportional power bases.
    pub fn validate(&self) -> Result<ParsedSpec, CliError> {
        let r = self.num_vars;
        if r == 0 {
            return Err(CliError::Parse("num_vars: must be at least 1".into()));
        }
        if self.generators.is_empty() {
            return Err(CliError::Parse("generator: at least one entry is required".into()));
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            gens.push(entry_to_generator(r, i, g)?);
        }
        let ideal = IdealSpec::new(r, gens).map_err(|e| CliError::Parse(e.to_string()))?;
        let (ideal, warnings) = ideal.collapse_proportional_powers();
        Ok(ParsedSpec { ideal, sampler: self.sampler, warnings })
    }

    pub fn from_ideal(ideal: &IdealSpec, sampler: Option<SamplerEntry>) -> Self {
        let generators = ideal
            .generators()
            .iter()
            .map(|g| match g {
                Generator::Power { base, exponent } => GeneratorEntry::Power {
                    form: base.coeffs().iter().map(Coeff::from_scalar).collect(),
                    exponent: *exponent,
                },
                Generator::Poly { form } => GeneratorEntry::Poly {
                    terms: form
                        .terms()
                        .into_iter()
                        .map(|(c, e)| TermEntry { coeff: Coeff::from_scalar(&c), exponents: e })
                        .collect(),
                },
            })
            .collect();
        IdealSpecFile { num_vars: ideal.num_vars(), generators, sampler }
    }
}

fn entry_to_generator(r: usize, i: usize, g: &GeneratorEntry) -> Result<Generator, CliError> {
    match g {
        GeneratorEntry::Power { form, exponent } => {
            let at = format!("generator {} (power)", i + 1);
            if form.len() != r {
                return Err(CliError::Parse(format!("{at}: form has {} coefficients, expected {r}", form.len())));
            }
            if *exponent == 0 {
                return Err(CliError::Parse(format!("{at}: exponent must be at least 1")));
            }
            let coeffs = form.iter().map(|c| c.to_scalar(&at)).collect::<Result<Vec<_>, _>>()?;
            let base = LinearForm::new(coeffs);
            if base.is_zero() {
                return Err(CliError::Parse(format!("{at}: form is identically zero")));
            }
            Ok(Generator::power(base, *exponent))
        }
        GeneratorEntry::Poly { terms } => {
            let at = format!("generator {} (poly)", i + 1);
            let mut parsed = Vec::with_capacity(terms.len());
            for (j, t) in terms.iter().enumerate() {
                if t.exponents.len() != r {
                    return Err(CliError::Parse(format!(
                        "{at}, term {}: exponent vector has {} entries, expected {r}",
                        j + 1,
                        t.exponents.len()
                    )));
                }
                parsed.push((t.coeff.to_scalar(&at)?, t.exponents.clone()));
            }
            let form = GradedPoly::from_terms(r, &parsed).map_err(|e| CliError::Parse(format!("{at}: {e}")))?;
            if form.is_zero() {
                return Err(CliError::Parse(format!("{at}: polynomial is zero")));
            }
            Ok(Generator::poly(form))
        }
    }
}

pub fn render_ideal_spec(ideal: &IdealSpec, sampler: Option<SamplerEntry>) -> String {
    toml::to_string(&IdealSpecFile::from_ideal(ideal, sampler)).expect("spec files always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_and_poly_entries() {
        let text = r#"
            num_vars = 3
            [[generator]]
            kind = "power"
            form = [1, 0, 0]
            exponent = 5
            [[generator]]
            kind = "poly"
            terms = [{ coeff = 1, exponents = [2, 1, 1] }]
        "#;
        let p = parse_ideal_spec(text).unwrap();
        assert_eq!(p.ideal.degrees(), vec![5, 4]);
        assert_eq!(p.ideal.generator_polys()[0], GradedPoly::monomial(&[5, 0, 0]));
        assert!(p.warnings.is_empty());
        assert_eq!(p.sampler, None);
    }

    #[test]
    fn rational_coefficients() {
        let text = "num_vars = 2\n[[generator]]\nkind = \"power\"\nform = [\"-1/2\", 3]\nexponent = 2\n";
        let p = parse_ideal_spec(text).unwrap();
        let expect = LinearForm::new(vec!["-1/2".parse().unwrap(), Scalar::from_integer(3.into())]);
        assert_eq!(p.ideal.generators()[0], Generator::power(expect, 2));
        assert!(parse_ideal_spec(&text.replace("\"-1/2\"", "\"0.5\"")).is_err());
        assert!(parse_ideal_spec(&text.replace("\"-1/2\"", "0.5")).is_err());
    }

    #[test]
    fn rejections() {
        let mixed = "num_vars = 2\n[[generator]]\nkind = \"poly\"\nterms = [{ coeff = 1, exponents = [2, 0] }, { coeff = 1, exponents = [0, 1] }]\n";
        let err = parse_ideal_spec(mixed).unwrap_err().to_string();
        assert!(err.contains("inhomogeneous"), "{err}");
        let zero = "num_vars = 2\n[[generator]]\nkind = \"power\"\nform = [0, 0]\nexponent = 2\n";
        assert!(parse_ideal_spec(zero).unwrap_err().to_string().contains("zero"));
        let unknown = "num_vars = 2\ncolour = 1\n[[generator]]\nkind = \"power\"\nform = [1, 0]\nexponent = 2\n";
        assert!(parse_ideal_spec(unknown).is_err());
        let short = "num_vars = 3\n[[generator]]\nkind = \"power\"\nform = [1, 0]\nexponent = 2\n";
        assert!(parse_ideal_spec(short).unwrap_err().to_string().contains("generator 1"));
        let syntax = "num_vars = \n";
        assert!(parse_ideal_spec(syntax).unwrap_err().to_string().contains("line 1"));
    }

    #[test]
    fn proportional_bases_collapse_with_warning() {
        let text = "num_vars = 2\n[[generator]]\nkind = \"power\"\nform = [1, 1]\nexponent = 4\n\
                    [[generator]]\nkind = \"power\"\nform = [0, 1]\nexponent = 4\n\
                    [[generator]]\nkind = \"power\"\nform = [-3, -3]\nexponent = 2\n";
        let p = parse_ideal_spec(text).unwrap();
        assert_eq!(p.ideal.degrees(), vec![2, 4]);
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn round_trip() {
        let text = "num_vars = 3\n[[generator]]\nkind = \"power\"\nform = [\"2/3\", -1, 99999999999999999999]\nexponent = 3\n\
                    [[generator]]\nkind = \"poly\"\nterms = [{ coeff = \"-5/2\", exponents = [0, 1, 1] }, { coeff = 4, exponents = [2, 0, 0] }]\n\
                    [sampler]\nseed = 11\n";
        // integers beyond i64 must be written as strings
        assert!(parse_ideal_spec(text).is_err());
        let text = text.replace("99999999999999999999", "\"99999999999999999999\"");
        let p = parse_ideal_spec(&text).unwrap();
        let rendered = render_ideal_spec(&p.ideal, p.sampler);
        let again = parse_ideal_spec(&rendered).unwrap();
        assert_eq!(again, p);
    }
}
