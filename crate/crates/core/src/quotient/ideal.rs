use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Scalar};
use crate::poly::{expand_power, GradedPoly, LinearForm};

/// One generator of a homogeneous ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Generator {
    /// `base^exponent` for a nonzero linear form.
    Power { base: LinearForm, exponent: u32 },
    /// An arbitrary nonzero form.
    Poly { form: GradedPoly },
}

impl Generator {
    pub fn power(base: LinearForm, exponent: u32) -> Self {
        Generator::Power { base, exponent }
    }

    pub fn poly(form: GradedPoly) -> Self {
        Generator::Poly { form }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Generator::Power { exponent, .. } => *exponent,
            Generator::Poly { form } => form.degree(),
        }
    }

    pub fn num_vars(&self) -> usize {
        match self {
            Generator::Power { base, .. } => base.num_vars(),
            Generator::Poly { form } => form.num_vars(),
        }
    }

    pub fn to_poly(&self) -> GradedPoly {
        match self {
            Generator::Power { base, exponent } => {
                expand_power(base, *exponent).expect("power bases are validated nonzero")
            }
            Generator::Poly { form } => form.clone(),
        }
    }

    /// `(base, exponent)` when the generator is visibly a power of a linear form: either a
    /// `Power` entry or a single-term pure power `c * x_j^e`.
    pub fn as_pure_power(&self) -> Option<(LinearForm, u32)> {
        match self {
            Generator::Power { base, exponent } => Some((base.clone(), *exponent)),
            Generator::Poly { form } => {
                let terms = form.terms();
                let [(_, e)] = terms.as_slice() else { return None };
                let support: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
                match support.as_slice() {
                    [j] => Some((LinearForm::variable(form.num_vars(), *j), e[*j])),
                    _ => None,
                }
            }
        }
    }
}

/// Generator list of a homogeneous ideal in `num_vars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealSpec {
    num_vars: usize,
    generators: Vec<Generator>,
}

impl IdealSpec {
    pub fn new(num_vars: usize, generators: Vec<Generator>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::InvalidInput("ideal needs at least one variable".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidInput("ideal needs at least one generator".into()));
        }
        for g in &generators {
            if g.num_vars() != num_vars {
                return Err(Error::VarCountMismatch { expected: num_vars, found: g.num_vars() });
            }
            if g.degree() == 0 {
                return Err(Error::InvalidInput("generator degrees must be at least 1".into()));
            }
            match g {
                Generator::Power { base, .. } if base.is_zero() => return Err(Error::ZeroForm),
                Generator::Poly { form } if form.is_zero() => {
                    return Err(Error::InvalidInput("zero polynomial generator".into()))
                }
                _ => {}
            }
        }
        Ok(IdealSpec { num_vars, generators })
    }

    /// Ideal generated by powers of linear forms.
    pub fn powers(num_vars: usize, gens: &[(LinearForm, u32)]) -> Result<Self> {
        Self::new(num_vars, gens.iter().map(|(l, d)| Generator::power(l.clone(), *d)).collect())
    }

    /// Ideal generated by arbitrary forms.
    pub fn polys(num_vars: usize, forms: Vec<GradedPoly>) -> Result<Self> {
        Self::new(num_vars, forms.into_iter().map(Generator::poly).collect())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(Generator::degree).collect()
    }

    pub fn generator_polys(&self) -> Vec<GradedPoly> {
        self.generators.iter().map(Generator::to_poly).collect()
    }

    pub fn is_power_ideal(&self) -> bool {
        self.power_generators().is_some()
    }

    /// `(base, exponent)` pairs when every generator is a power of a linear form.
    pub fn power_generators(&self) -> Option<Vec<(LinearForm, u32)>> {
        self.generators.iter().map(Generator::as_pure_power).collect()
    }

    /// Whether the base forms of a power ideal span the space of linear forms, which is exactly
    /// when the quotient is Artinian. `None` for non-power ideals.
    pub fn base_forms_span(&self) -> Option<bool> {
        let gens = self.power_generators()?;
        let rows: Vec<Vec<Scalar>> = gens.iter().map(|(l, _)| l.coeffs().to_vec()).collect();
        let m = ExactMatrix::from_rows(rows).ok()?;
        Some(m.rank() == self.num_vars)
    }

    /// Merges power generators with proportional bases, keeping the smallest exponent. Returns
    /// the cleaned ideal and a message for every dropped generator.
    pub fn collapse_proportional_powers(&self) -> (IdealSpec, Vec<String>) {
        let mut kept: Vec<Generator> = Vec::new();
        let mut warnings = Vec::new();
        for g in &self.generators {
            let Generator::Power { base, exponent } = g else {
                kept.push(g.clone());
                continue;
            };
            let dup = kept.iter_mut().find_map(|k| match k {
                Generator::Power { base: b, exponent: e } if b.is_proportional(base) => Some(e),
                _ => None,
            });
            match dup {
                Some(e) => {
                    warnings.push(format!(
                        "power of {base} duplicates a proportional base; keeping exponent {}",
                        (*e).min(*exponent)
                    ));
                    *e = (*e).min(*exponent);
                }
                None => kept.push(g.clone()),
            }
        }
        (IdealSpec { num_vars: self.num_vars, generators: kept }, warnings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar;

    #[test]
    fn validation() {
        assert!(IdealSpec::new(3, vec![]).is_err());
        assert_eq!(
            IdealSpec::powers(3, &[(LinearForm::from_i64(&[0, 0, 0]), 2)]),
            Err(Error::ZeroForm)
        );
        assert!(IdealSpec::powers(3, &[(LinearForm::from_i64(&[1, 0]), 2)]).is_err());
        assert!(IdealSpec::powers(2, &[(LinearForm::from_i64(&[1, 0]), 0)]).is_err());
    }

    #[test]
    fn pure_power_detection() {
        let g = Generator::poly(GradedPoly::from_terms(3, &[(scalar(4), vec![0, 5, 0])]).unwrap());
        assert_eq!(g.as_pure_power(), Some((LinearForm::variable(3, 1), 5)));
        let g = Generator::poly(GradedPoly::monomial(&[2, 1, 1]));
        assert_eq!(g.as_pure_power(), None);
    }

    #[test]
    fn collapse_keeps_smallest_exponent() {
        let i = IdealSpec::powers(
            2,
            &[
                (LinearForm::from_i64(&[1, 1]), 5),
                (LinearForm::from_i64(&[0, 1]), 2),
                (LinearForm::from_i64(&[-2, -2]), 3),
            ],
        )
        .unwrap();
        let (c, w) = i.collapse_proportional_powers();
        assert_eq!(c.degrees(), vec![3, 2]);
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn span_check() {
        let i = IdealSpec::powers(
            3,
            &[(LinearForm::from_i64(&[1, 0, 0]), 2), (LinearForm::from_i64(&[0, 1, 0]), 2)],
        )
        .unwrap();
        assert_eq!(i.base_forms_span(), Some(false));
    }
}
