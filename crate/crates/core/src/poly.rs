//! Homogeneous polynomials over the rationals, stored densely over a graded-lex monomial basis.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{abs_cmp, clear_denominators, Scalar};

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

/// Number of monomials of degree `d` in `r` variables, C(d + r - 1, r - 1).
pub fn monomial_count(r: usize, d: u32) -> usize {
    if r == 0 {
        return usize::from(d == 0);
    }
    binomial(d as usize + r - 1, r - 1)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// The monomials of one degree, in graded-lexicographic order (`x^d` first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    num_vars: usize,
    degree: u32,
    monomials: Vec<Exponent>,
}

pub fn monomial_basis(r: usize, d: u32) -> MonomialBasis {
    MonomialBasis::new(r, d)
}

impl MonomialBasis {
    pub fn new(num_vars: usize, degree: u32) -> Self {
        let mut monomials = Vec::with_capacity(monomial_count(num_vars, degree));
        let mut cur = vec![0u32; num_vars];
        fill(&mut monomials, &mut cur, 0, degree);
        MonomialBasis { num_vars, degree, monomials }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Exponent] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &Exponent {
        &self.monomials[i]
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        if e.len() != self.num_vars || e.iter().sum::<u32>() != self.degree {
            return None;
        }
        Some(monomial_index(e))
    }
}

fn fill(out: &mut Vec<Exponent>, cur: &mut Exponent, var: usize, rem: u32) {
    let r = cur.len();
    if r == 0 {
        if rem == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if var == r - 1 {
        cur[var] = rem;
        out.push(cur.clone());
        return;
    }
    for e in (0..=rem).rev() {
        cur[var] = e;
        fill(out, cur, var + 1, rem - e);
    }
    cur[var] = 0;
}

/// Position of an exponent vector within the basis of its own degree.
pub fn monomial_index(e: &[u32]) -> usize {
    let r = e.len();
    let mut rem: u32 = e.iter().sum();
    let mut idx = 0;
    for (i, &ei) in e.iter().enumerate().take(r.saturating_sub(1)) {
        if rem > ei {
            idx += monomial_count(r - i, rem - ei - 1);
        }
        rem -= ei;
    }
    idx
}

/// A homogeneous polynomial: coefficient vector over `MonomialBasis(num_vars, degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    num_vars: usize,
    degree: u32,
    coeffs: Vec<Scalar>,
}

impl GradedPoly {
    pub fn zero(num_vars: usize, degree: u32) -> Self {
        GradedPoly { num_vars, degree, coeffs: vec![Scalar::zero(); monomial_count(num_vars, degree)] }
    }

    pub fn constant(num_vars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(num_vars, 0);
        p.coeffs[0] = c;
        p
    }

    pub fn monomial(e: &[u32]) -> Self {
        let mut p = Self::zero(e.len(), e.iter().sum());
        p.coeffs[monomial_index(e)] = Scalar::one();
        p
    }

    pub fn from_coeffs(num_vars: usize, degree: u32, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != monomial_count(num_vars, degree) {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients for degree {degree} in {num_vars} variables, got {}",
                monomial_count(num_vars, degree),
                coeffs.len()
            )));
        }
        Ok(GradedPoly { num_vars, degree, coeffs })
    }

    /// Builds a polynomial from `(coefficient, exponent)` terms; all terms must share one degree.
    pub fn from_terms(num_vars: usize, terms: &[(Scalar, Exponent)]) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidInput("polynomial has no terms".into()));
        };
        let degree: u32 = first.iter().sum();
        let mut p = Self::zero(num_vars, degree);
        for (c, e) in terms {
            if e.len() != num_vars {
                return Err(Error::VarCountMismatch { expected: num_vars, found: e.len() });
            }
            let d: u32 = e.iter().sum();
            if d != degree {
                return Err(Error::InvalidInput(format!(
                    "inhomogeneous polynomial: terms of degree {degree} and {d}"
                )));
            }
            let i = monomial_index(e);
            p.coeffs[i] = &p.coeffs[i] + c;
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        if e.len() != self.num_vars || e.iter().sum::<u32>() != self.degree {
            return Scalar::zero();
        }
        self.coeffs[monomial_index(e)].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> Vec<(Scalar, Exponent)> {
        let basis = MonomialBasis::new(self.num_vars, self.degree);
        self.coeffs
            .iter()
            .zip(basis.monomials)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, e)| (c.clone(), e))
            .collect()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        GradedPoly {
            num_vars: self.num_vars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &GradedPoly) -> Result<Self> {
        self.check_same_ring(other)?;
        if self.degree != other.degree {
            return Err(Error::InvalidInput("cannot add forms of different degrees".into()));
        }
        Ok(GradedPoly {
            num_vars: self.num_vars,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn mul(&self, other: &GradedPoly) -> Result<Self> {
        multiply(self, other)
    }

    /// Product with a single monomial.
    pub fn mul_monomial(&self, e: &[u32]) -> Self {
        let mut out = Self::zero(self.num_vars, self.degree + e.iter().sum::<u32>());
        for (c, m) in self.terms() {
            let prod: Exponent = m.iter().zip(e).map(|(a, b)| a + b).collect();
            out.coeffs[monomial_index(&prod)] = c;
        }
        out
    }

    /// Integer coefficient vector proportional to this one.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        clear_denominators(&self.coeffs)
    }

    fn check_same_ring(&self, other: &GradedPoly) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VarCountMismatch { expected: self.num_vars, found: other.num_vars });
        }
        Ok(())
    }

    /// Renders terms in basis order, e.g. `x^2 + 2*x*y + y^2`.
    pub fn render(&self, names: &[String]) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (c, e)) in terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { names[i].clone() } else { format!("{}^{}", names[i], p) })
                .collect();
            let mono = mono.join("*");
            let neg = c.is_negative();
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            match (k, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

/// Default variable names: `x, y, z, w` up to four variables, then `x1, x2, ...`.
pub fn variable_names(r: usize) -> Vec<String> {
    if r <= 4 {
        ["x", "y", "z", "w"][..r].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=r).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&variable_names(self.num_vars)))
    }
}

impl Serialize for GradedPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GradedPoly", 3)?;
        st.serialize_field("num_vars", &self.num_vars)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("text", &self.to_string())?;
        st.end()
    }
}

/// Product of two forms in the same ring.
pub fn multiply(f: &GradedPoly, g: &GradedPoly) -> Result<GradedPoly> {
    f.check_same_ring(g)?;
    let mut out = GradedPoly::zero(f.num_vars, f.degree + g.degree);
    let gt = g.terms();
    for (a, ea) in f.terms() {
        for (b, eb) in &gt {
            let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let i = monomial_index(&e);
            out.coeffs[i] = &out.coeffs[i] + &a * b;
        }
    }
    Ok(out)
}

/// A linear form `c_1 x_1 + ... + c_r x_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<Scalar>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        LinearForm { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        LinearForm { coeffs: coeffs.iter().map(|&c| Scalar::from_integer(c.into())).collect() }
    }

    /// The coordinate form `x_i`.
    pub fn variable(num_vars: usize, i: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); num_vars];
        coeffs[i] = Scalar::one();
        LinearForm { coeffs }
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_poly(&self) -> GradedPoly {
        GradedPoly { num_vars: self.num_vars(), degree: 1, coeffs: self.coeffs.clone() }
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn normalized(&self) -> LinearForm {
        let mut ints = clear_denominators(&self.coeffs);
        if ints.iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative) {
            for c in ints.iter_mut() {
                *c = -&*c;
            }
        }
        LinearForm { coeffs: ints.into_iter().map(Scalar::from_integer).collect() }
    }

    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        self.num_vars() == other.num_vars() && self.normalized() == other.normalized()
    }

    /// Index of the coefficient of largest magnitude (first one on ties).
    pub fn dominant_variable(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        let mut best = 0;
        for i in 1..self.coeffs.len() {
            if abs_cmp(&self.coeffs[i], &self.coeffs[best]).is_gt() {
                best = i;
            }
        }
        Ok(best)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

fn factorials(n: u32) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for i in 1..=n {
        let next = &f[i as usize - 1] * BigInt::from(i);
        f.push(next);
    }
    f
}

/// Expands `l^d` by the multinomial theorem.
pub fn expand_power(l: &LinearForm, d: u32) -> Result<GradedPoly> {
    if l.is_zero() {
        return Err(Error::ZeroForm);
    }
    let r = l.num_vars();
    let fact = factorials(d);
    let basis = MonomialBasis::new(r, d);
    let coeffs = basis
        .monomials()
        .iter()
        .map(|e| {
            let denom = e.iter().fold(BigInt::one(), |acc, &k| acc * &fact[k as usize]);
            let mut c = Scalar::from_integer(&fact[d as usize] / denom);
            for (ci, &k) in l.coeffs.iter().zip(e) {
                if k > 0 {
                    c *= num_traits::pow(ci.clone(), k as usize);
                }
            }
            c
        })
        .collect();
    Ok(GradedPoly { num_vars: r, degree: d, coeffs })
}

/// Substitutes `x_i -> images[i]` (linear forms in a common ring) into `f`.
pub fn substitute_linear(f: &GradedPoly, images: &[LinearForm]) -> Result<GradedPoly> {
    if images.len() != f.num_vars {
        return Err(Error::VarCountMismatch { expected: f.num_vars, found: images.len() });
    }
    let s = images.first().map_or(0, LinearForm::num_vars);
    if images.iter().any(|l| l.num_vars() != s) {
        return Err(Error::InvalidInput("substitution images live in different rings".into()));
    }
    // powers[i][k] = images[i]^k
    let mut powers: Vec<Vec<GradedPoly>> = Vec::with_capacity(images.len());
    for img in images {
        let mut p = vec![GradedPoly::constant(s, Scalar::one())];
        let lp = img.to_poly();
        for k in 1..=f.degree {
            let next = multiply(&p[k as usize - 1], &lp)?;
            p.push(next);
        }
        powers.push(p);
    }
    let mut out = GradedPoly::zero(s, f.degree);
    for (c, e) in f.terms() {
        let mut term = GradedPoly::constant(s, c);
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                term = multiply(&term, &powers[i][k as usize])?;
            }
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// The variable `restrict_mod_linear` eliminates, and the images of all variables in the
/// remaining `r - 1` coordinates.
pub fn restriction_map(l: &LinearForm) -> Result<(usize, Vec<LinearForm>)> {
    let k = l.dominant_variable()?;
    let r = l.num_vars();
    let ck = &l.coeffs[k];
    let images = (0..r)
        .map(|i| {
            if i == k {
                let coeffs = (0..r).filter(|&j| j != k).map(|j| -(&l.coeffs[j] / ck)).collect();
                LinearForm::new(coeffs)
            } else {
                let pos = if i < k { i } else { i - 1 };
                LinearForm::variable(r - 1, pos)
            }
        })
        .collect();
    Ok((k, images))
}

/// Reduces `f` modulo `l` by solving `l = 0` for its dominant variable.
pub fn restrict_mod_linear(f: &GradedPoly, l: &LinearForm) -> Result<GradedPoly> {
    if l.num_vars() != f.num_vars {
        return Err(Error::VarCountMismatch { expected: f.num_vars, found: l.num_vars() });
    }
    if f.num_vars < 2 {
        return Err(Error::InvalidInput("restriction needs at least two variables".into()));
    }
    let (_, images) = restriction_map(l)?;
    substitute_linear(f, &images)
}
