//! Working coordinates for graded pieces of `S/I`.
//!
//! When `r` independent generators are powers of linear forms `l_j^{e_j}`, the change of
//! coordinates `u_j = l_j` turns them into `u_j^{e_j}`. Then every graded piece of `S/I` is a
//! quotient of the span of the "box" monomials (`u^a` with `a_j < e_j`) by the remaining
//! generators reduced modulo the box. The algebra is isomorphic, so dimensions and
//! multiplication ranks agree with the original coordinates, and the matrices shrink from
//! `dim S_m` rows to at most the box dimension.
//!
//! Without such generators the presentation is the plain Macaulay matrix in the original
//! coordinates.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::linalg::{make_primitive, ExactMatrix, Scalar};
use crate::poly::{expand_power, monomial_count, substitute_linear, Exponent, GradedPoly, LinearForm, MonomialBasis};
use crate::quotient::ideal::{Generator, IdealSpec};

/// A form in working coordinates: sparse integer terms, already reduced modulo the box.
#[derive(Clone, Debug)]
pub struct SparseForm {
    pub degree: u32,
    pub terms: Vec<(Exponent, BigInt)>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    num_vars: usize,
    /// Images of the original variables in working coordinates; `None` means identity.
    images: Option<Vec<LinearForm>>,
    /// Exclusive exponent bounds of the box; `None` means no box.
    box_bounds: Option<Vec<u32>>,
    gens: Vec<SparseForm>,
}

/// Box monomials of one degree together with a lookup table.
#[derive(Clone, Debug)]
pub struct BoxBasis {
    pub monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl BoxBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, e: &Exponent) -> Option<usize> {
        self.index.get(e).copied()
    }
}

impl Presentation {
    pub fn new(ideal: &IdealSpec) -> Result<Self> {
        let r = ideal.num_vars();
        let mut candidates: Vec<(usize, LinearForm, u32)> = ideal
            .generators()
            .iter()
            .enumerate()
            .filter_map(|(i, g)| g.as_pure_power().map(|(l, e)| (i, l, e)))
            .collect();
        candidates.sort_by_key(|(_, _, e)| *e);

        let mut chosen: Vec<(usize, LinearForm, u32)> = Vec::new();
        for cand in candidates {
            if chosen.len() == r {
                break;
            }
            let mut rows: Vec<Vec<Scalar>> = chosen.iter().map(|(_, l, _)| l.coeffs().to_vec()).collect();
            rows.push(cand.1.coeffs().to_vec());
            if ExactMatrix::from_rows(rows)?.rank() == chosen.len() + 1 {
                chosen.push(cand);
            }
        }

        if chosen.len() < r {
            let gens = ideal.generators().iter().map(|g| sparse(&g.to_poly(), None)).collect();
            return Ok(Presentation { num_vars: r, images: None, box_bounds: None, gens });
        }

        let basis_rows: Vec<Vec<Scalar>> = chosen.iter().map(|(_, l, _)| l.coeffs().to_vec()).collect();
        let inverse = invert(&ExactMatrix::from_rows(basis_rows)?);
        let is_identity = inverse == ExactMatrix::identity(r);
        let images: Vec<LinearForm> = (0..r).map(|i| LinearForm::new(inverse.row(i).to_vec())).collect();
        let bounds: Vec<u32> = chosen.iter().map(|(_, _, e)| *e).collect();
        let chosen_idx: Vec<usize> = chosen.iter().map(|(i, _, _)| *i).collect();

        let mut gens = Vec::new();
        for (i, g) in ideal.generators().iter().enumerate() {
            if chosen_idx.contains(&i) {
                continue;
            }
            let f = match g {
                Generator::Power { base, exponent } => {
                    expand_power(&transform_linear(base, &inverse), *exponent)?
                }
                Generator::Poly { form } if is_identity => form.clone(),
                Generator::Poly { form } => substitute_linear(form, &images)?,
            };
            let s = sparse(&f, Some(&bounds));
            if !s.terms.is_empty() {
                gens.push(s);
            }
        }
        Ok(Presentation {
            num_vars: r,
            images: (!is_identity).then_some(images),
            box_bounds: Some(bounds),
            gens,
        })
    }

    pub fn has_box(&self) -> bool {
        self.box_bounds.is_some()
    }

    /// Largest degree with a nonzero box monomial, when there is a box.
    pub fn box_top_degree(&self) -> Option<u32> {
        self.box_bounds.as_ref().map(|b| b.iter().map(|e| e - 1).sum())
    }

    pub fn basis(&self, m: u32) -> BoxBasis {
        let all = MonomialBasis::new(self.num_vars, m);
        let monomials: Vec<Exponent> = match &self.box_bounds {
            Some(b) => all.monomials().iter().filter(|e| in_box(e, b)).cloned().collect(),
            None => all.monomials().to_vec(),
        };
        let index = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        BoxBasis { monomials, index }
    }

    /// Spanning vectors of the ideal's degree-`m` piece in box coordinates.
    pub fn ideal_vectors(&self, m: u32, target: &BoxBasis) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        for g in &self.gens {
            if g.degree > m {
                continue;
            }
            let source = self.basis(m - g.degree);
            out.extend(self.products(g, &source, target));
        }
        out
    }

    /// Vectors `f * mu` for every source monomial `mu`, reduced modulo the box.
    pub fn products(&self, f: &SparseForm, source: &BoxBasis, target: &BoxBasis) -> Vec<Vec<BigInt>> {
        source
            .monomials
            .iter()
            .filter_map(|mu| {
                let mut v = vec![BigInt::zero(); target.len()];
                let mut any = false;
                for (e, c) in &f.terms {
                    let prod: Exponent = e.iter().zip(mu).map(|(a, b)| a + b).collect();
                    if let Some(k) = target.index_of(&prod) {
                        v[k] += c;
                        any = true;
                    }
                }
                any.then_some(v)
            })
            .collect()
    }

    /// Maps a form in the original coordinates to working coordinates.
    pub fn transform(&self, f: &GradedPoly) -> Result<SparseForm> {
        let g = match &self.images {
            Some(images) => substitute_linear(f, images)?,
            None => f.clone(),
        };
        Ok(sparse(&g, self.box_bounds.as_deref()))
    }
}

fn in_box(e: &[u32], bounds: &[u32]) -> bool {
    e.iter().zip(bounds).all(|(a, b)| a < b)
}

/// Coefficients of `l` after substituting `x = inverse * u`, scaled to a primitive integer form.
fn transform_linear(l: &LinearForm, inverse: &ExactMatrix) -> LinearForm {
    let r = l.num_vars();
    let coeffs = (0..r)
        .map(|j| (0..r).fold(Scalar::zero(), |acc, i| acc + &l.coeffs()[i] * inverse.get(i, j)))
        .collect();
    LinearForm::new(coeffs).normalized()
}

fn sparse(f: &GradedPoly, bounds: Option<&[u32]>) -> SparseForm {
    let ints = make_primitive(f.integer_coeffs());
    let basis = MonomialBasis::new(f.num_vars(), f.degree());
    debug_assert_eq!(ints.len(), monomial_count(f.num_vars(), f.degree()));
    let terms = basis
        .monomials()
        .iter()
        .zip(ints)
        .filter(|(e, c)| !c.is_zero() && bounds.is_none_or(|b| in_box(e, b)))
        .map(|(e, c)| (e.clone(), c))
        .collect();
    SparseForm { degree: f.degree(), terms }
}

fn invert(m: &ExactMatrix) -> ExactMatrix {
    let n = m.rows();
    let mut aug = ExactMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, Scalar::from_integer(1.into()));
    }
    let red = aug.rref().form;
    let mut inv = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, red.get(i, n + j).clone());
        }
    }
    inv
}
