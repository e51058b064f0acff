//! Graded pieces of an ideal and of the Artinian quotient `A = S/I`.
//!
//! The free functions ([`ideal_piece_matrix`], [`quotient_basis`], [`multiplication_matrix`])
//! work in the original coordinates with full Macaulay matrices. [`GradedQuotient`] is the
//! engine behind Hilbert functions and Lefschetz checks; it uses a smaller isomorphic
//! presentation when one exists (see [`presentation`]) and caches ranks per degree.

pub mod ideal;
pub mod presentation;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{integer_rank, ExactMatrix, Scalar};
use crate::poly::{monomial_count, Exponent, GradedPoly, MonomialBasis};
use ideal::IdealSpec;
use presentation::{BoxBasis, Presentation, SparseForm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    /// `dim A_m` for `m = 0..=socle_degree`.
    pub dims: Vec<usize>,
    pub socle_degree: u32,
}

impl HilbertFunction {
    /// `dim A_m`, zero past the socle degree.
    pub fn dim(&self, m: u32) -> usize {
        self.dims.get(m as usize).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Monomials of degree `m` whose residues form a basis of `A_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientBasis {
    pub degree: u32,
    pub monomials: Vec<Exponent>,
}

/// Columns are `g * mu` for every generator `g` of degree at most `m` and every monomial `mu`
/// of degree `m - deg g`, written over `MonomialBasis(r, m)`.
pub fn ideal_piece_matrix(ideal: &IdealSpec, m: u32) -> ExactMatrix {
    let r = ideal.num_vars();
    let rows = monomial_count(r, m);
    let mut columns = Vec::new();
    for g in ideal.generator_polys() {
        if g.degree() > m {
            continue;
        }
        for mu in MonomialBasis::new(r, m - g.degree()).monomials() {
            columns.push(g.mul_monomial(mu).coeffs().to_vec());
        }
    }
    ExactMatrix::from_columns(rows, &columns).expect("columns have basis length")
}

/// Hilbert function of `S/I`, computed degree by degree until it vanishes.
pub fn hilbert_function(ideal: &IdealSpec) -> Result<HilbertFunction> {
    GradedQuotient::new(ideal.clone())?.hilbert_function()
}

/// Reduced echelon data for `I_m` in the original coordinates.
struct DirectPiece {
    basis: MonomialBasis,
    rref: ExactMatrix,
    pivots: Vec<usize>,
    standard: Vec<usize>,
}

fn direct_piece(ideal: &IdealSpec, m: u32) -> DirectPiece {
    let basis = MonomialBasis::new(ideal.num_vars(), m);
    let ech = ideal_piece_matrix(ideal, m).transpose().rref();
    let mut is_pivot = vec![false; basis.len()];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let standard = (0..basis.len()).filter(|&i| !is_pivot[i]).collect();
    DirectPiece { basis, rref: ech.form, pivots: ech.pivots, standard }
}

impl DirectPiece {
    /// Coordinates of the residue of `v` (over the monomial basis) in the standard monomials.
    fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (k, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (j, vj) in v.iter_mut().enumerate() {
                let rj = self.rref.get(k, j);
                if !rj.is_zero() {
                    *vj = &*vj - &f * rj;
                }
            }
        }
        self.standard.iter().map(|&i| v[i].clone()).collect()
    }
}

/// Standard monomials of degree `m`: the non-pivot columns of the echelonized `I_m`.
pub fn quotient_basis(ideal: &IdealSpec, m: u32) -> QuotientBasis {
    let piece = direct_piece(ideal, m);
    let monomials = piece.standard.iter().map(|&i| piece.basis.get(i).clone()).collect();
    QuotientBasis { degree: m, monomials }
}

/// Matrix of `A_m -> A_{m+e}`, multiplication by `g`, in [`quotient_basis`] coordinates.
pub fn multiplication_matrix(ideal: &IdealSpec, g: &GradedPoly, m: u32) -> Result<ExactMatrix> {
    if g.num_vars() != ideal.num_vars() {
        return Err(Error::VarCountMismatch { expected: ideal.num_vars(), found: g.num_vars() });
    }
    let source = direct_piece(ideal, m);
    let target = direct_piece(ideal, m + g.degree());
    let columns: Vec<Vec<Scalar>> = source
        .standard
        .iter()
        .map(|&i| target.reduce(g.mul_monomial(source.basis.get(i)).coeffs().to_vec()))
        .collect();
    ExactMatrix::from_columns(target.standard.len(), &columns)
}

/// Whether `f` lies in the ideal generated by `gens` (all in one ring).
pub fn ideal_contains(gens: &[GradedPoly], f: &GradedPoly) -> bool {
    let d = f.degree();
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for g in gens.iter().filter(|g| g.degree() <= d) {
        for mu in MonomialBasis::new(f.num_vars(), d - g.degree()).monomials() {
            columns.push(g.mul_monomial(mu).integer_coeffs());
        }
    }
    // rank of a matrix equals rank of its transpose, so columns can be fed as rows
    let base = integer_rank(columns.clone());
    columns.push(f.integer_coeffs());
    integer_rank(columns) == base
}

struct Piece {
    basis: BoxBasis,
    ideal_vectors: Vec<Vec<BigInt>>,
    rank: usize,
}

/// A multiplier already moved into working coordinates.
#[derive(Clone, Debug)]
pub struct Multiplier {
    form: SparseForm,
    original: GradedPoly,
}

impl Multiplier {
    pub fn degree(&self) -> u32 {
        self.form.degree
    }

    pub fn form(&self) -> &GradedPoly {
        &self.original
    }
}

/// The quotient `S/I` with per-degree pieces computed on demand and cached.
///
/// The cache is write-once per degree; concurrent callers may duplicate work but always read
/// identical values.
pub struct GradedQuotient {
    ideal: IdealSpec,
    pres: Presentation,
    pieces: Mutex<HashMap<u32, Arc<Piece>>>,
    hf: OnceLock<Result<HilbertFunction>>,
}

impl GradedQuotient {
    pub fn new(ideal: IdealSpec) -> Result<Self> {
        let pres = Presentation::new(&ideal)?;
        Ok(GradedQuotient { ideal, pres, pieces: Mutex::new(HashMap::new()), hf: OnceLock::new() })
    }

    pub fn ideal(&self) -> &IdealSpec {
        &self.ideal
    }

    /// Whether the reduced (box) presentation is in use.
    pub fn uses_box(&self) -> bool {
        self.pres.has_box()
    }

    fn piece(&self, m: u32) -> Arc<Piece> {
        if let Some(p) = self.pieces.lock().expect("cache lock").get(&m) {
            return p.clone();
        }
        let basis = self.pres.basis(m);
        let ideal_vectors = self.pres.ideal_vectors(m, &basis);
        let rank = integer_rank(ideal_vectors.clone());
        let piece = Arc::new(Piece { basis, ideal_vectors, rank });
        self.pieces.lock().expect("cache lock").entry(m).or_insert(piece).clone()
    }

    /// `dim S_m - dim I_m`.
    pub fn dim(&self, m: u32) -> usize {
        let p = self.piece(m);
        p.basis.len() - p.rank
    }

    /// Degree cap for the Artinian search: `sum(d_i - 1) + 1`.
    pub fn degree_cap(&self) -> u32 {
        self.ideal.degrees().iter().map(|d| d - 1).sum::<u32>() + 1
    }

    pub fn hilbert_function(&self) -> Result<HilbertFunction> {
        self.hf.get_or_init(|| self.compute_hilbert_function()).clone()
    }

    fn compute_hilbert_function(&self) -> Result<HilbertFunction> {
        let cap = self.degree_cap();
        if self.ideal.base_forms_span() == Some(false) {
            let partial = (0..=1).map(|m| self.dim(m)).collect();
            return Err(Error::NotArtinian { partial, cap });
        }
        let mut dims = Vec::new();
        for m in 0..=cap {
            let d = self.dim(m);
            if d == 0 {
                let socle_degree = dims.len() as u32 - 1;
                return Ok(HilbertFunction { dims, socle_degree });
            }
            dims.push(d);
        }
        Err(Error::NotArtinian { partial: dims, cap })
    }

    pub fn multiplier(&self, g: &GradedPoly) -> Result<Multiplier> {
        if g.num_vars() != self.ideal.num_vars() {
            return Err(Error::VarCountMismatch { expected: self.ideal.num_vars(), found: g.num_vars() });
        }
        Ok(Multiplier { form: self.pres.transform(g)?, original: g.clone() })
    }

    /// Rank of multiplication `A_m -> A_{m+e}` by the multiplier.
    ///
    /// Equals `dim(I_{m+e} + g * S_m) - dim I_{m+e}`, so no quotient basis is needed.
    pub fn multiplication_rank(&self, g: &Multiplier, m: u32) -> usize {
        let target = self.piece(m + g.degree());
        let source = self.pres.basis(m);
        let images = self.pres.products(&g.form, &source, &target.basis);
        if images.is_empty() {
            return 0;
        }
        let mut vectors = target.ideal_vectors.clone();
        vectors.extend(images);
        integer_rank(vectors) - target.rank
    }
}
