//! Exact linear algebra over the rationals.
//!
//! Ranks are computed by fraction-free (Bareiss) elimination on integer-cleared rows. A single
//! pass modulo a large prime runs first: the rank modulo a prime never exceeds the rational rank,
//! so a full-rank answer there is already certified and the big-integer elimination is skipped.
//! Every other case falls through to the exact computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar in canonical form (reduced, positive denominator).
pub type Scalar = BigRational;

/// Mersenne prime 2^61 - 1, used by the modular rank prefilter.
const PRIME: u64 = (1 << 61) - 1;

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of [`ExactMatrix::echelonize`] and [`ExactMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub form: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(ExactMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a `rows x columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::InvalidInput("column length does not match row count".into()));
        }
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| scalar(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| clear_denominators(self.row(i))).collect()
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        integer_rank(self.integer_rows())
    }

    /// Fraction-free row-echelon form of the integer-cleared matrix.
    pub fn echelonize(&self) -> Echelon {
        let mut a = self.integer_rows();
        let pivots = bareiss_forward(&mut a, self.cols);
        let form = if self.rows == 0 {
            ExactMatrix::zeros(0, self.cols)
        } else {
            let rows = a.into_iter().map(|r| r.into_iter().map(Scalar::from_integer).collect());
            ExactMatrix::from_rows(rows.collect()).expect("rows stay rectangular")
        };
        Echelon { form, rank: pivots.len(), pivots }
    }

    /// Reduced row-echelon form over the rationals: unit pivots, zeros above and below.
    pub fn rref(&self) -> Echelon {
        let mut a: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for v in a[r][c..].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, pv) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !pv.is_zero() {
                        *v = &*v - &f * pv;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let form = if self.rows == 0 {
            ExactMatrix::zeros(0, self.cols)
        } else {
            ExactMatrix::from_rows(a).expect("rows stay rectangular")
        };
        Echelon { form, rank: pivots.len(), pivots }
    }

    /// Basis of the right kernel; one vector per free column of the reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let ech = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (k, &p) in ech.pivots.iter().enumerate() {
                    v[p] = -ech.form.get(k, f).clone();
                }
                v
            })
            .collect()
    }
}

/// Scales a rational row to a primitive integer row (content removed). Row scaling by a nonzero
/// rational preserves rank and row space.
pub fn clear_denominators(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    make_primitive(ints)
}

pub(crate) fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

/// Exact rank of an integer matrix given as rows.
pub fn integer_rank(rows: Vec<Vec<BigInt>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let full = rows.len().min(cols);
    if full == 0 {
        return 0;
    }
    if rank_mod_prime(&rows, PRIME) == full {
        return full;
    }
    bareiss_rank(rows)
}

/// Rank by fraction-free elimination, without the modular prefilter.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    bareiss_forward(&mut rows, cols).len()
}

/// In-place Bareiss forward elimination; returns pivot columns.
fn bareiss_forward(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        // smallest pivot keeps intermediate growth down
        let Some(p) = (r..nrows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let pj = &pivot_row[j];
                let v = &row[j];
                if factor.is_zero() || pj.is_zero() {
                    if v.is_zero() {
                        continue;
                    }
                    row[j] = (piv * v) / &prev;
                } else {
                    row[j] = (piv * v - &factor * pj) / &prev;
                }
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[inline]
fn mulmod61(a: u64, b: u64) -> u64 {
    let x = (a as u128) * (b as u128);
    let lo = (x as u64) & PRIME;
    let hi = (x >> 61) as u64;
    let s = lo + hi;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

fn powmod61(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod61(acc, b);
        }
        b = mulmod61(b, b);
        e >>= 1;
    }
    acc
}

/// Rank of the reduction modulo `p` (only `p = 2^61 - 1` is supported). Always a lower bound
/// for the rational rank.
pub fn rank_mod_prime(rows: &[Vec<BigInt>], p: u64) -> usize {
    assert_eq!(p, PRIME, "modular rank is implemented for 2^61 - 1 only");
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| {
                    if v.is_zero() {
                        0
                    } else {
                        v.mod_floor(&pb).to_u64().expect("residue fits in u64")
                    }
                })
                .collect()
        })
        .collect();
    let nrows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = powmod61(a[r][c], p - 2);
        let (head, tail) = a.split_at_mut(r + 1);
        let pr = &head[r];
        for row in tail.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = mulmod61(row[c], inv);
            for j in c..cols {
                if pr[j] != 0 {
                    let sub = mulmod61(f, pr[j]);
                    row[j] = if row[j] >= sub { row[j] - sub } else { row[j] + p - sub };
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether `v` is in the column span of `columns` (all of length `dim`).
pub fn in_column_span(dim: usize, columns: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let base = integer_rank(columns_to_rows(dim, columns));
    let mut aug = columns.to_vec();
    aug.push(v.to_vec());
    integer_rank(columns_to_rows(dim, &aug)) == base
}

/// Transposes a list of integer columns into rows.
pub fn columns_to_rows(dim: usize, columns: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    (0..dim).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect()
}

pub(crate) fn abs_cmp(a: &Scalar, b: &Scalar) -> std::cmp::Ordering {
    a.abs().cmp(&b.abs())
}
