//! Inputs shared by the benchmarks.

use lefschetz_core::{GradedPoly, IdealSpec, LinearForm};

/// `<x^5, y^5, z^5, x^2yz, xy^2z>`.
pub fn five_monomials() -> IdealSpec {
    let gens = [[5, 0, 0], [0, 5, 0], [0, 0, 5], [2, 1, 1], [1, 2, 1]];
    IdealSpec::polys(3, gens.iter().map(|e| GradedPoly::monomial(e)).collect()).expect("valid ideal")
}

/// Cubes of the coordinates and of `x+y+z+w` in four variables.
pub fn five_cubes() -> IdealSpec {
    let bases = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1]];
    let gens: Vec<_> = bases.iter().map(|b| (LinearForm::from_i64(b), 3)).collect();
    IdealSpec::powers(4, &gens).expect("valid ideal")
}

/// Powers of six general forms in three variables with degrees 3..=8.
pub fn six_powers() -> IdealSpec {
    let bases = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, -2, 3], [2, 5, -1]];
    let gens: Vec<_> = bases.iter().zip(3..).map(|(b, d)| (LinearForm::from_i64(b), d)).collect();
    IdealSpec::powers(3, &gens).expect("valid ideal")
}

/// An `n x n` integer matrix of rank `n - 1` with entries of a few digits.
pub fn singular_matrix(n: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> =
        (0..n - 1).map(|i| (0..n).map(|j| ((i * 31 + j * 17 + i * j * 7) % 97) as i64 - 48).collect()).collect();
    let last = (0..n).map(|j| rows[0][j] - 2 * rows[1][j] + rows[2][j]).collect();
    rows.push(last);
    rows
}
