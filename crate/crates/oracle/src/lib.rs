//! Dense reference implementations for cross-checking the matrix-free kernel.
//!
//! Operators are built as explicit `2ⁿ × 2ⁿ` matrices from Kronecker products
//! of 2×2 blocks, qubit 1 leftmost. Nothing here shares code with
//! `wyko-core`; inputs are plain symbol strings, Bloch vectors and amplitude
//! slices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type Matrix = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The 2×2 matrix for `I`, `X`, `Y` or `Z`.
pub fn pauli_matrix(symbol: char) -> Matrix {
    let (a, b, cc, d) = match symbol.to_ascii_uppercase() {
        'I' | '0' => (c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)),
        'X' => (c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)),
        'Y' => (c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)),
        'Z' => (c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)),
        other => panic!("unknown Pauli symbol {other:?}"),
    };
    Matrix::from_row_slice(2, 2, &[a, b, cc, d])
}

/// `n̂·σ`.
pub fn bloch_matrix(n: [f64; 3]) -> Matrix {
    pauli_matrix('X') * c(n[0], 0.)
        + pauli_matrix('Y') * c(n[1], 0.)
        + pauli_matrix('Z') * c(n[2], 0.)
}

pub fn kron_all(factors: &[Matrix]) -> Matrix {
    factors
        .iter()
        .fold(Matrix::identity(1, 1), |acc, f| acc.kronecker(f))
}

/// `coefficient · σ_{s₁} ⊗ … ⊗ σ_{sₙ}` for a symbol string such as `"XZZX"`.
pub fn pauli_string_matrix(symbols: &str, coefficient: f64) -> Matrix {
    let factors: Vec<Matrix> = symbols.chars().map(pauli_matrix).collect();
    kron_all(&factors) * c(coefficient, 0.)
}

pub fn apply(matrix: &Matrix, amplitudes: &[Complex64]) -> Vec<Complex64> {
    let v = DVector::from_column_slice(amplitudes);
    (matrix * v).iter().copied().collect()
}

/// `⟨ψ|M|ψ⟩`.
pub fn expectation(matrix: &Matrix, amplitudes: &[Complex64]) -> Complex64 {
    let v = DVector::from_column_slice(amplitudes);
    v.dotc(&(matrix * &v))
}

/// The WYKO operator `A₁B₁C₁D₁ + B₁C₂D₂ + B₂C₁D₂ − A₁B₂C₂D₁` from Bloch vectors
/// given in the order A₁ A₂ B₁ B₂ C₁ C₂ D₁ D₂ (A₂ unused).
pub fn wyko_matrix(vectors: [[f64; 3]; 8]) -> Matrix {
    let [a1, _a2, b1, b2, c1, c2, d1, d2] = vectors.map(bloch_matrix);
    let id = pauli_matrix('I');
    kron_all(&[a1.clone(), b1.clone(), c1.clone(), d1.clone()])
        + kron_all(&[id.clone(), b1, c2.clone(), d2.clone()])
        + kron_all(&[id, b2.clone(), c1, d2])
        - kron_all(&[a1, b2, c2, d1])
}

/// `|⟨ψ|σ_y^{⊗n}|ψ*⟩|²` with an explicit `σ_y^{⊗n}` matrix.
pub fn tau_n(amplitudes: &[Complex64]) -> f64 {
    let n = amplitudes.len().trailing_zeros() as usize;
    let yn = pauli_string_matrix(&"Y".repeat(n), 1.0);
    let conj: Vec<Complex64> = amplitudes.iter().map(|a| a.conj()).collect();
    let tilde = apply(&yn, &conj);
    amplitudes
        .iter()
        .zip(&tilde)
        .map(|(a, b)| a.conj() * b)
        .sum::<Complex64>()
        .norm_sqr()
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(matrix: &Matrix) -> Vec<f64> {
    let mut values: Vec<f64> = matrix
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    values
}
