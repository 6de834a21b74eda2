//! Pauli strings and sums, Bloch-vector observables, and matrix-free
//! application to amplitude arrays.
//!
//! Conventions: `X|b⟩ = |1−b⟩`, `Y|0⟩ = i|1⟩`, `Y|1⟩ = −i|0⟩`, `Z|b⟩ = (−1)^b|b⟩`.
//! Qubit `q` (1-based, leftmost in the ket) is bit `n − q` of the array index.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::state::StateVector;
use crate::{Error, Result};

/// Imaginary residue above which an expectation value is reported as
/// inconsistent with Hermiticity.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Tolerance on `|n̂|² = 1` for Bloch observables.
pub const UNIT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliSymbol {
    I,
    X,
    Y,
    Z,
}

impl PauliSymbol {
    pub const ALL: [PauliSymbol; 4] = [
        PauliSymbol::I,
        PauliSymbol::X,
        PauliSymbol::Y,
        PauliSymbol::Z,
    ];

    pub fn to_char(self) -> char {
        match self {
            PauliSymbol::I => 'I',
            PauliSymbol::X => 'X',
            PauliSymbol::Y => 'Y',
            PauliSymbol::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'I' | '0' => Ok(PauliSymbol::I),
            'X' => Ok(PauliSymbol::X),
            'Y' => Ok(PauliSymbol::Y),
            'Z' => Ok(PauliSymbol::Z),
            _ => Err(Error::Argument(format!("unknown Pauli symbol {c:?}"))),
        }
    }
}

/// A coefficient times a tensor product of single-qubit Paulis, qubit 1 first.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    symbols: Vec<PauliSymbol>,
    coefficient: f64,
}

impl PauliString {
    pub fn new(symbols: Vec<PauliSymbol>, coefficient: f64) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::Argument("Pauli string with no qubits".into()));
        }
        if !coefficient.is_finite() {
            return Err(Error::Argument(format!(
                "non-finite coefficient {coefficient}"
            )));
        }
        Ok(Self {
            symbols,
            coefficient,
        })
    }

    /// Parses a symbol string such as `"XZZX"` with the given coefficient.
    pub fn parse(symbols: &str, coefficient: f64) -> Result<Self> {
        let symbols = symbols
            .chars()
            .map(PauliSymbol::from_char)
            .collect::<Result<Vec<_>>>()?;
        Self::new(symbols, coefficient)
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::new(vec![PauliSymbol::I; n_qubits], 1.0)
    }

    pub fn symbols(&self) -> &[PauliSymbol] {
        &self.symbols
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn n_qubits(&self) -> usize {
        self.symbols.len()
    }

    pub fn label(&self) -> String {
        self.symbols.iter().map(|s| s.to_char()).collect()
    }

    /// Bit masks over array indices: bits flipped by X/Y, bits that pick up a
    /// sign from Z/Y, and the number of Y factors.
    fn masks(&self) -> (usize, usize, u32) {
        let n = self.symbols.len();
        let mut flip = 0usize;
        let mut sign = 0usize;
        let mut n_y = 0u32;
        for (q, symbol) in self.symbols.iter().enumerate() {
            let bit = 1usize << (n - 1 - q);
            match symbol {
                PauliSymbol::I => {}
                PauliSymbol::X => flip |= bit,
                PauliSymbol::Y => {
                    flip |= bit;
                    sign |= bit;
                    n_y += 1;
                }
                PauliSymbol::Z => sign |= bit,
            }
        }
        (flip, sign, n_y)
    }

    /// `coefficient · (⊗σ)` applied to a raw amplitude array of length `2ⁿ`.
    ///
    /// The string maps `|i⟩` to `c · i^{#Y} · (−1)^{popcount(i & sign)} |i ^ flip⟩`.
    pub fn apply(&self, amplitudes: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); amplitudes.len()];
        self.apply_accumulate(amplitudes, &mut out)?;
        Ok(out)
    }

    fn apply_accumulate(&self, amplitudes: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        self.check_len(amplitudes.len())?;
        let (flip, sign, n_y) = self.masks();
        let phase = i_pow(n_y) * self.coefficient;
        for (i, &a) in amplitudes.iter().enumerate() {
            let term = if (i & sign).count_ones() % 2 == 0 {
                phase * a
            } else {
                -phase * a
            };
            out[i ^ flip] += term;
        }
        Ok(())
    }

    /// `⟨a|P|a⟩` without materializing `P|a⟩`.
    fn sandwich(&self, amplitudes: &[Complex64]) -> Result<Complex64> {
        self.check_len(amplitudes.len())?;
        let (flip, sign, n_y) = self.masks();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &a) in amplitudes.iter().enumerate() {
            let term = amplitudes[i ^ flip].conj() * a;
            if (i & sign).count_ones() % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        Ok(acc * i_pow(n_y) * self.coefficient)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        let n = self.symbols.len();
        if n >= usize::BITS as usize || len != 1usize << n {
            return Err(Error::Argument(format!(
                "{n}-qubit Pauli string applied to {len} amplitudes"
            )));
        }
        Ok(())
    }
}

fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}·{}", self.coefficient, self.label())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Accepts `"XZZX"`, `"-XYYX"` or `"0.5*IZYY"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((coefficient, symbols)) = s.split_once('*') {
            let coefficient = coefficient
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Argument(format!("bad coefficient in {s:?}: {e}")))?;
            return Self::parse(symbols.trim(), coefficient);
        }
        match s.strip_prefix('-') {
            Some(rest) => Self::parse(rest, -1.0),
            None => Self::parse(s.strip_prefix('+').unwrap_or(s), 1.0),
        }
    }
}

/// A real-weighted sum of Pauli strings of equal length. Duplicate strings are
/// kept as separate terms; zero-coefficient terms are dropped.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PauliSum {
    terms: Vec<PauliString>,
}

impl PauliSum {
    pub fn new(terms: Vec<PauliString>) -> Result<Self> {
        if let Some(first) = terms.first() {
            let n = first.n_qubits();
            if let Some(bad) = terms.iter().find(|t| t.n_qubits() != n) {
                return Err(Error::Argument(format!(
                    "Pauli sum mixes {n}-qubit and {}-qubit terms",
                    bad.n_qubits()
                )));
            }
        }
        Ok(Self {
            terms: terms.into_iter().filter(|t| t.coefficient != 0.0).collect(),
        })
    }

    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Qubit count shared by all terms, or `None` for the empty sum.
    pub fn n_qubits(&self) -> Option<usize> {
        self.terms.first().map(PauliString::n_qubits)
    }

    /// Scales every coefficient.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.terms
                .iter()
                .map(|t| PauliString::new(t.symbols.clone(), t.coefficient * factor))
                .collect::<Result<_>>()?,
        )
    }

    /// Concatenates the terms of two sums.
    pub fn plus(&self, other: &PauliSum) -> Result<Self> {
        Self::new(self.terms.iter().chain(&other.terms).cloned().collect())
    }

    /// Product of two sums acting on disjoint qubits of the same register.
    ///
    /// Each pair of terms is merged position by position; a position where
    /// both terms carry a non-identity symbol is an error.
    pub fn disjoint_product(&self, other: &PauliSum) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                if a.n_qubits() != b.n_qubits() {
                    return Err(Error::Argument(format!(
                        "product of {}-qubit and {}-qubit strings",
                        a.n_qubits(),
                        b.n_qubits()
                    )));
                }
                let symbols = a
                    .symbols
                    .iter()
                    .zip(&b.symbols)
                    .enumerate()
                    .map(|(q, (&x, &y))| match (x, y) {
                        (PauliSymbol::I, s) | (s, PauliSymbol::I) => Ok(s),
                        _ => Err(Error::Argument(format!(
                            "factors overlap on qubit {}",
                            q + 1
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                terms.push(PauliString::new(symbols, a.coefficient * b.coefficient)?);
            }
        }
        Self::new(terms)
    }

    /// Sum of the terms applied to a raw amplitude array.
    pub fn apply(&self, amplitudes: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); amplitudes.len()];
        for term in &self.terms {
            term.apply_accumulate(amplitudes, &mut out)?;
        }
        Ok(out)
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// The single-qubit observable `n̂·σ` for a unit vector `n̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochObservable {
    nx: f64,
    ny: f64,
    nz: f64,
}

impl BlochObservable {
    pub const X: BlochObservable = BlochObservable {
        nx: 1.0,
        ny: 0.0,
        nz: 0.0,
    };
    pub const Y: BlochObservable = BlochObservable {
        nx: 0.0,
        ny: 1.0,
        nz: 0.0,
    };
    pub const Z: BlochObservable = BlochObservable {
        nx: 0.0,
        ny: 0.0,
        nz: 1.0,
    };

    pub fn new(nx: f64, ny: f64, nz: f64) -> Result<Self> {
        let norm_sqr = nx * nx + ny * ny + nz * nz;
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::Argument(format!(
                "Bloch vector ({nx}, {ny}, {nz}) is not unit length"
            )));
        }
        Ok(Self { nx, ny, nz })
    }

    /// `(sinθ cosφ, sinθ sinφ, cosθ)` for polar angle θ and azimuth φ.
    pub fn from_angles(polar: f64, azimuth: f64) -> Self {
        let (sp, cp) = polar.sin_cos();
        let (sa, ca) = azimuth.sin_cos();
        Self {
            nx: sp * ca,
            ny: sp * sa,
            nz: cp,
        }
    }

    pub fn vector(&self) -> [f64; 3] {
        [self.nx, self.ny, self.nz]
    }

    pub fn negated(&self) -> Self {
        Self {
            nx: -self.nx,
            ny: -self.ny,
            nz: -self.nz,
        }
    }
}

/// `n̂·σ` on `qubit_index` (1-based) of an `n_qubits` register.
pub fn bloch_to_pauli(
    obs: &BlochObservable,
    qubit_index: usize,
    n_qubits: usize,
) -> Result<PauliSum> {
    if qubit_index == 0 || qubit_index > n_qubits {
        return Err(Error::Argument(format!(
            "qubit {qubit_index} outside 1..={n_qubits}"
        )));
    }
    let terms = [
        (PauliSymbol::X, obs.nx),
        (PauliSymbol::Y, obs.ny),
        (PauliSymbol::Z, obs.nz),
    ]
    .into_iter()
    .map(|(symbol, coefficient)| {
        let mut symbols = vec![PauliSymbol::I; n_qubits];
        symbols[qubit_index - 1] = symbol;
        PauliString::new(symbols, coefficient)
    })
    .collect::<Result<Vec<_>>>()?;
    PauliSum::new(terms)
}

pub fn apply_pauli_string(p: &PauliString, psi: &StateVector) -> Result<Vec<Complex64>> {
    p.apply(psi.amplitudes())
}

pub fn apply_pauli_sum(op: &PauliSum, psi: &StateVector) -> Result<Vec<Complex64>> {
    op.apply(psi.amplitudes())
}

/// `⟨ψ|op|ψ⟩`. The imaginary part must vanish within
/// [`HERMITIAN_TOLERANCE`]; otherwise a consistency error is returned.
pub fn expectation(op: &PauliSum, psi: &StateVector) -> Result<f64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for term in op.terms() {
        acc += term.sandwich(psi.amplitudes())?;
    }
    if acc.im.abs() > HERMITIAN_TOLERANCE {
        return Err(Error::Consistency(format!(
            "expectation has imaginary part {:e}",
            acc.im
        )));
    }
    Ok(acc.re)
}

/// Expectation of a single string, without the Hermiticity check.
pub fn string_expectation(p: &PauliString, psi: &StateVector) -> Result<Complex64> {
    p.sandwich(psi.amplitudes())
}
