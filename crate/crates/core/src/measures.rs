//! The entanglement measures τₙ and τ₍₄,₈₎.
//!
//! τₙ is defined for any even-qubit pure state. τ₍₄,₈₎ is only available in
//! its amplitude form for states supported on the eight family kets; the
//! general degree-8 invariant behind it is not implemented.

use num_complex::Complex64;

use crate::pauli::{PauliString, PauliSymbol};
use crate::state::{check_angle, dot, FamilyParams, StateVector, FAMILY_SUPPORT};
use crate::{Error, Result, TOLERANCE};

/// `τₙ(ψ) = |⟨ψ|σ_y^{⊗n}|ψ*⟩|²` for even `n`.
pub fn tau_n(psi: &StateVector) -> Result<f64> {
    let n = psi.n_qubits();
    if n % 2 != 0 {
        return Err(Error::Argument(format!(
            "tau_n needs an even qubit count, got {n}"
        )));
    }
    let conjugated: Vec<Complex64> = psi.amplitudes().iter().map(|a| a.conj()).collect();
    let flipped = PauliString::new(vec![PauliSymbol::Y; n], 1.0)?.apply(&conjugated)?;
    Ok(dot(psi.amplitudes(), &flipped).norm_sqr())
}

/// `sin²(θ₁−θ₂) · sin²(θ₁+θ₂)`.
pub fn tau_n_closed(params: FamilyParams) -> f64 {
    let (t1, t2) = (params.theta1(), params.theta2());
    (t1 - t2).sin().powi(2) * (t1 + t2).sin().powi(2)
}

/// The eight amplitudes entering τ₍₄,₈₎.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeMap {
    pub a0000: Complex64,
    pub a1111: Complex64,
    pub a0011: Complex64,
    pub a1100: Complex64,
    pub a0101: Complex64,
    pub a1010: Complex64,
    pub a0110: Complex64,
    pub a1001: Complex64,
}

impl AmplitudeMap {
    /// Reads the eight amplitudes from a four-qubit state, failing if any
    /// other amplitude exceeds [`TOLERANCE`] in magnitude.
    pub fn from_state(psi: &StateVector) -> Result<Self> {
        if psi.n_qubits() != 4 {
            return Err(Error::Domain(format!(
                "tau48 amplitude form needs 4 qubits, got {}",
                psi.n_qubits()
            )));
        }
        let amps = psi.amplitudes();
        if let Some((i, a)) = amps
            .iter()
            .enumerate()
            .find(|(i, a)| !FAMILY_SUPPORT.contains(i) && a.norm() > TOLERANCE)
        {
            return Err(Error::Domain(format!(
                "amplitude {a} on |{i:04b}⟩ lies outside the eight-ket support"
            )));
        }
        let [a0000, a1111, a0011, a1100, a0101, a1010, a0110, a1001] =
            FAMILY_SUPPORT.map(|i| amps[i]);
        Ok(Self {
            a0000,
            a1111,
            a0011,
            a1100,
            a0101,
            a1010,
            a0110,
            a1001,
        })
    }

    /// `J = 3[(1/6)P² − (2/3)Q]` with the pair sum `P` and quartic term `Q`.
    fn cubic_invariant_term(&self) -> Complex64 {
        let pairs = self.a0000 * self.a1111 + self.a0011 * self.a1100
            - self.a0101 * self.a1010
            - self.a0110 * self.a1001;
        let quartic = self.a0000 * self.a1100 * self.a0011 * self.a1111
            + self.a0110 * self.a1010 * self.a0101 * self.a1001;
        3.0 * (pairs * pairs / 6.0 - quartic * (2.0 / 3.0))
    }

    fn product(&self) -> Complex64 {
        self.a0000
            * self.a1100
            * self.a0110
            * self.a1010
            * self.a0011
            * self.a1111
            * self.a0101
            * self.a1001
    }
}

/// τ₍₄,₈₎ from the eight amplitudes: `8 · |√(J² + 48·Π)|`, with `Π` the
/// product of all eight amplitudes.
///
/// The form usually quoted, `8√3 · |√(J² + 16·Π)|`, reduces on the family to
/// `(√3/2)·√((1+c₁c₂)² + s₁²s₂²)` (writing `cₖ = cos2θₖ`, `sₖ = sin2θₖ`) and
/// does not match the closed form `(1/2)·√((1+c₁c₂)² + 3s₁²s₂²)`; it gives
/// √3 at `θ₁ = θ₂ = 0`. Weighting `Π` by 48 with prefactor 8, i.e.
/// `8√3·√(J²/3 + 16Π)`, matches the closed form exactly, so that is used.
///
/// `|√z| = √|z|` is taken on the complex radicand, so a radicand that is
/// slightly negative from rounding contributes its magnitude.
pub fn tau48_amplitudes(a: &AmplitudeMap) -> f64 {
    let j = a.cubic_invariant_term();
    8.0 * (j * j + 48.0 * a.product()).norm().sqrt()
}

/// `(1/2)·√([1 + cos2θ₁ cos2θ₂]² + 3 sin²2θ₁ sin²2θ₂)`.
pub fn tau48_closed(params: FamilyParams) -> f64 {
    let (s1, c1) = (2.0 * params.theta1()).sin_cos();
    let (s2, c2) = (2.0 * params.theta2()).sin_cos();
    0.5 * ((1.0 + c1 * c2).powi(2) + 3.0 * (s1 * s2).powi(2)).sqrt()
}

/// τ₍₄,₈₎ on the diagonal: `√(cos⁴2θ + sin²2θ)`.
pub fn tau48_theta(theta: f64) -> Result<f64> {
    check_angle("theta", theta)?;
    let (s, c) = (2.0 * theta).sin_cos();
    Ok((c.powi(4) + s * s).sqrt())
}

/// τ₍₄,₈₎ of a state, extracting the amplitude map first.
pub fn tau48(psi: &StateVector) -> Result<f64> {
    AmplitudeMap::from_state(psi).map(|a| tau48_amplitudes(&a))
}

#[cfg(test)]
pub(crate) fn tau48_amplitudes_as_quoted(a: &AmplitudeMap) -> f64 {
    let j = a.cubic_invariant_term();
    8.0 * 3f64.sqrt() * (j * j + 16.0 * a.product()).norm().sqrt()
}
