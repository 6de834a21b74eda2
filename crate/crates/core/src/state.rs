//! Dense pure states and the four-qubit family constructors.
//!
//! Basis convention: the ket `|i₁i₂…iₙ⟩` is stored at the array index whose
//! binary digits read `i₁i₂…iₙ`, so qubit 1 is the most significant bit.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result, TOLERANCE};

/// Largest register the dense representation accepts.
pub const MAX_QUBITS: usize = 24;

/// A normalized pure state of `n_qubits` qubits held as `2ⁿ` amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps `amplitudes`, checking the length is a power of two and the
    /// norm is one within [`TOLERANCE`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Argument(format!(
                "amplitude count {len} is not 2^n for n >= 1"
            )));
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(Error::Argument(format!(
                "{n_qubits} qubits exceeds the dense limit of {MAX_QUBITS}"
            )));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > TOLERANCE {
            return Err(Error::Argument(format!(
                "state is not normalized: sum |a|^2 = {norm_sqr}"
            )));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Rescales `amplitudes` to unit norm before wrapping them.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Argument("cannot normalize a zero vector".into()));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::new(amplitudes)
    }

    /// The computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::Argument(format!(
                "unsupported qubit count {n_qubits}"
            )));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Argument(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self::new(amplitudes)
    }

    /// Tensor product of single-qubit states, qubit 1 first. Each factor is
    /// normalized independently.
    pub fn product(qubits: &[[Complex64; 2]]) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::Argument("product of zero qubits".into()));
        }
        let mut amplitudes = vec![Complex64::new(1.0, 0.0)];
        for (q, &[zero, one]) in qubits.iter().enumerate() {
            let norm = (zero.norm_sqr() + one.norm_sqr()).sqrt();
            if norm == 0.0 || !norm.is_finite() {
                return Err(Error::Argument(format!("qubit {} has zero norm", q + 1)));
            }
            let (zero, one) = (zero / norm, one / norm);
            amplitudes = amplitudes
                .iter()
                .flat_map(|&a| [a * zero, a * one])
                .collect();
        }
        Self::new(amplitudes)
    }

    /// A Haar-random pure state: normalized vector of i.i.d. complex Gaussians.
    pub fn random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::Argument(format!(
                "unsupported qubit count {n_qubits}"
            )));
        }
        let amplitudes = (0..1usize << n_qubits).map(|_| gaussian(rng)).collect();
        Self::normalized(amplitudes)
    }

    /// A product of independent Haar-random single-qubit states.
    pub fn random_product<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        let qubits: Vec<[Complex64; 2]> = (0..n_qubits)
            .map(|_| [gaussian(rng), gaussian(rng)])
            .collect();
        Self::product(&qubits)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Amplitude of the ket written as a bit string, e.g. `"0110"`.
    pub fn amplitude_of(&self, ket: &str) -> Result<Complex64> {
        let index = basis_index(ket)?;
        if ket.len() != self.n_qubits {
            return Err(Error::Argument(format!(
                "ket {ket} has {} symbols, state has {} qubits",
                ket.len(),
                self.n_qubits
            )));
        }
        Ok(self.amplitudes[index])
    }

    /// Multiplies every amplitude by `e^{iφ}`.
    pub fn with_global_phase(&self, phi: f64) -> Self {
        let phase = Complex64::from_polar(1.0, phi);
        Self {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.iter().map(|&a| a * phase).collect(),
        }
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Array index of a ket given as a bit string; the first symbol is the most
/// significant bit.
pub fn basis_index(ket: &str) -> Result<usize> {
    if ket.is_empty() || ket.len() > MAX_QUBITS {
        return Err(Error::Argument(format!("bad ket label {ket:?}")));
    }
    ket.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::Argument(format!("bad ket label {ket:?}"))),
    })
}

/// Bit-string label of `index` in an `n_qubits` register.
pub fn ket_label(index: usize, n_qubits: usize) -> String {
    format!("{index:0width$b}", width = n_qubits)
}

/// The two family angles, each in `[0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    theta1: f64,
    theta2: f64,
}

impl FamilyParams {
    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        check_angle("theta1", theta1)?;
        check_angle("theta2", theta2)?;
        Ok(Self { theta1, theta2 })
    }

    /// The diagonal `θ₁ = θ₂ = θ`.
    pub fn diagonal(theta: f64) -> Result<Self> {
        check_angle("theta", theta)?;
        Ok(Self {
            theta1: theta,
            theta2: theta,
        })
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }
}

/// Rejects angles outside `[0, π/2]` by more than [`TOLERANCE`].
pub(crate) fn check_angle(name: &'static str, value: f64) -> Result<()> {
    if (-TOLERANCE..=FRAC_PI_2 + TOLERANCE).contains(&value) {
        Ok(())
    } else {
        Err(Error::Range {
            name,
            value,
            min: 0.0,
            max: FRAC_PI_2,
        })
    }
}

/// Kets carrying the eight nonzero amplitudes of the family, in the order
/// `0000, 1111, 0011, 1100, 0101, 1010, 0110, 1001`.
pub const FAMILY_SUPPORT: [usize; 8] = [
    0b0000, 0b1111, 0b0011, 0b1100, 0b0101, 0b1010, 0b0110, 0b1001,
];

/// `|ψ(θ₁,θ₂)⟩`.
pub fn make_family_state(params: FamilyParams) -> StateVector {
    let (s1, c1) = params.theta1.sin_cos();
    let (s2, c2) = params.theta2.sin_cos();
    let values = [
        c1 / 2.0,  // 0000
        c1 / 2.0,  // 1111
        -s1 / 2.0, // 0011
        s1 / 2.0,  // 1100
        -c2 / 2.0, // 0101
        c2 / 2.0,  // 1010
        s2 / 2.0,  // 0110
        s2 / 2.0,  // 1001
    ];
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 16];
    for (&index, &value) in FAMILY_SUPPORT.iter().zip(&values) {
        amplitudes[index] = Complex64::new(value, 0.0);
    }
    StateVector::new(amplitudes).expect("family state is normalized for any real angles")
}

/// `|ψ(θ)⟩ = |ψ(θ, θ)⟩`; `θ = π/4` gives `|χ⟩`.
pub fn make_theta_state(theta: f64) -> Result<StateVector> {
    FamilyParams::diagonal(theta).map(make_family_state)
}

/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn make_ghz(n_qubits: usize) -> Result<StateVector> {
    if !(2..=MAX_QUBITS).contains(&n_qubits) {
        return Err(Error::Argument(format!(
            "GHZ state needs 2..={MAX_QUBITS} qubits, got {n_qubits}"
        )));
    }
    let dim = 1usize << n_qubits;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    amplitudes[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amplitudes[dim - 1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    StateVector::new(amplitudes)
}

/// `⟨a|b⟩`, conjugating `a`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.n_qubits != b.n_qubits {
        return Err(Error::Argument(format!(
            "inner product of {}-qubit and {}-qubit states",
            a.n_qubits, b.n_qubits
        )));
    }
    Ok(dot(&a.amplitudes, &b.amplitudes))
}

pub(crate) fn dot(bra: &[Complex64], ket: &[Complex64]) -> Complex64 {
    bra.iter().zip(ket).map(|(x, y)| x.conj() * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!((a - b).norm() <= tol, "{a} != {b}");
    }

    #[test]
    fn chi_has_eight_equal_magnitude_amplitudes() {
        let chi = make_family_state(FamilyParams::new(FRAC_PI_4, FRAC_PI_4).unwrap());
        let m = 1.0 / (2.0 * 2f64.sqrt());
        let expected = [
            ("0000", m),
            ("1111", m),
            ("0011", -m),
            ("1100", m),
            ("0101", -m),
            ("1010", m),
            ("0110", m),
            ("1001", m),
        ];
        for (ket, value) in expected {
            assert_close(
                chi.amplitude_of(ket).unwrap(),
                Complex64::new(value, 0.0),
                1e-15,
            );
        }
        let nonzero = chi.amplitudes().iter().filter(|a| a.norm() > 0.0).count();
        assert_eq!(nonzero, 8);
    }

    #[test]
    fn endpoints_keep_four_terms() {
        let zero = make_family_state(FamilyParams::new(0.0, 0.0).unwrap());
        let expected = [("0000", 0.5), ("0101", -0.5), ("1010", 0.5), ("1111", 0.5)];
        for (ket, value) in expected {
            assert_close(
                zero.amplitude_of(ket).unwrap(),
                Complex64::new(value, 0.0),
                1e-15,
            );
        }
        assert_eq!(
            zero.amplitudes()
                .iter()
                .filter(|a| a.norm() > 1e-15)
                .count(),
            4
        );

        let top = make_family_state(FamilyParams::new(FRAC_PI_2, FRAC_PI_2).unwrap());
        let expected = [("0011", -0.5), ("1100", 0.5), ("0110", 0.5), ("1001", 0.5)];
        for (ket, value) in expected {
            assert_close(
                top.amplitude_of(ket).unwrap(),
                Complex64::new(value, 0.0),
                1e-15,
            );
        }
        assert_eq!(
            top.amplitudes().iter().filter(|a| a.norm() > 1e-15).count(),
            4
        );
    }

    #[test]
    fn theta_state_is_the_diagonal() {
        for theta in [0.0, FRAC_PI_8, FRAC_PI_4, 1.2, FRAC_PI_2] {
            let a = make_theta_state(theta).unwrap();
            let b = make_family_state(FamilyParams::new(theta, theta).unwrap());
            assert_eq!(a.amplitudes(), b.amplitudes());
        }
    }

    #[test]
    fn range_is_enforced_with_slack() {
        assert!(FamilyParams::new(-1e-13, FRAC_PI_2 + 1e-13).is_ok());
        assert!(matches!(
            FamilyParams::new(2.0 * PI, 0.0),
            Err(Error::Range { name: "theta1", .. })
        ));
        assert!(FamilyParams::new(0.0, -1e-9).is_err());
        assert!(FamilyParams::new(f64::NAN, 0.0).is_err());
        assert!(make_theta_state(1.6).is_err());
    }

    #[test]
    fn ghz_amplitudes() {
        let ghz4 = make_ghz(4).unwrap();
        assert_eq!(ghz4.amplitudes()[0].re, FRAC_1_SQRT_2);
        assert_eq!(ghz4.amplitudes()[15].re, FRAC_1_SQRT_2);
        assert_eq!(
            ghz4.amplitudes().iter().filter(|a| a.norm() > 0.0).count(),
            2
        );
        let ghz2 = make_ghz(2).unwrap();
        assert_eq!(ghz2.amplitudes()[3].re, FRAC_1_SQRT_2);
        assert!(matches!(make_ghz(1), Err(Error::Argument(_))));
    }

    #[test]
    fn inner_products() {
        let chi = make_theta_state(FRAC_PI_4).unwrap();
        assert_close(
            inner_product(&chi, &chi).unwrap(),
            Complex64::new(1.0, 0.0),
            1e-12,
        );

        let zero = StateVector::basis(4, 0).unwrap();
        assert_close(
            inner_product(&zero, &chi).unwrap(),
            Complex64::new(2f64.sqrt() / 4.0, 0.0),
            1e-15,
        );

        // Only |0000⟩ and |1111⟩ overlap: (1/√2)(cosθ/2 + cosθ/2) = cosθ/√2.
        let ghz = make_ghz(4).unwrap();
        let expected = FRAC_PI_4.cos() / 2f64.sqrt();
        assert_close(
            inner_product(&ghz, &chi).unwrap(),
            Complex64::new(expected, 0.0),
            1e-15,
        );

        assert!(inner_product(&ghz, &make_ghz(2).unwrap()).is_err());
    }

    #[test]
    fn construction_rejects_bad_vectors() {
        let c = |re| Complex64::new(re, 0.0);
        assert!(StateVector::new(vec![c(1.0), c(0.0), c(0.0)]).is_err());
        assert!(StateVector::new(vec![c(1.0), c(1.0)]).is_err());
        assert!(StateVector::new(vec![c(1.0)]).is_err());
        assert!(StateVector::normalized(vec![c(0.0), c(0.0)]).is_err());
        assert!(StateVector::normalized(vec![c(3.0), c(4.0)]).is_ok());
    }

    #[test]
    fn product_state_matches_kron_order() {
        let zero = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let one = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let s = StateVector::product(&[one, zero, one, one]).unwrap();
        assert_eq!(s.amplitude_of("1011").unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn labels_round_trip() {
        for i in 0..16 {
            assert_eq!(basis_index(&ket_label(i, 4)).unwrap(), i);
        }
        assert!(basis_index("01a1").is_err());
    }

    #[test]
    fn norm_on_grid() {
        let n = 50;
        for i in 0..n {
            for j in 0..n {
                let t1 = FRAC_PI_2 * i as f64 / (n - 1) as f64;
                let t2 = FRAC_PI_2 * j as f64 / (n - 1) as f64;
                let s = make_family_state(FamilyParams::new(t1, t2).unwrap());
                let norm: f64 = s.amplitudes().iter().map(|a| a.norm_sqr()).sum();
                assert!((norm - 1.0).abs() <= 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn family_signs_and_support(t1 in 0.0..=FRAC_PI_2, t2 in 0.0..=FRAC_PI_2) {
            let s = make_family_state(FamilyParams::new(t1, t2).unwrap());
            for (i, a) in s.amplitudes().iter().enumerate() {
                prop_assert_eq!(a.im, 0.0);
                if !FAMILY_SUPPORT.contains(&i) {
                    prop_assert_eq!(a.re, 0.0);
                }
            }
            let a = |k: &str| s.amplitude_of(k).unwrap().re;
            prop_assert!(a("0000") >= 0.0 && a("1111") >= 0.0);
            prop_assert!(a("0011") <= 0.0 && a("1100") >= 0.0);
            prop_assert!(a("0101") <= 0.0 && a("1010") >= 0.0);
            prop_assert!(a("0110") >= 0.0 && a("1001") >= 0.0);
        }

        #[test]
        fn inner_product_is_conjugate_symmetric(seed in any::<u64>(), n in 1usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = StateVector::random(n, &mut rng).unwrap();
            let b = StateVector::random(n, &mut rng).unwrap();
            let ab = inner_product(&a, &b).unwrap();
            let ba = inner_product(&b, &a).unwrap();
            prop_assert!((ab - ba.conj()).norm() <= 1e-12);
        }
    }
}
