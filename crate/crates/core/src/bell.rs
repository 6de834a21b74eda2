//! The WYKO Bell operator
//!
//! ```text
//! B = A₁B₁C₁D₁ + B₁C₂D₂ + B₂C₁D₂ − A₁B₂C₂D₁
//! ```
//!
//! with party A on qubit 1 through party D on qubit 4. Local hidden-variable
//! models satisfy `|⟨B⟩| ≤ 2`; quantum states reach 4.

use std::f64::consts::FRAC_PI_2;

use crate::measures::{tau48, tau48_closed, tau_n, tau_n_closed};
use crate::pauli::{
    bloch_to_pauli, expectation, string_expectation, BlochObservable, PauliString, PauliSum,
    PauliSymbol,
};
use crate::state::{check_angle, make_family_state, FamilyParams, StateVector};
use crate::{Error, Result};

/// Classical (local) bound on `|⟨B⟩|`.
pub const CLASSICAL_BOUND: f64 = 2.0;

/// Operator-norm bound on `|⟨B⟩|`: four terms, each a product of ±1 observables.
pub const ALGEBRAIC_BOUND: f64 = 4.0;

/// Two observables per party. `a[1]` (A₂) does not enter the operator and is
/// carried only so every party has the same shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSettings {
    pub a: [BlochObservable; 2],
    pub b: [BlochObservable; 2],
    pub c: [BlochObservable; 2],
    pub d: [BlochObservable; 2],
}

impl MeasurementSettings {
    /// The eight observables in the order A₁ A₂ B₁ B₂ C₁ C₂ D₁ D₂.
    pub fn observables(&self) -> [BlochObservable; 8] {
        [
            self.a[0], self.a[1], self.b[0], self.b[1], self.c[0], self.c[1], self.d[0], self.d[1],
        ]
    }

    pub fn from_observables(obs: [BlochObservable; 8]) -> Self {
        Self {
            a: [obs[0], obs[1]],
            b: [obs[2], obs[3]],
            c: [obs[4], obs[5]],
            d: [obs[6], obs[7]],
        }
    }

    /// Settings with both of party D's observables negated. Every term of `B`
    /// contains exactly one D factor, so this flips the sign of `⟨B⟩`.
    pub fn with_d_negated(&self) -> Self {
        Self {
            d: [self.d[0].negated(), self.d[1].negated()],
            ..*self
        }
    }
}

/// `A₁=σx, B₁=σz, C₁=σz, D₁=σx, B₂=σy, C₂=σy, D₂=σy`, and A₂=σx.
pub fn default_settings() -> MeasurementSettings {
    use BlochObservable as O;
    MeasurementSettings {
        a: [O::X, O::X],
        b: [O::Z, O::Y],
        c: [O::Z, O::Y],
        d: [O::X, O::Y],
    }
}

/// Expands `B` into Pauli strings on four qubits. Each of the four products
/// expands to up to 3⁴ strings; none are merged.
pub fn build_wyko_operator(settings: &MeasurementSettings) -> Result<PauliSum> {
    let local = |obs: &BlochObservable, qubit| bloch_to_pauli(obs, qubit, 4);
    let identity = PauliSum::new(vec![PauliString::identity(4)?])?;
    let a1 = local(&settings.a[0], 1)?;
    let [b1, b2] = [local(&settings.b[0], 2)?, local(&settings.b[1], 2)?];
    let [c1, c2] = [local(&settings.c[0], 3)?, local(&settings.c[1], 3)?];
    let [d1, d2] = [local(&settings.d[0], 4)?, local(&settings.d[1], 4)?];

    let product = |parts: [&PauliSum; 4]| -> Result<PauliSum> {
        parts[1..]
            .iter()
            .try_fold(parts[0].clone(), |acc, p| acc.disjoint_product(p))
    };
    let t1 = product([&a1, &b1, &c1, &d1])?;
    let t2 = product([&identity, &b1, &c2, &d2])?;
    let t3 = product([&identity, &b2, &c1, &d2])?;
    let t4 = product([&a1, &b2, &c2, &d1])?.scaled(-1.0)?;
    t1.plus(&t2)?.plus(&t3)?.plus(&t4)
}

/// `⟨ψ|B|ψ⟩` for a four-qubit state.
pub fn bell_expectation(psi: &StateVector, settings: &MeasurementSettings) -> Result<f64> {
    check_four_qubits(psi)?;
    expectation(&build_wyko_operator(settings)?, psi)
}

fn check_four_qubits(psi: &StateVector) -> Result<()> {
    if psi.n_qubits() != 4 {
        return Err(Error::Argument(format!(
            "WYKO operator acts on 4 qubits, state has {}",
            psi.n_qubits()
        )));
    }
    Ok(())
}

/// `[1 + cos(θ₁−θ₂)][1 + sin(θ₁+θ₂)]`, the default-settings value on the family.
pub fn bell_closed(params: FamilyParams) -> f64 {
    let (t1, t2) = (params.theta1(), params.theta2());
    (1.0 + (t1 - t2).cos()) * (1.0 + (t1 + t2).sin())
}

/// `2[1 + sin2θ]` on the diagonal.
pub fn bell_theta(theta: f64) -> Result<f64> {
    check_angle("theta", theta)?;
    Ok(2.0 * (1.0 + (2.0 * theta).sin()))
}

/// τ₍₄,₈₎ of `|ψ(θ)⟩` recovered from its default-settings Bell value,
/// `√(1 + (1 − ⟨B⟩/2)⁴ − (1 − ⟨B⟩/2)²)`.
///
/// Valid only for the one-parameter family `|ψ(θ)⟩`, whose Bell values cover
/// `[2, 4]`; it does not convert the violation of an arbitrary state into a
/// measure. Inputs outside `[2, 4]` are rejected.
pub fn theta_family_tau48_from_bell(bell_value: f64) -> Result<f64> {
    if !(CLASSICAL_BOUND..=ALGEBRAIC_BOUND).contains(&bell_value) {
        return Err(Error::Domain(format!(
            "Bell value {bell_value} outside [2, 4] covered by the theta family"
        )));
    }
    let x = 1.0 - bell_value / 2.0;
    Ok((1.0 + x.powi(4) - x * x).sqrt())
}

/// θ in `[0, π/4]` with `bell_theta(θ) = bell_value`.
pub fn theta_for_bell(bell_value: f64) -> Result<f64> {
    if !(CLASSICAL_BOUND..=ALGEBRAIC_BOUND).contains(&bell_value) {
        return Err(Error::Domain(format!(
            "Bell value {bell_value} outside [2, 4]"
        )));
    }
    Ok((bell_value / 2.0 - 1.0).clamp(0.0, 1.0).asin() / 2.0)
}

/// Measures and default-settings Bell value of one family member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViolationRecord {
    pub theta1: f64,
    pub theta2: f64,
    pub bell_value: f64,
    pub tau4: f64,
    pub tau48: f64,
}

impl ViolationRecord {
    /// Computed from the state vector.
    pub fn numeric(params: FamilyParams) -> Result<Self> {
        let psi = make_family_state(params);
        let record = Self {
            theta1: params.theta1(),
            theta2: params.theta2(),
            bell_value: bell_expectation(&psi, &default_settings())?,
            tau4: tau_n(&psi)?,
            tau48: tau48(&psi)?,
        };
        if record.bell_value.abs() > ALGEBRAIC_BOUND + 1e-10 {
            return Err(Error::Consistency(format!(
                "Bell value {} exceeds the operator-norm bound",
                record.bell_value
            )));
        }
        Ok(record)
    }

    /// Computed from the closed forms.
    pub fn closed(params: FamilyParams) -> Self {
        Self {
            theta1: params.theta1(),
            theta2: params.theta2(),
            bell_value: bell_closed(params),
            tau4: tau_n_closed(params),
            tau48: tau48_closed(params),
        }
    }

    /// Largest absolute difference over the three values.
    pub fn max_deviation(&self, other: &ViolationRecord) -> f64 {
        [
            self.bell_value - other.bell_value,
            self.tau4 - other.tau4,
            self.tau48 - other.tau48,
        ]
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max)
    }

    /// `|⟨B⟩| > 2`, strictly.
    pub fn violates(&self) -> bool {
        self.bell_value.abs() > CLASSICAL_BOUND
    }
}

/// All 256 four-qubit Pauli-string expectations `⟨σᵢ⊗σⱼ⊗σₖ⊗σₗ⟩` of a state,
/// indexed by `(I, X, Y, Z) = (0, 1, 2, 3)` per qubit.
///
/// `⟨B⟩` for any settings is a multilinear contraction of this tensor with
/// the Bloch vectors, which is much cheaper than expanding `B` repeatedly.
#[derive(Debug, Clone)]
pub struct CorrelationTensor {
    values: Box<[f64; 256]>,
}

impl CorrelationTensor {
    pub fn new(psi: &StateVector) -> Result<Self> {
        check_four_qubits(psi)?;
        let mut values = Box::new([0.0; 256]);
        for (index, value) in values.iter_mut().enumerate() {
            let symbols = (0..4)
                .map(|q| PauliSymbol::ALL[(index >> (2 * (3 - q))) & 3])
                .collect();
            let e = string_expectation(&PauliString::new(symbols, 1.0)?, psi)?;
            if e.im.abs() > crate::pauli::HERMITIAN_TOLERANCE {
                return Err(Error::Consistency(format!(
                    "Pauli string expectation has imaginary part {:e}",
                    e.im
                )));
            }
            *value = e.re;
        }
        Ok(Self { values })
    }

    pub fn get(&self, symbols: [PauliSymbol; 4]) -> f64 {
        let index = symbols.iter().fold(0, |acc, &s| {
            (acc << 2) | PauliSymbol::ALL.iter().position(|&x| x == s).unwrap()
        });
        self.values[index]
    }

    fn contract(&self, factors: [[f64; 4]; 4]) -> f64 {
        let [fa, fb, fc, fd] = factors;
        let mut total = 0.0;
        for (i, &wa) in fa.iter().enumerate().filter(|(_, w)| **w != 0.0) {
            for (j, &wb) in fb.iter().enumerate().filter(|(_, w)| **w != 0.0) {
                for (k, &wc) in fc.iter().enumerate().filter(|(_, w)| **w != 0.0) {
                    let base = (i << 6) | (j << 4) | (k << 2);
                    let inner: f64 = fd
                        .iter()
                        .zip(&self.values[base..base + 4])
                        .map(|(w, v)| w * v)
                        .sum();
                    total += wa * wb * wc * inner;
                }
            }
        }
        total
    }

    /// `⟨B⟩` at the given settings.
    pub fn wyko_value(&self, settings: &MeasurementSettings) -> f64 {
        const ID: [f64; 4] = [1.0, 0.0, 0.0, 0.0];
        let v = |o: &BlochObservable| {
            let [x, y, z] = o.vector();
            [0.0, x, y, z]
        };
        let (a1, b1, b2, c1, c2, d1, d2) = (
            v(&settings.a[0]),
            v(&settings.b[0]),
            v(&settings.b[1]),
            v(&settings.c[0]),
            v(&settings.c[1]),
            v(&settings.d[0]),
            v(&settings.d[1]),
        );
        self.contract([a1, b1, c1, d1])
            + self.contract([ID, b1, c2, d2])
            + self.contract([ID, b2, c1, d2])
            - self.contract([a1, b2, c2, d1])
    }
}

/// Uniform grid of `points` angles over `[0, π/2]`, endpoints included.
pub fn angle_grid(points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![0.0],
        _ => (0..points)
            .map(|i| FRAC_PI_2 * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{make_ghz, make_theta_state};
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, SQRT_2};

    #[test]
    fn default_operator_has_the_four_terms() {
        let b = build_wyko_operator(&default_settings()).unwrap();
        let terms: Vec<(String, f64)> = b
            .terms()
            .iter()
            .map(|t| (t.label(), t.coefficient()))
            .collect();
        assert_eq!(
            terms,
            vec![
                ("XZZX".to_string(), 1.0),
                ("IZYY".to_string(), 1.0),
                ("IYZY".to_string(), 1.0),
                ("XYYX".to_string(), -1.0),
            ]
        );
        let s = default_settings();
        assert_eq!(s.b[0].vector(), [0.0, 0.0, 1.0]);
        assert_eq!(s.d[1].vector(), [0.0, 1.0, 0.0]);
    }

    #[test]
    fn all_z_settings() {
        let z = [BlochObservable::Z; 2];
        let settings = MeasurementSettings {
            a: z,
            b: z,
            c: z,
            d: z,
        };
        let b = build_wyko_operator(&settings).unwrap();
        let labels: Vec<String> = b.terms().iter().map(PauliString::label).collect();
        assert_eq!(labels, ["ZZZZ", "IZZZ", "IZZZ", "ZZZZ"]);
        let zero = StateVector::basis(4, 0).unwrap();
        assert!((bell_expectation(&zero, &settings).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn expectation_examples() {
        let s = default_settings();
        let chi = make_theta_state(FRAC_PI_4).unwrap();
        assert!((bell_expectation(&chi, &s).unwrap() - 4.0).abs() < 1e-12);
        let psi0 = make_theta_state(0.0).unwrap();
        assert!((bell_expectation(&psi0, &s).unwrap() - 2.0).abs() < 1e-12);
        let ghz = make_ghz(4).unwrap();
        assert!(bell_expectation(&ghz, &s).unwrap().abs() <= 2.0);
        assert!(matches!(
            bell_expectation(&make_ghz(3).unwrap(), &s),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn closed_form_examples() {
        let p = |t1, t2| FamilyParams::new(t1, t2).unwrap();
        assert!((bell_closed(p(FRAC_PI_4, FRAC_PI_4)) - 4.0).abs() < 1e-15);
        assert_eq!(bell_closed(p(0.0, 0.0)), 2.0);
        assert!((bell_closed(p(FRAC_PI_8, FRAC_PI_8)) - (2.0 + SQRT_2)).abs() < 1e-15);
        assert!((bell_theta(FRAC_PI_4).unwrap() - 4.0).abs() < 1e-15);
        assert_eq!(bell_theta(0.0).unwrap(), 2.0);
        assert!((bell_theta(FRAC_PI_8).unwrap() - (2.0 + SQRT_2)).abs() < 1e-15);
        assert!(bell_theta(2.0).is_err());
    }

    #[test]
    fn family_relation_examples() {
        assert_eq!(theta_family_tau48_from_bell(4.0).unwrap(), 1.0);
        assert_eq!(theta_family_tau48_from_bell(2.0).unwrap(), 1.0);
        let min = theta_family_tau48_from_bell(2.0 + SQRT_2).unwrap();
        assert!((min - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(matches!(
            theta_family_tau48_from_bell(1.99),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            theta_family_tau48_from_bell(4.01),
            Err(Error::Domain(_))
        ));
        assert!((theta_for_bell(2.0 + SQRT_2).unwrap() - FRAC_PI_8).abs() < 1e-15);
    }

    #[test]
    fn strict_violation_inside_the_interval_only() {
        assert!(bell_theta(0.0).unwrap() <= CLASSICAL_BOUND);
        assert!((bell_theta(FRAC_PI_2).unwrap() - CLASSICAL_BOUND).abs() < 1e-15);
        for theta in angle_grid(1001).into_iter().skip(1).take(999) {
            assert!(
                bell_theta(theta).unwrap() > CLASSICAL_BOUND,
                "theta = {theta}"
            );
        }
    }

    #[test]
    fn tensor_contraction_matches_operator() {
        let chi = make_theta_state(FRAC_PI_4).unwrap();
        let tensor = CorrelationTensor::new(&chi).unwrap();
        assert!((tensor.wyko_value(&default_settings()) - 4.0).abs() < 1e-12);
        use PauliSymbol::*;
        assert!((tensor.get([X, Z, Z, X]) - 1.0).abs() < 1e-12);
        assert!((tensor.get([I, I, I, I]) - 1.0).abs() < 1e-12);

        let tilted = MeasurementSettings::from_observables(
            [
                (0.3, 1.0),
                (2.0, 0.1),
                (1.2, 4.0),
                (0.7, 2.2),
                (2.9, 5.5),
                (1.0, 1.0),
                (0.4, 3.3),
                (2.5, 0.9),
            ]
            .map(|(p, a)| BlochObservable::from_angles(p, a)),
        );
        let direct = bell_expectation(&chi, &tilted).unwrap();
        assert!((tensor.wyko_value(&tilted) - direct).abs() < 1e-12);
        let flipped = bell_expectation(&chi, &tilted.with_d_negated()).unwrap();
        assert!((flipped + direct).abs() < 1e-12);
    }

    #[test]
    fn record_deviation() {
        let p = FamilyParams::new(0.4, 1.3).unwrap();
        let numeric = ViolationRecord::numeric(p).unwrap();
        assert!(numeric.max_deviation(&ViolationRecord::closed(p)) < 1e-12);
        assert!(numeric.violates());
    }
}
