use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, SQRT_2};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wyko_core::bell::{
    angle_grid, bell_closed, bell_expectation, bell_theta, default_settings,
    theta_family_tau48_from_bell, ALGEBRAIC_BOUND, CLASSICAL_BOUND,
};
use wyko_core::measures::{tau48, tau48_closed, tau48_theta, tau_n, tau_n_closed};
use wyko_core::state::{make_family_state, FamilyParams, StateVector};

const GRID: usize = 50;

fn grid_params() -> impl Iterator<Item = FamilyParams> {
    let angles = angle_grid(GRID);
    let pairs: Vec<(f64, f64)> = angles
        .iter()
        .flat_map(|&t1| angles.iter().map(move |&t2| (t1, t2)))
        .collect();
    pairs
        .into_iter()
        .map(|(t1, t2)| FamilyParams::new(t1, t2).unwrap())
}

#[test]
fn numeric_matches_closed_on_grid() {
    let settings = default_settings();
    for p in grid_params() {
        let psi = make_family_state(p);
        let t4 = tau_n(&psi).unwrap();
        assert!((t4 - tau_n_closed(p)).abs() <= 1e-10, "{p:?}");
        assert!(
            (tau48(&psi).unwrap() - tau48_closed(p)).abs() <= 1e-10,
            "{p:?}"
        );
        assert!(
            (bell_expectation(&psi, &settings).unwrap() - bell_closed(p)).abs() <= 1e-10,
            "{p:?}"
        );
        assert!((0.0..=1.0).contains(&t4));
        assert!((0.0..=1.0).contains(&tau48_closed(p)));
    }
}

#[test]
fn diagonal_identities() {
    for i in 0..1000 {
        let theta = FRAC_PI_2 * i as f64 / 999.0;
        let diag = FamilyParams::diagonal(theta).unwrap();
        let t48 = tau48_theta(theta).unwrap();
        assert!((t48 - tau48_closed(diag)).abs() <= 1e-12);
        let b = bell_theta(theta).unwrap();
        assert!((b - bell_closed(diag)).abs() <= 1e-12);
        assert!((theta_family_tau48_from_bell(b).unwrap() - t48).abs() <= 1e-10);
        assert_eq!(tau_n_closed(diag), 0.0);
    }
    let b_min = bell_theta(FRAC_PI_8).unwrap();
    assert!((b_min - (2.0 + SQRT_2)).abs() < 1e-15);
    assert!((theta_family_tau48_from_bell(b_min).unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-12);
}

#[test]
fn random_states_respect_operator_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let settings = default_settings();
    for _ in 0..1000 {
        let psi = StateVector::random(4, &mut rng).unwrap();
        assert!(bell_expectation(&psi, &settings).unwrap().abs() <= ALGEBRAIC_BOUND + 1e-10);
    }
}

#[test]
fn product_states_respect_classical_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let settings = default_settings();
    for _ in 0..1000 {
        let psi = StateVector::random_product(4, &mut rng).unwrap();
        assert!(bell_expectation(&psi, &settings).unwrap().abs() <= CLASSICAL_BOUND + 1e-9);
    }
}

proptest! {
    #[test]
    fn product_bound_for_any_seed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = StateVector::random_product(4, &mut rng).unwrap();
        prop_assert!(bell_expectation(&psi, &default_settings()).unwrap().abs() <= CLASSICAL_BOUND + 1e-9);
    }

    #[test]
    fn relation_stays_in_band(b in 2.0..=4.0f64) {
        let t = theta_family_tau48_from_bell(b).unwrap();
        prop_assert!(t >= 3f64.sqrt() / 2.0 - 1e-15 && t <= 1.0 + 1e-15);
    }
}
