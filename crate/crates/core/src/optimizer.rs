//! Multi-restart coordinate search over measurement settings maximizing
//! `|⟨B⟩|` for a fixed four-qubit state.
//!
//! Each of the eight Bloch vectors is parameterized by (polar, azimuth), so
//! iterates stay exactly on the sphere. A restart starts from a random point,
//! then repeatedly tries `±step` along each of the 16 angles, keeping any
//! strict improvement; a full pass without improvement halves the step. A
//! restart stops when the step drops below `min_step` or its evaluation
//! budget runs out.
//!
//! Start points come from `ChaCha8Rng::seed_from_u64(seed)` with the stream
//! set to the restart index, polar angle `acos(1 − 2u)` and azimuth `2πu`
//! (uniform on the sphere). Restart `r` therefore depends only on
//! `(seed, r)`, and a run with more restarts extends a run with fewer.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell::{CorrelationTensor, MeasurementSettings, ALGEBRAIC_BOUND};
use crate::pauli::BlochObservable;
use crate::state::StateVector;
use crate::{Error, Execution, Result};

/// Angles for the eight Bloch vectors, ordered A₁ A₂ B₁ B₂ C₁ C₂ D₁ D₂, each
/// as `(polar, azimuth)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SettingsParameterization {
    pub angles: [f64; 16],
}

impl SettingsParameterization {
    /// Folds every pair into `polar ∈ [0, π]`, `azimuth ∈ [0, 2π)` without
    /// changing the vector it describes.
    pub fn canonicalized(&self) -> Self {
        let mut angles = self.angles;
        for pair in angles.chunks_exact_mut(2) {
            let (polar, azimuth) = canonical_pair(pair[0], pair[1]);
            pair[0] = polar;
            pair[1] = azimuth;
        }
        Self { angles }
    }

    pub fn to_settings(&self) -> MeasurementSettings {
        let mut obs = [BlochObservable::Z; 8];
        for (o, pair) in obs.iter_mut().zip(self.angles.chunks_exact(2)) {
            *o = BlochObservable::from_angles(pair[0], pair[1]);
        }
        MeasurementSettings::from_observables(obs)
    }

    fn random<R: Rng>(rng: &mut R) -> Self {
        let mut angles = [0.0; 16];
        for pair in angles.chunks_exact_mut(2) {
            pair[0] = (1.0 - 2.0 * rng.random::<f64>()).acos();
            pair[1] = TAU * rng.random::<f64>();
        }
        Self { angles }
    }
}

fn canonical_pair(polar: f64, azimuth: f64) -> (f64, f64) {
    let mut polar = polar.rem_euclid(TAU);
    let mut azimuth = azimuth;
    if polar > PI {
        polar = TAU - polar;
        azimuth += PI;
    }
    let mut azimuth = azimuth.rem_euclid(TAU);
    if azimuth >= TAU {
        azimuth = 0.0;
    }
    (polar, azimuth)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_evaluations_per_restart: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            initial_step: 0.5,
            min_step: 1e-7,
            max_evaluations_per_restart: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub best_settings: MeasurementSettings,
    /// `⟨B⟩` at `best_settings`; nonnegative, equal to the maximized `|⟨B⟩|`.
    pub best_value: f64,
    pub restarts_used: usize,
    /// Objective evaluations summed over all restarts.
    pub evaluations: usize,
    /// Index of the restart that produced the best value.
    pub best_restart: usize,
}

#[derive(Debug, Clone, Copy)]
struct RestartOutcome {
    params: SettingsParameterization,
    value: f64,
    evaluations: usize,
}

/// Runs `restarts` seeded restarts with the default configuration.
pub fn optimize_settings(
    psi: &StateVector,
    restarts: usize,
    seed: u64,
) -> Result<OptimizationResult> {
    optimize_settings_with(
        psi,
        restarts,
        seed,
        &OptimizerConfig::default(),
        Execution::default(),
    )
}

/// Runs `restarts` seeded restarts. Restarts are independent and may run
/// concurrently; the best is chosen by value with ties going to the lowest
/// restart index, so the result does not depend on `exec`.
pub fn optimize_settings_with(
    psi: &StateVector,
    restarts: usize,
    seed: u64,
    config: &OptimizerConfig,
    exec: Execution,
) -> Result<OptimizationResult> {
    if restarts == 0 {
        return Err(Error::Argument("at least one restart is required".into()));
    }
    if !(config.initial_step > 0.0 && config.min_step > 0.0)
        || config.max_evaluations_per_restart == 0
    {
        return Err(Error::Argument(format!(
            "invalid optimizer configuration {config:?}"
        )));
    }
    let tensor = CorrelationTensor::new(psi)?;
    let outcomes = exec.map_indices(restarts, |r| run_restart(&tensor, seed, r, config));

    let (best_restart, best) = outcomes
        .iter()
        .enumerate()
        .fold(None::<(usize, &RestartOutcome)>, |acc, (r, o)| match acc {
            Some((_, b)) if b.value >= o.value => acc,
            _ => Some((r, o)),
        })
        .expect("restarts >= 1");

    let mut best_settings = best.params.canonicalized().to_settings();
    let mut best_value = tensor.wyko_value(&best_settings);
    if best_value < 0.0 {
        best_settings = best_settings.with_d_negated();
        best_value = -best_value;
    }
    if best_value > ALGEBRAIC_BOUND + 1e-9 {
        return Err(Error::Consistency(format!(
            "optimized Bell value {best_value} exceeds the algebraic bound"
        )));
    }
    Ok(OptimizationResult {
        best_settings,
        best_value,
        restarts_used: restarts,
        evaluations: outcomes.iter().map(|o| o.evaluations).sum(),
        best_restart,
    })
}

fn run_restart(
    tensor: &CorrelationTensor,
    seed: u64,
    restart: usize,
    config: &OptimizerConfig,
) -> RestartOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    let mut params = SettingsParameterization::random(&mut rng);

    let objective = |p: &SettingsParameterization| tensor.wyko_value(&p.to_settings()).abs();
    let mut value = objective(&params);
    let mut evaluations = 1;
    let mut step = config.initial_step;

    'search: while step >= config.min_step {
        let mut improved = false;
        for coord in 0..16 {
            for direction in [1.0, -1.0] {
                if evaluations >= config.max_evaluations_per_restart {
                    break 'search;
                }
                let mut trial = params;
                trial.angles[coord] += direction * step;
                let trial_value = objective(&trial);
                evaluations += 1;
                if trial_value > value {
                    params = trial;
                    value = trial_value;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    RestartOutcome {
        params,
        value,
        evaluations,
    }
}
