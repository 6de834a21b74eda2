//! The cross-check suite behind `wyko verify`.
//!
//! Every check reduces to a maximum observed error compared against a fixed
//! tolerance. Bound checks report the excess over the bound (zero when the
//! bound holds). Dense references come from `wyko-oracle`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, TAU};
use std::io::{self, Write};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wyko_core::bell::{
    angle_grid, bell_closed, bell_expectation, bell_theta, build_wyko_operator, default_settings,
    theta_family_tau48_from_bell, MeasurementSettings, ALGEBRAIC_BOUND, CLASSICAL_BOUND,
};
use wyko_core::measures::{tau48, tau48_closed, tau48_theta, tau_n, tau_n_closed};
use wyko_core::pauli::{
    expectation, string_expectation, BlochObservable, PauliString, PauliSum, PauliSymbol,
};
use wyko_core::state::{
    inner_product, make_family_state, make_ghz, make_theta_state, FamilyParams, StateVector,
    FAMILY_SUPPORT,
};
use wyko_core::Execution;
use wyko_oracle as oracle;

const GRID: usize = 50;
const DIAGONAL_SAMPLES: usize = 1000;
const RANDOM_STATES: usize = 200;
const BOUND_SAMPLES: usize = 1000;

#[derive(Debug, Clone)]
pub struct Check {
    pub module: &'static str,
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    fn new(module: &'static str, name: &'static str, max_error: f64, tolerance: f64) -> Self {
        Self {
            module,
            name,
            max_error,
            tolerance,
            detail: String::new(),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// NaN errors fail.
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |acc, v| {
        if v.is_nan() || acc.is_nan() {
            f64::NAN
        } else {
            acc.max(v)
        }
    })
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    max_of(a.iter().zip(b).map(|(x, y)| (x - y).norm()))
}

fn grid() -> Vec<FamilyParams> {
    let angles = angle_grid(GRID);
    angles
        .iter()
        .flat_map(|&t1| {
            angles
                .iter()
                .map(move |&t2| FamilyParams::new(t1, t2).unwrap())
        })
        .collect()
}

fn diagonal() -> Vec<f64> {
    angle_grid(DIAGONAL_SAMPLES)
}

fn random_states(seed: u64, n: usize, count: usize) -> Vec<StateVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| StateVector::random(n, &mut rng).unwrap())
        .collect()
}

/// Runs every check, in a fixed order.
pub fn run_all() -> Vec<Check> {
    let mut checks = Vec::new();
    checks.extend(state_checks());
    checks.extend(pauli_checks());
    checks.extend(measure_checks());
    checks.extend(bell_checks());
    checks
}

pub fn write_report<W: Write>(checks: &[Check], out: &mut W) -> io::Result<()> {
    for c in checks {
        write!(
            out,
            "{}  {:<8} {:<52} max_err={:.3e}  tol={:.0e}",
            if c.passed() { "PASS" } else { "FAIL" },
            c.module,
            c.name,
            c.max_error,
            c.tolerance
        )?;
        if !c.detail.is_empty() {
            write!(out, "  [{}]", c.detail)?;
        }
        writeln!(out)?;
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    writeln!(
        out,
        "{} checks, {} passed, {} failed",
        checks.len(),
        checks.len() - failed,
        failed
    )
}

fn state_checks() -> Vec<Check> {
    let grid = grid();
    let norm = max_of(grid.iter().map(|&p| {
        let s = make_family_state(p);
        (s.amplitudes().iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs()
    }));
    let diagonal_identity = max_of(diagonal().into_iter().map(|t| {
        let a = make_theta_state(t).unwrap();
        let b = make_family_state(FamilyParams::new(t, t).unwrap());
        let identical = a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits());
        if identical {
            0.0
        } else {
            max_diff(a.amplitudes(), b.amplitudes()).max(f64::MIN_POSITIVE)
        }
    }));
    // Signs: 0000,1111,1100,1010,0110,1001 nonnegative; 0011,0101 nonpositive.
    const SIGNS: [f64; 8] = [1.0, 1.0, -1.0, 1.0, -1.0, 1.0, 1.0, 1.0];
    let support = max_of(grid.iter().map(|&p| {
        let s = make_family_state(p);
        let off = max_of(
            s.amplitudes()
                .iter()
                .enumerate()
                .filter(|(i, _)| !FAMILY_SUPPORT.contains(i))
                .map(|(_, a)| a.norm()),
        );
        let wrong_sign = max_of(FAMILY_SUPPORT.iter().zip(SIGNS).map(|(&i, sign)| {
            (-sign * s.amplitudes()[i].re).max(0.0) + s.amplitudes()[i].im.abs()
        }));
        off.max(wrong_sign)
    }));
    let states = random_states(11, 4, RANDOM_STATES + 1);
    let symmetry = max_of(states.windows(2).map(|w| {
        let ab = inner_product(&w[0], &w[1]).unwrap();
        let ba = inner_product(&w[1], &w[0]).unwrap();
        (ab - ba.conj()).norm()
    }));
    vec![
        Check::new(
            "qstate",
            "family states normalized (50x50 grid)",
            norm,
            1e-12,
        ),
        Check::new(
            "qstate",
            "theta state bitwise equals diagonal family state",
            diagonal_identity,
            0.0,
        ),
        Check::new(
            "qstate",
            "support and signs of family amplitudes",
            support,
            0.0,
        ),
        Check::new(
            "qstate",
            "<a|b> = conj(<b|a>) on random states",
            symmetry,
            1e-12,
        ),
    ]
}

fn all_four_qubit_strings() -> Vec<PauliString> {
    (0..256usize)
        .map(|index| {
            let symbols = (0..4)
                .map(|q| PauliSymbol::ALL[(index >> (2 * (3 - q))) & 3])
                .collect();
            PauliString::new(symbols, 1.0).unwrap()
        })
        .collect()
}

fn pauli_checks() -> Vec<Check> {
    let states = random_states(23, 4, RANDOM_STATES);
    let strings = all_four_qubit_strings();
    let dense: Vec<oracle::Matrix> = strings
        .iter()
        .map(|p| oracle::pauli_string_matrix(&p.label(), 1.0))
        .collect();

    let exec = Execution::default();
    let kernel = max_of(exec.map_indices(states.len(), |k| {
        let psi = &states[k];
        max_of(strings.iter().zip(&dense).map(|(p, m)| {
            max_diff(
                &p.apply(psi.amplitudes()).unwrap(),
                &oracle::apply(m, psi.amplitudes()),
            )
        }))
    }));

    let wyko = build_wyko_operator(&default_settings()).unwrap();
    let wyko_terms = max_of(wyko.terms().iter().flat_map(|t| {
        let m = oracle::pauli_string_matrix(&t.label(), t.coefficient());
        states.iter().map(move |psi| {
            max_diff(
                &t.apply(psi.amplitudes()).unwrap(),
                &oracle::apply(&m, psi.amplitudes()),
            )
        })
    }));

    let involution = max_of(states.iter().flat_map(|psi| {
        strings.iter().step_by(7).map(move |p| {
            let twice = p.apply(&p.apply(psi.amplitudes()).unwrap()).unwrap();
            max_diff(&twice, psi.amplitudes())
        })
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let sums: Vec<PauliSum> = (0..50)
        .map(|_| {
            let terms = (0..8)
                .map(|_| {
                    let p = &strings[rng.random_range(0..256)];
                    PauliString::new(p.symbols().to_vec(), rng.random_range(-1.0..1.0)).unwrap()
                })
                .collect();
            PauliSum::new(terms).unwrap()
        })
        .collect();
    let imaginary = max_of(sums.iter().flat_map(|op| {
        states.iter().take(40).map(move |psi| {
            op.terms()
                .iter()
                .map(|t| string_expectation(t, psi).unwrap())
                .sum::<Complex64>()
                .im
                .abs()
        })
    }));
    let phase = max_of(sums.iter().zip(&states).map(|(op, psi)| {
        let phi = rng.random_range(0.0..TAU);
        (expectation(op, psi).unwrap() - expectation(op, &psi.with_global_phase(phi)).unwrap())
            .abs()
    }));

    vec![
        Check::new(
            "pauli",
            "matrix-free vs dense, all 256 strings x 200 states",
            kernel,
            1e-12,
        ),
        Check::new(
            "pauli",
            "matrix-free vs dense, the four WYKO terms",
            wyko_terms,
            1e-12,
        ),
        Check::new(
            "pauli",
            "Pauli involution P(P psi) = psi",
            involution,
            1e-12,
        ),
        Check::new(
            "pauli",
            "expectation of Hermitian sums is real",
            imaginary,
            1e-10,
        ),
        Check::new(
            "pauli",
            "expectation invariant under global phase",
            phase,
            1e-12,
        ),
    ]
}

fn measure_checks() -> Vec<Check> {
    let grid = grid();
    let exec = Execution::default();
    let pairs = exec.map_indices(grid.len(), |k| {
        let p = grid[k];
        let psi = make_family_state(p);
        (
            (tau_n(&psi).unwrap() - tau_n_closed(p)).abs(),
            (tau48(&psi).unwrap() - tau48_closed(p)).abs(),
            tau_n(&psi).unwrap(),
            tau48_closed(p),
        )
    });
    let tau4_err = max_of(pairs.iter().map(|p| p.0));
    let tau48_err = max_of(pairs.iter().map(|p| p.1));
    let out_of_unit = max_of(
        pairs
            .iter()
            .flat_map(|p| [p.2, p.3])
            .map(|v| (-v).max(v - 1.0).max(0.0)),
    );
    let diagonal_tau4 = max_of(
        diagonal()
            .into_iter()
            .map(|t| tau_n(&make_theta_state(t).unwrap()).unwrap()),
    );
    let diag_identity = max_of(diagonal().into_iter().map(|t| {
        (tau48_theta(t).unwrap() - tau48_closed(FamilyParams::diagonal(t).unwrap())).abs()
    }));
    let states = random_states(37, 4, RANDOM_STATES);
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let phase = max_of(states.iter().map(|psi| {
        let phi = rng.random_range(0.0..TAU);
        (tau_n(psi).unwrap() - tau_n(&psi.with_global_phase(phi)).unwrap()).abs()
    }));
    let oracle_tau = max_of(
        states
            .iter()
            .map(|psi| (tau_n(psi).unwrap() - oracle::tau_n(psi.amplitudes())).abs()),
    );

    // Extremes of the diagonal τ₍₄,₈₎ on a grid containing π/8, π/4, 3π/8.
    let fine = angle_grid(8001);
    let values: Vec<f64> = fine.iter().map(|&t| tau48_theta(t).unwrap()).collect();
    let (argmin, &min) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    let step = FRAC_PI_2 / 8000.0;
    let min_location = (fine[argmin] - FRAC_PI_8)
        .abs()
        .min((fine[argmin] - 3.0 * FRAC_PI_8).abs());
    let extremes = max_of([
        (min - 3f64.sqrt() / 2.0).abs(),
        (tau48_theta(FRAC_PI_8).unwrap() - 3f64.sqrt() / 2.0).abs(),
        (tau48_theta(3.0 * FRAC_PI_8).unwrap() - 3f64.sqrt() / 2.0).abs(),
        (max_of(values.iter().copied()) - 1.0).abs(),
        (tau48_theta(0.0).unwrap() - 1.0).abs(),
        (tau48_theta(FRAC_PI_4).unwrap() - 1.0).abs(),
        (tau48_theta(FRAC_PI_2).unwrap() - 1.0).abs(),
        if min_location <= step {
            0.0
        } else {
            min_location
        },
    ]);

    vec![
        Check::new(
            "measures",
            "tau4 numeric vs closed form (50x50 grid)",
            tau4_err,
            1e-10,
        ),
        Check::new(
            "measures",
            "tau4 vanishes on the diagonal",
            diagonal_tau4,
            1e-12,
        ),
        Check::new(
            "measures",
            "tau4 matches dense sigma_y oracle",
            oracle_tau,
            1e-12,
        ),
        Check::new(
            "measures",
            "tau48 amplitude form vs closed form (50x50 grid)",
            tau48_err,
            1e-10,
        ),
        Check::new(
            "measures",
            "tau48_theta vs tau48_closed on diagonal",
            diag_identity,
            1e-12,
        ),
        Check::new(
            "measures",
            "tau_n invariant under global phase",
            phase,
            1e-12,
        ),
        Check::new("measures", "tau4 and tau48 within [0, 1]", out_of_unit, 0.0),
        Check::new(
            "measures",
            "diagonal tau48 min sqrt(3)/2 at pi/8, 3pi/8; max 1",
            extremes,
            1e-12,
        )
        .with_detail(format!("min {min:.15} at theta {:.6}", fine[argmin])),
    ]
}

fn bell_checks() -> Vec<Check> {
    let settings = default_settings();
    let grid = grid();
    let exec = Execution::default();
    let closed = max_of(exec.map_indices(grid.len(), |k| {
        let p = grid[k];
        (bell_expectation(&make_family_state(p), &settings).unwrap() - bell_closed(p)).abs()
    }));
    let diag =
        max_of(diagonal().into_iter().map(|t| {
            (bell_theta(t).unwrap() - bell_closed(FamilyParams::diagonal(t).unwrap())).abs()
        }));
    let relation = max_of(diagonal().into_iter().map(|t| {
        (theta_family_tau48_from_bell(bell_theta(t).unwrap()).unwrap() - tau48_theta(t).unwrap())
            .abs()
    }));
    let relation_points = max_of([
        (theta_family_tau48_from_bell(2.0).unwrap() - 1.0).abs(),
        (theta_family_tau48_from_bell(4.0).unwrap() - 1.0).abs(),
        (theta_family_tau48_from_bell(bell_theta(FRAC_PI_8).unwrap()).unwrap() - 3f64.sqrt() / 2.0)
            .abs(),
    ]);

    let chi = make_theta_state(FRAC_PI_4).unwrap();
    let chi_value = bell_expectation(&chi, &settings).unwrap();

    let dense_default = oracle::wyko_matrix(settings.observables().map(|o| o.vector()));
    let ghz = make_ghz(4).unwrap();
    let ghz_value = bell_expectation(&ghz, &settings).unwrap();
    let ghz_dense = oracle::expectation(&dense_default, ghz.amplitudes()).re;

    let random = random_states(43, 4, BOUND_SAMPLES);
    let norm_excess = max_of(exec.map_indices(random.len(), |k| {
        (bell_expectation(&random[k], &settings).unwrap().abs() - ALGEBRAIC_BOUND).max(0.0)
    }));
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let products: Vec<StateVector> = (0..BOUND_SAMPLES)
        .map(|_| StateVector::random_product(4, &mut rng).unwrap())
        .collect();
    let product_values = exec.map_indices(products.len(), |k| {
        bell_expectation(&products[k], &settings).unwrap().abs()
    });
    let product_excess = max_of(
        product_values
            .iter()
            .map(|v| (v - CLASSICAL_BOUND).max(0.0)),
    );

    let interior_min = diagonal()[1..DIAGONAL_SAMPLES - 1]
        .iter()
        .map(|&t| bell_theta(t).unwrap())
        .fold(f64::INFINITY, f64::min);
    // Positive margin above 2 means strict violation; report its absence as error.
    let strict = if interior_min > CLASSICAL_BOUND {
        0.0
    } else {
        CLASSICAL_BOUND - interior_min + f64::MIN_POSITIVE
    };

    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let dense_settings = max_of((0..100).map(|_| {
        let s = MeasurementSettings::from_observables(std::array::from_fn(|_| {
            BlochObservable::from_angles(
                rng.random_range(0.0..std::f64::consts::PI),
                rng.random_range(0.0..TAU),
            )
        }));
        let psi = StateVector::random(4, &mut rng).unwrap();
        let m = oracle::wyko_matrix(s.observables().map(|o| o.vector()));
        (bell_expectation(&psi, &s).unwrap() - oracle::expectation(&m, psi.amplitudes()).re).abs()
    }));

    vec![
        Check::new("bell", "<chi|B|chi> = 4", (chi_value - 4.0).abs(), 1e-12)
            .with_detail(format!("value {chi_value:.15}")),
        Check::new(
            "bell",
            "<B> numeric vs closed form (50x50 grid)",
            closed,
            1e-10,
        ),
        Check::new("bell", "bell_theta vs bell_closed on diagonal", diag, 1e-12),
        Check::new(
            "bell",
            "tau48 from violation = tau48_theta (1000 samples)",
            relation,
            1e-10,
        ),
        Check::new(
            "bell",
            "relation endpoints f(2)=f(4)=1, f(2+sqrt2)=sqrt3/2",
            relation_points,
            1e-12,
        ),
        Check::new(
            "bell",
            "GHZ4 does not violate |<B>| <= 2",
            (ghz_value.abs() - CLASSICAL_BOUND).max(0.0),
            0.0,
        )
        .with_detail(format!("value {ghz_value:.15}, dense {ghz_dense:.15}")),
        Check::new(
            "bell",
            "GHZ4 value matches dense oracle",
            (ghz_value - ghz_dense).abs(),
            1e-12,
        ),
        Check::new(
            "bell",
            "|<B>| <= 4 on 1000 random states",
            norm_excess,
            1e-10,
        ),
        Check::new(
            "bell",
            "|<B>| <= 2 on 1000 random product states",
            product_excess,
            1e-9,
        )
        .with_detail(format!(
            "largest {:.12}",
            max_of(product_values.iter().copied())
        )),
        Check::new(
            "bell",
            "strict violation for theta in (0, pi/2)",
            strict,
            0.0,
        )
        .with_detail(format!("interior min {interior_min:.12}")),
        Check::new(
            "bell",
            "<B> vs dense operator, random settings",
            dense_settings,
            1e-11,
        ),
    ]
}
