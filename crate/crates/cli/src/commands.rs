use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use wyko_core::bell::{bell_closed, bell_expectation, default_settings, MeasurementSettings};
use wyko_core::measures::{tau48, tau48_closed, tau_n, tau_n_closed};
use wyko_core::optimizer::optimize_settings;
use wyko_core::state::{ket_label, make_family_state, make_theta_state, FamilyParams};
use wyko_core::sweep::{self, SweepMode};
use wyko_core::{Execution, TOLERANCE};

use crate::verify;
use crate::{io_error, CliError};

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub grid_size: usize,
    pub mode: SweepMode,
    /// `None` writes to standard output.
    pub output: Option<PathBuf>,
}

pub fn sweep(config: &SweepConfig) -> Result<(), CliError> {
    if config.grid_size < 2 {
        return Err(CliError::Argument(format!(
            "--grid must be at least 2, got {}",
            config.grid_size
        )));
    }
    // Compute before touching the output so a bad config leaves no file behind.
    let exec = Execution::default();
    let rendered = match config.mode {
        SweepMode::Family2d => {
            let rows = sweep::family2d(config.grid_size, exec)?;
            render(|w| sweep::write_family2d_csv(&rows, w))
        }
        SweepMode::Theta1d => {
            let rows = sweep::theta1d(config.grid_size, exec)?;
            render(|w| sweep::write_theta1d_csv(&rows, w))
        }
    };
    match &config.output {
        None => io::stdout()
            .lock()
            .write_all(&rendered)
            .map_err(io_error("writing to standard output")),
        Some(path) => {
            let context = format!("writing {}", path.display());
            let file = File::create(path).map_err(io_error(context.clone()))?;
            let mut w = BufWriter::new(file);
            w.write_all(&rendered)
                .and_then(|_| w.flush())
                .map_err(io_error(context))
        }
    }
}

fn render(write: impl FnOnce(&mut Vec<u8>) -> io::Result<()>) -> Vec<u8> {
    let mut buf = Vec::new();
    write(&mut buf).expect("writing to a Vec cannot fail");
    buf
}

pub fn verify<W: Write>(out: &mut W) -> Result<(), CliError> {
    let checks = verify::run_all();
    verify::write_report(&checks, out).map_err(io_error("writing report"))?;
    match checks.iter().filter(|c| !c.passed()).count() {
        0 => Ok(()),
        failed => Err(CliError::VerificationFailed(failed)),
    }
}

/// Symbolic amplitude of each family ket, for display.
const AMPLITUDE_FORMS: [(&str, &str); 8] = [
    ("0000", "+cos(t1)/2"),
    ("1111", "+cos(t1)/2"),
    ("0011", "-sin(t1)/2"),
    ("1100", "+sin(t1)/2"),
    ("0101", "-cos(t2)/2"),
    ("1010", "+cos(t2)/2"),
    ("0110", "+sin(t2)/2"),
    ("1001", "+sin(t2)/2"),
];

fn closed_amplitude(ket: &str, theta1: f64, theta2: f64) -> f64 {
    match ket {
        "0000" | "1111" => theta1.cos() / 2.0,
        "0011" => -theta1.sin() / 2.0,
        "1100" => theta1.sin() / 2.0,
        "0101" => -theta2.cos() / 2.0,
        "1010" => theta2.cos() / 2.0,
        _ => theta2.sin() / 2.0,
    }
}

pub fn state<W: Write>(theta1: f64, theta2: f64, out: &mut W) -> Result<(), CliError> {
    let params = FamilyParams::new(theta1, theta2)?;
    let psi = make_family_state(params);
    let numeric = [
        tau_n(&psi)?,
        tau48(&psi)?,
        bell_expectation(&psi, &default_settings())?,
    ];
    let closed = [
        tau_n_closed(params),
        tau48_closed(params),
        bell_closed(params),
    ];

    let mut report = || -> io::Result<()> {
        writeln!(
            out,
            "|psi(t1, t2)> with t1 = {theta1:.12}, t2 = {theta2:.12} (radians)"
        )?;
        writeln!(out)?;
        writeln!(
            out,
            "{:<8} {:>16} {:>16}   form",
            "ket", "numeric", "closed"
        )?;
        for (index, a) in psi.amplitudes().iter().enumerate() {
            if a.norm() <= TOLERANCE {
                continue;
            }
            let ket = ket_label(index, 4);
            let form = AMPLITUDE_FORMS
                .iter()
                .find(|(k, _)| *k == ket)
                .map_or("?", |(_, f)| f);
            writeln!(
                out,
                "|{ket}>  {:>16.12} {:>16.12}   {form}",
                a.re,
                closed_amplitude(&ket, theta1, theta2)
            )?;
        }
        writeln!(out)?;
        writeln!(out, "{:<8} {:>16} {:>16}", "quantity", "numeric", "closed")?;
        for (name, (n, c)) in ["tau4", "tau48", "<B>"]
            .iter()
            .zip(numeric.iter().zip(&closed))
        {
            writeln!(out, "{name:<8} {n:>16.12} {c:>16.12}")?;
        }
        Ok(())
    };
    report().map_err(io_error("writing report"))
}

fn write_settings<W: Write>(out: &mut W, settings: &MeasurementSettings) -> io::Result<()> {
    const NAMES: [&str; 8] = ["A1", "A2", "B1", "B2", "C1", "C2", "D1", "D2"];
    for (name, obs) in NAMES.iter().zip(settings.observables()) {
        let [x, y, z] = obs.vector();
        let note = if *name == "A2" { "  (not in B)" } else { "" };
        writeln!(out, "  {name} = ({x:+.9}, {y:+.9}, {z:+.9}){note}")?;
    }
    Ok(())
}

pub fn optimize<W: Write>(
    theta: f64,
    restarts: usize,
    seed: u64,
    out: &mut W,
) -> Result<(), CliError> {
    let psi = make_theta_state(theta)?;
    if restarts == 0 {
        return Err(CliError::Argument("--restarts must be at least 1".into()));
    }
    let result = optimize_settings(&psi, restarts, seed)?;
    let at_default = bell_expectation(&psi, &default_settings())?;
    let mut report = || -> io::Result<()> {
        writeln!(out, "|psi(theta)> with theta = {theta:.12} (radians)")?;
        writeln!(
            out,
            "restarts = {restarts}, seed = {seed}, evaluations = {}",
            result.evaluations
        )?;
        writeln!(
            out,
            "best <B>            = {:.12} (restart {})",
            result.best_value, result.best_restart
        )?;
        writeln!(out, "default-settings <B> = {at_default:.12}")?;
        writeln!(
            out,
            "gap                 = {:.12}",
            result.best_value - at_default
        )?;
        writeln!(out, "best settings (Bloch vectors):")?;
        write_settings(out, &result.best_settings)
    };
    report().map_err(io_error("writing report"))
}
