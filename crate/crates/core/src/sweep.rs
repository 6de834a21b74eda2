//! Grid sweeps over the family and their CSV encoding.
//!
//! CSV contract: one header row, `,` separators, `\n` terminators, every real
//! printed fixed-point with 12 decimals, and the consistency flag printed as
//! `1` or `0`. Rows follow grid order (θ₁ outer, θ₂ inner for the 2-D sweep)
//! whatever [`Execution`] computed them.

use std::io::{self, Write};

use crate::bell::{
    angle_grid, bell_expectation, bell_theta, default_settings, theta_family_tau48_from_bell,
    ViolationRecord,
};
use crate::measures::{tau48, tau48_theta, tau_n};
use crate::state::{make_theta_state, FamilyParams};
use crate::{Error, Execution, Result};

/// Numeric and closed-form values must agree this closely for a row to be
/// flagged consistent.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-10;

pub const FAMILY2D_HEADER: &str = "theta1,theta2,tau4,tau48,bell,consistent";
pub const THETA1D_HEADER: &str = "theta,tau4,tau48,bell,tau_from_violation,consistent";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepMode {
    Family2d,
    Theta1d,
}

impl SweepMode {
    pub fn header(self) -> &'static str {
        match self {
            SweepMode::Family2d => FAMILY2D_HEADER,
            SweepMode::Theta1d => THETA1D_HEADER,
        }
    }
}

/// One point of the 2-D sweep. The printed values are the state-vector ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub numeric: ViolationRecord,
    pub closed: ViolationRecord,
    pub max_deviation: f64,
}

impl SweepRow {
    pub fn compute(params: FamilyParams) -> Result<Self> {
        let numeric = ViolationRecord::numeric(params)?;
        let closed = ViolationRecord::closed(params);
        Ok(Self {
            max_deviation: numeric.max_deviation(&closed),
            numeric,
            closed,
        })
    }

    pub fn consistent(&self) -> bool {
        self.max_deviation <= CONSISTENCY_TOLERANCE
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        let r = &self.numeric;
        writeln!(
            w,
            "{},{},{},{},{},{}",
            fixed(r.theta1),
            fixed(r.theta2),
            fixed(r.tau4),
            fixed(r.tau48),
            fixed(r.bell_value),
            u8::from(self.consistent())
        )
    }
}

/// One point of the diagonal sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaRow {
    pub theta: f64,
    pub tau4: f64,
    pub tau48: f64,
    pub bell: f64,
    /// τ₍₄,₈₎ recovered from the closed-form Bell value.
    pub tau_from_violation: f64,
    pub max_deviation: f64,
}

impl ThetaRow {
    pub fn compute(theta: f64) -> Result<Self> {
        let psi = make_theta_state(theta)?;
        let tau4 = tau_n(&psi)?;
        let tau48_numeric = tau48(&psi)?;
        let bell = bell_expectation(&psi, &default_settings())?;

        let tau48_exact = tau48_theta(theta)?;
        let bell_exact = bell_theta(theta)?;
        let tau_from_violation = theta_family_tau48_from_bell(bell_exact)?;
        let max_deviation = [
            tau4,
            tau48_numeric - tau48_exact,
            bell - bell_exact,
            tau_from_violation - tau48_exact,
        ]
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max);
        Ok(Self {
            theta,
            tau4,
            tau48: tau48_numeric,
            bell,
            tau_from_violation,
            max_deviation,
        })
    }

    pub fn consistent(&self) -> bool {
        self.max_deviation <= CONSISTENCY_TOLERANCE
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            fixed(self.theta),
            fixed(self.tau4),
            fixed(self.tau48),
            fixed(self.bell),
            fixed(self.tau_from_violation),
            u8::from(self.consistent())
        )
    }
}

fn check_grid(grid_size: usize) -> Result<()> {
    if grid_size < 2 {
        return Err(Error::Argument(format!(
            "grid size must be at least 2, got {grid_size}"
        )));
    }
    Ok(())
}

/// `grid_size × grid_size` points over `[0, π/2]²`, θ₁ outer.
pub fn family2d(grid_size: usize, exec: Execution) -> Result<Vec<SweepRow>> {
    check_grid(grid_size)?;
    let angles = angle_grid(grid_size);
    exec.try_map_indices(grid_size * grid_size, |k| {
        let params = FamilyParams::new(angles[k / grid_size], angles[k % grid_size])?;
        SweepRow::compute(params)
    })
}

/// `grid_size` points over `[0, π/2]`, ascending.
pub fn theta1d(grid_size: usize, exec: Execution) -> Result<Vec<ThetaRow>> {
    check_grid(grid_size)?;
    let angles = angle_grid(grid_size);
    exec.try_map_indices(grid_size, |k| ThetaRow::compute(angles[k]))
}

pub fn write_family2d_csv<W: Write>(rows: &[SweepRow], w: &mut W) -> io::Result<()> {
    writeln!(w, "{FAMILY2D_HEADER}")?;
    rows.iter().try_for_each(|r| r.write_csv(w))
}

pub fn write_theta1d_csv<W: Write>(rows: &[ThetaRow], w: &mut W) -> io::Result<()> {
    writeln!(w, "{THETA1D_HEADER}")?;
    rows.iter().try_for_each(|r| r.write_csv(w))
}

/// Fixed-point with 12 decimals. Values that round to zero print as
/// `0.000000000000`, never with a minus sign.
pub fn fixed(x: f64) -> String {
    let s = format!("{x:.12}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}
