//! Energy sweeps of the symmetric three-lead ring and their CSV form.

use std::f64::consts::PI;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::observables::{closed_form_t21_p21z, Observables, SymmetricDevice};
use crate::ring::{resonances_in_range, Resonance, RingParams};
use crate::scattering::scattering_matrix;
use crate::spin::Axis;

/// First energy offset tried when a sample sits on a ring resonance.
pub const NUDGE: f64 = 1e-9;
/// The nudge doubles at most this many times before the sample is abandoned.
const MAX_NUDGES: u32 = 24;

/// `xi = (p/q)·pi` with `0 < p/q < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XiFraction {
    pub p: u32,
    pub q: u32,
}

impl XiFraction {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if q == 0 || p == 0 || p >= q {
            return Err(Error::InvalidDevice(format!(
                "xi = {p}/{q} pi must satisfy 0 < p/q < 1"
            )));
        }
        Ok(XiFraction { p, q })
    }

    pub fn radians(&self) -> f64 {
        f64::from(self.p) * PI / f64::from(self.q)
    }
}

impl FromStr for XiFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidDevice(format!("expected <p>/<q>, got {s:?}"));
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let p = p.trim().parse().map_err(|_| bad())?;
        let q = q.trim().parse().map_err(|_| bad())?;
        XiFraction::new(p, q)
    }
}

impl fmt::Display for XiFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Generic,
    ClosedForm,
    Both,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(Engine::Generic),
            "closed" | "closed_form" => Ok(Engine::ClosedForm),
            "both" => Ok(Engine::Both),
            other => Err(Error::InvalidDevice(format!(
                "unknown engine {other:?} (expected generic, closed or both)"
            ))),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Generic => "generic",
            Engine::ClosedForm => "closed",
            Engine::Both => "both",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub alpha: f64,
    pub xi: XiFraction,
    pub beta: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub samples: usize,
    pub engine: Engine,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        RingParams::new(self.alpha)?;
        if !(self.lambda_min > 0.0)
            || !(self.lambda_min < self.lambda_max)
            || !self.lambda_max.is_finite()
        {
            return Err(Error::InvalidDevice(format!(
                "energy range {}:{} must satisfy 0 < min < max",
                self.lambda_min, self.lambda_max
            )));
        }
        if self.samples < 2 {
            return Err(Error::InvalidDevice(format!(
                "need at least 2 samples, got {}",
                self.samples
            )));
        }
        if self.engine != Engine::Generic && self.beta != 1.0 {
            return Err(Error::InvalidDevice(
                "the closed-form engine is only defined for beta = 1".into(),
            ));
        }
        SymmetricDevice::new(self.xi.radians(), self.alpha, self.beta)?;
        Ok(())
    }

    pub fn device(&self) -> SymmetricDevice {
        SymmetricDevice {
            xi: self.xi.radians(),
            alpha: self.alpha,
            beta: self.beta,
        }
    }

    /// Uniform grid point `i`; the last point is exactly `lambda_max`.
    pub fn grid(&self, i: usize) -> f64 {
        if i + 1 == self.samples {
            return self.lambda_max;
        }
        let t = i as f64 / (self.samples - 1) as f64;
        self.lambda_min + (self.lambda_max - self.lambda_min) * t
    }
}

/// Values from the scattering-matrix route, incident lead 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericValues {
    pub t11: f64,
    pub t21: f64,
    pub t31: f64,
    pub p21: [f64; 3],
    pub p31: [f64; 3],
}

impl GenericValues {
    fn from_observables(o: &Observables) -> Self {
        let pol = |i| Axis::ALL.map(|a| o.p(i, 0, a));
        GenericValues {
            t11: o.t(0, 0),
            t21: o.t(1, 0),
            t31: o.t(2, 0),
            p21: pol(1),
            p31: pol(2),
        }
    }

    /// `T11 + T21 + T31`.
    pub fn flux(&self) -> f64 {
        self.t11 + self.t21 + self.t31
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    /// Grid energy before any nudge.
    pub grid_lambda: f64,
    /// Energy at which the row was evaluated.
    pub lambda: f64,
    pub k: f64,
    pub generic: Option<GenericValues>,
    pub closed: Option<(f64, f64)>,
    pub nudged: bool,
}

impl SpectrumPoint {
    /// `(|ΔT21|, |ΔP21,z|)` when both engines ran.
    pub fn engine_gap(&self) -> Option<(f64, f64)> {
        let g = self.generic?;
        let (t, p) = self.closed?;
        Some(((g.t21 - t).abs(), (g.p21[2] - p).abs()))
    }
}

fn sample(spec: &SweepSpec, i: usize) -> Result<SpectrumPoint> {
    let grid_lambda = spec.grid(i);
    let mut lambda = grid_lambda;
    let mut nudged = false;
    let mut generic = None;

    if spec.engine != Engine::ClosedForm {
        let cfg = spec.device().config();
        let mut offset = NUDGE;
        let mut attempt = 0;
        loop {
            match scattering_matrix(&cfg, lambda) {
                Ok(s) => {
                    generic = Some(GenericValues::from_observables(
                        &Observables::from_scattering(&s),
                    ));
                    break;
                }
                Err(Error::ResonanceProximity { .. }) if attempt < MAX_NUDGES => {
                    lambda = grid_lambda + offset;
                    offset *= 2.0;
                    attempt += 1;
                    nudged = true;
                }
                Err(e) => return Err(e),
            }
        }
    }

    let closed = if spec.engine != Engine::Generic {
        let cf = closed_form_t21_p21z(lambda, spec.xi.radians(), spec.alpha)?;
        Some((cf.t21, cf.p21z))
    } else {
        None
    };

    Ok(SpectrumPoint {
        grid_lambda,
        lambda,
        k: lambda.sqrt(),
        generic,
        closed,
        nudged,
    })
}

/// Evaluates the sweep across the current rayon pool; rows come back in
/// grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SpectrumPoint>> {
    spec.validate()?;
    (0..spec.samples)
        .into_par_iter()
        .map(|i| sample(spec, i))
        .collect()
}

/// Single-threaded evaluation of the same grid.
pub fn run_sweep_serial(spec: &SweepSpec) -> Result<Vec<SpectrumPoint>> {
    spec.validate()?;
    (0..spec.samples).map(|i| sample(spec, i)).collect()
}

pub const CSV_COLUMNS: [&str; 11] = [
    "lambda", "k", "T11", "T21", "T31", "P21x", "P21y", "P21z", "P31x", "P31y", "P31z",
];
pub const CSV_BOTH_COLUMNS: [&str; 4] = ["T21_closed", "P21z_closed", "abs_dT21", "abs_dP21z"];

/// Fixed 17-significant-digit scientific notation.
pub fn fmt_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_field(line: &mut String, value: Option<f64>) {
    line.push(',');
    if let Some(v) = value {
        line.push_str(&fmt_number(v));
    }
}

/// Renders a sweep as CSV: `#` provenance comments, the header row, then one
/// LF-terminated row per sample.
pub fn to_csv(spec: &SweepSpec, points: &[SpectrumPoint]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# rashba-ring sweep");
    let _ = writeln!(
        out,
        "# alpha={} xi={}*pi beta={} lambda_min={} lambda_max={} samples={} engine={}",
        spec.alpha, spec.xi, spec.beta, spec.lambda_min, spec.lambda_max, spec.samples, spec.engine
    );
    let nudged: Vec<&SpectrumPoint> = points.iter().filter(|p| p.nudged).collect();
    let _ = writeln!(out, "# nudged_samples={}", nudged.len());
    for p in nudged {
        let _ = writeln!(
            out,
            "# nudged grid_lambda={} lambda={}",
            fmt_number(p.grid_lambda),
            fmt_number(p.lambda)
        );
    }

    let mut header = CSV_COLUMNS.join(",");
    if spec.engine == Engine::Both {
        header.push(',');
        header.push_str(&CSV_BOTH_COLUMNS.join(","));
    }
    out.push_str(&header);
    out.push('\n');

    for p in points {
        let mut line = fmt_number(p.lambda);
        push_field(&mut line, Some(p.k));
        let g = p.generic;
        let closed_t = p.closed.map(|c| c.0);
        let closed_p = p.closed.map(|c| c.1);
        push_field(&mut line, g.map(|g| g.t11));
        push_field(&mut line, g.map(|g| g.t21).or(closed_t));
        push_field(&mut line, g.map(|g| g.t31));
        push_field(&mut line, g.map(|g| g.p21[0]));
        push_field(&mut line, g.map(|g| g.p21[1]));
        push_field(&mut line, g.map(|g| g.p21[2]).or(closed_p));
        for a in 0..3 {
            push_field(&mut line, g.map(|g| g.p31[a]));
        }
        if spec.engine == Engine::Both {
            let gap = p.engine_gap();
            push_field(&mut line, closed_t);
            push_field(&mut line, closed_p);
            push_field(&mut line, gap.map(|d| d.0));
            push_field(&mut line, gap.map(|d| d.1));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// The ring resonances in range as `branch,n,lambda` CSV.
pub fn resonance_table(
    alpha: f64,
    lambda_min: f64,
    lambda_max: f64,
) -> Result<(Vec<Resonance>, String)> {
    let ring = RingParams::new(alpha)?;
    if !(lambda_min < lambda_max) {
        return Err(Error::InvalidDevice(format!(
            "energy range {lambda_min}:{lambda_max} must satisfy min < max"
        )));
    }
    let rows = resonances_in_range(ring, lambda_min, lambda_max);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# rashba-ring resonances alpha={alpha} lambda_min={lambda_min} lambda_max={lambda_max}"
    );
    out.push_str("branch,n,lambda\n");
    for r in &rows {
        let _ = writeln!(out, "{},{},{}", r.branch, r.n, fmt_number(r.lambda));
    }
    Ok((rows, out))
}
