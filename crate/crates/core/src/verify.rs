//! Seeded audit of every symmetry and identity the model is expected to
//! satisfy. Each check records its worst residual over the draws.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checks;
use crate::error::{Error, Result};
use crate::observables::{
    closed_form_t21_p21z, rotated_transmission_check, Observables, SymmetricDevice,
};
use crate::ring::{degenerate_alpha, momenta, RingParams};
use crate::scattering::{
    boundary_residuals, scattering_matrix, time_reversal_defect, unitarity_defect,
};
use crate::spin::Axis;
use crate::tjunction::{residuals, TJunction};

/// Draws with `min |cos(κ±π)|` below this are rejected as near-resonant.
pub const OFF_RESONANCE: f64 = 1e-2;

pub const UNITARITY_TOL: f64 = 1e-10;
pub const FLUX_TOL: f64 = 1e-10;
pub const REFLECTION_TOL: f64 = 1e-10;
pub const TIME_REVERSAL_TOL: f64 = 1e-10;
pub const BOUNDARY_TOL: f64 = 1e-9;
pub const JUMP_TOL: f64 = 1e-4;
pub const JUMP_STEP: f64 = 1e-6;
pub const HERMITICITY_TOL: f64 = 1e-12;
pub const EIGEN_TOL: f64 = 1e-4;
pub const EIGEN_STEP: f64 = 1e-5;
pub const CONTINUITY_TOL: f64 = 1e-8;
pub const CONTINUITY_STEP: f64 = 1e-9;
pub const ORACLE_TOL: f64 = 1e-8;
pub const ROTATED_FRAME_TOL: f64 = 1e-10;
pub const DEGENERATE_TOL: f64 = 1e-9;
pub const JUNCTION_TOL: f64 = 1e-14;

/// One parameter draw for the symmetric three-lead device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Draw {
    pub lambda: f64,
    pub alpha: f64,
    pub xi_p: u32,
    pub xi_q: u32,
    pub beta: f64,
}

impl Draw {
    pub fn xi(&self) -> f64 {
        f64::from(self.xi_p) * PI / f64::from(self.xi_q)
    }

    pub fn device(&self) -> SymmetricDevice {
        SymmetricDevice::new(self.xi(), self.alpha, self.beta).expect("draw ranges are valid")
    }
}

/// `min |cos(κ±π)|` at `lambda`.
pub fn resonance_distance(lambda: f64, alpha: f64) -> f64 {
    let ring = RingParams::new(alpha).expect("alpha >= 0");
    let m = momenta(lambda.sqrt(), ring).expect("lambda > 0");
    (m.plus * PI).cos().abs().min((m.minus * PI).cos().abs())
}

/// Draws `λ ∈ (0, 30]`, `α ∈ [0, 3]`, `ξ = pπ/q` with `q ≤ 8`, `β ∈ [0.2, 3]`,
/// rejecting near-resonant energies.
pub fn draw(rng: &mut impl Rng) -> Draw {
    loop {
        let lambda = 30.0 - rng.random_range(0.0..30.0);
        let alpha = rng.random_range(0.0..=3.0);
        let xi_q = rng.random_range(2..=8u32);
        let xi_p = rng.random_range(1..xi_q);
        let beta = rng.random_range(0.2..=3.0);
        if resonance_distance(lambda, alpha) >= OFF_RESONANCE {
            return Draw {
                lambda,
                alpha,
                xi_p,
                xi_q,
                beta,
            };
        }
    }
}

/// `|a − b| / max(|b|, 1)`: relative for values of order one and above,
/// absolute for values near zero.
pub fn scaled_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub worst: f64,
    pub tolerance: f64,
    pub samples: usize,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Check {
            name,
            worst: 0.0,
            tolerance,
            samples: 0,
        }
    }

    fn record(&mut self, residual: f64) {
        self.samples += 1;
        if !(residual <= self.worst) {
            self.worst = residual;
        }
    }

    pub fn passed(&self) -> bool {
        self.worst < self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<22} worst={:.3e} tol={:.0e} samples={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.worst,
            self.tolerance,
            self.samples
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# rashba-ring verify seed={} trials={}",
            self.seed, self.trials
        )?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "ALL PASS"
            } else {
                "AUDIT FAILED"
            }
        )
    }
}

pub fn run_verify(seed: u64, trials: usize) -> Result<AuditReport> {
    if trials == 0 {
        return Err(Error::InvalidDevice("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut unitarity = Check::new("unitarity", UNITARITY_TOL);
    let mut flux = Check::new("flux_conservation", FLUX_TOL);
    let mut reflection = Check::new("reflection_symmetry", REFLECTION_TOL);
    let mut time_rev = Check::new("time_reversal", TIME_REVERSAL_TOL);
    let mut boundary = Check::new("boundary_conditions", BOUNDARY_TOL);
    let mut jump = Check::new("green_jump", JUMP_TOL);
    let mut herm = Check::new("green_hermiticity", HERMITICITY_TOL);
    let mut eigen = Check::new("green_eigen_equation", EIGEN_TOL);
    let mut cont = Check::new("green_continuity", CONTINUITY_TOL);
    let mut oracle = Check::new("oracle_equivalence", ORACLE_TOL);
    let mut rotated = Check::new("rotated_frame", ROTATED_FRAME_TOL);
    let mut degenerate = Check::new("degenerate_alpha", DEGENERATE_TOL);
    let mut junction = Check::new("tjunction", JUNCTION_TOL);

    for _ in 0..trials {
        let d = draw(&mut rng);
        let dev = d.device();
        let cfg = dev.config();
        let s = scattering_matrix(&cfg, d.lambda)?;
        let obs = Observables::from_scattering(&s);

        unitarity.record(unitarity_defect(&s));
        for j in 0..3 {
            flux.record((obs.column_sum(j) - 2.0).abs());
        }
        reflection.record(
            [
                obs.p(1, 0, Axis::X) + obs.p(2, 0, Axis::X),
                obs.p(1, 0, Axis::Y) - obs.p(2, 0, Axis::Y),
                obs.p(1, 0, Axis::Z) + obs.p(2, 0, Axis::Z),
            ]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs())),
        );
        time_rev.record(time_reversal_defect(&s));
        let (first, second) = boundary_residuals(&cfg, d.lambda, &s)?;
        boundary.record(first.max(second));

        // Green's function at the drawn ring, random source and field points.
        let ring = cfg.ring();
        let k = d.lambda.sqrt();
        let eta = rng.random_range(0.0..2.0 * PI);
        let theta = eta + rng.random_range(0.1..2.0 * PI - 0.1);
        jump.record(checks::jump_defect(eta, k, ring, JUMP_STEP)?);
        herm.record(checks::hermiticity_defect(theta, eta, k, ring)?);
        eigen.record(checks::eigen_residual(theta, eta, k, ring, EIGEN_STEP)?);
        cont.record(checks::continuity_defect(eta, k, ring, CONTINUITY_STEP)?);

        // Closed form needs unit coupling.
        let unit = SymmetricDevice::new(d.xi(), d.alpha, 1.0)?;
        let s1 = scattering_matrix(&unit.config(), d.lambda)?;
        let o1 = Observables::from_scattering(&s1);
        let cf = closed_form_t21_p21z(d.lambda, d.xi(), d.alpha)?;
        oracle.record(scaled_gap(o1.t(1, 0), cf.t21).max(scaled_gap(o1.p(1, 0, Axis::Z), cf.p21z)));
        rotated.record(rotated_transmission_check(&s1, &unit).transverse_residual());

        let beta = rng.random_range(0.2..=3.0);
        let r = residuals(&TJunction::new(beta)?);
        junction.record(r.idempotent.max(r.involution).max(r.projection_form));
    }

    for m in 0..3 {
        let alpha = degenerate_alpha(m);
        for q in 2..=4u32 {
            let xi = PI / f64::from(q);
            for i in 0..200 {
                let lambda = 0.5 + 29.5 * f64::from(i) / 199.0;
                degenerate.record(closed_form_t21_p21z(lambda, xi, alpha)?.p21z.abs());
            }
        }
    }

    Ok(AuditReport {
        seed,
        trials,
        checks: vec![
            unitarity, flux, reflection, time_rev, boundary, jump, herm, eigen, cont, oracle,
            rotated, degenerate, junction,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_is_an_error() {
        assert!(run_verify(1, 0).is_err());
    }

    #[test]
    fn audit_is_deterministic() {
        let a = run_verify(7, 10).unwrap();
        let b = run_verify(7, 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn small_audit_passes() {
        let report = run_verify(3, 20).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn draws_stay_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let d = draw(&mut rng);
            assert!(d.lambda > 0.0 && d.lambda <= 30.0);
            assert!((0.0..=3.0).contains(&d.alpha));
            assert!(d.xi_q <= 8 && d.xi_p >= 1 && d.xi_p < d.xi_q);
            assert!((0.2..=3.0).contains(&d.beta));
            assert!(resonance_distance(d.lambda, d.alpha) >= OFF_RESONANCE);
        }
    }
}
