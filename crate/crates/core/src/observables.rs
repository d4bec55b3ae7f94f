//! Spin-resolved conductance and polarization from the scattering matrix,
//! and the closed-form `T21`, `P21,z` of the reflection-symmetric three-lead
//! ring.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::ring::{momenta, RingParams};
use crate::scattering::{BlockMatrix, DeviceConfig, Lead};
use crate::spin::{decompose, exp_sigma_y, exp_sigma_z, Axis, SpinComponents};

/// `T_ij = 2(|s1|² + |sx|² + |sy|² + |sz|²)` of block `s_ij`, i.e. its
/// squared Frobenius norm.
pub fn conductance(s: &BlockMatrix, i: usize, j: usize) -> f64 {
    2.0 * decompose(s.block(i, j)).norm_sqr()
}

/// `P_ij,α = 4 Im(s1 s̄α + s_{α−1} s̄_{α+1})` with cyclic axis indices.
pub fn polarization(s: &BlockMatrix, i: usize, j: usize, axis: Axis) -> f64 {
    polarization_of(&decompose(s.block(i, j)), axis)
}

fn polarization_of(c: &SpinComponents, axis: Axis) -> f64 {
    let term = c.s1 * c.axis(axis).conj() + c.axis(axis.prev()) * c.axis(axis.next()).conj();
    4.0 * term.im
}

/// All conductances and polarizations of one scattering matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Observables {
    leads: usize,
    conductance: Vec<f64>,
    polarization: Vec<[f64; 3]>,
}

impl Observables {
    pub fn from_scattering(s: &BlockMatrix) -> Self {
        let n = s.leads();
        let mut conductance = Vec::with_capacity(n * n);
        let mut polarization = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let c = decompose(s.block(i, j));
                conductance.push(2.0 * c.norm_sqr());
                polarization.push(Axis::ALL.map(|a| polarization_of(&c, a)));
            }
        }
        Observables {
            leads: n,
            conductance,
            polarization,
        }
    }

    pub fn leads(&self) -> usize {
        self.leads
    }

    pub fn t(&self, i: usize, j: usize) -> f64 {
        self.conductance[i * self.leads + j]
    }

    pub fn p(&self, i: usize, j: usize, axis: Axis) -> f64 {
        let p = &self.polarization[i * self.leads + j];
        match axis {
            Axis::X => p[0],
            Axis::Y => p[1],
            Axis::Z => p[2],
        }
    }

    /// `Σ_i T_ij`, which is 2 for a unitary S.
    pub fn column_sum(&self, j: usize) -> f64 {
        (0..self.leads).map(|i| self.t(i, j)).sum()
    }
}

/// Three leads at `0, xi, 2pi - xi`, all with coupling `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricDevice {
    pub xi: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl SymmetricDevice {
    pub fn new(xi: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(xi > 0.0 && xi < PI) {
            return Err(Error::InvalidDevice(format!(
                "xi = {xi} is outside (0, pi)"
            )));
        }
        RingParams::new(alpha)?;
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidDevice(format!(
                "beta = {beta} must be positive"
            )));
        }
        Ok(SymmetricDevice { xi, alpha, beta })
    }

    pub fn config(&self) -> DeviceConfig {
        let ring = RingParams::new(self.alpha).expect("validated in new");
        let leads = [0.0, self.xi, TAU - self.xi]
            .into_iter()
            .map(|theta| Lead {
                theta,
                beta: self.beta,
            })
            .collect();
        DeviceConfig::new(ring, leads).expect("validated in new")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub t21: f64,
    pub p21z: f64,
}

/// `T21 = 8R/(X²+Y²)` and `P21,z = 8 cos(φ) Q/(X²+Y²)` for the symmetric
/// device at unit coupling, with `κ = −k/(2(κ₊+κ₋))`.
///
/// The common `cos⁻²(κ±π)` factors are already cancelled, so this is regular
/// at the ring resonances.
pub fn closed_form_t21_p21z(lambda: f64, xi: f64, alpha: f64) -> Result<ClosedForm> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::NonPositiveEnergy(lambda));
    }
    let ring = RingParams::new(alpha)?;
    let k = lambda.sqrt();
    let m = momenta(k, ring)?;
    let (kp, km) = (m.plus, m.minus);
    let sum = kp + km;
    let diff = kp - km;
    let kap = -k / (2.0 * sum);
    let (k2, k3) = (kap * kap, kap * kap * kap);
    let k4 = k2 * k2;
    let (sin, cos) = (f64::sin, f64::cos);

    let x = -(4.0 * k3 + 3.0 * kap) * sin(sum * PI) + 4.0 * k3 * sin(sum * (2.0 * xi - PI))
        - 8.0 * k3 * sin(sum * (xi - PI));

    let y = -(6.0 * k2 + 0.5) * cos(sum * PI) - 0.5 * cos(diff * PI)
        + 2.0 * k2 * cos(sum * (2.0 * xi - PI))
        + 4.0 * k2 * cos(sum * (xi - PI));

    // The last bracket enters with a minus sign; with a plus the result
    // disagrees with the scattering-matrix route.
    let r = k2
        + 4.0 * k4
        + 0.5
            * k2
            * (cos(2.0 * kp * PI) + cos(2.0 * km * PI)
                - cos(sum * xi)
                - cos(sum * (xi - TAU))
                - cos(kp * (xi - TAU) + km * xi)
                - cos(kp * xi + km * (xi - TAU)))
        + 2.0 * k4 * (cos(sum * (xi - TAU)) + cos(sum * (3.0 * xi - TAU)))
        - 4.0 * k4 * (cos(sum * xi) + cos(sum * 2.0 * (xi - PI)));

    let q = k3
        * (cos(2.0 * km * PI) - cos(2.0 * kp * PI) + cos(kp * 2.0 * xi + km * 2.0 * (xi - PI))
            - cos(kp * 2.0 * (xi - PI) + km * 2.0 * xi))
        + 2.0 * k3 * (cos(kp * (xi - TAU) + km * xi) - cos(kp * xi + km * (xi - TAU)));

    let denom = x * x + y * y;
    Ok(ClosedForm {
        t21: 8.0 * r / denom,
        p21z: 8.0 * ring.phi().cos() * q / denom,
    })
}

/// `s21` rotated back into the frame where it is diagonal in spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedFrameReport {
    pub components: SpinComponents,
}

impl RotatedFrameReport {
    /// `max(|sx|, |sy|)`; zero when the symmetric-device factorization holds.
    pub fn transverse_residual(&self) -> f64 {
        self.components.sx.norm().max(self.components.sy.norm())
    }
}

/// Undoes `s21 = e^{−iσzξ/2} e^{−iσyφ/2}(s1 + iσz sz) e^{iσyφ/2}` and
/// decomposes the middle factor.
pub fn rotated_transmission_check(s: &BlockMatrix, dev: &SymmetricDevice) -> RotatedFrameReport {
    let half_phi = dev.alpha.atan() / 2.0;
    let inner =
        exp_sigma_y(half_phi) * exp_sigma_z(dev.xi / 2.0) * s.block(1, 0) * exp_sigma_y(-half_phi);
    RotatedFrameReport {
        components: decompose(inner),
    }
}
