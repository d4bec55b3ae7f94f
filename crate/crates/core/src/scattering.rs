//! Ring with `n` semi-infinite leads: the block Green's matrix and the
//! `2n × 2n` scattering matrix
//!
//! ```text
//! S = (ikβ𝒢β + I)(ikβ𝒢β − I)⁻¹
//! ```
//!
//! Blocks are ordered wire-major, spin-minor: row `2j + s` is spin `s` on
//! lead `j`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{solve_linear, ComplexMatrix};
use crate::ring::{green_fn, wrap_angle, RingParams};
use crate::spin::{pauli, Pauli, SpinMatrix};

/// A lead attached to the ring at `theta` with coupling strength `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lead {
    pub theta: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviceConfig {
    ring: RingParams,
    leads: Vec<Lead>,
}

/// Attachment points closer than this (in radians, around the ring) are
/// treated as coincident.
const MIN_LEAD_SEPARATION: f64 = 1e-9;

impl DeviceConfig {
    /// Validates the leads; angles are reduced into `[0, 2pi)`.
    pub fn new(ring: RingParams, leads: Vec<Lead>) -> Result<Self> {
        if leads.is_empty() {
            return Err(Error::InvalidDevice("at least one lead is required".into()));
        }
        let mut leads = leads;
        for lead in &mut leads {
            if !lead.theta.is_finite() {
                return Err(Error::InvalidDevice(format!(
                    "non-finite angle {}",
                    lead.theta
                )));
            }
            if !(lead.beta > 0.0) || !lead.beta.is_finite() {
                return Err(Error::InvalidDevice(format!(
                    "coupling must be positive and finite, got {}",
                    lead.beta
                )));
            }
            lead.theta = wrap_angle(lead.theta);
        }
        for (i, a) in leads.iter().enumerate() {
            for b in &leads[i + 1..] {
                let gap = (a.theta - b.theta).abs();
                if gap.min(TAU - gap) < MIN_LEAD_SEPARATION {
                    return Err(Error::InvalidDevice(format!(
                        "leads at {} and {} coincide",
                        a.theta, b.theta
                    )));
                }
            }
        }
        Ok(DeviceConfig { ring, leads })
    }

    pub fn ring(&self) -> RingParams {
        self.ring
    }

    pub fn leads(&self) -> &[Lead] {
        &self.leads
    }

    pub fn lead_count(&self) -> usize {
        self.leads.len()
    }
}

/// An `n × n` array of 2×2 spin blocks, stored as one `2n × 2n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix {
    leads: usize,
    inner: ComplexMatrix,
}

impl BlockMatrix {
    pub fn zeros(leads: usize) -> Self {
        BlockMatrix {
            leads,
            inner: ComplexMatrix::zeros(2 * leads),
        }
    }

    pub fn identity(leads: usize) -> Self {
        BlockMatrix {
            leads,
            inner: ComplexMatrix::identity(2 * leads),
        }
    }

    pub fn from_matrix(inner: ComplexMatrix) -> Result<Self> {
        if inner.dim() % 2 != 0 {
            return Err(Error::Dimension(format!(
                "odd dimension {} cannot hold spin blocks",
                inner.dim()
            )));
        }
        Ok(BlockMatrix {
            leads: inner.dim() / 2,
            inner,
        })
    }

    /// Block-diagonal matrix with `m` on every diagonal block.
    pub fn block_diagonal(leads: usize, m: SpinMatrix) -> Self {
        let mut out = BlockMatrix::zeros(leads);
        for j in 0..leads {
            out.set_block(j, j, m);
        }
        out
    }

    pub fn leads(&self) -> usize {
        self.leads
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.inner
    }

    pub fn block(&self, j: usize, k: usize) -> SpinMatrix {
        let (r, c) = (2 * j, 2 * k);
        let m = &self.inner;
        SpinMatrix::new(m[(r, c)], m[(r, c + 1)], m[(r + 1, c)], m[(r + 1, c + 1)])
    }

    pub fn set_block(&mut self, j: usize, k: usize, block: SpinMatrix) {
        let (r, c) = (2 * j, 2 * k);
        for s in 0..2 {
            for t in 0..2 {
                self.inner[(r + s, c + t)] = block.m[s][t];
            }
        }
    }

    pub fn adjoint(&self) -> Self {
        BlockMatrix {
            leads: self.leads,
            inner: self.inner.adjoint(),
        }
    }
}

/// `𝒢_{jk} = G(theta_j, theta_k; lambda)`.
pub fn green_block_matrix(cfg: &DeviceConfig, lambda: f64) -> Result<BlockMatrix> {
    let k = wavenumber(lambda)?;
    let n = cfg.lead_count();
    let mut out = BlockMatrix::zeros(n);
    for (j, a) in cfg.leads.iter().enumerate() {
        for (l, b) in cfg.leads.iter().enumerate() {
            out.set_block(j, l, green_fn(a.theta, b.theta, k, cfg.ring)?);
        }
    }
    Ok(out)
}

/// The full spin-resolved scattering matrix at energy `lambda = k^2`.
pub fn scattering_matrix(cfg: &DeviceConfig, lambda: f64) -> Result<BlockMatrix> {
    let g = green_block_matrix(cfg, lambda)?;
    let k = lambda.sqrt();
    let dim = 2 * cfg.lead_count();
    let beta: Vec<f64> = cfg.leads.iter().flat_map(|l| [l.beta, l.beta]).collect();

    // M = ik β𝒢β
    let ik = Complex64::new(0.0, k);
    let m = ComplexMatrix::from_fn(dim, |i, j| ik * beta[i] * g.inner[(i, j)] * beta[j]);
    let id = ComplexMatrix::identity(dim);
    // (M + I) and (M − I)⁻¹ commute, so S = (M − I)⁻¹(M + I).
    let s = solve_linear(&(&m - &id), &(&m + &id))?;
    BlockMatrix::from_matrix(s)
}

/// Residuals of the two vertex relations `I + S = β𝒢A` and
/// `ikβ(I − S) = −A` with `A = −ikβ(I − S)`.
///
/// The second relation is the definition of `A`, so only the first carries
/// information; both are returned so callers can report them side by side.
pub fn boundary_residuals(cfg: &DeviceConfig, lambda: f64, s: &BlockMatrix) -> Result<(f64, f64)> {
    let g = green_block_matrix(cfg, lambda)?;
    let k = lambda.sqrt();
    let dim = 2 * cfg.lead_count();
    let beta = ComplexMatrix::from_fn(dim, |i, j| {
        if i == j {
            cfg.leads[i / 2].beta.into()
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let id = ComplexMatrix::identity(dim);
    let ik = Complex64::new(0.0, k);
    let one_minus_s = &id - &s.inner;
    let a = (&beta * &one_minus_s).scale(-ik);

    let lhs = &id + &s.inner;
    let rhs = &(&beta * &g.inner) * &a;
    let first = lhs.max_abs_diff(&rhs);
    let second = (&beta * &one_minus_s)
        .scale(ik)
        .max_abs_diff(&a.scale((-1.0).into()));
    Ok((first, second))
}

/// `‖S†S − I‖∞`.
pub fn unitarity_defect(s: &BlockMatrix) -> f64 {
    let prod = &s.inner.adjoint() * &s.inner;
    (&prod - &ComplexMatrix::identity(prod.dim())).norm_inf()
}

/// Largest entry of `σ̂y Sᵀ σ̂y − S`, σ̂y block-diagonal.
pub fn time_reversal_defect(s: &BlockMatrix) -> f64 {
    let sy = BlockMatrix::block_diagonal(s.leads, pauli(Pauli::Y));
    let turned = &(&sy.inner * &s.inner.transpose()) * &sy.inner;
    turned.max_abs_diff(&s.inner)
}

fn wavenumber(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::NonPositiveEnergy(lambda));
    }
    Ok(lambda.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn three_lead(alpha: f64, xi: f64, beta: f64) -> DeviceConfig {
        let ring = RingParams::new(alpha).unwrap();
        DeviceConfig::new(
            ring,
            [0.0, xi, TAU - xi]
                .into_iter()
                .map(|theta| Lead { theta, beta })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn config_validation() {
        let ring = RingParams::new(0.5).unwrap();
        assert!(DeviceConfig::new(ring, vec![]).is_err());
        let dup = vec![
            Lead {
                theta: 0.0,
                beta: 1.0,
            },
            Lead {
                theta: TAU,
                beta: 1.0,
            },
        ];
        assert!(DeviceConfig::new(ring, dup).is_err());
        assert!(DeviceConfig::new(
            ring,
            vec![Lead {
                theta: 1.0,
                beta: 0.0
            }]
        )
        .is_err());
        assert!(DeviceConfig::new(
            ring,
            vec![Lead {
                theta: 1.0,
                beta: -2.0
            }]
        )
        .is_err());
    }

    #[test]
    fn single_lead_block_is_green_fn() {
        let ring = RingParams::new(0.8).unwrap();
        let cfg = DeviceConfig::new(
            ring,
            vec![Lead {
                theta: 1.2,
                beta: 1.0,
            }],
        )
        .unwrap();
        let g = green_block_matrix(&cfg, 3.7).unwrap();
        let direct = green_fn(1.2, 1.2, 3.7f64.sqrt(), ring).unwrap();
        assert_eq!(g.block(0, 0), direct);
    }

    #[test]
    fn free_ring_blocks_are_scalar() {
        let cfg = three_lead(0.0, 1.1, 1.0);
        let g = green_block_matrix(&cfg, 2.3).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                let b = g.block(j, k);
                let scalar = SpinMatrix::IDENTITY * b.m[0][0];
                assert!(b.max_abs_diff(scalar) < 1e-14);
            }
        }
    }

    #[test]
    fn green_matrix_is_hermitian() {
        let cfg = three_lead(0.8, 2.0 * PI / 3.0, 1.0);
        let g = green_block_matrix(&cfg, 5.0).unwrap();
        assert!(g.as_matrix().max_abs_diff(g.adjoint().as_matrix()) < 1e-12);
    }

    #[test]
    fn weak_coupling_reflects_totally() {
        let cfg = three_lead(0.8, 1.3, 1e-8);
        let s = scattering_matrix(&cfg, 5.0).unwrap();
        let minus_id = ComplexMatrix::identity(6).scale((-1.0).into());
        assert!(s.as_matrix().max_abs_diff(&minus_id) < 1e-6);
    }

    #[test]
    fn symmetric_device_is_unitary_and_time_reversal_symmetric() {
        let cfg = three_lead(0.8, 2.0 * PI / 3.0, 1.0);
        let s = scattering_matrix(&cfg, 5.0).unwrap();
        assert!(unitarity_defect(&s) < 1e-10);
        assert!(time_reversal_defect(&s) < 1e-10);
        let (first, second) = boundary_residuals(&cfg, 5.0, &s).unwrap();
        assert!(first < 1e-9 && second < 1e-9);
    }

    #[test]
    fn rejects_non_positive_energy() {
        let cfg = three_lead(0.8, 1.0, 1.0);
        assert!(matches!(
            scattering_matrix(&cfg, 0.0),
            Err(Error::NonPositiveEnergy(_))
        ));
        assert!(matches!(
            scattering_matrix(&cfg, -2.0),
            Err(Error::NonPositiveEnergy(_))
        ));
    }

    #[test]
    fn propagates_resonance_guard() {
        let cfg = three_lead(0.0, 1.0, 1.0);
        assert!(matches!(
            scattering_matrix(&cfg, 4.0),
            Err(Error::ResonanceProximity { .. })
        ));
    }
}
