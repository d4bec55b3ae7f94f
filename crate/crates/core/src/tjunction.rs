//! The isolated three-wire junction with the vertex conditions
//! `β⁻¹ψ₁ = ψ₂ = ψ₃`, `βψ₁′ + ψ₂′ + ψ₃′ = 0`.
//!
//! The conditions are spin independent, so everything here is a real 3×3
//! matrix; tensor with the 2×2 identity for the spin-resolved form. There is
//! no energy argument because the junction scatters identically at every
//! energy.

use crate::error::{Error, Result};

pub type Matrix3 = [[f64; 3]; 3];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TJunction {
    beta: f64,
}

impl TJunction {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidDevice(format!(
                "junction coupling must be positive and finite, got {beta}"
            )));
        }
        Ok(TJunction { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The rank-one projection `P` onto `(β, 1, 1)`.
    pub fn projection(&self) -> Matrix3 {
        let b = self.beta;
        let norm = b * b + 2.0;
        let v = [b, 1.0, 1.0];
        let mut p = [[0.0; 3]; 3];
        for (i, row) in p.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = v[i] * v[j] / norm;
            }
        }
        p
    }

    /// `S = 2P − I`, written out entrywise.
    pub fn scattering(&self) -> Matrix3 {
        let b = self.beta;
        let norm = b * b + 2.0;
        let diag = -(b * b) / norm;
        let cross = 2.0 * b / norm;
        let arms = 2.0 / norm;
        [
            [(b * b - 2.0) / norm, cross, cross],
            [cross, diag, arms],
            [cross, arms, diag],
        ]
    }
}

pub fn matmul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|l| a[i][l] * b[l][j]).sum();
        }
    }
    out
}

pub fn transpose(a: &Matrix3) -> Matrix3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub fn max_abs_diff(a: &Matrix3, b: &Matrix3) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub const IDENTITY3: Matrix3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

/// Residuals reported alongside the junction matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JunctionResiduals {
    /// `max |P² − P|`
    pub idempotent: f64,
    /// `max |S² − I|`
    pub involution: f64,
    /// `max |S − (2P − I)|`
    pub projection_form: f64,
}

pub fn residuals(t: &TJunction) -> JunctionResiduals {
    let p = t.projection();
    let s = t.scattering();
    let mut two_p_minus_i = p;
    for (i, row) in two_p_minus_i.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = 2.0 * *e - IDENTITY3[i][j];
        }
    }
    JunctionResiduals {
        idempotent: max_abs_diff(&matmul(&p, &p), &p),
        involution: max_abs_diff(&matmul(&s, &s), &IDENTITY3),
        projection_form: max_abs_diff(&s, &two_p_minus_i),
    }
}
