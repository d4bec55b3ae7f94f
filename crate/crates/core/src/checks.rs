//! Finite-difference checks of the ring Green's function: the derivative
//! jump, hermiticity, continuity across the source and the eigen-equation.
//!
//! These only sample `green_fn`; none of them reuse its closed form.

use crate::error::Result;
use crate::ring::{green_fn, momenta, RingParams};
use crate::spin::{pauli, Pauli, SpinMatrix};

/// `max |(∂θG at η⁺ − ∂θG at η⁻) − id|`.
///
/// Each one-sided derivative uses the second-order stencil
/// `(∓3G(η) ± 4G(η ± h) ∓ G(η ± 2h)) / 2h`, which never straddles the kink.
pub fn jump_defect(eta: f64, k: f64, params: RingParams, h: f64) -> Result<f64> {
    let g = |theta: f64| green_fn(theta, eta, k, params);
    let centre = g(eta)?;
    let right = (g(eta + h)? * 4.0 - centre * 3.0 - g(eta + 2.0 * h)?) * (1.0 / (2.0 * h));
    let left = (centre * 3.0 - g(eta - h)? * 4.0 + g(eta - 2.0 * h)?) * (1.0 / (2.0 * h));
    Ok((right - left).max_abs_diff(SpinMatrix::IDENTITY))
}

/// `max |G(θ, η) − G(η, θ)†|`.
pub fn hermiticity_defect(theta: f64, eta: f64, k: f64, params: RingParams) -> Result<f64> {
    let a = green_fn(theta, eta, k, params)?;
    let b = green_fn(eta, theta, k, params)?;
    Ok(a.max_abs_diff(b.adjoint()))
}

/// `max |G(η, η) − G(η − 0, η)|`: the value at `d = 0` against the limit
/// `d → 2π⁻`, the latter extrapolated linearly from `η − ε` and `η − 2ε` so
/// that the slope of `G` does not enter.
pub fn continuity_defect(eta: f64, k: f64, params: RingParams, eps: f64) -> Result<f64> {
    let at = green_fn(eta, eta, k, params)?;
    let limit = green_fn(eta - eps, eta, k, params)? * 2.0 - green_fn(eta - 2.0 * eps, eta, k, params)?;
    Ok(at.max_abs_diff(limit))
}

/// Relative residual `max |H₀G − k²G| / (κ₊² max |G|)` at `θ ≠ η`, with
/// `H₀ = D₀² − (α/2)²`, `D₀ = i d/dθ + (α/2)σ_r` and `σ_r = σx cos θ + σy sin θ`,
/// applied by nested central differences of step `h`.
///
/// `κ₊²|G|` is the size of the largest term `D₀²` produces. Normalising by
/// `k²` instead lets the `ε|G|/h²` rounding floor dominate as `λ → 0`.
pub fn eigen_residual(theta: f64, eta: f64, k: f64, params: RingParams, h: f64) -> Result<f64> {
    let half_alpha = params.alpha() / 2.0;
    let sigma_r = |t: f64| pauli(Pauli::X) * t.cos() + pauli(Pauli::Y) * t.sin();
    let g = |t: f64| green_fn(t, eta, k, params);
    let i_over_2h = num_complex::Complex64::new(0.0, 1.0 / (2.0 * h));
    let d0 = |t: f64| -> Result<SpinMatrix> {
        Ok((g(t + h)? - g(t - h)?) * i_over_2h + sigma_r(t) * g(t)? * half_alpha)
    };
    let d0_sq =
        (d0(theta + h)? - d0(theta - h)?) * i_over_2h + sigma_r(theta) * d0(theta)? * half_alpha;
    let center = g(theta)?;
    let h0 = d0_sq - center * (half_alpha * half_alpha);
    let residual = h0.max_abs_diff(center * (k * k));
    let scale = center
        .m
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let kappa_plus = momenta(k, params)?.plus;
    Ok(residual / (kappa_plus * kappa_plus * scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{eigenvalue, Branch};

    #[test]
    fn reference_point() {
        let p = RingParams::new(0.8).unwrap();
        assert!(jump_defect(0.3, 0.9, p, 1e-6).unwrap() < 1e-4);
        assert!(hermiticity_defect(1.0, 0.3, 0.9, p).unwrap() < 1e-12);
        assert!(continuity_defect(0.3, 0.9, p, 1e-9).unwrap() < 1e-8);
        assert!(eigen_residual(2.0, 0.3, 0.9, p, 1e-5).unwrap() < 1e-4);
    }

    #[test]
    fn eigen_residual_at_low_energy() {
        let p = RingParams::new(2.956).unwrap();
        assert!(eigen_residual(2.0, 0.3, 0.1185f64.sqrt(), p, 1e-5).unwrap() < 1e-5);
    }

    #[test]
    fn jump_near_resonance() {
        // |cos κπ| ≈ 1e-2, so |G| ~ 1e2 and a first-order stencil is off by ~1e-4.
        let p = RingParams::new(1.1).unwrap();
        let k = (eigenvalue(Branch::Plus, 5, p).unwrap() + 0.05).sqrt();
        assert!(jump_defect(1.0, k, p, 1e-6).unwrap() < 1e-5);
    }

    #[test]
    fn wrong_sign_convention_is_detected() {
        // With D₀ = −i d/dθ + (α/2)σ_r the residual is O(1); guards against a
        // check that passes for any input.
        let p = RingParams::new(0.8).unwrap();
        let (theta, eta, k, h) = (2.0, 0.3, 2.2f64, 1e-5);
        let half_alpha = 0.4;
        let sigma_r = |t: f64| pauli(Pauli::X) * t.cos() + pauli(Pauli::Y) * t.sin();
        let g = |t: f64| green_fn(t, eta, k, p).unwrap();
        let c = num_complex::Complex64::new(0.0, -1.0 / (2.0 * h));
        let d0 = |t: f64| (g(t + h) - g(t - h)) * c + sigma_r(t) * g(t) * half_alpha;
        let d0_sq = (d0(theta + h) - d0(theta - h)) * c + sigma_r(theta) * d0(theta) * half_alpha;
        let h0 = d0_sq - g(theta) * (half_alpha * half_alpha);
        assert!(h0.max_abs_diff(g(theta) * (k * k)) > 1e-2);
    }
}
