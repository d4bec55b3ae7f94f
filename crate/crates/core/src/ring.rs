//! Single-ring quantities: the spin-split momenta, the spin-orbit angle, the
//! resonance spectrum and the matrix-valued Green's function.
//!
//! The ring radius is normalised to one, so `alpha` is dimensionless and the
//! energy is `lambda = k^2`.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spin::{exp_sigma_y, exp_sigma_z, pauli, Pauli, SpinMatrix};

/// Smallest `|cos(kappa*pi)|` for which [`green_fn`] is evaluated.
pub const RESONANCE_GUARD: f64 = 1e-9;

/// Rashba coupling of the ring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingParams {
    alpha: f64,
}

impl RingParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidAlpha(alpha));
        }
        Ok(RingParams { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Spin-orbit angle, `tan(phi) = alpha`.
    pub fn phi(&self) -> f64 {
        self.alpha.atan()
    }

    /// `sqrt(1 + alpha^2)`, the constant gap `kappa_+ - kappa_-`.
    pub fn splitting(&self) -> f64 {
        self.alpha.hypot(1.0)
    }

    pub fn momenta(&self, k: f64) -> Result<Momenta> {
        momenta(k, *self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Momenta {
    pub plus: f64,
    pub minus: f64,
}

impl Momenta {
    pub fn get(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.plus,
            Branch::Minus => self.minus,
        }
    }

    pub fn sum(&self) -> f64 {
        self.plus + self.minus
    }
}

/// `kappa_± = sqrt(k^2 + alpha^2/4) ± sqrt(1/4 + alpha^2/4)`.
pub fn momenta(k: f64, params: RingParams) -> Result<Momenta> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::NonPositiveEnergy(k * k));
    }
    let a = params.alpha / 2.0;
    let outer = k.hypot(a);
    let inner = 0.5f64.hypot(a);
    Ok(Momenta {
        plus: outer + inner,
        minus: outer - inner,
    })
}

/// A ring eigenvalue `lambda_{±,n}`, i.e. a zero of `cos(kappa_± pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub branch: Branch,
    pub n: u32,
    pub lambda: f64,
}

/// `lambda_{±,n} = n^2 - (1/2 ± n)(sqrt(1+alpha^2) - 1)`, with `n >= 1` on
/// the plus branch and `n >= 0` on the minus branch.
pub fn eigenvalue(branch: Branch, n: u32, params: RingParams) -> Result<f64> {
    if branch == Branch::Plus && n == 0 {
        return Err(Error::InvalidIndex { branch, n });
    }
    let n = f64::from(n);
    Ok(n * n - (0.5 + branch.sign() * n) * (params.splitting() - 1.0))
}

/// Every `lambda_{±,n}` in `[lambda_min, lambda_max]`, sorted ascending.
///
/// Ties keep the plus branch first, then ascending `n`.
pub fn resonances_in_range(params: RingParams, lambda_min: f64, lambda_max: f64) -> Vec<Resonance> {
    let mut out = Vec::new();
    if !(lambda_min <= lambda_max) {
        return out;
    }
    for branch in [Branch::Plus, Branch::Minus] {
        let start = if branch == Branch::Plus { 1 } else { 0 };
        // lambda_{±,n} grows like n^2 for large n, so stop once past the top
        // and increasing.
        let mut prev = f64::NEG_INFINITY;
        for n in start.. {
            let lambda = eigenvalue(branch, n, params).expect("index in range");
            if lambda > lambda_max && lambda >= prev {
                break;
            }
            if lambda >= lambda_min && lambda <= lambda_max {
                out.push(Resonance { branch, n, lambda });
            }
            prev = lambda;
        }
    }
    out.sort_by(|a, b| {
        a.lambda
            .total_cmp(&b.lambda)
            .then(a.branch.cmp(&b.branch))
            .then(a.n.cmp(&b.n))
    });
    out
}

/// The `alpha >= 0` at which `sqrt(1+alpha^2) - 1 = m`.
pub fn degenerate_alpha(m: u32) -> f64 {
    let m = f64::from(m);
    (m * (m + 2.0)).sqrt()
}

/// Reduces `x` into `[0, 2pi)`.
pub(crate) fn wrap_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// The ring Green's function `G(theta, eta; k^2)`.
///
/// `d = theta - eta` is reduced into `[0, 2pi)` and the spin prefactor is
/// evaluated at `eta + d`, the representative of `theta` on the sheet that
/// starts at the source. `e^{-iσz theta/2}` is antiperiodic, so this choice
/// is what makes `G` continuous across the source point and hermitian in the
/// sense `G(theta, eta) = G(eta, theta)^†`.
pub fn green_fn(theta: f64, eta: f64, k: f64, params: RingParams) -> Result<SpinMatrix> {
    let kappa = momenta(k, params)?;
    let cos_plus = (kappa.plus * PI).cos();
    let cos_minus = (kappa.minus * PI).cos();
    for (branch, cos) in [(Branch::Plus, cos_plus), (Branch::Minus, cos_minus)] {
        if cos.abs() < RESONANCE_GUARD {
            return Err(Error::ResonanceProximity { branch, k, cos });
        }
    }

    let eta = wrap_angle(eta);
    let d = wrap_angle(theta - eta);
    let theta = eta + d;
    let half_phi = params.phi() / 2.0;

    let bracket = exp_sigma_z(kappa.plus * (d - PI)) * (1.0 / cos_plus)
        - exp_sigma_z(-kappa.minus * (d - PI)) * (1.0 / cos_minus);
    let norm = Complex64::new(0.0, 2.0 * kappa.sum()).inv();

    Ok(exp_sigma_z(-theta / 2.0)
        * exp_sigma_y(-half_phi)
        * bracket
        * exp_sigma_y(-half_phi)
        * exp_sigma_z(eta / 2.0)
        * pauli(Pauli::Z)
        * norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn momenta_examples() {
        let free = RingParams::new(0.0).unwrap();
        let m = momenta(1.0, free).unwrap();
        assert_eq!((m.plus, m.minus), (1.5, 0.5));

        let p = RingParams::new(3f64.sqrt()).unwrap();
        let m = momenta(1.0, p).unwrap();
        assert!((m.plus - (7f64.sqrt() / 2.0 + 1.0)).abs() < 1e-14);
        assert!((m.minus - (7f64.sqrt() / 2.0 - 1.0)).abs() < 1e-14);
        assert!((m.plus - 2.3229).abs() < 1e-4 && (m.minus - 0.3229).abs() < 1e-4);
    }

    #[test]
    fn momenta_rejects_non_positive_k() {
        let p = RingParams::new(0.5).unwrap();
        assert!(matches!(momenta(0.0, p), Err(Error::NonPositiveEnergy(_))));
        assert!(matches!(momenta(-1.0, p), Err(Error::NonPositiveEnergy(_))));
        assert!(momenta(f64::NAN, p).is_err());
    }

    #[test]
    fn invalid_alpha() {
        assert!(RingParams::new(-0.1).is_err());
        assert!(RingParams::new(f64::INFINITY).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        let free = RingParams::new(0.0).unwrap();
        for n in 1..6 {
            assert_eq!(eigenvalue(Branch::Plus, n, free).unwrap(), f64::from(n * n));
            assert_eq!(
                eigenvalue(Branch::Minus, n, free).unwrap(),
                f64::from(n * n)
            );
        }

        let p = RingParams::new(3f64.sqrt()).unwrap();
        for n in 0..8 {
            let minus = eigenvalue(Branch::Minus, n, p).unwrap();
            let plus = eigenvalue(Branch::Plus, n + 1, p).unwrap();
            assert!((minus - plus).abs() < 1e-12, "n = {n}");
        }

        let p = RingParams::new(0.8).unwrap();
        let l = eigenvalue(Branch::Minus, 0, p).unwrap();
        assert!((l - -0.140_312_423_743_284_87).abs() < 1e-15);
        assert!((l + 0.14031).abs() < 1e-5);
    }

    #[test]
    fn eigenvalue_index_convention() {
        let p = RingParams::new(0.8).unwrap();
        assert!(matches!(
            eigenvalue(Branch::Plus, 0, p),
            Err(Error::InvalidIndex {
                branch: Branch::Plus,
                n: 0
            })
        ));
        assert!(eigenvalue(Branch::Minus, 0, p).is_ok());
        for n in 1..10 {
            let plus = eigenvalue(Branch::Plus, n, p).unwrap();
            let minus = eigenvalue(Branch::Minus, n, p).unwrap();
            assert!(plus <= minus);
        }
    }

    #[test]
    fn eigenvalues_are_zeros_of_cos_kappa_pi() {
        for alpha in [0.0, 0.3, 0.8, 1.7, 3.0] {
            let p = RingParams::new(alpha).unwrap();
            for branch in [Branch::Plus, Branch::Minus] {
                for n in 1..12 {
                    let lambda = eigenvalue(branch, n, p).unwrap();
                    if lambda <= 0.0 {
                        continue;
                    }
                    let kappa = momenta(lambda.sqrt(), p).unwrap().get(branch);
                    assert!(
                        (kappa * PI).cos().abs() < 1e-10,
                        "{branch} {n} alpha={alpha}"
                    );
                }
            }
        }
    }

    #[test]
    fn resonance_table_free_ring() {
        let free = RingParams::new(0.0).unwrap();
        let lambdas: Vec<f64> = resonances_in_range(free, 0.5, 9.5)
            .iter()
            .map(|r| r.lambda)
            .collect();
        assert_eq!(lambdas, vec![1.0, 1.0, 4.0, 4.0, 9.0, 9.0]);
    }

    #[test]
    fn resonance_table_interleaves() {
        let p = RingParams::new(0.8).unwrap();
        let table = resonances_in_range(p, 0.5, 10.0);
        let labels: Vec<(Branch, u32)> = table.iter().map(|r| (r.branch, r.n)).collect();
        use Branch::*;
        assert_eq!(
            labels,
            vec![
                (Plus, 1),
                (Minus, 1),
                (Plus, 2),
                (Minus, 2),
                (Plus, 3),
                (Minus, 3)
            ]
        );
        assert!(table.windows(2).all(|w| w[0].lambda <= w[1].lambda));
    }

    #[test]
    fn resonance_table_empty_below_ground_state() {
        let p = RingParams::new(0.8).unwrap();
        assert!(resonances_in_range(p, -5.0, -1.0).is_empty());
        let ground = eigenvalue(Branch::Minus, 0, p).unwrap();
        assert_eq!(resonances_in_range(p, -1.0, ground + 1e-12).len(), 1);
    }

    #[test]
    fn degenerate_alpha_values() {
        assert_eq!(degenerate_alpha(0), 0.0);
        assert_eq!(degenerate_alpha(1), 3f64.sqrt());
        assert_eq!(degenerate_alpha(2), 8f64.sqrt());
        for m in 0..6 {
            let p = RingParams::new(degenerate_alpha(m)).unwrap();
            assert!((p.splitting() - 1.0 - f64::from(m)).abs() < 1e-12);
        }
    }

    #[test]
    fn green_fn_free_ring_is_scalar() {
        let free = RingParams::new(0.0).unwrap();
        let k = 1.3;
        for (theta, eta) in [(0.4, 0.1), (0.1, 0.4), (2.0, 5.5), (1.0, 1.0)] {
            let g = green_fn(theta, eta, k, free).unwrap();
            let d = wrap_angle(theta - eta);
            let expected = (k * (d - PI)).cos() / (2.0 * k * (k * PI).sin());
            let id = SpinMatrix::IDENTITY * expected;
            assert!(g.max_abs_diff(id) < 1e-13, "{theta} {eta}: {g:?}");
        }
    }

    #[test]
    fn green_fn_hermiticity_pair() {
        let p = RingParams::new(0.8).unwrap();
        let a = green_fn(1.0, 0.3, 0.9, p).unwrap();
        let b = green_fn(0.3, 1.0, 0.9, p).unwrap();
        assert!(a.max_abs_diff(b.adjoint()) < 1e-12);
    }

    #[test]
    fn green_fn_is_periodic_in_both_arguments() {
        let p = RingParams::new(1.1).unwrap();
        let g = green_fn(0.7, 2.9, 2.2, p).unwrap();
        assert!(g.max_abs_diff(green_fn(0.7 + TAU, 2.9, 2.2, p).unwrap()) < 1e-12);
        assert!(g.max_abs_diff(green_fn(0.7, 2.9 - TAU, 2.2, p).unwrap()) < 1e-12);
    }

    #[test]
    fn green_fn_guard() {
        let free = RingParams::new(0.0).unwrap();
        // kappa_± = k ± 1/2 hits a zero of the cosine at k = 1.
        let err = green_fn(0.0, 0.0, 1.0, free).unwrap_err();
        assert!(matches!(err, Error::ResonanceProximity { .. }));
    }
}
