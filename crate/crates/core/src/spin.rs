//! 2×2 complex matrices for spinor-valued amplitudes, the Pauli basis and
//! the two exponential families `e^{iσz x}` and `e^{iσy x}` used on the ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// One of the three spatial spin axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Preceding axis in the cyclic order x → y → z → x.
    pub fn prev(self) -> Axis {
        match self {
            Axis::X => Axis::Z,
            Axis::Y => Axis::X,
            Axis::Z => Axis::Y,
        }
    }

    /// Following axis in the cyclic order x → y → z → x.
    pub fn next(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::Z,
            Axis::Z => Axis::X,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Selector for [`pauli`]: the three Pauli matrices plus the unit matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    Id,
    X,
    Y,
    Z,
}

impl From<Axis> for Pauli {
    fn from(axis: Axis) -> Self {
        match axis {
            Axis::X => Pauli::X,
            Axis::Y => Pauli::Y,
            Axis::Z => Pauli::Z,
        }
    }
}

/// A 2×2 complex matrix, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinMatrix {
    pub m: [[Complex64; 2]; 2],
}

impl SpinMatrix {
    pub const ZERO: SpinMatrix = SpinMatrix {
        m: [[ZERO, ZERO], [ZERO, ZERO]],
    };
    pub const IDENTITY: SpinMatrix = SpinMatrix {
        m: [[ONE, ZERO], [ZERO, ONE]],
    };

    pub const fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        SpinMatrix {
            m: [[m11, m12], [m21, m22]],
        }
    }

    pub const fn diag(d1: Complex64, d2: Complex64) -> Self {
        SpinMatrix::new(d1, ZERO, ZERO, d2)
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        SpinMatrix::new(
            m[0][0].into(),
            m[0][1].into(),
            m[1][0].into(),
            m[1][1].into(),
        )
    }

    pub fn scale(self, s: Complex64) -> Self {
        let m = self.m;
        SpinMatrix::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    /// Hermitian conjugate.
    pub fn adjoint(self) -> Self {
        let m = self.m;
        SpinMatrix::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }

    pub fn transpose(self) -> Self {
        let m = self.m;
        SpinMatrix::new(m[0][0], m[1][0], m[0][1], m[1][1])
    }

    /// Entrywise complex conjugate.
    pub fn conj(self) -> Self {
        let m = self.m;
        SpinMatrix::new(
            m[0][0].conj(),
            m[0][1].conj(),
            m[1][0].conj(),
            m[1][1].conj(),
        )
    }

    pub fn trace(self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Inverse by the adjugate formula, `None` when the determinant is zero.
    pub fn inverse(self) -> Option<Self> {
        let det = self.det();
        if det == ZERO {
            return None;
        }
        let m = self.m;
        let inv = det.inv();
        Some(SpinMatrix::new(
            m[1][1] * inv,
            -m[0][1] * inv,
            -m[1][0] * inv,
            m[0][0] * inv,
        ))
    }

    pub fn frobenius_norm_sqr(self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(self, other: SpinMatrix) -> f64 {
        (self - other)
            .m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl Default for SpinMatrix {
    fn default() -> Self {
        SpinMatrix::ZERO
    }
}

impl Add for SpinMatrix {
    type Output = SpinMatrix;
    fn add(self, rhs: SpinMatrix) -> SpinMatrix {
        let (a, b) = (self.m, rhs.m);
        SpinMatrix::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for SpinMatrix {
    type Output = SpinMatrix;
    fn sub(self, rhs: SpinMatrix) -> SpinMatrix {
        self + (-rhs)
    }
}

impl Neg for SpinMatrix {
    type Output = SpinMatrix;
    fn neg(self) -> SpinMatrix {
        self.scale(-ONE)
    }
}

impl Mul for SpinMatrix {
    type Output = SpinMatrix;
    fn mul(self, rhs: SpinMatrix) -> SpinMatrix {
        let (a, b) = (self.m, rhs.m);
        SpinMatrix::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<Complex64> for SpinMatrix {
    type Output = SpinMatrix;
    fn mul(self, rhs: Complex64) -> SpinMatrix {
        self.scale(rhs)
    }
}

impl Mul<f64> for SpinMatrix {
    type Output = SpinMatrix;
    fn mul(self, rhs: f64) -> SpinMatrix {
        self.scale(rhs.into())
    }
}

/// Returns σx, σy, σz or the unit matrix.
pub fn pauli(which: Pauli) -> SpinMatrix {
    match which {
        Pauli::Id => SpinMatrix::IDENTITY,
        Pauli::X => SpinMatrix::new(ZERO, ONE, ONE, ZERO),
        Pauli::Y => SpinMatrix::new(ZERO, -I, I, ZERO),
        Pauli::Z => SpinMatrix::new(ONE, ZERO, ZERO, -ONE),
    }
}

/// `e^{iσz x} = diag(e^{ix}, e^{-ix})`.
pub fn exp_sigma_z(x: f64) -> SpinMatrix {
    let (s, c) = x.sin_cos();
    SpinMatrix::diag(Complex64::new(c, s), Complex64::new(c, -s))
}

/// `e^{iσy x} = [[cos x, sin x], [-sin x, cos x]]`.
pub fn exp_sigma_y(x: f64) -> SpinMatrix {
    let (s, c) = x.sin_cos();
    SpinMatrix::from_real([[c, s], [-s, c]])
}

/// Coefficients of `M = s1·id + i(σx sx + σy sy + σz sz)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinComponents {
    pub s1: Complex64,
    pub sx: Complex64,
    pub sy: Complex64,
    pub sz: Complex64,
}

impl SpinComponents {
    pub fn axis(&self, axis: Axis) -> Complex64 {
        match axis {
            Axis::X => self.sx,
            Axis::Y => self.sy,
            Axis::Z => self.sz,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.s1.norm_sqr() + self.sx.norm_sqr() + self.sy.norm_sqr() + self.sz.norm_sqr()
    }
}

pub fn decompose(m: SpinMatrix) -> SpinComponents {
    let two_i = Complex64::new(0.0, 2.0);
    SpinComponents {
        s1: m.trace() / 2.0,
        sx: (pauli(Pauli::X) * m).trace() / two_i,
        sy: (pauli(Pauli::Y) * m).trace() / two_i,
        sz: (pauli(Pauli::Z) * m).trace() / two_i,
    }
}

pub fn compose(c: SpinComponents) -> SpinMatrix {
    let spin = pauli(Pauli::X) * c.sx + pauli(Pauli::Y) * c.sy + pauli(Pauli::Z) * c.sz;
    SpinMatrix::IDENTITY * c.s1 + spin * I
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_constants() {
        assert_eq!(
            pauli(Pauli::X),
            SpinMatrix::from_real([[0.0, 1.0], [1.0, 0.0]])
        );
        assert_eq!(
            pauli(Pauli::Z),
            SpinMatrix::from_real([[1.0, 0.0], [0.0, -1.0]])
        );
        assert_eq!(pauli(Pauli::Id), SpinMatrix::IDENTITY);
        assert_eq!(
            pauli(Pauli::Y),
            SpinMatrix::new(ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO)
        );
    }

    #[test]
    fn pauli_products() {
        let (x, y, z) = (pauli(Pauli::X), pauli(Pauli::Y), pauli(Pauli::Z));
        for s in [x, y, z] {
            assert_eq!(s * s, SpinMatrix::IDENTITY);
        }
        assert_eq!(x * y, z * I);
        assert_eq!(y * z, x * I);
        assert_eq!(z * x, y * I);
    }

    #[test]
    fn exp_sigma_z_values() {
        assert!(exp_sigma_z(0.0).max_abs_diff(SpinMatrix::IDENTITY) < 1e-15);
        assert!(exp_sigma_z(FRAC_PI_2).max_abs_diff(SpinMatrix::diag(I, -I)) < 1e-15);
        assert!(exp_sigma_z(PI).max_abs_diff(-SpinMatrix::IDENTITY) < 1e-15);
    }

    #[test]
    fn exp_sigma_y_values() {
        assert!(exp_sigma_y(0.0).max_abs_diff(SpinMatrix::IDENTITY) < 1e-15);
        let quarter = SpinMatrix::from_real([[0.0, 1.0], [-1.0, 0.0]]);
        assert!(exp_sigma_y(FRAC_PI_2).max_abs_diff(quarter) < 1e-15);
        let round = exp_sigma_y(0.37) * exp_sigma_y(-0.37);
        assert!(round.max_abs_diff(SpinMatrix::IDENTITY) < 1e-15);
    }

    #[test]
    fn exponentials_are_group_homomorphisms() {
        let (a, b) = (0.81, -2.3);
        assert!((exp_sigma_z(a) * exp_sigma_z(b)).max_abs_diff(exp_sigma_z(a + b)) < 1e-14);
        assert!((exp_sigma_y(a) * exp_sigma_y(b)).max_abs_diff(exp_sigma_y(a + b)) < 1e-14);
    }

    #[test]
    fn decompose_examples() {
        let id = decompose(SpinMatrix::IDENTITY);
        assert_eq!((id.s1, id.sx, id.sy, id.sz), (ONE, ZERO, ZERO, ZERO));

        let z = decompose(pauli(Pauli::Z));
        assert_eq!((z.s1, z.sx, z.sy, z.sz), (ZERO, ZERO, ZERO, -I));

        let x = decompose(pauli(Pauli::X));
        assert_eq!((x.s1, x.sx, x.sy, x.sz), (ZERO, -I, ZERO, ZERO));
    }

    #[test]
    fn compose_examples() {
        let id = SpinComponents {
            s1: ONE,
            sx: ZERO,
            sy: ZERO,
            sz: ZERO,
        };
        assert_eq!(compose(id), SpinMatrix::IDENTITY);
        let z = SpinComponents {
            s1: ZERO,
            sx: ZERO,
            sy: ZERO,
            sz: -I,
        };
        assert_eq!(compose(z), pauli(Pauli::Z));
    }

    #[test]
    fn inverse_and_adjoint() {
        let m = SpinMatrix::new(c(0.3, -0.2), c(1.1, 0.4), c(-0.7, 0.9), c(0.05, 0.6));
        let inv = m.inverse().unwrap();
        assert!((m * inv).max_abs_diff(SpinMatrix::IDENTITY) < 1e-12);
        assert_eq!(m.adjoint().adjoint(), m);
        assert!(SpinMatrix::ZERO.inverse().is_none());
    }
}
