//! Bound states of the hydrogen atom on the half-line `x > 0` with a hard
//! wall at the origin, in Coulomb units (mass, coupling and ħ all 1).

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::special_functions::{laguerre, LaguerreParams};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("quantum index must be >= 1, got {0}")]
    InvalidIndex(i64),
    #[error("x = {0} lies behind the hard wall (x <= 0)")]
    HardWall(f64),
}

/// Principal quantum number `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "u32")]
pub struct QuantumIndex(u32);

impl QuantumIndex {
    pub fn new(n: u32) -> Result<Self, StateError> {
        if n == 0 {
            Err(StateError::InvalidIndex(0))
        } else {
            Ok(Self(n))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }

    /// `(-1)^{n+1}`
    fn sign(self) -> f64 {
        if self.0 % 2 == 1 {
            1.0
        } else {
            -1.0
        }
    }
}

impl TryFrom<i64> for QuantumIndex {
    type Error = StateError;

    fn try_from(n: i64) -> Result<Self, Self::Error> {
        u32::try_from(n)
            .ok()
            .filter(|&n| n >= 1)
            .map(Self)
            .ok_or(StateError::InvalidIndex(n))
    }
}

impl From<QuantumIndex> for u32 {
    fn from(n: QuantumIndex) -> u32 {
        n.0
    }
}

impl fmt::Display for QuantumIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A complex wavefunction value.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexAmplitude {
    pub re: f64,
    pub im: f64,
}

impl ComplexAmplitude {
    pub const ZERO: Self = Self { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn from_polar(modulus: f64, phase: f64) -> Self {
        let (s, c) = phase.sin_cos();
        Self {
            re: modulus * c,
            im: modulus * s,
        }
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn conj(self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl std::ops::Add for ComplexAmplitude {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl std::ops::Sub for ComplexAmplitude {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl std::ops::Mul for ComplexAmplitude {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

/// Convenience bundle of the per-state functions below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundState {
    pub n: QuantumIndex,
}

impl BoundState {
    pub fn new(n: u32) -> Result<Self, StateError> {
        Ok(Self {
            n: QuantumIndex::new(n)?,
        })
    }

    pub fn energy(&self) -> f64 {
        energy(self.n)
    }

    pub fn psi(&self, x: f64) -> f64 {
        psi(self.n, x)
    }

    pub fn phi(&self, p: f64) -> ComplexAmplitude {
        phi(self.n, p)
    }

    pub fn momentum_density(&self, p: f64) -> f64 {
        gamma_density(self.n, p)
    }

    pub fn position_density(&self, x: f64) -> f64 {
        rho_density(self.n, x)
    }
}

/// `V(x) = -1/x` on `x > 0`.
pub fn potential(x: f64) -> Result<f64, StateError> {
    if x > 0.0 {
        Ok(-1.0 / x)
    } else {
        Err(StateError::HardWall(x))
    }
}

/// `E_n = -1 / (2 n^2)`
pub fn energy(n: QuantumIndex) -> f64 {
    let n = n.as_f64();
    -0.5 / (n * n)
}

/// Position eigenfunction `Ψ_n(x) = (2x / n^{5/2}) e^{-x/n} L_{n-1}^{(1)}(2x/n)`.
///
/// Returns 0 for `x <= 0` (inside the wall) and wherever the exponential
/// envelope underflows.
pub fn psi(n: QuantumIndex, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let nf = n.as_f64();
    let envelope = (-x / nf).exp();
    if envelope == 0.0 {
        return 0.0;
    }
    let y = 2.0 * x / nf;
    let poly = laguerre(LaguerreParams::new(n.get() - 1, 1), y);
    2.0 * x / nf.powf(2.5) * envelope * poly
}

/// Momentum eigenfunction `(-1)^{n+1} √(2n/π) (1 - inp)^{n-1} / (1 + inp)^{n+1}`.
///
/// Evaluated in polar form: modulus `√(2n/π) / (1 + n²p²)` and phase
/// `-2n·arctan(np)`.
pub fn phi(n: QuantumIndex, p: f64) -> ComplexAmplitude {
    let nf = n.as_f64();
    let np = nf * p;
    let modulus = n.sign() * (2.0 * nf / PI).sqrt() / (1.0 + np * np);
    ComplexAmplitude::from_polar(modulus, -2.0 * nf * np.atan())
}

/// The real-valued rival waveform `(-1)^n √(2n/π) sin(2n·arctan(np)) / (1 + n²p²)`,
/// identical to the imaginary part of [`phi`].
pub fn phi_stc(n: QuantumIndex, p: f64) -> f64 {
    let nf = n.as_f64();
    let np = nf * p;
    -n.sign() * (2.0 * nf / PI).sqrt() * (2.0 * nf * np.atan()).sin() / (1.0 + np * np)
}

/// `γ_n(p) = |Φ_n(p)|² = (2n/π) / (1 + n²p²)²`
pub fn gamma_density(n: QuantumIndex, p: f64) -> f64 {
    let nf = n.as_f64();
    let d = 1.0 + nf * nf * p * p;
    2.0 * nf / PI / (d * d)
}

/// Density of the rival waveform after doubling it:
/// `(8n/π) sin²(2n·arctan(np)) / (1 + n²p²)²`. Normalized on `p >= 0` only.
pub fn gamma_stc_density(n: QuantumIndex, p: f64) -> f64 {
    let nf = n.as_f64();
    let np = nf * p;
    let s = (2.0 * nf * np.atan()).sin();
    let d = 1.0 + np * np;
    8.0 * nf / PI * s * s / (d * d)
}

/// `ρ_n(x) = Ψ_n(x)²`
pub fn rho_density(n: QuantumIndex, x: f64) -> f64 {
    let v = psi(n, x);
    v * v
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;

    fn q(n: u32) -> QuantumIndex {
        QuantumIndex::new(n).unwrap()
    }

    #[test]
    fn index_rejects_zero() {
        assert_eq!(QuantumIndex::new(0), Err(StateError::InvalidIndex(0)));
        assert!(QuantumIndex::try_from(-3i64).is_err());
        assert_eq!(QuantumIndex::try_from(4i64).unwrap().get(), 4);
    }

    #[test]
    fn potential_values_and_wall() {
        assert_eq!(potential(1.0).unwrap(), -1.0);
        assert_eq!(potential(2.0).unwrap(), -0.5);
        assert!((potential(0.1).unwrap() + 10.0).abs() < 1e-14);
        assert_eq!(potential(0.0), Err(StateError::HardWall(0.0)));
        assert_eq!(potential(-1.0), Err(StateError::HardWall(-1.0)));
    }

    #[test]
    fn energies() {
        assert_eq!(energy(q(1)), -0.5);
        assert_eq!(energy(q(2)), -0.125);
        assert_eq!(energy(q(1000)), -5e-7);
        assert!(energy(q(1000)) < 0.0);
    }

    #[test]
    fn psi_ground_state() {
        assert_eq!(psi(q(1), 0.0), 0.0);
        assert!((psi(q(1), 1.0) - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        assert!((psi(q(1), 1.0) - 0.735758882).abs() < 1e-9);
    }

    #[test]
    fn psi_second_state_at_one() {
        // (2/2^{5/2}) e^{-1/2} L_1^(1)(1), with L_1^(1)(1) = 1
        let expected = 2.0 / 2f64.powf(2.5) * (-0.5f64).exp();
        assert!((psi(q(2), 1.0) - expected).abs() < 1e-15);
        assert!((psi(q(2), 1.0) - 0.214_440_9).abs() < 1e-7);
    }

    #[test]
    fn psi_far_tail_is_zero_not_nan() {
        for n in [1, 5, 20, 50] {
            let v = psi(q(n), 1e6);
            assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho_density(q(1), 0.0), 0.0);
        assert!((rho_density(q(1), 1.0) - 0.5413411329).abs() < 1e-10);
    }

    #[test]
    fn phi_at_origin() {
        let a = phi(q(1), 0.0);
        assert!((a.re - (2.0 / PI).sqrt()).abs() < 1e-15);
        assert_eq!(a.im, 0.0);
        assert!((a.re - 0.7978845608).abs() < 1e-10);
        let b = phi(q(2), 0.0);
        assert!((b.re + (4.0 / PI).sqrt()).abs() < 1e-15);
        assert!((b.re + 1.1283791671).abs() < 1e-10);
    }

    #[test]
    fn phi_matches_direct_complex_power() {
        // repeated complex multiplication route, independent of the polar form
        for n in 1..=8u32 {
            for &p in &[-2.0, -0.3, 0.0, 0.7, 1.0, 4.0] {
                let nf = f64::from(n);
                let a = ComplexAmplitude::new(1.0, -nf * p);
                let b = ComplexAmplitude::new(1.0, nf * p);
                let mut num = ComplexAmplitude::new(1.0, 0.0);
                for _ in 0..n - 1 {
                    num = num * a;
                }
                let mut den = ComplexAmplitude::new(1.0, 0.0);
                for _ in 0..n + 1 {
                    den = den * b;
                }
                let d2 = den.norm_sqr();
                let ratio = num * den.conj();
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                let scale = sign * (2.0 * nf / PI).sqrt() / d2;
                let expected = ComplexAmplitude::new(ratio.re * scale, ratio.im * scale);
                let got = phi(q(n), p);
                assert!((got - expected).abs() < 1e-13, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn phi_stc_examples() {
        assert_eq!(phi_stc(q(1), 0.0), 0.0);
        assert!((phi_stc(q(3), 0.7) - phi(q(3), 0.7).im).abs() < 1e-15);
        for &p in &[1.0, 10.0, 100.0, 1e4] {
            let v = phi_stc(q(2), p);
            assert!(v.abs() <= (4.0 / PI).sqrt() / (1.0 + 4.0 * p * p) * (1.0 + 1e-15));
        }
    }

    #[test]
    fn gamma_examples() {
        assert!((gamma_density(q(1), 0.0) - 0.6366197724).abs() < 1e-10);
        assert!((gamma_density(q(10), 0.0) - 6.3661977237).abs() < 1e-10);
    }

    #[test]
    fn stc_density_is_four_times_square() {
        assert_eq!(gamma_stc_density(q(1), 0.0), 0.0);
        let s = phi_stc(q(2), 0.5);
        assert!((gamma_stc_density(q(2), 0.5) - 4.0 * s * s).abs() < 1e-15);
    }

    #[test]
    fn grid_identities() {
        for n in 1..=20 {
            let n = q(n);
            for i in -200..=200 {
                let p = f64::from(i) * 0.05;
                let a = phi(n, p);
                let b = phi(n, -p);
                assert!((a.norm_sqr() - gamma_density(n, p)).abs() <= 1e-12);
                assert!((phi_stc(n, p) - a.im).abs() <= 1e-12);
                assert!((a.re - b.re).abs() <= 1e-12);
                assert!((a.im + b.im).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn momentum_density_decreases_in_abs_p() {
        for n in 1..=20 {
            let n = q(n);
            assert_eq!(gamma_density(n, 0.0), 2.0 * n.as_f64() / PI);
            let mut prev = gamma_density(n, 0.0);
            for i in 1..=500 {
                let p = f64::from(i) * 0.01;
                let v = gamma_density(n, p);
                assert!(v < prev);
                assert_eq!(v, gamma_density(n, -p));
                prev = v;
            }
        }
    }

    #[test]
    fn psi_node_count() {
        for n in 1..=15u32 {
            let idx = q(n);
            let xmax = 2.0 * f64::from(n * n) + 10.0 * f64::from(n) + 20.0;
            let steps = 40_000;
            let mut changes = 0;
            let mut last = psi(idx, xmax / f64::from(steps));
            for i in 2..=steps {
                let v = psi(idx, xmax * f64::from(i) / f64::from(steps));
                if v != 0.0 && v.signum() != last.signum() {
                    changes += 1;
                }
                if v != 0.0 {
                    last = v;
                }
            }
            assert_eq!(changes, n - 1, "n={n}");
        }
    }

    #[test]
    fn bound_state_forwards() {
        let s = BoundState::new(3).unwrap();
        assert_eq!(s.energy(), energy(q(3)));
        assert_eq!(s.psi(2.0), psi(q(3), 2.0));
        assert_eq!(s.phi(0.4), phi(q(3), 0.4));
        assert_eq!(s.momentum_density(0.4), gamma_density(q(3), 0.4));
        assert_eq!(s.position_density(2.0), rho_density(q(3), 2.0));
        assert!(BoundState::new(0).is_err());
    }
}
