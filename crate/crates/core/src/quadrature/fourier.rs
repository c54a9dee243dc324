//! `Φ(p) = (2π)^{-1/2} ∫₀^∞ e^{-ipx} f(x) dx` by direct quadrature.
//!
//! Strongly oscillating cases are split at the half periods `kπ/|p|`, so
//! every starting panel sees one sign of `cos(px)` and `sin(px)`. Mild cases
//! start from uniform panels one decay length wide. Either way the range
//! stops at a truncation point past which `|f|` is negligible.

use std::f64::consts::PI;

use super::{integrate_with_breakpoints, QuadratureError, QuadratureResult, ToleranceSpec};
use crate::states::{psi, ComplexAmplitude, QuantumIndex};

/// Largest `|p|` for which the oracle is validated.
pub const MAX_FOURIER_MOMENTUM: f64 = 50.0;

/// Threshold on `|p|·decay_length` above which half-period splitting is used.
const OSCILLATION_THRESHOLD: f64 = 2.0;

/// Truncation point for `Ψ_n`.
///
/// Past `x = 4n²` all nodes are behind and `|Ψ_n|` falls faster than
/// `e^{-x/(4n)}`, so the tail integral is below `4n·|Ψ_n(x)|`. Returns the
/// first `x >= 4n²` (stepping by `n`) where that bound drops under one
/// hundredth of `absolute`.
pub fn psi_truncation(n: QuantumIndex, absolute: f64) -> f64 {
    let nf = n.as_f64();
    let mut x = 4.0 * nf * nf;
    let budget = 1e-2 * absolute * (2.0 * PI).sqrt();
    while 4.0 * nf * psi(n, x).abs() > budget {
        x += nf;
    }
    x
}

/// Numerical Fourier transform of `Ψ_n` at momentum `p`.
pub fn fourier_transform_numeric(
    n: QuantumIndex,
    p: f64,
    tol: &ToleranceSpec,
) -> Result<QuadratureResult<ComplexAmplitude>, QuadratureError> {
    let truncation = psi_truncation(n, tol.absolute);
    fourier_half_line(|x| psi(n, x), p, n.as_f64(), truncation, tol)
}

/// Fourier transform of an arbitrary `f` supported on `[0, truncation]`.
///
/// `decay_length` is the scale on which `f` varies; it selects between the
/// split and the direct scheme.
pub fn fourier_half_line<F>(
    f: F,
    p: f64,
    decay_length: f64,
    truncation: f64,
    tol: &ToleranceSpec,
) -> Result<QuadratureResult<ComplexAmplitude>, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    if !p.is_finite() || p.abs() > MAX_FOURIER_MOMENTUM {
        return Err(QuadratureError::InvalidArgument(format!(
            "momentum {p} outside the validated range |p| <= {MAX_FOURIER_MOMENTUM}"
        )));
    }
    if !(decay_length > 0.0 && truncation > 0.0 && truncation.is_finite()) {
        return Err(QuadratureError::InvalidArgument(
            "decay length and truncation must be positive".into(),
        ));
    }

    let breaks = if p.abs() * decay_length > OSCILLATION_THRESHOLD {
        let half_period = PI / p.abs();
        let count = (truncation / half_period).ceil() as usize;
        (0..=count).map(|k| k as f64 * half_period).collect::<Vec<_>>()
    } else {
        let count = (truncation / decay_length).ceil().max(1.0) as usize;
        let width = truncation / count as f64;
        (0..=count).map(|k| k as f64 * width).collect()
    };

    let re = integrate_with_breakpoints(|x| (p * x).cos() * f(x), &breaks, tol)?;
    let im = if p == 0.0 {
        QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        }
    } else {
        integrate_with_breakpoints(|x| -(p * x).sin() * f(x), &breaks, tol)?
    };

    let norm = (2.0 * PI).sqrt().recip();
    Ok(QuadratureResult {
        value: ComplexAmplitude::new(re.value * norm, im.value * norm),
        error_estimate: (re.error_estimate + im.error_estimate) * norm,
        evaluations: re.evaluations + im.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::phi;

    fn q(n: u32) -> QuantumIndex {
        QuantumIndex::new(n).unwrap()
    }

    #[test]
    fn ground_state_at_zero_momentum() {
        // ∫₀^∞ 2x e^{-x} dx / √(2π) = 2/√(2π)
        let r = fourier_transform_numeric(q(1), 0.0, &ToleranceSpec::default()).unwrap();
        assert!((r.value.re - 2.0 / (2.0 * PI).sqrt()).abs() < 1e-12);
        assert_eq!(r.value.im, 0.0);
    }

    #[test]
    fn ground_state_at_unit_momentum() {
        let r = fourier_transform_numeric(q(1), 1.0, &ToleranceSpec::default()).unwrap();
        // √(2/π) / (1+i)² = √(2/π) · (-i/2)
        let expected = ComplexAmplitude::new(0.0, -0.5 * (2.0 / PI).sqrt());
        assert!((r.value - expected).abs() < 1e-8);
        assert!((r.value - phi(q(1), 1.0)).abs() < 1e-8);
    }

    #[test]
    fn high_state_oscillation_rich_point() {
        let r = fourier_transform_numeric(q(10), 0.2, &ToleranceSpec::default()).unwrap();
        assert!((r.value - phi(q(10), 0.2)).abs() < 1e-8);
    }

    #[test]
    fn split_path_is_used_and_accurate() {
        let r = fourier_transform_numeric(q(4), 0.3, &ToleranceSpec::default()).unwrap();
        assert!((r.value - phi(q(4), 0.3)).abs() < 1e-8);
        let r = fourier_transform_numeric(q(3), -5.0, &ToleranceSpec::default()).unwrap();
        assert!((r.value - phi(q(3), -5.0)).abs() < 1e-8);
    }

    #[test]
    fn rejects_out_of_range_momentum() {
        assert!(fourier_transform_numeric(q(1), 51.0, &ToleranceSpec::default()).is_err());
        assert!(fourier_transform_numeric(q(1), f64::NAN, &ToleranceSpec::default()).is_err());
    }

    #[test]
    fn transform_is_linear() {
        let tol = ToleranceSpec::default();
        let cut = psi_truncation(q(2), tol.absolute);
        for &p in &[0.0, 0.4, 1.5, -3.0] {
            let sum = fourier_half_line(|x| psi(q(1), x) + psi(q(2), x), p, 2.0, cut, &tol).unwrap();
            let a = fourier_half_line(|x| psi(q(1), x), p, 2.0, cut, &tol).unwrap();
            let b = fourier_half_line(|x| psi(q(2), x), p, 2.0, cut, &tol).unwrap();
            let bound = sum.error_estimate + a.error_estimate + b.error_estimate + 1e-14;
            assert!((sum.value - (a.value + b.value)).abs() <= bound, "p={p}");
        }
    }

    #[test]
    fn doubling_truncation_stays_within_error_estimate() {
        let tol = ToleranceSpec::default();
        for n in [1, 3, 7] {
            let n = q(n);
            let cut = psi_truncation(n, tol.absolute);
            for &p in &[0.1, 1.0, 4.0] {
                let a = fourier_half_line(|x| psi(n, x), p, n.as_f64(), cut, &tol).unwrap();
                let b = fourier_half_line(|x| psi(n, x), p, n.as_f64(), 2.0 * cut, &tol).unwrap();
                assert!(
                    (a.value - b.value).abs() <= a.error_estimate.max(b.error_estimate),
                    "n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn truncation_grows_with_n() {
        let t1 = psi_truncation(q(1), 1e-12);
        let t10 = psi_truncation(q(10), 1e-12);
        assert!(t1 >= 4.0 && t10 >= 400.0 && t10 > t1);
        assert!(psi(q(10), t10).abs() * 40.0 < 1e-13);
    }
}
