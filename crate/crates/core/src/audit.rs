//! Executable checks of the relations between the position and momentum
//! pictures: orthonormality in both spaces, agreement of the closed-form
//! momentum waveform with a numerical Fourier transform, node counts, the
//! half-line normalization of the rival density, and concentration of the
//! momentum density at large `n`.
//!
//! Every check returns a [`ClaimReport`]; `passed` is always
//! `residual <= tolerance`.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadrature::{
    fourier_transform_numeric, integrate, integrate_real_line_scaled, integrate_semi_infinite_scaled,
    QuadratureError, ToleranceSpec,
};
use crate::states::{gamma_density, gamma_stc_density, phi, phi_stc, psi, ComplexAmplitude, QuantumIndex};

pub const GRAM_TOLERANCE: f64 = 1e-8;
pub const FOURIER_TOLERANCE: f64 = 1e-8;
pub const STC_NORMALIZATION_TOLERANCE: f64 = 1e-9;
pub const DELTA_TOLERANCE: f64 = 1e-12;
pub const NODE_TOLERANCE: f64 = 1e-9;

pub const MAX_GRAM_INDEX: u32 = 20;
pub const MAX_FOURIER_INDEX: u32 = 20;
pub const MAX_CONSISTENCY_MOMENTUM: f64 = 10.0;
pub const MAX_NODE_INDEX: u32 = 15;
pub const MAX_STC_INDEX: u32 = 20;

/// `{0, ±0.5, ±1, ±2, ±5}` in ascending order.
pub const DEFAULT_P_GRID: [f64; 9] = [-5.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0];

pub const DEFAULT_DELTA_HALF_WIDTH: f64 = 0.1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AuditError {
    #[error("{what} = {value} outside the validated range (max {max})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        max: f64,
    },
    #[error("quadrature failed for {context}: {source}")]
    Quadrature {
        context: String,
        #[source]
        source: QuadratureError,
    },
    #[error(
        "sign scan for n = {n} is too coarse: {coarse} sign changes at {samples} samples but {fine} after doubling; densify the grid"
    )]
    CoarseSampling {
        n: u32,
        samples: usize,
        coarse: usize,
        fine: usize,
    },
}

impl AuditError {
    pub fn is_numerical(&self) -> bool {
        matches!(self, Self::Quadrature { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub n_values: Vec<QuantumIndex>,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub details: String,
}

impl ClaimReport {
    pub fn new(
        claim_id: impl Into<String>,
        n_values: Vec<QuantumIndex>,
        residual: f64,
        tolerance: f64,
        details: impl Into<String>,
    ) -> Self {
        Self {
            claim_id: claim_id.into(),
            n_values,
            residual,
            tolerance,
            passed: residual <= tolerance,
            details: details.into(),
        }
    }
}

/// Quadrature tolerances used by every check.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct AuditSettings {
    pub quadrature: ToleranceSpec,
}

fn indices(n_max: QuantumIndex) -> Vec<QuantumIndex> {
    (1..=n_max.get())
        .map(|n| QuantumIndex::new(n).expect("n >= 1"))
        .collect()
}

fn check_index(what: &'static str, n: QuantumIndex, max: u32) -> Result<(), AuditError> {
    if n.get() > max {
        Err(AuditError::OutOfRange {
            what,
            value: n.as_f64(),
            max: f64::from(max),
        })
    } else {
        Ok(())
    }
}

fn pair_err(kind: &str, a: QuantumIndex, b: QuantumIndex) -> impl FnOnce(QuadratureError) -> AuditError + '_ {
    move |source| AuditError::Quadrature {
        context: format!("{kind} pair (n', n) = ({a}, {b})"),
        source,
    }
}

/// `∫₀^∞ Ψ_a Ψ_b dx`
pub fn position_overlap(a: QuantumIndex, b: QuantumIndex, tol: &ToleranceSpec) -> Result<f64, AuditError> {
    let scale = a.max(b).as_f64().powi(2);
    integrate_semi_infinite_scaled(|x| psi(a, x) * psi(b, x), scale, tol)
        .map(|r| r.value)
        .map_err(pair_err("position", a, b))
}

/// `∫ Φ_a* Φ_b dp` over the whole line.
pub fn momentum_overlap(
    a: QuantumIndex,
    b: QuantumIndex,
    tol: &ToleranceSpec,
) -> Result<ComplexAmplitude, AuditError> {
    let scale = a.min(b).as_f64().recip();
    let product = |p: f64| phi(a, p).conj() * phi(b, p);
    let re = integrate_real_line_scaled(|p| product(p).re, scale, tol).map_err(pair_err("momentum", a, b))?;
    let im = integrate_real_line_scaled(|p| product(p).im, scale, tol).map_err(pair_err("momentum", a, b))?;
    Ok(ComplexAmplitude::new(re.value, im.value))
}

/// Upper-triangle pairs `(i, j)`, `i <= j`, in row-major order.
fn pairs(n_max: QuantumIndex) -> Vec<(QuantumIndex, QuantumIndex)> {
    let idx = indices(n_max);
    let mut out = Vec::new();
    for (i, &a) in idx.iter().enumerate() {
        for &b in &idx[i..] {
            out.push((a, b));
        }
    }
    out
}

/// Position-space Gram matrix, row `n'`, column `n`, both starting at 1.
pub fn gram_position(n_max: QuantumIndex, tol: &ToleranceSpec) -> Result<Vec<Vec<f64>>, AuditError> {
    check_index("n_max", n_max, MAX_GRAM_INDEX)?;
    let entries = pairs(n_max)
        .into_par_iter()
        .map(|(a, b)| position_overlap(a, b, tol).map(|v| (a, b, v)))
        .collect::<Result<Vec<_>, _>>()?;
    let size = n_max.get() as usize;
    let mut g = vec![vec![0.0; size]; size];
    for (a, b, v) in entries {
        let (i, j) = (a.get() as usize - 1, b.get() as usize - 1);
        g[i][j] = v;
        g[j][i] = v;
    }
    Ok(g)
}

/// Momentum-space Gram matrix of complex inner products.
pub fn gram_momentum(
    n_max: QuantumIndex,
    tol: &ToleranceSpec,
) -> Result<Vec<Vec<ComplexAmplitude>>, AuditError> {
    check_index("n_max", n_max, MAX_GRAM_INDEX)?;
    let entries = pairs(n_max)
        .into_par_iter()
        .map(|(a, b)| momentum_overlap(a, b, tol).map(|v| (a, b, v)))
        .collect::<Result<Vec<_>, _>>()?;
    let size = n_max.get() as usize;
    let mut g = vec![vec![ComplexAmplitude::ZERO; size]; size];
    for (a, b, v) in entries {
        let (i, j) = (a.get() as usize - 1, b.get() as usize - 1);
        g[i][j] = v;
        g[j][i] = v.conj();
    }
    Ok(g)
}

fn worst_entry<T: Copy>(g: &[Vec<T>], deviation: impl Fn(usize, usize, T) -> f64) -> (f64, usize, usize) {
    let mut worst = (0.0, 1, 1);
    for (i, row) in g.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let d = deviation(i, j, v);
            if d > worst.0 {
                worst = (d, i + 1, j + 1);
            }
        }
    }
    worst
}

pub fn orthonormality_position(n_max: QuantumIndex, settings: &AuditSettings) -> Result<ClaimReport, AuditError> {
    let g = gram_position(n_max, &settings.quadrature)?;
    let (residual, i, j) = worst_entry(&g, |i, j, v| {
        (v - if i == j { 1.0 } else { 0.0 }).abs()
    });
    Ok(ClaimReport::new(
        "orthonormality_position",
        indices(n_max),
        residual,
        GRAM_TOLERANCE,
        format!("max |G - I| over n, n' <= {n_max} at ({i}, {j})"),
    ))
}

pub fn orthonormality_momentum(n_max: QuantumIndex, settings: &AuditSettings) -> Result<ClaimReport, AuditError> {
    let g = gram_momentum(n_max, &settings.quadrature)?;
    let (residual, i, j) = worst_entry(&g, |i, j, v| {
        (v - ComplexAmplitude::new(if i == j { 1.0 } else { 0.0 }, 0.0)).abs()
    });
    Ok(ClaimReport::new(
        "orthonormality_momentum",
        indices(n_max),
        residual,
        GRAM_TOLERANCE,
        format!("max |G - I| (complex modulus) over n, n' <= {n_max} at ({i}, {j})"),
    ))
}

fn check_grid(n: QuantumIndex, p_grid: &[f64]) -> Result<(), AuditError> {
    check_index("n", n, MAX_FOURIER_INDEX)?;
    if let Some(&p) = p_grid
        .iter()
        .find(|p| !p.is_finite() || p.abs() > MAX_CONSISTENCY_MOMENTUM)
    {
        return Err(AuditError::OutOfRange {
            what: "|p|",
            value: p,
            max: MAX_CONSISTENCY_MOMENTUM,
        });
    }
    Ok(())
}

fn transform_on_grid(
    n: QuantumIndex,
    p_grid: &[f64],
    tol: &ToleranceSpec,
) -> Result<Vec<ComplexAmplitude>, AuditError> {
    p_grid
        .par_iter()
        .map(|&p| {
            fourier_transform_numeric(n, p, tol)
                .map(|r| r.value)
                .map_err(|source| AuditError::Quadrature {
                    context: format!("Fourier transform of n = {n} at p = {p}"),
                    source,
                })
        })
        .collect()
}

fn max_deviation(p_grid: &[f64], numeric: &[ComplexAmplitude], model: impl Fn(f64) -> ComplexAmplitude) -> (f64, f64) {
    p_grid
        .iter()
        .zip(numeric)
        .map(|(&p, &v)| ((v - model(p)).abs(), p))
        .fold((0.0, f64::NAN), |acc, x| if x.0 > acc.0 { x } else { acc })
}

/// Largest distance between the numerical transform of `Ψ_n` and the
/// closed-form `Φ_n` over `p_grid`.
pub fn fourier_consistency(
    n: QuantumIndex,
    p_grid: &[f64],
    settings: &AuditSettings,
) -> Result<ClaimReport, AuditError> {
    check_grid(n, p_grid)?;
    let numeric = transform_on_grid(n, p_grid, &settings.quadrature)?;
    let (residual, at) = max_deviation(p_grid, &numeric, |p| phi(n, p));
    Ok(ClaimReport::new(
        "fourier_consistency",
        vec![n],
        residual,
        FOURIER_TOLERANCE,
        format!(
            "max |FT[psi_{n}](p) - phi_{n}(p)| over {} momenta, attained at p = {at}",
            p_grid.len()
        ),
    ))
}

/// Same comparison against the real rival waveform. Expected to fail: the
/// report carries the size of the discrepancy.
pub fn fourier_contrast_stc(
    n: QuantumIndex,
    p_grid: &[f64],
    settings: &AuditSettings,
) -> Result<ClaimReport, AuditError> {
    check_grid(n, p_grid)?;
    let numeric = transform_on_grid(n, p_grid, &settings.quadrature)?;
    let (residual, at) = max_deviation(p_grid, &numeric, |p| ComplexAmplitude::new(phi_stc(n, p), 0.0));
    Ok(ClaimReport::new(
        "fourier_contrast_stc",
        vec![n],
        residual,
        FOURIER_TOLERANCE,
        format!(
            "max |FT[psi_{n}](p) - phi_stc_{n}(p)| = {residual:.4} at p = {at}; the rival waveform drops the real part of the transform"
        ),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeSpace {
    Position,
    MomentumStc,
}

impl fmt::Display for NodeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Position => "position",
            Self::MomentumStc => "momentum_stc",
        })
    }
}

fn sign_changes<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, samples: usize) -> Vec<(f64, f64)> {
    let step = (b - a) / samples as f64;
    let mut brackets = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for i in 1..=samples {
        let x = a + step * i as f64;
        let v = f(x);
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if let Some((lx, lv)) = last {
            if lv.signum() != v.signum() {
                brackets.push((lx, x));
            }
        }
        last = Some((x, v));
    }
    brackets
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Interior sign changes of `f` on `(a, b]`, located by a uniform scan with
/// `samples` points and refined by bisection. The scan is repeated at
/// double density; a different count means adjacent roots were missed.
pub fn locate_sign_changes<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    samples: usize,
    n: QuantumIndex,
) -> Result<Vec<f64>, AuditError> {
    let coarse = sign_changes(&f, a, b, samples);
    let fine = sign_changes(&f, a, b, 2 * samples);
    if coarse.len() != fine.len() {
        return Err(AuditError::CoarseSampling {
            n: n.get(),
            samples,
            coarse: coarse.len(),
            fine: fine.len(),
        });
    }
    Ok(fine.into_iter().map(|(lo, hi)| bisect(&f, lo, hi)).collect())
}

/// Scan window for the nodes of `Ψ_n`. All zeros of `L_{n-1}^{(1)}(y)`
/// lie below `y = 4n`, i.e. below `x = 2n²`.
pub fn position_scan_limit(n: QuantumIndex) -> f64 {
    let nf = n.as_f64();
    2.0 * nf * nf + 10.0 * nf + 20.0
}

/// Interior zeros of the rival waveform: `2n·arctan(np) = kπ`, `k = 1..n-1`.
pub fn stc_zeros(n: QuantumIndex) -> Vec<f64> {
    let nf = n.as_f64();
    (1..n.get())
        .map(|k| (f64::from(k) * PI / (2.0 * nf)).tan() / nf)
        .collect()
}

fn format_roots(roots: &[f64]) -> String {
    roots
        .iter()
        .map(|r| format!("{r:.6}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn node_count(n: QuantumIndex, space: NodeSpace) -> Result<ClaimReport, AuditError> {
    check_index("n", n, MAX_NODE_INDEX)?;
    let expected = (n.get() - 1) as usize;
    match space {
        NodeSpace::Position => {
            let limit = position_scan_limit(n);
            let samples = (200 * n.get() as usize).max((limit / 0.02).ceil() as usize);
            let roots = locate_sign_changes(|x| psi(n, x), 0.0, limit, samples, n)?;
            let residual = (roots.len() as f64 - expected as f64).abs();
            Ok(ClaimReport::new(
                "node_count_position",
                vec![n],
                residual,
                NODE_TOLERANCE,
                format!(
                    "{} sign changes of psi_{n} on (0, {limit}), expected {expected}; roots [{}]",
                    roots.len(),
                    format_roots(&roots)
                ),
            ))
        }
        NodeSpace::MomentumStc => {
            let analytic = stc_zeros(n);
            let limit = 2.0 * analytic.last().copied().unwrap_or(0.0) + 1.0;
            let samples = (200 * n.get() as usize).max(2000);
            let roots = locate_sign_changes(|p| phi_stc(n, p), 0.0, limit, samples, n)?;
            let count_gap = (roots.len() as f64 - expected as f64).abs();
            let position_gap = if roots.len() == analytic.len() {
                roots
                    .iter()
                    .zip(&analytic)
                    .map(|(r, z)| (r - z).abs())
                    .fold(0.0, f64::max)
            } else {
                0.0
            };
            let origin = phi_stc(n, 0.0);
            Ok(ClaimReport::new(
                "node_count_momentum_stc",
                vec![n],
                count_gap.max(position_gap).max(origin.abs()),
                NODE_TOLERANCE,
                format!(
                    "{} interior zeros of phi_stc_{n} plus the zero at p = 0, expected {expected}; tan(k pi/(2n))/n = [{}]",
                    roots.len(),
                    format_roots(&analytic)
                ),
            ))
        }
    }
}

/// Integrals of the doubled rival density over `p >= 0` and over the
/// whole line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StcIntegrals {
    pub half_line: f64,
    pub whole_line: f64,
}

pub fn stc_integrals(n: QuantumIndex, tol: &ToleranceSpec) -> Result<StcIntegrals, AuditError> {
    check_index("n", n, MAX_STC_INDEX)?;
    let scale = n.as_f64().recip();
    let err = |source| AuditError::Quadrature {
        context: format!("rival density normalization for n = {n}"),
        source,
    };
    let half = integrate_semi_infinite_scaled(|p| gamma_stc_density(n, p), scale, tol).map_err(err)?;
    let whole = integrate_real_line_scaled(|p| gamma_stc_density(n, p), scale, tol).map_err(err)?;
    Ok(StcIntegrals {
        half_line: half.value,
        whole_line: whole.value,
    })
}

pub fn stc_normalization(n: QuantumIndex, settings: &AuditSettings) -> Result<ClaimReport, AuditError> {
    let s = stc_integrals(n, &settings.quadrature)?;
    Ok(ClaimReport::new(
        "stc_normalization",
        vec![n],
        (s.half_line - 1.0).abs(),
        STC_NORMALIZATION_TOLERANCE,
        format!(
            "half-line integral {:.12}; whole-line integral {:.12} (= 2: normalization only holds after discarding p < 0)",
            s.half_line, s.whole_line
        ),
    ))
}

/// Probability mass of `γ_n` in `[-a, a]` from the antiderivative:
/// `(2/π)(arctan(na) + na/(1 + n²a²))`.
pub fn delta_limit(n: QuantumIndex, half_width: f64) -> f64 {
    let u = n.as_f64() * half_width;
    2.0 / PI * (u.atan() + u / (1.0 + u * u))
}

/// Compares [`delta_limit`] with direct quadrature of `γ_n` over `[-a, a]`.
pub fn delta_limit_claim(
    n: QuantumIndex,
    half_width: f64,
    settings: &AuditSettings,
) -> Result<ClaimReport, AuditError> {
    if !(half_width > 0.0 && half_width.is_finite()) {
        return Err(AuditError::OutOfRange {
            what: "half_width",
            value: half_width,
            max: f64::INFINITY,
        });
    }
    let q = &settings.quadrature;
    let tight = ToleranceSpec {
        absolute: q.absolute.min(1e-15),
        relative: q.relative.min(1e-13),
        max_evaluations: q.max_evaluations,
    };
    let numeric = integrate(|p| gamma_density(n, p), -half_width, half_width, &tight)
        .map_err(|source| AuditError::Quadrature {
            context: format!("momentum mass for n = {n}, a = {half_width}"),
            source,
        })?
        .value;
    let closed = delta_limit(n, half_width);
    Ok(ClaimReport::new(
        "delta_limit",
        vec![n],
        (numeric - closed).abs(),
        DELTA_TOLERANCE,
        format!("mass in [-{half_width}, {half_width}] = {closed:.10} (closed form), {numeric:.10} (quadrature)"),
    ))
}

/// Mass in `[-a, a]` must grow strictly with `n`. Residual counts the
/// consecutive pairs (in ascending `n`) that fail to grow.
pub fn delta_concentration(n_values: &[QuantumIndex], half_width: f64) -> ClaimReport {
    let mut ns = n_values.to_vec();
    ns.sort();
    ns.dedup();
    let masses: Vec<f64> = ns.iter().map(|&n| delta_limit(n, half_width)).collect();
    let violations = masses.windows(2).filter(|w| w[1] <= w[0]).count();
    let listing = ns
        .iter()
        .zip(&masses)
        .map(|(n, m)| format!("n={n}: {m:.6}"))
        .collect::<Vec<_>>()
        .join(", ");
    ClaimReport::new(
        "delta_concentration",
        ns,
        violations as f64,
        0.5,
        format!("mass in [-{half_width}, {half_width}]: {listing}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u32) -> QuantumIndex {
        QuantumIndex::new(n).unwrap()
    }

    fn settings() -> AuditSettings {
        AuditSettings::default()
    }

    #[test]
    fn claim_report_pass_rule() {
        assert!(ClaimReport::new("x", vec![], 1e-9, 1e-8, "").passed);
        assert!(!ClaimReport::new("x", vec![], 1e-7, 1e-8, "").passed);
    }

    #[test]
    fn single_normalization() {
        let r = orthonormality_position(q(1), &settings()).unwrap();
        assert!(r.residual <= 1e-10, "{r:?}");
        let r = orthonormality_momentum(q(1), &settings()).unwrap();
        assert!(r.residual <= 1e-10, "{r:?}");
    }

    #[test]
    fn off_diagonal_spot_checks() {
        let tol = ToleranceSpec::default();
        assert!(position_overlap(q(1), q(2), &tol).unwrap().abs() <= 1e-10);
        assert!(momentum_overlap(q(1), q(2), &tol).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn gram_matrices_up_to_five() {
        let r = orthonormality_position(q(5), &settings()).unwrap();
        assert!(r.passed && r.residual <= 1e-8, "{r:?}");
        assert_eq!(r.n_values.len(), 5);
        let r = orthonormality_momentum(q(5), &settings()).unwrap();
        assert!(r.passed && r.residual <= 1e-8, "{r:?}");
    }

    #[test]
    fn gram_range_guard() {
        assert!(matches!(
            gram_position(q(21), &ToleranceSpec::default()),
            Err(AuditError::OutOfRange { .. })
        ));
    }

    #[test]
    fn gram_failure_names_the_pair() {
        let s = AuditSettings {
            quadrature: ToleranceSpec::new(1e-18, 1e-18, 1_000_000).unwrap(),
        };
        let err = orthonormality_position(q(2), &s).unwrap_err();
        assert!(err.is_numerical());
        assert!(err.to_string().contains("pair (n', n)"), "{err}");
    }

    #[test]
    fn fourier_consistency_low_and_high() {
        for n in [1, 10] {
            let r = fourier_consistency(q(n), &DEFAULT_P_GRID, &settings()).unwrap();
            assert!(r.passed && r.residual <= 1e-8, "{r:?}");
        }
    }

    #[test]
    fn fourier_residual_is_reflection_invariant() {
        let grid = [0.3, 1.1, 2.5];
        let mirrored: Vec<f64> = grid.iter().map(|p| -p).collect();
        let a = fourier_consistency(q(3), &grid, &settings()).unwrap();
        let b = fourier_consistency(q(3), &mirrored, &settings()).unwrap();
        assert!((a.residual - b.residual).abs() <= 2e-12);
    }

    #[test]
    fn stc_fails_the_transform_test() {
        let r = fourier_contrast_stc(q(2), &DEFAULT_P_GRID, &settings()).unwrap();
        assert!(!r.passed);
        assert!(r.residual >= 0.1);
        let at_zero = fourier_contrast_stc(q(2), &[0.0], &settings()).unwrap();
        assert!((at_zero.residual - (4.0 / PI).sqrt()).abs() <= 1e-6);
    }

    #[test]
    fn fourier_range_guard() {
        assert!(fourier_consistency(q(1), &[11.0], &settings()).is_err());
        assert!(fourier_consistency(q(21), &[0.0], &settings()).is_err());
    }

    #[test]
    fn node_counts() {
        let r = node_count(q(1), NodeSpace::Position).unwrap();
        assert!(r.passed && r.details.starts_with("0 sign changes"), "{r:?}");
        let r = node_count(q(4), NodeSpace::Position).unwrap();
        assert!(r.passed && r.details.starts_with("3 sign changes"), "{r:?}");
        let r = node_count(q(4), NodeSpace::MomentumStc).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(node_count(q(16), NodeSpace::Position).is_err());
    }

    #[test]
    fn stc_zeros_for_four() {
        let z = stc_zeros(q(4));
        assert_eq!(z.len(), 3);
        for (k, v) in z.iter().enumerate() {
            let expected = ((k as f64 + 1.0) * PI / 8.0).tan() / 4.0;
            assert!((v - expected).abs() < 1e-15);
            assert!(phi_stc(q(4), *v).abs() < 1e-12);
        }
    }

    #[test]
    fn coarse_scan_is_detected() {
        // two roots 1e-3 apart, far below the scan spacing
        // both roots fall between scan points 0.5 and 0.6 at 10 samples
        let f = |x: f64| (x - 0.52) * (x - 0.58);
        let err = locate_sign_changes(f, 0.0, 1.0, 10, q(1)).unwrap_err();
        assert!(matches!(err, AuditError::CoarseSampling { .. }), "{err:?}");
        let roots = locate_sign_changes(f, 0.0, 1.0, 20_000, q(1)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 0.52).abs() < 1e-12 && (roots[1] - 0.58).abs() < 1e-12);
    }

    #[test]
    fn stc_half_and_whole_line() {
        for n in [1, 7] {
            let s = stc_integrals(q(n), &ToleranceSpec::default()).unwrap();
            assert!((s.half_line - 1.0).abs() <= 1e-9, "{s:?}");
            assert!((s.whole_line - 2.0).abs() <= 1e-9, "{s:?}");
            assert!(stc_normalization(q(n), &settings()).unwrap().passed);
        }
    }

    #[test]
    fn delta_limit_values() {
        // na = 5
        let m = delta_limit(q(5), 1.0);
        assert!((m - 2.0 / PI * (5f64.atan() + 5.0 / 26.0)).abs() < 1e-15);
        assert!((m - 0.996_760_962_923_455_6).abs() < 1e-15);
        let a = 0.5;
        let masses: Vec<f64> = [1, 4, 10, 100].iter().map(|&n| delta_limit(q(n), a)).collect();
        assert!(masses.windows(2).all(|w| w[0] < w[1]));
        assert!((delta_limit(q(1), 1e12) - 1.0).abs() < 1e-11);
        assert!((delta_limit(q(2), 1.0) - delta_limit(q(4), 0.5)).abs() <= 1e-12);
    }

    #[test]
    fn delta_claim_and_concentration() {
        for n in [1, 3, 10, 100] {
            let r = delta_limit_claim(q(n), 0.1, &settings()).unwrap();
            assert!(r.passed, "{r:?}");
        }
        assert!(delta_limit_claim(q(1), -1.0, &settings()).is_err());
        let r = delta_concentration(&[q(10), q(1), q(4)], 0.5);
        assert!(r.passed);
        assert_eq!(r.n_values, vec![q(1), q(4), q(10)]);
    }
}
