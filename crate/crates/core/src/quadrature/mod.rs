//! Globally adaptive Gauss–Kronrod integration on finite, semi-infinite and
//! whole-line domains, plus a direct numerical Fourier transform of the
//! position eigenfunctions.
//!
//! Semi-infinite domains are compactified with `x = s·t / (1 - t)`, where
//! `s` is a caller-chosen length scale. The panel with the largest error
//! estimate is bisected until the summed estimate meets
//! `max(absolute, relative·|value|)`. Final sums run over panels sorted by
//! position, so results are reproducible bit for bit.

mod fourier;
mod gauss_kronrod;

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fourier::{fourier_half_line, fourier_transform_numeric, psi_truncation, MAX_FOURIER_MOMENTUM};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error(
        "no convergence after {evaluations} evaluations: best estimate {best} with error {error_estimate:.3e}"
    )]
    NonConvergence {
        best: f64,
        error_estimate: f64,
        evaluations: usize,
    },
    #[error(
        "requested accuracy is below the rounding floor {floor:.3e}: best estimate {best} with error {error_estimate:.3e}"
    )]
    RoundoffLimited {
        best: f64,
        error_estimate: f64,
        floor: f64,
        evaluations: usize,
    },
}

impl QuadratureError {
    /// Best available estimate when the scheme gave up.
    pub fn best_estimate(&self) -> Option<f64> {
        match self {
            Self::NonConvergence { best, .. } | Self::RoundoffLimited { best, .. } => Some(*best),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceSpec {
    pub absolute: f64,
    pub relative: f64,
    pub max_evaluations: usize,
}

impl Default for ToleranceSpec {
    fn default() -> Self {
        Self {
            absolute: 1e-12,
            relative: 1e-10,
            max_evaluations: 1_000_000,
        }
    }
}

impl ToleranceSpec {
    pub fn new(absolute: f64, relative: f64, max_evaluations: usize) -> Result<Self, QuadratureError> {
        let spec = Self {
            absolute,
            relative,
            max_evaluations,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.absolute > 0.0 && self.absolute.is_finite()) {
            return Err(QuadratureError::InvalidTolerance(format!(
                "absolute tolerance must be positive, got {}",
                self.absolute
            )));
        }
        if !(self.relative > 0.0 && self.relative.is_finite()) {
            return Err(QuadratureError::InvalidTolerance(format!(
                "relative tolerance must be positive, got {}",
                self.relative
            )));
        }
        if self.max_evaluations == 0 {
            return Err(QuadratureError::InvalidTolerance(
                "max_evaluations must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Error budget for an integral of magnitude `value`.
    pub fn target(&self, value: f64) -> f64 {
        self.absolute.max(self.relative * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult<T = f64> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    roundoff: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel, QuadratureError> {
    let est = gauss_kronrod::apply(f, a, b).map_err(|x| QuadratureError::NonFinite { x })?;
    Ok(Panel {
        a,
        b,
        value: est.value,
        error: est.error,
        roundoff: est.roundoff,
    })
}

/// Integrates `f` over `[breakpoints[0], breakpoints[last]]`, starting from
/// one panel per consecutive pair of breakpoints.
pub fn integrate_with_breakpoints<F>(
    f: F,
    breakpoints: &[f64],
    tol: &ToleranceSpec,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    tol.validate()?;
    if breakpoints.len() < 2 {
        return Err(QuadratureError::InvalidArgument(
            "need at least two breakpoints".into(),
        ));
    }
    if breakpoints.iter().any(|x| !x.is_finite()) || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(QuadratureError::InvalidArgument(
            "breakpoints must be finite and strictly increasing".into(),
        ));
    }

    let mut heap = BinaryHeap::with_capacity(2 * breakpoints.len());
    let mut evaluations = 0;
    let mut value = 0.0;
    let mut error = 0.0;
    let mut floor = 0.0;
    for w in breakpoints.windows(2) {
        let p = panel(&f, w[0], w[1])?;
        evaluations += gauss_kronrod::POINTS;
        value += p.value;
        error += p.error;
        floor += p.roundoff;
        heap.push(p);
    }

    let finish = |heap: BinaryHeap<Panel>, evaluations: usize| {
        let mut panels = heap.into_vec();
        panels.sort_by(|x, y| x.a.total_cmp(&y.a));
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        (value, error, evaluations)
    };

    loop {
        let target = tol.target(value);
        if error <= target {
            let (value, error_estimate, evaluations) = finish(heap, evaluations);
            return Ok(QuadratureResult {
                value,
                error_estimate,
                evaluations,
            });
        }
        if floor > target && error - floor < floor {
            let (best, error_estimate, evaluations) = finish(heap, evaluations);
            return Err(QuadratureError::RoundoffLimited {
                best,
                error_estimate,
                floor,
                evaluations,
            });
        }
        if evaluations + 2 * gauss_kronrod::POINTS > tol.max_evaluations {
            let (best, error_estimate, evaluations) = finish(heap, evaluations);
            return Err(QuadratureError::NonConvergence {
                best,
                error_estimate,
                evaluations,
            });
        }

        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) || (worst.b - worst.a) < 1e3 * f64::EPSILON * worst.a.abs().max(worst.b.abs()) {
            heap.push(worst);
            let (best, error_estimate, evaluations) = finish(heap, evaluations);
            return Err(QuadratureError::RoundoffLimited {
                best,
                error_estimate,
                floor,
                evaluations,
            });
        }
        let left = panel(&f, worst.a, mid)?;
        let right = panel(&f, mid, worst.b)?;
        evaluations += 2 * gauss_kronrod::POINTS;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        floor += left.roundoff + right.roundoff - worst.roundoff;
        heap.push(left);
        heap.push(right);
    }
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: &ToleranceSpec) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    integrate_with_breakpoints(f, &[a, b], tol)
}

const INITIAL_MAPPED_PANELS: usize = 8;

/// Integrates `f` over `[0, ∞)` with unit length scale.
pub fn integrate_semi_infinite<F>(f: F, tol: &ToleranceSpec) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    integrate_semi_infinite_scaled(f, 1.0, tol)
}

/// Integrates `f` over `[0, ∞)` through `x = scale·t / (1 - t)`. `scale`
/// should be of the order of the region where `f` lives.
pub fn integrate_semi_infinite_scaled<F>(
    f: F,
    scale: f64,
    tol: &ToleranceSpec,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(QuadratureError::InvalidArgument(format!(
            "length scale must be positive, got {scale}"
        )));
    }
    let mapped = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let u = 1.0 - t;
        let x = scale * t / u;
        let fx = f(x);
        if fx == 0.0 {
            0.0
        } else {
            fx * scale / (u * u)
        }
    };
    let breaks: Vec<f64> = (0..=INITIAL_MAPPED_PANELS)
        .map(|i| i as f64 / INITIAL_MAPPED_PANELS as f64)
        .collect();
    integrate_with_breakpoints(mapped, &breaks, tol).map_err(|e| match e {
        // report the offending point in the caller's variable
        QuadratureError::NonFinite { x: t } => QuadratureError::NonFinite {
            x: scale * t / (1.0 - t),
        },
        other => other,
    })
}

/// Integrates `f` over the whole real line with unit length scale.
pub fn integrate_real_line<F>(f: F, tol: &ToleranceSpec) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    integrate_real_line_scaled(f, 1.0, tol)
}

/// Whole-line integral as the sum of the two half-line integrals
/// `∫₀^∞ f(x) dx + ∫₀^∞ f(-x) dx`.
pub fn integrate_real_line_scaled<F>(
    f: F,
    scale: f64,
    tol: &ToleranceSpec,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    let right = integrate_semi_infinite_scaled(&f, scale, tol)?;
    let left = integrate_semi_infinite_scaled(|x| f(-x), scale, tol)?;
    Ok(QuadratureResult {
        value: right.value + left.value,
        error_estimate: right.error_estimate + left.error_estimate,
        evaluations: right.evaluations + left.evaluations,
    })
}
