//! Shannon entropies of the position and momentum densities and the
//! Białynicki-Birula–Mycielski bound `S_ρ + S_γ >= 1 + ln π`.
//!
//! All entropies are in nats. Integrands use `ρ ln ρ := 0` wherever
//! `ρ < 1e-300`.

use std::f64::consts::{LN_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadrature::{
    integrate_real_line_scaled, integrate_semi_infinite_scaled, QuadratureError, ToleranceSpec,
};
use crate::states::{gamma_density, gamma_stc_density, rho_density, QuantumIndex};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Densities below this are treated as exact zeros in `ρ ln ρ`.
pub const DENSITY_FLOOR: f64 = 1e-300;

/// Slack on the bound check, since both sides come out of quadrature.
pub const BBM_TOLERANCE: f64 = 1e-9;

/// Largest `n` for which position entropies are validated.
pub const MAX_POSITION_INDEX: u32 = 50;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntropyError {
    #[error("n = {n} outside the validated range n <= {max}")]
    OutOfRange { n: u32, max: u32 },
    #[error("entropy quadrature for n = {n} failed: {source}")]
    Quadrature {
        n: u32,
        #[source]
        source: QuadratureError,
    },
}

/// `1 + ln π`
pub fn bbm_bound() -> f64 {
    1.0 + PI.ln()
}

/// `-ρ ln ρ` with the zero-density convention.
pub fn entropy_density(rho: f64) -> f64 {
    if rho < DENSITY_FLOOR {
        0.0
    } else {
        -rho * rho.ln()
    }
}

fn quad_err(n: QuantumIndex) -> impl FnOnce(QuadratureError) -> EntropyError {
    move |source| EntropyError::Quadrature { n: n.get(), source }
}

pub fn shannon_position(n: QuantumIndex) -> Result<f64, EntropyError> {
    shannon_position_with(n, &ToleranceSpec::default())
}

/// `S_ρ = -∫₀^∞ Ψ_n² ln Ψ_n² dx`
pub fn shannon_position_with(n: QuantumIndex, tol: &ToleranceSpec) -> Result<f64, EntropyError> {
    if n.get() > MAX_POSITION_INDEX {
        return Err(EntropyError::OutOfRange {
            n: n.get(),
            max: MAX_POSITION_INDEX,
        });
    }
    let scale = n.as_f64() * n.as_f64();
    integrate_semi_infinite_scaled(|x| entropy_density(rho_density(n, x)), scale, tol)
        .map(|r| r.value)
        .map_err(quad_err(n))
}

pub fn shannon_momentum_numeric(n: QuantumIndex) -> Result<f64, EntropyError> {
    shannon_momentum_numeric_with(n, &ToleranceSpec::default())
}

/// `S_γ = -∫_{-∞}^{∞} γ_n ln γ_n dp`
pub fn shannon_momentum_numeric_with(n: QuantumIndex, tol: &ToleranceSpec) -> Result<f64, EntropyError> {
    integrate_real_line_scaled(|p| entropy_density(gamma_density(n, p)), n.as_f64().recip(), tol)
        .map(|r| r.value)
        .map_err(quad_err(n))
}

/// `S_γ = -ln(2n/π) + 4(ln 2 - 1/2)`
pub fn shannon_momentum_analytic(n: QuantumIndex) -> f64 {
    -(2.0 * n.as_f64() / PI).ln() + 4.0 * (LN_2 - 0.5)
}

pub fn shannon_stc(n: QuantumIndex) -> Result<f64, EntropyError> {
    shannon_stc_with(n, &ToleranceSpec::default())
}

/// Entropy of the doubled rival density over `p >= 0` only.
pub fn shannon_stc_with(n: QuantumIndex, tol: &ToleranceSpec) -> Result<f64, EntropyError> {
    integrate_semi_infinite_scaled(
        |p| entropy_density(gamma_stc_density(n, p)),
        n.as_f64().recip(),
        tol,
    )
    .map(|r| r.value)
    .map_err(quad_err(n))
}

/// Which momentum density enters the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentumSource {
    /// `|Φ_n|²` over the whole line.
    Correct,
    /// The doubled rival density over `p >= 0`.
    Stc,
}

impl fmt::Display for MomentumSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Self::Correct => "correct",
            Self::Stc => "stc",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub n: QuantumIndex,
    pub source: MomentumSource,
    pub s_rho: f64,
    pub s_gamma_numeric: f64,
    /// Closed form; absent for the rival density.
    pub s_gamma_analytic: Option<f64>,
    pub bbm_sum: f64,
    pub bbm_bound: f64,
    pub satisfied: bool,
    pub margin: f64,
}

impl EntropyReport {
    fn assemble(n: QuantumIndex, source: MomentumSource, s_rho: f64, s_gamma: f64, analytic: Option<f64>) -> Self {
        let bbm_sum = s_rho + s_gamma;
        let bbm_bound = bbm_bound();
        let margin = bbm_sum - bbm_bound;
        Self {
            n,
            source,
            s_rho,
            s_gamma_numeric: s_gamma,
            s_gamma_analytic: analytic,
            bbm_sum,
            bbm_bound,
            satisfied: margin >= -BBM_TOLERANCE,
            margin,
        }
    }
}

pub fn bbm_report(n: QuantumIndex, source: MomentumSource) -> Result<EntropyReport, EntropyError> {
    bbm_report_with(n, source, &ToleranceSpec::default())
}

pub fn bbm_report_with(
    n: QuantumIndex,
    source: MomentumSource,
    tol: &ToleranceSpec,
) -> Result<EntropyReport, EntropyError> {
    let s_rho = shannon_position_with(n, tol)?;
    let report = match source {
        MomentumSource::Correct => {
            let numeric = shannon_momentum_numeric_with(n, tol)?;
            EntropyReport::assemble(n, source, s_rho, numeric, Some(shannon_momentum_analytic(n)))
        }
        MomentumSource::Stc => EntropyReport::assemble(n, source, s_rho, shannon_stc_with(n, tol)?, None),
    };
    Ok(report)
}
