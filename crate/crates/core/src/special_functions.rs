//! Generalized Laguerre polynomials `L_m^(β)(x)` for integer order.
//!
//! The production path is the forward three-term recurrence in degree. The
//! explicit finite sum, evaluated in exact rational arithmetic, is kept
//! alongside it as an independent cross-check for degrees up to 20.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Largest degree for which the recurrence has been validated against
/// quadrature and the sum oracle.
pub const VALIDATED_MAX_DEGREE: u32 = 50;

/// Largest degree accepted by [`laguerre_sum_oracle`].
pub const SUM_ORACLE_MAX_DEGREE: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecialFunctionError {
    #[error("finite-sum oracle supports degree <= {max}, got {degree}")]
    DegreeTooLarge { degree: u32, max: u32 },
}

/// Degree `m` and order `β` of `L_m^(β)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LaguerreParams {
    pub degree: u32,
    pub order: u32,
}

impl LaguerreParams {
    pub fn new(degree: u32, order: u32) -> Self {
        Self { degree, order }
    }
}

/// Evaluates `L_m^(β)(x)` by the recurrence
/// `(k+1) L_{k+1} = (2k+1+β-x) L_k - (k+β) L_{k-1}`.
pub fn laguerre(params: LaguerreParams, x: f64) -> f64 {
    let beta = f64::from(params.order);
    let mut prev = 1.0;
    if params.degree == 0 {
        return prev;
    }
    let mut curr = 1.0 + beta - x;
    for k in 1..params.degree {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 + beta - x) * curr - (k + beta) * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// Evaluates `Σ_{k=0}^{m} (-1)^k C(m+β, m-k) x^k / k!` in exact rational
/// arithmetic (an `f64` is a dyadic rational), rounding once at the end.
pub fn laguerre_sum_oracle(params: LaguerreParams, x: f64) -> Result<f64, SpecialFunctionError> {
    if params.degree > SUM_ORACLE_MAX_DEGREE {
        return Err(SpecialFunctionError::DegreeTooLarge {
            degree: params.degree,
            max: SUM_ORACLE_MAX_DEGREE,
        });
    }
    let m = u64::from(params.degree);
    let beta = u64::from(params.order);
    let x = BigRational::from_float(x).expect("finite argument");
    let mut sum = BigRational::zero();
    let mut power = BigRational::one();
    let mut factorial = BigInt::one();
    for k in 0..=m {
        if k > 0 {
            power *= &x;
            factorial *= BigInt::from(k);
        }
        let term = BigRational::new(binomial(m + beta, m - k), factorial.clone()) * &power;
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum.to_f64().unwrap_or(f64::NAN))
}

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
