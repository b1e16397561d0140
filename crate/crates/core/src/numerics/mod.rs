//! Self-contained numerical kernel: MacDonald functions of orders 1/3 and
//! 2/3, integer-order Bessel functions of the first kind with their
//! integrals, adaptive quadrature, bracketed root finding, and unimodal
//! maximization.
//!
//! Every operation is a pure function of its inputs. The single internal
//! cache (the full-line integral of K_{1/3}) is initialized once and is
//! read-only afterwards.

mod bessel;
mod macdonald;
mod quadrature;
mod roots;

pub use bessel::{
    bessel_j, bessel_j_cumulative, bessel_j_prime, CumulativeWeight, BESSEL_ORDER_CAP,
};
pub use macdonald::{macdonald_k, macdonald_k13_tail, MacdonaldOrder};
pub use quadrature::integrate_adaptive;
pub use roots::{find_root, maximize_unimodal};

pub(crate) use bessel::{
    bessel_j_prime_fused, bessel_j_raw, cumulative_inverse_raw, cumulative_unit_raw,
};
pub(crate) use macdonald::{k13_full_integral, k13_tail_raw, macdonald_k_raw};

/// Errors produced by the numerical kernel.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("invalid tolerance: abs_tol = {abs_tol}, rel_tol = {rel_tol}, max_subdivisions = {max_subdivisions}")]
    InvalidTolerance {
        abs_tol: f64,
        rel_tol: f64,
        max_subdivisions: u32,
    },
    #[error("invalid bracket: [{lo}, {hi}]")]
    InvalidBracket { lo: f64, hi: f64 },
    #[error("{what}: got {value}")]
    Domain { what: &'static str, value: f64 },
    #[error("Bessel order {order} exceeds the supported cap {cap}")]
    OrderCap { order: u32, cap: u32 },
    #[error("cumulative Bessel integral requires a positive even order, got {order}")]
    EvenOrderRequired { order: u32 },
    #[error("quadrature did not converge within {max_subdivisions} subdivisions: estimate {estimate}, error bound {error_bound}")]
    QuadratureNotConverged {
        estimate: f64,
        error_bound: f64,
        max_subdivisions: u32,
    },
    #[error("integrand returned a non-finite value near x = {x}")]
    NonFiniteIntegrand { x: f64 },
    #[error("no sign change over [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("iteration limit {limit} reached without convergence")]
    IterationLimit { limit: u32 },
}

/// Absolute/relative accuracy targets and the subdivision (or iteration)
/// budget shared by the quadrature and the solvers. The root finder and
/// the maximizer read `abs_tol` as their x-tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub(crate) abs_tol: f64,
    pub(crate) rel_tol: f64,
    pub(crate) max_subdivisions: u32,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: u32) -> Result<Self, NumericsError> {
        // The comparisons are arranged to reject NaN as well.
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(abs_tol) || !positive(rel_tol) || max_subdivisions < 1 {
            return Err(NumericsError::InvalidTolerance {
                abs_tol,
                rel_tol,
                max_subdivisions,
            });
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_subdivisions(&self) -> u32 {
        self.max_subdivisions
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

/// A nonempty interval [lo, hi] with lo < hi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub(crate) lo: f64,
    pub(crate) hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self, NumericsError> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(NumericsError::InvalidBracket { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }
}
