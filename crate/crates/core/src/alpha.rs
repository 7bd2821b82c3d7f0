//! The validated exponent of the α-Cheeger ratio `P(E) / |E|^{1/α}`.

use std::fmt;

use thiserror::Error;

/// Default distance kept from both ends of the open interval `(1, n/(n-1))`.
pub const DEFAULT_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlphaError {
    #[error("dimension must be at least 2, got {0}")]
    Dimension(u32),
    #[error("alpha must be a finite number, got {0}")]
    NotFinite(f64),
    #[error("alpha = {value} lies outside [{lo}, {hi}] (the open interval (1, {critical}) shrunk by the guard band)")]
    OutOfRange {
        value: f64,
        lo: f64,
        hi: f64,
        critical: f64,
    },
    #[error("guard band must be in [0, 0.25), got {0}")]
    Guard(f64),
}

/// An exponent `α` strictly inside `(1, 1*)`, with `1* = n/(n-1)`.
///
/// Construction enforces the guard band `[1 + δ, 1* − δ]` so that quantities
/// such as `1/(α−1)` stay finite. The limits `α → 1` and `α → 1*` are not
/// representable; see [`crate::analytic::ExponentLimit`] for the dedicated
/// limit evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha {
    value: f64,
    n: u32,
}

impl Alpha {
    /// Planar exponent with the default guard band.
    pub fn new(value: f64) -> Result<Self, AlphaError> {
        Self::with_guard(value, 2, DEFAULT_GUARD)
    }

    pub fn in_dimension(value: f64, n: u32) -> Result<Self, AlphaError> {
        Self::with_guard(value, n, DEFAULT_GUARD)
    }

    pub fn with_guard(value: f64, n: u32, guard: f64) -> Result<Self, AlphaError> {
        if n < 2 {
            return Err(AlphaError::Dimension(n));
        }
        if !(0.0..0.25).contains(&guard) {
            return Err(AlphaError::Guard(guard));
        }
        if !value.is_finite() {
            return Err(AlphaError::NotFinite(value));
        }
        let critical = critical_exponent(n);
        let lo = 1.0 + guard;
        let hi = critical - guard;
        // an empty guard still has to exclude the endpoints themselves
        let inside = if guard == 0.0 {
            value > 1.0 && value < critical
        } else {
            value >= lo && value <= hi
        };
        if !inside {
            return Err(AlphaError::OutOfRange {
                value,
                lo,
                hi,
                critical,
            });
        }
        Ok(Self { value, n })
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.value
    }

    #[inline]
    pub fn dimension(self) -> u32 {
        self.n
    }

    /// `1* = n/(n−1)`.
    #[inline]
    pub fn critical(self) -> f64 {
        critical_exponent(self.n)
    }

    /// `1/α`.
    #[inline]
    pub fn inv(self) -> f64 {
        1.0 / self.value
    }

    /// Exponent `n − 1 − n/α` of the scaling law; negative throughout the valid range.
    #[inline]
    pub fn scaling_exponent(self) -> f64 {
        scaling_exponent(self.n, self.value)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
pub fn critical_exponent(n: u32) -> f64 {
    let n = f64::from(n);
    n / (n - 1.0)
}

#[inline]
pub fn scaling_exponent(n: u32, alpha: f64) -> f64 {
    let n = f64::from(n);
    n - 1.0 - n / alpha
}
