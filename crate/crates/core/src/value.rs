//! Extended-real scalars and carrier intervals.
//!
//! Every semifield in this crate works on a closed sub-interval of
//! `[-inf, inf]` represented with IEEE doubles. `NaN` is not a carrier
//! element anywhere: constructors reject it, and the corner-case dispatch
//! in [`crate::semifield::Semifield`] guarantees that indeterminate forms
//! such as `0 * inf` never reach hardware arithmetic.

use std::fmt;

use thiserror::Error;

/// Error raised when a `NaN` is offered as a carrier element.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("NaN is not an element of any semifield carrier")]
pub struct NanError;

/// A validated extended-real scalar: any `f64` except `NaN`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ExtendedReal(f64);

impl ExtendedReal {
    /// Wraps a raw double, rejecting `NaN`.
    pub fn new(value: f64) -> Result<Self, NanError> {
        if value.is_nan() {
            Err(NanError)
        } else {
            Ok(ExtendedReal(value))
        }
    }

    /// Wraps a value that is statically known not to be `NaN`.
    ///
    /// Panics in debug builds if the claim is wrong.
    pub fn unchecked(value: f64) -> Self {
        debug_assert!(!value.is_nan());
        ExtendedReal(value)
    }

    pub const ZERO: ExtendedReal = ExtendedReal(0.0);
    pub const ONE: ExtendedReal = ExtendedReal(1.0);
    pub const INFINITY: ExtendedReal = ExtendedReal(f64::INFINITY);
    pub const NEG_INFINITY: ExtendedReal = ExtendedReal(f64::NEG_INFINITY);

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            write!(f, "inf")
        } else if self.0 == f64::NEG_INFINITY {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl From<ExtendedReal> for f64 {
    fn from(v: ExtendedReal) -> f64 {
        v.0
    }
}

impl TryFrom<f64> for ExtendedReal {
    type Error = NanError;

    fn try_from(value: f64) -> Result<Self, NanError> {
        ExtendedReal::new(value)
    }
}

/// Classification of a carrier element relative to its semifield.
///
/// Which numeric value plays `Bottom` or `Top` depends on the semifield:
/// `0` is the bottom of the non-negative reals but the top of min-times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueClass {
    Bottom,
    Interior,
    Top,
}

/// A closed interval of extended reals, the underlying set of a completed
/// semifield.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Carrier {
    lo: f64,
    hi: f64,
}

impl Carrier {
    /// `[0, inf]`, the carrier of the non-negative-real family.
    pub const NON_NEGATIVE: Carrier = Carrier {
        lo: 0.0,
        hi: f64::INFINITY,
    };

    /// `[-inf, inf]`, the carrier of the additive (entropic) family.
    pub const EXTENDED_REALS: Carrier = Carrier {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(!lo.is_nan() && !hi.is_nan() && lo < hi, "degenerate carrier");
        Carrier { lo, hi }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, v: f64) -> bool {
        !v.is_nan() && v >= self.lo && v <= self.hi
    }

    /// True strictly inside the interval (neither endpoint).
    pub fn contains_interior(&self, v: f64) -> bool {
        !v.is_nan() && v > self.lo && v < self.hi
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            ExtendedReal::unchecked(self.lo),
            ExtendedReal::unchecked(self.hi)
        )
    }
}
