//! Generator functions and the semifields they construct.
//!
//! A strictly monotone bijection `g` from a carrier onto `[0, inf]`
//! transports the non-negative reals onto that carrier:
//!
//! ```text
//! u ⊕ v = g⁻¹(g(u) + g(v))      u ⊗ v = g⁻¹(g(u) · g(v))
//! e = g⁻¹(1)                    u⁻¹ = g⁻¹(1 / g(u))
//! ```
//!
//! An increasing generator yields a semifield aligned with the numeric
//! order, a decreasing one yields the dually aligned member. Two
//! parametric instances matter here: the power generator `g(x) = x^r`
//! produces the family `R_r` over `[0, inf]` (ordinary product, power
//! deformed addition), and the exponential kernel `φ'(h) = b^{-rh}`
//! produces the entropic family `H_r` over `[-inf, inf]` (ordinary sum as
//! product). Both families are degenerate at `r = 0`, where the additive
//! and multiplicative structures collapse into each other, and converge
//! to the idempotent max/min semifields as `r → ±inf`.

use std::sync::Arc;

use thiserror::Error;

use crate::numeric::log_sum_exp2;
use crate::semifield::{Builtin, Kernel, Semifield, UnOp};
use crate::value::Carrier;

/// Sense of a strictly monotone generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

/// Errors from generator validation and construction.
#[derive(Debug, Clone, Error)]
pub enum GeneratorError {
    #[error("forward map is not strictly monotone on sampled points (x={x}, y={y})")]
    NotMonotone { x: f64, y: f64 },
    #[error("backward(forward({x})) = {got}, round trip exceeds tolerance")]
    RoundTrip { x: f64, got: f64 },
    #[error("endpoint images ({at_lo}, {at_hi}) are inconsistent with a {expected:?} bijection onto [0, inf]")]
    EndpointMismatch {
        at_lo: f64,
        at_hi: f64,
        expected: Monotonicity,
    },
}

/// Raised when a parametric family is requested at its degenerate order
/// `r = 0`, where the construction does not yield a semifield.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("order r = 0 is degenerate: the additive and multiplicative structures coincide")]
pub struct DegenerateFamilyError;

const ROUND_TRIP_TOL: f64 = 1e-9;

/// A strictly monotone bijection between a carrier and `[0, inf]`,
/// packaged with its inverse.
#[derive(Clone)]
pub struct Generator {
    forward: UnOp,
    backward: UnOp,
    monotonicity: Monotonicity,
    domain: Carrier,
}

impl std::fmt::Debug for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Generator")
            .field("monotonicity", &self.monotonicity)
            .field("domain", &self.domain)
            .finish()
    }
}

impl Generator {
    /// Wraps a forward/backward pair, inferring the monotonicity from
    /// samples and checking that the pair round-trips to within `1e-9`
    /// relative on interior points.
    pub fn new(
        domain: Carrier,
        forward: impl Fn(f64) -> f64 + Send + Sync + 'static,
        backward: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Generator, GeneratorError> {
        let pts = sample_points(domain);
        let images: Vec<f64> = pts.iter().map(|&x| forward(x)).collect();
        let increasing = images.windows(2).all(|w| w[0] < w[1]);
        let decreasing = images.windows(2).all(|w| w[0] > w[1]);
        if !increasing && !decreasing {
            let i = images.windows(2).position(|w| w[0] >= w[1]).unwrap_or(0);
            return Err(GeneratorError::NotMonotone {
                x: pts[i],
                y: pts[i + 1],
            });
        }
        for &x in &pts {
            let back = backward(forward(x));
            if !crate::numeric::close(back, x, ROUND_TRIP_TOL) {
                return Err(GeneratorError::RoundTrip { x, got: back });
            }
        }
        Ok(Generator {
            forward: Arc::new(forward),
            backward: Arc::new(backward),
            monotonicity: if increasing {
                Monotonicity::Increasing
            } else {
                Monotonicity::Decreasing
            },
            domain,
        })
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    pub fn domain(&self) -> Carrier {
        self.domain
    }

    pub fn forward(&self, x: f64) -> f64 {
        (self.forward)(x)
    }

    pub fn backward(&self, y: f64) -> f64 {
        (self.backward)(y)
    }
}

fn sample_points(domain: Carrier) -> Vec<f64> {
    if domain == Carrier::NON_NEGATIVE {
        vec![0.07, 0.4, 1.0, 3.1, 12.5]
    } else if domain == Carrier::EXTENDED_REALS {
        vec![-9.5, -2.1, 0.0, 1.7, 6.3]
    } else {
        let lo = if domain.lo().is_finite() { domain.lo() } else { -10.0 };
        let hi = if domain.hi().is_finite() { domain.hi() } else { 10.0 };
        (1..=5).map(|k| lo + (hi - lo) * k as f64 / 6.0).collect()
    }
}

/// Builds the completed positive semifield generated by `g`.
///
/// The endpoint images decide the polarity: an increasing `g` (with
/// `g(lo) = 0`, `g(hi) = inf`) gives an order-aligned semifield with
/// bottom `lo`; a decreasing one gives the dually aligned semifield with
/// bottom `hi`.
pub fn from_generator(name: impl Into<String>, g: &Generator) -> Result<Semifield, GeneratorError> {
    let lo = g.domain().lo();
    let hi = g.domain().hi();
    let at_lo = g.forward(lo);
    let at_hi = g.forward(hi);
    let ok = match g.monotonicity() {
        Monotonicity::Increasing => at_lo == 0.0 && at_hi == f64::INFINITY,
        Monotonicity::Decreasing => at_lo == f64::INFINITY && at_hi == 0.0,
    };
    if !ok {
        return Err(GeneratorError::EndpointMismatch {
            at_lo,
            at_hi,
            expected: g.monotonicity(),
        });
    }

    let bottom = match g.monotonicity() {
        Monotonicity::Increasing => lo,
        Monotonicity::Decreasing => hi,
    };
    let unit = g.backward(1.0);
    let (fa, ba) = (g.forward.clone(), g.backward.clone());
    let (fm, bm) = (g.forward.clone(), g.backward.clone());
    let (fi, bi) = (g.forward.clone(), g.backward.clone());
    Ok(Semifield::define(
        name,
        g.domain(),
        bottom,
        unit,
        false,
        Kernel {
            add: Arc::new(move |u, v| ba(fa(u) + fa(v))),
            mul: Arc::new(move |u, v| bm(fm(u) * fm(v))),
            inv: Arc::new(move |u| bi(1.0 / fi(u))),
        },
    ))
}

/// Order parameter `r` of the parametric families, carrying the logarithm
/// base and the shift `alpha = r + 1` used to convert to and from the
/// unshifted entropy index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderParameter {
    r: f64,
    base: f64,
}

/// Invalid order parameter or base.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrderError {
    #[error("order r must not be NaN")]
    NanOrder,
    #[error("logarithm base must be a finite number > 1, got {0}")]
    BadBase(f64),
}

impl OrderParameter {
    /// Order `r` with the conventional base 2.
    pub fn new(r: f64) -> Result<Self, OrderError> {
        Self::with_base(r, 2.0)
    }

    pub fn with_base(r: f64, base: f64) -> Result<Self, OrderError> {
        if r.is_nan() {
            return Err(OrderError::NanOrder);
        }
        if !(base > 1.0) || !base.is_finite() {
            return Err(OrderError::BadBase(base));
        }
        Ok(OrderParameter { r, base })
    }

    /// Order `r` in the natural base.
    pub fn natural(r: f64) -> Result<Self, OrderError> {
        Self::with_base(r, std::f64::consts::E)
    }

    /// Converts from the unshifted index: `r = alpha - 1`.
    pub fn from_alpha(alpha: f64) -> Result<Self, OrderError> {
        Self::new(alpha - 1.0)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    /// The unshifted index `alpha = r + 1`.
    pub fn alpha(&self) -> f64 {
        self.r + 1.0
    }

    /// True exactly at the degenerate point of the families.
    pub fn is_degenerate(&self) -> bool {
        self.r == 0.0
    }
}

/// Stable interior addition of `R_r`: `(u^r + v^r)^(1/r)`.
///
/// Falls back to the log domain with a max shift whenever `u^r` or `v^r`
/// would leave the comfortable range of doubles.
fn real_add(u: f64, v: f64, r: f64) -> f64 {
    let s = r * u.ln();
    let t = r * v.ln();
    if r.abs() < 1e2 && s.abs() < 690.0 && t.abs() < 690.0 {
        (u.powf(r) + v.powf(r)).powf(1.0 / r)
    } else {
        (log_sum_exp2(s, t) / r).exp()
    }
}

/// Stable interior addition of `H_r`:
/// `u + v - log_b(b^{ru} + b^{rv})^{1/r} = (-1/r)·log_b(b^{-ru} + b^{-rv})`.
fn entropic_add(u: f64, v: f64, r: f64, base: f64) -> f64 {
    let c = r * base.ln();
    -log_sum_exp2(-c * u, -c * v) / c
}

/// The multiplicative-product real family `R_r`over `[0, inf]`:
/// ordinary product, power-deformed addition, numeric reciprocal as
/// inverse. `R_1` is the non-negative reals, `R_{-1}` their dual, and
/// `R_r`/`R_{-r}` always pair up as mutual duals. The limits `r = ±inf`
/// return the exact idempotent builtins max-times and min-times.
pub fn real_family(p: &OrderParameter) -> Result<Semifield, DegenerateFamilyError> {
    let r = p.r();
    if r == 0.0 {
        return Err(DegenerateFamilyError);
    }
    if r == f64::INFINITY {
        return Ok(Semifield::builtin(Builtin::MaxTimes));
    }
    if r == f64::NEG_INFINITY {
        return Ok(Semifield::builtin(Builtin::MinTimes));
    }
    let bottom = if r > 0.0 { 0.0 } else { f64::INFINITY };
    Ok(Semifield::define(
        format!("R_{r}"),
        Carrier::NON_NEGATIVE,
        bottom,
        1.0,
        false,
        Kernel {
            add: Arc::new(move |u, v| real_add(u, v, r)),
            mul: Arc::new(|a, b| a * b),
            inv: Arc::new(|a| 1.0 / a),
        },
    ))
}

/// The entropic (additive-product) family `H_r` over `[-inf, inf]`:
/// ordinary sum as product, negation as inverse, exponentially deformed
/// addition in base `b`. `H_{-1}` is the Hartley semifield, `H_1` its
/// dual, and the limits `r = ±inf` return min-plus and max-plus exactly.
pub fn entropic_family(p: &OrderParameter) -> Result<Semifield, DegenerateFamilyError> {
    let r = p.r();
    if r == 0.0 {
        return Err(DegenerateFamilyError);
    }
    if r == f64::INFINITY {
        return Ok(Semifield::builtin(Builtin::MinPlus));
    }
    if r == f64::NEG_INFINITY {
        return Ok(Semifield::builtin(Builtin::MaxPlus));
    }
    let base = p.base();
    // the kernel is increasing for r < 0 and decreasing for r > 0, so the
    // polarity flips with the sign of the order
    let bottom = if r > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
    Ok(Semifield::define(
        format!("H_{r}(b={base})"),
        Carrier::EXTENDED_REALS,
        bottom,
        0.0,
        false,
        Kernel {
            add: Arc::new(move |u, v| entropic_add(u, v, r, base)),
            mul: Arc::new(|a, b| a + b),
            inv: Arc::new(|a| -a),
        },
    ))
}

/// The information map `x ↦ -log_b x`, a bijection from `[0, inf]` onto
/// `[-inf, inf]` sending the interesting points `{0, 1, inf}` to
/// `{inf, 0, -inf}`. A dual-order isomorphism: larger probabilities carry
/// less information.
pub fn hartley_map(x: f64, base: f64) -> f64 {
    debug_assert!(x >= 0.0 && !x.is_nan());
    if x == 0.0 {
        f64::INFINITY
    } else if x == f64::INFINITY {
        f64::NEG_INFINITY
    } else {
        -x.ln() / base.ln()
    }
}

/// Inverse of [`hartley_map`]: `h ↦ b^{-h}`.
pub fn hartley_map_inv(h: f64, base: f64) -> f64 {
    debug_assert!(!h.is_nan());
    if h == f64::INFINITY {
        0.0
    } else if h == f64::NEG_INFINITY {
        f64::INFINITY
    } else {
        (-h * base.ln()).exp()
    }
}

/// The generator behind [`hartley_map`] in base `b`, i.e. `g(h) = b^{-h}`
/// on `[-inf, inf]`. Feeding it to [`from_generator`] reproduces the
/// hartley-dual semifield.
pub fn hartley_generator(base: f64) -> Generator {
    Generator::new(
        Carrier::EXTENDED_REALS,
        move |h| hartley_map_inv(h, base),
        move |p| hartley_map(p, base),
    )
    .expect("the exponential kernel is monotone")
}

/// The deformed averaging kernel `φ'(h) = b^{-rh}` with inverse
/// `φ'⁻¹(q) = (-1/r)·log_b q`, as a generator on `[-inf, inf]`.
///
/// Running it through [`from_generator`] yields the same semifield as
/// [`entropic_family`] at the same order: the kernel is exactly the
/// composition of the information map with the power generator.
pub fn renyi_kernel(p: &OrderParameter) -> Result<Generator, DegenerateFamilyError> {
    let r = p.r();
    if r == 0.0 || !r.is_finite() {
        return Err(DegenerateFamilyError);
    }
    let base = p.base();
    let c = r * base.ln();
    Generator::new(
        Carrier::EXTENDED_REALS,
        move |h| {
            // b^{-rh}; 0·inf corners resolved by the sign of r
            if h == f64::INFINITY {
                if r > 0.0 { 0.0 } else { f64::INFINITY }
            } else if h == f64::NEG_INFINITY {
                if r > 0.0 { f64::INFINITY } else { 0.0 }
            } else {
                (-c * h).exp()
            }
        },
        move |q| {
            if q == 0.0 {
                if r > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY }
            } else if q == f64::INFINITY {
                if r > 0.0 { f64::NEG_INFINITY } else { f64::INFINITY }
            } else {
                -q.ln() / c
            }
        },
    )
    .map_err(|_| DegenerateFamilyError)
}
