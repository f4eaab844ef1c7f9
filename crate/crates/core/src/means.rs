//! Weighted power (Hölder) means, classically and in completed-semifield
//! form.
//!
//! The classical mean `M_r(w, x) = (Σ (w_i/Σw_k) x_i^r)^{1/r}` only covers
//! finite positive data. The semifield form extends it to the whole of
//! `[0, inf]` for both weights and values. For `r > 0` everything runs in
//! the lower operations of the completed non-negative reals with
//! alternative-1 weight normalization `ŵ_i = w_i ⊗̄ W⁻¹`, `W = ⊕̲ w_k`; for
//! `r < 0` the same computation is transported through inversion (the
//! upper operations by duality), which flips the roles of `0` and `inf` in
//! both the values and the weight corners. The two corner tables this
//! produces, with rows indexed by the weight classes and columns by the
//! value classes:
//!
//! ```text
//! r > 0:   all x=0 | all x fin | some x=inf      r < 0:  all x=inf | all x fin | some x=0
//! w all 0:     0   |    inf    |   inf           w all inf:  inf   |     0     |    0
//! w finite:    0   |  M_r(w,x) |   inf           w finite:   inf   |  M_r(w,x) |    0
//! some w=inf:  0   |    inf    |   inf           some w=0:   inf   |     0     |    0
//! ```
//!
//! `r = 0` is the geometric mean, evaluated as `exp` of the `r = 1` mean
//! of logarithms with the annihilation convention `0 ⊗̲ ±inf = 0` (a zero
//! weight silences an impossible event). A vector mixing `x_i = 0` with
//! `x_j = inf` yields `inf·u(r)`: `0` for `r < 0`, `inf` for `r > 0`, and
//! an error at `r = 0` where the step function is undefined.

use thiserror::Error;

use crate::numeric::{log_sum_exp, pow_signed};
use crate::value::ExtendedReal;

const INF: f64 = f64::INFINITY;

/// Errors from mean evaluation and vector construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeanError {
    #[error("weighted vector must have at least one component")]
    EmptyVector,
    #[error("values and weights differ in length ({x} vs {w})")]
    LengthMismatch { x: usize, w: usize },
    #[error("{which}[{index}] = {value} is not in [0, inf]")]
    InvalidEntry {
        which: &'static str,
        index: usize,
        value: f64,
    },
    #[error("entries outside the classical domain (finite positive) at index {0}")]
    NonClassicalOperand(usize),
    #[error("geometric mean undefined: the vector carries both a vanishing and an exploding power")]
    MixedExtremesAtZero,
    #[error("all weights are zero, the requested mean does not make sense")]
    AllWeightsZero,
}

/// A pair of equal-length vectors over `[0, inf]`: values `x` and
/// non-negative weights `w`. Immutable once built; `NaN` and negative
/// entries are rejected at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedVector {
    x: Vec<f64>,
    w: Vec<f64>,
}

impl WeightedVector {
    pub fn new(x: Vec<f64>, w: Vec<f64>) -> Result<Self, MeanError> {
        if x.len() != w.len() {
            return Err(MeanError::LengthMismatch { x: x.len(), w: w.len() });
        }
        if x.is_empty() {
            return Err(MeanError::EmptyVector);
        }
        for (which, vec) in [("x", &x), ("w", &w)] {
            if let Some((index, &value)) = vec.iter().enumerate().find(|(_, v)| !(**v >= 0.0)) {
                return Err(MeanError::InvalidEntry { which, index, value });
            }
        }
        Ok(WeightedVector { x, w })
    }

    /// Equal weights of one.
    pub fn unweighted(x: Vec<f64>) -> Result<Self, MeanError> {
        let w = vec![1.0; x.len()];
        WeightedVector::new(x, w)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.x
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    pub fn classify(&self) -> Classification {
        classify_indices(self)
    }
}

/// Partition of `{0..n}` into zero, finite (interior) and infinite index
/// sets for one vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexClasses {
    pub zero: Vec<usize>,
    pub finite: Vec<usize>,
    pub infinite: Vec<usize>,
}

impl IndexClasses {
    fn of(v: &[f64]) -> IndexClasses {
        let mut c = IndexClasses::default();
        for (i, &t) in v.iter().enumerate() {
            if t == 0.0 {
                c.zero.push(i);
            } else if t == INF {
                c.infinite.push(i);
            } else {
                c.finite.push(i);
            }
        }
        c
    }

    pub fn all_zero(&self, n: usize) -> bool {
        self.zero.len() == n
    }

    pub fn all_finite(&self, n: usize) -> bool {
        self.finite.len() == n
    }

    pub fn all_infinite(&self, n: usize) -> bool {
        self.infinite.len() == n
    }
}

/// Index classification of both coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub x: IndexClasses,
    pub w: IndexClasses,
}

/// Splits the value and weight vectors into zero / finite / infinite
/// index sets. The three sets partition `{0..n}` for each vector.
pub fn classify_indices(v: &WeightedVector) -> Classification {
    Classification {
        x: IndexClasses::of(v.values()),
        w: IndexClasses::of(v.weights()),
    }
}

/// Classical weighted power mean of order `r` on finite positive data.
///
/// `r = 0` is the weighted geometric mean, `r = ±inf` the maximum and
/// minimum of the values. Serves as the reference implementation the
/// semifield form must agree with on its domain; the plain-sum formula is
/// used whenever exponentiation stays in range.
pub fn holder_mean(r: f64, v: &WeightedVector) -> Result<ExtendedReal, MeanError> {
    if let Some(i) = (0..v.len()).find(|&i| {
        !v.x[i].is_finite() || v.x[i] <= 0.0 || !v.w[i].is_finite() || v.w[i] <= 0.0
    }) {
        return Err(MeanError::NonClassicalOperand(i));
    }
    let total: f64 = v.w.iter().sum();
    let out = if r == INF {
        v.x.iter().cloned().fold(f64::MIN, f64::max)
    } else if r == f64::NEG_INFINITY {
        v.x.iter().cloned().fold(f64::MAX, f64::min)
    } else if r == 0.0 {
        let s: f64 = v.x.iter().zip(&v.w).map(|(&x, &w)| w / total * x.ln()).sum();
        s.exp()
    } else {
        let in_range = r.abs() < 1e2
            && v.x.iter().all(|&x| (r * x.ln()).abs() < 600.0);
        if in_range {
            let s: f64 = v.x.iter().zip(&v.w).map(|(&x, &w)| w / total * x.powf(r)).sum();
            s.powf(1.0 / r)
        } else {
            let logs: Vec<f64> = v
                .x
                .iter()
                .zip(&v.w)
                .map(|(&x, &w)| (w / total).ln() + r * x.ln())
                .collect();
            (log_sum_exp(&logs) / r).exp()
        }
    };
    Ok(ExtendedReal::unchecked(out))
}

/// The semifield-expressed mean: total on `[0, inf]` data per the corner
/// tables in the module documentation.
pub fn semifield_mean(r: f64, v: &WeightedVector) -> Result<ExtendedReal, MeanError> {
    mean_impl(r, v, false)
}

/// Like [`semifield_mean`] but refuses the configurations the corner
/// tables only cover by convention: all-zero weights against nonzero
/// values (the table assigns `inf` for `r > 0`, this variant reports
/// [`MeanError::AllWeightsZero`] instead).
pub fn semifield_mean_strict(r: f64, v: &WeightedVector) -> Result<ExtendedReal, MeanError> {
    mean_impl(r, v, true)
}

fn mean_impl(r: f64, v: &WeightedVector, strict: bool) -> Result<ExtendedReal, MeanError> {
    let n = v.len();
    let (x, w) = (v.values(), v.weights());

    if r == INF || r == f64::NEG_INFINITY {
        // support-restricted extremum; no support means no extremum
        let mut out: Option<f64> = None;
        for i in 0..n {
            if w[i] > 0.0 {
                out = Some(match out {
                    None => x[i],
                    Some(m) if r == INF => m.max(x[i]),
                    Some(m) => m.min(x[i]),
                });
            }
        }
        return out.map(ExtendedReal::unchecked).ok_or(MeanError::AllWeightsZero);
    }

    if r == 0.0 {
        return geometric_mean(v);
    }

    let total = lower_sum(w);
    if strict && r > 0.0 && total == 0.0 && x.iter().any(|&t| t > 0.0) {
        return Err(MeanError::AllWeightsZero);
    }
    if r < 0.0 {
        // a zero weight is a top element of the dual order: against an
        // interior value it drags the whole mean to zero, while paired
        // with a corner value it simply drops out
        if (0..n).any(|i| w[i] == 0.0 && x[i] > 0.0 && x[i] < INF) {
            return Ok(ExtendedReal::ZERO);
        }
    }

    let inv_total = reciprocal(total);
    let mut interior: Vec<(f64, f64)> = Vec::with_capacity(n); // (ŵ, x)
    let mut sum_is_top = false;
    for i in 0..n {
        // ŵ_i = w_i ⊗̄ W⁻¹ in the completed non-negative reals
        let nw = upper_mul_nn(w[i], inv_total);
        if nw == 0.0 {
            continue;
        }
        // term = ŵ_i ⊗̲ x_i^r: the lower product, zero wins over inf.
        // Corners are classified on x_i itself so that floating-point
        // overflow of a power never masquerades as a genuine corner.
        let xv = x[i];
        if xv == 0.0 {
            if r > 0.0 {
                continue;
            }
            sum_is_top = true;
            break;
        }
        if xv == INF {
            if r < 0.0 {
                continue;
            }
            sum_is_top = true;
            break;
        }
        if nw == INF {
            sum_is_top = true;
            break;
        }
        interior.push((nw, xv));
    }

    if sum_is_top {
        return Ok(ExtendedReal::unchecked(pow_signed(INF, 1.0 / r)));
    }
    if interior.is_empty() {
        return Ok(ExtendedReal::unchecked(pow_signed(0.0, 1.0 / r)));
    }
    let safe = r.abs() < 1e2 && interior.iter().all(|&(_, xi)| (r * xi.ln()).abs() < 600.0);
    let out = if safe {
        let s: f64 = interior.iter().map(|&(nw, xi)| nw * xi.powf(r)).sum();
        pow_signed(s, 1.0 / r)
    } else {
        let logs: Vec<f64> = interior.iter().map(|&(nw, xi)| nw.ln() + r * xi.ln()).collect();
        (log_sum_exp(&logs) / r).exp()
    };
    Ok(ExtendedReal::unchecked(out))
}

/// Weighted geometric mean with the `0 ⊗̲ ±inf = 0` convention, via the
/// order-one mean of logarithms.
fn geometric_mean(v: &WeightedVector) -> Result<ExtendedReal, MeanError> {
    let n = v.len();
    let (x, w) = (v.values(), v.weights());

    // the excluded configuration: some power x_i^{w_i} vanishes while
    // another explodes; the step function u(r) has no value at r = 0
    let vanishing = (0..n).any(|i| (w[i] > 0.0 && x[i] == 0.0) || (w[i] == INF && x[i] < 1.0));
    let exploding = (0..n).any(|i| (w[i] > 0.0 && x[i] == INF) || (w[i] == INF && x[i] > 1.0));
    if vanishing && exploding {
        return Err(MeanError::MixedExtremesAtZero);
    }

    let total = lower_sum(w);
    if total == 0.0 {
        return Err(MeanError::AllWeightsZero);
    }
    let inv_total = reciprocal(total);
    let mut acc = 0.0f64;
    for i in 0..n {
        let nw = upper_mul_nn(w[i], inv_total);
        let z = ln_corner(x[i]);
        // scalar action of a weight on a log-value; zero on either side
        // annihilates, infinities keep the sign of the log
        let term = if nw == 0.0 || z == 0.0 {
            0.0
        } else if nw == INF || z.is_infinite() {
            if z > 0.0 {
                INF
            } else {
                f64::NEG_INFINITY
            }
        } else {
            nw * z
        };
        if term.is_infinite() && acc.is_infinite() && term.signum() != acc.signum() {
            return Err(MeanError::MixedExtremesAtZero);
        }
        if term.is_infinite() {
            acc = term;
        } else if !acc.is_infinite() {
            acc += term;
        }
    }
    Ok(ExtendedReal::unchecked(acc.exp()))
}

fn lower_sum(w: &[f64]) -> f64 {
    if w.contains(&INF) {
        INF
    } else {
        w.iter().sum()
    }
}

fn reciprocal(t: f64) -> f64 {
    if t == 0.0 {
        INF
    } else if t == INF {
        0.0
    } else {
        1.0 / t
    }
}

fn upper_mul_nn(a: f64, b: f64) -> f64 {
    if a == INF || b == INF {
        INF
    } else if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

fn ln_corner(x: f64) -> f64 {
    if x == 0.0 {
        f64::NEG_INFINITY
    } else if x == INF {
        INF
    } else {
        x.ln()
    }
}
