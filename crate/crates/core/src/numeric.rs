//! Shared numeric helpers: stabilized log-sum-exp and corner-aware powers.

/// `ln(e^a + e^b)` with the usual max-shift so that large magnitudes do not
/// overflow. Total on `[-inf, inf]` except the empty corner `(-inf, -inf)`,
/// which correctly yields `-inf`.
pub fn log_sum_exp2(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a == f64::INFINITY || b == f64::INFINITY {
        return f64::INFINITY;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// `ln(sum_i e^{x_i})` over a slice, max-shifted. Empty input gives `-inf`.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let mut m = f64::NEG_INFINITY;
    for &x in xs {
        if x > m {
            m = x;
        }
    }
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if m == f64::INFINITY {
        return f64::INFINITY;
    }
    let sum: f64 = xs.iter().map(|&x| (x - m).exp()).sum();
    m + sum.ln()
}

/// `x^s` on `[0, inf]` for nonzero finite `s`, with the corner limits
/// `0^s = 0`, `inf^s = inf` for `s > 0` and the inverted pair for `s < 0`.
/// Never produces NaN.
pub fn pow_signed(x: f64, s: f64) -> f64 {
    debug_assert!(x >= 0.0 && s != 0.0 && s.is_finite());
    if x == 0.0 {
        if s > 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else if x == f64::INFINITY {
        if s > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    } else {
        x.powf(s)
    }
}

/// Relative closeness with a unit floor: exact for non-finite values.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    if !a.is_finite() || !b.is_finite() {
        a == b
    } else {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }
}
