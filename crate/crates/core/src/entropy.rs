//! The shifted Rényi spectrum and its companions.
//!
//! With the index shifted by one (`r = alpha - 1`), the order-`r` entropy
//! of a pmf is simply the negated logarithm of the order-`r` power mean of
//! the distribution against itself:
//!
//! ```text
//! H̃_r(P)    = -log_b M_r(P, P)          entropy
//! X̃_r(P, Q) = -log_b M_r(P, Q)          cross-entropy
//! D̃_r(P‖Q)  =  log_b M_r(P, P/Q)        divergence
//! ```
//!
//! so `r = 1` is Rényi's quadratic entropy, `r = 0` Shannon's, `r = -1`
//! Hartley's `log n`, and `r = ±inf` the min/max entropies. The map
//! `r ↦ H̃_r(P)` is the (non-increasing, bounded) spectrum of `P`.
//! Undoing the two bijections wrapped around the mean recovers the
//! equivalent probability `P̃_r = b^{-H̃_r} = M_r(P, P)` and the
//! information potential `V_r = E{P^r} = b^{-r·H̃_r}`.
//!
//! Means are evaluated through [`crate::means::semifield_mean`], so
//! zero-probability entries drop out via the `0 ⊗̲ inf = 0` convention
//! rather than by pre-filtering.

use thiserror::Error;

use crate::generator::OrderParameter;
use crate::means::{semifield_mean, MeanError, WeightedVector};
use crate::numeric::log_sum_exp;

const INF: f64 = f64::INFINITY;
const NORMALIZATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EntropyError {
    #[error("distribution has empty support")]
    EmptySupport,
    #[error("p[{index}] = {value} is not a finite non-negative mass")]
    InvalidMass { index: usize, value: f64 },
    #[error("masses sum to {sum}, not 1 (strict mode)")]
    NotNormalized { sum: f64 },
    #[error("distributions differ in length ({p} vs {q})")]
    LengthMismatch { p: usize, q: usize },
    #[error("operation undefined at order r = 0")]
    DegenerateOrder,
    #[error("operation requires a finite order, got r = {0}")]
    NonFiniteOrder(f64),
    #[error("grid of orders must be sorted ascending")]
    UnsortedGrid,
    #[error(transparent)]
    Mean(#[from] MeanError),
}

/// A finite discrete probability distribution: non-negative masses with a
/// nonempty support, normalized to total mass one.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    p: Vec<f64>,
    normalized_input: bool,
}

impl Distribution {
    /// Accepts any non-negative weight vector and normalizes it.
    pub fn new(masses: Vec<f64>) -> Result<Self, EntropyError> {
        Self::build(masses, false)
    }

    /// Rejects inputs whose masses do not already sum to one within
    /// `1e-12`.
    pub fn strict(masses: Vec<f64>) -> Result<Self, EntropyError> {
        Self::build(masses, true)
    }

    fn build(mut masses: Vec<f64>, strict: bool) -> Result<Self, EntropyError> {
        if let Some((index, &value)) = masses
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(EntropyError::InvalidMass { index, value });
        }
        let sum: f64 = masses.iter().sum();
        if sum <= 0.0 {
            return Err(EntropyError::EmptySupport);
        }
        let normalized_input = (sum - 1.0).abs() <= NORMALIZATION_TOL;
        if strict && !normalized_input {
            return Err(EntropyError::NotNormalized { sum });
        }
        if !normalized_input {
            for m in &mut masses {
                *m /= sum;
            }
        }
        Ok(Distribution {
            p: masses,
            normalized_input,
        })
    }

    /// The uniform pmf on `n` outcomes.
    pub fn uniform(n: usize) -> Distribution {
        assert!(n > 0);
        Distribution {
            p: vec![1.0 / n as f64; n],
            normalized_input: true,
        }
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether the input masses already summed to one.
    pub fn was_normalized(&self) -> bool {
        self.normalized_input
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.p.len()).filter(move |&i| self.p[i] > 0.0)
    }

    pub fn support_size(&self) -> usize {
        self.support().count()
    }

    fn log_b(value: f64, base: f64) -> f64 {
        if value == 0.0 {
            f64::NEG_INFINITY
        } else if value == INF {
            INF
        } else {
            value.ln() / base.ln()
        }
    }
}

fn self_vector(dist: &Distribution) -> WeightedVector {
    WeightedVector::new(dist.p.clone(), dist.p.clone()).expect("distribution is a valid vector")
}

/// Shifted Rényi entropy `H̃_r(P) = -log_b M_r(P, P)`.
///
/// The extreme orders are computed exactly: `H̃_inf = -log max p_i` and
/// `H̃_{-inf} = -log min_{supp} p_i`.
pub fn shifted_entropy(order: &OrderParameter, dist: &Distribution) -> Result<f64, EntropyError> {
    let mean = semifield_mean(order.r(), &self_vector(dist))?;
    Ok(-Distribution::log_b(mean.get(), order.base()))
}

/// Shifted cross-entropy `X̃_r(P, Q) = -log_b M_r(P, Q)`: the values of
/// `Q` averaged under the weights of `P`. `H̃_r(P) = X̃_r(P, P)`.
pub fn shifted_cross_entropy(
    order: &OrderParameter,
    p: &Distribution,
    q: &Distribution,
) -> Result<f64, EntropyError> {
    if p.len() != q.len() {
        return Err(EntropyError::LengthMismatch { p: p.len(), q: q.len() });
    }
    let v = WeightedVector::new(q.p.clone(), p.p.clone())?;
    let mean = semifield_mean(order.r(), &v)?;
    Ok(-Distribution::log_b(mean.get(), order.base()))
}

/// Shifted divergence `D̃_r(P‖Q) = log_b M_r(P, P/Q)`, the order-`r`
/// mean of the likelihood ratios. Ratios at the corners follow the
/// semifield rules: `0/0` drops out with its zero weight, `p/0 = inf`.
pub fn shifted_divergence(
    order: &OrderParameter,
    p: &Distribution,
    q: &Distribution,
) -> Result<f64, EntropyError> {
    if p.len() != q.len() {
        return Err(EntropyError::LengthMismatch { p: p.len(), q: q.len() });
    }
    let ratio: Vec<f64> = p
        .p
        .iter()
        .zip(&q.p)
        .map(|(&pi, &qi)| {
            if pi == 0.0 {
                0.0
            } else if qi == 0.0 {
                INF
            } else {
                pi / qi
            }
        })
        .collect();
    let v = WeightedVector::new(ratio, p.p.clone())?;
    let mean = semifield_mean(order.r(), &v)?;
    Ok(Distribution::log_b(mean.get(), order.base()))
}

/// Shifted escort distribution `p̃_i = p_i p_i^r / Σ_k p_k p_k^r`
/// (equivalently `p_i^alpha` normalized). Zero entries stay zero; the
/// order must be finite.
pub fn escort(order: &OrderParameter, dist: &Distribution) -> Result<Distribution, EntropyError> {
    let r = order.r();
    if !r.is_finite() {
        return Err(EntropyError::NonFiniteOrder(r));
    }
    if r == 0.0 {
        return Ok(dist.clone());
    }
    let alpha = r + 1.0;
    // max-shifted in the log domain so p^alpha never over/underflows
    let logs: Vec<f64> = dist
        .p
        .iter()
        .map(|&pi| if pi > 0.0 { alpha * pi.ln() } else { f64::NEG_INFINITY })
        .collect();
    let log_z = log_sum_exp(&logs);
    let p = logs.iter().map(|&l| if l.is_finite() { (l - log_z).exp() } else { 0.0 }).collect();
    Ok(Distribution {
        p,
        normalized_input: true,
    })
}

/// Equivalent probability `P̃_r = b^{-H̃_r} = M_r(P, P)`, the mean path of
/// the distribution through the order parameter.
pub fn equivalent_probability(
    order: &OrderParameter,
    dist: &Distribution,
) -> Result<f64, EntropyError> {
    Ok(semifield_mean(order.r(), &self_vector(dist))?.get())
}

/// Information potential `V_r = E_P{P^r} = Σ p_i^{1+r} = b^{-r·H̃_r}`,
/// the `r`-th moment of the distribution under itself.
pub fn information_potential(
    order: &OrderParameter,
    dist: &Distribution,
) -> Result<f64, EntropyError> {
    let r = order.r();
    if !r.is_finite() {
        return Err(EntropyError::NonFiniteOrder(r));
    }
    let logs: Vec<f64> = dist
        .support()
        .map(|i| (1.0 + r) * dist.p[i].ln())
        .collect();
    Ok(log_sum_exp(&logs).exp())
}

/// A sampled entropy spectrum `r ↦ H̃_r(P)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropySpectrum {
    pub points: Vec<(f64, f64)>,
    pub base: f64,
}

impl EntropySpectrum {
    /// Non-increasing along the grid, within `slack`.
    pub fn is_monotone(&self, slack: f64) -> bool {
        self.points.windows(2).all(|w| w[1].1 <= w[0].1 + slack)
    }

    /// All values within the `[H̃_inf, H̃_{-inf}]` band, within `slack`.
    pub fn is_bounded_by(&self, h_pos_inf: f64, h_neg_inf: f64, slack: f64) -> bool {
        self.points
            .iter()
            .all(|&(_, h)| h >= h_pos_inf - slack && h <= h_neg_inf + slack)
    }
}

/// Evaluates the spectrum on a sorted grid of orders.
pub fn spectrum(
    dist: &Distribution,
    grid: &[f64],
    base: f64,
) -> Result<EntropySpectrum, EntropyError> {
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(EntropyError::UnsortedGrid);
    }
    let mut points = Vec::with_capacity(grid.len());
    for &r in grid {
        let order = OrderParameter::with_base(r, base).map_err(|_| EntropyError::NonFiniteOrder(r))?;
        points.push((r, shifted_entropy(&order, dist)?));
    }
    Ok(EntropySpectrum { points, base })
}

/// Both rewritings of `H̃_r` through the order-zero quantities of the
/// escort distribution:
///
/// ```text
/// H̃_r(P) = (1/r)·D̃_0(p̃‖P) + X̃_0(p̃, P)
/// H̃_r(P) = (-1/r)·H̃_0(p̃) + ((r+1)/r)·X̃_0(p̃, P)
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShannonDecomposition {
    /// `H̃_r(P)` computed directly.
    pub entropy: f64,
    /// The divergence + cross-entropy rewriting.
    pub via_divergence: f64,
    /// The escort-entropy rewriting.
    pub via_escort_entropy: f64,
}

pub fn shannon_decomposition(
    order: &OrderParameter,
    dist: &Distribution,
) -> Result<ShannonDecomposition, EntropyError> {
    let r = order.r();
    if !r.is_finite() {
        return Err(EntropyError::NonFiniteOrder(r));
    }
    if r == 0.0 {
        return Err(EntropyError::DegenerateOrder);
    }
    let zero = OrderParameter::with_base(0.0, order.base()).expect("base already validated");
    let esc = escort(order, dist)?;
    let entropy = shifted_entropy(order, dist)?;
    let d0 = shifted_divergence(&zero, &esc, dist)?;
    let x0 = shifted_cross_entropy(&zero, &esc, dist)?;
    let h0 = shifted_entropy(&zero, &esc)?;
    Ok(ShannonDecomposition {
        entropy,
        via_divergence: d0 / r + x0,
        via_escort_entropy: -h0 / r + (r + 1.0) / r * x0,
    })
}

/// Closed-form derivative of the spectrum,
/// `d/dr H̃_r(P) = (-1/r²)·D̃_0(p̃_r‖P)`. Always non-positive. Undefined
/// at `r = 0`; use a finite difference there.
pub fn spectrum_derivative(
    order: &OrderParameter,
    dist: &Distribution,
) -> Result<f64, EntropyError> {
    let r = order.r();
    if !r.is_finite() {
        return Err(EntropyError::NonFiniteOrder(r));
    }
    if r == 0.0 {
        return Err(EntropyError::DegenerateOrder);
    }
    let zero = OrderParameter::with_base(0.0, order.base()).expect("base already validated");
    let esc = escort(order, dist)?;
    let d0 = shifted_divergence(&zero, &esc, dist)?;
    Ok(-d0 / (r * r))
}

/// The moment form of the entropy: `H̃_r = -(1/r)·log_b E{P^r}`. Returns
/// the direct value alongside the moment route so callers can compare.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentIdentity {
    pub entropy: f64,
    pub from_moment: f64,
}

pub fn moment_identity(
    order: &OrderParameter,
    dist: &Distribution,
) -> Result<MomentIdentity, EntropyError> {
    let r = order.r();
    if !r.is_finite() {
        return Err(EntropyError::NonFiniteOrder(r));
    }
    if r == 0.0 {
        return Err(EntropyError::DegenerateOrder);
    }
    let entropy = shifted_entropy(order, dist)?;
    let potential = information_potential(order, dist)?;
    Ok(MomentIdentity {
        entropy,
        from_moment: -Distribution::log_b(potential, order.base()) / r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::close;

    fn ord(r: f64) -> OrderParameter {
        OrderParameter::new(r).unwrap()
    }

    fn dist(p: &[f64]) -> Distribution {
        Distribution::new(p.to_vec()).unwrap()
    }

    #[test]
    fn construction_and_normalization() {
        let d = dist(&[2.0, 2.0]);
        assert_eq!(d.probabilities(), &[0.5, 0.5]);
        assert!(!d.was_normalized());
        assert!(Distribution::strict(vec![0.4, 0.4]).is_err());
        assert!(Distribution::strict(vec![0.5, 0.5]).is_ok());
        assert!(Distribution::new(vec![0.0, 0.0]).is_err());
        assert!(Distribution::new(vec![0.5, -0.1]).is_err());
        assert_eq!(dist(&[0.5, 0.0, 0.5]).support_size(), 2);
    }

    #[test]
    fn uniform_entropy_is_log_n_at_every_order() {
        let u = Distribution::uniform(4);
        for r in [f64::NEG_INFINITY, -3.0, -1.0, 0.0, 0.5, 1.0, 7.0, INF] {
            let h = shifted_entropy(&ord(r), &u).unwrap();
            assert!(close(h, 2.0, 1e-12), "r={r}: {h}");
        }
    }

    #[test]
    fn named_orders_on_a_dyadic_pmf() {
        let d = dist(&[0.5, 0.25, 0.125, 0.125]);
        assert!(close(shifted_entropy(&ord(INF), &d).unwrap(), 1.0, 1e-12));
        let quadratic = -(22.0f64 / 64.0).log2();
        assert!(close(shifted_entropy(&ord(1.0), &d).unwrap(), quadratic, 1e-12));
        assert!(close(shifted_entropy(&ord(0.0), &d).unwrap(), 1.75, 1e-12));
        assert!(close(shifted_entropy(&ord(-1.0), &d).unwrap(), 2.0, 1e-12));
        assert!(close(shifted_entropy(&ord(f64::NEG_INFINITY), &d).unwrap(), 3.0, 1e-12));
    }

    #[test]
    fn deterministic_distribution_has_zero_entropy() {
        let d = dist(&[1.0, 0.0, 0.0]);
        for r in [0.0, 0.5, 2.0, INF] {
            assert!(close(shifted_entropy(&ord(r), &d).unwrap(), 0.0, 1e-12));
        }
        // Hartley entropy sees only the support
        assert!(close(shifted_entropy(&ord(-1.0), &d).unwrap(), 0.0, 1e-12));
    }

    #[test]
    fn hartley_order_counts_the_support() {
        let d = dist(&[0.5, 0.25, 0.125, 0.125]);
        assert!(close(shifted_entropy(&ord(-1.0), &d).unwrap(), 2.0, 1e-12));
        let d = dist(&[0.9, 0.1, 0.0]);
        assert!(close(shifted_entropy(&ord(-1.0), &d).unwrap(), 1.0, 1e-12));
    }

    #[test]
    fn quadratic_entropy_example() {
        let d = dist(&[0.75, 0.25]);
        let expected = -(0.625f64).log2();
        assert!(close(shifted_entropy(&ord(1.0), &d).unwrap(), expected, 1e-12));
    }

    #[test]
    fn cross_entropy_reduces_to_entropy() {
        let d = dist(&[0.6, 0.3, 0.1]);
        for r in [-2.0, -0.5, 0.0, 1.0, 3.0] {
            let h = shifted_entropy(&ord(r), &d).unwrap();
            let x = shifted_cross_entropy(&ord(r), &d, &d).unwrap();
            assert!(close(h, x, 1e-12), "r={r}");
        }
    }

    #[test]
    fn cross_entropy_examples() {
        // geometric cross-entropy of a point mass against a fair coin
        let p = dist(&[1.0, 0.0]);
        let q = dist(&[0.5, 0.5]);
        assert!(close(shifted_cross_entropy(&ord(0.0), &p, &q).unwrap(), 1.0, 1e-12));
        // arithmetic cross-entropy of the fair coin against a point mass
        let p = Distribution::uniform(2);
        let q = dist(&[1.0, 0.0]);
        assert!(close(shifted_cross_entropy(&ord(1.0), &p, &q).unwrap(), 1.0, 1e-12));
        // unsupported outcome with geometric averaging costs infinity
        assert_eq!(shifted_cross_entropy(&ord(0.0), &p, &q).unwrap(), INF);
        let bad = dist(&[1.0]);
        assert!(shifted_cross_entropy(&ord(1.0), &p, &bad).is_err());
    }

    #[test]
    fn divergence_basics() {
        let p = dist(&[0.75, 0.25]);
        let q = dist(&[0.5, 0.5]);
        assert!(close(shifted_divergence(&ord(1.0), &p, &p).unwrap(), 0.0, 1e-12));
        let kl = 0.75 * (0.75f64 / 0.5).log2() + 0.25 * (0.25f64 / 0.5).log2();
        assert!(close(shifted_divergence(&ord(0.0), &p, &q).unwrap(), kl, 1e-12));
        // divergence from uniformity complements the entropy
        let u = Distribution::uniform(2);
        for r in [-1.0, -0.5, 0.0, 1.0, 4.0] {
            let d = shifted_divergence(&ord(r), &p, &u).unwrap();
            let h = shifted_entropy(&ord(r), &p).unwrap();
            assert!(close(d + h, 1.0, 1e-9), "r={r}");
        }
    }

    #[test]
    fn escort_examples() {
        let p = dist(&[0.75, 0.25]);
        assert_eq!(escort(&ord(0.0), &p).unwrap(), p);
        let e = escort(&ord(1.0), &p).unwrap();
        assert!(close(e.probabilities()[0], 0.9, 1e-12));
        assert!(close(e.probabilities()[1], 0.1, 1e-12));
        let u = Distribution::uniform(3);
        let e = escort(&ord(5.0), &u).unwrap();
        for &pi in e.probabilities() {
            assert!(close(pi, 1.0 / 3.0, 1e-12));
        }
        // zeros stay zero
        let p = dist(&[0.5, 0.0, 0.5]);
        assert_eq!(escort(&ord(2.0), &p).unwrap().probabilities()[1], 0.0);
        assert!(escort(&ord(INF), &p).is_err());
    }

    #[test]
    fn equivalent_probability_examples() {
        let u = Distribution::uniform(5);
        for r in [-2.0, 0.0, 1.0, 10.0] {
            assert!(close(equivalent_probability(&ord(r), &u).unwrap(), 0.2, 1e-12));
        }
        let p = dist(&[0.75, 0.25]);
        assert!(close(equivalent_probability(&ord(1.0), &p).unwrap(), 0.625, 1e-12));
        let point = dist(&[1.0, 0.0]);
        for r in [0.0, 1.0, 2.0, INF] {
            assert!(close(equivalent_probability(&ord(r), &point).unwrap(), 1.0, 1e-12));
        }
        // the equivalent probability lies between the extreme masses
        let p = dist(&[0.7, 0.2, 0.1]);
        for r in [-4.0, -1.0, 0.0, 3.0] {
            let ep = equivalent_probability(&ord(r), &p).unwrap();
            assert!((0.1..=0.7).contains(&ep));
        }
    }

    #[test]
    fn information_potential_examples() {
        let p = dist(&[0.75, 0.25]);
        assert!(close(information_potential(&ord(1.0), &p).unwrap(), 0.625, 1e-12));
        assert!(close(information_potential(&ord(0.0), &p).unwrap(), 1.0, 1e-12));
        // V = b^{-r H̃} = φ'(H̃)
        for r in [-2.0, -0.5, 1.0, 3.0] {
            let v = information_potential(&ord(r), &p).unwrap();
            let h = shifted_entropy(&ord(r), &p).unwrap();
            assert!(close(v, 2f64.powf(-r * h), 1e-9), "r={r}");
        }
    }

    #[test]
    fn spectrum_shape() {
        let p = dist(&[0.6, 0.3, 0.1]);
        let grid: Vec<f64> = (-10..=10).map(|k| k as f64 / 2.0).collect();
        let s = spectrum(&p, &grid, 2.0).unwrap();
        assert!(s.is_monotone(1e-9));
        let hi = shifted_entropy(&ord(INF), &p).unwrap();
        let lo = shifted_entropy(&ord(f64::NEG_INFINITY), &p).unwrap();
        assert!(s.is_bounded_by(hi, lo, 1e-9));
        assert!(spectrum(&p, &[1.0, 0.0], 2.0).is_err());
    }

    #[test]
    fn shannon_decomposition_balances() {
        for p in [dist(&[0.75, 0.25]), dist(&[0.5, 0.25, 0.125, 0.125])] {
            for r in [-0.5, 0.5, 1.0, 2.0, 5.0] {
                let d = shannon_decomposition(&ord(r), &p).unwrap();
                assert!(close(d.entropy, d.via_divergence, 1e-9), "r={r}");
                assert!(close(d.entropy, d.via_escort_entropy, 1e-9), "r={r}");
            }
        }
        let u = Distribution::uniform(8);
        let d = shannon_decomposition(&ord(2.0), &u).unwrap();
        assert!(close(d.entropy, 3.0, 1e-12));
        assert!(close(d.via_divergence, 3.0, 1e-12));
        assert!(shannon_decomposition(&ord(0.0), &u).is_err());
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let p = dist(&[0.75, 0.25]);
        let h = 1e-5;
        for r in [-0.5, 0.5, 1.0, 2.0] {
            let exact = spectrum_derivative(&ord(r), &p).unwrap();
            let plus = shifted_entropy(&ord(r + h), &p).unwrap();
            let minus = shifted_entropy(&ord(r - h), &p).unwrap();
            let fd = (plus - minus) / (2.0 * h);
            assert!((exact - fd).abs() < 1e-6, "r={r}: {exact} vs {fd}");
            assert!(exact <= 0.0);
        }
        let u = Distribution::uniform(4);
        assert!(close(spectrum_derivative(&ord(1.0), &u).unwrap(), 0.0, 1e-12));
    }

    #[test]
    fn moment_identity_balances() {
        let p = dist(&[0.75, 0.25]);
        for r in [1.0, 2.0, -2.0] {
            let m = moment_identity(&ord(r), &p).unwrap();
            assert!(close(m.entropy, m.from_moment, 1e-9), "r={r}");
        }
        let m = moment_identity(&ord(1.0), &p).unwrap();
        assert!(close(m.entropy, -(0.625f64).log2(), 1e-12));
    }

    #[test]
    fn alpha_indexing_agrees_with_the_shift() {
        let p = dist(&[0.5, 0.25, 0.125, 0.125]);
        for alpha in [0.0, 0.5, 2.0, 3.0] {
            let direct = (1.0 / (1.0 - alpha))
                * p.support()
                    .map(|i| p.probabilities()[i].powf(alpha))
                    .sum::<f64>()
                    .log2();
            let shifted = shifted_entropy(&OrderParameter::from_alpha(alpha).unwrap(), &p).unwrap();
            assert!(close(direct, shifted, 1e-9), "alpha={alpha}");
        }
    }
}
