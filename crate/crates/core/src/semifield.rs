//! Completed positive semifields and their dual pairs.
//!
//! A positive semifield is an entire, zero-sum-free commutative semiring
//! with multiplicative inverses for every nonzero element; the paragon is
//! `([0, inf), +, *, 1/x, 0, 1)`. Adjoining the missing top element
//! `⊤ = ⊥⁻¹` yields a *pair* of completed semifields over the same
//! carrier: one aligned with the original order and one with its dual.
//! The two additions and two multiplications of the pair (written here
//! `lower_add`/`upper_add`, `lower_mul`/`upper_mul`) agree on interior
//! operands and differ only at the corners, where the dispatch follows
//! fixed case tables with the mnemonic
//!
//! ```text
//! ⊥ ⊗̲ ⊤ = ⊥        ⊥ ⊗̄ ⊤ = ⊤
//! ```
//!
//! Each [`Semifield`] value describes one member of such a pair relative
//! to its *own* bottom/top designation; [`Semifield::dual`] produces the
//! other member. Corner classification happens before any floating-point
//! arithmetic, so indeterminate IEEE forms (`0 * inf`, `inf - inf`) are
//! never evaluated.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::numeric::log_sum_exp2;
use crate::value::{Carrier, ExtendedReal, ValueClass};

pub(crate) type BinOp = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub(crate) type UnOp = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Whether the canonical order of the semifield coincides with the numeric
/// order of the carrier (`Aligned`) or with its opposite (`Dual`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderAlignment {
    Aligned,
    Dual,
}

impl OrderAlignment {
    pub fn flipped(self) -> Self {
        match self {
            OrderAlignment::Aligned => OrderAlignment::Dual,
            OrderAlignment::Dual => OrderAlignment::Aligned,
        }
    }
}

/// Interior operations of the underlying (incomplete) semifield.
///
/// The closures are only ever invoked on interior operands; the corner
/// rows of the case tables are handled by the descriptor itself.
pub(crate) struct Kernel {
    pub add: BinOp,
    pub mul: BinOp,
    pub inv: UnOp,
}

/// The eight baseline completed positive semifields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `([0,inf], +̲, ×̲, 1/x, 0, 1, inf)` — probabilities, series resistances.
    NonNegativeReals,
    /// Its inverse: harmonic addition, parallel conductances.
    NonNegativeRealsDual,
    /// `([0,inf], max, ×̲, 1/x, 0, 1, inf)`.
    MaxTimes,
    /// `([0,inf], min, ×̄, 1/x, inf, 1, 0)`.
    MinTimes,
    /// `([-inf,inf], max, +̲, -x, -inf, 0, inf)` — schedule algebra.
    MaxPlus,
    /// `([-inf,inf], min, +̄, -x, inf, 0, -inf)` — tropical algebra.
    MinPlus,
    /// Log-sum-exp addition, `+` as product; the image of `[0,inf]` under
    /// the information map `x ↦ -ln x` applied to the dual reals.
    Hartley,
    /// Its inverse, with addition `-lse(-u,-v)`; the direct image of the
    /// non-negative reals under `x ↦ -ln x`.
    HartleyDual,
}

impl Builtin {
    pub const ALL: [Builtin; 8] = [
        Builtin::NonNegativeReals,
        Builtin::NonNegativeRealsDual,
        Builtin::MaxTimes,
        Builtin::MinTimes,
        Builtin::MaxPlus,
        Builtin::MinPlus,
        Builtin::Hartley,
        Builtin::HartleyDual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::NonNegativeReals => "nnR",
            Builtin::NonNegativeRealsDual => "nnR-dual",
            Builtin::MaxTimes => "max-times",
            Builtin::MinTimes => "min-times",
            Builtin::MaxPlus => "max-plus",
            Builtin::MinPlus => "min-plus",
            Builtin::Hartley => "hartley",
            Builtin::HartleyDual => "hartley-dual",
        }
    }

    /// The other member of the dual pair.
    pub fn partner(self) -> Builtin {
        match self {
            Builtin::NonNegativeReals => Builtin::NonNegativeRealsDual,
            Builtin::NonNegativeRealsDual => Builtin::NonNegativeReals,
            Builtin::MaxTimes => Builtin::MinTimes,
            Builtin::MinTimes => Builtin::MaxTimes,
            Builtin::MaxPlus => Builtin::MinPlus,
            Builtin::MinPlus => Builtin::MaxPlus,
            Builtin::Hartley => Builtin::HartleyDual,
            Builtin::HartleyDual => Builtin::Hartley,
        }
    }
}

/// Error for an unrecognized semifield name.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown semifield `{0}` (expected one of nnR, nnR-dual, max-times, min-times, max-plus, min-plus, hartley, hartley-dual)")]
pub struct UnknownSemifield(pub String);

impl FromStr for Builtin {
    type Err = UnknownSemifield;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        match key.as_str() {
            "nnr" | "nonnegativereals" | "probability" => Ok(Builtin::NonNegativeReals),
            "nnrdual" | "nonnegativerealsdual" => Ok(Builtin::NonNegativeRealsDual),
            "maxtimes" => Ok(Builtin::MaxTimes),
            "mintimes" => Ok(Builtin::MinTimes),
            "maxplus" => Ok(Builtin::MaxPlus),
            "minplus" | "tropical" => Ok(Builtin::MinPlus),
            "hartley" => Ok(Builtin::Hartley),
            "hartleydual" => Ok(Builtin::HartleyDual),
            _ => Err(UnknownSemifield(s.to_string())),
        }
    }
}

/// Structural identity of a descriptor: everything except the closures.
#[derive(Debug, Clone, PartialEq)]
pub struct Signature {
    pub carrier: Carrier,
    pub bottom: f64,
    pub unit: f64,
    pub top: f64,
    pub alignment: OrderAlignment,
}

/// One completed positive semifield.
///
/// Immutable and cheap to clone; every operation is a pure function, so
/// values can be shared freely across threads.
#[derive(Clone)]
pub struct Semifield {
    name: String,
    carrier: Carrier,
    bottom: f64,
    unit: f64,
    top: f64,
    alignment: OrderAlignment,
    idempotent: bool,
    builtin: Option<Builtin>,
    kernel: Arc<Kernel>,
}

impl Semifield {
    /// Assembles a descriptor from interior kernels and corner data.
    ///
    /// `bottom` must be one carrier endpoint; the top is the other one,
    /// consistent with `⊤ = ⊥⁻¹`.
    pub(crate) fn define(
        name: impl Into<String>,
        carrier: Carrier,
        bottom: f64,
        unit: f64,
        idempotent: bool,
        kernel: Kernel,
    ) -> Semifield {
        let (top, alignment) = if bottom == carrier.lo() {
            (carrier.hi(), OrderAlignment::Aligned)
        } else if bottom == carrier.hi() {
            (carrier.lo(), OrderAlignment::Dual)
        } else {
            panic!("bottom must be a carrier endpoint");
        };
        Semifield {
            name: name.into(),
            carrier,
            bottom,
            unit,
            top,
            alignment,
            idempotent,
            builtin: None,
            kernel: Arc::new(kernel),
        }
    }

    /// Returns one of the eight baseline semifields.
    pub fn builtin(which: Builtin) -> Semifield {
        let mut f = match which {
            Builtin::NonNegativeReals => Semifield::define(
                which.name(),
                Carrier::NON_NEGATIVE,
                0.0,
                1.0,
                false,
                Kernel {
                    add: Arc::new(|a, b| a + b),
                    mul: Arc::new(|a, b| a * b),
                    inv: Arc::new(|a| 1.0 / a),
                },
            ),
            Builtin::NonNegativeRealsDual => Semifield::define(
                which.name(),
                Carrier::NON_NEGATIVE,
                f64::INFINITY,
                1.0,
                false,
                Kernel {
                    // harmonic addition: a ⊕̄ b = ab/(a+b), computed
                    // reciprocal-wise to avoid overflow of the product
                    add: Arc::new(|a, b| 1.0 / (1.0 / a + 1.0 / b)),
                    mul: Arc::new(|a, b| a * b),
                    inv: Arc::new(|a| 1.0 / a),
                },
            ),
            Builtin::MaxTimes => Semifield::define(
                which.name(),
                Carrier::NON_NEGATIVE,
                0.0,
                1.0,
                true,
                Kernel {
                    add: Arc::new(f64::max),
                    mul: Arc::new(|a, b| a * b),
                    inv: Arc::new(|a| 1.0 / a),
                },
            ),
            Builtin::MinTimes => Semifield::define(
                which.name(),
                Carrier::NON_NEGATIVE,
                f64::INFINITY,
                1.0,
                true,
                Kernel {
                    add: Arc::new(f64::min),
                    mul: Arc::new(|a, b| a * b),
                    inv: Arc::new(|a| 1.0 / a),
                },
            ),
            Builtin::MaxPlus => Semifield::define(
                which.name(),
                Carrier::EXTENDED_REALS,
                f64::NEG_INFINITY,
                0.0,
                true,
                Kernel {
                    add: Arc::new(f64::max),
                    mul: Arc::new(|a, b| a + b),
                    inv: Arc::new(|a| -a),
                },
            ),
            Builtin::MinPlus => Semifield::define(
                which.name(),
                Carrier::EXTENDED_REALS,
                f64::INFINITY,
                0.0,
                true,
                Kernel {
                    add: Arc::new(f64::min),
                    mul: Arc::new(|a, b| a + b),
                    inv: Arc::new(|a| -a),
                },
            ),
            Builtin::Hartley => Semifield::define(
                which.name(),
                Carrier::EXTENDED_REALS,
                f64::NEG_INFINITY,
                0.0,
                false,
                Kernel {
                    add: Arc::new(log_sum_exp2),
                    mul: Arc::new(|a, b| a + b),
                    inv: Arc::new(|a| -a),
                },
            ),
            Builtin::HartleyDual => Semifield::define(
                which.name(),
                Carrier::EXTENDED_REALS,
                f64::INFINITY,
                0.0,
                false,
                Kernel {
                    // h1 ⊕ h2 = h1 + h2 - ln(e^h1 + e^h2) = -lse(-h1, -h2)
                    add: Arc::new(|a, b| -log_sum_exp2(-a, -b)),
                    mul: Arc::new(|a, b| a + b),
                    inv: Arc::new(|a| -a),
                },
            ),
        };
        f.builtin = Some(which);
        f
    }

    /// Looks a builtin up by name (`"nnR"`, `"max-plus"`, ...).
    pub fn by_name(name: &str) -> Result<Semifield, UnknownSemifield> {
        Ok(Semifield::builtin(name.parse()?))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn bottom(&self) -> ExtendedReal {
        ExtendedReal::unchecked(self.bottom)
    }

    pub fn unit(&self) -> ExtendedReal {
        ExtendedReal::unchecked(self.unit)
    }

    pub fn top(&self) -> ExtendedReal {
        ExtendedReal::unchecked(self.top)
    }

    pub fn alignment(&self) -> OrderAlignment {
        self.alignment
    }

    /// Whether the addition is declared idempotent (`a ⊕ a = a`).
    pub fn is_idempotent(&self) -> bool {
        self.idempotent
    }

    /// Which builtin this descriptor is, if any.
    pub fn as_builtin(&self) -> Option<Builtin> {
        self.builtin
    }

    pub fn signature(&self) -> Signature {
        Signature {
            carrier: self.carrier,
            bottom: self.bottom,
            unit: self.unit,
            top: self.top,
            alignment: self.alignment,
        }
    }

    /// Structural compatibility: same carrier and distinguished elements.
    pub fn compatible(&self, other: &Semifield) -> bool {
        self.signature() == other.signature() && self.name == other.name
    }

    pub fn contains(&self, v: ExtendedReal) -> bool {
        self.carrier.contains(v.get())
    }

    /// Classifies a carrier element against this semifield's corners.
    pub fn classify(&self, v: ExtendedReal) -> ValueClass {
        let v = v.get();
        if v == self.bottom {
            ValueClass::Bottom
        } else if v == self.top {
            ValueClass::Top
        } else {
            ValueClass::Interior
        }
    }

    // Raw f64 entry points. Callers guarantee non-NaN carrier members;
    // corner dispatch comes first so the kernels only ever see interior
    // operands (plus the unit shortcut, which keeps e ⊗ a = a exact for
    // generator-built kernels).

    pub(crate) fn ladd(&self, a: f64, b: f64) -> f64 {
        debug_assert!(self.carrier.contains(a) && self.carrier.contains(b));
        if a == self.top || b == self.top {
            self.top
        } else if a == self.bottom {
            b
        } else if b == self.bottom {
            a
        } else {
            (self.kernel.add)(a, b)
        }
    }

    pub(crate) fn uadd(&self, a: f64, b: f64) -> f64 {
        debug_assert!(self.carrier.contains(a) && self.carrier.contains(b));
        if a == self.top {
            b
        } else if b == self.top {
            a
        } else if a == self.bottom || b == self.bottom {
            self.bottom
        } else {
            (self.kernel.inv)((self.kernel.add)((self.kernel.inv)(a), (self.kernel.inv)(b)))
        }
    }

    pub(crate) fn lmul(&self, a: f64, b: f64) -> f64 {
        debug_assert!(self.carrier.contains(a) && self.carrier.contains(b));
        if a == self.bottom || b == self.bottom {
            self.bottom
        } else if a == self.top || b == self.top {
            self.top
        } else if a == self.unit {
            b
        } else if b == self.unit {
            a
        } else {
            (self.kernel.mul)(a, b)
        }
    }

    pub(crate) fn umul(&self, a: f64, b: f64) -> f64 {
        debug_assert!(self.carrier.contains(a) && self.carrier.contains(b));
        if a == self.top || b == self.top {
            self.top
        } else if a == self.bottom || b == self.bottom {
            self.bottom
        } else if a == self.unit {
            b
        } else if b == self.unit {
            a
        } else {
            (self.kernel.mul)(a, b)
        }
    }

    pub(crate) fn inv_f(&self, a: f64) -> f64 {
        debug_assert!(self.carrier.contains(a));
        if a == self.bottom {
            self.top
        } else if a == self.top {
            self.bottom
        } else if a == self.unit {
            self.unit
        } else {
            (self.kernel.inv)(a)
        }
    }

    /// Lower addition `⊕̲`: the top absorbs, the bottom is neutral.
    pub fn lower_add(&self, a: ExtendedReal, b: ExtendedReal) -> ExtendedReal {
        ExtendedReal::unchecked(self.ladd(a.get(), b.get()))
    }

    /// Upper addition `⊕̄`: the top is neutral, the bottom absorbs.
    pub fn upper_add(&self, a: ExtendedReal, b: ExtendedReal) -> ExtendedReal {
        ExtendedReal::unchecked(self.uadd(a.get(), b.get()))
    }

    /// Lower multiplication `⊗̲`, with `⊥ ⊗̲ ⊤ = ⊥`.
    pub fn lower_mul(&self, a: ExtendedReal, b: ExtendedReal) -> ExtendedReal {
        ExtendedReal::unchecked(self.lmul(a.get(), b.get()))
    }

    /// Upper multiplication `⊗̄`, with `⊥ ⊗̄ ⊤ = ⊤`.
    pub fn upper_mul(&self, a: ExtendedReal, b: ExtendedReal) -> ExtendedReal {
        ExtendedReal::unchecked(self.umul(a.get(), b.get()))
    }

    /// Multiplicative inversion, extended by `⊥⁻¹ = ⊤` and `⊤⁻¹ = ⊥`.
    /// A total involution on the carrier that fixes the unit.
    pub fn inverse(&self, a: ExtendedReal) -> ExtendedReal {
        ExtendedReal::unchecked(self.inv_f(a.get()))
    }

    pub(crate) fn nat_le(&self, a: f64, b: f64) -> bool {
        match self.alignment {
            OrderAlignment::Aligned => a <= b,
            OrderAlignment::Dual => a >= b,
        }
    }

    /// Canonical (natural) order of the semifield: numeric `<=` when the
    /// alignment is `Aligned`, numeric `>=` when it is `Dual`.
    pub fn natural_le(&self, a: ExtendedReal, b: ExtendedReal) -> bool {
        self.nat_le(a.get(), b.get())
    }

    /// The other member of the dual pair.
    ///
    /// Builtins map to their named partner; any other descriptor gets the
    /// De Morgan-wrapped addition `a ⊕' b = (a⁻¹ ⊕ b⁻¹)⁻¹` with bottom and
    /// top exchanged. Applying `dual` twice restores the original
    /// structure.
    pub fn dual(&self) -> Semifield {
        if let Some(b) = self.builtin {
            return Semifield::builtin(b.partner());
        }
        let name = match self.name.strip_prefix("dual(") {
            Some(rest) if rest.ends_with(')') => rest[..rest.len() - 1].to_string(),
            _ => format!("dual({})", self.name),
        };
        let add = self.kernel.add.clone();
        let inv = self.kernel.inv.clone();
        let inv2 = self.kernel.inv.clone();
        Semifield::define(
            name,
            self.carrier,
            self.top,
            self.unit,
            self.idempotent,
            Kernel {
                add: Arc::new(move |a, b| inv(add(inv(a), inv(b)))),
                mul: self.kernel.mul.clone(),
                inv: inv2,
            },
        )
    }

    /// Pairs this semifield with its dual.
    pub fn dual_pair(&self) -> DualPair {
        DualPair {
            primal: self.clone(),
            dual: self.dual(),
        }
    }

    /// Interior sample points used by diagnostic probes.
    pub(crate) fn probe_points(&self) -> Vec<f64> {
        default_probes(self.carrier)
    }

    /// Checks `a ⊕̲ a = a` on the declared flag plus sampled probes.
    pub fn probe_idempotent(&self) -> bool {
        self.idempotent
            && self
                .probe_points()
                .iter()
                .all(|&a| self.ladd(a, a) == a)
    }
}

impl fmt::Debug for Semifield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Semifield")
            .field("name", &self.name)
            .field("carrier", &self.carrier)
            .field("bottom", &self.bottom)
            .field("unit", &self.unit)
            .field("top", &self.top)
            .field("alignment", &self.alignment)
            .field("idempotent", &self.idempotent)
            .finish()
    }
}

impl fmt::Display for Semifield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} <{}, bot={}, e={}, top={}>",
            self.name,
            self.carrier,
            self.bottom(),
            self.unit(),
            self.top()
        )
    }
}

/// A completed semifield together with its order-dual.
///
/// The pairing is an involution: `pair.swapped().swapped()` describes the
/// same structures as `pair`.
#[derive(Debug, Clone)]
pub struct DualPair {
    pub primal: Semifield,
    pub dual: Semifield,
}

impl DualPair {
    pub fn swapped(&self) -> DualPair {
        DualPair {
            primal: self.dual.clone(),
            dual: self.primal.clone(),
        }
    }
}

fn default_probes(carrier: Carrier) -> Vec<f64> {
    if carrier == Carrier::NON_NEGATIVE {
        vec![0.17, 0.5, 1.0, 2.3, 7.7]
    } else if carrier == Carrier::EXTENDED_REALS {
        vec![-7.7, -1.2, 0.0, 1.5, 3.3]
    } else {
        let (lo, hi) = (carrier.lo(), carrier.hi());
        let lo = if lo.is_finite() { lo } else { -8.0 };
        let hi = if hi.is_finite() { hi } else { 8.0 };
        (1..=5).map(|k| lo + (hi - lo) * k as f64 / 6.0).collect()
    }
}

/// An incomplete positive semifield, as supplied by a caller who wants the
/// two completions built for them.
///
/// `add`, `mul` and `inv` only need to be correct on the carrier without
/// its missing top; the completion supplies all corner behaviour.
pub struct SemifieldSpec {
    pub name: String,
    pub carrier: Carrier,
    pub bottom: f64,
    pub unit: f64,
    pub idempotent: bool,
    pub add: BinOp,
    pub mul: BinOp,
    pub inv: UnOp,
    /// Interior sample points for the diagnostic probe; empty means a
    /// default set derived from the carrier.
    pub probes: Vec<f64>,
}

/// Diagnostic failure of the pre-completion probe.
#[derive(Debug, Clone, Error)]
pub enum SpecError {
    #[error("bottom {bottom} is not an endpoint of the carrier {carrier}")]
    BottomNotEndpoint { bottom: f64, carrier: Carrier },
    #[error("unit {unit} must lie strictly inside the carrier {carrier}")]
    UnitNotInterior { unit: f64, carrier: Carrier },
    #[error("{law} fails on probe {operands:?}: {lhs} != {rhs}")]
    ProbeFailed {
        law: &'static str,
        operands: Vec<f64>,
        lhs: f64,
        rhs: f64,
    },
}

const PROBE_TOL: f64 = 1e-9;

fn probe_close(a: f64, b: f64) -> bool {
    if !a.is_finite() || !b.is_finite() {
        a == b
    } else {
        (a - b).abs() <= PROBE_TOL * a.abs().max(b.abs()).max(1.0)
    }
}

/// Completes an incomplete positive semifield into its dual pair.
///
/// The spec's addition and multiplication are probed for commutativity,
/// associativity, neutrality of the distinguished elements, inverses and
/// distributivity on sampled triples before anything is built; a failing
/// probe is reported with the witness. The probe is a diagnostic, not a
/// proof — the properties of a caller-supplied algebra can only be spot
/// checked on samples.
pub fn complete_pair(spec: SemifieldSpec) -> Result<DualPair, SpecError> {
    if spec.bottom != spec.carrier.lo() && spec.bottom != spec.carrier.hi() {
        return Err(SpecError::BottomNotEndpoint {
            bottom: spec.bottom,
            carrier: spec.carrier,
        });
    }
    if !spec.carrier.contains_interior(spec.unit) {
        return Err(SpecError::UnitNotInterior {
            unit: spec.unit,
            carrier: spec.carrier,
        });
    }

    let pts = if spec.probes.is_empty() {
        default_probes(spec.carrier)
    } else {
        spec.probes.clone()
    };
    let fail = |law: &'static str, operands: Vec<f64>, lhs: f64, rhs: f64| {
        Err(SpecError::ProbeFailed {
            law,
            operands,
            lhs,
            rhs,
        })
    };

    let add = |a: f64, b: f64| (spec.add)(a, b);
    let mul = |a: f64, b: f64| (spec.mul)(a, b);
    let inv = |a: f64| (spec.inv)(a);

    for &a in &pts {
        if !probe_close(add(spec.bottom, a), a) {
            return fail("bottom neutrality of +", vec![a], add(spec.bottom, a), a);
        }
        if !probe_close(mul(spec.unit, a), a) {
            return fail("unit law of *", vec![a], mul(spec.unit, a), a);
        }
        if !probe_close(mul(a, inv(a)), spec.unit) {
            return fail("inverse law", vec![a], mul(a, inv(a)), spec.unit);
        }
        if !probe_close(inv(inv(a)), a) {
            return fail("involution of inverse", vec![a], inv(inv(a)), a);
        }
        for &b in &pts {
            if !probe_close(add(a, b), add(b, a)) {
                return fail("commutativity of +", vec![a, b], add(a, b), add(b, a));
            }
            if !probe_close(mul(a, b), mul(b, a)) {
                return fail("commutativity of *", vec![a, b], mul(a, b), mul(b, a));
            }
            for &c in &pts {
                let l = add(add(a, b), c);
                let r = add(a, add(b, c));
                if !probe_close(l, r) {
                    return fail("associativity of +", vec![a, b, c], l, r);
                }
                let l = mul(mul(a, b), c);
                let r = mul(a, mul(b, c));
                if !probe_close(l, r) {
                    return fail("associativity of *", vec![a, b, c], l, r);
                }
                let l = mul(a, add(b, c));
                let r = add(mul(a, b), mul(a, c));
                if !probe_close(l, r) {
                    return fail("distributivity", vec![a, b, c], l, r);
                }
            }
        }
    }

    let primal = Semifield::define(
        spec.name,
        spec.carrier,
        spec.bottom,
        spec.unit,
        spec.idempotent,
        Kernel {
            add: spec.add,
            mul: spec.mul,
            inv: spec.inv,
        },
    );
    let dual = primal.dual();
    Ok(DualPair { primal, dual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: f64) -> ExtendedReal {
        ExtendedReal::unchecked(v)
    }

    const INF: f64 = f64::INFINITY;

    #[test]
    fn nnr_corner_products() {
        let f = Semifield::builtin(Builtin::NonNegativeReals);
        assert_eq!(f.lower_mul(x(0.0), x(INF)).get(), 0.0);
        assert_eq!(f.upper_mul(x(0.0), x(INF)).get(), INF);
        assert_eq!(f.lower_add(x(3.0), x(4.0)).get(), 7.0);
        // bottom is the maximum of the dual order, so it absorbs ⊕̄
        assert_eq!(f.upper_add(x(0.0), x(5.0)).get(), 0.0);
        assert_eq!(f.upper_add(x(0.0), x(INF)).get(), 0.0);
    }

    #[test]
    fn nnr_dual_is_parallel_summation() {
        let f = Semifield::builtin(Builtin::NonNegativeRealsDual);
        // two equal resistors in parallel halve
        assert_eq!(f.lower_add(x(2.0), x(2.0)).get(), 1.0);
        // the dual's bottom inf is neutral for its own addition
        assert_eq!(f.lower_add(x(INF), x(3.0)).get(), 3.0);
        assert_eq!(f.lower_mul(x(2.0), x(3.0)).get(), 6.0);
        // own mnemonic: bot ⊗̲ top = bot, i.e. inf ⊗̲ 0 = inf here
        assert_eq!(f.lower_mul(x(INF), x(0.0)).get(), INF);
    }

    #[test]
    fn inverse_swaps_corners_and_fixes_unit() {
        for b in Builtin::ALL {
            let f = Semifield::builtin(b);
            assert_eq!(f.inverse(f.bottom()), f.top(), "{}", f.name());
            assert_eq!(f.inverse(f.top()), f.bottom(), "{}", f.name());
            assert_eq!(f.inverse(f.unit()), f.unit(), "{}", f.name());
        }
        let f = Semifield::builtin(Builtin::NonNegativeReals);
        assert_eq!(f.inverse(x(2.0)).get(), 0.5);
        let mp = Semifield::builtin(Builtin::MaxPlus);
        assert_eq!(mp.inverse(x(3.0)).get(), -3.0);
    }

    #[test]
    fn builtin_signatures_match_their_definitions() {
        let mp = Semifield::builtin(Builtin::MaxPlus);
        assert_eq!(mp.bottom().get(), f64::NEG_INFINITY);
        assert_eq!(mp.unit().get(), 0.0);
        assert_eq!(mp.top().get(), INF);
        assert_eq!(mp.alignment(), OrderAlignment::Aligned);
        assert_eq!(mp.lower_add(x(3.0), x(4.0)).get(), 4.0);
        assert_eq!(mp.lower_mul(x(3.0), x(4.0)).get(), 7.0);

        let mt = Semifield::builtin(Builtin::MinTimes);
        assert_eq!(mt.bottom().get(), INF);
        assert_eq!(mt.unit().get(), 1.0);
        assert_eq!(mt.top().get(), 0.0);
        assert_eq!(mt.alignment(), OrderAlignment::Dual);
        assert_eq!(mt.lower_add(x(3.0), x(4.0)).get(), 3.0);

        let h = Semifield::builtin(Builtin::Hartley);
        assert_eq!(h.lower_mul(x(1.5), x(2.0)).get(), 3.5);
        // -inf ⊗̲ inf = -inf in the aligned member, inf in the dual
        assert_eq!(h.lower_mul(x(-INF), x(INF)).get(), -INF);
        assert_eq!(h.upper_mul(x(-INF), x(INF)).get(), INF);
    }

    #[test]
    fn top_is_neutral_for_upper_addition() {
        for b in Builtin::ALL {
            let f = Semifield::builtin(b);
            for &v in &f.probe_points() {
                assert_eq!(f.uadd(f.top().get(), v), v, "{}", f.name());
            }
        }
    }

    #[test]
    fn dual_of_dual_restores_signature_and_ops() {
        for b in Builtin::ALL {
            let f = Semifield::builtin(b);
            let ff = f.dual().dual();
            assert_eq!(f.signature(), ff.signature());
            assert_eq!(f.name(), ff.name());
        }
        // a non-builtin round trip
        let f = Semifield::define(
            "squares",
            Carrier::NON_NEGATIVE,
            0.0,
            1.0,
            false,
            Kernel {
                add: Arc::new(|a, b| (a * a + b * b).sqrt()),
                mul: Arc::new(|a, b| a * b),
                inv: Arc::new(|a| 1.0 / a),
            },
        );
        let ff = f.dual().dual();
        assert_eq!(f.signature(), ff.signature());
        for &a in &f.probe_points() {
            for &b in &f.probe_points() {
                let l = f.ladd(a, b);
                let r = ff.ladd(a, b);
                assert!((l - r).abs() <= 1e-12 * l.abs().max(1.0));
            }
        }
    }

    #[test]
    fn dual_wrap_matches_named_partner() {
        // the generic wrapping must agree with the hand-written partners
        for b in [Builtin::NonNegativeReals, Builtin::MaxPlus, Builtin::Hartley] {
            let f = Semifield::builtin(b);
            let named = Semifield::builtin(b.partner());
            let mut wrapped = f.clone();
            wrapped.builtin = None;
            let wrapped = wrapped.dual();
            assert_eq!(named.signature(), wrapped.signature());
            for &a in &f.probe_points() {
                for &c in &f.probe_points() {
                    let l = named.ladd(a, c);
                    let r = wrapped.ladd(a, c);
                    assert!(
                        (l - r).abs() <= 1e-9 * l.abs().max(1.0),
                        "{}: {l} vs {r}",
                        named.name()
                    );
                }
            }
        }
    }

    #[test]
    fn builtin_names_parse() {
        for b in Builtin::ALL {
            assert_eq!(b.name().parse::<Builtin>().unwrap(), b);
        }
        assert_eq!("maxplus".parse::<Builtin>().unwrap(), Builtin::MaxPlus);
        assert_eq!("nnR".parse::<Builtin>().unwrap(), Builtin::NonNegativeReals);
        assert!("frobnicator".parse::<Builtin>().is_err());
    }

    #[test]
    fn complete_pair_builds_the_resistor_pair() {
        let pair = complete_pair(SemifieldSpec {
            name: "resistance".into(),
            carrier: Carrier::NON_NEGATIVE,
            bottom: 0.0,
            unit: 1.0,
            idempotent: false,
            add: Arc::new(|a, b| a + b),
            mul: Arc::new(|a, b| a * b),
            inv: Arc::new(|a| 1.0 / a),
            probes: vec![],
        })
        .unwrap();
        assert_eq!(pair.dual.bottom().get(), INF);
        // 2 ⊕̄ 2 = 1 in the dual (parallel resistors)
        assert_eq!(pair.dual.ladd(2.0, 2.0), 1.0);
        // top of the dual is neutral for its addition
        assert_eq!(pair.dual.ladd(INF, 5.0), 5.0);
        assert_eq!(pair.primal.ladd(3.0, 4.0), 7.0);
    }

    #[test]
    fn complete_pair_rejects_a_broken_addition() {
        let err = complete_pair(SemifieldSpec {
            name: "bogus".into(),
            carrier: Carrier::NON_NEGATIVE,
            bottom: 0.0,
            unit: 1.0,
            idempotent: false,
            add: Arc::new(|a, b| a + 2.0 * b),
            mul: Arc::new(|a, b| a * b),
            inv: Arc::new(|a| 1.0 / a),
            probes: vec![],
        })
        .unwrap_err();
        match err {
            // a + 2b breaks bottom neutrality before commutativity
            SpecError::ProbeFailed { law, .. } => assert!(law.contains('+'), "{law}"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn classify_is_field_relative() {
        let nnr = Semifield::builtin(Builtin::NonNegativeReals);
        let mt = Semifield::builtin(Builtin::MinTimes);
        assert_eq!(nnr.classify(x(0.0)), ValueClass::Bottom);
        assert_eq!(mt.classify(x(0.0)), ValueClass::Top);
        assert_eq!(nnr.classify(x(2.0)), ValueClass::Interior);
    }
}
