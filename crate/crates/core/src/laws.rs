//! Checkable algebraic laws of a completed semifield.
//!
//! Every function here takes concrete sample operands and returns the
//! list of violations found (empty means the samples passed). Callers —
//! the test suites and the command-line verifier — own the sampling
//! strategy, which keeps this module deterministic and free of any RNG.
//!
//! Comparisons are exact whenever either side is a corner value and
//! relative (with a unit floor) otherwise.

use crate::numeric::close;
use crate::semifield::Semifield;
use crate::value::ValueClass;

/// One failed law instance, with the witness operands and both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct LawViolation {
    pub law: &'static str,
    pub operands: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

fn record(
    out: &mut Vec<LawViolation>,
    law: &'static str,
    operands: &[f64],
    lhs: f64,
    rhs: f64,
    tol: f64,
) {
    if !close(lhs, rhs, tol) {
        out.push(LawViolation {
            law,
            operands: operands.to_vec(),
            lhs,
            rhs,
        });
    }
}

/// All 27 triples over the distinguished elements `{⊥, e, ⊤}`.
pub fn corner_triples(f: &Semifield) -> Vec<[f64; 3]> {
    let pts = [f.bottom().get(), f.unit().get(), f.top().get()];
    let mut out = Vec::with_capacity(27);
    for &a in &pts {
        for &b in &pts {
            for &c in &pts {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Semifield axioms on each triple: commutativity and associativity of
/// both additions and both multiplications, neutrality of `⊥`/`⊤` and of
/// the unit, absorption, interior inverses, and distributivity of each
/// multiplication over its own addition.
pub fn axiom_violations(f: &Semifield, triples: &[[f64; 3]], tol: f64) -> Vec<LawViolation> {
    let mut out = Vec::new();
    let bot = f.bottom().get();
    let top = f.top().get();
    let e = f.unit().get();
    for &[a, b, c] in triples {
        record(&mut out, "lower + commutative", &[a, b], f.ladd(a, b), f.ladd(b, a), tol);
        record(&mut out, "upper + commutative", &[a, b], f.uadd(a, b), f.uadd(b, a), tol);
        record(&mut out, "lower * commutative", &[a, b], f.lmul(a, b), f.lmul(b, a), tol);
        record(&mut out, "upper * commutative", &[a, b], f.umul(a, b), f.umul(b, a), tol);

        record(
            &mut out,
            "lower + associative",
            &[a, b, c],
            f.ladd(f.ladd(a, b), c),
            f.ladd(a, f.ladd(b, c)),
            tol,
        );
        record(
            &mut out,
            "upper + associative",
            &[a, b, c],
            f.uadd(f.uadd(a, b), c),
            f.uadd(a, f.uadd(b, c)),
            tol,
        );
        record(
            &mut out,
            "lower * associative",
            &[a, b, c],
            f.lmul(f.lmul(a, b), c),
            f.lmul(a, f.lmul(b, c)),
            tol,
        );
        record(
            &mut out,
            "upper * associative",
            &[a, b, c],
            f.umul(f.umul(a, b), c),
            f.umul(a, f.umul(b, c)),
            tol,
        );

        record(&mut out, "bottom neutral for lower +", &[a], f.ladd(bot, a), a, tol);
        record(&mut out, "top neutral for upper +", &[a], f.uadd(top, a), a, tol);
        record(&mut out, "unit law (lower)", &[a], f.lmul(e, a), a, tol);
        record(&mut out, "unit law (upper)", &[a], f.umul(e, a), a, tol);
        record(&mut out, "bottom absorbs lower *", &[a], f.lmul(bot, a), bot, tol);
        record(&mut out, "top absorbs upper *", &[a], f.umul(top, a), top, tol);
        if f.classify(crate::value::ExtendedReal::unchecked(a)) == ValueClass::Interior {
            record(&mut out, "multiplicative inverse", &[a], f.lmul(a, f.inv_f(a)), e, tol);
            record(&mut out, "inverse is involutive", &[a], f.inv_f(f.inv_f(a)), a, tol);
        }

        record(
            &mut out,
            "lower distributivity",
            &[a, b, c],
            f.lmul(a, f.ladd(b, c)),
            f.ladd(f.lmul(a, b), f.lmul(a, c)),
            tol,
        );
        record(
            &mut out,
            "upper distributivity",
            &[a, b, c],
            f.umul(a, f.uadd(b, c)),
            f.uadd(f.umul(a, b), f.umul(a, c)),
            tol,
        );

        if f.is_idempotent() {
            record(&mut out, "idempotent addition", &[a], f.ladd(a, a), a, tol);
        }
    }
    out
}

/// The laws tying the pair together: both De Morgan forms, both modular
/// laws and the self-dual inequality
/// `u ⊗̲ (v ⊗̄ w) ≼ (u ⊗̲ v) ⊗̄ w`.
pub fn dual_law_violations(f: &Semifield, triples: &[[f64; 3]], tol: f64) -> Vec<LawViolation> {
    let mut out = Vec::new();
    for &[u, v, w] in triples {
        record(
            &mut out,
            "De Morgan: lower + via upper",
            &[u, v],
            f.ladd(u, v),
            f.inv_f(f.uadd(f.inv_f(u), f.inv_f(v))),
            tol,
        );
        record(
            &mut out,
            "De Morgan: upper + via lower",
            &[u, v],
            f.uadd(u, v),
            f.inv_f(f.ladd(f.inv_f(u), f.inv_f(v))),
            tol,
        );
        record(
            &mut out,
            "De Morgan: lower * via upper",
            &[u, v],
            f.lmul(u, v),
            f.inv_f(f.umul(f.inv_f(u), f.inv_f(v))),
            tol,
        );
        record(
            &mut out,
            "De Morgan: upper * via lower",
            &[u, v],
            f.umul(u, v),
            f.inv_f(f.lmul(f.inv_f(u), f.inv_f(v))),
            tol,
        );

        record(
            &mut out,
            "modular law (lower)",
            &[u, v],
            f.lmul(f.ladd(u, v), f.uadd(u, v)),
            f.lmul(u, v),
            tol,
        );
        record(
            &mut out,
            "modular law (upper)",
            &[u, v],
            f.umul(f.ladd(u, v), f.uadd(u, v)),
            f.umul(u, v),
            tol,
        );

        let lhs = f.lmul(u, f.umul(v, w));
        let rhs = f.umul(f.lmul(u, v), w);
        if !f.nat_le(lhs, rhs) && !close(lhs, rhs, tol) {
            out.push(LawViolation {
                law: "self-dual inequality",
                operands: vec![u, v, w],
                lhs,
                rhs,
            });
        }
    }
    out
}

/// Zero-sum-freeness: `a ⊕̲ b = ⊥` forces both summands to be `⊥`.
pub fn zero_sum_free_violations(f: &Semifield, pairs: &[[f64; 2]]) -> Vec<LawViolation> {
    let bot = f.bottom().get();
    let mut out = Vec::new();
    for &[a, b] in pairs {
        let s = f.ladd(a, b);
        if s == bot && !(a == bot && b == bot) {
            out.push(LawViolation {
                law: "zero-sum-freeness",
                operands: vec![a, b],
                lhs: s,
                rhs: bot,
            });
        }
    }
    out
}

/// Spot check that the canonical order (`a ≼ b` iff some `c` solves
/// `a ⊕̲ c = b`) coincides with the field's declared natural order on
/// interior samples.
///
/// For each pair this verifies additive monotonicity (`a ⊕̲ c` never
/// drops below `a`) and exhibits a witness `c` for the natural-ordered
/// pair, by direct choice in idempotent fields and by bisection
/// otherwise. Witness recovery is numeric, so its tolerance is looser
/// than algebraic checks.
pub fn canonical_order_violations(f: &Semifield, pairs: &[[f64; 2]]) -> Vec<LawViolation> {
    let mut out = Vec::new();
    let probes = f.probe_points();
    for &[a, b] in pairs {
        let (lo, hi) = if f.nat_le(a, b) { (a, b) } else { (b, a) };
        for &c in &probes {
            let s = f.ladd(lo, c);
            if !f.nat_le(lo, s) {
                out.push(LawViolation {
                    law: "additive monotonicity",
                    operands: vec![lo, c],
                    lhs: s,
                    rhs: lo,
                });
            }
        }
        let reached = if f.is_idempotent() {
            f.ladd(lo, hi)
        } else {
            bisect_witness(f, lo, hi)
        };
        if !close(reached, hi, 1e-6) {
            out.push(LawViolation {
                law: "canonical order witness",
                operands: vec![lo, hi],
                lhs: reached,
                rhs: hi,
            });
        }
    }
    out
}

/// Finds `c` with `lo ⊕̲ c ≈ hi` by bisection along the natural order.
fn bisect_witness(f: &Semifield, lo: f64, hi: f64) -> f64 {
    let clamp = |v: f64| {
        if v == f64::INFINITY {
            1e9
        } else if v == f64::NEG_INFINITY {
            -1e9
        } else {
            v
        }
    };
    // numeric bracket from bottom to top, oriented by the alignment
    let mut lo_c = clamp(f.bottom().get());
    let mut hi_c = clamp(f.top().get());
    for _ in 0..200 {
        let mid = 0.5 * (lo_c + hi_c);
        if f.nat_le(f.ladd(lo, mid), hi) {
            lo_c = mid;
        } else {
            hi_c = mid;
        }
    }
    f.ladd(lo, 0.5 * (lo_c + hi_c))
}
