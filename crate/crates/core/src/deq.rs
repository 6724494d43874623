//! Dequantization: Litvinov–Maslov addition on ℝ, the triangle family on
//! ℝ₊ and the complex family `a +_h b = S_h⁻¹(S_h(a) + S_h(b))`, with their
//! `h → 0` limits.
//!
//! Everything is computed in the log domain with the larger summand factored
//! out, so `h = 10⁻⁴` does not overflow.

use std::f64::consts::LN_2;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::axioms::rng;
use crate::ctrop::ct_add;
use crate::error::{Error, Result};
use crate::realhf::{tri_add, ultra_add};
use crate::sets::complex::angle_in;
use crate::sets::{fmt_num, ComplexElem, RSet};
use crate::tol::{wrap_signed, Tolerance};

/// The limit check schedule.
pub const SCHEDULE: [f64; 4] = [1.0, 0.1, 0.01, 0.001];

fn check_h(h: f64) -> Result<()> {
    if h >= 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("dequantization parameter {h} must be a nonnegative real")))
    }
}

fn check_pos(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("dequantization parameter {h} must be positive")))
    }
}

/// `h ln(e^{a/h} + e^{b/h})`, and `max(a, b)` at `h = 0`.
pub fn lm_add(a: f64, b: f64, h: f64) -> Result<f64> {
    check_h(h)?;
    let m = a.max(b);
    if h == 0.0 || m == f64::NEG_INFINITY {
        return Ok(m);
    }
    let d = (a - b).abs();
    Ok(m + h * (-d / h).exp().ln_1p())
}

/// `D_h(x) = h ln x`, mapping `(ℝ_{>0}, +, ·)` onto `(ℝ, +_h, +)`.
pub fn d_h(x: f64, h: f64) -> Result<f64> {
    check_pos(h)?;
    if x <= 0.0 {
        return Err(Error::Domain(format!("{x} is not positive")));
    }
    Ok(h * x.ln())
}

/// `[ |a^{1/h} − b^{1/h}|^h, (a^{1/h} + b^{1/h})^h ]`, and the
/// ultratriangle sum at `h = 0`.
pub fn tri_add_h(a: f64, b: f64, h: f64, tol: &Tolerance) -> Result<RSet> {
    check_h(h)?;
    if h == 0.0 {
        return ultra_add(a, b, tol);
    }
    let r = tri_add(a, b)?;
    if h == 1.0 {
        return Ok(r);
    }
    let (big, small) = (a.max(b), a.min(b));
    if big == 0.0 {
        return Ok(RSet::point(0.0));
    }
    let q = ((small / big).ln() / h).exp();
    let lo = if q >= 1.0 { 0.0 } else { big * (h * (-q).ln_1p()).exp() };
    let hi = big * (h * q.ln_1p()).exp();
    Ok(RSet::interval(lo, hi))
}

/// `|z|^{1/h} z/|z|`.
pub fn s_h(z: &ComplexElem, h: f64) -> Result<ComplexElem> {
    check_pos(h)?;
    rescale(z, 1.0 / h)
}

/// `|z|^h z/|z|`.
pub fn s_h_inv(z: &ComplexElem, h: f64) -> Result<ComplexElem> {
    check_pos(h)?;
    rescale(z, h)
}

fn rescale(z: &ComplexElem, power: f64) -> Result<ComplexElem> {
    if z.is_zero() {
        return Ok(ComplexElem::ZERO);
    }
    let m = (power * z.modulus().ln()).exp();
    ComplexElem::new(m, z.argument())
        .map_err(|_| Error::Domain(format!("|{z}|^{} is not representable", fmt_num(power))))
}

/// `S_h⁻¹(S_h(a) + S_h(b))`.
pub fn c_add_h(a: &ComplexElem, b: &ComplexElem, h: f64) -> Result<ComplexElem> {
    check_pos(h)?;
    if a.is_zero() {
        return Ok(*b);
    }
    if b.is_zero() {
        return Ok(*a);
    }
    let (big, small) = if a.modulus() >= b.modulus() { (a, b) } else { (b, a) };
    let q = ((small.modulus() / big.modulus()).ln() / h).exp();
    let w = Complex64::from_polar(1.0, big.argument()) + Complex64::from_polar(q, small.argument());
    let n = w.norm();
    // w is scaled to a unit leading term; anything below roundoff is 0.
    if n <= 8.0 * f64::EPSILON {
        return Ok(ComplexElem::ZERO);
    }
    let m = big.modulus() * (h * n.ln()).exp();
    ComplexElem::new(m, w.arg())
}

/// `a −_h b = a +_h (−b)`.
pub fn c_sub_h(a: &ComplexElem, b: &ComplexElem, h: f64) -> Result<ComplexElem> {
    c_add_h(a, &b.neg(), h)
}

/// The pointwise limit of `a +_h b`: the dominant summand, `|a|(a+b)/|a+b|`
/// for equal moduli, and 0 for opposite summands. Not associative.
pub fn c_add_0(a: &ComplexElem, b: &ComplexElem, tol: &Tolerance) -> ComplexElem {
    if a.is_zero() {
        return *b;
    }
    if b.is_zero() {
        return *a;
    }
    if !tol.close(a.modulus(), b.modulus()) {
        return if a.modulus() > b.modulus() { *a } else { *b };
    }
    let s = a.to_c64() + b.to_c64();
    if s.norm() <= tol.eps * a.modulus().max(1.0) {
        return ComplexElem::ZERO;
    }
    ComplexElem::polar(a.modulus(), s.arg())
}

/// Coefficients `(λ, μ)` with `c = λa + μb` for non-parallel `a`, `b`.
fn decompose(a: Complex64, b: Complex64, c: Complex64) -> (f64, f64) {
    let det = a.re * b.im - a.im * b.re;
    let l = (c.re * b.im - c.im * b.re) / det;
    let m = (a.re * c.im - a.im * c.re) / det;
    (l, m)
}

/// A pair `(a_h, b_h)` with `a_h +_h b_h = c` converging to `(a, b)` as
/// `h → 0`, for `c` in the tropical sum of `a` and `b`.
///
/// For `b = −a` and `0 < |c| < |a|` the pair is exact in real arithmetic, but
/// evaluating `a_h +_h b_h` in f64 cancels terms of relative size
/// `(|c|/|a|)^{1/h}`, so `c` is only recovered while that stays well above
/// machine precision.
pub fn graph_witness(
    a: &ComplexElem,
    b: &ComplexElem,
    c: &ComplexElem,
    h: f64,
    tol: &Tolerance,
) -> Result<(ComplexElem, ComplexElem)> {
    check_pos(h)?;
    if !ct_add(a, b, tol).member(c, tol) {
        return Err(Error::Domain(format!("{c} is not in {a} + {b}")));
    }
    let sh = h.sqrt();
    if a.is_zero() || b.is_zero() || !tol.close(a.modulus(), b.modulus()) {
        // Dominant case: c is the larger summand.
        return if a.modulus() >= b.modulus() { Ok((c_sub_h(c, b, h)?, *b)) } else { Ok((*a, c_sub_h(c, a, h)?)) };
    }
    let r = a.modulus().max(b.modulus());
    let antipodal = (a.to_c64() + b.to_c64()).norm() <= tol.eps * r.max(1.0);
    if antipodal {
        if tol.lt(c.modulus(), r) {
            return Ok((c_add_h(a, c, h)?, *b));
        }
        // (1+δ)^{1/h} ≈ 1/h: large enough for a_h → a, small enough that
        // the cancellation in a_h +_h b_h stays within f64.
        let delta = h * (1.0 / h).ln().max(1.0);
        let bh = ComplexElem::polar(b.modulus() * (1.0 + delta), b.argument());
        return Ok((c_sub_h(c, &bh, h)?, bh));
    }
    let (ua, ub, uc) = (a.phase().to_c64(), b.phase().to_c64(), c.phase().to_c64());
    let parallel = (ua - ub).norm() <= tol.eps;
    let (l, m) = if parallel { (1.0, 0.0) } else { decompose(ua, ub, uc) };
    if l > tol.eps && m > tol.eps {
        let ah = ComplexElem::polar(a.modulus() * (h * l.ln()).exp(), a.argument());
        let bh = ComplexElem::polar(b.modulus() * (h * m.ln()).exp(), b.argument());
        return Ok((ah, bh));
    }
    // Endpoint of the arc: shrink the other summand so c dominates.
    if m <= tol.eps {
        let bh = ComplexElem::polar(b.modulus() * (1.0 - sh).max(0.0), b.argument());
        Ok((c_sub_h(c, &bh, h)?, bh))
    } else {
        let ah = ComplexElem::polar(a.modulus() * (1.0 - sh).max(0.0), a.argument());
        Ok((ah, c_sub_h(c, &ah, h)?))
    }
}

/// Whether `c`'s argument lies on the shorter closed arc from `a` to `b`.
pub fn between(c: &ComplexElem, a: &ComplexElem, b: &ComplexElem, eps: f64) -> bool {
    let d = wrap_signed(b.argument() - a.argument());
    let (start, sweep) = if d >= 0.0 { (a.argument(), d) } else { (b.argument(), -d) };
    angle_in(c.argument(), start, sweep, eps)
}

/// One property of the dequantization diagram.
#[derive(Debug, Clone, Serialize)]
pub struct DiagramCheck {
    pub property: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub samples: usize,
    pub checks: Vec<DiagramCheck>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn check(&self, property: &str) -> Option<&DiagramCheck> {
        self.checks.iter().find(|c| c.property == property)
    }

    pub fn to_text(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "axiom={} verdict={} witness={} checked={}\n",
                    c.property,
                    if c.failures == 0 { "pass" } else { "fail" },
                    c.witness.as_deref().unwrap_or("-"),
                    c.checked
                )
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

const DIAGRAM_PROPERTIES: [&str; 6] = [
    "modulus-containment",
    "log-upper-endpoint",
    "classical-row",
    "limit-row",
    "growth-bound",
    "angular-interval",
];

fn sample_pair(rng: &mut crate::structure::Rand) -> (ComplexElem, ComplexElem) {
    let m = |rng: &mut crate::structure::Rand| [0.5, 1.0, 2.0, 3.0][rng.gen_range(0..4)] * rng.gen_range(0.5..1.5);
    let a = ComplexElem::polar(m(rng), rng.gen_range(0.0..std::f64::consts::TAU));
    let b = match rng.gen_range(0..4) {
        0 => ComplexElem::polar(a.modulus(), rng.gen_range(0.0..std::f64::consts::TAU)),
        1 => a.neg(),
        2 => ComplexElem::ZERO,
        _ => ComplexElem::polar(m(rng), rng.gen_range(0.0..std::f64::consts::TAU)),
    };
    (a, b)
}

/// Check the vertical arrows of the diagram on sampled pairs and `h`:
/// `|a +_h b| ∈ tri_h(|a|, |b|)`, the log of the upper endpoint is the
/// Litvinov–Maslov sum, the `h = 1` row is the triangle inequality, the
/// `h → 0` row lands in the ultratriangle sum, plus the growth bound
/// `|a +_h b| ≤ 2^h max` and the angular interval for equal moduli.
pub fn check_diagram(budget: usize, seed: u64) -> DiagramReport {
    let tol = Tolerance::new(1e-9);
    let mut r = rng(seed);
    let mut checks: Vec<DiagramCheck> = DIAGRAM_PROPERTIES
        .iter()
        .map(|&p| DiagramCheck { property: p, checked: 0, failures: 0, witness: None })
        .collect();
    let mut record = |i: usize, ok: bool, w: &dyn Fn() -> String| {
        checks[i].checked += 1;
        if !ok {
            checks[i].failures += 1;
            if checks[i].witness.is_none() {
                checks[i].witness = Some(w());
            }
        }
    };
    for k in 0..budget {
        let (a, b) = sample_pair(&mut r);
        let h = if k % 2 == 0 { SCHEDULE[(k / 2) % SCHEDULE.len()] } else { 10f64.powf(r.gen_range(-3.0..0.0)) };
        let wit = || format!("({a},{b},h={})", fmt_num(h));
        let Ok(c) = c_add_h(&a, &b, h) else {
            record(0, false, &wit);
            continue;
        };
        let (x, y) = (a.modulus(), b.modulus());
        let tri = tri_add_h(x, y, h, &tol).expect("nonnegative moduli");
        let loose = Tolerance::new(1e-7);
        record(0, tri.member(c.modulus(), &loose), &wit);
        if x > 0.0 && y > 0.0 {
            let up = lm_add(x.ln(), y.ln(), h).expect("h > 0");
            record(1, loose.close(tri.max().ln(), up), &wit);
        }
        if h == 1.0 {
            let s = (a.to_c64() + b.to_c64()).norm();
            record(2, tri_add(x, y).expect("moduli").member(s, &loose), &wit);
        }
        let c0 = c_add_0(&a, &b, &tol);
        record(3, ultra_add(x, y, &tol).expect("moduli").member(c0.modulus(), &tol), &wit);
        record(4, c.modulus() <= (h * LN_2).exp() * x.max(y) * (1.0 + 1e-12), &wit);
        if x > 0.0 && tol.close(x, y) && !c.is_zero() && !crate::sets::complex::antipodal(a.argument(), b.argument(), 1e-6) {
            record(5, between(&c, &a, &b, 1e-9), &wit);
        }
    }
    DiagramReport { samples: budget, checks }
}

/// One row of a dequantization trace.
#[derive(Debug, Clone, Serialize)]
pub struct DeqRow {
    pub h: f64,
    pub a: String,
    pub b: String,
    pub result: String,
    pub reference: String,
    pub error: f64,
}

fn fmt_interval(s: &RSet) -> String {
    format!("[{},{}]", fmt_num(s.min()), fmt_num(s.max()))
}

/// Rows `(h, a, b, a +_h b, max(a,b), error)`.
pub fn trace_lm(a: f64, b: f64, hs: &[f64]) -> Result<Vec<DeqRow>> {
    hs.iter()
        .map(|&h| {
            let v = lm_add(a, b, h)?;
            let r = a.max(b);
            Ok(DeqRow { h, a: fmt_num(a), b: fmt_num(b), result: fmt_num(v), reference: fmt_num(r), error: (v - r).abs() })
        })
        .collect()
}

/// Rows with the triangle-family interval and its ultratriangle limit; the
/// error is the larger endpoint distance.
pub fn trace_tri(a: f64, b: f64, hs: &[f64], tol: &Tolerance) -> Result<Vec<DeqRow>> {
    let r = ultra_add(a, b, tol)?;
    hs.iter()
        .map(|&h| {
            let v = tri_add_h(a, b, h, tol)?;
            let error = (v.min() - r.min()).abs().max((v.max() - r.max()).abs());
            Ok(DeqRow {
                h,
                a: fmt_num(a),
                b: fmt_num(b),
                result: fmt_interval(&v),
                reference: fmt_interval(&r),
                error,
            })
        })
        .collect()
}

/// Rows with `a +_h b` and the pointwise limit `a +₀ b`.
pub fn trace_complex(a: &ComplexElem, b: &ComplexElem, hs: &[f64], tol: &Tolerance) -> Result<Vec<DeqRow>> {
    let r = c_add_0(a, b, tol);
    hs.iter()
        .map(|&h| {
            let v = c_add_h(a, b, h)?;
            Ok(DeqRow {
                h,
                a: a.to_string(),
                b: b.to_string(),
                result: v.to_string(),
                reference: r.to_string(),
                error: (v.to_c64() - r.to_c64()).norm(),
            })
        })
        .collect()
}
