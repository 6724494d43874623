//! Monomials `a·t^r` with complex coefficient and exponents from an ordered
//! abelian group, under "highest exponent wins" addition.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_complex::Complex64;
use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};
use crate::sets::complex::ComplexElem;
use crate::sets::{field_text, fmt_num, kv_fields, parse_num, split_union};
use crate::structure::{Carrier, Rand, Structure};
use crate::tol::Tolerance;

/// A linearly ordered abelian group of exponents.
pub trait Exponent: Copy + Debug + Send + Sync + 'static {
    /// Suffix used in structure names: `mono`, `mono-q`, `mono-z`.
    const SUFFIX: &'static str;

    fn zero() -> Self;
    fn plus(self, other: Self) -> Self;
    fn minus(self) -> Self;
    fn compare(self, other: Self, tol: &Tolerance) -> Ordering;
    fn to_f64(self) -> f64;
    fn parse(s: &str) -> Result<Self>;
    fn text(self) -> String;
    fn sample(rng: &mut Rand) -> Self;
    /// Some exponent strictly below `self`.
    fn below(self, rng: &mut Rand) -> Self;
}

impl Exponent for f64 {
    const SUFFIX: &'static str = "";

    fn zero() -> Self {
        0.0
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn minus(self) -> Self {
        -self
    }
    fn compare(self, other: Self, tol: &Tolerance) -> Ordering {
        if tol.close(self, other) {
            Ordering::Equal
        } else {
            self.total_cmp(&other)
        }
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn parse(s: &str) -> Result<Self> {
        let x = parse_num(s)?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::Parse(format!("exponent `{s}` must be finite")))
        }
    }
    fn text(self) -> String {
        fmt_num(self)
    }
    fn sample(rng: &mut Rand) -> Self {
        const POOL: [f64; 8] = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0];
        if rng.gen_bool(0.8) {
            POOL[rng.gen_range(0..POOL.len())]
        } else {
            rng.gen_range(-2.0..2.0)
        }
    }
    fn below(self, rng: &mut Rand) -> Self {
        self - [0.001, 0.5, 1.0, 3.0][rng.gen_range(0..4)]
    }
}

impl Exponent for Ratio<i64> {
    const SUFFIX: &'static str = "-q";

    fn zero() -> Self {
        Ratio::from_integer(0)
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn minus(self) -> Self {
        -self
    }
    fn compare(self, other: Self, _tol: &Tolerance) -> Ordering {
        self.cmp(&other)
    }
    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
    fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad rational exponent `{s}`"));
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (n, d) = t.split_once('/').unwrap_or((t, "1"));
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Ratio::new(n, d))
    }
    fn text(self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
    fn sample(rng: &mut Rand) -> Self {
        Ratio::new(rng.gen_range(-6..=6), [1, 2, 3][rng.gen_range(0..3)])
    }
    fn below(self, rng: &mut Rand) -> Self {
        self - Ratio::new(1, [1, 2, 7][rng.gen_range(0..3)])
    }
}

impl Exponent for i64 {
    const SUFFIX: &'static str = "-z";

    fn zero() -> Self {
        0
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn minus(self) -> Self {
        -self
    }
    fn compare(self, other: Self, _tol: &Tolerance) -> Ordering {
        self.cmp(&other)
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
    fn parse(s: &str) -> Result<Self> {
        s.trim().parse().map_err(|_| Error::Parse(format!("bad integer exponent `{s}`")))
    }
    fn text(self) -> String {
        self.to_string()
    }
    fn sample(rng: &mut Rand) -> Self {
        rng.gen_range(-2..=3)
    }
    fn below(self, rng: &mut Rand) -> Self {
        self - rng.gen_range(1..=3)
    }
}

/// `0`, or `coeff·t^exp` with `coeff ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MonomialElem<X = f64> {
    Zero,
    Term { coeff: Complex64, exp: X },
}

impl<X: Exponent> MonomialElem<X> {
    /// A zero coefficient gives [`MonomialElem::Zero`].
    pub fn new(coeff: Complex64, exp: X) -> Self {
        if coeff == Complex64::new(0.0, 0.0) {
            MonomialElem::Zero
        } else {
            MonomialElem::Term { coeff, exp }
        }
    }

    pub fn real(c: f64, exp: X) -> Self {
        Self::new(Complex64::new(c, 0.0), exp)
    }

    pub fn exponent(&self) -> Option<X> {
        match *self {
            MonomialElem::Zero => None,
            MonomialElem::Term { exp, .. } => Some(exp),
        }
    }
}

/// Finitely many points, plus optionally the cone `{c·t^u | u < r} ∪ {0}`
/// (`u > r` for the reversed order). Normalized: no point lies in the cone.
#[derive(Debug, Clone, PartialEq)]
pub struct MSet<X = f64> {
    cone: Option<X>,
    points: Vec<MonomialElem<X>>,
}

impl<X: Exponent> MSet<X> {
    pub fn point(a: MonomialElem<X>) -> Self {
        MSet { cone: None, points: vec![a] }
    }

    pub fn cone(r: X) -> Self {
        MSet { cone: Some(r), points: Vec::new() }
    }

    pub fn cone_bound(&self) -> Option<X> {
        self.cone
    }

    pub fn points(&self) -> &[MonomialElem<X>] {
        &self.points
    }
}

/// The monomial hyperfield. With `reversed`, every inequality in the
/// addition is flipped: the lowest exponent wins.
#[derive(Debug, Clone, Copy)]
pub struct Monomial<X = f64> {
    pub tol: Tolerance,
    pub reversed: bool,
    _exp: std::marker::PhantomData<X>,
}

impl<X: Exponent> Default for Monomial<X> {
    fn default() -> Self {
        Self::new(Tolerance::default())
    }
}

impl<X: Exponent> Monomial<X> {
    pub fn new(tol: Tolerance) -> Self {
        Monomial { tol, reversed: false, _exp: std::marker::PhantomData }
    }

    pub fn reversed(tol: Tolerance) -> Self {
        Monomial { tol, reversed: true, _exp: std::marker::PhantomData }
    }

    fn ord(&self, a: X, b: X) -> Ordering {
        let o = a.compare(b, &self.tol);
        if self.reversed {
            o.reverse()
        } else {
            o
        }
    }

    fn coeff_zero(&self, z: Complex64, scale: f64) -> bool {
        z.norm() <= self.tol.eps * scale.max(1.0)
    }

    fn coeff_close(&self, a: Complex64, b: Complex64) -> bool {
        self.coeff_zero(a - b, a.norm().max(b.norm()))
    }

    fn in_cone(&self, x: &MonomialElem<X>, r: X) -> bool {
        match x {
            MonomialElem::Zero => true,
            MonomialElem::Term { exp, .. } => self.ord(*exp, r) == Ordering::Less,
        }
    }

    fn normalize(&self, cone: Option<X>, points: Vec<MonomialElem<X>>) -> MSet<X> {
        let mut out: Vec<MonomialElem<X>> = Vec::new();
        for p in points {
            if cone.is_some_and(|r| self.in_cone(&p, r)) || out.iter().any(|q| self.elem_eq(q, &p)) {
                continue;
            }
            out.push(p);
        }
        MSet { cone, points: out }
    }

    fn max_cone(&self, a: Option<X>, b: Option<X>) -> Option<X> {
        match (a, b) {
            (Some(r), Some(s)) => Some(if self.ord(r, s) == Ordering::Less { s } else { r }),
            (r, None) | (None, r) => r,
        }
    }

    /// `a ∔ b`: the term of higher exponent, the coefficient sum at equal
    /// exponents, and the cone below `r` when the coefficients cancel.
    pub fn mono_add(&self, a: &MonomialElem<X>, b: &MonomialElem<X>) -> MSet<X> {
        match (*a, *b) {
            (MonomialElem::Zero, _) => MSet::point(*b),
            (_, MonomialElem::Zero) => MSet::point(*a),
            (MonomialElem::Term { coeff: ca, exp: r }, MonomialElem::Term { coeff: cb, exp: s }) => {
                match self.ord(r, s) {
                    Ordering::Greater => MSet::point(*a),
                    Ordering::Less => MSet::point(*b),
                    Ordering::Equal => {
                        let c = ca + cb;
                        if self.coeff_zero(c, ca.norm().max(cb.norm())) {
                            MSet::cone(r)
                        } else {
                            MSet::point(MonomialElem::Term { coeff: c, exp: r })
                        }
                    }
                }
            }
        }
    }

    /// The cone below `r` plus a point: the point if its exponent is at
    /// least `r`, the cone otherwise.
    fn cone_plus(&self, r: X, b: &MonomialElem<X>) -> MSet<X> {
        match b.exponent() {
            Some(w) if self.ord(w, r) != Ordering::Less => MSet::point(*b),
            _ => MSet::cone(r),
        }
    }

    pub fn mono_add_sets(&self, s: &MSet<X>, t: &MSet<X>) -> MSet<X> {
        let mut acc = MSet { cone: self.max_cone(s.cone, t.cone), points: Vec::new() };
        if acc.cone.is_some() && (s.cone.is_none() || t.cone.is_none()) {
            // A single cone contributes only through its sums with points.
            acc.cone = None;
        }
        for a in &s.points {
            for b in &t.points {
                acc = self.union(&acc, &self.mono_add(a, b));
            }
            if let Some(r) = t.cone {
                acc = self.union(&acc, &self.cone_plus(r, a));
            }
        }
        if let Some(r) = s.cone {
            for b in &t.points {
                acc = self.union(&acc, &self.cone_plus(r, b));
            }
        }
        acc
    }

    pub fn mono_mul(&self, a: &MonomialElem<X>, b: &MonomialElem<X>) -> MonomialElem<X> {
        match (*a, *b) {
            (MonomialElem::Term { coeff: ca, exp: r }, MonomialElem::Term { coeff: cb, exp: s }) => {
                MonomialElem::new(ca * cb, r.plus(s))
            }
            _ => MonomialElem::Zero,
        }
    }

    fn sample_coeff(rng: &mut Rand) -> Complex64 {
        const POOL: [(f64, f64); 9] = [
            (1.0, 0.0),
            (-1.0, 0.0),
            (2.0, 0.0),
            (-2.0, 0.0),
            (0.0, 1.0),
            (0.0, -1.0),
            (1.0, 1.0),
            (-1.0, -1.0),
            (3.0, 0.0),
        ];
        if rng.gen_bool(0.85) {
            let (x, y) = POOL[rng.gen_range(0..POOL.len())];
            Complex64::new(x, y)
        } else {
            Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
        }
    }

    fn sample_term(rng: &mut Rand, exp: X) -> MonomialElem<X> {
        loop {
            let c = Self::sample_coeff(rng);
            if c.norm() > 0.0 {
                return MonomialElem::Term { coeff: c, exp };
            }
        }
    }

    fn cone_text(&self) -> &'static str {
        if self.reversed {
            "above"
        } else {
            "below"
        }
    }
}

fn coeff_text(c: Complex64) -> String {
    if c.im == 0.0 {
        fmt_num(c.re)
    } else if c.re == 0.0 {
        format!("{}i", fmt_num(c.im))
    } else {
        let sign = if c.im < 0.0 { "-" } else { "+" };
        format!("({}{}{}i)", fmt_num(c.re), sign, fmt_num(c.im.abs()))
    }
}

impl<X: Exponent> Structure for Monomial<X> {
    type Elem = MonomialElem<X>;
    type Set = MSet<X>;

    fn name(&self) -> String {
        let rev = if self.reversed { "-rev" } else { "" };
        format!("mono{}{rev}", X::SUFFIX)
    }
    fn tolerance(&self) -> Tolerance {
        self.tol
    }
    fn zero(&self) -> MonomialElem<X> {
        MonomialElem::Zero
    }
    fn one(&self) -> MonomialElem<X> {
        MonomialElem::real(1.0, X::zero())
    }
    fn neg(&self, a: &MonomialElem<X>) -> MonomialElem<X> {
        match *a {
            MonomialElem::Zero => MonomialElem::Zero,
            MonomialElem::Term { coeff, exp } => MonomialElem::Term { coeff: -coeff, exp },
        }
    }
    fn mul(&self, a: &MonomialElem<X>, b: &MonomialElem<X>) -> MonomialElem<X> {
        self.mono_mul(a, b)
    }
    fn inv(&self, a: &MonomialElem<X>) -> Option<MonomialElem<X>> {
        match *a {
            MonomialElem::Zero => None,
            MonomialElem::Term { coeff, exp } => Some(MonomialElem::Term { coeff: coeff.inv(), exp: exp.minus() }),
        }
    }
    fn add(&self, a: &MonomialElem<X>, b: &MonomialElem<X>) -> MSet<X> {
        self.mono_add(a, b)
    }
    fn add_sets(&self, s: &MSet<X>, t: &MSet<X>) -> Result<MSet<X>> {
        Ok(self.mono_add_sets(s, t))
    }
    fn singleton(&self, a: &MonomialElem<X>) -> MSet<X> {
        MSet::point(*a)
    }
    fn elem_eq(&self, a: &MonomialElem<X>, b: &MonomialElem<X>) -> bool {
        match (a, b) {
            (MonomialElem::Zero, MonomialElem::Zero) => true,
            (MonomialElem::Term { coeff: ca, exp: r }, MonomialElem::Term { coeff: cb, exp: s }) => {
                r.compare(*s, &self.tol) == Ordering::Equal && self.coeff_close(*ca, *cb)
            }
            _ => false,
        }
    }
    fn member(&self, x: &MonomialElem<X>, s: &MSet<X>) -> bool {
        s.cone.is_some_and(|r| self.in_cone(x, r)) || s.points.iter().any(|p| self.elem_eq(p, x))
    }
    fn subset(&self, s: &MSet<X>, t: &MSet<X>) -> bool {
        let cone_ok = match (s.cone, t.cone) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(r), Some(u)) => self.ord(r, u) != Ordering::Greater,
        };
        cone_ok && s.points.iter().all(|p| self.member(p, t))
    }
    fn union(&self, s: &MSet<X>, t: &MSet<X>) -> MSet<X> {
        let points = s.points.iter().chain(&t.points).copied().collect();
        self.normalize(self.max_cone(s.cone, t.cone), points)
    }
    fn scale_left(&self, a: &MonomialElem<X>, s: &MSet<X>) -> MSet<X> {
        let MonomialElem::Term { exp, .. } = *a else {
            return MSet::point(MonomialElem::Zero);
        };
        let points = s.points.iter().map(|p| self.mono_mul(a, p)).collect();
        self.normalize(s.cone.map(|r| r.plus(exp)), points)
    }
    fn carrier(&self) -> Carrier<MonomialElem<X>> {
        Carrier::Sampled
    }
    fn sample(&self, rng: &mut Rand) -> MonomialElem<X> {
        let e = X::sample(rng);
        Self::sample_term(rng, e)
    }
    fn related(&self, x: &MonomialElem<X>, rng: &mut Rand) -> MonomialElem<X> {
        let MonomialElem::Term { coeff, exp } = *x else {
            return self.sample(rng);
        };
        match rng.gen_range(0..5) {
            0 => MonomialElem::Term { coeff: -coeff, exp },
            1 => Self::sample_term(rng, exp),
            2 => {
                let e = exp.below(rng);
                Self::sample_term(rng, e)
            }
            3 => {
                let e = exp.below(rng).minus().plus(exp).plus(exp);
                Self::sample_term(rng, e)
            }
            _ => MonomialElem::Term { coeff: coeff * Complex64::new(0.0, 1.0), exp },
        }
    }
    fn sample_members(&self, s: &MSet<X>, rng: &mut Rand, extra: usize) -> Vec<MonomialElem<X>> {
        let mut out = s.points.clone();
        if let Some(r) = s.cone {
            out.push(MonomialElem::Zero);
            for _ in 0..extra.max(2) {
                let below = r.below(rng);
                // `below` steps down; mirror it for the reversed order.
                let e = if self.reversed { r.plus(r).plus(below.minus()) } else { below };
                out.push(Self::sample_term(rng, e));
            }
        }
        out
    }
    fn branch(&self, a: &MonomialElem<X>, b: &MonomialElem<X>) -> &'static str {
        match (*a, *b) {
            (MonomialElem::Term { coeff: ca, exp: r }, MonomialElem::Term { coeff: cb, exp: s }) => {
                if self.ord(r, s) != Ordering::Equal {
                    "dominant"
                } else if self.coeff_zero(ca + cb, ca.norm().max(cb.norm())) {
                    "cancel"
                } else {
                    "sum"
                }
            }
            _ => "zero",
        }
    }
    fn branches(&self) -> &'static [&'static str] {
        &["zero", "dominant", "sum", "cancel"]
    }
    fn probes(&self) -> Vec<Vec<MonomialElem<X>>> {
        let t = |c: f64, e: i64| MonomialElem::real(c, exp_of::<X>(e));
        let it = |e: i64| MonomialElem::new(Complex64::new(0.0, 1.0), exp_of::<X>(e));
        vec![
            // one exponent above the other two
            vec![t(1.0, 2), t(3.0, 1), t(-3.0, 1), t(2.0, 0)],
            // two equal exponents without and with cancellation, third lower
            vec![t(1.0, 1), t(2.0, 1), t(5.0, 0), t(1.0, 0)],
            vec![t(2.0, 1), t(-2.0, 1), t(5.0, 0), t(-5.0, 0)],
            vec![t(5.0, 0), t(2.0, 1), t(-2.0, 1), it(0)],
            // all equal: no cancellation, one pair cancels, everything cancels
            vec![t(1.0, 0), it(0), t(2.0, 0), t(1.0, 0)],
            vec![t(1.0, 0), t(-1.0, 0), t(3.0, 0), t(-3.0, 0)],
            vec![t(1.0, 0), t(2.0, 0), t(-3.0, 0), it(0)],
        ]
    }
    fn fmt_elem(&self, a: &MonomialElem<X>) -> String {
        match *a {
            MonomialElem::Zero => "0".into(),
            MonomialElem::Term { coeff, exp } => format!("{}t^{}", coeff_text(coeff), exp.text()),
        }
    }
    fn fmt_set(&self, s: &MSet<X>) -> String {
        let mut parts: Vec<String> = s.points.iter().map(|p| self.fmt_elem(p)).collect();
        if let Some(r) = s.cone {
            parts.push(format!("{} r={}", self.cone_text(), r.text()));
        }
        parts.join(" ∪ ")
    }
    fn parse_elem(&self, s: &str) -> Result<MonomialElem<X>> {
        let t = s.trim();
        let Some(k) = t.rfind('t') else {
            return Ok(MonomialElem::new(t.parse::<ComplexElem>()?.to_c64(), X::zero()));
        };
        let (head, tail) = (&t[..k], &t[k + 1..]);
        let exp = match tail.trim().strip_prefix('^') {
            Some(e) => X::parse(e)?,
            None if tail.trim().is_empty() => X::parse("1")?,
            None => return Err(Error::Parse(format!("bad monomial `{s}`"))),
        };
        let head = head.trim().trim_end_matches(['*', '·']).trim();
        let coeff = match head {
            "" | "+" => Complex64::new(1.0, 0.0),
            "-" => Complex64::new(-1.0, 0.0),
            h => h.parse::<ComplexElem>()?.to_c64(),
        };
        if coeff.norm() == 0.0 {
            return Err(Error::Domain(format!("zero coefficient in `{s}`")));
        }
        Ok(MonomialElem::new(coeff, exp))
    }
    fn parse_set(&self, s: &str) -> Result<MSet<X>> {
        let pieces = split_union(s);
        if pieces.is_empty() {
            return Err(Error::Parse("empty set literal".into()));
        }
        let mut cone = None;
        let mut points = Vec::new();
        for piece in pieces {
            let tokens: Vec<&str> = piece.split_whitespace().collect();
            if tokens[0] == self.cone_text() {
                let r = X::parse(field_text(&kv_fields(&tokens[1..])?, "r")?)?;
                cone = self.max_cone(cone, Some(r));
            } else if matches!(tokens[0], "below" | "above" | "disk" | "arc" | "interval" | "smaller") {
                return Err(Error::CarrierMismatch(format!("`{piece}` is not a {} value set", self.name())));
            } else {
                points.push(self.parse_elem(piece)?);
            }
        }
        Ok(self.normalize(cone, points))
    }
}

fn exp_of<X: Exponent>(k: i64) -> X {
    X::parse(&k.to_string()).expect("integer exponent")
}

/// `a·t^r ↦ (a/|a|)·e^r`, forgetting the coefficient's modulus.
pub fn to_tropical_complex<X: Exponent>(m: &MonomialElem<X>) -> ComplexElem {
    match *m {
        MonomialElem::Zero => ComplexElem::ZERO,
        MonomialElem::Term { coeff, exp } => ComplexElem::polar(exp.to_f64().exp(), coeff.arg()),
    }
}

/// A preimage of a nonzero point of 𝕋ℂ under [`to_tropical_complex`].
pub fn tropical_preimage(z: &ComplexElem) -> MonomialElem<f64> {
    if z.is_zero() {
        MonomialElem::Zero
    } else {
        MonomialElem::new(Complex64::from_polar(1.0, z.argument()), z.modulus().ln())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_hom, check_multiring, rng, sample_elems, CheckOptions, ElemMap, Level};
    use crate::ctrop::TropicalComplex;
    use crate::structure::sum_list;
    use proptest::prelude::*;

    type M = Monomial<f64>;

    fn m() -> M {
        M::default()
    }

    fn p(s: &str) -> MonomialElem<f64> {
        m().parse_elem(s).unwrap()
    }

    #[test]
    fn addition_cases() {
        let x = m();
        assert_eq!(x.fmt_set(&x.add(&p("3t^2"), &p("4t^1"))), "3t^2");
        assert_eq!(x.fmt_set(&x.add(&p("1t^0"), &p("1t^0"))), "2t^0");
        assert_eq!(x.add(&p("2t^1"), &p("-2t^1")), MSet::cone(1.0));
        assert_eq!(x.fmt_set(&x.add(&p("2t^1"), &p("-2t^1"))), "below r=1");
        assert_eq!(x.add(&MonomialElem::Zero, &p("it^3")), MSet::point(p("it^3")));
    }

    #[test]
    fn multiplication() {
        let x = m();
        assert!(x.elem_eq(&x.mul(&p("3t^2"), &p("4t^1")), &p("12t^3")));
        assert!(x.elem_eq(&x.mul(&p("(1+i)t^-1"), &x.one()), &p("(1+i)t^-1")));
        assert_eq!(x.mul(&p("5t^1"), &MonomialElem::Zero), MonomialElem::Zero);
        let a = p("(1+2i)t^0.5");
        assert!(x.elem_eq(&x.mul(&a, &x.inv(&a).unwrap()), &x.one()));
    }

    #[test]
    fn cone_plus_point() {
        let x = m();
        let cone = MSet::cone(2.0);
        assert_eq!(x.add_sets(&cone, &MSet::point(p("7t^1"))).unwrap(), cone);
        assert_eq!(x.add_sets(&cone, &MSet::point(p("7t^2"))).unwrap(), MSet::point(p("7t^2")));
        assert_eq!(x.add_sets(&cone, &MSet::point(p("7t^3"))).unwrap(), MSet::point(p("7t^3")));
        assert_eq!(x.add_sets(&cone, &MSet::cone(1.0)).unwrap(), cone);
        assert_eq!(x.add_sets(&cone, &MSet::point(MonomialElem::Zero)).unwrap(), cone);
    }

    #[test]
    fn associativity_cases_by_hand() {
        let x = m();
        let cases: [(&str, &str, &str, MSet<f64>); 6] = [
            ("1t^2", "3t^1", "2t^0", MSet::point(p("1t^2"))),
            ("1t^1", "2t^1", "5t^0", MSet::point(p("3t^1"))),
            ("2t^1", "-2t^1", "5t^0", MSet::cone(1.0)),
            ("1t^0", "it^0", "2t^0", MSet::point(p("(3+i)t^0"))),
            ("1t^0", "-1t^0", "3t^0", MSet::point(p("3t^0"))),
            ("1t^0", "2t^0", "-3t^0", MSet::cone(0.0)),
        ];
        for (a, b, c, want) in cases {
            let (a, b, c) = (p(a), p(b), p(c));
            let left = x.add_sets(&x.add(&a, &b), &MSet::point(c)).unwrap();
            let right = x.add_sets(&MSet::point(a), &x.add(&b, &c)).unwrap();
            assert!(x.set_eq(&left, &want), "{}", x.fmt_set(&left));
            assert!(x.set_eq(&right, &want), "{}", x.fmt_set(&right));
        }
    }

    #[test]
    fn text_round_trip() {
        let x = m();
        for s in ["3t^2", "-2t^-1.5", "(1-2i)t^0", "it^1", "below r=1 ∪ 4t^1"] {
            let set = x.parse_set(s).unwrap();
            assert!(x.set_eq(&x.parse_set(&x.fmt_set(&set)).unwrap(), &set), "{s}");
        }
        assert!(x.elem_eq(&p("t"), &p("1t^1")));
        assert!(x.elem_eq(&p("-t^2"), &p("-1t^2")));
        assert!(x.elem_eq(&p("2"), &p("2t^0")));
        assert!(x.parse_elem("0t^3").is_err());
        assert!(x.parse_set("disk r=1").is_err());
        // a point inside the cone is absorbed
        assert_eq!(x.parse_set("below r=2 ∪ 4t^1").unwrap(), MSet::cone(2.0));
    }

    #[test]
    fn hyperfield_for_each_exponent_group() {
        let opts = CheckOptions::sampled(3000, 7);
        let r = check_multiring(&Monomial::<f64>::default(), Level::Hyperfield, &opts);
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.missing_branches(Monomial::<f64>::default().branches()).is_empty());
        let r = check_multiring(&Monomial::<Ratio<i64>>::default(), Level::Hyperfield, &opts);
        assert!(r.passed(), "{}", r.to_text());
        let r = check_multiring(&Monomial::<i64>::default(), Level::Hyperfield, &opts);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn reversed_order_smoke() {
        let x = Monomial::<i64>::reversed(Tolerance::default());
        assert_eq!(x.name(), "mono-z-rev");
        let a = x.parse_elem("3t^2").unwrap();
        let b = x.parse_elem("4t^1").unwrap();
        assert_eq!(x.fmt_set(&x.add(&a, &b)), "4t^1");
        assert_eq!(x.fmt_set(&x.add(&a, &x.neg(&a))), "above r=2");
        let r = check_multiring(&x, Level::Hyperfield, &CheckOptions::sampled(2000, 3));
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn integer_cone_members() {
        let x = Monomial::<i64>::default();
        let cone = MSet::cone(1);
        assert!(x.member(&x.parse_elem("5t^0").unwrap(), &cone));
        assert!(!x.member(&x.parse_elem("5t^1").unwrap(), &cone));
        assert!(x.member(&MonomialElem::Zero, &cone));
        assert_eq!(x.name(), "mono-z");
        assert_eq!(Monomial::<Ratio<i64>>::default().name(), "mono-q");
    }

    #[test]
    fn forgetting_the_modulus_is_a_homomorphism() {
        let f = ElemMap::<M, TropicalComplex>::new("phase-exp", to_tropical_complex::<f64>);
        let r = check_hom(&f, &m(), &TropicalComplex::default(), &CheckOptions::sampled(3000, 11));
        assert!(r.is_hom(), "{}", r.to_text());
        let tc = TropicalComplex::default();
        for z in sample_elems(&tc, 200, 5) {
            let back = to_tropical_complex(&tropical_preimage(&z));
            assert!(tc.elem_eq(&back, &z));
        }
    }

    #[test]
    fn n_ary_sum_of_cancelling_terms() {
        let x = m();
        let s = sum_list(&x, &[p("1t^1"), p("it^1"), p("-1t^1"), p("-it^1")]).unwrap();
        assert_eq!(s, MSet::cone(1.0));
        let mut g = rng(1);
        for e in x.sample_members(&s, &mut g, 5) {
            assert!(x.member(&e, &s));
        }
    }

    fn arb_term() -> impl Strategy<Value = MonomialElem<i64>> {
        (-3i64..=3, -2i64..=2, -2i64..=2).prop_filter_map("nonzero", |(re, im, e)| {
            (re != 0 || im != 0).then(|| MonomialElem::new(Complex64::new(re as f64, im as f64), e))
        })
    }

    proptest! {
        #[test]
        fn associative_on_integer_lattice(a in arb_term(), b in arb_term(), c in arb_term()) {
            let x = Monomial::<i64>::default();
            let left = x.add_sets(&x.add(&a, &b), &MSet::point(c)).unwrap();
            let right = x.add_sets(&MSet::point(a), &x.add(&b, &c)).unwrap();
            prop_assert!(x.set_eq(&left, &right));
        }

        #[test]
        fn distributive(a in arb_term(), b in arb_term(), c in arb_term()) {
            let x = Monomial::<i64>::default();
            let left = x.scale_left(&c, &x.add(&a, &b));
            let right = x.add(&x.mul(&c, &a), &x.mul(&c, &b));
            prop_assert!(x.set_eq(&left, &right));
        }

        #[test]
        fn unique_negative(a in arb_term(), b in arb_term()) {
            let x = Monomial::<i64>::default();
            let has_zero = x.member(&MonomialElem::Zero, &x.add(&a, &b));
            prop_assert_eq!(has_zero, x.elem_eq(&b, &x.neg(&a)));
        }
    }
}
