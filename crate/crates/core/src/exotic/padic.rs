//! Tropical addition of p-adic numbers, truncated to `L` digits.
//!
//! A nonzero element is `p^v · u` with `u` a unit stored modulo `p^L`; its
//! digits are the base-`p` digits of `u`, lowest first. Sums of equal
//! valuation whose leading digits add to `p` give the ball of smaller norm.
//!
//! Taken literally the rule is neither associative nor has unique negatives:
//! for `p = 5`, `(1 ∔ 4) ∔ 5` misses `30` while `1 ∔ (4 ∔ 5)` contains it,
//! and both `1 ∔ 4` and `1 ∔ (-1)` contain `0`. Value sets are therefore
//! unions of points, leading-digit classes and balls, which is enough to
//! represent every iterated sum exactly.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::sets::{field_text, kv_fields, split_union};
use crate::structure::{Carrier, Rand, Structure};
use crate::tol::Tolerance;

/// Widest gap between valuations for which `ball ∔ point` is expanded.
const MAX_SPREAD: i64 = 64;

/// `p^val · unit`, `unit` a unit modulo `p^depth`; `unit == 0` is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicElem {
    p: u32,
    depth: u32,
    val: i32,
    unit: u64,
}

impl PadicElem {
    pub fn zero(p: u32, depth: u32) -> Self {
        PadicElem { p, depth, val: 0, unit: 0 }
    }

    /// From digits `d₀, d₁, …` (lowest first) at valuation `val`. Missing
    /// digits are zero.
    pub fn from_digits(p: u32, depth: u32, val: i32, digits: &[u32]) -> Result<Self> {
        if digits.len() > depth as usize {
            return Err(Error::Indeterminate(format!("{} digits exceed depth {depth}", digits.len())));
        }
        if digits.iter().any(|&d| d >= p) {
            return Err(Error::Domain(format!("digit out of range for p={p}")));
        }
        match digits.first() {
            None => return Ok(Self::zero(p, depth)),
            Some(0) => return Err(Error::Domain("leading digit must be nonzero".into())),
            _ => {}
        }
        let unit = digits.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d as u64);
        Ok(PadicElem { p, depth, val, unit })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn is_zero(&self) -> bool {
        self.unit == 0
    }

    /// The exponent of the lowest nonzero digit.
    pub fn valuation(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.val)
    }

    /// All `depth` digits from the valuation on.
    pub fn digits(&self) -> Vec<u32> {
        let mut u = self.unit;
        (0..self.depth)
            .map(|_| {
                let d = (u % self.p as u64) as u32;
                u /= self.p as u64;
                d
            })
            .collect()
    }

    pub fn lead(&self) -> u32 {
        (self.unit % self.p as u64) as u32
    }

    /// `p^(-v)`, and 0 for zero.
    pub fn norm(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            (self.p as f64).powi(-self.val)
        }
    }

    fn modulus(&self) -> u64 {
        (self.p as u64).pow(self.depth)
    }

    fn with(&self, val: i32, unit: u64) -> Self {
        PadicElem { val: if unit == 0 { 0 } else { val }, unit, ..*self }
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.depth != other.depth {
            return Err(Error::CarrierMismatch(format!(
                "p={} L={} against p={} L={}",
                self.p, self.depth, other.p, other.depth
            )));
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        self.with(self.val, (self.modulus() - self.unit) % self.modulus())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.p, self.depth));
        }
        let u = (self.unit as u128 * other.unit as u128 % self.modulus() as u128) as u64;
        Ok(self.with(self.val + other.val, u))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = self.modulus() as i128;
        let (mut r0, mut r1) = (m, self.unit as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.with(-self.val, t0.rem_euclid(m) as u64))
    }

    /// Parse `2 + 3*5 + 1*5^2`, `5^-1 * (1 + 2*5)`, `-1`, `1/3`, optionally
    /// prefixed by `p=5:`. Terminating expansions longer than `depth` digits
    /// are indeterminate; non-terminating ones are truncated.
    pub fn parse(s: &str, p: u32, depth: u32) -> Result<Self> {
        let body = match s.trim().strip_prefix("p=") {
            Some(rest) => {
                let (q, body) =
                    rest.split_once(':').ok_or_else(|| Error::Parse(format!("expected `p=<prime>:` in `{s}`")))?;
                let q: u32 = q.trim().parse().map_err(|_| Error::Parse(format!("bad prime in `{s}`")))?;
                if q != p {
                    return Err(Error::CarrierMismatch(format!("literal for p={q}, structure has p={p}")));
                }
                body
            }
            None => s,
        };
        let mut parser = Expr { toks: tokenize(body)?, pos: 0 };
        let q = parser.sum()?;
        if parser.pos != parser.toks.len() {
            return Err(Error::Parse(format!("trailing input in `{s}`")));
        }
        Self::from_rational(q, p, depth)
    }

    fn from_rational(q: Ratio<i128>, p: u32, depth: u32) -> Result<Self> {
        if q.is_zero() {
            return Ok(Self::zero(p, depth));
        }
        let pp = p as i128;
        let (mut n, mut d, mut val) = (*q.numer(), *q.denom(), 0i32);
        while n % pp == 0 {
            n /= pp;
            val += 1;
        }
        while d % pp == 0 {
            d /= pp;
            val -= 1;
        }
        let m = (p as u64).pow(depth) as i128;
        if d == 1 && n > 0 && n >= m {
            return Err(Error::Indeterminate(format!("literal needs more than {depth} digits")));
        }
        let z = PadicElem { p, depth, val: 0, unit: d.rem_euclid(m) as u64 };
        let dinv = z.inv().expect("denominator prime to p").unit as i128;
        let unit = (n.rem_euclid(m) * dinv).rem_euclid(m) as u64;
        Ok(PadicElem { p, depth, val, unit })
    }
}

impl fmt::Display for PadicElem {
    /// `d₀*p^v + d₁*p^(v+1) + …`, zero digits omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .digits()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(k, &d)| match self.val + k as i32 {
                0 => d.to_string(),
                1 => format!("{d}*{}", self.p),
                e => format!("{d}*{}^{e}", self.p),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Num(i128),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut n: i128 = 0;
            while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(d as i128))
                    .ok_or_else(|| Error::Parse("number too large".into()))?;
                chars.next();
            }
            out.push(Tok::Num(n));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            chars.next();
        } else {
            return Err(Error::Parse(format!("unexpected `{c}` in p-adic literal")));
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty p-adic literal".into()));
    }
    Ok(out)
}

struct Expr {
    toks: Vec<Tok>,
    pos: usize,
}

fn overflow() -> Error {
    Error::Parse("p-adic literal overflows".into())
}

impl Expr {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Ratio<i128>> {
        let mut acc = if self.eat('-') { -self.product()? } else { self.product()? };
        loop {
            if self.eat('+') {
                acc = acc.checked_add(&self.product()?).ok_or_else(overflow)?;
            } else if self.eat('-') {
                acc = acc.checked_sub(&self.product()?).ok_or_else(overflow)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Ratio<i128>> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.checked_mul(&self.power()?).ok_or_else(overflow)?;
            } else if self.eat('/') {
                let d = self.power()?;
                if d.is_zero() {
                    return Err(Error::Domain("division by zero in p-adic literal".into()));
                }
                acc = acc.checked_div(&d).ok_or_else(overflow)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Ratio<i128>> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let Some(Tok::Num(e)) = self.peek() else {
            return Err(Error::Parse("expected an integer exponent".into()));
        };
        self.pos += 1;
        if base.is_zero() && neg {
            return Err(Error::Domain("zero to a negative power".into()));
        }
        let mut acc = Ratio::one();
        for _ in 0..e {
            acc = acc.checked_mul(&base).ok_or_else(overflow)?;
        }
        Ok(if neg { acc.recip() } else { acc })
    }

    fn atom(&mut self) -> Result<Ratio<i128>> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Ratio::from_integer(n))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.sum()?;
                if !self.eat(')') {
                    return Err(Error::Parse("unbalanced parentheses".into()));
                }
                Ok(v)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            _ => Err(Error::Parse("expected a number or `(`".into())),
        }
    }
}

/// One component of a [`PSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PPiece {
    Point(PadicElem),
    /// Everything of valuation `val` with leading digit `digit`.
    Lead { val: i32, digit: u32 },
    /// `{x | v(x) > val} ∪ {0}`: norm strictly below `p^(-val)`.
    Smaller(i32),
}

/// A normalized finite union of [`PPiece`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSet {
    parts: Vec<PPiece>,
}

impl PSet {
    pub fn point(a: PadicElem) -> Self {
        PSet { parts: vec![PPiece::Point(a)] }
    }

    pub fn smaller(val: i32) -> Self {
        PSet { parts: vec![PPiece::Smaller(val)] }
    }

    pub fn parts(&self) -> &[PPiece] {
        &self.parts
    }
}

/// The literal four-case sum.
pub fn padic_add(a: &PadicElem, b: &PadicElem) -> Result<PSet> {
    a.same_context(b)?;
    if a.is_zero() {
        return Ok(PSet::point(*b));
    }
    if b.is_zero() {
        return Ok(PSet::point(*a));
    }
    Ok(match a.val.cmp(&b.val) {
        Ordering::Less => PSet::point(*a),
        Ordering::Greater => PSet::point(*b),
        Ordering::Equal if a.lead() + b.lead() == a.p => PSet::smaller(a.val),
        Ordering::Equal => PSet::point(a.with(a.val, (a.unit + b.unit) % a.modulus())),
    })
}

/// `Z_p`-style tropical hyperfield on truncated p-adic numbers.
#[derive(Debug, Clone, Copy)]
pub struct Padic {
    pub p: u32,
    pub depth: u32,
}

impl Padic {
    /// `p` prime, `depth ≥ 1` and `p^depth < 2^62`.
    pub fn new(p: u32, depth: u32) -> Result<Self> {
        if !crate::finite::is_prime(p as usize) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let fits = (p as u64).checked_pow(depth).is_some_and(|m| m < 1 << 62);
        if depth == 0 || !fits {
            return Err(Error::Invalid(format!("depth {depth} unsupported for p={p}")));
        }
        Ok(Padic { p, depth })
    }

    pub fn elem(&self, s: &str) -> Result<PadicElem> {
        PadicElem::parse(s, self.p, self.depth)
    }

    fn lead_members(&self, val: i32, digit: u32, rng: &mut Rand) -> PadicElem {
        let m = (self.p as u64).pow(self.depth);
        let hi = rng.gen_range(0..m / self.p as u64);
        PadicElem { p: self.p, depth: self.depth, val, unit: hi * self.p as u64 + digit as u64 }
    }

    fn random_lead(&self, rng: &mut Rand) -> u32 {
        rng.gen_range(1..self.p)
    }

    fn normalize(&self, parts: Vec<PPiece>) -> PSet {
        let mut bound = parts
            .iter()
            .filter_map(|q| match q {
                PPiece::Smaller(e) => Some(*e),
                _ => None,
            })
            .min();
        let mut leads: Vec<(i32, u32)> = parts
            .iter()
            .filter_map(|q| match q {
                PPiece::Lead { val, digit } => Some((*val, *digit)),
                _ => None,
            })
            .collect();
        leads.sort_unstable();
        leads.dedup();
        while let Some(e) = bound {
            if (1..self.p).all(|d| leads.contains(&(e, d))) {
                bound = Some(e - 1);
            } else {
                break;
            }
        }
        leads.retain(|&(v, _)| bound.is_none_or(|e| v <= e));
        let mut points: Vec<PadicElem> = parts
            .iter()
            .filter_map(|q| match q {
                PPiece::Point(a) => Some(*a),
                _ => None,
            })
            .filter(|a| match a.valuation() {
                None => bound.is_none(),
                Some(v) => bound.is_none_or(|e| v <= e) && !leads.contains(&(v, a.lead())),
            })
            .collect();
        points.sort_unstable_by_key(|a| (a.valuation().map_or(i64::MAX, i64::from), a.unit));
        points.dedup();
        let mut out: Vec<PPiece> = points.into_iter().map(PPiece::Point).collect();
        out.extend(leads.into_iter().map(|(val, digit)| PPiece::Lead { val, digit }));
        out.extend(bound.map(PPiece::Smaller));
        PSet { parts: out }
    }

    fn piece_sum(&self, s: &PPiece, t: &PPiece) -> Result<Vec<PPiece>> {
        use PPiece::*;
        Ok(match (*s, *t) {
            (Point(a), Point(b)) => padic_add(&a, &b)?.parts,
            (Point(a), Lead { val, digit }) | (Lead { val, digit }, Point(a)) => match a.valuation() {
                None => vec![Lead { val, digit }],
                Some(v) if v < val => vec![Point(a)],
                Some(v) if v > val => vec![Lead { val, digit }],
                Some(_) if a.lead() + digit == self.p => vec![Smaller(val)],
                Some(_) => vec![Lead { val, digit: (a.lead() + digit) % self.p }],
            },
            (Point(a), Smaller(e)) | (Smaller(e), Point(a)) => match a.valuation() {
                None => vec![Smaller(e)],
                Some(v) if v <= e => vec![Point(a)],
                Some(v) => {
                    if i64::from(v) - i64::from(e) > MAX_SPREAD {
                        return Err(Error::Closure(format!("valuation gap {} too wide", v - e)));
                    }
                    // The ball minus the leading class of `a`, with `a` put back.
                    let mut out = vec![Point(a), Smaller(v)];
                    out.extend((1..self.p).filter(|&d| d != a.lead()).map(|digit| Lead { val: v, digit }));
                    for w in e + 1..v {
                        out.extend((1..self.p).map(|digit| Lead { val: w, digit }));
                    }
                    out
                }
            },
            (Lead { val: v1, digit: d1 }, Lead { val: v2, digit: d2 }) => match v1.cmp(&v2) {
                Ordering::Less => vec![*s],
                Ordering::Greater => vec![*t],
                Ordering::Equal if d1 + d2 == self.p => vec![Smaller(v1)],
                Ordering::Equal => vec![Lead { val: v1, digit: (d1 + d2) % self.p }],
            },
            (Lead { val, digit }, Smaller(e)) | (Smaller(e), Lead { val, digit }) => {
                if val <= e {
                    vec![Lead { val, digit }]
                } else {
                    vec![Smaller(e)]
                }
            }
            (Smaller(e), Smaller(f)) => vec![Smaller(e.min(f))],
        })
    }

    pub fn padic_add_sets(&self, s: &PSet, t: &PSet) -> Result<PSet> {
        let mut parts = Vec::new();
        for a in &s.parts {
            for b in &t.parts {
                parts.extend(self.piece_sum(a, b)?);
            }
        }
        Ok(self.normalize(parts))
    }

    fn piece_subset(&self, q: &PPiece, t: &PSet) -> bool {
        match *q {
            PPiece::Point(a) => self.member(&a, t),
            PPiece::Lead { val, digit } => t.parts.iter().any(|r| match *r {
                PPiece::Lead { val: v, digit: d } => v == val && d == digit,
                PPiece::Smaller(e) => val > e,
                PPiece::Point(_) => false,
            }),
            PPiece::Smaller(e) => t.parts.iter().any(|r| matches!(*r, PPiece::Smaller(f) if f <= e)),
        }
    }

    fn fmt_piece(&self, q: &PPiece) -> String {
        match q {
            PPiece::Point(a) => a.to_string(),
            PPiece::Lead { val, digit } => format!("lead e={val} d={digit}"),
            PPiece::Smaller(e) => format!("smaller e={e}"),
        }
    }
}

fn int_field(fields: &[(&str, &str)], key: &str) -> Result<i32> {
    let v = field_text(fields, key)?;
    v.parse().map_err(|_| Error::Parse(format!("bad integer `{v}` for `{key}`")))
}

impl Structure for Padic {
    type Elem = PadicElem;
    type Set = PSet;

    fn name(&self) -> String {
        format!("padic:{}:{}", self.p, self.depth)
    }
    fn tolerance(&self) -> Tolerance {
        Tolerance::new(0.0)
    }
    fn zero(&self) -> PadicElem {
        PadicElem::zero(self.p, self.depth)
    }
    fn one(&self) -> PadicElem {
        PadicElem { p: self.p, depth: self.depth, val: 0, unit: 1 }
    }
    fn neg(&self, a: &PadicElem) -> PadicElem {
        a.neg()
    }
    fn mul(&self, a: &PadicElem, b: &PadicElem) -> PadicElem {
        a.mul(b).expect("elements of one structure")
    }
    fn inv(&self, a: &PadicElem) -> Option<PadicElem> {
        a.inv()
    }
    fn add(&self, a: &PadicElem, b: &PadicElem) -> PSet {
        padic_add(a, b).expect("elements of one structure")
    }
    fn add_sets(&self, s: &PSet, t: &PSet) -> Result<PSet> {
        self.padic_add_sets(s, t)
    }
    fn singleton(&self, a: &PadicElem) -> PSet {
        PSet::point(*a)
    }
    fn elem_eq(&self, a: &PadicElem, b: &PadicElem) -> bool {
        a == b
    }
    fn member(&self, x: &PadicElem, s: &PSet) -> bool {
        s.parts.iter().any(|q| match *q {
            PPiece::Point(a) => a == *x,
            PPiece::Lead { val, digit } => x.valuation() == Some(val) && x.lead() == digit,
            PPiece::Smaller(e) => x.valuation().is_none_or(|v| v > e),
        })
    }
    fn subset(&self, s: &PSet, t: &PSet) -> bool {
        s.parts.iter().all(|q| self.piece_subset(q, t))
    }
    fn union(&self, s: &PSet, t: &PSet) -> PSet {
        self.normalize(s.parts.iter().chain(&t.parts).copied().collect())
    }
    fn scale_left(&self, a: &PadicElem, s: &PSet) -> PSet {
        let Some(va) = a.valuation() else {
            return PSet::point(self.zero());
        };
        let parts = s
            .parts
            .iter()
            .map(|q| match *q {
                PPiece::Point(b) => PPiece::Point(self.mul(a, &b)),
                PPiece::Lead { val, digit } => PPiece::Lead { val: val + va, digit: digit * a.lead() % self.p },
                PPiece::Smaller(e) => PPiece::Smaller(e + va),
            })
            .collect();
        self.normalize(parts)
    }
    fn carrier(&self) -> Carrier<PadicElem> {
        Carrier::Sampled
    }
    fn sample(&self, rng: &mut Rand) -> PadicElem {
        let lead = self.random_lead(rng);
        let e = self.lead_members(rng.gen_range(-2..=2), lead, rng);
        if rng.gen_bool(0.3) {
            // short expansions make carries and cancellations visible
            self.with_short_tail(e, rng)
        } else {
            e
        }
    }
    fn related(&self, x: &PadicElem, rng: &mut Rand) -> PadicElem {
        let Some(v) = x.valuation() else {
            return self.sample(rng);
        };
        match rng.gen_range(0..6) {
            0 => self.lead_members(v, self.p - x.lead(), rng),
            1 => self.lead_members(v, x.lead(), rng),
            2 => {
                let d = self.random_lead(rng);
                self.lead_members(v, d, rng)
            }
            3 => {
                let d = self.random_lead(rng);
                self.lead_members(v + rng.gen_range(1..=2), d, rng)
            }
            4 => {
                let d = self.random_lead(rng);
                self.lead_members(v - 1, d, rng)
            }
            _ => x.neg(),
        }
    }
    fn sample_members(&self, s: &PSet, rng: &mut Rand, extra: usize) -> Vec<PadicElem> {
        let mut out = Vec::new();
        for q in &s.parts {
            match *q {
                PPiece::Point(a) => out.push(a),
                PPiece::Lead { val, digit } => {
                    for _ in 0..extra.max(1) {
                        out.push(self.lead_members(val, digit, rng));
                    }
                }
                PPiece::Smaller(e) => {
                    out.push(self.zero());
                    for _ in 0..extra.max(2) {
                        let d = self.random_lead(rng);
                        out.push(self.lead_members(e + rng.gen_range(1..=3), d, rng));
                    }
                }
            }
        }
        out
    }
    fn branch(&self, a: &PadicElem, b: &PadicElem) -> &'static str {
        match (a.valuation(), b.valuation()) {
            (Some(v), Some(w)) if v != w => "dominant",
            (Some(_), Some(_)) if a.lead() + b.lead() == self.p => "cancel",
            (Some(_), Some(_)) => "sum",
            _ => "zero",
        }
    }
    fn branches(&self) -> &'static [&'static str] {
        // Two leading digits of 2-adic numbers always cancel.
        if self.p == 2 {
            &["zero", "dominant", "cancel"]
        } else {
            &["zero", "dominant", "sum", "cancel"]
        }
    }
    fn probes(&self) -> Vec<Vec<PadicElem>> {
        let p = self.p as i128;
        let e = |q: i128| PadicElem::from_rational(Ratio::from_integer(q), self.p, self.depth).expect("small integer");
        vec![
            vec![e(1), e(p - 1), e(p), e(1)],
            vec![e(1), e(-1), e(p - 1), e(p)],
            vec![e(p), e(1), e(p - 1), e(-1)],
        ]
    }
    fn fmt_elem(&self, a: &PadicElem) -> String {
        a.to_string()
    }
    fn fmt_set(&self, s: &PSet) -> String {
        s.parts.iter().map(|q| self.fmt_piece(q)).collect::<Vec<_>>().join(" ∪ ")
    }
    fn parse_elem(&self, s: &str) -> Result<PadicElem> {
        self.elem(s)
    }
    fn parse_set(&self, s: &str) -> Result<PSet> {
        let pieces = split_union(s);
        if pieces.is_empty() {
            return Err(Error::Parse("empty set literal".into()));
        }
        let mut parts = Vec::new();
        for piece in pieces {
            let tokens: Vec<&str> = piece.split_whitespace().collect();
            let part = match tokens[0] {
                "lead" => {
                    let f = kv_fields(&tokens[1..])?;
                    let digit = int_field(&f, "d")?;
                    if digit <= 0 || digit as u32 >= self.p {
                        return Err(Error::Domain(format!("leading digit {digit} out of range")));
                    }
                    PPiece::Lead { val: int_field(&f, "e")?, digit: digit as u32 }
                }
                "smaller" => PPiece::Smaller(int_field(&kv_fields(&tokens[1..])?, "e")?),
                "below" | "above" | "disk" | "arc" | "interval" | "circle" => {
                    return Err(Error::CarrierMismatch(format!("`{piece}` is not a p-adic value set")))
                }
                _ => PPiece::Point(self.elem(piece)?),
            };
            parts.push(part);
        }
        Ok(self.normalize(parts))
    }
}

impl Padic {
    fn with_short_tail(&self, e: PadicElem, rng: &mut Rand) -> PadicElem {
        let keep = rng.gen_range(1..=self.depth.min(3));
        let m = (self.p as u64).pow(keep);
        e.with(e.val, e.unit % m)
    }
}

/// `x ↦ |x|_p`.
pub fn padic_norm(x: &PadicElem) -> f64 {
    x.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_multiring, evaluate, Axiom, CheckOptions, Level, Outcome};
    use crate::realhf::{check_seminorm, SeminormKind};
    use proptest::prelude::*;

    fn five() -> Padic {
        Padic::new(5, 8).unwrap()
    }

    #[test]
    fn literals() {
        let x = five();
        let a = x.elem("p=5: 2 + 3*5 + 1*5^2").unwrap();
        assert_eq!(a.valuation(), Some(0));
        assert_eq!(&a.digits()[..4], &[2, 3, 1, 0]);
        let b = x.elem("5^-1 * (1 + 2*5)").unwrap();
        assert_eq!(b.valuation(), Some(-1));
        assert_eq!(&b.digits()[..3], &[1, 2, 0]);
        assert_eq!(b.to_string(), "1*5^-1 + 2");
        let m1 = x.elem("-1").unwrap();
        assert_eq!(m1.digits(), vec![4; 8]);
        let third = x.elem("1/3").unwrap();
        assert_eq!(x.mul(&third, &x.elem("3").unwrap()), x.one());
        assert!(matches!(x.elem("1 + 5^9"), Err(Error::Indeterminate(_))));
        assert!(matches!(x.elem("p=3: 1"), Err(Error::CarrierMismatch(_))));
        assert!(x.elem("2 + ").is_err());
        assert!(x.elem("0^-1").is_err());
    }

    #[test]
    fn addition_cases() {
        let x = five();
        let e = |s: &str| x.elem(s).unwrap();
        assert_eq!(x.add(&e("5^-1"), &e("1")), PSet::point(e("5^-1")));
        assert_eq!(x.add(&e("1"), &e("1")), PSet::point(e("2")));
        assert_eq!(x.add(&e("2"), &e("3")), PSet::smaller(0));
        assert_eq!(x.fmt_set(&x.add(&e("2"), &e("3"))), "smaller e=0");
        // a carry into the next digit stays in the third case
        assert_eq!(x.add(&e("3"), &e("4")), PSet::point(e("2 + 5")));
        assert!(padic_add(&e("1"), &Padic::new(3, 8).unwrap().one()).is_err());
    }

    #[test]
    fn classical_sum_can_disagree() {
        // 2 + 3 = 5 classically, which has norm below 1: inside the ball.
        let x = five();
        let five_ = x.elem("5").unwrap();
        assert!(x.member(&five_, &x.add(&x.elem("2").unwrap(), &x.elem("3").unwrap())));
        // 1 + (4 + 5) = 10 classically; the leading digits already cancel.
        let s = x.add(&x.elem("1").unwrap(), &x.elem("4 + 5").unwrap());
        assert_eq!(s, PSet::smaller(0));
    }

    #[test]
    fn literal_rule_is_not_associative() {
        let x = five();
        let e = |s: &str| x.elem(s).unwrap();
        let (a, b, c) = (e("1"), e("4"), e("5"));
        let left = x.add_sets(&x.add(&a, &b), &PSet::point(c)).unwrap();
        let right = x.add_sets(&PSet::point(a), &x.add(&b, &c)).unwrap();
        assert!(x.member(&e("30"), &right));
        assert!(!x.member(&e("30"), &left));
        assert!(x.member(&c, &left));
        assert!(matches!(evaluate(&x, Axiom::Associativity, &[a, b, c], false), Outcome::Fail(_)));
    }

    #[test]
    fn negatives_are_not_unique() {
        let x = five();
        let zero = x.zero();
        let one = x.one();
        for b in [x.elem("4").unwrap(), x.elem("-1").unwrap(), x.elem("4 + 2*5").unwrap()] {
            assert!(x.member(&zero, &x.add(&one, &b)));
        }
    }

    #[test]
    fn four_term_sums_depend_on_bracketing() {
        let x = Padic::new(3, 8).unwrap();
        let t: Vec<PadicElem> = ["1", "-1", "2", "3"].iter().map(|s| x.elem(s).unwrap()).collect();
        assert!(matches!(evaluate(&x, Axiom::HalfDoubleDistributivity, &t, false), Outcome::Fail(_)));
    }

    #[test]
    fn sampled_suite_reports_the_failures() {
        for p in [2, 3, 5] {
            let x = Padic::new(p, 8).unwrap();
            let r = check_multiring(&x, Level::Hyperfield, &CheckOptions::sampled(3000, 1));
            let failed: Vec<Axiom> = r.failed().map(|v| v.axiom).collect();
            assert!(failed.contains(&Axiom::Associativity), "p={p}\n{}", r.to_text());
            assert!(failed.contains(&Axiom::InverseUnique), "p={p}\n{}", r.to_text());
            for ax in [Axiom::MulAssociativity, Axiom::MulInverse, Axiom::LeftDistributivity, Axiom::ZeroAbsorbing] {
                assert!(r.verdict(ax).is_none_or(|v| v.passed()), "p={p} {ax}\n{}", r.to_text());
            }
        }
    }

    #[test]
    fn norm_is_a_nonarchimedean_seminorm() {
        for p in [2, 3, 5] {
            let x = Padic::new(p, 8).unwrap();
            let (u, y) = check_seminorm(&x, padic_norm, SeminormKind::NonArchimedean, &CheckOptions::sampled(2000, 4));
            assert!(u.is_hom(), "{}", u.to_text());
            assert!(y.unwrap().is_hom());
        }
    }

    #[test]
    fn set_text_round_trip() {
        let x = five();
        for s in ["smaller e=0", "lead e=1 d=3 ∪ 2", "smaller e=1 ∪ lead e=1 d=2 ∪ 1*5^-1"] {
            let set = x.parse_set(s).unwrap();
            assert_eq!(x.parse_set(&x.fmt_set(&set)).unwrap(), set, "{s}");
        }
        // all leading classes above a ball merge into the next ball
        let full = x.parse_set("smaller e=1 ∪ lead e=1 d=1 ∪ lead e=1 d=2 ∪ lead e=1 d=3 ∪ lead e=1 d=4").unwrap();
        assert_eq!(full, PSet::smaller(0));
        assert!(x.parse_set("lead e=0 d=5").is_err());
    }

    #[test]
    fn ball_plus_point() {
        let x = five();
        let s = x.add_sets(&PSet::smaller(0), &PSet::point(x.elem("5").unwrap())).unwrap();
        assert_eq!(x.fmt_set(&s), "1*5 ∪ lead e=1 d=2 ∪ lead e=1 d=3 ∪ lead e=1 d=4 ∪ smaller e=1");
        let s = x.add_sets(&PSet::smaller(0), &PSet::point(x.elem("25").unwrap())).unwrap();
        assert_eq!(s.parts().len(), 1 + 1 + 3 + 4);
        assert_eq!(x.add_sets(&PSet::smaller(0), &PSet::point(x.one())).unwrap(), PSet::point(x.one()));
        let far = PadicElem::from_digits(5, 8, 200, &[1]).unwrap();
        assert!(matches!(x.add_sets(&PSet::smaller(0), &PSet::point(far)), Err(Error::Closure(_))));
    }

    fn arb(p: u32) -> impl Strategy<Value = PadicElem> {
        (-2i32..=2, 0u64..(p as u64).pow(8)).prop_map(move |(v, u)| {
            let unit = if u % p as u64 == 0 { u + 1 } else { u };
            PadicElem { p, depth: 8, val: v, unit }
        })
    }

    proptest! {
        #[test]
        fn field_arithmetic(a in arb(5), b in arb(5), c in arb(5)) {
            let x = five();
            prop_assert_eq!(x.mul(&x.mul(&a, &b), &c), x.mul(&a, &x.mul(&b, &c)));
            prop_assert_eq!(x.mul(&a, &x.inv(&a).unwrap()), x.one());
            prop_assert_eq!(x.neg(&x.neg(&a)), a);
            prop_assert_eq!(x.mul(&a, &b).valuation(), Some(a.val + b.val));
        }

        #[test]
        fn text_round_trip(a in arb(3)) {
            let x = Padic::new(3, 8).unwrap();
            prop_assert_eq!(x.parse_elem(&x.fmt_elem(&a)).unwrap(), a);
        }

        #[test]
        fn scaling_distributes(a in arb(5), b in arb(5), c in arb(5)) {
            let x = five();
            let left = x.scale_left(&c, &x.add(&a, &b));
            let right = x.add(&x.mul(&c, &a), &x.mul(&c, &b));
            prop_assert!(x.set_eq(&left, &right));
        }

        #[test]
        fn associative_without_leading_cancellation(a in arb(5), b in arb(5), c in arb(5)) {
            let x = five();
            let (b, c) = (PadicElem { val: a.val, ..b }, PadicElem { val: a.val, ..c });
            prop_assume!([(a, b), (b, c), (a, c)].iter().all(|(s, t)| s.lead() + t.lead() != 5));
            prop_assume!((a.lead() + b.lead()) % 5 + c.lead() != 5 && (b.lead() + c.lead()) % 5 + a.lead() != 5);
            let left = x.add_sets(&x.add(&a, &b), &PSet::point(c)).unwrap();
            let right = x.add_sets(&PSet::point(a), &x.add(&b, &c)).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
