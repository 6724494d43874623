//! Concrete homomorphisms (sign, phase, modulus, log-modulus, the w-map on
//! polynomials) and set-valued polynomial evaluation over any structure.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};

use crate::axioms::{check_hom_pairs, CheckOptions, ElemMap, HomReport};
use crate::ctrop::TropicalComplex;
use crate::error::{Error, Result};
use crate::sets::interval::Interval;
use crate::sets::{fmt_num, parse_num, CPiece, CSet, ComplexElem, RSet, TropElem};
use crate::structure::{sum_list, Carrier, Rand, Structure};
use crate::tol::Tolerance;

/// Index of the sign of `x` in the sign hyperfield's carrier `[-1, 0, 1]`.
pub fn sign_map(x: f64) -> usize {
    if x < 0.0 {
        0
    } else if x == 0.0 {
        1
    } else {
        2
    }
}

/// `z/|z|`, or 0.
pub fn phase_map(z: &ComplexElem) -> ComplexElem {
    z.phase()
}

pub fn abs_map(z: &ComplexElem) -> f64 {
    z.modulus()
}

/// `ln|z|` with `ln 0 = −∞`.
pub fn log_abs(z: &ComplexElem) -> TropElem {
    TropElem::ln(z.modulus())
}

/// The field ℝ with univalued addition.
#[derive(Debug, Clone, Copy, Default)]
pub struct RealField {
    pub tol: Tolerance,
}

const REAL_POOL: [f64; 9] = [1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 3.0, -3.0, 1.5];

impl Structure for RealField {
    type Elem = f64;
    type Set = RSet;

    fn name(&self) -> String {
        "R".into()
    }
    fn tolerance(&self) -> Tolerance {
        self.tol
    }
    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    fn neg(&self, a: &f64) -> f64 {
        -a
    }
    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }
    fn inv(&self, a: &f64) -> Option<f64> {
        (*a != 0.0).then(|| 1.0 / a)
    }
    fn add(&self, a: &f64, b: &f64) -> RSet {
        RSet::point(a + b)
    }
    fn add_sets(&self, s: &RSet, t: &RSet) -> Result<RSet> {
        let mut out = Vec::new();
        for i in s.parts() {
            for j in t.parts() {
                out.push(Interval { lo: i.lo + j.lo, hi: i.hi + j.hi });
            }
        }
        RSet::from_intervals(out, &self.tol)
    }
    fn singleton(&self, a: &f64) -> RSet {
        RSet::point(*a)
    }
    fn elem_eq(&self, a: &f64, b: &f64) -> bool {
        self.tol.close(*a, *b)
    }
    fn member(&self, x: &f64, s: &RSet) -> bool {
        s.member(*x, &self.tol)
    }
    fn subset(&self, s: &RSet, t: &RSet) -> bool {
        s.subset(t, &self.tol)
    }
    fn union(&self, s: &RSet, t: &RSet) -> RSet {
        s.union(t, &self.tol)
    }
    fn scale_left(&self, a: &f64, s: &RSet) -> RSet {
        RSet::from_intervals(
            s.parts()
                .iter()
                .map(|iv| Interval { lo: (a * iv.lo).min(a * iv.hi), hi: (a * iv.lo).max(a * iv.hi) })
                .collect(),
            &self.tol,
        )
        .expect("scaled set")
    }
    fn carrier(&self) -> Carrier<f64> {
        Carrier::Sampled
    }
    fn sample(&self, rng: &mut Rand) -> f64 {
        if rng.gen_bool(0.6) {
            REAL_POOL[rng.gen_range(0..REAL_POOL.len())]
        } else {
            rng.gen_range(-4.0..4.0)
        }
    }
    fn related(&self, x: &f64, rng: &mut Rand) -> f64 {
        if rng.gen_bool(0.5) {
            -x
        } else {
            x * rng.gen_range(-2.0..2.0)
        }
    }
    fn sample_members(&self, s: &RSet, rng: &mut Rand, extra: usize) -> Vec<f64> {
        crate::ctrop::interval_members(s, rng, extra)
    }
    fn probes(&self) -> Vec<Vec<f64>> {
        vec![vec![1.0, 1.0], vec![1.0, -1.0], vec![2.0, -3.0]]
    }
    fn fmt_elem(&self, a: &f64) -> String {
        fmt_num(*a)
    }
    fn fmt_set(&self, s: &RSet) -> String {
        s.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<f64> {
        parse_num(s)
    }
    fn parse_set(&self, s: &str) -> Result<RSet> {
        RSet::parse(s, &self.tol)
    }
}

/// The field ℂ with univalued addition. Value sets are finite sets of points.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexField {
    pub tol: Tolerance,
}

fn points_of(s: &CSet) -> Result<Vec<ComplexElem>> {
    s.parts()
        .iter()
        .map(|p| match p {
            CPiece::Point(z) => Ok(*z),
            _ => Err(Error::Unsupported("ℂ value sets are finite point sets".into())),
        })
        .collect()
}

fn complex_add(a: &ComplexElem, b: &ComplexElem) -> ComplexElem {
    ComplexElem::from_c64(a.to_c64() + b.to_c64())
}

impl Structure for ComplexField {
    type Elem = ComplexElem;
    type Set = CSet;

    fn name(&self) -> String {
        "C".into()
    }
    fn tolerance(&self) -> Tolerance {
        self.tol
    }
    fn zero(&self) -> ComplexElem {
        ComplexElem::ZERO
    }
    fn one(&self) -> ComplexElem {
        ComplexElem::ONE
    }
    fn neg(&self, a: &ComplexElem) -> ComplexElem {
        a.neg()
    }
    fn mul(&self, a: &ComplexElem, b: &ComplexElem) -> ComplexElem {
        a.mul(b)
    }
    fn inv(&self, a: &ComplexElem) -> Option<ComplexElem> {
        a.inv()
    }
    fn add(&self, a: &ComplexElem, b: &ComplexElem) -> CSet {
        CSet::point(complex_add(a, b))
    }
    fn add_sets(&self, s: &CSet, t: &CSet) -> Result<CSet> {
        let mut out = Vec::new();
        for a in points_of(s)? {
            for b in points_of(t)? {
                out.push(CPiece::Point(complex_add(&a, &b)));
            }
        }
        CSet::from_parts(out, &self.tol)
    }
    fn singleton(&self, a: &ComplexElem) -> CSet {
        CSet::point(*a)
    }
    fn elem_eq(&self, a: &ComplexElem, b: &ComplexElem) -> bool {
        a.close(b, &self.tol)
    }
    fn member(&self, x: &ComplexElem, s: &CSet) -> bool {
        s.member(x, &self.tol)
    }
    fn subset(&self, s: &CSet, t: &CSet) -> bool {
        s.subset(t, &self.tol)
    }
    fn union(&self, s: &CSet, t: &CSet) -> CSet {
        s.union(t, &self.tol)
    }
    fn scale_left(&self, a: &ComplexElem, s: &CSet) -> CSet {
        s.scale(a, &self.tol)
    }
    fn carrier(&self) -> Carrier<ComplexElem> {
        Carrier::Sampled
    }
    fn sample(&self, rng: &mut Rand) -> ComplexElem {
        TropicalComplex::new(self.tol).sample(rng)
    }
    fn related(&self, x: &ComplexElem, rng: &mut Rand) -> ComplexElem {
        TropicalComplex::new(self.tol).related(x, rng)
    }
    fn sample_members(&self, s: &CSet, rng: &mut Rand, extra: usize) -> Vec<ComplexElem> {
        s.sample_points(rng, extra)
    }
    fn probes(&self) -> Vec<Vec<ComplexElem>> {
        vec![
            vec![ComplexElem::real(2.0), ComplexElem::real(-2.0)],
            vec![ComplexElem::ONE, ComplexElem::unit(std::f64::consts::FRAC_PI_2)],
        ]
    }
    fn fmt_elem(&self, a: &ComplexElem) -> String {
        a.to_string()
    }
    fn fmt_set(&self, s: &CSet) -> String {
        s.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<ComplexElem> {
        s.parse()
    }
    fn parse_set(&self, s: &str) -> Result<CSet> {
        CSet::parse(s, &self.tol)
    }
}

/// A finite sum `Σ a_k X^{r_k}` with complex coefficients and real exponents;
/// ordinary polynomials have natural exponents. Terms are sorted by exponent,
/// exponents are distinct and no coefficient is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    terms: Vec<(f64, Complex64)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn new(terms: impl IntoIterator<Item = (f64, Complex64)>) -> Self {
        let mut v: Vec<(f64, Complex64)> = terms.into_iter().collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, Complex64)> = Vec::new();
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| t.1 != Complex64::new(0.0, 0.0));
        Polynomial { terms: out }
    }

    pub fn monomial(coeff: Complex64, exp: f64) -> Self {
        Self::new([(exp, coeff)])
    }

    pub fn terms(&self) -> &[(f64, Complex64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(f64, Complex64)> {
        self.terms.last().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(other.terms.iter()).copied())
    }

    pub fn neg(&self) -> Self {
        Polynomial { terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut v = Vec::new();
        for &(e, c) in &self.terms {
            for &(f, d) in &other.terms {
                v.push((e + f, c * d));
            }
        }
        Self::new(v)
    }

    /// Parse `3X^2 + (1+2i)X - 5` or `(-2i)X^{0.5}`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (sign, body) in split_signed_terms(s)? {
            let (coeff, exp) = match body.find('X') {
                None => (body.as_str(), None),
                Some(k) => (&body[..k], Some(&body[k + 1..])),
            };
            let coeff = coeff.trim().trim_end_matches('*').trim();
            let c: Complex64 = if coeff.is_empty() {
                Complex64::new(1.0, 0.0)
            } else {
                let inner = coeff.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(coeff);
                let (re, im) = crate::sets::complex::parse_cartesian(inner)?;
                Complex64::new(re, im)
            };
            let e = match exp {
                None => 0.0,
                Some(rest) => {
                    let rest = rest.trim();
                    if rest.is_empty() {
                        1.0
                    } else {
                        let r = rest
                            .strip_prefix('^')
                            .ok_or_else(|| Error::Parse(format!("bad exponent in `{body}`")))?
                            .trim();
                        let r = r.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(r);
                        parse_num(r)?
                    }
                }
            };
            terms.push((e, c * sign));
        }
        Ok(Self::new(terms))
    }
}

/// Split at top-level `+`/`-` (outside parentheses and braces), keeping signs.
fn split_signed_terms(s: &str) -> Result<Vec<(f64, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = 1.0;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ => {}
        }
        let exp_sign = matches!(prev, Some('^') | Some('e'));
        if depth == 0 && (ch == '+' || ch == '-') && !exp_sign {
            if !cur.trim().is_empty() {
                out.push((sign, cur.trim().to_string()));
            }
            cur.clear();
            sign = if ch == '-' { -1.0 } else { 1.0 };
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in `{s}`")));
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    if out.is_empty() && s.trim() != "0" {
        return Err(Error::Parse(format!("empty polynomial `{s}`")));
    }
    Ok(out)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|&(e, c)| {
                let coeff = if c.im == 0.0 {
                    format!("({})", fmt_num(c.re))
                } else {
                    let op = if c.im < 0.0 { '-' } else { '+' };
                    format!("({}{op}{}i)", fmt_num(c.re), fmt_num(c.im.abs()))
                };
                if e == 0.0 {
                    coeff
                } else if e.fract() == 0.0 && e > 0.0 {
                    format!("{coeff}X^{}", fmt_num(e))
                } else {
                    format!("{coeff}X^{{{}}}", fmt_num(e))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `(a/|a|)·e^r` for the leading term `a·X^r`; `w(0) = 0`.
pub fn w_map(p: &Polynomial) -> ComplexElem {
    match p.leading() {
        None => ComplexElem::ZERO,
        Some((r, a)) => ComplexElem::polar(r.exp(), a.arg()),
    }
}

/// The polynomial ring ℂ[X] (or ℂ[ℝ] with real exponents) with univalued
/// addition. Value sets are single polynomials.
#[derive(Debug, Clone, Copy, Default)]
pub struct PolyRing {
    pub real_exponents: bool,
}

const COEFFS: [(f64, f64); 6] = [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (2.0, 0.0), (1.0, 1.0), (0.0, -2.0)];

impl PolyRing {
    fn coeff(rng: &mut Rand) -> Complex64 {
        if rng.gen_bool(0.6) {
            let (re, im) = COEFFS[rng.gen_range(0..COEFFS.len())];
            Complex64::new(re, im)
        } else {
            Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
        }
    }

    fn exponent(&self, rng: &mut Rand) -> f64 {
        if self.real_exponents && rng.gen_bool(0.5) {
            (rng.gen_range(0.0..4.0) * 4.0f64).round() / 4.0
        } else {
            rng.gen_range(0..4) as f64
        }
    }

    pub fn random(&self, rng: &mut Rand) -> Polynomial {
        let n = rng.gen_range(1..4);
        Polynomial::new((0..n).map(|_| (self.exponent(rng), Self::coeff(rng))))
    }

    /// Random polynomial of exactly the given top exponent and leader.
    fn with_leader(&self, rng: &mut Rand, e: f64, lead: Complex64) -> Polynomial {
        let mut terms = vec![(e, lead)];
        for _ in 0..rng.gen_range(0..3) {
            let f = self.exponent(rng);
            if f < e {
                terms.push((f, Self::coeff(rng)));
            }
        }
        Polynomial::new(terms)
    }
}

impl Structure for PolyRing {
    type Elem = Polynomial;
    type Set = Polynomial;

    fn name(&self) -> String {
        if self.real_exponents { "C[R]" } else { "C[X]" }.into()
    }
    fn tolerance(&self) -> Tolerance {
        Tolerance::default()
    }
    fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }
    fn one(&self) -> Polynomial {
        Polynomial::monomial(Complex64::new(1.0, 0.0), 0.0)
    }
    fn neg(&self, a: &Polynomial) -> Polynomial {
        a.neg()
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul(b)
    }
    fn inv(&self, _a: &Polynomial) -> Option<Polynomial> {
        None
    }
    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.add(b)
    }
    fn add_sets(&self, s: &Polynomial, t: &Polynomial) -> Result<Polynomial> {
        Ok(s.add(t))
    }
    fn singleton(&self, a: &Polynomial) -> Polynomial {
        a.clone()
    }
    fn elem_eq(&self, a: &Polynomial, b: &Polynomial) -> bool {
        a.add(&b.neg()).terms.iter().all(|t| t.1.norm() <= 1e-9)
    }
    fn member(&self, x: &Polynomial, s: &Polynomial) -> bool {
        self.elem_eq(x, s)
    }
    fn subset(&self, s: &Polynomial, t: &Polynomial) -> bool {
        self.elem_eq(s, t)
    }
    fn union(&self, s: &Polynomial, _t: &Polynomial) -> Polynomial {
        s.clone()
    }
    fn scale_left(&self, a: &Polynomial, s: &Polynomial) -> Polynomial {
        a.mul(s)
    }
    fn carrier(&self) -> Carrier<Polynomial> {
        Carrier::Sampled
    }
    fn sample(&self, rng: &mut Rand) -> Polynomial {
        self.random(rng)
    }
    fn sample_members(&self, s: &Polynomial, _rng: &mut Rand, _extra: usize) -> Vec<Polynomial> {
        vec![s.clone()]
    }
    fn fmt_elem(&self, a: &Polynomial) -> String {
        a.to_string()
    }
    fn fmt_set(&self, s: &Polynomial) -> String {
        s.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<Polynomial> {
        Polynomial::parse(s)
    }
    fn parse_set(&self, s: &str) -> Result<Polynomial> {
        Polynomial::parse(s)
    }
}

/// Polynomial pairs in the three strata: generic, equal top exponent with
/// non-cancelling leaders, and cancelling leaders.
pub fn w_pairs(ring: &PolyRing, per_stratum: usize, seed: u64) -> Vec<(Polynomial, Polynomial)> {
    let mut rng = Rand::seed_from_u64(seed);
    let mut out = Vec::with_capacity(3 * per_stratum);
    for _ in 0..per_stratum {
        out.push((ring.random(&mut rng), ring.random(&mut rng)));
    }
    for _ in 0..per_stratum {
        let e = ring.exponent(&mut rng);
        let a = PolyRing::coeff(&mut rng);
        let mut b = PolyRing::coeff(&mut rng);
        if (a + b).norm() < 1e-6 {
            b = a;
        }
        out.push((ring.with_leader(&mut rng, e, a), ring.with_leader(&mut rng, e, b)));
    }
    for _ in 0..per_stratum {
        let e = ring.exponent(&mut rng);
        let a = PolyRing::coeff(&mut rng);
        out.push((ring.with_leader(&mut rng, e, a), ring.with_leader(&mut rng, e, -a)));
    }
    out
}

/// Check `w(p+q) ∈ w(p) ∔ w(q)` and `w(pq) = w(p)w(q)` over the three strata.
pub fn check_w_hom(per_stratum: usize, real_exponents: bool, opts: &CheckOptions) -> HomReport<Polynomial> {
    let ring = PolyRing { real_exponents };
    let tc = TropicalComplex::default();
    let pairs = w_pairs(&ring, per_stratum, opts.seed);
    let f = ElemMap::<PolyRing, TropicalComplex>::new("w", w_map);
    check_hom_pairs(&f, &ring, &tc, &pairs, None, opts.seed)
}

/// A polynomial in `nvars` variables over the carrier of a structure.
#[derive(Debug, Clone)]
pub struct HFPolynomial<E> {
    pub nvars: usize,
    /// `(coefficient, exponent per variable)`.
    pub terms: Vec<(E, Vec<u32>)>,
}

impl<E: Clone> HFPolynomial<E> {
    pub fn new(nvars: usize, terms: Vec<(E, Vec<u32>)>) -> Result<Self> {
        if terms.iter().any(|t| t.1.len() != nvars) {
            return Err(Error::Invalid("exponent vector length differs from variable count".into()));
        }
        Ok(HFPolynomial { nvars, terms })
    }

    /// One-variable polynomial from `(coefficient, exponent)` pairs.
    pub fn univariate(terms: Vec<(E, u32)>) -> Self {
        HFPolynomial { nvars: 1, terms: terms.into_iter().map(|(c, e)| (c, vec![e])).collect() }
    }

    /// Parse `c1 X^2 + c2 X + c3` with coefficients in the structure's element
    /// syntax; variables are `X`, `Y`, `Z`. Coefficients containing `+` must
    /// be parenthesized.
    pub fn parse<S: Structure<Elem = E> + ?Sized>(x: &S, s: &str) -> Result<Self> {
        const VARS: [char; 3] = ['X', 'Y', 'Z'];
        let mut raw = Vec::new();
        let mut nvars = 1;
        for term in split_top_level(s, '+') {
            let term = term.trim();
            let k = term.find(|c| VARS.contains(&c)).unwrap_or(term.len());
            let coeff = term[..k].trim().trim_end_matches('*').trim();
            let coeff = coeff.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(coeff);
            let c = if coeff.is_empty() { x.one() } else { x.parse_elem(coeff)? };
            let mut exps = [0u32; 3];
            let mut rest = term[k..].trim();
            while let Some(v) = rest.chars().next() {
                let idx = VARS
                    .iter()
                    .position(|&c| c == v)
                    .ok_or_else(|| Error::Parse(format!("bad monomial `{term}`")))?;
                nvars = nvars.max(idx + 1);
                rest = rest[v.len_utf8()..].trim_start();
                let mut e = 1;
                if let Some(r) = rest.strip_prefix('^') {
                    let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                    e = r[..end].parse().map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?;
                    rest = r[end..].trim_start();
                }
                rest = rest.trim_start_matches('*').trim_start();
                exps[idx] += e;
            }
            raw.push((c, exps));
        }
        Ok(HFPolynomial { nvars, terms: raw.into_iter().map(|(c, e)| (c, e[..nvars].to_vec())).collect() })
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Evaluate monomials univalently, then fold the set-extended sum from the
/// left in stored term order.
pub fn hf_poly_eval<S: Structure + ?Sized>(x: &S, p: &HFPolynomial<S::Elem>, point: &[S::Elem]) -> Result<S::Set> {
    if point.len() != p.nvars {
        return Err(Error::Invalid(format!("expected {} coordinates, got {}", p.nvars, point.len())));
    }
    let values: Vec<S::Elem> = p
        .terms
        .iter()
        .map(|(c, exps)| {
            let mut v = c.clone();
            for (xi, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    v = x.mul(&v, xi);
                }
            }
            v
        })
        .collect();
    sum_list(x, &values)
}

/// `0 ∈ p(point)`.
pub fn zero_set_member<S: Structure + ?Sized>(x: &S, p: &HFPolynomial<S::Elem>, point: &[S::Elem]) -> Result<bool> {
    Ok(x.member(&x.zero(), &hf_poly_eval(x, p, point)?))
}

/// One entry of the homomorphism catalogue.
#[derive(Debug, Clone, Copy)]
pub struct NamedHom {
    pub name: &'static str,
    pub domain: &'static str,
    pub codomain: &'static str,
    /// `false` for maps kept as counterexamples.
    pub expected: bool,
}

pub const HOMS: [NamedHom; 13] = [
    NamedHom { name: "sign", domain: "R", codomain: "S", expected: true },
    NamedHom { name: "sign-abs", domain: "S", codomain: "K", expected: true },
    NamedHom { name: "phase", domain: "C", codomain: "Phi", expected: true },
    NamedHom { name: "phase-tc", domain: "TC", codomain: "Phi", expected: true },
    NamedHom { name: "abs", domain: "C", codomain: "tri", expected: true },
    NamedHom { name: "abs-tc", domain: "TC", codomain: "tri", expected: true },
    NamedHom { name: "abs-ultra", domain: "TC", codomain: "ultra", expected: true },
    NamedHom { name: "log-abs", domain: "TC", codomain: "trop", expected: true },
    NamedHom { name: "log-abs-c", domain: "C", codomain: "amoeba", expected: true },
    NamedHom { name: "w", domain: "C[X]", codomain: "TC", expected: true },
    NamedHom { name: "w-real", domain: "C[R]", codomain: "TC", expected: true },
    NamedHom { name: "mono-tc", domain: "mono", codomain: "TC", expected: true },
    NamedHom { name: "abs-maxtimes", domain: "C", codomain: "max-times", expected: false },
];

/// The outcome of checking a catalogue map.
#[derive(Debug, Clone)]
pub struct HomSummary {
    pub hom: NamedHom,
    pub is_hom: bool,
    /// The first additive counterexample, if any.
    pub witness: Option<String>,
    pub text: String,
    pub json: String,
}

fn summarize<E>(hom: NamedHom, r: HomReport<E>) -> HomSummary {
    HomSummary {
        hom,
        is_hom: r.is_hom(),
        witness: r.verdict("additive").and_then(|v| v.witness_text.clone()),
        text: r.to_text(),
        json: r.to_json(),
    }
}

/// Check a map of [`HOMS`] by name. `per_stratum` sizes the w-map strata.
pub fn run_named_hom(name: &str, opts: &CheckOptions, per_stratum: usize) -> Result<HomSummary> {
    use crate::axioms::check_hom;
    use crate::ctrop::Phase;
    use crate::exotic::{to_tropical_complex, Monomial};
    use crate::finite::{make_krasner, make_sign, FiniteMultistructure};
    use crate::realhf::{Amoeba, MaxTimes, Triangle, Tropical, Ultra};

    let hom = *HOMS
        .iter()
        .find(|h| h.name == name)
        .ok_or_else(|| Error::Parse(format!("unknown map `{name}`")))?;
    let (c, tc) = (ComplexField::default(), TropicalComplex::default());
    Ok(match name {
        "sign" => {
            let s = make_sign();
            summarize(hom, check_hom(&ElemMap::<RealField, FiniteMultistructure>::new("sign", |x: &f64| sign_map(*x)), &RealField::default(), &s, opts))
        }
        "sign-abs" => {
            let f = ElemMap::<FiniteMultistructure, FiniteMultistructure>::new("abs", |i: &usize| usize::from(*i != 1));
            summarize(hom, check_hom(&f, &make_sign(), &make_krasner(), opts))
        }
        "phase" => summarize(hom, check_hom(&ElemMap::<_, Phase>::new("phase", phase_map), &c, &Phase::default(), opts)),
        "phase-tc" => summarize(hom, check_hom(&ElemMap::<_, Phase>::new("phase", phase_map), &tc, &Phase::default(), opts)),
        "abs" => summarize(hom, check_hom(&ElemMap::<_, Triangle>::new("abs", abs_map), &c, &Triangle::default(), opts)),
        "abs-tc" => summarize(hom, check_hom(&ElemMap::<_, Triangle>::new("abs", abs_map), &tc, &Triangle::default(), opts)),
        "abs-ultra" => summarize(hom, check_hom(&ElemMap::<_, Ultra>::new("abs", abs_map), &tc, &Ultra::default(), opts)),
        "log-abs" => summarize(hom, check_hom(&ElemMap::<_, Tropical>::new("log-abs", log_abs), &tc, &Tropical::default(), opts)),
        "log-abs-c" => summarize(hom, check_hom(&ElemMap::<_, Amoeba>::new("log-abs", log_abs), &c, &Amoeba::default(), opts)),
        "w" => summarize(hom, check_w_hom(per_stratum, false, opts)),
        "w-real" => summarize(hom, check_w_hom(per_stratum, true, opts)),
        "mono-tc" => {
            let f = ElemMap::<Monomial<f64>, TropicalComplex>::new("phase-exp", to_tropical_complex::<f64>);
            summarize(hom, check_hom(&f, &Monomial::<f64>::default(), &tc, opts))
        }
        "abs-maxtimes" => summarize(hom, check_hom(&ElemMap::<_, MaxTimes>::new("abs", abs_map), &c, &MaxTimes::default(), opts)),
        _ => unreachable!("catalogue and dispatch agree"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_hom;
    use crate::ctrop::Phase;
    use crate::realhf::{Amoeba, Triangle, Tropical, Ultra};
    use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4, PI};

    fn t() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn catalogue_verdicts_match_expectations() {
        let opts = CheckOptions::sampled(400, 11);
        for h in HOMS {
            let r = run_named_hom(h.name, &opts, 100).unwrap();
            assert_eq!(r.is_hom, h.expected, "{}: {}", h.name, r.text);
        }
        let r = run_named_hom("abs-maxtimes", &opts, 100).unwrap();
        assert!(r.text.contains("property=additive verdict=fail"));
        assert!(run_named_hom("nope", &opts, 1).is_err());
    }

    #[test]
    fn point_maps() {
        assert_eq!(sign_map(-3.0), 0);
        assert_eq!(sign_map(0.0), 1);
        assert_eq!(sign_map(7.0), 2);
        assert!(phase_map(&ComplexElem::polar(2.0, PI / 3.0)).close(&ComplexElem::unit(PI / 3.0), &t()));
        assert!(phase_map(&ComplexElem::real(-5.0)).close(&ComplexElem::unit(PI), &t()));
        assert_eq!(abs_map(&ComplexElem::from_cartesian(3.0, 4.0)), 5.0);
        assert_eq!(log_abs(&ComplexElem::ZERO), TropElem::NegInf);
    }

    #[test]
    fn w_values() {
        let p = Polynomial::parse("3X^2 + X").unwrap();
        assert!(w_map(&p).close(&ComplexElem::polar(E * E, 0.0), &t()));
        assert!(w_map(&Polynomial::zero()).is_zero());
        let q = Polynomial::parse("(-2i)X^{0.5}").unwrap();
        assert!(w_map(&q).close(&ComplexElem::polar(0.5f64.exp(), 3.0 * FRAC_PI_2), &t()));
        let s = Polynomial::parse("iX").unwrap().add(&Polynomial::parse("X").unwrap());
        assert!(w_map(&s).close(&ComplexElem::polar(E, FRAC_PI_4), &t()));
    }

    #[test]
    fn polynomial_parse_forms() {
        let p = Polynomial::parse("3X^2 + (1+2i)X - 5").unwrap();
        assert_eq!(p.terms().len(), 3);
        assert_eq!(p.leading().unwrap().0, 2.0);
        assert_eq!(p.terms()[0].1, Complex64::new(-5.0, 0.0));
    }

    #[test]
    fn w_is_a_homomorphism() {
        let r = check_w_hom(200, false, &CheckOptions::sampled(0, 4));
        assert!(r.is_hom(), "{}", r.to_text());
        let r = check_w_hom(200, true, &CheckOptions::sampled(0, 5));
        assert!(r.is_hom(), "{}", r.to_text());
    }

    #[test]
    fn modulus_maps() {
        let o = CheckOptions::sampled(300, 9);
        let c = ComplexField::default();
        let tc = TropicalComplex::default();
        assert!(check_hom(&ElemMap::<_, Triangle>::new("abs", abs_map), &c, &Triangle::default(), &o).is_hom());
        assert!(check_hom(&ElemMap::<_, Triangle>::new("abs", abs_map), &tc, &Triangle::default(), &o).is_hom());
        assert!(check_hom(&ElemMap::<_, Ultra>::new("abs", abs_map), &tc, &Ultra::default(), &o).is_hom());
        assert!(check_hom(&ElemMap::<_, Tropical>::new("log", log_abs), &tc, &Tropical::default(), &o).is_hom());
        assert!(check_hom(&ElemMap::<_, Amoeba>::new("log", log_abs), &c, &Amoeba::default(), &o).is_hom());
        assert!(check_hom(&ElemMap::<_, Phase>::new("phase", phase_map), &c, &Phase::default(), &o).is_hom());
        assert!(check_hom(&ElemMap::<_, Phase>::new("phase", phase_map), &tc, &Phase::default(), &o).is_hom());
    }

    #[test]
    fn poly_eval_over_tc() {
        let tc = TropicalComplex::default();
        let p = HFPolynomial::parse(&tc, "X^2 + 1").unwrap();
        let v = hf_poly_eval(&tc, &p, &[ComplexElem::unit(FRAC_PI_2)]).unwrap();
        assert!(v.set_eq(&CSet::disk(1.0), &t()));
        let q = HFPolynomial::parse(&tc, "X + 1").unwrap();
        assert!(zero_set_member(&tc, &q, &[ComplexElem::unit(PI)]).unwrap());
        assert!(!zero_set_member(&tc, &q, &[ComplexElem::polar(2.0, PI)]).unwrap());
        assert!(hf_poly_eval(&tc, &q, &[]).is_err());
    }

    #[test]
    fn poly_eval_over_triangle() {
        let tri = Triangle::default();
        let p = HFPolynomial::parse(&tri, "2X + 1").unwrap();
        assert_eq!(hf_poly_eval(&tri, &p, &[1.0]).unwrap(), RSet::interval(1.0, 3.0));
    }

    #[test]
    fn zero_set_is_closed_along_a_sequence() {
        // (1∠θ, 1∠(θ+π)) with θ = 1/k converges to (1, −1).
        let tc = TropicalComplex::default();
        let p = HFPolynomial::parse(&tc, "X + Y").unwrap();
        for k in 1..50 {
            let th = 1.0 / k as f64;
            assert!(zero_set_member(&tc, &p, &[ComplexElem::unit(th), ComplexElem::unit(th + PI)]).unwrap());
        }
        assert!(zero_set_member(&tc, &p, &[ComplexElem::ONE, ComplexElem::unit(PI)]).unwrap());
    }
}
