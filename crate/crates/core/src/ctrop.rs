//! The complex tropical hyperfield and its relatives: the real tropical
//! hyperfield, the phase hyperfield and tropical addition of quaternions.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use rand::Rng;

use crate::error::{Error, Result};
use crate::sets::complex::{angle_in, Comp};
use crate::sets::interval::Interval;
use crate::sets::quat::{min_norm_in_hull, QComp};
use crate::sets::{fmt_num, CSet, ComplexElem, QSet, QuatElem, RSet};
use crate::structure::{Carrier, Rand, Structure};
use crate::tol::{wrap_signed, Tolerance};

/// Tropical sum of two complex numbers: the dominant summand, the shortest
/// arc between equal-modulus summands, or the closed disk for opposite ones.
pub fn ct_add(a: &ComplexElem, b: &ComplexElem, tol: &Tolerance) -> CSet {
    let c = comp_sum(elem_comp(a), elem_comp(b), tol);
    CSet::from_comps(vec![c], tol).expect("sum of two points")
}

fn elem_comp(a: &ComplexElem) -> Comp {
    if a.is_zero() {
        Comp::Origin
    } else {
        Comp::Circ { r: a.modulus(), start: a.argument(), sweep: 0.0 }
    }
}

fn arcs_meet(s1: f64, w1: f64, s2: f64, w2: f64, eps: f64) -> bool {
    angle_in(s2, s1, w1, eps) || angle_in(s1, s2, w2, eps)
}

/// Sum of two connected components. The result is again one component.
fn comp_sum(p: Comp, q: Comp, tol: &Tolerance) -> Comp {
    match (p, q) {
        (Comp::Origin, x) | (x, Comp::Origin) => x,
        (Comp::Disk(r), Comp::Disk(s)) => Comp::Disk(r.max(s)),
        (Comp::Disk(d), c @ Comp::Circ { r, .. }) | (c @ Comp::Circ { r, .. }, Comp::Disk(d)) => {
            if tol.le(r, d) {
                Comp::Disk(d)
            } else {
                c
            }
        }
        (Comp::Circ { r: r1, start: s1, sweep: w1 }, Comp::Circ { r: r2, start: s2, sweep: w2 }) => {
            if !tol.close(r1, r2) {
                return if r1 > r2 { p } else { q };
            }
            let r = r1.max(r2);
            if arcs_meet(s1, w1, s2 + PI, w2, tol.eps) {
                return Comp::Disk(r);
            }
            // No opposite pair: every shortest arc stays in an open half
            // circle, so the union is one arc once J is lifted next to I.
            let d = wrap_signed(s2 - s1);
            let lo = d.min(0.0);
            let hi = w1.max(d + w2);
            Comp::Circ { r, start: s1 + lo, sweep: hi - lo }
        }
    }
}

/// Set-extended tropical sum, computed componentwise in closed form.
pub fn ct_add_sets(s: &CSet, t: &CSet, tol: &Tolerance) -> Result<CSet> {
    let mut out = Vec::new();
    for p in s.comps() {
        for q in t.comps() {
            out.push(comp_sum(p, q, tol));
        }
    }
    CSet::from_comps(out, tol)
}

fn max_modulus_args(values: &[ComplexElem], tol: &Tolerance) -> (f64, Vec<f64>) {
    let m = values.iter().map(|v| v.modulus()).fold(0.0, f64::max);
    let args = values
        .iter()
        .filter(|v| !v.is_zero() && tol.close(v.modulus(), m))
        .map(|v| v.argument())
        .collect();
    (m, args)
}

/// Largest cyclic gap between sorted angles and the angle following it.
fn largest_gap(args: &[f64]) -> (f64, f64) {
    let mut a: Vec<f64> = args.to_vec();
    a.sort_by(f64::total_cmp);
    let n = a.len();
    let mut best = (a[0] + TAU - a[n - 1], a[0]);
    for i in 1..n {
        let g = a[i] - a[i - 1];
        if g > best.0 {
            best = (g, a[i]);
        }
    }
    best
}

/// Whether 0 lies in the convex hull of the maximal-modulus summands. The
/// hull of unit directions contains 0 exactly when no open half plane holds
/// them all, i.e. when every angular gap is at most π.
pub fn zero_in_sum(values: &[ComplexElem], tol: &Tolerance) -> bool {
    let (m, args) = max_modulus_args(values, tol);
    if m == 0.0 || args.is_empty() {
        return true;
    }
    largest_gap(&args).0 <= PI + tol.eps
}

/// The n-ary sum: only maximal-modulus summands contribute. The result is
/// the disk when 0 is in their convex hull, otherwise the arc they span.
pub fn ct_sum_n(values: &[ComplexElem], tol: &Tolerance) -> Result<CSet> {
    if values.is_empty() {
        return Err(Error::Invalid("empty list of summands".into()));
    }
    let (m, args) = max_modulus_args(values, tol);
    if m == 0.0 || args.is_empty() {
        return Ok(CSet::zero());
    }
    if zero_in_sum(values, tol) {
        return Ok(CSet::disk(m));
    }
    let (gap, start) = largest_gap(&args);
    let sweep = TAU - gap;
    if sweep <= tol.eps {
        Ok(CSet::point(ComplexElem::polar(m, start)))
    } else {
        CSet::arc(m, start, sweep)
    }
}

const MODULI: [f64; 4] = [0.5, 1.0, 1.0, 2.0];
const ANGLES: [f64; 8] = [0.0, FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, PI, 5.0 * FRAC_PI_4, 3.0 * FRAC_PI_2, PI / 3.0];

fn sample_angle(rng: &mut Rand) -> f64 {
    if rng.gen_bool(0.6) {
        ANGLES[rng.gen_range(0..ANGLES.len())]
    } else {
        rng.gen::<f64>() * TAU
    }
}

fn sample_complex(rng: &mut Rand) -> ComplexElem {
    let m = if rng.gen_bool(0.75) { MODULI[rng.gen_range(0..MODULI.len())] } else { rng.gen_range(0.1..3.0) };
    ComplexElem::polar(m, sample_angle(rng))
}

fn related_complex(x: &ComplexElem, rng: &mut Rand) -> ComplexElem {
    if x.is_zero() {
        return sample_complex(rng);
    }
    let (m, t) = (x.modulus(), x.argument());
    match rng.gen_range(0..6) {
        0 => x.neg(),
        1 => ComplexElem::polar(m, t + FRAC_PI_2),
        2 => ComplexElem::polar(m, t + rng.gen_range(-1.0..1.0)),
        3 => ComplexElem::polar(m, t + PI + rng.gen_range(-0.5..0.5)),
        4 => ComplexElem::polar(m, sample_angle(rng)),
        _ => ComplexElem::polar(MODULI[rng.gen_range(0..MODULI.len())], t),
    }
}

fn complex_branch(a: &ComplexElem, b: &ComplexElem, tol: &Tolerance) -> &'static str {
    if a.is_zero() || b.is_zero() {
        "zero"
    } else if !tol.close(a.modulus(), b.modulus()) {
        "dominant"
    } else if crate::sets::complex::antipodal(a.argument(), b.argument(), tol.eps) {
        "antipodal"
    } else if tol.angle_close(a.argument(), b.argument()) {
        "equal"
    } else {
        "arc"
    }
}

fn c(x: f64, y: f64) -> ComplexElem {
    ComplexElem::from_cartesian(x, y)
}

/// The complex tropical hyperfield 𝕋ℂ.
#[derive(Debug, Clone, Copy, Default)]
pub struct TropicalComplex {
    pub tol: Tolerance,
}

impl TropicalComplex {
    pub fn new(tol: Tolerance) -> Self {
        TropicalComplex { tol }
    }
}

impl Structure for TropicalComplex {
    type Elem = ComplexElem;
    type Set = CSet;

    fn name(&self) -> String {
        "TC".into()
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
        ct_add(a, b, &self.tol)
    }
    fn add_sets(&self, s: &CSet, t: &CSet) -> Result<CSet> {
        ct_add_sets(s, t, &self.tol)
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
    fn mul_sets(&self, s: &CSet, t: &CSet) -> Option<CSet> {
        Some(s.product(t, &self.tol))
    }
    fn carrier(&self) -> Carrier<ComplexElem> {
        Carrier::Sampled
    }
    fn sample(&self, rng: &mut Rand) -> ComplexElem {
        sample_complex(rng)
    }
    fn related(&self, x: &ComplexElem, rng: &mut Rand) -> ComplexElem {
        related_complex(x, rng)
    }
    fn sample_members(&self, s: &CSet, rng: &mut Rand, extra: usize) -> Vec<ComplexElem> {
        s.sample_points(rng, extra)
    }
    fn branch(&self, a: &ComplexElem, b: &ComplexElem) -> &'static str {
        complex_branch(a, b, &self.tol)
    }
    fn branches(&self) -> &'static [&'static str] {
        &["zero", "dominant", "antipodal", "equal", "arc"]
    }
    fn probes(&self) -> Vec<Vec<ComplexElem>> {
        vec![
            vec![c(1.0, 0.0), c(0.0, 1.0), c(1.0, 0.0), c(0.0, -1.0)],
            vec![c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
            vec![c(0.0, 1.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, -1.0)],
            vec![c(-1.0, 0.0), c(0.0, 1.0), c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)],
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

/// Tropical sum in 𝕋ℝ: the dominant summand, `{a}` for `a = b`, and
/// `[-|a|, |a|]` for `a = -b`.
pub fn rt_add(a: f64, b: f64, tol: &Tolerance) -> RSet {
    if tol.close(a.abs(), b.abs()) {
        if tol.close(a, b) {
            RSet::point(a)
        } else {
            RSet::interval(-a.abs(), a.abs())
        }
    } else if a.abs() > b.abs() {
        RSet::point(a)
    } else {
        RSet::point(b)
    }
}

fn min_abs(s: &RSet) -> f64 {
    s.parts()
        .iter()
        .map(|iv| if iv.lo <= 0.0 && iv.hi >= 0.0 { 0.0 } else { iv.lo.abs().min(iv.hi.abs()) })
        .fold(f64::INFINITY, f64::min)
}

fn intersect(s: &RSet, t: &RSet, tol: &Tolerance) -> Vec<Interval<f64>> {
    let mut out = Vec::new();
    for i in s.parts() {
        for j in t.parts() {
            let lo = i.lo.max(j.lo);
            let hi = i.hi.min(j.hi);
            if tol.le(lo, hi) {
                out.push(Interval { lo, hi: hi.max(lo) });
            }
        }
    }
    out
}

/// The part of `s` strictly farther from 0 than `m`, closed up.
fn beyond(s: &RSet, m: f64, tol: &Tolerance) -> Vec<Interval<f64>> {
    let mut out = Vec::new();
    for iv in s.parts() {
        if iv.hi > m + tol.slack(iv.hi, m) {
            out.push(Interval { lo: iv.lo.max(m), hi: iv.hi });
        }
        if iv.lo < -m - tol.slack(iv.lo, m) {
            out.push(Interval { lo: iv.lo, hi: iv.hi.min(-m) });
        }
    }
    out
}

/// Set-extended sum in 𝕋ℝ.
pub fn rt_add_sets(s: &RSet, t: &RSet, tol: &Tolerance) -> Result<RSet> {
    let mut out = beyond(s, min_abs(t), tol);
    out.extend(beyond(t, min_abs(s), tol));
    out.extend(intersect(s, t, tol));
    let neg_t = RSet::from_intervals(
        t.parts().iter().map(|iv| Interval { lo: -iv.hi, hi: -iv.lo }).collect(),
        tol,
    )?;
    let r = intersect(s, &neg_t, tol)
        .iter()
        .map(|iv| iv.lo.abs().max(iv.hi.abs()))
        .fold(f64::NEG_INFINITY, f64::max);
    if r >= 0.0 {
        out.push(Interval { lo: -r, hi: r });
    }
    RSet::from_intervals(out, tol)
}

fn scale_rset(a: f64, s: &RSet, tol: &Tolerance) -> RSet {
    RSet::from_intervals(
        s.parts()
            .iter()
            .map(|iv| {
                let (x, y) = (a * iv.lo, a * iv.hi);
                Interval { lo: x.min(y), hi: x.max(y) }
            })
            .collect(),
        tol,
    )
    .expect("scaled intervals")
}

/// The real tropical hyperfield 𝕋ℝ.
#[derive(Debug, Clone, Copy, Default)]
pub struct TropicalReal {
    pub tol: Tolerance,
}

const REALS: [f64; 8] = [1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 3.0, -3.0];

impl Structure for TropicalReal {
    type Elem = f64;
    type Set = RSet;

    fn name(&self) -> String {
        "TR".into()
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
        rt_add(*a, *b, &self.tol)
    }
    fn add_sets(&self, s: &RSet, t: &RSet) -> Result<RSet> {
        rt_add_sets(s, t, &self.tol)
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
        scale_rset(*a, s, &self.tol)
    }
    fn mul_sets(&self, s: &RSet, t: &RSet) -> Option<RSet> {
        let mut out = Vec::new();
        for i in s.parts() {
            for j in t.parts() {
                let p = [i.lo * j.lo, i.lo * j.hi, i.hi * j.lo, i.hi * j.hi];
                let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                out.push(Interval { lo, hi });
            }
        }
        RSet::from_intervals(out, &self.tol).ok()
    }
    fn carrier(&self) -> Carrier<f64> {
        Carrier::Sampled
    }
    fn sample(&self, rng: &mut Rand) -> f64 {
        if rng.gen_bool(0.7) {
            REALS[rng.gen_range(0..REALS.len())]
        } else {
            rng.gen_range(-3.0..3.0)
        }
    }
    fn related(&self, x: &f64, rng: &mut Rand) -> f64 {
        match rng.gen_range(0..3) {
            0 => -x,
            1 => *x,
            _ => x * rng.gen_range(0.3..1.5),
        }
    }
    fn sample_members(&self, s: &RSet, rng: &mut Rand, extra: usize) -> Vec<f64> {
        interval_members(s, rng, extra)
    }
    fn branch(&self, a: &f64, b: &f64) -> &'static str {
        if *a == 0.0 || *b == 0.0 {
            "zero"
        } else if !self.tol.close(a.abs(), b.abs()) {
            "dominant"
        } else if self.tol.close(*a, *b) {
            "equal"
        } else {
            "opposite"
        }
    }
    fn branches(&self) -> &'static [&'static str] {
        &["zero", "dominant", "equal", "opposite"]
    }
    fn probes(&self) -> Vec<Vec<f64>> {
        vec![vec![1.0, -1.0, 1.0, -1.0], vec![2.0, -2.0, 1.0, 1.0], vec![1.0, 1.0, -1.0, 2.0]]
    }
    fn fmt_elem(&self, a: &f64) -> String {
        fmt_num(*a)
    }
    fn fmt_set(&self, s: &RSet) -> String {
        s.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<f64> {
        crate::sets::parse_num(s)
    }
    fn parse_set(&self, s: &str) -> Result<RSet> {
        RSet::parse(s, &self.tol)
    }
}

/// Endpoints, midpoints and `extra` random points of each interval.
pub(crate) fn interval_members(s: &RSet, rng: &mut Rand, extra: usize) -> Vec<f64> {
    let mut out = Vec::new();
    for iv in s.parts() {
        out.push(iv.lo);
        if !iv.is_point() {
            out.push(iv.hi);
            out.push((iv.lo + iv.hi) / 2.0);
            if iv.lo < 0.0 && iv.hi > 0.0 {
                out.push(0.0);
            }
            for _ in 0..extra {
                out.push(rng.gen_range(iv.lo..=iv.hi));
            }
        }
    }
    out
}

fn phase_restrict(s: &CSet, tol: &Tolerance) -> CSet {
    let mut out = Vec::new();
    for c in s.comps() {
        match c {
            Comp::Origin => out.push(Comp::Origin),
            Comp::Circ { r, start, sweep } => {
                if tol.close(r, 1.0) {
                    out.push(Comp::Circ { r: 1.0, start, sweep });
                }
            }
            Comp::Disk(r) => {
                out.push(Comp::Origin);
                if tol.le(1.0, r) {
                    out.push(Comp::Circ { r: 1.0, start: 0.0, sweep: TAU });
                }
            }
        }
    }
    CSet::from_comps(out, tol).expect("restriction to the phase carrier")
}

/// Sum in the phase hyperfield Φ = unit circle ∪ {0}: the 𝕋ℂ sum intersected
/// with the carrier.
pub fn phase_add(a: &ComplexElem, b: &ComplexElem, tol: &Tolerance) -> Result<CSet> {
    for z in [a, b] {
        if !z.is_zero() && !tol.close(z.modulus(), 1.0) {
            return Err(Error::Domain(format!("{z} is not in the phase carrier")));
        }
    }
    Ok(phase_restrict(&ct_add(a, b, tol), tol))
}

/// The phase hyperfield Φ.
#[derive(Debug, Clone, Copy, Default)]
pub struct Phase {
    pub tol: Tolerance,
}

impl Structure for Phase {
    type Elem = ComplexElem;
    type Set = CSet;

    fn name(&self) -> String {
        "Phi".into()
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
        a.mul(b).phase()
    }
    fn inv(&self, a: &ComplexElem) -> Option<ComplexElem> {
        a.inv()
    }
    fn add(&self, a: &ComplexElem, b: &ComplexElem) -> CSet {
        phase_restrict(&ct_add(a, b, &self.tol), &self.tol)
    }
    fn add_sets(&self, s: &CSet, t: &CSet) -> Result<CSet> {
        Ok(phase_restrict(&ct_add_sets(s, t, &self.tol)?, &self.tol))
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
    fn mul_sets(&self, s: &CSet, t: &CSet) -> Option<CSet> {
        Some(s.product(t, &self.tol))
    }
    fn carrier(&self) -> Carrier<ComplexElem> {
        Carrier::Sampled
    }
    fn sample(&self, rng: &mut Rand) -> ComplexElem {
        ComplexElem::unit(sample_angle(rng))
    }
    fn related(&self, x: &ComplexElem, rng: &mut Rand) -> ComplexElem {
        related_complex(x, rng).phase()
    }
    fn sample_members(&self, s: &CSet, rng: &mut Rand, extra: usize) -> Vec<ComplexElem> {
        s.sample_points(rng, extra)
    }
    fn branch(&self, a: &ComplexElem, b: &ComplexElem) -> &'static str {
        complex_branch(a, b, &self.tol)
    }
    fn branches(&self) -> &'static [&'static str] {
        &["zero", "antipodal", "equal", "arc"]
    }
    fn probes(&self) -> Vec<Vec<ComplexElem>> {
        TropicalComplex::new(self.tol).probes().into_iter().take(4).collect()
    }
    fn fmt_elem(&self, a: &ComplexElem) -> String {
        a.to_string()
    }
    fn fmt_set(&self, s: &CSet) -> String {
        s.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<ComplexElem> {
        let z: ComplexElem = s.parse()?;
        if !z.is_zero() && !self.tol.close(z.modulus(), 1.0) {
            return Err(Error::Domain(format!("{z} is not in the phase carrier")));
        }
        Ok(z)
    }
    fn parse_set(&self, s: &str) -> Result<CSet> {
        CSet::parse(s, &self.tol)
    }
}

/// Tropical sum of quaternions: dominant norm, minor geodesic arc on the
/// 3-sphere for equal norms, the ball for opposite summands.
pub fn quat_add(a: &QuatElem, b: &QuatElem, tol: &Tolerance) -> QSet {
    let c = qcomp_sum(&quat_comp(a), &quat_comp(b), tol);
    QSet::from_comps(vec![c], tol).expect("sum of two points")
}

fn quat_comp(a: &QuatElem) -> QComp {
    if a.is_zero() {
        QComp::Origin
    } else {
        QComp::Hull { r: a.norm(), verts: vec![a.unit().0] }
    }
}

/// Two hulls of equal radius sum to the hull of all vertices, or to the ball
/// when that hull meets an opposite pair (0 in the convex hull).
fn qcomp_sum(p: &QComp, q: &QComp, tol: &Tolerance) -> QComp {
    match (p, q) {
        (QComp::Origin, x) | (x, QComp::Origin) => x.clone(),
        (QComp::Ball(r), QComp::Ball(s)) => QComp::Ball(r.max(*s)),
        (QComp::Ball(d), h @ QComp::Hull { r, .. }) | (h @ QComp::Hull { r, .. }, QComp::Ball(d)) => {
            if tol.le(*r, *d) {
                QComp::Ball(*d)
            } else {
                h.clone()
            }
        }
        (QComp::Hull { r: r1, verts: v1 }, QComp::Hull { r: r2, verts: v2 }) => {
            if !tol.close(*r1, *r2) {
                return if r1 > r2 { p.clone() } else { q.clone() };
            }
            let mut all = v1.clone();
            all.extend(v2.iter().copied());
            let r = r1.max(*r2);
            if min_norm_in_hull(&all) <= tol.eps / 2.0 {
                QComp::Ball(r)
            } else {
                QComp::Hull { r, verts: all }
            }
        }
    }
}

pub fn quat_add_sets(s: &QSet, t: &QSet, tol: &Tolerance) -> Result<QSet> {
    let mut out = Vec::new();
    for p in s.comps() {
        for q in t.comps() {
            out.push(qcomp_sum(&p, &q, tol));
        }
    }
    QSet::from_comps(out, tol)
}

/// Quaternions with tropical addition: a skew hyperfield (multiplication is
/// not commutative).
#[derive(Debug, Clone, Copy, Default)]
pub struct TropicalQuaternion {
    pub tol: Tolerance,
}

const QUAT_POOL: [[f64; 4]; 8] = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
    [0.0, 0.0, -1.0, 0.0],
    [0.5, 0.5, 0.5, 0.5],
];

impl TropicalQuaternion {
    fn sample_q(rng: &mut Rand) -> QuatElem {
        let m = if rng.gen_bool(0.75) { MODULI[rng.gen_range(0..MODULI.len())] } else { rng.gen_range(0.1..3.0) };
        let dir = if rng.gen_bool(0.6) {
            QUAT_POOL[rng.gen_range(0..QUAT_POOL.len())]
        } else {
            crate::sets::quat::random_unit(rng)
        };
        QuatElem(dir).scale(m)
    }
}

impl Structure for TropicalQuaternion {
    type Elem = QuatElem;
    type Set = QSet;

    fn name(&self) -> String {
        "quat".into()
    }
    fn tolerance(&self) -> Tolerance {
        self.tol
    }
    fn zero(&self) -> QuatElem {
        QuatElem::ZERO
    }
    fn one(&self) -> QuatElem {
        QuatElem::ONE
    }
    fn neg(&self, a: &QuatElem) -> QuatElem {
        a.neg()
    }
    fn mul(&self, a: &QuatElem, b: &QuatElem) -> QuatElem {
        a.mul(b)
    }
    fn inv(&self, a: &QuatElem) -> Option<QuatElem> {
        a.inv()
    }
    fn add(&self, a: &QuatElem, b: &QuatElem) -> QSet {
        quat_add(a, b, &self.tol)
    }
    fn add_sets(&self, s: &QSet, t: &QSet) -> Result<QSet> {
        quat_add_sets(s, t, &self.tol)
    }
    fn singleton(&self, a: &QuatElem) -> QSet {
        QSet::point(*a)
    }
    fn elem_eq(&self, a: &QuatElem, b: &QuatElem) -> bool {
        a.close(b, &self.tol)
    }
    fn member(&self, x: &QuatElem, s: &QSet) -> bool {
        s.member(x, &self.tol)
    }
    fn subset(&self, s: &QSet, t: &QSet) -> bool {
        s.subset(t, &self.tol)
    }
    fn union(&self, s: &QSet, t: &QSet) -> QSet {
        s.union(t, &self.tol)
    }
    fn scale_left(&self, a: &QuatElem, s: &QSet) -> QSet {
        s.scale(a, true, &self.tol)
    }
    fn scale_right(&self, s: &QSet, a: &QuatElem) -> QSet {
        s.scale(a, false, &self.tol)
    }
    fn mul_sets(&self, s: &QSet, t: &QSet) -> Option<QSet> {
        s.product(t, &self.tol)
    }
    fn carrier(&self) -> Carrier<QuatElem> {
        Carrier::Sampled
    }
    fn sample(&self, rng: &mut Rand) -> QuatElem {
        Self::sample_q(rng)
    }
    fn related(&self, x: &QuatElem, rng: &mut Rand) -> QuatElem {
        if x.is_zero() {
            return Self::sample_q(rng);
        }
        let n = x.norm();
        match rng.gen_range(0..5) {
            0 => x.neg(),
            1 => QuatElem(crate::sets::quat::random_unit(rng)).scale(n),
            2 => QuatElem(QUAT_POOL[rng.gen_range(0..QUAT_POOL.len())]).unit().scale(n),
            3 => {
                let u = x.unit();
                let v = QuatElem(crate::sets::quat::random_unit(rng)).scale(0.4);
                u.add(&v).unit().scale(n)
            }
            _ => x.unit().scale(MODULI[rng.gen_range(0..MODULI.len())]),
        }
    }
    fn sample_members(&self, s: &QSet, rng: &mut Rand, extra: usize) -> Vec<QuatElem> {
        s.sample_points(rng, extra)
    }
    fn branch(&self, a: &QuatElem, b: &QuatElem) -> &'static str {
        if a.is_zero() || b.is_zero() {
            "zero"
        } else if !self.tol.close(a.norm(), b.norm()) {
            "dominant"
        } else if a.add(b).norm() <= self.tol.eps * a.norm().max(1.0) {
            "antipodal"
        } else if a.close(b, &self.tol) {
            "equal"
        } else {
            "arc"
        }
    }
    fn branches(&self) -> &'static [&'static str] {
        &["zero", "dominant", "antipodal", "equal", "arc"]
    }
    fn probes(&self) -> Vec<Vec<QuatElem>> {
        vec![
            vec![QuatElem::I, QuatElem::J, QuatElem::K, QuatElem::ONE],
            vec![QuatElem::ONE, QuatElem::I, QuatElem::ONE, QuatElem::I.neg()],
            vec![QuatElem::I, QuatElem::I.neg(), QuatElem::J, QuatElem::K],
        ]
    }
    fn fmt_elem(&self, a: &QuatElem) -> String {
        a.to_string()
    }
    fn fmt_set(&self, s: &QSet) -> String {
        s.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<QuatElem> {
        s.parse()
    }
    fn parse_set(&self, s: &str) -> Result<QSet> {
        QSet::parse(s, &self.tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_double_distributivity, check_multiring, CheckOptions, Level};
    use proptest::prelude::*;

    fn t() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn dominant_modulus() {
        let s = ct_add(&ComplexElem::polar(2.0, 0.0), &ComplexElem::unit(FRAC_PI_2), &t());
        assert!(s.set_eq(&CSet::point(ComplexElem::polar(2.0, 0.0)), &t()));
    }

    #[test]
    fn quarter_arc_and_disk() {
        let s = ct_add(&ComplexElem::ONE, &ComplexElem::unit(FRAC_PI_2), &t());
        assert_eq!(s.to_string(), "arc r=1 from=0 sweep=1.5707963268");
        let d = ct_add(&ComplexElem::ONE, &ComplexElem::unit(PI), &t());
        assert!(d.set_eq(&CSet::disk(1.0), &t()));
    }

    #[test]
    fn arc_plus_point_cases() {
        let arc = CSet::arc(1.0, 0.0, FRAC_PI_2).unwrap();
        let small = CSet::point(ComplexElem::polar(0.5, 2.0));
        assert!(ct_add_sets(&arc, &small, &t()).unwrap().set_eq(&arc, &t()));
        let inside = CSet::point(ComplexElem::polar(0.5, 1.0));
        assert!(ct_add_sets(&CSet::disk(1.0), &inside, &t()).unwrap().set_eq(&CSet::disk(1.0), &t()));
        let opposite = CSet::point(ComplexElem::unit(PI + 0.3));
        assert!(ct_add_sets(&arc, &opposite, &t()).unwrap().set_eq(&CSet::disk(1.0), &t()));
    }

    #[test]
    fn n_ary_sums() {
        let one = ComplexElem::ONE;
        let i = ComplexElem::unit(FRAC_PI_2);
        let mi = ComplexElem::unit(3.0 * FRAC_PI_2);
        assert!(ct_sum_n(&[one, i, mi, one], &t()).unwrap().set_eq(&CSet::disk(1.0), &t()));
        let tiny = ComplexElem::polar(1e-3, 2.0);
        assert!(ct_sum_n(&[one, i, tiny], &t())
            .unwrap()
            .set_eq(&CSet::arc(1.0, 0.0, FRAC_PI_2).unwrap(), &t()));
        let roots: Vec<_> = (0..3).map(|k| ComplexElem::unit(k as f64 * TAU / 3.0)).collect();
        assert!(zero_in_sum(&roots, &t()));
        assert!(!zero_in_sum(&[one, i], &t()));
        assert!(zero_in_sum(&[one, one.neg()], &t()));
    }

    #[test]
    fn real_tropical_table() {
        assert!(rt_add(3.0, -2.0, &t()).set_eq(&RSet::point(3.0), &t()));
        assert!(rt_add(1.5, 1.5, &t()).set_eq(&RSet::point(1.5), &t()));
        assert!(rt_add(2.0, -2.0, &t()).set_eq(&RSet::interval(-2.0, 2.0), &t()));
    }

    #[test]
    fn phase_sums() {
        let s = phase_add(&ComplexElem::ONE, &ComplexElem::unit(PI), &t()).unwrap();
        assert!(s.member(&ComplexElem::ZERO, &t()));
        assert!(s.member(&ComplexElem::unit(2.0), &t()));
        assert!(!s.member(&ComplexElem::polar(0.5, 0.0), &t()));
        assert!(phase_add(&ComplexElem::polar(2.0, 0.0), &ComplexElem::ONE, &t()).is_err());
    }

    #[test]
    fn quaternion_sums() {
        let s = quat_add(&QuatElem::I, &QuatElem::J, &t());
        let mid = QuatElem::new(0.0, 1.0, 1.0, 0.0).unit();
        assert!(s.member(&mid, &t()));
        assert!(!s.member(&QuatElem::K, &t()));
        assert!(quat_add(&QuatElem::I, &QuatElem::I.neg(), &t()).set_eq(&QSet::ball(1.0), &t()));
        let two = QuatElem::ONE.scale(2.0);
        assert!(quat_add(&two, &QuatElem::I, &t()).set_eq(&QSet::point(two), &t()));
    }

    #[test]
    fn tc_hyperfield_small_budget() {
        let r = check_multiring(&TropicalComplex::default(), Level::Hyperfield, &CheckOptions::sampled(300, 1));
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn tr_doubly_distributive() {
        let r = check_double_distributivity(&TropicalReal::default(), &CheckOptions::sampled(500, 2)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    fn arb_elem() -> impl Strategy<Value = ComplexElem> {
        (prop::sample::select(vec![0.0, 0.5, 1.0, 2.0]), prop::sample::select(ANGLES.to_vec()), 0.0..TAU, any::<bool>())
            .prop_map(|(m, a, r, pool)| ComplexElem::polar(m, if pool { a } else { r }))
    }

    proptest! {
        #[test]
        fn associative(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            let l = ct_add_sets(&ct_add(&a, &b, &t()), &CSet::point(c), &t()).unwrap();
            let r = ct_add_sets(&CSet::point(a), &ct_add(&b, &c, &t()), &t()).unwrap();
            prop_assert!(l.set_eq(&r, &t()), "{l} vs {r}");
        }

        #[test]
        fn distributive(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            let l = ct_add(&b, &c, &t()).scale(&a, &t());
            let r = ct_add(&a.mul(&b), &a.mul(&c), &t());
            prop_assert!(l.set_eq(&r, &t()));
        }

        #[test]
        fn unique_negative(a in arb_elem(), x in arb_elem()) {
            let has_zero = ct_add(&a, &x, &t()).member(&ComplexElem::ZERO, &t());
            prop_assert_eq!(has_zero, x.close(&a.neg(), &t()));
        }

        #[test]
        fn max_on_nonnegative_reals(a in 0.0f64..5.0, b in 0.0f64..5.0) {
            let s = ct_add(&ComplexElem::real(a), &ComplexElem::real(b), &t());
            prop_assert!(s.set_eq(&CSet::point(ComplexElem::real(a.max(b))), &t()));
        }

        #[test]
        fn zero_in_sum_matches_membership(v in prop::collection::vec(arb_elem(), 1..6)) {
            let s = ct_sum_n(&v, &t()).unwrap();
            prop_assert_eq!(zero_in_sum(&v, &t()), s.member(&ComplexElem::ZERO, &t()));
        }

        #[test]
        fn quaternion_agrees_on_complex_plane(a in arb_elem(), b in arb_elem()) {
            let q = |z: &ComplexElem| { let w = z.to_c64(); QuatElem::new(w.re, w.im, 0.0, 0.0) };
            let cs = ct_add(&a, &b, &t());
            let qs = quat_add(&q(&a), &q(&b), &t());
            let mut rng = crate::axioms::rng(7);
            for p in cs.sample_points(&mut rng, 3) {
                prop_assert!(qs.member(&q(&p), &t()));
            }
        }
    }
}
