//! Hyperfields on ℝ₊ and ℝ ∪ {−∞}: triangle, ultratriangle, tropical and
//! amoeba, plus seminorm checks.

use rand::Rng;

use crate::axioms::{check_hom, CheckOptions, ElemMap, HomReport};
use crate::error::{Error, Result};
use crate::sets::interval::{Endpoint, Interval};
use crate::sets::{fmt_num, parse_num, RSet, TSet, TropElem};
use crate::structure::{Carrier, Rand, Structure};
use crate::tol::Tolerance;

fn check_nonneg(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{x} is not a nonnegative real")))
    }
}

/// `[|a−b|, a+b]`: the lengths completing a triangle with sides `a`, `b`.
pub fn tri_add(a: f64, b: f64) -> Result<RSet> {
    check_nonneg(a)?;
    check_nonneg(b)?;
    Ok(RSet::interval((a - b).abs(), a + b))
}

/// `[max(0, 2·max − Σ), Σ]`, the closed polygon condition.
pub fn tri_sum_n(values: &[f64]) -> Result<RSet> {
    if values.is_empty() {
        return Err(Error::Invalid("empty list of summands".into()));
    }
    for &v in values {
        check_nonneg(v)?;
    }
    let total: f64 = values.iter().sum();
    let m = values.iter().copied().fold(0.0, f64::max);
    Ok(RSet::interval((2.0 * m - total).max(0.0), total))
}

/// `{max(a,b)}` for `a ≠ b`, `[0, a]` for `a = b`.
pub fn ultra_add(a: f64, b: f64, tol: &Tolerance) -> Result<RSet> {
    check_nonneg(a)?;
    check_nonneg(b)?;
    Ok(if tol.close(a, b) { RSet::interval(0.0, a.max(b)) } else { RSet::point(a.max(b)) })
}

/// `{max(a,b)}` for `a ≠ b`, the down-set `[−∞, a]` for `a = b`.
pub fn trop_add(a: TropElem, b: TropElem, tol: &Tolerance) -> TSet {
    if a.close(b, tol) {
        TSet::interval(TropElem::NegInf, Endpoint::max(a, b))
    } else {
        TSet::point(Endpoint::max(a, b))
    }
}

/// `ln(e^a + e^b)` without overflow.
pub(crate) fn log_add(a: TropElem, b: TropElem) -> TropElem {
    match (a, b) {
        (TropElem::NegInf, x) | (x, TropElem::NegInf) => x,
        (TropElem::Fin(x), TropElem::Fin(y)) => {
            let m = x.max(y);
            TropElem::Fin(m + (-(x - y).abs()).exp().ln_1p())
        }
    }
}

/// `ln(e^hi − e^lo)` for `hi ≥ lo`; exactly −∞ when `|hi − lo| < eps`.
pub(crate) fn log_sub(hi: TropElem, lo: TropElem, tol: &Tolerance) -> TropElem {
    match (hi, lo) {
        (TropElem::NegInf, _) => TropElem::NegInf,
        (x, TropElem::NegInf) => x,
        (TropElem::Fin(x), TropElem::Fin(y)) => {
            if (x - y).abs() < tol.eps || y > x {
                TropElem::NegInf
            } else {
                TropElem::Fin(x + (-(y - x).exp_m1()).ln())
            }
        }
    }
}

/// The triangle sum carried to the log scale:
/// `[ln|e^a − e^b|, ln(e^a + e^b)]`.
pub fn amoeba_add(a: TropElem, b: TropElem, tol: &Tolerance) -> TSet {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    TSet::interval(log_sub(hi, lo, tol), log_add(a, b))
}

/// Set-extended triangle sum; each pair of intervals gives
/// `[max(0, c−b, a−d), b+d]`.
pub fn tri_add_sets(s: &RSet, t: &RSet, tol: &Tolerance) -> Result<RSet> {
    let mut out = Vec::new();
    for i in s.parts() {
        for j in t.parts() {
            let lo = 0f64.max(j.lo - i.hi).max(i.lo - j.hi);
            out.push(Interval { lo, hi: i.hi + j.hi });
        }
    }
    RSet::from_intervals(out, tol)
}

/// Set-extended sum for the max-type hyperfields with bottom `bottom`.
fn ultra_sets<T: Endpoint>(s: &[Interval<T>], t: &[Interval<T>], bottom: T, tol: &Tolerance) -> Result<Vec<Interval<T>>> {
    let mut out = Vec::new();
    for i in s {
        for j in t {
            if i.lo.le_tol(j.hi, tol) && j.lo.le_tol(i.hi, tol) {
                out.push(Interval { lo: bottom, hi: Endpoint::max(i.hi, j.hi) });
            } else {
                out.push(Interval { lo: Endpoint::max(i.lo, j.lo), hi: Endpoint::max(i.hi, j.hi) });
            }
        }
    }
    Ok(out)
}

pub fn ultra_add_sets(s: &RSet, t: &RSet, tol: &Tolerance) -> Result<RSet> {
    RSet::from_intervals(ultra_sets(s.parts(), t.parts(), 0.0, tol)?, tol)
}

pub fn trop_add_sets(s: &TSet, t: &TSet, tol: &Tolerance) -> Result<TSet> {
    TSet::from_intervals(ultra_sets(s.parts(), t.parts(), TropElem::NegInf, tol)?, tol)
}

/// Set-extended amoeba sum, the triangle rule in log coordinates.
pub fn amoeba_add_sets(s: &TSet, t: &TSet, tol: &Tolerance) -> Result<TSet> {
    let mut out = Vec::new();
    for i in s.parts() {
        for j in t.parts() {
            let lo = if j.lo > i.hi && !j.lo.close(i.hi, tol) {
                log_sub(j.lo, i.hi, tol)
            } else if i.lo > j.hi && !i.lo.close(j.hi, tol) {
                log_sub(i.lo, j.hi, tol)
            } else {
                TropElem::NegInf
            };
            out.push(Interval { lo, hi: log_add(i.hi, j.hi) });
        }
    }
    TSet::from_intervals(out, tol)
}

fn mul_nonneg(s: &RSet, t: &RSet, tol: &Tolerance) -> RSet {
    let mut out = Vec::new();
    for i in s.parts() {
        for j in t.parts() {
            out.push(Interval { lo: i.lo * j.lo, hi: i.hi * j.hi });
        }
    }
    RSet::from_intervals(out, tol).expect("product of intervals")
}

fn mul_trop(s: &TSet, t: &TSet, tol: &Tolerance) -> TSet {
    let mut out = Vec::new();
    for i in s.parts() {
        for j in t.parts() {
            out.push(Interval { lo: i.lo.mul(j.lo), hi: i.hi.mul(j.hi) });
        }
    }
    TSet::from_intervals(out, tol).expect("product of intervals")
}

const POOL: [f64; 6] = [0.5, 1.0, 1.0, 2.0, 3.0, 4.0];

fn sample_pos(rng: &mut Rand) -> f64 {
    if rng.gen_bool(0.7) {
        POOL[rng.gen_range(0..POOL.len())]
    } else {
        rng.gen_range(0.05..5.0)
    }
}

fn related_pos(x: f64, rng: &mut Rand) -> f64 {
    if x == 0.0 {
        return sample_pos(rng);
    }
    match rng.gen_range(0..4) {
        0 => x,
        1 => x / 2.0,
        2 => x * 2.0,
        _ => x * rng.gen_range(0.5..1.5),
    }
}

fn interval_members<T: Endpoint>(s: &crate::sets::IntervalSet<T>, mid: impl Fn(T, T, f64) -> T, rng: &mut Rand, extra: usize) -> Vec<T> {
    let mut out = Vec::new();
    for iv in s.parts() {
        out.push(iv.lo);
        if !iv.is_point() {
            out.push(iv.hi);
            out.push(mid(iv.lo, iv.hi, 0.5));
            for _ in 0..extra {
                out.push(mid(iv.lo, iv.hi, rng.gen::<f64>()));
            }
        }
    }
    out
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + (b - a) * t
}

/// Interpolation in ℝ ∪ {−∞}: a down-set's interior is sampled below `hi`.
fn trop_lerp(a: TropElem, b: TropElem, t: f64) -> TropElem {
    match (a, b) {
        (TropElem::Fin(x), TropElem::Fin(y)) => TropElem::Fin(lerp(x, y, t)),
        (TropElem::NegInf, TropElem::Fin(y)) => {
            if t < 0.1 {
                TropElem::NegInf
            } else {
                TropElem::Fin(y - 4.0 * (1.0 - t))
            }
        }
        _ => a,
    }
}

macro_rules! positive_structure {
    ($ty:ident, $name:expr, $add:expr, $add_sets:expr, $branch:expr, $branches:expr, $probes:expr) => {
        impl Structure for $ty {
            type Elem = f64;
            type Set = RSet;

            fn name(&self) -> String {
                $name.into()
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
                *a
            }
            fn mul(&self, a: &f64, b: &f64) -> f64 {
                a * b
            }
            fn inv(&self, a: &f64) -> Option<f64> {
                (*a != 0.0).then(|| 1.0 / a)
            }
            fn add(&self, a: &f64, b: &f64) -> RSet {
                #[allow(clippy::redundant_closure_call)]
                ($add)(*a, *b, &self.tol)
            }
            fn add_sets(&self, s: &RSet, t: &RSet) -> Result<RSet> {
                ($add_sets)(s, t, &self.tol)
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
                mul_nonneg(&RSet::point(*a), s, &self.tol)
            }
            fn mul_sets(&self, s: &RSet, t: &RSet) -> Option<RSet> {
                Some(mul_nonneg(s, t, &self.tol))
            }
            fn carrier(&self) -> Carrier<f64> {
                Carrier::Sampled
            }
            fn sample(&self, rng: &mut Rand) -> f64 {
                sample_pos(rng)
            }
            fn related(&self, x: &f64, rng: &mut Rand) -> f64 {
                related_pos(*x, rng)
            }
            fn sample_members(&self, s: &RSet, rng: &mut Rand, extra: usize) -> Vec<f64> {
                interval_members(s, lerp, rng, extra)
            }
            fn branch(&self, a: &f64, b: &f64) -> &'static str {
                #[allow(clippy::redundant_closure_call)]
                ($branch)(*a, *b, &self.tol)
            }
            fn branches(&self) -> &'static [&'static str] {
                $branches
            }
            fn probes(&self) -> Vec<Vec<f64>> {
                $probes
            }
            fn fmt_elem(&self, a: &f64) -> String {
                fmt_num(*a)
            }
            fn fmt_set(&self, s: &RSet) -> String {
                s.to_string()
            }
            fn parse_elem(&self, s: &str) -> Result<f64> {
                let x = parse_num(s)?;
                check_nonneg(x)?;
                Ok(x)
            }
            fn parse_set(&self, s: &str) -> Result<RSet> {
                let r = RSet::parse(s, &self.tol)?;
                if r.min() < 0.0 {
                    return Err(Error::Domain("negative values in a set over ℝ₊".into()));
                }
                Ok(r)
            }
        }
    };
}

fn pos_branch(a: f64, b: f64, tol: &Tolerance) -> &'static str {
    if a == 0.0 || b == 0.0 {
        "zero"
    } else if tol.close(a, b) {
        "equal"
    } else {
        "distinct"
    }
}

/// The triangle hyperfield 𝒯 on ℝ₊.
#[derive(Debug, Clone, Copy, Default)]
pub struct Triangle {
    pub tol: Tolerance,
}

positive_structure!(
    Triangle,
    "tri",
    |a, b, _t: &Tolerance| tri_add(a, b).expect("nonnegative operands"),
    tri_add_sets,
    pos_branch,
    &["zero", "equal", "distinct"],
    vec![vec![2.0, 1.0, 2.0, 1.0], vec![4.0, 2.0, 2.0, 1.0], vec![1.0, 1.0, 1.0, 1.0]]
);

/// The ultratriangle hyperfield 𝒰 on ℝ₊.
#[derive(Debug, Clone, Copy, Default)]
pub struct Ultra {
    pub tol: Tolerance,
}

positive_structure!(
    Ultra,
    "ultra",
    |a, b, t: &Tolerance| ultra_add(a, b, t).expect("nonnegative operands"),
    ultra_add_sets,
    pos_branch,
    &["zero", "equal", "distinct"],
    vec![vec![2.0, 2.0, 1.0, 1.0], vec![2.0, 3.0, 3.0, 2.0], vec![1.0, 1.0, 1.0, 1.0]]
);

/// `(ℝ₊, max, ·)`: a univalued max-times semiring, used as a codomain.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxTimes {
    pub tol: Tolerance,
}

fn max_sets(s: &RSet, t: &RSet, tol: &Tolerance) -> Result<RSet> {
    let mut out = Vec::new();
    for i in s.parts() {
        for j in t.parts() {
            out.push(Interval { lo: i.lo.max(j.lo), hi: i.hi.max(j.hi) });
        }
    }
    RSet::from_intervals(out, tol)
}

positive_structure!(
    MaxTimes,
    "max-times",
    |a: f64, b: f64, _t: &Tolerance| RSet::point(a.max(b)),
    max_sets,
    pos_branch,
    &["zero", "equal", "distinct"],
    vec![]
);

fn trop_sample(rng: &mut Rand) -> TropElem {
    if rng.gen_bool(0.7) {
        TropElem::fin(rng.gen_range(-2i32..=2) as f64)
    } else {
        TropElem::fin(rng.gen_range(-3.0..3.0))
    }
}

fn trop_related(x: TropElem, rng: &mut Rand) -> TropElem {
    match x {
        TropElem::NegInf => trop_sample(rng),
        TropElem::Fin(v) => match rng.gen_range(0..3) {
            0 => x,
            1 => TropElem::fin(v + rng.gen_range(-1.0..1.0)),
            _ => TropElem::fin(v - 0.7),
        },
    }
}

fn trop_branch(a: TropElem, b: TropElem, tol: &Tolerance) -> &'static str {
    if a.is_bottom() || b.is_bottom() {
        "zero"
    } else if a.close(b, tol) {
        "equal"
    } else {
        "distinct"
    }
}

macro_rules! log_structure {
    ($ty:ident, $name:expr, $add:expr, $add_sets:expr, $probes:expr) => {
        impl Structure for $ty {
            type Elem = TropElem;
            type Set = TSet;

            fn name(&self) -> String {
                $name.into()
            }
            fn tolerance(&self) -> Tolerance {
                self.tol
            }
            fn zero(&self) -> TropElem {
                TropElem::NegInf
            }
            fn one(&self) -> TropElem {
                TropElem::Fin(0.0)
            }
            fn neg(&self, a: &TropElem) -> TropElem {
                *a
            }
            fn mul(&self, a: &TropElem, b: &TropElem) -> TropElem {
                a.mul(*b)
            }
            fn inv(&self, a: &TropElem) -> Option<TropElem> {
                a.value().map(|v| TropElem::Fin(-v))
            }
            fn add(&self, a: &TropElem, b: &TropElem) -> TSet {
                ($add)(*a, *b, &self.tol)
            }
            fn add_sets(&self, s: &TSet, t: &TSet) -> Result<TSet> {
                ($add_sets)(s, t, &self.tol)
            }
            fn singleton(&self, a: &TropElem) -> TSet {
                TSet::point(*a)
            }
            fn elem_eq(&self, a: &TropElem, b: &TropElem) -> bool {
                a.close(*b, &self.tol)
            }
            fn member(&self, x: &TropElem, s: &TSet) -> bool {
                s.member(*x, &self.tol)
            }
            fn subset(&self, s: &TSet, t: &TSet) -> bool {
                s.subset(t, &self.tol)
            }
            fn union(&self, s: &TSet, t: &TSet) -> TSet {
                s.union(t, &self.tol)
            }
            fn scale_left(&self, a: &TropElem, s: &TSet) -> TSet {
                mul_trop(&TSet::point(*a), s, &self.tol)
            }
            fn mul_sets(&self, s: &TSet, t: &TSet) -> Option<TSet> {
                Some(mul_trop(s, t, &self.tol))
            }
            fn carrier(&self) -> Carrier<TropElem> {
                Carrier::Sampled
            }
            fn sample(&self, rng: &mut Rand) -> TropElem {
                trop_sample(rng)
            }
            fn related(&self, x: &TropElem, rng: &mut Rand) -> TropElem {
                trop_related(*x, rng)
            }
            fn sample_members(&self, s: &TSet, rng: &mut Rand, extra: usize) -> Vec<TropElem> {
                interval_members(s, trop_lerp, rng, extra)
            }
            fn branch(&self, a: &TropElem, b: &TropElem) -> &'static str {
                trop_branch(*a, *b, &self.tol)
            }
            fn branches(&self) -> &'static [&'static str] {
                &["zero", "equal", "distinct"]
            }
            fn probes(&self) -> Vec<Vec<TropElem>> {
                $probes.iter().map(|v: &[f64; 4]| v.iter().map(|&x| TropElem::ln(x)).collect()).collect()
            }
            fn fmt_elem(&self, a: &TropElem) -> String {
                a.to_string()
            }
            fn fmt_set(&self, s: &TSet) -> String {
                s.to_string()
            }
            fn parse_elem(&self, s: &str) -> Result<TropElem> {
                s.parse()
            }
            fn parse_set(&self, s: &str) -> Result<TSet> {
                TSet::parse(s, &self.tol)
            }
        }
    };
}

/// The tropical hyperfield 𝕐 on ℝ ∪ {−∞}.
#[derive(Debug, Clone, Copy, Default)]
pub struct Tropical {
    pub tol: Tolerance,
}

log_structure!(Tropical, "trop", trop_add, trop_add_sets, [[2.0, 2.0, 1.0, 1.0], [1.0, 3.0, 3.0, 1.0]]);

/// The amoeba hyperfield 𝒜, the triangle hyperfield in log coordinates.
#[derive(Debug, Clone, Copy, Default)]
pub struct Amoeba {
    pub tol: Tolerance,
}

log_structure!(Amoeba, "amoeba", amoeba_add, amoeba_add_sets, [[2.0, 1.0, 2.0, 1.0], [1.0, 1.0, 1.0, 1.0]]);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeminormKind {
    Archimedean,
    NonArchimedean,
}

/// Check a multiplicative seminorm as a homomorphism into 𝒯 (archimedean)
/// or 𝒰 (non-archimedean). For the non-archimedean kind the second report
/// checks `log ∘ norm` into 𝕐.
pub fn check_seminorm<D, F>(
    domain: &D,
    norm: F,
    kind: SeminormKind,
    opts: &CheckOptions,
) -> (HomReport<D::Elem>, Option<HomReport<D::Elem>>)
where
    D: Structure,
    F: Fn(&D::Elem) -> f64 + Sync,
{
    match kind {
        SeminormKind::Archimedean => {
            let f = ElemMap::<D, Triangle>::new("norm", &norm);
            (check_hom(&f, domain, &Triangle::default(), opts), None)
        }
        SeminormKind::NonArchimedean => {
            let f = ElemMap::<D, Ultra>::new("norm", &norm);
            let g = ElemMap::<D, Tropical>::new("log-norm", |x| TropElem::ln(norm(x)));
            (
                check_hom(&f, domain, &Ultra::default(), opts),
                Some(check_hom(&g, domain, &Tropical::default(), opts)),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_double_distributivity, check_multiring, Level};
    use crate::structure::sum_list;
    use proptest::prelude::*;

    fn t() -> Tolerance {
        Tolerance::default()
    }

    fn fin(x: f64) -> TropElem {
        TropElem::fin(x)
    }

    #[test]
    fn triangle_values() {
        assert_eq!(tri_add(2.0, 1.0).unwrap(), RSet::interval(1.0, 3.0));
        assert_eq!(tri_add(2.5, 0.0).unwrap(), RSet::point(2.5));
        assert_eq!(tri_add(1.0, 1.0).unwrap(), RSet::interval(0.0, 2.0));
        assert!(tri_add(-1.0, 1.0).is_err());
        assert_eq!(tri_sum_n(&[4.0, 2.0, 2.0, 1.0]).unwrap(), RSet::interval(0.0, 9.0));
        assert_eq!(tri_sum_n(&[5.0, 1.0, 1.0]).unwrap(), RSet::interval(3.0, 7.0));
        let s = tri_add(2.0, 1.0).unwrap();
        assert_eq!(mul_nonneg(&s, &s, &t()), RSet::interval(1.0, 9.0));
    }

    #[test]
    fn ultra_and_trop_values() {
        assert_eq!(ultra_add(2.0, 3.0, &t()).unwrap(), RSet::point(3.0));
        assert_eq!(ultra_add(2.0, 2.0, &t()).unwrap(), RSet::interval(0.0, 2.0));
        assert_eq!(ultra_add(0.0, 0.0, &t()).unwrap(), RSet::point(0.0));
        assert_eq!(trop_add(fin(1.0), fin(2.0), &t()), TSet::point(fin(2.0)));
        assert_eq!(trop_add(fin(1.0), fin(1.0), &t()), TSet::interval(TropElem::NegInf, fin(1.0)));
        assert_eq!(trop_add(TropElem::NegInf, fin(1.0), &t()), TSet::point(fin(1.0)));
    }

    #[test]
    fn amoeba_values() {
        let s = amoeba_add(fin(3f64.ln()), fin(0.0), &t());
        assert!(s.set_eq(&TSet::interval(fin(2f64.ln()), fin(4f64.ln())), &t()));
        let d = amoeba_add(fin(0.0), fin(0.0), &t());
        assert!(d.set_eq(&TSet::interval(TropElem::NegInf, fin(2f64.ln())), &t()));
        assert_eq!(amoeba_add(fin(1.5), TropElem::NegInf, &t()), TSet::point(fin(1.5)));
    }

    #[test]
    fn triangle_double_distributivity_witness() {
        let r = check_double_distributivity(&Triangle::default(), &CheckOptions::sampled(50, 3)).unwrap();
        let v = r.verdicts.iter().find(|v| !v.passed()).expect("reverse inclusion fails");
        assert_eq!(v.witness.as_deref(), Some(&[2.0, 1.0, 2.0, 1.0][..]));
    }

    #[test]
    fn hyperfield_levels() {
        let o = CheckOptions::sampled(400, 5);
        for r in [
            check_multiring(&Triangle::default(), Level::Hyperfield, &o).to_text(),
            check_multiring(&Ultra::default(), Level::Hyperfield, &o).to_text(),
        ] {
            assert!(!r.contains("verdict=fail"), "{r}");
        }
        assert!(check_multiring(&Tropical::default(), Level::Hyperfield, &o).passed());
        assert!(check_multiring(&Amoeba::default(), Level::Hyperfield, &o).passed());
    }

    #[test]
    fn square_is_not_a_seminorm() {
        let (r, _) = check_seminorm(
            &crate::homs::RealField::default(),
            |x: &f64| x * x,
            SeminormKind::Archimedean,
            &CheckOptions::sampled(50, 1),
        );
        let v = r.verdict("additive").unwrap();
        assert!(!v.passed());
        assert_eq!(v.witness.as_deref(), Some(&[1.0, 1.0][..]));
    }

    proptest! {
        #[test]
        fn polygon_formula_matches_fold(v in prop::collection::vec(0.0f64..5.0, 1..7)) {
            let x = Triangle::default();
            let fold = sum_list(&x, &v).unwrap();
            prop_assert!(fold.set_eq(&tri_sum_n(&v).unwrap(), &t()));
        }

        #[test]
        fn log_transfers_triangle_to_amoeba(a in 0.01f64..5.0, b in 0.01f64..5.0) {
            let tri = tri_add(a, b).unwrap().map_monotone(TropElem::ln, &t());
            prop_assert!(tri.set_eq(&amoeba_add(TropElem::ln(a), TropElem::ln(b), &t()), &t()));
        }

        #[test]
        fn log_transfers_ultra_to_trop(a in prop::sample::select(vec![0.5, 1.0, 2.0]), b in 0.1f64..3.0, tie in any::<bool>()) {
            let b = if tie { a } else { b };
            let u = ultra_add(a, b, &t()).unwrap().map_monotone(TropElem::ln, &t());
            prop_assert!(u.set_eq(&trop_add(TropElem::ln(a), TropElem::ln(b), &t()), &t()));
        }

        #[test]
        fn ultra_matches_linear_order(a in prop::sample::select(vec![0.0, 1.0, 2.0, 3.0]), b in prop::sample::select(vec![0.0, 1.0, 2.0, 3.0])) {
            let s = ultra_add(a, b, &t()).unwrap();
            for x in [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0] {
                let expected = if a == b { x <= a } else { x == a.max(b) };
                prop_assert_eq!(s.member(x, &t()), expected);
            }
        }
    }
}
