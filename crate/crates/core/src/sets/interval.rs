use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{fmt_num, parse_num, split_union};
use crate::error::{Error, Result};
use crate::tol::Tolerance;

/// Endpoint type of an interval set.
pub trait Endpoint: Copy + PartialOrd + fmt::Debug + Send + Sync + 'static {
    fn close(self, other: Self, tol: &Tolerance) -> bool;
    fn to_text(self) -> String;
    fn from_text(s: &str) -> Result<Self>;
    fn is_valid(self) -> bool;

    fn le_tol(self, other: Self, tol: &Tolerance) -> bool {
        self <= other || self.close(other, tol)
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Endpoint for f64 {
    fn close(self, other: Self, tol: &Tolerance) -> bool {
        tol.close(self, other)
    }

    fn to_text(self) -> String {
        fmt_num(self)
    }

    fn from_text(s: &str) -> Result<Self> {
        let x = parse_num(s)?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::Parse(format!("non-finite real `{s}`")))
        }
    }

    fn is_valid(self) -> bool {
        self.is_finite()
    }
}

/// An element of ℝ ∪ {−∞}. The bottom is a distinguished value, never a
/// floating-point infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TropElem {
    NegInf,
    Fin(f64),
}

impl TropElem {
    pub fn fin(x: f64) -> Self {
        assert!(x.is_finite(), "TropElem::fin({x})");
        TropElem::Fin(x)
    }

    /// `ln x` for `x ≥ 0`, with `ln 0 = −∞`.
    pub fn ln(x: f64) -> Self {
        if x <= 0.0 {
            TropElem::NegInf
        } else {
            TropElem::Fin(x.ln())
        }
    }

    pub fn exp(self) -> f64 {
        match self {
            TropElem::NegInf => 0.0,
            TropElem::Fin(x) => x.exp(),
        }
    }

    pub fn is_bottom(self) -> bool {
        matches!(self, TropElem::NegInf)
    }

    pub fn value(self) -> Option<f64> {
        match self {
            TropElem::NegInf => None,
            TropElem::Fin(x) => Some(x),
        }
    }

    /// Tropical product: real addition absorbing −∞.
    pub fn mul(self, other: Self) -> Self {
        match (self, other) {
            (TropElem::Fin(a), TropElem::Fin(b)) => TropElem::Fin(a + b),
            _ => TropElem::NegInf,
        }
    }
}

impl PartialOrd for TropElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (TropElem::NegInf, TropElem::NegInf) => Some(Ordering::Equal),
            (TropElem::NegInf, _) => Some(Ordering::Less),
            (_, TropElem::NegInf) => Some(Ordering::Greater),
            (TropElem::Fin(a), TropElem::Fin(b)) => a.partial_cmp(b),
        }
    }
}

impl fmt::Display for TropElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropElem::NegInf => write!(f, "-inf"),
            TropElem::Fin(x) => write!(f, "{}", fmt_num(*x)),
        }
    }
}

impl std::str::FromStr for TropElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Endpoint::from_text(s)
    }
}

impl Endpoint for TropElem {
    fn close(self, other: Self, tol: &Tolerance) -> bool {
        match (self, other) {
            (TropElem::NegInf, TropElem::NegInf) => true,
            (TropElem::Fin(a), TropElem::Fin(b)) => tol.close(a, b),
            _ => false,
        }
    }

    fn to_text(self) -> String {
        self.to_string()
    }

    fn from_text(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "-inf" | "-∞" | "−∞") {
            return Ok(TropElem::NegInf);
        }
        Ok(TropElem::Fin(f64::from_text(t)?))
    }

    fn is_valid(self) -> bool {
        match self {
            TropElem::NegInf => true,
            TropElem::Fin(x) => x.is_finite(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Endpoint> Interval<T> {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// A normalized finite union of closed intervals (points are degenerate
/// intervals), sorted and pairwise separated by more than the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet<T> {
    parts: Vec<Interval<T>>,
}

/// Value sets over ℝ or ℝ₊.
pub type RSet = IntervalSet<f64>;
/// Value sets over ℝ ∪ {−∞}.
pub type TSet = IntervalSet<TropElem>;

impl<T: Endpoint> IntervalSet<T> {
    pub fn point(x: T) -> Self {
        IntervalSet { parts: vec![Interval { lo: x, hi: x }] }
    }

    /// Closed interval `[lo, hi]`; panics if `lo > hi`.
    pub fn interval(lo: T, hi: T) -> Self {
        Self::from_intervals(vec![Interval { lo, hi }], &Tolerance::default())
            .expect("interval endpoints out of order")
    }

    pub fn from_intervals(ivs: Vec<Interval<T>>, tol: &Tolerance) -> Result<Self> {
        let mut ivs = ivs;
        for iv in &mut ivs {
            if !iv.lo.is_valid() || !iv.hi.is_valid() {
                return Err(Error::InvalidSet(format!("bad endpoint in {iv:?}")));
            }
            if iv.lo > iv.hi {
                if iv.lo.close(iv.hi, tol) {
                    iv.hi = iv.lo;
                } else {
                    return Err(Error::InvalidSet(format!(
                        "empty interval [{}, {}]",
                        iv.lo.to_text(),
                        iv.hi.to_text()
                    )));
                }
            }
        }
        if ivs.is_empty() {
            return Err(Error::InvalidSet("empty set".into()));
        }
        ivs.sort_by(|a, b| {
            a.lo.partial_cmp(&b.lo)
                .unwrap_or(Ordering::Equal)
                .then(b.hi.partial_cmp(&a.hi).unwrap_or(Ordering::Equal))
        });
        let mut out: Vec<Interval<T>> = Vec::with_capacity(ivs.len());
        for iv in ivs {
            match out.last_mut() {
                Some(last) if iv.lo.le_tol(last.hi, tol) => last.hi = Endpoint::max(last.hi, iv.hi),
                _ => out.push(iv),
            }
        }
        Ok(IntervalSet { parts: out })
    }

    pub fn parts(&self) -> &[Interval<T>] {
        &self.parts
    }

    pub fn normalize(&self, tol: &Tolerance) -> Result<Self> {
        Self::from_intervals(self.parts.clone(), tol)
    }

    pub fn as_point(&self) -> Option<T> {
        match self.parts.as_slice() {
            [iv] if iv.is_point() => Some(iv.lo),
            _ => None,
        }
    }

    pub fn min(&self) -> T {
        self.parts[0].lo
    }

    pub fn max(&self) -> T {
        self.parts[self.parts.len() - 1].hi
    }

    pub fn union(&self, other: &Self, tol: &Tolerance) -> Self {
        let mut v = self.parts.clone();
        v.extend_from_slice(&other.parts);
        Self::from_intervals(v, tol).expect("union of normalized sets")
    }

    pub fn member(&self, x: T, tol: &Tolerance) -> bool {
        self.parts
            .iter()
            .any(|iv| iv.lo.le_tol(x, tol) && x.le_tol(iv.hi, tol))
    }

    pub fn subset(&self, other: &Self, tol: &Tolerance) -> bool {
        self.parts.iter().all(|iv| {
            other
                .parts
                .iter()
                .any(|jv| jv.lo.le_tol(iv.lo, tol) && iv.hi.le_tol(jv.hi, tol))
        })
    }

    pub fn set_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        self.subset(other, tol) && other.subset(self, tol)
    }

    /// Apply a monotone nondecreasing map to every endpoint.
    pub fn map_monotone<U: Endpoint>(&self, f: impl Fn(T) -> U, tol: &Tolerance) -> IntervalSet<U> {
        IntervalSet::from_intervals(
            self.parts.iter().map(|iv| Interval { lo: f(iv.lo), hi: f(iv.hi) }).collect(),
            tol,
        )
        .expect("monotone image")
    }

    pub fn parse(s: &str, tol: &Tolerance) -> Result<Self> {
        let pieces = split_union(s);
        if pieces.is_empty() {
            return Err(Error::Parse("empty set literal".into()));
        }
        let mut ivs = Vec::new();
        for piece in pieces {
            let (kw, rest) = piece.split_once(char::is_whitespace).unwrap_or((piece, ""));
            let rest = rest.trim();
            match kw {
                "interval" => {
                    let inner = rest
                        .strip_prefix('[')
                        .and_then(|r| r.strip_suffix(']'))
                        .ok_or_else(|| Error::Parse(format!("bad interval `{piece}`")))?;
                    let (lo, hi) = inner
                        .split_once(',')
                        .ok_or_else(|| Error::Parse(format!("bad interval `{piece}`")))?;
                    ivs.push(Interval { lo: T::from_text(lo)?, hi: T::from_text(hi)? });
                }
                "point" => {
                    let x = T::from_text(rest)?;
                    ivs.push(Interval { lo: x, hi: x });
                }
                "arc" | "disk" | "circle" | "ball" | "hull" | "below" | "smaller" => {
                    return Err(Error::CarrierMismatch(format!(
                        "`{piece}` is not a real value set"
                    )))
                }
                _ => {
                    let x = T::from_text(piece)?;
                    ivs.push(Interval { lo: x, hi: x });
                }
            }
        }
        Self::from_intervals(ivs, tol)
    }
}

impl<T: Endpoint> fmt::Display for IntervalSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let texts: Vec<String> = self
            .parts
            .iter()
            .map(|iv| {
                if iv.is_point() {
                    format!("point {}", iv.lo.to_text())
                } else {
                    format!("interval [{},{}]", iv.lo.to_text(), iv.hi.to_text())
                }
            })
            .collect();
        write!(f, "{}", texts.join(" ∪ "))
    }
}
