use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{field, fmt_num, kv_fields, parse_num, split_union};
use crate::error::{Error, Result};
use crate::tol::{angle_dist, wrap, Tolerance};

/// A complex number in polar form. The argument lives in `[0, 2π)`; zero has
/// argument 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexElem {
    modulus: f64,
    argument: f64,
}

impl ComplexElem {
    pub const ZERO: ComplexElem = ComplexElem { modulus: 0.0, argument: 0.0 };
    pub const ONE: ComplexElem = ComplexElem { modulus: 1.0, argument: 0.0 };

    pub fn new(modulus: f64, argument: f64) -> Result<Self> {
        if !modulus.is_finite() || !argument.is_finite() || modulus < 0.0 {
            return Err(Error::Domain(format!(
                "bad polar pair ({modulus}, {argument})"
            )));
        }
        Ok(Self::polar(modulus, argument))
    }

    /// Panics on negative or non-finite modulus; see [`ComplexElem::new`].
    pub fn polar(modulus: f64, argument: f64) -> Self {
        assert!(modulus >= 0.0 && modulus.is_finite(), "modulus {modulus}");
        if modulus == 0.0 {
            return Self::ZERO;
        }
        ComplexElem { modulus, argument: wrap(argument) }
    }

    pub fn unit(argument: f64) -> Self {
        Self::polar(1.0, argument)
    }

    pub fn real(x: f64) -> Self {
        if x >= 0.0 {
            Self::polar(x, 0.0)
        } else {
            Self::polar(-x, PI)
        }
    }

    pub fn from_cartesian(x: f64, y: f64) -> Self {
        Self::polar(x.hypot(y), y.atan2(x))
    }

    pub fn from_c64(z: Complex64) -> Self {
        Self::from_cartesian(z.re, z.im)
    }

    pub fn modulus(&self) -> f64 {
        self.modulus
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::from_polar(self.modulus, self.argument)
    }

    pub fn is_zero(&self) -> bool {
        self.modulus == 0.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::polar(self.modulus * other.modulus, self.argument + other.argument)
    }

    pub fn neg(&self) -> Self {
        Self::polar(self.modulus, self.argument + PI)
    }

    pub fn inv(&self) -> Option<Self> {
        (self.modulus > 0.0).then(|| Self::polar(1.0 / self.modulus, -self.argument))
    }

    pub fn conj(&self) -> Self {
        Self::polar(self.modulus, -self.argument)
    }

    /// `z / |z|`, or 0.
    pub fn phase(&self) -> Self {
        if self.is_zero() {
            Self::ZERO
        } else {
            Self::unit(self.argument)
        }
    }

    /// Moduli within tolerance and either the angles or the points themselves
    /// within tolerance (the latter covers tiny moduli).
    pub fn close(&self, other: &Self, tol: &Tolerance) -> bool {
        if !tol.close(self.modulus, other.modulus) {
            return false;
        }
        let m = self.modulus.max(other.modulus);
        tol.angle_close(self.argument, other.argument)
            || (self.to_c64() - other.to_c64()).norm() <= tol.eps * m.max(1.0)
    }
}

impl fmt::Display for ComplexElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∠{}", fmt_num(self.modulus), fmt_num(self.argument))
    }
}

impl std::str::FromStr for ComplexElem {
    type Err = Error;

    /// Accepts `m∠θ`, the ASCII form `m@θ`, or Cartesian `x+yi`, `-i`, `2`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|u| u.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if let Some((m, a)) = t.split_once('∠').or_else(|| t.split_once('@')) {
            return ComplexElem::new(parse_num(m)?, parse_num(a)?);
        }
        let (x, y) = parse_cartesian(t)?;
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::Parse(format!("non-finite complex `{s}`")));
        }
        Ok(ComplexElem::from_cartesian(x, y))
    }
}

pub(crate) fn parse_cartesian(t: &str) -> Result<(f64, f64)> {
    let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = compact.strip_suffix('i') else {
        return Ok((parse_num(&compact)?, 0.0));
    };
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k];
        if (c == b'+' || c == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let (re, im) = match split {
        Some(k) => (parse_num(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im.trim_end_matches('*') {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => parse_num(v)?,
    };
    Ok((re, im))
}

/// One component of a [`CSet`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CPiece {
    Point(ComplexElem),
    /// Counterclockwise arc from `start` through `sweep` radians on the circle
    /// of the given radius; `sweep == 2π` is the full circle.
    Arc { radius: f64, start: f64, sweep: f64 },
    /// Closed disk centered at 0.
    Disk(f64),
}

/// A normalized finite union of points, arcs and disks in ℂ.
#[derive(Debug, Clone, PartialEq)]
pub struct CSet {
    parts: Vec<CPiece>,
}

/// Working form used by the set algebra. A point is a zero-sweep piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Comp {
    Origin,
    Circ { r: f64, start: f64, sweep: f64 },
    Disk(f64),
}

impl CSet {
    pub fn point(z: ComplexElem) -> Self {
        CSet { parts: vec![CPiece::Point(z)] }
    }

    pub fn zero() -> Self {
        Self::point(ComplexElem::ZERO)
    }

    pub fn disk(radius: f64) -> Self {
        Self::from_parts(vec![CPiece::Disk(radius)], &Tolerance::default())
            .expect("disk radius must be finite and nonnegative")
    }

    pub fn circle(radius: f64) -> Self {
        Self::arc(radius, 0.0, TAU).expect("circle radius must be positive")
    }

    pub fn arc(radius: f64, start: f64, sweep: f64) -> Result<Self> {
        Self::from_parts(
            vec![CPiece::Arc { radius, start, sweep }],
            &Tolerance::default(),
        )
    }

    pub fn from_parts(parts: Vec<CPiece>, tol: &Tolerance) -> Result<Self> {
        let comps = parts
            .into_iter()
            .map(|p| match p {
                CPiece::Point(z) if z.is_zero() => Ok(Comp::Origin),
                CPiece::Point(z) => Ok(Comp::Circ { r: z.modulus, start: z.argument, sweep: 0.0 }),
                CPiece::Arc { radius, start, sweep } => {
                    if !(radius > 0.0) {
                        return Err(Error::InvalidSet(format!("arc of radius {radius}")));
                    }
                    if !(sweep > 0.0) {
                        return Err(Error::InvalidSet(format!("arc of sweep {sweep}")));
                    }
                    Ok(Comp::Circ { r: radius, start, sweep })
                }
                CPiece::Disk(r) => Ok(Comp::Disk(r)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_comps(comps, tol)
    }

    pub fn parts(&self) -> &[CPiece] {
        &self.parts
    }

    /// The normal form; idempotent.
    pub fn normalize(&self, tol: &Tolerance) -> Result<Self> {
        Self::from_parts(self.parts.clone(), tol)
    }

    pub(crate) fn comps(&self) -> Vec<Comp> {
        self.parts
            .iter()
            .map(|p| match *p {
                CPiece::Point(z) if z.is_zero() => Comp::Origin,
                CPiece::Point(z) => Comp::Circ { r: z.modulus, start: z.argument, sweep: 0.0 },
                CPiece::Arc { radius, start, sweep } => Comp::Circ { r: radius, start, sweep },
                CPiece::Disk(r) => Comp::Disk(r),
            })
            .collect()
    }

    pub(crate) fn from_comps(comps: Vec<Comp>, tol: &Tolerance) -> Result<Self> {
        let mut disk: Option<f64> = None;
        let mut origin = false;
        let mut circs: Vec<(f64, f64, f64)> = Vec::new();
        for c in comps {
            match c {
                Comp::Origin => origin = true,
                Comp::Disk(r) => {
                    if !(r >= 0.0) || !r.is_finite() {
                        return Err(Error::InvalidSet(format!("disk of radius {r}")));
                    }
                    if tol.is_zero(r) {
                        origin = true;
                    } else {
                        disk = Some(disk.map_or(r, |d| d.max(r)));
                    }
                }
                Comp::Circ { r, start, sweep } => {
                    if !r.is_finite() || !start.is_finite() || !sweep.is_finite() {
                        return Err(Error::InvalidSet("non-finite component".into()));
                    }
                    if r < 0.0 || sweep < 0.0 || (r == 0.0 && sweep > 0.0) {
                        return Err(Error::InvalidSet(format!(
                            "arc r={r} sweep={sweep}"
                        )));
                    }
                    if r == 0.0 {
                        origin = true;
                    } else {
                        circs.push((r, wrap(start), sweep.min(TAU)));
                    }
                }
            }
        }
        let mut parts = Vec::new();
        if let Some(d) = disk {
            parts.push(CPiece::Disk(d));
            circs.retain(|c| !tol.le(c.0, d));
        } else if origin {
            parts.push(CPiece::Point(ComplexElem::ZERO));
        }
        circs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut i = 0;
        while i < circs.len() {
            let rep = circs[i].0;
            let mut j = i;
            while j < circs.len() && tol.close(circs[j].0, rep) {
                j += 1;
            }
            let ivs: Vec<(f64, f64)> = circs[i..j].iter().map(|c| (c.1, c.2)).collect();
            for (s, w) in merge_angular(ivs, tol.eps) {
                if w == 0.0 || w <= tol.eps {
                    parts.push(CPiece::Point(ComplexElem::polar(rep, s)));
                } else {
                    parts.push(CPiece::Arc { radius: rep, start: s, sweep: w });
                }
            }
            i = j;
        }
        Ok(CSet { parts })
    }

    pub fn union(&self, other: &Self, tol: &Tolerance) -> Self {
        let mut c = self.comps();
        c.extend(other.comps());
        Self::from_comps(c, tol).expect("union of normalized sets")
    }

    pub fn member(&self, x: &ComplexElem, tol: &Tolerance) -> bool {
        self.parts.iter().any(|p| piece_member(p, x, tol))
    }

    pub fn subset(&self, other: &Self, tol: &Tolerance) -> bool {
        self.parts.iter().all(|p| piece_subset(p, other, tol))
    }

    pub fn set_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        self.subset(other, tol) && other.subset(self, tol)
    }

    /// Largest modulus attained by the set.
    pub fn max_modulus(&self) -> f64 {
        self.parts
            .iter()
            .map(|p| match *p {
                CPiece::Point(z) => z.modulus,
                CPiece::Arc { radius, .. } => radius,
                CPiece::Disk(r) => r,
            })
            .fold(0.0, f64::max)
    }

    /// Pointwise product `{xy | x ∈ self, y ∈ other}`.
    pub fn product(&self, other: &Self, tol: &Tolerance) -> Self {
        let mut out = Vec::new();
        for a in self.comps() {
            for b in other.comps() {
                out.push(match (a, b) {
                    (Comp::Origin, _) | (_, Comp::Origin) => Comp::Origin,
                    (Comp::Disk(r), Comp::Disk(s)) => Comp::Disk(r * s),
                    (Comp::Disk(r), Comp::Circ { r: s, .. })
                    | (Comp::Circ { r: s, .. }, Comp::Disk(r)) => Comp::Disk(r * s),
                    (
                        Comp::Circ { r, start, sweep },
                        Comp::Circ { r: r2, start: s2, sweep: w2 },
                    ) => Comp::Circ { r: r * r2, start: start + s2, sweep: (sweep + w2).min(TAU) },
                });
            }
        }
        Self::from_comps(out, tol).expect("product of normalized sets")
    }

    pub fn scale(&self, a: &ComplexElem, tol: &Tolerance) -> Self {
        self.product(&CSet::point(*a), tol)
    }

    /// Deterministic landmarks plus `extra` random points of the set.
    pub fn sample_points<R: Rng + ?Sized>(&self, rng: &mut R, extra: usize) -> Vec<ComplexElem> {
        let mut out = Vec::new();
        for p in &self.parts {
            match *p {
                CPiece::Point(z) => out.push(z),
                CPiece::Arc { radius, start, sweep } => {
                    out.push(ComplexElem::polar(radius, start));
                    out.push(ComplexElem::polar(radius, start + sweep));
                    out.push(ComplexElem::polar(radius, start + sweep / 2.0));
                    for _ in 0..extra {
                        out.push(ComplexElem::polar(radius, start + rng.gen::<f64>() * sweep));
                    }
                }
                CPiece::Disk(r) => {
                    out.push(ComplexElem::ZERO);
                    for k in 0..4 {
                        out.push(ComplexElem::polar(r, k as f64 * PI / 2.0));
                    }
                    for _ in 0..extra {
                        let m = if rng.gen_bool(0.3) { r } else { r * rng.gen::<f64>() };
                        out.push(ComplexElem::polar(m, rng.gen::<f64>() * TAU));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for CSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let texts: Vec<String> = self
            .parts
            .iter()
            .map(|p| match *p {
                CPiece::Point(z) => {
                    format!("point r={} arg={}", fmt_num(z.modulus), fmt_num(z.argument))
                }
                CPiece::Arc { radius, sweep, .. } if sweep >= TAU => {
                    format!("circle r={}", fmt_num(radius))
                }
                CPiece::Arc { radius, start, sweep } => format!(
                    "arc r={} from={} sweep={}",
                    fmt_num(radius),
                    fmt_num(start),
                    fmt_num(sweep)
                ),
                CPiece::Disk(r) => format!("disk r={}", fmt_num(r)),
            })
            .collect();
        write!(f, "{}", texts.join(" ∪ "))
    }
}

impl CSet {
    /// Parse the canonical text form. A bare complex literal is a point.
    pub fn parse(s: &str, tol: &Tolerance) -> Result<Self> {
        let mut parts = Vec::new();
        let pieces = split_union(s);
        if pieces.is_empty() {
            return Err(Error::Parse("empty set literal".into()));
        }
        for piece in pieces {
            let tokens: Vec<&str> = piece.split_whitespace().collect();
            let rest = &tokens[1..];
            let part = match tokens[0] {
                "point" if rest.len() == 1 && !rest[0].contains('=') => {
                    CPiece::Point(rest[0].parse()?)
                }
                "point" => {
                    let f = kv_fields(rest)?;
                    CPiece::Point(ComplexElem::new(field(&f, "r")?, field(&f, "arg")?)?)
                }
                "arc" => {
                    let f = kv_fields(rest)?;
                    CPiece::Arc {
                        radius: field(&f, "r")?,
                        start: field(&f, "from")?,
                        sweep: field(&f, "sweep")?,
                    }
                }
                "circle" => {
                    let f = kv_fields(rest)?;
                    CPiece::Arc { radius: field(&f, "r")?, start: 0.0, sweep: TAU }
                }
                "disk" => CPiece::Disk(field(&kv_fields(rest)?, "r")?),
                "interval" | "downset" | "ball" | "hull" | "below" | "smaller" => {
                    return Err(Error::CarrierMismatch(format!(
                        "`{piece}` is not a complex value set"
                    )))
                }
                _ => CPiece::Point(piece.parse()?),
            };
            parts.push(part);
        }
        Self::from_parts(parts, tol)
    }
}

fn piece_member(p: &CPiece, x: &ComplexElem, tol: &Tolerance) -> bool {
    match *p {
        CPiece::Point(z) => z.close(x, tol),
        CPiece::Arc { radius, start, sweep } => {
            tol.close(x.modulus, radius) && angle_in(x.argument, start, sweep, tol.eps)
        }
        CPiece::Disk(r) => tol.le(x.modulus, r),
    }
}

fn piece_subset(p: &CPiece, t: &CSet, tol: &Tolerance) -> bool {
    match *p {
        CPiece::Point(z) => t.member(&z, tol),
        CPiece::Arc { radius, start, sweep } => t.parts.iter().any(|q| match *q {
            CPiece::Arc { radius: r2, start: s2, sweep: w2 } => {
                tol.close(radius, r2) && arc_within(start, sweep, s2, w2, tol.eps)
            }
            CPiece::Disk(r2) => tol.le(radius, r2),
            CPiece::Point(_) => false,
        }),
        CPiece::Disk(r) => t.parts.iter().any(|q| match *q {
            CPiece::Disk(r2) => tol.le(r, r2),
            _ => false,
        }),
    }
}

pub(crate) fn angle_in(theta: f64, start: f64, sweep: f64, eps: f64) -> bool {
    if sweep >= TAU - eps {
        return true;
    }
    let d = wrap(theta - start);
    d <= sweep + eps || d >= TAU - eps
}

fn arc_within(s: f64, w: f64, s2: f64, w2: f64, eps: f64) -> bool {
    if w2 >= TAU - eps {
        return true;
    }
    if w >= TAU - eps {
        return false;
    }
    let mut d = wrap(s - s2);
    if d > TAU - eps {
        d = 0.0;
    }
    d + w <= w2 + eps
}

/// Merge angular intervals `(start, width)` on the circle. Returns disjoint
/// intervals with starts in `[0, 2π)`, or a single `(0, 2π)` for full cover.
pub(crate) fn merge_angular(ivs: Vec<(f64, f64)>, eps: f64) -> Vec<(f64, f64)> {
    if ivs.iter().any(|iv| iv.1 >= TAU - eps) {
        return vec![(0.0, TAU)];
    }
    // (start, end, sweep, wrapped start). Sweep and wrapped start are only
    // recomputed when a span grows, so normalizing twice is exact.
    let mut spans: Vec<(f64, f64, f64, f64)> = ivs.iter().map(|&(s, w)| (s, s + w, w, s)).collect();
    loop {
        spans.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
        let mut merged: Vec<(f64, f64, f64, f64)> = Vec::new();
        for span in spans {
            match merged.last_mut() {
                Some(last) if span.0 <= last.1 + eps => {
                    if span.1 > last.1 {
                        last.1 = span.1;
                        last.2 = last.1 - last.0;
                    }
                }
                _ => merged.push(span),
            }
        }
        let n = merged.len();
        if n > 1 && merged[n - 1].1 + eps >= merged[0].0 + TAU {
            let last = merged.pop().unwrap();
            let (s, e) = (last.0 - TAU, merged[0].1.max(last.1 - TAU));
            merged[0] = (s, e, e - s, last.3);
            spans = merged;
            continue;
        }
        if merged.iter().any(|m| m.2 >= TAU - eps) {
            return vec![(0.0, TAU)];
        }
        let mut out: Vec<(f64, f64)> = merged.into_iter().map(|m| (wrap(m.3), m.2)).collect();
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        return out;
    }
}

/// Canonical ordering helper for angles, exposed for tests.
pub fn angle_cmp(a: f64, b: f64) -> Ordering {
    wrap(a).total_cmp(&wrap(b))
}

/// Shortest signed rotation taking `from` to `to`, in `(-π, π]`.
pub fn rotation(from: f64, to: f64) -> f64 {
    crate::tol::wrap_signed(to - from)
}

/// True when the two angles are antipodal within `eps`.
pub fn antipodal(a: f64, b: f64, eps: f64) -> bool {
    angle_dist(a, b + PI) <= eps
}
