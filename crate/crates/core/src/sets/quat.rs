use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{field, fmt_num, kv_fields, parse_num, split_union};
use crate::error::{Error, Result};
use crate::tol::Tolerance;

/// A quaternion `x + y i + z j + t k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuatElem(pub [f64; 4]);

impl QuatElem {
    pub const ZERO: QuatElem = QuatElem([0.0; 4]);
    pub const ONE: QuatElem = QuatElem([1.0, 0.0, 0.0, 0.0]);
    pub const I: QuatElem = QuatElem([0.0, 1.0, 0.0, 0.0]);
    pub const J: QuatElem = QuatElem([0.0, 0.0, 1.0, 0.0]);
    pub const K: QuatElem = QuatElem([0.0, 0.0, 0.0, 1.0]);

    pub fn new(x: f64, y: f64, z: f64, t: f64) -> Self {
        QuatElem([x, y, z, t])
    }

    pub fn norm(&self) -> f64 {
        dot(&self.0, &self.0).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        QuatElem(self.0.map(|c| c * s))
    }

    pub fn add(&self, o: &Self) -> Self {
        QuatElem([0, 1, 2, 3].map(|k| self.0[k] + o.0[k]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuatElem([0, 1, 2, 3].map(|k| self.0[k] - o.0[k]))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn conj(&self) -> Self {
        let [x, y, z, t] = self.0;
        QuatElem([x, -y, -z, -t])
    }

    /// Hamilton product.
    pub fn mul(&self, o: &Self) -> Self {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = o.0;
        QuatElem([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }

    pub fn inv(&self) -> Option<Self> {
        let n2 = dot(&self.0, &self.0);
        (n2 > 0.0).then(|| self.conj().scale(1.0 / n2))
    }

    pub fn unit(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            *self
        } else {
            self.scale(1.0 / n)
        }
    }

    pub fn close(&self, o: &Self, tol: &Tolerance) -> bool {
        self.sub(o).norm() <= tol.eps * 1f64.max(self.norm()).max(o.norm())
    }
}

impl fmt::Display for QuatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z, t] = self.0.map(fmt_num);
        write!(f, "({x},{y},{z},{t})")
    }
}

impl std::str::FromStr for QuatElem {
    type Err = Error;

    /// Accepts `(x,y,z,t)` or sums like `1+2i-j+0.5k`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(inner) = t.strip_prefix('(').and_then(|u| u.strip_suffix(')')) {
            if inner.contains(',') {
                let v: Vec<f64> = inner.split(',').map(parse_num).collect::<Result<_>>()?;
                if v.len() != 4 || v.iter().any(|c| !c.is_finite()) {
                    return Err(Error::Parse(format!("bad quaternion `{s}`")));
                }
                return Ok(QuatElem([v[0], v[1], v[2], v[3]]));
            }
            return inner.parse();
        }
        if t.is_empty() {
            return Err(Error::Parse("empty quaternion".into()));
        }
        let bytes = t.as_bytes();
        let mut terms = Vec::new();
        let mut begin = 0;
        for k in 1..bytes.len() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                terms.push(&t[begin..k]);
                begin = k;
            }
        }
        terms.push(&t[begin..]);
        let mut q = [0.0; 4];
        for term in terms {
            let (body, slot) = match term.chars().last() {
                Some('i') => (&term[..term.len() - 1], 1),
                Some('j') => (&term[..term.len() - 1], 2),
                Some('k') => (&term[..term.len() - 1], 3),
                _ => (term, 0),
            };
            let c = match (body.trim_end_matches('*'), slot) {
                ("" | "+", s) if s > 0 => 1.0,
                ("-", s) if s > 0 => -1.0,
                (b, _) => parse_num(b)?,
            };
            if !c.is_finite() {
                return Err(Error::Parse(format!("bad quaternion `{s}`")));
            }
            q[slot] += c;
        }
        Ok(QuatElem(q))
    }
}

/// One component of a [`QSet`].
#[derive(Debug, Clone, PartialEq)]
pub enum QPiece {
    Point(QuatElem),
    /// Points of norm `radius` whose direction lies in the cone spanned by
    /// `verts` (unit vectors, pointed cone, no redundant vertex). Two vertices
    /// give the minor geodesic arc between them.
    Hull { radius: f64, verts: Vec<[f64; 4]> },
    /// Closed ball centered at 0.
    Ball(f64),
}

/// A normalized finite union of quaternion points, spherical hulls and balls.
#[derive(Debug, Clone, PartialEq)]
pub struct QSet {
    parts: Vec<QPiece>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum QComp {
    Origin,
    Hull { r: f64, verts: Vec<[f64; 4]> },
    Ball(f64),
}

impl QSet {
    pub fn point(q: QuatElem) -> Self {
        QSet { parts: vec![QPiece::Point(q)] }
    }

    pub fn ball(r: f64) -> Self {
        Self::from_parts(vec![QPiece::Ball(r)], &Tolerance::default()).expect("ball radius")
    }

    /// Minor geodesic arc between two points of equal norm.
    pub fn geodesic_arc(a: QuatElem, b: QuatElem, tol: &Tolerance) -> Result<Self> {
        if !tol.close(a.norm(), b.norm()) || a.is_zero() {
            return Err(Error::InvalidSet("arc endpoints must share a positive norm".into()));
        }
        Self::from_parts(
            vec![QPiece::Hull { radius: a.norm(), verts: vec![a.unit().0, b.unit().0] }],
            tol,
        )
    }

    pub fn parts(&self) -> &[QPiece] {
        &self.parts
    }

    pub fn from_parts(parts: Vec<QPiece>, tol: &Tolerance) -> Result<Self> {
        let mut comps = Vec::new();
        for p in parts {
            comps.push(match p {
                QPiece::Point(q) if q.is_zero() => QComp::Origin,
                QPiece::Point(q) => {
                    if q.0.iter().any(|c| !c.is_finite()) {
                        return Err(Error::InvalidSet("non-finite quaternion".into()));
                    }
                    QComp::Hull { r: q.norm(), verts: vec![q.unit().0] }
                }
                QPiece::Hull { radius, verts } => {
                    if !(radius > 0.0) || !radius.is_finite() || verts.is_empty() {
                        return Err(Error::InvalidSet(format!("hull of radius {radius}")));
                    }
                    let verts: Vec<[f64; 4]> = verts.iter().map(unitv).collect();
                    if verts.iter().any(|v| v.iter().any(|c| !c.is_finite())) {
                        return Err(Error::InvalidSet("degenerate hull vertex".into()));
                    }
                    if min_norm_in_hull(&verts) <= tol.eps / 2.0 {
                        return Err(Error::InvalidSet(
                            "hull vertices contain antipodal directions".into(),
                        ));
                    }
                    QComp::Hull { r: radius, verts }
                }
                QPiece::Ball(r) => QComp::Ball(r),
            });
        }
        Self::from_comps(comps, tol)
    }

    pub(crate) fn comps(&self) -> Vec<QComp> {
        self.parts
            .iter()
            .map(|p| match p {
                QPiece::Point(q) if q.is_zero() => QComp::Origin,
                QPiece::Point(q) => QComp::Hull { r: q.norm(), verts: vec![q.unit().0] },
                QPiece::Hull { radius, verts } => QComp::Hull { r: *radius, verts: verts.clone() },
                QPiece::Ball(r) => QComp::Ball(*r),
            })
            .collect()
    }

    pub(crate) fn from_comps(comps: Vec<QComp>, tol: &Tolerance) -> Result<Self> {
        let mut ball: Option<f64> = None;
        let mut origin = false;
        let mut hulls: Vec<(f64, Vec<[f64; 4]>)> = Vec::new();
        for c in comps {
            match c {
                QComp::Origin => origin = true,
                QComp::Ball(r) => {
                    if !(r >= 0.0) || !r.is_finite() {
                        return Err(Error::InvalidSet(format!("ball of radius {r}")));
                    }
                    if tol.is_zero(r) {
                        origin = true;
                    } else {
                        ball = Some(ball.map_or(r, |b| b.max(r)));
                    }
                }
                QComp::Hull { r, verts } => hulls.push((r, prune(verts, tol))),
            }
        }
        let mut parts = Vec::new();
        if let Some(b) = ball {
            parts.push(QPiece::Ball(b));
            hulls.retain(|h| !tol.le(h.0, b));
        } else if origin {
            parts.push(QPiece::Point(QuatElem::ZERO));
        }
        hulls.sort_by(|a, b| a.0.total_cmp(&b.0).then(lex(&a.1[0], &b.1[0])));
        // Snap radii within a tolerance cluster to the cluster's first radius,
        // then drop hulls contained in another hull of the cluster.
        let mut i = 0;
        while i < hulls.len() {
            let rep = hulls[i].0;
            let mut j = i;
            while j < hulls.len() && tol.close(hulls[j].0, rep) {
                hulls[j].0 = rep;
                j += 1;
            }
            let group: Vec<Vec<[f64; 4]>> = hulls[i..j].iter().map(|h| h.1.clone()).collect();
            let mut keep = vec![true; group.len()];
            for a in 0..group.len() {
                for b in 0..group.len() {
                    if a != b
                        && keep[b]
                        && keep[a]
                        && group[a].iter().all(|v| cone_contains(&group[b], v, tol))
                    {
                        keep[a] = false;
                    }
                }
            }
            for (k, verts) in group.into_iter().enumerate() {
                if keep[k] {
                    parts.push(if verts.len() == 1 {
                        QPiece::Point(QuatElem(verts[0]).scale(rep))
                    } else {
                        QPiece::Hull { radius: rep, verts }
                    });
                }
            }
            i = j;
        }
        Ok(QSet { parts })
    }

    pub fn normalize(&self, tol: &Tolerance) -> Result<Self> {
        Self::from_parts(self.parts.clone(), tol)
    }

    pub fn union(&self, other: &Self, tol: &Tolerance) -> Self {
        let mut c = self.comps();
        c.extend(other.comps());
        Self::from_comps(c, tol).expect("union of normalized sets")
    }

    pub fn member(&self, x: &QuatElem, tol: &Tolerance) -> bool {
        self.parts.iter().any(|p| match p {
            QPiece::Point(q) => q.close(x, tol),
            QPiece::Ball(r) => tol.le(x.norm(), *r),
            QPiece::Hull { radius, verts } => {
                tol.close(x.norm(), *radius) && cone_contains(verts, &x.unit().0, tol)
            }
        })
    }

    pub fn subset(&self, other: &Self, tol: &Tolerance) -> bool {
        self.parts.iter().all(|p| match p {
            QPiece::Point(q) => other.member(q, tol),
            QPiece::Ball(r) => other
                .parts
                .iter()
                .any(|q| matches!(q, QPiece::Ball(r2) if tol.le(*r, *r2))),
            QPiece::Hull { radius, verts } => other.parts.iter().any(|q| match q {
                QPiece::Ball(r2) => tol.le(*radius, *r2),
                QPiece::Hull { radius: r2, verts: v2 } => {
                    tol.close(*radius, *r2) && verts.iter().all(|v| cone_contains(v2, v, tol))
                }
                QPiece::Point(_) => false,
            }),
        })
    }

    pub fn set_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        self.subset(other, tol) && other.subset(self, tol)
    }

    /// `{q·x | x ∈ self}` (left) or `{x·q}` (right).
    pub fn scale(&self, q: &QuatElem, left: bool, tol: &Tolerance) -> Self {
        if q.is_zero() {
            return QSet::point(QuatElem::ZERO);
        }
        let n = q.norm();
        let u = q.unit();
        let rot = |v: &[f64; 4]| {
            if left {
                u.mul(&QuatElem(*v)).0
            } else {
                QuatElem(*v).mul(&u).0
            }
        };
        let comps = self
            .comps()
            .into_iter()
            .map(|c| match c {
                QComp::Origin => QComp::Origin,
                QComp::Ball(r) => QComp::Ball(r * n),
                QComp::Hull { r, verts } => {
                    QComp::Hull { r: r * n, verts: verts.iter().map(rot).collect() }
                }
            })
            .collect();
        Self::from_comps(comps, tol).expect("scaled set")
    }

    /// Pointwise product when it stays representable: `None` for the product
    /// of two non-degenerate hulls.
    pub fn product(&self, other: &Self, tol: &Tolerance) -> Option<Self> {
        let mut out = Vec::new();
        for a in self.comps() {
            for b in other.comps() {
                out.push(match (&a, &b) {
                    (QComp::Origin, _) | (_, QComp::Origin) => QComp::Origin,
                    (QComp::Ball(r), QComp::Ball(s)) => QComp::Ball(r * s),
                    (QComp::Ball(r), QComp::Hull { r: s, .. })
                    | (QComp::Hull { r: s, .. }, QComp::Ball(r)) => QComp::Ball(r * s),
                    (QComp::Hull { r, verts }, QComp::Hull { r: s, verts: w }) => {
                        if w.len() == 1 {
                            let q = QuatElem(w[0]);
                            QComp::Hull { r: r * s, verts: verts.iter().map(|v| QuatElem(*v).mul(&q).0).collect() }
                        } else if verts.len() == 1 {
                            let q = QuatElem(verts[0]);
                            QComp::Hull { r: r * s, verts: w.iter().map(|v| q.mul(&QuatElem(*v)).0).collect() }
                        } else {
                            return None;
                        }
                    }
                });
            }
        }
        Some(Self::from_comps(out, tol).expect("product set"))
    }

    pub fn max_norm(&self) -> f64 {
        self.parts
            .iter()
            .map(|p| match p {
                QPiece::Point(q) => q.norm(),
                QPiece::Hull { radius, .. } => *radius,
                QPiece::Ball(r) => *r,
            })
            .fold(0.0, f64::max)
    }

    pub fn sample_points<R: Rng + ?Sized>(&self, rng: &mut R, extra: usize) -> Vec<QuatElem> {
        let mut out = Vec::new();
        for p in &self.parts {
            match p {
                QPiece::Point(q) => out.push(*q),
                QPiece::Hull { radius, verts } => {
                    for v in verts {
                        out.push(QuatElem(*v).scale(*radius));
                    }
                    for _ in 0..extra.max(1) {
                        let mut acc = [0.0; 4];
                        for v in verts {
                            let w: f64 = if rng.gen_bool(0.3) { 0.0 } else { rng.gen() };
                            for k in 0..4 {
                                acc[k] += w * v[k];
                            }
                        }
                        let q = QuatElem(acc);
                        if q.norm() > 1e-6 {
                            out.push(q.unit().scale(*radius));
                        }
                    }
                }
                QPiece::Ball(r) => {
                    out.push(QuatElem::ZERO);
                    out.push(QuatElem::ONE.scale(*r));
                    out.push(QuatElem::J.scale(-*r));
                    for _ in 0..extra {
                        let d = random_unit(rng);
                        let m = if rng.gen_bool(0.3) { *r } else { r * rng.gen::<f64>() };
                        out.push(QuatElem(d).scale(m));
                    }
                }
            }
        }
        out
    }

    pub fn parse(s: &str, tol: &Tolerance) -> Result<Self> {
        let pieces = split_union(s);
        if pieces.is_empty() {
            return Err(Error::Parse("empty set literal".into()));
        }
        let mut parts = Vec::new();
        for piece in pieces {
            let (kw, rest) = piece.split_once(char::is_whitespace).unwrap_or((piece, ""));
            let rest = rest.trim();
            parts.push(match kw {
                "point" => QPiece::Point(rest.parse()?),
                "ball" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    QPiece::Ball(field(&kv_fields(&toks)?, "r")?)
                }
                "arc" | "hull" => {
                    let (rtok, verts) = rest.split_once(char::is_whitespace).ok_or_else(|| {
                        Error::Parse(format!("bad hull `{piece}`"))
                    })?;
                    let radius = field(&kv_fields(&[rtok])?, "r")?;
                    let verts = verts
                        .split(')')
                        .map(|v| v.trim())
                        .filter(|v| !v.is_empty())
                        .map(|v| format!("{v})").parse::<QuatElem>().map(|q| q.0))
                        .collect::<Result<Vec<_>>>()?;
                    QPiece::Hull { radius, verts }
                }
                "disk" | "interval" | "circle" | "below" | "smaller" => {
                    return Err(Error::CarrierMismatch(format!(
                        "`{piece}` is not a quaternion value set"
                    )))
                }
                _ => QPiece::Point(piece.parse()?),
            });
        }
        Self::from_parts(parts, tol)
    }
}

impl fmt::Display for QSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let texts: Vec<String> = self
            .parts
            .iter()
            .map(|p| match p {
                QPiece::Point(q) => format!("point {q}"),
                QPiece::Ball(r) => format!("ball r={}", fmt_num(*r)),
                QPiece::Hull { radius, verts } => {
                    let kw = if verts.len() == 2 { "arc" } else { "hull" };
                    let vs: Vec<String> = verts.iter().map(|v| QuatElem(*v).to_string()).collect();
                    format!("{kw} r={} {}", fmt_num(*radius), vs.join(" "))
                }
            })
            .collect();
        write!(f, "{}", texts.join(" ∪ "))
    }
}

pub(crate) fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

fn unitv(v: &[f64; 4]) -> [f64; 4] {
    let n = dot(v, v).sqrt();
    v.map(|c| c / n)
}

fn lex(a: &[f64; 4], b: &[f64; 4]) -> std::cmp::Ordering {
    for k in 0..4 {
        let o = a[k].total_cmp(&b[k]);
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

pub(crate) fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    loop {
        let v: [f64; 4] = [0; 4].map(|_| rng.gen_range(-1.0..1.0));
        let n = dot(&v, &v).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|c| c / n);
        }
    }
}

/// Deduplicate vertices and drop those lying in the cone of the others.
/// Output is sorted lexicographically.
pub(crate) fn prune(verts: Vec<[f64; 4]>, tol: &Tolerance) -> Vec<[f64; 4]> {
    let mut vs: Vec<[f64; 4]> = Vec::new();
    for v in verts {
        if !vs.iter().any(|w| {
            let d = [0, 1, 2, 3].map(|k| v[k] - w[k]);
            dot(&d, &d).sqrt() <= tol.eps
        }) {
            vs.push(v);
        }
    }
    let mut k = 0;
    while k < vs.len() && vs.len() > 1 {
        let others: Vec<[f64; 4]> = vs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, v)| *v)
            .collect();
        if cone_contains(&others, &vs[k], tol) {
            vs.remove(k);
        } else {
            k += 1;
        }
    }
    vs.sort_by(lex);
    vs
}

/// Solve the symmetric system `g x = b` by Gaussian elimination with partial
/// pivoting; `None` when numerically singular.
fn solve(mut g: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| g[i][col].abs().total_cmp(&g[j][col].abs()))?;
        if g[piv][col].abs() < 1e-12 {
            return None;
        }
        g.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = g[row][col] / g[col][col];
            for c in col..n {
                g[row][c] -= f * g[col][c];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|c| g[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / g[row][row];
    }
    Some(x)
}

fn subsets(n: usize, max: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1u32 << n))
        .filter(move |m| m.count_ones() as usize <= max)
        .map(move |m| (0..n).filter(|i| m & (1 << i) != 0).collect())
}

/// Smallest norm of a point in the convex hull of `verts`.
pub(crate) fn min_norm_in_hull(verts: &[[f64; 4]]) -> f64 {
    let mut best = f64::INFINITY;
    for s in subsets(verts.len(), 5) {
        let v0 = verts[s[0]];
        let d: Vec<[f64; 4]> = s[1..]
            .iter()
            .map(|&i| [0, 1, 2, 3].map(|k| verts[i][k] - v0[k]))
            .collect();
        let m = d.len();
        let mu = if m == 0 {
            Some(vec![])
        } else {
            let g = (0..m).map(|i| (0..m).map(|j| dot(&d[i], &d[j])).collect()).collect();
            let rhs = (0..m).map(|i| -dot(&d[i], &v0)).collect();
            solve(g, rhs)
        };
        let Some(mu) = mu else { continue };
        let l0 = 1.0 - mu.iter().sum::<f64>();
        if l0 < -1e-12 || mu.iter().any(|&x| x < -1e-12) {
            continue;
        }
        let mut p = v0;
        for (i, di) in d.iter().enumerate() {
            for k in 0..4 {
                p[k] += mu[i] * di[k];
            }
        }
        best = best.min(dot(&p, &p).sqrt());
    }
    best
}

/// Whether the unit vector `x` lies in the cone spanned by `verts`.
pub(crate) fn cone_contains(verts: &[[f64; 4]], x: &[f64; 4], tol: &Tolerance) -> bool {
    for s in subsets(verts.len(), 4) {
        let m = s.len();
        let g = (0..m)
            .map(|i| (0..m).map(|j| dot(&verts[s[i]], &verts[s[j]])).collect())
            .collect();
        let rhs = (0..m).map(|i| dot(&verts[s[i]], x)).collect();
        let Some(l) = solve(g, rhs) else { continue };
        if l.iter().any(|&c| c < -tol.eps) {
            continue;
        }
        let mut r = *x;
        for (i, &c) in l.iter().enumerate() {
            for k in 0..4 {
                r[k] -= c * verts[s[i]][k];
            }
        }
        if dot(&r, &r).sqrt() <= tol.eps * 10.0 {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn hamilton_products() {
        assert_eq!(QuatElem::I.mul(&QuatElem::J), QuatElem::K);
        assert_eq!(QuatElem::J.mul(&QuatElem::I), QuatElem::K.neg());
        assert_eq!(QuatElem::I.mul(&QuatElem::I), QuatElem::ONE.neg());
        let q = QuatElem::new(1.0, 2.0, -1.0, 0.5);
        assert!(q.mul(&q.inv().unwrap()).close(&QuatElem::ONE, &t()));
    }

    #[test]
    fn literals() {
        let q: QuatElem = "1+2i-j+0.5k".parse().unwrap();
        assert_eq!(q, QuatElem::new(1.0, 2.0, -1.0, 0.5));
        let q: QuatElem = "(0,1,0,0)".parse().unwrap();
        assert_eq!(q, QuatElem::I);
        let q: QuatElem = "-k".parse().unwrap();
        assert_eq!(q, QuatElem::K.neg());
        assert!("(1,2)".parse::<QuatElem>().is_err());
    }

    #[test]
    fn hull_geometry() {
        let v = vec![QuatElem::I.0, QuatElem::J.0];
        assert!((min_norm_in_hull(&v) - 0.5f64.sqrt()).abs() < 1e-12);
        let mid = QuatElem::new(0.0, 1.0, 1.0, 0.0).unit();
        assert!(cone_contains(&v, &mid.0, &t()));
        assert!(!cone_contains(&v, &QuatElem::K.0, &t()));
        let opp = vec![QuatElem::I.0, QuatElem::I.neg().0];
        assert!(min_norm_in_hull(&opp) < 1e-12);
    }

    #[test]
    fn redundant_vertex_pruned() {
        let mid = QuatElem::new(0.0, 1.0, 1.0, 0.0).unit().0;
        let p = prune(vec![QuatElem::I.0, mid, QuatElem::J.0], &t());
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn text_round_trip() {
        let a = QSet::geodesic_arc(QuatElem::I, QuatElem::J, &t()).unwrap();
        let txt = a.to_string();
        assert_eq!(txt, "arc r=1 (0,0,1,0) (0,1,0,0)");
        assert!(QSet::parse(&txt, &t()).unwrap().set_eq(&a, &t()));
        assert_eq!(QSet::ball(2.0).to_string(), "ball r=2");
        assert!(QSet::geodesic_arc(QuatElem::I, QuatElem::I.neg(), &t()).is_err());
    }

    #[test]
    fn arc_membership() {
        let a = QSet::geodesic_arc(QuatElem::I, QuatElem::J, &t()).unwrap();
        assert!(a.member(&QuatElem::new(0.0, 1.0, 1.0, 0.0).unit(), &t()));
        assert!(!a.member(&QuatElem::new(0.0, 1.0, -1.0, 0.0).unit(), &t()));
        assert!(!a.member(&QuatElem::new(0.0, 2.0, 2.0, 0.0), &t()));
    }
}
