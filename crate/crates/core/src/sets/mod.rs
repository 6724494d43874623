//! Carrier elements and symbolic value sets.
//!
//! Value sets are finite unions of primitives (points, arcs, disks, intervals,
//! down-sets, spherical hulls, balls) kept in a canonical normalized form.
//! Equality of sets is mutual inclusion within a [`Tolerance`](crate::Tolerance).

pub mod complex;
pub mod interval;
pub mod quat;

pub use complex::{CPiece, CSet, ComplexElem};
pub use interval::{Endpoint, Interval, IntervalSet, RSet, TSet, TropElem};
pub use quat::{QPiece, QSet, QuatElem};

use crate::error::{Error, Result};

/// Canonical decimal text: ten fractional digits, trailing zeros trimmed.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let mut s = format!("{:.10}", x);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// Parse a real literal. Accepts plain floats and multiples of pi such as
/// `pi/2`, `3pi/4`, `-pi`, `0.5*pi`.
pub fn parse_num(s: &str) -> Result<f64> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let lower = t.to_ascii_lowercase();
    let pi_pos = lower.find("pi").or_else(|| t.find('π'));
    if let Some(pos) = pi_pos {
        let plen = if lower[pos..].starts_with("pi") { 2 } else { 'π'.len_utf8() };
        let coef = t[..pos].trim().trim_end_matches('*').trim();
        let c = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number `{s}`")))?,
        };
        let rest = t[pos + plen..].trim();
        let d = if rest.is_empty() {
            1.0
        } else if let Some(d) = rest.strip_prefix('/') {
            d.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number `{s}`")))?
        } else {
            return Err(Error::Parse(format!("bad number `{s}`")));
        };
        return Ok(c * std::f64::consts::PI / d);
    }
    match lower.as_str() {
        "inf" | "+inf" => return Ok(f64::INFINITY),
        "-inf" => return Ok(f64::NEG_INFINITY),
        _ => {}
    }
    t.parse::<f64>()
        .ok()
        .filter(|x| !x.is_nan())
        .ok_or_else(|| Error::Parse(format!("bad number `{s}`")))
}

/// Split a union literal on `∪` (or `|` as ASCII fallback).
pub(crate) fn split_union(s: &str) -> Vec<&str> {
    s.split(['∪', '|'])
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect()
}

/// Parse `key=value` tokens following a keyword, e.g. `arc r=1 from=0 sweep=2`.
pub(crate) fn kv_fields<'a>(tokens: &[&'a str]) -> Result<Vec<(&'a str, &'a str)>> {
    tokens
        .iter()
        .map(|tok| {
            tok.split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{tok}`")))
        })
        .collect()
}

pub(crate) fn field_text<'a>(fields: &[(&str, &'a str)], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|f| f.1)
        .ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

pub(crate) fn field(fields: &[(&str, &str)], key: &str) -> Result<f64> {
    let v = fields
        .iter()
        .find(|(k, _)| *k == key)
        .ok_or_else(|| Error::Parse(format!("missing field `{key}`")))?;
    parse_num(v.1)
}
