//! Finite multistructures given by tables, and their constructions.
//!
//! Elements are indices into a label list; value sets are `u128` bitmasks, so
//! carriers hold at most 128 elements.

mod tables;
pub(crate) use tables::is_prime;
mod group;
mod quotient;
mod search;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::{Carrier, Rand, Structure};
use crate::tol::Tolerance;

pub use tables::{make_fp, make_krasner, make_linear_order, make_m, make_sign, make_zn};
pub use group::{make_double_coset, small_groups, Group};
pub use quotient::{make_powers_quotient, mul_quotient, quotient_by_normal, NormalCheck};
pub use search::{
    find_isomorphism, hom_to_k, hyperfield_search, ideals, prime_ideals, two_element_multigroups, SearchOutcome,
};

pub type FinSet = u128;

pub const MAX_ELEMENTS: usize = 128;

pub fn bit(i: usize) -> FinSet {
    1u128 << i
}

/// Indices of the set bits, ascending.
pub fn members(s: FinSet) -> impl Iterator<Item = usize> {
    (0..MAX_ELEMENTS).filter(move |&i| s & bit(i) != 0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMultistructure {
    name: String,
    elements: Vec<String>,
    add: Vec<FinSet>,
    mul: Option<Vec<usize>>,
    zero: usize,
    one: usize,
    neg: Vec<usize>,
}

impl FiniteMultistructure {
    /// Build from explicit tables. `add[i*n+j]` is the value set of `i+j`;
    /// `neg` is derived as the first `b` with `0 ∈ a+b` when absent.
    pub fn new(
        name: &str,
        elements: Vec<String>,
        add: Vec<FinSet>,
        mul: Option<Vec<usize>>,
        zero: usize,
        one: usize,
        neg: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = elements.len();
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::Invalid(format!("carrier size {n} outside 1..={MAX_ELEMENTS}")));
        }
        if add.len() != n * n {
            return Err(Error::Invalid("addition table is not total".into()));
        }
        let full = if n == MAX_ELEMENTS { u128::MAX } else { bit(n) - 1 };
        for (k, s) in add.iter().enumerate() {
            if *s == 0 {
                return Err(Error::Invalid(format!(
                    "empty sum {}+{}",
                    elements[k / n],
                    elements[k % n]
                )));
            }
            if s & !full != 0 {
                return Err(Error::Invalid("sum outside the carrier".into()));
            }
        }
        if let Some(m) = &mul {
            if m.len() != n * n {
                return Err(Error::Invalid("multiplication table is not total".into()));
            }
            if m.iter().any(|&k| k >= n) {
                return Err(Error::Invalid("product outside the carrier".into()));
            }
        }
        if zero >= n || one >= n {
            return Err(Error::Invalid("zero or one outside the carrier".into()));
        }
        let neg = match neg {
            Some(v) => {
                if v.len() != n || v.iter().any(|&k| k >= n) {
                    return Err(Error::Invalid("negation table malformed".into()));
                }
                v
            }
            None => (0..n)
                .map(|a| (0..n).find(|&b| add[a * n + b] & bit(zero) != 0).unwrap_or(a))
                .collect(),
        };
        let mut seen = std::collections::HashSet::new();
        for l in &elements {
            if l.is_empty() || l.contains([',', '{', '}', ' ']) || !seen.insert(l.clone()) {
                return Err(Error::Invalid(format!("bad or repeated label {l:?}")));
            }
        }
        Ok(FiniteMultistructure { name: name.into(), elements, add, mul, zero, one, neg })
    }

    /// Build from closures over indices.
    pub fn from_fns(
        name: &str,
        elements: Vec<String>,
        add: impl Fn(usize, usize) -> FinSet,
        mul: Option<&dyn Fn(usize, usize) -> usize>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = elements.len();
        let table = (0..n * n).map(|k| add(k / n, k % n)).collect();
        let mt = mul.map(|f| (0..n * n).map(|k| f(k / n, k % n)).collect());
        Self::new(name, elements, table, mt, zero, one, None)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|l| l == label)
    }

    pub fn zero_idx(&self) -> usize {
        self.zero
    }

    pub fn one_idx(&self) -> usize {
        self.one
    }

    pub fn has_mul(&self) -> bool {
        self.mul.is_some()
    }

    pub fn sum(&self, a: usize, b: usize) -> FinSet {
        self.add[a * self.len() + b]
    }

    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        self.mul.as_ref().map(|m| m[a * self.len() + b])
    }

    pub fn negation(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn full_set(&self) -> FinSet {
        if self.len() == MAX_ELEMENTS {
            u128::MAX
        } else {
            bit(self.len()) - 1
        }
    }

    pub fn sum_sets(&self, s: FinSet, t: FinSet) -> FinSet {
        let mut out = 0;
        for a in members(s) {
            for b in members(t) {
                out |= self.sum(a, b);
            }
        }
        out
    }

    pub fn is_commutative_add(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.sum(a, b) == self.sum(b, a)))
    }

    /// Replace the multiplication table.
    pub fn with_mul(&self, mul: Vec<usize>, one: usize) -> Result<Self> {
        Self::new(&self.name, self.elements.clone(), self.add.clone(), Some(mul), self.zero, one, Some(self.neg.clone()))
    }

    pub fn set_label(&self, s: FinSet) -> String {
        let parts: Vec<&str> = members(s).map(|i| self.elements[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn to_json(&self) -> String {
        let n = self.len();
        let mut add = BTreeMap::new();
        let mut mul = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                add.insert(format!("{a},{b}"), members(self.sum(a, b)).collect::<Vec<_>>());
                if let Some(p) = self.product(a, b) {
                    mul.insert(format!("{a},{b}"), p);
                }
            }
        }
        let doc = TableDoc {
            name: Some(self.name.clone()),
            elements: self.elements.clone(),
            add,
            mul: self.mul.as_ref().map(|_| mul),
            zero: self.zero,
            one: self.mul.as_ref().map(|_| self.one),
            neg: Some(self.neg.clone()),
        };
        serde_json::to_string_pretty(&doc).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TableDoc = serde_json::from_str(text)?;
        let n = doc.elements.len();
        let key = |k: &str| -> Result<(usize, usize)> {
            let (a, b) = k
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("table key {k:?} is not \"i,j\"")))?;
            let a: usize = a.trim().parse().map_err(|_| Error::Parse(format!("bad index in {k:?}")))?;
            let b: usize = b.trim().parse().map_err(|_| Error::Parse(format!("bad index in {k:?}")))?;
            if a >= n || b >= n {
                return Err(Error::Parse(format!("index out of range in {k:?}")));
            }
            Ok((a, b))
        };
        let mut add = vec![0u128; n * n];
        for (k, v) in &doc.add {
            let (a, b) = key(k)?;
            for &c in v {
                if c >= n {
                    return Err(Error::Parse(format!("sum element {c} out of range")));
                }
                add[a * n + b] |= bit(c);
            }
        }
        let mul = match &doc.mul {
            Some(m) => {
                let mut t = vec![usize::MAX; n * n];
                for (k, &v) in m {
                    let (a, b) = key(k)?;
                    t[a * n + b] = v;
                }
                if t.contains(&usize::MAX) {
                    return Err(Error::Invalid("multiplication table is not total".into()));
                }
                Some(t)
            }
            None => None,
        };
        let name = doc.name.clone().unwrap_or_else(|| "finite".into());
        Self::new(&name, doc.elements, add, mul, doc.zero, doc.one.unwrap_or(doc.zero), doc.neg)
    }
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    elements: Vec<String>,
    add: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mul: Option<BTreeMap<String, usize>>,
    zero: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    one: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    neg: Option<Vec<usize>>,
}

impl Structure for FiniteMultistructure {
    type Elem = usize;
    type Set = FinSet;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance::new(0.0)
    }

    fn zero(&self) -> usize {
        self.zero
    }

    fn one(&self) -> usize {
        self.one
    }

    fn neg(&self, a: &usize) -> usize {
        self.neg[*a]
    }

    /// Panics on a multigroup without multiplication; check [`has_mul`]
    /// first.
    ///
    /// [`has_mul`]: FiniteMultistructure::has_mul
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.product(*a, *b)
            .unwrap_or_else(|| panic!("{} has no multiplication", self.name))
    }

    fn inv(&self, a: &usize) -> Option<usize> {
        let m = self.mul.as_ref()?;
        let n = self.len();
        (0..n).find(|&b| m[a * n + b] == self.one && m[b * n + a] == self.one)
    }

    fn add(&self, a: &usize, b: &usize) -> FinSet {
        self.sum(*a, *b)
    }

    fn add_sets(&self, s: &FinSet, t: &FinSet) -> Result<FinSet> {
        Ok(self.sum_sets(*s, *t))
    }

    fn singleton(&self, a: &usize) -> FinSet {
        bit(*a)
    }

    fn elem_eq(&self, a: &usize, b: &usize) -> bool {
        a == b
    }

    fn member(&self, x: &usize, s: &FinSet) -> bool {
        s & bit(*x) != 0
    }

    fn subset(&self, s: &FinSet, t: &FinSet) -> bool {
        s & !t == 0
    }

    fn set_eq(&self, s: &FinSet, t: &FinSet) -> bool {
        s == t
    }

    fn is_empty(&self, s: &FinSet) -> bool {
        *s == 0
    }

    fn union(&self, s: &FinSet, t: &FinSet) -> FinSet {
        s | t
    }

    fn scale_left(&self, a: &usize, s: &FinSet) -> FinSet {
        members(*s).fold(0, |acc, x| acc | bit(self.mul(a, &x)))
    }

    fn scale_right(&self, s: &FinSet, a: &usize) -> FinSet {
        members(*s).fold(0, |acc, x| acc | bit(self.mul(&x, a)))
    }

    fn mul_sets(&self, s: &FinSet, t: &FinSet) -> Option<FinSet> {
        self.mul.as_ref()?;
        let mut out = 0;
        for a in members(*s) {
            for b in members(*t) {
                out |= bit(self.mul(&a, &b));
            }
        }
        Some(out)
    }

    fn carrier(&self) -> Carrier<usize> {
        Carrier::Finite((0..self.len()).collect())
    }

    fn sample(&self, rng: &mut Rand) -> usize {
        rng.gen_range(0..self.len())
    }

    fn sample_members(&self, s: &FinSet, _rng: &mut Rand, _extra: usize) -> Vec<usize> {
        members(*s).collect()
    }

    fn fmt_elem(&self, a: &usize) -> String {
        self.elements[*a].clone()
    }

    fn fmt_set(&self, s: &FinSet) -> String {
        self.set_label(*s)
    }

    fn parse_elem(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        self.index(s)
            .ok_or_else(|| Error::Parse(format!("{s:?} is not an element of {}", self.name)))
    }

    fn parse_set(&self, s: &str) -> Result<FinSet> {
        let t = s.trim();
        let inner = match t.strip_prefix('{') {
            Some(r) => r
                .strip_suffix('}')
                .ok_or_else(|| Error::Parse(format!("unbalanced braces in {t:?}")))?,
            None => return Ok(bit(self.parse_elem(t)?)),
        };
        let mut out = 0;
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            out |= bit(self.parse_elem(part)?);
        }
        if out == 0 {
            return Err(Error::InvalidSet("empty value set".into()));
        }
        Ok(out)
    }
}

/// Render the addition (and multiplication) tables as aligned text.
pub fn table_text(x: &FiniteMultistructure) -> String {
    let n = x.len();
    let mut out = String::new();
    let _ = writeln!(out, "{} ({} elements, zero={})", x.name, n, x.label(x.zero));
    for a in 0..n {
        for b in 0..n {
            let _ = write!(out, "{} + {} = {}", x.label(a), x.label(b), x.set_label(x.sum(a, b)));
            if let Some(p) = x.product(a, b) {
                let _ = write!(out, "    {} * {} = {}", x.label(a), x.label(b), x.label(p));
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_multigroup, check_multiring, CheckOptions, Level, Mode};

    #[test]
    fn m_as_tabulated_is_not_reversible() {
        // 1+1 = {2} but (-1)+(-1) = 2+2 = {1,2}; and 2 ∈ 2+2 while 2 ∉ 2+1.
        let m = make_m();
        let opts = CheckOptions::default();
        let full = check_multigroup(&m, Mode::Full, &opts);
        let min = check_multigroup(&m, Mode::Minimal, &opts);
        let inv = full.verdict(crate::axioms::Axiom::Inversion).unwrap();
        assert_eq!(inv.witness, Some(vec![1, 1, 1]));
        assert!(!min.verdict(crate::axioms::Axiom::Reversibility).unwrap().passed());
        assert!(full.verdict(crate::axioms::Axiom::Associativity).unwrap().passed());
        assert!(full.verdict(crate::axioms::Axiom::InverseUnique).unwrap().passed());
    }

    #[test]
    fn json_round_trip() {
        for x in [make_krasner(), make_sign(), make_m(), make_linear_order(4, true).unwrap()] {
            let back = FiniteMultistructure::from_json(&x.to_json()).unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn json_without_neg_derives_it() {
        let text = r#"{"elements":["0","1"],"add":{"0,0":[0],"0,1":[1],"1,0":[1],"1,1":[0,1]},
                       "mul":{"0,0":0,"0,1":0,"1,0":0,"1,1":1},"zero":0,"one":1}"#;
        let x = FiniteMultistructure::from_json(text).unwrap();
        assert_eq!(x.negation(1), 1);
        assert!(check_multiring(&x, Level::Hyperfield, &CheckOptions::default()).passed());
    }

    #[test]
    fn rejects_empty_sums_and_partial_tables() {
        let text = r#"{"elements":["0","1"],"add":{"0,0":[0],"0,1":[1],"1,0":[1]},"zero":0}"#;
        assert!(matches!(FiniteMultistructure::from_json(text), Err(Error::Invalid(_))));
        let text = r#"{"elements":["0","1"],"add":{"0,0":[0],"0,1":[1],"1,0":[1],"1,1":[2]},"zero":0}"#;
        assert!(FiniteMultistructure::from_json(text).is_err());
    }

    #[test]
    fn parse_and_format_sets() {
        let s = make_sign();
        let v = s.parse_set("{1, -1}").unwrap();
        assert_eq!(s.fmt_set(&v), "{-1,1}");
        assert_eq!(s.parse_set("0").unwrap(), bit(1));
        assert!(s.parse_set("{}").is_err());
        assert!(s.parse_elem("2").is_err());
    }

    #[test]
    fn full_and_minimal_agree_on_constructors() {
        let opts = CheckOptions::default();
        let mut all = vec![make_krasner(), make_sign(), make_fp(5).unwrap(), make_zn(6).unwrap()];
        for n in 1..=5 {
            all.push(make_linear_order(n, false).unwrap());
            all.push(make_linear_order(n, true).unwrap());
        }
        for x in &all {
            let full = check_multigroup(x, Mode::Full, &opts).passed();
            let min = check_multigroup(x, Mode::Minimal, &opts).passed();
            assert!(full, "{}", x.name());
            assert_eq!(full, min, "{}", x.name());
            for a in 0..x.len() {
                assert_eq!(x.negation(x.negation(a)), a);
            }
            assert_eq!(x.negation(x.zero_idx()), x.zero_idx());
        }
    }
}
