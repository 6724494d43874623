//! Axiom checking for multigroups, multirings, hyperrings and hyperfields,
//! characteristics, and homomorphism checks.
//!
//! Finite carriers are enumerated exhaustively. Continuous carriers are
//! checked over a seeded, stratified sample of tuples; each tuple is
//! evaluated independently (in parallel) and results are merged in tuple
//! order, so reports are deterministic for a fixed seed.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::structure::{stratified, sum_list, Carrier, Rand, Structure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    NonEmpty,
    Associativity,
    Identity,
    Inverse,
    InverseUnique,
    Inversion,
    WeakAssociativity,
    RightIdentity,
    Reversibility,
    AddCommutativity,
    MulAssociativity,
    MulIdentity,
    ZeroAbsorbing,
    LeftDistributivity,
    RightDistributivity,
    MulCommutativity,
    MulInverse,
    NoZeroDivisors,
    Nontrivial,
    HalfDoubleDistributivity,
    DoubleDistributivity,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::NonEmpty => "nonempty",
            Axiom::Associativity => "associativity",
            Axiom::Identity => "identity",
            Axiom::Inverse => "inverse",
            Axiom::InverseUnique => "inverse-unique",
            Axiom::Inversion => "inversion",
            Axiom::WeakAssociativity => "weak-associativity",
            Axiom::RightIdentity => "right-identity",
            Axiom::Reversibility => "reversibility",
            Axiom::AddCommutativity => "add-commutativity",
            Axiom::MulAssociativity => "mul-associativity",
            Axiom::MulIdentity => "mul-identity",
            Axiom::ZeroAbsorbing => "zero-absorbing",
            Axiom::LeftDistributivity => "left-distributivity",
            Axiom::RightDistributivity => "right-distributivity",
            Axiom::MulCommutativity => "mul-commutativity",
            Axiom::MulInverse => "mul-inverse",
            Axiom::NoZeroDivisors => "no-zero-divisors",
            Axiom::Nontrivial => "nontrivial",
            Axiom::HalfDoubleDistributivity => "half-double-distributivity",
            Axiom::DoubleDistributivity => "double-distributivity",
        }
    }

    /// Number of elements in a witness tuple.
    pub fn arity(self) -> usize {
        use Axiom::*;
        match self {
            Nontrivial => 0,
            Identity | Inverse | RightIdentity | MulIdentity | ZeroAbsorbing | MulInverse => 1,
            NonEmpty | InverseUnique | AddCommutativity | MulCommutativity | NoZeroDivisors => 2,
            HalfDoubleDistributivity | DoubleDistributivity => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Axiom {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_AXIOMS
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown axiom `{s}`")))
    }
}

const ALL_AXIOMS: [Axiom; 21] = [
    Axiom::NonEmpty,
    Axiom::Associativity,
    Axiom::Identity,
    Axiom::Inverse,
    Axiom::InverseUnique,
    Axiom::Inversion,
    Axiom::WeakAssociativity,
    Axiom::RightIdentity,
    Axiom::Reversibility,
    Axiom::AddCommutativity,
    Axiom::MulAssociativity,
    Axiom::MulIdentity,
    Axiom::ZeroAbsorbing,
    Axiom::LeftDistributivity,
    Axiom::RightDistributivity,
    Axiom::MulCommutativity,
    Axiom::MulInverse,
    Axiom::NoZeroDivisors,
    Axiom::Nontrivial,
    Axiom::HalfDoubleDistributivity,
    Axiom::DoubleDistributivity,
];

/// Axioms (1)–(4) or the minimal reversibility form (1')–(3').
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Full,
    Minimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Multiring,
    Hyperring,
    Hyperfield,
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub budget: usize,
    pub seed: u64,
    pub fail_fast: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { budget: 10_000, seed: 0x5eed, fail_fast: false }
    }
}

impl CheckOptions {
    pub fn sampled(budget: usize, seed: u64) -> Self {
        CheckOptions { budget, seed, fail_fast: false }
    }
}

/// Result of evaluating one axiom on one tuple.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// Hypothesis of the axiom not met by this tuple.
    Vacuous,
}

#[derive(Debug, Clone)]
pub struct Verdict<E> {
    pub axiom: Axiom,
    pub checked: usize,
    pub failures: usize,
    pub witness: Option<Vec<E>>,
    pub witness_text: Option<String>,
    pub detail: Option<String>,
}

impl<E> Verdict<E> {
    fn new(axiom: Axiom) -> Self {
        Verdict { axiom, checked: 0, failures: 0, witness: None, witness_text: None, detail: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone)]
pub struct AxiomReport<E> {
    pub structure: String,
    pub scope: String,
    pub exhaustive: bool,
    pub tuples: usize,
    pub verdicts: Vec<Verdict<E>>,
    /// Pair count per addition branch over the checked tuples.
    pub branches: BTreeMap<String, usize>,
}

#[derive(Serialize)]
struct VerdictDoc<'a> {
    axiom: &'a str,
    verdict: &'a str,
    checked: usize,
    failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<&'a str>,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    structure: &'a str,
    scope: &'a str,
    exhaustive: bool,
    tuples: usize,
    passed: bool,
    verdicts: Vec<VerdictDoc<'a>>,
    branches: &'a BTreeMap<String, usize>,
}

impl<E> AxiomReport<E> {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(Verdict::passed)
    }

    pub fn verdict(&self, axiom: Axiom) -> Option<&Verdict<E>> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Verdict<E>> {
        self.verdicts.iter().filter(|v| !v.passed())
    }

    /// Branch labels of `expected` never reached.
    pub fn missing_branches(&self, expected: &[&str]) -> Vec<String> {
        expected
            .iter()
            .filter(|b| self.branches.get(**b).copied().unwrap_or(0) == 0)
            .map(|b| b.to_string())
            .collect()
    }

    /// One `axiom=<name> verdict=<pass|fail> witness=<...> checked=<n>` line
    /// per axiom.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            let w = v.witness_text.as_deref().unwrap_or("-");
            out.push_str(&format!(
                "axiom={} verdict={} witness={} checked={}",
                v.axiom,
                if v.passed() { "pass" } else { "fail" },
                w,
                v.checked
            ));
            if let Some(d) = &v.detail {
                out.push_str(&format!(" detail=\"{}\"", d.replace('"', "'")));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = ReportDoc {
            structure: &self.structure,
            scope: &self.scope,
            exhaustive: self.exhaustive,
            tuples: self.tuples,
            passed: self.passed(),
            verdicts: self
                .verdicts
                .iter()
                .map(|v| VerdictDoc {
                    axiom: v.axiom.name(),
                    verdict: if v.passed() { "pass" } else { "fail" },
                    checked: v.checked,
                    failures: v.failures,
                    witness: v.witness_text.as_deref(),
                    detail: v.detail.as_deref(),
                })
                .collect(),
            branches: &self.branches,
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }
}

pub(crate) fn witness_text<S: Structure + ?Sized>(x: &S, t: &[S::Elem]) -> String {
    let parts: Vec<String> = t.iter().map(|e| x.fmt_elem(e).replace(' ', "")).collect();
    format!("({})", parts.join(","))
}

fn fail(msg: String) -> Outcome {
    Outcome::Fail(msg)
}

macro_rules! sum {
    ($x:expr, $s:expr, $t:expr) => {
        match $x.add_sets($s, $t) {
            Ok(v) => v,
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    };
}

/// Evaluate one axiom on a concrete tuple. `equality` selects equality
/// distributivity (hyperring level) over inclusion.
pub fn evaluate<S: Structure + ?Sized>(
    x: &S,
    axiom: Axiom,
    t: &[S::Elem],
    equality: bool,
) -> Outcome {
    assert!(t.len() >= axiom.arity(), "tuple too short for {axiom}");
    let one = |e: &S::Elem| x.singleton(e);
    let z = x.zero();
    match axiom {
        Axiom::NonEmpty => {
            if x.is_empty(&x.add(&t[0], &t[1])) {
                fail("empty sum".into())
            } else {
                Outcome::Pass
            }
        }
        Axiom::Associativity | Axiom::WeakAssociativity => {
            let (a, b, c) = (&t[0], &t[1], &t[2]);
            let left = sum!(x, &x.add(a, b), &one(c));
            let right = sum!(x, &one(a), &x.add(b, c));
            let ok = if axiom == Axiom::Associativity {
                x.set_eq(&left, &right)
            } else {
                x.subset(&left, &right)
            };
            if ok {
                Outcome::Pass
            } else {
                fail(format!("(ab)c = {} vs a(bc) = {}", x.fmt_set(&left), x.fmt_set(&right)))
            }
        }
        Axiom::Identity | Axiom::RightIdentity => {
            let a = &t[0];
            let r = x.add(a, &z);
            if !x.set_eq(&r, &one(a)) {
                return fail(format!("a+0 = {}", x.fmt_set(&r)));
            }
            if axiom == Axiom::Identity {
                let l = x.add(&z, a);
                if !x.set_eq(&l, &one(a)) {
                    return fail(format!("0+a = {}", x.fmt_set(&l)));
                }
            }
            Outcome::Pass
        }
        Axiom::Inverse => {
            let a = &t[0];
            let n = x.neg(a);
            if !x.member(&z, &x.add(a, &n)) || !x.member(&z, &x.add(&n, a)) {
                return fail(format!("0 not in a+(-a) for -a = {}", x.fmt_elem(&n)));
            }
            if !x.elem_eq(&x.neg(&n), a) {
                return fail("neg is not an involution".into());
            }
            Outcome::Pass
        }
        Axiom::InverseUnique => {
            let (a, b) = (&t[0], &t[1]);
            if x.elem_eq(b, &x.neg(a)) {
                return Outcome::Vacuous;
            }
            if x.member(&z, &x.add(a, b)) || x.member(&z, &x.add(b, a)) {
                fail(format!("0 in a+b with b != -a = {}", x.fmt_elem(&x.neg(a))))
            } else {
                Outcome::Pass
            }
        }
        Axiom::Inversion => {
            let (a, b, c) = (&t[0], &t[1], &t[2]);
            let lhs = x.member(c, &x.add(a, b));
            let rhs = x.member(&x.neg(c), &x.add(&x.neg(b), &x.neg(a)));
            if lhs == rhs {
                Outcome::Pass
            } else {
                fail(format!("c in a+b is {lhs}, -c in -b+-a is {rhs}"))
            }
        }
        Axiom::Reversibility => {
            let (a, b, c) = (&t[0], &t[1], &t[2]);
            if !x.member(c, &x.add(a, b)) {
                return Outcome::Vacuous;
            }
            if !x.member(a, &x.add(c, &x.neg(b))) {
                return fail("a not in c+(-b)".into());
            }
            if !x.member(b, &x.add(&x.neg(a), c)) {
                return fail("b not in (-a)+c".into());
            }
            Outcome::Pass
        }
        Axiom::AddCommutativity => {
            let (a, b) = (&t[0], &t[1]);
            if x.set_eq(&x.add(a, b), &x.add(b, a)) {
                Outcome::Pass
            } else {
                fail("a+b != b+a".into())
            }
        }
        Axiom::MulAssociativity => {
            let (a, b, c) = (&t[0], &t[1], &t[2]);
            let l = x.mul(&x.mul(a, b), c);
            let r = x.mul(a, &x.mul(b, c));
            if x.elem_eq(&l, &r) {
                Outcome::Pass
            } else {
                fail(format!("(ab)c = {} vs a(bc) = {}", x.fmt_elem(&l), x.fmt_elem(&r)))
            }
        }
        Axiom::MulIdentity => {
            let a = &t[0];
            let u = x.one();
            if x.elem_eq(&x.mul(&u, a), a) && x.elem_eq(&x.mul(a, &u), a) {
                Outcome::Pass
            } else {
                fail("1a != a".into())
            }
        }
        Axiom::ZeroAbsorbing => {
            let a = &t[0];
            if x.elem_eq(&x.mul(&z, a), &z) && x.elem_eq(&x.mul(a, &z), &z) {
                Outcome::Pass
            } else {
                fail("0a != 0".into())
            }
        }
        Axiom::LeftDistributivity | Axiom::RightDistributivity => {
            let (a, b, c) = (&t[0], &t[1], &t[2]);
            let (l, r) = if axiom == Axiom::LeftDistributivity {
                (x.scale_left(a, &x.add(b, c)), x.add(&x.mul(a, b), &x.mul(a, c)))
            } else {
                (x.scale_right(&x.add(b, c), a), x.add(&x.mul(b, a), &x.mul(c, a)))
            };
            let ok = if equality { x.set_eq(&l, &r) } else { x.subset(&l, &r) };
            if ok {
                Outcome::Pass
            } else {
                fail(format!("a(b+c) = {} vs ab+ac = {}", x.fmt_set(&l), x.fmt_set(&r)))
            }
        }
        Axiom::MulCommutativity => {
            let (a, b) = (&t[0], &t[1]);
            if x.elem_eq(&x.mul(a, b), &x.mul(b, a)) {
                Outcome::Pass
            } else {
                fail("ab != ba".into())
            }
        }
        Axiom::MulInverse => {
            let a = &t[0];
            if x.elem_eq(a, &z) {
                return Outcome::Vacuous;
            }
            match x.inv(a) {
                None => fail("no inverse".into()),
                Some(i) => {
                    let u = x.one();
                    if x.elem_eq(&x.mul(a, &i), &u) && x.elem_eq(&x.mul(&i, a), &u) {
                        Outcome::Pass
                    } else {
                        fail(format!("a*inv(a) = {}", x.fmt_elem(&x.mul(a, &i))))
                    }
                }
            }
        }
        Axiom::NoZeroDivisors => {
            let (a, b) = (&t[0], &t[1]);
            if x.elem_eq(a, &z) || x.elem_eq(b, &z) {
                return Outcome::Vacuous;
            }
            if x.elem_eq(&x.mul(a, b), &z) {
                fail("ab = 0".into())
            } else {
                Outcome::Pass
            }
        }
        Axiom::Nontrivial => {
            if x.elem_eq(&z, &x.one()) {
                fail("0 = 1".into())
            } else {
                Outcome::Pass
            }
        }
        Axiom::HalfDoubleDistributivity | Axiom::DoubleDistributivity => {
            let (a, b, c, d) = (&t[0], &t[1], &t[2], &t[3]);
            let rhs = match sum_list(x, &[x.mul(a, c), x.mul(a, d), x.mul(b, c), x.mul(b, d)]) {
                Ok(v) => v,
                Err(e) => return fail(e.to_string()),
            };
            let (s, u) = (x.add(a, b), x.add(c, d));
            match x.mul_sets(&s, &u) {
                Some(lhs) => {
                    let ok = if axiom == Axiom::HalfDoubleDistributivity {
                        x.subset(&lhs, &rhs)
                    } else {
                        x.subset(&rhs, &lhs)
                    };
                    if ok {
                        Outcome::Pass
                    } else {
                        fail(format!(
                            "(a+b)(x+y) = {} vs ax+ay+bx+by = {}",
                            x.fmt_set(&lhs),
                            x.fmt_set(&rhs)
                        ))
                    }
                }
                None if axiom == Axiom::HalfDoubleDistributivity => {
                    let mut rng = Rand::seed_from_u64(0xd0d1);
                    for p in x.sample_members(&s, &mut rng, 6) {
                        for q in x.sample_members(&u, &mut rng, 6) {
                            if !x.member(&x.mul(&p, &q), &rhs) {
                                return fail(format!(
                                    "product {} not in {}",
                                    x.fmt_elem(&x.mul(&p, &q)),
                                    x.fmt_set(&rhs)
                                ));
                            }
                        }
                    }
                    Outcome::Pass
                }
                None => Outcome::Vacuous,
            }
        }
    }
}

/// Replay a witness: true when the failure reproduces.
pub fn replay<S: Structure + ?Sized>(x: &S, axiom: Axiom, witness: &[S::Elem], equality: bool) -> bool {
    matches!(evaluate(x, axiom, witness, equality), Outcome::Fail(_))
}

struct Plan {
    unary: Vec<Axiom>,
    binary: Vec<Axiom>,
    ternary: Vec<Axiom>,
    /// Ternary axioms whose third element should range over members of a+b.
    member_quantified: Vec<Axiom>,
    equality: bool,
}

fn multigroup_plan(mode: Mode) -> Plan {
    match mode {
        Mode::Full => Plan {
            unary: vec![Axiom::Identity, Axiom::Inverse],
            binary: vec![Axiom::NonEmpty, Axiom::InverseUnique],
            ternary: vec![Axiom::Associativity, Axiom::Inversion],
            member_quantified: vec![Axiom::Inversion],
            equality: true,
        },
        Mode::Minimal => Plan {
            unary: vec![Axiom::RightIdentity],
            binary: vec![Axiom::NonEmpty],
            ternary: vec![Axiom::WeakAssociativity, Axiom::Reversibility],
            member_quantified: vec![Axiom::Reversibility],
            equality: true,
        },
    }
}

fn multiring_plan(level: Level) -> Plan {
    let mut p = multigroup_plan(Mode::Full);
    p.binary.push(Axiom::AddCommutativity);
    p.unary.extend([Axiom::MulIdentity, Axiom::ZeroAbsorbing]);
    p.ternary.extend([
        Axiom::MulAssociativity,
        Axiom::LeftDistributivity,
        Axiom::RightDistributivity,
    ]);
    p.equality = level >= Level::Hyperring;
    if level == Level::Hyperfield {
        p.unary.push(Axiom::MulInverse);
        p.binary.extend([Axiom::MulCommutativity, Axiom::NoZeroDivisors]);
    }
    p
}

fn all_axioms(plan: &Plan, nontrivial: bool) -> Vec<Axiom> {
    let mut v = Vec::new();
    if nontrivial {
        v.push(Axiom::Nontrivial);
    }
    v.extend(&plan.unary);
    v.extend(&plan.binary);
    v.extend(&plan.ternary);
    v
}

type TupleResult<E> = Vec<(Axiom, Vec<E>, Outcome)>;

fn eval_tuple<S: Structure + ?Sized>(
    x: &S,
    plan: &Plan,
    t: &[S::Elem],
    extra_members: usize,
    rng: &mut Rand,
) -> TupleResult<S::Elem> {
    let mut out = Vec::new();
    for &ax in &plan.unary {
        out.push((ax, t[..1].to_vec(), evaluate(x, ax, &t[..1], plan.equality)));
    }
    for &ax in &plan.binary {
        out.push((ax, t[..2].to_vec(), evaluate(x, ax, &t[..2], plan.equality)));
    }
    let mut members: Option<Vec<S::Elem>> = None;
    for &ax in &plan.ternary {
        out.push((ax, t[..3].to_vec(), evaluate(x, ax, &t[..3], plan.equality)));
        if extra_members > 0 && plan.member_quantified.contains(&ax) {
            let ms = members.get_or_insert_with(|| {
                x.sample_members(&x.add(&t[0], &t[1]), rng, extra_members)
            });
            for c in ms.iter() {
                let tt = vec![t[0].clone(), t[1].clone(), c.clone()];
                let o = evaluate(x, ax, &tt, plan.equality);
                out.push((ax, tt, o));
            }
        }
    }
    out
}

fn merge<S: Structure + ?Sized>(
    x: &S,
    axioms: &[Axiom],
    results: impl IntoIterator<Item = TupleResult<S::Elem>>,
) -> Vec<Verdict<S::Elem>> {
    let mut verdicts: Vec<Verdict<S::Elem>> = axioms.iter().map(|&a| Verdict::new(a)).collect();
    for tuple in results {
        for (ax, t, o) in tuple {
            let v = verdicts.iter_mut().find(|v| v.axiom == ax).expect("planned axiom");
            match o {
                Outcome::Pass => v.checked += 1,
                Outcome::Vacuous => {}
                Outcome::Fail(msg) => {
                    v.checked += 1;
                    v.failures += 1;
                    if v.witness.is_none() {
                        v.witness_text = Some(witness_text(x, &t));
                        v.witness = Some(t);
                        v.detail = Some(msg);
                    }
                }
            }
        }
    }
    verdicts
}

fn tuple_rng(seed: u64, idx: usize) -> Rand {
    Rand::seed_from_u64(seed ^ (idx as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Seeded stratified tuples of the given arity, probes first.
pub fn sample_tuples<S: Structure + ?Sized>(x: &S, arity: usize, opts: &CheckOptions) -> Vec<Vec<S::Elem>> {
    let mut rng = Rand::seed_from_u64(opts.seed);
    let mut out: Vec<Vec<S::Elem>> = Vec::new();
    for p in x.probes() {
        if p.len() >= arity {
            out.push(p[..arity].to_vec());
        } else {
            let mut p = p;
            while p.len() < arity {
                let e = stratified(x, &p, &mut rng);
                p.push(e);
            }
            out.push(p);
        }
    }
    while out.len() < opts.budget {
        let mut t = Vec::with_capacity(arity);
        for _ in 0..arity {
            let e = stratified(x, &t, &mut rng);
            t.push(e);
        }
        out.push(t);
    }
    out.truncate(opts.budget.max(x.probes().len().min(opts.budget)));
    out
}

fn run<S: Structure + ?Sized>(
    x: &S,
    plan: Plan,
    scope: String,
    nontrivial: bool,
    opts: &CheckOptions,
) -> AxiomReport<S::Elem> {
    let axioms = all_axioms(&plan, nontrivial);
    let mut pre: TupleResult<S::Elem> = Vec::new();
    if nontrivial {
        pre.push((Axiom::Nontrivial, vec![], evaluate(x, Axiom::Nontrivial, &[], false)));
    }
    let mut branches = BTreeMap::new();
    let (results, tuples, exhaustive): (Vec<TupleResult<S::Elem>>, usize, bool) = match x.carrier() {
        Carrier::Finite(elems) => {
            let mut res = vec![pre];
            let mut count = 0;
            'outer: for a in &elems {
                let mut r = Vec::new();
                for &ax in &plan.unary {
                    r.push((ax, vec![a.clone()], evaluate(x, ax, std::slice::from_ref(a), plan.equality)));
                }
                for b in &elems {
                    *branches.entry(x.branch(a, b).to_string()).or_insert(0) += 1;
                    let ab = [a.clone(), b.clone()];
                    for &ax in &plan.binary {
                        r.push((ax, ab.to_vec(), evaluate(x, ax, &ab, plan.equality)));
                    }
                    for c in &elems {
                        count += 1;
                        let abc = [a.clone(), b.clone(), c.clone()];
                        for &ax in &plan.ternary {
                            r.push((ax, abc.to_vec(), evaluate(x, ax, &abc, plan.equality)));
                        }
                    }
                }
                let failed = r.iter().any(|e| matches!(e.2, Outcome::Fail(_)));
                res.push(r);
                if opts.fail_fast && failed {
                    break 'outer;
                }
            }
            (res, count, true)
        }
        Carrier::Sampled => {
            let tuples = sample_tuples(x, 3, opts);
            for t in &tuples {
                *branches.entry(x.branch(&t[0], &t[1]).to_string()).or_insert(0) += 1;
                *branches.entry(x.branch(&t[1], &t[2]).to_string()).or_insert(0) += 1;
            }
            let n = tuples.len();
            let mut res = vec![pre];
            if opts.fail_fast {
                for (i, t) in tuples.iter().enumerate() {
                    let r = eval_tuple(x, &plan, t, 2, &mut tuple_rng(opts.seed, i));
                    let failed = r.iter().any(|e| matches!(e.2, Outcome::Fail(_)));
                    res.push(r);
                    if failed {
                        break;
                    }
                }
            } else {
                res.extend(
                    tuples
                        .par_iter()
                        .enumerate()
                        .map(|(i, t)| eval_tuple(x, &plan, t, 2, &mut tuple_rng(opts.seed, i)))
                        .collect::<Vec<_>>(),
                );
            }
            (res, n, false)
        }
    };
    AxiomReport {
        structure: x.name(),
        scope,
        exhaustive,
        tuples,
        verdicts: merge(x, &axioms, results),
        branches,
    }
}

/// Check axioms (1)–(4) (`Mode::Full`) or (1')–(3') (`Mode::Minimal`).
pub fn check_multigroup<S: Structure + ?Sized>(x: &S, mode: Mode, opts: &CheckOptions) -> AxiomReport<S::Elem> {
    let scope = match mode {
        Mode::Full => "multigroup",
        Mode::Minimal => "multigroup-minimal",
    };
    run(x, multigroup_plan(mode), scope.into(), false, opts)
}

/// Check the multiring axioms; `Hyperring` upgrades distributivity to
/// equality, `Hyperfield` adds the multiplicative group checks.
pub fn check_multiring<S: Structure + ?Sized>(x: &S, level: Level, opts: &CheckOptions) -> AxiomReport<S::Elem> {
    let scope = match level {
        Level::Multiring => "multiring",
        Level::Hyperring => "hyperring",
        Level::Hyperfield => "hyperfield",
    };
    run(x, multiring_plan(level), scope.into(), level == Level::Hyperfield, opts)
}

/// Half double distributivity `(a+b)(x+y) ⊆ ax+ay+bx+by` is asserted on every
/// checked tuple and a violation is returned as [`Error::Structural`]. The
/// report's verdict covers the reverse inclusion (double distributivity).
pub fn check_double_distributivity<S: Structure + ?Sized>(
    x: &S,
    opts: &CheckOptions,
) -> Result<AxiomReport<S::Elem>> {
    let (tuples, exhaustive): (Vec<Vec<S::Elem>>, bool) = match x.carrier() {
        Carrier::Finite(elems) => {
            let mut v = Vec::new();
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        for d in &elems {
                            v.push(vec![a.clone(), b.clone(), c.clone(), d.clone()]);
                        }
                    }
                }
            }
            (v, true)
        }
        Carrier::Sampled => (sample_tuples(x, 4, opts), false),
    };
    let outcomes: Vec<(Outcome, Outcome)> = tuples
        .par_iter()
        .map(|t| {
            (
                evaluate(x, Axiom::HalfDoubleDistributivity, t, false),
                evaluate(x, Axiom::DoubleDistributivity, t, false),
            )
        })
        .collect();
    let mut half = Verdict::new(Axiom::HalfDoubleDistributivity);
    let mut full = Verdict::new(Axiom::DoubleDistributivity);
    for (t, (h, d)) in tuples.iter().zip(outcomes) {
        if let Outcome::Fail(msg) = h {
            return Err(Error::Structural(format!(
                "half double distributivity fails at {}: {msg}",
                witness_text(x, t)
            )));
        }
        half.checked += 1;
        match d {
            Outcome::Pass => full.checked += 1,
            Outcome::Vacuous => {}
            Outcome::Fail(msg) => {
                full.checked += 1;
                full.failures += 1;
                if full.witness.is_none() {
                    full.witness_text = Some(witness_text(x, t));
                    full.witness = Some(t.clone());
                    full.detail = Some(msg);
                }
            }
        }
    }
    Ok(AxiomReport {
        structure: x.name(),
        scope: "double-distributivity".into(),
        exhaustive,
        tuples: tuples.len(),
        verdicts: vec![half, full],
        branches: BTreeMap::new(),
    })
}

/// A characteristic value: a positive count, or 0 with a flag telling whether
/// the iterated sum provably stabilized (`exact`) or the cap was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Characteristic {
    Finite(usize),
    Zero { exact: bool },
}

impl Characteristic {
    pub fn value(self) -> usize {
        match self {
            Characteristic::Finite(n) => n,
            Characteristic::Zero { .. } => 0,
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Finite(n) => write!(f, "{n}"),
            Characteristic::Zero { exact: true } => write!(f, "0"),
            Characteristic::Zero { exact: false } => write!(f, "0 (cap reached)"),
        }
    }
}

fn fold_ones<S: Structure + ?Sized>(
    x: &S,
    cap: usize,
    target: &S::Elem,
    offset: usize,
) -> Result<Characteristic> {
    let one = x.singleton(&x.one());
    let mut s = one.clone();
    if offset == 0 && x.member(target, &s) {
        return Ok(Characteristic::Finite(1));
    }
    // `s` holds the k-fold sum; the answer for k summands is k - offset.
    for k in 2..=cap.max(2) + offset {
        let next = x.add_sets(&s, &one)?;
        if x.member(target, &next) {
            return Ok(Characteristic::Finite(k - offset));
        }
        if x.set_eq(&next, &s) {
            return Ok(Characteristic::Zero { exact: true });
        }
        s = next;
    }
    Ok(Characteristic::Zero { exact: false })
}

/// Least `n ≤ cap` with `0` in the n-fold sum of `1`.
pub fn characteristic<S: Structure + ?Sized>(x: &S, cap: usize) -> Result<Characteristic> {
    fold_ones(x, cap, &x.zero(), 0)
}

/// Least `n ≤ cap` with `1` in the (n+1)-fold sum of `1`.
pub fn c_characteristic<S: Structure + ?Sized>(x: &S, cap: usize) -> Result<Characteristic> {
    fold_ones(x, cap, &x.one(), 1)
}

/// A map between carriers, optionally with its action on value sets.
pub struct ElemMap<'a, X: Structure + ?Sized, Y: Structure + ?Sized> {
    pub name: String,
    pub point: Box<dyn Fn(&X::Elem) -> Y::Elem + Sync + 'a>,
    /// Exact image of a value set (used for strongness).
    pub set: Option<Box<dyn Fn(&X::Set) -> Y::Set + Sync + 'a>>,
    /// Whether to check multiplicativity (false for multigroup maps).
    pub multiplicative: bool,
}

impl<'a, X: Structure + ?Sized, Y: Structure + ?Sized> ElemMap<'a, X, Y> {
    pub fn new(name: &str, f: impl Fn(&X::Elem) -> Y::Elem + Sync + 'a) -> Self {
        ElemMap { name: name.into(), point: Box::new(f), set: None, multiplicative: true }
    }

    pub fn with_set(mut self, g: impl Fn(&X::Set) -> Y::Set + Sync + 'a) -> Self {
        self.set = Some(Box::new(g));
        self
    }

    pub fn additive_only(mut self) -> Self {
        self.multiplicative = false;
        self
    }

    pub fn apply(&self, a: &X::Elem) -> Y::Elem {
        (self.point)(a)
    }
}

#[derive(Debug, Clone)]
pub struct HomReport<E> {
    pub map: String,
    pub domain: String,
    pub codomain: String,
    pub pairs: usize,
    /// `additive`, `multiplicative`, `unit`, `zero`.
    pub verdicts: Vec<HomVerdict<E>>,
    /// `Some(true)` when every checked pair had `f(a+b) = f(a)+f(b)`.
    pub strong: Option<bool>,
    pub strong_witness: Option<String>,
    pub kernel: Vec<String>,
    pub mult_kernel: Vec<String>,
    /// Decided only for finite domains.
    pub injective: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct HomVerdict<E> {
    pub property: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub witness: Option<Vec<E>>,
    pub witness_text: Option<String>,
    pub detail: Option<String>,
}

impl<E> HomVerdict<E> {
    fn new(property: &'static str) -> Self {
        HomVerdict { property, checked: 0, failures: 0, witness: None, witness_text: None, detail: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl<E> HomReport<E> {
    pub fn is_hom(&self) -> bool {
        self.verdicts.iter().all(HomVerdict::passed)
    }

    pub fn verdict(&self, property: &str) -> Option<&HomVerdict<E>> {
        self.verdicts.iter().find(|v| v.property == property)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "map={} domain={} codomain={} homomorphism={} strong={} injective={}\n",
            self.map,
            self.domain,
            self.codomain,
            self.is_hom(),
            self.strong.map_or("unknown".into(), |s| s.to_string()),
            self.injective.map_or("unknown".into(), |s| s.to_string()),
        );
        for v in &self.verdicts {
            out.push_str(&format!(
                "property={} verdict={} witness={} checked={}\n",
                v.property,
                if v.passed() { "pass" } else { "fail" },
                v.witness_text.as_deref().unwrap_or("-"),
                v.checked
            ));
        }
        out.push_str(&format!("kernel={}\n", short_list(&self.kernel)));
        out.push_str(&format!("mult-kernel={}\n", short_list(&self.mult_kernel)));
        out
    }

    pub fn to_json(&self) -> String {
        let v: Vec<serde_json::Value> = self
            .verdicts
            .iter()
            .map(|v| {
                serde_json::json!({
                    "property": v.property,
                    "verdict": if v.passed() { "pass" } else { "fail" },
                    "checked": v.checked,
                    "failures": v.failures,
                    "witness": v.witness_text,
                    "detail": v.detail,
                })
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "map": self.map,
            "domain": self.domain,
            "codomain": self.codomain,
            "homomorphism": self.is_hom(),
            "strong": self.strong,
            "injective": self.injective,
            "verdicts": v,
            "kernel": self.kernel,
            "mult_kernel": self.mult_kernel,
        }))
        .expect("report serializes")
    }
}

/// Check `f` on all pairs of a finite domain or on seeded stratified pairs.
pub fn check_hom<X: Structure + ?Sized, Y: Structure + ?Sized>(
    f: &ElemMap<'_, X, Y>,
    x: &X,
    y: &Y,
    opts: &CheckOptions,
) -> HomReport<X::Elem> {
    let (pairs, finite) = match x.carrier() {
        Carrier::Finite(elems) => {
            let mut v = Vec::new();
            for a in &elems {
                for b in &elems {
                    v.push((a.clone(), b.clone()));
                }
            }
            (v, Some(elems))
        }
        Carrier::Sampled => (
            sample_tuples(x, 2, opts)
                .into_iter()
                .map(|t| (t[0].clone(), t[1].clone()))
                .collect(),
            None,
        ),
    };
    check_hom_pairs(f, x, y, &pairs, finite.as_deref(), opts.seed)
}

/// Check `f` on the given pairs. `domain` enables the injectivity verdict.
pub fn check_hom_pairs<X: Structure + ?Sized, Y: Structure + ?Sized>(
    f: &ElemMap<'_, X, Y>,
    x: &X,
    y: &Y,
    pairs: &[(X::Elem, X::Elem)],
    domain: Option<&[X::Elem]>,
    seed: u64,
) -> HomReport<X::Elem> {
    let exact_domain = domain.is_some();
    let per_pair: Vec<(Outcome, Outcome, Option<bool>)> = pairs
        .par_iter()
        .enumerate()
        .map(|(i, (a, b))| {
            let mut rng = tuple_rng(seed, i);
            let (fa, fb) = (f.apply(a), f.apply(b));
            let target = y.add(&fa, &fb);
            let sum = x.add(a, b);
            let mut additive = Outcome::Pass;
            let mut strong = None;
            if let Some(g) = &f.set {
                let img = g(&sum);
                if !y.subset(&img, &target) {
                    additive = fail(format!("f(a+b) = {} not in {}", y.fmt_set(&img), y.fmt_set(&target)));
                }
                strong = Some(y.set_eq(&img, &target));
            }
            if additive == Outcome::Pass {
                let pts = x.sample_members(&sum, &mut rng, 6);
                for p in &pts {
                    let fp = f.apply(p);
                    if !y.member(&fp, &target) {
                        additive = fail(format!(
                            "f({}) = {} not in {}",
                            x.fmt_elem(p),
                            y.fmt_elem(&fp),
                            y.fmt_set(&target)
                        ));
                        break;
                    }
                }
                if strong.is_none() && exact_domain {
                    let mut img = y.singleton(&f.apply(&pts[0]));
                    for p in &pts[1..] {
                        img = y.union(&img, &y.singleton(&f.apply(p)));
                    }
                    strong = Some(y.set_eq(&img, &target));
                }
            }
            let mult = if f.multiplicative {
                let l = f.apply(&x.mul(a, b));
                let r = y.mul(&fa, &fb);
                if y.elem_eq(&l, &r) {
                    Outcome::Pass
                } else {
                    fail(format!("f(ab) = {} vs f(a)f(b) = {}", y.fmt_elem(&l), y.fmt_elem(&r)))
                }
            } else {
                Outcome::Vacuous
            };
            (additive, mult, strong)
        })
        .collect();

    let mut additive = HomVerdict::new("additive");
    let mut mult = HomVerdict::new("multiplicative");
    let mut strong_all: Option<bool> = None;
    let mut strong_witness = None;
    for ((a, b), (ad, mu, st)) in pairs.iter().zip(per_pair) {
        for (v, o) in [(&mut additive, ad), (&mut mult, mu)] {
            match o {
                Outcome::Pass => v.checked += 1,
                Outcome::Vacuous => {}
                Outcome::Fail(msg) => {
                    v.checked += 1;
                    v.failures += 1;
                    if v.witness.is_none() {
                        v.witness_text = Some(witness_text(x, &[a.clone(), b.clone()]));
                        v.witness = Some(vec![a.clone(), b.clone()]);
                        v.detail = Some(msg);
                    }
                }
            }
        }
        if let Some(s) = st {
            if !s && strong_witness.is_none() {
                strong_witness = Some(witness_text(x, &[a.clone(), b.clone()]));
            }
            strong_all = Some(strong_all.unwrap_or(true) && s);
        }
    }

    let mut unit = HomVerdict::new("unit");
    let mut zero = HomVerdict::new("zero");
    unit.checked = 1;
    zero.checked = 1;
    if f.multiplicative && !y.elem_eq(&f.apply(&x.one()), &y.one()) {
        unit.failures = 1;
        unit.witness_text = Some(witness_text(x, &[x.one()]));
        unit.witness = Some(vec![x.one()]);
    }
    if !y.elem_eq(&f.apply(&x.zero()), &y.zero()) {
        zero.failures = 1;
        zero.witness_text = Some(witness_text(x, &[x.zero()]));
        zero.witness = Some(vec![x.zero()]);
    }

    // Kernel and multiplicative kernel over the checked domain.
    let mut seen: Vec<X::Elem> = Vec::new();
    let dom_iter: Vec<X::Elem> = match domain {
        Some(d) => d.to_vec(),
        None => pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect(),
    };
    for e in dom_iter {
        if !seen.iter().any(|s| x.elem_eq(s, &e)) {
            seen.push(e);
        }
    }
    let mut kernel = Vec::new();
    let mut mult_kernel = Vec::new();
    for e in &seen {
        let fe = f.apply(e);
        if y.elem_eq(&fe, &y.zero()) {
            kernel.push(x.fmt_elem(e));
        }
        if y.elem_eq(&fe, &y.one()) {
            mult_kernel.push(x.fmt_elem(e));
        }
    }
    let injective = domain.map(|d| {
        let imgs: Vec<Y::Elem> = d.iter().map(|e| f.apply(e)).collect();
        (0..d.len()).all(|i| (i + 1..d.len()).all(|j| !y.elem_eq(&imgs[i], &imgs[j])))
    });

    let mut verdicts = vec![additive];
    if f.multiplicative {
        verdicts.push(mult);
        verdicts.push(unit);
    }
    verdicts.push(zero);
    HomReport {
        map: f.name.clone(),
        domain: x.name(),
        codomain: y.name(),
        pairs: pairs.len(),
        verdicts,
        strong: strong_all,
        strong_witness,
        kernel,
        mult_kernel,
        injective,
    }
}

/// Coverage helper used by samplers: a fresh RNG from a seed.
pub fn rng(seed: u64) -> Rand {
    Rand::seed_from_u64(seed)
}

/// Draw `n` stratified elements.
pub fn sample_elems<S: Structure + ?Sized>(x: &S, n: usize, seed: u64) -> Vec<S::Elem> {
    let mut r = rng(seed);
    let mut out: Vec<S::Elem> = Vec::new();
    while out.len() < n {
        let start = out.len().saturating_sub(3);
        let e = stratified(x, &out[start..], &mut r);
        out.push(e);
    }
    out
}

/// At most eight members, then a count of the rest.
fn short_list(items: &[String]) -> String {
    const SHOWN: usize = 8;
    if items.len() <= SHOWN {
        format!("{{{}}}", items.join(","))
    } else {
        format!("{{{},...}} ({} more)", items[..SHOWN].join(","), items.len() - SHOWN)
    }
}
