//! The uniform interface every structure implements.

use std::fmt::Debug;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::tol::Tolerance;

pub type Rand = ChaCha8Rng;

/// The carrier of a structure: an explicit finite list, or a continuous
/// family reached through the sampler.
#[derive(Debug, Clone)]
pub enum Carrier<E> {
    Finite(Vec<E>),
    Sampled,
}

/// A set with a multivalued addition and a univalued multiplication.
///
/// Sums are symbolic value sets of type `Set`. `add_sets` is the set-extended
/// addition `S ∔ T = ⋃ {a ∔ b | a ∈ S, b ∈ T}`; it fails with
/// [`Error::Closure`](crate::Error::Closure) when the result leaves the
/// representable primitives.
pub trait Structure: Sync {
    type Elem: Clone + Debug + Send + Sync;
    type Set: Clone + Debug + Send + Sync;

    fn name(&self) -> String;
    fn tolerance(&self) -> Tolerance;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Set;
    fn add_sets(&self, s: &Self::Set, t: &Self::Set) -> Result<Self::Set>;
    fn singleton(&self, a: &Self::Elem) -> Self::Set;

    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn member(&self, x: &Self::Elem, s: &Self::Set) -> bool;
    fn subset(&self, s: &Self::Set, t: &Self::Set) -> bool;
    fn set_eq(&self, s: &Self::Set, t: &Self::Set) -> bool {
        self.subset(s, t) && self.subset(t, s)
    }
    fn is_empty(&self, _s: &Self::Set) -> bool {
        false
    }
    fn union(&self, s: &Self::Set, t: &Self::Set) -> Self::Set;

    /// `{a·x | x ∈ s}`.
    fn scale_left(&self, a: &Self::Elem, s: &Self::Set) -> Self::Set;
    /// `{x·a | x ∈ s}`.
    fn scale_right(&self, s: &Self::Set, a: &Self::Elem) -> Self::Set {
        self.scale_left(a, s)
    }
    /// `{xy | x ∈ s, y ∈ t}` when representable.
    fn mul_sets(&self, _s: &Self::Set, _t: &Self::Set) -> Option<Self::Set> {
        None
    }

    fn carrier(&self) -> Carrier<Self::Elem>;
    /// A fresh carrier element; discrete pools make ties and antipodes likely.
    fn sample(&self, rng: &mut Rand) -> Self::Elem;
    /// An element sharing a case-relevant feature with `x` (same modulus,
    /// same exponent, ...).
    fn related(&self, _x: &Self::Elem, rng: &mut Rand) -> Self::Elem {
        self.sample(rng)
    }
    /// Landmarks and random points of `s`.
    fn sample_members(&self, s: &Self::Set, rng: &mut Rand, extra: usize) -> Vec<Self::Elem>;
    /// Label of the case of the binary addition taken by `(a, b)`.
    fn branch(&self, _a: &Self::Elem, _b: &Self::Elem) -> &'static str {
        "generic"
    }
    /// All branch labels the sampler is expected to reach.
    fn branches(&self) -> &'static [&'static str] {
        &["generic"]
    }
    /// Hand-picked tuples checked before the random ones.
    fn probes(&self) -> Vec<Vec<Self::Elem>> {
        Vec::new()
    }

    fn fmt_elem(&self, a: &Self::Elem) -> String;
    fn fmt_set(&self, s: &Self::Set) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn parse_set(&self, s: &str) -> Result<Self::Set>;
}

/// Stratified element draw: fresh values mixed with values tied to earlier
/// elements of the tuple.
pub fn stratified<S: Structure + ?Sized>(x: &S, prev: &[S::Elem], rng: &mut Rand) -> S::Elem {
    if prev.is_empty() {
        return match rng.gen_range(0..10) {
            0 => x.zero(),
            1 => x.one(),
            _ => x.sample(rng),
        };
    }
    let pick = &prev[rng.gen_range(0..prev.len())];
    match rng.gen_range(0..12) {
        0 => x.zero(),
        1 => x.neg(pick),
        2 => pick.clone(),
        3..=6 => x.related(pick, rng),
        _ => x.sample(rng),
    }
}

/// `a ∔ b` as a fold from the left over singletons.
pub fn sum_list<S: Structure + ?Sized>(x: &S, values: &[S::Elem]) -> Result<S::Set> {
    let Some(first) = values.first() else {
        return Ok(x.singleton(&x.zero()));
    };
    let mut acc = x.singleton(first);
    for v in &values[1..] {
        acc = x.add_sets(&acc, &x.singleton(v))?;
    }
    Ok(acc)
}
