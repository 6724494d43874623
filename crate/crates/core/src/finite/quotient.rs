//! Multiplicative quotients `X/ₘS` and quotients by normal submultigroups.

use super::tables::is_prime;
use super::{bit, members, FinSet, FiniteMultistructure};
use crate::error::{Error, Result};

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut i = i;
    while parent[i] != r {
        let next = parent[i];
        parent[i] = r;
        i = next;
    }
    r
}

/// Partition `0..n` into classes numbered by least element; returns the class
/// index of each element and each class's members.
fn classes(n: usize, mut same: impl FnMut(usize, usize) -> bool) -> (Vec<usize>, Vec<FinSet>) {
    let mut parent: Vec<usize> = (0..n).collect();
    for a in 0..n {
        for b in a + 1..n {
            if same(a, b) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut sets: Vec<FinSet> = Vec::new();
    for a in 0..n {
        let r = find(&mut parent, a);
        if class_of[r] == usize::MAX {
            class_of[r] = sets.len();
            sets.push(0);
        }
        class_of[a] = class_of[r];
        sets[class_of[a]] |= bit(a);
    }
    (class_of, sets)
}

fn image(class_of: &[usize], s: FinSet) -> FinSet {
    members(s).fold(0, |acc, c| acc | bit(class_of[c]))
}

/// `X/ₘS`: `a ~ b` when `as = bt` for some `s, t ∈ S` (closed to an
/// equivalence), with `[a]+[b] = {[c] | c ∈ a′s + b′t}` over all
/// representatives and `[a][b] = [ab]`.
pub fn mul_quotient(x: &FiniteMultistructure, s: FinSet) -> Result<FiniteMultistructure> {
    if !x.has_mul() {
        return Err(Error::Invalid(format!("{} has no multiplication", x.name)));
    }
    let n = x.len();
    if s == 0 || s & !x.full_set() != 0 {
        return Err(Error::Invalid("S must be a nonempty subset of the carrier".into()));
    }
    let mul = |a: usize, b: usize| x.product(a, b).expect("has mul");
    for a in members(s) {
        for b in members(s) {
            if s & bit(mul(a, b)) == 0 {
                return Err(Error::Invalid(format!(
                    "S is not multiplicatively closed: {}·{} = {}",
                    x.label(a),
                    x.label(b),
                    x.label(mul(a, b))
                )));
            }
        }
    }
    let name = format!("{}/m{}", x.name, x.set_label(s));
    if s & bit(x.zero_idx()) != 0 {
        return FiniteMultistructure::new(&name, vec!["[0]".into()], vec![1], Some(vec![0]), 0, 0, Some(vec![0]));
    }
    let scaled: Vec<FinSet> = (0..n).map(|a| members(s).fold(0, |acc, p| acc | bit(mul(a, p)))).collect();
    let (class_of, sets) = classes(n, |a, b| scaled[a] & scaled[b] != 0);
    let m = sets.len();
    let reps: Vec<usize> = sets.iter().map(|c| members(*c).next().expect("nonempty class")).collect();
    // Set sums distribute over unions, so one sum per pair of classes.
    let spread: Vec<FinSet> = sets.iter().map(|c| members(*c).fold(0, |acc, a| acc | scaled[a])).collect();
    let mut add = Vec::with_capacity(m * m);
    let mut mt = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            add.push(image(&class_of, x.sum_sets(spread[i], spread[j])));
            mt.push(class_of[mul(reps[i], reps[j])]);
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", x.label(r))).collect();
    let neg = reps.iter().map(|&r| class_of[x.negation(r)]).collect();
    FiniteMultistructure::new(&name, labels, add, Some(mt), class_of[x.zero_idx()], class_of[x.one_idx()], Some(neg))
}

/// `ℤ/pⁿ` modulo its units: the classes of `1, p, …, pⁿ⁻¹, 0`, labelled
/// `p^k` and `0`. Requires `pⁿ ≤ 128`.
pub fn make_powers_quotient(p: usize, depth: usize) -> Result<FiniteMultistructure> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if depth < 2 {
        return Err(Error::Invalid("depth must be at least 2".into()));
    }
    let modulus = (0..depth).try_fold(1usize, |acc, _| acc.checked_mul(p).filter(|&m| m <= super::MAX_ELEMENTS));
    let Some(modulus) = modulus else {
        return Err(Error::Unsupported(format!("{p}^{depth} exceeds 128 elements")));
    };
    let ring = super::make_zn(modulus)?;
    let units = (1..modulus).filter(|a| a % p != 0).fold(0u128, |acc, a| acc | bit(a));
    let q = mul_quotient(&ring, units)?;
    let labels = q
        .labels()
        .iter()
        .map(|l| {
            let v: usize = l.trim_matches(|c| c == '[' || c == ']').parse().expect("numeric label");
            if v == 0 {
                "0".to_string()
            } else {
                let mut k = 0;
                let mut t = v;
                while t.is_multiple_of(p) {
                    t /= p;
                    k += 1;
                }
                format!("{p}^{k}")
            }
        })
        .collect();
    let n = q.len();
    let add = (0..n * n).map(|k| q.sum(k / n, k % n)).collect();
    let mul = (0..n * n).map(|k| q.product(k / n, k % n).expect("has mul")).collect();
    let neg = (0..n).map(|a| q.negation(a)).collect();
    FiniteMultistructure::new(&format!("P{p}^{depth}"), labels, add, Some(mul), q.zero_idx(), q.one_idx(), Some(neg))
}

/// Which of the conditions for `X/Y` hold, with the first violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalCheck {
    pub submultigroup: bool,
    pub strong: bool,
    pub normal: bool,
    pub witness: Option<String>,
}

impl NormalCheck {
    /// `Y` is a submultigroup when it holds 0, is closed under negation and
    /// every induced sum `(a+b) ∩ Y` is nonempty; strong when `a+b ⊆ Y`;
    /// normal when `a+Y = Y+a` for all `a` and these cosets partition `X`.
    pub fn of(x: &FiniteMultistructure, y: FinSet) -> Self {
        let mut c = NormalCheck { submultigroup: true, strong: true, normal: true, witness: None };
        let note = |w: &mut Option<String>, msg: String| {
            if w.is_none() {
                *w = Some(msg);
            }
        };
        if y & bit(x.zero_idx()) == 0 || y & !x.full_set() != 0 {
            c.submultigroup = false;
            note(&mut c.witness, "Y does not contain 0".into());
        }
        for a in members(y) {
            if y & bit(x.negation(a)) == 0 {
                c.submultigroup = false;
                note(&mut c.witness, format!("-{} not in Y", x.label(a)));
            }
            for b in members(y) {
                let s = x.sum(a, b);
                if s & y == 0 {
                    c.submultigroup = false;
                    note(&mut c.witness, format!("{}+{} misses Y", x.label(a), x.label(b)));
                }
                if s & !y != 0 {
                    c.strong = false;
                    note(&mut c.witness, format!("{}+{} = {} leaves Y", x.label(a), x.label(b), x.set_label(s)));
                }
            }
        }
        let n = x.len();
        let left: Vec<FinSet> = (0..n).map(|a| x.sum_sets(bit(a), y)).collect();
        for a in 0..n {
            let right = x.sum_sets(y, bit(a));
            if left[a] != right {
                c.normal = false;
                note(&mut c.witness, format!("{}+Y != Y+{}", x.label(a), x.label(a)));
            }
            for b in 0..n {
                if left[a] != left[b] && left[a] & left[b] != 0 {
                    c.normal = false;
                    note(
                        &mut c.witness,
                        format!("cosets {} and {} overlap", x.set_label(left[a]), x.set_label(left[b])),
                    );
                }
            }
        }
        c.normal &= c.submultigroup && c.strong;
        c
    }

    pub fn ok(&self) -> bool {
        self.submultigroup && self.strong && self.normal
    }
}

/// `X/Y` for a normal strong submultigroup `Y`: classes are the cosets
/// `a+Y`, and `[A]+[B]` is the set of cosets meeting `A ∔ B`.
pub fn quotient_by_normal(x: &FiniteMultistructure, y: FinSet) -> Result<FiniteMultistructure> {
    let check = NormalCheck::of(x, y);
    if !check.ok() {
        return Err(Error::Invalid(format!(
            "{} is not a normal strong submultigroup: {}",
            x.set_label(y),
            check.witness.unwrap_or_default()
        )));
    }
    let n = x.len();
    let cosets: Vec<FinSet> = (0..n).map(|a| x.sum_sets(bit(a), y)).collect();
    let (class_of, sets) = classes(n, |a, b| cosets[a] == cosets[b]);
    let m = sets.len();
    let add = (0..m * m).map(|k| image(&class_of, x.sum_sets(sets[k / m], sets[k % m]))).collect();
    let reps: Vec<usize> = sets.iter().map(|c| members(*c).next().expect("nonempty coset")).collect();
    let labels = reps.iter().map(|&r| format!("[{}]", x.label(r))).collect();
    let neg = reps.iter().map(|&r| class_of[x.negation(r)]).collect();
    let zero = class_of[x.zero_idx()];
    FiniteMultistructure::new(&format!("{}/{}", x.name, x.set_label(y)), labels, add, None, zero, zero, Some(neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{
        c_characteristic, characteristic, check_hom, check_multigroup, check_multiring, CheckOptions, Characteristic,
        ElemMap, Level, Mode,
    };
    use crate::finite::{find_isomorphism, make_fp, make_krasner, make_linear_order, make_sign, make_zn};
    use crate::structure::Structure;

    fn set(xs: &[usize]) -> FinSet {
        xs.iter().fold(0, |acc, &i| acc | bit(i))
    }

    #[test]
    fn f3_by_units_is_krasner() {
        let q = mul_quotient(&make_fp(3).unwrap(), set(&[1, 2])).unwrap();
        assert_eq!(q.len(), 2);
        assert!(find_isomorphism(&q, &make_krasner(), true).is_some());
    }

    #[test]
    fn f5_by_pm1() {
        let q = mul_quotient(&make_fp(5).unwrap(), set(&[1, 4])).unwrap();
        assert_eq!(q.labels(), ["[0]", "[1]", "[2]"]);
        assert!(check_multiring(&q, Level::Hyperfield, &CheckOptions::default()).passed());
        // {1,4} + {1,4} = {0,2,3}, {2,3} + {2,3} = {0,1,4}
        assert_eq!(q.fmt_set(&q.add(&1, &1)), "{[0],[2]}");
        assert_eq!(q.fmt_set(&q.add(&2, &2)), "{[0],[1]}");
        assert_eq!(q.fmt_set(&q.add(&1, &2)), "{[1],[2]}");
    }

    #[test]
    fn zero_in_s_collapses() {
        let q = mul_quotient(&make_zn(6).unwrap(), set(&[0, 1])).unwrap();
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn rejects_non_closed_s() {
        assert!(mul_quotient(&make_fp(5).unwrap(), set(&[1, 2])).is_err());
    }

    #[test]
    fn units_quotient_of_fields_is_krasner() {
        for p in [3, 5, 7, 11, 13] {
            let f = make_fp(p).unwrap();
            let q = mul_quotient(&f, f.full_set() & !1).unwrap();
            assert!(find_isomorphism(&q, &make_krasner(), true).is_some(), "p={p}");
        }
        let s = make_sign();
        let q = mul_quotient(&s, set(&[0, 2])).unwrap();
        assert!(find_isomorphism(&q, &make_krasner(), true).is_some());
    }

    #[test]
    fn powers_quotient_two() {
        let q = make_powers_quotient(2, 5).unwrap();
        assert_eq!(q.labels(), ["0", "2^0", "2^1", "2^2", "2^3", "2^4"]);
        let one = q.index("2^0").unwrap();
        assert_eq!(q.fmt_set(&q.add(&one, &one)), "{0,2^1,2^2,2^3,2^4}");
        assert_eq!(characteristic(&q, 64).unwrap(), Characteristic::Finite(2));
        assert_eq!(c_characteristic(&q, 64).unwrap(), Characteristic::Finite(2));
        let chain = make_linear_order(6, true).unwrap();
        assert!(find_isomorphism(&q, &chain, false).is_some());
        assert!(check_multiring(&q, Level::Hyperring, &CheckOptions::default()).passed());
    }

    #[test]
    fn powers_quotient_odd() {
        for (p, n) in [(3, 4), (5, 3), (7, 2)] {
            let q = make_powers_quotient(p, n).unwrap();
            assert_eq!(q.len(), n + 1);
            assert_eq!(characteristic(&q, 64).unwrap(), Characteristic::Finite(2));
            assert_eq!(c_characteristic(&q, 64).unwrap(), Characteristic::Finite(1));
            assert!(find_isomorphism(&q, &make_linear_order(n + 1, false).unwrap(), false).is_some());
        }
        assert!(make_powers_quotient(4, 2).is_err());
        assert!(make_powers_quotient(2, 8).is_err());
    }

    #[test]
    fn trivial_normal_quotient() {
        let s = make_sign();
        let q = quotient_by_normal(&s, bit(1)).unwrap();
        assert!(find_isomorphism(&q, &s, false).is_some());
    }

    #[test]
    fn group_quotient() {
        let q = quotient_by_normal(&make_zn(4).unwrap(), set(&[0, 2])).unwrap();
        assert!(find_isomorphism(&q, &make_zn(2).unwrap(), false).is_some());
    }

    #[test]
    fn whole_carrier_and_bad_subsets() {
        let s = make_sign();
        assert_eq!(quotient_by_normal(&s, set(&[0, 1, 2])).unwrap().len(), 1);
        assert!(quotient_by_normal(&s, set(&[1, 2])).is_err());
        let err = quotient_by_normal(&make_zn(4).unwrap(), set(&[0, 1])).unwrap_err();
        assert!(err.to_string().contains("not a normal strong submultigroup"));
    }

    #[test]
    fn sign_to_krasner_is_not_strong() {
        let s = make_sign();
        let k = make_krasner();
        let f: ElemMap<'_, FiniteMultistructure, FiniteMultistructure> =
            ElemMap::new("abs", |a: &usize| usize::from(*a != 1)).additive_only();
        let r = check_hom(&f, &s, &k, &CheckOptions::default());
        assert!(r.is_hom());
        assert_eq!(r.strong, Some(false));
        assert_eq!(r.kernel, vec!["0".to_string()]);
        assert_eq!(r.injective, Some(false));
    }

    #[test]
    fn kernel_quotient_matches_image() {
        // The monotone map 0,1 -> 0 and 2 -> 1 from the 3-chain onto Q1.
        let x = make_linear_order(3, false).unwrap();
        let q1 = make_linear_order(2, false).unwrap();
        let f: ElemMap<'_, FiniteMultistructure, FiniteMultistructure> =
            ElemMap::new("collapse", |a: &usize| usize::from(*a == 2)).additive_only();
        let r = check_hom(&f, &x, &q1, &CheckOptions::default());
        assert!(r.is_hom() && r.strong == Some(true));
        let q = quotient_by_normal(&x, set(&[0, 1])).unwrap();
        assert!(check_multigroup(&q, Mode::Full, &CheckOptions::default()).passed());
        assert!(find_isomorphism(&q, &q1, false).is_some());
    }
}
