//! Searches over small tables: isomorphisms, ideals, two-element
//! multigroups, multiplications making a multigroup a hyperfield.

use std::collections::BTreeMap;

use super::{bit, members, FinSet, FiniteMultistructure};
use crate::axioms::{check_multigroup, check_multiring, CheckOptions, ElemMap, Level, Mode};
use crate::error::{Error, Result};

/// A label bijection `f` (as `f[i]`) preserving zero, addition and, when
/// `with_mul`, one and multiplication.
pub fn find_isomorphism(x: &FiniteMultistructure, y: &FiniteMultistructure, with_mul: bool) -> Option<Vec<usize>> {
    let n = x.len();
    if n != y.len() || (with_mul && (!x.has_mul() || !y.has_mul())) {
        return None;
    }
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    f[x.zero_idx()] = y.zero_idx();
    used[y.zero_idx()] = true;
    if with_mul {
        let (a, b) = (x.one_idx(), y.one_idx());
        if f[a] != usize::MAX && f[a] != b || f[a] == usize::MAX && used[b] {
            return None;
        }
        f[a] = b;
        used[b] = true;
    }
    let order: Vec<usize> = (0..n).filter(|&i| f[i] == usize::MAX).collect();
    if extend(x, y, with_mul, &order, 0, &mut f, &mut used) {
        Some(f)
    } else {
        None
    }
}

fn consistent(x: &FiniteMultistructure, y: &FiniteMultistructure, with_mul: bool, f: &[usize]) -> bool {
    let n = x.len();
    for a in (0..n).filter(|&a| f[a] != usize::MAX) {
        for b in (0..n).filter(|&b| f[b] != usize::MAX) {
            let s = x.sum(a, b);
            let t = y.sum(f[a], f[b]);
            if s.count_ones() != t.count_ones() {
                return false;
            }
            if members(s).any(|c| f[c] != usize::MAX && t & bit(f[c]) == 0) {
                return false;
            }
            if with_mul {
                let p = x.product(a, b).expect("has mul");
                if f[p] != usize::MAX && f[p] != y.product(f[a], f[b]).expect("has mul") {
                    return false;
                }
            }
        }
    }
    true
}

fn extend(
    x: &FiniteMultistructure,
    y: &FiniteMultistructure,
    with_mul: bool,
    order: &[usize],
    k: usize,
    f: &mut [usize],
    used: &mut [bool],
) -> bool {
    if !consistent(x, y, with_mul, f) {
        return false;
    }
    let Some(&a) = order.get(k) else {
        return true;
    };
    for b in 0..y.len() {
        if used[b] {
            continue;
        }
        f[a] = b;
        used[b] = true;
        if extend(x, y, with_mul, order, k + 1, f, used) {
            return true;
        }
        f[a] = usize::MAX;
        used[b] = false;
    }
    false
}

const IDEAL_LIMIT: usize = 12;

/// All ideals: subsets holding 0, closed under negation and sums
/// (`a+b ⊆ I`), and absorbing products from either side.
pub fn ideals(x: &FiniteMultistructure) -> Result<Vec<FinSet>> {
    if !x.has_mul() {
        return Err(Error::Invalid(format!("{} has no multiplication", x.name)));
    }
    let n = x.len();
    if n > IDEAL_LIMIT {
        return Err(Error::Unsupported(format!("ideal enumeration needs at most {IDEAL_LIMIT} elements")));
    }
    let z = x.zero_idx();
    let others: Vec<usize> = (0..n).filter(|&i| i != z).collect();
    let mut out = Vec::new();
    for m in 0u32..1 << others.len() {
        let i: FinSet = others
            .iter()
            .enumerate()
            .filter(|(k, _)| m & (1 << k) != 0)
            .fold(bit(z), |acc, (_, &e)| acc | bit(e));
        let closed = members(i).all(|a| {
            i & bit(x.negation(a)) != 0
                && members(i).all(|b| x.sum(a, b) & !i == 0)
                && (0..n).all(|c| {
                    i & bit(x.product(c, a).expect("has mul")) != 0 && i & bit(x.product(a, c).expect("has mul")) != 0
                })
        });
        if closed {
            out.push(i);
        }
    }
    out.sort_by_key(|s| (s.count_ones(), *s));
    Ok(out)
}

/// Proper ideals with `ab ∈ I ⇒ a ∈ I or b ∈ I`.
pub fn prime_ideals(x: &FiniteMultistructure) -> Result<Vec<FinSet>> {
    let n = x.len();
    Ok(ideals(x)?
        .into_iter()
        .filter(|&i| i != x.full_set())
        .filter(|&i| {
            (0..n).all(|a| {
                (0..n).all(|b| i & bit(x.product(a, b).expect("has mul")) == 0 || i & (bit(a) | bit(b)) != 0)
            })
        })
        .collect())
}

/// The characteristic map `f_I: X → 𝕂`, `0` on `I` and `1` elsewhere.
pub fn hom_to_k(ideal: FinSet) -> ElemMap<'static, FiniteMultistructure, FiniteMultistructure> {
    ElemMap::new("f_I", move |a: &usize| usize::from(ideal & bit(*a) == 0))
}

/// The multigroups on two elements, one per isomorphism class.
pub fn two_element_multigroups() -> Vec<FiniteMultistructure> {
    let opts = CheckOptions::default();
    let mut found: Vec<FiniteMultistructure> = Vec::new();
    for code in 0..81u32 {
        let add: Vec<FinSet> = (0..4).map(|k| (code / 3u32.pow(k) % 3 + 1) as FinSet).collect();
        for zero in 0..2 {
            let Ok(x) = FiniteMultistructure::new(
                &format!("T{code}"),
                vec!["0".into(), "1".into()],
                add.clone(),
                None,
                zero,
                zero,
                None,
            ) else {
                continue;
            };
            if check_multigroup(&x, Mode::Full, &opts).passed()
                && !found.iter().any(|y| find_isomorphism(&x, y, false).is_some())
            {
                found.push(x);
            }
        }
    }
    found
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub candidates: usize,
    /// Tables passing the cheap identity and zero checks.
    pub screened: usize,
    /// Multiplication tables (with their one) that pass at hyperfield level.
    pub valid: Vec<(Vec<usize>, usize)>,
    /// First failing axiom among screened candidates, with counts.
    pub failures: BTreeMap<String, usize>,
}

/// Try every multiplication table on a carrier of at most 3 elements and every
/// choice of one; keep those giving a hyperfield.
pub fn hyperfield_search(x: &FiniteMultistructure) -> Result<SearchOutcome> {
    let n = x.len();
    if n > 3 {
        return Err(Error::Unsupported("hyperfield search needs at most 3 elements".into()));
    }
    let cells = n * n;
    let total = n.pow(cells as u32);
    let z = x.zero_idx();
    let opts = CheckOptions { fail_fast: true, ..CheckOptions::default() };
    let mut out = SearchOutcome { candidates: 0, screened: 0, valid: Vec::new(), failures: BTreeMap::new() };
    let mut table = vec![0usize; cells];
    for code in 0..total {
        let mut c = code;
        for t in table.iter_mut() {
            *t = c % n;
            c /= n;
        }
        for one in (0..n).filter(|&o| o != z) {
            out.candidates += 1;
            let absorbing = (0..n).all(|a| table[a * n + z] == z && table[z * n + a] == z);
            let unital = (0..n).all(|a| table[a * n + one] == a && table[one * n + a] == a);
            if !(absorbing && unital) {
                continue;
            }
            out.screened += 1;
            let y = x.with_mul(table.clone(), one)?;
            let r = check_multiring(&y, Level::Hyperfield, &opts);
            let first = r.failed().next().map(|v| v.axiom.to_string());
            match first {
                None => out.valid.push((table.clone(), one)),
                Some(ax) => *out.failures.entry(ax).or_insert(0) += 1,
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_hom;
    use crate::finite::{make_fp, make_krasner, make_linear_order, make_m, make_sign, make_zn};

    fn set(xs: &[usize]) -> FinSet {
        xs.iter().fold(0, |acc, &i| acc | bit(i))
    }

    #[test]
    fn q1_is_the_only_proper_two_element_multigroup() {
        let all = two_element_multigroups();
        assert_eq!(all.len(), 2);
        let groups: Vec<_> = all.iter().filter(|x| members(x.sum(1 - x.zero_idx(), 1 - x.zero_idx())).count() == 1).collect();
        assert_eq!(groups.len(), 1);
        let q1 = make_linear_order(2, false).unwrap();
        assert!(all.iter().any(|x| find_isomorphism(x, &q1, false).is_some()));
    }

    #[test]
    fn isomorphism_respects_structure() {
        assert!(find_isomorphism(&make_krasner(), &make_zn(2).unwrap(), false).is_none());
        assert!(find_isomorphism(&make_sign(), &make_fp(3).unwrap(), false).is_none());
        let f = find_isomorphism(&make_sign(), &make_sign(), true).unwrap();
        assert_eq!(f, vec![0, 1, 2]);
    }

    #[test]
    fn prime_ideals_of_z6() {
        let z6 = make_zn(6).unwrap();
        let p = prime_ideals(&z6).unwrap();
        assert_eq!(p, vec![set(&[0, 3]), set(&[0, 2, 4])]);
        for i in p {
            let r = check_hom(&hom_to_k(i), &z6, &make_krasner(), &CheckOptions::default());
            assert!(r.is_hom(), "{}", r.to_text());
        }
    }

    #[test]
    fn hyperfields_have_only_zero_ideal() {
        for x in [make_krasner(), make_sign(), make_fp(5).unwrap()] {
            let p = prime_ideals(&x).unwrap();
            assert_eq!(p, vec![bit(x.zero_idx())]);
            assert_eq!(ideals(&x).unwrap().len(), 2);
        }
    }

    #[test]
    fn sign_ideal_map_is_absolute_value() {
        let f = hom_to_k(bit(1));
        assert_eq!((0..3).map(|a| f.apply(&a)).collect::<Vec<_>>(), vec![1, 0, 1]);
    }

    #[test]
    fn non_prime_maps_fail() {
        let z6 = make_zn(6).unwrap();
        let z4 = make_zn(4).unwrap();
        let i = set(&[0, 2]);
        assert!(ideals(&z4).unwrap().contains(&i));
        assert!(!prime_ideals(&z4).unwrap().is_empty());
        let r = check_hom(&hom_to_k(bit(0)), &z6, &make_krasner(), &CheckOptions::default());
        assert!(!r.is_hom());
    }

    #[test]
    fn m_admits_no_hyperfield_multiplication() {
        let r = hyperfield_search(&make_m()).unwrap();
        assert_eq!(r.candidates, 2 * 3usize.pow(9));
        assert!(r.screened > 0);
        assert!(r.valid.is_empty());
    }

    #[test]
    fn search_finds_known_hyperfields() {
        let k = make_krasner();
        assert_eq!(hyperfield_search(&k).unwrap().valid.len(), 1);
        let s = make_sign();
        assert!(!hyperfield_search(&s).unwrap().valid.is_empty());
    }
}
