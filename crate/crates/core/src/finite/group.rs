//! Small groups by Cayley table, and double-coset multigroups.

use super::{bit, members, FinSet, FiniteMultistructure};
use crate::error::{Error, Result};

/// A finite group; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub name: String,
    table: Vec<usize>,
    n: usize,
}

impl Group {
    /// Validate a Cayley table with identity 0.
    pub fn from_table(name: &str, n: usize, table: Vec<usize>) -> Result<Self> {
        if n == 0 || n > super::MAX_ELEMENTS || table.len() != n * n || table.iter().any(|&x| x >= n) {
            return Err(Error::Invalid("malformed Cayley table".into()));
        }
        let g = Group { name: name.into(), table, n };
        for a in 0..n {
            if g.op(0, a) != a || g.op(a, 0) != a {
                return Err(Error::Invalid("element 0 is not the identity".into()));
            }
            if !(0..n).any(|b| g.op(a, b) == 0) {
                return Err(Error::Invalid(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if g.op(g.op(a, b), c) != g.op(a, g.op(b, c)) {
                        return Err(Error::Invalid(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Close `gens` under `op`, starting from `identity`.
    fn generate<T: Clone + PartialEq>(name: &str, identity: T, gens: &[T], op: impl Fn(&T, &T) -> T) -> Self {
        let mut elems = vec![identity];
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p = op(&elems[i], g);
                if !elems.contains(&p) {
                    elems.push(p);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let idx = |x: &T| elems.iter().position(|e| e == x).expect("closed");
        let table = (0..n * n).map(|k| idx(&op(&elems[k / n], &elems[k % n]))).collect();
        Group { name: name.into(), table, n }
    }

    /// `ℤ/m₁ × … × ℤ/m_k`.
    pub fn abelian(moduli: &[usize]) -> Self {
        let name = moduli.iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("x");
        let gens: Vec<Vec<usize>> = (0..moduli.len())
            .map(|i| (0..moduli.len()).map(|j| usize::from(i == j)).collect())
            .collect();
        let m = moduli.to_vec();
        Self::generate(&name, vec![0; moduli.len()], &gens, move |a, b| {
            a.iter().zip(b).zip(&m).map(|((x, y), k)| (x + y) % k).collect()
        })
    }

    pub fn cyclic(n: usize) -> Self {
        Self::abelian(&[n])
    }

    /// Permutation group generated by `gens` (composition `a` after `b`).
    pub fn permutations(name: &str, degree: usize, gens: &[Vec<usize>]) -> Self {
        Self::generate(name, (0..degree).collect(), gens, |a: &Vec<usize>, b: &Vec<usize>| {
            b.iter().map(|&i| a[i]).collect()
        })
    }

    pub fn symmetric3() -> Self {
        Self::permutations("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]])
    }

    pub fn dihedral4() -> Self {
        Self::permutations("D4", 4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
    }

    pub fn quaternion8() -> Self {
        let mul = |a: &[i32; 4], b: &[i32; 4]| {
            [
                a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
            ]
        };
        Self::generate("Q8", [1, 0, 0, 0], &[[0, 1, 0, 0], [0, 0, 1, 0]], mul)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.op(a, b) == 0).expect("group element has an inverse")
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Finite subsets containing 1 and closed under the operation.
    pub fn is_subgroup(&self, h: FinSet) -> bool {
        h & 1 == 1
            && h >> self.n == 0
            && members(h).all(|a| members(h).all(|b| h & bit(self.op(a, b)) != 0))
    }

    /// All subgroups as bitmasks. Orders above 16 are rejected.
    pub fn subgroups(&self) -> Result<Vec<FinSet>> {
        if self.n > 16 {
            return Err(Error::Unsupported("subgroup enumeration needs order ≤ 16".into()));
        }
        Ok((0u128..1 << (self.n - 1))
            .map(|m| (m << 1) | 1)
            .filter(|&h| self.is_subgroup(h))
            .collect())
    }
}

/// The fourteen groups of order at most 8, up to isomorphism.
pub fn small_groups() -> Vec<Group> {
    let mut v: Vec<Group> = (1..=8).map(Group::cyclic).collect();
    v.push(Group::abelian(&[2, 2]));
    v.push(Group::symmetric3());
    v.push(Group::abelian(&[2, 4]));
    v.push(Group::abelian(&[2, 2, 2]));
    v.push(Group::dihedral4());
    v.push(Group::quaternion8());
    v
}

/// Double cosets `HgH` with `(HaH)(HbH) = {HahbH | h ∈ H}`. Classes are
/// labelled `[g]` by their least element; the class of 1 is the identity.
pub fn make_double_coset(g: &Group, h: FinSet) -> Result<FiniteMultistructure> {
    if !g.is_subgroup(h) {
        return Err(Error::Invalid("subset is not a subgroup".into()));
    }
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(x);
        for a in members(h) {
            for b in members(h) {
                class_of[g.op(g.op(a, x), b)] = k;
            }
        }
    }
    let m = reps.len();
    let add = |i: usize, j: usize| -> FinSet {
        members(h).fold(0, |acc, t| acc | bit(class_of[g.op(g.op(reps[i], t), reps[j])]))
    };
    let labels = reps.iter().map(|r| format!("[{r}]")).collect();
    let table: Vec<FinSet> = (0..m * m).map(|k| add(k / m, k % m)).collect();
    let neg = (0..m).map(|i| class_of[g.inverse(reps[i])]).collect();
    FiniteMultistructure::new(&format!("{}//H", g.name), labels, table, None, 0, 0, Some(neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_multigroup, CheckOptions, Mode};
    use crate::finite::{find_isomorphism, make_zn};
    use crate::structure::Structure;

    #[test]
    fn small_group_orders() {
        let gs = small_groups();
        assert_eq!(gs.len(), 14);
        let mut orders: Vec<usize> = gs.iter().map(Group::order).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]);
        assert!(!Group::symmetric3().is_abelian());
        assert!(!Group::quaternion8().is_abelian());
        for g in &gs {
            let t = g.table.clone();
            assert!(Group::from_table(&g.name, g.n, t).is_ok());
        }
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(Group::symmetric3().subgroups().unwrap().len(), 6);
        assert_eq!(Group::dihedral4().subgroups().unwrap().len(), 10);
        assert_eq!(Group::quaternion8().subgroups().unwrap().len(), 6);
        assert_eq!(Group::abelian(&[2, 2, 2]).subgroups().unwrap().len(), 16);
    }

    #[test]
    fn trivial_double_coset() {
        let x = make_double_coset(&Group::cyclic(1), 1).unwrap();
        assert_eq!(x.len(), 1);
    }

    #[test]
    fn s3_by_transposition() {
        let g = Group::symmetric3();
        let t = (1..6).find(|&a| g.op(a, a) == 0).unwrap();
        let x = make_double_coset(&g, 1 | bit(t)).unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.add(&1, &1), 0b11);
        assert!(check_multigroup(&x, Mode::Full, &CheckOptions::default()).passed());
    }

    #[test]
    fn abelian_double_cosets_are_cosets() {
        let x = make_double_coset(&Group::cyclic(4), 1 | bit(2)).unwrap();
        assert_eq!(x.len(), 2);
        assert!(find_isomorphism(&x, &make_zn(2).unwrap(), false).is_some());
    }

    #[test]
    fn every_double_coset_multigroup_passes() {
        let opts = CheckOptions::default();
        for g in small_groups() {
            for h in g.subgroups().unwrap() {
                let x = make_double_coset(&g, h).unwrap();
                for mode in [Mode::Full, Mode::Minimal] {
                    let r = check_multigroup(&x, mode, &opts);
                    assert!(r.passed(), "{} H={h:b}\n{}", g.name, r.to_text());
                }
            }
        }
    }

    #[test]
    fn rejects_non_subgroup() {
        let g = Group::cyclic(4);
        assert!(make_double_coset(&g, 1 | bit(1)).is_err());
    }
}
