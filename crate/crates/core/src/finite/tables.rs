//! The named small structures.

use super::{bit, FinSet, FiniteMultistructure};
use crate::error::{Error, Result};

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// `𝕂 = {0,1}` with `1+1 = {0,1}`.
pub fn make_krasner() -> FiniteMultistructure {
    let add = |a: usize, b: usize| if a == 1 && b == 1 { 0b11 } else { bit(a | b) };
    FiniteMultistructure::from_fns("K", labels(&["0", "1"]), add, Some(&|a, b| a & b), 0, 1)
        .expect("valid table")
}

/// `𝕊 = {-1,0,1}`, indices 0, 1, 2; `-1+1` is everything, `x+x = x`.
pub fn make_sign() -> FiniteMultistructure {
    let v = |i: usize| i as i32 - 1;
    let add = move |a: usize, b: usize| {
        if a == 1 {
            bit(b)
        } else if b == 1 || a == b {
            bit(a)
        } else {
            0b111
        }
    };
    let mul = move |a: usize, b: usize| (v(a) * v(b) + 1) as usize;
    FiniteMultistructure::from_fns("S", labels(&["-1", "0", "1"]), add, Some(&mul), 1, 2).expect("valid table")
}

/// The three-element multigroup with `1+1 = 2`, `1+2 = {0,1}`, `2+2 = {1,2}`.
pub fn make_m() -> FiniteMultistructure {
    let add = |a: usize, b: usize| match (a.min(b), a.max(b)) {
        (0, x) => bit(x),
        (1, 1) => bit(2),
        (1, 2) => bit(0) | bit(1),
        _ => bit(1) | bit(2),
    };
    FiniteMultistructure::from_fns("M", numbered(3), add, None, 0, 0).expect("valid table")
}

/// The chain `0 ≺ 1 ≺ … ≺ n-1`: `a+b = max(a,b)` for `a ≠ b`, and `a+a` the
/// elements `≼ a` (or `≺ a`, with `0+0 = 0`, when `strict`).
pub fn make_linear_order(n: usize, strict: bool) -> Result<FiniteMultistructure> {
    if n == 0 {
        return Err(Error::Invalid("chain length must be at least 1".into()));
    }
    let add = move |a: usize, b: usize| -> FinSet {
        if a != b {
            bit(a.max(b))
        } else if strict && a > 0 {
            bit(a) - 1
        } else if strict {
            bit(0)
        } else {
            bit(a + 1) - 1
        }
    };
    let name = if strict { format!("L{n}s") } else { format!("L{n}") };
    FiniteMultistructure::from_fns(&name, numbered(n), add, None, 0, 0)
}

/// `ℤ/n` as a ring with singleton sums.
pub fn make_zn(n: usize) -> Result<FiniteMultistructure> {
    if n == 0 || n > super::MAX_ELEMENTS {
        return Err(Error::Invalid(format!("modulus {n} outside 1..=128")));
    }
    let add = move |a: usize, b: usize| bit((a + b) % n);
    let mul = move |a: usize, b: usize| (a * b) % n;
    FiniteMultistructure::from_fns(&format!("Z{n}"), numbered(n), add, Some(&mul), 0, 1 % n)
}

/// The prime field `𝔽_p`.
pub fn make_fp(p: usize) -> Result<FiniteMultistructure> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    Ok(make_zn(p)?.with_name(&format!("F{p}")))
}

pub(crate) fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_multiring, CheckOptions, Level};
    use crate::finite::find_isomorphism;
    use crate::structure::Structure;

    #[test]
    fn krasner_table() {
        let k = make_krasner();
        assert_eq!(k.fmt_set(&k.add(&1, &1)), "{0,1}");
        assert_eq!(k.fmt_set(&k.add(&0, &1)), "{1}");
        assert_eq!(k.mul(&1, &1), 1);
    }

    #[test]
    fn sign_table() {
        let s = make_sign();
        let (m, o, p) = (0, 1, 2);
        assert_eq!(s.fmt_set(&s.add(&m, &p)), "{-1,0,1}");
        assert_eq!(s.fmt_set(&s.add(&p, &p)), "{1}");
        assert_eq!(s.fmt_set(&s.add(&o, &m)), "{-1}");
        assert_eq!(s.mul(&m, &m), p);
        assert_eq!(s.negation(m), p);
    }

    #[test]
    fn m_table() {
        let m = make_m();
        assert_eq!(m.fmt_set(&m.add(&1, &2)), "{0,1}");
        assert_eq!(m.fmt_set(&m.add(&1, &1)), "{2}");
        assert_eq!(m.fmt_set(&m.add(&0, &2)), "{2}");
        assert_eq!(m.fmt_set(&m.add(&2, &2)), "{1,2}");
        assert_eq!(m.negation(1), 2);
        assert!(!m.has_mul());
    }

    #[test]
    fn linear_orders() {
        let q1 = make_linear_order(2, false).unwrap();
        assert!(find_isomorphism(&q1, &make_krasner(), false).is_some());
        let f2 = make_linear_order(2, true).unwrap();
        assert!(find_isomorphism(&f2, &make_zn(2).unwrap(), false).is_some());
        let l3 = make_linear_order(3, true).unwrap();
        assert_eq!(l3.fmt_set(&l3.add(&2, &2)), "{0,1}");
        assert_eq!(l3.fmt_set(&l3.add(&1, &2)), "{2}");
        assert!(make_linear_order(0, false).is_err());
    }

    #[test]
    fn hyperfield_levels() {
        let opts = CheckOptions::default();
        for x in [make_krasner(), make_sign(), make_fp(2).unwrap(), make_fp(7).unwrap()] {
            let r = check_multiring(&x, Level::Hyperfield, &opts);
            assert!(r.passed(), "{}\n{}", x.name(), r.to_text());
        }
        let z6 = make_zn(6).unwrap();
        assert!(check_multiring(&z6, Level::Hyperring, &opts).passed());
        assert!(!check_multiring(&z6, Level::Hyperfield, &opts).passed());
        assert!(make_fp(9).is_err());
    }
}
