//! Acceptance suite. Prints one line per criterion, with indented detail
//! lines for failing sub-checks, and exits nonzero unless every failure is
//! one of the documented known failures.

use std::f64::consts::{FRAC_PI_2, LN_2, PI, TAU};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use hyperalg::axioms::{
    c_characteristic, characteristic, check_double_distributivity, check_multigroup, check_multiring, rng, Axiom,
    CheckOptions, Level, Mode,
};
use hyperalg::ctrop::{ct_add, ct_add_sets, ct_sum_n, Phase, TropicalComplex, TropicalQuaternion, TropicalReal};
use hyperalg::deq::{c_add_0, c_add_h, check_diagram, graph_witness, lm_add, tri_add_h, SCHEDULE};
use hyperalg::exotic::{Monomial, Padic};
use hyperalg::finite::{
    bit, find_isomorphism, make_fp, make_krasner, make_linear_order, make_m, make_powers_quotient, make_sign,
    make_zn, mul_quotient, make_double_coset, small_groups, FiniteMultistructure,
};
use hyperalg::homs::{run_named_hom, HOMS};
use hyperalg::realhf::{tri_add, tri_add_sets, tri_sum_n, ultra_add, Amoeba, Triangle, Tropical, Ultra};
use hyperalg::sets::complex::{CSet, ComplexElem};
use hyperalg::sets::interval::IntervalSet;
use hyperalg::{Structure, Tolerance};

const SEED: u64 = 0x5eed;
const SAMPLES: usize = 10_000;

/// Outcome of one criterion.
#[derive(Default)]
struct Criterion {
    failures: Vec<String>,
    known: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    /// A sub-check expected to fail. Passing unexpectedly is itself a failure.
    fn known(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.failures.push(format!("{what}: expected failure passed"));
        } else {
            self.known.push(what);
        }
    }

    fn time(&mut self, took: Duration, limit: Duration, what: &str) {
        if took > limit {
            self.failures.push(format!("{what} took {took:.2?}, limit {limit:?}"));
        }
    }
}

fn report(n: usize, title: &str, c: &Criterion, took: Duration) -> bool {
    let verdict = if !c.failures.is_empty() {
        "FAIL"
    } else if !c.known.is_empty() {
        "FAIL (known)"
    } else {
        "PASS"
    };
    println!("criterion {n}: {verdict} {title} [{took:.2?}]");
    for f in &c.failures {
        println!("    fail: {f}");
    }
    for k in &c.known {
        println!("    known: {k}");
    }
    for note in &c.notes {
        println!("    note: {note}");
    }
    c.failures.is_empty()
}

fn tol() -> Tolerance {
    Tolerance::new(1e-9)
}

fn opts() -> CheckOptions {
    CheckOptions::sampled(SAMPLES, SEED)
}

fn golden() -> Criterion {
    let mut c = Criterion::default();
    let t = tol();

    let start = Instant::now();
    let tri = Triangle { tol: t };
    let s = tri_add(2.0, 1.0).unwrap();
    let sq = tri.mul_sets(&s, &s).unwrap();
    let long = tri_sum_n(&[4.0, 2.0, 2.0, 1.0]).unwrap();
    let took = start.elapsed();
    c.check(s.set_eq(&IntervalSet::interval(1.0, 3.0), &t), format!("tri 2+1 = {s}"));
    c.check(sq.set_eq(&IntervalSet::interval(1.0, 9.0), &t), format!("tri (2+1)(2+1) = {sq}"));
    c.check(long.set_eq(&IntervalSet::interval(0.0, 9.0), &t), format!("tri 4+2+2+1 = {long}"));
    c.time(took, Duration::from_millis(1), "tri golden values");

    let one = ComplexElem::ONE;
    let i = ComplexElem::unit(FRAC_PI_2);
    let mi = ComplexElem::unit(3.0 * FRAC_PI_2);
    let m1 = ComplexElem::real(-1.0);
    let quarter = ct_add(&one, &i, &t);
    c.check(quarter.set_eq(&CSet::arc(1.0, 0.0, FRAC_PI_2).unwrap(), &t), format!("TC 1+i = {quarter}"));
    let disk = ct_add(&one, &m1, &t);
    c.check(disk.set_eq(&CSet::disk(1.0), &t), format!("TC 1+(-1) = {disk}"));
    let four = ct_sum_n(&[one, i, mi, one], &t).unwrap();
    c.check(four.set_eq(&CSet::disk(1.0), &t), format!("TC 1+i+(-i)+1 = {four}"));
    let prod = TropicalComplex::new(t).mul_sets(&quarter, &ct_add(&one, &mi, &t)).unwrap();
    let arc = CSet::arc(1.0, 3.0 * FRAC_PI_2, PI).unwrap();
    c.check(prod.set_eq(&arc, &t), format!("TC (1+i)(1-i) = {prod}"));
    c.check(!prod.set_eq(&four, &t), "TC double distributivity witness");

    let fine = Tolerance::new(1e-12);
    let left = c_add_0(&c_add_0(&m1, &i, &t), &one, &t);
    let right = c_add_0(&m1, &c_add_0(&i, &one, &t), &t);
    c.check(left.close(&ComplexElem::unit(3.0 * PI / 8.0), &fine), format!("(-1 +0 i) +0 1 = {left}"));
    c.check(right.close(&ComplexElem::unit(5.0 * PI / 8.0), &fine), format!("-1 +0 (i +0 1) = {right}"));

    let chars: Vec<(&str, FiniteMultistructure, (usize, usize))> = vec![
        ("K", make_krasner(), (2, 1)),
        ("S", make_sign(), (0, 1)),
        ("powers-of-2", make_powers_quotient(2, 4).unwrap(), (2, 2)),
        ("powers-of-3", make_powers_quotient(3, 3).unwrap(), (2, 1)),
    ];
    for (name, x, want) in chars {
        let got = (characteristic(&x, 64).unwrap().value(), c_characteristic(&x, 64).unwrap().value());
        c.check(got == want, format!("(chr, cchr) of {name} = {got:?}, want {want:?}"));
    }

    let q = mul_quotient(&make_fp(3).unwrap(), bit(1) | bit(2)).unwrap();
    c.check(find_isomorphism(&q, &make_krasner(), true).is_some(), "F3 / {1,2} is not isomorphic to K");
    c
}

fn exhaustive() -> Criterion {
    let mut c = Criterion::default();
    let mut tables: Vec<FiniteMultistructure> = vec![
        make_krasner(),
        make_sign(),
        make_fp(2).unwrap(),
        make_linear_order(2, false).unwrap().with_name("Q1"),
    ];
    for n in 1..=6 {
        tables.push(make_linear_order(n, false).unwrap());
        tables.push(make_linear_order(n, true).unwrap());
    }
    let mut cosets = 0;
    for g in small_groups() {
        for h in g.subgroups().unwrap() {
            tables.push(make_double_coset(&g, h).unwrap());
            cosets += 1;
        }
    }
    let o = CheckOptions::default();
    for x in &tables {
        let full = check_multigroup(x, Mode::Full, &o);
        let min = check_multigroup(x, Mode::Minimal, &o);
        c.check(full.passed() == min.passed(), format!("{}: full and minimal modes disagree", x.name()));
        let failed: Vec<&str> = full.failed().chain(min.failed()).map(|v| v.axiom.name()).collect();
        c.check(failed.is_empty(), format!("{}: {}", x.name(), failed.join(", ")));
    }

    let m = make_m();
    let full = check_multigroup(&m, Mode::Full, &o);
    let min = check_multigroup(&m, Mode::Minimal, &o);
    c.check(full.passed() == min.passed(), "M: full and minimal modes disagree");
    let describe = |r: &hyperalg::axioms::AxiomReport<usize>| {
        r.failed()
            .map(|v| format!("{} at {}", v.axiom, v.witness_text.as_deref().unwrap_or("-")))
            .collect::<Vec<_>>()
            .join(", ")
    };
    c.known(full.passed(), format!("M fails {} (minimal: {})", describe(&full), describe(&min)));
    c.notes.push(format!("{} tables, {cosets} double-coset multigroups", tables.len() + 1));
    c
}

fn sampled_suite<S: Structure>(c: &mut Criterion, x: &S, level: Level, known: &[Axiom]) {
    let r = check_multiring(x, level, &opts());
    for v in &r.verdicts {
        let what = format!(
            "{} {}: {} failures of {}, first at {}",
            x.name(),
            v.axiom,
            v.failures,
            v.checked,
            v.witness_text.as_deref().unwrap_or("-")
        );
        if known.contains(&v.axiom) {
            c.known(v.passed(), what);
        } else {
            c.check(v.passed(), what);
        }
    }
    let misses = r.missing_branches(x.branches());
    c.check(misses.is_empty(), format!("{}: branches never sampled: {}", x.name(), misses.join(", ")));
}

fn sampled() -> Criterion {
    let mut c = Criterion::default();
    let t = tol();
    let start = Instant::now();
    sampled_suite(&mut c, &TropicalComplex::new(t), Level::Hyperfield, &[]);
    sampled_suite(&mut c, &TropicalReal { tol: t }, Level::Hyperfield, &[]);
    sampled_suite(&mut c, &Phase { tol: t }, Level::Hyperfield, &[]);
    sampled_suite(&mut c, &Triangle { tol: t }, Level::Hyperfield, &[]);
    sampled_suite(&mut c, &Ultra { tol: t }, Level::Hyperfield, &[]);
    sampled_suite(&mut c, &Tropical { tol: t }, Level::Hyperfield, &[]);
    sampled_suite(&mut c, &Amoeba { tol: t }, Level::Hyperfield, &[]);
    sampled_suite(&mut c, &TropicalQuaternion { tol: t }, Level::Hyperring, &[]);
    sampled_suite(&mut c, &Monomial::<f64>::new(t), Level::Hyperfield, &[]);
    for p in [2, 3, 5] {
        let x = Padic::new(p, 8).unwrap();
        sampled_suite(&mut c, &x, Level::Hyperfield, &[Axiom::Associativity, Axiom::InverseUnique]);
    }
    c.time(start.elapsed(), Duration::from_secs(60), "sampled suites");
    c
}

/// Pool of moduli and angles that makes ties and antipodes common.
fn stratified_list(r: &mut impl Rng) -> Vec<ComplexElem> {
    let n = r.gen_range(3..=6);
    let top = [0.5, 1.0, 2.0][r.gen_range(0..3)];
    let mut v = Vec::with_capacity(n);
    while v.len() < n {
        let m = match r.gen_range(0..4) {
            0 | 1 => top,
            2 => top * r.gen_range(0.1..1.0),
            _ => 0.0,
        };
        let z = match r.gen_range(0..4) {
            0 => ComplexElem::polar(m, r.gen_range(0.0..TAU)),
            1 => ComplexElem::polar(m, [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2][r.gen_range(0..4)]),
            _ => match v.last() {
                Some(&prev) if r.gen_bool(0.5) => ComplexElem::neg(&prev),
                _ => ComplexElem::polar(m, r.gen_range(0.0..TAU)),
            },
        };
        v.push(z);
    }
    v
}

fn permutations<T: Copy>(v: &[T]) -> Vec<Vec<T>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn oracles() -> Criterion {
    let mut c = Criterion::default();
    let t = tol();
    let mut r = rng(SEED);
    let (mut antipodal, mut ties) = (0, 0);
    for _ in 0..500 {
        let list = stratified_list(&mut r);
        let top = list.iter().map(|z| z.modulus()).fold(0.0, f64::max);
        if list.iter().filter(|z| t.close(z.modulus(), top)).count() > 1 {
            ties += 1;
        }
        if list.iter().any(|a| list.iter().any(|b| a.close(&b.neg(), &t) && !a.is_zero())) {
            antipodal += 1;
        }
        let direct = ct_sum_n(&list, &t).unwrap();
        for p in permutations(&list) {
            let fold = p[1..]
                .iter()
                .try_fold(CSet::point(p[0]), |s, z| ct_add_sets(&s, &CSet::point(*z), &t))
                .unwrap();
            if !fold.set_eq(&direct, &t) {
                let shown: Vec<String> = p.iter().map(|z| z.to_string()).collect();
                c.failures.push(format!("TC fold of [{}] = {fold}, n-ary = {direct}", shown.join(", ")));
                break;
            }
        }
    }
    c.check(antipodal > 50 && ties > 100, format!("strata too thin: {antipodal} antipodal, {ties} ties"));

    for _ in 0..500 {
        let n = r.gen_range(3..=6);
        let mut v: Vec<f64> = (0..n).map(|_| [1.0, 2.0, r.gen_range(0.0..3.0)][r.gen_range(0..3)]).collect();
        let sum: f64 = v.iter().sum();
        let max = v.iter().cloned().fold(0.0, f64::max);
        let formula = IntervalSet::interval((2.0 * max - sum).max(0.0), sum);
        let direct = tri_sum_n(&v).unwrap();
        c.check(direct.set_eq(&formula, &t), format!("tri sum of {v:?} = {direct}, formula {formula}"));
        for _ in 0..6 {
            v.shuffle(&mut r);
            let fold = v[1..]
                .iter()
                .try_fold(IntervalSet::point(v[0]), |s, x| tri_add_sets(&s, &IntervalSet::point(*x), &t))
                .unwrap();
            c.check(fold.set_eq(&formula, &t), format!("tri fold of {v:?} = {fold}"));
        }
    }
    c.notes.push(format!("TC lists with antipodes {antipodal}, with modulus ties {ties}"));
    c
}

fn homomorphisms() -> Criterion {
    let mut c = Criterion::default();
    for h in HOMS {
        let s = run_named_hom(h.name, &opts(), 1000).unwrap();
        if h.expected {
            c.check(s.is_hom, format!("{}: {}", h.name, s.witness.as_deref().unwrap_or("not a homomorphism")));
            continue;
        }
        c.check(!s.is_hom, format!("{} passed but is not a homomorphism", h.name));
        let pair = s.witness.as_deref().unwrap_or("");
        let parts: Vec<&str> = pair.trim_matches(|ch| ch == '(' || ch == ')').split(',').collect();
        let ok = match parts.as_slice() {
            [a, b] => match (a.parse::<ComplexElem>(), b.parse::<ComplexElem>()) {
                (Ok(a), Ok(b)) => b.close(&a.neg(), &tol()),
                _ => false,
            },
            _ => false,
        };
        c.check(ok, format!("{} witness {pair} is not of the form (x, -x)", h.name));
    }
    c
}

fn dequantization() -> Criterion {
    let mut c = Criterion::default();
    let t = tol();
    let start = Instant::now();
    let mut r = rng(SEED);
    for _ in 0..100 {
        let a = r.gen_range(-5.0..5.0);
        let b = if r.gen_bool(0.2) { a + r.gen_range(-1e-3..1e-3) } else { r.gen_range(-5.0..5.0) };
        if a == b {
            continue;
        }
        for h in SCHEDULE {
            let d = (lm_add(a, b, h).unwrap() - f64::max(a, b)).abs();
            c.check(d <= h * LN_2 * (1.0 + 1e-12), format!("lm_add({a}, {b}, {h}) off by {d}"));
        }
    }
    for _ in 0..100 {
        let (a, b) = (r.gen_range(0.0..5.0), r.gen_range(0.0..5.0));
        let fam = tri_add_h(a, b, 1e-3, &t).unwrap();
        let lim = ultra_add(a, b, &t).unwrap();
        let scale = 1e-2 * f64::max(a, b);
        let ok = (fam.min() - lim.min()).abs() <= scale && (fam.max() - lim.max()).abs() <= scale;
        c.check(ok, format!("tri_h({a}, {b}) at h=1e-3 = {fam}, ultra = {lim}"));
    }
    let d = check_diagram(SAMPLES, SEED);
    for prop in ["growth-bound", "angular-interval"] {
        let ch = d.check(prop).expect("diagram property");
        c.check(ch.checked > 0 && ch.failures == 0, format!("{prop}: {} of {} fail", ch.failures, ch.checked));
    }
    for _ in 0..100 {
        let x = ComplexElem::polar(r.gen_range(0.5..2.0), r.gen_range(0.0..TAU));
        let sweep = r.gen_range(0.05..PI - 0.05);
        let b = ComplexElem::polar(x.modulus(), x.argument() + sweep);
        let target = ComplexElem::polar(x.modulus(), x.argument() + sweep * r.gen_range(0.05..0.95));
        for h in SCHEDULE {
            let bound = 2f64.powf(h) * x.modulus() * (1.0 + 1e-12);
            let s = c_add_h(&x, &b, h).unwrap();
            c.check(s.modulus() <= bound, format!("|{x} +h {b}| = {} above 2^h max at h={h}", s.modulus()));
        }
        match graph_witness(&x, &b, &target, 1e-4, &t) {
            Ok((ah, bh)) => {
                let got = c_add_h(&ah, &bh, 1e-4).unwrap();
                let err = (got.to_c64() - target.to_c64()).norm();
                c.check(err <= 1e-8, format!("witness for {target} in {x} + {b} lands at {got} (error {err:e})"));
            }
            Err(e) => c.failures.push(format!("witness for {target} in {x} + {b}: {e}")),
        }
    }
    c.time(start.elapsed(), Duration::from_secs(30), "dequantization");
    c
}

fn half_double_distributivity() -> Criterion {
    let mut c = Criterion::default();
    let t = tol();
    fn outcome<S: Structure>(x: &S) -> Result<(), String> {
        match check_double_distributivity(x, &opts()) {
            Ok(r) if r.verdict(Axiom::HalfDoubleDistributivity).is_some_and(|v| v.checked > 0) => Ok(()),
            Ok(_) => Err(format!("{}: nothing checked", x.name())),
            Err(e) => Err(format!("{}: {e}", x.name())),
        }
    }
    fn run<S: Structure>(c: &mut Criterion, x: &S) {
        if let Err(e) = outcome(x) {
            c.failures.push(e);
        }
    }
    let mut finite = vec![make_krasner(), make_sign(), make_zn(6).unwrap(), make_m()];
    for p in [2, 3, 5, 7] {
        finite.push(make_fp(p).unwrap());
    }
    for (p, n) in [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        finite.push(make_powers_quotient(p, n).unwrap());
    }
    finite.push(mul_quotient(&make_fp(5).unwrap(), bit(1) | bit(4)).unwrap());
    for x in finite.iter().filter(|x| x.has_mul()) {
        run(&mut c, x);
    }
    run(&mut c, &TropicalComplex::new(t));
    run(&mut c, &TropicalReal { tol: t });
    run(&mut c, &Phase { tol: t });
    run(&mut c, &Triangle { tol: t });
    run(&mut c, &Ultra { tol: t });
    run(&mut c, &Tropical { tol: t });
    run(&mut c, &Amoeba { tol: t });
    run(&mut c, &TropicalQuaternion { tol: t });
    run(&mut c, &Monomial::<f64>::new(t));
    // The p-adic sum is not associative, so the four-term sum depends on
    // the bracketing and the inclusion can fail.
    for p in [2, 3, 5] {
        let x = Padic::new(p, 8).unwrap();
        match outcome(&x) {
            Ok(()) => c.known(true, format!("{}: half double distributivity", x.name())),
            Err(e) => c.known(false, e.chars().take(160).collect::<String>() + " ..."),
        }
    }
    c
}

fn documented_limits() -> Criterion {
    let mut c = Criterion::default();
    let readme = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md")).unwrap_or_default();
    let lib = include_str!("../src/lib.rs");
    for (what, text) in [("README", readme.as_str()), ("crate docs", lib)] {
        let lower = text.to_lowercase();
        c.check(
            lower.contains("semi-continuity") && lower.contains("closure") && lower.contains("sampl"),
            format!("{what} does not state that the topological claims are only sampled"),
        );
    }
    c
}

fn main() {
    let criteria: [(&str, fn() -> Criterion); 8] = [
        ("golden values", golden),
        ("exhaustive multigroup suites", exhaustive),
        ("sampled hyperfield suites", sampled),
        ("n-ary sums against folds", oracles),
        ("homomorphisms", homomorphisms),
        ("dequantization convergence", dequantization),
        ("half double distributivity", half_double_distributivity),
        ("topological claims covered by sampling only", documented_limits),
    ];
    let mut ok = true;
    for (n, (title, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let c = f();
        ok &= report(n + 1, title, &c, start.elapsed());
    }
    if !ok {
        std::process::exit(1);
    }
}
