//! Structures by name, behind an object-safe text interface.
//!
//! Names: `K`, `S`, `M`, `Q1`, `F<p>`, `Z<n>`, `L<n>` and `L<n>s` (linear
//! orders), `pow:<p>:<n>` (powers quotient), `R`, `C`, `TC`, `TR`, `Phi`,
//! `tri`, `ultra`, `trop`, `amoeba`, `max-times`, `quat`, `mono`, `mono-q`,
//! `mono-z`, `mono-rev`, `padic:<p>:<L>` (`padic` alone is `padic:5:8`) and
//! `finite:<path>` for a JSON table.

use num_rational::Ratio;
use serde_json::json;

use crate::axioms::{
    c_characteristic, characteristic, check_double_distributivity, check_multigroup, check_multiring,
    AxiomReport, Characteristic, CheckOptions, Level, Mode,
};
use crate::ctrop::{Phase, TropicalComplex, TropicalQuaternion, TropicalReal};
use crate::error::{Error, Result};
use crate::exotic::{Monomial, Padic};
use crate::finite::{
    make_fp, make_krasner, make_linear_order, make_m, make_powers_quotient, make_sign, make_zn,
    FiniteMultistructure,
};
use crate::homs::{hf_poly_eval, ComplexField, HFPolynomial, RealField};
use crate::realhf::{Amoeba, MaxTimes, Triangle, Tropical, Ultra};
use crate::structure::{sum_list, Structure};
use crate::tol::Tolerance;

/// Requested axiom family for [`DynStructure::verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    Multigroup,
    Minimal,
    Multiring,
    Hyperring,
    Hyperfield,
    /// Double distributivity, with the half inclusion as a hard check.
    DoubleDistributivity,
}

impl std::str::FromStr for VerifyLevel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "multigroup" => VerifyLevel::Multigroup,
            "minimal" => VerifyLevel::Minimal,
            "multiring" => VerifyLevel::Multiring,
            "hyperring" => VerifyLevel::Hyperring,
            "hyperfield" => VerifyLevel::Hyperfield,
            "dd" => VerifyLevel::DoubleDistributivity,
            _ => return Err(Error::Parse(format!("unknown level `{s}`"))),
        })
    }
}

/// A finished axiom run rendered both ways.
#[derive(Debug, Clone)]
pub struct Verification {
    pub passed: bool,
    pub text: String,
    pub json: String,
}

impl Verification {
    fn of<E>(r: &AxiomReport<E>) -> Self {
        Verification { passed: r.passed(), text: r.to_text(), json: r.to_json() }
    }
}

/// Any [`Structure`], with elements and value sets as canonical text.
pub trait DynStructure: Send + Sync {
    fn name(&self) -> String;
    fn has_mul(&self) -> bool;
    fn elem(&self, a: &str) -> Result<String>;
    fn set(&self, s: &str) -> Result<String>;
    fn add(&self, a: &str, b: &str) -> Result<String>;
    /// Left fold of the set-extended addition.
    fn sum(&self, values: &[String]) -> Result<String>;
    fn mul(&self, a: &str, b: &str) -> Result<String>;
    fn neg(&self, a: &str) -> Result<String>;
    fn member(&self, x: &str, s: &str) -> Result<bool>;
    fn verify(&self, level: VerifyLevel, opts: &CheckOptions) -> Result<Verification>;
    /// `(chr, cchr)` with the iterated sums capped at `cap` terms.
    fn characteristics(&self, cap: usize) -> Result<(Characteristic, Characteristic)>;
    /// The value set of a polynomial at a point, and whether it holds 0.
    fn poly(&self, poly: &str, point: &[String]) -> Result<(String, bool)>;
    fn as_finite(&self) -> Option<&FiniteMultistructure> {
        None
    }
}

struct Dyn<S> {
    s: S,
    has_mul: bool,
}

impl<S: Structure + Send> Dyn<S> {
    fn boxed(s: S) -> Box<dyn DynStructure>
    where
        S: 'static,
    {
        Box::new(Dyn { s, has_mul: true })
    }

    fn need_mul(&self) -> Result<()> {
        if self.has_mul {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{} has no multiplication", self.s.name())))
        }
    }
}

impl<S: Structure + Send> DynStructure for Dyn<S> {
    fn name(&self) -> String {
        self.s.name()
    }
    fn has_mul(&self) -> bool {
        self.has_mul
    }
    fn elem(&self, a: &str) -> Result<String> {
        Ok(self.s.fmt_elem(&self.s.parse_elem(a)?))
    }
    fn set(&self, s: &str) -> Result<String> {
        Ok(self.s.fmt_set(&self.s.parse_set(s)?))
    }
    fn add(&self, a: &str, b: &str) -> Result<String> {
        let (a, b) = (self.s.parse_elem(a)?, self.s.parse_elem(b)?);
        Ok(self.s.fmt_set(&self.s.add(&a, &b)))
    }
    fn sum(&self, values: &[String]) -> Result<String> {
        let v = values.iter().map(|a| self.s.parse_elem(a)).collect::<Result<Vec<_>>>()?;
        Ok(self.s.fmt_set(&sum_list(&self.s, &v)?))
    }
    fn mul(&self, a: &str, b: &str) -> Result<String> {
        self.need_mul()?;
        let (a, b) = (self.s.parse_elem(a)?, self.s.parse_elem(b)?);
        Ok(self.s.fmt_elem(&self.s.mul(&a, &b)))
    }
    fn neg(&self, a: &str) -> Result<String> {
        Ok(self.s.fmt_elem(&self.s.neg(&self.s.parse_elem(a)?)))
    }
    fn member(&self, x: &str, s: &str) -> Result<bool> {
        Ok(self.s.member(&self.s.parse_elem(x)?, &self.s.parse_set(s)?))
    }
    fn verify(&self, level: VerifyLevel, opts: &CheckOptions) -> Result<Verification> {
        let lvl = match level {
            VerifyLevel::Multigroup => return Ok(Verification::of(&check_multigroup(&self.s, Mode::Full, opts))),
            VerifyLevel::Minimal => return Ok(Verification::of(&check_multigroup(&self.s, Mode::Minimal, opts))),
            VerifyLevel::DoubleDistributivity => {
                self.need_mul()?;
                return Ok(Verification::of(&check_double_distributivity(&self.s, opts)?));
            }
            VerifyLevel::Multiring => Level::Multiring,
            VerifyLevel::Hyperring => Level::Hyperring,
            VerifyLevel::Hyperfield => Level::Hyperfield,
        };
        self.need_mul()?;
        Ok(Verification::of(&check_multiring(&self.s, lvl, opts)))
    }
    fn characteristics(&self, cap: usize) -> Result<(Characteristic, Characteristic)> {
        self.need_mul()?;
        Ok((characteristic(&self.s, cap)?, c_characteristic(&self.s, cap)?))
    }
    fn poly(&self, poly: &str, point: &[String]) -> Result<(String, bool)> {
        self.need_mul()?;
        let p = HFPolynomial::parse(&self.s, poly)?;
        let pt = point.iter().map(|a| self.s.parse_elem(a)).collect::<Result<Vec<_>>>()?;
        let v = hf_poly_eval(&self.s, &p, &pt)?;
        Ok((self.s.fmt_set(&v), self.s.member(&self.s.zero(), &v)))
    }
}

struct DynFinite(Dyn<FiniteMultistructure>);

impl DynStructure for DynFinite {
    fn name(&self) -> String {
        self.0.name()
    }
    fn has_mul(&self) -> bool {
        self.0.has_mul()
    }
    fn elem(&self, a: &str) -> Result<String> {
        self.0.elem(a)
    }
    fn set(&self, s: &str) -> Result<String> {
        self.0.set(s)
    }
    fn add(&self, a: &str, b: &str) -> Result<String> {
        self.0.add(a, b)
    }
    fn sum(&self, values: &[String]) -> Result<String> {
        self.0.sum(values)
    }
    fn mul(&self, a: &str, b: &str) -> Result<String> {
        self.0.mul(a, b)
    }
    fn neg(&self, a: &str) -> Result<String> {
        self.0.neg(a)
    }
    fn member(&self, x: &str, s: &str) -> Result<bool> {
        self.0.member(x, s)
    }
    fn verify(&self, level: VerifyLevel, opts: &CheckOptions) -> Result<Verification> {
        self.0.verify(level, opts)
    }
    fn characteristics(&self, cap: usize) -> Result<(Characteristic, Characteristic)> {
        self.0.characteristics(cap)
    }
    fn poly(&self, poly: &str, point: &[String]) -> Result<(String, bool)> {
        self.0.poly(poly, point)
    }
    fn as_finite(&self) -> Option<&FiniteMultistructure> {
        Some(&self.0.s)
    }
}

/// Wrap a table as a registry structure.
pub fn finite(x: FiniteMultistructure) -> Box<dyn DynStructure> {
    let has_mul = x.has_mul();
    Box::new(DynFinite(Dyn { s: x, has_mul }))
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("bad {what} `{s}`")))
}

/// Look a structure up by name.
pub fn lookup(name: &str) -> Result<Box<dyn DynStructure>> {
    let tol = Tolerance::default();
    if let Some(path) = name.strip_prefix("finite:") {
        let text = std::fs::read_to_string(path)?;
        return Ok(finite(FiniteMultistructure::from_json(&text)?));
    }
    if let Some(rest) = name.strip_prefix("padic") {
        let (p, depth) = match rest.strip_prefix(':').map(|r| r.split_once(':')) {
            None if rest.is_empty() => (5, 8),
            Some(Some((p, l))) => (number(p, "prime")?, number(l, "depth")?),
            _ => return Err(Error::Parse(format!("expected padic:<p>:<L>, got `{name}`"))),
        };
        return Ok(Dyn::boxed(Padic::new(p, depth)?));
    }
    if let Some(rest) = name.strip_prefix("pow:") {
        let (p, n) = rest.split_once(':').ok_or_else(|| Error::Parse(format!("expected pow:<p>:<n>, got `{name}`")))?;
        return Ok(finite(make_powers_quotient(number(p, "prime")?, number(n, "depth")?)?));
    }
    Ok(match name {
        "K" => finite(make_krasner()),
        "S" => finite(make_sign()),
        "M" => finite(make_m()),
        "Q1" => finite(make_linear_order(2, false)?.with_name("Q1")),
        "R" => Dyn::boxed(RealField { tol }),
        "C" => Dyn::boxed(ComplexField { tol }),
        "TC" => Dyn::boxed(TropicalComplex { tol }),
        "TR" => Dyn::boxed(TropicalReal { tol }),
        "Phi" => Dyn::boxed(Phase { tol }),
        "tri" => Dyn::boxed(Triangle { tol }),
        "ultra" => Dyn::boxed(Ultra { tol }),
        "trop" => Dyn::boxed(Tropical { tol }),
        "amoeba" => Dyn::boxed(Amoeba { tol }),
        "max-times" => Dyn::boxed(MaxTimes { tol }),
        "quat" => Dyn::boxed(TropicalQuaternion { tol }),
        "mono" => Dyn::boxed(Monomial::<f64>::new(tol)),
        "mono-q" => Dyn::boxed(Monomial::<Ratio<i64>>::new(tol)),
        "mono-z" => Dyn::boxed(Monomial::<i64>::new(tol)),
        "mono-rev" => Dyn::boxed(Monomial::<f64>::reversed(tol)),
        _ => {
            let digits = |s: &str| s.parse::<usize>().ok();
            if let Some(p) = name.strip_prefix('F').and_then(digits) {
                finite(make_fp(p)?)
            } else if let Some(n) = name.strip_prefix('Z').and_then(digits) {
                finite(make_zn(n)?)
            } else if let Some(n) = name.strip_prefix('L').and_then(|s| s.strip_suffix('s')).and_then(digits) {
                finite(make_linear_order(n, true)?)
            } else if let Some(n) = name.strip_prefix('L').and_then(digits) {
                finite(make_linear_order(n, false)?)
            } else {
                return Err(Error::Parse(format!("unknown structure `{name}`")));
            }
        }
    })
}

/// The fixed names, for `--help` and listings.
pub const NAMES: [&str; 24] = [
    "K", "S", "M", "Q1", "F<p>", "Z<n>", "L<n>", "L<n>s", "pow:<p>:<n>", "R", "C", "TC", "TR", "Phi", "tri", "ultra",
    "trop", "amoeba", "max-times", "quat", "mono", "mono-q|mono-z|mono-rev", "padic:<p>:<L>", "finite:<path>",
];

/// A JSON object describing a structure, for `--format json` listings.
pub fn describe(x: &dyn DynStructure) -> serde_json::Value {
    json!({ "name": x.name(), "multiplication": x.has_mul(), "finite": x.as_finite().map(|f| f.len()) })
}
