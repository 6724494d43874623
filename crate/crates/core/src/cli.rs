//! The `hyperalg` command line.
//!
//! Exit codes: 0 when every requested check passes, 1 for a mathematical
//! counterexample, 2 for usage, parse and input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::axioms::{check_hom, check_multigroup, CheckOptions, Characteristic, Mode};
use crate::deq::{trace_complex, trace_lm, trace_tri, DeqRow, SCHEDULE};
use crate::error::{Error, Result};
use crate::finite::{
    bit, hom_to_k, hyperfield_search, make_krasner, members, mul_quotient, prime_ideals, table_text, FinSet,
    FiniteMultistructure,
};
use crate::homs::{run_named_hom, HOMS};
use crate::registry::{lookup, DynStructure, VerifyLevel, NAMES};
use crate::sets::{parse_num, ComplexElem};
use crate::structure::Structure;
use crate::tol::Tolerance;

const GRAMMAR: &str = "\
Element syntax:
  TC, Phi, C    1∠0.5 (ASCII 1@0.5), 1+2i, -i, 2, pi/2 as an angle
  TR, R         -2.5
  tri, ultra    nonnegative reals
  trop, amoeba  reals or -inf
  quat          1+2i-j+0.5k or (1,2,-1,0.5)
  mono          3t^2, (1+i)t^-0.5, -t, 2 (mono-q: t^1/2, mono-z: integers)
  padic:p:L     2 + 3*5 + 1*5^2, 5^-1 * (1 + 2*5), -1, 1/3 (prefix p=5: optional)
  finite        table labels, e.g. 0, 1, -1
Set syntax: the output of `add`, e.g. `arc r=1 from=0 sweep=1.57`, `disk r=1`,
`interval [1,3]`, `{0,1}`, `below r=1`, `smaller e=0`, joined with ∪ or |.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Lm,
    Tri,
    Complex,
}

#[derive(Debug, Parser)]
#[command(name = "hyperalg", version, about = "Set-valued arithmetic for hyperfields and multigroups", after_help = GRAMMAR)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for sampled checks.
    #[arg(long, global = true, env = "HYPERALG_SEED", default_value_t = 0x5eed)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Print the value set a ∔ b.
    Add {
        structure: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Print the left-folded sum of several elements.
    Sum {
        structure: String,
        #[arg(required = true, allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// Print the product a·b.
    Mul {
        structure: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Test membership of an element in a value set.
    Member {
        structure: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        set: String,
    },
    /// Check an axiom family: multigroup, minimal, multiring, hyperring,
    /// hyperfield, dd, or hyperfield-search (finite tables only).
    Verify {
        structure: String,
        #[arg(long, default_value = "hyperfield")]
        level: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long)]
        fail_fast: bool,
    },
    /// Factor a finite multiring table by a multiplicative subgroup.
    Quotient {
        table: PathBuf,
        /// Labels of the subgroup, comma separated.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        by: Vec<String>,
        /// Write the JSON table here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Characteristic and C-characteristic.
    Char {
        structure: String,
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
    /// Check a named homomorphism; `--list` shows the catalogue.
    Hom {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Pairs per stratum for the w-maps.
        #[arg(long, default_value_t = 1000)]
        per_stratum: usize,
    },
    /// Evaluate a polynomial at a point; reports whether 0 is in the value.
    Poly {
        structure: String,
        poly: String,
        #[arg(allow_hyphen_values = true)]
        point: Vec<String>,
    },
    /// Trace a dequantization family over a schedule of h.
    Deq {
        #[arg(value_enum)]
        family: Family,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long = "h", value_delimiter = ',')]
        h: Vec<f64>,
    },
    /// Prime ideals of a finite multiring and their maps to K.
    Spectrum { structure: String },
    /// List structure names and catalogue maps.
    List,
}

/// Run with the given arguments (including the program name); returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    // Element positionals accept leading hyphens, so a `--` separator only
    // needs dropping; options written after it still apply.
    let mut argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    if let Some(i) = argv.iter().position(|a| a == "--") {
        argv.remove(i);
    }
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Structural(_) => 1,
                _ => 2,
            }
        }
    }
}

fn line(s: impl AsRef<str>) -> String {
    format!("{}\n", s.as_ref())
}

fn json_line(v: serde_json::Value) -> String {
    line(serde_json::to_string_pretty(&v).expect("json value"))
}

fn no_csv(cmd: &str) -> Error {
    Error::Unsupported(format!("`{cmd}` has no CSV output"))
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let fmt = cli.format;
    match &cli.cmd {
        Cmd::Add { structure, a, b } => {
            let x = lookup(structure)?;
            let v = x.add(a, b)?;
            simple(fmt, "add", v, json!({ "structure": x.name(), "a": a, "b": b }))
        }
        Cmd::Sum { structure, values } => {
            let x = lookup(structure)?;
            let v = x.sum(values)?;
            simple(fmt, "sum", v, json!({ "structure": x.name(), "values": values }))
        }
        Cmd::Mul { structure, a, b } => {
            let x = lookup(structure)?;
            let v = x.mul(a, b)?;
            simple(fmt, "mul", v, json!({ "structure": x.name(), "a": a, "b": b }))
        }
        Cmd::Member { structure, x: e, set } => {
            let x = lookup(structure)?;
            let m = x.member(e, set)?;
            simple(fmt, "member", m.to_string(), json!({ "structure": x.name(), "element": e, "set": x.set(set)? }))
        }
        Cmd::Verify { structure, level, budget, fail_fast } => {
            let x = lookup(structure)?;
            let opts = CheckOptions { budget: *budget, seed: cli.seed, fail_fast: *fail_fast };
            if level == "hyperfield-search" {
                return search(fmt, x.as_ref());
            }
            let v = x.verify(level.parse::<VerifyLevel>()?, &opts)?;
            let code = if v.passed { 0 } else { 1 };
            match fmt.unwrap_or(Format::Text) {
                Format::Text => Ok((v.text, code)),
                Format::Json => Ok((line(v.json), code)),
                Format::Csv => Err(no_csv("verify")),
            }
        }
        Cmd::Quotient { table, by, output } => quotient(fmt, table, by, output.as_ref()),
        Cmd::Char { structure, cap } => {
            let x = lookup(structure)?;
            let (c, cc) = x.characteristics(*cap)?;
            let exact = |c: Characteristic| !matches!(c, Characteristic::Zero { exact: false });
            let capped = !(exact(c) && exact(cc));
            Ok((
                match fmt.unwrap_or(Format::Text) {
                    Format::Text => {
                        line(format!("chr={} cchr={}{}", c.value(), cc.value(), if capped { " capped" } else { "" }))
                    }
                    Format::Json => json_line(
                        json!({ "structure": x.name(), "chr": c.value(), "cchr": cc.value(), "exact": !capped }),
                    ),
                    Format::Csv => format!("structure,chr,cchr,exact\n{},{},{},{}\n", x.name(), c.value(), cc.value(), !capped),
                },
                0,
            ))
        }
        Cmd::Hom { name, list, budget, per_stratum } => {
            if *list || name.is_none() {
                let mut s = String::new();
                for h in HOMS {
                    let tag = if h.expected { "" } else { " (counterexample)" };
                    s.push_str(&line(format!("{}: {} -> {}{tag}", h.name, h.domain, h.codomain)));
                }
                return Ok((s, 0));
            }
            let opts = CheckOptions::sampled(*budget, cli.seed);
            let r = run_named_hom(name.as_deref().expect("checked"), &opts, *per_stratum)?;
            let code = if r.is_hom { 0 } else { 1 };
            match fmt.unwrap_or(Format::Text) {
                Format::Text => Ok((r.text, code)),
                Format::Json => Ok((line(r.json), code)),
                Format::Csv => Err(no_csv("hom")),
            }
        }
        Cmd::Poly { structure, poly, point } => {
            let x = lookup(structure)?;
            let (v, zero) = x.poly(poly, point)?;
            Ok((
                match fmt.unwrap_or(Format::Text) {
                    Format::Text => format!("{v}\nzero={zero}\n"),
                    Format::Json => json_line(json!({ "structure": x.name(), "value": v, "zero": zero })),
                    Format::Csv => return Err(no_csv("poly")),
                },
                0,
            ))
        }
        Cmd::Deq { family, a, b, h } => deq(fmt, *family, a, b, h),
        Cmd::Spectrum { structure } => spectrum(fmt, lookup(structure)?.as_ref(), cli.seed),
        Cmd::List => {
            let mut s = String::from("structures:\n");
            for n in NAMES {
                s.push_str(&line(format!("  {n}")));
            }
            s.push_str("maps:\n");
            for h in HOMS {
                s.push_str(&line(format!("  {}", h.name)));
            }
            Ok((s, 0))
        }
    }
}

fn simple(fmt: Option<Format>, cmd: &str, value: String, mut doc: serde_json::Value) -> Result<(String, i32)> {
    Ok((
        match fmt.unwrap_or(Format::Text) {
            Format::Text => line(value),
            Format::Json => {
                doc["value"] = json!(value);
                json_line(doc)
            }
            Format::Csv => return Err(no_csv(cmd)),
        },
        0,
    ))
}

fn search(fmt: Option<Format>, x: &dyn DynStructure) -> Result<(String, i32)> {
    let t = x
        .as_finite()
        .ok_or_else(|| Error::Unsupported("hyperfield-search needs a finite table".into()))?;
    let r = hyperfield_search(t)?;
    let additive_ok = check_multigroup(t, Mode::Full, &CheckOptions::default()).passed();
    let verdict = if r.valid.is_empty() {
        "no univalued multiplication admits hyperfield".to_string()
    } else {
        format!("{} multiplication tables admit hyperfield", r.valid.len())
    };
    Ok((
        match fmt.unwrap_or(Format::Text) {
            Format::Text => {
                let mut s = line(format!("candidates={} screened={} valid={}", r.candidates, r.screened, r.valid.len()));
                for (ax, n) in &r.failures {
                    s.push_str(&line(format!("first-failure={ax} count={n}")));
                }
                if !additive_ok {
                    s.push_str(&line("note: the additive table already fails the multigroup axioms"));
                }
                s.push_str(&line(verdict));
                s
            }
            Format::Json => json_line(json!({
                "structure": t.name(),
                "candidates": r.candidates,
                "screened": r.screened,
                "valid": r.valid.iter().map(|(m, one)| json!({ "mul": m, "one": one })).collect::<Vec<_>>(),
                "first_failures": r.failures,
                "additive_multigroup": additive_ok,
                "verdict": verdict,
            })),
            Format::Csv => return Err(no_csv("verify")),
        },
        0,
    ))
}

fn quotient(fmt: Option<Format>, table: &PathBuf, by: &[String], output: Option<&PathBuf>) -> Result<(String, i32)> {
    let x = FiniteMultistructure::from_json(&std::fs::read_to_string(table)?)?;
    let mut s: FinSet = 0;
    for label in by {
        let i = x.index(label.trim()).ok_or_else(|| Error::Parse(format!("no element `{label}` in {}", x.name())))?;
        s |= bit(i);
    }
    let q = mul_quotient(&x, s)?;
    let doc = q.to_json();
    if let Some(path) = output {
        std::fs::write(path, format!("{doc}\n"))?;
    }
    Ok((
        match fmt.unwrap_or(if output.is_some() { Format::Text } else { Format::Json }) {
            Format::Text => table_text(&q),
            Format::Json => line(doc),
            Format::Csv => return Err(no_csv("quotient")),
        },
        0,
    ))
}

fn deq(fmt: Option<Format>, family: Family, a: &str, b: &str, h: &[f64]) -> Result<(String, i32)> {
    let hs: Vec<f64> = if h.is_empty() { SCHEDULE.to_vec() } else { h.to_vec() };
    let tol = Tolerance::default();
    let rows: Vec<DeqRow> = match family {
        Family::Lm => trace_lm(parse_num(a)?, parse_num(b)?, &hs)?,
        Family::Tri => trace_tri(parse_num(a)?, parse_num(b)?, &hs, &tol)?,
        Family::Complex => trace_complex(&a.parse::<ComplexElem>()?, &b.parse::<ComplexElem>()?, &hs, &tol)?,
    };
    Ok((
        match fmt.unwrap_or(Format::Csv) {
            Format::Csv | Format::Text => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for r in &rows {
                    w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
                }
                String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).expect("csv is utf-8")
            }
            Format::Json => line(serde_json::to_string_pretty(&rows)?),
        },
        0,
    ))
}

fn spectrum(fmt: Option<Format>, x: &dyn DynStructure, seed: u64) -> Result<(String, i32)> {
    let t = x
        .as_finite()
        .ok_or_else(|| Error::Unsupported("spectrum needs a finite table".into()))?;
    let k = make_krasner();
    let opts = CheckOptions::sampled(0, seed);
    let mut rows = Vec::new();
    for i in prime_ideals(t)? {
        let r = check_hom(&hom_to_k(i), t, &k, &opts);
        let labels: Vec<&str> = members(i).map(|e| t.label(e)).collect();
        rows.push((format!("{{{}}}", labels.join(",")), r.is_hom()));
    }
    let code = if rows.iter().all(|r| r.1) { 0 } else { 1 };
    Ok((
        match fmt.unwrap_or(Format::Text) {
            Format::Text => rows
                .iter()
                .map(|(s, ok)| line(format!("prime-ideal={s} map-to-K={}", if *ok { "hom" } else { "fail" })))
                .collect(),
            Format::Json => json_line(json!({
                "structure": t.name(),
                "prime_ideals": rows.iter().map(|(s, ok)| json!({ "ideal": s, "hom": ok })).collect::<Vec<_>>(),
            })),
            Format::Csv => {
                let mut s = String::from("ideal,hom\n");
                for (i, ok) in &rows {
                    s.push_str(&format!("\"{i}\",{ok}\n"));
                }
                s
            }
        },
        code,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (String, String, i32) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["hyperalg"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap(), code)
    }

    #[test]
    fn add_examples() {
        assert_eq!(call(&["add", "TC", "1∠0", "1∠1.5707963268"]).0, "arc r=1 from=0 sweep=1.5707963268\n");
        assert_eq!(call(&["add", "tri", "2", "1"]).0, "interval [1,3]\n");
        assert_eq!(call(&["add", "K", "1", "1"]).0, "{0,1}\n");
        assert_eq!(call(&["add", "TC", "-1", "1"]).0, "disk r=1\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["add", "nope", "1", "1"]).2, 2);
        assert_eq!(call(&["add", "TC", "x", "1"]).2, 2);
        assert_eq!(call(&["frobnicate"]).2, 2);
        assert_eq!(call(&["--format", "csv", "add", "K", "1", "1"]).2, 2);
        assert_eq!(call(&["--help"]).2, 0);
    }

    #[test]
    fn verify_exit_codes() {
        assert_eq!(call(&["verify", "S", "--level", "hyperfield"]).2, 0);
        let (out, _, code) = call(&["verify", "TC", "--level", "dd", "--budget", "1000"]);
        assert_eq!(code, 1);
        assert!(out.contains("axiom=double-distributivity verdict=fail witness=(1∠0,1∠1.5707963268,1∠0,1∠4.7123889804)"), "{out}");
        let (out, _, code) = call(&["verify", "M", "--level", "hyperfield-search"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("no univalued multiplication admits hyperfield\n"));
    }

    #[test]
    fn char_and_poly() {
        assert_eq!(call(&["char", "K"]).0, "chr=2 cchr=1\n");
        assert_eq!(call(&["char", "pow:2:3"]).0, "chr=2 cchr=2\n");
        assert_eq!(call(&["poly", "TC", "X^2 + 1", "i"]).0, "disk r=1\nzero=true\n");
    }

    #[test]
    fn spectrum_of_z6() {
        assert_eq!(call(&["spectrum", "Z6"]).0, "prime-ideal={0,3} map-to-K=hom\nprime-ideal={0,2,4} map-to-K=hom\n");
    }

    #[test]
    fn deq_csv() {
        let (out, _, code) = call(&["deq", "lm", "1", "2", "--h", "1,0.1"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("h,a,b,result,reference,error\n1.0,1,2,"), "{out}");
        assert_eq!(out.lines().count(), 3);
        let (out, _, code) = call(&["deq", "complex", "--", "-1", "i", "--h", "0.1"]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(out.lines().count(), 2);
    }
}
