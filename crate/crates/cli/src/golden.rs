//! Built-in worked examples replayed against their known values.

use arithpoints_core::superelliptic::{
    divisor_of_differential, divisor_of_function, stratum_of_form, verify_torsion_witness, Divisor,
    Place, SuperellipticCurve,
};
use arithpoints_core::{Error, GaussianRational};
use clap::Subcommand;
use serde_json::{json, Value};

use crate::commands::load_curve;
use crate::{CmdResult, Failure};

#[derive(Subcommand, Debug)]
pub enum ExampleCmd {
    /// `y² = x⁷ − 1`: divisors of `x dx/y` and `y − i`, 7-torsion.
    Septic,
    /// `dx/y` on `y² = xⁿ − 1` for odd `n` (all of 5, 7, 9, 11 by default).
    Veech {
        #[arg(long)]
        n: Option<u32>,
    },
    /// `dx/y` on `y² = x⁶ − x`.
    Sextic,
    /// `(x − c) dx/y³` on `y⁴ = x(x − 1)(x − λ)`.
    Genus3 {
        #[arg(long, default_value = "-3", allow_hyphen_values = true)]
        lambda: String,
    },
}

struct Report {
    checks: Vec<Value>,
}

impl Report {
    fn check(&mut self, name: impl Into<String>, expected: impl ToString, actual: Result<String, Error>) {
        let expected = expected.to_string();
        let (actual, ok) = match actual {
            Ok(a) => {
                let ok = a == expected;
                (a, ok)
            }
            Err(e) => (format!("error: {e}"), false),
        };
        self.checks.push(json!({
            "check": name.into(),
            "status": if ok { "PASS" } else { "FAIL" },
            "expected": expected,
            "actual": actual,
        }));
    }
}

/// `2*(0, i) + (1, 0) - 7*inf_0`; `0` for the zero divisor.
fn divisor_sum(d: &Divisor) -> String {
    let mut out = String::new();
    for (p, &k) in d.terms() {
        let sign = if k < 0 { "-" } else { "+" };
        if out.is_empty() {
            if k < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if k.abs() != 1 {
            out.push_str(&format!("{}*", k.abs()));
        }
        out.push_str(&p.to_string());
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn place(s: &str) -> Place {
    s.parse().expect("built-in place")
}

fn curve(s: &str, ceiling: Option<usize>) -> Result<SuperellipticCurve, Failure> {
    load_curve(s, ceiling)
}

fn form_divisor(c: &SuperellipticCurve, expr: &str) -> Result<String, Error> {
    Ok(divisor_sum(&divisor_of_differential(c, &c.function(expr)?)?))
}

fn form_stratum(c: &SuperellipticCurve, expr: &str) -> Result<String, Error> {
    Ok(stratum_of_form(c, &c.function(expr)?)?.to_string())
}

fn septic(r: &mut Report, ceiling: Option<usize>) -> Result<(), Failure> {
    let c = curve("2; f = x^7 - 1", ceiling)?;
    let (pi, mi, inf) = (place("(0, i)"), place("(0, -i)"), Place::Infinite(0));
    r.check("genus", 3, Ok(c.genus().to_string()));
    let want = Divisor::from_terms([(pi.clone(), 1), (mi.clone(), 1), (inf.clone(), 2)]);
    r.check("div(x dx/y)", divisor_sum(&want), form_divisor(&c, "x / y"));
    let want = Divisor::from_terms([(pi.clone(), 7), (inf.clone(), -7)]);
    let got = c.function("y - i").and_then(|w| divisor_of_function(&c, &w, &[]));
    r.check("div(y - i)", divisor_sum(&want), got.map(|d| divisor_sum(&d)));
    r.check("stratum of x dx/y", "(2,1,1)", form_stratum(&c, "x / y"));
    let torsion = |p: &Place, w: &str, k: u64| -> Result<String, Error> {
        Ok(verify_torsion_witness(&c, p, &inf, k, &c.function(w)?)?.to_string())
    };
    r.check("7*((0, i) - inf_0) = div(y - i)", true, torsion(&pi, "y - i", 7));
    r.check("7*((0, -i) - inf_0) = div(y + i)", true, torsion(&mi, "y + i", 7));
    r.check("3*((0, i) - inf_0) != div(y - i)", false, torsion(&pi, "y - i", 3));
    Ok(())
}

fn veech(r: &mut Report, n: Option<u32>, ceiling: Option<usize>) -> Result<(), Failure> {
    let ns = match n {
        Some(n) if n >= 5 && n % 2 == 1 => vec![n],
        Some(n) => return Err(Failure::Validation(format!("n = {n} must be odd and at least 5"))),
        None => vec![5, 7, 9, 11],
    };
    for n in ns {
        let c = curve(&format!("2; f = x^{n} - 1"), ceiling)?;
        r.check(format!("n = {n}: genus"), (n - 1) / 2, Ok(c.genus().to_string()));
        let want = Divisor::from_terms([(Place::Infinite(0), n as i64 - 3)]);
        r.check(format!("n = {n}: div(dx/y)"), divisor_sum(&want), form_divisor(&c, "1 / y"));
        r.check(format!("n = {n}: stratum of dx/y"), format!("({})", n - 3), form_stratum(&c, "1 / y"));
    }
    Ok(())
}

fn sextic(r: &mut Report, ceiling: Option<usize>) -> Result<(), Failure> {
    let c = curve("2; f = x^6 - x", ceiling)?;
    r.check("genus", 2, Ok(c.genus().to_string()));
    let want = Divisor::from_terms([(Place::Infinite(0), 1), (Place::Infinite(1), 1)]);
    r.check("div(dx/y)", divisor_sum(&want), form_divisor(&c, "1 / y"));
    r.check("stratum of dx/y", "(1,1)", form_stratum(&c, "1 / y"));
    Ok(())
}

fn genus3(r: &mut Report, lambda: &str, ceiling: Option<usize>) -> Result<(), Failure> {
    let lam: GaussianRational = lambda.parse()?;
    let c = curve(&format!("4; f = x*(x - 1)*(x - ({lam}))"), ceiling)?;
    r.check("genus", 3, Ok(c.genus().to_string()));
    for x0 in [GaussianRational::from(0), GaussianRational::from(1), lam] {
        let p = Place::finite(x0.clone(), GaussianRational::from(0));
        let want = Divisor::from_terms([(p.clone(), 4)]);
        let expr = format!("(x - ({x0})) / y^3");
        r.check(format!("div((x - ({x0})) dx/y^3)"), divisor_sum(&want), form_divisor(&c, &expr));
        r.check(format!("stratum of (x - ({x0})) dx/y^3"), "(4)", form_stratum(&c, &expr));
    }
    let want = Divisor::from_terms([(Place::Infinite(0), 4)]);
    r.check("div(dx/y^3)", divisor_sum(&want), form_divisor(&c, "1 / y^3"));
    Ok(())
}

pub fn run(cmd: ExampleCmd, ceiling: Option<usize>) -> CmdResult {
    let mut r = Report { checks: Vec::new() };
    let name = match cmd {
        ExampleCmd::Septic => {
            septic(&mut r, ceiling)?;
            "septic"
        }
        ExampleCmd::Veech { n } => {
            veech(&mut r, n, ceiling)?;
            "veech"
        }
        ExampleCmd::Sextic => {
            sextic(&mut r, ceiling)?;
            "sextic"
        }
        ExampleCmd::Genus3 { lambda } => {
            genus3(&mut r, &lambda, ceiling)?;
            "genus3"
        }
    };
    let failed = r.checks.iter().filter(|c| c["status"] == "FAIL").count();
    Ok(json!({"example": name, "passed": r.checks.len() - failed, "failed": failed, "checks": r.checks}))
}

pub fn is_report(v: &Value) -> bool {
    v.get("example").is_some() && v.get("checks").is_some()
}

pub fn has_failures(v: &Value) -> bool {
    is_report(v) && v["failed"].as_u64().is_some_and(|n| n > 0)
}

/// One `PASS`/`FAIL` line per check, then a summary.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    for c in v["checks"].as_array().into_iter().flatten() {
        let s = |k: &str| c[k].as_str().unwrap_or_default().to_string();
        if s("status") == "PASS" {
            out.push_str(&format!("PASS  {}: {}\n", s("check"), s("actual")));
        } else {
            out.push_str(&format!("FAIL  {}: expected {}, got {}\n", s("check"), s("expected"), s("actual")));
        }
    }
    out.push_str(&format!(
        "example: {}\npassed: {}\nfailed: {}\n",
        v["example"].as_str().unwrap_or_default(),
        v["passed"],
        v["failed"]
    ));
    out
}
