//! Report documents: exact strings next to float renderings, verdicts with witnesses, and
//! timing kept apart so the rest is reproducible byte for byte.

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use uniprod_core::positivity::{PositivityReport, PsdVerdict};
use uniprod_core::{LawVerdict, Moments, Rational, Result, Scalar};

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub law: String,
    pub passed: bool,
    pub checks: usize,
    pub witness: Option<Value>,
}

impl Verdict {
    pub fn from_law(v: &LawVerdict) -> Self {
        Verdict { law: v.law.clone(), passed: v.passed(), checks: v.checks, witness: v.witness.clone().map(Value::String) }
    }

    pub fn from_positivity(law: &str, report: &PositivityReport) -> Self {
        let witness = if let Some(h) = &report.hermitian {
            Some(json!({
                "kind": "hermitian",
                "word": h.word,
                "component": h.component,
                "value": h.value.to_string(),
                "starred_value": h.starred_value.to_string(),
            }))
        } else {
            report.components.iter().find(|c| !c.verdict.psd).map(|c| {
                json!({
                    "kind": "gram",
                    "component": c.component,
                    "basis": c.basis,
                    "vector": c.verdict.witness.iter().flatten().map(Scalar::to_string).collect::<Vec<_>>(),
                    "value": c.verdict.witness_value.as_ref().map(Rational::to_string),
                })
            })
        };
        Verdict { law: law.into(), passed: report.passed(), checks: report.components.len() + 1, witness }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input_sha256: Option<String>,
    pub parameters: Map<String, Value>,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
    pub passed: bool,
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: &str, input_sha256: Option<String>, parameters: Map<String, Value>, results: Value, verdicts: Vec<Verdict>) -> Self {
        let passed = verdicts.iter().all(|v| v.passed);
        Report { command: command.into(), input_sha256, parameters, results, verdicts, passed, timing: None }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// `c₀ + c₁ t + c₂ t^2 + …` with zero terms dropped; real coefficients print as rationals.
pub fn polynomial_in_t(coefficients: &[Scalar]) -> String {
    let mut out = String::new();
    for (k, c) in coefficients.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let (negative, body) = match (c.is_real(), c.re.is_negative()) {
            (true, true) => (true, (-&c.re).to_string()),
            (true, false) => (false, c.re.to_string()),
            _ => (false, format!("({c})")),
        };
        let body = match (k, body.as_str()) {
            (0, _) => body,
            (1, "1") => "t".into(),
            (_, "1") => format!("t^{k}"),
            (1, _) => format!("{body} t"),
            _ => format!("{body} t^{k}"),
        };
        let sign = match (out.is_empty(), negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        out.push_str(sign);
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn rational(r: &Rational) -> Value {
    json!({ "exact": r.to_string(), "float": r.to_f64() })
}

pub fn scalars(values: &[Scalar]) -> Value {
    let (exact, float): (Vec<_>, Vec<_>) = values
        .iter()
        .map(|s| {
            let (re, im) = s.to_f64_pair();
            (Value::String(s.to_string()), json!([re, im]))
        })
        .unzip();
    json!({ "exact": exact, "float": float })
}

/// `{word: {exact: [..], float: [[re, im], ..]}}` over all words up to `degree`.
pub fn table(phi: &dyn Moments, degree: usize) -> Result<Value> {
    let algebra = phi.algebra();
    let mut out = Map::new();
    for w in algebra.words_up_to(degree) {
        out.insert(algebra.render(w.letters()), scalars(&phi.moment(w.letters())?));
    }
    Ok(Value::Object(out))
}

pub fn psd(verdict: &PsdVerdict) -> Value {
    json!({
        "psd": verdict.psd,
        "pivots": verdict.pivots.iter().map(|p| json!({ "index": p.index, "value": p.value.to_string() })).collect::<Vec<_>>(),
        "witness": verdict.witness.as_ref().map(|w| w.iter().map(Scalar::to_string).collect::<Vec<_>>()),
        "witness_value": verdict.witness_value.as_ref().map(Rational::to_string),
    })
}

pub fn positivity(report: &PositivityReport) -> Value {
    json!({
        "certified_half_degree": report.half_degree,
        "hermitian": report.hermitian.is_none(),
        "components": report
            .components
            .iter()
            .map(|c| json!({ "component": c.component, "basis": c.basis, "gram": psd(&c.verdict) }))
            .collect::<Vec<_>>(),
        "passed": report.passed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_in_t() {
        let c = |t: &str| t.parse::<Scalar>().unwrap();
        assert_eq!(polynomial_in_t(&[c("0"), c("0"), c("2")]), "2 t^2");
        assert_eq!(polynomial_in_t(&[c("1"), c("-1"), c("1/2"), c("i")]), "1 - t + 1/2 t^2 + (0+1i) t^3");
        assert_eq!(polynomial_in_t(&[c("0")]), "0");
        assert_eq!(polynomial_in_t(&[c("0"), c("-3")]), "-3 t");
    }
}
