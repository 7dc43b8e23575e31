//! One function per subcommand; each returns a finished [`Report`] body.

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use uniprod_core::coefficients::Monomial;
use uniprod_core::exponentials::{check_derivative_identity, check_semigroup_law, exp_dual, exp_poly_in_t, trotter, T};
use uniprod_core::lachs::{extract_sigma, render_symword, render_tensor, symword};
use uniprod_core::positivity::{
    is_restricted_generating_functional, is_restricted_state, sample_generating_functional, schoenberg_suite, SampleOptions,
};
use uniprod_core::universal_products::{check_axioms, convolve, AxiomConfig, ProductFunctional};
use uniprod_core::{BuiltinProduct, FreeProduct, Functional, Moments, Rational, Scalar, UniversalProduct, Word};

use crate::error::CliError;
use crate::report::{self, Report, Verdict};
use crate::schema::{parse_product_word, parse_rational, ProblemSpec};

/// Flag values; each falls back to the problem file's `params`, then to a default.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub product: Option<String>,
    pub degree: Option<usize>,
    pub times: Option<Vec<String>>,
    pub steps: Option<Vec<usize>>,
    pub seed: Option<u64>,
    pub rep_dim: Option<usize>,
    pub word: Option<String>,
    pub component: Option<usize>,
    pub trials: Option<usize>,
    pub max_len: Option<usize>,
    pub samples: Option<usize>,
    pub laws: bool,
}

pub struct Input {
    pub spec: ProblemSpec,
    pub sha256: Option<String>,
}

struct Ctx<'a> {
    spec: &'a ProblemSpec,
    opts: &'a Options,
    parameters: Map<String, Value>,
}

impl<'a> Ctx<'a> {
    fn product_name(&self) -> Result<String, CliError> {
        self.opts
            .product
            .clone()
            .or_else(|| self.spec.product.clone())
            .ok_or_else(|| CliError::usage("no product given: pass --product or set \"product\""))
    }

    fn product(&mut self) -> Result<BuiltinProduct, CliError> {
        let name = self.product_name()?;
        let p = name.parse().map_err(|e: uniprod_core::Error| CliError::input("product", e.to_string()))?;
        self.parameters.insert("product".into(), json!(name));
        Ok(p)
    }

    /// A single product or every built-in for `all`.
    fn products(&mut self) -> Result<Vec<BuiltinProduct>, CliError> {
        if self.product_name().ok().as_deref() == Some("all") {
            self.parameters.insert("product".into(), json!("all"));
            return Ok(BuiltinProduct::ALL.to_vec());
        }
        Ok(vec![self.product()?])
    }

    fn degree(&mut self, fallback: usize) -> usize {
        let d = self.opts.degree.or(self.spec.params.degree).unwrap_or(fallback);
        self.parameters.insert("degree".into(), json!(d));
        d
    }

    fn seed(&mut self) -> u64 {
        let s = self.opts.seed.or(self.spec.params.seed).unwrap_or(0);
        self.parameters.insert("seed".into(), json!(s));
        s
    }

    fn times(&mut self, default: &[&str]) -> Result<Vec<Rational>, CliError> {
        let texts: Vec<String> = self
            .opts
            .times
            .clone()
            .or_else(|| self.spec.params.times.clone())
            .unwrap_or_else(|| default.iter().map(|s| s.to_string()).collect());
        let times = texts.iter().map(|t| parse_rational("times", t)).collect::<Result<Vec<_>, _>>()?;
        self.parameters.insert("times".into(), json!(times.iter().map(Rational::to_string).collect::<Vec<_>>()));
        Ok(times)
    }

    fn word(&mut self) -> Option<String> {
        let w = self.opts.word.clone().or_else(|| self.spec.params.word.clone());
        if let Some(w) = &w {
            self.parameters.insert("word".into(), json!(w));
        }
        w
    }
}

fn degree_of(phi: &Functional) -> usize {
    phi.truncation_degree()
}

pub fn run(command: &str, input: &Input, opts: &Options) -> Result<Report, CliError> {
    let mut ctx = Ctx { spec: &input.spec, opts, parameters: Map::new() };
    let (results, verdicts) = match command {
        "eval-product" => eval_product(&mut ctx)?,
        "convolve" => convolve_cmd(&mut ctx)?,
        "exp" => exp_cmd(&mut ctx)?,
        "exp-poly" => exp_poly(&mut ctx)?,
        "trotter" => trotter_cmd(&mut ctx)?,
        "sigma" => sigma(&mut ctx)?,
        "check-axioms" => axioms(&mut ctx)?,
        "check-state" => positivity_cmd(&mut ctx, "phi")?,
        "check-generator" => positivity_cmd(&mut ctx, "psi")?,
        "schoenberg" => schoenberg(&mut ctx)?,
        other => return Err(CliError::usage(format!("unknown command {other:?}"))),
    };
    Ok(Report::new(command, input.sha256.clone(), ctx.parameters, results, verdicts))
}

type Outcome = Result<(Value, Vec<Verdict>), CliError>;

fn eval_product(ctx: &mut Ctx<'_>) -> Outcome {
    let product = ctx.product()?;
    let ds = ctx.spec.semigroup()?;
    let (a, b) = ctx.spec.factors(&ds)?;
    let left = ctx.spec.functional("left", &a)?;
    let right = ctx.spec.functional("right", &b)?;
    let free = FreeProduct::new(&[&a, &b])?;
    let joint = ProductFunctional::new(&product, &left, &right)?;
    if let Some(text) = ctx.word() {
        let w = parse_product_word("word", &free, &text)?;
        let value = joint.moment(w.letters())?;
        return Ok((json!({ "word": free.algebra().render(w.letters()), "value": report::scalars(&value) }), vec![]));
    }
    let degree = ctx.degree(degree_of(&left).min(degree_of(&right)));
    Ok((json!({ "table": report::table(&joint, degree)? }), vec![]))
}

fn convolve_cmd(ctx: &mut Ctx<'_>) -> Outcome {
    let product = ctx.product()?;
    let ds = ctx.spec.semigroup()?;
    let left = ctx.spec.functional("left", ds.algebra())?;
    let right = ctx.spec.functional("right", ds.algebra())?;
    let degree = ctx.degree(degree_of(&left).min(degree_of(&right)));
    let conv = convolve(&product, &ds, &left, &right, Some(degree))?;
    Ok((json!({ "table": report::table(&conv, degree)? }), vec![]))
}

fn exp_cmd(ctx: &mut Ctx<'_>) -> Outcome {
    let product = ctx.product()?;
    let ds = ctx.spec.semigroup()?;
    let psi = ctx.spec.functional("psi", ds.algebra())?;
    let degree = ctx.degree(degree_of(&psi));
    let exp = exp_dual(&product, &ds, &psi, degree)?;
    let mut verdicts = vec![Verdict::from_law(&check_derivative_identity(&exp, &psi)?)];
    if ctx.opts.laws {
        ctx.parameters.insert("laws".into(), json!(true));
        verdicts.push(Verdict::from_law(&check_semigroup_law(&product, &ds, &exp)?));
    }
    let results = if ctx.opts.times.is_some() || ctx.spec.params.times.is_some() {
        let mut tables = Map::new();
        for t in ctx.times(&[])? {
            tables.insert(t.to_string(), report::table(&exp.at(&Scalar::real(t))?, degree)?);
        }
        json!({ "tables": tables })
    } else {
        json!({ "table": report::table(&exp.value()?, degree)? })
    };
    Ok((results, verdicts))
}

fn exp_poly(ctx: &mut Ctx<'_>) -> Outcome {
    let product = ctx.product()?;
    let ds = ctx.spec.semigroup()?;
    let psi = ctx.spec.functional("psi", ds.algebra())?;
    let algebra = ds.algebra();
    let words: Vec<Word> = match ctx.word() {
        Some(text) => vec![algebra.parse_word(&text).map_err(|e| CliError::input("word", e.to_string()))?],
        None => algebra.words_up_to(ctx.degree(degree_of(&psi))),
    };
    let mut out = Map::new();
    for w in &words {
        let polys = exp_poly_in_t(&product, &ds, &psi, w)?;
        let rendered: Vec<Value> = polys
            .iter()
            .map(|p| {
                let coefficients: Vec<Scalar> = (0..=w.len()).map(|k| p.coefficient(&Monomial::from_vars(vec![T; k]))).collect();
                json!({
                    "polynomial": report::polynomial_in_t(&coefficients),
                    "coefficients": coefficients.iter().map(Scalar::to_string).collect::<Vec<_>>(),
                })
            })
            .collect();
        out.insert(algebra.render(w.letters()), Value::Array(rendered));
    }
    Ok((json!({ "polynomials": out }), vec![]))
}

fn trotter_cmd(ctx: &mut Ctx<'_>) -> Outcome {
    let product = ctx.product()?;
    let ds = ctx.spec.semigroup()?;
    let psi = ctx.spec.functional("psi", ds.algebra())?;
    let degree = ctx.degree(degree_of(&psi));
    let steps = ctx.opts.steps.clone().or_else(|| ctx.spec.params.steps.clone()).unwrap_or_else(|| vec![1, 2, 4, 8, 16, 32]);
    ctx.parameters.insert("steps".into(), json!(steps));
    let (exact, runs) = trotter(&product, &ds, &psi, &steps, degree)?;
    let algebra = ds.algebra();
    let mut monotone = uniprod_core::LawVerdict::new("Trotter deviation non-increasing in n");
    for w in algebra.words_up_to(degree) {
        for pair in runs.windows(2) {
            let (a, b) = (pair[0].deviation_at(&w), pair[1].deviation_at(&w));
            monotone.record(b <= a, || format!("{}: n={} gives {a}, n={} gives {b}", algebra.render(w.letters()), pair[0].n, pair[1].n));
        }
    }
    let runs_out: Vec<Value> = runs
        .iter()
        .map(|r| {
            let deviation: Map<String, Value> = r.deviation.iter().map(|(w, d)| (algebra.render(w.letters()), report::rational(d))).collect();
            json!({ "n": r.n, "deviation": deviation })
        })
        .collect();
    Ok((json!({ "exact": report::table(&exact, degree)?, "runs": runs_out }), vec![Verdict::from_law(&monotone)]))
}

fn sigma(ctx: &mut Ctx<'_>) -> Outcome {
    let product = ctx.product()?;
    let ds = ctx.spec.semigroup()?;
    let (a, b) = ctx.spec.factors(&ds)?;
    let free = FreeProduct::new(&[&a, &b])?;
    let text = ctx.word().ok_or_else(|| CliError::usage("sigma needs --word"))?;
    let w = parse_product_word("word", &free, &text)?;
    let d = product.natural_components();
    let component = ctx.opts.component.or(ctx.spec.params.component).unwrap_or(1);
    if component == 0 || component > d {
        return Err(CliError::input("component", format!("must lie in 1..={d}")));
    }
    ctx.parameters.insert("component".into(), json!(component));
    let t = extract_sigma(&product, &free, d, &symword([(component as u16, w)]))?;
    let terms: Vec<Value> = t
        .pairs()
        .into_iter()
        .map(|(l, r, c)| json!({ "coefficient": c.to_string(), "left": render_symword(&a, &l, d), "right": render_symword(&b, &r, d) }))
        .collect();
    Ok((json!({ "sigma": render_tensor(&a, &b, &t, d), "terms": terms }), vec![]))
}

fn axioms(ctx: &mut Ctx<'_>) -> Outcome {
    let products = ctx.products()?;
    let m = match &ctx.spec.dual_semigroup {
        Some(_) => ctx.spec.semigroup()?.algebra().faces(),
        None => 1,
    };
    let trials = ctx.opts.trials.or(ctx.spec.params.trials).unwrap_or(50);
    let max_len = ctx.opts.max_len.or(ctx.spec.params.max_len).unwrap_or(5);
    let seed = ctx.seed();
    ctx.parameters.insert("trials".into(), json!(trials));
    ctx.parameters.insert("max_len".into(), json!(max_len));
    ctx.parameters.insert("faces".into(), json!(m));
    let reports: Vec<_> = products
        .par_iter()
        .map(|p| {
            let config = AxiomConfig { m, ..AxiomConfig::new(p.natural_components(), trials, max_len, seed) };
            check_axioms(p, config)
        })
        .collect::<Result<_, _>>()?;
    let mut verdicts = Vec::new();
    let mut results = Map::new();
    for r in &reports {
        results.insert(r.product.clone(), json!(r.passed()));
        for law in r.laws() {
            let mut v = Verdict::from_law(law);
            v.law = format!("{} {}", r.product, v.law);
            verdicts.push(v);
        }
    }
    Ok((Value::Object(results), verdicts))
}

fn positivity_cmd(ctx: &mut Ctx<'_>, role: &str) -> Outcome {
    let ds = ctx.spec.semigroup()?;
    let phi = ctx.spec.functional(role, ds.algebra())?;
    let degree = ctx.degree(degree_of(&phi));
    let half = degree / 2;
    let (law, report) = if role == "phi" {
        ("restricted state", is_restricted_state(&phi, half)?)
    } else {
        ("restricted generating functional", is_restricted_generating_functional(&phi, half)?)
    };
    Ok((report::positivity(&report), vec![Verdict::from_positivity(law, &report)]))
}

fn schoenberg(ctx: &mut Ctx<'_>) -> Outcome {
    let products = ctx.products()?;
    let ds = ctx.spec.semigroup()?;
    let times = ctx.times(&["1/10", "1", "10"])?;
    let given = if ctx.spec.has_functional("psi") { Some(ctx.spec.functional("psi", ds.algebra())?) } else { None };
    let degree = ctx.degree(given.as_ref().map_or(4, degree_of));
    let seed = ctx.seed();
    let mut products = products;
    if let Some(psi) = &given {
        let (m, d) = (ds.algebra().faces(), psi.components());
        let skipped: Vec<String> = products.iter().filter(|p| !p.applicable(m, d)).map(|p| p.to_string()).collect();
        if products.len() > 1 && !skipped.is_empty() {
            // `all` with a fixed ψ covers the products defined for its component count
            products.retain(|p| p.applicable(m, d));
            ctx.parameters.insert("skipped".into(), json!(skipped));
        }
    }
    let samples = if given.is_some() { 1 } else { ctx.opts.samples.unwrap_or(1) };
    let rep_dim = ctx.opts.rep_dim.or(ctx.spec.params.rep_dim).unwrap_or(2);
    if given.is_none() {
        ctx.parameters.insert("samples".into(), json!(samples));
        ctx.parameters.insert("rep_dim".into(), json!(rep_dim));
    }
    let jobs: Vec<(BuiltinProduct, u64)> = products.iter().flat_map(|&p| (0..samples as u64).map(move |k| (p, seed + k))).collect();
    let outcomes: Vec<_> = jobs
        .par_iter()
        .map(|&(p, s)| -> Result<_, CliError> {
            let psi = match &given {
                Some(psi) => psi.clone(),
                None => {
                    let options = SampleOptions { components: p.natural_components(), degree, rep_dim, drift: true };
                    sample_generating_functional(s, ds.algebra(), options)?
                }
            };
            Ok((p, s, schoenberg_suite(&p, &ds, &psi, &times, degree)?))
        })
        .collect::<Result<_, _>>()?;
    let mut verdicts = Vec::new();
    let mut results = Vec::new();
    for (p, s, r) in &outcomes {
        let label = if given.is_some() { p.to_string() } else { format!("{p} seed {s}") };
        verdicts.push(Verdict::from_positivity(&format!("{label}: ψ is a restricted generating functional"), &r.generator));
        for tv in &r.times {
            verdicts.push(Verdict::from_positivity(&format!("{label}: exp(tψ) is a restricted state at t = {}", tv.t), &tv.report));
        }
        if let Some(d) = &r.derivative {
            let mut v = Verdict::from_law(d);
            v.law = format!("{label}: {}", v.law);
            verdicts.push(v);
        }
        results.push(json!({
            "product": p.to_string(),
            "seed": if given.is_some() { Value::Null } else { json!(s) },
            "certified_half_degree": r.certified_half_degree(),
            "generator": report::positivity(&r.generator),
            "times": r.times.iter().map(|tv| json!({ "t": tv.t.to_string(), "state": report::positivity(&tv.report) })).collect::<Vec<_>>(),
            "passed": r.passed(),
        }));
    }
    Ok((json!({ "runs": results }), verdicts))
}
