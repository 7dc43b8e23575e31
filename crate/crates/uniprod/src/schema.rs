//! JSON problem files and their validation into core objects.
//!
//! Scalars are strings such as `"1/2-3i"` (integers may also be JSON numbers). Words are
//! space-separated generator ids; inside a free product a letter may carry a leg suffix `@1`
//! or `@2`, which is optional whenever the id names a generator of exactly one factor.

use std::collections::BTreeMap;

use serde::Deserialize;
use uniprod_core::{DualSemigroup, FacedAlgebra, FreeProduct, Functional, GenId, NCPolynomial, Rational, Scalar, Word};

use crate::error::CliError;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub dual_semigroup: Option<SemigroupSpec>,
    /// The two algebras of `eval-product` and `sigma`; default to the semigroup algebra.
    pub factors: Option<Vec<AlgebraSpec>>,
    #[serde(default)]
    pub functionals: BTreeMap<String, FunctionalSpec>,
    pub product: Option<String>,
    #[serde(default)]
    pub params: Params,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Id(String),
    Faced { id: String, face: u8 },
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default = "one")]
    pub faces: usize,
    pub generators: Vec<GeneratorSpec>,
    /// Adjoint pairs `{"y": "z"}`; unlisted generators are self-adjoint.
    #[serde(default)]
    pub star: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupSpec {
    #[serde(default = "one")]
    pub faces: usize,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub star: BTreeMap<String, String>,
    /// `"primitive"`, or per generator a polynomial `{word over x@1, x@2: coefficient}`.
    #[serde(default)]
    pub comul: Option<ComulSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ComulSpec {
    Keyword(String),
    Rule(BTreeMap<String, BTreeMap<String, ScalarText>>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Integer(i64),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum MomentValue {
    One(ScalarText),
    Components(Vec<ScalarText>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalSpec {
    #[serde(default = "one")]
    pub d: usize,
    /// Defaults to the longest word in `moments`; omitted words of length up to it are zero.
    pub degree: Option<usize>,
    #[serde(default)]
    pub moments: BTreeMap<String, MomentValue>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub degree: Option<usize>,
    pub times: Option<Vec<String>>,
    pub steps: Option<Vec<usize>>,
    pub seed: Option<u64>,
    pub rep_dim: Option<usize>,
    pub word: Option<String>,
    pub component: Option<usize>,
    pub trials: Option<usize>,
    pub max_len: Option<usize>,
}

pub fn parse_spec(text: &str) -> Result<ProblemSpec, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input("(document)", e.to_string()))
}

pub fn parse_scalar(path: &str, value: &ScalarText) -> Result<Scalar, CliError> {
    match value {
        ScalarText::Integer(n) => Ok(Scalar::from_integer(*n)),
        ScalarText::Text(t) => t.parse().map_err(|e: uniprod_core::Error| CliError::input(path, e.to_string())),
    }
}

pub fn parse_rational(path: &str, text: &str) -> Result<Rational, CliError> {
    text.parse().map_err(|e: uniprod_core::Error| CliError::input(path, e.to_string()))
}

fn build_algebra(path: &str, faces: usize, generators: &[GeneratorSpec], star: &BTreeMap<String, String>) -> Result<FacedAlgebra, CliError> {
    let gens: Vec<(&str, u8)> = generators
        .iter()
        .map(|g| match g {
            GeneratorSpec::Id(id) => (id.as_str(), 1),
            GeneratorSpec::Faced { id, face } => (id.as_str(), *face),
        })
        .collect();
    if let Some((id, _)) = gens.iter().find(|(id, _)| id.is_empty() || id.contains('@') || id.contains(char::is_whitespace)) {
        return Err(CliError::input(&format!("{path}.generators"), format!("invalid generator id {id:?}")));
    }
    let pairs: Vec<(&str, &str)> = star.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    FacedAlgebra::with_star(faces, &gens, &pairs).map_err(|e| CliError::input(path, e.to_string()))
}

impl AlgebraSpec {
    pub fn build(&self, path: &str) -> Result<FacedAlgebra, CliError> {
        build_algebra(path, self.faces, &self.generators, &self.star)
    }
}

impl SemigroupSpec {
    pub fn build(&self) -> Result<DualSemigroup, CliError> {
        let path = "dual_semigroup";
        let algebra = build_algebra(path, self.faces, &self.generators, &self.star)?;
        let core = |e: uniprod_core::Error| CliError::input(&format!("{path}.comul"), e.to_string());
        match &self.comul {
            None => DualSemigroup::primitive(&algebra).map_err(core),
            Some(ComulSpec::Keyword(k)) if k == "primitive" => DualSemigroup::primitive(&algebra).map_err(core),
            Some(ComulSpec::Keyword(k)) => Err(CliError::input(&format!("{path}.comul"), format!("unknown rule {k:?}, expected \"primitive\" or a map"))),
            Some(ComulSpec::Rule(rule)) => {
                let pair = FreeProduct::power(&algebra, 2).map_err(core)?;
                let mut images = Vec::with_capacity(algebra.len());
                for g in algebra.generators() {
                    let gpath = format!("{path}.comul.{}", g.id);
                    let terms = rule.get(&g.id).ok_or_else(|| CliError::input(&gpath, "missing image".into()))?;
                    images.push(parse_polynomial(&gpath, &pair, terms)?);
                }
                if let Some(extra) = rule.keys().find(|k| algebra.index_of(k).is_err()) {
                    return Err(CliError::input(&format!("{path}.comul.{extra}"), "not a generator".into()));
                }
                DualSemigroup::with_rule(&algebra, images).map_err(core)
            }
        }
    }
}

impl ProblemSpec {
    /// The semigroup, defaulting to the primitive one on a single self-adjoint `x`.
    pub fn semigroup(&self) -> Result<DualSemigroup, CliError> {
        match &self.dual_semigroup {
            Some(s) => s.build(),
            None => DualSemigroup::primitive(&FacedAlgebra::single_self_adjoint("x")).map_err(|e| CliError::input("dual_semigroup", e.to_string())),
        }
    }

    pub fn factors(&self, semigroup: &DualSemigroup) -> Result<(FacedAlgebra, FacedAlgebra), CliError> {
        match &self.factors {
            None => Ok((semigroup.algebra().clone(), semigroup.algebra().clone())),
            Some(f) if f.len() == 2 => Ok((f[0].build("factors[0]")?, f[1].build("factors[1]")?)),
            Some(f) => Err(CliError::input("factors", format!("expected 2 algebras, found {}", f.len()))),
        }
    }

    pub fn functional(&self, role: &str, algebra: &FacedAlgebra) -> Result<Functional, CliError> {
        let spec = self
            .functionals
            .get(role)
            .ok_or_else(|| CliError::input(&format!("functionals.{role}"), "required by this command".into()))?;
        spec.build(&format!("functionals.{role}"), algebra)
    }

    pub fn has_functional(&self, role: &str) -> bool {
        self.functionals.contains_key(role)
    }
}

impl FunctionalSpec {
    pub fn build(&self, path: &str, algebra: &FacedAlgebra) -> Result<Functional, CliError> {
        if self.d == 0 {
            return Err(CliError::input(&format!("{path}.d"), "must be positive".into()));
        }
        let mut table = Vec::with_capacity(self.moments.len());
        for (text, value) in &self.moments {
            let wpath = format!("{path}.moments[{text:?}]");
            let word = algebra.parse_word(text).map_err(|e| CliError::input(&wpath, e.to_string()))?;
            let values = match value {
                MomentValue::One(v) if self.d == 1 => vec![parse_scalar(&wpath, v)?],
                MomentValue::One(_) => return Err(CliError::input(&wpath, format!("expected {} components", self.d))),
                MomentValue::Components(vs) if vs.len() == self.d => {
                    vs.iter().map(|v| parse_scalar(&wpath, v)).collect::<Result<_, _>>()?
                }
                MomentValue::Components(vs) => {
                    return Err(CliError::input(&wpath, format!("expected {} components, found {}", self.d, vs.len())))
                }
            };
            table.push((word, values));
        }
        let longest = table.iter().map(|(w, _)| w.len()).max().unwrap_or(0);
        let degree = self.degree.unwrap_or(longest);
        if longest > degree {
            return Err(CliError::input(&format!("{path}.degree"), format!("moments reach length {longest}, above degree {degree}")));
        }
        let mut phi = Functional::zero(algebra, self.d, degree);
        for (w, values) in table {
            phi.set(w, values).map_err(|e| CliError::input(path, e.to_string()))?;
        }
        Ok(phi)
    }
}

/// Parses a word over a free product, resolving legless ids that name exactly one factor.
pub fn parse_product_word(path: &str, free: &FreeProduct, text: &str) -> Result<Word, CliError> {
    let algebra = free.algebra();
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let g = if token.contains('@') {
            algebra.index_of(token).map_err(|e| CliError::input(path, e.to_string()))?
        } else {
            let matches: Vec<GenId> = (0..algebra.len() as GenId)
                .filter(|&g| algebra.name(g).split('@').next() == Some(token))
                .collect();
            match matches.as_slice() {
                [g] => *g,
                [] => return Err(CliError::input(path, format!("unknown generator {token:?}"))),
                _ => return Err(CliError::input(path, format!("{token:?} is ambiguous, add a leg suffix such as {token}@1"))),
            }
        };
        letters.push(g);
    }
    Word::new(letters).map_err(|e| CliError::input(path, e.to_string()))
}

fn parse_polynomial(path: &str, pair: &FreeProduct, terms: &BTreeMap<String, ScalarText>) -> Result<NCPolynomial, CliError> {
    let mut p = NCPolynomial::zero();
    for (text, c) in terms {
        let tpath = format!("{path}[{text:?}]");
        let w = parse_product_word(&tpath, pair, text)?;
        p.add_term(w, parse_scalar(&tpath, c)?).map_err(|e| CliError::input(&tpath, e.to_string()))?;
    }
    Ok(p)
}
