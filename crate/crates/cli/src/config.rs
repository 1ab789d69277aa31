//! Job description schema. A job is one TOML document; see `docs/jobs.md`.

use serde::{Deserialize, Serialize};

use crate::number::Literal;

pub type Vector = [Literal; 3];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(default)]
    pub arithmetic: Arithmetic,
    pub field: FieldSource,
    pub space: SpaceSpec,
    pub hermite: HermiteSpec,
    #[serde(default)]
    pub objective: ObjectiveSpec,
    #[serde(default)]
    pub cusp: CuspSpec,
    #[serde(default)]
    pub initial: InitialSpec,
    #[serde(default)]
    pub numerics: Numerics,
    #[serde(default)]
    pub output: OutputSpec,
}

/// `auto` runs exactly whenever every input is rational.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arithmetic {
    #[default]
    Auto,
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSource {
    /// Coefficients `[w, x, y, z]` of `A(t)`, ascending powers.
    Preimage { coeffs: Vec<[Literal; 4]> },
    /// Coefficients of `F(t)` directly, ascending powers; arc-length
    /// objectives are unavailable unless `F` is a PH field given by `A`.
    Hodograph { coeffs: Vec<Vector> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub generators: Vec<GeneratorSpec>,
    /// Ascending coefficients of an additional polynomial curve tangent to
    /// the field.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub external: Option<Vec<Vector>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorSpec {
    Polynomial {
        ell: Indices,
    },
    Regular {
        pole: PoleSpec,
        r: Indices,
    },
    Nonregular {
        pole: PoleSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        triplet: Option<[usize; 3]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_order: Option<usize>,
    },
}

/// A list `[a, b, c]` or an inclusive range `{ from = a, to = b }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Indices {
    List(Vec<i64>),
    Range { from: i64, to: i64 },
}

impl Indices {
    pub fn values(&self) -> Vec<i64> {
        match self {
            Indices::List(v) => v.clone(),
            Indices::Range { from, to } if from <= to => (*from..=*to).collect(),
            Indices::Range { from, to } => (*to..=*from).rev().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoleSpec {
    pub re: Literal,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Literal>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    G1,
    C1,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HermiteSpec {
    pub mode: Mode,
    pub p0: Vector,
    pub p1: Vector,
    pub v0: Vector,
    pub v1: Vector,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectiveSpec {
    #[default]
    Energy,
    Arclength,
    TargetLength { target: f64 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignPolicy {
    /// From the start tangent, else from the initial point.
    #[default]
    Auto,
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspSpec {
    #[serde(default = "yes")]
    pub enabled: bool,
    #[serde(default)]
    pub sign: SignPolicy,
    /// Bernstein degree; the natural degree of the numerators when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    /// Added to the degree.
    #[serde(default)]
    pub elevation: usize,
    /// Right-hand side of the Bernstein rows; negative values relax them.
    #[serde(default = "zero")]
    pub bound: Literal,
}

impl Default for CuspSpec {
    fn default() -> Self {
        Self { enabled: true, sign: SignPolicy::Auto, degree: None, elevation: 0, bound: zero() }
    }
}

fn yes() -> bool {
    true
}

fn zero() -> Literal {
    Literal::Int(0)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialSpec {
    /// Start from phase 1 alone.
    #[default]
    None,
    /// The basis element with this index (0-based, constants first).
    Element { index: usize },
    /// The external curve.
    External,
    Rho { values: Vec<Literal> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Numerics {
    #[serde(default = "default_tol")]
    pub quadrature_tol: f64,
    #[serde(default = "default_order")]
    pub quadrature_order: usize,
    #[serde(default = "default_depth")]
    pub quadrature_depth: u32,
    /// Solve in Bernstein coordinates; defaults to on in exact arithmetic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reparametrize: Option<bool>,
}

impl Default for Numerics {
    fn default() -> Self {
        Self { quadrature_tol: default_tol(), quadrature_order: default_order(), quadrature_depth: default_depth(), reparametrize: None }
    }
}

fn default_tol() -> f64 {
    phspace::objectives::DEFAULT_TOL
}

fn default_order() -> usize {
    phspace::objectives::DEFAULT_ORDER
}

fn default_depth() -> u32 {
    phspace::objectives::DEFAULT_MAX_DEPTH
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plot: Option<String>,
    #[serde(default = "default_count")]
    pub sample_count: usize,
    /// Length factor applied to the end tangent arrows in plots.
    #[serde(default = "default_arrow")]
    pub arrow_scale: f64,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self { report: None, samples: None, plot: None, sample_count: default_count(), arrow_scale: default_arrow() }
    }
}

fn default_count() -> usize {
    201
}

fn default_arrow() -> f64 {
    0.2
}

impl JobConfig {
    pub fn from_toml(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("job configs serialize")
    }
}
