//! assemble -> constrain -> objective -> solve -> verify for one job.

use std::fmt;

use nalgebra::DVector;
use num_complex::Complex;
use phspace::algebra::{to_bernstein, Quaternion, QuaternionPolynomial, VecPolynomial};
use phspace::constraints::*;
use phspace::hodograph::{make_tangent_field, validate_field, TangentField};
use phspace::objectives::*;
use phspace::qpsolve::{kkt_report, solve, QpStatus, QuadraticProgram};
use phspace::spaces::*;
use phspace::{Rational, Scalar};
use serde::Serialize;

use crate::config::*;
use crate::number::{Arith, Literal, Number};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Config,
    Field,
    Space,
    Constraints,
    Objective,
    Solve,
    Verify,
    Output,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Config => "config",
            Stage::Field => "field",
            Stage::Space => "space",
            Stage::Constraints => "constraints",
            Stage::Objective => "objective",
            Stage::Solve => "solve",
            Stage::Verify => "verify",
            Stage::Output => "output",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ErrorKind {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] phspace::Error),
    #[error("{0}")]
    Io(String),
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("{stage} stage: {kind}")]
pub struct JobError {
    pub stage: Stage,
    pub kind: ErrorKind,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_CONFIG: i32 = 4;

impl JobError {
    pub fn config(msg: impl Into<String>) -> Self {
        JobError { stage: Stage::Config, kind: ErrorKind::Config(msg.into()) }
    }

    pub fn exit_code(&self) -> i32 {
        match &self.kind {
            ErrorKind::Config(_) => EXIT_CONFIG,
            ErrorKind::Core(e) => core_exit_code(e),
            ErrorKind::Io(_) => EXIT_NUMERIC,
        }
    }
}

fn core_exit_code(e: &phspace::Error) -> i32 {
    use phspace::Error::*;
    match e {
        Infeasible(_) | DerivativeIncompatible(_) => EXIT_INFEASIBLE,
        NonzeroResidue(_) | EvaluationAtPole(_) | NotConjugatePair(_) | QuadratureDiverged => EXIT_NUMERIC,
        _ => EXIT_CONFIG,
    }
}

fn at(stage: Stage) -> impl Fn(phspace::Error) -> JobError {
    move |e| JobError { stage, kind: ErrorKind::Core(e) }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisEntry {
    pub kind: String,
    pub rho: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KktSummary {
    pub holds: bool,
    pub stationarity: f64,
    pub primal: f64,
    pub dual: f64,
    pub complementarity: f64,
}

/// Every number is recomputed from the returned coefficients.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JobReport {
    pub name: String,
    pub arithmetic: String,
    pub status: String,
    pub dim: usize,
    pub curve_degree: usize,
    pub natural_degree: usize,
    pub bernstein_degree: Option<usize>,
    pub sign: String,
    pub reparametrized: bool,
    pub equality_rows: usize,
    pub inequality_rows: usize,
    pub objective: String,
    pub objective_value: f64,
    pub energy: f64,
    pub arc_length: Option<f64>,
    pub active_set: Vec<usize>,
    pub iterations: usize,
    pub phase1_violation: f64,
    pub kkt: KktSummary,
    pub endpoint_residuals: Vec<f64>,
    pub max_endpoint_residual: f64,
    /// `sign * mu` in the Bernstein basis of `bernstein_degree` (or of the
    /// natural degree when cusp rows are off).
    pub mu_bernstein: Vec<f64>,
    pub mu_bernstein_min: f64,
    /// Minimum of `sign * mu` over 1001 uniform parameters.
    pub mu_grid_min: f64,
    pub mu_sign_change: bool,
    pub near_degenerate: bool,
    pub basis: Vec<BasisEntry>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub speed: f64,
}

/// An arrow from `base` along `direction` (already scaled).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arrow {
    pub base: [f64; 3],
    pub direction: [f64; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobRun {
    pub report: JobReport,
    pub samples: Vec<Sample>,
    pub arrows: Vec<Arrow>,
}

impl JobRun {
    pub fn exit_code(&self) -> i32 {
        match self.report.status.as_str() {
            "optimal" => EXIT_OK,
            "infeasible" => EXIT_INFEASIBLE,
            _ => EXIT_NUMERIC,
        }
    }
}

fn literals(cfg: &JobConfig) -> Vec<&Literal> {
    let mut out: Vec<&Literal> = Vec::new();
    match &cfg.field {
        FieldSource::Preimage { coeffs } => out.extend(coeffs.iter().flatten()),
        FieldSource::Hodograph { coeffs } => out.extend(coeffs.iter().flatten()),
    }
    for g in &cfg.space.generators {
        match g {
            GeneratorSpec::Polynomial { .. } => {}
            GeneratorSpec::Regular { pole, .. } | GeneratorSpec::Nonregular { pole, .. } => {
                out.push(&pole.re);
                out.extend(pole.im.iter());
            }
        }
    }
    if let Some(ext) = &cfg.space.external {
        out.extend(ext.iter().flatten());
    }
    let h = &cfg.hermite;
    out.extend(h.p0.iter().chain(&h.p1).chain(&h.v0).chain(&h.v1));
    out.push(&cfg.cusp.bound);
    if let InitialSpec::Rho { values } = &cfg.initial {
        out.extend(values);
    }
    out
}

/// Runs a job in the arithmetic the config asks for.
pub fn run_job(cfg: &JobConfig) -> Result<JobRun, JobError> {
    let mut exact = true;
    for l in literals(cfg) {
        let n = l.parse().map_err(JobError::config)?;
        exact &= n.is_exact();
    }
    match cfg.arithmetic {
        Arithmetic::Exact if !exact => Err(JobError::config("exact arithmetic requested but an input is irrational")),
        Arithmetic::Exact => run_typed::<Rational>(cfg),
        Arithmetic::Auto if exact => run_typed::<Rational>(cfg),
        _ => run_typed::<f64>(cfg),
    }
}

fn num<T: Arith>(l: &Literal) -> Result<T, JobError> {
    let n: Number = l.parse().map_err(JobError::config)?;
    Ok(T::from_number(&n))
}

fn vec3<T: Arith>(v: &Vector) -> Result<[T; 3], JobError> {
    Ok([num(&v[0])?, num(&v[1])?, num(&v[2])?])
}

fn build_field<T: Arith>(src: &FieldSource) -> Result<TangentField<T>, JobError> {
    match src {
        FieldSource::Preimage { coeffs } => {
            let qs = coeffs
                .iter()
                .map(|c| Ok(Quaternion::new(num(&c[0])?, num(&c[1])?, num(&c[2])?, num(&c[3])?)))
                .collect::<Result<Vec<_>, JobError>>()?;
            make_tangent_field(&QuaternionPolynomial::new(qs)).map_err(at(Stage::Field))
        }
        FieldSource::Hodograph { coeffs } => {
            let vs = coeffs.iter().map(vec3).collect::<Result<Vec<_>, _>>()?;
            validate_field(VecPolynomial::new(vs)).map_err(at(Stage::Field))
        }
    }
}

fn build_pole<T: Arith>(p: &PoleSpec) -> Result<Complex<T>, JobError> {
    let re: T = num(&p.re)?;
    let im: T = match &p.im {
        Some(l) => num(l)?,
        None => T::zero(),
    };
    if im.is_zero() && re >= T::zero() && re <= T::one() {
        return Err(JobError::config(format!("pole {} lies in [0, 1]", p.re)));
    }
    Ok(Complex::new(re, im))
}

fn build_generators<T: Arith>(specs: &[GeneratorSpec]) -> Result<Vec<Generator<T>>, JobError> {
    let mut out = Vec::new();
    for g in specs {
        match g {
            GeneratorSpec::Polynomial { ell } => {
                for e in ell.values() {
                    let ell = usize::try_from(e).ok().filter(|&e| e >= 1).ok_or_else(|| JobError::config(format!("polynomial index {e} < 1")))?;
                    out.push(Generator::Polynomial { ell });
                }
            }
            GeneratorSpec::Regular { pole, r } => {
                let beta = build_pole(pole)?;
                out.extend(r.values().into_iter().map(|r| Generator::Regular { beta: beta.clone(), r }));
            }
            GeneratorSpec::Nonregular { pole, triplet, max_order } => {
                out.push(Generator::Nonregular { beta: build_pole(pole)?, triplet: *triplet, max_order: *max_order });
            }
        }
    }
    Ok(out)
}

fn kind_label(k: &ElementKind) -> String {
    match k {
        ElementKind::Constant => "constant",
        ElementKind::Polynomial => "polynomial",
        ElementKind::Regular => "regular",
        ElementKind::Nonregular => "nonregular",
        ElementKind::External => "external",
    }
    .to_string()
}

fn sign_label(s: Sign) -> String {
    match s {
        Sign::Plus => "plus".into(),
        Sign::Minus => "minus".into(),
    }
}

fn status_label(s: QpStatus) -> String {
    match s {
        QpStatus::Optimal => "optimal",
        QpStatus::Infeasible => "infeasible",
        QpStatus::MaxIter => "max_iter",
        QpStatus::Unbounded => "unbounded",
    }
    .to_string()
}

fn f64s<T: Scalar>(v: &[T]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64_lossy).collect()
}

fn run_typed<T: Arith>(cfg: &JobConfig) -> Result<JobRun, JobError> {
    let opts = QuadratureOptions { tol: cfg.numerics.quadrature_tol, order: cfg.numerics.quadrature_order, max_depth: cfg.numerics.quadrature_depth };
    if cfg.output.sample_count < 2 {
        return Err(JobError::config("sample_count must be at least 2"));
    }
    let field = build_field::<T>(&cfg.field)?;
    let gens = build_generators::<T>(&cfg.space.generators)?;
    let external = match &cfg.space.external {
        Some(rows) => Some(VecPolynomial::new(rows.iter().map(vec3).collect::<Result<Vec<_>, _>>()?)),
        None => None,
    };
    let space = assemble_space(&field, &gens, external.as_ref()).map_err(at(Stage::Space))?;
    let dim = space.dim();

    let mode = match cfg.hermite.mode {
        Mode::G1 => Continuity::G1,
        Mode::C1 => Continuity::C1,
    };
    let h = &cfg.hermite;
    let data = HermiteData { p0: vec3(&h.p0)?, p1: vec3(&h.p1)?, v0: vec3(&h.v0)?, v1: vec3(&h.v1)?, mode };

    let initial: Option<Vec<T>> = match &cfg.initial {
        InitialSpec::None => None,
        InitialSpec::Element { index } if *index < dim => Some((0..dim).map(|i| if i == *index { T::one() } else { T::zero() }).collect()),
        InitialSpec::Element { index } => return Err(JobError::config(format!("initial element {index} out of range (dim {dim})"))),
        InitialSpec::External if external.is_some() => Some((0..dim).map(|i| if i + 1 == dim { T::one() } else { T::zero() }).collect()),
        InitialSpec::External => return Err(JobError::config("initial curve is external but no external curve is given")),
        InitialSpec::Rho { values } if values.len() == dim => Some(values.iter().map(num).collect::<Result<_, _>>()?),
        InitialSpec::Rho { values } => return Err(JobError::config(format!("initial rho has {} entries, space has {dim}", values.len()))),
    };

    let sign = match cfg.cusp.sign {
        SignPolicy::Plus => Sign::Plus,
        SignPolicy::Minus => Sign::Minus,
        SignPolicy::Auto => match (orientation_sign(&space, &data.v0), &initial) {
            (Some(s), _) => s,
            (None, Some(rho)) => choose_sign(rho, &space).map_err(at(Stage::Constraints))?,
            (None, None) => Sign::Plus,
        },
    };
    let natural = natural_degree(&space);
    let mut sys = hermite_rows(&space, &data).map_err(at(Stage::Constraints))?;
    let hermite = sys.clone();
    let degree = if cfg.cusp.enabled {
        let m = cfg.cusp.degree.unwrap_or(natural) + cfg.cusp.elevation;
        sys.extend(cusp_rows(&space, sign, m, num(&cfg.cusp.bound)?).map_err(at(Stage::Constraints))?);
        Some(m)
    } else {
        None
    };

    let reparametrize = cfg.numerics.reparametrize.unwrap_or(T::EXACT);
    let rp = if reparametrize { bernstein_reparametrization(&space).map_err(at(Stage::Space))? } else { Reparametrization::identity(dim) };
    let numerators = rp.numerators(&space);
    let objective = match &cfg.objective {
        ObjectiveSpec::Energy => energy_objective_for(&space, &numerators, &opts),
        ObjectiveSpec::Arclength => arclength_objective_for(&space, &numerators, sign, &opts),
        ObjectiveSpec::TargetLength { target } => target_length_objective_for(&space, &numerators, *target, sign, &opts),
    }
    .map_err(at(Stage::Objective))?;

    let mut qp = QuadraticProgram::from_parts(&objective, &sys.reparametrize(&rp).to_f64());
    if let Some(rho0) = &initial {
        let c0 = rp.from_original(rho0).ok_or_else(|| at(Stage::Solve)(phspace::Error::Dimension("singular reparametrization".into())))?;
        qp = qp.with_initial(DVector::from_vec(f64s(&c0)));
    }
    let sol = solve(&qp).map_err(at(Stage::Solve))?;
    let kkt = kkt_report(&qp, &sol.rho, &sol.active_set);

    let c: Vec<T> = sol.rho.iter().map(|x| T::from_f64_lossy(*x)).collect();
    let rho = rp.to_original(&c);
    let verify = at(Stage::Verify);
    let energy = energy_of(&space, &rho, &opts).map_err(&verify)?;
    let arc_length = if space.field.is_ph() { Some(length_of(&space, &rho, &opts).map_err(&verify)?) } else { None };
    let residuals: Vec<f64> = hermite
        .eq_matrix
        .iter()
        .zip(&hermite.eq_rhs)
        .map(|(row, rhs)| (row.iter().zip(&rho).fold(T::zero(), |a, (x, y)| a + x.clone() * y.clone()) - rhs.clone()).to_f64_lossy())
        .collect();
    let mu = space.combined_mu(&rho);
    let s: T = sign.value();
    let bdeg = degree.unwrap_or(natural);
    let mu_bernstein: Vec<f64> = to_bernstein(&mu, bdeg).map_err(&verify)?.into_iter().map(|b| (b * s.clone()).to_f64_lossy()).collect();
    let grid: Vec<f64> = (0..=1000).map(|k| (mu.eval(&T::from_ratio(k, 1000)) * s.clone()).to_f64_lossy()).collect();
    let interior = &grid[1..1000];
    let mu_sign_change = interior.iter().any(|&v| v < 0.0) && interior.iter().any(|&v| v > 0.0);

    let samples = sample_curve(&space, &rho, cfg.output.sample_count).map_err(&verify)?;
    let top_speed = samples.iter().map(|s| s.speed).fold(0.0, f64::max);
    let near_degenerate = energy <= 1e-12 || top_speed <= 1e-9;

    let mut warnings = Vec::new();
    if near_degenerate {
        warnings.push("optimal curve is nearly constant".to_string());
    }
    if !kkt.holds() && sol.status == QpStatus::Optimal {
        warnings.push("KKT residuals exceed tolerance".to_string());
    }
    if sol.status == QpStatus::Infeasible {
        warnings.push(format!("constraints infeasible, phase-1 violation {:e}", sol.phase1_violation));
    }

    let arrows = vec![
        Arrow { base: to3(&data.p0), direction: to3(&data.v0).map(|x| x * cfg.output.arrow_scale) },
        Arrow { base: to3(&data.p1), direction: to3(&data.v1).map(|x| x * cfg.output.arrow_scale) },
    ];
    let report = JobReport {
        name: cfg.name.clone(),
        arithmetic: if T::EXACT { "exact" } else { "float" }.to_string(),
        status: status_label(sol.status),
        dim,
        curve_degree: space.curve_degree(&significant(&rho)),
        natural_degree: natural,
        bernstein_degree: degree,
        sign: sign_label(sign),
        reparametrized: reparametrize,
        equality_rows: sys.eq_matrix.len(),
        inequality_rows: sys.ineq_matrix.len(),
        objective: match cfg.objective {
            ObjectiveSpec::Energy => "energy".into(),
            ObjectiveSpec::Arclength => "arclength".into(),
            ObjectiveSpec::TargetLength { target } => format!("target_length({target})"),
        },
        objective_value: objective.value(sol.rho.as_slice()),
        energy,
        arc_length,
        active_set: sol.active_set.clone(),
        iterations: sol.iterations,
        phase1_violation: sol.phase1_violation,
        kkt: KktSummary { holds: kkt.holds(), stationarity: kkt.stationarity, primal: kkt.primal, dual: kkt.dual, complementarity: kkt.complementarity },
        max_endpoint_residual: residuals.iter().fold(0.0, |m, r| m.max(r.abs())),
        endpoint_residuals: residuals,
        mu_bernstein_min: mu_bernstein.iter().copied().fold(f64::INFINITY, f64::min),
        mu_bernstein,
        mu_grid_min: grid.iter().copied().fold(f64::INFINITY, f64::min),
        mu_sign_change,
        near_degenerate,
        basis: space.basis.iter().zip(&rho).map(|(e, r)| BasisEntry { kind: kind_label(&e.kind), rho: r.to_f64_lossy() }).collect(),
        warnings,
    };
    Ok(JobRun { report, samples, arrows })
}

/// Coefficients below `1e-9` of the largest set to zero; solver noise does
/// not raise the reported degree.
fn significant<T: Scalar>(rho: &[T]) -> Vec<T> {
    let top = rho.iter().map(|r| r.to_f64_lossy().abs()).fold(0.0, f64::max);
    rho.iter().map(|r| if r.to_f64_lossy().abs() <= 1e-9 * top { T::zero() } else { r.clone() }).collect()
}

/// `count` uniform parameters on [0,1] with position and `|lambda| * |F|`.
pub fn sample_curve<T: Scalar>(space: &InterpolationSpace<T>, rho: &[T], count: usize) -> Result<Vec<Sample>, phspace::Error> {
    let n = count.max(2) as i64;
    let field = &space.field;
    let mut samples = Vec::with_capacity(n as usize);
    for k in 0..n {
        let t = T::from_ratio(k, n - 1);
        let p = space.eval(rho, &t)?;
        let lambda = space.speed(rho, &t)?.to_f64_lossy();
        let norm = match field.sigma() {
            Some(sig) => sig.eval(&t).to_f64_lossy(),
            None => field.norm2().eval(&t).to_f64_lossy().sqrt(),
        };
        let p = f64s(&p);
        samples.push(Sample { t: t.to_f64_lossy(), x: p[0], y: p[1], z: p[2], speed: lambda.abs() * norm });
    }
    Ok(samples)
}

fn to3<T: Scalar>(v: &[T; 3]) -> [f64; 3] {
    [v[0].to_f64_lossy(), v[1].to_f64_lossy(), v[2].to_f64_lossy()]
}
