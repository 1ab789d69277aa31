//! Named jobs reproducing the worked examples. A name may carry one
//! parameter after a colon, e.g. `c1_quintic_table1:12`.

use phspace::algebra::VecPolynomial;
use phspace::Rational;

use crate::config::*;
use crate::number::Literal;

pub struct Builtin {
    pub name: &'static str,
    pub parameter: Option<&'static str>,
    pub summary: &'static str,
}

pub const BUILTINS: &[Builtin] = &[
    Builtin { name: "helix_g1", parameter: None, summary: "slant-helix field, G1 data, energy" },
    Builtin { name: "helix_c1_r1", parameter: None, summary: "slant-helix field, C1 data, polynomial elements 2..8" },
    Builtin { name: "helix_c1_r2", parameter: None, summary: "slant-helix field, C1 data, polynomial elements 2..6 and a second pole" },
    Builtin { name: "degenerate_g1", parameter: None, summary: "slant-helix space with coincident end points" },
    Builtin { name: "c1_quintic_table1", parameter: Some("p >= 6, default 10"), summary: "quintic C1 data over polynomial PH curves of degree p" },
    Builtin { name: "c1_quintic_table2", parameter: Some("p <= -3, default -15"), summary: "quintic C1 data over rational curves with one pole at -1" },
    Builtin { name: "c1_quintic_mixed", parameter: None, summary: "union of the polynomial (p = 13) and rational (p = -9) spaces" },
    Builtin { name: "complex_roots_table4", parameter: Some("0 <= p <= 5, default 0"), summary: "G1 data, conjugate complex poles, p extra polynomial elements" },
    Builtin { name: "length_min", parameter: None, summary: "minimal arc-length interpolant" },
    Builtin { name: "length_target", parameter: Some("target s > 0, default 3.5"), summary: "arc-length closest to s" },
    Builtin { name: "length_relaxed", parameter: None, summary: "minimal arc-length with cusp rows relaxed to -100" },
];

fn lit(s: &str) -> Literal {
    Literal::Text(s.to_string())
}

fn vector(a: &str, b: &str, c: &str) -> Vector {
    [lit(a), lit(b), lit(c)]
}

fn pole(re: &str) -> PoleSpec {
    PoleSpec { re: lit(re), im: None }
}

fn polynomials(from: i64, to: i64) -> GeneratorSpec {
    GeneratorSpec::Polynomial { ell: Indices::Range { from, to } }
}

fn nonregular(re: &str) -> GeneratorSpec {
    GeneratorSpec::Nonregular { pole: pole(re), triplet: None, max_order: None }
}

fn regular(re: &str, r: Indices) -> GeneratorSpec {
    GeneratorSpec::Regular { pole: pole(re), r }
}

fn quaternions(rows: &[[&str; 4]]) -> FieldSource {
    FieldSource::Preimage { coeffs: rows.iter().map(|r| r.map(lit)).collect() }
}

fn job(name: String, description: &str, field: FieldSource, space: SpaceSpec, hermite: HermiteSpec) -> JobConfig {
    JobConfig {
        name,
        description: description.to_string(),
        arithmetic: Arithmetic::Auto,
        field,
        space,
        hermite,
        objective: ObjectiveSpec::Energy,
        cusp: CuspSpec::default(),
        initial: InitialSpec::None,
        numerics: Numerics::default(),
        output: OutputSpec::default(),
    }
}

fn slant_helix_field() -> FieldSource {
    quaternions(&[["1", "0", "0", "0"], ["-1", "1", "1", "1"]])
}

fn helix_data(mode: Mode) -> HermiteSpec {
    HermiteSpec { mode, p0: vector("0", "0", "0"), p1: vector("1/2", "1", "1/3"), v0: vector("1", "0", "0"), v1: vector("-1/7", "2/7", "2/7") }
}

fn helix(name: &str, mode: Mode, gens: Vec<GeneratorSpec>, elevation: usize) -> JobConfig {
    let mut generators = vec![regular("-1", Indices::List(vec![-4]))];
    generators.extend(gens);
    let mut j = job(name.to_string(), "slant-helix interpolation", slant_helix_field(), SpaceSpec { generators, external: None }, helix_data(mode));
    j.cusp.elevation = elevation;
    j
}

fn quintic_field() -> FieldSource {
    quaternions(&[["0", "600/240", "120/240", "0"], ["0", "-864/240", "-672/240", "816/240"], ["0", "840/240", "427/240", "-816/240"]])
}

fn quintic_data() -> HermiteSpec {
    HermiteSpec {
        mode: Mode::C1,
        p0: vector("0", "0", "0"),
        p1: vector("34207/11520", "-12208/11520", "22848/11520"),
        v0: vector("6", "5/2", "0"),
        v1: vector("316151/57600", "-144000/57600", "0"),
    }
}

fn quintic_curve() -> Vec<Vector> {
    let rows: [[i64; 6]; 3] = [
        [0, 345600, -437760, 178192, 113520, -28517],
        [0, 144000, -506880, 625072, -466704, 143472],
        [0, 0, 489600, -796416, 695232, -274176],
    ];
    (0..6).map(|k| [0, 1, 2].map(|a| Literal::Text(format!("{}/57600", rows[a][k])))).collect()
}

fn table1(p: i64) -> Result<JobConfig, String> {
    if p < 6 {
        return Err(format!("c1_quintic_table1 needs p >= 6, got {p}"));
    }
    let space = SpaceSpec { generators: vec![polynomials(1, p - 4)], external: None };
    Ok(job(format!("c1_quintic_table1_p{p}"), "quintic C1 data, polynomial PH curves up to degree p", quintic_field(), space, quintic_data()))
}

fn rational_generators(p: i64) -> Vec<GeneratorSpec> {
    let max_order = (p == -3).then_some(4);
    let mut g = vec![GeneratorSpec::Nonregular { pole: pole("-1"), triplet: None, max_order }];
    if 1 - p >= 6 {
        g.push(regular("-1", Indices::Range { from: -6, to: p - 1 }));
    }
    g
}

fn table2(p: i64) -> Result<JobConfig, String> {
    if p > -3 {
        return Err(format!("c1_quintic_table2 needs p <= -3, got {p}"));
    }
    let space = SpaceSpec { generators: rational_generators(p), external: Some(quintic_curve()) };
    let mut j = job(format!("c1_quintic_table2_m{}", -p), "quintic C1 data, rational curves with a pole at -1", quintic_field(), space, quintic_data());
    j.initial = InitialSpec::External;
    Ok(j)
}

fn mixed() -> JobConfig {
    let mut generators = vec![polynomials(1, 9)];
    generators.extend(rational_generators(-9));
    let space = SpaceSpec { generators, external: None };
    job("c1_quintic_mixed".into(), "quintic C1 data, polynomial and rational elements", quintic_field(), space, quintic_data())
}

fn table4(p: i64) -> Result<JobConfig, String> {
    if !(0..=5).contains(&p) {
        return Err(format!("complex_roots_table4 needs 0 <= p <= 5, got {p}"));
    }
    // Decimal preimage; the poles are the complex roots of its norm.
    let field = quaternions(&[["1", "0", "0", "0"], ["-1.2721", "0.3309", "-0.6618", "0.8272"], ["-0.5673", "-0.2579", "0.5158", "-0.6447"]]);
    let beta = PoleSpec { re: lit("1/2"), im: Some(lit("sqrt(6071202867)/124526")) };
    let mut generators = vec![GeneratorSpec::Nonregular { pole: beta, triplet: Some([1, 2, 4]), max_order: None }];
    if p > 0 {
        generators.push(polynomials(1, p));
    }
    let data = HermiteSpec { mode: Mode::G1, p0: vector("0", "0", "0"), p1: vector("4", "2", "4"), v0: vector("1", "0", "0"), v1: vector("6/7", "-3/7", "-2/7") };
    let mut j = job(format!("complex_roots_table4_p{p}"), "G1 data, conjugate complex poles", field, SpaceSpec { generators, external: None }, data);
    j.cusp.elevation = 20;
    Ok(j)
}

fn length_job(name: &str, objective: ObjectiveSpec, bound: &str) -> JobConfig {
    let field = quaternions(&[["-4/7", "-1", "1/7", "1/2"], ["1/3", "3", "2/3", "-1"], ["1", "-1/5", "2", "3/4"]]);
    let rows: [[i64; 6]; 3] = [
        [0, 2794500, -7371000, 4941300, -1124550, -1864107],
        [0, -2268000, 1323000, -512400, 6769350, 370440],
        [0, -2214000, 7497000, -5419400, 1477350, -2275560],
    ];
    let q = |n: i64| Rational::new(n.into(), 2646000.into());
    let curve = VecPolynomial::new((0..6).map(|k| [q(rows[0][k]), q(rows[1][k]), q(rows[2][k])]).collect());
    let d = curve.derivative();
    let (zero, one) = (q(0), q(2646000));
    let v = |x: [Rational; 3]| x.map(|c| Literal::from(&c));
    let data = HermiteSpec { mode: Mode::G1, p0: v(curve.eval(&zero)), p1: v(curve.eval(&one)), v0: v(d.eval(&zero)), v1: v(d.eval(&one)) };
    let generators = vec![nonregular("-1"), nonregular("2"), polynomials(1, 3)];
    let mut j = job(name.to_string(), "G1 data from a quintic PH curve, arc-length objectives", field, SpaceSpec { generators, external: None }, data);
    j.objective = objective;
    j.cusp.bound = lit(bound);
    j
}

/// The job called `spec` (`name` or `name:parameter`).
pub fn builtin(spec: &str) -> Result<JobConfig, String> {
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (spec, None),
    };
    let int = |default: i64| -> Result<i64, String> {
        param.map_or(Ok(default), |p| p.trim().parse().map_err(|_| format!("invalid parameter {p:?} for {name}")))
    };
    let no_param = || match param {
        Some(p) => Err(format!("{name} takes no parameter, got {p:?}")),
        None => Ok(()),
    };
    match name {
        "helix_g1" => no_param().map(|_| {
            let mut j = helix("helix_g1", Mode::G1, vec![polynomials(2, 4)], 5);
            j.initial = InitialSpec::Element { index: 4 };
            j
        }),
        "helix_c1_r1" => no_param().map(|_| helix("helix_c1_r1", Mode::C1, vec![polynomials(2, 8)], 150)),
        "helix_c1_r2" => no_param().map(|_| helix("helix_c1_r2", Mode::C1, vec![polynomials(2, 6), regular("-2", Indices::List(vec![-4]))], 150)),
        "degenerate_g1" => no_param().map(|_| {
            let mut j = helix("degenerate_g1", Mode::G1, vec![polynomials(2, 4)], 5);
            j.description = "coincident end points".into();
            j.hermite.p0 = vector("1", "1", "1");
            j.hermite.p1 = vector("1", "1", "1");
            j
        }),
        "c1_quintic_table1" => table1(int(10)?),
        "c1_quintic_table2" => table2(int(-15)?),
        "c1_quintic_mixed" => no_param().map(|_| mixed()),
        "complex_roots_table4" => table4(int(0)?),
        "length_min" => no_param().map(|_| length_job("length_min", ObjectiveSpec::Arclength, "0")),
        "length_target" => {
            let s: f64 = param.map_or(Ok(3.5), |p| p.trim().parse().map_err(|_| format!("invalid target {p:?}")))?;
            let mut j = length_job("length_target", ObjectiveSpec::TargetLength { target: s }, "0");
            if param.is_some() {
                j.name = format!("length_target_{s}");
            }
            Ok(j)
        }
        "length_relaxed" => no_param().map(|_| length_job("length_relaxed", ObjectiveSpec::Arclength, "-100")),
        _ => Err(format!("unknown built-in job {name:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_round_trips_through_toml() {
        for b in BUILTINS {
            let j = builtin(b.name).unwrap();
            assert_eq!(JobConfig::from_toml(&j.to_toml()).unwrap(), j, "{}", b.name);
        }
    }

    #[test]
    fn parameters_are_checked() {
        assert!(builtin("c1_quintic_table1:5").is_err());
        assert!(builtin("c1_quintic_table2:-2").is_err());
        assert!(builtin("complex_roots_table4:6").is_err());
        assert!(builtin("helix_g1:3").is_err());
        assert!(builtin("nope").is_err());
        assert_eq!(builtin("length_target:2").unwrap().objective, ObjectiveSpec::TargetLength { target: 2.0 });
    }
}
