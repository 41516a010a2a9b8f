//! The `fixloc` command line: one subcommand per computation, JSON in and out.
//!
//! Exit codes: 0 on success, 1 when a property check finds a counterexample
//! (dumped on stdout), 2 for unusable input, 3 for domain errors.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cover::CoverProfile;
use crate::equivariant::{
    enumerate_lambda, from_parabolic, to_parabolic, weight_system, DeterminantLift, LiftSign,
    NumericData, Rank2EqData,
};
use crate::error::Error;
use crate::fixed_locus::{
    decomposition_report, equivalence_classes, hyperelliptic_report, unramified_census,
    zeta2_apply, zeta2_parabolic, GradedPoint,
};
use crate::random::{self, DEFAULT_SEED};
use crate::stability::{graded_of, parabolic_slope_difference, stability_classify, FlagConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subcommand {
    Kernel,
    Factor,
    Lambda,
    Weights,
    BijectionCheck,
    Zeta2,
    Orbits,
    Decompose,
    Hyperelliptic,
    Census,
    Stability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "fixloc", version, about = "Fixed loci of curve automorphisms on rank-2 moduli")]
#[command(allow_negative_numbers = true)]
pub struct CommandConfig {
    #[arg(value_enum)]
    pub subcommand: Subcommand,
    /// JSON input.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Genus of a hyperelliptic curve.
    #[arg(long)]
    pub g: Option<i64>,
    /// Order of an unramified cover.
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long)]
    pub deg_delta: Option<i64>,
    #[arg(long)]
    pub genus_y: Option<i64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Exit status and captured output of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Schema(String),
    Domain(Error),
    Property { property: String, counterexample: Value },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

enum Report {
    Json(Value),
    Rendered { json: Value, text: String, dot: Option<String> },
}

pub fn run(config: &CommandConfig) -> Outcome {
    match dispatch(config).and_then(|r| render(r, config.format)) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Schema(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("schema error: {msg}\n") },
        Err(Failure::Domain(e)) => Outcome { code: 3, stdout: String::new(), stderr: format!("error: {e}\n") },
        Err(Failure::Property { property, counterexample }) => Outcome {
            code: 1,
            stdout: pretty(&json!({ "property": property, "counterexample": counterexample })),
            stderr: format!("property check failed: {property}\n"),
        },
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn render(report: Report, format: OutputFormat) -> Run<String> {
    match (report, format) {
        (Report::Json(v), OutputFormat::Json) | (Report::Rendered { json: v, .. }, OutputFormat::Json) => {
            Ok(pretty(&v))
        }
        (Report::Json(v), OutputFormat::Text) => Ok(text_of(&v, 0)),
        (Report::Rendered { text, .. }, OutputFormat::Text) => Ok(text),
        (Report::Rendered { dot: Some(d), .. }, OutputFormat::Dot) => Ok(d),
        (_, OutputFormat::Dot) => Err(Failure::Schema("dot output is only available for `hyperelliptic`".into())),
    }
}

/// Indented `key: value` rendering of a JSON report.
fn text_of(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match x {
                Value::Object(_) | Value::Array(_) => format!("{pad}{k}:\n{}", text_of(x, indent + 1)),
                _ => format!("{pad}{k}: {}\n", scalar(x)),
            })
            .collect(),
        Value::Array(a) => a
            .iter()
            .map(|x| match x {
                Value::Object(_) | Value::Array(_) => format!("{pad}-\n{}", text_of(x, indent + 1)),
                _ => format!("{pad}- {}\n", scalar(x)),
            })
            .collect(),
        _ => format!("{pad}{}\n", scalar(v)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialise")
}

fn read_input<T: DeserializeOwned>(config: &CommandConfig) -> Run<Option<T>> {
    let Some(path) = &config.file else {
        return Ok(None);
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Schema(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| Failure::Schema(format!("{}: {e}", path.display())))
}

fn require<T>(x: Option<T>, what: &str) -> Run<T> {
    x.ok_or_else(|| Failure::Schema(format!("missing {what}")))
}

/// The profile from `--file`, else a hyperelliptic one from `--g`, else an
/// unramified one from `--n` (base genus `--genus-y`, default 1).
fn profile_input(config: &CommandConfig) -> Run<CoverProfile> {
    if let Some(p) = read_input::<CoverProfile>(config)? {
        return Ok(p);
    }
    if let Some(g) = config.g {
        return Ok(CoverProfile::hyperelliptic(g)?);
    }
    if let Some(n) = config.n {
        return Ok(CoverProfile::unramified(n, config.genus_y.unwrap_or(1))?);
    }
    Err(Failure::Schema("need --file, --g or --n".into()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LiftInput {
    profile: CoverProfile,
    det: DeterminantLift,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NumericInput {
    profile: CoverProfile,
    numeric: NumericData,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DataInput {
    profile: CoverProfile,
    data: Rank2EqData,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointInput {
    profile: CoverProfile,
    point: GradedPoint,
}

/// The two lifts `Delta_0`, `Delta_1` of the hyperelliptic picture.
pub fn hyperelliptic_lifts(profile: &CoverProfile) -> crate::Result<[DeterminantLift; 2]> {
    let res = |r: i64| -> BTreeMap<String, i64> {
        profile.orbits().iter().map(|o| (o.id.clone(), r)).collect()
    };
    Ok([
        DeterminantLift::new(profile, &res(0), 0, LiftSign::Plus)?,
        DeterminantLift::new(profile, &res(1), 0, LiftSign::Minus)?,
    ])
}

fn lift_inputs(config: &CommandConfig) -> Run<(CoverProfile, Vec<DeterminantLift>)> {
    if let Some(inp) = read_input::<LiftInput>(config)? {
        return Ok((inp.profile, vec![inp.det]));
    }
    let g = require(config.g, "--file or --g")?;
    let profile = CoverProfile::hyperelliptic(g)?;
    let lifts = hyperelliptic_lifts(&profile)?.to_vec();
    Ok((profile, lifts))
}

fn dispatch(config: &CommandConfig) -> Run<Report> {
    let seed = config.seed.unwrap_or(DEFAULT_SEED);
    match config.subcommand {
        Subcommand::Kernel => {
            let p = profile_input(config)?;
            let (order, r) = (p.kernel_order(), p.gcd_orbit_lengths());
            if order != r {
                return Err(Failure::Property {
                    property: "kernel order equals gcd of n and the orbit lengths".into(),
                    counterexample: json!({ "profile": to_value(&p), "kernel_order": order, "gcd": r }),
                });
            }
            Ok(Report::Json(json!({ "kernel_order": order })))
        }
        Subcommand::Factor => {
            let p = profile_input(config)?;
            let (ramified, r) = p.factor_cover();
            Ok(Report::Json(json!({ "ramified": to_value(&ramified), "unramified_degree": r })))
        }
        Subcommand::Lambda => {
            let (profile, lifts) = lift_inputs(config)?;
            let mut out = Vec::new();
            for det in lifts {
                let lambda = enumerate_lambda(&det, &profile)?;
                out.push(json!({ "det": to_value(&det), "count": lambda.len(), "lambda": to_value(&lambda) }));
            }
            Ok(Report::Json(json!({ "lifts": out })))
        }
        Subcommand::Weights => {
            let inp: NumericInput = require(read_input(config)?, "--file with profile and numeric")?;
            let w = weight_system(&inp.numeric, &inp.profile)?;
            Ok(Report::Json(json!({ "weights": to_value(&crate::rational::QMap(w)) })))
        }
        Subcommand::BijectionCheck => bijection_check(config, seed),
        Subcommand::Zeta2 => zeta2_check(config),
        Subcommand::Orbits => orbits(config),
        Subcommand::Decompose => {
            let report = decomposition_report(&profile_input(config)?)?;
            Ok(Report::Rendered { json: to_value(&report), text: report.to_text(), dot: None })
        }
        Subcommand::Hyperelliptic => {
            let report = hyperelliptic_report(require(config.g, "--g")?)?;
            Ok(Report::Rendered { json: to_value(&report), text: report.to_text(), dot: Some(report.to_dot()) })
        }
        Subcommand::Census => {
            let rec = unramified_census(
                require(config.n, "--n")?,
                require(config.deg_delta, "--deg-delta")?,
                require(config.genus_y, "--genus-y")?,
            )?;
            Ok(Report::Rendered { json: to_value(&rec), text: rec.to_text(), dot: None })
        }
        Subcommand::Stability => stability(config, seed),
    }
}

fn round_trip_failure(profile: &CoverProfile, data: &Rank2EqData, back: Value) -> Failure {
    Failure::Property {
        property: "from_parabolic(to_parabolic(x)) == x".into(),
        counterexample: json!({ "profile": to_value(profile), "data": to_value(data), "back": back }),
    }
}

fn check_round_trips(profile: &CoverProfile, det: &DeterminantLift) -> Run<usize> {
    let lambda = enumerate_lambda(det, profile)?;
    for numeric in &lambda {
        let data = Rank2EqData::new(profile, numeric.clone(), det.clone())?;
        let back = to_parabolic(&data, profile).and_then(|p| from_parabolic(&p, profile));
        match back {
            Ok(b) if b == data => {}
            Ok(b) => return Err(round_trip_failure(profile, &data, to_value(&b))),
            Err(e) => return Err(round_trip_failure(profile, &data, json!(e.to_string()))),
        }
    }
    Ok(lambda.len())
}

/// Round trip through the parabolic side on every member of `Lambda_Delta`:
/// for the given lift, or for random profiles drawn from `seed`.
fn bijection_check(config: &CommandConfig, seed: u64) -> Run<Report> {
    if config.file.is_some() || config.g.is_some() {
        let (profile, lifts) = lift_inputs(config)?;
        let mut checked = 0;
        for det in &lifts {
            checked += check_round_trips(&profile, det)?;
        }
        return Ok(Report::Json(json!({ "checked": checked, "profiles": 1 })));
    }
    let mut rng = random::rng(seed);
    let mut checked = 0;
    for _ in 0..20 {
        let profile = random::profile(&mut rng, 12, 4);
        let det = random::determinant(&mut rng, &profile);
        checked += check_round_trips(&profile, &det)?;
    }
    Ok(Report::Json(json!({ "seed": seed, "checked": checked, "profiles": 20 })))
}

fn zeta2_one(profile: &CoverProfile, data: &Rank2EqData) -> Run<(Rank2EqData, bool)> {
    let image = zeta2_apply(data, profile)?;
    let via_eq = to_parabolic(&image, profile)?;
    let via_par = zeta2_parabolic(&to_parabolic(data, profile)?, profile)?;
    let back = zeta2_apply(&image, profile)?;
    if back != *data {
        return Err(Failure::Property {
            property: "zeta_2 is an involution".into(),
            counterexample: json!({ "profile": to_value(profile), "data": to_value(data), "twice": to_value(&back) }),
        });
    }
    if via_eq != via_par {
        return Err(Failure::Property {
            property: "zeta_2 commutes with the parabolic correspondence".into(),
            counterexample: json!({
                "profile": to_value(profile),
                "data": to_value(data),
                "equivariant_route": to_value(&via_eq),
                "parabolic_route": to_value(&via_par),
            }),
        });
    }
    Ok((image, true))
}

fn zeta2_check(config: &CommandConfig) -> Run<Report> {
    if let Some(inp) = read_input::<DataInput>(config)? {
        let (image, agrees) = zeta2_one(&inp.profile, &inp.data)?;
        let parabolic = to_parabolic(&image, &inp.profile)?;
        return Ok(Report::Json(json!({
            "image": to_value(&image),
            "parabolic": to_value(&parabolic),
            "agrees": agrees,
        })));
    }
    let g = require(config.g, "--file or --g")?;
    let profile = CoverProfile::hyperelliptic(g)?;
    let mut checked = 0;
    for det in hyperelliptic_lifts(&profile)? {
        for numeric in enumerate_lambda(&det, &profile)? {
            zeta2_one(&profile, &Rank2EqData::new(&profile, numeric, det.clone())?)?;
            checked += 1;
        }
    }
    Ok(Report::Json(json!({ "g": g, "checked": checked, "agrees": true })))
}

fn orbits(config: &CommandConfig) -> Run<Report> {
    if let Some(inp) = read_input::<PointInput>(config)? {
        inp.point.check(&inp.profile)?;
        let classes = equivalence_classes(std::slice::from_ref(&inp.point), &inp.profile)?;
        return Ok(Report::Json(json!({ "class": to_value(&classes[0]) })));
    }
    let g = require(config.g, "--file or --g")?;
    let profile = CoverProfile::hyperelliptic(g)?;
    let mut points = Vec::new();
    for det in hyperelliptic_lifts(&profile)? {
        points.extend(crate::fixed_locus::graded_points(&det, &profile)?);
    }
    let classes = equivalence_classes(&points, &profile)?;
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    Ok(Report::Json(json!({
        "g": g,
        "graded_points": points.len(),
        "class_count": classes.len(),
        "class_sizes": sizes,
    })))
}

fn stability(config: &CommandConfig, seed: u64) -> Run<Report> {
    let cfg = match read_input::<FlagConfig>(config)? {
        Some(c) => c,
        None => {
            let g = config.g.unwrap_or(2);
            if g < 0 {
                return Err(Failure::Domain(Error::InvalidGenus(g)));
            }
            let d = -(g + 1);
            random::flag_config(&mut random::rng(seed), g, -((-d) / 2), false)
        }
    };
    let bundle = cfg.bundle()?;
    let verdict = stability_classify(&bundle);
    let mut out = to_value(&verdict);
    if let Some(w) = &verdict.witness {
        out["margin"] = to_value(&crate::rational::BigQ(parabolic_slope_difference(&bundle, w)));
    }
    if let Ok(gr) = graded_of(&bundle, &verdict) {
        out["graded"] = to_value(&gr);
    }
    if config.file.is_none() {
        out["input"] = to_value(&cfg);
    }
    Ok(Report::Json(out))
}
