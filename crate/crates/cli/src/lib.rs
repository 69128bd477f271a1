//! Command-line front end for `blochkit`.
//!
//! Every subcommand resolves its inputs into a [`RunConfig`], validates all
//! numeric parameters, then runs and produces a [`Report`].

pub mod catalog;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use blochkit::compop::{
    bloch_to_hardy_criterion, bounded_below_probe, hardy_to_bloch_verdict, CriterionReport, CriterionVerdict,
};
use blochkit::descriptor::Descriptor;
use blochkit::extremal::{lipschitz_scan, m_root, sharpness_witness};
use blochkit::metrics::{rho, sigma};
use blochkit::norms::{bloch_seminorm, g_function, hardy_norm, HardyExponent};
use blochkit::{
    AnalyticMap64, BlochParams64, Complex64, DiskPoint, Estimate, HarmonicMap64, Majorant, SamplingPlan64,
};
use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

pub use error::CliError;
pub use report::Report;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "BLOCHKIT_WORKERS";

pub const EXIT_DEFINITIVE: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;

const PROBE_RADIUS_LIMIT: f64 = 0.384_900_179_459_750_5;
const SHARP_CONSTANT: f64 = 2.598_076_211_353_316;

#[derive(Debug, Parser)]
#[command(name = "blochkit", version, about = "Bloch-type seminorms, Hardy norms and composition operators on the unit disk")]
pub struct Cli {
    /// JSON document with default values for any flag (kebab-case keys).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Write the JSON report here as well as to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Write the evidence ladder as `truncation,value` rows.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,

    /// Radial ladder depth J.
    #[arg(long = "plan-j", global = true)]
    pub plan_j: Option<usize>,

    /// Relative tolerance of the adaptive estimators.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tol: Option<f64>,

    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Sub {
    /// Pseudo-hyperbolic and hyperbolic distance between two points.
    Metric {
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
    },
    /// Hardy p-norm (p may be `inf`).
    HardyNorm {
        #[arg(long)]
        func: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
    },
    /// Bloch-type seminorm.
    BlochSeminorm {
        #[arg(long)]
        func: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        /// `id` or `pow:S`.
        #[arg(long)]
        omega: Option<String>,
    },
    /// Littlewood-Paley G-function at a boundary angle.
    Gfunction {
        #[arg(long)]
        func: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        angle: Option<f64>,
    },
    /// Largest Lipschitz ratio of the classical Bloch functional over sampled pairs.
    LipschitzScan {
        #[arg(long)]
        func: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        pairs: Option<usize>,
    },
    /// Pair whose Lipschitz ratio is within epsilon of the sharp constant.
    SharpnessWitness {
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<f64>,
    },
    /// Root m of psi(m; alpha) = r0.
    ExtremalRoot {
        #[arg(long, allow_hyphen_values = true)]
        r0: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
    },
    /// Bloch-to-Hardy composition operator criterion.
    CompopCriterion {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long)]
        omega: Option<String>,
    },
    /// Hardy-to-Bloch boundedness and compactness verdicts.
    CompopVerdict {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long)]
        omega: Option<String>,
    },
    /// Bounded-below probe on pseudo-hyperbolic discs.
    BoundedBelowProbe {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        samples: Option<usize>,
    },
    /// List the catalog or print one entry's descriptor.
    Catalog { name: Option<String> },
}

/// Number given as JSON number or text such as `"inf"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Flexible {
    Number(f64),
    Text(String),
}

impl Flexible {
    fn text(&self) -> String {
        match self {
            Self::Number(x) => x.to_string(),
            Self::Text(s) => s.clone(),
        }
    }
}

/// Optional config document. Flags override its values.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ConfigDoc {
    z: Option<[f64; 2]>,
    w: Option<[f64; 2]>,
    func: Option<Value>,
    phi: Option<Value>,
    p: Option<Flexible>,
    alpha: Option<f64>,
    beta: Option<f64>,
    omega: Option<String>,
    angle: Option<f64>,
    pairs: Option<usize>,
    epsilon: Option<f64>,
    r0: Option<f64>,
    r: Option<f64>,
    samples: Option<usize>,
    name: Option<String>,
    seed: Option<u64>,
    plan_j: Option<usize>,
    tol: Option<f64>,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
}

/// A function argument together with its resolved descriptor.
#[derive(Debug, Clone, PartialEq)]
pub struct FuncArg {
    pub descriptor: Descriptor,
}

impl FuncArg {
    fn echo(&self) -> Value {
        serde_json::from_str(&self.descriptor.to_json()).expect("descriptor json")
    }

    fn harmonic(&self) -> Result<HarmonicMap64, CliError> {
        Ok(self.descriptor.harmonic()?)
    }

    fn analytic(&self) -> Result<AnalyticMap64, CliError> {
        Ok(self.descriptor.analytic()?)
    }
}

/// Validated subcommand with its parameters.
#[derive(Debug, Clone)]
pub enum Command {
    Metric { z: DiskPoint<f64>, w: DiskPoint<f64> },
    HardyNorm { func: FuncArg, f: HarmonicMap64, p: HardyExponent<f64> },
    BlochSeminorm { func: FuncArg, f: HarmonicMap64, params: BlochParams64 },
    Gfunction { func: FuncArg, f: AnalyticMap64, angle: f64 },
    LipschitzScan { func: FuncArg, f: HarmonicMap64, pairs: usize },
    SharpnessWitness { epsilon: f64 },
    ExtremalRoot { r0: f64, alpha: f64 },
    CompopCriterion { phi: FuncArg, map: AnalyticMap64, params: BlochParams64, p: f64 },
    CompopVerdict { phi: FuncArg, map: AnalyticMap64, params: BlochParams64, p: f64 },
    BoundedBelowProbe { phi: FuncArg, map: AnalyticMap64, r: f64, epsilon: f64, samples: usize },
    Catalog { name: Option<String> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Metric { .. } => "metric",
            Self::HardyNorm { .. } => "hardy-norm",
            Self::BlochSeminorm { .. } => "bloch-seminorm",
            Self::Gfunction { .. } => "gfunction",
            Self::LipschitzScan { .. } => "lipschitz-scan",
            Self::SharpnessWitness { .. } => "sharpness-witness",
            Self::ExtremalRoot { .. } => "extremal-root",
            Self::CompopCriterion { .. } => "compop-criterion",
            Self::CompopVerdict { .. } => "compop-verdict",
            Self::BoundedBelowProbe { .. } => "bounded-below-probe",
            Self::Catalog { .. } => "catalog",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub plan: SamplingPlan64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

/// Result of a run: the report, optional plain-text rendering, and whether
/// the outcome is definitive.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub text: Option<String>,
    pub definitive: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.definitive {
            EXIT_DEFINITIVE
        } else {
            EXIT_INCONCLUSIVE
        }
    }
}

/// Parses `RE,IM` (or a bare real).
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').collect();
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("`{text}` is not RE,IM"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("`{text}` is not RE,IM")),
    }
}

fn range(name: &str, value: f64, ok: bool, bound: &str) -> Result<f64, CliError> {
    if ok && !value.is_nan() {
        Ok(value)
    } else {
        Err(CliError::Range(format!("`--{name}` = {value} violates {bound}")))
    }
}

fn missing(name: &str, command: &str) -> CliError {
    CliError::Usage(format!("`{command}` requires `--{name}`"))
}

fn complex_arg(name: &str, flag: Option<String>, doc: Option<[f64; 2]>, command: &str) -> Result<DiskPoint<f64>, CliError> {
    let z = match (flag, doc) {
        (Some(s), _) => parse_complex(&s).map_err(|e| CliError::Usage(format!("`--{name}`: {e}")))?,
        (None, Some([re, im])) => Complex64::new(re, im),
        (None, None) => return Err(missing(name, command)),
    };
    DiskPoint::new(z).map_err(|_| CliError::Range(format!("`--{name}` = {},{} is not inside the unit disk", z.re, z.im)))
}

fn read_descriptor(path: &Path) -> Result<Descriptor, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Descriptor::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Resolves a function given as inline JSON, a file path, or a catalog name.
pub fn resolve_function(source: &str) -> Result<FuncArg, CliError> {
    let trimmed = source.trim();
    let descriptor = if trimmed.starts_with('{') {
        Descriptor::parse(trimmed).map_err(|e| CliError::Usage(format!("inline descriptor: {e}")))?
    } else if Path::new(trimmed).is_file() {
        read_descriptor(Path::new(trimmed))?
    } else {
        catalog::lookup(trimmed)?
    };
    Ok(FuncArg { descriptor })
}

fn function_arg(name: &str, flag: Option<String>, doc: Option<Value>, command: &str, base: &Path) -> Result<FuncArg, CliError> {
    match (flag, doc) {
        (Some(s), _) => resolve_function(&s),
        (None, Some(Value::String(s))) => {
            let rel = base.join(&s);
            if !s.trim_start().starts_with('{') && rel.is_file() {
                Ok(FuncArg { descriptor: read_descriptor(&rel)? })
            } else {
                resolve_function(&s)
            }
        }
        (None, Some(v)) => Ok(FuncArg {
            descriptor: Descriptor::from_value(v).map_err(|e| CliError::Usage(format!("`{name}` in config: {e}")))?,
        }),
        (None, None) => Err(missing(name, command)),
    }
}

fn parse_p(flag: Option<String>, doc: Option<Flexible>) -> Result<HardyExponent<f64>, CliError> {
    let text = flag.or_else(|| doc.map(|d| d.text())).unwrap_or_else(|| "2".into());
    let t = text.trim().to_ascii_lowercase();
    if matches!(t.as_str(), "inf" | "infinity" | "+inf") {
        return Ok(HardyExponent::Infinity);
    }
    let p: f64 = t.parse().map_err(|_| CliError::Usage(format!("`--p`: `{text}` is not a number or `inf`")))?;
    range("p", p, p > 0.0 && p.is_finite(), "p > 0")?;
    Ok(HardyExponent::Finite(p))
}

fn finite_p(p: HardyExponent<f64>, lower: f64, bound: &str) -> Result<f64, CliError> {
    match p {
        HardyExponent::Finite(p) => range("p", p, p > lower, bound),
        HardyExponent::Infinity => Err(CliError::Range(format!("`--p` = inf violates {bound}"))),
    }
}

fn parse_omega(text: Option<String>) -> Result<Majorant<f64>, CliError> {
    let text = text.unwrap_or_else(|| "id".into());
    match text.split_once(':') {
        None if text == "id" => Ok(Majorant::identity()),
        Some(("pow", s)) => {
            let s: f64 = s
                .parse()
                .map_err(|_| CliError::Usage(format!("`--omega`: `{text}` is not id or pow:S")))?;
            range("omega", s, s > 0.0 && s <= 1.0, "pow:S with 0 < S <= 1")?;
            Majorant::power(s).map_err(|e| CliError::Range(format!("`--omega` = {text}: {e}")))
        }
        _ => Err(CliError::Usage(format!("`--omega`: `{text}` is not id or pow:S"))),
    }
}

fn parse_params(alpha: Option<f64>, beta: Option<f64>, omega: Option<String>) -> Result<BlochParams64, CliError> {
    let alpha = alpha.unwrap_or(1.0);
    range("alpha", alpha, alpha > 0.0 && alpha.is_finite(), "alpha > 0")?;
    let beta = beta.unwrap_or(0.0);
    range("beta", beta, beta.is_finite(), "beta finite")?;
    Ok(BlochParams64::new(alpha, beta, parse_omega(omega)?)?)
}

fn self_map(arg: &FuncArg) -> Result<AnalyticMap64, CliError> {
    let map = arg.analytic()?;
    map.check_self_map()?;
    Ok(map)
}

fn load_config(path: &Path) -> Result<ConfigDoc, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
}

/// Parses argv (including the program name) and an optional config
/// document into a validated [`RunConfig`].
pub fn parse_config<I, S>(args: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(CliError::Clap)?;
    let (doc, base) = match &cli.config {
        Some(path) => (
            load_config(path)?,
            path.parent().map(Path::to_path_buf).unwrap_or_default(),
        ),
        None => (ConfigDoc::default(), PathBuf::new()),
    };
    resolve(cli, doc, &base)
}

fn resolve(cli: Cli, doc: ConfigDoc, base: &Path) -> Result<RunConfig, CliError> {
    let mut plan = SamplingPlan64::default();
    if let Some(j) = cli.plan_j.or(doc.plan_j) {
        range("plan-j", j as f64, (1..=52).contains(&j), "1 <= J <= 52")?;
        plan = plan.with_ladder_depth(j)?;
    }
    if let Some(tol) = cli.tol.or(doc.tol) {
        range("tol", tol, tol > 0.0 && tol < 1.0, "0 < tol < 1")?;
        plan = plan.with_tolerance(tol)?;
    }
    let seed = cli.seed.or(doc.seed).unwrap_or(0);
    let out = cli.out.or(doc.out);
    let csv = cli.csv.or(doc.csv);

    let command = match cli.command {
        Sub::Metric { z, w } => Command::Metric {
            z: complex_arg("z", z, doc.z, "metric")?,
            w: complex_arg("w", w, doc.w, "metric")?,
        },
        Sub::HardyNorm { func, p } => {
            let func = function_arg("func", func, doc.func, "hardy-norm", base)?;
            let p = parse_p(p, doc.p)?;
            Command::HardyNorm { f: func.harmonic()?, func, p }
        }
        Sub::BlochSeminorm { func, alpha, beta, omega } => {
            let params = parse_params(alpha.or(doc.alpha), beta.or(doc.beta), omega.or(doc.omega))?;
            let func = function_arg("func", func, doc.func, "bloch-seminorm", base)?;
            Command::BlochSeminorm { f: func.harmonic()?, func, params }
        }
        Sub::Gfunction { func, angle } => {
            let angle = angle.or(doc.angle).unwrap_or(0.0);
            range("angle", angle, angle.is_finite(), "finite angle")?;
            let func = function_arg("func", func, doc.func, "gfunction", base)?;
            Command::Gfunction { f: func.analytic()?, func, angle }
        }
        Sub::LipschitzScan { func, pairs } => {
            let pairs = pairs.or(doc.pairs).unwrap_or(10_000);
            range("pairs", pairs as f64, pairs >= 1, "pairs >= 1")?;
            let func = function_arg("func", func, doc.func, "lipschitz-scan", base)?;
            Command::LipschitzScan { f: func.harmonic()?, func, pairs }
        }
        Sub::SharpnessWitness { epsilon } => {
            let epsilon = epsilon.or(doc.epsilon).ok_or_else(|| missing("epsilon", "sharpness-witness"))?;
            range("epsilon", epsilon, epsilon > 0.0 && epsilon <= SHARP_CONSTANT, "0 < epsilon <= 3*sqrt(3)/2")?;
            Command::SharpnessWitness { epsilon }
        }
        Sub::ExtremalRoot { r0, alpha } => {
            let r0 = r0.or(doc.r0).ok_or_else(|| missing("r0", "extremal-root"))?;
            range("r0", r0, r0 > 0.0 && r0 <= 1.0, "0 < r0 <= 1")?;
            let alpha = alpha.or(doc.alpha).unwrap_or(1.0);
            range("alpha", alpha, alpha > 0.0 && alpha.is_finite(), "alpha > 0")?;
            Command::ExtremalRoot { r0, alpha }
        }
        Sub::CompopCriterion { phi, alpha, beta, p, omega } => {
            let params = parse_params(alpha.or(doc.alpha), beta.or(doc.beta), omega.or(doc.omega))?;
            let p = finite_p(parse_p(p, doc.p)?, 0.0, "0 < p < inf")?;
            let phi = function_arg("phi", phi, doc.phi, "compop-criterion", base)?;
            Command::CompopCriterion { map: self_map(&phi)?, phi, params, p }
        }
        Sub::CompopVerdict { phi, p, alpha, beta, omega } => {
            let params = parse_params(alpha.or(doc.alpha), beta.or(doc.beta), omega.or(doc.omega))?;
            let p = finite_p(parse_p(p, doc.p)?, 1.0, "1 < p < inf")?;
            params
                .omega()
                .slope_at_origin()
                .map_err(|e| CliError::Range(format!("`--omega`: {e}")))?;
            let phi = function_arg("phi", phi, doc.phi, "compop-verdict", base)?;
            Command::CompopVerdict { map: self_map(&phi)?, phi, params, p }
        }
        Sub::BoundedBelowProbe { phi, r, epsilon, samples } => {
            let r = r.or(doc.r).ok_or_else(|| missing("r", "bounded-below-probe"))?;
            range("r", r, r > 0.0 && r < PROBE_RADIUS_LIMIT, "0 < r < 2*sqrt(3)/9 (about 0.3849)")?;
            let epsilon = epsilon.or(doc.epsilon).ok_or_else(|| missing("epsilon", "bounded-below-probe"))?;
            range("epsilon", epsilon, epsilon > 0.0 && epsilon.is_finite(), "epsilon > 0")?;
            let samples = samples.or(doc.samples).unwrap_or(1000);
            range("samples", samples as f64, samples >= 1, "samples >= 1")?;
            let phi = function_arg("phi", phi, doc.phi, "bounded-below-probe", base)?;
            Command::BoundedBelowProbe { map: self_map(&phi)?, phi, r, epsilon, samples }
        }
        Sub::Catalog { name } => Command::Catalog { name: name.or(doc.name) },
    };
    Ok(RunConfig { command, plan, seed, out, csv })
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn opt(x: Option<f64>) -> Value {
    match x {
        Some(v) if v.is_infinite() => json!(if v > 0.0 { "inf" } else { "-inf" }),
        Some(v) => json!(v),
        None => Value::Null,
    }
}

fn params_echo(p: &BlochParams64) -> Value {
    json!({"alpha": p.alpha(), "beta": p.beta(), "omega": p.omega().label()})
}

fn p_echo(p: HardyExponent<f64>) -> Value {
    match p {
        HardyExponent::Finite(p) => json!(p),
        HardyExponent::Infinity => json!("inf"),
    }
}

fn estimate_json(e: &Estimate<f64>) -> Value {
    let mut v = json!({
        "verdict": e.verdict,
        "value": opt(e.finite_value()),
        "resolution": e.resolution,
    });
    if let Some(z) = e.argmax {
        v["argmax"] = pair(z);
    }
    v
}

fn interpretation(v: CriterionVerdict) -> Value {
    match v {
        CriterionVerdict::Convergent => json!("operator bounded, equivalently compact"),
        CriterionVerdict::Divergent => json!("operator unbounded, equivalently non-compact"),
        _ => Value::Null,
    }
}

fn criterion_json(r: &CriterionReport<f64>) -> Value {
    let d = &r.diagnostics;
    json!({
        "verdict": r.verdict.label(),
        "estimate": opt(r.estimate),
        "diagnostics": {
            "nodes": d.nodes,
            "evaluations": d.evaluations,
            "slope": opt(d.slope),
            "stabilization": opt(d.stabilization),
            "margin": opt(d.margin),
            "angular_converged": d.angular_converged,
        },
    })
}

fn catalog_listing() -> Value {
    Value::Array(
        catalog::ENTRIES
            .iter()
            .map(|e| json!({"name": e.pattern, "role": e.role}))
            .collect(),
    )
}

/// Runs a validated configuration.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let plan = &config.plan;
    let name = config.command.name();
    let mut text = None;
    let mut definitive = true;
    let (parameters, result, evidence) = match &config.command {
        Command::Metric { z, w } => {
            let (r, s) = (rho(z, w), sigma(z, w));
            text = Some(format!("rho {}\nsigma {}\n", report::format_sig(r), report::format_sig(s)));
            (
                json!({"z": pair(z.value()), "w": pair(w.value())}),
                json!({"rho": r, "sigma": s}),
                Vec::new(),
            )
        }
        Command::HardyNorm { func, f, p } => {
            let e = hardy_norm(f, *p, plan)?;
            (json!({"func": func.echo(), "p": p_echo(*p)}), estimate_json(&e), e.evidence)
        }
        Command::BlochSeminorm { func, f, params } => {
            let e = bloch_seminorm(f, params, plan);
            let mut p = json!({"func": func.echo()});
            if let (Value::Object(m), Value::Object(extra)) = (&mut p, params_echo(params)) {
                m.extend(extra);
            }
            (p, estimate_json(&e), e.evidence)
        }
        Command::Gfunction { func, f, angle } => {
            let e = g_function(f, *angle, plan);
            (json!({"func": func.echo(), "angle": angle}), estimate_json(&e), e.evidence)
        }
        Command::LipschitzScan { func, f, pairs } => {
            let s = lipschitz_scan(f, *pairs, config.seed, plan)?;
            definitive = s.within_cap();
            (
                json!({"func": func.echo(), "pairs": pairs, "seed": config.seed}),
                json!({
                    "max_ratio": s.max_ratio,
                    "argmax": [pair(s.argmax.0), pair(s.argmax.1)],
                    "seminorm": s.seminorm,
                    "cap": s.cap,
                    "within_cap": s.within_cap(),
                    "pairs_evaluated": s.pairs_evaluated,
                }),
                Vec::new(),
            )
        }
        Command::SharpnessWitness { epsilon } => {
            let w = sharpness_witness(*epsilon)?;
            definitive = w.satisfied();
            (
                json!({"epsilon": epsilon}),
                json!({
                    "m_star": w.m_star,
                    "beta": w.beta,
                    "z1": w.z1,
                    "z2": w.z2,
                    "achieved_ratio": w.achieved_ratio,
                    "target": w.target,
                    "satisfied": w.satisfied(),
                }),
                Vec::new(),
            )
        }
        Command::ExtremalRoot { r0, alpha } => {
            let s = m_root(*r0, *alpha)?;
            (
                json!({"r0": r0, "alpha": alpha}),
                json!({"a0": s.a0, "m": s.m, "residual": s.residual}),
                Vec::new(),
            )
        }
        Command::CompopCriterion { phi, map, params, p } => {
            let r = bloch_to_hardy_criterion(map, params, *p, plan)?;
            definitive = r.verdict.is_definitive();
            let mut result = criterion_json(&r);
            result["interpretation"] = interpretation(r.verdict);
            let mut echo = json!({"phi": phi.echo()});
            if let (Value::Object(m), Value::Object(extra)) = (&mut echo, params_echo(params)) {
                m.extend(extra);
            }
            echo["p"] = json!(p);
            (echo, result, r.evidence)
        }
        Command::CompopVerdict { phi, map, params, p } => {
            let r = hardy_to_bloch_verdict(map, params, *p, plan)?;
            definitive = r.boundedness.verdict.is_definitive() && r.compactness.verdict.is_definitive();
            let mut compactness = criterion_json(&r.compactness);
            compactness["evidence"] = json!(r.compactness.evidence.iter().map(|&(t, v)| [t, v]).collect::<Vec<_>>());
            let mut echo = json!({"phi": phi.echo()});
            if let (Value::Object(m), Value::Object(extra)) = (&mut echo, params_echo(params)) {
                m.extend(extra);
            }
            echo["p"] = json!(p);
            (
                echo,
                json!({
                    "supported": r.supported,
                    "sup_phi": r.sup_phi,
                    "boundedness": criterion_json(&r.boundedness),
                    "compactness": compactness,
                }),
                r.boundedness.evidence,
            )
        }
        Command::BoundedBelowProbe { phi, map, r, epsilon, samples } => {
            let pr = bounded_below_probe(map, *r, *epsilon, *samples, config.seed, plan)?;
            (
                json!({"phi": phi.echo(), "r": r, "epsilon": epsilon, "samples": samples, "seed": config.seed}),
                json!({
                    "satisfied": pr.satisfied,
                    "fraction": pr.fraction,
                    "implied_constant": opt(pr.implied_constant),
                }),
                Vec::new(),
            )
        }
        Command::Catalog { name } => match name {
            None => (json!({}), json!({"entries": catalog_listing()}), Vec::new()),
            Some(n) => {
                let d = catalog::lookup(n)?;
                let descriptor: Value = serde_json::from_str(&d.to_json()).expect("descriptor json");
                let role = catalog::ENTRIES
                    .iter()
                    .find(|e| e.pattern.split(':').next() == n.split(':').next())
                    .map(|e| e.role);
                (json!({"name": n}), json!({"descriptor": descriptor, "role": role}), Vec::new())
            }
        },
    };
    Ok(Outcome {
        report: Report::new(name, parameters, plan, result, &evidence),
        text,
        definitive,
    })
}

/// Worker count from [`WORKERS_ENV`]; `None` means machine parallelism.
pub fn workers_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(s) if s.trim().is_empty() => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("{WORKERS_ENV} must be a positive integer, got `{s}`"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, CliError> {
        parse_config(std::iter::once("blochkit").chain(args.iter().copied()))
    }

    #[test]
    fn metric_config() {
        let c = parse(&["metric", "--z", "0.5,0", "--w", "-0.5,0"]).unwrap();
        match c.command {
            Command::Metric { z, w } => {
                assert_eq!(z.value(), Complex64::new(0.5, 0.0));
                assert_eq!(w.value(), Complex64::new(-0.5, 0.0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn range_errors_before_compute() {
        let e = parse(&["bounded-below-probe", "--phi", "identity", "--r", "0.5", "--epsilon", "0.5"]).unwrap_err();
        assert!(e.is_range() && e.to_string().contains("2*sqrt(3)/9"), "{e}");
        let e = parse(&["bloch-seminorm", "--func", "eta", "--alpha", "0"]).unwrap_err();
        assert!(e.is_range() && e.to_string().contains("alpha > 0"), "{e}");
        assert!(parse(&["metric", "--z", "1.5,0", "--w", "0,0"]).unwrap_err().is_range());
        assert!(parse(&["compop-verdict", "--phi", "identity", "--p", "1"]).unwrap_err().is_range());
        assert!(parse(&["sharpness-witness", "--epsilon", "3"]).unwrap_err().is_range());
        assert!(parse(&["hardy-norm", "--func", "eta", "--p", "-1"]).unwrap_err().is_range());
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(parse(&["metric", "--z", "0.1,0"]), Err(CliError::Usage(_))));
        assert!(matches!(parse(&["metric", "--q", "1"]), Err(CliError::Clap(_))));
        assert!(matches!(parse(&["hardy-norm", "--func", "nope"]), Err(CliError::Usage(_))));
    }

    #[test]
    fn complex_text() {
        assert_eq!(parse_complex("-0.5,0.25").unwrap(), Complex64::new(-0.5, 0.25));
        assert_eq!(parse_complex("0.3").unwrap(), Complex64::new(0.3, 0.0));
        assert!(parse_complex("a,b").is_err());
        assert!(parse_complex("1,2,3").is_err());
    }

    #[test]
    fn metric_text_has_fifteen_digits() {
        let c = parse(&["metric", "--z", "0.5,0", "--w", "-0.5,0"]).unwrap();
        let o = run(&c).unwrap();
        assert_eq!(o.text.unwrap(), "rho 0.800000000000000\nsigma 1.09861228866811\n");
    }
}
