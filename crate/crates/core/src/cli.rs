//! Command-line front end: `expand`, `verify`, `bell`, `logsine` and `pi`.
//!
//! Exit codes: 0 on success, 1 when a verification fails or a numeric
//! routine does not converge, 2 on a usage error.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::combinatorics::{bell_args, bell_partial, bell_special_value};
use crate::error::Error;
use crate::expansions::{ExpansionFamily, ExpansionSpec};
use crate::identities::{run_all, Counterexample, IdentityReport, Status, SweepBounds, SweepContext, SweepPlan, IDENTITY_IDS};
use crate::logsine::{logsine_arcsin_form, logsine_quadrature, logsine_series, pi_power_partial_sums, LogsineRequest, LogsineValue, Method};

pub const ORDER_ENV: &str = "SERIES_FORGE_ORDER";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

/// Defaults that apply when a flag is not given. Precedence, lowest first:
/// built-in values, the config file, `SERIES_FORGE_ORDER`, flags.
#[derive(Clone, Debug, PartialEq)]
pub struct CliConfig {
    pub default_order: usize,
    pub bounds: SweepBounds,
    pub format: Format,
    pub quad_tolerance: f64,
    pub series_terms: usize,
    pub pi_terms: usize,
    /// Largest parameter in the expansion oracle sweep of `verify --expansions`.
    pub expansion_param_max: u32,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            default_order: 20,
            bounds: SweepBounds::default(),
            format: Format::Json,
            quad_tolerance: 1e-12,
            series_terms: 40,
            pi_terms: 40,
            expansion_param_max: 6,
        }
    }
}

impl CliConfig {
    /// Applies `key = value` lines. Blank lines and `#` comments are skipped.
    /// Sweep bounds use the `bound.` prefix, e.g. `bound.q_max = 20`.
    pub fn apply_file_contents(&mut self, text: &str) -> Result<(), String> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key = value", lineno + 1))?;
            self.set(key.trim(), value.trim()).map_err(|e| format!("config line {}: {e}", lineno + 1))?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let bad = |what: &str| format!("invalid {what} {value:?}");
        match key {
            "order" => self.default_order = value.parse().map_err(|_| bad("order"))?,
            "format" => self.format = value.parse()?,
            "tol" => self.quad_tolerance = value.parse().map_err(|_| bad("tolerance"))?,
            "terms" => self.series_terms = value.parse().map_err(|_| bad("term count"))?,
            "pi_terms" => self.pi_terms = value.parse().map_err(|_| bad("term count"))?,
            "expansion_param_max" => self.expansion_param_max = value.parse().map_err(|_| bad("parameter"))?,
            _ => match key.strip_prefix("bound.") {
                Some(name) => {
                    let v = value.parse().map_err(|_| bad("bound"))?;
                    self.bounds.set(name, v).map_err(|e| e.to_string())?;
                }
                None => return Err(format!("unknown config key {key:?}")),
            },
        }
        Ok(())
    }

    pub fn load(path: Option<&Path>, env_order: Option<&str>) -> Result<Self, String> {
        let mut cfg = CliConfig::default();
        if let Some(p) = path {
            let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            cfg.apply_file_contents(&text)?;
        }
        if let Some(v) = env_order {
            cfg.default_order = v.trim().parse().map_err(|_| format!("{ORDER_ENV}={v:?} is not an order"))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.default_order < 4 {
            return Err(format!("default order must be at least 4, got {}", self.default_order));
        }
        if self.quad_tolerance.is_nan() || self.quad_tolerance <= 0.0 {
            return Err(format!("tolerance must be positive, got {}", self.quad_tolerance));
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "series-forge", version, about = "Exact inverse-trig power series, Bell values and logsine evaluation")]
pub struct Cli {
    /// Output format (default from config, else json).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// key = value config file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print Maclaurin coefficients of one expansion family.
    Expand(ExpandArgs),
    /// Run identity sweeps (and optionally expansion oracle sweeps).
    Verify(VerifyArgs),
    /// Closed-form Bell value 𝕓_{2n,k}, cross-checked against the partition sum.
    Bell(BellArgs),
    /// Evaluate the generalized logsine Ls_j^(k)(θ).
    Logsine(LogsineArgs),
    /// Partial sums of the (π/3)^m series.
    Pi(PiArgs),
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    /// One of: arcsin-pow, arcsin-pow-over-sqrt, arcsinh-pow, arcsinh-pow-over-sqrt,
    /// exp-arcsinh, gamma-arcsinh, arctan-pow, arctanh-pow, arccos-pow.
    pub family: String,
    /// Family parameter (power m or n).
    #[arg(long = "m", visible_alias = "n")]
    pub param: Option<u32>,
    #[arg(long)]
    pub order: Option<usize>,
    /// Also compare against the oracle built from the base series.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated identity ids; all of them when omitted.
    #[arg(long, value_delimiter = ',')]
    pub ids: Vec<String>,
    /// Sweep bound override, e.g. `--bound q_max=20`. Repeatable.
    #[arg(long = "bound")]
    pub bounds: Vec<String>,
    /// Add oracle sweeps for every expansion family.
    #[arg(long)]
    pub expansions: bool,
    /// Truncation order for the expansion sweeps.
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BellArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Quad,
    Arcsin,
    Series,
    All,
}

#[derive(Args, Debug)]
pub struct LogsineArgs {
    #[arg(long)]
    pub j: u32,
    #[arg(long)]
    pub k: u32,
    /// Angle in (0, π]; accepts `pi`, `pi/3`, `2pi/3` or a decimal.
    #[arg(long, value_parser = parse_theta, allow_hyphen_values = true)]
    pub theta: f64,
    /// Number of q-terms for the series route.
    #[arg(long)]
    pub terms: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "all")]
    pub method: MethodChoice,
}

#[derive(Args, Debug)]
pub struct PiArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub terms: Option<usize>,
}

/// Parses `pi`, `pi/3`, `2pi/3`, `2*pi/3` or a plain decimal.
pub fn parse_theta(s: &str) -> Result<f64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let t = t.replace('π', "pi");
    let num = |x: &str| x.parse::<f64>().map_err(|_| format!("cannot parse angle {s:?}"));
    let Some((pre, post)) = t.split_once("pi") else {
        return num(&t);
    };
    let pre = pre.strip_suffix('*').unwrap_or(pre);
    let scale = if pre.is_empty() { 1.0 } else { num(pre)? };
    let div = match post {
        "" => 1.0,
        p => num(p.strip_prefix('/').ok_or_else(|| format!("cannot parse angle {s:?}"))?)?,
    };
    Ok(scale * PI / div)
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Quadrature { .. } => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Reads `SERIES_FORGE_ORDER` from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let env_order = std::env::var(ORDER_ENV).ok();
    run_with_env(args, env_order.as_deref(), out, err)
}

pub fn run_with_env<I, T>(args: I, env_order: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut cfg = match CliConfig::load(cli.config.as_deref(), env_order) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    let result = match &cli.command {
        Command::Expand(a) => cmd_expand(a, &cfg),
        Command::Verify(a) => cmd_verify(a, &cfg),
        Command::Bell(a) => cmd_bell(a, &cfg),
        Command::Logsine(a) => cmd_logsine(a, &cfg),
        Command::Pi(a) => cmd_pi(a, &cfg),
    };
    match result {
        Ok((text, ok)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_FAILURE;
            }
            if ok {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

type Output = Result<(String, bool), Failure>;

fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn cmd_expand(a: &ExpandArgs, cfg: &CliConfig) -> Output {
    let family: ExpansionFamily = a.family.parse()?;
    let param = match (family.has_param(), a.param) {
        (false, Some(_)) => return Err(Failure::Usage(format!("{family} takes no parameter"))),
        (false, None) => 0,
        (true, Some(p)) => p,
        (true, None) => family.min_param().max(1),
    };
    let spec = ExpansionSpec::new(family, param, a.order.unwrap_or(cfg.default_order))?;
    let series = spec.theorem_series()?;
    let report = if a.verify { Some(spec.verify()?) } else { None };
    let ok = report.as_ref().is_none_or(|r| r.pass);
    let text = match cfg.format {
        Format::Json => {
            let mut v = json!({ "family": family.name(), "param": param });
            let obj = v.as_object_mut().expect("object literal");
            if let Value::Object(s) = series.to_json() {
                obj.extend(s);
            }
            if let Some(r) = &report {
                obj.insert("verification".into(), serde_json::to_value(r).expect("report serializes"));
            }
            to_json_text(&v)
        }
        Format::Csv => series.to_csv(),
        Format::Plain => {
            let mut s = String::new();
            let what = if family.has_param() { format!(", parameter {param}") } else { String::new() };
            let _ = writeln!(s, "{}{what}, order {}", family.describe(), spec.order);
            for (i, c) in series.rows() {
                if c != "0" {
                    let _ = writeln!(s, "t^{i}\t{c}");
                }
            }
            if let Some(r) = &report {
                let _ = writeln!(s, "{}", oracle_line(r.pass, r.first_mismatch.as_ref().map(|m| (m.index, &m.theorem, &m.oracle))));
            }
            s
        }
    };
    Ok((text, ok))
}

fn oracle_line(pass: bool, mismatch: Option<(usize, &String, &String)>) -> String {
    match (pass, mismatch) {
        (true, _) => "oracle: pass".into(),
        (false, Some((i, th, or))) => format!("oracle: FAIL at t^{i}: closed form {th}, oracle {or}"),
        (false, None) => "oracle: FAIL".into(),
    }
}

/// Oracle comparison for parameters `min..=max_param` of one family, as an
/// identity report.
pub fn expansion_sweep(family: ExpansionFamily, max_param: u32, order: usize) -> crate::Result<IdentityReport> {
    let params: Vec<u32> = if family.has_param() { (family.min_param()..=max_param).collect() } else { vec![0] };
    let mut first = None;
    for &p in &params {
        let r = ExpansionSpec::new(family, p, order)?.verify()?;
        if let Some(m) = r.first_mismatch {
            first = Some(Counterexample {
                params: format!("param={p}, index={}", m.index),
                lhs: m.theorem,
                rhs: m.oracle,
            });
            break;
        }
    }
    let swept_range = if family.has_param() {
        format!("{} ≤ param ≤ {max_param}, order {order}", family.min_param())
    } else {
        format!("order {order}")
    };
    Ok(IdentityReport {
        identity_id: format!("expansion:{}", family.name()),
        swept_range,
        status: if first.is_none() { Status::Pass } else { Status::Fail },
        cases_checked: params.len(),
        first_counterexample: first,
    })
}

fn cmd_verify(a: &VerifyArgs, cfg: &CliConfig) -> Output {
    let mut bounds = cfg.bounds.clone();
    for b in &a.bounds {
        let (k, v) = b
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--bound expects key=value, got {b:?}")))?;
        let v: u64 = v.trim().parse().map_err(|_| Failure::Usage(format!("bound {k} needs an integer, got {v:?}")))?;
        bounds.set(k.trim(), v)?;
    }
    let ids: Vec<String> = if a.ids.is_empty() && !a.expansions {
        IDENTITY_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        a.ids.clone()
    };
    if let Some(bad) = ids.iter().find(|id| !IDENTITY_IDS.contains(&id.as_str())) {
        return Err(Failure::Usage(format!("unknown identity id {bad:?}; known ids: {}", IDENTITY_IDS.join(", "))));
    }
    let mut reports = run_all(&SweepPlan { ids, bounds }, &SweepContext::default())?;
    if a.expansions {
        let order = a.order.unwrap_or(cfg.default_order);
        for f in ExpansionFamily::ALL {
            reports.push(expansion_sweep(f, cfg.expansion_param_max.max(f.min_param()), order)?);
        }
    }
    let ok = reports.iter().all(IdentityReport::passed);
    let text = match cfg.format {
        Format::Json => to_json_text(&serde_json::to_value(&reports).expect("reports serialize")),
        Format::Csv => {
            let mut s = String::from("identity_id,status,cases_checked,swept_range\n");
            for r in &reports {
                let status = if r.passed() { "pass" } else { "fail" };
                let _ = writeln!(s, "{},{status},{},\"{}\"", r.identity_id, r.cases_checked, r.swept_range);
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            for r in &reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{status} {} ({} cases; {})", r.identity_id, r.cases_checked, r.swept_range);
                if let Some(c) = &r.first_counterexample {
                    let _ = writeln!(s, "    at {}: lhs {} rhs {}", c.params, c.lhs, c.rhs);
                }
            }
            s
        }
    };
    Ok((text, ok))
}

fn cmd_bell(a: &BellArgs, cfg: &CliConfig) -> Output {
    let closed = bell_special_value(a.n, a.k)?;
    let args = bell_args(a.n, a.k)?;
    let partition = bell_partial(2 * a.n, a.k, &args.args)?;
    let ok = closed == partition;
    let status = if ok { "pass" } else { "fail" };
    let text = match cfg.format {
        Format::Json => to_json_text(&json!({
            "n": a.n,
            "k": a.k,
            "value": closed.to_string(),
            "partition_sum": partition.to_string(),
            "cross_check": status,
        })),
        Format::Csv => format!("n,k,value,partition_sum,cross_check\n{},{},{closed},{partition},{status}\n", a.n, a.k),
        Format::Plain => format!("b_{{{},{}}} = {closed}\ncross-check: {status}\n", 2 * a.n, a.k),
    };
    Ok((text, ok))
}

fn logsine_json(v: &LogsineValue) -> Value {
    json!({ "method": v.method.name(), "value": v.value, "est_error": v.est_error, "slow": v.slow })
}

fn cmd_logsine(a: &LogsineArgs, cfg: &CliConfig) -> Output {
    let req = LogsineRequest::new(a.j, a.k, a.theta)?
        .with_terms(a.terms.unwrap_or(cfg.series_terms))
        .with_tolerance(a.tol.unwrap_or(cfg.quad_tolerance));
    req.validate()?;
    let methods: Vec<Method> = match a.method {
        MethodChoice::Quad => vec![Method::Quad],
        MethodChoice::Arcsin => vec![Method::Arcsin],
        MethodChoice::Series => vec![Method::Series],
        // the series route needs k ≥ 1
        MethodChoice::All if a.k == 0 => vec![Method::Quad, Method::Arcsin],
        MethodChoice::All => vec![Method::Quad, Method::Arcsin, Method::Series],
    };
    let values = methods
        .iter()
        .map(|m| match m {
            Method::Quad => logsine_quadrature(&req),
            Method::Arcsin => logsine_arcsin_form(&req),
            Method::Series => logsine_series(&req),
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let text = match cfg.format {
        Format::Json => to_json_text(&json!({
            "j": a.j,
            "k": a.k,
            "theta": a.theta,
            "values": values.iter().map(logsine_json).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("method,value,est_error,slow\n");
            for v in &values {
                let _ = writeln!(s, "{},{:e},{:e},{}", v.method.name(), v.value, v.est_error, v.slow);
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            for v in &values {
                let flag = if v.slow { " (slow convergence)" } else { "" };
                let _ = writeln!(s, "{:<7} {:.15e}  est_error {:.1e}{flag}", v.method.name(), v.value, v.est_error);
            }
            s
        }
    };
    Ok((text, true))
}

fn cmd_pi(a: &PiArgs, cfg: &CliConfig) -> Output {
    let terms = a.terms.unwrap_or(cfg.pi_terms);
    if terms == 0 {
        return Err(Failure::Usage("--terms must be at least 1".into()));
    }
    let sums = pi_power_partial_sums(a.m, terms)?;
    let target = (PI / 3.0).powi(a.m as i32);
    let last = *sums.last().expect("terms ≥ 1");
    let text = match cfg.format {
        Format::Json => to_json_text(&json!({
            "m": a.m,
            "terms": terms,
            "partial_sums": sums,
            "value": last,
            "target": target,
            "error": (last - target).abs(),
        })),
        Format::Csv => {
            let mut s = String::from("terms,partial_sum,error\n");
            for (i, v) in sums.iter().enumerate() {
                let _ = writeln!(s, "{},{v:e},{:e}", i + 1, (v - target).abs());
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            for (i, v) in sums.iter().enumerate() {
                let _ = writeln!(s, "{:>4}  {v:.15}  {:.1e}", i + 1, (v - target).abs());
            }
            let _ = writeln!(s, "(pi/3)^{} = {target:.15}", a.m);
            s
        }
    };
    Ok((text, true))
}
