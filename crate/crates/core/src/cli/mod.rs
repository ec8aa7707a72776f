//! Command-line front end: configuration, `eval`, `check`, `modes` and
//! `pairing`.

pub mod suites;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use thiserror::Error;

use crate::expr::{eval, parse, Env, ExprError, FockEnv, Value};
use crate::fock::{FockError, FockOperator, FockRep};
use crate::kleingordon::{sigma_form, wick_form, KGConfig, KgError, KgModeSet};
use crate::symalg::{format_element, GaussRational, ModeSpace, PairingForm, Scalar};
pub use suites::{CheckLine, Suite, SuiteError};

/// Environment variable naming the default configuration file.
pub const CONFIG_ENV: &str = "STARFIELD_CONFIG";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarForm {
    Sigma,
    Wick,
    /// TSV file: a header line of labels, then one row of exact entries per label.
    Custom(PathBuf),
}

impl StarForm {
    fn parse(s: &str) -> StarForm {
        match s {
            "sigma" => StarForm::Sigma,
            "wick" => StarForm::Wick,
            path => StarForm::Custom(PathBuf::from(path)),
        }
    }
}

impl fmt::Display for StarForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarForm::Sigma => f.write_str("sigma"),
            StarForm::Wick => f.write_str("wick"),
            StarForm::Custom(p) => write!(f, "{}", p.display()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub mass: f64,
    pub length: f64,
    pub kmax: i32,
    pub ncap: u32,
    pub tolerance: f64,
    pub trials: u32,
    pub seed: u64,
    pub star_form: StarForm,
    pub max_degree: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mass: 1.0,
            length: 2.0 * std::f64::consts::PI,
            kmax: 1,
            ncap: 6,
            tolerance: 1e-9,
            trials: 100,
            seed: 1,
            star_form: StarForm::Sigma,
            max_degree: 2,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}:{line}: {message}")]
    Syntax { path: String, line: usize, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid value for `{key}`: {message}")]
    Value { key: String, message: String },
    #[error(transparent)]
    Field(#[from] KgError),
}

impl RunConfig {
    /// Sets one `key = value` pair.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
        where
            T::Err: fmt::Display,
        {
            value.parse().map_err(|e: T::Err| ConfigError::Value { key: key.into(), message: e.to_string() })
        }
        match key {
            "mass" => self.mass = num(key, value)?,
            "L" | "length" => self.length = num(key, value)?,
            "kmax" => self.kmax = num(key, value)?,
            "Ncap" | "ncap" => self.ncap = num(key, value)?,
            "tolerance" => self.tolerance = num(key, value)?,
            "trials" => self.trials = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "star_form" => self.star_form = StarForm::parse(value),
            "max_degree" => self.max_degree = num(key, value)?,
            _ => return Err(ConfigError::Value { key: key.into(), message: "unknown key".into() }),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str, origin: &str) -> Result<(), ConfigError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Syntax {
                    path: origin.into(),
                    line: n + 1,
                    message: "expected `key = value`".into(),
                });
            };
            self.set(key.trim(), value.trim()).map_err(|e| ConfigError::Syntax {
                path: origin.into(),
                line: n + 1,
                message: e.to_string(),
            })?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io { path: path.display().to_string(), message: e.to_string() })?;
        self.apply_text(&text, &path.display().to_string())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |key: &str, message: &str| Err(ConfigError::Value { key: key.into(), message: message.into() });
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return bad("tolerance", "must be positive");
        }
        if self.trials == 0 {
            return bad("trials", "must be at least 1");
        }
        self.kg_config()?;
        Ok(())
    }

    pub fn kg_config(&self) -> Result<KGConfig, KgError> {
        KGConfig::new(self.mass, self.length, self.kmax)
    }
}

#[derive(Debug, Parser)]
#[command(name = "starfield", version, about = "Star products, Poisson brackets and Fock-space orderings for a free scalar field")]
pub struct Cli {
    /// Configuration file (default: $STARFIELD_CONFIG).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    /// Circle length.
    #[arg(long = "L", alias = "length", global = true)]
    pub length: Option<f64>,
    #[arg(long, global = true)]
    pub kmax: Option<i32>,
    /// Occupation cap of the Fock truncation.
    #[arg(long = "Ncap", alias = "ncap", global = true)]
    pub ncap: Option<u32>,
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[arg(long, global = true)]
    pub trials: Option<u32>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// `sigma`, `wick`, or a path to a TSV pairing.
    #[arg(long = "star-form", global = true)]
    pub star_form: Option<String>,
    #[arg(long = "max-degree", global = true)]
    pub max_degree: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression.
    Eval { expr: String },
    /// Run a verification suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Print the mode table.
    Modes,
    /// Print the active pairing matrix as TSV.
    Pairing,
}

impl Cli {
    /// Defaults, then the configuration file, then flags.
    pub fn run_config(&self, env_config: Option<PathBuf>) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = self.config.clone().or(env_config) {
            cfg.apply_file(&path)?;
        }
        if let Some(v) = self.mass {
            cfg.mass = v;
        }
        if let Some(v) = self.length {
            cfg.length = v;
        }
        if let Some(v) = self.kmax {
            cfg.kmax = v;
        }
        if let Some(v) = self.ncap {
            cfg.ncap = v;
        }
        if let Some(v) = self.tolerance {
            cfg.tolerance = v;
        }
        if let Some(v) = self.trials {
            cfg.trials = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = &self.star_form {
            cfg.star_form = StarForm::parse(v);
        }
        if let Some(v) = self.max_degree {
            cfg.max_degree = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Kg(#[from] KgError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error("custom pairing {path}: {message}")]
    Pairing { path: String, message: String },
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Suite(SuiteError::Guard { .. })
            | CliError::Suite(SuiteError::Fock(FockError::GuardViolation { .. }))
            | CliError::Fock(FockError::GuardViolation { .. }) => EXIT_GUARD,
            _ => EXIT_ERROR,
        }
    }
}

/// Reads a custom pairing: labels on the first line, then the rows.
pub fn read_custom_form(path: &Path) -> Result<(ModeSpace, PairingForm<GaussRational>), CliError> {
    let err = |message: String| CliError::Pairing { path: path.display().to_string(), message };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let header = lines.next().ok_or_else(|| err("empty file".into()))?;
    let modes = ModeSpace::new(header.split_whitespace()).map_err(|e| err(e.to_string()))?;
    let mut rows = Vec::new();
    for line in lines {
        let row = line
            .split_whitespace()
            .map(|t| GaussRational::parse_coeff(t).ok_or_else(|| err(format!("bad entry `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != modes.dim() {
            return Err(err(format!("row {} has {} entries, expected {}", rows.len() + 1, row.len(), modes.dim())));
        }
        rows.push(row);
    }
    let form = PairingForm::new(path.display().to_string(), rows).map_err(|e| err(e.to_string()))?;
    Ok((modes, form))
}

struct CoeffText<'a, S>(&'a S);

impl<S: Scalar> fmt::Display for CoeffText<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_coeff(f)
    }
}

/// TSV rendering with a header row and a label column.
pub fn pairing_table<S: Scalar>(modes: &ModeSpace, form: &PairingForm<S>) -> String {
    let mut out = String::from(form.name());
    for l in modes.labels() {
        out.push('\t');
        out.push_str(l);
    }
    out.push('\n');
    for (r, l) in modes.labels().iter().enumerate() {
        out.push_str(l);
        for s in 0..form.dim() {
            out.push_str(&format!("\t{}", CoeffText(form.get(r, s))));
        }
        out.push('\n');
    }
    out
}

/// One-line description of an operator value.
pub fn operator_summary(op: &FockOperator) -> String {
    let dim = op.dim();
    let diag = op.get(0, 0);
    let scalar = (0..dim).all(|r| op.row(r).iter().all(|&(c, v)| c == r && v == diag));
    if scalar && diag == Complex64::new(1.0, 0.0) {
        return format!("identity (dim {dim})");
    }
    if scalar {
        return format!("{} * identity (dim {dim})", CoeffText(&diag));
    }
    format!(
        "operator (dim {dim}, nnz {}, formal degree {}, vacuum expectation {})",
        op.nnz(),
        op.formal_degree(),
        CoeffText(&op.get(0, 0))
    )
}

fn render<S: Scalar>(value: Value<S>, modes: &ModeSpace) -> String {
    match value {
        Value::Algebra(a) => format_element(&a, modes),
        Value::Operator(op) => operator_summary(&op),
    }
}

struct KgContext {
    set: KgModeSet,
    rep: FockRep,
    form: PairingForm<Complex64>,
}

fn kg_context(cfg: &RunConfig, wick: bool) -> Result<KgContext, CliError> {
    let kg = cfg.kg_config()?;
    let set = KgModeSet::full(&kg);
    let rep = FockRep::new(&kg, cfg.ncap)?;
    let form = if wick { wick_form(&set, &kg) } else { sigma_form(&set, &kg)? };
    Ok(KgContext { set, rep, form })
}

fn cmd_eval(src: &str, cfg: &RunConfig) -> Result<String, CliError> {
    let ast = parse(src)?;
    match &cfg.star_form {
        StarForm::Custom(path) => {
            let (modes, form) = read_custom_form(path)?;
            let env = Env { modes: &modes, form: &form, fock: None };
            Ok(render(eval(&ast, &env)?, &modes))
        }
        other => {
            let ctx = kg_context(cfg, *other == StarForm::Wick)?;
            let env = Env {
                modes: ctx.set.space(),
                form: &ctx.form,
                fock: Some(FockEnv { set: &ctx.set, rep: &ctx.rep }),
            };
            Ok(render(eval(&ast, &env)?, ctx.set.space()))
        }
    }
}

fn cmd_pairing(cfg: &RunConfig) -> Result<String, CliError> {
    match &cfg.star_form {
        StarForm::Custom(path) => {
            let (modes, form) = read_custom_form(path)?;
            Ok(pairing_table(&modes, &form))
        }
        other => {
            let ctx = kg_context(cfg, *other == StarForm::Wick)?;
            Ok(pairing_table(ctx.set.space(), &ctx.form))
        }
    }
}

/// Report text of a suite and whether every line passed.
pub fn check_report(suite: Suite, cfg: &RunConfig) -> Result<(String, bool), CliError> {
    let lines = suites::run_suite(suite, cfg)?;
    let mut text = String::new();
    for l in &lines {
        text.push_str(&l.to_string());
        text.push('\n');
    }
    Ok((text, lines.iter().all(CheckLine::ok)))
}

/// Runs the command line with an explicit default configuration path and
/// returns the exit status.
pub fn run_with<I, T>(args: I, env_config: Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = cli.run_config(env_config).map_err(CliError::from).and_then(|cfg| match &cli.command {
        Command::Eval { expr } => cmd_eval(expr, &cfg).map(|s| (s + "\n", true)),
        Command::Check { suite } => check_report(*suite, &cfg),
        Command::Modes => Ok((KgModeSet::full(&cfg.kg_config()?).table(&cfg.kg_config()?), true)),
        Command::Pairing => cmd_pairing(&cfg).map(|s| (s, true)),
    });
    match result {
        Ok((text, ok)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            if ok {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs with `$STARFIELD_CONFIG` as the default configuration path.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let env_config = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
    run_with(args, env_config, out, err)
}
