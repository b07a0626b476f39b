//! Command-line front end.
//!
//! Couplings are given either as `--coupling` with 9 reals in row-major order
//! (`J_ij` multiplies `σ_i ⊗ σ_j`) or as `--diag` with 3 reals `jx,jy,jz`.
//! Values may be separated by commas or whitespace.
//!
//! CSV output starts with a `# config-hash: <sha256>` comment, then a header
//! row; numbers carry 17 significant digits. Exit codes: 0 on success, 2 for
//! usage errors, 3 for numerical failures.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::asymptotics::{high_t_hop_exact, high_t_leading};
use crate::closed_form::optimized_negativity;
use crate::error::Error;
use crate::linalg::{hermitian_eigen, RealMatrix3};
use crate::measures::{entanglement_report, necessary_condition};
use crate::optimizer::{
    boundary_beta, enhancement_curve, optimal_field, phase_diagram, verify_hypothesis1,
    EnhancementRow,
};
use crate::spin::{
    build_hamiltonian, canonicalize, interaction_hamiltonian, CanonicalCoupling, CouplingMatrix,
    LocalField, SignClass,
};
use crate::thermal::{gibbs_state, purity, InverseTemperature};

const LONG_ABOUT: &str = "\
Optimal local fields for the thermal entanglement of two coupled qubits.

Units: k_B = 1, so --temperature T and --beta 1/T are interchangeable, and both
are measured in the energy units of the coupling.";

#[derive(Debug, Parser)]
#[command(name = "qubit-thermal", version, about, long_about = LONG_ABOUT)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Reduce a coupling matrix to diagonal form by local rotations (JSON).
    Canonicalize {
        #[command(flatten)]
        coupling: CouplingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Optimal opposed-z field, negativity and purity over a temperature grid.
    Optimize {
        #[command(flatten)]
        coupling: CouplingArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Boundary temperature between the zero-field and finite-field phases.
    Boundary {
        #[command(flatten)]
        coupling: CouplingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Boundary temperature over a grid of (jx/|jz|, jy/|jz|), unit spectral norm.
    PhaseDiagram {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = ClassArg::Afm)]
        class: ClassArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare high-temperature asymptotes with the exact optimum.
    AsymptoteCompare {
        #[command(flatten)]
        coupling: CouplingArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Multi-start search over all six field components against the opposed-z optimum (JSON).
    VerifyHypothesis {
        #[command(flatten)]
        coupling: CouplingArgs,
        #[command(flatten)]
        temperature: TemperatureArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Entanglement measures of one Gibbs state (JSON).
    Measure {
        #[command(flatten)]
        coupling: CouplingArgs,
        #[command(flatten)]
        temperature: TemperatureArgs,
        /// Local fields `h1x,h1y,h1z,h2x,h2y,h2z`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "h")]
        field: Option<String>,
        /// Opposed z fields `(0, 0, h)` and `(0, 0, -h)`.
        #[arg(long, allow_hyphen_values = true)]
        h: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CouplingArgs {
    /// Full coupling, 9 reals row-major.
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "diag",
        conflicts_with = "diag"
    )]
    pub coupling: Option<String>,
    /// Diagonal coupling `jx,jy,jz`.
    #[arg(long, allow_hyphen_values = true)]
    pub diag: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TemperatureArgs {
    #[arg(long, required_unless_present = "beta", conflicts_with = "beta")]
    pub temperature: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RangeArgs {
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_points: Option<usize>,
    /// Grid spacing; linear for `optimize` and logarithmic for `asymptote-compare` by default.
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GridArgs {
    #[arg(long, default_value_t = 1.0)]
    pub grid_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub grid_max: f64,
    #[arg(long, default_value_t = 0.5)]
    pub grid_step: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassArg {
    Afm,
    Fm,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::InvalidBeta(_) | Error::NotCanonical(_) => {
                CliError::Usage(e.to_string())
            }
            e => CliError::Numerical(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// Parses comma- or whitespace-separated reals; accepts the Unicode minus sign.
pub fn parse_reals(s: &str) -> CliResult<Vec<f64>> {
    s.replace('\u{2212}', "-")
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .or_else(|_| usage(format!("not a number: {t:?}")))
        })
        .collect()
}

impl CouplingArgs {
    pub fn matrix(&self) -> CliResult<CouplingMatrix> {
        let (text, n) = match (&self.coupling, &self.diag) {
            (Some(c), _) => (c, 9),
            (None, Some(d)) => (d, 3),
            (None, None) => return usage("one of --coupling or --diag is required"),
        };
        let v = parse_reals(text)?;
        if v.len() != n {
            return usage(format!("expected {n} values, got {}", v.len()));
        }
        Ok(CouplingMatrix::from_slice(&v)?)
    }

    /// Canonical form, with a warning if the input was not already canonical.
    pub fn canonical(&self) -> CliResult<(CanonicalCoupling, Option<String>)> {
        let j = self.matrix()?;
        let m = j.matrix();
        let diagonal = (0..3).all(|r| (0..3).all(|c| r == c || m[(r, c)] == 0.0));
        if diagonal {
            if let Ok(c) = CanonicalCoupling::from_diagonal(m[(0, 0)], m[(1, 1)], m[(2, 2)]) {
                return Ok((c, None));
            }
        }
        let c = canonicalize(&j);
        let warning = format!(
            "input coupling is not canonical; using canonical form ({:e}, {:e}, {:e})",
            c.jx, c.jy, c.jz
        );
        Ok((c, Some(warning)))
    }
}

impl TemperatureArgs {
    pub fn beta(&self) -> CliResult<InverseTemperature> {
        match (self.temperature, self.beta) {
            (Some(t), None) => Ok(InverseTemperature::from_temperature(t)?),
            (None, Some(b)) => Ok(InverseTemperature::new(b)?),
            _ => usage("give exactly one of --temperature or --beta"),
        }
    }
}

impl RangeArgs {
    fn temperatures(&self, default: (f64, f64, usize, Spacing)) -> CliResult<Vec<f64>> {
        let lo = self.t_min.unwrap_or(default.0);
        let hi = self.t_max.unwrap_or(default.1);
        let n = self.t_points.unwrap_or(default.2);
        let spacing = self.spacing.unwrap_or(default.3);
        if !(lo > 0.0 && hi.is_finite() && lo <= hi) || n == 0 {
            return usage(format!(
                "empty or invalid temperature range [{lo}, {hi}] with {n} points"
            ));
        }
        if n == 1 {
            return Ok(vec![lo]);
        }
        let f = |i: usize| i as f64 / (n - 1) as f64;
        Ok(match spacing {
            Spacing::Linear => (0..n).map(|i| lo + (hi - lo) * f(i)).collect(),
            Spacing::Log => (0..n)
                .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * f(i)).exp())
                .collect(),
        })
    }
}

impl GridArgs {
    fn values(&self) -> CliResult<Vec<f64>> {
        let (lo, hi, step) = (self.grid_min, self.grid_max, self.grid_step);
        if !(step > 0.0 && lo.is_finite() && hi.is_finite() && lo <= hi) {
            return usage(format!("empty or invalid grid [{lo}, {hi}] step {step}"));
        }
        let n = ((hi - lo) / step + 1e-9).floor() as usize + 1;
        Ok((0..n).map(|i| lo + step * i as f64).collect())
    }
}

/// Round-trip exact decimal with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::Canonicalize { output, .. }
            | Command::Optimize { output, .. }
            | Command::Boundary { output, .. }
            | Command::PhaseDiagram { output, .. }
            | Command::AsymptoteCompare { output, .. }
            | Command::VerifyHypothesis { output, .. }
            | Command::Measure { output, .. } => output,
        }
    }

    /// SHA-256 over the serialized command and the crate version.
    pub fn config_hash(&self) -> String {
        let config = serde_json::to_string(self).expect("config serializes");
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        h.update(config.as_bytes());
        format!("{:x}", h.finalize())
    }
}

enum Report {
    Json(Value),
    Table {
        table: Table,
        json: Value,
        comments: Vec<String>,
    },
}

/// Runs a command and returns the text it would print.
pub fn execute(cmd: &Command) -> CliResult<String> {
    let format = cmd.output().format;
    let report = match cmd {
        Command::Canonicalize { coupling, .. } => {
            Report::Json(canonicalize_report(&coupling.matrix()?)?)
        }
        Command::Optimize {
            coupling, range, ..
        } => {
            let (c, warning) = coupling.canonical()?;
            let temps = range.temperatures((0.01, 10.0, 3000, Spacing::Linear))?;
            let rows = enhancement_curve(&c, &temps)?;
            optimize_report(&c, &rows, warning)
        }
        Command::Boundary { coupling, .. } => {
            let (c, warning) = coupling.canonical()?;
            let beta = boundary_beta(&c)?;
            Report::Json(json!({
                "jx": c.jx, "jy": c.jy, "jz": c.jz,
                "t_c": beta.map_or(0.0, |b| 1.0 / b),
                "beta_c": beta,
                "warning": warning,
            }))
        }
        Command::PhaseDiagram { grid, class, .. } => {
            let xs = grid.values()?;
            let class = match class {
                ClassArg::Afm => SignClass::Antiferromagnetic,
                ClassArg::Fm => SignClass::Ferromagnetic,
            };
            let points = phase_diagram(&xs, &xs, class)?;
            Report::Table {
                table: Table {
                    header: vec!["jx_over_abs_jz", "jy_over_abs_jz", "t_c"],
                    rows: points
                        .iter()
                        .map(|p| {
                            vec![
                                fmt_f64(p.jx_over_abs_jz),
                                fmt_f64(p.jy_over_abs_jz),
                                fmt_f64(p.t_c),
                            ]
                        })
                        .collect(),
                },
                json: serde_json::to_value(&points).expect("serializable"),
                comments: vec![format!("class: {class}")],
            }
        }
        Command::AsymptoteCompare {
            coupling, range, ..
        } => {
            let (c, warning) = coupling.canonical()?;
            let temps = range.temperatures((1.0, 1000.0, 61, Spacing::Log))?;
            asymptote_report(&c, &temps, warning)?
        }
        Command::VerifyHypothesis {
            coupling,
            temperature,
            seed,
            restarts,
            ..
        } => {
            let r = verify_hypothesis1(&coupling.matrix()?, temperature.beta()?, *restarts, *seed)?;
            Report::Json(serde_json::to_value(r).expect("serializable"))
        }
        Command::Measure {
            coupling,
            temperature,
            field,
            h,
            ..
        } => {
            let fields = match (field, h) {
                (Some(f), _) => {
                    let v = parse_reals(f)?;
                    let p: [f64; 6] = v.try_into().or_else(|v: Vec<f64>| {
                        usage(format!("--field needs 6 values, got {}", v.len()))
                    })?;
                    LocalField::from_components(p)
                }
                (None, Some(h)) => LocalField::opposed_z(*h),
                (None, None) => LocalField::zero(),
            };
            let g = gibbs_state(
                &build_hamiltonian(&coupling.matrix()?, &fields),
                temperature.beta()?,
            )?;
            let r = entanglement_report(&g.rho)?;
            Report::Json(json!({
                "beta": g.beta,
                "fields": fields.components(),
                "negativity": r.negativity,
                "concurrence": r.concurrence,
                "pi": r.pi,
                "min_pt_eigenvalue": r.min_pt_eigenvalue,
                "purity": purity(&g.rho),
                "necessary_condition": necessary_condition(&g.rho),
            }))
        }
    };

    let hash = cmd.config_hash();
    match (report, format) {
        (Report::Json(v), Some(Format::Csv)) => {
            let _ = v;
            usage("this command only produces JSON")
        }
        (Report::Json(mut v), _) | (Report::Table { json: mut v, .. }, Some(Format::Json)) => {
            if let Value::Object(m) = &mut v {
                m.insert("config_hash".into(), hash.into());
            } else {
                v = json!({ "config_hash": hash, "rows": v });
            }
            Ok(serde_json::to_string_pretty(&v).expect("serializable") + "\n")
        }
        (
            Report::Table {
                table, comments, ..
            },
            _,
        ) => {
            let mut s = format!("# config-hash: {hash}\n");
            for c in comments {
                writeln!(s, "# {c}").unwrap();
            }
            writeln!(s, "{}", table.header.join(",")).unwrap();
            for row in table.rows {
                writeln!(s, "{}", row.join(",")).unwrap();
            }
            Ok(s)
        }
    }
}

/// Executes the parsed command line, writing to `--out` or stdout.
pub fn run(cli: &Cli) -> CliResult<()> {
    let text = execute(&cli.command)?;
    match &cli.command.output().out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn rows3(m: &RealMatrix3) -> [[f64; 3]; 3] {
    m.0
}

fn canonicalize_report(j: &CouplingMatrix) -> CliResult<Value> {
    let c = canonicalize(j);
    let before = hermitian_eigen(&interaction_hamiltonian(j))?.values;
    let after = hermitian_eigen(&interaction_hamiltonian(&c.coupling_matrix()))?.values;
    let spectrum_residual = before
        .iter()
        .zip(&after)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let rebuilt = c.r1 * *j.matrix() * c.r2.transpose();
    let reconstruction_residual = rebuilt.max_abs_diff(&RealMatrix3::from_diagonal(c.values()));
    Ok(json!({
        "jx": c.jx, "jy": c.jy, "jz": c.jz,
        "sign_class": c.sign_class(),
        "r1": rows3(&c.r1),
        "r2": rows3(&c.r2),
        "det_r1": c.r1.det(),
        "det_r2": c.r2.det(),
        "spectrum_residual": spectrum_residual,
        "reconstruction_residual": reconstruction_residual,
    }))
}

fn optimize_report(
    c: &CanonicalCoupling,
    rows: &[EnhancementRow],
    warning: Option<String>,
) -> Report {
    let header = vec![
        "T",
        "h_op",
        "N_op",
        "N_zero_field",
        "enhancement",
        "purity_op",
        "purity_zero_field",
        "phase",
        "dN_dT",
        "d2N_dT2",
    ];
    let table_rows = rows
        .iter()
        .map(|r| {
            let mut v: Vec<String> = [
                r.t,
                r.h_op,
                r.n_op,
                r.n_zero_field,
                r.enhancement,
                r.purity_op,
            ]
            .into_iter()
            .chain([r.purity_zero_field])
            .map(fmt_f64)
            .collect();
            v.push(r.phase.to_string());
            v.push(fmt_f64(r.dn_dt));
            v.push(fmt_f64(r.d2n_dt2));
            v
        })
        .collect();
    let mut comments = vec![format!("coupling: {:e},{:e},{:e}", c.jx, c.jy, c.jz)];
    comments.extend(warning.iter().map(|w| format!("warning: {w}")));
    Report::Table {
        table: Table {
            header,
            rows: table_rows,
        },
        json: json!({ "jx": c.jx, "jy": c.jy, "jz": c.jz, "warning": warning, "rows": rows }),
        comments,
    }
}

fn asymptote_report(
    c: &CanonicalCoupling,
    temps: &[f64],
    warning: Option<String>,
) -> CliResult<Report> {
    let header = vec![
        "T",
        "h_exact",
        "h_lambert",
        "h_leading",
        "N_exact",
        "N_lambert",
        "N_leading",
        "h_lambert_ratio",
        "h_leading_ratio",
        "N_lambert_ratio",
        "N_leading_ratio",
        "N_at_h_lambert_ratio",
        "high_t_regime",
    ];
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for &t in temps {
        let beta = InverseTemperature::from_temperature(t)?;
        let exact = optimal_field(c, beta)?;
        let lambert = high_t_hop_exact(c.jx, c.jy, beta).ok();
        let leading = high_t_leading(c.jx, c.jy, beta).ok();
        let ratio = |x: Option<f64>, y: f64| x.map(|x| x / y);
        let n_at = lambert.map(|a| optimized_negativity(c, a.h_op, beta) / exact.n_op);
        let cols: [Option<f64>; 10] = [
            Some(exact.h_op),
            lambert.map(|a| a.h_op),
            leading.map(|a| a.h_op),
            Some(exact.n_op),
            lambert.map(|a| a.n_op),
            leading.map(|a| a.n_op),
            ratio(lambert.map(|a| a.h_op), exact.h_op),
            ratio(leading.map(|a| a.h_op), exact.h_op),
            ratio(lambert.map(|a| a.n_op), exact.n_op),
            ratio(leading.map(|a| a.n_op), exact.n_op),
        ];
        let regime = lambert.or(leading).is_some_and(|a| a.valid);
        let mut row = vec![fmt_f64(t)];
        row.extend(
            cols.iter()
                .chain([&n_at])
                .map(|v| v.map_or_else(|| "invalid".to_string(), fmt_f64)),
        );
        row.push(regime.to_string());
        rows.push(row);
        let mut obj = serde_json::Map::new();
        obj.insert("T".into(), t.into());
        for (name, v) in header[1..12].iter().zip(cols.iter().chain([&n_at])) {
            obj.insert(
                (*name).into(),
                v.map_or(Value::from("invalid"), Value::from),
            );
        }
        obj.insert("high_t_regime".into(), regime.into());
        json_rows.push(Value::Object(obj));
    }
    let mut comments = vec![format!("coupling: {:e},{:e},{:e}", c.jx, c.jy, c.jz)];
    comments.extend(warning.iter().map(|w| format!("warning: {w}")));
    Ok(Report::Table {
        table: Table { header, rows },
        json: json!({ "jx": c.jx, "jy": c.jy, "jz": c.jz, "warning": warning, "rows": json_rows }),
        comments,
    })
}
