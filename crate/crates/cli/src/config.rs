//! Run configuration: defaults, then an optional TOML file, then flags.

use crate::error::CliError;
use clap::{Args, Parser, ValueEnum};
use clifford_phase_core::geometry::TorusShape;
use clifford_phase_core::grid::GridSpec;
use clifford_phase_core::profile::DoubleWell;
use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Profile,
    Geometry,
    Willmore,
    Expansion,
    Residual,
    Project,
    Inner,
    Volume,
    Solve,
    Sweep,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Profile => "profile",
            Command::Geometry => "geometry",
            Command::Willmore => "willmore",
            Command::Expansion => "expansion",
            Command::Residual => "residual",
            Command::Project => "project",
            Command::Inner => "inner",
            Command::Volume => "volume",
            Command::Solve => "solve",
            Command::Sweep => "sweep",
            Command::All => "all",
        }
    }
}

/// What goes to stdout when no `--out` is given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// The JSON artifact.
    Json,
    /// One line per check.
    Text,
}

/// Fully resolved settings of one run; echoed into every artifact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    /// `quartic`, `sextic` or `custom` (with `well_coefficients`).
    pub well: String,
    /// Coefficients `p_k` of `W(u) = (1 − u²)² Σ p_k u^{2k}`.
    pub well_coefficients: Vec<f64>,
    /// `R/r` of the torus; `√2` is the Clifford torus.
    pub ratio: f64,
    pub eps: f64,
    pub eps_list: Vec<f64>,
    pub tau: f64,
    /// Fourier modes of surface fields.
    pub modes: usize,
    pub theta_nodes: usize,
    pub t_spacing: f64,
    pub half_width: Option<f64>,
    /// Outer update tolerance of the reduced solver.
    pub tol: f64,
    pub max_iter: usize,
    pub omega: f64,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub trace: Option<PathBuf>,
    pub matrix: Option<PathBuf>,
    pub format: Format,
    /// Record elapsed seconds; off by default so artifacts are reproducible.
    pub wall_clock: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: Command::All,
            well: "quartic".into(),
            well_coefficients: Vec::new(),
            ratio: SQRT_2,
            eps: 0.05,
            eps_list: vec![0.1, 0.07, 0.05, 0.035],
            tau: 0.8 * (SQRT_2 - 1.0),
            modes: 64,
            theta_nodes: GridSpec::default().theta_nodes,
            t_spacing: GridSpec::default().t_spacing,
            half_width: None,
            tol: 1e-8,
            max_iter: 30,
            omega: 1.0,
            out: None,
            csv: None,
            trace: None,
            matrix: None,
            format: Format::Json,
            wall_clock: false,
        }
    }
}

/// Keys accepted in a `--config` file; every one optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    well: Option<WellEntry>,
    shape: Option<String>,
    ratio: Option<f64>,
    eps: Option<f64>,
    eps_list: Option<Vec<f64>>,
    tau: Option<f64>,
    modes: Option<usize>,
    theta_nodes: Option<usize>,
    t_spacing: Option<f64>,
    half_width: Option<f64>,
    tol: Option<f64>,
    max_iter: Option<usize>,
    omega: Option<f64>,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
    trace: Option<PathBuf>,
    matrix: Option<PathBuf>,
    format: Option<Format>,
    wall_clock: Option<bool>,
}

/// `well = "quartic"` or `well = [0.25, -0.25, -0.25, 0.25]`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum WellEntry {
    Name(String),
    Coefficients(Vec<f64>),
}

#[derive(Debug, Parser)]
#[command(
    name = "clifford-phase",
    version,
    about = "Reproducible runs of the Clifford-torus phase-field layers"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// TOML file with run settings; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `quartic`, `sextic`, or comma-separated coefficients `p_k` of
    /// `W = (1 − u²)² Σ p_k u^{2k}`.
    #[arg(long)]
    pub well: Option<String>,
    /// `clifford` or `ratio=<R/r>`.
    #[arg(long)]
    pub shape: Option<String>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Comma-separated list of ε.
    #[arg(long, value_delimiter = ',')]
    pub eps_list: Option<Vec<f64>>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub modes: Option<usize>,
    #[arg(long)]
    pub theta_nodes: Option<usize>,
    #[arg(long)]
    pub t_spacing: Option<f64>,
    #[arg(long)]
    pub half_width: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub omega: Option<f64>,
    /// Path of the JSON artifact (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Path of the CSV curve written by the command.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Path of the JSON-lines iteration trace (`solve`).
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Path of the dense operator dump (`willmore`).
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Record elapsed wall-clock seconds in the artifact.
    #[arg(long)]
    pub wall_clock: bool,
}

fn parse_shape(text: &str) -> Result<f64, CliError> {
    if text == "clifford" {
        return Ok(SQRT_2);
    }
    text.strip_prefix("ratio=")
        .and_then(|r| r.parse::<f64>().ok())
        .ok_or_else(|| {
            CliError::Usage(format!(
                "shape must be `clifford` or `ratio=<R/r>`, got `{text}`"
            ))
        })
}

fn apply_well(cfg: &mut RunConfig, entry: WellEntry) -> Result<(), CliError> {
    match entry {
        WellEntry::Name(name) if name == "quartic" || name == "sextic" => {
            cfg.well = name;
            cfg.well_coefficients.clear();
        }
        WellEntry::Name(list) => {
            let coeffs = list
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Usage(format!("unknown well `{list}`")))?;
            return apply_well(cfg, WellEntry::Coefficients(coeffs));
        }
        WellEntry::Coefficients(coeffs) => {
            cfg.well = "custom".into();
            cfg.well_coefficients = coeffs;
        }
    }
    Ok(())
}

fn read_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    toml::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {}", path.display(), e.message())))
}

impl RunConfig {
    /// Defaults, overridden by the `--config` file, overridden by flags.
    pub fn resolve(command: Command, flags: Flags) -> Result<Self, CliError> {
        let mut cfg = RunConfig {
            command,
            ..Default::default()
        };
        if let Some(path) = &flags.config {
            let file = read_file(path)?;
            if let Some(w) = file.well {
                apply_well(&mut cfg, w)?;
            }
            if let Some(s) = file.shape {
                cfg.ratio = parse_shape(&s)?;
            }
            set(&mut cfg.ratio, file.ratio);
            set(&mut cfg.eps, file.eps);
            set(&mut cfg.eps_list, file.eps_list);
            set(&mut cfg.tau, file.tau);
            set(&mut cfg.modes, file.modes);
            set(&mut cfg.theta_nodes, file.theta_nodes);
            set(&mut cfg.t_spacing, file.t_spacing);
            cfg.half_width = file.half_width.or(cfg.half_width);
            set(&mut cfg.tol, file.tol);
            set(&mut cfg.max_iter, file.max_iter);
            set(&mut cfg.omega, file.omega);
            cfg.out = file.out.or(cfg.out);
            cfg.csv = file.csv.or(cfg.csv);
            cfg.trace = file.trace.or(cfg.trace);
            cfg.matrix = file.matrix.or(cfg.matrix);
            set(&mut cfg.format, file.format);
            set(&mut cfg.wall_clock, file.wall_clock);
        }
        if let Some(w) = flags.well {
            apply_well(&mut cfg, WellEntry::Name(w))?;
        }
        if let Some(s) = flags.shape {
            cfg.ratio = parse_shape(&s)?;
        }
        set(&mut cfg.eps, flags.eps);
        set(&mut cfg.eps_list, flags.eps_list);
        set(&mut cfg.tau, flags.tau);
        set(&mut cfg.modes, flags.modes);
        set(&mut cfg.theta_nodes, flags.theta_nodes);
        set(&mut cfg.t_spacing, flags.t_spacing);
        cfg.half_width = flags.half_width.or(cfg.half_width);
        set(&mut cfg.tol, flags.tol);
        set(&mut cfg.max_iter, flags.max_iter);
        set(&mut cfg.omega, flags.omega);
        cfg.out = flags.out.or(cfg.out);
        cfg.csv = flags.csv.or(cfg.csv);
        cfg.trace = flags.trace.or(cfg.trace);
        cfg.matrix = flags.matrix.or(cfg.matrix);
        set(&mut cfg.format, flags.format);
        cfg.wall_clock |= flags.wall_clock;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let positive = |name: &str, x: f64| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(CliError::Usage(format!(
                    "`{name}` must be positive, got {x}"
                )))
            }
        };
        positive("eps", self.eps)?;
        positive("tau", self.tau)?;
        positive("t_spacing", self.t_spacing)?;
        positive("tol", self.tol)?;
        positive("ratio", self.ratio)?;
        if let Some(h) = self.half_width {
            positive("half_width", h)?;
        }
        if self.eps_list.is_empty() {
            return Err(CliError::Usage("`eps_list` must not be empty".into()));
        }
        for e in &self.eps_list {
            positive("eps_list", *e)?;
        }
        if self.modes == 0 {
            return Err(CliError::Usage("`modes` must be at least 1".into()));
        }
        if self.theta_nodes < 3 || self.theta_nodes % 2 == 0 {
            return Err(CliError::Usage(
                "`theta_nodes` must be odd and at least 3".into(),
            ));
        }
        Ok(())
    }

    pub fn double_well(&self) -> Result<DoubleWell, CliError> {
        match self.well.as_str() {
            "quartic" => Ok(DoubleWell::quartic()),
            "sextic" => Ok(DoubleWell::sextic()),
            _ => DoubleWell::from_even_coefficients("custom", &self.well_coefficients)
                .map_err(|e| CliError::Usage(e.to_string())),
        }
    }

    pub fn shape(&self) -> Result<TorusShape, CliError> {
        TorusShape::with_ratio(self.ratio).map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn grid_spec(&self) -> GridSpec {
        GridSpec {
            theta_nodes: self.theta_nodes,
            t_spacing: self.t_spacing,
            half_width: self.half_width,
            ..GridSpec::default()
        }
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}
