//! Sweep specification: built-in defaults, overridden by a TOML file,
//! overridden by command-line flags.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chiral_dicke::{CouplingPolar, FitSide, FitWindow, ModelParams};
use clap::{Parser, ValueEnum};
use serde::Deserialize;
use thiserror::Error;

use crate::axis::{Axis, AxisError, Param};

pub const THREADS_ENV: &str = "CHIRAL_DICKE_THREADS";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parsing {path}: {source}")]
    Toml {
        path: PathBuf,
        source: toml::de::Error,
    },
    #[error(transparent)]
    Axis(#[from] AxisError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Task {
    PhaseMap,
    SpectrumCut,
    CriticalLine,
    GapScaling,
    ExponentMap,
    EdCheck,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::PhaseMap => "phase_map",
            Task::SpectrumCut => "spectrum_cut",
            Task::CriticalLine => "critical_line",
            Task::GapScaling => "gap_scaling",
            Task::ExponentMap => "exponent_map",
            Task::EdCheck => "ed_check",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    Cartesian { g1: f64, g2: f64 },
    Polar { g: f64, phi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dispersive {
    /// `U` held fixed when `N` changes.
    U(f64),
    /// `U N` held fixed when `N` changes.
    Un(f64),
}

/// Model parameters in the coordinates the user gave them, so that sweeping
/// one coordinate leaves the others as specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseParams {
    pub omega_c: f64,
    pub omega_z: f64,
    pub coupling: Coupling,
    pub dispersive: Dispersive,
    pub n_atoms: u32,
}

impl Default for BaseParams {
    fn default() -> Self {
        Self {
            omega_c: 1.0,
            omega_z: 1.5,
            coupling: Coupling::Polar { g: 0.0, phi: FRAC_PI_4 },
            dispersive: Dispersive::U(0.0),
            n_atoms: 100,
        }
    }
}

impl BaseParams {
    /// `(g, phi)`, keeping `phi` when `g = 0`.
    pub fn polar(&self) -> (f64, f64) {
        match self.coupling {
            Coupling::Polar { g, phi } => (g, phi),
            Coupling::Cartesian { g1, g2 } => {
                let g = g1.hypot(g2);
                (g, if g == 0.0 { 0.0 } else { g2.atan2(g1) })
            }
        }
    }

    pub fn cartesian(&self) -> (f64, f64) {
        match self.coupling {
            Coupling::Cartesian { g1, g2 } => (g1, g2),
            Coupling::Polar { g, phi } => CouplingPolar { g, phi }.to_cartesian(),
        }
    }

    pub fn un(&self) -> f64 {
        match self.dispersive {
            Dispersive::U(u) => u * f64::from(self.n_atoms),
            Dispersive::Un(un) => un,
        }
    }

    /// `sqrt(omega_z (omega_c - U N / 2))`, the boundary radius.
    pub fn critical_coupling(&self) -> f64 {
        (self.omega_z * (self.omega_c - 0.5 * self.un())).max(0.0).sqrt()
    }

    pub fn set(&mut self, param: Param, value: f64) -> Result<(), String> {
        match param {
            Param::OmegaC => self.omega_c = value,
            Param::OmegaZ => self.omega_z = value,
            Param::G1 => self.coupling = Coupling::Cartesian { g1: value, g2: self.cartesian().1 },
            Param::G2 => self.coupling = Coupling::Cartesian { g1: self.cartesian().0, g2: value },
            Param::G => self.coupling = Coupling::Polar { g: value, phi: self.polar().1 },
            Param::Phi => self.coupling = Coupling::Polar { g: self.polar().0, phi: value },
            Param::GRel => {
                self.coupling = Coupling::Polar {
                    g: value * self.critical_coupling(),
                    phi: self.polar().1,
                }
            }
            Param::U => self.dispersive = Dispersive::U(value),
            Param::Un => self.dispersive = Dispersive::Un(value),
            Param::N => {
                if !(value >= 1.0 && value.fract() == 0.0 && value <= f64::from(u32::MAX)) {
                    return Err(format!("N must be a positive integer, got {value}"));
                }
                self.n_atoms = value as u32;
            }
        }
        Ok(())
    }

    pub fn model(&self) -> chiral_dicke::Result<ModelParams> {
        let b = ModelParams::builder()
            .omega_c(self.omega_c)
            .omega_z(self.omega_z)
            .atoms(self.n_atoms);
        let b = match self.coupling {
            Coupling::Cartesian { g1, g2 } => b.g1(g1).g2(g2),
            Coupling::Polar { g, phi } => b.polar(g, phi),
        };
        let b = match self.dispersive {
            Dispersive::U(u) => b.u(u),
            Dispersive::Un(un) => b.un(un),
        };
        b.build()
    }

    fn settings(&self, out: &mut Vec<(String, String)>) {
        out.push(("omega_c".into(), format!("{:?}", self.omega_c)));
        out.push(("omega_z".into(), format!("{:?}", self.omega_z)));
        match self.coupling {
            Coupling::Cartesian { g1, g2 } => {
                out.push(("g1".into(), format!("{g1:?}")));
                out.push(("g2".into(), format!("{g2:?}")));
            }
            Coupling::Polar { g, phi } => {
                out.push(("g".into(), format!("{g:?}")));
                out.push(("phi".into(), format!("{phi:?}")));
            }
        }
        match self.dispersive {
            Dispersive::U(u) => out.push(("U".into(), format!("{u:?}"))),
            Dispersive::Un(un) => out.push(("UN".into(), format!("{un:?}"))),
        }
        out.push(("N".into(), self.n_atoms.to_string()));
    }
}

/// Keys accepted in the TOML file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub omega_c: Option<f64>,
    pub omega_z: Option<f64>,
    pub g1: Option<f64>,
    pub g2: Option<f64>,
    pub g: Option<f64>,
    pub phi: Option<f64>,
    #[serde(rename = "U")]
    pub u: Option<f64>,
    #[serde(rename = "UN")]
    pub un: Option<f64>,
    #[serde(rename = "N")]
    pub n: Option<u32>,
    pub task: Option<Task>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
    pub axis1: Option<String>,
    pub axis2: Option<String>,
    pub phis: Option<Vec<f64>>,
    pub fit_lower: Option<f64>,
    pub fit_upper: Option<f64>,
    pub fit_points: Option<usize>,
    pub side: Option<String>,
    pub ed_atoms: Option<Vec<u32>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.into(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| ConfigError::Toml {
            path: path.into(),
            source,
        })
    }
}

#[derive(Debug, Clone, Parser, Default)]
#[command(name = "chiral-dicke", version, about = "Parameter sweeps for the chiral Dicke model")]
pub struct Cli {
    /// TOML file with base parameters and task options.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub task: Option<Task>,
    /// Output file; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (0 = all cores).
    #[arg(long, env = THREADS_ENV)]
    pub threads: Option<usize>,
    /// First sweep axis, `name:start:stop:count[:log]`.
    #[arg(long)]
    pub axis1: Option<String>,
    /// Second sweep axis, `name:start:stop:count[:log]`.
    #[arg(long)]
    pub axis2: Option<String>,

    #[arg(long)]
    pub omega_c: Option<f64>,
    #[arg(long)]
    pub omega_z: Option<f64>,
    #[arg(long)]
    pub g1: Option<f64>,
    #[arg(long)]
    pub g2: Option<f64>,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long)]
    pub phi: Option<f64>,
    #[arg(long = "U", alias = "u")]
    pub u: Option<f64>,
    #[arg(long = "UN", alias = "un")]
    pub un: Option<f64>,
    #[arg(long = "N", alias = "atoms")]
    pub n: Option<u32>,

    /// Coupling angles for spectrum_cut and gap_scaling, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub phis: Option<Vec<f64>>,
    #[arg(long)]
    pub fit_lower: Option<f64>,
    #[arg(long)]
    pub fit_upper: Option<f64>,
    #[arg(long)]
    pub fit_points: Option<usize>,
    /// Side of the boundary for gap fits: `normal` or `superradiant`.
    #[arg(long)]
    pub side: Option<String>,
    /// Atom numbers for ed_check, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub ed_atoms: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub task: Task,
    pub base: BaseParams,
    pub axis1: Option<Axis>,
    pub axis2: Option<Axis>,
    pub phis: Vec<f64>,
    pub window: FitWindow,
    pub side: FitSide,
    pub ed_atoms: Vec<u32>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub threads: usize,
}

pub const DEFAULT_PHIS: [f64; 5] = [0.0, FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8, FRAC_PI_2];

fn default_axes(task: Task) -> (Option<Axis>, Option<Axis>) {
    match task {
        Task::PhaseMap => (
            Some(Axis::linear(Param::G1, 0.0, 3.0, 200)),
            Some(Axis::linear(Param::G2, 0.0, 3.0, 200)),
        ),
        Task::SpectrumCut => (Some(Axis::linear(Param::GRel, 0.0, 2.5, 400)), None),
        Task::CriticalLine => (Some(Axis::linear(Param::Phi, 0.0, FRAC_PI_2, 400)), None),
        Task::GapScaling | Task::EdCheck => (None, None),
        Task::ExponentMap => (
            Some(Axis::linear(Param::Phi, 0.0, FRAC_PI_2, 200)),
            Some(Axis::linear(Param::OmegaZ, 0.5, 3.0, 200)),
        ),
    }
}

fn parse_side(s: &str) -> Result<FitSide, ConfigError> {
    match s {
        "normal" => Ok(FitSide::FromNormal),
        "superradiant" => Ok(FitSide::FromSuperradiant),
        other => Err(ConfigError::Invalid(format!(
            "side must be `normal` or `superradiant`, got `{other}`"
        ))),
    }
}

fn side_name(s: FitSide) -> &'static str {
    match s {
        FitSide::FromNormal => "normal",
        FitSide::FromSuperradiant => "superradiant",
    }
}

impl SweepSpec {
    /// Defaults, then `file`, then `cli`.
    pub fn resolve(cli: &Cli, file: &FileConfig) -> Result<Self, ConfigError> {
        let task = cli
            .task
            .or(file.task)
            .ok_or_else(|| ConfigError::Invalid("no task given (use --task or `task =` in the config)".into()))?;

        let mut base = BaseParams::default();
        for layer in [
            (file.omega_c, file.omega_z, file.g1, file.g2, file.g, file.phi, file.u, file.un, file.n),
            (cli.omega_c, cli.omega_z, cli.g1, cli.g2, cli.g, cli.phi, cli.u, cli.un, cli.n),
        ] {
            let (wc, wz, g1, g2, g, phi, u, un, n) = layer;
            if (g1.is_some() || g2.is_some()) && (g.is_some() || phi.is_some()) {
                return Err(ConfigError::Invalid("give couplings as g1/g2 or as g/phi, not both".into()));
            }
            if u.is_some() && un.is_some() {
                return Err(ConfigError::Invalid("give U or UN, not both".into()));
            }
            let sets = [
                (Param::OmegaC, wc),
                (Param::OmegaZ, wz),
                (Param::G1, g1),
                (Param::G2, g2),
                (Param::G, g),
                (Param::Phi, phi),
                (Param::U, u),
                (Param::Un, un),
                (Param::N, n.map(f64::from)),
            ];
            for (param, value) in sets {
                if let Some(v) = value {
                    base.set(param, v).map_err(ConfigError::Invalid)?;
                }
            }
        }

        let (mut axis1, mut axis2) = default_axes(task);
        if let Some(a) = cli.axis1.as_ref().or(file.axis1.as_ref()) {
            axis1 = Some(a.parse()?);
        }
        if let Some(a) = cli.axis2.as_ref().or(file.axis2.as_ref()) {
            axis2 = if a == "none" { None } else { Some(a.parse()?) };
        }
        if matches!(task, Task::GapScaling | Task::EdCheck) && (axis1.is_some() || axis2.is_some()) {
            return Err(ConfigError::Invalid(format!("{task} takes no sweep axes")));
        }
        if axis1.is_none() && axis2.is_some() {
            return Err(ConfigError::Invalid("axis2 given without axis1".into()));
        }

        let default_window = FitWindow::default();
        let window = FitWindow::new(
            cli.fit_lower.or(file.fit_lower).unwrap_or(default_window.lower),
            cli.fit_upper.or(file.fit_upper).unwrap_or(default_window.upper),
            cli.fit_points.or(file.fit_points).unwrap_or(default_window.points),
        )
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;

        let side = match cli.side.as_ref().or(file.side.as_ref()) {
            Some(s) => parse_side(s)?,
            None => FitSide::FromNormal,
        };

        Ok(Self {
            task,
            base,
            axis1,
            axis2,
            phis: cli
                .phis
                .clone()
                .or_else(|| file.phis.clone())
                .unwrap_or_else(|| DEFAULT_PHIS.to_vec()),
            window,
            side,
            ed_atoms: cli
                .ed_atoms
                .clone()
                .or_else(|| file.ed_atoms.clone())
                .unwrap_or_else(|| vec![4, 8, 12]),
            out: cli.out.clone().or_else(|| file.out.clone()),
            format: cli.format.or(file.format).unwrap_or_default(),
            threads: cli.threads.or(file.threads).unwrap_or(0),
        })
    }

    /// Every knob that shaped the output, for the file header.
    pub fn settings(&self) -> Vec<(String, String)> {
        let mut s = Vec::new();
        self.base.settings(&mut s);
        let axis = |a: &Option<Axis>| a.map_or_else(|| "none".to_string(), |a| a.to_string());
        s.push(("axis1".into(), axis(&self.axis1)));
        s.push(("axis2".into(), axis(&self.axis2)));
        match self.task {
            Task::SpectrumCut | Task::GapScaling => {
                let phis: Vec<String> = self.phis.iter().map(|p| format!("{p:?}")).collect();
                s.push(("phis".into(), phis.join(",")));
            }
            _ => {}
        }
        if matches!(self.task, Task::GapScaling | Task::ExponentMap) {
            s.push(("fit_lower".into(), format!("{:?}", self.window.lower)));
            s.push(("fit_upper".into(), format!("{:?}", self.window.upper)));
            s.push(("fit_points".into(), self.window.points.to_string()));
            s.push(("side".into(), side_name(self.side).into()));
        }
        if self.task == Task::EdCheck {
            let n: Vec<String> = self.ed_atoms.iter().map(u32::to_string).collect();
            s.push(("ed_atoms".into(), n.join(",")));
        }
        s.push(("threads".into(), self.threads.to_string()));
        s
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Task as ValueEnum>::from_str(s, false)
    }
}
