use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AxisError {
    #[error("axis `{0}`: expected name:start:stop:count[:log]")]
    Shape(String),
    #[error("axis `{spec}`: unknown parameter `{name}` (one of {})", Param::NAMES.join(", "))]
    UnknownParam { spec: String, name: String },
    #[error("axis `{spec}`: bad number `{field}`")]
    Number { spec: String, field: String },
    #[error("axis `{0}`: count must be >= 1, and >= 2 unless start == stop")]
    Count(String),
    #[error("axis `{0}`: log spacing needs start and stop > 0")]
    LogRange(String),
}

/// A sweepable model parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    OmegaC,
    OmegaZ,
    G1,
    G2,
    G,
    Phi,
    /// `g / g_c` at the current `omega_z`, `omega_c`, `U`.
    GRel,
    U,
    Un,
    N,
}

impl Param {
    pub const NAMES: [&'static str; 10] = ["omega_c", "omega_z", "g1", "g2", "g", "phi", "g_rel", "U", "UN", "N"];

    pub fn name(self) -> &'static str {
        match self {
            Param::OmegaC => "omega_c",
            Param::OmegaZ => "omega_z",
            Param::G1 => "g1",
            Param::G2 => "g2",
            Param::G => "g",
            Param::Phi => "phi",
            Param::GRel => "g_rel",
            Param::U => "U",
            Param::Un => "UN",
            Param::N => "N",
        }
    }
}

impl FromStr for Param {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Ok(match s {
            "omega_c" | "wc" => Param::OmegaC,
            "omega_z" | "wz" => Param::OmegaZ,
            "g1" => Param::G1,
            "g2" => Param::G2,
            "g" => Param::G,
            "phi" => Param::Phi,
            "g_rel" => Param::GRel,
            "U" | "u" => Param::U,
            "UN" | "un" => Param::Un,
            "N" | "n" => Param::N,
            _ => return Err(()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl Axis {
    pub fn linear(param: Param, start: f64, stop: f64, count: usize) -> Self {
        Self {
            param,
            start,
            stop,
            count,
            log: false,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let s = i as f64 / last;
                if i + 1 == self.count {
                    self.stop
                } else if self.log {
                    (self.start.ln() + s * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + s * (self.stop - self.start)
                }
            })
            .collect()
    }
}

impl FromStr for Axis {
    type Err = AxisError;

    fn from_str(spec: &str) -> Result<Self, AxisError> {
        let fields: Vec<&str> = spec.split(':').collect();
        let log = match fields.as_slice() {
            [_, _, _, _] => false,
            [_, _, _, _, "log"] => true,
            [_, _, _, _, "lin"] => false,
            _ => return Err(AxisError::Shape(spec.into())),
        };
        let param = fields[0].parse().map_err(|_| AxisError::UnknownParam {
            spec: spec.into(),
            name: fields[0].into(),
        })?;
        let num = |f: &str| {
            f.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| AxisError::Number {
                    spec: spec.into(),
                    field: f.into(),
                })
        };
        let start = num(fields[1])?;
        let stop = num(fields[2])?;
        let count: usize = fields[3].parse().map_err(|_| AxisError::Number {
            spec: spec.into(),
            field: fields[3].into(),
        })?;
        if count == 0 || (count == 1 && start != stop) {
            return Err(AxisError::Count(spec.into()));
        }
        if log && !(start > 0.0 && stop > 0.0) {
            return Err(AxisError::LogRange(spec.into()));
        }
        Ok(Self {
            param,
            start,
            stop,
            count,
            log,
        })
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:?}:{:?}:{}", self.param.name(), self.start, self.stop, self.count)?;
        if self.log {
            write!(f, ":log")?;
        }
        Ok(())
    }
}
