//! Command-line sweeps over the chiral Dicke model.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use anyhow::{Context, Result};

pub mod axis;
pub mod config;
pub mod table;
pub mod tasks;

pub use config::{Cli, FileConfig, Format, SweepSpec, Task};
pub use table::Table;

/// Outcome of a run that produced output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub rows: usize,
    pub error_rows: usize,
}

pub fn resolve(cli: &Cli) -> Result<SweepSpec> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    Ok(SweepSpec::resolve(cli, &file)?)
}

pub fn write(table: &Table, format: Format, w: impl Write) -> io::Result<()> {
    match format {
        Format::Csv => table.write_csv(w),
        Format::Json => table.write_json(w),
    }
}

/// Evaluates `spec` and writes the table to its output.
pub fn execute(spec: &SweepSpec) -> Result<Summary> {
    let table = tasks::run(spec);
    match &spec.out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(f);
            write(&table, spec.format, &mut w)?;
            w.flush()?;
        }
        None => write(&table, spec.format, io::stdout().lock())?,
    }
    Ok(Summary {
        rows: table.rows.len(),
        error_rows: table.error_rows(),
    })
}
