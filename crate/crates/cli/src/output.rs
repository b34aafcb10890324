use std::fs;
use std::io::Write;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::args::{Format, OutputArgs};
use crate::config::RunConfig;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    config: &'a RunConfig,
    #[serde(flatten)]
    result: &'a T,
}

/// Writes `result` as JSON (with the run config) or as CSV rows, to `<out>/<name>.<ext>`
/// or stdout.
pub fn emit<T: Serialize, R: Serialize>(
    output: &OutputArgs,
    config: &RunConfig,
    name: &str,
    result: &T,
    rows: impl FnOnce() -> Vec<R>,
) -> Result<()> {
    let bytes = match output.format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&Envelope { config, result })?;
            text.push('\n');
            text.into_bytes()
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in rows() {
                writer.serialize(row)?;
            }
            writer.into_inner().context("flushing csv")?
        }
    };
    match &output.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let ext = match output.format {
                Format::Json => "json",
                Format::Csv => "csv",
            };
            let path = dir.join(format!("{name}.{ext}"));
            fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
            log::info!("wrote {}", path.display());
        }
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}

/// Fixed six-decimal rendering for CSV numerics.
pub fn fixed(x: f64) -> String {
    format!("{x:.6}")
}
