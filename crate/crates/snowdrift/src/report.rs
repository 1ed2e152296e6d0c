//! Serialized forms shared by the commands.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Context;
use serde::Serialize;

use snowdrift_core::convergence::{LimitPrediction, Match, RunResult};
use snowdrift_core::rational::format_rational;
use snowdrift_core::Rational;

pub fn exact_point(x: &[Rational; 4]) -> Vec<String> {
    x.iter().map(format_rational).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchRecord {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param: Option<f64>,
    pub location: [f64; 4],
    pub distance: f64,
}

impl From<&Match> for MatchRecord {
    fn from(m: &Match) -> Self {
        Self {
            label: m.label.to_string(),
            param: m.param,
            location: m.location,
            distance: m.distance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub status: String,
    pub t: f64,
    pub rhs_norm: f64,
    pub terminal: [f64; 4],
}

impl From<&RunResult> for RunRecord {
    fn from(r: &RunResult) -> Self {
        Self {
            status: r.status.to_string(),
            t: r.t,
            rhs_norm: r.rhs_norm,
            terminal: r.terminal,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PredictionRecord {
    pub candidates: Vec<String>,
    pub deterministic: bool,
}

impl From<&LimitPrediction> for PredictionRecord {
    fn from(p: &LimitPrediction) -> Self {
        Self {
            candidates: p.labels(),
            deterministic: p.deterministic,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> anyhow::Result<String> {
    let mut text = serde_json::to_string_pretty(doc).context("serializing report")?;
    text.push('\n');
    Ok(text)
}

/// Writes `text` to `dir/name`, creating `dir` if needed.
pub fn write_file(dir: &Path, name: &str, text: &[u8]) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    let mut f = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    f.write_all(text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Builds a CSV in memory.
pub fn csv_bytes<I, R>(header: &[&str], rows: I) -> anyhow::Result<Vec<u8>>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner().context("flushing CSV")
}

/// Shortest round-trip text for a CSV cell, with an exponent for very small
/// or large magnitudes.
pub fn num(v: f64) -> String {
    format!("{v:?}")
}
