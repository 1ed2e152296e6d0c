//! Limits of uniformly sampled interior starts.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use snowdrift_core::convergence::{classify_start, dirichlet_starts, Analysis, BasinStats, StartOutcome};

use super::Output;
use crate::config::{Scenario, ScenarioRecord, DEFAULT_BASIN_SAMPLES};
use crate::error::Outcome;
use crate::report::{csv_bytes, num, to_json};

pub const STARTS_HEADER: [&str; 10] = ["index", "x1", "x2", "x3", "x4", "limit", "status", "t", "predicted", "consistent"];

#[derive(Debug, Serialize)]
pub struct BasinsReport {
    pub config: ScenarioRecord,
    pub regime: String,
    pub n_samples: usize,
    pub seed: u64,
    pub counts: BTreeMap<String, usize>,
    pub fractions: BTreeMap<String, f64>,
    pub unresolved: usize,
    pub violations: usize,
}

/// Runs the starts on the rayon pool; results keep the start order.
pub fn outcomes(sc: &Scenario, analysis: &Analysis, n: usize) -> anyhow::Result<Vec<StartOutcome>> {
    let starts = dirichlet_starts(n, sc.seed);
    let results = starts
        .par_iter()
        .map(|x0| classify_start(analysis, x0, &sc.integrator))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(results)
}

fn start_row(index: usize, o: &StartOutcome) -> Vec<String> {
    let x = o.start.coords();
    vec![
        index.to_string(),
        num(x[0]),
        num(x[1]),
        num(x[2]),
        num(x[3]),
        o.matched.map(|m| m.to_string()).unwrap_or_default(),
        o.run.status.to_string(),
        num(o.run.t),
        o.predicted.labels().join(" "),
        o.consistent.to_string(),
    ]
}

pub fn run(sc: &Scenario) -> anyhow::Result<Output> {
    let analysis = Analysis::new(sc.game());
    let n = sc.samples.unwrap_or(DEFAULT_BASIN_SAMPLES);
    let results = outcomes(sc, &analysis, n)?;
    let stats = BasinStats::from_outcomes(&results, sc.seed);
    let resolved = (n - stats.unresolved).max(1) as f64;
    let report = BasinsReport {
        config: sc.record("basins"),
        regime: analysis.catalog.regime.interior.to_string(),
        n_samples: stats.n_samples,
        seed: stats.seed,
        fractions: stats.counts.iter().map(|(k, &v)| (k.clone(), v as f64 / resolved)).collect(),
        counts: stats.counts,
        unresolved: stats.unresolved,
        violations: stats.violations,
    };
    let csv = csv_bytes(&STARTS_HEADER, results.iter().enumerate().map(|(i, o)| start_row(i, o)))?;
    Ok(Output {
        outcome: if report.unresolved > 0 { Outcome::Unresolved } else { Outcome::Ok },
        summary: to_json(&report)?,
        files: vec![("basin_starts.csv".to_string(), csv)],
    })
}
