//! Points on the boundary between the basins of `x14` and `x23`.

use rayon::prelude::*;
use serde::Serialize;

use snowdrift_core::convergence::{closest_approach, dirichlet_starts, separatrix_bisect, Analysis, SeparatrixSample};
use snowdrift_core::dynamics::{zone_of, Zone};
use snowdrift_core::game::InteriorRegime;
use snowdrift_core::SimplexPoint;

use super::Output;
use crate::config::{Scenario, ScenarioRecord, DEFAULT_SEPARATRIX_SAMPLES};
use crate::error::{Invalid, Outcome};
use crate::report::{csv_bytes, num, to_json};

pub const SAMPLES_HEADER: [&str; 8] = ["sample", "x1", "x2", "x3", "x4", "lambda", "gap", "approach"];

/// Interior starts drawn per requested sample when pairing seeds.
const POOL_FACTOR: usize = 64;

#[derive(Debug, Serialize)]
pub struct SampleRecord {
    pub point: [f64; 4],
    pub seed_a: [f64; 4],
    pub seed_b: [f64; 4],
    pub limits: [String; 2],
    pub lambda: f64,
    pub gap: f64,
    pub iterations: u32,
    /// Closest distance to `x_int` along the trajectory from `point`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approach: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct SeparatrixReport {
    pub config: ScenarioRecord,
    pub regime: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_int: Option<[f64; 4]>,
    pub samples: Vec<SampleRecord>,
}

/// Pairs starts in `D14` with starts in `D23`.
fn seed_pairs(sc: &Scenario, analysis: &Analysis, n: usize) -> Result<Vec<(SimplexPoint, SimplexPoint)>, Invalid> {
    if analysis.catalog.regime.interior != InteriorRegime::Bistable {
        return Err(Invalid(format!(
            "random seeds need the bistable regime (this game is {}); pass --seed-a and --seed-b",
            analysis.catalog.regime.interior
        )));
    }
    let pool = dirichlet_starts(n * POOL_FACTOR, sc.seed);
    let pick = |zone| pool.iter().filter(move |p| zone_of(p, &analysis.ratios) == zone).copied();
    let pairs: Vec<_> = pick(Zone::D14).zip(pick(Zone::D23)).take(n).collect();
    if pairs.len() < n {
        return Err(Invalid(format!("found only {} seed pairs", pairs.len())));
    }
    Ok(pairs)
}

fn record(sc: &Scenario, analysis: &Analysis, a: &SimplexPoint, b: &SimplexPoint) -> anyhow::Result<SampleRecord> {
    let s: SeparatrixSample = separatrix_bisect(analysis, a, b, &sc.integrator, sc.iters)?;
    let approach = match analysis.interior() {
        Some(xint) => Some(closest_approach(analysis, &s.point, &xint, &sc.integrator)?),
        None => None,
    };
    Ok(SampleRecord {
        point: *s.point.coords(),
        seed_a: *a.coords(),
        seed_b: *b.coords(),
        limits: [s.labels.0.to_string(), s.labels.1.to_string()],
        lambda: s.lambda,
        gap: s.gap,
        iterations: s.iterations,
        approach,
    })
}

pub fn run(sc: &Scenario) -> anyhow::Result<Output> {
    let analysis = Analysis::new(sc.game());
    let pairs = match (&sc.seed_a, &sc.seed_b) {
        (Some(a), Some(b)) => vec![(SimplexPoint::from_exact(a)?, SimplexPoint::from_exact(b)?)],
        _ => seed_pairs(sc, &analysis, sc.samples.unwrap_or(DEFAULT_SEPARATRIX_SAMPLES))?,
    };
    let samples = pairs
        .par_iter()
        .map(|(a, b)| record(sc, &analysis, a, b))
        .collect::<anyhow::Result<Vec<_>>>()?;

    let csv = csv_bytes(
        &SAMPLES_HEADER,
        samples.iter().enumerate().map(|(i, s)| {
            let p = s.point;
            [
                i.to_string(),
                num(p[0]),
                num(p[1]),
                num(p[2]),
                num(p[3]),
                num(s.lambda),
                num(s.gap),
                s.approach.map(num).unwrap_or_default(),
            ]
        }),
    )?;
    let report = SeparatrixReport {
        config: sc.record("separatrix"),
        regime: analysis.catalog.regime.interior.to_string(),
        x_int: analysis.interior(),
        samples,
    };
    Ok(Output {
        outcome: Outcome::Ok,
        summary: to_json(&report)?,
        files: vec![("separatrix.csv".to_string(), csv)],
    })
}
