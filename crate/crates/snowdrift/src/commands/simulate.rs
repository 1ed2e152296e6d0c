//! One trajectory: CSV of samples plus a summary.

use serde::Serialize;

use snowdrift_core::convergence::{match_catalog, predict_limit, Analysis, RunResult, MATCH_TOL};
use snowdrift_core::dynamics::{integrate_observed, zone_of, Sample, TerminalStatus};
use snowdrift_core::metrics::{average_payoff, cooperation_level};
use snowdrift_core::{Error, SimplexPoint};

use super::Output;
use crate::config::{Scenario, ScenarioRecord};
use crate::error::Outcome;
use crate::report::{csv_bytes, num, to_json, MatchRecord, PredictionRecord, RunRecord};

pub const TRAJECTORY_HEADER: [&str; 10] =
    ["t", "x1", "x2", "x3", "x4", "ratio12", "ratio43", "zone", "avg_payoff", "coop_level"];

#[derive(Debug, Serialize)]
pub struct SimulateReport {
    pub config: ScenarioRecord,
    pub start: [f64; 4],
    pub start_zone: String,
    pub run: RunRecord,
    pub steps: u64,
    pub matched: Option<MatchRecord>,
    pub predicted: PredictionRecord,
    pub consistent: bool,
    pub resolved: bool,
}

fn ratio(top: f64, den: f64) -> String {
    if den == 0.0 {
        String::new()
    } else {
        num(top / den)
    }
}

pub fn run(sc: &Scenario) -> anyhow::Result<Output> {
    let analysis = Analysis::new(sc.game());
    let x0 = match &sc.x0 {
        Some(x) => SimplexPoint::from_exact(x)?,
        None => SimplexPoint::barycenter(),
    };
    let af = &analysis.matrix;
    let counts = analysis.game.cooperation_counts();

    let mut rows: Vec<[String; 10]> = Vec::new();
    let mut record = |s: &Sample| {
        // failed steps may leave the simplex
        let (zone, pay, coop) = match SimplexPoint::new(s.x) {
            Ok(p) => (
                zone_of(&p, &analysis.ratios).to_string(),
                num(average_payoff(&p, af)),
                num(cooperation_level(&p, &counts)),
            ),
            Err(_) => Default::default(),
        };
        let x = s.x;
        rows.push([
            num(s.t),
            num(x[0]),
            num(x[1]),
            num(x[2]),
            num(x[3]),
            ratio(x[0], x[1]),
            ratio(x[3], x[2]),
            zone,
            pay,
            coop,
        ]);
    };
    let out = integrate_observed(&x0, af, &sc.integrator, &mut record)?;
    let csv = csv_bytes(&TRAJECTORY_HEADER, &rows)?;
    if out.status == TerminalStatus::Failed {
        return Err(Error::IntegrationFailed(out.last.t).into());
    }

    let run = RunResult {
        terminal: out.last.x,
        status: out.status,
        t: out.last.t,
        rhs_norm: out.last.rhs_norm,
    };
    let matched = match_catalog(&run.terminal, &analysis.catalog, MATCH_TOL);
    let predicted = predict_limit(&analysis, &x0);
    let consistent = matched.as_ref().is_some_and(|m| predicted.admits_match(&analysis, m));
    let resolved = run.status == TerminalStatus::Converged && matched.is_some();

    let report = SimulateReport {
        config: sc.record("simulate"),
        start: *x0.coords(),
        start_zone: zone_of(&x0, &analysis.ratios).to_string(),
        run: (&run).into(),
        steps: out.steps,
        matched: matched.as_ref().map(Into::into),
        predicted: (&predicted).into(),
        consistent,
        resolved,
    };
    Ok(Output {
        outcome: if resolved { Outcome::Ok } else { Outcome::Unresolved },
        summary: to_json(&report)?,
        files: vec![("trajectory.csv".to_string(), csv)],
    })
}
