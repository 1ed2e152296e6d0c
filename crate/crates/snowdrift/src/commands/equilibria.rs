//! Catalog of equilibria with their stability and metrics.

use serde::Serialize;

use snowdrift_core::dynamics::{edge_dynamics, EdgeKind};
use snowdrift_core::equilibria::{catalog, ContinuumLabel};
use snowdrift_core::metrics::{average_payoff_exact, cooperation_level_exact};
use snowdrift_core::rational::{format_rational, point_to_f64};
use snowdrift_core::stability::{check_ess_exact, interior_spectrum, is_nash_exact, nash_interval_x12, NashInterval};

use super::Output;
use crate::config::{Scenario, ScenarioRecord};
use crate::error::Outcome;
use crate::report::{exact_point, to_json};

/// Alternative best replies sampled per ESS check.
pub const ESS_SAMPLES: usize = 2_000;

#[derive(Debug, Serialize)]
pub struct PointRecord {
    pub label: String,
    pub exact: Vec<String>,
    pub coords: [f64; 4],
    pub nash: bool,
    /// Strategy that gains by deviating, when not Nash.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation: Option<String>,
    pub ess: bool,
    pub avg_payoff: String,
    pub coop_level: String,
}

#[derive(Debug, Serialize)]
pub struct ContinuumRecord {
    pub label: String,
    pub start: Vec<String>,
    pub end: Vec<String>,
    /// Nash part of `X12` as an interval of the ALLC share.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nash_alpha: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct EdgeRecord {
    pub edge: [usize; 2],
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub share: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct InteriorRecord {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub eigenvalues: [f64; 3],
}

#[derive(Debug, Serialize)]
pub struct EquilibriaReport {
    pub config: ScenarioRecord,
    pub equilibrium_case: u8,
    pub regime: String,
    pub points: Vec<PointRecord>,
    pub continua: Vec<ContinuumRecord>,
    pub edges: Vec<EdgeRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interior_spectrum: Option<InteriorRecord>,
}

fn edge_record(i: usize, j: usize, kind: &EdgeKind) -> EdgeRecord {
    let (name, share) = match kind {
        EdgeKind::AllFixed => ("all_fixed".to_string(), None),
        EdgeKind::Stable(y) => ("stable".to_string(), Some(format_rational(y))),
        EdgeKind::Unstable(y) => ("unstable".to_string(), Some(format_rational(y))),
        EdgeKind::Dominates(k) => (format!("p{} dominates", k + 1), None),
    };
    EdgeRecord {
        edge: [i + 1, j + 1],
        kind: name,
        share,
    }
}

pub fn report(sc: &Scenario) -> anyhow::Result<EquilibriaReport> {
    let game = sc.game();
    let a = game.payoff_matrix();
    let c = game.cooperation_counts();
    let cat = catalog(&game);

    let points = cat
        .points
        .iter()
        .map(|e| {
            let nash = is_nash_exact(&e.point, &a);
            PointRecord {
                label: e.label.to_string(),
                exact: exact_point(&e.point),
                coords: point_to_f64(&e.point),
                nash: nash.is_nash,
                deviation: nash.witness.map(|w| format!("p{}", w.vertex + 1)),
                ess: check_ess_exact(&e.point, &a, ESS_SAMPLES, sc.seed).is_ess(),
                avg_payoff: format_rational(&average_payoff_exact(&e.point, &a)),
                coop_level: format_rational(&cooperation_level_exact(&e.point, &c)),
            }
        })
        .collect();

    let continua = cat
        .continua
        .iter()
        .map(|seg| ContinuumRecord {
            label: seg.label.to_string(),
            start: exact_point(&seg.start),
            end: exact_point(&seg.end),
            nash_alpha: (seg.label == ContinuumLabel::X12).then(|| match nash_interval_x12(&game) {
                NashInterval::Empty => Vec::new(),
                NashInterval::P2 => vec!["0".to_string(), "0".to_string()],
                NashInterval::Closed(lo, hi) => vec![format_rational(&lo), format_rational(&hi)],
            }),
        })
        .collect();

    let mut edges = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            edges.push(edge_record(i, j, &edge_dynamics(&a, i, j)?.kind));
        }
    }

    let interior_spectrum = interior_spectrum(&game).ok().map(|s| InteriorRecord {
        a: s.a,
        b: s.b,
        c: s.c,
        eigenvalues: s.eigenvalues,
    });

    Ok(EquilibriaReport {
        config: sc.record("equilibria"),
        equilibrium_case: cat.regime.equilibrium_case,
        regime: cat.regime.interior.to_string(),
        points,
        continua,
        edges,
        interior_spectrum,
    })
}

pub fn run(sc: &Scenario) -> anyhow::Result<Output> {
    Ok(Output {
        outcome: Outcome::Ok,
        summary: to_json(&report(sc)?)?,
        files: Vec::new(),
    })
}
