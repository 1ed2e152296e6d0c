//! Regime report.

use serde::Serialize;

use snowdrift_core::dynamics::RatioConstants;
use snowdrift_core::game::Entries;
use snowdrift_core::rational::format_rational;

use super::Output;
use crate::config::{Scenario, ScenarioRecord};
use crate::error::Outcome;
use crate::report::to_json;

#[derive(Debug, Serialize)]
pub struct Thresholds {
    pub defection: String,
    pub midpoint: String,
    pub alternation: String,
    pub indifference: String,
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub config: ScenarioRecord,
    pub parity: String,
    pub sign_case: u8,
    /// Tags of the entries of `A'`, row by row.
    pub sign_structure: Vec<Vec<&'static str>>,
    pub equilibrium_case: u8,
    pub regime: String,
    pub b1: String,
    pub b2: String,
    pub equalities: Vec<String>,
    pub thresholds: Thresholds,
    pub payoff_matrix: Vec<Vec<String>>,
    pub reduced_matrix: Vec<Vec<String>>,
}

pub fn matrix_strings(m: &Entries) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(format_rational).collect()).collect()
}

pub fn report(sc: &Scenario) -> ClassifyReport {
    let game = sc.game();
    let class = game.classify();
    let ap = game.reduced_matrix();
    let ratios = RatioConstants::new(&ap);
    let th = game.thresholds();
    ClassifyReport {
        config: sc.record("classify"),
        parity: class.parity.to_string(),
        sign_case: class.sign_case,
        sign_structure: game
            .sign_structure()
            .tags
            .iter()
            .map(|row| row.iter().map(|t| t.symbol()).collect())
            .collect(),
        equilibrium_case: class.equilibrium_case,
        regime: class.interior.to_string(),
        b1: format_rational(&ratios.b1),
        b2: format_rational(&ratios.b2),
        equalities: class.equalities.iter().map(ToString::to_string).collect(),
        thresholds: Thresholds {
            defection: format_rational(&th.defection),
            midpoint: format_rational(&th.midpoint),
            alternation: format_rational(&th.alternation),
            indifference: format_rational(&th.indifference),
        },
        payoff_matrix: matrix_strings(game.payoff_matrix().entries()),
        reduced_matrix: matrix_strings(ap.entries()),
    }
}

pub fn run(sc: &Scenario) -> anyhow::Result<Output> {
    Ok(Output {
        outcome: Outcome::Ok,
        summary: to_json(&report(sc))?,
        files: Vec::new(),
    })
}
