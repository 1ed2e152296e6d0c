//! Metrics at every equilibrium along a grid of `R`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use snowdrift_core::convergence::{classify_start, dirichlet_starts, Analysis, BasinStats};
use snowdrift_core::metrics::{gap_x23_x14, gap_xalpha_x14, sweep_reward, MetricsRow};
use snowdrift_core::rational::{format_rational, to_f64};
use snowdrift_core::{BasePayoffs, Rational, RepeatedGame};

use super::Output;
use crate::config::{Scenario, ScenarioRecord};
use crate::error::{Invalid, Outcome};
use crate::report::{csv_bytes, num, to_json};

pub const SWEEP_HEADER: [&str; 4] = ["R", "label", "avg_payoff", "coop_level"];

#[derive(Debug, Serialize)]
pub struct EntryRecord {
    pub label: String,
    pub avg_payoff: f64,
    pub coop_level: f64,
}

#[derive(Debug, Serialize)]
pub struct Gaps {
    /// Payoff and cooperation advantage of `x23` over `x14`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x23_over_x14: Option<[String; 2]>,
    /// Payoff advantage of the Nash part of `X12` over `x14`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x12_over_x14: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Validation {
    pub counts: BTreeMap<String, usize>,
    pub unresolved: usize,
    pub violations: usize,
}

#[derive(Debug, Serialize)]
pub struct RowRecord {
    #[serde(rename = "R")]
    pub reward: String,
    pub equilibrium_case: u8,
    pub regime: String,
    pub entries: Vec<EntryRecord>,
    pub gaps: Gaps,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<Validation>,
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub config: ScenarioRecord,
    pub rows: Vec<RowRecord>,
    /// Grid values outside `S < R < T`.
    pub skipped: Vec<String>,
}

fn game_at(sc: &Scenario, r: &Rational) -> RepeatedGame {
    let p = &sc.payoffs;
    let payoffs = BasePayoffs::new(p.temptation().clone(), r.clone(), p.sucker().clone(), p.punishment().clone())
        .expect("rows only hold valid rewards");
    RepeatedGame::new(payoffs, sc.m).expect("validated when resolved")
}

fn validate_row(sc: &Scenario, game: RepeatedGame, index: usize) -> anyhow::Result<Validation> {
    let analysis = Analysis::new(game);
    let starts = dirichlet_starts(sc.validate, sc.seed.wrapping_add(index as u64));
    let outcomes = starts
        .par_iter()
        .map(|x0| classify_start(&analysis, x0, &sc.integrator))
        .collect::<Result<Vec<_>, _>>()?;
    let stats = BasinStats::from_outcomes(&outcomes, sc.seed);
    Ok(Validation {
        counts: stats.counts,
        unresolved: stats.unresolved,
        violations: stats.violations,
    })
}

fn row_record(sc: &Scenario, row: &MetricsRow, index: usize) -> anyhow::Result<RowRecord> {
    let game = game_at(sc, &row.reward);
    let validation = match sc.validate {
        0 => None,
        _ => Some(validate_row(sc, game.clone(), index)?),
    };
    Ok(RowRecord {
        reward: format_rational(&row.reward),
        equilibrium_case: row.equilibrium_case,
        regime: game.classify().interior.to_string(),
        entries: row
            .entries
            .iter()
            .map(|e| EntryRecord {
                label: e.label.clone(),
                avg_payoff: e.avg_payoff,
                coop_level: e.coop_level,
            })
            .collect(),
        gaps: Gaps {
            x23_over_x14: gap_x23_x14(&game)
                .ok()
                .map(|(p, c)| [format_rational(&p), format_rational(&c)]),
            x12_over_x14: gap_xalpha_x14(&game).ok().map(|g| format_rational(&g)),
        },
        validation,
    })
}

pub fn run(sc: &Scenario) -> anyhow::Result<Output> {
    let grid = sc.reward_grid();
    if grid.is_empty() {
        return Err(Invalid("the reward grid is empty".into()).into());
    }
    let p = &sc.payoffs;
    let (rows, skipped) = sweep_reward(p.temptation(), p.sucker(), p.punishment(), sc.m, &grid)?;
    let records = rows
        .par_iter()
        .enumerate()
        .map(|(i, row)| row_record(sc, row, i))
        .collect::<anyhow::Result<Vec<_>>>()?;

    let csv = csv_bytes(
        &SWEEP_HEADER,
        rows.iter().flat_map(|row| {
            let r = num(to_f64(&row.reward));
            row.entries
                .iter()
                .map(move |e| [r.clone(), e.label.clone(), num(e.avg_payoff), num(e.coop_level)])
        }),
    )?;
    let unresolved = records
        .iter()
        .any(|r| r.validation.as_ref().is_some_and(|v| v.unresolved > 0));
    let report = SweepReport {
        config: sc.record("sweep"),
        rows: records,
        skipped: skipped.iter().map(format_rational).collect(),
    };
    Ok(Output {
        outcome: if unresolved { Outcome::Unresolved } else { Outcome::Ok },
        summary: to_json(&report)?,
        files: vec![("sweep.csv".to_string(), csv)],
    })
}
