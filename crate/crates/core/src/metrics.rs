//! Average payoff and cooperation level at equilibria, and sweeps over `R`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Signed;

use crate::dynamics::utility;
use crate::equilibria::{catalog, x14, x23};
use crate::error::Error;
use crate::game::{BasePayoffs, CoopCounts, Parity, PayoffMatrix, RepeatedGame};
use crate::rational::{int, to_f64, Rational};
use crate::simplex::SimplexPoint;
use crate::stability::nash_interval_x12;

/// `x^T A x`.
pub fn average_payoff(x: &SimplexPoint, a: &PayoffMatrix) -> f64 {
    utility(x.coords(), x.coords(), &a.to_f64())
}

pub fn average_payoff_exact(x: &[Rational; 4], a: &PayoffMatrix) -> Rational {
    utility(x, x, a.entries())
}

/// `sum_ij x_i x_j C_ij / (2m)`.
pub fn cooperation_level(x: &SimplexPoint, c: &CoopCounts) -> f64 {
    let v = x.coords();
    let mut total = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            total += v[i] * v[j] * c.get(i, j) as f64;
        }
    }
    total / (2.0 * c.rounds() as f64)
}

pub fn cooperation_level_exact(x: &[Rational; 4], c: &CoopCounts) -> Rational {
    let mut total = int(0);
    for i in 0..4 {
        for j in 0..4 {
            total += &x[i] * &x[j] * int(c.get(i, j) as i64);
        }
    }
    total / int(2 * c.rounds() as i64)
}

fn spread(p: &BasePayoffs) -> Rational {
    p.temptation() - p.reward() + p.sucker() - p.punishment()
}

/// Payoff and cooperation advantage of `x23` over `x14`, from closed forms.
///
/// Requires `x23` to lie in the simplex.
pub fn gap_x23_x14(game: &RepeatedGame) -> Result<(Rational, Rational), Error> {
    if x23(&game.reduced_matrix()).is_none() {
        return Err(Error::NoX23);
    }
    let p = game.payoffs();
    let d = spread(p);
    let m = int(game.rounds() as i64);
    let ts = p.temptation() - p.sucker();
    let sq = &ts * &ts;
    Ok(match game.parity() {
        Parity::Even => (&m * sq / (int(4) * &d), ts / (int(2) * &d)),
        Parity::Odd => {
            let m1 = &m - int(1);
            (
                (&m * &m - int(1)) * sq / (int(4) * &m * &d),
                &m1 * ts / (int(2) * &m * &d),
            )
        }
    })
}

/// Payoff advantage of any Nash state on `X12` over `x14`.
pub fn gap_xalpha_x14(game: &RepeatedGame) -> Result<Rational, Error> {
    if nash_interval_x12(game).is_empty() {
        return Err(Error::EmptyNashSegment);
    }
    let p = game.payoffs();
    let m = int(game.rounds() as i64);
    Ok(m * (p.temptation() - p.reward()) * (p.reward() - p.sucker()) / spread(p))
}

/// Value of the metrics at one catalog entry.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsEntry {
    pub label: String,
    pub avg_payoff: f64,
    pub coop_level: f64,
}

/// Metrics at every catalog entry for one value of `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub reward: Rational,
    pub equilibrium_case: u8,
    pub entries: Vec<MetricsEntry>,
}

impl MetricsRow {
    pub fn get(&self, label: &str) -> Option<&MetricsEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

/// Metrics at all equilibria of one game. `X12` and `X34` carry constant
/// values along the segment and are reported once each.
pub fn metrics_row(game: &RepeatedGame) -> MetricsRow {
    let a = game.payoff_matrix();
    let c = game.cooperation_counts();
    let cat = catalog(game);
    let mut entries: Vec<MetricsEntry> = cat
        .points
        .iter()
        .map(|e| MetricsEntry {
            label: e.label.to_string(),
            avg_payoff: to_f64(&average_payoff_exact(&e.point, &a)),
            coop_level: to_f64(&cooperation_level_exact(&e.point, &c)),
        })
        .collect();
    let m = int(game.rounds() as i64);
    let p = game.payoffs();
    entries.push(MetricsEntry {
        label: "X12".to_string(),
        avg_payoff: to_f64(&(&m * p.reward())),
        coop_level: 1.0,
    });
    entries.push(MetricsEntry {
        label: "X34".to_string(),
        avg_payoff: to_f64(&(&m * p.punishment())),
        coop_level: 0.0,
    });
    MetricsRow {
        reward: p.reward().clone(),
        equilibrium_case: cat.regime.equilibrium_case,
        entries,
    }
}

/// Evaluates [`metrics_row`] along a grid of `R`; grid values that break
/// `T > R > S` are returned separately.
pub fn sweep_reward(
    temptation: &Rational,
    sucker: &Rational,
    punishment: &Rational,
    rounds: u32,
    grid: &[Rational],
) -> Result<(Vec<MetricsRow>, Vec<Rational>), Error> {
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for r in grid {
        match BasePayoffs::new(temptation.clone(), r.clone(), sucker.clone(), punishment.clone()) {
            Ok(p) => rows.push(metrics_row(&RepeatedGame::new(p, rounds)?)),
            Err(Error::NotSnowdrift(_)) => skipped.push(r.clone()),
            Err(e) => return Err(e),
        }
    }
    Ok((rows, skipped))
}

/// Payoff gap from the quadratic forms, the dual of [`gap_x23_x14`].
pub fn direct_gap_x23_x14(game: &RepeatedGame) -> Option<(Rational, Rational)> {
    let ap = game.reduced_matrix();
    let (p23, p14) = (x23(&ap)?, x14(&ap));
    let a = game.payoff_matrix();
    let c = game.cooperation_counts();
    let payoff = average_payoff_exact(&p23, &a) - average_payoff_exact(&p14, &a);
    let coop = cooperation_level_exact(&p23, &c) - cooperation_level_exact(&p14, &c);
    Some((payoff, coop))
}

/// Whether both closed-form gaps are strictly positive.
pub fn gaps_positive(game: &RepeatedGame) -> bool {
    gap_x23_x14(game).is_ok_and(|(p, c)| p.is_positive() && c.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::simplex::exact_vertex;

    fn game(t: Rational, r: Rational, s: Rational, p: Rational, m: u32) -> RepeatedGame {
        RepeatedGame::new(BasePayoffs::new(t, r, s, p).unwrap(), m).unwrap()
    }

    fn g(t: i64, r: i64, s: i64, p: i64, m: u32) -> RepeatedGame {
        game(int(t), int(r), int(s), int(p), m)
    }

    #[test]
    fn payoff_examples() {
        let game = g(6, 4, 3, 2, 2);
        let a = game.payoff_matrix();
        assert_eq!(average_payoff(&SimplexPoint::vertex(0).unwrap(), &a), 8.0);
        assert_eq!(average_payoff_exact(&x14(&game.reduced_matrix()), &a), rat(20, 3));
        assert_eq!(average_payoff_exact(&exact_vertex(1), &a), int(8));
    }

    #[test]
    fn cooperation_examples() {
        let game = g(6, 4, 3, 2, 8);
        let c = game.cooperation_counts();
        assert_eq!(cooperation_level_exact(&x14(&game.reduced_matrix()), &c), rat(1, 3));
        for k in 0..=4 {
            let alpha = rat(k, 4);
            let x = [alpha.clone(), int(1) - &alpha, int(0), int(0)];
            assert_eq!(cooperation_level_exact(&x, &c), int(1));
        }
        assert_eq!(cooperation_level(&SimplexPoint::vertex(3).unwrap(), &c), 0.0);
    }

    #[test]
    fn gap_examples() {
        let game = g(3, 2, 1, 0, 6);
        let (pay, coop) = gap_x23_x14(&game).unwrap();
        assert_eq!((pay.clone(), coop.clone()), (int(3), rat(1, 2)));
        assert_eq!(direct_gap_x23_x14(&game).unwrap(), (pay, coop));

        let large = game_large();
        // 6 * 0.1 * 1.9 / 1.1
        assert_eq!(gap_xalpha_x14(&large).unwrap(), rat(57, 55));
        assert_eq!(gap_x23_x14(&large), Err(Error::NoX23));
        assert_eq!(gap_xalpha_x14(&g(6, 4, 3, 2, 8)), Err(Error::EmptyNashSegment));
    }

    fn game_large() -> RepeatedGame {
        game(int(3), rat(29, 10), int(1), int(0), 6)
    }

    #[test]
    fn alpha_gap_matches_quadratic_forms() {
        let game = game_large();
        let a = game.payoff_matrix();
        let base = average_payoff_exact(&x14(&game.reduced_matrix()), &a);
        for alpha in [int(0), rat(1, 2)] {
            let x = [alpha.clone(), int(1) - &alpha, int(0), int(0)];
            assert_eq!(average_payoff_exact(&x, &a) - &base, gap_xalpha_x14(&game).unwrap());
        }
    }

    #[test]
    fn odd_gaps_match_quadratic_forms() {
        for game in [g(6, 4, 3, 2, 3), g(6, 4, 3, 2, 7), game(int(3), rat(21, 10), int(1), int(0), 5)] {
            assert_eq!(gap_x23_x14(&game).ok(), direct_gap_x23_x14(&game));
            assert!(gaps_positive(&game));
        }
    }

    #[test]
    fn sweep_skips_invalid_rewards() {
        let grid = [rat(1, 2), int(2), int(3)];
        let (rows, skipped) = sweep_reward(&int(3), &int(1), &int(0), 6, &grid).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(skipped, [rat(1, 2), int(3)]);
        let row = &rows[0];
        assert!(row.get("x14").is_some() && row.get("X12").is_some());
        assert_eq!(row.get("X12").unwrap().avg_payoff, 12.0);
    }
}
