//! Predicted and observed limits of trajectories.
//!
//! [`predict_limit`] lists the equilibria a trajectory may converge to, based
//! on the payoff regime and, for interior starts, the zone of the start.
//! [`run_to_limit`] integrates until the field vanishes and [`match_catalog`]
//! names the equilibrium that was reached.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{integrate_observed, zone_of, IntegratorConfig, RatioConstants, TerminalStatus, Zone};
use crate::equilibria::{catalog, interior_equilibrium, ContinuumLabel, EquilibriumCatalog, PointLabel};
use crate::error::Error;
use crate::game::{InteriorRegime, PayoffMatrix, ReducedMatrix, RepeatedGame};
use crate::rational::{point_to_f64, to_f64};
use crate::simplex::{distance, interior_uniform, project, SimplexPoint};
use crate::stability::{is_nash_exact_on, x12_nash_interval_on, NashInterval};

/// Default distance for matching a terminal state to the catalog.
pub const MATCH_TOL: f64 = 1e-5;

/// Everything derived once per game and shared by the runs.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub game: RepeatedGame,
    pub matrix: PayoffMatrix,
    pub reduced: ReducedMatrix,
    pub ratios: RatioConstants,
    pub catalog: EquilibriumCatalog,
}

impl Analysis {
    pub fn new(game: RepeatedGame) -> Self {
        let matrix = game.payoff_matrix();
        let reduced = game.reduced_matrix();
        let ratios = RatioConstants::new(&reduced);
        let catalog = catalog(&game);
        Self {
            game,
            matrix,
            reduced,
            ratios,
            catalog,
        }
    }

    pub fn interior(&self) -> Option<[f64; 4]> {
        self.catalog.point(PointLabel::XInt).map(|e| e.to_f64())
    }
}

/// One admissible limit.
#[derive(Debug, Clone, PartialEq)]
pub enum Candidate {
    Point(PointLabel),
    /// Part of a continuum with parameter in `[lo, hi]`.
    Segment { label: ContinuumLabel, lo: f64, hi: f64 },
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Candidate::Point(l) => write!(f, "{l}"),
            Candidate::Segment { label, lo, hi } => {
                if *lo == 0.0 && *hi == 1.0 {
                    write!(f, "{label}")
                } else {
                    write!(f, "{label}[{lo},{hi}]")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitPrediction {
    pub candidates: Vec<Candidate>,
    /// Exactly one candidate, and it is a point.
    pub deterministic: bool,
}

impl LimitPrediction {
    fn new(candidates: Vec<Candidate>) -> Self {
        let deterministic = matches!(candidates.as_slice(), [Candidate::Point(_)]);
        Self {
            candidates,
            deterministic,
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.candidates.iter().map(|c| c.to_string()).collect()
    }

    /// Whether the state `x` lies within `tol` of some candidate.
    pub fn admits(&self, analysis: &Analysis, x: &[f64; 4], tol: f64) -> bool {
        self.candidates.iter().any(|c| match c {
            Candidate::Point(label) => analysis
                .catalog
                .point(*label)
                .is_some_and(|e| distance(x, &e.to_f64()) <= tol),
            Candidate::Segment { label, lo, hi } => analysis
                .catalog
                .continuum(*label)
                .is_some_and(|seg| seg.project_within(x, *lo, *hi).1 <= tol),
        })
    }

    /// Whether a catalog match is one of the candidates.
    pub fn admits_match(&self, analysis: &Analysis, m: &Match) -> bool {
        self.admits(analysis, &m.location, 1e-9)
    }
}

fn x12_candidate(interval: NashInterval) -> Option<Candidate> {
    match interval {
        NashInterval::Empty => None,
        NashInterval::P2 => Some(Candidate::Point(PointLabel::P2)),
        NashInterval::Closed(lo, hi) => Some(Candidate::Segment {
            label: ContinuumLabel::X12,
            lo: to_f64(&lo),
            hi: to_f64(&hi),
        }),
    }
}

fn whole(label: ContinuumLabel) -> Candidate {
    Candidate::Segment { label, lo: 0.0, hi: 1.0 }
}

/// Admissible limits of the trajectory from `x0`.
pub fn predict_limit(analysis: &Analysis, x0: &SimplexPoint) -> LimitPrediction {
    if x0.is_interior() {
        predict_interior(analysis, x0)
    } else {
        predict_boundary(analysis, x0)
    }
}

fn predict_interior(analysis: &Analysis, x0: &SimplexPoint) -> LimitPrediction {
    use Candidate::Point;
    use PointLabel::*;
    let zone = zone_of(x0, &analysis.ratios);
    let has_int = analysis.catalog.has(XInt);
    if has_int && zone == Zone::LInt {
        return LimitPrediction::new(alloc::vec![Point(XInt)]);
    }
    let x12 = || x12_candidate(x12_nash_interval_on(&analysis.reduced, [true; 4]));
    let mut set = Vec::new();
    match analysis.catalog.regime.interior {
        InteriorRegime::Bistable => match zone {
            Zone::D14 => set.push(Point(X14)),
            Zone::D23 => set.push(Point(X23)),
            _ => set.extend([Point(X14), Point(X23), Point(XInt)]),
        },
        InteriorRegime::EvenIntermediate(1) => set.extend([Point(X14), Point(XInt), Point(P2)]),
        InteriorRegime::EvenIntermediate(2) => {
            set.extend([Point(X14), Point(XInt)]);
            set.extend(x12());
        }
        InteriorRegime::EvenIntermediate(_) => {
            set.push(Point(X14));
            set.push(whole(ContinuumLabel::X123));
            set.extend(x12());
        }
        InteriorRegime::OddIntermediate(1) => {
            set.extend([Point(X14), Point(X23)]);
            set.push(whole(ContinuumLabel::X123));
        }
        InteriorRegime::OddIntermediate(_) => set.push(Point(X14)),
        InteriorRegime::LargeReward => {
            set.push(Point(X14));
            set.extend(x12());
        }
    }
    set.retain(|c| match c {
        Point(label) => analysis.catalog.has(*label),
        Candidate::Segment { label, .. } => analysis.catalog.continuum(*label).is_some(),
    });
    LimitPrediction::new(set)
}

/// Trajectories stay in the face spanned by their support and converge to a
/// state that is Nash against deviations inside that face.
fn predict_boundary(analysis: &Analysis, x0: &SimplexPoint) -> LimitPrediction {
    let support = x0.support();
    let size = support.iter().filter(|&&s| s).count();
    if size == 1 {
        let i = support.iter().position(|&s| s).expect("one coordinate is positive");
        return LimitPrediction::new(alloc::vec![Candidate::Point(
            PointLabel::vertex(i).expect("index below four")
        )]);
    }

    let entries = analysis.matrix.entries();
    let mut set = Vec::new();
    for eq in &analysis.catalog.points {
        let inside = eq.point.iter().zip(&support).all(|(v, &s)| s || v.is_zero());
        if inside && is_nash_exact_on(&eq.point, entries, support).is_nash {
            set.push(Candidate::Point(eq.label));
        }
    }
    for seg in &analysis.catalog.continua {
        let c = match seg.label {
            ContinuumLabel::X12 if support[0] && support[1] => {
                x12_candidate(x12_nash_interval_on(&analysis.reduced, support))
            }
            // ALLC and TFT earn strictly more than the mean anywhere on X34
            ContinuumLabel::X34 if support[2] && support[3] && !support[0] && !support[1] => {
                Some(whole(ContinuumLabel::X34))
            }
            ContinuumLabel::X123 if support[0] && support[1] && support[2] => Some(whole(ContinuumLabel::X123)),
            _ => None,
        };
        if let Some(c) = c {
            if !set.contains(&c) {
                set.push(c);
            }
        }
    }
    LimitPrediction::new(set)
}

/// Terminal state of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunResult {
    pub terminal: [f64; 4],
    pub status: TerminalStatus,
    pub t: f64,
    pub rhs_norm: f64,
}

/// Integrates until the field vanishes or time runs out.
pub fn run_to_limit(analysis: &Analysis, x0: &SimplexPoint, cfg: &IntegratorConfig) -> Result<RunResult, Error> {
    let out = integrate_observed(x0, &analysis.matrix, cfg, |_| {})?;
    if out.status == TerminalStatus::Failed {
        return Err(Error::IntegrationFailed(out.last.t));
    }
    Ok(RunResult {
        terminal: out.last.x,
        status: out.status,
        t: out.last.t,
        rhs_norm: out.last.rhs_norm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatchLabel {
    Point(PointLabel),
    Continuum(ContinuumLabel),
}

impl fmt::Display for MatchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchLabel::Point(l) => write!(f, "{l}"),
            MatchLabel::Continuum(l) => write!(f, "{l}"),
        }
    }
}

/// A terminal state identified with a catalog entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Match {
    pub label: MatchLabel,
    /// Position along the continuum, for continuum matches.
    pub param: Option<f64>,
    /// The catalog point, or the projection onto the continuum.
    pub location: [f64; 4],
    pub distance: f64,
}

impl fmt::Display for Match {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param {
            Some(p) => write!(f, "{}({p})", self.label),
            None => write!(f, "{}", self.label),
        }
    }
}

/// Nearest catalog entry within `tol`. Vertices win over other points and
/// points win over continua.
pub fn match_catalog(x: &[f64; 4], catalog: &EquilibriumCatalog, tol: f64) -> Option<Match> {
    let mut best: Option<(u8, Match)> = None;
    let mut offer = |rank: u8, m: Match| {
        if m.distance > tol {
            return;
        }
        let better = match &best {
            None => true,
            Some((r, b)) => rank < *r || (rank == *r && m.distance < b.distance),
        };
        if better {
            best = Some((rank, m));
        }
    };
    for eq in &catalog.points {
        let location = eq.to_f64();
        offer(
            if eq.label.is_vertex() { 0 } else { 1 },
            Match {
                label: MatchLabel::Point(eq.label),
                param: None,
                location,
                distance: distance(x, &location),
            },
        );
    }
    for seg in &catalog.continua {
        let (lambda, d) = seg.project(x);
        offer(
            2,
            Match {
                label: MatchLabel::Continuum(seg.label),
                param: Some(lambda),
                location: seg.point_at_f64(lambda),
                distance: d,
            },
        );
    }
    best.map(|(_, m)| m)
}

/// Result of one bisection along a segment between two basins.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatrixSample {
    pub point: SimplexPoint,
    /// Width of the final bracket, measured in the simplex.
    pub gap: f64,
    pub iterations: u32,
    /// Attractors at the `seed_a` and `seed_b` ends.
    pub labels: (PointLabel, PointLabel),
    /// Position of `point` along the segment, from `seed_a` (0) to `seed_b` (1).
    pub lambda: f64,
}

fn attractor(analysis: &Analysis, x: &SimplexPoint, cfg: &IntegratorConfig) -> Result<Option<Match>, Error> {
    let run = run_to_limit(analysis, x, cfg)?;
    Ok(match_catalog(&run.terminal, &analysis.catalog, MATCH_TOL))
}

fn describe(m: &Option<Match>) -> String {
    match m {
        Some(m) => m.to_string(),
        None => "an unmatched state".to_string(),
    }
}

fn along(a: &SimplexPoint, b: &SimplexPoint, lambda: f64) -> SimplexPoint {
    let (x, y) = (a.coords(), b.coords());
    SimplexPoint::normalized(core::array::from_fn(|i| x[i] + lambda * (y[i] - x[i])))
        .expect("convex combination of simplex points")
}

/// Bisects `[seed_a, seed_b]` for the boundary between the basins of `x14`
/// and `x23`.
pub fn separatrix_bisect(
    analysis: &Analysis,
    seed_a: &SimplexPoint,
    seed_b: &SimplexPoint,
    cfg: &IntegratorConfig,
    iters: u32,
) -> Result<SeparatrixSample, Error> {
    let length = seed_a.distance(seed_b);
    if length == 0.0 {
        return Err(Error::DegenerateSegment);
    }
    let point_label = |m: &Option<Match>| match m {
        Some(Match {
            label: MatchLabel::Point(l @ (PointLabel::X14 | PointLabel::X23)),
            ..
        }) => Some(*l),
        _ => None,
    };
    let ma = attractor(analysis, seed_a, cfg)?;
    let mb = attractor(analysis, seed_b, cfg)?;
    let la = point_label(&ma).ok_or_else(|| Error::UnexpectedAttractor(describe(&ma)))?;
    let lb = point_label(&mb).ok_or_else(|| Error::UnexpectedAttractor(describe(&mb)))?;
    if la == lb {
        return Err(Error::SameAttractor(la.to_string()));
    }

    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut done = 0;
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let m = attractor(analysis, &along(seed_a, seed_b, mid), cfg)?;
        match point_label(&m) {
            Some(l) if l == la => lo = mid,
            Some(_) => hi = mid,
            // landed on the saddle itself or did not settle: keep this point
            None => {
                lo = mid;
                hi = mid;
                done += 1;
                break;
            }
        }
        done += 1;
    }
    let lambda = 0.5 * (lo + hi);
    Ok(SeparatrixSample {
        point: along(seed_a, seed_b, lambda),
        gap: (hi - lo) * length,
        iterations: done,
        labels: (la, lb),
        lambda,
    })
}

/// Smallest distance between the trajectory from `x0` and `target`.
pub fn closest_approach(
    analysis: &Analysis,
    x0: &SimplexPoint,
    target: &[f64; 4],
    cfg: &IntegratorConfig,
) -> Result<f64, Error> {
    let mut best = f64::INFINITY;
    let every_step = IntegratorConfig { sample_every: 1, ..*cfg };
    integrate_observed(x0, &analysis.matrix, &every_step, |s| {
        best = best.min(distance(&s.x, target));
    })?;
    Ok(best)
}

/// `n` uniform interior starts from a seeded generator.
pub fn dirichlet_starts(n: usize, seed: u64) -> Vec<SimplexPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| interior_uniform(&mut rng)).collect()
}

/// One start, run and matched.
#[derive(Debug, Clone, PartialEq)]
pub struct StartOutcome {
    pub start: SimplexPoint,
    pub run: RunResult,
    pub matched: Option<Match>,
    pub predicted: LimitPrediction,
    /// The match is one of the predicted candidates.
    pub consistent: bool,
}

pub fn classify_start(analysis: &Analysis, x0: &SimplexPoint, cfg: &IntegratorConfig) -> Result<StartOutcome, Error> {
    let run = run_to_limit(analysis, x0, cfg)?;
    let matched = match_catalog(&run.terminal, &analysis.catalog, MATCH_TOL);
    let predicted = predict_limit(analysis, x0);
    let consistent = matched.as_ref().is_some_and(|m| predicted.admits_match(analysis, m));
    Ok(StartOutcome {
        start: *x0,
        run,
        matched,
        predicted,
        consistent,
    })
}

/// Counts of limits over a batch of starts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BasinStats {
    pub counts: BTreeMap<String, usize>,
    pub n_samples: usize,
    pub seed: u64,
    /// Runs that hit `t_max` or matched nothing.
    pub unresolved: usize,
    /// Matched limits outside the predicted set.
    pub violations: usize,
}

impl BasinStats {
    pub fn from_outcomes(outcomes: &[StartOutcome], seed: u64) -> Self {
        let mut stats = BasinStats {
            n_samples: outcomes.len(),
            seed,
            ..Default::default()
        };
        for o in outcomes {
            match (&o.matched, o.run.status) {
                (Some(m), TerminalStatus::Converged) => {
                    *stats.counts.entry(m.label.to_string()).or_default() += 1;
                    if !o.consistent {
                        stats.violations += 1;
                    }
                }
                _ => stats.unresolved += 1,
            }
        }
        stats
    }
}

/// Runs `n_samples` uniform interior starts and tallies their limits.
pub fn basin_sample(analysis: &Analysis, n_samples: usize, cfg: &IntegratorConfig, seed: u64) -> Result<BasinStats, Error> {
    let outcomes = dirichlet_starts(n_samples, seed)
        .iter()
        .map(|x0| classify_start(analysis, x0, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BasinStats::from_outcomes(&outcomes, seed))
}

/// Result of restarting near a state and integrating back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReturnReport {
    pub trials: usize,
    /// Runs that converged to within the tolerance of the state.
    pub returned: usize,
    /// Largest terminal distance over all runs.
    pub worst: f64,
}

impl ReturnReport {
    pub fn all_returned(&self) -> bool {
        self.returned == self.trials
    }
}

/// Integrates from `trials` perturbations of `x` of size at most `radius`,
/// projected back onto the simplex, and checks each returns within `tol`.
pub fn perturbation_return(
    analysis: &Analysis,
    x: &[f64; 4],
    trials: usize,
    radius: f64,
    tol: f64,
    cfg: &IntegratorConfig,
    seed: u64,
) -> Result<ReturnReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ReturnReport {
        trials,
        returned: 0,
        worst: 0.0,
    };
    for _ in 0..trials {
        let mut d: [f64; 4] = core::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let mean = d.iter().sum::<f64>() / 4.0;
        d.iter_mut().for_each(|v| *v -= mean);
        let norm = libm::sqrt(d.iter().map(|v| v * v).sum::<f64>());
        if norm == 0.0 {
            continue;
        }
        let scale = radius * rng.random_range(0.0..=1.0) / norm;
        let x0 = project(core::array::from_fn(|i| x[i] + scale * d[i]));
        let run = run_to_limit(analysis, &x0, cfg)?;
        let gap = distance(&run.terminal, x);
        report.worst = report.worst.max(gap);
        if run.status == TerminalStatus::Converged && gap <= tol {
            report.returned += 1;
        }
    }
    Ok(report)
}

/// `x_int` as a float point, if present.
pub fn interior_point(game: &RepeatedGame) -> Option<[f64; 4]> {
    interior_equilibrium(game).map(|e| point_to_f64(&e.point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::BasePayoffs;
    use crate::rational::{int, rat, Rational};

    fn analysis(t: Rational, r: Rational, s: Rational, p: Rational, m: u32) -> Analysis {
        Analysis::new(RepeatedGame::new(BasePayoffs::new(t, r, s, p).unwrap(), m).unwrap())
    }

    fn bistable() -> Analysis {
        analysis(int(6), int(4), int(3), int(2), 8)
    }

    fn pt(x: [f64; 4]) -> SimplexPoint {
        SimplexPoint::new(x).unwrap()
    }

    #[test]
    fn prediction_in_d14() {
        let a = bistable();
        let p = predict_limit(&a, &pt([0.4, 0.2, 0.1, 0.3]));
        assert_eq!(p.candidates, [Candidate::Point(PointLabel::X14)]);
        assert!(p.deterministic);
    }

    #[test]
    fn prediction_for_large_reward() {
        let a = analysis(int(3), rat(5, 2), int(1), int(0), 3);
        let p = predict_limit(&a, &SimplexPoint::barycenter());
        assert_eq!(p.candidates.len(), 2);
        assert_eq!(p.candidates[0], Candidate::Point(PointLabel::X14));
        assert!(matches!(p.candidates[1], Candidate::Segment { label: ContinuumLabel::X12, .. }));
        assert!(!p.deterministic);
    }

    #[test]
    fn prediction_at_vertex_and_edges() {
        let a = bistable();
        let p = predict_limit(&a, &SimplexPoint::vertex(0).unwrap());
        assert_eq!(p.candidates, [Candidate::Point(PointLabel::P1)]);
        let p = predict_limit(&a, &pt([0.7, 0.0, 0.0, 0.3]));
        assert_eq!(p.candidates, [Candidate::Point(PointLabel::X14)]);
        let p = predict_limit(&a, &pt([0.0, 0.0, 0.4, 0.6]));
        assert!(p.candidates.contains(&whole(ContinuumLabel::X34)));
        let p = predict_limit(&a, &pt([0.3, 0.7, 0.0, 0.0]));
        assert!(p.candidates.contains(&whole(ContinuumLabel::X12)));
    }

    #[test]
    fn matching() {
        let a = bistable();
        let x14 = a.catalog.point(PointLabel::X14).unwrap().to_f64();
        let near = [x14[0] + 1e-7, x14[1], x14[2], x14[3] - 1e-7];
        let m = match_catalog(&near, &a.catalog, MATCH_TOL).unwrap();
        assert_eq!(m.label, MatchLabel::Point(PointLabel::X14));

        let m = match_catalog(&[0.3, 0.7, 0.0, 0.0], &a.catalog, MATCH_TOL).unwrap();
        assert_eq!(m.label, MatchLabel::Continuum(ContinuumLabel::X12));
        assert!((m.param.unwrap() - 0.3).abs() < 1e-12);

        assert!(match_catalog(&[0.25; 4], &a.catalog, MATCH_TOL).is_none());

        let m = match_catalog(&[0.0, 1.0, 0.0, 0.0], &a.catalog, MATCH_TOL).unwrap();
        assert_eq!(m.label, MatchLabel::Point(PointLabel::P2));
    }

    #[test]
    fn run_from_d14_reaches_x14() {
        let a = bistable();
        let run = run_to_limit(&a, &pt([0.4, 0.2, 0.1, 0.3]), &IntegratorConfig::default()).unwrap();
        assert_eq!(run.status, TerminalStatus::Converged);
        let m = match_catalog(&run.terminal, &a.catalog, MATCH_TOL).unwrap();
        assert_eq!(m.label, MatchLabel::Point(PointLabel::X14));
        assert!(m.distance < 1e-6);
    }

    #[test]
    fn run_on_x34_stays_put() {
        let a = bistable();
        let x0 = pt([0.0, 0.0, 0.4, 0.6]);
        let run = run_to_limit(&a, &x0, &IntegratorConfig::default()).unwrap();
        assert_eq!(run.terminal, *x0.coords());
        assert_eq!(run.t, 0.0);
    }

    #[test]
    fn run_on_the_line_reaches_the_saddle() {
        let a = analysis(int(6), int(4), int(3), int(2), 2);
        let e = interior_equilibrium(&a.game).unwrap();
        let x0 = SimplexPoint::from_exact(&crate::dynamics::line_point(&rat(1, 5), &e.ratios)).unwrap();
        let run = run_to_limit(&a, &x0, &IntegratorConfig::default()).unwrap();
        assert!(distance(&run.terminal, &point_to_f64(&e.point)) < 1e-6);
    }

    #[test]
    fn bisection_rejections() {
        let a = bistable();
        let cfg = IntegratorConfig::default();
        let x = pt([0.4, 0.2, 0.1, 0.3]);
        assert_eq!(separatrix_bisect(&a, &x, &x, &cfg, 10), Err(Error::DegenerateSegment));
        let y = pt([0.5, 0.2, 0.1, 0.2]);
        assert!(matches!(separatrix_bisect(&a, &x, &y, &cfg, 10), Err(Error::SameAttractor(_))));
    }

    #[test]
    fn bisection_finds_the_stable_manifold() {
        let a = bistable();
        let cfg = IntegratorConfig::default();
        let d14 = pt([0.4, 0.2, 0.1, 0.3]);
        let d23 = pt([0.1, 0.4, 0.4, 0.1]);
        let s = separatrix_bisect(&a, &d14, &d23, &cfg, 40).unwrap();
        assert_eq!(s.labels, (PointLabel::X14, PointLabel::X23));
        assert!(s.gap <= d14.distance(&d23) * libm::pow(2.0, -40.0) * 1.0001);
        let zone = zone_of(&s.point, &a.ratios);
        assert!(!matches!(zone, Zone::D14 | Zone::D23), "{zone}");
        let approach = closest_approach(&a, &s.point, &a.interior().unwrap(), &cfg).unwrap();
        assert!(approach < 1e-3, "{approach}");
    }

    #[test]
    fn basins_for_fig1() {
        let a = bistable();
        let stats = basin_sample(&a, 40, &IntegratorConfig::default(), 3).unwrap();
        assert_eq!(stats.n_samples, 40);
        assert_eq!(stats.violations, 0);
        assert_eq!(stats.unresolved, 0);
        assert!(stats.counts.keys().all(|k| k == "x14" || k == "x23"));
        let empty = basin_sample(&a, 0, &IntegratorConfig::default(), 3).unwrap();
        assert_eq!(empty.n_samples, 0);
        assert!(empty.counts.is_empty());
    }

    #[test]
    fn x14_attracts_nearby_starts() {
        let a = bistable();
        let x14 = a.catalog.point(PointLabel::X14).unwrap().to_f64();
        let r = perturbation_return(&a, &x14, 10, 1e-3, 1e-6, &IntegratorConfig::default(), 1).unwrap();
        assert!(r.all_returned(), "{r:?}");
        let xint = a.interior().unwrap();
        let r = perturbation_return(&a, &xint, 10, 1e-3, 1e-6, &IntegratorConfig::default(), 1).unwrap();
        assert!(r.returned < 10);
    }

    #[test]
    fn even_band_without_saddle() {
        let a = analysis(int(6), int(5), int(1), int(0), 2);
        assert!(!a.catalog.has(PointLabel::XInt));
        let stats = basin_sample(&a, 40, &IntegratorConfig::default(), 5).unwrap();
        assert_eq!(stats.violations, 0, "{stats:?}");
    }

    #[test]
    fn starts_are_reproducible() {
        assert_eq!(dirichlet_starts(5, 9), dirichlet_starts(5, 9));
        assert_ne!(dirichlet_starts(5, 9), dirichlet_starts(5, 10));
    }
}
