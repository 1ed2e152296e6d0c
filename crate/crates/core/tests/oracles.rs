use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use snowdrift_core::convergence::{basin_sample, Analysis};
use snowdrift_core::dynamics::{edge_dynamics, EdgeKind, IntegratorConfig, RatioConstants};
use snowdrift_core::equilibria::{catalog, x14, x23, PointLabel};
use snowdrift_core::metrics::{cooperation_level_exact, metrics_row};
use snowdrift_core::rational::{int, rat};
use snowdrift_core::simplex::exact_vertex;
use snowdrift_core::stability::{check_ess_exact, interior_spectrum, is_nash_exact};
use snowdrift_core::{BasePayoffs, Rational, RepeatedGame, SimplexPoint};

/// (first move, reply to C, reply to D) for ALLC, TFT, STFT, ALLD.
const REACTIVE: [(bool, bool, bool); 4] = [(true, true, true), (true, true, false), (false, true, false), (false, false, false)];

fn simulate(i: usize, j: usize, m: u32) -> Vec<(bool, bool)> {
    let (a, b) = (REACTIVE[i], REACTIVE[j]);
    let (mut x, mut y) = (a.0, b.0);
    let mut moves = Vec::new();
    for _ in 0..m {
        moves.push((x, y));
        let nx = if y { a.1 } else { a.2 };
        let ny = if x { b.1 } else { b.2 };
        x = nx;
        y = ny;
    }
    moves
}

fn game(t: Rational, r: Rational, s: Rational, p: Rational, m: u32) -> RepeatedGame {
    RepeatedGame::new(BasePayoffs::new(t, r, s, p).unwrap(), m).unwrap()
}

fn gi(t: i64, r: i64, s: i64, p: i64, m: u32) -> RepeatedGame {
    game(int(t), int(r), int(s), int(p), m)
}

fn random_game(rng: &mut ChaCha8Rng) -> RepeatedGame {
    let mut step = || rat(rng.random_range(1..=40), rng.random_range(1..=8));
    let p = rat(-3, 2) + step();
    let s = &p + step();
    let r = &s + step();
    let t = &r + step();
    game(t, r, s, p, rng.random_range(2..=15))
}

#[test]
fn payoff_matrix_matches_round_by_round_play() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let g = random_game(&mut rng);
        let p = g.payoffs();
        let payoff = |me: bool, other: bool| match (me, other) {
            (true, true) => p.reward().clone(),
            (true, false) => p.sucker().clone(),
            (false, true) => p.temptation().clone(),
            (false, false) => p.punishment().clone(),
        };
        let a = g.payoff_matrix();
        for i in 0..4 {
            for j in 0..4 {
                let total: Rational = simulate(i, j, g.rounds()).into_iter().map(|(x, y)| payoff(x, y)).sum();
                assert_eq!(a.get(i, j), &total, "entry ({i},{j}) for m={}", g.rounds());
            }
        }
    }
}

#[test]
fn cooperation_counts_match_play_and_closed_form() {
    for m in 2..=20u32 {
        let c = gi(6, 4, 3, 2, m).cooperation_counts();
        let n = m as i64;
        let expected = [
            [2 * n, 2 * n, 2 * n - 1, n],
            [2 * n, 2 * n, n, 1],
            [2 * n - 1, n, 0, 0],
            [n, 1, 0, 0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                let played = simulate(i, j, m).iter().map(|&(x, y)| x as u32 + y as u32).sum::<u32>();
                assert_eq!(c.get(i, j), played);
                assert_eq!(c.get(i, j) as i64, expected[i][j], "C{}{} at m={m}", i + 1, j + 1);
            }
        }
    }
}

#[test]
fn bistable_example_ratio_constants() {
    let b = RatioConstants::new(&gi(6, 4, 3, 2, 8).reduced_matrix());
    assert_eq!((b.b1, b.b2), (rat(5, 7), rat(8, 7)));
}

#[test]
fn cooperation_at_x14_and_on_x12() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let g = random_game(&mut rng);
        let p = g.payoffs();
        let c = g.cooperation_counts();
        let sp = p.sucker() - p.punishment();
        let want = &sp / (&sp + p.temptation() - p.reward());
        assert_eq!(cooperation_level_exact(&x14(&g.reduced_matrix()), &c), want);
        for k in 0..=5 {
            let alpha = rat(k, 5);
            let x = [alpha.clone(), int(1) - &alpha, int(0), int(0)];
            assert_eq!(cooperation_level_exact(&x, &c), int(1));
        }
    }
}

#[test]
fn allc_tft_and_stft_alld_edges_are_lines_of_rest_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let a = random_game(&mut rng).payoff_matrix();
        assert_eq!(edge_dynamics(&a, 0, 1).unwrap().kind, EdgeKind::AllFixed);
        assert_eq!(edge_dynamics(&a, 2, 3).unwrap().kind, EdgeKind::AllFixed);
    }
}

#[test]
fn nash_facts() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..30 {
        let g = random_game(&mut rng);
        let a = g.payoff_matrix();
        assert!(is_nash_exact(&x14(&g.reduced_matrix()), &a).is_nash);
        assert!(!is_nash_exact(&exact_vertex(2), &a).is_nash);
        for k in 0..=4 {
            let beta = rat(k, 4);
            let x = [int(0), int(0), beta.clone(), int(1) - &beta];
            assert!(!is_nash_exact(&x, &a).is_nash);
        }
    }
}

#[test]
fn both_attractors_are_ess_in_the_bistable_example() {
    let g = gi(6, 4, 3, 2, 8);
    let a = g.payoff_matrix();
    let ap = g.reduced_matrix();
    assert!(check_ess_exact(&x14(&ap), &a, 5_000, 1).is_ess());
    assert!(check_ess_exact(&x23(&ap).unwrap(), &a, 5_000, 1).is_ess());
}

#[test]
fn saddle_coefficients_satisfy_c_equals_ab() {
    for m in [2, 4, 8] {
        let s = interior_spectrum(&gi(6, 4, 3, 2, m)).unwrap();
        let (a, b, c) = &s.exact;
        assert_eq!(c, &(a * b));
        assert!(s.a > 0.0 && s.b < 0.0 && s.c < 0.0);
    }
}

#[test]
fn no_rest_points_outside_the_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    const N: i64 = 24;
    for _ in 0..12 {
        let g = random_game(&mut rng);
        let a = g.payoff_matrix();
        let cat = catalog(&g);
        for i in 0..=N {
            for j in 0..=N - i {
                for k in 0..=N - i - j {
                    let x = [rat(i, N), rat(j, N), rat(k, N), rat(N - i - j - k, N)];
                    let field = snowdrift_core::dynamics::replicator_rhs(&x, a.entries());
                    if field.iter().all(Zero::is_zero) {
                        let xf = SimplexPoint::from_exact(&x).unwrap();
                        assert!(cat.distance_to(xf.coords()) < 1e-12, "uncataloged rest point {x:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn bistable_basins_hold_only_the_two_attractors() {
    let analysis = Analysis::new(gi(6, 4, 3, 2, 8));
    let stats = basin_sample(&analysis, 1000, &IntegratorConfig::default(), 21).unwrap();
    assert_eq!(stats.unresolved, 0);
    assert_eq!(stats.violations, 0);
    assert!(stats.counts.keys().all(|k| k == "x14" || k == "x23"), "{:?}", stats.counts);
    assert_eq!(stats.counts.values().sum::<usize>(), 1000);
}

#[test]
fn x23_pays_more_than_x14_wherever_both_exist() {
    for k in 21..=59 {
        let row = metrics_row(&game(int(3), rat(k, 20), int(1), int(0), 6));
        if let (Some(a), Some(b)) = (row.get("x23"), row.get("x14")) {
            assert!(a.avg_payoff > b.avg_payoff);
            assert!(a.coop_level > b.coop_level);
        }
    }
}

#[test]
fn catalog_labels_for_the_bistable_example() {
    let cat = catalog(&gi(6, 4, 3, 2, 8));
    for label in [PointLabel::X13, PointLabel::X14, PointLabel::X23, PointLabel::XInt] {
        assert!(cat.has(label), "{label}");
    }
}
