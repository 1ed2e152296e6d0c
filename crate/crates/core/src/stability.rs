//! Nash and ESS checks, and the linearization at the interior saddle.

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{payoff_vector, utility};
use crate::equilibria::interior_equilibrium;
use crate::error::Error;
use crate::game::{FloatMatrix, Parity, PayoffMatrix, ReducedMatrix, RepeatedGame};
use crate::rational::{from_f64, int, to_f64, Rational};
use crate::simplex::{sample_face, SimplexPoint};

/// Slack on vertex payoff comparisons in float mode.
pub const NASH_TOL: f64 = 1e-12;

/// A pure strategy that does strictly better against `x` than `x` itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub vertex: usize,
    /// `(A x)_vertex - x^T A x`
    pub gain: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NashReport {
    pub is_nash: bool,
    pub witness: Option<Witness>,
}

fn best_vertex(values: impl Iterator<Item = f64>) -> (usize, f64) {
    values
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best })
}

/// `x^T A x >= y^T A x` for all `y`, checked on the four vertices.
pub fn is_nash(x: &SimplexPoint, a: &PayoffMatrix) -> NashReport {
    nash_float(x.coords(), &a.to_f64(), [true; 4])
}

fn nash_float(x: &[f64; 4], af: &FloatMatrix, support: [bool; 4]) -> NashReport {
    let ax = payoff_vector(af, x);
    let mean = utility(x, x, af);
    let (vertex, best) = best_vertex((0..4).map(|i| if support[i] { ax[i] } else { f64::NEG_INFINITY }));
    let gain = best - mean;
    if gain <= NASH_TOL {
        NashReport {
            is_nash: true,
            witness: None,
        }
    } else {
        NashReport {
            is_nash: false,
            witness: Some(Witness { vertex, gain }),
        }
    }
}

/// Exact Nash test, optionally restricted to the strategies in `support`.
pub fn is_nash_exact_on(x: &[Rational; 4], a: &[[Rational; 4]; 4], support: [bool; 4]) -> NashReport {
    let ax = payoff_vector(a, x);
    let mean = utility(x, x, a);
    let mut witness: Option<(usize, Rational)> = None;
    for (i, v) in ax.iter().enumerate() {
        if !support[i] {
            continue;
        }
        let gain = v - &mean;
        if gain.is_positive() && witness.as_ref().is_none_or(|(_, g)| &gain > g) {
            witness = Some((i, gain));
        }
    }
    NashReport {
        is_nash: witness.is_none(),
        witness: witness.map(|(vertex, gain)| Witness {
            vertex,
            gain: to_f64(&gain),
        }),
    }
}

pub fn is_nash_exact(x: &[Rational; 4], a: &PayoffMatrix) -> NashReport {
    is_nash_exact_on(x, a.entries(), [true; 4])
}

/// Nash states on the segment between `p2` (`alpha = 0`) and `p1` (`alpha = 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NashInterval {
    Empty,
    /// Only `p2`.
    P2,
    /// `alpha` in `[lo, hi]`.
    Closed(Rational, Rational),
}

impl NashInterval {
    pub fn is_empty(&self) -> bool {
        matches!(self, NashInterval::Empty)
    }

    pub fn contains(&self, alpha: &Rational) -> bool {
        match self {
            NashInterval::Empty => false,
            NashInterval::P2 => alpha.is_zero(),
            NashInterval::Closed(lo, hi) => lo <= alpha && alpha <= hi,
        }
    }

    /// Bounds as floats, if nonempty.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        match self {
            NashInterval::Empty => None,
            NashInterval::P2 => Some((0.0, 0.0)),
            NashInterval::Closed(lo, hi) => Some((to_f64(lo), to_f64(hi))),
        }
    }
}

/// Upper bound on `x1/x2` for Nash states on `X12`:
/// `min{-a'32/a'31, -a'42/a'41}`.
pub fn x12_ratio_bound(ap: &ReducedMatrix) -> Rational {
    let c3 = -ap.get(2, 1) / ap.get(2, 0);
    let c4 = -ap.get(3, 1) / ap.get(3, 0);
    c3.min(c4)
}

/// Nash states on `X12` against deviations inside `support`.
///
/// On `X12` every payoff of ALLC and TFT is zero in `A'`, so the state with
/// share `alpha` of ALLC is Nash iff `a'k1 alpha + a'k2 (1 - alpha) <= 0` for
/// each deviating strategy `k` in `{STFT, ALLD}`.
pub fn x12_nash_interval_on(ap: &ReducedMatrix, support: [bool; 4]) -> NashInterval {
    let mut hi = int(1);
    for k in [2, 3] {
        if !support[k] {
            continue;
        }
        let (ak1, ak2) = (ap.get(k, 0), ap.get(k, 1));
        // ak1 > 0, so the constraint reads x1/x2 <= -ak2/ak1
        let c = -ak2 / ak1;
        if c.is_negative() {
            return NashInterval::Empty;
        }
        let bound = &c / (int(1) + &c);
        if bound < hi {
            hi = bound;
        }
    }
    if hi.is_zero() {
        NashInterval::P2
    } else {
        NashInterval::Closed(Rational::zero(), hi)
    }
}

/// Nash states on `X12` in the full game.
pub fn nash_interval_x12(game: &RepeatedGame) -> NashInterval {
    x12_nash_interval_on(&game.reduced_matrix(), [true; 4])
}

/// Whether each boundary point is a Nash state, from the payoff regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingletonFlags {
    pub x13: bool,
    pub x24: bool,
    pub x14: bool,
    pub x23: bool,
}

pub fn singleton_nash_flags(game: &RepeatedGame) -> SingletonFlags {
    let th = game.thresholds();
    let p = game.payoffs();
    let r = p.reward();
    let x23 = r < &th.midpoint || (game.parity() == Parity::Odd && r == &th.midpoint);
    SingletonFlags {
        x13: false,
        x24: false,
        x14: true,
        x23,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EssReport {
    /// Nash condition.
    pub condition1: bool,
    /// Stability against alternative best replies, over the sampled face.
    pub condition2: bool,
    pub sample_count: usize,
    pub seed: u64,
}

impl EssReport {
    pub fn is_ess(&self) -> bool {
        self.condition1 && self.condition2
    }
}

/// Default number of alternative best replies sampled by [`check_ess`].
pub const ESS_SAMPLES: usize = 10_000;

/// ESS test for an exact state.
///
/// The second condition, `x^T A y > y^T A y`, is tested on uniform samples
/// `y != x` from the face spanned by the pure best replies to `x`.
pub fn check_ess_exact(x: &[Rational; 4], a: &PayoffMatrix, n_samples: usize, seed: u64) -> EssReport {
    let entries = a.entries();
    let ax = payoff_vector(entries, x);
    let mean = utility(x, x, entries);
    let condition1 = ax.iter().all(|v| v <= &mean);
    let face = core::array::from_fn(|i| ax[i] == mean);

    let mut condition2 = condition1;
    if condition1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..n_samples {
            let y = sample_face(&mut rng, face);
            let y: [Rational; 4] = core::array::from_fn(|i| from_f64(y.get(i)).expect("finite sample"));
            let total: Rational = y.iter().sum();
            let y = y.map(|v| v / &total);
            if &y == x {
                continue;
            }
            if utility(x, &y, entries) <= utility(&y, &y, entries) {
                condition2 = false;
                break;
            }
        }
    }
    EssReport {
        condition1,
        condition2,
        sample_count: n_samples,
        seed,
    }
}

/// Float ESS test with [`NASH_TOL`] slack on payoff comparisons.
pub fn check_ess(x: &SimplexPoint, a: &PayoffMatrix, n_samples: usize, seed: u64) -> EssReport {
    let af = a.to_f64();
    let xv = x.coords();
    let ax = payoff_vector(&af, xv);
    let mean = utility(xv, xv, &af);
    let condition1 = ax.iter().all(|&v| v <= mean + NASH_TOL);
    let face = core::array::from_fn(|i| ax[i] >= mean - 1e-9);

    let mut condition2 = condition1;
    if condition1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..n_samples {
            let y = sample_face(&mut rng, face);
            let d: [f64; 4] = core::array::from_fn(|i| y.get(i) - xv[i]);
            if d.iter().all(|v| v.abs() < 1e-9) {
                continue;
            }
            // x'Ay - y'Ay = -(d'Ax) - d'Ad with d = y - x
            let dax = utility(&d, xv, &af);
            let dad = utility(&d, &d, &af);
            if -dax - dad <= 0.0 {
                condition2 = false;
                break;
            }
        }
    }
    EssReport {
        condition1,
        condition2,
        sample_count: n_samples,
        seed,
    }
}

pub type Jacobian<T> = [[T; 3]; 3];

/// Jacobian of the reduced system in `(x1, x2, x3)` with `x4 = 1 - x1 - x2 - x3`.
pub fn jacobian_analytic<T>(x: &[T; 4], a: &[[T; 4]; 4]) -> Jacobian<T>
where
    T: crate::dynamics::Scalar,
{
    let ax = payoff_vector(a, x);
    let at: [[T; 4]; 4] = core::array::from_fn(|i| core::array::from_fn(|j| a[j][i].clone()));
    let atx = payoff_vector(&at, x);
    let mean = utility(x, x, a);
    core::array::from_fn(|i| {
        core::array::from_fn(|k| {
            let d_mean = ax[k].clone() - ax[3].clone() + atx[k].clone() - atx[3].clone();
            let off = x[i].clone() * (a[i][k].clone() - a[i][3].clone() - d_mean);
            if i == k {
                off + ax[i].clone() - mean.clone()
            } else {
                off
            }
        })
    })
}

fn reduced_field(af: &FloatMatrix, y: &[f64; 3]) -> [f64; 3] {
    let x = [y[0], y[1], y[2], 1.0 - y[0] - y[1] - y[2]];
    let ax = payoff_vector(af, &x);
    let mean = utility(&x, &x, af);
    core::array::from_fn(|i| (ax[i] - mean) * x[i])
}

/// Forward-difference step of [`jacobian_reduced`].
pub const FD_STEP: f64 = 1e-7;

/// Forward-difference Jacobian of the reduced system.
pub fn jacobian_reduced(x: &SimplexPoint, a: &PayoffMatrix) -> Jacobian<f64> {
    let af = a.to_f64();
    let v = x.coords();
    let y = [v[0], v[1], v[2]];
    let base = reduced_field(&af, &y);
    let mut jac = [[0.0; 3]; 3];
    for k in 0..3 {
        let mut yk = y;
        yk[k] += FD_STEP;
        let fk = reduced_field(&af, &yk);
        for i in 0..3 {
            jac[i][k] = (fk[i] - base[i]) / FD_STEP;
        }
    }
    jac
}

/// Coefficients `(a, b, c)` of `l^3 + a l^2 + b l + c`.
pub fn characteristic<T>(j: &Jacobian<T>) -> (T, T, T)
where
    T: crate::dynamics::Scalar + core::ops::Neg<Output = T>,
{
    let m = |i: usize, k: usize| j[i][k].clone();
    let trace = m(0, 0) + m(1, 1) + m(2, 2);
    let minors = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0))
        + (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0))
        + (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
    let det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    (-trace, minors, -det)
}

/// Linearization at `x_int`.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorSpectrum {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `[-a, -sqrt(-b), sqrt(-b)]`
    pub eigenvalues: [f64; 3],
    /// The same coefficients in exact arithmetic.
    pub exact: (Rational, Rational, Rational),
}

pub fn interior_spectrum(game: &RepeatedGame) -> Result<InteriorSpectrum, Error> {
    let eq = interior_equilibrium(game).ok_or(Error::NoInteriorEquilibrium)?;
    let jac = jacobian_analytic(&eq.point, game.payoff_matrix().entries());
    let (a, b, c) = characteristic(&jac);
    let (af, bf, cf) = (to_f64(&a), to_f64(&b), to_f64(&c));
    let root = libm::sqrt(-bf);
    Ok(InteriorSpectrum {
        a: af,
        b: bf,
        c: cf,
        eigenvalues: [-af, -root, root],
        exact: (a, b, c),
    })
}
