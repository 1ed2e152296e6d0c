//! The replicator vector field and a simplex-preserving RK4 integrator.
//!
//! `x_i' = [u(p^i, x) - u(x, x)] x_i` with `u(x, y) = x^T A y`.
//!
//! The field is evaluated generically so the same code runs on `f64` and on
//! exact rationals; exact evaluation is what the equilibrium checks use.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::game::{FloatMatrix, PayoffMatrix, ReducedMatrix};
use crate::rational::{int, to_f64, Rational};
use crate::simplex::{max_norm, SimplexPoint};

/// Minimal arithmetic needed to evaluate the field.
pub trait Scalar: Clone + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {}

impl<T> Scalar for T where T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T> {}

/// `A x`.
pub fn payoff_vector<T: Scalar>(a: &[[T; 4]; 4], x: &[T; 4]) -> [T; 4] {
    core::array::from_fn(|i| {
        (0..4).fold(T::zero(), |acc, j| acc + a[i][j].clone() * x[j].clone())
    })
}

/// `x^T A y`.
pub fn utility<T: Scalar>(x: &[T; 4], y: &[T; 4], a: &[[T; 4]; 4]) -> T {
    let ay = payoff_vector(a, y);
    (0..4).fold(T::zero(), |acc, i| acc + x[i].clone() * ay[i].clone())
}

/// Right-hand side of the replicator equation.
pub fn replicator_rhs<T: Scalar>(x: &[T; 4], a: &[[T; 4]; 4]) -> [T; 4] {
    let ax = payoff_vector(a, x);
    let mean = (0..4).fold(T::zero(), |acc, i| acc + x[i].clone() * ax[i].clone());
    core::array::from_fn(|i| (ax[i].clone() - mean.clone()) * x[i].clone())
}

#[inline]
fn rhs_f64(a: &FloatMatrix, x: &[f64; 4]) -> [f64; 4] {
    let mut ax = [0.0; 4];
    for i in 0..4 {
        ax[i] = a[i][0] * x[0] + a[i][1] * x[1] + a[i][2] * x[2] + a[i][3] * x[3];
    }
    let mean = x[0] * ax[0] + x[1] * ax[1] + x[2] * ax[2] + x[3] * ax[3];
    [(ax[0] - mean) * x[0], (ax[1] - mean) * x[1], (ax[2] - mean) * x[2], (ax[3] - mean) * x[3]]
}

/// Float field at a simplex point.
pub fn rhs(x: &SimplexPoint, a: &PayoffMatrix) -> [f64; 4] {
    rhs_f64(&a.to_f64(), x.coords())
}

/// Max-norm of the exact field.
pub fn exact_residual(x: &[Rational; 4], a: &PayoffMatrix) -> Rational {
    replicator_rhs(x, a.entries())
        .into_iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Integrator settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_max: f64,
    /// Stop once the max-norm of the field drops below this.
    pub eps_conv: f64,
    /// Clip and rescale after every step.
    pub renorm: bool,
    /// Record every n-th step (the first and last states are always kept).
    pub sample_every: u32,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            dt: 0.01,
            t_max: 1e4,
            eps_conv: 1e-10,
            renorm: true,
            sample_every: 100,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::BadConfig("dt must be positive"));
        }
        if !(self.t_max >= 0.0 && self.t_max.is_finite()) {
            return Err(Error::BadConfig("t_max must be nonnegative"));
        }
        if self.eps_conv.is_nan() || self.eps_conv <= 0.0 {
            return Err(Error::BadConfig("eps_conv must be positive"));
        }
        if self.sample_every == 0 {
            return Err(Error::BadConfig("sample_every must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminalStatus {
    Converged,
    MaxTime,
    Failed,
}

impl fmt::Display for TerminalStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TerminalStatus::Converged => "converged",
            TerminalStatus::MaxTime => "max_time",
            TerminalStatus::Failed => "failed",
        })
    }
}

/// State at one recorded time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub x: [f64; 4],
    /// Max-norm of the field at `x`.
    pub rhs_norm: f64,
}

/// How an integration run ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    pub last: Sample,
    pub status: TerminalStatus,
    pub steps: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub status: TerminalStatus,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("a trajectory has at least its initial sample")
    }
}

/// Largest excursion outside the simplex tolerated before a step counts as failed.
const LEAVE_TOL: f64 = 1e-6;

/// Integrates from `x0`, passing every recorded sample to `observer`.
///
/// Coordinates that are zero at the start stay exactly zero. After each step
/// negative round-off is clipped and the state rescaled to sum one.
pub fn integrate_observed<F: FnMut(&Sample)>(
    x0: &SimplexPoint,
    a: &PayoffMatrix,
    cfg: &IntegratorConfig,
    mut observer: F,
) -> Result<Outcome, Error> {
    cfg.validate()?;
    let af = a.to_f64();
    let pinned = x0.coords().map(|v| v == 0.0);
    let dt = cfg.dt;
    let max_steps = libm::ceil(cfg.t_max / dt - 1e-9).max(0.0) as u64;

    let mut x = *x0.coords();
    let mut k1 = rhs_f64(&af, &x);
    let mut sample = Sample {
        t: 0.0,
        x,
        rhs_norm: max_norm(&k1),
    };
    observer(&sample);
    let mut step = 0u64;
    let mut reported = true;

    let status = loop {
        if sample.rhs_norm < cfg.eps_conv {
            break TerminalStatus::Converged;
        }
        if step >= max_steps {
            break TerminalStatus::MaxTime;
        }

        let k2 = rhs_f64(&af, &axpy(&x, 0.5 * dt, &k1));
        let k3 = rhs_f64(&af, &axpy(&x, 0.5 * dt, &k2));
        let k4 = rhs_f64(&af, &axpy(&x, dt, &k3));
        let mut next = [0.0; 4];
        for i in 0..4 {
            next[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if pinned[i] {
                next[i] = 0.0;
            }
        }
        step += 1;

        let total: f64 = next.iter().sum();
        let lowest = next.iter().fold(f64::INFINITY, |m, &v| m.min(v));
        if !total.is_finite() || lowest < -LEAVE_TOL || (total - 1.0).abs() > LEAVE_TOL {
            sample = Sample {
                t: step as f64 * dt,
                x: next,
                rhs_norm: f64::NAN,
            };
            observer(&sample);
            return Ok(Outcome {
                last: sample,
                status: TerminalStatus::Failed,
                steps: step,
            });
        }
        if cfg.renorm {
            for v in next.iter_mut() {
                if *v < 0.0 {
                    *v = 0.0;
                }
            }
            let total: f64 = next.iter().sum();
            for v in next.iter_mut() {
                *v /= total;
            }
        }

        x = next;
        k1 = rhs_f64(&af, &x);
        sample = Sample {
            t: step as f64 * dt,
            x,
            rhs_norm: max_norm(&k1),
        };
        reported = step.is_multiple_of(cfg.sample_every as u64);
        if reported {
            observer(&sample);
        }
    };
    if !reported {
        observer(&sample);
    }
    Ok(Outcome {
        last: sample,
        status,
        steps: step,
    })
}

/// Integrates and keeps every `cfg.sample_every`-th state.
pub fn integrate(x0: &SimplexPoint, a: &PayoffMatrix, cfg: &IntegratorConfig) -> Result<Trajectory, Error> {
    let mut samples = Vec::new();
    let outcome = integrate_observed(x0, a, cfg, |s| samples.push(*s))?;
    Ok(Trajectory {
        samples,
        status: outcome.status,
    })
}

fn axpy(x: &[f64; 4], h: f64, k: &[f64; 4]) -> [f64; 4] {
    [x[0] + h * k[0], x[1] + h * k[1], x[2] + h * k[2], x[3] + h * k[3]]
}

/// Thresholds `b1` (for `x4/x3`) and `b2` (for `x1/x2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioConstants {
    pub b1: Rational,
    pub b2: Rational,
}

impl RatioConstants {
    /// `b1 = -(a'13 - a'23)/(a'14 - a'24)`, `b2 = -(a'42 - a'32)/(a'41 - a'31)`.
    pub fn new(ap: &ReducedMatrix) -> Self {
        let a = |i: usize, j: usize| ap.get(i - 1, j - 1);
        let b1 = -(a(1, 3) - a(2, 3)) / (a(1, 4) - a(2, 4));
        let b2 = -(a(4, 2) - a(3, 2)) / (a(4, 1) - a(3, 1));
        Self { b1, b2 }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.b1), to_f64(&self.b2))
    }
}

/// Which tracked ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ratio {
    /// `x1 / x2`
    R12,
    /// `x4 / x3`
    R43,
}

/// Time derivative of `x1/x2` or `x4/x3` at an interior point.
pub fn ratio_derivative(x: &SimplexPoint, ap: &ReducedMatrix, which: Ratio) -> Result<f64, Error> {
    let a = ap.to_f64();
    let v = x.coords();
    match which {
        Ratio::R12 => {
            if v[1] == 0.0 {
                return Err(Error::ZeroDenominator {
                    numerator: 1,
                    denominator: 2,
                });
            }
            let rate = (a[0][2] - a[1][2]) * v[2] + (a[0][3] - a[1][3]) * v[3];
            Ok(rate * v[0] / v[1])
        }
        Ratio::R43 => {
            if v[2] == 0.0 {
                return Err(Error::ZeroDenominator {
                    numerator: 4,
                    denominator: 3,
                });
            }
            let rate = (a[3][0] - a[2][0]) * v[0] + (a[3][1] - a[2][1]) * v[1];
            Ok(rate * v[3] / v[2])
        }
    }
}

/// `(ln(x1/x2), ln(x4/x3))`; infinite or NaN on the boundary.
pub fn log_ratios(x: &[f64; 4]) -> (f64, f64) {
    (
        libm::log(x[0]) - libm::log(x[1]),
        libm::log(x[3]) - libm::log(x[2]),
    )
}

/// Region of the simplex cut out by the two ratio planes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Zone {
    D14,
    D23,
    Y14,
    Y23,
    /// `x4/x3 = b1`, `x1/x2 > b2`
    P11,
    /// `x4/x3 = b1`, `x1/x2 < b2`
    P12,
    /// `x1/x2 = b2`, `x4/x3 > b1`
    P21,
    /// `x1/x2 = b2`, `x4/x3 < b1`
    P22,
    LInt,
    Boundary,
}

impl Zone {
    pub fn name(self) -> &'static str {
        match self {
            Zone::D14 => "D14",
            Zone::D23 => "D23",
            Zone::Y14 => "Y14",
            Zone::Y23 => "Y23",
            Zone::P11 => "P11",
            Zone::P12 => "P12",
            Zone::P21 => "P21",
            Zone::P22 => "P22",
            Zone::LInt => "L_int",
            Zone::Boundary => "boundary",
        }
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `c12` compares `x1/x2` with `b2`, `c43` compares `x4/x3` with `b1`.
fn zone_from(c12: Ordering, c43: Ordering) -> Zone {
    use Ordering::*;
    match (c12, c43) {
        (Greater, Greater) => Zone::D14,
        (Less, Less) => Zone::D23,
        (Greater, Less) => Zone::Y14,
        (Less, Greater) => Zone::Y23,
        (Greater, Equal) => Zone::P11,
        (Less, Equal) => Zone::P12,
        (Equal, Greater) => Zone::P21,
        (Equal, Less) => Zone::P22,
        (Equal, Equal) => Zone::LInt,
    }
}

pub fn zone_of(x: &SimplexPoint, b: &RatioConstants) -> Zone {
    let v = x.coords();
    if !x.is_interior() {
        return Zone::Boundary;
    }
    let (b1, b2) = b.to_f64();
    let c12 = (v[0] / v[1]).partial_cmp(&b2).unwrap_or(Ordering::Equal);
    let c43 = (v[3] / v[2]).partial_cmp(&b1).unwrap_or(Ordering::Equal);
    zone_from(c12, c43)
}

pub fn zone_of_exact(x: &[Rational; 4], b: &RatioConstants) -> Zone {
    if x.iter().any(|v| !v.is_positive()) {
        return Zone::Boundary;
    }
    let c12 = (&x[0] / &x[1]).cmp(&b.b2);
    let c43 = (&x[3] / &x[2]).cmp(&b.b1);
    zone_from(c12, c43)
}

/// Qualitative flow on an edge `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeKind {
    /// Every point of the edge is fixed.
    AllFixed,
    /// Interior fixed point with share `y` of strategy `i`, attracting.
    Stable(Rational),
    /// Interior fixed point with share `y` of strategy `i`, repelling.
    Unstable(Rational),
    /// The given strategy takes over from every interior start.
    Dominates(usize),
}

/// Replicator flow restricted to an edge of the simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePortrait {
    pub i: usize,
    pub j: usize,
    /// `[[a_ii, a_ij], [a_ji, a_jj]]`
    pub matrix: [[Rational; 2]; 2],
    pub kind: EdgeKind,
}

impl EdgePortrait {
    /// The interior fixed point as a point of the full simplex, if any.
    pub fn fixed_point(&self) -> Option<[Rational; 4]> {
        let y = match &self.kind {
            EdgeKind::Stable(y) | EdgeKind::Unstable(y) => y,
            _ => return None,
        };
        let mut x: [Rational; 4] = core::array::from_fn(|_| Rational::zero());
        x[self.i] = y.clone();
        x[self.j] = int(1) - y;
        Some(x)
    }
}

/// Two-strategy analysis on the edge between `p^i` and `p^j` (0-based).
pub fn edge_dynamics(a: &PayoffMatrix, i: usize, j: usize) -> Result<EdgePortrait, Error> {
    if i >= 4 {
        return Err(Error::BadIndex(i));
    }
    if j >= 4 {
        return Err(Error::BadIndex(j));
    }
    if i == j {
        return Err(Error::DegenerateEdge);
    }
    let matrix = [
        [a.get(i, i).clone(), a.get(i, j).clone()],
        [a.get(j, i).clone(), a.get(j, j).clone()],
    ];
    // y' = y(1-y)[alpha y - beta (1-y)], y the share of i
    let alpha = &matrix[0][0] - &matrix[1][0];
    let beta = &matrix[1][1] - &matrix[0][1];
    let kind = if alpha.is_zero() && beta.is_zero() {
        EdgeKind::AllFixed
    } else if alpha.is_negative() && beta.is_negative() {
        EdgeKind::Stable(&beta / (&alpha + &beta))
    } else if alpha.is_positive() && beta.is_positive() {
        EdgeKind::Unstable(&beta / (&alpha + &beta))
    } else if !alpha.is_negative() && !beta.is_positive() {
        EdgeKind::Dominates(i)
    } else {
        EdgeKind::Dominates(j)
    };
    Ok(EdgePortrait { i, j, matrix, kind })
}

/// Coefficients of the flow of `x2` along `L_int`: `k (f x2 - g)(r x2 - s) x2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineFlow {
    pub k: Rational,
    pub f: Rational,
    pub g: Rational,
    pub r: Rational,
    pub s: Rational,
}

impl LineFlow {
    /// Available only when `b1 > 0`, i.e. when `L_int` lies in the simplex.
    pub fn new(ap: &ReducedMatrix) -> Result<Self, Error> {
        let b = RatioConstants::new(ap);
        if !b.b1.is_positive() {
            return Err(Error::NoInteriorEquilibrium);
        }
        let a = |i: usize, j: usize| ap.get(i - 1, j - 1).clone();
        let g = a(4, 1) - a(3, 1);
        let f = a(3, 2) - a(4, 2) + a(4, 1) - a(3, 1);
        let k = Rational::from_integer(1.into()) / (&g * &g * (a(2, 3) - a(1, 3) + a(1, 4) - a(2, 4)));
        let m1 = a(1, 3) * a(2, 4) - a(1, 4) * a(2, 3);
        let m2 = a(3, 1) * a(4, 2) - a(3, 2) * a(4, 1);
        let s = &m1 * (a(3, 1) - a(4, 1));
        let r = &m1 * (a(3, 1) - a(4, 1) + a(4, 2) - a(3, 2)) + &m2 * (a(1, 3) - a(2, 3) + a(2, 4) - a(1, 4));
        Ok(Self { k, f, g, r, s })
    }

    pub fn eval(&self, x2: f64) -> f64 {
        let (k, f, g, r, s) = (to_f64(&self.k), to_f64(&self.f), to_f64(&self.g), to_f64(&self.r), to_f64(&self.s));
        k * (f * x2 - g) * (r * x2 - s) * x2
    }

    pub fn eval_exact(&self, x2: &Rational) -> Rational {
        &self.k * (&self.f * x2 - &self.g) * (&self.r * x2 - &self.s) * x2
    }

    /// The two nonzero roots `s/r` and `g/f`.
    pub fn roots(&self) -> (Rational, Rational) {
        (&self.s / &self.r, &self.g / &self.f)
    }
}

/// Point of the line `x1 = b2 x2`, `x4 = b1 x3` with the given `x2`.
pub fn line_point(x2: &Rational, b: &RatioConstants) -> [Rational; 4] {
    let one = int(1);
    let x1 = &b.b2 * x2;
    let x3 = (&one - (&one + &b.b2) * x2) / (&one + &b.b1);
    let x4 = &b.b1 * &x3;
    [x1, x2.clone(), x3, x4]
}

/// `x2' = k (f x2 - g)(r x2 - s) x2` on `L_int`.
pub fn line_restricted_rhs(x2: f64, ap: &ReducedMatrix) -> Result<f64, Error> {
    Ok(LineFlow::new(ap)?.eval(x2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{BasePayoffs, RepeatedGame};
    use crate::rational::{rat, point_to_f64};

    fn game(t: i64, r: i64, s: i64, p: i64, m: u32) -> RepeatedGame {
        RepeatedGame::new(BasePayoffs::from_ints(t, r, s, p).unwrap(), m).unwrap()
    }

    fn pt(x: [f64; 4]) -> SimplexPoint {
        SimplexPoint::new(x).unwrap()
    }

    #[test]
    fn utility_examples() {
        let a = game(6, 4, 3, 2, 2).payoff_matrix();
        let af = a.to_f64();
        let p1 = [1.0, 0.0, 0.0, 0.0];
        let p4 = [0.0, 0.0, 0.0, 1.0];
        assert_eq!(utility(&p1, &p4, &af), 6.0);
        assert_eq!(utility(&p1, &p1, &af), 8.0);
        // barycenter: mean of all sixteen entries
        let mean: f64 = af.iter().flatten().sum::<f64>() / 16.0;
        assert_eq!(mean, 7.125);
        assert_eq!(utility(&[0.25; 4], &[0.25; 4], &af), mean);
    }

    #[test]
    fn vertices_and_faces() {
        let a = game(6, 4, 3, 2, 8).payoff_matrix();
        assert_eq!(rhs(&SimplexPoint::vertex(0).unwrap(), &a), [0.0; 4]);
        let v = rhs(&pt([0.3, 0.3, 0.0, 0.4]), &a);
        assert_eq!(v[2], 0.0);
        assert!(v.iter().sum::<f64>().abs() < 1e-12);
    }

    #[test]
    fn exact_interior_point_is_fixed() {
        let a = game(6, 4, 3, 2, 2).payoff_matrix();
        let x = [rat(7, 33), rat(14, 33), rat(4, 33), rat(8, 33)];
        assert!(exact_residual(&x, &a).is_zero());
        let v = rhs(&SimplexPoint::from_exact(&x).unwrap(), &a);
        assert!(max_norm(&v) < 1e-12);
    }

    #[test]
    fn equilibrium_start_converges_immediately() {
        let a = game(6, 4, 3, 2, 8).payoff_matrix();
        let tr = integrate(&SimplexPoint::vertex(1).unwrap(), &a, &IntegratorConfig::default()).unwrap();
        assert_eq!(tr.status, TerminalStatus::Converged);
        assert_eq!(tr.samples.len(), 1);
        assert_eq!(tr.last().t, 0.0);
    }

    #[test]
    fn edge_trajectory_reaches_x14() {
        let a = game(6, 4, 3, 2, 8).payoff_matrix();
        let tr = integrate(&pt([0.8, 0.0, 0.0, 0.2]), &a, &IntegratorConfig::default()).unwrap();
        assert_eq!(tr.status, TerminalStatus::Converged);
        for s in &tr.samples {
            assert_eq!((s.x[1], s.x[2]), (0.0, 0.0));
        }
        let x = tr.last().x;
        assert!((x[0] - 1.0 / 3.0).abs() < 1e-6, "{x:?}");
    }

    #[test]
    fn max_time_and_bad_config() {
        let a = game(6, 4, 3, 2, 8).payoff_matrix();
        let cfg = IntegratorConfig {
            t_max: 0.05,
            ..Default::default()
        };
        let out = integrate_observed(&pt([0.1, 0.2, 0.3, 0.4]), &a, &cfg, |_| {}).unwrap();
        assert_eq!(out.status, TerminalStatus::MaxTime);
        assert_eq!(out.steps, 5);
        let bad = IntegratorConfig {
            dt: 0.0,
            ..Default::default()
        };
        assert!(integrate(&SimplexPoint::barycenter(), &a, &bad).is_err());
    }

    #[test]
    fn huge_step_fails() {
        let a = game(6, 4, 3, 2, 8).payoff_matrix();
        let cfg = IntegratorConfig {
            dt: 50.0,
            ..Default::default()
        };
        let tr = integrate(&pt([0.1, 0.2, 0.3, 0.4]), &a, &cfg).unwrap();
        assert_eq!(tr.status, TerminalStatus::Failed);
    }

    #[test]
    fn ratio_constants_examples() {
        let b = RatioConstants::new(&game(6, 4, 3, 2, 2).reduced_matrix());
        assert_eq!((b.b1, b.b2), (int(2), rat(1, 2)));
        let b = RatioConstants::new(&game(6, 4, 3, 2, 8).reduced_matrix());
        assert_eq!((b.b1, b.b2), (rat(5, 7), rat(8, 7)));
    }

    #[test]
    fn ratio_derivative_vanishes_on_plane() {
        let ap = game(6, 4, 3, 2, 2).reduced_matrix();
        // x4/x3 = b1 = 2
        let x = pt([0.3, 0.1, 0.2, 0.4]);
        assert!(ratio_derivative(&x, &ap, Ratio::R12).unwrap().abs() < 1e-15);
        let d = pt([0.4, 0.2, 0.1, 0.3]);
        assert!(ratio_derivative(&d, &ap, Ratio::R12).unwrap() > 0.0);
        assert!(ratio_derivative(&d, &ap, Ratio::R43).unwrap() > 0.0);
        let e = ratio_derivative(&pt([0.5, 0.0, 0.2, 0.3]), &ap, Ratio::R12);
        assert!(matches!(e, Err(Error::ZeroDenominator { .. })));
    }

    #[test]
    fn zones() {
        let g = game(6, 4, 3, 2, 2);
        let b = RatioConstants::new(&g.reduced_matrix());
        assert_eq!(zone_of(&pt([0.4, 0.2, 0.1, 0.3]), &b), Zone::D14);
        assert_eq!(zone_of(&pt([0.5, 0.5, 0.0, 0.0]), &b), Zone::Boundary);
        let xint = [rat(7, 33), rat(14, 33), rat(4, 33), rat(8, 33)];
        assert_eq!(zone_of_exact(&xint, &b), Zone::LInt);
        assert_eq!(zone_of_exact(&[rat(1, 10), rat(4, 10), rat(4, 10), rat(1, 10)], &b), Zone::D23);
        assert_eq!(zone_of_exact(&[rat(4, 10), rat(1, 10), rat(4, 10), rat(1, 10)], &b), Zone::Y14);
        assert_eq!(zone_of_exact(&[rat(1, 10), rat(4, 10), rat(1, 10), rat(4, 10)], &b), Zone::Y23);
    }

    #[test]
    fn edge_portraits() {
        for m in [2, 3, 8] {
            let a = game(6, 4, 3, 2, m).payoff_matrix();
            let e = edge_dynamics(&a, 0, 3).unwrap();
            assert_eq!(e.kind, EdgeKind::Stable(rat(1, 3)));
            assert_eq!(edge_dynamics(&a, 0, 1).unwrap().kind, EdgeKind::AllFixed);
            assert_eq!(edge_dynamics(&a, 2, 3).unwrap().kind, EdgeKind::AllFixed);
        }
        let a = game(6, 4, 3, 2, 2).payoff_matrix();
        assert_eq!(edge_dynamics(&a, 1, 1), Err(Error::DegenerateEdge));
        assert_eq!(edge_dynamics(&a, 0, 9), Err(Error::BadIndex(9)));
    }

    #[test]
    fn line_flow_roots() {
        let g = game(6, 4, 3, 2, 2);
        let flow = LineFlow::new(&g.reduced_matrix()).unwrap();
        let (s_r, g_f) = flow.roots();
        assert_eq!(s_r, rat(14, 33));
        assert_eq!(g_f, rat(2, 3));
        assert!(flow.eval_exact(&s_r).is_zero());
        assert!(flow.eval_exact(&g_f).is_zero());
        assert!(line_restricted_rhs(14.0 / 33.0, &g.reduced_matrix()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn line_flow_matches_field_on_the_line() {
        for (g, x2) in [(game(6, 4, 3, 2, 2), rat(1, 5)), (game(6, 4, 3, 2, 8), rat(3, 10))] {
            let ap = g.reduced_matrix();
            let b = RatioConstants::new(&ap);
            let x = line_point(&x2, &b);
            let field = replicator_rhs(&x, ap.entries());
            assert_eq!(field[1], LineFlow::new(&ap).unwrap().eval_exact(&x2));
            assert_eq!(zone_of_exact(&x, &b), Zone::LInt);
            let _ = point_to_f64(&x);
        }
    }

    #[test]
    fn line_flow_needs_positive_b1() {
        let g = RepeatedGame::new(BasePayoffs::new(int(3), rat(5, 2), int(1), int(0)).unwrap(), 3).unwrap();
        assert_eq!(LineFlow::new(&g.reduced_matrix()), Err(Error::NoInteriorEquilibrium));
    }
}
