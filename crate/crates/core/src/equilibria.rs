//! Equilibrium points and continua of the replicator flow.
//!
//! Boundary equilibria come from closed forms on the edges; the only interior
//! equilibrium is the saddle `x_int`, present while `b1 > 0`.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::dynamics::{exact_residual, line_point, RatioConstants};
use crate::game::{PayoffMatrix, ReducedMatrix, RegimeClass, RepeatedGame};
use crate::rational::{int, point_to_f64, to_f64, Rational};
use crate::simplex::{distance, exact_vertex, SimplexPoint};

/// Isolated equilibrium labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointLabel {
    P1,
    P2,
    P3,
    P4,
    X13,
    X14,
    X23,
    X24,
    XInt,
}

impl PointLabel {
    pub fn name(self) -> &'static str {
        match self {
            PointLabel::P1 => "p1",
            PointLabel::P2 => "p2",
            PointLabel::P3 => "p3",
            PointLabel::P4 => "p4",
            PointLabel::X13 => "x13",
            PointLabel::X14 => "x14",
            PointLabel::X23 => "x23",
            PointLabel::X24 => "x24",
            PointLabel::XInt => "x_int",
        }
    }

    pub fn is_vertex(self) -> bool {
        matches!(self, PointLabel::P1 | PointLabel::P2 | PointLabel::P3 | PointLabel::P4)
    }

    pub fn vertex(i: usize) -> Option<PointLabel> {
        [PointLabel::P1, PointLabel::P2, PointLabel::P3, PointLabel::P4].get(i).copied()
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ContinuumLabel {
    X12,
    X34,
    X123,
    LInt,
}

impl ContinuumLabel {
    pub fn name(self) -> &'static str {
        match self {
            ContinuumLabel::X12 => "X12",
            ContinuumLabel::X34 => "X34",
            ContinuumLabel::X123 => "X123",
            ContinuumLabel::LInt => "L_int",
        }
    }
}

impl fmt::Display for ContinuumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equilibrium {
    pub label: PointLabel,
    pub point: [Rational; 4],
}

impl Equilibrium {
    pub fn to_f64(&self) -> [f64; 4] {
        point_to_f64(&self.point)
    }
}

/// A straight segment `start + lambda (end - start)`, `lambda` in `[0, 1]`.
///
/// `X12` runs from `p2` to `p1`, so `lambda` is the share `alpha` of ALLC.
/// `X34` runs from `p4` to `p3`. `X123` is open: its endpoints are not part of
/// the set. `plane` holds the coefficients of `a'31 x1 + a'32 x2 - a'13 x3 = 0`
/// for `X123`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Continuum {
    pub label: ContinuumLabel,
    pub start: [Rational; 4],
    pub end: [Rational; 4],
    pub plane: Option<[Rational; 4]>,
}

impl Continuum {
    pub fn point_at(&self, lambda: &Rational) -> [Rational; 4] {
        core::array::from_fn(|i| &self.start[i] + lambda * (&self.end[i] - &self.start[i]))
    }

    pub fn point_at_f64(&self, lambda: f64) -> [f64; 4] {
        let s = point_to_f64(&self.start);
        let e = point_to_f64(&self.end);
        core::array::from_fn(|i| s[i] + lambda * (e[i] - s[i]))
    }

    /// Orthogonal projection onto the segment: `(lambda, distance)`.
    pub fn project(&self, x: &[f64; 4]) -> (f64, f64) {
        self.project_within(x, 0.0, 1.0)
    }

    /// Projection onto the sub-segment `lambda` in `[lo, hi]`.
    pub fn project_within(&self, x: &[f64; 4], lo: f64, hi: f64) -> (f64, f64) {
        let s = point_to_f64(&self.start);
        let e = point_to_f64(&self.end);
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..4 {
            let d = e[i] - s[i];
            num += (x[i] - s[i]) * d;
            den += d * d;
        }
        let lambda = if den > 0.0 { (num / den).clamp(lo, hi) } else { lo };
        let p = self.point_at_f64(lambda);
        (lambda, distance(x, &p))
    }

    /// Evenly spaced exact samples including both ends.
    pub fn samples(&self, count: usize) -> Vec<[Rational; 4]> {
        let n = count.max(2) as i64 - 1;
        (0..=n).map(|k| self.point_at(&Rational::new(k.into(), n.into()))).collect()
    }
}

/// Every equilibrium of one game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumCatalog {
    pub points: Vec<Equilibrium>,
    pub continua: Vec<Continuum>,
    pub regime: RegimeClass,
}

impl EquilibriumCatalog {
    pub fn point(&self, label: PointLabel) -> Option<&Equilibrium> {
        self.points.iter().find(|e| e.label == label)
    }

    pub fn continuum(&self, label: ContinuumLabel) -> Option<&Continuum> {
        self.continua.iter().find(|c| c.label == label)
    }

    pub fn has(&self, label: PointLabel) -> bool {
        self.point(label).is_some()
    }

    /// Distance from `x` to the nearest point or continuum.
    pub fn distance_to(&self, x: &[f64; 4]) -> f64 {
        let points = self.points.iter().map(|e| distance(x, &e.to_f64()));
        let continua = self.continua.iter().map(|c| c.project(x).1);
        points.chain(continua).fold(f64::INFINITY, f64::min)
    }
}

/// Fixed point `(a'ij, a'ji)/(a'ij + a'ji)` on the edge `(i, j)`.
fn edge_point(ap: &ReducedMatrix, i: usize, j: usize) -> [Rational; 4] {
    let aij = ap.get(i, j);
    let aji = ap.get(j, i);
    let total = aij + aji;
    let mut x: [Rational; 4] = core::array::from_fn(|_| Rational::zero());
    x[i] = aij / &total;
    x[j] = aji / &total;
    x
}

/// `x13`, always inside the simplex.
pub fn x13(ap: &ReducedMatrix) -> [Rational; 4] {
    edge_point(ap, 0, 2)
}

/// `x14`, always inside the simplex.
pub fn x14(ap: &ReducedMatrix) -> [Rational; 4] {
    edge_point(ap, 0, 3)
}

/// `x23`, when it lies in the simplex (`a'32 >= 0`).
pub fn x23(ap: &ReducedMatrix) -> Option<[Rational; 4]> {
    (!ap.get(2, 1).is_negative()).then(|| edge_point(ap, 1, 2))
}

/// `x24`, when it is a proper edge point (`a'42 > 0`).
pub fn x24(ap: &ReducedMatrix) -> Option<[Rational; 4]> {
    ap.get(3, 1).is_positive().then(|| edge_point(ap, 1, 3))
}

fn x12() -> Continuum {
    Continuum {
        label: ContinuumLabel::X12,
        start: exact_vertex(1),
        end: exact_vertex(0),
        plane: None,
    }
}

fn x34() -> Continuum {
    Continuum {
        label: ContinuumLabel::X34,
        start: exact_vertex(3),
        end: exact_vertex(2),
        plane: None,
    }
}

/// The segment `a'31 x1 + a'32 x2 - a'13 x3 = 0` in the face `(1, 2, 3)`.
///
/// It starts at `x13` and ends on the edge `(2, 3)` when `a'32 >= 0`, on the
/// edge `(1, 2)` otherwise. Only a set of equilibria when `a'13 = a'23`.
pub fn x123_segment(ap: &ReducedMatrix) -> Continuum {
    let (a31, a32, a13) = (ap.get(2, 0), ap.get(2, 1), ap.get(0, 2));
    let zero = Rational::zero();
    let end = if !a32.is_negative() {
        let total = a13 + a32;
        [zero.clone(), a13 / &total, a32 / &total, zero.clone()]
    } else {
        let total = a31 - a32;
        [-a32 / &total, a31 / &total, zero.clone(), zero.clone()]
    };
    Continuum {
        label: ContinuumLabel::X123,
        start: x13(ap),
        end,
        plane: Some([a31.clone(), a32.clone(), -a13.clone(), zero]),
    }
}

/// Boundary equilibria for the game's equilibrium case.
pub fn boundary_catalog(game: &RepeatedGame) -> EquilibriumCatalog {
    let ap = game.reduced_matrix();
    let regime = game.classify();
    let case = regime.equilibrium_case;

    let mut points: Vec<Equilibrium> = (0..4)
        .map(|i| Equilibrium {
            label: PointLabel::vertex(i).expect("index below four"),
            point: exact_vertex(i),
        })
        .collect();
    points.push(Equilibrium {
        label: PointLabel::X13,
        point: x13(&ap),
    });
    points.push(Equilibrium {
        label: PointLabel::X14,
        point: x14(&ap),
    });
    if case <= 3 {
        points.push(Equilibrium {
            label: PointLabel::X23,
            point: x23(&ap).expect("x23 lies in the simplex in cases 1-3"),
        });
    }
    if case == 1 {
        points.push(Equilibrium {
            label: PointLabel::X24,
            point: x24(&ap).expect("x24 lies in the simplex in case 1"),
        });
    }

    let mut continua = alloc::vec![x12(), x34()];
    if case == 3 || case == 4 {
        continua.push(x123_segment(&ap));
    }
    EquilibriumCatalog {
        points,
        continua,
        regime,
    }
}

/// Boundary catalog plus `x_int` when it exists.
pub fn catalog(game: &RepeatedGame) -> EquilibriumCatalog {
    let mut cat = boundary_catalog(game);
    if let Some(int_eq) = interior_equilibrium(game) {
        cat.points.push(Equilibrium {
            label: PointLabel::XInt,
            point: int_eq.point,
        });
    }
    cat
}

/// The interior saddle and the invariant line through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorEquilibrium {
    pub point: [Rational; 4],
    /// Normalizer of the closed form.
    pub r: Rational,
    pub ratios: RatioConstants,
    /// `x1 = b2 x2`, `x4 = b1 x3` inside the simplex, from the face
    /// `x3 = x4 = 0` to the face `x1 = x2 = 0`.
    pub line: Continuum,
}

/// `x_int` from its closed form, or `None` when `b1 <= 0` or the closed form
/// falls outside the open simplex.
pub fn interior_equilibrium(game: &RepeatedGame) -> Option<InteriorEquilibrium> {
    let ap = game.reduced_matrix();
    let ratios = RatioConstants::new(&ap);
    if !ratios.b1.is_positive() {
        return None;
    }
    let a = |i: usize, j: usize| ap.get(i - 1, j - 1).clone();
    let m1 = a(1, 3) * a(2, 4) - a(1, 4) * a(2, 3);
    let m2 = a(3, 1) * a(4, 2) - a(3, 2) * a(4, 1);
    let r = &m1 * (a(3, 1) - a(4, 1) + a(4, 2) - a(3, 2)) + &m2 * (a(1, 3) - a(2, 3) + a(2, 4) - a(1, 4));
    if r.is_zero() {
        return None;
    }
    let point = [
        (a(4, 2) - a(3, 2)) * &m1 / &r,
        (a(3, 1) - a(4, 1)) * &m1 / &r,
        (a(2, 4) - a(1, 4)) * &m2 / &r,
        (a(1, 3) - a(2, 3)) * &m2 / &r,
    ];
    // near the top of the even intermediate band the root on L_int leaves the simplex
    if !point.iter().all(Signed::is_positive) {
        return None;
    }
    let one = int(1);
    let start = line_point(&(&one / (&one + &ratios.b2)), &ratios);
    let end = line_point(&Rational::zero(), &ratios);
    let line = Continuum {
        label: ContinuumLabel::LInt,
        start,
        end,
        plane: None,
    };
    Some(InteriorEquilibrium {
        point,
        r,
        ratios,
        line,
    })
}

fn on_x123_plane_exact(x: &[Rational; 4], ap: &ReducedMatrix) -> bool {
    let value = ap.get(2, 0) * &x[0] + ap.get(2, 1) * &x[1] - ap.get(0, 2) * &x[2];
    value.is_zero()
}

/// Whether `x` lies in the open face `(1, 2, 3)` on the `X123` plane.
pub fn x123_membership(x: &SimplexPoint, ap: &ReducedMatrix) -> bool {
    let v = x.coords();
    if v[3] != 0.0 || v[..3].iter().any(|&c| c <= 0.0) {
        return false;
    }
    let value = to_f64(ap.get(2, 0)) * v[0] + to_f64(ap.get(2, 1)) * v[1] - to_f64(ap.get(0, 2)) * v[2];
    value.abs() <= 1e-12
}

pub fn x123_membership_exact(x: &[Rational; 4], ap: &ReducedMatrix) -> bool {
    x[3].is_zero() && x[..3].iter().all(|c| c.is_positive()) && on_x123_plane_exact(x, ap)
}

/// Max-norm of the replicator field at `x`.
pub fn residual(x: &SimplexPoint, a: &PayoffMatrix) -> f64 {
    crate::simplex::max_norm(&crate::dynamics::rhs(x, a))
}

pub fn residual_exact(x: &[Rational; 4], a: &PayoffMatrix) -> Rational {
    exact_residual(x, a)
}

/// Whether the exact point sums to one and has zero exact residual.
pub fn is_equilibrium_exact(x: &[Rational; 4], a: &PayoffMatrix) -> bool {
    x.iter().sum::<Rational>().is_one() && exact_residual(x, a).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::BasePayoffs;
    use crate::rational::rat;

    fn game(t: Rational, r: Rational, s: Rational, p: Rational, m: u32) -> RepeatedGame {
        RepeatedGame::new(BasePayoffs::new(t, r, s, p).unwrap(), m).unwrap()
    }

    fn labels(c: &EquilibriumCatalog) -> Vec<PointLabel> {
        c.points.iter().map(|e| e.label).filter(|l| !l.is_vertex()).collect()
    }

    /// Closed forms for the edge points as displayed for the boundary set.
    fn displayed(g: &RepeatedGame) -> ([[Rational; 4]; 3], Option<[Rational; 4]>) {
        let p = g.payoffs();
        let (t, r, s, pp) = (p.temptation(), p.reward(), p.sucker(), p.punishment());
        let m = int(g.rounds() as i64);
        let hi = int(g.rounds().div_ceil(2) as i64);
        let lo = int((g.rounds() / 2) as i64);
        let z = Rational::zero;
        let d14 = s - pp + t - r;
        let d23 = &m * (t + s - pp - r);
        let d13 = t + s + (&m - int(2)) * r - &m * pp;
        let d24 = t + s + (&m - int(2)) * pp - &m * r;
        let edge = [
            [(s + (&m - int(1)) * r - &m * pp) / &d13, z(), (t - r) / &d13, z()],
            [(s - pp) / &d14, z(), z(), (t - r) / &d14],
            [z(), (&hi * s + &lo * t - &m * pp) / &d23, (&hi * t + &lo * s - &m * r) / &d23, z()],
        ];
        let p24 = (!d24.is_zero()).then(|| [z(), (s - pp) / &d24, z(), (t + (&m - int(1)) * pp - &m * r) / &d24]);
        (edge, p24)
    }

    #[test]
    fn catalog_for_m2() {
        let g = game(int(6), int(4), int(3), int(2), 2);
        let c = catalog(&g);
        assert_eq!(c.regime.equilibrium_case, 2);
        assert_eq!(labels(&c), [PointLabel::X13, PointLabel::X14, PointLabel::X23, PointLabel::XInt]);
        assert_eq!(c.point(PointLabel::X13).unwrap().point, [rat(3, 5), int(0), rat(2, 5), int(0)]);
        assert_eq!(c.point(PointLabel::X14).unwrap().point, [rat(1, 3), int(0), int(0), rat(2, 3)]);
        assert_eq!(c.point(PointLabel::X23).unwrap().point, [int(0), rat(5, 6), rat(1, 6), int(0)]);
        assert!(c.continuum(ContinuumLabel::X12).is_some() && c.continuum(ContinuumLabel::X34).is_some());
    }

    #[test]
    fn catalog_case_five_has_no_x23() {
        let g = game(int(3), rat(29, 10), int(1), int(0), 6);
        let c = boundary_catalog(&g);
        assert_eq!(c.regime.equilibrium_case, 5);
        assert_eq!(labels(&c), [PointLabel::X13, PointLabel::X14]);
        assert!(interior_equilibrium(&g).is_none());
    }

    #[test]
    fn edge_points_match_displayed_closed_forms() {
        for g in [
            game(int(10), int(3), int(2), int(1), 2),
            game(int(10), int(3), int(2), int(1), 5),
            game(int(6), int(4), int(3), int(2), 8),
            game(int(3), int(2), int(1), int(0), 3),
        ] {
            let ap = g.reduced_matrix();
            let ([d13, d14, d23], d24) = displayed(&g);
            assert_eq!(x13(&ap), d13);
            assert_eq!(x14(&ap), d14);
            assert_eq!(x23(&ap).unwrap(), d23);
            if let Some(p) = x24(&ap) {
                assert_eq!(Some(p), d24);
            }
        }
    }

    #[test]
    fn interior_point_for_m2() {
        let g = game(int(6), int(4), int(3), int(2), 2);
        let e = interior_equilibrium(&g).unwrap();
        assert_eq!(e.point, [rat(7, 33), rat(14, 33), rat(4, 33), rat(8, 33)]);
        assert_eq!(e.r, int(33));
        assert_eq!(&e.point[0] / &e.point[1], rat(1, 2));
        assert_eq!(&e.point[3] / &e.point[2], int(2));
        assert!(is_equilibrium_exact(&e.point, &g.payoff_matrix()));
        for end in [&e.line.start, &e.line.end] {
            assert_eq!(end.iter().sum::<Rational>(), int(1));
        }
    }

    #[test]
    fn interior_point_for_m8() {
        let g = game(int(6), int(4), int(3), int(2), 8);
        let e = interior_equilibrium(&g).unwrap();
        let d = int(2703);
        assert_eq!(e.point, [int(1160) / &d, int(1015) / &d, int(308) / &d, int(220) / &d]);
    }

    #[test]
    fn x123_at_knife_edges() {
        // odd m, R = (T+S)/2: ends at x23
        let g = game(int(3), int(2), int(1), int(0), 3);
        let c = catalog(&g);
        let seg = c.continuum(ContinuumLabel::X123).unwrap();
        assert_eq!(seg.end, c.point(PointLabel::X23).unwrap().point);
        let a = g.payoff_matrix();
        let ap = g.reduced_matrix();
        for x in seg.samples(11).iter().skip(1).take(9) {
            assert!(is_equilibrium_exact(x, &a));
            assert!(x123_membership_exact(x, &ap));
            assert!(x123_membership(&SimplexPoint::from_exact(x).unwrap(), &ap));
        }
        assert!(!x123_membership_exact(&seg.start, &ap));
        assert!(!x123_membership(&SimplexPoint::vertex(0).unwrap(), &ap));
        assert!(!x123_membership(&SimplexPoint::barycenter(), &ap));

        // even m, R = (nT+(n-1)S)/(2n-1): ends on X12
        let g = game(int(3), rat(11, 5), int(1), int(0), 6);
        let seg = x123_segment(&g.reduced_matrix());
        assert!(seg.end[2].is_zero() && seg.end[3].is_zero());
        assert!(is_equilibrium_exact(&seg.point_at(&rat(1, 2)), &g.payoff_matrix()));
    }

    #[test]
    fn residual_examples() {
        let g = game(int(6), int(4), int(3), int(2), 8);
        let a = g.payoff_matrix();
        assert!(residual_exact(&x14(&g.reduced_matrix()), &a).is_zero());
        assert!(residual(&SimplexPoint::barycenter(), &a) > 0.0);
        assert_eq!(residual(&SimplexPoint::vertex(2).unwrap(), &a), 0.0);
    }

    #[test]
    fn projection_onto_x12() {
        let c = boundary_catalog(&game(int(6), int(4), int(3), int(2), 8));
        let (alpha, d) = c.continuum(ContinuumLabel::X12).unwrap().project(&[0.3, 0.7, 0.0, 0.0]);
        assert!((alpha - 0.3).abs() < 1e-15 && d < 1e-15);
        assert!(c.distance_to(&[0.25; 4]) > 0.1);
    }
}
