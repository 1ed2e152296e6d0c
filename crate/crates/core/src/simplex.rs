//! Points of the probability simplex over the four strategies.

use rand::Rng;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rational::{to_f64, Rational};

/// Tolerance on `|sum - 1|` accepted by [`SimplexPoint::new`].
pub const SUM_TOL: f64 = 1e-12;

/// Population state: four nonnegative shares summing to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexPoint([f64; 4]);

impl SimplexPoint {
    pub fn new(x: [f64; 4]) -> Result<Self, Error> {
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::OutsideSimplex("coordinate is not finite"));
        }
        if x.iter().any(|&v| v < 0.0) {
            return Err(Error::OutsideSimplex("negative coordinate"));
        }
        if (x.iter().sum::<f64>() - 1.0).abs() > SUM_TOL {
            return Err(Error::OutsideSimplex("coordinates do not sum to 1"));
        }
        Ok(Self(x))
    }

    /// Clips negative entries and rescales to sum one.
    pub fn normalized(x: [f64; 4]) -> Result<Self, Error> {
        let clipped = x.map(|v| if v > 0.0 { v } else { 0.0 });
        let total: f64 = clipped.iter().sum();
        if !total.is_finite() || total <= 0.0 {
            return Err(Error::OutsideSimplex("no positive coordinate"));
        }
        Ok(Self(clipped.map(|v| v / total)))
    }

    /// Float image of an exact point.
    pub fn from_exact(x: &[Rational; 4]) -> Result<Self, Error> {
        validate_exact(x)?;
        Self::normalized([to_f64(&x[0]), to_f64(&x[1]), to_f64(&x[2]), to_f64(&x[3])])
    }

    pub fn vertex(i: usize) -> Result<Self, Error> {
        if i >= 4 {
            return Err(Error::BadIndex(i));
        }
        let mut x = [0.0; 4];
        x[i] = 1.0;
        Ok(Self(x))
    }

    pub fn barycenter() -> Self {
        Self([0.25; 4])
    }

    pub fn coords(&self) -> &[f64; 4] {
        &self.0
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn is_interior(&self) -> bool {
        self.0.iter().all(|&v| v > 0.0)
    }

    /// Indices with a positive share.
    pub fn support(&self) -> [bool; 4] {
        self.0.map(|v| v > 0.0)
    }

    pub fn distance(&self, other: &SimplexPoint) -> f64 {
        distance(&self.0, &other.0)
    }
}

impl From<SimplexPoint> for [f64; 4] {
    fn from(p: SimplexPoint) -> Self {
        p.0
    }
}

/// Checks that an exact point is nonnegative and sums to exactly one.
pub fn validate_exact(x: &[Rational; 4]) -> Result<(), Error> {
    if x.iter().any(|v| v.is_negative()) {
        return Err(Error::OutsideSimplex("negative coordinate"));
    }
    let total: Rational = x.iter().sum();
    if !total.is_one() {
        return Err(Error::OutsideSimplex("coordinates do not sum to 1"));
    }
    Ok(())
}

/// Exact vertex `p^i`.
pub fn exact_vertex(i: usize) -> [Rational; 4] {
    core::array::from_fn(|k| if k == i { Rational::one() } else { Rational::zero() })
}

pub fn distance(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    let sq: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    libm::sqrt(sq)
}

pub fn max_norm(v: &[f64; 4]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Euclidean projection of an arbitrary vector onto the simplex.
pub fn project(v: [f64; 4]) -> SimplexPoint {
    let mut u = v;
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (k, &uk) in u.iter().enumerate() {
        cumulative += uk;
        let candidate = (cumulative - 1.0) / (k as f64 + 1.0);
        if uk - candidate > 0.0 {
            theta = candidate;
        }
    }
    let x = v.map(|vi| (vi - theta).max(0.0));
    let total: f64 = x.iter().sum();
    SimplexPoint(x.map(|xi| xi / total))
}

/// Uniform sample from the simplex restricted to the face with the given
/// support. Panics if the support is empty.
pub fn sample_face<R: Rng + ?Sized>(rng: &mut R, support: [bool; 4]) -> SimplexPoint {
    assert!(support.iter().any(|&s| s), "empty support");
    loop {
        let mut x = [0.0; 4];
        for (xi, &on) in x.iter_mut().zip(&support) {
            if on {
                // Exp(1) draws normalized to a Dirichlet(1, ..., 1) point
                let u: f64 = rng.random();
                *xi = -libm::log(1.0 - u);
            }
        }
        let total: f64 = x.iter().sum();
        if total > 0.0 {
            return SimplexPoint(x.map(|xi| xi / total));
        }
    }
}

/// Uniform sample from the whole simplex.
pub fn dirichlet_uniform<R: Rng + ?Sized>(rng: &mut R) -> SimplexPoint {
    sample_face(rng, [true; 4])
}

/// Uniform sample from the interior: retries until every share is positive.
pub fn interior_uniform<R: Rng + ?Sized>(rng: &mut R) -> SimplexPoint {
    loop {
        let p = dirichlet_uniform(rng);
        if p.is_interior() {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn validation() {
        assert!(SimplexPoint::new([0.25; 4]).is_ok());
        assert!(SimplexPoint::new([0.5, 0.5, 0.1, -0.1]).is_err());
        assert!(SimplexPoint::new([0.5, 0.5, 0.1, 0.0]).is_err());
        assert!(SimplexPoint::new([f64::NAN, 0.5, 0.5, 0.0]).is_err());
        assert!(SimplexPoint::vertex(4).is_err());
    }

    #[test]
    fn exact_points() {
        let x = [rat(7, 33), rat(14, 33), rat(4, 33), rat(8, 33)];
        assert!(validate_exact(&x).is_ok());
        let p = SimplexPoint::from_exact(&x).unwrap();
        assert!((p.get(1) - 14.0 / 33.0).abs() < 1e-15);
        assert!(validate_exact(&[rat(1, 2), rat(1, 2), rat(1, 2), rat(-1, 2)]).is_err());
    }

    #[test]
    fn projection_fixes_points_of_the_simplex() {
        let p = SimplexPoint::new([0.1, 0.2, 0.3, 0.4]).unwrap();
        let q = project(*p.coords());
        assert!(p.distance(&q) < 1e-15);
        let r = project([2.0, 0.0, 0.0, 0.0]);
        assert_eq!(r.coords(), &[1.0, 0.0, 0.0, 0.0]);
        let s = project([0.6, 0.6, -0.1, 0.0]);
        assert!((s.get(0) - 0.5).abs() < 1e-15 && s.get(2) == 0.0);
    }

    #[test]
    fn samples_lie_in_the_requested_face() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p = sample_face(&mut rng, [true, false, true, true]);
            assert_eq!(p.get(1), 0.0);
            assert!(SimplexPoint::new(*p.coords()).is_ok());
            assert!(interior_uniform(&mut rng).is_interior());
        }
    }

    #[test]
    fn dirichlet_marginal_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 20_000;
        let mean: f64 = (0..n).map(|_| dirichlet_uniform(&mut rng).get(2)).sum::<f64>() / n as f64;
        assert!((mean - 0.25).abs() < 0.01, "{mean}");
    }
}
