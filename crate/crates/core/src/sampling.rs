//! Seeded samplers for circle angles, torus points and sphere points.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::geom::{GroupElement, SpherePoint, TorusPoint};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform angle in (−π, π].
pub fn angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    -rng.random_range(-PI..PI)
}

pub fn torus_point<R: Rng + ?Sized>(rng: &mut R) -> TorusPoint {
    TorusPoint::from_angles(angle(rng), angle(rng))
}

/// Uniform point on Sⁿ from a normalized Gaussian vector.
pub fn sphere_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SpherePoint {
    loop {
        let v: Vec<f64> = (0..=n).map(|_| rng.sample(StandardNormal)).collect();
        if let Ok(p) = SpherePoint::new(v) {
            return p;
        }
    }
}

pub fn group_element<R: Rng + ?Sized>(rng: &mut R) -> GroupElement {
    if rng.random_bool(0.5) {
        GroupElement::Sigma
    } else {
        GroupElement::Identity
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_in_half_open_range() {
        let mut rng = seeded(1);
        for _ in 0..10_000 {
            let a = angle(&mut rng);
            assert!(a > -PI && a <= PI);
        }
    }

    #[test]
    fn sphere_coordinate_means_near_zero() {
        let n = 4;
        let count = 20_000;
        let mut rng = seeded(7);
        let mut sums = vec![0.0; n + 1];
        for _ in 0..count {
            let p = sphere_point(&mut rng, n);
            assert!((p.dot(&p) - 1.0).abs() < 1e-12);
            for (s, c) in sums.iter_mut().zip(p.coords()) {
                *s += c;
            }
        }
        let bound = 4.0 / (count as f64).sqrt();
        for s in sums {
            assert!((s / count as f64).abs() < bound);
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<f64> = (0..5)
            .map(|_| 0.0)
            .scan(seeded(3), |r, _| Some(angle(r)))
            .collect();
        let b: Vec<f64> = (0..5)
            .map(|_| 0.0)
            .scan(seeded(3), |r, _| Some(angle(r)))
            .collect();
        assert_eq!(a, b);
    }
}
