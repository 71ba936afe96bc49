use serde::{Deserialize, Serialize};

use super::GeomError;

/// A unit vector of ℝⁿ⁺¹, a point of Sⁿ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl TryFrom<Vec<f64>> for SpherePoint {
    type Error = GeomError;

    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        SpherePoint::new(v)
    }
}

impl From<SpherePoint> for Vec<f64> {
    fn from(p: SpherePoint) -> Self {
        p.coords
    }
}

pub fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn norm(u: &[f64]) -> f64 {
    dot(u, u).sqrt()
}

impl SpherePoint {
    /// Build from arbitrary coordinates, renormalizing onto the sphere.
    pub fn new(coords: Vec<f64>) -> Result<Self, GeomError> {
        if coords.len() < 2 {
            return Err(GeomError::InvalidDimension(coords.len() as i64 - 1));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let r = norm(&coords);
        if r < 1e-300 {
            return Err(GeomError::ZeroVector);
        }
        if (r - 1.0).abs() <= f64::EPSILON {
            return Ok(Self { coords });
        }
        Ok(Self {
            coords: coords.into_iter().map(|c| c / r).collect(),
        })
    }

    /// Wrap coordinates already known to be of unit length.
    pub(crate) fn from_unit(coords: Vec<f64>) -> Self {
        debug_assert!((norm(&coords) - 1.0).abs() < 1e-9);
        Self { coords }
    }

    /// The i-th canonical basis vector of ℝⁿ⁺¹ (0-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut coords = vec![0.0; n + 1];
        coords[i] = 1.0;
        Self { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Dimension n of the sphere Sⁿ.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn dot(&self, other: &Self) -> f64 {
        dot(&self.coords, &other.coords)
    }

    pub fn antipode(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Great-circle distance, computed as 2·asin(|p − q| / 2).
    pub fn distance(&self, other: &Self) -> f64 {
        if self.coords.len() != other.coords.len() {
            return f64::INFINITY;
        }
        let chord = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        2.0 * (0.5 * chord).min(1.0).asin()
    }
}

/// The antipodal involution p ↦ −p.
pub fn antipode_sphere(p: &SpherePoint) -> SpherePoint {
    p.antipode()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antipode_examples() {
        let p = SpherePoint::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(antipode_sphere(&p).coords(), &[-1.0, 0.0]);
        let p = SpherePoint::new(vec![0.0, 0.0, 1.0]).unwrap();
        assert_eq!(antipode_sphere(&p).coords(), &[-0.0, -0.0, -1.0]);
        assert_eq!(p.dot(&p.antipode()), -1.0);
    }

    #[test]
    fn renormalizes_on_construction() {
        let p = SpherePoint::new(vec![3.0, 4.0]).unwrap();
        assert!((norm(p.coords()) - 1.0).abs() < 1e-12);
        assert!(matches!(
            SpherePoint::new(vec![0.0, 0.0]),
            Err(GeomError::ZeroVector)
        ));
        assert!(matches!(
            SpherePoint::new(vec![1.0]),
            Err(GeomError::InvalidDimension(0))
        ));
    }

    #[test]
    fn distance_antipodal_is_pi() {
        let p = SpherePoint::basis(2, 0);
        assert!((p.distance(&p.antipode()) - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(p.distance(&p), 0.0);
    }
}
