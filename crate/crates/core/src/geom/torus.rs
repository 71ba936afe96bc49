use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::circle::CirclePoint;

/// Which circle factor of T = S¹ × S¹.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coord {
    #[serde(rename = "1")]
    First,
    #[serde(rename = "2")]
    Second,
}

/// A point (x₁, x₂) of the torus, x₁ = e^{ia}, x₂ = e^{ib}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusPoint {
    pub x1: CirclePoint,
    pub x2: CirclePoint,
}

impl TorusPoint {
    pub fn new(x1: CirclePoint, x2: CirclePoint) -> Self {
        Self { x1, x2 }
    }

    pub fn from_angles(a: f64, b: f64) -> Self {
        Self {
            x1: CirclePoint::from_angle(a),
            x2: CirclePoint::from_angle(b),
        }
    }

    /// First angle, in (−π, π].
    pub fn a(&self) -> f64 {
        self.x1.angle()
    }

    /// Second angle, in (−π, π].
    pub fn b(&self) -> f64 {
        self.x2.angle()
    }

    pub fn angles(&self) -> [f64; 2] {
        [self.a(), self.b()]
    }

    pub fn coord(&self, c: Coord) -> CirclePoint {
        match c {
            Coord::First => self.x1,
            Coord::Second => self.x2,
        }
    }

    /// Rotate one circle factor by `theta`.
    pub fn rotate(&self, c: Coord, theta: f64) -> Self {
        match c {
            Coord::First => Self {
                x1: self.x1.rotate(theta),
                x2: self.x2,
            },
            Coord::Second => Self {
                x1: self.x1,
                x2: self.x2.rotate(theta),
            },
        }
    }

    /// The antipodal involution σ(x₁, x₂) = (−x₁, x̄₂).
    pub fn sigma(&self) -> Self {
        Self {
            x1: self.x1.neg(),
            x2: self.x2.conj(),
        }
    }

    /// Geodesic distance in the flat metric.
    pub fn distance(&self, other: &Self) -> f64 {
        self.x1
            .arc_distance(other.x1)
            .hypot(self.x2.arc_distance(other.x2))
    }
}

/// The antipodal involution on the torus.
pub fn sigma_torus(x: &TorusPoint) -> TorusPoint {
    x.sigma()
}

/// Largest possible flat distance on the torus.
pub const TORUS_DIAMETER: f64 = PI * std::f64::consts::SQRT_2;

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn sigma_origin() {
        let s = sigma_torus(&TorusPoint::from_angles(0.0, 0.0));
        assert_eq!(s.a(), PI);
        assert_eq!(s.b(), 0.0);
    }

    #[test]
    fn sigma_general_point() {
        let s = sigma_torus(&TorusPoint::from_angles(FRAC_PI_2, PI / 3.0));
        assert!((s.a() + FRAC_PI_2).abs() < 1e-12);
        assert!((s.b() + PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn sigma_is_free() {
        let x = TorusPoint::from_angles(0.3, -2.0);
        assert!(x.distance(&x.sigma()) >= PI - 1e-12);
    }
}
