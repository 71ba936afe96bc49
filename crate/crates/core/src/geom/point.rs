use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::GroupElement;
use super::sphere::SpherePoint;
use super::torus::TorusPoint;

/// The underlying free ℤ₂-space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Torus,
    Sphere,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Torus => f.write_str("torus"),
            Space::Sphere => f.write_str("sphere"),
        }
    }
}

/// A point of either space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    Torus(TorusPoint),
    Sphere(SpherePoint),
}

impl From<TorusPoint> for Point {
    fn from(x: TorusPoint) -> Self {
        Point::Torus(x)
    }
}

impl From<SpherePoint> for Point {
    fn from(p: SpherePoint) -> Self {
        Point::Sphere(p)
    }
}

impl Point {
    pub fn space(&self) -> Space {
        match self {
            Point::Torus(_) => Space::Torus,
            Point::Sphere(_) => Space::Sphere,
        }
    }

    /// The free involution σ.
    pub fn sigma(&self) -> Point {
        match self {
            Point::Torus(x) => Point::Torus(x.sigma()),
            Point::Sphere(p) => Point::Sphere(p.antipode()),
        }
    }

    /// Right action x · g.
    pub fn act(&self, g: GroupElement) -> Point {
        match g {
            GroupElement::Identity => self.clone(),
            GroupElement::Sigma => self.sigma(),
        }
    }

    /// Geodesic distance; infinite across different spaces or dimensions.
    pub fn distance(&self, other: &Point) -> f64 {
        match (self, other) {
            (Point::Torus(x), Point::Torus(y)) => x.distance(y),
            (Point::Sphere(p), Point::Sphere(q)) => p.distance(q),
            _ => f64::INFINITY,
        }
    }

    /// Display coordinates: angles for the torus, ambient coordinates for spheres.
    pub fn coords(&self) -> Vec<f64> {
        match self {
            Point::Torus(x) => x.angles().to_vec(),
            Point::Sphere(p) => p.coords().to_vec(),
        }
    }

    pub fn as_torus(&self) -> Option<&TorusPoint> {
        match self {
            Point::Torus(x) => Some(x),
            Point::Sphere(_) => None,
        }
    }

    pub fn as_sphere(&self) -> Option<&SpherePoint> {
        match self {
            Point::Sphere(p) => Some(p),
            Point::Torus(_) => None,
        }
    }
}

fn lex_cmp(u: &[f64], v: &[f64]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        match a.total_cmp(b) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    u.len().cmp(&v.len())
}

/// A ℤ₂-orbit {y, σ(y)}, i.e. a point of K = T/ℤ₂ or Pⁿ = Sⁿ/ℤ₂.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitPoint {
    representative: Point,
}

impl OrbitPoint {
    pub fn new(representative: Point) -> Self {
        Self { representative }
    }

    pub fn representative(&self) -> &Point {
        &self.representative
    }

    pub fn space(&self) -> Space {
        self.representative.space()
    }

    /// Both points of the orbit, the stored representative first.
    pub fn lifts(&self) -> [Point; 2] {
        [self.representative.clone(), self.representative.sigma()]
    }

    /// The lexicographically larger lift, for hashing and display only.
    pub fn canonical(&self) -> Point {
        let [y, s] = self.lifts();
        if lex_cmp(&y.coords(), &s.coords()) == Ordering::Less {
            s
        } else {
            y
        }
    }

    /// Distance from a point of the covering space to the nearer lift.
    pub fn distance_to_point(&self, y: &Point) -> f64 {
        let [a, b] = self.lifts();
        a.distance(y).min(b.distance(y))
    }

    /// Quotient distance between orbits.
    pub fn distance(&self, other: &OrbitPoint) -> f64 {
        self.distance_to_point(&other.representative)
    }

    pub fn approx_eq(&self, other: &OrbitPoint, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    pub fn contains(&self, y: &Point, tol: f64) -> bool {
        self.distance_to_point(y) <= tol
    }
}

/// The covering projection π.
pub fn project(y: &Point) -> OrbitPoint {
    OrbitPoint::new(y.clone())
}

/// The two preimages of an orbit under π.
pub fn lifts(z: &OrbitPoint) -> [Point; 2] {
    z.lifts()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn t(a: f64, b: f64) -> Point {
        TorusPoint::from_angles(a, b).into()
    }

    fn s(v: &[f64]) -> Point {
        SpherePoint::new(v.to_vec()).unwrap().into()
    }

    #[test]
    fn project_identifies_orbits() {
        assert!(project(&t(0.0, 0.0)).approx_eq(&project(&t(PI, 0.0)), 1e-12));
        assert!(project(&s(&[0.0, 1.0])).approx_eq(&project(&s(&[0.0, -1.0])), 1e-12));
        assert!(!project(&t(0.0, 0.0)).approx_eq(&project(&t(0.5, 0.0)), 1e-9));
    }

    #[test]
    fn lifts_examples() {
        let [y, sy] = lifts(&project(&t(0.4, 1.0)));
        assert!(y.distance(&t(0.4, 1.0)) < 1e-12);
        assert!(sy.distance(&t(0.4 + PI, -1.0)) < 1e-12);

        let [p, q] = lifts(&project(&s(&[0.0, 0.0, 1.0])));
        assert_eq!(p.coords(), vec![0.0, 0.0, 1.0]);
        assert_eq!(q.coords(), vec![-0.0, -0.0, -1.0]);
    }

    #[test]
    fn canonical_is_lift_independent() {
        let y = t(0.4, 1.0);
        let a = project(&y).canonical();
        let b = project(&y.sigma()).canonical();
        assert_eq!(a, b);
    }

    #[test]
    fn act_by_sigma_twice_is_exact() {
        let y = t(0.123, -2.5);
        assert_eq!(y.act(GroupElement::Sigma).act(GroupElement::Sigma), y);
    }

    #[test]
    fn cross_space_distance_is_infinite() {
        assert!(t(0.0, 0.0).distance(&s(&[1.0, 0.0])).is_infinite());
    }
}
