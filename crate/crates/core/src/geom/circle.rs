//! Points of the unit circle S¹ ⊂ ℂ and angle bookkeeping.
//!
//! A circle point is stored as a unit complex number rather than as an
//! angle. Negation and conjugation are then sign flips, so the torus
//! involution squares to the identity bit-for-bit. Angles are always
//! reported in the half-open interval (−π, π].

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

/// Normalize an angle into (−π, π]. The boundary is assigned to +π.
pub fn normalize_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let mut r = theta % TAU;
    if r <= -PI {
        r += TAU;
    } else if r > PI {
        r -= TAU;
    }
    if r <= -PI {
        r = PI;
    }
    r
}

/// Normalize an angle into the half-open window (lo, lo + 2π].
pub fn normalize_into(theta: f64, lo: f64) -> f64 {
    let mut r = theta;
    while r <= lo {
        r += TAU;
    }
    while r > lo + TAU {
        r -= TAU;
    }
    r
}

/// A unit complex number.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct CirclePoint {
    re: f64,
    im: f64,
}

impl From<[f64; 2]> for CirclePoint {
    fn from(v: [f64; 2]) -> Self {
        Self { re: v[0], im: v[1] }
    }
}

impl From<CirclePoint> for [f64; 2] {
    fn from(z: CirclePoint) -> Self {
        [z.re, z.im]
    }
}

impl CirclePoint {
    pub const ONE: CirclePoint = CirclePoint { re: 1.0, im: 0.0 };

    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { re: c, im: s }
    }

    /// Project an arbitrary nonzero complex number onto the circle.
    pub fn from_components(re: f64, im: f64) -> Self {
        let r = re.hypot(im);
        if (r - 1.0).abs() <= f64::EPSILON {
            Self { re, im }
        } else {
            Self {
                re: re / r,
                im: im / r,
            }
        }
    }

    pub fn re(self) -> f64 {
        self.re
    }

    pub fn im(self) -> f64 {
        self.im
    }

    /// Argument in (−π, π].
    pub fn angle(self) -> f64 {
        let a = self.im.atan2(self.re);
        if a <= -PI {
            PI
        } else {
            a
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }

    pub fn conj(self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        Self {
            re: self.re * other.re - self.im * other.im,
            im: self.re * other.im + self.im * other.re,
        }
    }

    /// Principal angle of `self / other`, in (−π, π].
    pub fn angle_from(self, other: Self) -> f64 {
        self.mul(other.conj()).angle()
    }

    /// Rotate counterclockwise by `theta` radians.
    pub fn rotate(self, theta: f64) -> Self {
        if theta == 0.0 {
            return self;
        }
        self.mul(Self::from_angle(theta))
    }

    /// Arc length between two circle points, in [0, π].
    pub fn arc_distance(self, other: Self) -> f64 {
        self.angle_from(other).abs()
    }
}
