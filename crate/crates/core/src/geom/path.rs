//! Symbolic paths [0, 1] → X.
//!
//! A path is a tree whose leaves are primitive segments (a rotation of one
//! torus coordinate, a great-circle arc, a constant) and whose inner nodes
//! are concatenation, the group action, and restriction to a subinterval.
//! Concatenation runs the left child on [0, ½] and the right child on
//! [½, 1], so splitting a `Concat` node at one half returns its children
//! unchanged.

use std::sync::Arc;

use super::group::{FiniteGroup, GroupElement};
use super::point::{Point, Space};
use super::sphere::SpherePoint;
use super::torus::{Coord, TorusPoint};
use super::{GeomError, DEGENERATE_ANGLE, MEMBERSHIP_TOL};

#[derive(Clone, Debug, PartialEq)]
pub enum Path {
    /// Rotate coordinate `coord` of `start` by `delta · t`.
    Rotate {
        coord: Coord,
        delta: f64,
        start: TorusPoint,
    },
    /// Constant-speed shortest great-circle arc.
    Geodesic {
        from: SpherePoint,
        to: SpherePoint,
    },
    Constant(Point),
    Concat(Arc<Path>, Arc<Path>),
    /// Pointwise action t ↦ p(t) · g.
    Acted(GroupElement, Arc<Path>),
    /// Reparametrized restriction t ↦ p(lo + (hi − lo) t).
    Restrict {
        inner: Arc<Path>,
        lo: f64,
        hi: f64,
    },
}

/// Angle Ω between unit vectors, 2·atan2(|p − q|, |p + q|).
pub fn geodesic_angle(p: &[f64], q: &[f64]) -> f64 {
    let (mut d, mut s) = (0.0, 0.0);
    for (a, b) in p.iter().zip(q) {
        d += (a - b) * (a - b);
        s += (a + b) * (a + b);
    }
    2.0 * d.sqrt().atan2(s.sqrt())
}

fn slerp(p: &[f64], q: &[f64], t: f64) -> Vec<f64> {
    let omega = geodesic_angle(p, q);
    let so = omega.sin();
    let wp = ((1.0 - t) * omega).sin() / so;
    let wq = (t * omega).sin() / so;
    p.iter().zip(q).map(|(a, b)| wp * a + wq * b).collect()
}

impl Path {
    pub fn rotate(coord: Coord, delta: f64, start: TorusPoint) -> Path {
        Path::Rotate {
            coord,
            delta,
            start,
        }
    }

    pub fn constant(point: impl Into<Point>) -> Path {
        Path::Constant(point.into())
    }

    /// The shortest geodesic from `from` to `to`. Nearly coincident
    /// endpoints give a constant path; antipodal endpoints are rejected.
    pub fn geodesic(from: SpherePoint, to: SpherePoint) -> Result<Path, GeomError> {
        if from.dim() != to.dim() {
            return Err(GeomError::SpaceMismatch);
        }
        if from.dot(&to) <= -1.0 + MEMBERSHIP_TOL {
            return Err(GeomError::AntipodalEndpoints);
        }
        if geodesic_angle(from.coords(), to.coords()) < DEGENERATE_ANGLE {
            return Ok(Path::Constant(from.into()));
        }
        Ok(Path::Geodesic { from, to })
    }

    pub fn space(&self) -> Space {
        match self {
            Path::Rotate { .. } => Space::Torus,
            Path::Geodesic { .. } => Space::Sphere,
            Path::Constant(p) => p.space(),
            Path::Concat(l, _) => l.space(),
            Path::Acted(_, p) | Path::Restrict { inner: p, .. } => p.space(),
        }
    }

    /// Evaluate at `t ∈ [0, 1]`.
    pub fn eval(&self, t: f64) -> Result<Point, GeomError> {
        if !(0.0..=1.0).contains(&t) {
            return Err(GeomError::Domain(t));
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> Point {
        match self {
            Path::Rotate {
                coord,
                delta,
                start,
            } => start.rotate(*coord, delta * t).into(),
            Path::Geodesic { from, to } => {
                if t == 0.0 {
                    return from.clone().into();
                }
                if t == 1.0 {
                    return to.clone().into();
                }
                SpherePoint::from_unit(slerp(from.coords(), to.coords(), t)).into()
            }
            Path::Constant(p) => p.clone(),
            Path::Concat(l, r) => {
                if t <= 0.5 {
                    l.eval_unchecked(2.0 * t)
                } else {
                    r.eval_unchecked(2.0 * t - 1.0)
                }
            }
            Path::Acted(g, p) => p.eval_unchecked(t).act(*g),
            Path::Restrict { inner, lo, hi } => inner.eval_unchecked(lo + (hi - lo) * t),
        }
    }

    pub fn start(&self) -> Point {
        match self {
            Path::Concat(l, _) => l.start(),
            Path::Acted(g, p) => p.start().act(*g),
            _ => self.eval_unchecked(0.0),
        }
    }

    pub fn end(&self) -> Point {
        match self {
            Path::Rotate {
                coord,
                delta,
                start,
            } => start.rotate(*coord, *delta).into(),
            Path::Concat(_, r) => r.end(),
            Path::Acted(g, p) => p.end().act(*g),
            _ => self.eval_unchecked(1.0),
        }
    }

    /// `(start, end)` of the path.
    pub fn endpoints(&self) -> (Point, Point) {
        (self.start(), self.end())
    }

    /// Number of leaves.
    pub fn leaf_count(&self) -> usize {
        match self {
            Path::Concat(l, r) => l.leaf_count() + r.leaf_count(),
            Path::Acted(_, p) | Path::Restrict { inner: p, .. } => p.leaf_count(),
            _ => 1,
        }
    }
}

/// Concatenation a ⋆ b. Requires `a.end()` to agree with `b.start()`.
pub fn concat(a: &Path, b: &Path) -> Result<Path, GeomError> {
    let d = a.end().distance(&b.start());
    if d.is_infinite() {
        return Err(GeomError::SpaceMismatch);
    }
    if d > MEMBERSHIP_TOL {
        return Err(GeomError::EndpointMismatch { distance: d });
    }
    Ok(Path::Concat(Arc::new(a.clone()), Arc::new(b.clone())))
}

/// Right-nested concatenation of a nonempty list of paths.
pub fn concat_all(parts: &[Path]) -> Result<Path, GeomError> {
    match parts {
        [] => Err(GeomError::EmptyPath),
        [p] => Ok(p.clone()),
        [first, rest @ ..] => concat(first, &concat_all(rest)?),
    }
}

/// Split into the halves t ∈ [0, ½] and [½, 1], each reparametrized to [0, 1].
pub fn split_half(p: &Path) -> (Path, Path) {
    match p {
        Path::Concat(l, r) => ((**l).clone(), (**r).clone()),
        Path::Acted(g, inner) => {
            let (a, b) = split_half(inner);
            (act_path(*g, &a), act_path(*g, &b))
        }
        Path::Restrict { inner, lo, hi } => {
            let mid = 0.5 * (lo + hi);
            (
                Path::Restrict {
                    inner: inner.clone(),
                    lo: *lo,
                    hi: mid,
                },
                Path::Restrict {
                    inner: inner.clone(),
                    lo: mid,
                    hi: *hi,
                },
            )
        }
        Path::Constant(x) => (Path::Constant(x.clone()), Path::Constant(x.clone())),
        leaf => {
            let inner = Arc::new(leaf.clone());
            (
                Path::Restrict {
                    inner: inner.clone(),
                    lo: 0.0,
                    hi: 0.5,
                },
                Path::Restrict {
                    inner,
                    lo: 0.5,
                    hi: 1.0,
                },
            )
        }
    }
}

/// The path t ↦ p(t) · g. Nested actions are composed and identities dropped.
pub fn act_path(g: GroupElement, p: &Path) -> Path {
    match (g, p) {
        (GroupElement::Identity, _) => p.clone(),
        (_, Path::Acted(h, inner)) => act_path(g.compose(*h), inner),
        (_, Path::Constant(x)) => Path::Constant(x.act(g)),
        _ => Path::Acted(g, Arc::new(p.clone())),
    }
}

/// The k-th time of a nested sampling sequence 0, 1, ½, ¼, ¾, ⅛, …
/// Each prefix contains every shorter prefix.
pub fn nested_time(k: usize) -> f64 {
    match k {
        0 => 0.0,
        1 => 1.0,
        _ => {
            // van der Corput radical inverse in base 2 of k − 1
            let mut n = k - 1;
            let mut denom = 1.0;
            let mut v = 0.0;
            while n > 0 {
                denom *= 2.0;
                if n & 1 == 1 {
                    v += 1.0 / denom;
                }
                n >>= 1;
            }
            v
        }
    }
}

/// Largest pointwise distance over the first `samples` nested sample times.
pub fn sup_distance(p: &Path, q: &Path, samples: usize) -> f64 {
    (0..samples.max(1))
        .map(nested_time)
        .map(|t| p.eval_unchecked(t).distance(&q.eval_unchecked(t)))
        .fold(0.0, f64::max)
}

/// Uniform grid t_i = i / (count − 1).
pub fn uniform_times(count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![0.0],
        _ => (0..count).map(|i| i as f64 / (count - 1) as f64).collect(),
    }
}

/// Builds a right-nested chain of coordinate rotations on the torus.
#[derive(Debug, Clone)]
pub struct RotationChain {
    cursor: TorusPoint,
    parts: Vec<Path>,
}

impl RotationChain {
    pub fn from(start: TorusPoint) -> Self {
        Self {
            cursor: start,
            parts: Vec::new(),
        }
    }

    pub fn then(mut self, coord: Coord, delta: f64) -> Self {
        let seg = Path::rotate(coord, delta, self.cursor);
        self.cursor = match seg.end() {
            Point::Torus(x) => x,
            Point::Sphere(_) => unreachable!("rotation leaves the torus"),
        };
        self.parts.push(seg);
        self
    }

    pub fn build(self) -> Path {
        if self.parts.is_empty() {
            return Path::constant(self.cursor);
        }
        concat_all(&self.parts).expect("rotation chain is glued by construction")
    }
}
