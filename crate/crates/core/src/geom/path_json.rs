//! JSON form of symbolic paths.
//!
//! ```json
//! {"space": "torus",
//!  "node": {"kind": "concat", "children": [
//!     {"kind": "rotate", "coord": "2", "delta": 3.14, "start": {"x1": [1, 0], "x2": [1, 0]}},
//!     {"kind": "rotate", "coord": "1", "delta": 0.3, "start": {"x1": [1, 0], "x2": [-1, 0]}}]},
//!  "samples": [[0.0, 0.0, 0.0], [1.0, 0.3, 3.14]]}
//! ```
//!
//! Torus points are stored as their two unit complex coordinates so that
//! parsing a serialized tree reproduces it exactly. Sample rows are
//! `[t, coords...]` with torus coordinates given as angles.

use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::group::GroupElement;
use super::path::{uniform_times, Path};
use super::point::{Point, Space};
use super::sphere::SpherePoint;
use super::torus::{Coord, TorusPoint};
use super::GeomError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Rotate,
    Geodesic,
    Constant,
    Concat,
    Acted,
    Restrict,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeRepr {
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coord: Option<Coord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    start: Option<TorusPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    from: Option<SpherePoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    to: Option<SpherePoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    point: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    g: Option<GroupElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lo: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    children: Option<Vec<NodeRepr>>,
}

impl NodeRepr {
    fn empty(kind: Kind) -> Self {
        Self {
            kind,
            coord: None,
            delta: None,
            start: None,
            from: None,
            to: None,
            point: None,
            g: None,
            lo: None,
            hi: None,
            children: None,
        }
    }
}

impl From<&Path> for NodeRepr {
    fn from(p: &Path) -> Self {
        match p {
            Path::Rotate {
                coord,
                delta,
                start,
            } => NodeRepr {
                coord: Some(*coord),
                delta: Some(*delta),
                start: Some(*start),
                ..NodeRepr::empty(Kind::Rotate)
            },
            Path::Geodesic { from, to } => NodeRepr {
                from: Some(from.clone()),
                to: Some(to.clone()),
                ..NodeRepr::empty(Kind::Geodesic)
            },
            Path::Constant(x) => NodeRepr {
                point: Some(x.clone()),
                ..NodeRepr::empty(Kind::Constant)
            },
            Path::Concat(l, r) => NodeRepr {
                children: Some(vec![(&**l).into(), (&**r).into()]),
                ..NodeRepr::empty(Kind::Concat)
            },
            Path::Acted(g, inner) => NodeRepr {
                g: Some(*g),
                children: Some(vec![(&**inner).into()]),
                ..NodeRepr::empty(Kind::Acted)
            },
            Path::Restrict { inner, lo, hi } => NodeRepr {
                lo: Some(*lo),
                hi: Some(*hi),
                children: Some(vec![(&**inner).into()]),
                ..NodeRepr::empty(Kind::Restrict)
            },
        }
    }
}

fn missing(field: &str) -> GeomError {
    GeomError::Schema(format!("missing field `{field}`"))
}

impl TryFrom<NodeRepr> for Path {
    type Error = GeomError;

    fn try_from(n: NodeRepr) -> Result<Self, Self::Error> {
        let mut children = n.children.unwrap_or_default().into_iter();
        let mut child = |name: &str| -> Result<Arc<Path>, GeomError> {
            let c = children.next().ok_or_else(|| missing(name))?;
            Ok(Arc::new(Path::try_from(c)?))
        };
        let path = match n.kind {
            Kind::Rotate => Path::Rotate {
                coord: n.coord.ok_or_else(|| missing("coord"))?,
                delta: n.delta.ok_or_else(|| missing("delta"))?,
                start: n.start.ok_or_else(|| missing("start"))?,
            },
            Kind::Geodesic => {
                let from = n.from.ok_or_else(|| missing("from"))?;
                let to = n.to.ok_or_else(|| missing("to"))?;
                if from.dim() != to.dim() {
                    return Err(GeomError::SpaceMismatch);
                }
                if from.dot(&to) <= -1.0 + super::MEMBERSHIP_TOL {
                    return Err(GeomError::AntipodalEndpoints);
                }
                Path::Geodesic { from, to }
            }
            Kind::Constant => Path::Constant(n.point.ok_or_else(|| missing("point"))?),
            Kind::Concat => {
                let l = child("children[0]")?;
                let r = child("children[1]")?;
                let d = l.end().distance(&r.start());
                if d > super::MEMBERSHIP_TOL {
                    return Err(GeomError::EndpointMismatch { distance: d });
                }
                Path::Concat(l, r)
            }
            Kind::Acted => Path::Acted(n.g.ok_or_else(|| missing("g"))?, child("children[0]")?),
            Kind::Restrict => {
                let lo = n.lo.ok_or_else(|| missing("lo"))?;
                let hi = n.hi.ok_or_else(|| missing("hi"))?;
                if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) {
                    return Err(GeomError::Schema(format!(
                        "restriction [{lo}, {hi}] leaves [0, 1]"
                    )));
                }
                Path::Restrict {
                    inner: child("children[0]")?,
                    lo,
                    hi,
                }
            }
        };
        Ok(path)
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        NodeRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = NodeRepr::deserialize(deserializer)?;
        Path::try_from(repr).map_err(serde::de::Error::custom)
    }
}

/// A path together with its space tag and optional evaluation samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathDocument {
    pub space: Space,
    pub node: Path,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<Vec<f64>>>,
}

impl PathDocument {
    pub fn new(node: Path) -> Self {
        Self {
            space: node.space(),
            node,
            samples: None,
        }
    }

    /// Attach `count` uniformly spaced samples.
    pub fn with_samples(mut self, count: usize) -> Self {
        self.samples = Some(sample_rows(&self.node, count));
        self
    }

    pub fn to_json(&self) -> Result<String, GeomError> {
        serde_json::to_string(self).map_err(|e| GeomError::Schema(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self, GeomError> {
        let doc: PathDocument =
            serde_json::from_str(s).map_err(|e| GeomError::Schema(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    /// Check that every leaf lives in the declared space.
    pub fn validate(&self) -> Result<(), GeomError> {
        fn walk(p: &Path, space: Space, dim: &mut Option<usize>) -> Result<(), GeomError> {
            let check_sphere = |q: &SpherePoint, dim: &mut Option<usize>| match dim {
                Some(d) if *d != q.dim() => Err(GeomError::SpaceMismatch),
                _ => {
                    *dim = Some(q.dim());
                    Ok(())
                }
            };
            match p {
                Path::Rotate { .. } if space == Space::Torus => Ok(()),
                Path::Geodesic { from, to } if space == Space::Sphere => {
                    check_sphere(from, dim)?;
                    check_sphere(to, dim)
                }
                Path::Constant(x) if x.space() == space => match x {
                    Point::Sphere(q) => check_sphere(q, dim),
                    Point::Torus(_) => Ok(()),
                },
                Path::Concat(l, r) => {
                    walk(l, space, dim)?;
                    walk(r, space, dim)
                }
                Path::Acted(_, q) | Path::Restrict { inner: q, .. } => walk(q, space, dim),
                _ => Err(GeomError::SpaceMismatch),
            }
        }
        walk(&self.node, self.space, &mut None)
    }
}

/// Rows `[t, coords...]` on a uniform grid of `count` times.
pub fn sample_rows(p: &Path, count: usize) -> Vec<Vec<f64>> {
    uniform_times(count)
        .into_iter()
        .map(|t| {
            let mut row = vec![t];
            row.extend(p.eval_unchecked(t).coords());
            row
        })
        .collect()
}
