//! Circles, tori, spheres, the antipodal involution, orbits and symbolic paths.

pub mod circle;
pub mod group;
pub mod path;
pub mod path_json;
pub mod point;
pub mod sphere;
pub mod torus;

use thiserror::Error;

pub use circle::{normalize_angle, CirclePoint};
pub use group::{FiniteGroup, GroupElement};
pub use path::{act_path, concat, concat_all, split_half, sup_distance, Path, RotationChain};
pub use path_json::PathDocument;
pub use point::{lifts, project, OrbitPoint, Point, Space};
pub use sphere::{antipode_sphere, SpherePoint};
pub use torus::{sigma_torus, Coord, TorusPoint};

/// Tolerance for membership predicates and endpoint gluing.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Tolerance for identities that hold up to floating-point arithmetic only.
pub const ARITHMETIC_TOL: f64 = 1e-12;
/// Geodesics shorter than this collapse to constant paths.
pub const DEGENERATE_ANGLE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("time {0} outside [0, 1]")]
    Domain(f64),
    #[error("endpoints do not glue (distance {distance:e})")]
    EndpointMismatch { distance: f64 },
    #[error("geodesic endpoints are antipodal")]
    AntipodalEndpoints,
    #[error("invalid sphere dimension {0}")]
    InvalidDimension(i64),
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("points or paths live in different spaces")]
    SpaceMismatch,
    #[error("empty path list")]
    EmptyPath,
    #[error("path document: {0}")]
    Schema(String),
}
