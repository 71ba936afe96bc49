//! Effectual motion planning on free ℤ₂-spaces.
//!
//! The crate covers
//! - symbolic paths on the torus T = S¹ × S¹ and on spheres Sⁿ, acted on by
//!   their antipodal involutions ([`geom`]);
//! - a four-domain planner from a point of T to a point of the Klein bottle
//!   K = T/ℤ₂ ([`torus_planner`]);
//! - frame-based planners from a point of Sⁿ to a point of Pⁿ
//!   ([`sphere_planner`]);
//! - group-broken paths and the maps relating their evaluation fibrations
//!   ([`broken`]);
//! - the mod-2 cohomology computation bounding the number of torus domains
//!   from below ([`cohomology`]);
//! - seeded verification suites ([`harness`]) and the command-line front end
//!   ([`cli`]).

pub mod broken;
pub mod cli;
pub mod cohomology;
pub mod geom;
pub mod harness;
pub mod json;
pub mod sampling;
pub mod sphere_planner;
pub mod torus_planner;
