//! Seeded verification suites and their reports.
//!
//! Every suite is a pure function of its configuration, so two runs with the
//! same seed serialize to identical bytes. Each suite also runs one
//! deliberately corrupted case, which must be flagged for the suite to pass.

pub mod identities;
pub mod sphere_strata;
pub mod suites;
pub mod torus_strata;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::geom::sphere::{dot, norm};
use crate::geom::{Coord, Path, Point, SpherePoint, MEMBERSHIP_TOL};

/// Failure dumps kept per report; further failures are only counted.
pub const MAX_DUMPS: usize = 32;
/// Size of the corruption injected by negative controls and `inject_fault`.
pub const CORRUPTION: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Partition,
    Sections,
    Continuity,
    Identities,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Partition,
        Suite::Sections,
        Suite::Continuity,
        Suite::Identities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Partition => "partition",
            Suite::Sections => "sections",
            Suite::Continuity => "continuity",
            Suite::Identities => "identities",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceSpec {
    Torus,
    /// Sⁿ.
    Sphere(usize),
}

impl SpaceSpec {
    pub fn name(self) -> &'static str {
        match self {
            SpaceSpec::Torus => "torus",
            SpaceSpec::Sphere(_) => "sphere",
        }
    }

    pub fn dim(self) -> Option<usize> {
        match self {
            SpaceSpec::Torus => None,
            SpaceSpec::Sphere(n) => Some(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub space: SpaceSpec,
    /// Uniform sample count; stratified generators draw a tenth of it each.
    /// For continuity it is the number of pairs per stratum, for identities
    /// the number of random broken paths.
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Corrupt the primary run so that the suite must fail.
    pub inject_fault: bool,
}

impl SuiteConfig {
    pub fn new(space: SpaceSpec, samples: usize, seed: u64) -> Self {
        Self {
            space,
            samples,
            seed,
            tol: MEMBERSHIP_TOL,
            inject_fault: false,
        }
    }

    pub fn per_stratum(&self) -> usize {
        (self.samples / 10).max(1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl Check {
    pub fn new(tolerance: Option<f64>) -> Self {
        Self {
            passed: true,
            count: 0,
            max_error: tolerance.map(|_| 0.0),
            tolerance,
        }
    }

    /// Record one measured error against the tolerance.
    pub fn error(&mut self, e: f64) -> bool {
        self.count += 1;
        let tol = self.tolerance.unwrap_or(0.0);
        let m = self.max_error.get_or_insert(0.0);
        if e.is_nan() || e > *m {
            *m = e;
        }
        let ok = e <= tol;
        self.passed &= ok;
        ok
    }

    /// Record one boolean outcome.
    pub fn outcome(&mut self, ok: bool) -> bool {
        self.count += 1;
        self.passed &= ok;
        ok
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuityRow {
    pub stratum: String,
    pub delta: f64,
    pub pairs: u64,
    pub max_query_distance: f64,
    pub max_sup_distance: f64,
    /// max_sup_distance / delta.
    pub ratio: f64,
    /// Constant C in sup-distance ≤ C·δ; absent for informational rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
    pub input: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NegativeControl {
    pub description: String,
    pub detected: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub space: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub fault_injected: bool,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_start_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_endpoint_error: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub continuity: Vec<ContinuityRow>,
    pub checks: BTreeMap<String, Check>,
    pub negative_control: NegativeControl,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub passed: bool,
}

impl Report {
    pub fn new(suite: Suite, cfg: &SuiteConfig) -> Self {
        Self {
            suite: suite.name().into(),
            space: cfg.space.name().into(),
            n: cfg.space.dim(),
            seed: cfg.seed,
            samples: cfg.samples,
            tol: cfg.tol,
            fault_injected: cfg.inject_fault,
            counts: BTreeMap::new(),
            max_start_error: None,
            max_endpoint_error: None,
            continuity: Vec::new(),
            checks: BTreeMap::new(),
            negative_control: NegativeControl {
                description: String::new(),
                detected: false,
            },
            failure_count: 0,
            failures: Vec::new(),
            passed: false,
        }
    }

    pub fn count(&mut self, key: impl Into<String>) {
        *self.counts.entry(key.into()).or_insert(0) += 1;
    }

    pub fn check(&mut self, name: &str, tolerance: Option<f64>) -> &mut Check {
        self.checks
            .entry(name.into())
            .or_insert_with(|| Check::new(tolerance))
    }

    pub fn fail(&mut self, check: &str, detail: String, input: impl Serialize) {
        self.failure_count += 1;
        if self.failures.len() < MAX_DUMPS {
            let input = serde_json::to_value(input).unwrap_or(serde_json::Value::Null);
            self.failures.push(Failure {
                check: check.into(),
                detail,
                input,
            });
        }
    }

    pub fn negative_control(&mut self, description: &str, detected: bool) {
        self.negative_control = NegativeControl {
            description: description.into(),
            detected,
        };
    }

    /// Fix the overall verdict.
    pub fn finish(mut self) -> Self {
        self.passed = self.checks.values().all(|c| c.passed)
            && self.negative_control.detected
            && self.failure_count == 0;
        self
    }
}

/// Run one suite.
pub fn run(suite: Suite, cfg: &SuiteConfig) -> Report {
    match suite {
        Suite::Partition => suites::check_partition(cfg),
        Suite::Sections => suites::check_sections(cfg),
        Suite::Continuity => suites::probe_continuity(cfg),
        Suite::Identities => identities::run_identity_suite(cfg),
    }
}

/// Move the endpoint of a path by `CORRUPTION`: torus rotations gain extra
/// angle, sphere geodesics are tilted off their target.
pub fn corrupt(p: &Path) -> Path {
    match p {
        Path::Rotate {
            coord,
            delta,
            start,
        } => Path::rotate(*coord, delta + CORRUPTION, *start),
        Path::Concat(l, r) => Path::Concat(l.clone(), Arc::new(corrupt(r))),
        Path::Acted(g, inner) => Path::Acted(*g, Arc::new(corrupt(inner))),
        Path::Restrict { inner, lo, hi } => Path::Restrict {
            inner: Arc::new(corrupt(inner)),
            lo: *lo,
            hi: *hi,
        },
        Path::Geodesic { from, to } => Path::Geodesic {
            from: from.clone(),
            to: tilt(to),
        },
        Path::Constant(Point::Torus(x)) => Path::rotate(Coord::First, CORRUPTION, *x),
        Path::Constant(Point::Sphere(x)) => Path::Geodesic {
            from: x.clone(),
            to: tilt(x),
        },
    }
}

fn tilt(p: &SpherePoint) -> SpherePoint {
    let c = p.coords();
    let j = (0..c.len())
        .min_by(|&a, &b| c[a].abs().total_cmp(&c[b].abs()))
        .expect("nonempty");
    let mut w: Vec<f64> = c.iter().map(|x| -c[j] * x).collect();
    w[j] += 1.0;
    let r = norm(&w);
    let (s, co) = CORRUPTION.sin_cos();
    let v: Vec<f64> = c.iter().zip(&w).map(|(a, b)| co * a + s * b / r).collect();
    debug_assert!(dot(&v, c) < 1.0);
    SpherePoint::new(v).expect("unit combination")
}
