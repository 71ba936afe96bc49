//! Four-domain effectual planner on the torus with the involution
//! σ(x₁, x₂) = (−x₁, x̄₂), planning from x ∈ T to an orbit z ∈ K = T/ℤ₂.
//!
//! For a start point x = (e^{ia}, e^{ib}) the planner works with loci
//! relative to x:
//!
//! - the half handle M_x of points whose first coordinate is within π/2 of x₁,
//!   bounded by the circles C_x^I (offset −π/2) and C_x^D (offset +π/2);
//! - the arc C_x = (S¹ × {−x₂}) ∩ M_x, and A_x = C_x^I ∪ C_x ∪ C_x^D;
//! - the points a_x = (e^{iπ/2}x₁, −x̄₂) and b_x = (e^{−iπ/2}x₁, −x₂) = σ(a_x);
//! - the horizontal circles 𝖺 = S¹ × {−1} and 𝖻 = S¹ × {1}.
//!
//! Domains: D1 when z has a lift in M_x∖A_x; D2 when x ∉ 𝖺∪𝖻 and z has a lift
//! in A_x∖(C_x^I ∪ {a_x}); D31 when x ∉ 𝖺∪𝖻 and z = [a_x]; D32 and D4 are the
//! analogues for x ∈ 𝖺∪𝖻. D31 and D32 are reported together as D3.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geom::circle::normalize_into;
use crate::geom::path_json::PathDocument;
use crate::geom::{Coord, OrbitPoint, Path, Point, RotationChain, TorusPoint, MEMBERSHIP_TOL};

/// Internal domain label. D31 and D32 make up the external domain D3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TorusDomain {
    D1,
    D2,
    D31,
    D32,
    D4,
}

impl TorusDomain {
    pub const ALL: [TorusDomain; 5] = [
        TorusDomain::D1,
        TorusDomain::D2,
        TorusDomain::D31,
        TorusDomain::D32,
        TorusDomain::D4,
    ];

    /// Index 1..=4 of the externally reported domain.
    pub fn external(self) -> usize {
        match self {
            TorusDomain::D1 => 1,
            TorusDomain::D2 => 2,
            TorusDomain::D31 | TorusDomain::D32 => 3,
            TorusDomain::D4 => 4,
        }
    }
}

impl fmt::Display for TorusDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Number of domains of the torus planner.
pub fn domain_count() -> usize {
    let mut ext: Vec<usize> = TorusDomain::ALL.iter().map(|d| d.external()).collect();
    ext.dedup();
    ext.len()
}

/// Which part of A_x carries the chosen lift in D2 and D32.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArcCase {
    /// y ∈ C_x
    OnCx,
    /// y ∈ C_x^D
    OnCxD,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusLabel {
    pub domain: TorusDomain,
    pub case: Option<ArcCase>,
}

impl TorusLabel {
    pub fn new(domain: TorusDomain, case: Option<ArcCase>) -> Self {
        Self { domain, case }
    }

    /// Stratum name, e.g. `D2/OnCxD`.
    pub fn name(&self) -> String {
        match self.case {
            Some(c) => format!("{:?}/{:?}", self.domain, c),
            None => format!("{:?}", self.domain),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorusQuery {
    pub x: TorusPoint,
    pub z: OrbitPoint,
}

impl TorusQuery {
    /// Query with target orbit given by any of its lifts.
    pub fn new(x: TorusPoint, z_lift: TorusPoint) -> Self {
        Self {
            x,
            z: OrbitPoint::new(z_lift.into()),
        }
    }

    pub fn from_angles(x: [f64; 2], z: [f64; 2]) -> Self {
        Self::new(
            TorusPoint::from_angles(x[0], x[1]),
            TorusPoint::from_angles(z[0], z[1]),
        )
    }

    pub fn z_lifts(&self) -> [TorusPoint; 2] {
        let y = match self.z.representative() {
            Point::Torus(y) => *y,
            Point::Sphere(_) => panic!("torus query with a sphere target"),
        };
        [y, y.sigma()]
    }
}

/// Loci attached to a start point x.
#[derive(Clone, Copy, Debug)]
pub struct Loci {
    pub x: TorusPoint,
    pub tol: f64,
}

impl Loci {
    pub fn new(x: TorusPoint, tol: f64) -> Self {
        Self { x, tol }
    }

    /// First-coordinate offset θ(y) = arg(y₁ / x₁) ∈ (−π, π].
    pub fn theta(&self, y: &TorusPoint) -> f64 {
        y.x1.angle_from(self.x.x1)
    }

    /// arg(y₂ / (−x₂)); zero exactly on the horizontal circle through C_x.
    pub fn offset_from_cx(&self, y: &TorusPoint) -> f64 {
        y.x2.angle_from(self.x.x2.neg())
    }

    /// x′ = (x₁, −x₂).
    pub fn x_prime(&self) -> TorusPoint {
        TorusPoint::new(self.x.x1, self.x.x2.neg())
    }

    /// a_x = (e^{iπ/2} x₁, −x̄₂).
    pub fn a_x(&self) -> TorusPoint {
        TorusPoint::new(self.x.x1.rotate(FRAC_PI_2), self.x.x2.conj().neg())
    }

    /// b_x = (e^{−iπ/2} x₁, −x₂).
    pub fn b_x(&self) -> TorusPoint {
        TorusPoint::new(self.x.x1.rotate(-FRAC_PI_2), self.x.x2.neg())
    }

    /// x ∈ 𝖺 ∪ 𝖻, i.e. x₂ = ±1.
    pub fn on_horizontal_circles(&self) -> bool {
        let b = self.x.b().abs();
        b.min(PI - b) <= self.tol
    }

    pub fn in_half_handle(&self, y: &TorusPoint) -> bool {
        self.theta(y).abs() <= FRAC_PI_2 + self.tol
    }

    pub fn on_left_circle(&self, y: &TorusPoint) -> bool {
        (self.theta(y) + FRAC_PI_2).abs() <= self.tol
    }

    pub fn on_right_circle(&self, y: &TorusPoint) -> bool {
        (self.theta(y) - FRAC_PI_2).abs() <= self.tol
    }

    pub fn on_cx(&self, y: &TorusPoint) -> bool {
        self.offset_from_cx(y).abs() <= self.tol && self.in_half_handle(y)
    }

    pub fn in_a(&self, y: &TorusPoint) -> bool {
        self.on_left_circle(y) || self.on_cx(y) || self.on_right_circle(y)
    }

    /// y ∈ M_x ∖ A_x, with a tolerance margin around A_x.
    pub fn in_open_handle(&self, y: &TorusPoint) -> bool {
        self.theta(y).abs() < FRAC_PI_2 - self.tol && self.offset_from_cx(y).abs() > self.tol
    }

    pub fn is_a_x(&self, y: &TorusPoint) -> bool {
        y.distance(&self.a_x()) <= self.tol
    }

    /// y ∈ A_x ∖ (C_x^I ∪ {a_x}), split into its two cases.
    pub fn arc_case(&self, y: &TorusPoint) -> Option<ArcCase> {
        if self.is_a_x(y) || self.on_left_circle(y) {
            return None;
        }
        if self.on_cx(y) {
            Some(ArcCase::OnCx)
        } else if self.on_right_circle(y) {
            Some(ArcCase::OnCxD)
        } else {
            None
        }
    }

    /// z = [a_x].
    pub fn targets_a_x(&self, z: &OrbitPoint) -> bool {
        z.contains(&self.a_x().into(), self.tol)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Classification {
    pub label: TorusLabel,
    /// The lift of z the section ends at (b_x for D31 and D4).
    pub lift: TorusPoint,
}

/// Assign a query to exactly one domain.
///
/// Order: D1, then z = [a_x], then the A_x cases. Within tolerance of a
/// stratum boundary the first matching rule wins.
pub fn classify(q: &TorusQuery) -> Classification {
    classify_with_tol(q, MEMBERSHIP_TOL)
}

pub fn classify_with_tol(q: &TorusQuery, tol: f64) -> Classification {
    let loci = Loci::new(q.x, tol);
    let lifts = q.z_lifts();
    let on_ab = loci.on_horizontal_circles();

    if let Some(y) = lifts.iter().find(|y| loci.in_open_handle(y)) {
        return Classification {
            label: TorusLabel::new(TorusDomain::D1, None),
            lift: *y,
        };
    }
    if loci.targets_a_x(&q.z) {
        let domain = if on_ab {
            TorusDomain::D4
        } else {
            TorusDomain::D31
        };
        return Classification {
            label: TorusLabel::new(domain, None),
            lift: loci.b_x(),
        };
    }
    let domain = if on_ab {
        TorusDomain::D32
    } else {
        TorusDomain::D2
    };
    for case in [ArcCase::OnCx, ArcCase::OnCxD] {
        if let Some(y) = lifts.iter().find(|y| loci.arc_case(y) == Some(case)) {
            return Classification {
                label: TorusLabel::new(domain, Some(case)),
                lift: *y,
            };
        }
    }
    // Every lift pair meets M_x ∪ σ(M_x) = T, so the rules above are exhaustive
    // away from tolerance bands; fall back to the lift nearest the handle.
    let y = if loci.theta(&lifts[0]).abs() <= loci.theta(&lifts[1]).abs() {
        lifts[0]
    } else {
        lifts[1]
    };
    Classification {
        label: TorusLabel::new(TorusDomain::D1, None),
        lift: y,
    }
}

/// The path prescribed for an already-classified query.
pub fn section_for(q: &TorusQuery, c: &Classification) -> Path {
    let x = q.x;
    let loci = Loci::new(x, MEMBERSHIP_TOL);
    let y = c.lift;
    let chain = RotationChain::from(x);
    match (c.label.domain, c.label.case) {
        // adjust the first coordinate, then the second
        (TorusDomain::D1, _) => chain
            .then(Coord::First, loci.theta(&y))
            .then(Coord::Second, y.x2.angle_from(x.x2))
            .build(),
        // half turn, slide along C_x, then climb C_x^D without crossing a_x
        (TorusDomain::D2, _) => {
            let psi_a = normalize_into(loci.a_x().x2.angle_from(x.x2.neg()), 0.0);
            let psi_a = if psi_a >= TAU { psi_a - TAU } else { psi_a };
            let psi = normalize_into(loci.offset_from_cx(&y), psi_a - TAU);
            chain
                .then(Coord::Second, PI)
                .then(Coord::First, loci.theta(&y))
                .then(Coord::Second, psi)
                .build()
        }
        (TorusDomain::D31 | TorusDomain::D4, _) => chain
            .then(Coord::Second, PI)
            .then(Coord::First, -FRAC_PI_2)
            .build(),
        (TorusDomain::D32, Some(ArcCase::OnCxD)) => chain
            .then(Coord::First, loci.theta(&y))
            .then(Coord::Second, y.x2.angle_from(x.x2))
            .build(),
        (TorusDomain::D32, _) => chain
            .then(Coord::Second, PI)
            .then(Coord::First, loci.theta(&y))
            .build(),
    }
}

/// The planner's section s(x, z).
pub fn section(q: &TorusQuery) -> Path {
    section_for(q, &classify(q))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanReport {
    pub space: String,
    pub label: TorusLabel,
    /// External domain index 1..=4.
    pub domain: usize,
    pub x: [f64; 2],
    pub z: [f64; 2],
    pub lift: [f64; 2],
    pub path: PathDocument,
    pub start_error: f64,
    pub endpoint_error: f64,
    pub start_ok: bool,
    pub endpoint_ok: bool,
}

/// Classify, build the section and check its endpoints.
pub fn plan(q: &TorusQuery) -> PlanReport {
    plan_with(q, 33)
}

pub fn plan_with(q: &TorusQuery, samples: usize) -> PlanReport {
    plan_with_tol(q, samples, MEMBERSHIP_TOL)
}

pub fn plan_with_tol(q: &TorusQuery, samples: usize, tol: f64) -> PlanReport {
    let c = classify_with_tol(q, tol);
    let path = section_for(q, &c);
    let (start, end) = path.endpoints();
    let start_error = start.distance(&q.x.into());
    let endpoint_error = q.z.distance_to_point(&end);
    let z = match q.z.representative() {
        Point::Torus(y) => y.angles(),
        Point::Sphere(_) => unreachable!(),
    };
    PlanReport {
        space: "torus".into(),
        label: c.label,
        domain: c.label.domain.external(),
        x: q.x.angles(),
        z,
        lift: c.lift.angles(),
        path: PathDocument::new(path).with_samples(samples),
        start_error,
        endpoint_error,
        start_ok: start_error <= crate::geom::ARITHMETIC_TOL,
        endpoint_ok: endpoint_error <= MEMBERSHIP_TOL,
    }
}
