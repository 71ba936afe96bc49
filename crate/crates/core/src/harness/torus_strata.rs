//! Torus strata: query generators landing on a prescribed planner label, and
//! membership predicates written directly in angle coordinates.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::Rng;
use serde::Serialize;

use crate::geom::{normalize_angle, CirclePoint, Point, TorusPoint};
use crate::torus_planner::{ArcCase, TorusDomain, TorusLabel, TorusQuery};

/// Distance kept from excluded loci when sampling.
pub const MARGIN: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum TorusStratum {
    D1,
    D2OnCx,
    D2OnCxD,
    D31,
    D32OnCx,
    D32OnCxD,
    D4,
}

/// Continuous parameters plus the discrete choices kept fixed under
/// perturbation.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusSample {
    pub params: Vec<f64>,
    /// x₂ = −1 instead of +1 for strata with x ∈ 𝖺 ∪ 𝖻.
    pub on_a: bool,
    /// Present z through σ of the generated lift.
    pub flip: bool,
}

fn uniform(rng: &mut (impl Rng + ?Sized), lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

fn angle_away_from(rng: &mut (impl Rng + ?Sized), bad: &[f64]) -> f64 {
    loop {
        let s = uniform(rng, -PI, PI);
        if bad.iter().all(|b| normalize_angle(s - b).abs() > MARGIN) {
            return s;
        }
    }
}

/// Start points off 𝖺 ∪ 𝖻 by at least the margin.
fn generic_b(rng: &mut (impl Rng + ?Sized)) -> f64 {
    angle_away_from(rng, &[0.0, PI])
}

fn cx_offset(rng: &mut (impl Rng + ?Sized)) -> f64 {
    uniform(rng, -FRAC_PI_2 + MARGIN, FRAC_PI_2 - MARGIN)
}

impl TorusStratum {
    pub const ALL: [TorusStratum; 7] = [
        TorusStratum::D1,
        TorusStratum::D2OnCx,
        TorusStratum::D2OnCxD,
        TorusStratum::D31,
        TorusStratum::D32OnCx,
        TorusStratum::D32OnCxD,
        TorusStratum::D4,
    ];

    pub fn label(self) -> TorusLabel {
        use TorusStratum::*;
        let (d, c) = match self {
            D1 => (TorusDomain::D1, None),
            D2OnCx => (TorusDomain::D2, Some(ArcCase::OnCx)),
            D2OnCxD => (TorusDomain::D2, Some(ArcCase::OnCxD)),
            D31 => (TorusDomain::D31, None),
            D32OnCx => (TorusDomain::D32, Some(ArcCase::OnCx)),
            D32OnCxD => (TorusDomain::D32, Some(ArcCase::OnCxD)),
            D4 => (TorusDomain::D4, None),
        };
        TorusLabel::new(d, c)
    }

    pub fn name(self) -> String {
        self.label().name()
    }

    fn start_on_ab(self) -> bool {
        matches!(
            self,
            TorusStratum::D32OnCx | TorusStratum::D32OnCxD | TorusStratum::D4
        )
    }

    /// Parameters:
    /// - D1: a, b, θ, s with y = (x₁e^{iθ}, −x₂e^{is});
    /// - D2/OnCx: a, b, θ with y = (x₁e^{iθ}, −x₂);
    /// - D2/OnCxD: a, b, s with y = (ix₁, −x₂e^{is});
    /// - D31: a, b with y = a_x;
    /// - D32/OnCx, D32/OnCxD, D4: as above with b fixed to 0 or π.
    pub fn sample(self, rng: &mut (impl Rng + ?Sized)) -> TorusSample {
        use TorusStratum::*;
        let a = uniform(rng, -PI, PI);
        let params = match self {
            D1 => {
                let s = uniform(rng, MARGIN, TAU - MARGIN);
                vec![a, uniform(rng, -PI, PI), cx_offset(rng), s]
            }
            D2OnCx => vec![a, generic_b(rng), cx_offset(rng)],
            D2OnCxD => {
                let b = generic_b(rng);
                // s = 0 is the corner with C_x, s = −2b is a_x
                vec![a, b, angle_away_from(rng, &[0.0, -2.0 * b])]
            }
            D31 => vec![a, generic_b(rng)],
            D32OnCx => vec![a, cx_offset(rng)],
            D32OnCxD => vec![a, angle_away_from(rng, &[0.0])],
            D4 => vec![a],
        };
        TorusSample {
            params,
            on_a: self.start_on_ab() && rng.random_bool(0.5),
            flip: rng.random_bool(0.5),
        }
    }

    pub fn query(self, s: &TorusSample) -> TorusQuery {
        use TorusStratum::*;
        let p = &s.params;
        let x = if self.start_on_ab() {
            let x2 = if s.on_a {
                CirclePoint::from_components(-1.0, 0.0)
            } else {
                CirclePoint::ONE
            };
            TorusPoint::new(CirclePoint::from_angle(p[0]), x2)
        } else {
            TorusPoint::from_angles(p[0], p[1])
        };
        let (x1, x2) = (x.x1, x.x2);
        let a_x = TorusPoint::new(x1.rotate(FRAC_PI_2), x2.conj().neg());
        let y = match self {
            D1 => TorusPoint::new(x1.rotate(p[2]), x2.neg().rotate(p[3])),
            D2OnCx => TorusPoint::new(x1.rotate(p[2]), x2.neg()),
            D2OnCxD => TorusPoint::new(x1.rotate(FRAC_PI_2), x2.neg().rotate(p[2])),
            D32OnCx => TorusPoint::new(x1.rotate(p[1]), x2.neg()),
            D32OnCxD => TorusPoint::new(x1.rotate(FRAC_PI_2), x2.neg().rotate(p[1])),
            D31 | D4 => a_x,
        };
        TorusQuery::new(x, if s.flip { y.sigma() } else { y })
    }

    pub fn perturb(self, s: &TorusSample, dir: &[f64], eps: f64) -> TorusSample {
        let params = s.params.iter().zip(dir).map(|(p, d)| p + eps * d).collect();
        TorusSample {
            params,
            ..s.clone()
        }
    }
}

/// Distance between queries in T × K.
pub fn query_distance(q: &TorusQuery, r: &TorusQuery) -> f64 {
    q.x.distance(&r.x) + q.z.distance(&r.z)
}

/// Every label whose defining predicate holds for the query at tolerance
/// `tol`. A well-formed partition yields exactly one.
pub fn memberships(q: &TorusQuery, tol: f64) -> Vec<TorusLabel> {
    let [xa, xb] = q.x.angles();
    let on_ab = xb.sin().abs() <= tol;
    let lifts: Vec<[f64; 2]> = q.z.lifts().iter().map(torus_angles).collect();
    let theta = |y: &[f64; 2]| normalize_angle(y[0] - xa);
    let off = |y: &[f64; 2]| normalize_angle(y[1] - xb - PI);
    let ax = [xa + FRAC_PI_2, PI - xb];
    let is_ax = lifts
        .iter()
        .any(|y| normalize_angle(y[0] - ax[0]).hypot(normalize_angle(y[1] - ax[1])) <= tol);

    let mut out = Vec::new();
    if lifts
        .iter()
        .any(|y| theta(y).abs() < FRAC_PI_2 - tol && off(y).abs() > tol)
    {
        out.push(TorusLabel::new(TorusDomain::D1, None));
    }
    let (d3, d2) = if on_ab {
        (TorusDomain::D4, TorusDomain::D32)
    } else {
        (TorusDomain::D31, TorusDomain::D2)
    };
    if is_ax {
        out.push(TorusLabel::new(d3, None));
        return out;
    }
    let on_cx = |y: &[f64; 2]| off(y).abs() <= tol && theta(y).abs() <= FRAC_PI_2 + tol;
    let on_left = |y: &[f64; 2]| (theta(y) + FRAC_PI_2).abs() <= tol;
    let on_right = |y: &[f64; 2]| (theta(y) - FRAC_PI_2).abs() <= tol;
    if lifts.iter().any(|y| on_cx(y) && !on_left(y)) {
        out.push(TorusLabel::new(d2, Some(ArcCase::OnCx)));
    } else if lifts.iter().any(|y| on_right(y) && !on_cx(y)) {
        out.push(TorusLabel::new(d2, Some(ArcCase::OnCxD)));
    }
    out
}

fn torus_angles(p: &Point) -> [f64; 2] {
    p.as_torus().expect("torus orbit").angles()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::seeded;
    use crate::torus_planner::classify;

    #[test]
    fn generators_hit_their_labels() {
        let mut rng = seeded(0);
        for s in TorusStratum::ALL {
            for _ in 0..200 {
                let q = s.query(&s.sample(&mut rng));
                assert_eq!(classify(&q).label, s.label(), "{}", s.name());
                assert_eq!(memberships(&q, 1e-9), vec![s.label()], "{}", s.name());
            }
        }
    }

    #[test]
    fn perturbation_stays_in_stratum() {
        let mut rng = seeded(1);
        for s in TorusStratum::ALL {
            let base = s.sample(&mut rng);
            let dir = vec![0.6; base.params.len()];
            let q = s.query(&s.perturb(&base, &dir, 1e-3));
            assert_eq!(classify(&q).label, s.label());
        }
    }
}
