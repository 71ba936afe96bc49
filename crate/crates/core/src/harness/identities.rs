//! Identities of the broken-path maps, checked on seeded random inputs.

use rand::Rng;

use super::{Report, SpaceSpec, Suite, SuiteConfig};
use crate::broken::{
    effectual_eval, eval_ek, forget_jumps, iota, one_times_pi, phi, phi_inv, q_map, random_broken,
    random_path, random_point, retract, stabilize_f, twisted_eval, BrokenPath, ProjectedPath,
};
use crate::geom::path::uniform_times;
use crate::geom::{
    project, GroupElement, OrbitPoint, Path, Point, Space, ARITHMETIC_TOL, MEMBERSHIP_TOL,
};
use crate::sampling::{self, seeded};

/// Longest broken path generated.
pub const MAX_STAGES: usize = 8;
/// Sample times for pointwise comparisons.
pub const POINTWISE_SAMPLES: usize = 100;

fn pair_distance(a: &(Point, Point), b: &(Point, Point)) -> f64 {
    a.0.distance(&b.0).max(a.1.distance(&b.1))
}

fn orbit_pair_distance(a: &(OrbitPoint, OrbitPoint), b: &(OrbitPoint, OrbitPoint)) -> f64 {
    a.0.distance(&b.0).max(a.1.distance(&b.1))
}

fn pointwise(a: &Path, b: &Path) -> f64 {
    uniform_times(POINTWISE_SAMPLES)
        .into_iter()
        .map(|t| {
            a.eval(t)
                .and_then(|x| b.eval(t).map(|y| x.distance(&y)))
                .unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max)
}

fn paths_pointwise(a: &BrokenPath, b: &BrokenPath) -> f64 {
    if a.jumps() != b.jumps() || a.stages() != b.stages() {
        return f64::INFINITY;
    }
    a.paths()
        .iter()
        .zip(b.paths())
        .map(|(x, y)| pointwise(x, y))
        .fold(0.0, f64::max)
}

fn flip(g: GroupElement) -> GroupElement {
    match g {
        GroupElement::Identity => GroupElement::Sigma,
        GroupElement::Sigma => GroupElement::Identity,
    }
}

/// ε(φ(ω)) against e₂(ω); a flipped jump models a broken φ.
fn twisted_phi_error(bp: &BrokenPath, flip_jump: bool) -> f64 {
    match phi(bp) {
        Ok((p, g)) => {
            let g = if flip_jump { flip(g) } else { g };
            pair_distance(&twisted_eval(&p, g), &eval_ek(bp))
        }
        Err(_) => f64::INFINITY,
    }
}

/// Run every identity `cfg.samples` times.
pub fn run_identity_suite(cfg: &SuiteConfig) -> Report {
    let mut report = Report::new(Suite::Identities, cfg);
    let (space, n) = match cfg.space {
        SpaceSpec::Torus => (Space::Torus, 0),
        SpaceSpec::Sphere(n) if n >= 1 => (Space::Sphere, n),
        SpaceSpec::Sphere(n) => {
            report.fail("configuration", format!("invalid sphere dimension {n}"), ());
            return report.finish();
        }
    };
    let mut rng = seeded(cfg.seed);
    let exact = Some(ARITHMETIC_TOL);
    let orbit = Some(MEMBERSHIP_TOL);
    let mut first_two_stage = None;

    for _ in 0..cfg.samples {
        let start = random_point(&mut rng, space, n);
        let k = rng.random_range(1..=MAX_STAGES);
        let bp = random_broken(&mut rng, &start, k);
        report.count(format!("stages:{}", bp.stages()));

        let ok = retract(&iota(&bp)).is_ok_and(|r| r == bp);
        if !report.check("retract_iota", None).outcome(ok) {
            report.fail("retract_iota", "r(ι(ω)) ≠ ω".into(), &bp);
        }
        let e = pair_distance(&eval_ek(&iota(&bp)), &eval_ek(&bp));
        if !report.check("e_iota", exact).error(e) {
            report.fail("e_iota", format!("error {e:e}"), &bp);
        }
        let e = pair_distance(&forget_jumps(&bp).eval(), &eval_ek(&bp));
        if !report.check("forget_jumps", exact).error(e) {
            report.fail("forget_jumps", format!("error {e:e}"), &bp);
        }

        let start = random_point(&mut rng, space, n);
        let k = rng.random_range(3..=MAX_STAGES);
        let long = random_broken(&mut rng, &start, k);
        let e = stabilize_f(&long).map_or(f64::INFINITY, |f| {
            pair_distance(&eval_ek(&f), &eval_ek(&long))
        });
        if !report.check("e_stabilize", exact).error(e) {
            report.fail("e_stabilize", format!("error {e:e}"), &long);
        }

        let start = random_point(&mut rng, space, n);
        let two = random_broken(&mut rng, &start, 2);
        let e = twisted_phi_error(&two, cfg.inject_fault);
        if !report.check("twisted_phi", exact).error(e) {
            report.fail("twisted_phi", format!("error {e:e}"), &two);
        }
        let e = phi(&two).map_or(f64::INFINITY, |(p, g)| {
            paths_pointwise(&phi_inv(&p, g), &two)
        });
        if !report.check("phi_inv_phi", exact).error(e) {
            report.fail("phi_inv_phi", format!("error {e:e}"), &two);
        }
        let e = match (q_map(&two), phi(&two)) {
            (Ok(q), Ok((p, _))) => pointwise(&q, &p),
            _ => f64::INFINITY,
        };
        if !report.check("q_equals_phi_path", exact).error(e) {
            report.fail("q_equals_phi_path", format!("error {e:e}"), &two);
        }
        // left square: (1 × π) ∘ e₂ = ϵ ∘ q
        let e = q_map(&two).map_or(f64::INFINITY, |q| {
            let (a, za) = one_times_pi(&eval_ek(&two));
            let (b, zb) = effectual_eval(&q);
            a.distance(&b).max(za.distance(&zb))
        });
        if !report.check("left_square", orbit).error(e) {
            report.fail("left_square", format!("error {e:e}"), &two);
        }
        first_two_stage.get_or_insert(two);

        let start = random_point(&mut rng, space, n);
        let alpha = random_path(&mut rng, &start);
        let g = sampling::group_element(&mut rng);
        let e = phi(&phi_inv(&alpha, g)).map_or(f64::INFINITY, |(p, h)| {
            if h == g {
                pointwise(&p, &alpha)
            } else {
                f64::INFINITY
            }
        });
        if !report.check("phi_phi_inv", exact).error(e) {
            report.fail("phi_phi_inv", format!("error {e:e}"), &alpha);
        }
        // right square: e₀₁ ∘ Pπ = (π × 1) ∘ ϵ
        let (x, z) = effectual_eval(&alpha);
        let e = orbit_pair_distance(&ProjectedPath(alpha.clone()).endpoints(), &(project(&x), z));
        if !report.check("right_square", orbit).error(e) {
            report.fail("right_square", format!("error {e:e}"), &alpha);
        }
    }

    let detected = first_two_stage.is_some_and(|bp| twisted_phi_error(&bp, true) > ARITHMETIC_TOL);
    report.negative_control("flip the jump returned by φ", detected);
    report.finish()
}
