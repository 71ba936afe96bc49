use proptest::prelude::*;
use symm_mp::broken::{
    effectual_eval, eval_ek, forget_jumps, iota, make_broken, one_times_pi, phi, phi_inv, q_map,
    random_broken, random_point, retract, saturated_diagonal, stabilize_f, translation_tau,
    twisted_eval, BrokenError, BrokenPath, ProjectedPath,
};
use symm_mp::geom::path::uniform_times;
use symm_mp::geom::{project, FiniteGroup, GroupElement, Path, Point, Space};
use symm_mp::sampling::seeded;

fn space() -> impl Strategy<Value = (Space, usize)> {
    prop_oneof![
        Just((Space::Torus, 0)),
        (1usize..=7).prop_map(|n| (Space::Sphere, n)),
    ]
}

fn broken(seed: u64, (space, n): (Space, usize), stages: usize) -> BrokenPath {
    let mut rng = seeded(seed);
    let start = random_point(&mut rng, space, n);
    random_broken(&mut rng, &start, stages)
}

fn pair_gap(a: &(Point, Point), b: &(Point, Point)) -> f64 {
    a.0.distance(&b.0).max(a.1.distance(&b.1))
}

fn pointwise(a: &Path, b: &Path) -> f64 {
    uniform_times(100)
        .into_iter()
        .map(|t| a.eval(t).unwrap().distance(&b.eval(t).unwrap()))
        .fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn retract_undoes_iota(seed in any::<u64>(), sp in space(), k in 1usize..5) {
        let bp = broken(seed, sp, k);
        let up = iota(&bp);
        prop_assert_eq!(up.stages(), k + 1);
        prop_assert_eq!(retract(&up).unwrap(), bp);
    }

    #[test]
    fn iota_and_stabilization_preserve_endpoints(
        seed in any::<u64>(), sp in space(), k in 1usize..5
    ) {
        let bp = broken(seed, sp, k);
        prop_assert!(pair_gap(&eval_ek(&iota(&bp)), &eval_ek(&bp)) <= 1e-12);
        let longer = broken(seed, sp, k + 2);
        let f = stabilize_f(&longer).unwrap();
        prop_assert_eq!(f.stages(), k + 1);
        prop_assert!(pair_gap(&eval_ek(&f), &eval_ek(&longer)) <= 1e-12);
        // the result is again a valid broken path
        prop_assert!(make_broken(f.paths().to_vec(), f.jumps().to_vec()).is_ok());
    }

    #[test]
    fn phi_is_a_homeomorphism(seed in any::<u64>(), sp in space()) {
        let bp = broken(seed, sp, 2);
        let (alpha, g) = phi(&bp).unwrap();
        prop_assert_eq!(g, bp.jumps()[0]);
        prop_assert!(pair_gap(&twisted_eval(&alpha, g), &eval_ek(&bp)) <= 1e-12);

        let back = phi_inv(&alpha, g);
        prop_assert_eq!(back.jumps(), bp.jumps());
        for (a, b) in back.paths().iter().zip(bp.paths()) {
            prop_assert!(pointwise(a, b) <= 1e-12);
        }

        let (again, h) = phi(&back).unwrap();
        prop_assert_eq!(h, g);
        prop_assert!(pointwise(&again, &alpha) <= 1e-12);
    }

    #[test]
    fn comparison_squares_commute(seed in any::<u64>(), sp in space()) {
        let bp = broken(seed, sp, 2);
        prop_assert!(pair_gap(&forget_jumps(&bp).eval(), &eval_ek(&bp)) <= 1e-12);

        let gamma = q_map(&bp).unwrap();
        let (x, z) = effectual_eval(&gamma);
        let (y, w) = one_times_pi(&eval_ek(&bp));
        prop_assert!(x.distance(&y) <= 1e-9);
        prop_assert!(z.distance(&w) <= 1e-9);

        let (a, b) = ProjectedPath(gamma.clone()).endpoints();
        let ends = eval_ek(&bp);
        prop_assert!(a.approx_eq(&project(&ends.0), 1e-9));
        prop_assert!(b.approx_eq(&project(&ends.1), 1e-9));
    }

    #[test]
    fn loops_over_orbits_lie_over_the_saturated_diagonal(
        seed in any::<u64>(), sp in space(), g in prop_oneof![
            Just(GroupElement::Identity), Just(GroupElement::Sigma)
        ]
    ) {
        let mut rng = seeded(seed);
        let x = random_point(&mut rng, sp.0, sp.1);
        let pair = saturated_diagonal(&x, g);
        prop_assert_eq!(translation_tau(&pair.0, &pair.1).unwrap(), g);
        let alpha = Path::constant(x.clone());
        prop_assert!(pair_gap(&twisted_eval(&alpha, g), &pair) <= 1e-12);
    }

    #[test]
    fn mismatched_jumps_are_rejected(seed in any::<u64>(), sp in space()) {
        let bp = broken(seed, sp, 2);
        let wrong = bp.jumps()[0].compose(GroupElement::Sigma);
        prop_assert_eq!(
            make_broken(bp.paths().to_vec(), vec![wrong]),
            Err(BrokenError::GluingViolation(1))
        );
        let short = make_broken(bp.paths().to_vec(), vec![]);
        let expected = BrokenError::LengthMismatch { paths: 2, jumps: 0 };
        prop_assert_eq!(short, Err(expected));
    }
}

#[test]
fn stage_requirements() {
    let bp = broken(7, (Space::Torus, 0), 1);
    assert_eq!(retract(&bp), Err(BrokenError::TooShort));
    assert!(phi(&bp).is_err());
    assert!(phi(&broken(7, (Space::Torus, 0), 3)).is_err());
    assert_eq!(
        stabilize_f(&broken(7, (Space::Torus, 0), 2)),
        Err(BrokenError::TooShort)
    );
}

#[test]
fn tau_rejects_points_in_different_orbits() {
    let mut rng = seeded(3);
    let x = random_point(&mut rng, Space::Sphere, 3);
    let y = random_point(&mut rng, Space::Sphere, 3);
    assert_eq!(translation_tau(&x, &y), Err(BrokenError::NotInOrbit));
}
