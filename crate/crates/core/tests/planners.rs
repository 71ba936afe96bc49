use std::f64::consts::PI;

use nalgebra::DMatrix;
use proptest::prelude::*;
use symm_mp::geom::SpherePoint;
use symm_mp::harness::{sphere_strata, torus_strata};
use symm_mp::sampling::{self, seeded};
use symm_mp::sphere_planner::{self, classify_sphere, make_frame, FrameKind, SphereQuery};
use symm_mp::torus_planner::{self, classify, domain_count, TorusQuery};

fn angles() -> impl Strategy<Value = [f64; 2]> {
    [-PI..PI, -PI..PI]
}

fn sphere_query(seed: u64, n: usize) -> SphereQuery {
    let mut rng = seeded(seed);
    let p = sampling::sphere_point(&mut rng, n);
    let l = sampling::sphere_point(&mut rng, n);
    SphereQuery::new(p, l)
}

#[test]
fn torus_has_four_domains() {
    assert_eq!(domain_count(), 4);
}

#[test]
fn sphere_domain_counts() {
    for n in 1..=9usize {
        let f = make_frame(n as i64).unwrap();
        let parallel = matches!(n, 1 | 3 | 7);
        assert_eq!(
            f.domain_count(),
            if parallel { n + 1 } else { n + 2 },
            "n={n}"
        );
        assert_eq!(f.is_parallelization(), parallel);
    }
    for bad in [0, -1, -7] {
        assert!(make_frame(bad).is_err());
    }
}

#[test]
fn parallel_frames_use_division_algebras() {
    let kinds = [
        (1, FrameKind::Complex),
        (3, FrameKind::Quaternion),
        (7, FrameKind::Octonion),
    ];
    for (n, kind) in kinds {
        assert_eq!(make_frame(n).unwrap().kind, kind);
    }
    assert_eq!(make_frame(2).unwrap().kind, FrameKind::Canonical);
}

proptest! {
    #[test]
    fn torus_sections_hit_start_and_orbit(x in angles(), z in angles()) {
        let q = TorusQuery::from_angles(x, z);
        let r = torus_planner::plan(&q);
        prop_assert!(r.start_error <= 1e-12, "start error {}", r.start_error);
        prop_assert!(r.endpoint_error <= 1e-9, "endpoint error {}", r.endpoint_error);
        prop_assert!((1..=4).contains(&r.domain));
    }

    #[test]
    fn torus_plan_depends_only_on_the_orbit(x in angles(), z in angles()) {
        let q = TorusQuery::from_angles(x, z);
        let flipped = TorusQuery::from_angles(x, [z[0] + PI, -z[1]]);
        let (a, b) = (classify(&q), classify(&flipped));
        prop_assert_eq!(a.label, b.label);
        prop_assert!(a.lift.distance(&b.lift) <= 1e-9);
    }

    #[test]
    fn torus_predicates_agree_with_classifier(x in angles(), z in angles()) {
        let q = TorusQuery::from_angles(x, z);
        prop_assert_eq!(torus_strata::memberships(&q, 1e-9), vec![classify(&q).label]);
    }

    #[test]
    fn sphere_sections_hit_start_and_line(seed in any::<u64>(), n in 1usize..=8) {
        let f = make_frame(n as i64).unwrap();
        let q = sphere_query(seed, n);
        let r = sphere_planner::plan(&f, &q, 5).unwrap();
        prop_assert!(r.start_error <= 1e-12);
        prop_assert!(r.endpoint_error <= 1e-9);
        prop_assert!(r.domain < f.domain_count());
    }

    #[test]
    fn sphere_plan_depends_only_on_the_line(seed in any::<u64>(), n in 1usize..=8) {
        let f = make_frame(n as i64).unwrap();
        let q = sphere_query(seed, n);
        let other = SphereQuery::new(q.p.clone(), q.l_lift().antipode());
        let (a, b) = (classify_sphere(&f, &q).unwrap(), classify_sphere(&f, &other).unwrap());
        prop_assert_eq!(a.domain, b.domain);
        prop_assert!(a.lift.distance(&b.lift) <= 1e-12);
        let v = f.vector(&q.p, a.domain);
        prop_assert!(a.lift.coords().iter().zip(&v).map(|(x, y)| x * y).sum::<f64>() > 0.0);
        prop_assert_eq!(sphere_strata::memberships(&f, &q, 1e-9), vec![a.domain]);
    }

    #[test]
    fn frames_span_and_parallel_frames_are_orthonormal(seed in any::<u64>(), n in 1usize..=8) {
        let f = make_frame(n as i64).unwrap();
        let p: SpherePoint = sampling::sphere_point(&mut seeded(seed), n);
        let m: DMatrix<f64> = f.matrix(&p);
        prop_assert_eq!(m.nrows(), f.k + 1);
        prop_assert_eq!(m.rank(1e-9), n + 1);
        if f.is_parallelization() {
            let gram = &m * m.transpose();
            let err = (gram - DMatrix::identity(n + 1, n + 1)).amax();
            prop_assert!(err <= 1e-9, "orthonormality error {err}");
            prop_assert!((m.determinant().abs() - 1.0).abs() <= 1e-9);
        }
    }
}
