//! Partition, section and continuity suites for both planners.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::sphere_strata::{self, SphereSample, SphereStratum};
use super::torus_strata::{self, TorusSample, TorusStratum};
use super::{corrupt, ContinuityRow, Report, SpaceSpec, Suite, SuiteConfig};
use crate::geom::sphere::norm;
use crate::geom::{sup_distance, Path, Point, ARITHMETIC_TOL, MEMBERSHIP_TOL};
use crate::sampling::{self, seeded, SeededRng};
use crate::sphere_planner::{self, classify_sphere_with_tol, make_frame, Frame, SphereQuery};
use crate::torus_planner::{self, classify_with_tol, TorusQuery};

/// Perturbation sizes probed by the continuity suite.
pub const DELTAS: [f64; 3] = [1e-3, 1e-4, 1e-5];
pub const TORUS_LIPSCHITZ: f64 = 64.0;
pub const SPHERE_LIPSCHITZ: f64 = 16.0;
/// Required shrink factor of the sup-distance per tenfold decrease of δ.
pub const DECAY: f64 = 0.2;
/// Bound on the secant rescaling of a perturbation step.
pub const MAX_RESCALE: f64 = 16.0;
pub const SECANT_STEPS: usize = 4;
/// Sample times used for sup-distances.
pub const SUP_SAMPLES: usize = 65;

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Query {
    Torus(TorusQuery),
    Sphere(SphereQuery),
}

#[derive(Clone, Copy, Debug)]
pub enum Planner {
    Torus,
    Sphere(Frame),
}

impl Planner {
    pub fn for_space(space: SpaceSpec) -> Result<Self, String> {
        match space {
            SpaceSpec::Torus => Ok(Planner::Torus),
            SpaceSpec::Sphere(n) => make_frame(n as i64)
                .map(Planner::Sphere)
                .map_err(|e| e.to_string()),
        }
    }

    fn lipschitz(&self) -> f64 {
        match self {
            Planner::Torus => TORUS_LIPSCHITZ,
            Planner::Sphere(_) => SPHERE_LIPSCHITZ,
        }
    }

    fn strata(&self) -> Vec<Stratum> {
        match self {
            Planner::Torus => TorusStratum::ALL.into_iter().map(Stratum::Torus).collect(),
            Planner::Sphere(f) => SphereStratum::all(*f)
                .into_iter()
                .map(Stratum::Sphere)
                .collect(),
        }
    }

    /// Uniform query, expected to land in the open generic domain.
    fn uniform(&self, rng: &mut SeededRng) -> (Query, Vec<f64>) {
        match self {
            Planner::Torus => {
                let (x, y) = (sampling::torus_point(rng), sampling::torus_point(rng));
                let coords = [x.angles(), y.angles()].concat();
                (Query::Torus(TorusQuery::new(x, y)), coords)
            }
            Planner::Sphere(f) => {
                let (p, l) = (
                    sampling::sphere_point(rng, f.n),
                    sampling::sphere_point(rng, f.n),
                );
                let coords = [p.coords(), l.coords()].concat();
                (Query::Sphere(SphereQuery::new(p, l)), coords)
            }
        }
    }

    fn generic_label(&self) -> String {
        match self {
            Planner::Torus => TorusStratum::D1.name(),
            Planner::Sphere(_) => "D0".into(),
        }
    }

    pub fn label(&self, q: &Query, tol: f64) -> Result<String, String> {
        match (self, q) {
            (Planner::Torus, Query::Torus(q)) => Ok(classify_with_tol(q, tol).label.name()),
            (Planner::Sphere(f), Query::Sphere(q)) => classify_sphere_with_tol(f, q, tol)
                .map(|c| format!("D{}", c.domain))
                .map_err(|e| e.to_string()),
            _ => Err("query does not match planner".into()),
        }
    }

    pub fn memberships(&self, q: &Query, tol: f64) -> Vec<String> {
        match (self, q) {
            (Planner::Torus, Query::Torus(q)) => torus_strata::memberships(q, tol)
                .iter()
                .map(|l| l.name())
                .collect(),
            (Planner::Sphere(f), Query::Sphere(q)) => sphere_strata::memberships(f, q, tol)
                .iter()
                .map(|i| format!("D{i}"))
                .collect(),
            _ => vec![],
        }
    }

    pub fn section(&self, q: &Query, tol: f64) -> Result<Path, String> {
        match (self, q) {
            (Planner::Torus, Query::Torus(q)) => {
                Ok(torus_planner::section_for(q, &classify_with_tol(q, tol)))
            }
            (Planner::Sphere(f), Query::Sphere(q)) => classify_sphere_with_tol(f, q, tol)
                .and_then(|c| sphere_planner::section_for(q, &c))
                .map_err(|e| e.to_string()),
            _ => Err("query does not match planner".into()),
        }
    }
}

impl Query {
    fn start(&self) -> Point {
        match self {
            Query::Torus(q) => q.x.into(),
            Query::Sphere(q) => q.p.clone().into(),
        }
    }

    fn target_distance(&self, y: &Point) -> f64 {
        match self {
            Query::Torus(q) => q.z.distance_to_point(y),
            Query::Sphere(q) => q.l.distance_to_point(y),
        }
    }

    fn distance(&self, other: &Query) -> f64 {
        match (self, other) {
            (Query::Torus(a), Query::Torus(b)) => torus_strata::query_distance(a, b),
            (Query::Sphere(a), Query::Sphere(b)) => sphere_strata::query_distance(a, b),
            _ => f64::INFINITY,
        }
    }

    /// (start error, endpoint error) of a candidate section.
    pub fn errors(&self, p: &Path) -> (f64, f64) {
        let (s, e) = p.endpoints();
        (s.distance(&self.start()), self.target_distance(&e))
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Stratum {
    Torus(TorusStratum),
    Sphere(SphereStratum),
}

#[derive(Clone, Debug)]
pub enum Sample {
    Torus(TorusSample),
    Sphere(SphereSample),
}

impl Stratum {
    pub fn name(&self) -> String {
        match self {
            Stratum::Torus(s) => s.name(),
            Stratum::Sphere(s) => s.name(),
        }
    }

    fn sample(&self, rng: &mut SeededRng) -> Sample {
        match self {
            Stratum::Torus(s) => Sample::Torus(s.sample(rng)),
            Stratum::Sphere(s) => Sample::Sphere(s.sample(rng)),
        }
    }

    fn query(&self, s: &Sample) -> Option<Query> {
        match (self, s) {
            (Stratum::Torus(st), Sample::Torus(s)) => Some(Query::Torus(st.query(s))),
            (Stratum::Sphere(st), Sample::Sphere(s)) => st.try_query(s).map(Query::Sphere),
            _ => None,
        }
    }

    fn param_dim(&self, s: &Sample) -> usize {
        match s {
            Sample::Torus(t) => t.params.len(),
            Sample::Sphere(t) => t.p.len() + t.g.len(),
        }
    }

    fn perturb(&self, s: &Sample, dir: &[f64], eps: f64) -> Sample {
        match (self, s) {
            (Stratum::Torus(st), Sample::Torus(s)) => Sample::Torus(st.perturb(s, dir, eps)),
            (Stratum::Sphere(st), Sample::Sphere(s)) => Sample::Sphere(st.perturb(s, dir, eps)),
            _ => s.clone(),
        }
    }
}

/// Uniform queries followed by every stratified generator, each tagged with
/// the label it must receive.
fn labelled_queries(
    planner: &Planner,
    cfg: &SuiteConfig,
    rng: &mut SeededRng,
    mut coords: impl FnMut(&[f64]),
) -> Vec<(String, String, Query)> {
    let mut out = Vec::with_capacity(cfg.samples + 8 * cfg.per_stratum());
    for _ in 0..cfg.samples {
        let (q, c) = planner.uniform(rng);
        coords(&c);
        out.push(("uniform".into(), planner.generic_label(), q));
    }
    for st in planner.strata() {
        for _ in 0..cfg.per_stratum() {
            let q = st.query(&st.sample(rng)).expect("generated in stratum");
            out.push((st.name(), st.name(), q));
        }
    }
    out
}

fn planner_or_report(suite: Suite, cfg: &SuiteConfig) -> Result<Planner, Box<Report>> {
    Planner::for_space(cfg.space).map_err(|e| {
        let mut r = Report::new(suite, cfg);
        r.fail("configuration", e, ());
        Box::new(r.finish())
    })
}

/// Why a query's label is wrong, if it is.
fn label_problem(label: &str, expected: &str, members: &[String]) -> Option<String> {
    if members.len() != 1 {
        return Some(format!("{} labels hold: {members:?}", members.len()));
    }
    if members[0] != label {
        return Some(format!(
            "classifier says {label}, predicates say {}",
            members[0]
        ));
    }
    (label != expected).then(|| format!("expected {expected}, got {label}"))
}

fn wrong_label(label: &str) -> String {
    if label == "D1" || label == "D0" {
        "D4".into()
    } else {
        "D1".into()
    }
}

/// Every sampled query gets exactly one label, agreeing with the membership
/// predicates and with the stratum it was generated in.
pub fn check_partition(cfg: &SuiteConfig) -> Report {
    let planner = match planner_or_report(Suite::Partition, cfg) {
        Ok(p) => p,
        Err(r) => return *r,
    };
    let mut report = Report::new(Suite::Partition, cfg);
    let mut rng = seeded(cfg.seed);
    let mut sums: Vec<f64> = Vec::new();
    let queries = labelled_queries(&planner, cfg, &mut rng, |c| {
        sums.resize(c.len(), 0.0);
        sums.iter_mut().zip(c).for_each(|(s, x)| *s += x);
    });
    let mut injected = !cfg.inject_fault;
    for (source, expected, q) in &queries {
        let label = match planner.label(q, cfg.tol) {
            Ok(l) => l,
            Err(e) => {
                report.check("single_label", None).outcome(false);
                report.fail("single_label", e, q);
                continue;
            }
        };
        let label = if !injected && source != "uniform" {
            injected = true;
            wrong_label(&label)
        } else {
            label
        };
        report.count(format!("{source}:{label}"));
        let members = planner.memberships(q, cfg.tol);
        let problem = label_problem(&label, expected, &members);
        report
            .check("single_label", None)
            .outcome(members.len() == 1);
        report
            .check("predicate_agreement", None)
            .outcome(members.first() == Some(&label));
        report
            .check("expected_label", None)
            .outcome(&label == expected);
        if let Some(p) = problem {
            report.fail("partition", format!("{source}: {p}"), q);
        }
    }

    // angles are uniform on (−π, π], sphere coordinates have unit-bounded spread
    let scale = if matches!(planner, Planner::Torus) {
        PI
    } else {
        1.0
    };
    let bound = 4.0 * scale / (cfg.samples.max(1) as f64).sqrt();
    let c = report.check("uniform_means", Some(bound));
    for s in &sums {
        c.error((s / cfg.samples.max(1) as f64).abs());
    }

    let (_, expected, q) = queries.last().expect("strata are nonempty");
    let label = planner.label(q, cfg.tol).unwrap_or_default();
    let detected = label_problem(
        &wrong_label(&label),
        expected,
        &planner.memberships(q, cfg.tol),
    )
    .is_some();
    report.negative_control("relabel one stratified query", detected);
    report.finish()
}

/// Sections start at x (≤ 1e−12) and end in the target orbit (≤ 1e−9).
pub fn check_sections(cfg: &SuiteConfig) -> Report {
    let planner = match planner_or_report(Suite::Sections, cfg) {
        Ok(p) => p,
        Err(r) => return *r,
    };
    let mut report = Report::new(Suite::Sections, cfg);
    let mut rng = seeded(cfg.seed);
    let queries = labelled_queries(&planner, cfg, &mut rng, |_| {});
    let (mut max_s, mut max_e) = (0.0f64, 0.0f64);
    for (source, _, q) in &queries {
        let path = match planner.section(q, cfg.tol) {
            Ok(p) if cfg.inject_fault => corrupt(&p),
            Ok(p) => p,
            Err(e) => {
                report.check("section_exists", None).outcome(false);
                report.fail("section_exists", e, q);
                continue;
            }
        };
        report.check("section_exists", None).outcome(true);
        report.count(source.clone());
        let (s, e) = q.errors(&path);
        max_s = max_s.max(s);
        max_e = max_e.max(e);
        if !report.check("start_point", Some(ARITHMETIC_TOL)).error(s) {
            report.fail("start_point", format!("{source}: start error {s:e}"), q);
        }
        if !report
            .check("endpoint_orbit", Some(MEMBERSHIP_TOL))
            .error(e)
        {
            report.fail(
                "endpoint_orbit",
                format!("{source}: endpoint error {e:e}"),
                q,
            );
        }
    }
    report.max_start_error = Some(max_s);
    report.max_endpoint_error = Some(max_e);

    let (_, _, q) = &queries[0];
    let detected = planner
        .section(q, cfg.tol)
        .map(|p| q.errors(&corrupt(&p)).1 > MEMBERSHIP_TOL)
        .unwrap_or(false);
    report.negative_control("rotation angle +0.1 on one section", detected);
    report.finish()
}

fn unit_direction(rng: &mut SeededRng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let r = norm(&v);
        if r > 1e-3 {
            return v.into_iter().map(|c| c / r).collect();
        }
    }
}

/// A pair of in-stratum queries at distance about δ, with their sections.
struct Pair {
    distance: f64,
    sup: f64,
}

fn probe_pair(
    planner: &Planner,
    st: &Stratum,
    base: &Sample,
    dir: &[f64],
    delta: f64,
    tol: f64,
    corrupt_second: bool,
) -> Option<Pair> {
    let q0 = st.query(base)?;
    let p0 = planner.section(&q0, tol).ok()?;
    let label = planner.label(&q0, tol).ok()?;
    // secant steps bring the query distance to δ; directions along which
    // the query barely moves keep a step of order δ
    let mut eps = delta;
    let mut q1 = st.query(&st.perturb(base, dir, eps))?;
    for _ in 0..SECANT_STEPS {
        let d = q0.distance(&q1);
        if d <= 0.0 || (d / delta - 1.0).abs() <= 0.05 {
            break;
        }
        eps = (eps * delta / d).clamp(delta / MAX_RESCALE, delta * MAX_RESCALE);
        q1 = st.query(&st.perturb(base, dir, eps))?;
    }
    if planner.label(&q1, tol).ok()? != label {
        return None;
    }
    let p1 = planner.section(&q1, tol).ok()?;
    let p1 = if corrupt_second { corrupt(&p1) } else { p1 };
    Some(Pair {
        distance: q0.distance(&q1),
        sup: sup_distance(&p0, &p1, SUP_SAMPLES),
    })
}

/// Within each stratum, sections of queries δ apart stay within C·δ of each
/// other and shrink with δ.
pub fn probe_continuity(cfg: &SuiteConfig) -> Report {
    let planner = match planner_or_report(Suite::Continuity, cfg) {
        Ok(p) => p,
        Err(r) => return *r,
    };
    let mut report = Report::new(Suite::Continuity, cfg);
    let mut rng = seeded(cfg.seed);
    let c = planner.lipschitz();
    let mut first_base = None;
    for st in planner.strata() {
        let bases: Vec<(Sample, Vec<f64>)> = (0..cfg.samples.max(1))
            .map(|_| {
                let s = st.sample(&mut rng);
                let d = unit_direction(&mut rng, st.param_dim(&s));
                (s, d)
            })
            .collect();
        if first_base.is_none() {
            first_base = Some((st, bases[0].clone()));
        }
        let mut sups = Vec::new();
        for delta in DELTAS {
            let (mut pairs, mut max_d, mut max_sup) = (0u64, 0.0f64, 0.0f64);
            for (base, dir) in &bases {
                match probe_pair(&planner, &st, base, dir, delta, cfg.tol, cfg.inject_fault) {
                    Some(p) => {
                        pairs += 1;
                        max_d = max_d.max(p.distance);
                        max_sup = max_sup.max(p.sup);
                    }
                    None => report.count(format!("{}:left_stratum", st.name())),
                }
            }
            let within = max_sup <= c * delta;
            report
                .check(&format!("{}:bound", st.name()), None)
                .outcome(within);
            if !within {
                report.fail(
                    "bound",
                    format!(
                        "{} at δ={delta:e}: sup-distance {max_sup:e} > {c}·δ",
                        st.name()
                    ),
                    (),
                );
            }
            report.continuity.push(ContinuityRow {
                stratum: st.name(),
                delta,
                pairs,
                max_query_distance: max_d,
                max_sup_distance: max_sup,
                ratio: max_sup / delta,
                bound: Some(c),
                within_bound: within,
            });
            sups.push(max_sup);
        }
        for w in sups.windows(2) {
            let ok = w[1] <= DECAY * w[0];
            report
                .check(&format!("{}:decay", st.name()), None)
                .outcome(ok);
            if !ok {
                report.fail(
                    "decay",
                    format!("{}: {:e} then {:e}", st.name(), w[0], w[1]),
                    (),
                );
            }
        }
    }
    if matches!(planner, Planner::Torus) {
        cross_boundary_rows(&mut report, &mut rng, cfg);
    }

    let (st, (base, dir)) = first_base.expect("strata are nonempty");
    let detected = probe_pair(&planner, &st, &base, &dir, DELTAS[0], cfg.tol, true)
        .is_some_and(|p| p.sup > c * DELTAS[0]);
    report.negative_control("rotation angle +0.1 on the perturbed section", detected);
    report.finish()
}

/// Pairs straddling the D1/D2 boundary: y on C_x against y pushed off C_x
/// by δ. Recorded only; sections need not agree across domains.
fn cross_boundary_rows(report: &mut Report, rng: &mut SeededRng, cfg: &SuiteConfig) {
    let st = TorusStratum::D2OnCx;
    let bases: Vec<TorusSample> = (0..cfg.samples.max(1)).map(|_| st.sample(rng)).collect();
    for delta in DELTAS {
        let (mut pairs, mut max_d, mut max_sup) = (0u64, 0.0f64, 0.0f64);
        for s in &bases {
            let q0 = st.query(s);
            let y = q0.z_lifts()[if s.flip { 1 } else { 0 }];
            let q1 = TorusQuery::new(q0.x, y.rotate(crate::geom::Coord::Second, delta));
            let (p0, p1) = (torus_planner::section(&q0), torus_planner::section(&q1));
            pairs += 1;
            max_d = max_d.max(torus_strata::query_distance(&q0, &q1));
            max_sup = max_sup.max(sup_distance(&p0, &p1, SUP_SAMPLES));
        }
        report.continuity.push(ContinuityRow {
            stratum: "D1|D2 boundary".into(),
            delta,
            pairs,
            max_query_distance: max_d,
            max_sup_distance: max_sup,
            ratio: max_sup / delta,
            bound: None,
            within_bound: false,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(space: SpaceSpec, samples: usize) -> SuiteConfig {
        SuiteConfig::new(space, samples, 3)
    }

    #[test]
    fn torus_suites_pass_small() {
        for r in [
            check_partition(&cfg(SpaceSpec::Torus, 500)),
            check_sections(&cfg(SpaceSpec::Torus, 500)),
            probe_continuity(&cfg(SpaceSpec::Torus, 10)),
        ] {
            assert!(r.passed, "{}", serde_json::to_string_pretty(&r).unwrap());
        }
    }

    #[test]
    fn sphere_suites_pass_small() {
        for n in [1, 2, 3, 7] {
            for r in [
                check_partition(&cfg(SpaceSpec::Sphere(n), 300)),
                check_sections(&cfg(SpaceSpec::Sphere(n), 300)),
                probe_continuity(&cfg(SpaceSpec::Sphere(n), 10)),
            ] {
                assert!(r.passed, "{}", serde_json::to_string_pretty(&r).unwrap());
            }
        }
    }

    #[test]
    fn injected_faults_fail() {
        for suite in [check_partition, check_sections, probe_continuity] {
            let mut c = cfg(SpaceSpec::Torus, 50);
            c.inject_fault = true;
            assert!(!suite(&c).passed);
        }
    }

    #[test]
    fn invalid_sphere_dimension_is_reported() {
        let r = check_sections(&cfg(SpaceSpec::Sphere(0), 10));
        assert!(!r.passed && r.failure_count == 1);
    }

    #[test]
    fn cross_boundary_jump_is_recorded() {
        let r = probe_continuity(&cfg(SpaceSpec::Torus, 5));
        let row = r
            .continuity
            .iter()
            .find(|r| r.stratum.contains("boundary"))
            .unwrap();
        assert!(row.max_sup_distance > 0.1);
        assert!(r.passed);
    }
}
