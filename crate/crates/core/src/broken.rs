//! Broken paths: k paths α₁, …, α_k joined by group jumps g₁, …, g_{k−1}
//! with α_i(1)·g_i = α_{i+1}(0), together with their evaluation maps,
//! stabilization, the splitting homeomorphism φ and the comparison maps to
//! ordinary paths.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    act_path, concat, concat_all, project, split_half, Coord, FiniteGroup, GeomError, GroupElement,
    OrbitPoint, Path, Point, Space, MEMBERSHIP_TOL,
};
use crate::sampling;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BrokenError {
    #[error("gluing fails at jump {0}")]
    GluingViolation(usize),
    #[error("{paths} paths need {} jumps, got {jumps}", paths.saturating_sub(1))]
    LengthMismatch { paths: usize, jumps: usize },
    #[error("broken path has too few stages")]
    TooShort,
    #[error("broken path has too many stages")]
    TooLong,
    #[error("points are not in the same orbit")]
    NotInOrbit,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// An element of P_k^G(X).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BrokenPath {
    paths: Vec<Path>,
    jumps: Vec<GroupElement>,
}

/// Validate lengths and gluing α_i(1)·g_i = α_{i+1}(0).
pub fn make_broken(paths: Vec<Path>, jumps: Vec<GroupElement>) -> Result<BrokenPath, BrokenError> {
    if paths.is_empty() || jumps.len() + 1 != paths.len() {
        return Err(BrokenError::LengthMismatch {
            paths: paths.len(),
            jumps: jumps.len(),
        });
    }
    for (i, g) in jumps.iter().enumerate() {
        let d = paths[i].end().act(*g).distance(&paths[i + 1].start());
        if d.is_nan() || d > MEMBERSHIP_TOL {
            return Err(BrokenError::GluingViolation(i + 1));
        }
    }
    Ok(BrokenPath { paths, jumps })
}

impl BrokenPath {
    pub fn bare(path: Path) -> Self {
        Self {
            paths: vec![path],
            jumps: vec![],
        }
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn jumps(&self) -> &[GroupElement] {
        &self.jumps
    }

    /// Number of paths k.
    pub fn stages(&self) -> usize {
        self.paths.len()
    }

    pub fn space(&self) -> Space {
        self.paths[0].space()
    }
}

/// ι: append the identity jump and the stationary path at α_k(1).
pub fn iota(bp: &BrokenPath) -> BrokenPath {
    let mut out = bp.clone();
    let end = bp.paths.last().expect("nonempty").end();
    out.jumps.push(GroupElement::identity());
    out.paths.push(Path::Constant(end));
    out
}

/// r: drop the final jump and path.
pub fn retract(bp: &BrokenPath) -> Result<BrokenPath, BrokenError> {
    if bp.stages() < 2 {
        return Err(BrokenError::TooShort);
    }
    let mut out = bp.clone();
    out.paths.pop();
    out.jumps.pop();
    Ok(out)
}

/// f: merge the last two stages into (α_k·g_k) ⋆ α_{k+1}, absorbing g_k
/// into the preceding jump. Needs at least three stages.
pub fn stabilize_f(bp: &BrokenPath) -> Result<BrokenPath, BrokenError> {
    let k = bp.stages();
    if k < 3 {
        return Err(BrokenError::TooShort);
    }
    let g_last = bp.jumps[k - 2];
    let merged = concat(&act_path(g_last, &bp.paths[k - 2]), &bp.paths[k - 1])?;
    let mut paths = bp.paths[..k - 2].to_vec();
    paths.push(merged);
    let mut jumps = bp.jumps[..k - 2].to_vec();
    let prev = jumps.pop().expect("k ≥ 3");
    jumps.push(prev.compose(g_last));
    Ok(BrokenPath { paths, jumps })
}

fn two_stage(bp: &BrokenPath) -> Result<(&Path, GroupElement, &Path), BrokenError> {
    match bp.stages() {
        0 | 1 => Err(BrokenError::TooShort),
        2 => Ok((&bp.paths[0], bp.jumps[0], &bp.paths[1])),
        _ => Err(BrokenError::TooLong),
    }
}

/// φ(α₁, g, α₂) = (α₁ ⋆ (α₂·g⁻¹), g).
pub fn phi(bp: &BrokenPath) -> Result<(Path, GroupElement), BrokenError> {
    let (a, g, b) = two_stage(bp)?;
    Ok((concat(a, &act_path(g.inverse(), b))?, g))
}

/// φ⁻¹(α, g) = (α′, g, α″·g) with α′, α″ the two halves of α.
pub fn phi_inv(alpha: &Path, g: GroupElement) -> BrokenPath {
    let (first, second) = split_half(alpha);
    BrokenPath {
        paths: vec![first, act_path(g, &second)],
        jumps: vec![g],
    }
}

/// e_k = (α₁(0), α_k(1)).
pub fn eval_ek(bp: &BrokenPath) -> (Point, Point) {
    (
        bp.paths[0].start(),
        bp.paths.last().expect("nonempty").end(),
    )
}

/// ε(α, g) = (α(0), α(1)·g).
pub fn twisted_eval(alpha: &Path, g: GroupElement) -> (Point, Point) {
    (alpha.start(), alpha.end().act(g))
}

/// Δ_G(x, g) = (x, x·g).
pub fn saturated_diagonal(x: &Point, g: GroupElement) -> (Point, Point) {
    (x.clone(), x.act(g))
}

/// The unique g with x·g = y.
pub fn translation_tau(x: &Point, y: &Point) -> Result<GroupElement, BrokenError> {
    GroupElement::elements()
        .into_iter()
        .find(|g| x.act(*g).distance(y) <= MEMBERSHIP_TOL)
        .ok_or(BrokenError::NotInOrbit)
}

/// An element of P^{G,k}(X): paths glued only up to orbits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrdinaryBrokenPath {
    paths: Vec<Path>,
}

impl OrdinaryBrokenPath {
    pub fn new(paths: Vec<Path>) -> Result<Self, BrokenError> {
        if paths.is_empty() {
            return Err(BrokenError::TooShort);
        }
        for i in 1..paths.len() {
            if !project(&paths[i - 1].end()).approx_eq(&project(&paths[i].start()), MEMBERSHIP_TOL)
            {
                return Err(BrokenError::GluingViolation(i));
            }
        }
        Ok(Self { paths })
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// ε_k = (α₁(0), α_k(1)).
    pub fn eval(&self) -> (Point, Point) {
        (
            self.paths[0].start(),
            self.paths.last().expect("nonempty").end(),
        )
    }
}

/// P: forget the group coordinates.
pub fn forget_jumps(bp: &BrokenPath) -> OrdinaryBrokenPath {
    OrdinaryBrokenPath {
        paths: bp.paths.clone(),
    }
}

/// q(α, g, β) = α ⋆ (β·g⁻¹).
pub fn q_map(bp: &BrokenPath) -> Result<Path, BrokenError> {
    phi(bp).map(|(p, _)| p)
}

/// ϵ(γ) = (γ(0), [γ(1)]).
pub fn effectual_eval(gamma: &Path) -> (Point, OrbitPoint) {
    (gamma.start(), project(&gamma.end()))
}

/// (1 × π)(x, y) = (x, [y]).
pub fn one_times_pi(pair: &(Point, Point)) -> (Point, OrbitPoint) {
    (pair.0.clone(), project(&pair.1))
}

/// The path Pπ(γ) = π ∘ γ in the orbit space.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedPath(pub Path);

impl ProjectedPath {
    pub fn eval(&self, t: f64) -> Result<OrbitPoint, GeomError> {
        self.0.eval(t).map(|p| project(&p))
    }

    /// e₀₁ = ([γ(0)], [γ(1)]).
    pub fn endpoints(&self) -> (OrbitPoint, OrbitPoint) {
        (project(&self.0.start()), project(&self.0.end()))
    }
}

/// A random path of 1–3 segments starting at `start`: rotations on the
/// torus, geodesics on the sphere.
pub fn random_path<R: Rng + ?Sized>(rng: &mut R, start: &Point) -> Path {
    let segments = rng.random_range(1..=3);
    let mut parts: Vec<Path> = Vec::with_capacity(segments);
    let mut at = start.clone();
    for _ in 0..segments {
        let leg = match &at {
            Point::Torus(x) => {
                let coord = if rng.random_bool(0.5) {
                    Coord::First
                } else {
                    Coord::Second
                };
                Path::rotate(coord, sampling::angle(rng), *x)
            }
            Point::Sphere(p) => loop {
                let q = sampling::sphere_point(rng, p.dim());
                if let Ok(g) = Path::geodesic(p.clone(), q) {
                    break g;
                }
            },
        };
        at = leg.end();
        parts.push(leg);
    }
    concat_all(&parts).expect("segments are glued by construction")
}

/// A random broken path with `stages` paths and uniform jumps; each path
/// starts at the translate of the previous end.
pub fn random_broken<R: Rng + ?Sized>(rng: &mut R, start: &Point, stages: usize) -> BrokenPath {
    assert!(stages >= 1);
    let mut paths = vec![random_path(rng, start)];
    let mut jumps = Vec::with_capacity(stages - 1);
    for _ in 1..stages {
        let g = sampling::group_element(rng);
        let next = paths.last().expect("nonempty").end().act(g);
        jumps.push(g);
        paths.push(random_path(rng, &next));
    }
    BrokenPath { paths, jumps }
}

/// A random start point in the given space (n is the sphere dimension).
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, space: Space, n: usize) -> Point {
    match space {
        Space::Torus => sampling::torus_point(rng).into(),
        Space::Sphere => sampling::sphere_point(rng, n).into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::path::uniform_times;
    use crate::geom::{SpherePoint, TorusPoint};
    use crate::sampling::seeded;

    fn x0() -> TorusPoint {
        TorusPoint::from_angles(0.3, -1.1)
    }

    fn alpha() -> Path {
        Path::rotate(Coord::First, 0.7, x0())
    }

    #[test]
    fn make_broken_examples() {
        assert!(make_broken(vec![alpha()], vec![]).is_ok());
        let b = Path::rotate(Coord::Second, -0.4, x0().rotate(Coord::First, 0.7).sigma());
        assert!(make_broken(vec![alpha(), b.clone()], vec![GroupElement::Sigma]).is_ok());
        assert_eq!(
            make_broken(vec![alpha(), b], vec![GroupElement::Identity]),
            Err(BrokenError::GluingViolation(1))
        );
        assert!(matches!(
            make_broken(vec![alpha()], vec![GroupElement::Sigma]),
            Err(BrokenError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn iota_and_retract() {
        let bp = BrokenPath::bare(alpha());
        let i = iota(&bp);
        assert_eq!(i.paths()[1], Path::Constant(alpha().end()));
        assert_eq!(eval_ek(&i), eval_ek(&bp));
        assert_eq!(retract(&i).unwrap(), bp);
        assert_eq!(retract(&bp), Err(BrokenError::TooShort));
        assert_eq!(retract(&i).unwrap().paths(), &[alpha()]);
    }

    #[test]
    fn stabilize_with_identity_jump() {
        let mut rng = seeded(5);
        let start: Point = x0().into();
        let bp = random_broken(&mut rng, &start, 2);
        let tail = random_path(&mut rng, &bp.paths()[1].end());
        let mut paths = bp.paths().to_vec();
        paths.push(tail.clone());
        let three = make_broken(paths, vec![bp.jumps()[0], GroupElement::Identity]).unwrap();
        let f = stabilize_f(&three).unwrap();
        assert_eq!(f.jumps(), &[bp.jumps()[0]]);
        assert_eq!(f.paths()[1], concat(&bp.paths()[1], &tail).unwrap());
        assert_eq!(eval_ek(&f), eval_ek(&three));
        assert_eq!(stabilize_f(&bp), Err(BrokenError::TooShort));
    }

    #[test]
    fn phi_with_identity_jump_concatenates() {
        let b = Path::rotate(
            Coord::Second,
            0.5,
            alpha().end().as_torus().copied().unwrap(),
        );
        let bp = make_broken(vec![alpha(), b.clone()], vec![GroupElement::Identity]).unwrap();
        let (p, g) = phi(&bp).unwrap();
        assert_eq!(g, GroupElement::Identity);
        assert_eq!(p, concat(&alpha(), &b).unwrap());
        assert_eq!(phi(&BrokenPath::bare(alpha())), Err(BrokenError::TooShort));
    }

    #[test]
    fn phi_inv_of_constant() {
        let x: Point = x0().into();
        let bp = phi_inv(&Path::Constant(x.clone()), GroupElement::Sigma);
        assert_eq!(
            bp.paths(),
            &[Path::Constant(x.clone()), Path::Constant(x.sigma())]
        );
        assert_eq!(bp.jumps(), &[GroupElement::Sigma]);
    }

    #[test]
    fn phi_round_trips_exactly() {
        let mut rng = seeded(11);
        for space in [Space::Torus, Space::Sphere] {
            for _ in 0..50 {
                let start = random_point(&mut rng, space, 3);
                let bp = random_broken(&mut rng, &start, 2);
                let (p, g) = phi(&bp).unwrap();
                let back = phi_inv(&p, g);
                assert_eq!(back.jumps(), bp.jumps());
                for t in uniform_times(100) {
                    for (a, b) in back.paths().iter().zip(bp.paths()) {
                        assert_eq!(a.eval(t).unwrap(), b.eval(t).unwrap());
                    }
                }
                let (p2, g2) = phi(&phi_inv(&p, g)).unwrap();
                assert_eq!(g2, g);
                for t in uniform_times(100) {
                    assert_eq!(p2.eval(t).unwrap(), p.eval(t).unwrap());
                }
            }
        }
    }

    #[test]
    fn evaluations() {
        let x: Point = x0().into();
        let c = Path::Constant(x.clone());
        assert_eq!(
            twisted_eval(&c, GroupElement::Sigma),
            (x.clone(), x.sigma())
        );
        assert_eq!(
            twisted_eval(&alpha(), GroupElement::Identity),
            alpha().endpoints()
        );
        assert_eq!(
            saturated_diagonal(&x, GroupElement::Identity),
            (x.clone(), x.clone())
        );
        assert_eq!(
            twisted_eval(&c, GroupElement::Sigma),
            saturated_diagonal(&x, GroupElement::Sigma)
        );
        let (s, z) = effectual_eval(&c);
        assert_eq!(s, x);
        assert!(z.contains(&x, 0.0));
    }

    #[test]
    fn tau_examples() {
        let x: Point = SpherePoint::new(vec![0.2, 0.3, 0.4]).unwrap().into();
        assert_eq!(translation_tau(&x, &x), Ok(GroupElement::Identity));
        assert_eq!(translation_tau(&x, &x.sigma()), Ok(GroupElement::Sigma));
        let y: Point = SpherePoint::basis(2, 0).into();
        assert_eq!(translation_tau(&x, &y), Err(BrokenError::NotInOrbit));
    }

    #[test]
    fn forget_jumps_keeps_endpoints() {
        let mut rng = seeded(2);
        let bp = random_broken(&mut rng, &x0().into(), 4);
        let o = forget_jumps(&bp);
        assert_eq!(o.eval(), eval_ek(&bp));
        assert!(OrdinaryBrokenPath::new(o.paths().to_vec()).is_ok());
        assert_eq!(forget_jumps(&BrokenPath::bare(alpha())).paths(), &[alpha()]);
    }

    #[test]
    fn generator_respects_gluing() {
        let mut rng = seeded(3);
        for stages in 1..=8 {
            let start = random_point(&mut rng, Space::Sphere, 3);
            let bp = random_broken(&mut rng, &start, stages);
            let again = make_broken(bp.paths().to_vec(), bp.jumps().to_vec()).unwrap();
            assert_eq!(again, bp);
        }
    }
}
