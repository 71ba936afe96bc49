//! Effectual planner on Sⁿ with the antipodal involution, planning from
//! p ∈ Sⁿ to a line ℓ ∈ Pⁿ.
//!
//! A frame v = (v₀, …, v_k) with v₀(p) = p spans ℝⁿ⁺¹ at every p. Domain i
//! holds the pairs whose line is orthogonal to v₀(p), …, v_{i−1}(p) and not
//! to v_i(p); its section is the shortest geodesic from p to the lift q* of ℓ
//! with ⟨q*, v_i(p)⟩ > 0. The canonical frame (v_i = e_i) gives n + 2
//! domains; on S¹, S³ and S⁷ the complex, quaternion and octonion
//! parallelizations give n + 1.

pub mod algebra;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::path::geodesic_angle;
use crate::geom::path_json::PathDocument;
use crate::geom::sphere::dot;
use crate::geom::{
    GeomError, OrbitPoint, Path, Point, SpherePoint, ARITHMETIC_TOL, MEMBERSHIP_TOL,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SphereError {
    #[error("invalid sphere dimension {0}")]
    InvalidDimension(i64),
    #[error("dimension mismatch: frame is for S^{expected}, point lies on S^{got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("all frame inner products within tolerance of zero")]
    NumericallyDegenerate,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameKind {
    /// v_i = e_i, i = 1..=n+1.
    Canonical,
    /// v₁(p) = p·i on S¹.
    Complex,
    /// v_i(p) = p·u_i, u ∈ {i, j, k}, on S³.
    Quaternion,
    /// v_i(p) = p·e_i on S⁷.
    Octonion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub n: usize,
    /// Highest frame index.
    pub k: usize,
    pub kind: FrameKind,
}

/// The planner frame for Sⁿ: a parallelization for n ∈ {1, 3, 7}, the
/// canonical basis otherwise.
pub fn make_frame(n: i64) -> Result<Frame, SphereError> {
    if n <= 0 {
        return Err(SphereError::InvalidDimension(n));
    }
    let n = n as usize;
    let kind = match n {
        1 => FrameKind::Complex,
        3 => FrameKind::Quaternion,
        7 => FrameKind::Octonion,
        _ => FrameKind::Canonical,
    };
    Ok(Frame::new(n, kind))
}

impl Frame {
    fn new(n: usize, kind: FrameKind) -> Self {
        let k = if kind == FrameKind::Canonical {
            n + 1
        } else {
            n
        };
        Self { n, k, kind }
    }

    /// The canonical-basis frame, available in every dimension.
    pub fn canonical(n: usize) -> Result<Self, SphereError> {
        if n == 0 {
            return Err(SphereError::InvalidDimension(0));
        }
        Ok(Self::new(n, FrameKind::Canonical))
    }

    pub fn is_parallelization(&self) -> bool {
        self.kind != FrameKind::Canonical
    }

    fn check_dim(&self, p: &SpherePoint) -> Result<(), SphereError> {
        if p.dim() != self.n {
            return Err(SphereError::DimensionMismatch {
                expected: self.n,
                got: p.dim(),
            });
        }
        Ok(())
    }

    /// v_i(p) as raw coordinates.
    pub fn vector(&self, p: &SpherePoint, i: usize) -> Vec<f64> {
        assert!(i <= self.k, "frame index {i} out of range");
        if i == 0 {
            return p.coords().to_vec();
        }
        match self.kind {
            FrameKind::Canonical => algebra::unit(self.n + 1, i - 1),
            _ => algebra::multiply(p.coords(), &algebra::unit(self.n + 1, i)),
        }
    }

    /// (v₀(p), …, v_k(p)).
    pub fn vectors(&self, p: &SpherePoint) -> Result<Vec<SpherePoint>, SphereError> {
        self.check_dim(p)?;
        Ok((0..=self.k)
            .map(|i| SpherePoint::from_unit(self.vector(p, i)))
            .collect())
    }

    /// The (k+1) × (n+1) matrix with rows v_i(p).
    pub fn matrix(&self, p: &SpherePoint) -> DMatrix<f64> {
        let rows: Vec<f64> = (0..=self.k).flat_map(|i| self.vector(p, i)).collect();
        DMatrix::from_row_slice(self.k + 1, self.n + 1, &rows)
    }

    /// Number of effectual domains.
    pub fn domain_count(&self) -> usize {
        self.k + 1
    }
}

pub fn domain_count(f: &Frame) -> usize {
    f.domain_count()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SphereQuery {
    pub p: SpherePoint,
    pub l: OrbitPoint,
}

impl SphereQuery {
    /// Query whose line ℓ is given by any of its two unit vectors.
    pub fn new(p: SpherePoint, l_lift: SpherePoint) -> Self {
        Self {
            p,
            l: OrbitPoint::new(l_lift.into()),
        }
    }

    pub fn l_lift(&self) -> &SpherePoint {
        match self.l.representative() {
            Point::Sphere(q) => q,
            Point::Torus(_) => panic!("sphere query with a torus target"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereClassification {
    pub domain: usize,
    pub lift: SpherePoint,
}

/// First index i with ⟨q, v_i(p)⟩ clear of zero; the lift is signed so that
/// this inner product is positive.
pub fn classify_sphere(f: &Frame, q: &SphereQuery) -> Result<SphereClassification, SphereError> {
    classify_sphere_with_tol(f, q, MEMBERSHIP_TOL)
}

pub fn classify_sphere_with_tol(
    f: &Frame,
    q: &SphereQuery,
    tol: f64,
) -> Result<SphereClassification, SphereError> {
    f.check_dim(&q.p)?;
    let l = q.l_lift();
    f.check_dim(l)?;
    for i in 0..=f.k {
        let s = dot(l.coords(), &f.vector(&q.p, i));
        if s.abs() > tol {
            let lift = if s > 0.0 { l.clone() } else { l.antipode() };
            return Ok(SphereClassification { domain: i, lift });
        }
    }
    Err(SphereError::NumericallyDegenerate)
}

/// Shortest geodesic from p to the classified lift.
pub fn section_for(q: &SphereQuery, c: &SphereClassification) -> Result<Path, SphereError> {
    Ok(Path::geodesic(q.p.clone(), c.lift.clone())?)
}

pub fn section_sphere(f: &Frame, q: &SphereQuery) -> Result<Path, SphereError> {
    section_for(q, &classify_sphere(f, q)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpherePlanReport {
    pub space: String,
    pub n: usize,
    pub frame: FrameKind,
    pub domain: usize,
    pub domain_count: usize,
    pub p: Vec<f64>,
    pub l: Vec<f64>,
    pub lift: Vec<f64>,
    /// Angle of the geodesic.
    pub omega: f64,
    pub path: PathDocument,
    pub start_error: f64,
    pub endpoint_error: f64,
    pub start_ok: bool,
    pub endpoint_ok: bool,
}

pub fn plan(f: &Frame, q: &SphereQuery, samples: usize) -> Result<SpherePlanReport, SphereError> {
    plan_with_tol(f, q, samples, MEMBERSHIP_TOL)
}

pub fn plan_with_tol(
    f: &Frame,
    q: &SphereQuery,
    samples: usize,
    tol: f64,
) -> Result<SpherePlanReport, SphereError> {
    let c = classify_sphere_with_tol(f, q, tol)?;
    let path = section_for(q, &c)?;
    let (start, end) = path.endpoints();
    let start_error = start.distance(&q.p.clone().into());
    let endpoint_error = q.l.distance_to_point(&end);
    Ok(SpherePlanReport {
        space: "sphere".into(),
        n: f.n,
        frame: f.kind,
        domain: c.domain,
        domain_count: f.domain_count(),
        p: q.p.coords().to_vec(),
        l: q.l_lift().coords().to_vec(),
        lift: c.lift.coords().to_vec(),
        omega: geodesic_angle(q.p.coords(), c.lift.coords()),
        path: PathDocument::new(path).with_samples(samples),
        start_error,
        endpoint_error,
        start_ok: start_error <= ARITHMETIC_TOL,
        endpoint_ok: endpoint_error <= MEMBERSHIP_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn sp(v: &[f64]) -> SpherePoint {
        SpherePoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn frame_kinds_and_counts() {
        assert!(matches!(
            make_frame(0),
            Err(SphereError::InvalidDimension(0))
        ));
        assert!(matches!(
            make_frame(-3),
            Err(SphereError::InvalidDimension(-3))
        ));
        assert_eq!(domain_count(&make_frame(2).unwrap()), 4);
        assert_eq!(domain_count(&make_frame(3).unwrap()), 4);
        assert_eq!(domain_count(&make_frame(7).unwrap()), 8);
        assert_eq!(domain_count(&make_frame(1).unwrap()), 2);
        assert_eq!(domain_count(&make_frame(4).unwrap()), 6);
    }

    #[test]
    fn canonical_frame_on_s2() {
        let f = make_frame(2).unwrap();
        let p = sp(&[0.3, -0.4, 0.5]);
        let v = f.vectors(&p).unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v[0], p);
        for (i, vi) in v.iter().enumerate().skip(1) {
            assert_eq!(*vi, SpherePoint::basis(2, i - 1));
        }
    }

    #[test]
    fn complex_frame_rotates_by_quarter_turn() {
        let f = make_frame(1).unwrap();
        assert_eq!(f.vector(&sp(&[1.0, 0.0]), 1), vec![0.0, 1.0]);
    }

    #[test]
    fn quaternion_frame_at_one_is_identity() {
        let f = make_frame(3).unwrap();
        let m = f.matrix(&sp(&[1.0, 0.0, 0.0, 0.0]));
        assert_eq!(m, DMatrix::identity(4, 4));
        assert!((m.determinant().abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn classify_examples() {
        let f = make_frame(1).unwrap();
        let q = SphereQuery::new(sp(&[1.0, 0.0]), sp(&[0.0, 1.0]));
        let c = classify_sphere(&f, &q).unwrap();
        assert_eq!(c.domain, 1);
        assert_eq!(c.lift.coords(), &[0.0, 1.0]);

        let p = sp(&[0.6, 0.8]);
        let c = classify_sphere(&f, &SphereQuery::new(p.clone(), p.antipode())).unwrap();
        assert_eq!(c.domain, 0);
        assert_eq!(c.lift, p);

        let f = make_frame(2).unwrap();
        let q = SphereQuery::new(SpherePoint::basis(2, 0), sp(&[0.0, 0.0, -1.0]));
        let c = classify_sphere(&f, &q).unwrap();
        assert_eq!(c.domain, 3);
        assert_eq!(c.lift.coords(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let f = make_frame(2).unwrap();
        let q = SphereQuery::new(sp(&[1.0, 0.0]), sp(&[0.0, 1.0]));
        assert!(matches!(
            classify_sphere(&f, &q),
            Err(SphereError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn quarter_circle_section() {
        let f = make_frame(1).unwrap();
        let g = section_sphere(&f, &SphereQuery::new(sp(&[1.0, 0.0]), sp(&[0.0, 1.0]))).unwrap();
        let m = g.eval(0.5).unwrap().coords();
        assert!((m[0] - FRAC_1_SQRT_2).abs() < 1e-15 && (m[1] - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn self_orbit_gives_constant() {
        let f = make_frame(2).unwrap();
        let p = sp(&[0.1, 0.2, 0.3]);
        let g = section_sphere(&f, &SphereQuery::new(p.clone(), p.antipode())).unwrap();
        assert_eq!(g, Path::Constant(p.into()));
    }

    #[test]
    fn section_stays_in_great_circle_of_endpoints() {
        let f = make_frame(2).unwrap();
        let g = section_sphere(
            &f,
            &SphereQuery::new(SpherePoint::basis(2, 0), SpherePoint::basis(2, 2)),
        )
        .unwrap();
        for i in 0..=20 {
            let c = g.eval(i as f64 / 20.0).unwrap().coords();
            assert_eq!(c[1], 0.0);
        }
    }
}
