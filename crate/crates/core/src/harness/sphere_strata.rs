//! Sphere strata: for each frame index i, queries whose line is orthogonal
//! to v₀(p), …, v_{i−1}(p) and clear of v_i(p).

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::geom::sphere::{dot, norm};
use crate::geom::SpherePoint;
use crate::sphere_planner::{Frame, FrameKind, SphereQuery};

/// Lower bound on |⟨q, v_i(p)⟩| for generated queries.
pub const MARGIN: f64 = 0.1;

#[derive(Clone, Debug, PartialEq)]
pub struct SphereSample {
    pub p: Vec<f64>,
    pub g: Vec<f64>,
    pub flip: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct SphereStratum {
    pub frame: Frame,
    pub index: usize,
}

fn gaussian(rng: &mut (impl Rng + ?Sized), len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

/// Remove from `g` its components along the span of `vs`.
fn project_out(g: &[f64], vs: &[Vec<f64>]) -> Vec<f64> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for b in &basis {
            let c = dot(&w, b);
            w.iter_mut().zip(b).for_each(|(wi, bi)| *wi -= c * bi);
        }
        let r = norm(&w);
        if r > 1e-12 {
            basis.push(w.into_iter().map(|c| c / r).collect());
        }
    }
    let mut out = g.to_vec();
    for b in &basis {
        let c = dot(&out, b);
        out.iter_mut().zip(b).for_each(|(o, bi)| *o -= c * bi);
    }
    out
}

impl SphereStratum {
    pub fn all(frame: Frame) -> Vec<SphereStratum> {
        (0..=frame.k)
            .map(|index| SphereStratum { frame, index })
            .collect()
    }

    pub fn name(&self) -> String {
        format!("D{}", self.index)
    }

    /// With the canonical frame the last index needs p ⊥ e_{n+1}: otherwise
    /// p, e₁, …, e_n already span.
    fn constrained_p(&self) -> bool {
        self.frame.kind == FrameKind::Canonical && self.index == self.frame.k
    }

    fn start(&self, p: &[f64]) -> Option<SpherePoint> {
        let mut p = p.to_vec();
        if self.constrained_p() {
            *p.last_mut().expect("nonempty") = 0.0;
        }
        SpherePoint::new(p).ok()
    }

    /// The line spanned by the projection of g, or `None` when it falls
    /// inside the margin or g nearly lies in the excluded span.
    fn line(&self, p: &SpherePoint, g: &[f64]) -> Option<SpherePoint> {
        let f = &self.frame;
        let vs: Vec<Vec<f64>> = (0..self.index).map(|j| f.vector(p, j)).collect();
        let r = project_out(g, &vs);
        if norm(&r) <= MARGIN * norm(g) {
            return None;
        }
        let q = SpherePoint::new(r).ok()?;
        (dot(q.coords(), &f.vector(p, self.index)).abs() > MARGIN).then_some(q)
    }

    pub fn sample(&self, rng: &mut (impl Rng + ?Sized)) -> SphereSample {
        let d = self.frame.n + 1;
        loop {
            let s = SphereSample {
                p: gaussian(rng, d),
                g: gaussian(rng, d),
                flip: rng.random_bool(0.5),
            };
            if self.try_query(&s).is_some() {
                return s;
            }
        }
    }

    pub fn try_query(&self, s: &SphereSample) -> Option<SphereQuery> {
        let p = self.start(&s.p)?;
        let l = self.line(&p, &s.g)?;
        Some(SphereQuery::new(p, if s.flip { l.antipode() } else { l }))
    }

    pub fn query(&self, s: &SphereSample) -> SphereQuery {
        self.try_query(s).expect("sample lies in its stratum")
    }

    /// Move p and g by eps along dir (of length 2(n+1)).
    pub fn perturb(&self, s: &SphereSample, dir: &[f64], eps: f64) -> SphereSample {
        let d = s.p.len();
        let scale = norm(&s.p);
        let p =
            s.p.iter()
                .zip(&dir[..d])
                .map(|(a, u)| a + eps * scale * u)
                .collect();
        let g =
            s.g.iter()
                .zip(&dir[d..])
                .map(|(a, u)| a + eps * u)
                .collect();
        SphereSample { p, g, flip: s.flip }
    }
}

/// Distance between queries in Sⁿ × Pⁿ.
pub fn query_distance(q: &SphereQuery, r: &SphereQuery) -> f64 {
    q.p.distance(&r.p) + q.l.distance(&r.l)
}

/// Frame inner products ⟨q, v_j(p)⟩ computed as one matrix-vector product.
pub fn frame_products(f: &Frame, q: &SphereQuery) -> Vec<f64> {
    let m: DMatrix<f64> = f.matrix(&q.p);
    let l = DVector::from_column_slice(q.l_lift().coords());
    (m * l).iter().copied().collect()
}

/// All indices i whose zero pattern matches at tolerance `tol`.
pub fn memberships(f: &Frame, q: &SphereQuery, tol: f64) -> Vec<usize> {
    let s = frame_products(f, q);
    (0..s.len())
        .filter(|&i| s[..i].iter().all(|v| v.abs() <= tol) && s[i].abs() > tol)
        .collect()
}
