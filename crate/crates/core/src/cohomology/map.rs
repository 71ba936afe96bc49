use std::collections::BTreeMap;

use serde::Serialize;

use super::{
    bit, bits, ground_field, klein_ring, tensor, torus_ring, CohomologyError, Elem, GradedAlgebra,
};

/// A degree-preserving ring map, stored by the images of all basis elements.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    name: String,
    source: GradedAlgebra,
    target: GradedAlgebra,
    images: Vec<Elem>,
}

impl AlgebraMap {
    /// Extend generator images along the basis words and check that the
    /// result is multiplicative on all basis pairs.
    pub fn from_generators(
        name: &str,
        source: GradedAlgebra,
        target: GradedAlgebra,
        generator_images: &[(&str, Elem)],
    ) -> Result<Self, CohomologyError> {
        let mut gen = vec![None; source.dim()];
        for (label, img) in generator_images {
            let i = source
                .index_of(label)
                .ok_or_else(|| CohomologyError::Table(format!("no generator {label}")))?;
            if *img != 0 && target.homogeneous_degree(*img) != Some(source.degree(i)) {
                return Err(CohomologyError::DegreeMismatch(label.to_string()));
            }
            gen[i] = Some(*img);
        }
        let images = (0..source.dim())
            .map(|i| {
                source.word(i).iter().try_fold(target.unit(), |acc, &g| {
                    gen[g].map(|img| target.mul(acc, img)).ok_or_else(|| {
                        CohomologyError::Table(format!("missing image of {}", source.label(g)))
                    })
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = Self {
            name: name.into(),
            source,
            target,
            images,
        };
        m.check_multiplicative()?;
        Ok(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &GradedAlgebra {
        &self.source
    }

    pub fn target(&self) -> &GradedAlgebra {
        &self.target
    }

    pub fn apply(&self, a: Elem) -> Elem {
        bits(a).fold(0, |acc, i| acc ^ self.images[i])
    }

    fn check_multiplicative(&self) -> Result<(), CohomologyError> {
        let s = &self.source;
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = self.apply(s.mul(bit(i), bit(j)));
                let rhs = self.target.mul(self.images[i], self.images[j]);
                if lhs != rhs {
                    return Err(CohomologyError::RelationViolated(
                        s.label(i).into(),
                        s.label(j).into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// A basis of the kernel in degree d, by GF(2) elimination.
    pub fn kernel(&self, d: usize) -> Vec<Elem> {
        // (reduced image, source combination) with distinct leading bits
        let mut pivots: Vec<(Elem, Elem)> = Vec::new();
        let mut kernel = Vec::new();
        for i in self.source.basis_in_degree(d) {
            let (mut v, mut c) = (self.images[i], bit(i));
            for (pv, pc) in &pivots {
                if v & lead(*pv) != 0 {
                    v ^= pv;
                    c ^= pc;
                }
            }
            if v == 0 {
                kernel.push(c);
            } else {
                pivots.push((v, c));
            }
        }
        kernel
    }

    pub fn kernel_dims(&self) -> Vec<usize> {
        (0..=self.source.top_degree())
            .map(|d| self.kernel(d).len())
            .collect()
    }
}

fn lead(v: Elem) -> Elem {
    1 << (63 - v.leading_zeros())
}

/// π*: H*(K) → H*(T), κ, λ ↦ α + β.
pub fn pi_star() -> AlgebraMap {
    let (k, t) = (klein_ring(), torus_ring());
    let ab = t.sum(&["α", "β"]);
    AlgebraMap::from_generators("pi-star", k, t, &[("κ", ab), ("λ", ab)]).expect("valid map")
}

/// (1, π)*: H*(T) ⊗ H*(K) → H*(T), u ⊗ v ↦ u · π*(v).
pub fn one_pi_star() -> AlgebraMap {
    let t = torus_ring();
    let tk = tensor(&t, &klein_ring());
    let ab = t.sum(&["α", "β"]);
    let gens = [
        ("α⊗1", t.elem("α")),
        ("β⊗1", t.elem("β")),
        ("1⊗κ", ab),
        ("1⊗λ", ab),
    ];
    AlgebraMap::from_generators("one-pi-star", tk, t, &gens).expect("valid map")
}

/// H*(T) → 𝔽₂, killing all positive-degree classes.
pub fn augmentation() -> AlgebraMap {
    AlgebraMap::from_generators(
        "augmentation",
        torus_ring(),
        ground_field(),
        &[("α", 0), ("β", 0)],
    )
    .expect("valid map")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CupLength {
    pub length: usize,
    pub witness: Vec<Elem>,
    pub product: Elem,
}

/// Largest m ≤ max_m such that some product of m homogeneous
/// positive-degree elements from the given subspaces is nonzero. Each entry
/// of `spans` is a basis of a homogeneous subspace; all nonzero elements of
/// each span are enumerated. Power witnesses x^m are preferred.
pub fn cup_length(alg: &GradedAlgebra, spans: &[Vec<Elem>], max_m: usize) -> CupLength {
    let mut elems: Vec<Elem> = Vec::new();
    for span in spans {
        for mask in 1u64..(1 << span.len()) {
            let e = bits(mask).fold(0, |acc, i| acc ^ span[i]);
            if e != 0 && alg.homogeneous_degree(e).is_some_and(|d| d > 0) {
                elems.push(e);
            }
        }
    }
    elems.sort_unstable();
    elems.dedup();

    // nonzero products reachable with m factors, each with one factor list
    let mut layer: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
    layer.insert(alg.unit(), vec![]);
    let mut best = CupLength {
        length: 0,
        witness: vec![],
        product: alg.unit(),
    };
    for m in 1..=max_m {
        let mut next: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
        for (p, factors) in &layer {
            for &e in &elems {
                let q = alg.mul(*p, e);
                if q != 0 {
                    next.entry(q).or_insert_with(|| {
                        let mut f = factors.clone();
                        f.push(e);
                        f
                    });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        best = match elems.iter().find(|&&e| alg.pow(e, m) != 0) {
            Some(&e) => CupLength {
                length: m,
                witness: vec![e; m],
                product: alg.pow(e, m),
            },
            None => {
                let (p, f) = next.iter().next().expect("nonempty");
                CupLength {
                    length: m,
                    witness: f.clone(),
                    product: *p,
                }
            }
        };
        layer = next;
    }
    best
}

/// Cup-length of the kernel of `m` in positive degrees, up to `max_m`.
pub fn kernel_cup_length(m: &AlgebraMap, max_m: usize) -> CupLength {
    let spans: Vec<Vec<Elem>> = (1..=m.source().top_degree()).map(|d| m.kernel(d)).collect();
    cup_length(m.source(), &spans, max_m)
}
