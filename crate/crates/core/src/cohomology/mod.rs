//! Finite graded commutative algebras over GF(2).
//!
//! Elements are bit-vectors over the basis, packed into a `u64`. Each basis
//! element records a word in the generators; maps are specified by generator
//! images and extended multiplicatively along these words.

mod map;

pub use map::{
    augmentation, cup_length, kernel_cup_length, one_pi_star, pi_star, AlgebraMap, CupLength,
};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CohomologyError {
    #[error("generator images violate a relation: f({0}·{1}) ≠ f({0})·f({1})")]
    RelationViolated(String, String),
    #[error("image of {0} is not homogeneous of the right degree")]
    DegreeMismatch(String),
    #[error("algebra of dimension {0} exceeds 64")]
    TooLarge(usize),
    #[error("{0}")]
    Table(String),
}

/// An element as a set of basis indices.
pub type Elem = u64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedAlgebra {
    name: String,
    labels: Vec<String>,
    degrees: Vec<usize>,
    /// Basis element as a product of generator basis indices; empty for 1.
    words: Vec<Vec<usize>>,
    /// `table[i][j] = e_i · e_j`.
    table: Vec<Vec<Elem>>,
}

pub fn bit(i: usize) -> Elem {
    1 << i
}

fn bits(e: Elem) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| e >> i & 1 == 1)
}

impl GradedAlgebra {
    /// Build from basis data; the table is checked before returning.
    pub fn new(
        name: &str,
        labels: Vec<String>,
        degrees: Vec<usize>,
        words: Vec<Vec<usize>>,
        table: Vec<Vec<Elem>>,
    ) -> Result<Self, CohomologyError> {
        let n = labels.len();
        if n > 64 {
            return Err(CohomologyError::TooLarge(n));
        }
        if degrees.len() != n
            || words.len() != n
            || table.len() != n
            || table.iter().any(|r| r.len() != n)
        {
            return Err(CohomologyError::Table("inconsistent basis data".into()));
        }
        let a = Self {
            name: name.into(),
            labels,
            degrees,
            words,
            table,
        };
        a.check()?;
        Ok(a)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn basis_in_degree(&self, d: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// Dimensions of the graded pieces in degrees 0..=top.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top_degree())
            .map(|d| self.basis_in_degree(d).len())
            .collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The basis element with the given label.
    pub fn elem(&self, label: &str) -> Elem {
        bit(self
            .index_of(label)
            .unwrap_or_else(|| panic!("no basis element {label}")))
    }

    /// Sum of the named basis elements.
    pub fn sum(&self, labels: &[&str]) -> Elem {
        labels.iter().fold(0, |acc, l| acc ^ self.elem(l))
    }

    pub fn unit(&self) -> Elem {
        let d0 = self.basis_in_degree(0);
        debug_assert_eq!(d0.len(), 1);
        bit(d0[0])
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let mut out = 0;
        for i in bits(a) {
            for j in bits(b) {
                out ^= self.table[i][j];
            }
        }
        out
    }

    pub fn pow(&self, a: Elem, m: usize) -> Elem {
        (0..m).fold(self.unit(), |acc, _| self.mul(acc, a))
    }

    pub fn product(&self, factors: &[Elem]) -> Elem {
        factors.iter().fold(self.unit(), |acc, f| self.mul(acc, *f))
    }

    /// Degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, a: Elem) -> Option<usize> {
        let mut ds = bits(a).map(|i| self.degrees[i]);
        let d = ds.next()?;
        ds.all(|e| e == d).then_some(d)
    }

    /// Generators: basis elements whose word is themselves.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.words[i] == [i]).collect()
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn format(&self, a: Elem) -> String {
        if a == 0 {
            return "0".into();
        }
        bits(a)
            .map(|i| self.labels[i].as_str())
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Unit, degree additivity, commutativity, associativity and agreement of
    /// the words with the table, checked on all basis tuples.
    pub fn check(&self) -> Result<(), CohomologyError> {
        let n = self.dim();
        let top = self.top_degree();
        let d0 = self.basis_in_degree(0);
        if d0.len() != 1 {
            return Err(CohomologyError::Table(
                "degree 0 must be one-dimensional".into(),
            ));
        }
        let u = d0[0];
        let fail = |msg: String| Err(CohomologyError::Table(format!("{}: {msg}", self.name)));
        for i in 0..n {
            if self.table[u][i] != bit(i) {
                return fail(format!("1·{} ≠ {}", self.labels[i], self.labels[i]));
            }
            for j in 0..n {
                let p = self.table[i][j];
                if p != self.table[j][i] {
                    return fail(format!(
                        "{}·{} not commutative",
                        self.labels[i], self.labels[j]
                    ));
                }
                let d = self.degrees[i] + self.degrees[j];
                if bits(p).any(|k| self.degrees[k] != d) || (d > top && p != 0) {
                    return fail(format!(
                        "{}·{} breaks degree additivity",
                        self.labels[i], self.labels[j]
                    ));
                }
                for k in 0..n {
                    let l = self.mul(self.table[i][j], bit(k));
                    let r = self.mul(bit(i), self.table[j][k]);
                    if l != r {
                        return fail(format!(
                            "({}·{})·{} ≠ {}·({}·{})",
                            self.labels[i],
                            self.labels[j],
                            self.labels[k],
                            self.labels[i],
                            self.labels[j],
                            self.labels[k]
                        ));
                    }
                }
            }
            let w = self.words[i]
                .iter()
                .fold(bit(u), |acc, &g| self.mul(acc, bit(g)));
            if w != bit(i) {
                return fail(format!("word of {} does not multiply out", self.labels[i]));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.name, self.dims())
    }
}

/// A four-dimensional algebra with basis {1; x, y; t} and the given squares
/// and product of the degree-one generators.
fn surface_ring(name: &str, [x, y, t]: [&str; 3], xx: Elem, yy: Elem, xy: Elem) -> GradedAlgebra {
    let labels = ["1", x, y, t].map(String::from).to_vec();
    let mut table = vec![vec![0; 4]; 4];
    for (i, row) in table.iter_mut().enumerate() {
        row[0] = bit(i);
    }
    table[0] = (0..4).map(bit).collect();
    table[1][1] = xx;
    table[2][2] = yy;
    table[1][2] = xy;
    table[2][1] = xy;
    let words = vec![
        vec![],
        vec![1],
        vec![2],
        if xy != 0 { vec![1, 2] } else { vec![1, 1] },
    ];
    GradedAlgebra::new(name, labels, vec![0, 1, 1, 2], words, table).expect("catalog ring")
}

/// H*(T; 𝔽₂): α² = β² = 0, αβ = γ.
pub fn torus_ring() -> GradedAlgebra {
    surface_ring("H*(T)", ["α", "β", "γ"], 0, 0, bit(3))
}

/// H*(K; 𝔽₂): κλ = 0, κ² = λ² = μ.
pub fn klein_ring() -> GradedAlgebra {
    surface_ring("H*(K)", ["κ", "λ", "μ"], bit(3), bit(3), 0)
}

/// 𝔽₂ concentrated in degree 0.
pub fn ground_field() -> GradedAlgebra {
    GradedAlgebra::new("F2", vec!["1".into()], vec![0], vec![vec![]], vec![vec![1]])
        .expect("catalog ring")
}

/// A ⊗ B with (a⊗b)(a′⊗b′) = aa′ ⊗ bb′.
pub fn tensor(a: &GradedAlgebra, b: &GradedAlgebra) -> GradedAlgebra {
    let (na, nb) = (a.dim(), b.dim());
    let idx = |i: usize, j: usize| i * nb + j;
    let ua = a.basis_in_degree(0)[0];
    let ub = b.basis_in_degree(0)[0];
    let mut labels = Vec::with_capacity(na * nb);
    let mut degrees = Vec::with_capacity(na * nb);
    let mut words = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            labels.push(format!("{}⊗{}", a.label(i), b.label(j)));
            degrees.push(a.degree(i) + b.degree(j));
            let mut w: Vec<usize> = a.word(i).iter().map(|&g| idx(g, ub)).collect();
            w.extend(b.word(j).iter().map(|&g| idx(ua, g)));
            words.push(w);
        }
    }
    let mut table = vec![vec![0; na * nb]; na * nb];
    for i in 0..na {
        for j in 0..nb {
            for k in 0..na {
                for l in 0..nb {
                    let p = a.mul(bit(i), bit(k));
                    let q = b.mul(bit(j), bit(l));
                    table[idx(i, j)][idx(k, l)] = bits(p)
                        .flat_map(|x| bits(q).map(move |y| bit(idx(x, y))))
                        .fold(0, |acc, e| acc ^ e);
                }
            }
        }
    }
    let name = format!("{}⊗{}", a.name(), b.name());
    GradedAlgebra::new(&name, labels, degrees, words, table).expect("tensor of valid algebras")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_relations() {
        let t = torus_ring();
        let (a, b, g) = (t.elem("α"), t.elem("β"), t.elem("γ"));
        assert_eq!(t.mul(a, b), g);
        assert_eq!(t.mul(b, a), g);
        assert_eq!(t.mul(a, a), 0);
        assert_eq!(t.mul(b, b), 0);
        assert_eq!(t.generators(), vec![1, 2]);
    }

    #[test]
    fn klein_relations() {
        let k = klein_ring();
        let (x, y, m) = (k.elem("κ"), k.elem("λ"), k.elem("μ"));
        assert_eq!(k.mul(x, x), m);
        assert_eq!(k.mul(y, y), m);
        assert_eq!(k.mul(x, y), 0);
    }

    #[test]
    fn unit_acts_trivially() {
        for r in [torus_ring(), klein_ring(), ground_field()] {
            for i in 0..r.dim() {
                assert_eq!(r.mul(r.unit(), bit(i)), bit(i));
            }
        }
    }

    #[test]
    fn tensor_dimensions_and_rule() {
        let tk = tensor(&torus_ring(), &klein_ring());
        assert_eq!(tk.dims(), vec![1, 4, 6, 4, 1]);
        assert_eq!(tk.mul(tk.elem("α⊗1"), tk.elem("1⊗λ")), tk.elem("α⊗λ"));
        let top = tk.elem("γ⊗μ");
        for i in 0..tk.dim() {
            if tk.degree(i) > 0 {
                assert_eq!(tk.mul(top, bit(i)), 0);
            }
        }
        assert_eq!(tk.generators().len(), 4);
    }

    #[test]
    fn tensor_witness_cube() {
        let tk = tensor(&torus_ring(), &klein_ring());
        let u = tk.sum(&["α⊗1", "β⊗1", "1⊗λ"]);
        assert_eq!(tk.pow(u, 3), tk.sum(&["α⊗μ", "β⊗μ"]));
        assert_eq!(tk.pow(u, 4), 0);
    }

    #[test]
    fn bad_tables_are_rejected() {
        let labels = ["1", "x"].map(String::from).to_vec();
        // x·1 ≠ 1·x
        let t = vec![vec![1, 2], vec![0, 0]];
        assert!(
            GradedAlgebra::new("bad", labels.clone(), vec![0, 1], vec![vec![], vec![1]], t)
                .is_err()
        );
        // x² lands in degree 1
        let t = vec![vec![1, 2], vec![2, 2]];
        assert!(GradedAlgebra::new("bad", labels, vec![0, 1], vec![vec![], vec![1]], t).is_err());
    }

    #[test]
    fn formatting() {
        let tk = tensor(&torus_ring(), &klein_ring());
        assert_eq!(tk.format(tk.sum(&["α⊗1", "1⊗λ"])), "1⊗λ+α⊗1");
        assert_eq!(tk.format(0), "0");
        assert_eq!(tk.homogeneous_degree(tk.sum(&["α⊗1", "1⊗λ"])), Some(1));
        assert_eq!(tk.homogeneous_degree(tk.sum(&["α⊗1", "γ⊗1"])), None);
    }
}
