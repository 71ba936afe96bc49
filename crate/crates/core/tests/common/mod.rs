//! Hand-written multiplication for H*(T) ⊗ H*(K) over GF(2), kept apart from
//! the library's table-driven rings.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Torus classes as exponent pairs (i, j) for αⁱβʲ.
fn torus_exps(label: &str) -> (u8, u8) {
    match label {
        "1" => (0, 0),
        "α" => (1, 0),
        "β" => (0, 1),
        "γ" => (1, 1),
        _ => panic!("unknown torus class {label}"),
    }
}

fn torus_label(e: (u8, u8)) -> &'static str {
    match e {
        (0, 0) => "1",
        (1, 0) => "α",
        (0, 1) => "β",
        (1, 1) => "γ",
        _ => unreachable!(),
    }
}

/// αⁱβʲ · αᵏβˡ vanishes once an exponent reaches 2.
fn torus_mul(a: &str, b: &str) -> Option<&'static str> {
    let (x, y) = (torus_exps(a), torus_exps(b));
    let e = (x.0 + y.0, x.1 + y.1);
    (e.0 <= 1 && e.1 <= 1).then(|| torus_label(e))
}

/// κ² = λ² = μ, κλ = 0.
fn klein_mul(a: &str, b: &str) -> Option<&'static str> {
    match (a, b) {
        ("1", "1") => Some("1"),
        ("1", x) | (x, "1") => Some(match x {
            "κ" => "κ",
            "λ" => "λ",
            "μ" => "μ",
            _ => panic!("unknown Klein class {x}"),
        }),
        ("κ", "κ") | ("λ", "λ") => Some("μ"),
        _ => None,
    }
}

/// A sum of tensor basis labels such as "α⊗μ".
pub type Poly = BTreeSet<String>;

pub fn poly(terms: &[&str]) -> Poly {
    let mut p = Poly::new();
    for t in terms {
        toggle(&mut p, t.to_string());
    }
    p
}

fn toggle(p: &mut Poly, t: String) {
    if !p.remove(&t) {
        p.insert(t);
    }
}

fn split(label: &str) -> (&str, &str) {
    label.split_once('⊗').expect("tensor label")
}

pub fn basis_mul(a: &str, b: &str) -> Option<String> {
    let ((ta, ka), (tb, kb)) = (split(a), split(b));
    Some(format!("{}⊗{}", torus_mul(ta, tb)?, klein_mul(ka, kb)?))
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for x in a {
        for y in b {
            if let Some(t) = basis_mul(x, y) {
                toggle(&mut out, t);
            }
        }
    }
    out
}

/// (1, π)*: u ⊗ v ↦ u · π*(v) with π*(κ) = π*(λ) = α + β, π*(μ) = (α + β)² = 0.
pub fn one_pi_star(a: &Poly) -> BTreeSet<&'static str> {
    let mut out = BTreeSet::new();
    for t in a {
        let (u, v) = split(t);
        let image: Vec<&'static str> = match v {
            "1" => vec![torus_mul(u, "1").expect("unit")],
            "κ" | "λ" => ["α", "β"].iter().filter_map(|w| torus_mul(u, w)).collect(),
            _ => vec![],
        };
        for w in image {
            if !out.remove(w) {
                out.insert(w);
            }
        }
    }
    out
}

pub const TORUS: [&str; 4] = ["1", "α", "β", "γ"];
pub const KLEIN: [&str; 4] = ["1", "κ", "λ", "μ"];

pub fn tensor_labels() -> Vec<String> {
    TORUS
        .iter()
        .flat_map(|t| KLEIN.iter().map(move |k| format!("{t}⊗{k}")))
        .collect()
}
