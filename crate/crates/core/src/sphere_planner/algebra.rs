//! Complex, quaternion and octonion multiplication from a single Cayley table.
//!
//! Imaginary units e₁ … e₇ multiply along the oriented triples
//! (1,2,3), (1,4,5), (1,7,6), (2,4,6), (2,5,7), (3,4,7), (3,6,5):
//! for a triple (a, b, c), e_a e_b = e_c, e_b e_c = e_a, e_c e_a = e_b and
//! reversing the order flips the sign. The quaternions are the span of
//! e₀ … e₃ (the triple (1,2,3) is i j = k), the complex numbers that of e₀, e₁.

pub const FANO_TRIPLES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 7, 6],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 6, 5],
];

/// Product of two basis units as (sign, index).
pub fn unit_product(i: usize, j: usize) -> (f64, usize) {
    match (i, j) {
        (0, _) => (1.0, j),
        (_, 0) => (1.0, i),
        _ if i == j => (-1.0, 0),
        _ => {
            for t in FANO_TRIPLES {
                for r in 0..3 {
                    let (a, b, c) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
                    if (i, j) == (a, b) {
                        return (1.0, c);
                    }
                    if (i, j) == (b, a) {
                        return (-1.0, c);
                    }
                }
            }
            unreachable!("every pair of distinct imaginary units lies on one triple")
        }
    }
}

/// Product in the Cayley–Dickson algebra of dimension 2, 4 or 8.
pub fn multiply(x: &[f64], y: &[f64]) -> Vec<f64> {
    let d = x.len();
    assert!(
        matches!(d, 2 | 4 | 8) && y.len() == d,
        "unsupported algebra dimension {d}"
    );
    let mut out = vec![0.0; d];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0.0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            let (s, k) = unit_product(i, j);
            out[k] += s * xi * yj;
        }
    }
    out
}

pub fn unit(d: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; d];
    v[i] = 1.0;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
        multiply(a, b)
    }

    #[test]
    fn quaternion_units() {
        let (i, j, k) = (unit(4, 1), unit(4, 2), unit(4, 3));
        assert_eq!(multiply(&i, &j), k);
        assert_eq!(multiply(&j, &k), i);
        assert_eq!(multiply(&k, &i), j);
        assert_eq!(multiply(&j, &i), k.iter().map(|c| -c).collect::<Vec<_>>());
    }

    #[test]
    fn listed_octonion_products() {
        for (a, b, c) in [(1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 4, 7)] {
            assert_eq!(unit_product(a, b), (1.0, c));
        }
    }

    #[test]
    fn octonion_table_anticommutative_and_alternative() {
        for a in 1..8 {
            for b in 1..8 {
                let ea = unit(8, a);
                let eb = unit(8, b);
                if a != b {
                    let ab = basis_mul(&ea, &eb);
                    let ba = basis_mul(&eb, &ea);
                    assert!(ab.iter().zip(&ba).all(|(x, y)| *x == -*y), "e{a} e{b}");
                }
                // e_a (e_a e_b) = (e_a e_a) e_b
                let left = multiply(&ea, &multiply(&ea, &eb));
                let right = multiply(&multiply(&ea, &ea), &eb);
                assert_eq!(left, right, "left alternativity e{a} e{b}");
                // (e_b e_a) e_a = e_b (e_a e_a)
                let left = multiply(&multiply(&eb, &ea), &ea);
                let right = multiply(&eb, &multiply(&ea, &ea));
                assert_eq!(left, right, "right alternativity e{a} e{b}");
            }
        }
    }

    #[test]
    fn octonion_norm_is_multiplicative() {
        let x = [0.3, -1.2, 0.5, 2.0, -0.7, 0.1, 0.9, -0.4];
        let y = [1.1, 0.2, -0.3, 0.4, 0.5, -1.6, 0.7, 0.8];
        let n = |v: &[f64]| v.iter().map(|c| c * c).sum::<f64>();
        let xy = multiply(&x, &y);
        assert!((n(&xy) - n(&x) * n(&y)).abs() < 1e-12 * n(&x) * n(&y));
    }
}
