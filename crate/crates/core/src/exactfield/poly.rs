//! Univariate polynomials over F_p, coefficients stored low degree first.

use super::fp::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod, FpMatrix};

/// Characteristic polynomial det(x·I − m) via reduction to Hessenberg form.
pub fn charpoly(m: &FpMatrix) -> Vec<u32> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let p = m.prime();
    let mut h = m.to_rows();
    for k in 1..n.saturating_sub(1) {
        let Some(i) = (k..n).find(|&i| h[i][k - 1] != 0) else {
            continue;
        };
        if i != k {
            h.swap(i, k);
            for row in h.iter_mut() {
                row.swap(i, k);
            }
        }
        let inv = inv_mod(h[k][k - 1], p);
        for j in k + 1..n {
            let u = mul_mod(h[j][k - 1], inv, p);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let t = mul_mod(u, h[k][c], p);
                h[j][c] = sub_mod(h[j][c], t, p);
            }
            for row in h.iter_mut() {
                let t = mul_mod(u, row[j], p);
                row[k] = add_mod(row[k], t, p);
            }
        }
    }
    let mut polys: Vec<Vec<u32>> = vec![vec![1]];
    for k in 0..n {
        // (x - h_kk) p_k
        let prev = &polys[k];
        let mut next = vec![0u32; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = add_mod(next[d + 1], c, p);
            next[d] = sub_mod(next[d], mul_mod(h[k][k], c, p), p);
        }
        let mut t = 1u32;
        for i in 1..=k {
            t = mul_mod(t, h[k - i + 1][k - i], p);
            let f = mul_mod(t, h[k - i][k], p);
            if f == 0 {
                continue;
            }
            for (d, &c) in polys[k - i].iter().enumerate() {
                next[d] = sub_mod(next[d], mul_mod(f, c, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn eval(poly: &[u32], x: u32, p: u32) -> u32 {
    poly.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

/// All roots in F_p, by evaluation at every residue.
pub fn roots(poly: &[u32], p: u32) -> Vec<u32> {
    (0..p).filter(|&x| eval(poly, x, p) == 0).collect()
}

/// Matrix polynomial evaluation by Horner's rule.
pub fn eval_matrix(poly: &[u32], m: &FpMatrix) -> FpMatrix {
    let p = m.prime();
    let n = m.rows();
    let mut acc = FpMatrix::zeros(n, n, p);
    for &c in poly.iter().rev() {
        acc = acc.mul(m);
        for i in 0..n {
            acc.set(i, i, add_mod(acc.get(i, i), c, p));
        }
    }
    acc
}

/// x - λ as a polynomial.
pub fn linear(lambda: u32, p: u32) -> Vec<u32> {
    vec![neg_mod(lambda % p, p), 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        let m = FpMatrix::from_rows(&[vec![2, 1], vec![0, 3]], 2, 7);
        // (x-2)(x-3) = x^2 - 5x + 6
        assert_eq!(charpoly(&m), vec![6, 2, 1]);
        assert_eq!(roots(&charpoly(&m), 7), vec![2, 3]);
        assert_eq!(charpoly(&FpMatrix::zeros(0, 0, 7)), vec![1]);
    }

    proptest! {
        #[test]
        fn cayley_hamilton(n in 1usize..7, data in proptest::collection::vec(0u32..13, 36)) {
            let m = FpMatrix::from_flat(n, n, 13, data[..n * n].to_vec());
            let cp = charpoly(&m);
            prop_assert_eq!(cp.len(), n + 1);
            prop_assert!(eval_matrix(&cp, &m).is_zero());
            for r in roots(&cp, 13) {
                let shifted = m.sub(&FpMatrix::identity(n, 13).scale(r));
                prop_assert!(!shifted.is_invertible());
            }
        }
    }
}
