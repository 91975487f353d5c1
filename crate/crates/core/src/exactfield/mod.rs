//! Exact linear algebra over a prime field F_p and over the integers.

mod fp;
mod intmat;
pub mod poly;

pub use fp::{
    add_mod, inv_mod, is_prime, mul_mod, neg_mod, pow_mod, reduce_i64, sub_mod, Echelon, FpMatrix,
    DEFAULT_PRIME, MAX_PRIME,
};
pub use intmat::IntMatrix;

pub fn rank_fp(m: &FpMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &FpMatrix) -> FpMatrix {
    m.kernel_basis()
}

pub fn solve(a: &FpMatrix, b: &FpMatrix) -> Option<FpMatrix> {
    a.solve(b)
}

pub fn lattice_rank(g: &IntMatrix) -> usize {
    g.lattice_rank()
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn fp_matrix() -> impl Strategy<Value = FpMatrix> {
        (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0u32..7, r * c)
                .prop_map(move |d| FpMatrix::from_flat(r, c, 7, d))
        })
    }

    fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (0usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-4i64..5, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in fp_matrix()) {
            prop_assert_eq!(rank_fp(&m), rank_fp(&m.transpose()));
        }

        #[test]
        fn rank_nullity(m in fp_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(m.cols(), rank_fp(&m) + k.rows());
            if k.rows() > 0 && m.rows() > 0 {
                prop_assert!(m.mul(&k.transpose()).is_zero());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn lattice_rank_invariant_under_row_moves(rows in int_matrix(), a in 0usize..5, b in 0usize..5, op in 0u8..3) {
            let cols = rows.first().map(|r| r.len()).unwrap_or(1);
            let before = IntMatrix::from_i64_rows(&rows, cols).lattice_rank();
            let mut moved = rows.clone();
            if !moved.is_empty() {
                let (a, b) = (a % moved.len(), b % moved.len());
                match op {
                    0 => moved.swap(a, b),
                    1 => moved[a].iter_mut().for_each(|x| *x = -*x),
                    _ => if a != b {
                        let src = moved[b].clone();
                        moved[a].iter_mut().zip(src).for_each(|(x, y)| *x += y);
                    },
                }
            }
            let after = IntMatrix::from_i64_rows(&moved, cols).lattice_rank();
            prop_assert_eq!(before, after);
            // rank over Q agrees with F_p rank for a large prime on small entries
            let fp = FpMatrix::from_i64_rows(&rows, cols, 65521);
            prop_assert_eq!(before, fp.rank());
        }
    }
}
