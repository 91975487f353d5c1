use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Rep;
use crate::exactfield::FpMatrix;
use crate::pathalgebra::BoundAlgebra;

/// Cokernel of a seeded random map from a sum of projectives into a sum of
/// projectives, of total dimension at most `size_bound`.
pub fn random_module(alg: &Arc<BoundAlgebra>, seed: u64, size_bound: usize) -> Rep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = alg.prime();
    let n = alg.vertex_count();
    if size_bound == 0 || n == 0 {
        return Rep::zero(alg);
    }
    let projs: Vec<Rep> = (0..n).map(|v| Rep::projective(alg, v)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let wanted = rng.gen_range(1..=3usize);
    let mut chosen = Vec::new();
    let mut total = 0;
    for _ in 0..wanted {
        order.shuffle(&mut rng);
        if let Some(&v) = order.iter().find(|&&v| total + projs[v].total_dim() <= size_bound) {
            total += projs[v].total_dim();
            chosen.push(projs[v].clone());
        }
    }
    if chosen.is_empty() {
        let v = (0..n).min_by_key(|&v| projs[v].total_dim()).unwrap();
        chosen.push(projs[v].clone());
    }
    let target = Rep::sum_of(&chosen);

    // images of the random map: elements of the radical, occasionally anywhere
    let rad = target.radical_rows();
    let mut elems = Vec::new();
    for _ in 0..rng.gen_range(0..=3usize) {
        let v = rng.gen_range(0..n);
        let space = if rng.gen_bool(0.15) { FpMatrix::identity(target.dim_at(v), p) } else { rad[v].clone() };
        if space.rows() == 0 {
            continue;
        }
        let coeffs: Vec<u32> = (0..space.rows()).map(|_| rng.gen_range(0..p)).collect();
        elems.push((v, FpMatrix::vec_mul(&coeffs, &space)));
    }
    let mut m = target.quotient_by_rows(&target.generated_rows(&elems)).expect("generated submodule").0;

    // cut down from the bottom until the size bound holds
    while m.total_dim() > size_bound {
        let soc = m.socle_rows();
        let candidates: Vec<usize> = (0..n).filter(|&v| soc[v].rows() > 0).collect();
        let v = candidates[rng.gen_range(0..candidates.len())];
        let coeffs: Vec<u32> = (0..soc[v].rows()).map(|_| rng.gen_range(1..p)).collect();
        let x = FpMatrix::vec_mul(&coeffs, &soc[v]);
        m = m.quotient_by_rows(&m.generated_rows(&[(v, x)])).expect("generated submodule").0;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::super::testalg::*;
    use super::*;

    #[test]
    fn deterministic_bound_and_valid() {
        for alg in [a2(), ex_b(), ext_a()] {
            for seed in 0..100 {
                let m = random_module(&alg, seed, 12);
                assert!(m.total_dim() <= 12);
                assert!(m.validate().is_ok());
                assert_eq!(m, random_module(&alg, seed, 12));
            }
        }
    }
}
