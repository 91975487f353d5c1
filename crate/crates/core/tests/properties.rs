use std::sync::Arc;

use proptest::prelude::*;
use quiverit::cli::load_algebra;
use quiverit::decomp::{Config, Session};
use quiverit::homology::{projective_cover, syzygy, PdResult};
use quiverit::pathalgebra::BoundAlgebra;
use quiverit::repmod::{random_module, Rep};

const ALGEBRAS: [&str; 5] = ["exA.alg", "exB.alg", "a2.alg", "nakayama-gldim.alg", "nakayama-selfinj.alg"];

fn algebra(i: usize) -> Arc<BoundAlgebra> {
    load_algebra(ALGEBRAS[i % ALGEBRAS.len()], None, false).unwrap().alg
}

fn dims_of(s: &Session, d: &quiverit::decomp::Decomposition, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for &(id, m) in &d.summands {
        for (o, x) in out.iter_mut().zip(s.representative(id).dims()) {
            *o += m * x;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_preserves_dimensions(which in 0usize..5, seed in any::<u64>()) {
        let a = algebra(which);
        let m = random_module(&a, seed, 8);
        let mut s = Session::new(&a, Config::default());
        let d = s.decompose(&m).unwrap();
        prop_assert_eq!(dims_of(&s, &d, a.vertex_count()), m.dims().to_vec());
    }

    #[test]
    fn krull_schmidt_on_sums(which in 0usize..5, s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = algebra(which);
        let (m, n) = (random_module(&a, s1, 6), random_module(&a, s2, 6));
        let mut s = Session::new(&a, Config::default());
        let dm = s.decompose(&m).unwrap();
        let dn = s.decompose(&n).unwrap();
        let dsum = s.decompose(&Rep::sum_of(&[m, n])).unwrap();
        prop_assert_eq!(dsum.summands, dm.union(&dn).summands);
    }

    #[test]
    fn syzygy_is_additive(which in 0usize..5, s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = algebra(which);
        let (m, n) = (random_module(&a, s1, 6), random_module(&a, s2, 6));
        let mut s = Session::new(&a, Config::default());
        let lhs = s.decompose(&syzygy(&Rep::sum_of(&[m.clone(), n.clone()]))).unwrap();
        let rhs = s.decompose(&Rep::sum_of(&[syzygy(&m), syzygy(&n)])).unwrap();
        prop_assert_eq!(lhs.summands, rhs.summands);
    }

    #[test]
    fn cover_sequence_is_exact(which in 0usize..5, seed in any::<u64>()) {
        let a = algebra(which);
        let m = random_module(&a, seed, 8);
        let (cover, epi) = projective_cover(&m);
        prop_assert!(epi.is_surjective());
        prop_assert_eq!(cover.top_dims(), m.top_dims());
        prop_assert_eq!(cover.total_dim(), m.total_dim() + syzygy(&m).total_dim());
    }

    #[test]
    fn phi_bounds(which in 0usize..5, s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = algebra(which);
        let (m, n) = (random_module(&a, s1, 6), random_module(&a, s2, 6));
        let mut s = Session::new(&a, Config::default());
        let pm = s.phi(&m).unwrap();
        prop_assert!(pm.rank_trace.windows(2).all(|w| w[0] >= w[1]));
        if let PdResult::Finite(k) = s.pd(&m).unwrap() {
            prop_assert_eq!(pm.value, k);
        }
        let psum = s.phi(&Rep::sum_of(&[m, n])).unwrap();
        if pm.is_certified() && psum.is_certified() {
            prop_assert!(pm.value <= psum.value);
        }
    }
}
