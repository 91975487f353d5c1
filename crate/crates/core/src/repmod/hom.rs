//! Hom spaces. A map M → N is determined by the images of the top
//! generators of M, subject to the linear dependencies those generators
//! satisfy inside M; this keeps the unknown count at (#generators)·dim N
//! instead of Σ_v dim M_v · dim N_v.

use std::collections::HashMap;

use super::{same_algebra, Rep, RepMap};
use crate::exactfield::FpMatrix;

/// A basis of Hom(M, N) together with the data needed to express any
/// homomorphism in that basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<RepMap>,
    gens: Vec<(usize, Vec<u32>)>,
    /// row i = generator images of basis[i], flattened
    coords: FpMatrix,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` in the basis.
    pub fn coordinates(&self, f: &RepMap) -> Option<Vec<u32>> {
        let p = f.source().prime();
        if self.basis.is_empty() {
            return f.is_zero().then(Vec::new);
        }
        let u: Vec<u32> = self.gens.iter().flat_map(|(v, x)| FpMatrix::vec_mul(x, f.comp(*v))).collect();
        let b = FpMatrix::from_rows(&[u], self.coords.cols(), p);
        self.coords.solve_left(&b).map(|c| c.row(0).to_vec())
    }

    /// Linear combination of basis maps.
    pub fn combine(&self, c: &[u32]) -> RepMap {
        let mut acc = RepMap::zero(self.basis[0].source(), self.basis[0].target());
        for (f, &x) in self.basis.iter().zip(c) {
            if x != 0 {
                acc = acc.add(&f.scale(x));
            }
        }
        acc
    }
}

pub fn hom_space(m: &Rep, n: &Rep) -> HomSpace {
    assert!(same_algebra(m.algebra(), n.algebra()), "modules over different algebras");
    let p = m.prime();
    let alg = m.algebra();
    let q = alg.quiver();
    let gens = m.top_generators();
    if m.is_zero() || n.is_zero() {
        return HomSpace { basis: Vec::new(), gens, coords: FpMatrix::zeros(0, 0, p) };
    }
    let mut mpaths: HashMap<usize, Vec<(usize, FpMatrix)>> = HashMap::new();
    let mut npaths: HashMap<usize, Vec<(usize, FpMatrix)>> = HashMap::new();
    for (v, _) in &gens {
        mpaths.entry(*v).or_insert_with(|| m.normal_path_matrices(*v));
        npaths.entry(*v).or_insert_with(|| n.normal_path_matrices(*v));
    }
    let mut offsets = Vec::with_capacity(gens.len());
    let mut unknowns = 0;
    for (v, _) in &gens {
        offsets.push(unknowns);
        unknowns += n.dim_at(*v);
    }

    // spanning rows of each M_w: x_i T_q, remembering (generator, path position)
    let nv = q.vertex_count();
    let mut span: Vec<Vec<(usize, usize, Vec<u32>)>> = vec![Vec::new(); nv];
    for (i, (v, x)) in gens.iter().enumerate() {
        for (k, (b, t)) in mpaths[v].iter().enumerate() {
            let w = alg.basis()[*b].target(q);
            span[w].push((i, k, FpMatrix::vec_mul(x, t)));
        }
    }

    let mut eq_rows: Vec<Vec<u32>> = Vec::new();
    let mut sections: Vec<Option<(Vec<usize>, FpMatrix)>> = vec![None; nv];
    for w in 0..nv {
        if m.dim_at(w) == 0 || span[w].is_empty() {
            continue;
        }
        let r = FpMatrix::from_rows(&span[w].iter().map(|s| s.2.clone()).collect::<Vec<_>>(), m.dim_at(w), p);
        let chosen = r.transpose().echelon().pivots;
        let inv = r.select_rows(&chosen).inverse().expect("pivot rows form a basis");
        sections[w] = Some((chosen, inv));
        if n.dim_at(w) == 0 {
            continue;
        }
        let deps = r.left_kernel();
        for d in 0..deps.rows() {
            let c = deps.row(d);
            let mut block = vec![vec![0u32; unknowns]; n.dim_at(w)];
            for (j, &cj) in c.iter().enumerate() {
                if cj == 0 {
                    continue;
                }
                let (i, k, _) = span[w][j];
                let e = &npaths[&gens[i].0][k].1;
                for l in 0..e.rows() {
                    for (col, row) in block.iter_mut().enumerate() {
                        let val = e.get(l, col);
                        if val != 0 {
                            let slot = &mut row[offsets[i] + l];
                            *slot = ((*slot as u64 + cj as u64 * val as u64) % p as u64) as u32;
                        }
                    }
                }
            }
            eq_rows.extend(block);
        }
    }
    let sol = if eq_rows.is_empty() {
        FpMatrix::identity(unknowns, p)
    } else {
        FpMatrix::from_rows(&eq_rows, unknowns, p).kernel_basis()
    };

    let mut basis = Vec::with_capacity(sol.rows());
    for s in 0..sol.rows() {
        let u = sol.row(s);
        let comps = (0..nv)
            .map(|w| match &sections[w] {
                None => FpMatrix::zeros(m.dim_at(w), n.dim_at(w), p),
                Some((chosen, inv)) => {
                    let rows: Vec<Vec<u32>> = chosen
                        .iter()
                        .map(|&j| {
                            let (i, k, _) = span[w][j];
                            let ni = &u[offsets[i]..offsets[i] + n.dim_at(gens[i].0)];
                            FpMatrix::vec_mul(ni, &npaths[&gens[i].0][k].1)
                        })
                        .collect();
                    inv.mul(&FpMatrix::from_rows(&rows, n.dim_at(w), p))
                }
            })
            .collect();
        basis.push(RepMap::unchecked(m, n, comps));
    }
    HomSpace { basis, gens, coords: sol }
}

pub fn hom_basis(m: &Rep, n: &Rep) -> Vec<RepMap> {
    hom_space(m, n).basis
}

pub fn hom_dim(m: &Rep, n: &Rep) -> usize {
    hom_space(m, n).dim()
}

#[cfg(test)]
mod tests {
    use super::super::testalg::*;
    use super::*;

    #[test]
    fn simple_homs() {
        for alg in [a2(), ex_b(), ext_a()] {
            for v in 0..alg.vertex_count() {
                for w in 0..alg.vertex_count() {
                    let d = hom_dim(&Rep::simple(&alg, v), &Rep::simple(&alg, w));
                    assert_eq!(d, usize::from(v == w));
                }
            }
        }
        let a = a2();
        assert_eq!(hom_dim(&Rep::projective(&a, 0), &Rep::simple(&a, 0)), 1);
        assert_eq!(hom_dim(&Rep::projective(&a, 0), &Rep::simple(&a, 1)), 0);
    }

    #[test]
    fn hom_from_projective_is_evaluation() {
        for alg in [a2(), ex_b(), ext_a()] {
            for v in 0..alg.vertex_count() {
                let pv = Rep::projective(&alg, v);
                for w in 0..alg.vertex_count() {
                    let pw = Rep::projective(&alg, w);
                    let h = hom_basis(&pv, &pw);
                    assert_eq!(h.len(), pw.dim_at(v));
                    assert!(h.iter().all(|f| f.is_valid()));
                }
            }
        }
    }

    #[test]
    fn coordinates_roundtrip() {
        let b = ex_b();
        let m = Rep::sum_of(&[Rep::projective(&b, 0), Rep::simple(&b, 0), Rep::simple(&b, 1)]);
        let h = hom_space(&m, &m);
        let c: Vec<u32> = (0..h.dim()).map(|i| (i as u32 * 7 + 3) % 101).collect();
        let f = h.combine(&c);
        assert!(f.is_valid());
        assert_eq!(h.coordinates(&f).unwrap(), c);
    }
}
