use super::{Rep, RepMap};
use crate::error::{Error, Result};
use crate::exactfield::FpMatrix;

/// A submodule together with its inclusion.
#[derive(Clone, Debug)]
pub struct Sub {
    pub module: Rep,
    pub incl: RepMap,
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct SumData {
    pub sum: Rep,
    pub incl: Vec<RepMap>,
    pub proj: Vec<RepMap>,
}

impl Rep {
    pub fn direct_sum(ms: &[Rep]) -> SumData {
        let alg = ms.first().expect("direct sum of an empty list").algebra().clone();
        let p = alg.prime();
        let nv = alg.vertex_count();
        let dims: Vec<usize> = (0..nv).map(|v| ms.iter().map(|m| m.dims[v]).sum()).collect();
        let maps = (0..alg.quiver().arrow_count())
            .map(|a| {
                let refs: Vec<&FpMatrix> = ms.iter().map(|m| &m.maps[a]).collect();
                FpMatrix::block_diag(&refs, p)
            })
            .collect();
        let sum = Rep::from_parts(&alg, dims.clone(), maps);
        let mut offs = vec![0usize; nv];
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        for m in ms {
            let mut ic = Vec::new();
            let mut pc = Vec::new();
            for v in 0..nv {
                let mut i = FpMatrix::zeros(m.dims[v], dims[v], p);
                i.set_block(0, offs[v], &FpMatrix::identity(m.dims[v], p));
                pc.push(i.transpose());
                ic.push(i);
                offs[v] += m.dims[v];
            }
            incl.push(RepMap::unchecked(m, &sum, ic));
            proj.push(RepMap::unchecked(&sum, m, pc));
        }
        SumData { sum, incl, proj }
    }

    pub fn sum_of(ms: &[Rep]) -> Rep {
        Rep::direct_sum(ms).sum
    }

    /// Direct sum of k copies.
    pub fn power(&self, k: usize) -> Rep {
        if k == 0 {
            return Rep::zero(&self.alg);
        }
        Rep::sum_of(&vec![self.clone(); k])
    }

    /// Submodule spanned at each vertex by the given rows.
    pub fn submodule(&self, rows: Vec<FpMatrix>) -> Result<Sub> {
        let bases: Vec<FpMatrix> = rows.iter().map(|r| r.row_space()).collect();
        let p = self.prime();
        let mut maps = Vec::new();
        for (i, a) in self.alg.quiver().arrows().iter().enumerate() {
            let (s, t) = (&bases[a.source], &bases[a.target]);
            if s.rows() == 0 {
                maps.push(FpMatrix::zeros(0, t.rows(), p));
                continue;
            }
            let img = s.mul(&self.maps[i]);
            let coords = if t.rows() == 0 {
                img.is_zero().then(|| FpMatrix::zeros(s.rows(), 0, p))
            } else {
                t.solve_left(&img)
            };
            match coords {
                Some(c) => maps.push(c),
                None => {
                    return Err(Error::NotASubmodule(format!(
                        "arrow {} leaves the subspace",
                        self.alg.quiver().arrow(i).name
                    )))
                }
            }
        }
        let dims = bases.iter().map(|b| b.rows()).collect();
        let module = Rep::from_parts(&self.alg, dims, maps);
        let incl = RepMap::unchecked(&module, self, bases);
        Ok(Sub { module, incl })
    }

    /// Quotient by the image of an injective map into `self`.
    pub fn quotient(&self, sub: &RepMap) -> Result<(Rep, RepMap)> {
        if sub.target().dims() != self.dims() || !sub.is_injective() {
            return Err(Error::NotASubmodule("map is not an injection into the module".into()));
        }
        if !sub.is_valid() {
            return Err(Error::NotASubmodule("image is not arrow-stable".into()));
        }
        self.quotient_by_rows(sub.comps())
    }

    /// Quotient by the subspaces spanned by `rows` (must be arrow-stable).
    pub fn quotient_by_rows(&self, rows: &[FpMatrix]) -> Result<(Rep, RepMap)> {
        let nv = self.dims.len();
        let mut comps = Vec::with_capacity(nv);
        let mut cbases = Vec::with_capacity(nv);
        for v in 0..nv {
            let s = rows[v].row_space();
            let c = s.complement_basis();
            let change = s.vstack(&c);
            let inv = change.inverse().expect("subspace plus complement is a basis");
            comps.push(inv.block(0, s.rows(), self.dims[v], c.rows()));
            cbases.push(c);
        }
        let mut maps = Vec::new();
        for (i, a) in self.alg.quiver().arrows().iter().enumerate() {
            // stability: image of the subspace must die in the quotient
            let s = rows[a.source].row_space();
            if s.rows() > 0 && !s.mul(&self.maps[i]).mul(&comps[a.target]).is_zero() {
                return Err(Error::NotASubmodule(format!(
                    "arrow {} leaves the subspace",
                    self.alg.quiver().arrow(i).name
                )));
            }
            maps.push(cbases[a.source].mul(&self.maps[i]).mul(&comps[a.target]));
        }
        let dims = cbases.iter().map(|c| c.rows()).collect();
        let q = Rep::from_parts(&self.alg, dims, maps);
        let proj = RepMap::unchecked(self, &q, comps);
        Ok((q, proj))
    }

    /// Rows spanning rad M at each vertex: the sum of arrow images.
    pub fn radical_rows(&self) -> Vec<FpMatrix> {
        let p = self.prime();
        let q = self.alg.quiver();
        (0..self.dims.len())
            .map(|w| {
                let mut acc = FpMatrix::zeros(0, self.dims[w], p);
                for a in q.arrows_into(w) {
                    acc = acc.vstack(&self.maps[a]);
                }
                acc.row_space()
            })
            .collect()
    }

    pub fn radical(&self) -> Sub {
        self.submodule(self.radical_rows()).expect("the radical is a submodule")
    }

    /// Maximal semisimple submodule: common kernel of all outgoing arrows.
    pub fn socle_rows(&self) -> Vec<FpMatrix> {
        let p = self.prime();
        let q = self.alg.quiver();
        (0..self.dims.len())
            .map(|v| {
                let mut acc = FpMatrix::zeros(self.dims[v], 0, p);
                for a in q.arrows_from(v) {
                    acc = acc.hstack(&self.maps[a]);
                }
                if acc.cols() == 0 {
                    FpMatrix::identity(self.dims[v], p)
                } else {
                    acc.left_kernel()
                }
            })
            .collect()
    }

    pub fn socle(&self) -> Sub {
        self.submodule(self.socle_rows()).expect("the socle is a submodule")
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle_rows().iter().map(|r| r.rows()).collect()
    }

    pub fn top(&self) -> Rep {
        self.quotient_by_rows(&self.radical_rows()).expect("the radical is a submodule").0
    }

    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_rows().iter().zip(&self.dims).map(|(r, d)| d - r.rows()).collect()
    }

    /// Dimension vectors of rad^0 M ⊇ rad^1 M ⊇ … down to (and excluding) 0.
    pub fn radical_series(&self) -> Vec<Vec<usize>> {
        let p = self.prime();
        let q = self.alg.quiver();
        let mut layer: Vec<FpMatrix> = self.dims.iter().map(|&d| FpMatrix::identity(d, p)).collect();
        let mut out = Vec::new();
        while layer.iter().any(|l| l.rows() > 0) {
            out.push(layer.iter().map(|l| l.rows()).collect());
            layer = (0..self.dims.len())
                .map(|w| {
                    let mut acc = FpMatrix::zeros(0, self.dims[w], p);
                    for a in q.arrows_into(w) {
                        let s = &layer[q.arrow(a).source];
                        if s.rows() > 0 {
                            acc = acc.vstack(&s.mul(&self.maps[a]));
                        }
                    }
                    acc.row_space()
                })
                .collect();
        }
        out
    }

    /// Least n with rad^n M = 0 (0 for the zero module).
    pub fn loewy_length(&self) -> usize {
        self.radical_series().len()
    }

    /// Top generators: standard basis vectors at the non-pivot columns of
    /// the radical, vertex by vertex.
    pub fn top_generators(&self) -> Vec<(usize, Vec<u32>)> {
        let mut out = Vec::new();
        for (v, r) in self.radical_rows().iter().enumerate() {
            let c = r.complement_basis();
            for i in 0..c.rows() {
                out.push((v, c.row(i).to_vec()));
            }
        }
        out
    }

    /// Rows spanning the submodule generated by the given elements.
    pub fn generated_rows(&self, elems: &[(usize, Vec<u32>)]) -> Vec<FpMatrix> {
        let p = self.prime();
        let mut acc: Vec<FpMatrix> = self.dims.iter().map(|&d| FpMatrix::zeros(0, d, p)).collect();
        let mut by_vertex: Vec<Vec<&Vec<u32>>> = vec![Vec::new(); self.dims.len()];
        for (v, x) in elems {
            by_vertex[*v].push(x);
        }
        for (v, xs) in by_vertex.iter().enumerate() {
            if xs.is_empty() {
                continue;
            }
            let xm = FpMatrix::from_rows(&xs.iter().map(|x| (*x).clone()).collect::<Vec<_>>(), self.dims[v], p);
            for (b, t) in self.normal_path_matrices(v) {
                let w = self.alg.basis()[b].target(self.alg.quiver());
                acc[w] = acc[w].vstack(&xm.mul(&t));
            }
        }
        acc.into_iter().map(|m| m.row_space()).collect()
    }

    pub fn generated(&self, elems: &[(usize, Vec<u32>)]) -> Sub {
        self.submodule(self.generated_rows(elems)).expect("generated subspaces are arrow-stable")
    }
}

impl RepMap {
    /// Vertexwise kernel with the restricted action.
    pub fn kernel(&self) -> Sub {
        let rows = self.comps.iter().map(|c| c.left_kernel()).collect();
        self.source.submodule(rows).expect("kernels are submodules")
    }

    pub fn image(&self) -> Sub {
        let rows = self.comps.to_vec();
        self.target.submodule(rows).expect("images are submodules")
    }

    pub fn cokernel(&self) -> (Rep, RepMap) {
        self.target.quotient_by_rows(&self.comps).expect("images are submodules")
    }
}

#[cfg(test)]
mod tests {
    use super::super::testalg::*;
    use super::*;
    use crate::repmod::hom_basis;

    #[test]
    fn sums() {
        let a = a2();
        let s = Rep::sum_of(&[Rep::simple(&a, 0), Rep::simple(&a, 1)]);
        assert_eq!(s.dims(), &[1, 1]);
        let p = Rep::projective(&a, 0);
        assert_eq!(Rep::sum_of(&[p.clone(), Rep::zero(&a)]), p);
        let pp = p.power(2);
        assert_eq!(pp.dims(), &[2, 2]);
        assert_eq!(pp.map(0), &FpMatrix::identity(2, 101));
        let d = Rep::direct_sum(&[p.clone(), p.clone()]);
        for (i, q) in d.incl.iter().zip(&d.proj) {
            assert!(i.is_valid() && q.is_valid());
            assert_eq!(i.then(q), RepMap::identity(&p));
        }
    }

    #[test]
    fn kernels() {
        let a = a2();
        let p = Rep::projective(&a, 0);
        assert!(RepMap::identity(&p).kernel().module.is_zero());
        let s = Rep::simple(&a, 1);
        assert_eq!(RepMap::zero(&p, &s).kernel().module, p);
        let top = Rep::simple(&a, 0);
        let epi = hom_basis(&p, &top).pop().unwrap();
        let k = epi.kernel();
        assert_eq!(k.module.dims(), &[0, 1]);
        assert!(k.incl.is_valid());
    }

    #[test]
    fn quotients() {
        let b = ex_b();
        let p = Rep::projective(&b, 0);
        let (q0, _) = p.quotient(&RepMap::zero(&Rep::zero(&b), &p)).unwrap();
        assert_eq!(q0, p);
        let (q1, _) = p.quotient(&RepMap::identity(&p)).unwrap();
        assert!(q1.is_zero());
        let soc = p.socle();
        assert_eq!(soc.module.dims(), &[1, 1]);
        let (q, pi) = p.quotient(&soc.incl).unwrap();
        assert_eq!(q.dims(), &[1, 0]);
        assert!(pi.is_valid());
        assert!(q.validate().is_ok());
        // a non-stable subspace
        let mut rows = vec![FpMatrix::identity(2, 101).select_rows(&[0]), FpMatrix::zeros(0, 1, 101)];
        rows[1] = FpMatrix::zeros(0, 1, 101);
        assert!(matches!(p.quotient_by_rows(&rows), Err(Error::NotASubmodule(_))));
    }

    #[test]
    fn radical_top_socle() {
        let a = a2();
        assert!(Rep::simple(&a, 0).radical().module.is_zero());
        assert_eq!(Rep::projective(&a, 0).radical().module.dims(), &[0, 1]);
        let b = ex_b();
        let p1 = Rep::projective(&b, 0);
        assert_eq!(p1.radical().module.dims(), &[1, 1]);
        assert_eq!(p1.loewy_length(), 2);
        assert_eq!(p1.top().dims(), &[1, 0]);
        assert_eq!(Rep::simple(&b, 1).loewy_length(), 1);
        assert_eq!(Rep::zero(&b).loewy_length(), 0);
        let ea = ext_a();
        let p0 = Rep::projective(&ea, 0);
        assert_eq!(p0.socle_dims(), vec![1]);
        assert_eq!(p0.loewy_length(), 4);
        assert_eq!(p0.radical_series(), vec![vec![8], vec![7], vec![4], vec![1]]);
    }

    #[test]
    fn generators_generate() {
        let b = ex_b();
        let m = Rep::sum_of(&[Rep::projective(&b, 0), Rep::simple(&b, 1)]);
        let g = m.top_generators();
        assert_eq!(g.len(), 2);
        let rows = m.generated_rows(&g);
        assert_eq!(rows.iter().map(|r| r.rows()).collect::<Vec<_>>(), m.dims().to_vec());
    }
}
