//! Modules as bound representations: vertex spaces plus one matrix per arrow.
//!
//! Row-vector convention: an element of M at vertex v is a row vector and an
//! arrow α: v → w acts by x ↦ x·T_α, so T_α has shape dim(v) × dim(w).

mod construct;
mod hom;
mod json;
mod random;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::FpMatrix;
use crate::pathalgebra::{BoundAlgebra, Path};

pub use construct::{Sub, SumData};
pub use hom::{hom_basis, hom_dim, hom_space, HomSpace};
pub use json::{module_from_json, module_to_json};
pub use random::random_module;

/// A finite-dimensional right module given as a bound representation.
#[derive(Clone)]
pub struct Rep {
    alg: Arc<BoundAlgebra>,
    dims: Vec<usize>,
    maps: Vec<FpMatrix>,
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep[{}]{:?}", self.alg.name(), self.dims)
    }
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.dims == other.dims && self.maps == other.maps
    }
}

pub(crate) fn same_algebra(a: &Arc<BoundAlgebra>, b: &Arc<BoundAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// First relation whose path product does not vanish.
#[derive(Clone, Debug)]
pub struct Violation {
    pub relation: usize,
    pub text: String,
    pub product: FpMatrix,
}

impl Rep {
    /// Build a representation, checking matrix shapes (not relations).
    pub fn new(alg: &Arc<BoundAlgebra>, dims: Vec<usize>, maps: Vec<FpMatrix>) -> Result<Rep> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrow_count() {
            return Err(Error::Input("dimension vector or map list has the wrong length".into()));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.source] || m.cols() != dims[a.target] || m.prime() != alg.prime() {
                return Err(Error::Input(format!(
                    "map for arrow {} has shape {}x{}, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    dims[a.source],
                    dims[a.target]
                )));
            }
        }
        Ok(Rep { alg: alg.clone(), dims, maps })
    }

    /// Build and check that every relation acts as zero.
    pub fn new_bound(alg: &Arc<BoundAlgebra>, dims: Vec<usize>, maps: Vec<FpMatrix>) -> Result<Rep> {
        let r = Rep::new(alg, dims, maps)?;
        if let Err(v) = r.validate() {
            return Err(Error::Input(format!("relation {} does not vanish", v.text)));
        }
        Ok(r)
    }

    pub(crate) fn from_parts(alg: &Arc<BoundAlgebra>, dims: Vec<usize>, maps: Vec<FpMatrix>) -> Rep {
        Rep { alg: alg.clone(), dims, maps }
    }

    pub fn zero(alg: &Arc<BoundAlgebra>) -> Rep {
        let q = alg.quiver();
        let p = alg.prime();
        Rep {
            alg: alg.clone(),
            dims: vec![0; q.vertex_count()],
            maps: q.arrows().iter().map(|_| FpMatrix::zeros(0, 0, p)).collect(),
        }
    }

    pub fn simple(alg: &Arc<BoundAlgebra>, v: usize) -> Rep {
        let q = alg.quiver();
        let mut dims = vec![0; q.vertex_count()];
        dims[v] = 1;
        let maps = q.arrows().iter().map(|a| FpMatrix::zeros(dims[a.source], dims[a.target], alg.prime())).collect();
        Rep { alg: alg.clone(), dims, maps }
    }

    /// e_v A: basis at w is the normal paths v → w, arrows act by right
    /// multiplication followed by reduction.
    pub fn projective(alg: &Arc<BoundAlgebra>, v: usize) -> Rep {
        let q = alg.quiver();
        let p = alg.prime();
        let dims: Vec<usize> = (0..q.vertex_count()).map(|w| alg.paths_between(v, w).len()).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let rows = alg.paths_between(v, a.source);
                let cols = alg.paths_between(v, a.target);
                let mut m = FpMatrix::zeros(rows.len(), cols.len(), p);
                for (r, &b) in rows.iter().enumerate() {
                    for (t, c) in alg.mul_arrow(&vec![(b, 1)], ai) {
                        let col = cols.iter().position(|&x| x == t).expect("product stays in e_v A");
                        m.set(r, col, c);
                    }
                }
                m
            })
            .collect();
        Rep { alg: alg.clone(), dims, maps }
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra> {
        &self.alg
    }

    pub fn prime(&self) -> u32 {
        self.alg.prime()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, a: usize) -> &FpMatrix {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    /// T_w for a path w.
    pub fn path_matrix(&self, path: &Path) -> FpMatrix {
        let mut m = FpMatrix::identity(self.dims[path.start], self.prime());
        for &a in &path.arrows {
            m = m.mul(&self.maps[a]);
        }
        m
    }

    /// T_q for every normal path q starting at v, indexed like `paths_from(v)`.
    pub fn normal_path_matrices(&self, v: usize) -> Vec<(usize, FpMatrix)> {
        let alg = &self.alg;
        let mut out: Vec<(usize, FpMatrix)> = Vec::new();
        let mut pos: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        // basis is sorted by length, so prefixes come first
        for b in alg.paths_from(v) {
            let path = &alg.basis()[b];
            let m = match path.arrows.split_last() {
                None => FpMatrix::identity(self.dims[v], self.prime()),
                Some((&last, init)) => {
                    let prefix = Path { start: v, arrows: init.to_vec() };
                    let pb = alg.basis_index(&prefix).expect("prefix of a normal path is normal");
                    let pm: &FpMatrix = &out[pos[&pb]].1;
                    pm.mul(&self.maps[last])
                }
            };
            pos.insert(b, out.len());
            out.push((b, m));
        }
        out
    }

    /// Checks T_ρ = 0 for each generating relation.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let alg = &self.alg;
        for (i, rel) in alg.relations().iter().enumerate() {
            let (s, t) = (rel.start(), rel.terms[0].1.target(alg.quiver()));
            let mut acc = FpMatrix::zeros(self.dims[s], self.dims[t], self.prime());
            for (c, path) in &rel.terms {
                acc.add_scaled(&self.path_matrix(path), *c % self.prime());
            }
            if !acc.is_zero() {
                return Err(Violation { relation: i, text: rel.display(alg.quiver()), product: acc });
            }
        }
        Ok(())
    }

    /// Offsets of each vertex block in the flattened space ⊕_v M_v.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims
            .iter()
            .map(|d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    /// Same module transported along invertible vertex maps g_v:
    /// T'_α = g_v^{-1} T_α g_w.
    pub fn base_change(&self, g: &[FpMatrix]) -> Result<Rep> {
        let inv: Vec<FpMatrix> = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::Input("base change is not invertible".into())))
            .collect::<Result<_>>()?;
        let maps = self
            .alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| inv[a.source].mul(&self.maps[i]).mul(&g[a.target]))
            .collect();
        Ok(Rep { alg: self.alg.clone(), dims: self.dims.clone(), maps })
    }

    /// Dual module D M over the opposite algebra.
    pub fn dualize(&self, op: &Arc<BoundAlgebra>) -> Result<Rep> {
        if op.quiver().arrow_count() != self.alg.quiver().arrow_count()
            || op.quiver().vertex_count() != self.alg.quiver().vertex_count()
        {
            return Err(Error::Input("not the opposite algebra".into()));
        }
        Rep::new(op, self.dims.clone(), self.maps.iter().map(|m| m.transpose()).collect())
    }

    /// Same vertex spaces and maps, viewed over another algebra on the same quiver.
    pub fn reattach(&self, alg: &Arc<BoundAlgebra>) -> Result<Rep> {
        Rep::new(alg, self.dims.clone(), self.maps.clone())
    }
}

/// A homomorphism of representations, one matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct RepMap {
    source: Rep,
    target: Rep,
    comps: Vec<FpMatrix>,
}

impl RepMap {
    /// Build a map and check the commuting squares M_α·f_w = f_v·N_α.
    pub fn new(source: &Rep, target: &Rep, comps: Vec<FpMatrix>) -> Result<RepMap> {
        let f = RepMap::unchecked(source, target, comps);
        if !f.is_valid() {
            return Err(Error::Input("vertex maps do not commute with the arrows".into()));
        }
        Ok(f)
    }

    pub(crate) fn unchecked(source: &Rep, target: &Rep, comps: Vec<FpMatrix>) -> RepMap {
        RepMap { source: source.clone(), target: target.clone(), comps }
    }

    pub fn identity(m: &Rep) -> RepMap {
        let comps = m.dims.iter().map(|&d| FpMatrix::identity(d, m.prime())).collect();
        RepMap::unchecked(m, m, comps)
    }

    pub fn zero(source: &Rep, target: &Rep) -> RepMap {
        let comps = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&a, &b)| FpMatrix::zeros(a, b, source.prime()))
            .collect();
        RepMap::unchecked(source, target, comps)
    }

    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    pub fn comp(&self, v: usize) -> &FpMatrix {
        &self.comps[v]
    }

    pub fn comps(&self) -> &[FpMatrix] {
        &self.comps
    }

    pub fn is_valid(&self) -> bool {
        let (m, n) = (&self.source, &self.target);
        if !same_algebra(&m.alg, &n.alg) || self.comps.len() != m.dims.len() {
            return false;
        }
        for (v, c) in self.comps.iter().enumerate() {
            if c.rows() != m.dims[v] || c.cols() != n.dims[v] {
                return false;
            }
        }
        m.alg.quiver().arrows().iter().enumerate().all(|(i, a)| {
            m.maps[i].mul(&self.comps[a.target]) == self.comps[a.source].mul(&n.maps[i])
        })
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &RepMap) -> RepMap {
        let comps = self.comps.iter().zip(&g.comps).map(|(a, b)| a.mul(b)).collect();
        RepMap::unchecked(&self.source, &g.target, comps)
    }

    pub fn add(&self, g: &RepMap) -> RepMap {
        let comps = self.comps.iter().zip(&g.comps).map(|(a, b)| a.add(b)).collect();
        RepMap::unchecked(&self.source, &self.target, comps)
    }

    pub fn scale(&self, c: u32) -> RepMap {
        RepMap::unchecked(&self.source, &self.target, self.comps.iter().map(|a| a.scale(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.is_invertible())
    }

    /// Block-diagonal matrix of the map on ⊕_v M_v.
    pub fn flat(&self) -> FpMatrix {
        let refs: Vec<&FpMatrix> = self.comps.iter().collect();
        FpMatrix::block_diag(&refs, self.source.prime())
    }

    /// Inverse map, if every component is invertible.
    pub fn inverse(&self) -> Option<RepMap> {
        let comps = self.comps.iter().map(|c| c.inverse()).collect::<Option<Vec<_>>>()?;
        Some(RepMap::unchecked(&self.target, &self.source, comps))
    }
}

#[cfg(test)]
pub(crate) mod testalg {
    use super::*;
    use crate::pathalgebra::{build_algebra, Quiver, Relation};

    pub fn a2() -> Arc<BoundAlgebra> {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        build_algebra("A2", q, vec![], 101, 30).unwrap()
    }

    pub fn ext_a() -> Arc<BoundAlgebra> {
        let q = Quiver::new(&["0"], &[("g1", "0", "0"), ("g2", "0", "0"), ("g3", "0", "0")]).unwrap();
        let mut rels = Vec::new();
        for i in 0..3 {
            rels.push(Relation::new(vec![(1, Path { start: 0, arrows: vec![i, i] })]));
            for j in i + 1..3 {
                rels.push(Relation::new(vec![
                    (1, Path { start: 0, arrows: vec![i, j] }),
                    (1, Path { start: 0, arrows: vec![j, i] }),
                ]));
            }
        }
        build_algebra("A", q, rels, 101, 30).unwrap()
    }

    /// Radical square zero algebra on 1 ⟲, 1 ⇄ 2, 2 ⟲.
    pub fn ex_b() -> Arc<BoundAlgebra> {
        let q = Quiver::new(
            &["1", "2"],
            &[("bb1", "1", "1"), ("b1", "1", "2"), ("bb2", "2", "2"), ("b2", "2", "1")],
        )
        .unwrap();
        let mut rels = Vec::new();
        for x in 0..4 {
            for y in 0..4 {
                if q.arrow(x).target == q.arrow(y).source {
                    rels.push(Relation::new(vec![(1, Path { start: q.arrow(x).source, arrows: vec![x, y] })]));
                }
            }
        }
        build_algebra("B", q, rels, 101, 30).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::testalg::*;
    use super::*;

    #[test]
    fn projectives_and_simples() {
        let a = a2();
        assert_eq!(Rep::projective(&a, 1).dims(), &[0, 1]);
        assert_eq!(Rep::projective(&a, 0).dims(), &[1, 1]);
        let b = ex_b();
        assert_eq!(Rep::projective(&b, 0).dims(), &[2, 1]);
        for alg in [a2(), ext_a(), ex_b()] {
            for v in 0..alg.vertex_count() {
                let s = Rep::simple(&alg, v);
                assert_eq!(s.total_dim(), 1);
                assert_eq!(s.dims()[v], 1);
                assert!(s.validate().is_ok());
                assert!(Rep::projective(&alg, v).validate().is_ok());
            }
        }
    }

    #[test]
    fn dimension_of_algebra_is_sum_of_projectives() {
        for alg in [a2(), ext_a(), ex_b()] {
            let total: usize = (0..alg.vertex_count()).map(|v| Rep::projective(&alg, v).total_dim()).sum();
            assert_eq!(total, alg.dim());
        }
    }

    #[test]
    fn loop_with_identity_violates_square() {
        let q = crate::pathalgebra::Quiver::new(&["0"], &[("g", "0", "0")]).unwrap();
        let rel = crate::pathalgebra::Relation::new(vec![(1, Path { start: 0, arrows: vec![0, 0] })]);
        let alg = crate::pathalgebra::build_algebra("L", q, vec![rel], 101, 30).unwrap();
        let m = Rep::new(&alg, vec![2], vec![FpMatrix::identity(2, 101)]).unwrap();
        let v = m.validate().unwrap_err();
        assert_eq!(v.relation, 0);
        assert!(!v.product.is_zero());
    }

    #[test]
    fn dual_of_projective_over_a2() {
        let a = a2();
        let op = crate::pathalgebra::opposite(&a).unwrap();
        let d = Rep::projective(&a, 0).dualize(&op).unwrap();
        assert_eq!(d.dims(), &[1, 1]);
        assert!(d.validate().is_ok());
        assert_eq!(op.quiver().arrow(0).source, 1);
        let s = Rep::simple(&a, 1).dualize(&op).unwrap();
        assert_eq!(s, Rep::simple(&op, 1));
    }
}
