//! Decomposition into indecomposables, isomorphism tests and the registry
//! of isomorphism classes that gives K₀ its basis.

mod endo;
mod registry;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use endo::{EndAlgebra, Locality};
pub use registry::{Entry, Fingerprint, IsoClassId, IsoRegistry};

use crate::error::{Error, Result};
use crate::exactfield::FpMatrix;
use crate::pathalgebra::BoundAlgebra;
use crate::repmod::{hom_basis, hom_space, same_algebra, Rep, RepMap};

pub fn end_algebra(m: &Rep) -> EndAlgebra {
    EndAlgebra::new(m)
}

/// Budgets and seeds shared by every computation in a session.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    pub confidence: usize,
    pub depth_budget: usize,
    pub class_budget: usize,
    /// Largest module dimension a decomposition will attempt.
    pub dim_cap: usize,
    /// Exhaustive isomorphism search threshold on |F|^dim Hom.
    pub exhaustive_limit: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            confidence: 40,
            depth_budget: 64,
            class_budget: 10_000,
            dim_cap: 200,
            exhaustive_limit: 1_000_000,
        }
    }
}

/// How much of a decomposition is proven.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DecompStatus {
    Certified,
    /// r random splitting rounds failed on some summand whose radical could
    /// not be certified; residual error at most about 2^-r.
    Probabilistic(usize),
}

impl DecompStatus {
    pub fn and(self, other: DecompStatus) -> DecompStatus {
        match (self, other) {
            (DecompStatus::Certified, DecompStatus::Certified) => DecompStatus::Certified,
            (DecompStatus::Probabilistic(a), DecompStatus::Probabilistic(b)) => DecompStatus::Probabilistic(a.min(b)),
            (DecompStatus::Probabilistic(a), _) | (_, DecompStatus::Probabilistic(a)) => DecompStatus::Probabilistic(a),
        }
    }
}

/// A multiset of isomorphism classes, sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub summands: Vec<(IsoClassId, usize)>,
    pub status: DecompStatus,
}

impl Decomposition {
    pub fn multiplicity(&self, id: IsoClassId) -> usize {
        self.summands.iter().find(|(i, _)| *i == id).map(|(_, m)| *m).unwrap_or(0)
    }

    pub fn ids(&self) -> impl Iterator<Item = IsoClassId> + '_ {
        self.summands.iter().map(|(i, _)| *i)
    }

    pub fn count(&self) -> usize {
        self.summands.iter().map(|(_, m)| m).sum()
    }

    pub fn union(&self, other: &Decomposition) -> Decomposition {
        let mut s = self.summands.clone();
        for &(id, m) in &other.summands {
            match s.iter_mut().find(|(i, _)| *i == id) {
                Some(e) => e.1 += m,
                None => s.push((id, m)),
            }
        }
        s.sort();
        Decomposition { summands: s, status: self.status.and(other.status) }
    }
}

/// Answer of an isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoAnswer {
    /// An invertible homomorphism was exhibited.
    Yes(RepMap),
    /// Decompositions agree but some summand is only probabilistically indecomposable.
    YesProbabilistic,
    No,
}

impl IsoAnswer {
    pub fn is_yes(&self) -> bool {
        !matches!(self, IsoAnswer::No)
    }
}

impl fmt::Display for IsoAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoAnswer::Yes(_) => write!(f, "yes"),
            IsoAnswer::YesProbabilistic => write!(f, "yes-probabilistic"),
            IsoAnswer::No => write!(f, "no"),
        }
    }
}

/// A computation session over one algebra: configuration, seeded randomness
/// and the isomorphism-class registry.
pub struct Session {
    alg: Arc<BoundAlgebra>,
    pub config: Config,
    rng: ChaCha8Rng,
    pub registry: IsoRegistry,
    projectives: Vec<Rep>,
    pub(crate) block: Option<crate::homology::Block>,
    pub(crate) corners: Option<Vec<crate::homology::block::Corner>>,
    /// Classes whose syzygy exceeded the dimension cap.
    pub(crate) over_cap: std::collections::BTreeSet<IsoClassId>,
}

impl Session {
    pub fn new(alg: &Arc<BoundAlgebra>, config: Config) -> Session {
        let projectives = (0..alg.vertex_count()).map(|v| Rep::projective(alg, v)).collect();
        Session {
            alg: alg.clone(),
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            config,
            registry: IsoRegistry::default(),
            projectives,
            block: None,
            corners: None,
            over_cap: Default::default(),
        }
    }

    pub fn with_defaults(alg: &Arc<BoundAlgebra>) -> Session {
        Session::new(alg, Config::default())
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra> {
        &self.alg
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn projective(&self, v: usize) -> &Rep {
        &self.projectives[v]
    }

    pub fn simple(&self, v: usize) -> Rep {
        Rep::simple(&self.alg, v)
    }

    /// Register simples in vertex order, then indecomposable projectives.
    pub fn register_canonical(&mut self) -> Result<()> {
        for v in 0..self.alg.vertex_count() {
            let s = self.simple(v);
            self.register(&s)?;
        }
        for v in 0..self.alg.vertex_count() {
            let p = self.projectives[v].clone();
            self.register(&p)?;
        }
        Ok(())
    }

    fn check_algebra(&self, m: &Rep) -> Result<()> {
        if !same_algebra(m.algebra(), &self.alg) {
            return Err(Error::Input(format!(
                "module over {} used in a session over {}",
                m.algebra().name(),
                self.alg.name()
            )));
        }
        Ok(())
    }

    /// Indecomposable summands as explicit modules.
    pub fn split(&mut self, m: &Rep) -> Result<(Vec<Rep>, DecompStatus)> {
        self.check_algebra(m)?;
        if m.total_dim() > self.config.dim_cap {
            return Err(Error::BudgetExceeded(format!(
                "module of dimension {} exceeds the cap {}",
                m.total_dim(),
                self.config.dim_cap
            )));
        }
        let mut status = DecompStatus::Certified;
        let mut stack = vec![m.clone()];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            if x.is_zero() {
                continue;
            }
            if x.top_dims().iter().sum::<usize>() == 1 || x.socle_dims().iter().sum::<usize>() == 1 {
                out.push(x);
                continue;
            }
            let end = EndAlgebra::new(&x);
            let rounds = self.config.confidence;
            match end.analyze(&mut self.rng, rounds) {
                Locality::Local => out.push(x),
                Locality::Split(k, i) => {
                    stack.push(i);
                    stack.push(k);
                }
                Locality::ProbablyLocal(r) => {
                    status = status.and(DecompStatus::Probabilistic(r));
                    out.push(x);
                }
                Locality::Unsplit => {
                    return Err(Error::BudgetExceeded(format!(
                        "End of a module with dimension vector {:?} is not local but no splitting element was found",
                        x.dims()
                    )))
                }
            }
        }
        Ok((out, status))
    }

    pub fn decompose(&mut self, m: &Rep) -> Result<Decomposition> {
        let (parts, status) = self.split(m)?;
        let mut summands: Vec<(IsoClassId, usize)> = Vec::new();
        for part in &parts {
            let id = self.register_with_status(part, status)?;
            match summands.iter_mut().find(|(i, _)| *i == id) {
                Some(e) => e.1 += 1,
                None => summands.push((id, 1)),
            }
        }
        summands.sort();
        Ok(Decomposition { summands, status })
    }

    /// Register an indecomposable module, returning its class.
    pub fn register(&mut self, m: &Rep) -> Result<IsoClassId> {
        self.register_with_status(m, DecompStatus::Certified)
    }

    pub(crate) fn register_with_status(&mut self, m: &Rep, status: DecompStatus) -> Result<IsoClassId> {
        self.check_algebra(m)?;
        let fp = Fingerprint::of(m);
        for id in self.registry.bucket(&fp) {
            let rep = self.registry.entry(id).rep.clone();
            if iso_indecomposables(&rep, m).is_some() {
                return Ok(id);
            }
        }
        let projective = self.is_indecomposable_projective(m);
        Ok(self.registry.push(m.clone(), fp, projective, status))
    }

    /// Exact for indecomposable modules: M ≅ P_v iff top M = S_v and dim M = dim P_v.
    fn is_indecomposable_projective(&self, m: &Rep) -> bool {
        let top = m.top_dims();
        if top.iter().sum::<usize>() != 1 {
            return false;
        }
        let v = top.iter().position(|&d| d == 1).unwrap();
        self.projectives[v].dims() == m.dims()
    }

    pub fn lookup(&self, m: &Rep) -> Option<IsoClassId> {
        let fp = Fingerprint::of(m);
        self.registry.bucket(&fp).into_iter().find(|&id| iso_indecomposables(&self.registry.entry(id).rep, m).is_some())
    }

    pub fn representative(&self, id: IsoClassId) -> &Rep {
        &self.registry.entry(id).rep
    }

    pub fn is_projective_class(&self, id: IsoClassId) -> bool {
        self.registry.entry(id).projective
    }

    /// Isomorphism test with certificates where available.
    pub fn is_isomorphic(&mut self, m: &Rep, n: &Rep) -> Result<IsoAnswer> {
        self.check_algebra(m)?;
        self.check_algebra(n)?;
        if Fingerprint::of(m) != Fingerprint::of(n) {
            return Ok(IsoAnswer::No);
        }
        if m.is_zero() {
            return Ok(IsoAnswer::Yes(RepMap::identity(m)));
        }
        let hs = hom_space(m, n);
        if hs.dim() == 0 {
            return Ok(IsoAnswer::No);
        }
        let p = m.prime();
        for _ in 0..self.config.confidence {
            let c: Vec<u32> = (0..hs.dim()).map(|_| self.rng.gen_range(0..p)).collect();
            let f = hs.combine(&c);
            if f.is_iso() {
                return Ok(IsoAnswer::Yes(f));
            }
        }
        let space = (p as f64).powi(hs.dim() as i32);
        if space <= self.config.exhaustive_limit as f64 {
            let mut c = vec![0u32; hs.dim()];
            loop {
                let f = hs.combine(&c);
                if f.is_iso() {
                    return Ok(IsoAnswer::Yes(f));
                }
                let mut i = 0;
                while i < c.len() {
                    c[i] += 1;
                    if c[i] < p {
                        break;
                    }
                    c[i] = 0;
                    i += 1;
                }
                if i == c.len() {
                    return Ok(IsoAnswer::No);
                }
            }
        }
        let dm = self.decompose(m)?;
        let dn = self.decompose(n)?;
        match (dm.summands == dn.summands, dm.status.and(dn.status)) {
            (true, DecompStatus::Certified) => {
                // both split into the same certified classes; build the witness blockwise
                Ok(self.witness_from_parts(m, n)?.map(IsoAnswer::Yes).unwrap_or(IsoAnswer::YesProbabilistic))
            }
            (true, _) => Ok(IsoAnswer::YesProbabilistic),
            (false, DecompStatus::Certified) => Ok(IsoAnswer::No),
            (false, _) => Err(Error::Inconclusive("decompositions differ but are not certified".into())),
        }
    }

    fn witness_from_parts(&mut self, m: &Rep, n: &Rep) -> Result<Option<RepMap>> {
        let (pm, _) = self.split(m)?;
        let (mut pn, _) = self.split(n)?;
        let mut blocks: Vec<(RepMap, RepMap, RepMap)> = Vec::new();
        for x in &pm {
            let pos = pn.iter().position(|y| iso_indecomposables(x, y).is_some());
            let Some(j) = pos else { return Ok(None) };
            let y = pn.remove(j);
            let f = iso_indecomposables(x, &y).unwrap();
            blocks.push((f, RepMap::identity(x), RepMap::identity(&y)));
        }
        let xs: Vec<Rep> = blocks.iter().map(|b| b.0.source().clone()).collect();
        let ys: Vec<Rep> = blocks.iter().map(|b| b.0.target().clone()).collect();
        let sx = Rep::direct_sum(&xs);
        let sy = Rep::direct_sum(&ys);
        let p = m.prime();
        let comps: Vec<FpMatrix> = (0..m.dims().len())
            .map(|v| {
                let refs: Vec<&FpMatrix> = blocks.iter().map(|b| b.0.comp(v)).collect();
                FpMatrix::block_diag(&refs, p)
            })
            .collect();
        let f = RepMap::unchecked(&sx.sum, &sy.sum, comps);
        // transport through explicit isomorphisms m ≅ ⊕ parts ≅ n
        let to_parts = self.iso_to_sum(m, &sx.sum)?;
        let from_parts = self.iso_to_sum(n, &sy.sum)?;
        match (to_parts, from_parts.and_then(|g| g.inverse())) {
            (Some(a), Some(b)) => Ok(Some(a.then(&f).then(&b))),
            _ => Ok(None),
        }
    }

    fn iso_to_sum(&mut self, m: &Rep, sum: &Rep) -> Result<Option<RepMap>> {
        let hs = hom_space(m, sum);
        let p = m.prime();
        for _ in 0..self.config.confidence {
            let c: Vec<u32> = (0..hs.dim()).map(|_| self.rng.gen_range(0..p)).collect();
            if hs.dim() == 0 {
                break;
            }
            let f = hs.combine(&c);
            if f.is_iso() {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }
}

/// Certified isomorphism test for two modules with local endomorphism
/// rings: M ≅ N iff some g∘f with f: M → N, g: N → M is invertible, and
/// bilinearity reduces that to basis pairs.
pub fn iso_indecomposables(m: &Rep, n: &Rep) -> Option<RepMap> {
    if m.dims() != n.dims() {
        return None;
    }
    if m.is_zero() {
        return Some(RepMap::identity(m));
    }
    if m == n {
        return Some(RepMap::identity(m));
    }
    let fs = hom_basis(m, n);
    if let Some(f) = fs.iter().find(|f| f.is_iso()) {
        return Some(f.clone());
    }
    if fs.is_empty() {
        return None;
    }
    let gs = hom_basis(n, m);
    for f in &fs {
        for g in &gs {
            if f.then(g).is_iso() {
                return Some(f.clone());
            }
        }
    }
    // a sum of basis maps may still be invertible when single ones are not
    let mut acc = fs[0].clone();
    for (k, f) in fs.iter().enumerate().skip(1) {
        acc = acc.add(&f.scale(k as u32 + 1));
    }
    acc.is_iso().then_some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::random_module;
    use crate::repmod::testalg::*;

    #[test]
    fn decompositions() {
        let a = ext_a();
        let mut s = Session::with_defaults(&a);
        let d = s.decompose(&Rep::projective(&a, 0)).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.summands[0].1, 1);
        assert!(s.is_projective_class(d.summands[0].0));

        let b = ex_b();
        let mut s = Session::with_defaults(&b);
        let s1 = Rep::simple(&b, 0);
        let s2 = Rep::simple(&b, 1);
        let id1 = s.register(&s1).unwrap();
        let id2 = s.register(&s2).unwrap();
        assert_ne!(id1, id2);
        assert_eq!(s.register(&s1).unwrap(), id1);
        let d = s.decompose(&Rep::sum_of(&[s1.clone(), s1.clone(), s2.clone()])).unwrap();
        assert_eq!(d.summands, vec![(id1, 2), (id2, 1)]);
        assert_eq!(d.status, DecompStatus::Certified);
        let rad = Rep::projective(&b, 0).radical().module;
        assert_eq!(s.decompose(&rad).unwrap().summands, vec![(id1, 1), (id2, 1)]);
    }

    #[test]
    fn base_change_is_same_class() {
        let b = ex_b();
        let mut s = Session::with_defaults(&b);
        let m = Rep::projective(&b, 0);
        let g = vec![
            FpMatrix::from_rows(&[vec![1, 2], vec![3, 5]], 2, 101),
            FpMatrix::from_rows(&[vec![7]], 1, 101),
        ];
        let m2 = m.base_change(&g).unwrap();
        assert_ne!(m, m2);
        assert!(m2.validate().is_ok());
        let id = s.register(&m).unwrap();
        assert_eq!(s.register(&m2).unwrap(), id);
        assert!(matches!(s.is_isomorphic(&m, &m2).unwrap(), IsoAnswer::Yes(f) if f.is_iso() && f.is_valid()));
        assert!(matches!(s.is_isomorphic(&Rep::simple(&b, 0), &Rep::simple(&b, 1)).unwrap(), IsoAnswer::No));
    }

    #[test]
    fn krull_schmidt_on_random_pairs() {
        let b = ex_b();
        let mut s = Session::with_defaults(&b);
        for seed in 0..20 {
            let m = random_module(&b, seed, 8);
            let n = random_module(&b, 1000 + seed, 8);
            let dm = s.decompose(&m).unwrap();
            let dn = s.decompose(&n).unwrap();
            let ds = s.decompose(&Rep::sum_of(&[m.clone(), n.clone()])).unwrap();
            assert_eq!(ds.summands, dm.union(&dn).summands);
        }
    }
}
