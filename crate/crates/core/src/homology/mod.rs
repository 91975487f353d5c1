//! Projective covers, syzygies, projective dimension and Ω-orbits.

pub mod block;

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

pub use block::{selfinjective_block, Block};

use crate::decomp::{Decomposition, IsoClassId, Session};
use crate::error::{Error, Result};
use crate::exactfield::FpMatrix;
use crate::pathalgebra::BoundAlgebra;
use crate::repmod::{Rep, RepMap};

/// Projective cover P(M) → M built on the top generators of M
/// (earliest-pivot section of the top), one P_v per generator at v.
pub fn projective_cover(m: &Rep) -> (Rep, RepMap) {
    let alg = m.algebra();
    let p = m.prime();
    let gens = m.top_generators();
    if gens.is_empty() {
        let z = Rep::zero(alg);
        return (z.clone(), RepMap::zero(&z, m));
    }
    let parts: Vec<Rep> = gens.iter().map(|(v, _)| Rep::projective(alg, *v)).collect();
    let cover = Rep::sum_of(&parts);
    let nv = alg.vertex_count();
    let mut rows: Vec<Vec<Vec<u32>>> = vec![Vec::new(); nv];
    let mut path_cache: HashMap<usize, Vec<(usize, FpMatrix)>> = HashMap::new();
    for (v, x) in &gens {
        let mats = path_cache.entry(*v).or_insert_with(|| m.normal_path_matrices(*v));
        // P_v's basis at w is paths_between(v, w) in basis order, which is
        // the order of paths_from(v) restricted to target w
        for (b, t) in mats.iter() {
            let w = alg.basis()[*b].target(alg.quiver());
            rows[w].push(FpMatrix::vec_mul(x, t));
        }
    }
    let comps: Vec<FpMatrix> = (0..nv).map(|w| FpMatrix::from_rows(&rows[w], m.dim_at(w), p)).collect();
    let epi = RepMap::unchecked(&cover, m, comps);
    debug_assert!(epi.is_surjective());
    debug_assert_eq!(cover.top_dims(), m.top_dims());
    (cover, epi)
}

/// Ω(M): kernel of the projective cover.
pub fn syzygy(m: &Rep) -> Rep {
    let (_, epi) = projective_cover(m);
    epi.kernel().module
}

pub fn syzygy_power(m: &Rep, n: usize) -> Rep {
    (0..n).fold(m.clone(), |acc, _| syzygy(&acc))
}

/// Evidence that a projective dimension is infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum InfiniteEvidence {
    /// A class that lies in its own forward Ω-closure, with the cycle.
    Cycle(Vec<IsoClassId>),
    /// A nonprojective indecomposable over a selfinjective block; its
    /// syzygies never become projective.
    SelfinjectiveBlock(IsoClassId),
    /// Restriction of the class to a selfinjective corner is not projective.
    Corner { class: IsoClassId, vertices: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PdResult {
    Finite(usize),
    InfiniteCertified(InfiniteEvidence),
    Unknown(usize),
}

impl PdResult {
    pub fn is_finite(&self) -> bool {
        matches!(self, PdResult::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PdResult::InfiniteCertified(_))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitResult {
    /// Every class reached, seeds included, projectives marked separately.
    pub reached: Vec<IsoClassId>,
    pub projective: Vec<IsoClassId>,
    pub frontier: Vec<IsoClassId>,
    pub closed: bool,
}

impl OrbitResult {
    pub fn nonprojective(&self) -> Vec<IsoClassId> {
        self.reached.iter().copied().filter(|i| !self.projective.contains(i)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum SyzygyFinite {
    Closed(Vec<IsoClassId>),
    Open { reached: usize },
}

#[derive(Clone, Debug)]
enum PdState {
    Visiting,
    Done(PdResult),
}

impl Session {
    /// The selfinjective block W* of the algebra (computed once).
    pub fn block(&mut self) -> Result<&Block> {
        if self.block.is_none() {
            self.block = Some(selfinjective_block(self.algebra())?);
        }
        Ok(self.block.as_ref().unwrap())
    }

    pub fn corners(&mut self) -> Result<&[block::Corner]> {
        if self.corners.is_none() {
            self.corners = Some(block::selfinjective_corners(self.algebra())?);
        }
        Ok(self.corners.as_ref().unwrap())
    }

    /// A corner on which the class restricts to a nonprojective module.
    pub fn detecting_corner(&mut self, id: IsoClassId) -> Result<Option<Vec<usize>>> {
        if self.is_projective_class(id) {
            return Ok(None);
        }
        let rep = self.representative(id).clone();
        for c in self.corners()? {
            if c.detects_infinite_pd(&rep)? {
                return Ok(Some(c.vertices.clone()));
            }
        }
        Ok(None)
    }

    /// Whether a registered class is a nonprojective module over the
    /// selfinjective block.
    pub fn in_block(&mut self, id: IsoClassId) -> Result<bool> {
        if self.is_projective_class(id) {
            return Ok(false);
        }
        let dims = self.representative(id).dims().to_vec();
        Ok(self.block()?.supports(&dims))
    }

    /// Ω̄ on a class: the decomposition of Ω of its representative,
    /// projective summands kept.
    pub fn syzygy_class(&mut self, id: IsoClassId) -> Result<Vec<(IsoClassId, usize)>> {
        if let Some(s) = &self.registry.entry(id).syzygy {
            return Ok(s.clone());
        }
        if self.over_cap.contains(&id) {
            return Err(Error::BudgetExceeded(format!("syzygy of class {id} over the dimension cap")));
        }
        let rep = self.representative(id).clone();
        let out = if self.is_projective_class(id) {
            Vec::new()
        } else if self.in_block(id)? {
            // over a selfinjective block Ω of a nonprojective indecomposable
            // is a nonprojective indecomposable
            let om = syzygy(&rep);
            if om.total_dim() > self.config.dim_cap {
                self.over_cap.insert(id);
                return Err(Error::BudgetExceeded(format!("syzygy of dimension {}", om.total_dim())));
            }
            let status = self.registry.entry(id).status;
            vec![(self.register_with_status(&om, status)?, 1)]
        } else {
            match self.decompose(&syzygy(&rep)) {
                Ok(d) => d.summands,
                Err(e @ Error::BudgetExceeded(_)) => {
                    self.over_cap.insert(id);
                    return Err(e);
                }
                Err(e) => return Err(e),
            }
        };
        self.registry.set_syzygy(id, out.clone());
        Ok(out)
    }

    /// Projective dimension by exploring the Ω-class graph.
    pub fn pd(&mut self, m: &Rep) -> Result<PdResult> {
        let d = self.decompose(m)?;
        self.pd_of(&d)
    }

    pub fn pd_of(&mut self, d: &Decomposition) -> Result<PdResult> {
        let mut memo: HashMap<IsoClassId, PdState> = HashMap::new();
        let mut best = PdResult::Finite(0);
        for id in d.ids() {
            let mut stack = Vec::new();
            let r = self.pd_class(id, 0, &mut memo, &mut stack)?;
            best = match (best, r) {
                (PdResult::InfiniteCertified(e), _) | (_, PdResult::InfiniteCertified(e)) => PdResult::InfiniteCertified(e),
                (PdResult::Unknown(a), PdResult::Unknown(b)) => PdResult::Unknown(a.max(b)),
                (PdResult::Unknown(a), _) | (_, PdResult::Unknown(a)) => PdResult::Unknown(a),
                (PdResult::Finite(a), PdResult::Finite(b)) => PdResult::Finite(a.max(b)),
            };
        }
        Ok(best)
    }

    pub fn pd_class_result(&mut self, id: IsoClassId) -> Result<PdResult> {
        let mut memo = HashMap::new();
        self.pd_class(id, 0, &mut memo, &mut Vec::new())
    }

    fn pd_class(
        &mut self,
        id: IsoClassId,
        depth: usize,
        memo: &mut HashMap<IsoClassId, PdState>,
        stack: &mut Vec<IsoClassId>,
    ) -> Result<PdResult> {
        match memo.get(&id) {
            Some(PdState::Done(r)) => return Ok(r.clone()),
            Some(PdState::Visiting) => {
                let start = stack.iter().position(|&x| x == id).unwrap_or(0);
                let mut cycle = stack[start..].to_vec();
                cycle.push(id);
                return Ok(PdResult::InfiniteCertified(InfiniteEvidence::Cycle(cycle)));
            }
            None => {}
        }
        if self.is_projective_class(id) {
            memo.insert(id, PdState::Done(PdResult::Finite(0)));
            return Ok(PdResult::Finite(0));
        }
        if self.in_block(id)? {
            let r = PdResult::InfiniteCertified(InfiniteEvidence::SelfinjectiveBlock(id));
            memo.insert(id, PdState::Done(r.clone()));
            return Ok(r);
        }
        if let Some(vertices) = self.detecting_corner(id)? {
            let r = PdResult::InfiniteCertified(InfiniteEvidence::Corner { class: id, vertices });
            memo.insert(id, PdState::Done(r.clone()));
            return Ok(r);
        }
        if depth >= self.config.depth_budget || memo.len() >= self.config.class_budget {
            return Ok(PdResult::Unknown(depth));
        }
        memo.insert(id, PdState::Visiting);
        stack.push(id);
        let children = match self.syzygy_class(id) {
            Ok(c) => c,
            Err(Error::BudgetExceeded(_)) => {
                stack.pop();
                memo.remove(&id);
                return Ok(PdResult::Unknown(depth));
            }
            Err(e) => return Err(e),
        };
        let mut result = PdResult::Finite(1);
        for (child, _) in children {
            let r = self.pd_class(child, depth + 1, memo, stack)?;
            result = match (result, r) {
                (PdResult::InfiniteCertified(e), _) => PdResult::InfiniteCertified(e),
                (_, PdResult::InfiniteCertified(e)) => PdResult::InfiniteCertified(e),
                (PdResult::Unknown(a), _) => PdResult::Unknown(a),
                (_, PdResult::Unknown(a)) => PdResult::Unknown(a),
                (PdResult::Finite(a), PdResult::Finite(b)) => PdResult::Finite(a.max(b + 1)),
            };
            if matches!(result, PdResult::InfiniteCertified(_)) {
                break;
            }
        }
        stack.pop();
        match &result {
            // an Unknown below a cycle member may depend on the stack; do not memoize it
            PdResult::Unknown(_) => {
                memo.remove(&id);
            }
            r => {
                memo.insert(id, PdState::Done(r.clone()));
            }
        }
        Ok(result)
    }

    /// Breadth-first Ω-closure of a set of classes.
    pub fn omega_orbit(&mut self, seeds: &[IsoClassId], class_budget: usize) -> Result<OrbitResult> {
        let mut seen: BTreeSet<IsoClassId> = BTreeSet::new();
        let mut order = Vec::new();
        let mut queue: VecDeque<IsoClassId> = VecDeque::new();
        for &s in seeds {
            if seen.insert(s) {
                order.push(s);
                queue.push_back(s);
            }
        }
        let mut projective = Vec::new();
        while let Some(id) = queue.pop_front() {
            if self.is_projective_class(id) {
                projective.push(id);
                continue;
            }
            if seen.len() > class_budget {
                queue.push_front(id);
                break;
            }
            let children = match self.syzygy_class(id) {
                Ok(c) => c,
                Err(Error::BudgetExceeded(_)) => {
                    queue.push_front(id);
                    break;
                }
                Err(e) => return Err(e),
            };
            for (c, _) in children {
                if seen.insert(c) {
                    order.push(c);
                    queue.push_back(c);
                }
            }
        }
        let frontier: Vec<IsoClassId> = queue.into_iter().collect();
        projective.sort();
        Ok(OrbitResult { reached: order, projective, closed: frontier.is_empty(), frontier })
    }

    /// Ω^n of the simples followed by an orbit closure.
    pub fn syzygy_finite_probe(&mut self, n_shift: usize, class_budget: usize) -> Result<SyzygyFinite> {
        let mut layer: Vec<IsoClassId> = Vec::new();
        for v in 0..self.algebra().vertex_count() {
            let s = self.simple(v);
            layer.push(self.register(&s)?);
        }
        for _ in 0..n_shift {
            let mut next = BTreeSet::new();
            for id in layer {
                match self.syzygy_class(id) {
                    Ok(c) => next.extend(c.into_iter().map(|(i, _)| i)),
                    Err(Error::BudgetExceeded(_)) => return Ok(SyzygyFinite::Open { reached: next.len() }),
                    Err(e) => return Err(e),
                }
            }
            layer = next.into_iter().collect();
        }
        let orbit = self.omega_orbit(&layer, class_budget)?;
        if orbit.closed {
            let mut set = orbit.nonprojective();
            set.sort();
            Ok(SyzygyFinite::Closed(set))
        } else {
            Ok(SyzygyFinite::Open { reached: orbit.reached.len() })
        }
    }
}

/// Session-free helpers matching the module-level operations.
pub fn pd(alg: &std::sync::Arc<BoundAlgebra>, m: &Rep) -> Result<PdResult> {
    Session::with_defaults(alg).pd(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::Session;
    use crate::repmod::testalg::*;
    use crate::repmod::{random_module, Rep};

    #[test]
    fn corner_certifies_infinite_pd() {
        // over the opposite of A with a source vertex v glued in, S0 has
        // ever-growing syzygies but restricts to a nonprojective A-module
        let g = crate::morita::fixtures::remark();
        let c = g.c_op.clone();
        let zero = c.quiver().vertex("0").unwrap();
        let v = c.quiver().vertex("v").unwrap();
        let mut s = Session::with_defaults(&c);
        let corners = s.corners().unwrap().to_vec();
        assert_eq!(corners.len(), 1);
        assert_eq!(corners[0].vertices, vec![zero]);
        assert!(matches!(s.pd(&Rep::simple(&c, zero)).unwrap(), PdResult::InfiniteCertified(InfiniteEvidence::Corner { .. })));
        assert_eq!(s.pd(&Rep::simple(&c, v)).unwrap(), PdResult::Finite(0));
        let phi = s.phi(&Rep::simple(&c, zero)).unwrap();
        assert_eq!(phi.value, 0);
        assert!(phi.is_certified());
    }

    #[test]
    fn corners_need_projective_restrictions() {
        // B is strongly connected and not selfinjective
        assert!(block::selfinjective_corners(&ex_b()).unwrap().is_empty());
        assert!(block::strong_components(&a2()).iter().all(|c| c.len() == 1));
    }

    #[test]
    fn covers() {
        let b = ex_b();
        for v in 0..2 {
            let (p, epi) = projective_cover(&Rep::simple(&b, v));
            assert_eq!(p, Rep::projective(&b, v));
            assert!(epi.is_valid() && epi.is_surjective());
        }
        let rad = Rep::projective(&b, 0).radical().module;
        let (p, _) = projective_cover(&rad);
        assert_eq!(p.dims(), &[3, 3]);
        let p1 = Rep::projective(&b, 0);
        assert!(syzygy(&p1).is_zero());
        assert!(syzygy(&Rep::zero(&b)).is_zero());
    }

    #[test]
    fn syzygies_in_examples() {
        let b = ex_b();
        let mut s = Session::with_defaults(&b);
        let s1 = Rep::simple(&b, 0);
        let s2 = Rep::simple(&b, 1);
        let ids = [s.register(&s1).unwrap(), s.register(&s2).unwrap()];
        for id in ids {
            assert_eq!(s.syzygy_class(id).unwrap(), vec![(ids[0], 1), (ids[1], 1)]);
        }
        let a = a2();
        let om = syzygy(&Rep::simple(&a, 0));
        assert_eq!(om, Rep::projective(&a, 1));
        assert!(syzygy(&om).is_zero());
    }

    #[test]
    fn dimension_identity() {
        for alg in [a2(), ex_b(), ext_a()] {
            for seed in 0..30 {
                let m = random_module(&alg, seed, 10);
                if m.is_zero() {
                    continue;
                }
                let (p, epi) = projective_cover(&m);
                assert!(epi.is_valid());
                let om = syzygy(&m);
                for v in 0..alg.vertex_count() {
                    assert_eq!(om.dim_at(v) + m.dim_at(v), p.dim_at(v));
                }
                // minimality: the kernel sits in the radical of the cover
                let k = epi.kernel();
                let rad = p.radical_rows();
                for v in 0..alg.vertex_count() {
                    assert!(rad[v].contains_rows(k.incl.comp(v)));
                }
            }
        }
    }

    #[test]
    fn projective_dimensions() {
        let a = a2();
        let mut s = Session::with_defaults(&a);
        assert_eq!(s.pd(&Rep::projective(&a, 0)).unwrap(), PdResult::Finite(0));
        assert_eq!(s.pd(&Rep::simple(&a, 0)).unwrap(), PdResult::Finite(1));
        let b = ex_b();
        let mut s = Session::with_defaults(&b);
        assert!(s.pd(&Rep::simple(&b, 0)).unwrap().is_infinite());
    }

    #[test]
    fn orbits() {
        let b = ex_b();
        let mut s = Session::with_defaults(&b);
        let p = [s.register(&Rep::projective(&b, 0)).unwrap(), s.register(&Rep::projective(&b, 1)).unwrap()];
        let o = s.omega_orbit(&p, 100).unwrap();
        assert!(o.closed);
        assert_eq!(o.reached, p.to_vec());
        let ids = [s.register(&Rep::simple(&b, 0)).unwrap(), s.register(&Rep::simple(&b, 1)).unwrap()];
        let o = s.omega_orbit(&ids, 100).unwrap();
        assert!(o.closed);
        assert_eq!(o.nonprojective(), ids.to_vec());
        match s.syzygy_finite_probe(1, 100).unwrap() {
            SyzygyFinite::Closed(set) => assert_eq!(set, ids.to_vec()),
            other => panic!("{other:?}"),
        }

        let a = ext_a();
        let mut s = Session::with_defaults(&a);
        let s0 = s.register(&Rep::simple(&a, 0)).unwrap();
        let o = s.omega_orbit(&[s0], 4).unwrap();
        assert!(!o.closed);
        let dims: Vec<usize> = o.reached.iter().map(|&i| s.representative(i).total_dim()).collect();
        assert!(dims.windows(2).take(3).all(|w| w[0] < w[1]));
        assert!(matches!(s.syzygy_finite_probe(0, 5).unwrap(), SyzygyFinite::Open { .. }));
    }

    #[test]
    fn semisimple_is_syzygy_finite() {
        let q = crate::pathalgebra::Quiver::new(&["1", "2"], &[] as &[(&str, &str, &str)]).unwrap();
        let alg = crate::pathalgebra::build_algebra("k2", q, vec![], 101, 30).unwrap();
        let mut s = Session::with_defaults(&alg);
        assert!(matches!(s.syzygy_finite_probe(1, 10).unwrap(), SyzygyFinite::Closed(v) if v.is_empty()));
    }
}
