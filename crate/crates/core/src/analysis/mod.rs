//! Whole-algebra invariants: global dimension, selfinjectivity, Q^∞, and
//! whether φ⁻¹(0) is additive.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

pub use crate::homology::block::is_selfinjective;

use crate::decomp::{IsoClassId, Session};
use crate::error::{Error, Result};
use crate::exactfield::FpMatrix;
use crate::grothendieck::{PhiResult, PhiStatus};
use crate::homology::{InfiniteEvidence, PdResult};
use crate::pathalgebra::Path;
use crate::repmod::{random_module, Rep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Gldim {
    Finite(usize),
    /// A simple of certified infinite projective dimension.
    Infinite { vertex: usize, evidence: InfiniteEvidence },
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraProfile {
    pub gldim: Gldim,
    pub selfinjective: bool,
    pub pd_simples: Vec<PdResult>,
    /// Vertices whose simple has certified infinite projective dimension.
    pub q_infinity: Vec<usize>,
    pub connected: bool,
    pub successors_closed: Option<bool>,
    /// (v, P_v has simple socle) for v in Q^∞.
    pub simple_socle: Vec<(usize, bool)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AdditiveReason {
    GldimFinite,
    Selfinjective,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    #[serde(skip)]
    pub m1: Rep,
    #[serde(skip)]
    pub m2: Rep,
    pub phi1: PhiResult,
    pub phi2: PhiResult,
    pub phi_sum: PhiResult,
    /// "recipe" for the arrow-into-Q^∞ construction, "search" otherwise.
    pub origin: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub enum AdditivityVerdict {
    ProvenAdditive(AdditiveReason),
    Witness(Box<Witness>),
    Inconclusive { pairs_tried: usize },
}

impl AdditivityVerdict {
    pub fn class_name(&self) -> &'static str {
        match self {
            AdditivityVerdict::ProvenAdditive(_) => "ProvenAdditive",
            AdditivityVerdict::Witness(_) => "Witness",
            AdditivityVerdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum FindimProbe {
    NotApplicable,
    Consistent { checked: usize },
    Counterexample { dims: Vec<usize>, pd: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroItReport {
    pub classes: Vec<IsoClassId>,
    /// Generators taken as the add-closure of their indecomposable summands.
    pub add_closed: bool,
    pub omega_closed: bool,
    /// Classes of syzygies falling outside the candidate.
    pub escaping: Vec<IsoClassId>,
    pub phi_dim_zero: bool,
    pub includes_block: bool,
}

impl ZeroItReport {
    pub fn passes(&self) -> bool {
        self.add_closed && self.omega_closed && self.phi_dim_zero
    }
}

fn is_certified_zero(r: &PhiResult) -> bool {
    r.value == 0 && r.is_certified()
}

impl Session {
    pub fn pd_simples(&mut self) -> Result<Vec<PdResult>> {
        (0..self.algebra().vertex_count())
            .map(|v| {
                let s = self.simple(v);
                self.pd(&s)
            })
            .collect()
    }

    /// gldim as the supremum of pd over the simples.
    pub fn global_dimension(&mut self) -> Result<Gldim> {
        let pds = self.pd_simples()?;
        let mut best = 0;
        let mut unknown = false;
        for (v, r) in pds.into_iter().enumerate() {
            match r {
                PdResult::InfiniteCertified(evidence) => return Ok(Gldim::Infinite { vertex: v, evidence }),
                PdResult::Finite(n) => best = best.max(n),
                PdResult::Unknown(_) => unknown = true,
            }
        }
        Ok(if unknown { Gldim::Unknown } else { Gldim::Finite(best) })
    }

    pub fn q_infinity(&mut self) -> Result<Vec<(usize, PdResult)>> {
        Ok(self.pd_simples()?.into_iter().enumerate().collect())
    }

    /// None when some simple has an undecided projective dimension.
    pub fn successors_closed(&mut self) -> Result<std::result::Result<(), String>> {
        let pds = self.pd_simples()?;
        if pds.iter().any(|r| matches!(r, PdResult::Unknown(_))) {
            return Err(Error::NotDecidable("a simple has unknown projective dimension".into()));
        }
        let q = self.algebra().quiver().clone();
        for a in q.arrows() {
            if pds[a.source].is_infinite() && !pds[a.target].is_infinite() {
                return Ok(Err(a.name.clone()));
            }
        }
        Ok(Ok(()))
    }

    pub fn simple_socle_check(&mut self) -> Result<Vec<(usize, bool)>> {
        let pds = self.pd_simples()?;
        Ok((0..pds.len())
            .filter(|&v| pds[v].is_infinite())
            .map(|v| (v, self.projective(v).socle_dims().iter().sum::<usize>() == 1))
            .collect())
    }

    pub fn profile(&mut self) -> Result<AlgebraProfile> {
        let pd_simples = self.pd_simples()?;
        let q_infinity: Vec<usize> = (0..pd_simples.len()).filter(|&v| pd_simples[v].is_infinite()).collect();
        let successors_closed = match self.successors_closed() {
            Ok(r) => Some(r.is_ok()),
            Err(Error::NotDecidable(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(AlgebraProfile {
            gldim: self.global_dimension()?,
            selfinjective: is_selfinjective(self.algebra())?,
            simple_socle: self.simple_socle_check()?,
            connected: self.algebra().quiver().is_connected(),
            pd_simples,
            q_infinity,
            successors_closed,
        })
    }

    /// Decides additivity of φ⁻¹(0) where a theorem applies, otherwise
    /// searches for M₁, M₂ with φ(M₁) = φ(M₂) = 0 < φ(M₁ ⊕ M₂).
    pub fn phi_zero_probe(&mut self, pair_budget: usize) -> Result<AdditivityVerdict> {
        if let Gldim::Finite(_) = self.global_dimension()? {
            return Ok(AdditivityVerdict::ProvenAdditive(AdditiveReason::GldimFinite));
        }
        if is_selfinjective(self.algebra())? {
            return Ok(AdditivityVerdict::ProvenAdditive(AdditiveReason::Selfinjective));
        }
        let mut tried = 0;
        for (m1, m2) in self.recipe_pairs()? {
            tried += 1;
            if let Some(w) = self.try_pair(&m1, &m2, "recipe")? {
                return Ok(AdditivityVerdict::Witness(Box::new(w)));
            }
        }

        let cands = self.candidate_modules()?;
        // pairs with equal Ω̄ first: they force φ(M₁ ⊕ M₂) ≥ 1
        let mut keyed = Vec::new();
        for m in cands {
            let d = self.decompose(&m)?;
            if d.count() != 1 || self.is_projective_class(d.summands[0].0) {
                continue;
            }
            let om = self.class_vector(&crate::homology::syzygy(&m))?;
            keyed.push((d.summands[0].0, om, m));
        }
        keyed.sort_by_key(|(id, _, _)| *id);
        keyed.dedup_by_key(|(id, _, _)| *id);
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..keyed.len() {
            for j in i + 1..keyed.len() {
                pairs.push((i, j));
            }
        }
        pairs.sort_by_key(|&(i, j)| keyed[i].1 != keyed[j].1);
        for (i, j) in pairs {
            if tried >= pair_budget {
                return Ok(AdditivityVerdict::Inconclusive { pairs_tried: tried });
            }
            tried += 1;
            let (m1, m2) = (keyed[i].2.clone(), keyed[j].2.clone());
            if let Some(w) = self.try_pair(&m1, &m2, "search")? {
                return Ok(AdditivityVerdict::Witness(Box::new(w)));
            }
        }
        let alg = self.algebra().clone();
        while tried < pair_budget {
            tried += 1;
            let s1 = self.rng().gen::<u64>();
            let s2 = self.rng().gen::<u64>();
            let m1 = random_module(&alg, s1, 10);
            let m2 = random_module(&alg, s2, 10);
            let (d1, d2) = (self.decompose(&m1)?, self.decompose(&m2)?);
            if d1.count() != 1 || d2.count() != 1 {
                continue;
            }
            if let Some(w) = self.try_pair(&m1, &m2, "search")? {
                return Ok(AdditivityVerdict::Witness(Box::new(w)));
            }
        }
        Ok(AdditivityVerdict::Inconclusive { pairs_tried: tried })
    }

    /// The construction M₁ = P_{v₀}/S_{w₁}, M₂ = P_{w₂}/S_{w₁} along an arrow
    /// v₀ → w₀ from a finite-pd vertex into Q^∞.
    fn recipe_pairs(&mut self) -> Result<Vec<(Rep, Rep)>> {
        let pds = self.pd_simples()?;
        let q = self.algebra().quiver().clone();
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for a in q.arrows() {
            let (v0, w0) = (a.source, a.target);
            if !pds[v0].is_finite() || !pds[w0].is_infinite() {
                continue;
            }
            let soc = self.projective(v0).socle_dims();
            for w1 in 0..soc.len() {
                if soc[w1] == 0 || !pds[w1].is_infinite() {
                    continue;
                }
                for w2 in 0..pds.len() {
                    let s2 = self.projective(w2).socle_dims();
                    if !pds[w2].is_infinite() || s2.iter().sum::<usize>() != 1 || s2[w1] != 1 {
                        continue;
                    }
                    if seen.insert((v0, w1, w2)) {
                        let m1 = quotient_by_socle_vector(self.projective(v0), w1, 0)?;
                        let m2 = quotient_by_socle_vector(self.projective(w2), w1, 0)?;
                        out.push((m1, m2));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Simples and quotients of projectives by socle pieces.
    fn candidate_modules(&mut self) -> Result<Vec<Rep>> {
        let n = self.algebra().vertex_count();
        let mut out: Vec<Rep> = (0..n).map(|v| self.simple(v)).collect();
        for v in 0..n {
            let p = self.projective(v).clone();
            let soc = p.socle_rows();
            for w in 0..n {
                for k in 0..soc[w].rows() {
                    out.push(quotient_by_socle_vector(&p, w, k)?);
                }
                if soc[w].rows() > 1 {
                    let rows: Vec<FpMatrix> =
                        (0..n).map(|u| if u == w { soc[w].clone() } else { FpMatrix::zeros(0, p.dim_at(u), p.prime()) }).collect();
                    out.push(p.quotient_by_rows(&rows)?.0);
                }
            }
            if soc.iter().map(|s| s.rows()).sum::<usize>() > 1 {
                out.push(p.quotient_by_rows(&soc)?.0);
            }
            out.extend(arrow_quotients(&p, v)?);
        }
        Ok(out)
    }

    fn try_pair(&mut self, m1: &Rep, m2: &Rep, origin: &'static str) -> Result<Option<Witness>> {
        if self.decompose(m1)?.count() != 1 || self.decompose(m2)?.count() != 1 {
            return Ok(None);
        }
        if self.lookup(m1).is_some() && self.lookup(m1) == self.lookup(m2) {
            return Ok(None);
        }
        let phi1 = self.phi(m1)?;
        if !is_certified_zero(&phi1) {
            return Ok(None);
        }
        let phi2 = self.phi(m2)?;
        if !is_certified_zero(&phi2) {
            return Ok(None);
        }
        let phi_sum = self.phi(&Rep::sum_of(&[m1.clone(), m2.clone()]))?;
        // a lower bound of at least 1 already breaks additivity
        if phi_sum.value >= 1 {
            return Ok(Some(Witness { m1: m1.clone(), m2: m2.clone(), phi1, phi2, phi_sum, origin }));
        }
        Ok(None)
    }

    /// Looks for a module of finite positive projective dimension.
    pub fn findim_zero_probe(&mut self, samples: usize, size_bound: usize) -> Result<FindimProbe> {
        let pds = self.pd_simples()?;
        if !pds.iter().all(|r| r.is_infinite()) {
            return Ok(FindimProbe::NotApplicable);
        }
        let alg = self.algebra().clone();
        for _ in 0..samples {
            let seed = self.rng().gen::<u64>();
            let m = random_module(&alg, seed, size_bound);
            if let PdResult::Finite(n) = self.pd(&m)? {
                if n > 0 {
                    return Ok(FindimProbe::Counterexample { dims: m.dims().to_vec(), pd: n });
                }
            }
        }
        Ok(FindimProbe::Consistent { checked: samples })
    }

    /// Checks the 0-Igusa-Todorov axioms for add of the given modules,
    /// optionally together with all modules over the selfinjective block.
    pub fn zero_it_check(&mut self, ms: &[Rep], include_block: bool) -> Result<ZeroItReport> {
        let mut classes = BTreeSet::new();
        for m in ms {
            for id in self.decompose(m)?.ids() {
                if !self.is_projective_class(id) {
                    classes.insert(id);
                }
            }
        }
        let classes: Vec<IsoClassId> = classes.into_iter().collect();
        let member = |s: &mut Session, id: IsoClassId| -> Result<bool> {
            Ok(s.is_projective_class(id) || classes.contains(&id) || (include_block && s.in_block(id)?))
        };
        // generators outside the block carry the whole injectivity question
        let mut free = Vec::new();
        for &id in &classes {
            if !(include_block && self.in_block(id)?) {
                free.push(id);
            }
        }
        let mut escaping = Vec::new();
        let mut rows = Vec::new();
        for &id in &free {
            let children = self.syzygy_class(id)?;
            let mut row = vec![num_bigint::BigInt::from(0); free.len()];
            for (c, k) in children {
                if !member(self, c)? {
                    escaping.push(c);
                }
                if let Some(j) = free.iter().position(|&x| x == c) {
                    row[j] += k;
                }
            }
            rows.push(row);
        }
        escaping.sort();
        escaping.dedup();
        let omega_closed = escaping.is_empty();
        // Ω̄ maps block classes bijectively onto block classes, so injectivity
        // on ⟨𝒟⟩ reduces to the free part of the images of free generators
        let phi_dim_zero = if !omega_closed {
            false
        } else if include_block {
            crate::exactfield::IntMatrix::from_rows(rows, free.len()).lattice_rank() == free.len()
        } else {
            let r = self.phi_of_classes(&classes)?;
            r.value == 0 && matches!(r.status, PhiStatus::Certified(_))
        };
        Ok(ZeroItReport { classes, add_closed: true, omega_closed, escaping, phi_dim_zero, includes_block: include_block })
    }
}

/// P / ⟨x⟩ for the k-th socle basis vector x at vertex w.
/// P_v divided by the submodule generated by a proper nonempty set of the
/// arrows leaving v (at most six arrows are used).
pub fn arrow_quotients(p: &Rep, v: usize) -> Result<Vec<Rep>> {
    let alg = p.algebra();
    let q = alg.quiver();
    let arrows: Vec<usize> = q.arrows_from(v).take(6).collect();
    let elems: Vec<(usize, Vec<u32>)> = arrows
        .iter()
        .map(|&a| {
            let t = q.arrow(a).target;
            let cols = alg.paths_between(v, t);
            let mut x = vec![0u32; cols.len()];
            for (b, c) in alg.normal_form_path(&Path { start: v, arrows: vec![a] }) {
                if let Some(k) = cols.iter().position(|&y| y == b) {
                    x[k] = c;
                }
            }
            (t, x)
        })
        .collect();
    let mut out = Vec::new();
    for mask in 1..(1u32 << arrows.len()) - 1 {
        let chosen: Vec<_> = (0..arrows.len()).filter(|i| mask >> i & 1 == 1).map(|i| elems[i].clone()).collect();
        out.push(p.quotient_by_rows(&p.generated_rows(&chosen))?.0);
    }
    Ok(out)
}

pub fn quotient_by_socle_vector(p: &Rep, w: usize, k: usize) -> Result<Rep> {
    let soc = p.socle_rows();
    let rows: Vec<FpMatrix> = (0..p.dims().len())
        .map(|u| if u == w { soc[w].select_rows(&[k]) } else { FpMatrix::zeros(0, p.dim_at(u), p.prime()) })
        .collect();
    Ok(p.quotient_by_rows(&rows)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morita::fixtures::*;
    use crate::repmod::testalg::*;

    #[test]
    fn global_dimensions() {
        let mut s = Session::with_defaults(&a2());
        assert_eq!(s.global_dimension().unwrap(), Gldim::Finite(1));
        let mut s = Session::with_defaults(&ex_b());
        assert!(matches!(s.global_dimension().unwrap(), Gldim::Infinite { vertex: 0, .. }));
        let q = crate::pathalgebra::Quiver::new(&["1", "2"], &[] as &[(&str, &str, &str)]).unwrap();
        let k2 = crate::pathalgebra::build_algebra("k2", q, vec![], 101, 30).unwrap();
        assert_eq!(Session::with_defaults(&k2).global_dimension().unwrap(), Gldim::Finite(0));
    }

    #[test]
    fn q_infinity_and_corollaries() {
        let mut s = Session::with_defaults(&a2());
        assert!(s.profile().unwrap().q_infinity.is_empty());
        let mut s = Session::with_defaults(&ex_b());
        let p = s.profile().unwrap();
        assert_eq!(p.q_infinity, vec![0, 1]);
        assert_eq!(p.successors_closed, Some(true));
        assert_eq!(p.simple_socle, vec![(0, false), (1, false)]);
        let r = remark();
        let mut s = Session::with_defaults(&r.c);
        let p = s.profile().unwrap();
        assert_eq!(p.q_infinity, vec![0]);
        assert_eq!(p.pd_simples[1], PdResult::Finite(1));
        assert_eq!(p.successors_closed, Some(true));
        assert_eq!(p.simple_socle, vec![(0, true)]);
    }

    #[test]
    fn additivity() {
        let mut s = Session::with_defaults(&a2());
        assert!(matches!(s.phi_zero_probe(50).unwrap(), AdditivityVerdict::ProvenAdditive(AdditiveReason::GldimFinite)));
        let mut s = Session::with_defaults(&ext_a());
        assert!(matches!(s.phi_zero_probe(50).unwrap(), AdditivityVerdict::ProvenAdditive(AdditiveReason::Selfinjective)));
        let r = remark();
        let mut s = Session::with_defaults(&r.c);
        match s.phi_zero_probe(50).unwrap() {
            AdditivityVerdict::Witness(w) => {
                assert_eq!(w.origin, "recipe");
                assert_eq!(w.phi_sum.value, 1);
                assert_eq!(w.m1.dims(), &[7, 1]);
                assert_eq!(w.m2.dims(), &[7, 0]);
            }
            other => panic!("{other:?}"),
        }
        let mut s = Session::with_defaults(&ex_b());
        assert!(matches!(s.phi_zero_probe(50).unwrap(), AdditivityVerdict::Witness(_)));
    }

    #[test]
    fn findim_probe() {
        let mut s = Session::with_defaults(&a2());
        assert!(matches!(s.findim_zero_probe(10, 6).unwrap(), FindimProbe::NotApplicable));
        let mut s = Session::with_defaults(&ex_b());
        assert!(matches!(s.findim_zero_probe(30, 8).unwrap(), FindimProbe::Consistent { .. }));
    }

    #[test]
    fn zero_it() {
        let b = ex_b();
        let mut s = Session::with_defaults(&b);
        let ps: Vec<Rep> = (0..2).map(|v| Rep::projective(&b, v)).collect();
        assert!(s.zero_it_check(&ps, false).unwrap().passes());
        let r = s.zero_it_check(&[Rep::simple(&b, 0)], false).unwrap();
        assert!(!r.omega_closed);

        let g = ex_c_op();
        let mut s = Session::with_defaults(&g.c);
        let a_side = [Rep::simple(&g.c, 0), Rep::projective(&g.c, 0).radical().module];
        let r = s.zero_it_check(&a_side, true).unwrap();
        assert!(r.passes());
        // with S₁, S₂ added, S₁ ⊕ S₂ ⊕ Ω⁻¹S₀ has φ ≥ 1
        let mut more = a_side.to_vec();
        more.push(Rep::simple(&g.c, 1));
        more.push(Rep::simple(&g.c, 2));
        let r = s.zero_it_check(&more, true).unwrap();
        assert!(r.omega_closed && !r.phi_dim_zero);
    }
}
