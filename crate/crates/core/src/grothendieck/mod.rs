//! K₀ modulo projectives, the syzygy operator Ω̄ on it, and the
//! Igusa-Todorov function φ.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use serde::Serialize;

use crate::decomp::{Decomposition, IsoClassId, Session};
use crate::error::{Error, Result};
use crate::exactfield::IntMatrix;
use crate::repmod::Rep;

/// Integer combination of nonprojective indecomposable classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct K0Vector(BTreeMap<IsoClassId, BigInt>);

impl K0Vector {
    pub fn zero() -> K0Vector {
        K0Vector::default()
    }

    pub fn basis(id: IsoClassId) -> K0Vector {
        K0Vector(BTreeMap::from([(id, BigInt::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, id: IsoClassId) -> BigInt {
        self.0.get(&id).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = IsoClassId> + '_ {
        self.0.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (IsoClassId, &BigInt)> {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn add_scaled(&mut self, id: IsoClassId, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(id).or_default();
        *e += c;
        if e.is_zero() {
            self.0.remove(&id);
        }
    }

    pub fn add(&self, other: &K0Vector) -> K0Vector {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_scaled(i, c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> K0Vector {
        let mut out = K0Vector::zero();
        let c = BigInt::from(c);
        for (i, x) in self.terms() {
            out.add_scaled(i, &(x * &c));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(self.0.iter().map(|(i, c)| (i.to_string(), serde_json::Value::String(c.to_string()))).collect())
    }
}

impl fmt::Display for K0Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(i, c)| if c.is_one() { format!("[{i}]") } else { format!("{c}[{i}]") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Finitely generated subgroup of K₀.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct K0Lattice {
    pub gens: Vec<K0Vector>,
}

impl K0Lattice {
    pub fn new(gens: Vec<K0Vector>) -> K0Lattice {
        K0Lattice { gens: gens.into_iter().filter(|g| !g.is_zero()).collect() }
    }

    /// Union of the supports, sorted.
    pub fn support(&self) -> Vec<IsoClassId> {
        self.gens.iter().flat_map(|g| g.support()).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn matrix_over(&self, support: &[IsoClassId]) -> IntMatrix {
        let rows = self.gens.iter().map(|g| support.iter().map(|&i| g.coeff(i)).collect()).collect();
        IntMatrix::from_rows(rows, support.len())
    }

    pub fn matrix(&self) -> IntMatrix {
        self.matrix_over(&self.support())
    }

    pub fn rank(&self) -> usize {
        self.matrix().lattice_rank()
    }

    pub fn contains(&self, v: &K0Vector) -> bool {
        let mut support = self.support();
        for i in v.support() {
            if !support.contains(&i) {
                return false;
            }
        }
        support.sort();
        let row: Vec<BigInt> = support.iter().map(|&i| v.coeff(i)).collect();
        self.matrix_over(&support).lattice_contains(&row)
    }

    pub fn contains_lattice(&self, other: &K0Lattice) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }
}

/// Why a φ value is exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// Every generator has finite projective dimension; φ is their maximum.
    FinitePd,
    /// The Ω̄-orbit of the generators is a finite set F of classes; `entry`
    /// is the index where ker L^k stabilizes for L = Ω̄|F, after which Ω̄ is
    /// injective on the Fitting part of rank `period`.
    OrbitCycle { entry: usize, period: usize },
    /// The orbit meets a selfinjective block, where Ω̄ permutes classes injectively.
    TheoremSelfinjective,
    RankZero,
    /// A single indecomposable with certified infinite projective dimension:
    /// Ω̄^n of it is never zero, so the rank stays 1.
    InfinitePdIndecomposable,
}

impl Certificate {
    pub fn name(&self) -> &'static str {
        match self {
            Certificate::FinitePd => "FinitePd",
            Certificate::OrbitCycle { .. } => "OrbitCycle",
            Certificate::TheoremSelfinjective => "TheoremSelfinjective",
            Certificate::RankZero => "RankZero",
            Certificate::InfinitePdIndecomposable => "InfinitePdIndecomposable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PhiStatus {
    Certified(Certificate),
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiResult {
    pub value: usize,
    pub status: PhiStatus,
    pub rank_trace: Vec<usize>,
}

impl PhiResult {
    pub fn is_certified(&self) -> bool {
        matches!(self.status, PhiStatus::Certified(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.status {
            PhiStatus::Certified(c) => Some(c),
            PhiStatus::LowerBound => None,
        }
    }

    pub fn status_name(&self) -> &'static str {
        self.certificate().map(|c| c.name()).unwrap_or("LowerBound")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiDim {
    pub value: usize,
    pub certified: bool,
    pub results: Vec<PhiResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EtaCheck {
    Ok { eta: usize, rank: usize },
    Counterexample { eta: usize, rank: usize },
    NotApplicable,
}

/// Index of the last strict drop of a non-increasing sequence (0 if none).
pub fn last_drop(trace: &[usize]) -> usize {
    (1..trace.len()).rev().find(|&i| trace[i] < trace[i - 1]).unwrap_or(0)
}

static TRACES_CHECKED: AtomicU64 = AtomicU64::new(0);
static TRACES_INCREASING: AtomicU64 = AtomicU64::new(0);

fn assert_non_increasing(trace: &[usize]) {
    TRACES_CHECKED.fetch_add(1, Ordering::Relaxed);
    if !trace.windows(2).all(|w| w[0] >= w[1]) {
        TRACES_INCREASING.fetch_add(1, Ordering::Relaxed);
        debug_assert!(false, "rank trace increased: {trace:?}");
    }
}

/// Process-wide count of rank traces computed so far and of those that
/// were not non-increasing.
pub fn trace_monitor() -> (u64, u64) {
    (TRACES_CHECKED.load(Ordering::Relaxed), TRACES_INCREASING.load(Ordering::Relaxed))
}

fn int_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !bk[j].is_zero() {
                    out[i][j] += &a[i][k] * &bk[j];
                }
            }
        }
    }
    out
}

/// Smallest n with rank L^n = rank L^{n+1}, and that rank.
fn fitting_index(l: &[Vec<BigInt>]) -> (usize, usize) {
    let n = l.len();
    let rank = |m: &Vec<Vec<BigInt>>| IntMatrix::from_rows(m.clone(), n).lattice_rank();
    let mut pow: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut r = n;
    for k in 0..=n {
        let next = int_mul(&pow, l);
        let rn = rank(&next);
        if rn == r {
            return (k, r);
        }
        pow = next;
        r = rn;
    }
    (n, r)
}

enum Explore {
    Closed { classes: Vec<IsoClassId>, block_reached: bool },
    Open,
}

impl Session {
    /// [M] in K₀ with projective summands dropped.
    pub fn class_vector(&mut self, m: &Rep) -> Result<K0Vector> {
        let d = self.decompose(m)?;
        Ok(self.vector_of(&d))
    }

    pub fn vector_of(&self, d: &Decomposition) -> K0Vector {
        let mut v = K0Vector::zero();
        for &(id, k) in &d.summands {
            if !self.is_projective_class(id) {
                v.add_scaled(id, &BigInt::from(k));
            }
        }
        v
    }

    pub fn omega_bar(&mut self, v: &K0Vector) -> Result<K0Vector> {
        let mut out = K0Vector::zero();
        for (id, c) in v.terms().map(|(i, c)| (i, c.clone())).collect::<Vec<_>>() {
            for (child, k) in self.syzygy_class(id)? {
                if !self.is_projective_class(child) {
                    out.add_scaled(child, &(&c * BigInt::from(k)));
                }
            }
        }
        Ok(out)
    }

    pub fn omega_bar_lattice(&mut self, g: &K0Lattice) -> Result<K0Lattice> {
        let gens = g.gens.iter().map(|v| self.omega_bar(v)).collect::<Result<Vec<_>>>()?;
        Ok(K0Lattice::new(gens))
    }

    /// ⟨add M⟩: one generator per distinct nonprojective summand class.
    pub fn subgroup_add(&mut self, m: &Rep) -> Result<K0Lattice> {
        let d = self.decompose(m)?;
        Ok(self.subgroup_of(&d))
    }

    pub fn subgroup_of(&self, d: &Decomposition) -> K0Lattice {
        K0Lattice::new(d.ids().filter(|&i| !self.is_projective_class(i)).map(K0Vector::basis).collect())
    }

    /// Ranks of Ω̄^i⟨add M⟩ for i up to the depth budget, stopping once the
    /// rank reaches 0 or a budget is hit.
    pub fn rank_trace(&mut self, m: &Rep, depth_budget: usize) -> Result<Vec<usize>> {
        let g = self.subgroup_add(m)?;
        self.trace_of(&g, depth_budget)
    }

    fn trace_of(&mut self, g: &K0Lattice, depth: usize) -> Result<Vec<usize>> {
        let mut cur = g.clone();
        let mut trace = vec![cur.rank()];
        while trace.len() <= depth && *trace.last().unwrap() > 0 {
            cur = match self.omega_bar_lattice(&cur) {
                Ok(next) => next,
                Err(Error::BudgetExceeded(_)) => break,
                Err(e) => return Err(e),
            };
            trace.push(cur.rank());
        }
        assert_non_increasing(&trace);
        Ok(trace)
    }

    pub fn phi(&mut self, m: &Rep) -> Result<PhiResult> {
        let d = self.decompose(m)?;
        self.phi_of(&d)
    }

    pub fn phi_of(&mut self, d: &Decomposition) -> Result<PhiResult> {
        let gens: Vec<IsoClassId> = d.ids().filter(|&i| !self.is_projective_class(i)).collect();
        self.phi_of_classes(&gens)
    }

    /// φ of the subgroup generated by the given classes.
    pub fn phi_of_classes(&mut self, gens: &[IsoClassId]) -> Result<PhiResult> {
        let depth = self.config.depth_budget;
        let g = K0Lattice::new(gens.iter().copied().filter(|&i| !self.is_projective_class(i)).map(K0Vector::basis).collect());
        if g.gens.is_empty() {
            return Ok(PhiResult { value: 0, status: PhiStatus::Certified(Certificate::RankZero), rank_trace: vec![0] });
        }
        let explored = self.explore_non_block(gens)?;
        let Explore::Closed { classes, block_reached } = explored else {
            let trace = self.trace_of(&g, depth)?;
            let status = if *trace.last().unwrap() == 0 {
                PhiStatus::Certified(Certificate::RankZero)
            } else if self.single_infinite(&g)? {
                PhiStatus::Certified(Certificate::InfinitePdIndecomposable)
            } else {
                PhiStatus::LowerBound
            };
            return Ok(PhiResult { value: last_drop(&trace), status, rank_trace: trace });
        };

        // L = Ω̄ restricted to the non-block part, rows are images
        let pos: BTreeMap<IsoClassId, usize> = classes.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut l = vec![vec![BigInt::zero(); classes.len()]; classes.len()];
        for (k, &id) in classes.iter().enumerate() {
            for (child, mult) in self.syzygy_class(id)? {
                if let Some(&j) = pos.get(&child) {
                    l[k][j] += BigInt::from(mult);
                }
            }
        }
        let (entry, period) = fitting_index(&l);
        if entry + 1 > depth {
            let trace = self.trace_of(&g, depth)?;
            let status = if self.single_infinite(&g)? {
                PhiStatus::Certified(Certificate::InfinitePdIndecomposable)
            } else {
                PhiStatus::LowerBound
            };
            return Ok(PhiResult { value: last_drop(&trace), status, rank_trace: trace });
        }
        let mut cur = g.clone();
        let mut trace = vec![cur.rank()];
        for _ in 0..=entry {
            cur = self.omega_bar_lattice(&cur)?;
            trace.push(cur.rank());
        }
        assert_non_increasing(&trace);
        let value = last_drop(&trace);
        let zero = *trace.last().unwrap() == 0;
        let cert = if zero {
            let mut max_pd = 0;
            let mut all_finite = true;
            for &id in gens {
                match self.pd_class_result(id)? {
                    crate::homology::PdResult::Finite(n) => max_pd = max_pd.max(n),
                    _ => all_finite = false,
                }
            }
            if all_finite {
                assert_eq!(max_pd, value, "φ differs from the finite projective dimension");
                Certificate::FinitePd
            } else {
                Certificate::RankZero
            }
        } else if block_reached {
            Certificate::TheoremSelfinjective
        } else {
            Certificate::OrbitCycle { entry, period }
        };
        Ok(PhiResult { value, status: PhiStatus::Certified(cert), rank_trace: trace })
    }

    fn single_infinite(&mut self, g: &K0Lattice) -> Result<bool> {
        let ids: BTreeSet<IsoClassId> = g.gens.iter().flat_map(|v| v.support()).collect();
        if ids.len() != 1 {
            return Ok(false);
        }
        let id = *ids.iter().next().unwrap();
        Ok(self.pd_class_result(id)?.is_infinite())
    }

    /// Classes reachable from the seeds through Ω̄, not expanding classes of
    /// the selfinjective block.
    fn explore_non_block(&mut self, seeds: &[IsoClassId]) -> Result<Explore> {
        let budget = self.config.class_budget;
        let mut seen: BTreeSet<IsoClassId> = BTreeSet::new();
        let mut out = Vec::new();
        let mut block_reached = false;
        let mut queue: VecDeque<IsoClassId> = seeds.iter().copied().collect();
        while let Some(id) = queue.pop_front() {
            if !seen.insert(id) || self.is_projective_class(id) {
                continue;
            }
            if self.in_block(id)? {
                block_reached = true;
                continue;
            }
            if out.len() >= budget {
                return Ok(Explore::Open);
            }
            out.push(id);
            match self.syzygy_class(id) {
                Ok(children) => queue.extend(children.into_iter().map(|(c, _)| c)),
                Err(Error::BudgetExceeded(_)) => return Ok(Explore::Open),
                Err(e) => return Err(e),
            }
        }
        out.sort();
        Ok(Explore::Closed { classes: out, block_reached })
    }

    /// Supremum of φ over a set of modules.
    pub fn phi_dim_over(&mut self, ms: &[Rep]) -> Result<PhiDim> {
        let mut results = Vec::new();
        for m in ms {
            results.push(self.phi(m)?);
        }
        let value = results.iter().map(|r| r.value).max().unwrap_or(0);
        let certified = results.iter().all(|r| r.is_certified());
        Ok(PhiDim { value, certified, results })
    }

    /// Checks that the Ω̄-stabilization index of an Ω̄-stable lattice is at
    /// most its rank.
    pub fn eta_bound_check(&mut self, g: &K0Lattice) -> Result<EtaCheck> {
        let rank = g.rank();
        if rank == 0 {
            return Ok(EtaCheck::Ok { eta: 0, rank });
        }
        let image = self.omega_bar_lattice(g)?;
        if !g.contains_lattice(&image) {
            return Ok(EtaCheck::NotApplicable);
        }
        // Ω̄ is an endomorphism of g, so ranks are constant from the Fitting index on
        let mut cur = g.clone();
        let mut trace = vec![rank];
        for _ in 0..=rank {
            cur = self.omega_bar_lattice(&cur)?;
            trace.push(cur.rank());
        }
        assert_non_increasing(&trace);
        let eta = last_drop(&trace);
        Ok(if eta <= rank { EtaCheck::Ok { eta, rank } } else { EtaCheck::Counterexample { eta, rank } })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::testalg::*;

    #[test]
    fn vectors_and_omega_bar() {
        let b = ex_b();
        let mut s = Session::with_defaults(&b);
        let s1 = Rep::simple(&b, 0);
        let s2 = Rep::simple(&b, 1);
        let p1 = Rep::projective(&b, 0);
        let i1 = s.register(&s1).unwrap();
        let i2 = s.register(&s2).unwrap();
        assert!(s.class_vector(&p1).unwrap().is_zero());
        assert_eq!(s.class_vector(&Rep::sum_of(&[s1.clone(), s1.clone()])).unwrap(), K0Vector::basis(i1).scale(2));
        assert_eq!(s.class_vector(&Rep::sum_of(&[s1.clone(), p1.clone()])).unwrap(), K0Vector::basis(i1));
        let w = s.omega_bar(&K0Vector::basis(i1)).unwrap();
        assert_eq!(w, K0Vector::basis(i1).add(&K0Vector::basis(i2)));
        assert!(s.omega_bar(&K0Vector::zero()).unwrap().is_zero());

        let a = a2();
        let mut s = Session::with_defaults(&a);
        let v = s.class_vector(&Rep::simple(&a, 0)).unwrap();
        assert!(s.omega_bar(&v).unwrap().is_zero());
    }

    #[test]
    fn subgroups_and_traces() {
        let b = ex_b();
        let mut s = Session::with_defaults(&b);
        let s1 = Rep::simple(&b, 0);
        let s2 = Rep::simple(&b, 1);
        assert_eq!(s.subgroup_add(&Rep::sum_of(&[s1.clone(), s2.clone()])).unwrap().rank(), 2);
        assert_eq!(s.subgroup_add(&s1.power(5)).unwrap().rank(), 1);
        assert_eq!(s.subgroup_add(&Rep::projective(&b, 1)).unwrap().rank(), 0);
        let t = s.rank_trace(&Rep::sum_of(&[s1, s2]), 4).unwrap();
        assert_eq!(t, vec![2, 1, 1, 1, 1]);

        let a = a2();
        let mut s = Session::with_defaults(&a);
        assert_eq!(s.rank_trace(&Rep::simple(&a, 0), 10).unwrap(), vec![1, 0]);
        assert_eq!(s.rank_trace(&Rep::projective(&a, 0), 10).unwrap(), vec![0]);
    }

    #[test]
    fn phi_examples() {
        let b = ex_b();
        let mut s = Session::with_defaults(&b);
        let r = s.phi(&Rep::sum_of(&[Rep::simple(&b, 0), Rep::simple(&b, 1)])).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.rank_trace, vec![2, 1, 1]);
        assert!(matches!(r.status, PhiStatus::Certified(Certificate::OrbitCycle { .. })));

        let a = ext_a();
        let mut s = Session::with_defaults(&a);
        for m in [Rep::simple(&a, 0), Rep::projective(&a, 0).radical().module, Rep::simple(&a, 0).power(2)] {
            let r = s.phi(&m).unwrap();
            assert_eq!(r.value, 0);
            assert_eq!(r.status, PhiStatus::Certified(Certificate::TheoremSelfinjective));
        }

        let a = a2();
        let mut s = Session::with_defaults(&a);
        let r = s.phi(&Rep::simple(&a, 0)).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.status, PhiStatus::Certified(Certificate::FinitePd));
    }

    #[test]
    fn phi_dims() {
        let b = ex_b();
        let mut s = Session::with_defaults(&b);
        let (s1, s2) = (Rep::simple(&b, 0), Rep::simple(&b, 1));
        let d = s.phi_dim_over(&[s1.clone(), s2.clone(), Rep::sum_of(&[s1, s2])]).unwrap();
        assert_eq!((d.value, d.certified), (1, true));
        let ps = [Rep::projective(&b, 0), Rep::projective(&b, 1)];
        assert_eq!(s.phi_dim_over(&ps).unwrap().value, 0);
        let a = a2();
        let mut s = Session::with_defaults(&a);
        assert_eq!(s.phi_dim_over(&[Rep::simple(&a, 0), Rep::simple(&a, 1)]).unwrap().value, 1);
    }

    #[test]
    fn eta_bounds() {
        let b = ex_b();
        let mut s = Session::with_defaults(&b);
        let g = s.subgroup_add(&Rep::sum_of(&[Rep::simple(&b, 0), Rep::simple(&b, 1)])).unwrap();
        assert_eq!(s.eta_bound_check(&g).unwrap(), EtaCheck::Ok { eta: 1, rank: 2 });
        assert_eq!(s.eta_bound_check(&K0Lattice::default()).unwrap(), EtaCheck::Ok { eta: 0, rank: 0 });
        let a = a2();
        let mut s = Session::with_defaults(&a);
        let g = s.subgroup_add(&Rep::simple(&a, 0)).unwrap();
        assert_eq!(s.eta_bound_check(&g).unwrap(), EtaCheck::Ok { eta: 1, rank: 1 });
        // Ω̄[S₁] = [S₁] + [S₂] leaves ⟨[S₁]⟩
        let b = ex_b();
        let mut s = Session::with_defaults(&b);
        let i1 = s.register(&Rep::simple(&b, 0)).unwrap();
        let g = K0Lattice::new(vec![K0Vector::basis(i1)]);
        assert_eq!(s.eta_bound_check(&g).unwrap(), EtaCheck::NotApplicable);
    }

    #[test]
    fn lattice_membership() {
        let v = |pairs: &[(usize, i64)]| {
            let mut x = K0Vector::zero();
            for &(i, c) in pairs {
                x.add_scaled(IsoClassId(i), &BigInt::from(c));
            }
            x
        };
        let g = K0Lattice::new(vec![v(&[(0, 2)]), v(&[(0, 1), (1, 1)])]);
        assert!(g.contains(&v(&[(1, 2)])));
        assert!(!g.contains(&v(&[(1, 1)])));
        assert!(!g.contains(&v(&[(2, 1)])));
    }
}
