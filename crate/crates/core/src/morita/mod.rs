//! Morita-context gluings C of two bound quiver algebras A and B along
//! connector arrows α_j: A → B and β_k: B → A.

mod classify;
mod glued;

use std::sync::Arc;

use serde::Serialize;

pub use classify::{classify_gluing, ClassificationReport, Conclusion, Fact, FactKind, Provenance, Side};
pub use glued::{FValue, GluedSession, H4Form, H4Result, SplitReport};

use crate::error::{Error, Result};
use crate::exactfield::FpMatrix;
use crate::pathalgebra::{build_algebra, BoundAlgebra, Path, Quiver, Relation};
use crate::repmod::{Rep, RepMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connector {
    pub name: String,
    pub source: String,
    pub target: String,
}

impl Connector {
    pub fn new(name: &str, source: &str, target: &str) -> Connector {
        Connector { name: name.into(), source: source.into(), target: target.into() }
    }
}

/// A relation written with arrow names: signed coefficients on arrow paths.
pub type NamedRelation = Vec<(i64, Vec<String>)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealMode {
    /// I_C is exactly the ideal generated in H3.
    Generated,
    /// The generated ideal plus extra relations.
    Extended(Vec<NamedRelation>),
}

#[derive(Clone, Debug)]
pub struct GluingSpec {
    pub name: String,
    pub a: Arc<BoundAlgebra>,
    pub b: Arc<BoundAlgebra>,
    pub alphas: Vec<Connector>,
    pub betas: Vec<Connector>,
    pub mode: IdealMode,
}

/// Which of the structural hypotheses of the gluing propositions hold.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PatternFlags {
    pub j_empty: bool,
    pub k_empty: bool,
    pub generated: bool,
    /// s(α_j) ≠ t(β_k) and s(β_k) ≠ t(α_j) for all j, k.
    pub disjoint_endpoints: bool,
}

#[derive(Clone, Debug)]
pub struct GluedAlgebra {
    pub c: Arc<BoundAlgebra>,
    pub a: Arc<BoundAlgebra>,
    pub b: Arc<BoundAlgebra>,
    pub c_op: Arc<BoundAlgebra>,
    pub a_op: Arc<BoundAlgebra>,
    pub b_op: Arc<BoundAlgebra>,
    /// C-vertex of each A-vertex (A first, then B).
    pub a_vertices: Vec<usize>,
    pub b_vertices: Vec<usize>,
    /// C-arrow ids.
    pub a_arrows: Vec<usize>,
    pub b_arrows: Vec<usize>,
    pub alphas: Vec<usize>,
    pub betas: Vec<usize>,
    /// ∂A: A-vertices sourcing an α_j; ∂B: B-vertices sourcing a β_k (C-vertex ids).
    pub boundary_a: Vec<usize>,
    pub boundary_b: Vec<usize>,
    /// Vertices whose simples form 𝒯: sources of connectors.
    pub t_set: Vec<usize>,
    pub flags: PatternFlags,
}

fn named_path(q: &Quiver, names: &[String]) -> Result<Path> {
    let ids = names
        .iter()
        .map(|n| q.arrow_id(n).ok_or_else(|| Error::MalformedRelation(format!("unknown arrow {n}"))))
        .collect::<Result<Vec<_>>>()?;
    if ids.is_empty() {
        return Err(Error::MalformedRelation("relation term without arrows".into()));
    }
    Path::from_arrows(q, ids)
}

fn dedup(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Builds C and checks H1–H3.
pub fn glue(spec: &GluingSpec) -> Result<GluedAlgebra> {
    let (a, b) = (&spec.a, &spec.b);
    if a.prime() != b.prime() {
        return Err(Error::Input(format!("fields differ: {} and {}", a.prime(), b.prime())));
    }
    let p = a.prime();
    let (qa, qb) = (a.quiver(), b.quiver());
    let mut q = Quiver::new::<&str>(&[], &[])?;
    for name in qa.vertex_names().iter().chain(qb.vertex_names()) {
        q.add_vertex(name)?;
    }
    let na = qa.vertex_count();
    let a_vertices: Vec<usize> = (0..na).collect();
    let b_vertices: Vec<usize> = (na..na + qb.vertex_count()).collect();
    let mut a_arrows = Vec::new();
    for ar in qa.arrows() {
        a_arrows.push(q.add_arrow(&ar.name, qa.vertex_name(ar.source), qa.vertex_name(ar.target))?);
    }
    let mut b_arrows = Vec::new();
    for ar in qb.arrows() {
        b_arrows.push(q.add_arrow(&ar.name, qb.vertex_name(ar.source), qb.vertex_name(ar.target))?);
    }
    let side_of = |q: &Quiver, v: &str| q.vertex(v).map(|i| i < na);
    let mut alphas = Vec::new();
    for c in &spec.alphas {
        if side_of(&q, &c.source) != Some(true) || side_of(&q, &c.target) != Some(false) {
            return Err(Error::InvalidQuiver(format!("connector {} must go from A to B", c.name)));
        }
        alphas.push(q.add_arrow(&c.name, &c.source, &c.target)?);
    }
    let mut betas = Vec::new();
    for c in &spec.betas {
        if side_of(&q, &c.source) != Some(false) || side_of(&q, &c.target) != Some(true) {
            return Err(Error::InvalidQuiver(format!("connector {} must go from B to A", c.name)));
        }
        betas.push(q.add_arrow(&c.name, &c.source, &c.target)?);
    }

    let mut rels: Vec<Relation> = Vec::new();
    let shift = |r: &Relation, arrows: &[usize], voff: usize| Relation {
        terms: r
            .terms
            .iter()
            .map(|(c, w)| (*c, Path { start: w.start + voff, arrows: w.arrows.iter().map(|x| arrows[*x]).collect() }))
            .collect(),
    };
    rels.extend(a.relations().iter().map(|r| shift(r, &a_arrows, 0)));
    rels.extend(b.relations().iter().map(|r| shift(r, &b_arrows, na)));
    let generated = generated_monomials(&q, &a_arrows, &b_arrows, &alphas, &betas);
    rels.extend(generated.iter().map(|w| Relation::new(vec![(1, w.clone())])));
    if let IdealMode::Extended(extra) = &spec.mode {
        for r in extra {
            let terms = r
                .iter()
                .map(|(c, names)| Ok((crate::exactfield::reduce_i64(*c, p), named_path(&q, names)?)))
                .collect::<Result<Vec<_>>>()?;
            rels.push(Relation::new(terms));
        }
    }
    let c = build_algebra(&spec.name, q, rels, p, a.truncation().max(b.truncation()))?;
    for w in &generated {
        if !c.normal_form_path(w).is_empty() {
            return Err(Error::H3Violation(w.display(c.quiver())));
        }
    }

    let qc = c.quiver();
    let mut boundary_a: Vec<usize> = alphas.iter().map(|&x| qc.arrow(x).source).collect();
    let mut boundary_b: Vec<usize> = betas.iter().map(|&x| qc.arrow(x).source).collect();
    boundary_a.sort();
    boundary_a.dedup();
    boundary_b.sort();
    boundary_b.dedup();
    let mut t_set: Vec<usize> = boundary_a.iter().chain(&boundary_b).copied().collect();
    t_set.sort();
    let disjoint_endpoints = alphas.iter().all(|&x| {
        betas.iter().all(|&y| qc.arrow(x).source != qc.arrow(y).target && qc.arrow(y).source != qc.arrow(x).target)
    });
    let flags = PatternFlags {
        j_empty: alphas.is_empty(),
        k_empty: betas.is_empty(),
        generated: spec.mode == IdealMode::Generated,
        disjoint_endpoints,
    };
    Ok(GluedAlgebra {
        c_op: Arc::new(c.opposite()?),
        a_op: Arc::new(a.opposite()?),
        b_op: Arc::new(b.opposite()?),
        c,
        a: a.clone(),
        b: b.clone(),
        a_vertices,
        b_vertices,
        a_arrows,
        b_arrows,
        alphas,
        betas,
        boundary_a,
        boundary_b,
        t_set,
        flags,
    })
}

/// The composable monomials αα_j, ββ_k, α_jβ_k, β_kα_j of H3.
fn generated_monomials(q: &Quiver, a_arrows: &[usize], b_arrows: &[usize], alphas: &[usize], betas: &[usize]) -> Vec<Path> {
    let mut out = Vec::new();
    let mut pairs = |firsts: &[usize], seconds: &[usize]| {
        for &x in firsts {
            for &y in seconds {
                if q.arrow(x).target == q.arrow(y).source {
                    out.push(Path { start: q.arrow(x).source, arrows: vec![x, y] });
                }
            }
        }
    };
    pairs(a_arrows, alphas);
    pairs(b_arrows, betas);
    pairs(alphas, betas);
    pairs(betas, alphas);
    out
}

impl GluedAlgebra {
    /// The same gluing read over C^op: every algebra replaced by its
    /// opposite, the reversed β_k now running A → B and the α_j B → A.
    pub fn opposite_view(&self) -> GluedAlgebra {
        let mut g = self.clone();
        std::mem::swap(&mut g.c, &mut g.c_op);
        std::mem::swap(&mut g.a, &mut g.a_op);
        std::mem::swap(&mut g.b, &mut g.b_op);
        std::mem::swap(&mut g.alphas, &mut g.betas);
        std::mem::swap(&mut g.flags.j_empty, &mut g.flags.k_empty);
        let qc = g.c.quiver();
        g.boundary_a = dedup(g.alphas.iter().map(|&k| qc.arrow(k).source));
        g.boundary_b = dedup(g.betas.iter().map(|&k| qc.arrow(k).source));
        g.t_set = dedup(g.boundary_a.iter().chain(&g.boundary_b).copied());
        g
    }

    pub fn is_a_vertex(&self, v: usize) -> bool {
        v < self.a_vertices.len()
    }

    pub fn side_dims(&self, dims: &[usize]) -> (bool, bool) {
        let na = self.a_vertices.len();
        (dims[..na].iter().any(|&d| d > 0), dims[na..].iter().any(|&d| d > 0))
    }

    fn restrict(m: &Rep, alg: &Arc<BoundAlgebra>, vertices: &[usize], arrows: &[usize]) -> Result<Rep> {
        let dims = vertices.iter().map(|&v| m.dim_at(v)).collect();
        let maps = arrows.iter().map(|&x| m.map(x).clone()).collect();
        Rep::new(alg, dims, maps)
    }

    /// Π_A: restriction to the A-side.
    pub fn pi_a(&self, m: &Rep) -> Result<Rep> {
        Self::restrict(m, &self.a, &self.a_vertices, &self.a_arrows)
    }

    pub fn pi_b(&self, m: &Rep) -> Result<Rep> {
        Self::restrict(m, &self.b, &self.b_vertices, &self.b_arrows)
    }

    /// Π_A on C^op-modules, landing in mod A^op.
    pub fn pi_a_op(&self, m: &Rep) -> Result<Rep> {
        Self::restrict(m, &self.a_op, &self.a_vertices, &self.a_arrows)
    }

    pub fn pi_b_op(&self, m: &Rep) -> Result<Rep> {
        Self::restrict(m, &self.b_op, &self.b_vertices, &self.b_arrows)
    }

    pub fn pi_a_map(&self, f: &RepMap) -> Result<RepMap> {
        let s = self.pi_a(f.source())?;
        let t = self.pi_a(f.target())?;
        RepMap::new(&s, &t, self.a_vertices.iter().map(|&v| f.comp(v).clone()).collect())
    }

    pub fn pi_b_map(&self, f: &RepMap) -> Result<RepMap> {
        let s = self.pi_b(f.source())?;
        let t = self.pi_b(f.target())?;
        RepMap::new(&s, &t, self.b_vertices.iter().map(|&v| f.comp(v).clone()).collect())
    }

    fn extend(&self, m: &Rep, alg: &Arc<BoundAlgebra>, vertices: &[usize], arrows: &[usize]) -> Result<Rep> {
        let qc = alg.quiver();
        let mut dims = vec![0; qc.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            dims[v] = m.dim_at(i);
        }
        let p = alg.prime();
        let mut maps: Vec<FpMatrix> =
            qc.arrows().iter().map(|ar| FpMatrix::zeros(dims[ar.source], dims[ar.target], p)).collect();
        for (i, &x) in arrows.iter().enumerate() {
            maps[x] = m.map(i).clone();
        }
        Rep::new(alg, dims, maps)
    }

    /// An A-module viewed as a C-module (zero on B and the connectors).
    pub fn lift_a(&self, m: &Rep) -> Result<Rep> {
        self.extend(m, &self.c, &self.a_vertices, &self.a_arrows)
    }

    pub fn lift_b(&self, m: &Rep) -> Result<Rep> {
        self.extend(m, &self.c, &self.b_vertices, &self.b_arrows)
    }

    pub fn lift_a_op(&self, m: &Rep) -> Result<Rep> {
        self.extend(m, &self.c_op, &self.a_vertices, &self.a_arrows)
    }

    pub fn lift_b_op(&self, m: &Rep) -> Result<Rep> {
        self.extend(m, &self.c_op, &self.b_vertices, &self.b_arrows)
    }

    /// G_A: mod A^op → mod C^op. On a B-vertex i the space is the sum of
    /// M_{t(β_k)} over the β_k leaving i in C, and the reversed β_k includes
    /// M_{t(β_k)} as its own block.
    pub fn g_a(&self, m: &Rep) -> Result<Rep> {
        self.g_side(m, &self.a_vertices, &self.a_arrows, &self.betas)
    }

    /// G_B: mod B^op → mod C^op, built on the α_j.
    pub fn g_b(&self, m: &Rep) -> Result<Rep> {
        self.g_side(m, &self.b_vertices, &self.b_arrows, &self.alphas)
    }

    /// G_A on morphisms of A^op-modules.
    pub fn g_a_map(&self, f: &RepMap) -> Result<RepMap> {
        self.g_side_map(f, &self.a_vertices, &self.a_arrows, &self.betas)
    }

    pub fn g_b_map(&self, f: &RepMap) -> Result<RepMap> {
        self.g_side_map(f, &self.b_vertices, &self.b_arrows, &self.alphas)
    }

    fn g_side_map(&self, f: &RepMap, vertices: &[usize], arrows: &[usize], connectors: &[usize]) -> Result<RepMap> {
        let gs = self.g_side(f.source(), vertices, arrows, connectors)?;
        let gt = self.g_side(f.target(), vertices, arrows, connectors)?;
        let qc = self.c.quiver();
        let p = self.c.prime();
        let local = |v: usize| vertices.iter().position(|&x| x == v).unwrap();
        let mut comps: Vec<FpMatrix> =
            (0..qc.vertex_count()).map(|v| FpMatrix::zeros(gs.dim_at(v), gt.dim_at(v), p)).collect();
        for (i, &v) in vertices.iter().enumerate() {
            comps[v] = f.comp(i).clone();
        }
        let (mut ro, mut co) = (vec![0; qc.vertex_count()], vec![0; qc.vertex_count()]);
        for (i, &v) in vertices.iter().enumerate() {
            ro[v] = f.source().dim_at(i);
            co[v] = f.target().dim_at(i);
        }
        for &k in connectors {
            let (s, t) = (qc.arrow(k).source, qc.arrow(k).target);
            let block = f.comp(local(t));
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    comps[s].set(ro[s] + r, co[s] + c, block.get(r, c));
                }
            }
            ro[s] += block.rows();
            co[s] += block.cols();
        }
        RepMap::new(&gs, &gt, comps)
    }

    fn g_side(&self, m: &Rep, vertices: &[usize], arrows: &[usize], connectors: &[usize]) -> Result<Rep> {
        let qc = self.c.quiver();
        let p = self.c.prime();
        let local = |v: usize| vertices.iter().position(|&x| x == v).unwrap();
        let mut dims = vec![0; qc.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            dims[v] = m.dim_at(i);
        }
        // block offset of each connector inside the space at its C-source
        let mut offset = vec![0; qc.arrow_count()];
        for &k in connectors {
            let (s, t) = (qc.arrow(k).source, qc.arrow(k).target);
            offset[k] = dims[s];
            dims[s] += m.dim_at(local(t));
        }
        // arrows of C^op run target → source of the C arrows
        let mut maps: Vec<FpMatrix> =
            qc.arrows().iter().map(|ar| FpMatrix::zeros(dims[ar.target], dims[ar.source], p)).collect();
        for (i, &x) in arrows.iter().enumerate() {
            maps[x] = m.map(i).clone();
        }
        for &k in connectors {
            let (s, t) = (qc.arrow(k).source, qc.arrow(k).target);
            let d = m.dim_at(local(t));
            let mut e = FpMatrix::zeros(d, dims[s], p);
            for r in 0..d {
                e.set(r, offset[k] + r, 1);
            }
            maps[k] = e;
        }
        Rep::new_bound(&self.c_op, dims, maps).map_err(|e| match e {
            Error::Input(msg) => Error::ModeError(format!("G functor image violates the relations of C^op: {msg}")),
            other => other,
        })
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::repmod::testalg::*;

    fn single_vertex() -> Arc<BoundAlgebra> {
        let q = Quiver::new(&["v"], &[] as &[(&str, &str, &str)]).unwrap();
        build_algebra("k", q, vec![], 101, 30).unwrap()
    }

    fn rel(pairs: &[&str]) -> NamedRelation {
        vec![(1, pairs.iter().map(|s| s.to_string()).collect())]
    }

    /// α₀: 0 → 1, I_C = ⟨I_A, J²_B, λα₀, α₀λ⟩.
    pub fn ex_c() -> GluedAlgebra {
        glue(&GluingSpec {
            name: "C".into(),
            a: ext_a(),
            b: ex_b(),
            alphas: vec![Connector::new("al0", "0", "1")],
            betas: vec![],
            mode: IdealMode::Extended(vec![rel(&["al0", "bb1"]), rel(&["al0", "b1"])]),
        })
        .unwrap()
    }

    /// α₀: 1 → 0 as a B → A connector, I = ⟨I_A, J²_B, λα₀, α₀λ⟩.
    pub fn ex_c_op() -> GluedAlgebra {
        glue(&GluingSpec {
            name: "Cop".into(),
            a: ext_a(),
            b: ex_b(),
            alphas: vec![],
            betas: vec![Connector::new("al0", "1", "0")],
            mode: IdealMode::Extended(vec![rel(&["al0", "g1"]), rel(&["al0", "g2"]), rel(&["al0", "g3"])]),
        })
        .unwrap()
    }

    /// A and one extra vertex v with β: v → 0, I_C = ⟨I_A⟩.
    pub fn remark() -> GluedAlgebra {
        glue(&GluingSpec {
            name: "Cv".into(),
            a: ext_a(),
            b: single_vertex(),
            alphas: vec![],
            betas: vec![Connector::new("be", "v", "0")],
            mode: IdealMode::Generated,
        })
        .unwrap()
    }

    pub fn no_connectors() -> GluedAlgebra {
        let q = Quiver::new(&["p", "q"], &[("a", "p", "q")]).unwrap();
        let a = build_algebra("A2", q, vec![], 101, 30).unwrap();
        glue(&GluingSpec { name: "AxB".into(), a, b: ex_b(), alphas: vec![], betas: vec![], mode: IdealMode::Generated }).unwrap()
    }

    /// Two radical square zero algebras joined both ways, generated ideal.
    pub fn rad_square_zero_pair() -> GluedAlgebra {
        let q = Quiver::new(&["x"], &[("l", "x", "x")]).unwrap();
        let r = Relation::new(vec![(1, Path { start: 0, arrows: vec![0, 0] })]);
        let a = build_algebra("L", q, vec![r], 101, 30).unwrap();
        glue(&GluingSpec {
            name: "LB".into(),
            a,
            b: ex_b(),
            alphas: vec![Connector::new("u", "x", "1")],
            betas: vec![Connector::new("w", "2", "x")],
            mode: IdealMode::Generated,
        })
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::decomp::Session;
    use crate::homology::syzygy;
    use crate::repmod::random_module;

    #[test]
    fn glued_dimensions() {
        let c = ex_c();
        assert_eq!(c.c.vertex_count(), 3);
        // P_0 = A plus α₀; P_1, P_2 as over B
        assert_eq!(Rep::projective(&c.c, 0).dims(), &[8, 1, 0]);
        assert_eq!(Rep::projective(&c.c, 1).dims(), &[0, 2, 1]);
        assert_eq!(c.boundary_a, vec![0]);
        assert!(c.boundary_b.is_empty());
        assert_eq!(c.t_set, vec![0]);
        assert!(!c.flags.generated && c.flags.k_empty);

        let r = remark();
        assert_eq!(Rep::projective(&r.c, 1).dims(), &[8, 1]);
        let om = syzygy(&Rep::simple(&r.c, 1));
        assert_eq!(om, Rep::projective(&r.c, 0));

        let n = no_connectors();
        for v in 0..n.c.vertex_count() {
            let pv = Rep::projective(&n.c, v);
            if n.is_a_vertex(v) {
                assert_eq!(n.pi_a(&pv).unwrap(), Rep::projective(&n.a, v));
                assert!(n.pi_b(&pv).unwrap().is_zero());
            } else {
                assert_eq!(n.pi_b(&pv).unwrap(), Rep::projective(&n.b, v - 2));
            }
        }
    }

    #[test]
    fn bad_connectors_rejected() {
        // connector names must be fresh and connectors must cross sides
        let spec = GluingSpec {
            name: "bad".into(),
            a: crate::repmod::testalg::ext_a(),
            b: crate::repmod::testalg::ex_b(),
            alphas: vec![Connector::new("g1", "0", "1")],
            betas: vec![],
            mode: IdealMode::Generated,
        };
        assert!(glue(&spec).is_err());
        let spec = GluingSpec { alphas: vec![Connector::new("z", "1", "0")], ..spec };
        assert!(matches!(glue(&spec), Err(Error::InvalidQuiver(_))));
    }

    #[test]
    fn restrictions() {
        let c = ex_c();
        let s0 = Rep::simple(&c.c, 0);
        assert_eq!(c.pi_a(&s0).unwrap(), Rep::simple(&c.a, 0));
        assert!(c.pi_b(&s0).unwrap().is_zero());
        let s1 = Rep::simple(&c.c, 1);
        assert!(c.pi_a(&s1).unwrap().is_zero());
        let r = remark();
        assert_eq!(r.pi_a(&Rep::projective(&r.c, 0)).unwrap(), Rep::projective(&r.a, 0));
        let f = RepMap::identity(&Rep::projective(&r.c, 1));
        assert!(r.pi_a_map(&f).unwrap().is_iso());
    }

    #[test]
    fn g_functor() {
        for g in [remark(), rad_square_zero_pair()] {
            let mut s_cop = Session::with_defaults(&g.c_op);
            assert!(g.g_a(&Rep::zero(&g.a_op)).unwrap().is_zero());
            for seed in 0..20 {
                let m = random_module(&g.a_op, seed, 8);
                let gm = g.g_a(&m).unwrap();
                assert_eq!(g.pi_a_op(&gm).unwrap(), m);
                let m = random_module(&g.b_op, seed, 8);
                let gm = g.g_b(&m).unwrap();
                assert_eq!(g.pi_b_op(&gm).unwrap(), m);
            }
            for x in 0..g.a.vertex_count() {
                let gp = g.g_a(&Rep::projective(&g.a_op, x)).unwrap();
                let d = s_cop.decompose(&gp).unwrap();
                assert!(d.ids().all(|i| s_cop.is_projective_class(i)));
            }
            for x in 0..g.b.vertex_count() {
                let gp = g.g_b(&Rep::projective(&g.b_op, x)).unwrap();
                let d = s_cop.decompose(&gp).unwrap();
                assert!(d.ids().all(|i| s_cop.is_projective_class(i)));
            }
        }
    }
}
