//! Which gluing propositions apply, and the witness data their proofs build.

use serde::Serialize;
use serde_json::{json, Value};

use super::glued::{GluedSession, H4Form, H4Result};
use super::PatternFlags;
use crate::analysis::Gldim;
use crate::decomp::{IsoClassId, Session};
use crate::error::Result;
use crate::homology::{syzygy, syzygy_power, SyzygyFinite};
use crate::repmod::{random_module, Rep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    A,
    B,
    AOp,
    BOp,
    C,
    COp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactKind {
    SyzygyFinite(usize),
    IgusaTodorov(usize),
    Lit(usize),
    Selfinjective,
    GldimFinite(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Provenance {
    /// Decided exactly.
    Machine,
    /// A bounded exploration closed; not a proof for all modules.
    Probe,
    /// Checked on random samples.
    Sampled,
    /// Supplied by the user as a theorem input.
    Asserted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub side: Side,
    pub kind: FactKind,
    pub provenance: Provenance,
}

impl Fact {
    pub fn asserted(side: Side, kind: FactKind) -> Fact {
        Fact { side, kind, provenance: Provenance::Asserted }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Conclusion {
    pub proposition: &'static str,
    pub statement: String,
    pub witness: Value,
    pub checks: Vec<String>,
    /// Weakest provenance among the inputs used.
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub algebra: String,
    pub flags: PatternFlags,
    pub facts: Vec<Fact>,
    pub h4: Vec<H4Result>,
    pub conclusions: Vec<Conclusion>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn conclusion(&self, proposition: &str) -> Option<&Conclusion> {
        self.conclusions.iter().find(|c| c.proposition == proposition)
    }
}

/// Best-certified fact of the requested shape (then smallest n).
fn best(facts: &[Fact], side: Side, want: fn(FactKind) -> Option<usize>) -> Option<(usize, Provenance)> {
    facts
        .iter()
        .filter(|f| f.side == side)
        .filter_map(|f| want(f.kind).map(|n| (n, f.provenance)))
        .min_by_key(|&(n, p)| (p, n))
}

fn sf(k: FactKind) -> Option<usize> {
    match k {
        FactKind::SyzygyFinite(n) | FactKind::GldimFinite(n) => Some(n),
        _ => None,
    }
}

// syzygy finite and finite gldim both give Igusa-Todorov with the same n
fn it(k: FactKind) -> Option<usize> {
    match k {
        FactKind::IgusaTodorov(n) | FactKind::SyzygyFinite(n) | FactKind::GldimFinite(n) => Some(n),
        _ => None,
    }
}

fn lit(k: FactKind) -> Option<usize> {
    match k {
        FactKind::Selfinjective => Some(0),
        FactKind::Lit(n) => Some(n),
        other => it(other),
    }
}

fn machine_facts(s: &mut Session, side: Side, class_budget: usize) -> Result<Vec<Fact>> {
    let mut out = Vec::new();
    let mut push = |kind, provenance| out.push(Fact { side, kind, provenance });
    if crate::analysis::is_selfinjective(s.algebra())? {
        push(FactKind::Selfinjective, Provenance::Machine);
    }
    if let Gldim::Finite(n) = s.global_dimension()? {
        push(FactKind::GldimFinite(n), Provenance::Machine);
    }
    if s.algebra().loewy_bound() <= 2 {
        // Ω of anything is semisimple
        push(FactKind::SyzygyFinite(1), Provenance::Machine);
    }
    for n in 0..=2 {
        if let SyzygyFinite::Closed(_) = s.syzygy_finite_probe(n, class_budget)? {
            push(FactKind::SyzygyFinite(n), Provenance::Probe);
            break;
        }
    }
    Ok(out)
}

fn dims_of(s: &Session, ids: &[IsoClassId]) -> Vec<Vec<usize>> {
    ids.iter().map(|&i| s.representative(i).dims().to_vec()).collect()
}

/// Applies every gluing proposition whose hypotheses are verified.
pub fn classify_gluing(gs: &mut GluedSession, asserted: &[Fact], class_budget: usize) -> Result<ClassificationReport> {
    let g = gs.glued.clone();
    let flags = g.flags.clone();
    let mut facts = Vec::new();
    facts.extend(machine_facts(&mut gs.a, Side::A, class_budget)?);
    facts.extend(machine_facts(&mut gs.b, Side::B, class_budget)?);
    facts.extend(machine_facts(&mut gs.a_op, Side::AOp, class_budget)?);
    facts.extend(machine_facts(&mut gs.b_op, Side::BOp, class_budget)?);
    facts.extend(asserted.iter().cloned());

    let mut notes = Vec::new();
    let mut h4 = vec![gs.check_h4(H4Form::CrossSemisimple, class_budget)?, gs.check_h4(H4Form::FullSemisimple, class_budget)?];
    if flags.k_empty {
        h4.push(gs.check_h4(H4Form::BSideOnly, class_budget)?);
    }
    if h4[0].is_finitely_generated() != h4[1].is_finitely_generated() {
        notes.push("the two forms of H4 disagree at this budget".into());
    }
    if !g.c.quiver().is_connected() {
        notes.push("C is not connected; statements hold blockwise".into());
    }
    let orbit = |form: H4Form| {
        h4.iter().find_map(|r| match r {
            H4Result::FinitelyGenerated { form: f, a_classes, b_classes } if *f == form => {
                Some((a_classes.clone(), b_classes.clone()))
            }
            _ => None,
        })
    };
    let o_json = |gs: &GluedSession, (a, b): &(Vec<IsoClassId>, Vec<IsoClassId>)| {
        json!({ "a_side": dims_of(&gs.a, a), "b_side": dims_of(&gs.b, b) })
    };

    let mut conclusions = Vec::new();
    let full = orbit(H4Form::FullSemisimple);

    if let (Some(o), Some((na, pa)), Some((nb, pb))) = (&full, best(&facts, Side::A, sf), best(&facts, Side::B, sf)) {
        let n = na.max(nb);
        let mut checks = vec![format!("H4 seeded by Ω_C(C₀) closed with {} classes", o.0.len() + o.1.len())];
        let mut witness = json!({ "orbit_set": o_json(gs, o), "n": n });
        let mut prov = pa.max(pb);
        match gs.c.syzygy_finite_probe(n + 1, class_budget)? {
            SyzygyFinite::Closed(ids) => {
                let mut one_sided = true;
                for &id in &ids {
                    let (x, y) = g.side_dims(gs.c.representative(id).dims());
                    one_sided &= x != y;
                }
                checks.push(format!(
                    "Ω^{}-orbit of the simples of C closes on {} classes, each on one side: {one_sided}",
                    n + 1,
                    ids.len()
                ));
                witness["generators_c"] = json!(dims_of(&gs.c, &ids));
            }
            SyzygyFinite::Open { reached } => {
                checks.push(format!("Ω^{}-orbit of the simples of C still open after {reached} classes", n + 1));
                prov = prov.max(Provenance::Probe);
            }
        }
        conclusions.push(Conclusion {
            proposition: "syzygy-finite",
            statement: "C is syzygy finite".into(),
            witness,
            checks,
            provenance: prov,
        });
    }

    if let (Some(o), Some((na, pa)), Some((nb, pb))) = (&full, best(&facts, Side::A, it), best(&facts, Side::B, it)) {
        let n = na.max(nb);
        conclusions.push(Conclusion {
            proposition: "igusa-todorov",
            statement: format!("C is {}-Igusa-Todorov", n + 1),
            witness: json!({
                "module": "V_A ⊕ A ⊕ W_B ⊕ B ⊕ (⊕ O)",
                "orbit_set": o_json(gs, o),
            }),
            checks: vec!["H4 seeded by Ω_C(C₀) closed".into()],
            provenance: pa.max(pb),
        });
    }

    if flags.k_empty {
        if let (Some(o), Some((na, pa)), Some((nb, pb))) =
            (orbit(H4Form::BSideOnly), best(&facts, Side::A, it), best(&facts, Side::B, lit))
        {
            let n = na.max(nb);
            conclusions.push(Conclusion {
                proposition: "lit-one-directional",
                statement: format!("C is {}-LIT", n + 1),
                witness: json!({
                    "module": "V ⊕ W ⊕ A ⊕ (⊕ O)",
                    "subcategory": "the 0-Igusa-Todorov subcategory of B",
                    "orbit_set": o_json(gs, &o),
                }),
                checks: vec!["no β connectors".into(), "B-side orbit of Π_B(Ω_C(C₀)) closed".into()],
                provenance: pa.max(pb),
            });
        }
    }

    if flags.generated && flags.disjoint_endpoints {
        if let (Some((na, pa)), Some((nb, pb))) = (best(&facts, Side::A, lit), best(&facts, Side::B, lit)) {
            let n = na.max(nb);
            let (ok, tried) = cross_parts_projective(gs, 20)?;
            let pa_dims: Vec<Vec<usize>> = g.boundary_a.iter().map(|&v| gs.c.projective(v).dims().to_vec()).collect();
            let pb_dims: Vec<Vec<usize>> = g.boundary_b.iter().map(|&v| gs.c.projective(v).dims().to_vec()).collect();
            conclusions.push(Conclusion {
                proposition: "lit-disjoint-endpoints",
                statement: format!("C is {}-LIT", n + 1),
                witness: json!({
                    "module": "V₁ ⊕ V₂ ⊕ P_∂A ⊕ P_∂B",
                    "boundary_projectives_a": pa_dims,
                    "boundary_projectives_b": pb_dims,
                }),
                checks: vec![format!("cross-side syzygy parts projective on {tried} one-sided samples: {ok}")],
                provenance: pa.max(pb).max(Provenance::Sampled),
            });
        }
    }

    if flags.generated {
        let a_it = best(&facts, Side::AOp, it);
        let b_it = best(&facts, Side::BOp, it);
        let a_lit = best(&facts, Side::AOp, lit);
        let b_lit = best(&facts, Side::BOp, lit);
        let mut emit = |name: &'static str, kind: &str, x: Option<(usize, Provenance)>, y: Option<(usize, Provenance)>| -> Result<()> {
            if let (Some((na, pa)), Some((nb, pb))) = (x, y) {
                let n = na.max(nb);
                let all: Vec<usize> = (0..g.c_op.vertex_count()).collect();
                let c0 = Rep::sum_of(&all.iter().map(|&v| gs.c_op.simple(v)).collect::<Vec<_>>());
                let v3: Vec<Vec<usize>> = (1..=n).map(|i| syzygy_power(&c0, i).dims().to_vec()).collect();
                conclusions.push(Conclusion {
                    proposition: name,
                    statement: format!("C^op is {}-{kind}", n + 1),
                    witness: json!({ "module": "G_A(V₁) ⊕ G_B(V₂) ⊕ V₃", "v3_terms": v3 }),
                    checks: vec!["I_C equals the generated ideal".into()],
                    provenance: pa.max(pb),
                });
            }
            Ok(())
        };
        emit("dual-igusa-todorov", "Igusa-Todorov", a_it, b_it)?;
        emit("dual-lit", "LIT", a_lit, b_lit)?;
    }

    for side in [true, false] {
        if let Some(c) = selfinjective_side(gs, side, 100)? {
            conclusions.push(c);
        }
    }

    if flags.j_empty && flags.k_empty {
        let gl = gs.c.global_dimension()?;
        if let Gldim::Finite(n) = gl {
            conclusions.push(Conclusion {
                proposition: "product",
                statement: format!("gldim C = {n}"),
                witness: json!({ "gldim": n }),
                checks: vec!["projective dimensions of the simples of C computed directly".into()],
                provenance: Provenance::Machine,
            });
        } else {
            notes.push("C is a product; gldim C is not finite or not decided".into());
        }
    }

    Ok(ClassificationReport { algebra: g.c.name().to_string(), flags, facts, h4, conclusions, notes })
}

/// Samples one-sided modules and checks the cross-side summands of their
/// syzygies are projective over C.
fn cross_parts_projective(gs: &mut GluedSession, samples: usize) -> Result<(bool, usize)> {
    let g = gs.glued.clone();
    let mut tried = 0;
    for seed in 0..samples as u64 {
        for (lift_a, side_alg) in [(true, &g.a), (false, &g.b)] {
            let m = random_module(side_alg, seed, 8);
            let m = if lift_a { g.lift_a(&m)? } else { g.lift_b(&m)? };
            tried += 1;
            let d = gs.c.decompose(&syzygy(&m))?;
            for id in d.ids() {
                let (x, y) = g.side_dims(gs.c.representative(id).dims());
                let cross = if lift_a { y && !x } else { x && !y };
                if cross && !gs.c.is_projective_class(id) {
                    return Ok((false, tried));
                }
            }
        }
    }
    Ok((true, tried))
}

/// When one side X is selfinjective and closed under successors in C, mod X
/// is a 0-Igusa-Todorov subcategory; if sampled syzygies land in
/// add(mod X ∪ simples of the other side), C is (1, mod X, ⊕ S)-LIT.
fn selfinjective_side(gs: &mut GluedSession, a_side: bool, samples: usize) -> Result<Option<Conclusion>> {
    let g = gs.glued.clone();
    let (x_vertices, y_vertices, x_alg) =
        if a_side { (&g.a_vertices, &g.b_vertices, &g.a) } else { (&g.b_vertices, &g.a_vertices, &g.b) };
    if !crate::analysis::is_selfinjective(x_alg)? {
        return Ok(None);
    }
    let block = gs.c.block()?.clone();
    if !x_vertices.iter().all(|v| block.vertices.contains(v)) {
        return Ok(None);
    }
    for seed in 0..samples as u64 {
        let m = random_module(&g.c, seed, 10);
        let d = gs.c.decompose(&syzygy(&m))?;
        for id in d.ids() {
            let dims = gs.c.representative(id).dims().to_vec();
            let in_x = dims.iter().enumerate().all(|(v, &k)| k == 0 || x_vertices.contains(&v));
            let simple_y = dims.iter().sum::<usize>() == 1 && y_vertices.iter().any(|&v| dims[v] == 1);
            if !(in_x || simple_y || gs.c.is_projective_class(id)) {
                return Ok(None);
            }
        }
    }
    let (xs, ys) = if a_side { ("A", "B") } else { ("B", "A") };
    let simples: Vec<String> = y_vertices.iter().map(|&v| format!("S_{}", g.c.quiver().vertex_name(v))).collect();
    let v = simples.join(" ⊕ ");
    Ok(Some(Conclusion {
        proposition: "selfinjective-side-lit",
        statement: format!("C is (1, mod {xs}, {v})-LIT"),
        witness: json!({ "subcategory": format!("mod {xs}"), "module": v, "other_side": ys }),
        checks: vec![
            format!("{xs} is selfinjective and closed under successors in C"),
            format!("Ω_C(M) ∈ add(mod {xs} ∪ simples of {ys}) on {samples} random modules"),
        ],
        provenance: Provenance::Sampled,
    }))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::decomp::Config;

    #[test]
    fn rad_square_zero_pair_is_syzygy_finite() {
        let mut gs = GluedSession::new(rad_square_zero_pair(), Config::default());
        let r = classify_gluing(&mut gs, &[], 40).unwrap();
        let c = r.conclusion("syzygy-finite").expect("syzygy-finite applies");
        assert_eq!(c.provenance, Provenance::Machine);
        assert!(c.witness.get("generators_c").is_some());
        assert!(r.conclusion("igusa-todorov").is_some());
    }

    #[test]
    fn ex_c_op_selfinjective_side() {
        let mut gs = GluedSession::new(ex_c_op(), Config::default());
        let r = classify_gluing(&mut gs, &[], 40).unwrap();
        let c = r.conclusion("selfinjective-side-lit").expect("rule applies");
        assert!(c.statement.contains("mod A"));
        assert!(c.statement.contains("S_1 ⊕ S_2"));
        let mut gs = GluedSession::new(ex_c(), Config::default());
        let r = classify_gluing(&mut gs, &[], 40).unwrap();
        assert!(r.conclusion("selfinjective-side-lit").is_none());
    }

    #[test]
    fn product_gldim() {
        let mut gs = GluedSession::new(no_connectors(), Config::default());
        let r = classify_gluing(&mut gs, &[], 40).unwrap();
        assert!(r.conclusion("product").is_none());
        let q = crate::pathalgebra::Quiver::new(&["x"], &[] as &[(&str, &str, &str)]).unwrap();
        let k = crate::pathalgebra::build_algebra("k", q, vec![], 101, 10).unwrap();
        let spec = super::super::GluingSpec {
            name: "prod".into(),
            a: crate::repmod::testalg::a2(),
            b: k,
            alphas: vec![],
            betas: vec![],
            mode: super::super::IdealMode::Generated,
        };
        let mut gs = GluedSession::new(super::super::glue(&spec).unwrap(), Config::default());
        let r = classify_gluing(&mut gs, &[], 40).unwrap();
        assert_eq!(r.conclusion("product").unwrap().statement, "gldim C = 1");
    }

    #[test]
    fn asserted_facts_are_tagged() {
        let mut gs = GluedSession::new(ex_c(), Config::default());
        let r = classify_gluing(&mut gs, &[Fact::asserted(Side::B, FactKind::Lit(0))], 40).unwrap();
        assert!(r.facts.iter().any(|f| f.provenance == Provenance::Asserted));
    }
}
