use serde_json::{json, Value};

use super::{dsl, literal, load_algebra, load_glued, verify, Cli, Command, RegistryAction, Report, Status};
use crate::analysis::{is_selfinjective, AdditivityVerdict, Gldim};
use crate::decomp::{Decomposition, IsoAnswer, Session};
use crate::error::{Error, Result};
use crate::homology::{syzygy_power, PdResult};
use crate::morita::{classify_gluing, Fact, FactKind, GluedSession, H4Form, Side};
use crate::pathalgebra::opposite;
use crate::repmod::{module_to_json, random_module, Rep};

pub(super) fn name(c: &Command) -> &'static str {
    match c {
        Command::Info { .. } => "info",
        Command::Projectives { .. } => "projectives",
        Command::Simples { .. } => "simples",
        Command::Syzygy { .. } => "syzygy",
        Command::Pd { .. } => "pd",
        Command::Phi { .. } => "phi",
        Command::Phidim { .. } => "phidim",
        Command::Decompose { .. } => "decompose",
        Command::Iso { .. } => "iso",
        Command::Gldim { .. } => "gldim",
        Command::Selfinjective { .. } => "selfinjective",
        Command::Opposite { .. } => "opposite",
        Command::Glue { .. } => "glue",
        Command::CheckH { .. } => "check-h",
        Command::SplitCheck { .. } => "split-check",
        Command::Additivity { .. } => "additivity",
        Command::ZeroItCheck { .. } => "zero-it-check",
        Command::Classify { .. } => "classify",
        Command::Registry { .. } => "registry dump",
        Command::VerifyPaper => "verify-paper",
    }
}

fn decomposition_json(s: &Session, d: &Decomposition) -> Value {
    let summands: Vec<Value> = d
        .summands
        .iter()
        .map(|&(id, k)| {
            json!({
                "class": id.0,
                "multiplicity": k,
                "dims": s.representative(id).dims(),
                "projective": s.is_projective_class(id),
            })
        })
        .collect();
    json!({ "summands": summands, "status": d.status })
}

fn pd_status(r: &PdResult) -> Status {
    match r {
        PdResult::Unknown(_) => Status::Inconclusive,
        _ => Status::Ok,
    }
}

fn parse_fact(s: &str) -> Result<Fact> {
    let bad = || Error::Input(format!("cannot read fact `{s}`; expected SIDE:KIND[:N]"));
    let parts: Vec<&str> = s.split(':').collect();
    let side = match parts.first().map(|x| x.to_ascii_lowercase()) {
        Some(x) if x == "a" => Side::A,
        Some(x) if x == "b" => Side::B,
        Some(x) if x == "aop" => Side::AOp,
        Some(x) if x == "bop" => Side::BOp,
        Some(x) if x == "c" => Side::C,
        Some(x) if x == "cop" => Side::COp,
        _ => return Err(bad()),
    };
    let n = match parts.get(2) {
        Some(n) => n.parse::<usize>().map_err(|_| bad())?,
        None => 0,
    };
    let kind = match parts.get(1).copied() {
        Some("syzygy-finite") | Some("sf") => FactKind::SyzygyFinite(n),
        Some("igusa-todorov") | Some("it") => FactKind::IgusaTodorov(n),
        Some("lit") => FactKind::Lit(n),
        Some("selfinjective") => FactKind::Selfinjective,
        Some("gldim") => FactKind::GldimFinite(n),
        _ => return Err(bad()),
    };
    Ok(Fact::asserted(side, kind))
}

pub(super) fn run(cli: &Cli, report: &mut Report) -> Result<()> {
    let config = cli.config();
    let load = |r: &str, report: &mut Report| -> Result<super::Loaded> {
        let l = load_algebra(r, cli.field, cli.op)?;
        report.inputs.extend(l.inputs.iter().cloned());
        if l.alg.prime() == 2 && cli.field != Some(2) {
            report.notes.push("characteristic 2: locality tests fall back to Fitting splitting".into());
        }
        if !l.alg.quiver().is_connected() {
            report.notes.push("the algebra is not connected; results are for the whole algebra".into());
        }
        Ok(l)
    };
    let glued = |r: &str, report: &mut Report| -> Result<GluedSession> {
        let (g, inputs) = load_glued(r, cli.field)?;
        report.inputs.extend(inputs);
        let g = if cli.op { g.opposite_view() } else { g };
        Ok(GluedSession::new(g, config.clone()))
    };
    match &cli.command {
        Command::Info { algebra } => {
            let l = load(algebra, report)?;
            let a = &l.alg;
            let q = a.quiver();
            report.result = json!({
                "name": a.name(),
                "prime": a.prime(),
                "vertices": q.vertex_names(),
                "arrows": q.arrows().iter().map(|x| json!([x.name, q.vertex_name(x.source), q.vertex_name(x.target)])).collect::<Vec<_>>(),
                "relations": a.relations().iter().map(|r| r.display(q)).collect::<Vec<_>>(),
                "dim": a.dim(),
                "loewy_bound": a.loewy_bound(),
                "connected": q.is_connected(),
                "projective_dims": (0..a.vertex_count()).map(|v| Rep::projective(a, v).dims().to_vec()).collect::<Vec<_>>(),
                "glued": l.glued.as_ref().map(|g| json!({"t_set": g.t_set, "flags": g.flags})),
            });
        }
        Command::Projectives { algebra } => {
            let l = load(algebra, report)?;
            let a = &l.alg;
            let op = opposite(a)?;
            let q = a.quiver();
            let mut out = Vec::new();
            for v in 0..a.vertex_count() {
                let p = Rep::projective(a, v);
                let i = Rep::projective(&op, v).dualize(a)?;
                out.push(json!({
                    "vertex": q.vertex_name(v),
                    "projective": { "dims": p.dims(), "radical_series": p.radical_series(), "socle": p.socle_dims() },
                    "injective": { "dims": i.dims(), "radical_series": i.radical_series(), "top": i.top_dims() },
                }));
            }
            report.result = Value::Array(out);
        }
        Command::Simples { algebra } => {
            let l = load(algebra, report)?;
            let mut s = Session::new(&l.alg, config);
            let mut out = Vec::new();
            for v in 0..l.alg.vertex_count() {
                let sv = s.simple(v);
                let d = s.decompose(&crate::homology::syzygy(&sv))?;
                let pd = s.pd(&sv)?;
                if !pd.is_finite() && !pd.is_infinite() {
                    report.status = Status::Inconclusive;
                }
                out.push(json!({
                    "vertex": l.alg.quiver().vertex_name(v),
                    "syzygy": decomposition_json(&s, &d),
                    "pd": pd,
                }));
            }
            report.result = Value::Array(out);
        }
        Command::Syzygy { algebra, module, n } => {
            let l = load(algebra, report)?;
            let m = literal::parse_module(&l.alg, module)?;
            let om = syzygy_power(&m, *n);
            let mut s = Session::new(&l.alg, config);
            let d = s.decompose(&om)?;
            report.result = json!({
                "n": n,
                "dims": om.dims(),
                "decomposition": decomposition_json(&s, &d),
                "module": module_to_json(&om),
            });
        }
        Command::Pd { algebra, module } => {
            let l = load(algebra, report)?;
            let m = literal::parse_module(&l.alg, module)?;
            let mut s = Session::new(&l.alg, config);
            let r = s.pd(&m)?;
            report.status = pd_status(&r);
            report.result = json!({ "pd": r });
        }
        Command::Phi { algebra, module } => {
            let l = load(algebra, report)?;
            let m = literal::parse_module(&l.alg, module)?;
            let mut s = Session::new(&l.alg, config);
            let r = s.phi(&m)?;
            if !r.is_certified() {
                report.status = Status::Inconclusive;
            }
            report.result = json!({ "phi": r.value, "status": r.status_name(), "detail": r });
        }
        Command::Phidim { algebra, modules } => {
            let l = load(algebra, report)?;
            let ms = modules.iter().map(|x| literal::parse_module(&l.alg, x)).collect::<Result<Vec<_>>>()?;
            let mut s = Session::new(&l.alg, config);
            let r = s.phi_dim_over(&ms)?;
            if !r.certified {
                report.status = Status::Inconclusive;
            }
            report.result = serde_json::to_value(&r)?;
        }
        Command::Decompose { algebra, module } => {
            let l = load(algebra, report)?;
            let m = literal::parse_module(&l.alg, module)?;
            let mut s = Session::new(&l.alg, config);
            let d = s.decompose(&m)?;
            report.result = decomposition_json(&s, &d);
        }
        Command::Iso { algebra, module, other } => {
            let l = load(algebra, report)?;
            let m = literal::parse_module(&l.alg, module)?;
            let n = literal::parse_module(&l.alg, other)?;
            let mut s = Session::new(&l.alg, config);
            let ans = s.is_isomorphic(&m, &n)?;
            let word = match ans {
                IsoAnswer::Yes(_) => "yes",
                IsoAnswer::YesProbabilistic => "yes-probabilistic",
                IsoAnswer::No => "no",
            };
            report.result = json!({ "isomorphic": word });
        }
        Command::Gldim { algebra } => {
            let l = load(algebra, report)?;
            let mut s = Session::new(&l.alg, config);
            let g = s.global_dimension()?;
            if g == Gldim::Unknown {
                report.status = Status::Inconclusive;
            }
            report.result = json!({ "gldim": g, "pd_simples": s.pd_simples()? });
        }
        Command::Selfinjective { algebra } => {
            let l = load(algebra, report)?;
            let block = crate::homology::selfinjective_block(&l.alg)?;
            report.result = json!({ "selfinjective": is_selfinjective(&l.alg)?, "selfinjective_block": block });
        }
        Command::Opposite { algebra } => {
            let l = load(algebra, report)?;
            let op = opposite(&l.alg)?;
            let text = dsl::print_algebra(&dsl::AlgebraSource::of(&op));
            report.result = json!({ "text": text });
        }
        Command::Glue { gluing } => {
            let gs = glued(gluing, report)?;
            let g = &gs.glued;
            report.result = json!({
                "c": dsl::print_algebra(&dsl::AlgebraSource::of(&g.c)),
                "c_op": dsl::print_algebra(&dsl::AlgebraSource::of(&g.c_op)),
                "dim": g.c.dim(),
                "flags": g.flags,
                "t_set": g.t_set.iter().map(|&v| g.c.quiver().vertex_name(v)).collect::<Vec<_>>(),
                "hypotheses_h1_h3": "hold",
            });
        }
        Command::CheckH { gluing } => {
            let mut gs = glued(gluing, report)?;
            let mut forms = Vec::new();
            for f in [H4Form::CrossSemisimple, H4Form::FullSemisimple, H4Form::BSideOnly] {
                forms.push(gs.check_h4(f, cli.class_budget)?);
            }
            if forms.iter().map(|r| r.is_finitely_generated()).collect::<std::collections::BTreeSet<_>>().len() > 1 {
                report.notes.push("the H4 forms disagree at this budget".into());
            }
            if !forms[1].is_finitely_generated() {
                report.status = Status::Inconclusive;
            }
            report.result = json!({ "h1_h3": "hold", "h4": forms });
        }
        Command::SplitCheck { gluing, samples, size } => {
            let mut gs = glued(gluing, report)?;
            let c = gs.glued.c.clone();
            let mut checked = Vec::new();
            for i in 0..*samples {
                let m = random_module(&c, cli.seed.wrapping_add(i as u64), *size);
                match gs.verify_syzygy_split(&m) {
                    Ok(r) => checked.push(json!({"dims": m.dims(), "a_part": r.a_part.len(), "b_part": r.b_part.len(), "top_clause": r.top_clause})),
                    Err(Error::SplitFailure(msg)) => {
                        report.status = Status::Failure;
                        report.result = json!({ "failure": msg, "module": module_to_json(&m), "checked": checked.len() });
                        return Ok(());
                    }
                    Err(e) => return Err(e),
                }
            }
            report.result = json!({ "checked": checked.len(), "samples": checked });
        }
        Command::Additivity { algebra, pairs } => {
            let l = load(algebra, report)?;
            let mut s = Session::new(&l.alg, config.clone());
            let v = s.phi_zero_probe(*pairs)?;
            let op = opposite(&l.alg)?;
            let mut so = Session::new(&op, config);
            let vo = so.phi_zero_probe(*pairs)?;
            if v.class_name() != vo.class_name() {
                report.notes.push("the algebra and its opposite received different verdicts".into());
            }
            if matches!(v, AdditivityVerdict::Inconclusive { .. }) {
                report.status = Status::Inconclusive;
            }
            let witness = match &v {
                AdditivityVerdict::Witness(w) => json!({ "m1": module_to_json(&w.m1), "m2": module_to_json(&w.m2) }),
                _ => Value::Null,
            };
            report.result = json!({
                "verdict": v.class_name(),
                "detail": v,
                "witness_modules": witness,
                "opposite": { "verdict": vo.class_name(), "detail": vo },
            });
        }
        Command::ZeroItCheck { algebra, modules, with_block } => {
            let l = load(algebra, report)?;
            let ms = modules.iter().map(|x| literal::parse_module(&l.alg, x)).collect::<Result<Vec<_>>>()?;
            let mut s = Session::new(&l.alg, config);
            let r = s.zero_it_check(&ms, *with_block)?;
            if !r.passes() {
                report.status = Status::Failure;
            }
            report.result = json!({ "passes": r.passes(), "detail": r });
        }
        Command::Classify { gluing, asserted } => {
            let facts = asserted.iter().map(|f| parse_fact(f)).collect::<Result<Vec<_>>>()?;
            let mut gs = glued(gluing, report)?;
            let r = classify_gluing(&mut gs, &facts, cli.class_budget)?;
            report.result = serde_json::to_value(&r)?;
        }
        Command::Registry { action: RegistryAction::Dump { algebra, modules } } => {
            let l = load(algebra, report)?;
            let mut s = Session::new(&l.alg, config);
            s.register_canonical()?;
            for x in modules {
                let m = literal::parse_module(&l.alg, x)?;
                let d = s.decompose(&m)?;
                for id in d.ids() {
                    s.syzygy_class(id)?;
                }
            }
            report.result = s.registry.dump();
        }
        Command::VerifyPaper => {
            let outcomes = verify::run_all(&config);
            if outcomes.iter().any(|o| !o.passed) {
                report.status = Status::Failure;
            }
            let text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
            report.result = json!({ "criteria": outcomes, "text": text });
        }
    }
    Ok(())
}
