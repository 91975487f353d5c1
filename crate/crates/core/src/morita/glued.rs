use serde::Serialize;

use super::GluedAlgebra;
use crate::decomp::{Config, IsoClassId, Session};
use crate::error::{Error, Result};
use crate::grothendieck::K0Vector;
use crate::homology::syzygy;
use crate::repmod::Rep;

/// Sessions over C, A, B and their opposites, sharing one configuration.
pub struct GluedSession {
    pub glued: GluedAlgebra,
    pub c: Session,
    pub a: Session,
    pub b: Session,
    pub c_op: Session,
    pub a_op: Session,
    pub b_op: Session,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    /// Summands of Ω_C(M) supported on the A-side and on the B-side.
    pub a_part: Vec<(IsoClassId, usize)>,
    pub b_part: Vec<(IsoClassId, usize)>,
    /// For M in mod A (mod B): whether the B-part (A-part) of Ω_C(M)
    /// agrees with that of Ω_C(Top M). None when M meets both sides.
    pub top_clause: Option<bool>,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub enum H4Form {
    /// Seeds Π_A(Ω_C(B₀)) and Π_B(Ω_C(A₀)).
    CrossSemisimple,
    /// Seeds Π_A(Ω_C(C₀)) and Π_B(Ω_C(C₀)).
    FullSemisimple,
    /// Only the B-side orbit Orb_{Ω_B}(Π_B(Ω_C(C₀))).
    BSideOnly,
}

#[derive(Clone, Debug, Serialize)]
pub enum H4Result {
    /// Nonprojective classes of the closed orbits (ids in the A and B sessions).
    FinitelyGenerated { form: H4Form, a_classes: Vec<IsoClassId>, b_classes: Vec<IsoClassId> },
    Inconclusive { form: H4Form, a_closed: bool, b_closed: bool },
}

impl H4Result {
    pub fn is_finitely_generated(&self) -> bool {
        matches!(self, H4Result::FinitelyGenerated { .. })
    }
}

/// Image of a class of K₁(C^op) under f: (A^op part, B^op part, 𝒯 vertex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FValue {
    pub a: K0Vector,
    pub b: K0Vector,
    pub t: Option<usize>,
}

impl GluedSession {
    pub fn new(glued: GluedAlgebra, config: Config) -> GluedSession {
        GluedSession {
            c: Session::new(&glued.c, config.clone()),
            a: Session::new(&glued.a, config.clone()),
            b: Session::new(&glued.b, config.clone()),
            c_op: Session::new(&glued.c_op, config.clone()),
            a_op: Session::new(&glued.a_op, config.clone()),
            b_op: Session::new(&glued.b_op, config),
            glued,
        }
    }

    /// Ω_C(M) splits into summands living on one side each.
    pub fn verify_syzygy_split(&mut self, m: &Rep) -> Result<SplitReport> {
        let (a_part, b_part) = self.split_parts(&syzygy(m))?;
        let (on_a, on_b) = self.glued.side_dims(m.dims());
        let top_clause = if on_a != on_b {
            let (ta, tb) = self.split_parts(&syzygy(&m.top()))?;
            Some(if on_a { tb == b_part } else { ta == a_part })
        } else {
            None
        };
        if top_clause == Some(false) {
            return Err(Error::SplitFailure(format!(
                "the cross-side part of Ω_C of a one-sided module with dimension vector {:?} differs from that of its top",
                m.dims()
            )));
        }
        Ok(SplitReport { a_part, b_part, top_clause })
    }

    #[allow(clippy::type_complexity)]
    fn split_parts(&mut self, om: &Rep) -> Result<(Vec<(IsoClassId, usize)>, Vec<(IsoClassId, usize)>)> {
        let d = self.c.decompose(om)?;
        let (mut a_part, mut b_part) = (Vec::new(), Vec::new());
        for (id, k) in d.summands {
            let dims = self.c.representative(id).dims().to_vec();
            match self.glued.side_dims(&dims) {
                (true, false) => a_part.push((id, k)),
                (false, true) => b_part.push((id, k)),
                _ => {
                    return Err(Error::SplitFailure(format!(
                        "indecomposable summand {id} of a syzygy has dimension vector {dims:?} meeting both sides"
                    )))
                }
            }
        }
        Ok((a_part, b_part))
    }

    fn semisimple(&self, vertices: &[usize]) -> Rep {
        let parts: Vec<Rep> = vertices.iter().map(|&v| Rep::simple(&self.glued.c, v)).collect();
        Rep::sum_of(&parts)
    }

    /// H4 in the requested form, by orbit closure in mod A and mod B.
    pub fn check_h4(&mut self, form: H4Form, class_budget: usize) -> Result<H4Result> {
        let g = self.glued.clone();
        let all: Vec<usize> = (0..g.c.vertex_count()).collect();
        let (seed_a, seed_b) = match form {
            H4Form::CrossSemisimple => (self.semisimple(&g.b_vertices), self.semisimple(&g.a_vertices)),
            H4Form::FullSemisimple | H4Form::BSideOnly => (self.semisimple(&all), self.semisimple(&all)),
        };
        let (a_closed, a_classes) = if form == H4Form::BSideOnly {
            (true, Vec::new())
        } else {
            let m = g.pi_a(&syzygy(&seed_a))?;
            let d = self.a.decompose(&m)?;
            let seeds: Vec<IsoClassId> = d.ids().collect();
            let o = self.a.omega_orbit(&seeds, class_budget)?;
            (o.closed, o.nonprojective())
        };
        let m = g.pi_b(&syzygy(&seed_b))?;
        let d = self.b.decompose(&m)?;
        let seeds: Vec<IsoClassId> = d.ids().collect();
        let o = self.b.omega_orbit(&seeds, class_budget)?;
        let (b_closed, b_classes) = (o.closed, o.nonprojective());
        Ok(if a_closed && b_closed {
            H4Result::FinitelyGenerated { form, a_classes, b_classes }
        } else {
            H4Result::Inconclusive { form, a_closed, b_closed }
        })
    }

    fn require_generated(&self) -> Result<()> {
        if !self.glued.flags.generated {
            return Err(Error::ModeError("the map f needs I_C equal to the generated ideal".into()));
        }
        Ok(())
    }

    /// f on an indecomposable C^op-class, by inspecting the side of its top.
    pub fn f_map(&mut self, id: IsoClassId) -> Result<FValue> {
        self.require_generated()?;
        let m = self.c_op.representative(id).clone();
        let zero = FValue { a: K0Vector::zero(), b: K0Vector::zero(), t: None };
        if self.c_op.is_projective_class(id) {
            return Ok(zero);
        }
        if m.total_dim() == 1 {
            let v = m.dims().iter().position(|&d| d == 1).unwrap();
            if self.glued.t_set.contains(&v) {
                return Ok(FValue { t: Some(v), ..zero });
            }
        }
        let top = m.top_dims();
        match self.glued.side_dims(&top) {
            (true, false) => {
                let pa = self.glued.pi_a_op(&m)?;
                Ok(FValue { a: self.a_op.class_vector(&pa)?, ..zero })
            }
            (false, true) => {
                let pb = self.glued.pi_b_op(&m)?;
                Ok(FValue { b: self.b_op.class_vector(&pb)?, ..zero })
            }
            _ => Err(Error::NotDecidable(format!("class {id} has a top meeting both sides"))),
        }
    }

    fn f_of_vector(&mut self, v: &K0Vector) -> Result<(K0Vector, K0Vector, K0Vector)> {
        let (mut a, mut b, mut t) = (K0Vector::zero(), K0Vector::zero(), K0Vector::zero());
        for (id, c) in v.terms().map(|(i, c)| (i, c.clone())).collect::<Vec<_>>() {
            let fv = self.f_map(id)?;
            for (i, x) in fv.a.terms() {
                a.add_scaled(i, &(x * &c));
            }
            for (i, x) in fv.b.terms() {
                b.add_scaled(i, &(x * &c));
            }
            if let Some(vx) = fv.t {
                t.add_scaled(IsoClassId(vx), &c);
            }
        }
        Ok((a, b, t))
    }

    /// f([Ω M]) agrees with ([Ω M₁], [Ω M₂], 0) whenever f([M]) = ([M₁], [M₂], 0),
    /// up to classes of 𝒯-simples, each counted on its own side.
    /// None when the 𝒯-part of f([M]) is nonzero.
    pub fn f_compatibility(&mut self, m: &Rep) -> Result<Option<bool>> {
        self.require_generated()?;
        let d = self.c_op.decompose(m)?;
        let v = self.c_op.vector_of(&d);
        let (fa, fb, ft) = self.f_of_vector(&v)?;
        if !ft.is_zero() {
            return Ok(None);
        }
        let om = self.c_op.omega_bar(&v)?;
        let (ga, gb, _) = self.f_of_vector(&om)?;
        let diff_a = self.a_op.omega_bar(&fa)?.add(&ga.scale(-1));
        let diff_b = self.b_op.omega_bar(&fb)?.add(&gb.scale(-1));
        let g = self.glued.clone();
        let mut t_a = Vec::new();
        let mut t_b = Vec::new();
        for &x in &g.t_set {
            let (side, vertices, out) =
                if g.is_a_vertex(x) { (&mut self.a_op, &g.a_vertices, &mut t_a) } else { (&mut self.b_op, &g.b_vertices, &mut t_b) };
            let s = side.simple(vertices.iter().position(|&y| y == x).unwrap());
            out.extend(side.class_vector(&s)?.support());
        }
        Ok(Some(diff_a.support().all(|i| t_a.contains(&i)) && diff_b.support().all(|i| t_b.contains(&i))))
    }
}

impl GluedSession {
    /// Ḡ_A∘Ω̄ = Ω̄∘Ḡ_A on [M] for M over A^op (G_B when `a_side` is false).
    pub fn g_commutes_with_omega(&mut self, m: &Rep, a_side: bool) -> Result<bool> {
        let g = self.glued.clone();
        let apply = |m: &Rep| if a_side { g.g_a(m) } else { g.g_b(m) };
        let side = if a_side { &mut self.a_op } else { &mut self.b_op };
        let om = side.class_vector(&syzygy(m))?;
        let mut image = K0Vector::zero();
        for (id, c) in om.terms().map(|(i, c)| (i, c.clone())).collect::<Vec<_>>() {
            let rep = if a_side { self.a_op.representative(id) } else { self.b_op.representative(id) }.clone();
            let v = self.c_op.class_vector(&apply(&rep)?)?;
            for (j, x) in v.terms() {
                image.add_scaled(j, &(x * &c));
            }
        }
        let direct = self.c_op.class_vector(&syzygy(&apply(m)?))?;
        Ok(direct == image)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::repmod::random_module;

    #[test]
    fn split_examples() {
        let g = ex_c();
        let mut s = GluedSession::new(g.clone(), Config::default());
        let p = Rep::projective(&g.c, 0);
        let r = s.verify_syzygy_split(&p).unwrap();
        assert!(r.a_part.is_empty() && r.b_part.is_empty());
        let r = s.verify_syzygy_split(&Rep::simple(&g.c, 0)).unwrap();
        assert_eq!(r.a_part.len(), 1);
        let rad = s.c.representative(r.a_part[0].0).clone();
        assert_eq!(g.pi_a(&rad).unwrap().dims(), &[7]);
        assert_eq!(r.b_part.len(), 1);
        assert_eq!(s.c.representative(r.b_part[0].0).dims(), &[0, 1, 0]);
        assert_eq!(r.top_clause, Some(true));
    }

    #[test]
    fn split_on_random_modules() {
        for g in [ex_c(), ex_c_op(), remark(), rad_square_zero_pair(), no_connectors()] {
            let mut s = GluedSession::new(g.clone(), Config::default());
            for seed in 0..25 {
                let m = random_module(&g.c, seed, 10);
                s.verify_syzygy_split(&m).unwrap();
            }
        }
    }

    #[test]
    fn h4_forms() {
        let g = no_connectors();
        let mut s = GluedSession::new(g, Config::default());
        match s.check_h4(H4Form::CrossSemisimple, 50).unwrap() {
            H4Result::FinitelyGenerated { a_classes, b_classes, .. } => assert!(a_classes.is_empty() && b_classes.is_empty()),
            other => panic!("{other:?}"),
        }

        let mut s = GluedSession::new(ex_c(), Config::default());
        match s.check_h4(H4Form::CrossSemisimple, 50).unwrap() {
            H4Result::FinitelyGenerated { a_classes, b_classes, .. } => {
                assert!(a_classes.is_empty());
                assert_eq!(b_classes.len(), 2);
            }
            other => panic!("{other:?}"),
        }
        assert!(!s.check_h4(H4Form::FullSemisimple, 4).unwrap().is_finitely_generated());

        let mut s = GluedSession::new(remark(), Config::default());
        assert!(s.check_h4(H4Form::CrossSemisimple, 50).unwrap().is_finitely_generated());
    }

    #[test]
    fn f_map_cases() {
        let g = remark();
        let mut s = GluedSession::new(g.clone(), Config::default());
        // S_v sources the connector but is projective over C^op
        let sv = Rep::simple(&g.c_op, 1);
        let id = s.c_op.register(&sv).unwrap();
        assert!(s.c_op.is_projective_class(id));
        assert_eq!(s.f_map(id).unwrap().t, None);
        let h = rad_square_zero_pair();
        let mut hs = GluedSession::new(h.clone(), Config::default());
        assert_eq!(h.t_set, vec![0, 2]);
        for v in [0, 2] {
            let id = hs.c_op.register(&Rep::simple(&h.c_op, v)).unwrap();
            assert_eq!(hs.f_map(id).unwrap().t, Some(v));
        }
        let id = hs.c_op.register(&Rep::simple(&h.c_op, 1)).unwrap();
        let fv = hs.f_map(id).unwrap();
        assert!(fv.t.is_none() && fv.a.is_zero() && !fv.b.is_zero());
        for seed in 0..30 {
            let m = random_module(&h.c_op, seed, 8);
            if let Some(ok) = hs.f_compatibility(&m).unwrap() {
                assert!(ok, "seed {seed}");
            }
        }
        let s0 = Rep::simple(&g.c_op, 0);
        let id = s.c_op.register(&s0).unwrap();
        let fv = s.f_map(id).unwrap();
        assert!(fv.t.is_none() && fv.b.is_zero() && !fv.a.is_zero());
        for seed in 0..20 {
            let m = random_module(&g.c_op, seed, 9);
            if let Some(ok) = s.f_compatibility(&m).unwrap() {
                assert!(ok, "seed {seed}");
            }
        }
        for seed in 0..20 {
            let m = random_module(&g.a_op, seed, 8);
            assert!(s.g_commutes_with_omega(&m, true).unwrap());
        }
        let mut s = GluedSession::new(ex_c(), Config::default());
        let id = s.c_op.register(&Rep::simple(&s.glued.c_op, 0)).unwrap();
        assert!(matches!(s.f_map(id), Err(Error::ModeError(_))));
    }
}
