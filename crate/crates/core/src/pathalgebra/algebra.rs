use std::collections::HashMap;

use super::groebner::{complete, Completion, GroebnerBasis, Poly};
use super::quiver::{Path, Quiver, Relation};
use crate::error::{Error, Result};
use crate::exactfield::{is_prime, mul_mod, FpMatrix, MAX_PRIME};

/// Default truncation bound used when discovering the Loewy bound of I.
pub const DEFAULT_TRUNCATION: usize = 30;

/// Sparse vector over the normal-path basis.
pub type SparseVec = Vec<(usize, u32)>;

/// Cap on the number of normal paths enumerated before giving up.
const MAX_BASIS: usize = 20_000;

/// A bound quiver algebra kQ/I over F_p, presented by finitely many
/// relations and carried by its basis of normal (irreducible) paths.
#[derive(Clone, Debug)]
pub struct BoundAlgebra {
    name: String,
    quiver: Quiver,
    relations: Vec<Relation>,
    p: u32,
    truncation: usize,
    loewy_bound: usize,
    gb: GroebnerBasis,
    basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    /// right_mult[b][a] = normal form of basis[b] * arrow a (None if not composable)
    right_mult: Vec<Vec<Option<SparseVec>>>,
    /// basis indices of normal paths grouped by (start, target)
    by_ends: HashMap<(usize, usize), Vec<usize>>,
}

impl PartialEq for BoundAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.relations == other.relations && self.p == other.p
    }
}

impl BoundAlgebra {
    /// Build kQ/I. The Loewy bound m (least m with J^m ⊆ I) is discovered
    /// and must not exceed `truncation`.
    pub fn build(name: &str, quiver: Quiver, relations: Vec<Relation>, p: u32, truncation: usize) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::BadPrime(p));
        }
        for r in &relations {
            r.validate(&quiver, p)?;
        }
        let polys: Vec<Poly> = relations
            .iter()
            .map(|r| Poly::from_terms(r.terms.iter().map(|(c, w)| (w.arrows.clone(), *c)), p))
            .collect();
        let max_rel = relations.iter().flat_map(|r| r.terms.iter().map(|(_, w)| w.len())).max().unwrap_or(0);
        let bound = 2 * truncation.max(max_rel) + 2;
        let gb = match complete(polys, p, bound) {
            Completion::Complete(gb) => gb,
            Completion::DegreeBound(d) => {
                return Err(Error::NotAdmissible {
                    bound: truncation,
                    reason: format!("critical pair of degree {d} exceeds the completion bound"),
                })
            }
        };

        let n = quiver.vertex_count();
        let mut basis: Vec<Path> = (0..n).map(Path::trivial).collect();
        let mut frontier: Vec<Path> = basis.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for path in &frontier {
                let at = path.target(&quiver);
                for a in quiver.arrows_from(at) {
                    let mut word = path.arrows.clone();
                    word.push(a);
                    if !gb.has_reducible_suffix(&word) {
                        next.push(Path { start: path.start, arrows: word });
                    }
                }
            }
            if basis.len() + next.len() > MAX_BASIS
                || next.first().is_some_and(|w| w.len() > truncation)
            {
                return Err(Error::NotAdmissible {
                    bound: truncation,
                    reason: "normal paths longer than the truncation bound survive".into(),
                });
            }
            basis.extend(next.iter().cloned());
            frontier = next;
        }
        basis.sort_by(|x, y| (x.len(), x.start, &x.arrows).cmp(&(y.len(), y.start, &y.arrows)));
        let basis_index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();

        let mut alg = BoundAlgebra {
            name: name.to_string(),
            quiver,
            relations,
            p,
            truncation,
            loewy_bound: 0,
            gb,
            basis,
            basis_index,
            right_mult: Vec::new(),
            by_ends: HashMap::new(),
        };
        alg.right_mult = (0..alg.basis.len())
            .map(|b| {
                let path = &alg.basis[b];
                let at = path.target(&alg.quiver);
                (0..alg.quiver.arrow_count())
                    .map(|a| {
                        if alg.quiver.arrow(a).source != at {
                            return None;
                        }
                        let mut word = path.arrows.clone();
                        word.push(a);
                        Some(alg.reduce_word(&word))
                    })
                    .collect()
            })
            .collect();
        for (i, b) in alg.basis.iter().enumerate() {
            alg.by_ends.entry((b.start, b.target(&alg.quiver))).or_default().push(i);
        }
        alg.loewy_bound = alg.radical_nilpotency();
        if alg.loewy_bound > truncation.max(2) || alg.loewy_bound == usize::MAX {
            return Err(Error::NotAdmissible {
                bound: truncation,
                reason: if alg.loewy_bound == usize::MAX {
                    "the radical is not nilpotent modulo I".into()
                } else {
                    format!("J^{} is the first power inside I", alg.loewy_bound)
                },
            });
        }
        if alg.loewy_bound < 2 && alg.quiver.arrow_count() > 0 {
            // arrows survive, so J ⊄ I; admissibility needs m >= 2
            alg.loewy_bound = 2;
        }
        if truncation < 2 && alg.quiver.arrow_count() > 0 {
            return Err(Error::NotAdmissible { bound: truncation, reason: "admissible ideals need m >= 2".into() });
        }
        Ok(alg)
    }

    fn reduce_word(&self, word: &[usize]) -> SparseVec {
        let start = self.quiver.arrow(word[0]).source;
        let r = self.gb.reduce(&Poly::from_terms([(word.to_vec(), 1)], self.p), self.p);
        let mut out: SparseVec = r
            .terms()
            .map(|(w, c)| {
                let path = Path { start, arrows: w.arrows().to_vec() };
                (self.basis_index[&path], c)
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Least m with rad^m = 0, computed inside the finite-dimensional quotient.
    fn radical_nilpotency(&self) -> usize {
        let dim = self.basis.len();
        let mut layer: Vec<SparseVec> =
            (0..dim).filter(|&b| !self.basis[b].is_empty()).map(|b| vec![(b, 1)]).collect();
        let mut power = 1;
        while !layer.is_empty() {
            if power > dim + 1 {
                return usize::MAX;
            }
            let mut next = Vec::new();
            for v in &layer {
                for a in 0..self.quiver.arrow_count() {
                    let w = self.mul_arrow(v, a);
                    if !w.is_empty() {
                        next.push(w);
                    }
                }
            }
            layer = self.span_basis(&next);
            power += 1;
        }
        power
    }

    fn span_basis(&self, vs: &[SparseVec]) -> Vec<SparseVec> {
        if vs.is_empty() {
            return Vec::new();
        }
        let dim = self.basis.len();
        let mut m = FpMatrix::zeros(vs.len(), dim, self.p);
        for (i, v) in vs.iter().enumerate() {
            for &(b, c) in v {
                m.set(i, b, c);
            }
        }
        let e = m.echelon();
        (0..e.basis.rows())
            .map(|r| e.basis.row(r).iter().enumerate().filter(|(_, &c)| c != 0).map(|(b, &c)| (b, c)).collect())
            .collect()
    }

    /// Normal form of `v * arrow`; zero when not composable.
    pub fn mul_arrow(&self, v: &SparseVec, a: usize) -> SparseVec {
        let mut acc: HashMap<usize, u32> = HashMap::new();
        for &(b, c) in v {
            if let Some(Some(prod)) = self.right_mult[b].get(a) {
                for &(t, d) in prod {
                    let e = acc.entry(t).or_insert(0);
                    *e = (*e + mul_mod(c, d, self.p)) % self.p;
                }
            }
        }
        let mut out: SparseVec = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        out.sort_unstable();
        out
    }

    /// Normal form of a single path.
    pub fn normal_form_path(&self, path: &Path) -> SparseVec {
        let mut v = vec![(self.basis_index[&Path::trivial(path.start)], 1)];
        for &a in &path.arrows {
            v = self.mul_arrow(&v, a);
        }
        v
    }

    /// Normal form of a combination of paths.
    pub fn normal_form(&self, elem: &[(u32, Path)]) -> SparseVec {
        let mut acc: HashMap<usize, u32> = HashMap::new();
        for (c, path) in elem {
            for (b, d) in self.normal_form_path(path) {
                let e = acc.entry(b).or_insert(0);
                *e = (*e + mul_mod(*c % self.p, d, self.p)) % self.p;
            }
        }
        let mut out: SparseVec = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        out.sort_unstable();
        out
    }

    /// Opposite algebra: arrows and relation paths reversed.
    pub fn opposite(&self) -> Result<BoundAlgebra> {
        let q = self.quiver.reversed();
        let rels = self.relations.iter().map(|r| r.reversed(&self.quiver)).collect();
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        BoundAlgebra::build(&name, q, rels, self.p, self.truncation)
    }

    /// Full subalgebra on a vertex set that no arrow leaves.
    pub fn restrict(&self, vertices: &[usize], name: &str) -> Result<BoundAlgebra> {
        let inside = |v: usize| vertices.contains(&v);
        let mut q = Quiver::new::<&str>(&[], &[])?;
        let mut vmap = HashMap::new();
        for &v in vertices {
            vmap.insert(v, q.add_vertex(self.quiver.vertex_name(v))?);
        }
        let mut amap = HashMap::new();
        for (i, a) in self.quiver.arrows().iter().enumerate() {
            if inside(a.source) && !inside(a.target) {
                return Err(Error::InvalidQuiver(format!("arrow {} leaves the vertex set", a.name)));
            }
            if inside(a.source) {
                let id = q.add_arrow(&a.name, self.quiver.vertex_name(a.source), self.quiver.vertex_name(a.target))?;
                amap.insert(i, id);
            }
        }
        let rels = self
            .relations
            .iter()
            .filter(|r| inside(r.start()))
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, w)| (*c, Path { start: vmap[&w.start], arrows: w.arrows.iter().map(|a| amap[a]).collect() }))
                    .collect(),
            })
            .collect();
        BoundAlgebra::build(name, q, rels, self.p, self.truncation)
    }

    /// e·A·e for a convex vertex set: the arrows between the vertices and
    /// the relations whose paths stay inside. Convexity is not checked.
    pub fn corner(&self, vertices: &[usize], name: &str) -> Result<BoundAlgebra> {
        let inside = |v: usize| vertices.contains(&v);
        let mut q = Quiver::new::<&str>(&[], &[])?;
        let mut vmap = HashMap::new();
        for &v in vertices {
            vmap.insert(v, q.add_vertex(self.quiver.vertex_name(v))?);
        }
        let mut amap = HashMap::new();
        for (i, a) in self.quiver.arrows().iter().enumerate() {
            if inside(a.source) && inside(a.target) {
                let id = q.add_arrow(&a.name, self.quiver.vertex_name(a.source), self.quiver.vertex_name(a.target))?;
                amap.insert(i, id);
            }
        }
        let rels = self
            .relations
            .iter()
            .filter(|r| r.terms.iter().all(|(_, w)| inside(w.start) && w.arrows.iter().all(|a| amap.contains_key(a))))
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, w)| (*c, Path { start: vmap[&w.start], arrows: w.arrows.iter().map(|a| amap[a]).collect() }))
                    .collect(),
            })
            .collect();
        BoundAlgebra::build(name, q, rels, self.p, self.truncation)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Least m with J^m ⊆ I (at least 2 when there are arrows).
    pub fn loewy_bound(&self) -> usize {
        self.loewy_bound
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, path: &Path) -> Option<usize> {
        self.basis_index.get(path).copied()
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Normal paths from `v` to `w`, as basis indices in basis order.
    pub fn paths_between(&self, v: usize, w: usize) -> &[usize] {
        self.by_ends.get(&(v, w)).map(|x| x.as_slice()).unwrap_or(&[])
    }

    pub fn paths_from(&self, v: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&b| self.basis[b].start == v).collect()
    }

    pub fn display_vec(&self, v: &SparseVec) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|&(b, c)| format!("{c}*{}", self.basis[b].display(&self.quiver)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::neg_mod;

    fn a2() -> BoundAlgebra {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        BoundAlgebra::build("A2", q, vec![], 101, 30).unwrap()
    }

    pub(crate) fn exterior(p: u32) -> BoundAlgebra {
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
        BoundAlgebra::build("A", q, rels, p, 30).unwrap()
    }

    #[test]
    fn a2_basis() {
        let a = a2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.loewy_bound(), 2);
    }

    #[test]
    fn exterior_dimension_and_normal_forms() {
        let a = exterior(101);
        assert_eq!(a.dim(), 8);
        assert_eq!(a.loewy_bound(), 4);
        let g11 = Path { start: 0, arrows: vec![0, 0] };
        assert!(a.normal_form(&[(1, g11)]).is_empty());
        let g21 = Path { start: 0, arrows: vec![1, 0] };
        let g12 = Path { start: 0, arrows: vec![0, 1] };
        let idx = a.basis_index(&g12).unwrap();
        assert_eq!(a.normal_form(&[(1, g21)]), vec![(idx, neg_mod(1, 101))]);
        for rel in a.relations() {
            assert!(a.normal_form(&rel.terms).is_empty());
        }
    }

    #[test]
    fn loop_square_needs_m_at_least_two() {
        let q = Quiver::new(&["0"], &[("g", "0", "0")]).unwrap();
        let rel = Relation::new(vec![(1, Path { start: 0, arrows: vec![0, 0] })]);
        let err = BoundAlgebra::build("L", q.clone(), vec![rel.clone()], 101, 1).unwrap_err();
        assert!(matches!(err, Error::NotAdmissible { .. }));
        assert_eq!(BoundAlgebra::build("L", q, vec![rel], 101, 2).unwrap().dim(), 2);
    }

    #[test]
    fn free_loop_is_not_admissible() {
        let q = Quiver::new(&["0"], &[("g", "0", "0")]).unwrap();
        assert!(BoundAlgebra::build("L", q, vec![], 101, 30).is_err());
    }

    #[test]
    fn non_nilpotent_relation_rejected() {
        // g^2 - g^3 leaves g^2 = g^3 = ... nonzero
        let q = Quiver::new(&["0"], &[("g", "0", "0")]).unwrap();
        let rel = Relation::new(vec![
            (1, Path { start: 0, arrows: vec![0, 0] }),
            (100, Path { start: 0, arrows: vec![0, 0, 0] }),
        ]);
        assert!(BoundAlgebra::build("L", q, vec![rel], 101, 30).is_err());
    }

    #[test]
    fn malformed_relation() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1"), ("c", "1", "1")]).unwrap();
        let rel = Relation::new(vec![
            (1, Path { start: 0, arrows: vec![0, 1] }),
            (1, Path { start: 0, arrows: vec![2, 0] }),
        ]);
        assert!(matches!(
            BoundAlgebra::build("X", q, vec![rel], 101, 30),
            Err(Error::MalformedRelation(_))
        ));
    }

    #[test]
    fn opposite_is_involution() {
        let a = exterior(101);
        let op = a.opposite().unwrap();
        assert_eq!(op.dim(), 8);
        assert_eq!(op.opposite().unwrap(), a);
        let a2 = a2();
        let a2op = a2.opposite().unwrap();
        assert_eq!(a2op.quiver().arrow(0).source, 1);
        assert_eq!(a2op.quiver().arrow(0).target, 0);
    }

    #[test]
    fn path_counts_per_vertex_sum_to_dim() {
        let a = a2();
        let total: usize = (0..a.vertex_count()).map(|v| a.paths_from(v).len()).sum();
        assert_eq!(total, a.dim());
    }
}
