//! Noncommutative Buchberger completion for path algebras under the
//! length-lexicographic order (longer is larger, ties broken by arrow id).

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::cmp::Reverse;

use crate::exactfield::{add_mod, inv_mod, mul_mod, neg_mod};

/// A nontrivial path written as its arrow word. Ordered by length, then
/// lexicographically by arrow id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    len: usize,
    arrows: Vec<usize>,
}

impl Word {
    pub fn new(arrows: Vec<usize>) -> Self {
        Word { len: arrows.len(), arrows }
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Sparse combination of words; coefficients nonzero mod p.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Word, u32>,
}

impl Poly {
    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<usize>, u32)>, p: u32) -> Self {
        let mut out = Poly::default();
        for (w, c) in terms {
            out.add_term(Word::new(w), c, p);
        }
        out
    }

    pub fn add_term(&mut self, w: Word, c: u32, p: u32) {
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = add_mod(*e.get(), c, p);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Word, u32)> {
        self.terms.iter().next_back().map(|(w, &c)| (w, c))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, u32)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn max_len(&self) -> usize {
        self.leading().map(|(w, _)| w.len()).unwrap_or(0)
    }

    fn make_monic(&mut self, p: u32) {
        if let Some((_, c)) = self.leading() {
            let inv = inv_mod(c, p);
            for v in self.terms.values_mut() {
                *v = mul_mod(*v, inv, p);
            }
        }
    }

    /// `self += c * left * g * right` for words left/right.
    fn add_multiple(&mut self, c: u32, left: &[usize], g: &Poly, right: &[usize], p: u32) {
        for (w, gc) in g.terms() {
            let mut word = Vec::with_capacity(left.len() + w.len() + right.len());
            word.extend_from_slice(left);
            word.extend_from_slice(w.arrows());
            word.extend_from_slice(right);
            self.add_term(Word::new(word), mul_mod(c, gc, p), p);
        }
    }
}

/// Monic reduction system: leading words are pairwise non-dividing.
#[derive(Clone, Debug, Default)]
pub struct GroebnerBasis {
    elems: Vec<Poly>,
    lead_index: HashMap<Vec<usize>, usize>,
    max_lead: usize,
}

fn find_subword(word: &[usize], idx: &HashMap<Vec<usize>, usize>, max_lead: usize) -> Option<(usize, usize)> {
    for start in 0..word.len() {
        for l in 1..=max_lead.min(word.len() - start) {
            if let Some(&g) = idx.get(&word[start..start + l]) {
                return Some((start, g));
            }
        }
    }
    None
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Poly] {
        &self.elems
    }

    pub fn leading_words(&self) -> impl Iterator<Item = &[usize]> {
        self.elems.iter().map(|g| g.leading().unwrap().0.arrows())
    }

    /// Position and element of the first leading word dividing `word`.
    pub fn divisor_of(&self, word: &[usize]) -> Option<(usize, usize)> {
        find_subword(word, &self.lead_index, self.max_lead)
    }

    /// True when some leading word is a suffix of `word`.
    pub fn has_reducible_suffix(&self, word: &[usize]) -> bool {
        (1..=self.max_lead.min(word.len())).any(|l| self.lead_index.contains_key(&word[word.len() - l..]))
    }

    /// Full reduction to a combination of irreducible words.
    pub fn reduce(&self, f: &Poly, p: u32) -> Poly {
        let mut work = f.clone();
        let mut out = Poly::default();
        while let Some((w, c)) = work.leading().map(|(w, c)| (w.clone(), c)) {
            match self.divisor_of(w.arrows()) {
                Some((pos, g)) => {
                    let lw = self.elems[g].leading().unwrap().0.len();
                    let left = &w.arrows()[..pos];
                    let right = &w.arrows()[pos + lw..];
                    work.add_multiple(neg_mod(c, p), left, &self.elems[g], right, p);
                }
                None => {
                    work.terms.remove(&w);
                    out.terms.insert(w, c);
                }
            }
        }
        out
    }

    fn rebuild_index(&mut self) {
        self.lead_index.clear();
        self.max_lead = 0;
        for (i, g) in self.elems.iter().enumerate() {
            let w = g.leading().unwrap().0;
            self.max_lead = self.max_lead.max(w.len());
            self.lead_index.insert(w.arrows().to_vec(), i);
        }
    }
}

#[derive(Debug)]
pub enum Completion {
    Complete(GroebnerBasis),
    /// Some critical pair exceeded the degree bound.
    DegreeBound(usize),
}

type PairQueue = BinaryHeap<Reverse<(usize, usize, usize, usize)>>;

/// Queue every proper overlap "suffix of lead(a) = prefix of lead(b)".
fn push_overlaps(store: &[Poly], pairs: &mut PairQueue, a: usize, b: usize) {
    let la = store[a].leading().unwrap().0.arrows();
    let lb = store[b].leading().unwrap().0.arrows();
    let (wa, wb) = (la.len(), lb.len());
    for k in 1..wa.min(wb) {
        if la[wa - k..] == lb[..k] {
            pairs.push(Reverse((wa + wb - k, a, b, k)));
        }
    }
}

/// Buchberger completion processing critical pairs by increasing degree.
/// Pairs of degree above `degree_bound` abort the computation.
pub fn complete(relations: Vec<Poly>, p: u32, degree_bound: usize) -> Completion {
    let mut gb = GroebnerBasis::default();
    // slots replaced during interreduction are marked dead; their pairs are skipped
    let mut alive: Vec<bool> = Vec::new();
    let mut store: Vec<Poly> = Vec::new();
    let mut pairs: PairQueue = BinaryHeap::new();
    let mut todo: Vec<Poly> = relations;

    loop {
        while let Some(f) = todo.pop() {
            let mut h = gb.reduce(&f, p);
            if h.is_zero() {
                continue;
            }
            h.make_monic(p);
            let lead = h.leading().unwrap().0.arrows().to_vec();
            // drop elements whose leading word is divisible by the new one
            let mut kept = Vec::new();
            for (slot, g) in store.iter().enumerate() {
                if !alive[slot] {
                    continue;
                }
                let gw = g.leading().unwrap().0.arrows();
                if gw.windows(lead.len()).any(|win| win == lead.as_slice()) {
                    alive[slot] = false;
                    todo.push(g.clone());
                } else {
                    kept.push(slot);
                }
            }
            let new_slot = store.len();
            store.push(h);
            alive.push(true);
            kept.push(new_slot);
            for &other in &kept {
                push_overlaps(&store, &mut pairs, new_slot, other);
                if other != new_slot {
                    push_overlaps(&store, &mut pairs, other, new_slot);
                }
            }
            gb.elems = kept.iter().map(|&s| store[s].clone()).collect();
            gb.rebuild_index();
        }
        let Some(Reverse((deg, a, b, k))) = pairs.pop() else {
            break;
        };
        if !alive[a] || !alive[b] {
            continue;
        }
        if deg > degree_bound {
            return Completion::DegreeBound(deg);
        }
        // S = g_a * v - u * g_b where lead(g_a) = u o, lead(g_b) = o v
        let la = store[a].leading().unwrap().0.arrows().to_vec();
        let lb = store[b].leading().unwrap().0.arrows().to_vec();
        let u = &la[..la.len() - k];
        let v = &lb[k..];
        let mut s = Poly::default();
        s.add_multiple(1, &[], &store[a], v, p);
        s.add_multiple(neg_mod(1, p), u, &store[b], &[], p);
        todo.push(s);
    }
    gb.elems = (0..store.len()).filter(|&s| alive[s]).map(|s| store[s].clone()).collect();
    gb.rebuild_index();
    // tail-reduce for a canonical reduced basis
    let mut reduced = Vec::with_capacity(gb.elems.len());
    for i in 0..gb.elems.len() {
        let g = &gb.elems[i];
        let (lw, _) = g.leading().unwrap();
        let mut tail = g.clone();
        tail.terms.remove(lw);
        let mut r = gb.reduce(&tail, p);
        r.terms.insert(lw.clone(), 1);
        reduced.push(r);
    }
    reduced.sort_by(|x, y| x.leading().unwrap().0.cmp(y.leading().unwrap().0));
    gb.elems = reduced;
    gb.rebuild_index();
    Completion::Complete(gb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_relations_complete() {
        // loops 0,1,2 at one vertex: squares and anticommutators
        let p = 101;
        let mut rels = Vec::new();
        for i in 0..3 {
            rels.push(Poly::from_terms([(vec![i, i], 1)], p));
            for j in i + 1..3 {
                rels.push(Poly::from_terms([(vec![i, j], 1), (vec![j, i], 1)], p));
            }
        }
        let Completion::Complete(gb) = complete(rels, p, 20) else { panic!() };
        // gamma_2 gamma_1 reduces to -gamma_1 gamma_2
        let r = gb.reduce(&Poly::from_terms([(vec![1, 0], 1)], p), p);
        assert_eq!(r, Poly::from_terms([(vec![0, 1], 100)], p));
        let cube = gb.reduce(&Poly::from_terms([(vec![2, 1, 0], 1)], p), p);
        assert_eq!(cube, Poly::from_terms([(vec![0, 1, 2], 100)], p));
    }
}
