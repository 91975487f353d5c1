use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Finite quiver with named vertices and arrows. Arrow order is the
/// declared order and breaks ties in the path order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let mut q = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
        };
        for v in vertices {
            q.add_vertex(v.as_ref())?;
        }
        for (name, s, t) in arrows {
            q.add_arrow(name.as_ref(), s.as_ref(), t.as_ref())?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vertex_index.contains_key(name) {
            return Err(Error::InvalidQuiver(format!("duplicate vertex {name}")));
        }
        let id = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize> {
        if self.arrow_index.contains_key(name) {
            return Err(Error::InvalidQuiver(format!("duplicate arrow {name}")));
        }
        let s = self.vertex(source).ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {source}")))?;
        let t = self.vertex(target).ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {target}")))?;
        let id = self.arrows.len();
        self.arrows.push(Arrow { name: name.to_string(), source: s, target: t });
        self.arrow_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v).map(|(i, _)| i)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v).map(|(i, _)| i)
    }

    /// Same vertices, every arrow reversed.
    pub fn reversed(&self) -> Quiver {
        let mut q = self.clone();
        for a in &mut q.arrows {
            std::mem::swap(&mut a.source, &mut a.target);
        }
        q
    }

    /// Connected components of the underlying graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for a in &self.arrows {
                    for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = id;
                            stack.push(y);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// A path: start vertex plus arrows composed left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, arrows: Vec::new() }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let first = *arrows
            .first()
            .ok_or_else(|| Error::MalformedRelation("empty arrow word".into()))?;
        let p = Path { start: q.arrow(first).source, arrows };
        p.check(q)?;
        Ok(p)
    }

    pub fn check(&self, q: &Quiver) -> Result<()> {
        let mut at = self.start;
        for &a in &self.arrows {
            let arr = q.arrow(a);
            if arr.source != at {
                return Err(Error::MalformedRelation(format!(
                    "arrow {} does not start at {}",
                    arr.name,
                    q.vertex_name(at)
                )));
            }
            at = arr.target;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map(|&a| q.arrow(a).target).unwrap_or(self.start)
    }

    /// Path in the opposite quiver.
    pub fn reversed(&self, q: &Quiver) -> Path {
        Path { start: self.target(q), arrows: self.arrows.iter().rev().copied().collect() }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertex_name(self.start))
        } else {
            self.arrows.iter().map(|&a| q.arrow(a).name.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}

/// Linear combination of parallel paths of length at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(u32, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(u32, Path)>) -> Self {
        Relation { terms }
    }

    pub fn validate(&self, q: &Quiver, p: u32) -> Result<()> {
        if self.terms.iter().all(|(c, _)| c % p == 0) {
            return Err(Error::MalformedRelation("all coefficients vanish".into()));
        }
        let (s0, t0) = {
            let w = &self.terms[0].1;
            (w.start, w.target(q))
        };
        for (_, w) in &self.terms {
            w.check(q)?;
            if w.len() < 2 {
                return Err(Error::MalformedRelation(format!("term {} has length < 2", w.display(q))));
            }
            if w.start != s0 || w.target(q) != t0 {
                return Err(Error::MalformedRelation(format!("term {} is not parallel", w.display(q))));
            }
        }
        Ok(())
    }

    pub fn start(&self) -> usize {
        self.terms[0].1.start
    }

    pub fn reversed(&self, q: &Quiver) -> Relation {
        Relation { terms: self.terms.iter().map(|(c, w)| (*c, w.reversed(q))).collect() }
    }

    pub fn display(&self, q: &Quiver) -> String {
        self.terms
            .iter()
            .map(|(c, w)| format!("{c} {}", w.display(q)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
