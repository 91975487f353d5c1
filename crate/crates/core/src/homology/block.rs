use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::pathalgebra::BoundAlgebra;
use crate::repmod::Rep;

/// A successor-closed vertex set W* whose full subalgebra is selfinjective.
/// Modules supported on W* have the same projective covers over the whole
/// algebra as over the subalgebra.
#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub vertices: Vec<usize>,
}

impl Block {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Nonzero dimension vector supported inside W*.
    pub fn supports(&self, dims: &[usize]) -> bool {
        !self.is_empty()
            && dims.iter().any(|&d| d > 0)
            && dims.iter().enumerate().all(|(v, &d)| d == 0 || self.vertices.contains(&v))
    }
}

/// Vertices reachable from v along arrows, v included.
pub fn successor_closure(alg: &BoundAlgebra, v: usize) -> Vec<usize> {
    let q = alg.quiver();
    let mut seen = BTreeSet::from([v]);
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for a in q.arrows_from(x) {
            let t = q.arrow(a).target;
            if seen.insert(t) {
                stack.push(t);
            }
        }
    }
    seen.into_iter().collect()
}

/// Exact selfinjectivity test: every P_w has a simple socle S_x and the
/// same dimension vector as the injective envelope D(P^op_x) of S_x.
pub fn is_selfinjective(alg: &Arc<BoundAlgebra>) -> Result<bool> {
    let op = Arc::new(alg.opposite()?);
    for w in 0..alg.vertex_count() {
        let p = Rep::projective(alg, w);
        let soc = p.socle_dims();
        if soc.iter().sum::<usize>() != 1 {
            return Ok(false);
        }
        let x = soc.iter().position(|&d| d == 1).unwrap();
        let inj = Rep::projective(&op, x).dualize(alg)?;
        if inj.dims() != p.dims() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// W*: the union of the successor closures cl(v) whose subalgebras are
/// selfinjective when that union is itself selfinjective, otherwise the
/// largest such closure.
pub fn selfinjective_block(alg: &Arc<BoundAlgebra>) -> Result<Block> {
    let mut good: Vec<Vec<usize>> = Vec::new();
    for v in 0..alg.vertex_count() {
        let cl = successor_closure(alg, v);
        if good.contains(&cl) {
            continue;
        }
        let sub = Arc::new(alg.restrict(&cl, "block")?);
        if is_selfinjective(&sub)? {
            good.push(cl);
        }
    }
    if good.is_empty() {
        return Ok(Block { vertices: Vec::new() });
    }
    let union: Vec<usize> = good.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if good.len() > 1 {
        let sub = Arc::new(alg.restrict(&union, "block")?);
        if is_selfinjective(&sub)? {
            return Ok(Block { vertices: union });
        }
    }
    let best = good.into_iter().max_by_key(|c| c.len()).unwrap();
    Ok(Block { vertices: best })
}

/// A strongly connected vertex set E with selfinjective corner eAe such
/// that every P_w·e is projective over eAe. Restriction to E is exact and
/// keeps projectives, so a module whose restriction is not projective has
/// infinite projective dimension.
#[derive(Clone, Debug)]
pub struct Corner {
    pub vertices: Vec<usize>,
    alg: Arc<BoundAlgebra>,
    /// Total dimension of each indecomposable projective of eAe.
    proj_dims: Vec<usize>,
}

impl Corner {
    pub fn restrict(&self, m: &Rep) -> Result<Rep> {
        let q = m.algebra().quiver();
        let dims = self.vertices.iter().map(|&v| m.dim_at(v)).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .filter(|(_, a)| self.vertices.contains(&a.source) && self.vertices.contains(&a.target))
            .map(|(i, _)| m.map(i).clone())
            .collect();
        Rep::new(&self.alg, dims, maps)
    }

    /// A module over the corner is projective iff it has the dimension of
    /// its projective cover.
    fn is_projective(&self, r: &Rep) -> bool {
        let cover: usize = r.top_dims().iter().zip(&self.proj_dims).map(|(t, d)| t * d).sum();
        cover == r.total_dim()
    }

    pub fn detects_infinite_pd(&self, m: &Rep) -> Result<bool> {
        Ok(!self.is_projective(&self.restrict(m)?))
    }
}

/// Strongly connected components, each sorted, in vertex order of their minima.
pub fn strong_components(alg: &BoundAlgebra) -> Vec<Vec<usize>> {
    let n = alg.vertex_count();
    let reach: Vec<Vec<usize>> = (0..n).map(|v| successor_closure(alg, v)).collect();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let comp: Vec<usize> = reach[v].iter().copied().filter(|&w| reach[w].contains(&v)).collect();
        for &w in &comp {
            seen[w] = true;
        }
        out.push(comp);
    }
    out
}

/// Corners on the strongly connected components that carry arrows.
pub fn selfinjective_corners(alg: &Arc<BoundAlgebra>) -> Result<Vec<Corner>> {
    let q = alg.quiver();
    let mut out = Vec::new();
    for comp in strong_components(alg) {
        let has_arrow = q.arrows().iter().any(|a| comp.contains(&a.source) && comp.contains(&a.target));
        if !has_arrow {
            continue;
        }
        let sub = Arc::new(alg.corner(&comp, "corner")?);
        if !is_selfinjective(&sub)? {
            continue;
        }
        let proj_dims = (0..comp.len()).map(|i| Rep::projective(&sub, i).total_dim()).collect();
        let corner = Corner { vertices: comp, alg: sub, proj_dims };
        let mut keeps_projectives = true;
        for w in 0..alg.vertex_count() {
            if corner.detects_infinite_pd(&Rep::projective(alg, w))? {
                keeps_projectives = false;
                break;
            }
        }
        if keeps_projectives {
            out.push(corner);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::testalg::*;

    #[test]
    fn selfinjectivity() {
        assert!(is_selfinjective(&ext_a()).unwrap());
        assert!(!is_selfinjective(&a2()).unwrap());
        assert!(!is_selfinjective(&ex_b()).unwrap());
    }

    #[test]
    fn blocks() {
        let a = ext_a();
        assert_eq!(selfinjective_block(&a).unwrap().vertices, vec![0]);
        let b = ex_b();
        assert!(selfinjective_block(&b).unwrap().is_empty());
        // the sink of A2 gives the trivial block {2}
        let blk = selfinjective_block(&a2()).unwrap();
        assert_eq!(blk.vertices, vec![1]);
        assert!(blk.supports(&[0, 1]));
        assert!(!blk.supports(&[1, 1]));
    }
}
