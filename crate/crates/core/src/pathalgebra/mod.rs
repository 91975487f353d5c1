//! Quivers, admissible relations and bound quiver algebras kQ/I.

mod algebra;
pub mod groebner;
mod quiver;

use std::sync::Arc;

pub use algebra::{BoundAlgebra, SparseVec, DEFAULT_TRUNCATION};
pub use quiver::{Arrow, Path, Quiver, Relation};

use crate::error::Result;
use crate::repmod::Rep;

pub fn build_algebra(name: &str, q: Quiver, rels: Vec<Relation>, p: u32, m_max: usize) -> Result<Arc<BoundAlgebra>> {
    BoundAlgebra::build(name, q, rels, p, m_max).map(Arc::new)
}

/// The indecomposable projective e_v A as a representation.
pub fn projective(a: &Arc<BoundAlgebra>, v: usize) -> Rep {
    Rep::projective(a, v)
}

pub fn opposite(a: &BoundAlgebra) -> Result<Arc<BoundAlgebra>> {
    a.opposite().map(Arc::new)
}

pub fn normal_form(a: &BoundAlgebra, elem: &[(u32, Path)]) -> SparseVec {
    a.normal_form(elem)
}
