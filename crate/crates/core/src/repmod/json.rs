//! Module exchange format:
//! `{"algebra": name, "dims": {vertex: n}, "maps": {arrow: [[c, ...], ...]}}`
//! with row-major matrices whose rows index the source-vertex basis.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::Rep;
use crate::error::{Error, Result};
use crate::exactfield::{reduce_i64, FpMatrix};
use crate::pathalgebra::BoundAlgebra;

pub fn module_to_json(m: &Rep) -> Value {
    let alg = m.algebra();
    let q = alg.quiver();
    let dims: Map<String, Value> =
        (0..q.vertex_count()).map(|v| (q.vertex_name(v).to_string(), json!(m.dim_at(v)))).collect();
    let maps: Map<String, Value> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| (a.name.clone(), json!(m.map(i).to_rows())))
        .collect();
    json!({"algebra": alg.name(), "dims": dims, "maps": maps})
}

pub fn module_from_json(alg: &Arc<BoundAlgebra>, v: &Value) -> Result<Rep> {
    let bad = |msg: &str| Error::Input(format!("module JSON: {msg}"));
    let q = alg.quiver();
    let p = alg.prime();
    if let Some(name) = v.get("algebra").and_then(Value::as_str) {
        if name != alg.name() {
            return Err(bad(&format!("module is over {name}, expected {}", alg.name())));
        }
    }
    let dims_obj = v.get("dims").and_then(Value::as_object).ok_or_else(|| bad("missing dims"))?;
    let mut dims = vec![0usize; q.vertex_count()];
    for (name, d) in dims_obj {
        let vi = q.vertex(name).ok_or_else(|| bad(&format!("unknown vertex {name}")))?;
        dims[vi] = d.as_u64().ok_or_else(|| bad("dimension is not a natural number"))? as usize;
    }
    let empty = Map::new();
    let maps_obj = v.get("maps").and_then(Value::as_object).unwrap_or(&empty);
    for name in maps_obj.keys() {
        if q.arrow_id(name).is_none() {
            return Err(bad(&format!("unknown arrow {name}")));
        }
    }
    let mut maps = Vec::with_capacity(q.arrow_count());
    for a in q.arrows() {
        let (r, c) = (dims[a.source], dims[a.target]);
        let m = match maps_obj.get(&a.name) {
            None => FpMatrix::zeros(r, c, p),
            Some(rows) => {
                let rows = rows.as_array().ok_or_else(|| bad("matrix is not a list of rows"))?;
                let parsed: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .ok_or_else(|| bad("row is not a list"))?
                            .iter()
                            .map(|x| x.as_i64().ok_or_else(|| bad("entry is not an integer")))
                            .collect::<Result<Vec<i64>>>()
                    })
                    .collect::<Result<_>>()?;
                if parsed.len() != r || parsed.iter().any(|row| row.len() != c) {
                    return Err(bad(&format!("matrix for {} must be {r}x{c}", a.name)));
                }
                let rows: Vec<Vec<u32>> = parsed.iter().map(|row| row.iter().map(|&x| reduce_i64(x, p)).collect()).collect();
                FpMatrix::from_rows(&rows, c, p)
            }
        };
        maps.push(m);
    }
    Rep::new_bound(alg, dims, maps)
}

#[cfg(test)]
mod tests {
    use super::super::testalg::*;
    use super::*;

    #[test]
    fn roundtrip() {
        let b = ex_b();
        let m = Rep::projective(&b, 0);
        let j = module_to_json(&m);
        assert_eq!(module_from_json(&b, &j).unwrap(), m);
    }

    #[test]
    fn rejects_unbound() {
        let b = ex_b();
        let j = json!({"algebra": "B", "dims": {"1": 1}, "maps": {"bb1": [[1]]}});
        assert!(module_from_json(&b, &j).is_err());
    }
}
