//! Module shorthands: `S1+S2`, `P1`, `I0`, `rad P1`, `top P1`, `soc P1`,
//! `omega S0`, `P1/socle`, `P1/rad`, `2*S1`, parentheses for grouping.
//! `P1/(S1+S2)` divides out the socle components at the listed vertices.
//! Anything ending in `.json` is read as a module file.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homology::syzygy;
use crate::pathalgebra::{opposite, BoundAlgebra};
use crate::repmod::{module_from_json, Rep};

fn bad(lit: &str, msg: &str) -> Error {
    Error::Input(format!("module literal `{lit}`: {msg}"))
}

/// Splits on `+` outside parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub fn parse_module(alg: &Arc<BoundAlgebra>, lit: &str) -> Result<Rep> {
    let lit = lit.trim();
    if lit.ends_with(".json") {
        let text = std::fs::read_to_string(lit)?;
        let v: serde_json::Value = serde_json::from_str(&text)?;
        return module_from_json(alg, &v);
    }
    let parts = split_top(lit);
    let mut mods = Vec::new();
    for p in parts {
        mods.push(term(alg, p.trim(), lit)?);
    }
    Ok(Rep::sum_of(&mods))
}

fn term(alg: &Arc<BoundAlgebra>, t: &str, whole: &str) -> Result<Rep> {
    if t.is_empty() {
        return Err(bad(whole, "empty summand"));
    }
    if let Some((k, rest)) = t.split_once('*') {
        if let Ok(k) = k.trim().parse::<usize>() {
            return Ok(term(alg, rest.trim(), whole)?.power(k));
        }
    }
    for (suffix, f) in [("/socle", quotient_socle as fn(&Rep) -> Result<Rep>), ("/rad", quotient_rad)] {
        if let Some(base) = t.strip_suffix(suffix) {
            return f(&term(alg, base.trim(), whole)?);
        }
    }
    if let Some((base, simples)) = t.rsplit_once("/(") {
        let list = simples.strip_suffix(')').ok_or_else(|| bad(whole, "unclosed `/(`"))?;
        let m = term(alg, base.trim(), whole)?;
        let q = alg.quiver();
        let mut keep = vec![false; q.vertex_count()];
        for s in list.split('+') {
            let name = s.trim().strip_prefix('S').ok_or_else(|| bad(whole, "only simples may follow `/(`"))?;
            keep[q.vertex(name).ok_or_else(|| bad(whole, &format!("unknown vertex `{name}`")))?] = true;
        }
        let p = alg.prime();
        let rows: Vec<_> = m
            .socle_rows()
            .into_iter()
            .enumerate()
            .map(|(v, r)| if keep[v] { r } else { crate::exactfield::FpMatrix::zeros(0, m.dim_at(v), p) })
            .collect();
        return Ok(m.quotient_by_rows(&rows)?.0);
    }
    for (prefix, f) in [
        ("rad ", (|m: &Rep| Ok(m.radical().module)) as fn(&Rep) -> Result<Rep>),
        ("top ", |m: &Rep| Ok(m.top())),
        ("soc ", |m: &Rep| Ok(m.socle().module)),
        ("omega ", |m: &Rep| Ok(syzygy(m))),
    ] {
        if let Some(rest) = t.strip_prefix(prefix) {
            return f(&term(alg, rest.trim(), whole)?);
        }
    }
    if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        return parse_module(alg, inner);
    }
    let q = alg.quiver();
    let vertex = |name: &str| q.vertex(name).ok_or_else(|| bad(whole, &format!("unknown vertex `{name}`")));
    if t == "0" {
        return Ok(Rep::zero(alg));
    }
    let mut cs = t.chars();
    let head = cs.next().unwrap_or(' ');
    match (head, cs.as_str()) {
        ('S', v) => Ok(Rep::simple(alg, vertex(v)?)),
        ('P', v) => Ok(Rep::projective(alg, vertex(v)?)),
        ('I', v) => {
            let v = vertex(v)?;
            let op = opposite(alg)?;
            Rep::projective(&op, v).dualize(alg)
        }
        _ => Err(bad(whole, &format!("cannot read `{t}`"))),
    }
}

fn quotient_socle(m: &Rep) -> Result<Rep> {
    Ok(m.quotient_by_rows(&m.socle_rows())?.0)
}

fn quotient_rad(m: &Rep) -> Result<Rep> {
    Ok(m.top())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::testalg::*;

    #[test]
    fn shorthands() {
        let b = ex_b();
        assert_eq!(parse_module(&b, "S1+S2").unwrap().dims(), &[1, 1]);
        assert_eq!(parse_module(&b, "P1").unwrap().dims(), &[2, 1]);
        assert_eq!(parse_module(&b, "rad P1").unwrap().dims(), &[1, 1]);
        assert_eq!(parse_module(&b, "P1/socle").unwrap().dims(), &[1, 0]);
        assert_eq!(parse_module(&b, "2*S1 + (S2+P2)").unwrap().dims(), &[3, 3]);
        assert_eq!(parse_module(&b, "omega S1").unwrap().dims(), &[1, 1]);
        assert_eq!(parse_module(&b, "P1/(S2)").unwrap().dims(), &[2, 0]);
        assert_eq!(parse_module(&b, "I1").unwrap().dims(), &[2, 1]);
        let a = a2();
        assert_eq!(parse_module(&a, "I2").unwrap().dims(), &[1, 1]);
        assert!(matches!(parse_module(&b, "S3"), Err(Error::Input(_))));
        assert!(matches!(parse_module(&b, "Q1"), Err(Error::Input(_))));
    }
}
