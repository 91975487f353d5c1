//! Gluing files:
//!
//! ```text
//! gluing NAME
//! a exA.alg
//! b exB.alg
//! alpha al0: 0 -> 1
//! beta be: v -> 0
//! ideal extended
//! relation al0*bb1
//! ```
//!
//! `a`/`b` name algebra files, resolved next to the gluing file first and
//! then among the bundled fixtures.

use std::collections::BTreeSet;
use std::path::Path;

use super::dsl::{parse_terms, print_terms, AlgebraSource};
use super::fixtures;
use crate::error::{Error, Result};
use crate::morita::{glue, Connector, GluedAlgebra, GluingSpec, IdealMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingSource {
    pub name: String,
    pub a: String,
    pub b: String,
    pub alphas: Vec<(String, String, String)>,
    pub betas: Vec<(String, String, String)>,
    /// None for `ideal generated`.
    pub extra: Option<Vec<super::dsl::Terms>>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn connector(rest: &str, line: usize) -> Result<(String, String, String)> {
    let (name, ends) = rest.split_once(':').ok_or_else(|| perr(line, "expected `name: v -> w`"))?;
    let (s, t) = ends.split_once("->").ok_or_else(|| perr(line, "expected `v -> w`"))?;
    Ok((name.trim().to_string(), s.trim().to_string(), t.trim().to_string()))
}

/// Syntax only; arrow names in extra relations are checked once A and B are
/// known.
pub fn parse_gluing(text: &str) -> Result<(GluingSource, Vec<(usize, String)>)> {
    let mut name = None;
    let (mut a, mut b) = (None, None);
    let (mut alphas, mut betas) = (Vec::new(), Vec::new());
    let mut mode: Option<bool> = None;
    let mut raw_relations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (kw, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match kw {
            "gluing" => name = Some(rest.to_string()),
            "a" => a = Some(rest.to_string()),
            "b" => b = Some(rest.to_string()),
            "alpha" => alphas.push(connector(rest, line)?),
            "beta" => betas.push(connector(rest, line)?),
            "ideal" => {
                mode = Some(match rest {
                    "generated" => false,
                    "extended" => true,
                    other => return Err(perr(line, format!("ideal mode must be `generated` or `extended`, found `{other}`"))),
                })
            }
            "relation" => {
                if mode != Some(true) {
                    return Err(perr(line, "relation lines need `ideal extended` first"));
                }
                raw_relations.push((line, rest.to_string()));
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }
    let a = a.ok_or_else(|| perr(1, "missing `a ALGEBRA` line"))?;
    let b = b.ok_or_else(|| perr(1, "missing `b ALGEBRA` line"))?;
    let extended = mode.ok_or_else(|| perr(1, "missing `ideal generated|extended` line"))?;
    let src = GluingSource {
        name: name.unwrap_or_else(|| "C".into()),
        a,
        b,
        alphas,
        betas,
        extra: if extended { Some(Vec::new()) } else { None },
    };
    Ok((src, raw_relations))
}

pub fn print_gluing(src: &GluingSource) -> String {
    let mut out = format!("gluing {}\na {}\nb {}\n", src.name, src.a, src.b);
    for (n, s, t) in &src.alphas {
        out += &format!("alpha {n}: {s} -> {t}\n");
    }
    for (n, s, t) in &src.betas {
        out += &format!("beta {n}: {s} -> {t}\n");
    }
    match &src.extra {
        None => out += "ideal generated\n",
        Some(rels) => {
            out += "ideal extended\n";
            for r in rels {
                out += &format!("relation {}\n", print_terms(r));
            }
        }
    }
    out
}

/// Algebra text by file path or bundled fixture name.
pub fn resolve_algebra_text(reference: &str, base: Option<&Path>) -> Result<String> {
    if let Some(dir) = base {
        let p = dir.join(reference);
        if p.exists() {
            return Ok(std::fs::read_to_string(p)?);
        }
    }
    let p = Path::new(reference);
    if p.exists() {
        return Ok(std::fs::read_to_string(p)?);
    }
    fixtures::get(reference)
        .map(str::to_string)
        .ok_or_else(|| Error::Input(format!("cannot find algebra `{reference}` as a file or bundled fixture")))
}

/// Parses, resolves the two algebras and glues.
pub fn load_gluing(text: &str, base: Option<&Path>, prime: Option<u32>) -> Result<(GluingSource, GluedAlgebra)> {
    let (mut src, raw_relations) = parse_gluing(text)?;
    let load = |r: &str| -> Result<AlgebraSource> {
        let mut s = super::dsl::parse_algebra(&resolve_algebra_text(r, base)?)?;
        if let Some(p) = prime {
            s.prime = p;
        }
        Ok(s)
    };
    let (sa, sb) = (load(&src.a)?, load(&src.b)?);
    let names: BTreeSet<String> = sa
        .arrows
        .iter()
        .chain(&sb.arrows)
        .map(|x| x.0.clone())
        .chain(src.alphas.iter().chain(&src.betas).map(|x| x.0.clone()))
        .collect();
    let names_ref: BTreeSet<&str> = names.iter().map(String::as_str).collect();
    if let Some(extra) = &mut src.extra {
        for (line, body) in &raw_relations {
            extra.push(parse_terms(body, *line, &names_ref)?);
        }
    }
    let mode = match &src.extra {
        None => IdealMode::Generated,
        Some(rels) => IdealMode::Extended(rels.clone()),
    };
    let spec = GluingSpec {
        name: src.name.clone(),
        a: sa.build()?,
        b: sb.build()?,
        alphas: src.alphas.iter().map(|(n, s, t)| Connector::new(n, s, t)).collect(),
        betas: src.betas.iter().map(|(n, s, t)| Connector::new(n, s, t)).collect(),
        mode,
    };
    Ok((src, glue(&spec)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_gluings_load() {
        for name in ["exC.glue", "exCop.glue", "remark54.glue", "rad-square-zero-pair.glue"] {
            let text = fixtures::get(name).unwrap();
            let (src, g) = load_gluing(text, None, None).unwrap();
            let (back, _) = parse_gluing(&print_gluing(&src)).unwrap();
            assert_eq!(back.alphas, src.alphas);
            assert!(g.c.dim() > 0);
        }
    }

    #[test]
    fn errors_are_positioned() {
        assert!(matches!(parse_gluing("a x\nb y\nrelation g\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_gluing("a x\nb y\nideal maybe\n"), Err(Error::Parse { line: 3, .. })));
        let bad = "a exA.alg\nb exB.alg\nalpha al0: 0 -> 1\nideal extended\nrelation al0*nope\n";
        assert!(matches!(load_gluing(bad, None, None), Err(Error::Parse { line: 5, .. })));
    }
}
