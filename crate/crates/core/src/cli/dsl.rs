//! Line-oriented algebra sources:
//!
//! ```text
//! algebra NAME field P truncate M
//! vertex v1 v2 ...
//! arrow name: v -> w
//! relation c1 p1 [+|- c2 p2 ...]
//! ```
//!
//! Paths are `*`-joined arrow names read left to right; `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pathalgebra::{build_algebra, BoundAlgebra, Path, Quiver, Relation};

pub const DEFAULT_PRIME: u32 = 101;
pub const DEFAULT_TRUNCATION: usize = 12;

/// A relation as signed coefficients on arrow-name paths.
pub type Terms = Vec<(i64, Vec<String>)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSource {
    pub name: String,
    pub prime: u32,
    pub truncation: usize,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<Terms>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_path(tok: &str, line: usize, arrows: &BTreeSet<&str>) -> Result<Vec<String>> {
    let parts: Vec<String> = tok.split('*').map(str::to_string).collect();
    for p in &parts {
        if !arrows.contains(p.as_str()) {
            return Err(perr(line, format!("unknown arrow `{p}`")));
        }
    }
    Ok(parts)
}

/// Terms of a relation body; a missing coefficient means 1.
pub(crate) fn parse_terms(body: &str, line: usize, arrows: &BTreeSet<&str>) -> Result<Terms> {
    let toks: Vec<&str> = body.split_whitespace().collect();
    if toks.is_empty() {
        return Err(perr(line, "empty relation"));
    }
    let mut terms = Vec::new();
    let mut i = 0;
    let mut sign = 1i64;
    let mut expect_term = true;
    while i < toks.len() {
        let t = toks[i];
        if !expect_term {
            sign = match t {
                "+" => 1,
                "-" => -1,
                _ => return Err(perr(line, format!("expected `+` or `-`, found `{t}`"))),
            };
            expect_term = true;
            i += 1;
            continue;
        }
        let (coef, path_tok) = match t.parse::<i64>() {
            Ok(c) => {
                i += 1;
                let p = toks.get(i).ok_or_else(|| perr(line, "coefficient without a path"))?;
                (c, *p)
            }
            Err(_) => (1, t),
        };
        terms.push((sign * coef, parse_path(path_tok, line, arrows)?));
        expect_term = false;
        i += 1;
    }
    if expect_term {
        return Err(perr(line, "relation ends with an operator"));
    }
    Ok(terms)
}

pub fn parse_algebra(text: &str) -> Result<AlgebraSource> {
    let mut header: Option<(String, u32, usize)> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut relations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (kw, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match kw {
            "algebra" => {
                if header.is_some() {
                    return Err(perr(line, "second `algebra` header"));
                }
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let name = toks.first().ok_or_else(|| perr(line, "algebra needs a name"))?;
                if !is_ident(name) {
                    return Err(perr(line, format!("bad algebra name `{name}`")));
                }
                let (mut p, mut m) = (DEFAULT_PRIME, DEFAULT_TRUNCATION);
                let mut i = 1;
                while i < toks.len() {
                    let val = toks.get(i + 1).ok_or_else(|| perr(line, format!("`{}` needs a value", toks[i])))?;
                    match toks[i] {
                        "field" => p = val.parse().map_err(|_| perr(line, format!("bad prime `{val}`")))?,
                        "truncate" => m = val.parse().map_err(|_| perr(line, format!("bad truncation `{val}`")))?,
                        other => return Err(perr(line, format!("unexpected `{other}` in header"))),
                    }
                    i += 2;
                }
                header = Some((name.to_string(), p, m));
            }
            "vertex" | "vertices" => {
                if rest.is_empty() {
                    return Err(perr(line, "vertex line without names"));
                }
                for v in rest.split_whitespace() {
                    if !is_ident(v) {
                        return Err(perr(line, format!("bad vertex name `{v}`")));
                    }
                    if vertices.iter().any(|x| x == v) {
                        return Err(perr(line, format!("duplicate vertex `{v}`")));
                    }
                    vertices.push(v.to_string());
                }
            }
            "arrow" => {
                let (name, ends) = rest.split_once(':').ok_or_else(|| perr(line, "expected `arrow name: v -> w`"))?;
                let name = name.trim();
                let (s, t) = ends.split_once("->").ok_or_else(|| perr(line, "expected `v -> w`"))?;
                let (s, t) = (s.trim(), t.trim());
                if !is_ident(name) {
                    return Err(perr(line, format!("bad arrow name `{name}`")));
                }
                if arrows.iter().any(|a| a.0 == name) || vertices.iter().any(|v| v == name) {
                    return Err(perr(line, format!("duplicate identifier `{name}`")));
                }
                for v in [s, t] {
                    if !vertices.iter().any(|x| x == v) {
                        return Err(perr(line, format!("unknown vertex `{v}`")));
                    }
                }
                arrows.push((name.to_string(), s.to_string(), t.to_string()));
            }
            "relation" => {
                let names: BTreeSet<&str> = arrows.iter().map(|a| a.0.as_str()).collect();
                relations.push(parse_terms(rest, line, &names)?);
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }
    let (name, prime, truncation) = header.ok_or_else(|| perr(1, "missing `algebra NAME` header"))?;
    Ok(AlgebraSource { name, prime, truncation, vertices, arrows, relations })
}

pub(crate) fn print_terms(terms: &Terms) -> String {
    let mut out = String::new();
    for (i, (c, p)) in terms.iter().enumerate() {
        let path = p.join("*");
        if i == 0 {
            let _ = write!(out, "{c} {path}");
        } else if *c < 0 {
            let _ = write!(out, " - {} {path}", -c);
        } else {
            let _ = write!(out, " + {c} {path}");
        }
    }
    out
}

pub fn print_algebra(src: &AlgebraSource) -> String {
    let mut out = format!("algebra {} field {} truncate {}\n", src.name, src.prime, src.truncation);
    if !src.vertices.is_empty() {
        let _ = writeln!(out, "vertex {}", src.vertices.join(" "));
    }
    for (n, s, t) in &src.arrows {
        let _ = writeln!(out, "arrow {n}: {s} -> {t}");
    }
    for r in &src.relations {
        let _ = writeln!(out, "relation {}", print_terms(r));
    }
    out
}

impl AlgebraSource {
    pub fn quiver(&self) -> Result<Quiver> {
        Quiver::new(&self.vertices, &self.arrows)
    }

    pub fn build(&self) -> Result<Arc<BoundAlgebra>> {
        let q = self.quiver()?;
        let rels = self.relations.iter().map(|r| terms_to_relation(&q, r, self.prime)).collect::<Result<Vec<_>>>()?;
        build_algebra(&self.name, q, rels, self.prime, self.truncation)
    }

    /// Reads an algebra back into source form.
    pub fn of(alg: &BoundAlgebra) -> AlgebraSource {
        let q = alg.quiver();
        let p = alg.prime() as i64;
        let signed = |c: u32| if c as i64 > p / 2 { c as i64 - p } else { c as i64 };
        AlgebraSource {
            name: alg.name().to_string(),
            prime: alg.prime(),
            truncation: alg.truncation(),
            vertices: q.vertex_names().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| (a.name.clone(), q.vertex_name(a.source).to_string(), q.vertex_name(a.target).to_string()))
                .collect(),
            relations: alg
                .relations()
                .iter()
                .map(|r| {
                    r.terms.iter().map(|(c, path)| (signed(*c), path.arrows.iter().map(|&a| q.arrow(a).name.clone()).collect())).collect()
                })
                .collect(),
        }
    }
}

pub(crate) fn terms_to_relation(q: &Quiver, terms: &Terms, p: u32) -> Result<Relation> {
    let mut out = Vec::new();
    for (c, names) in terms {
        let arrows = names
            .iter()
            .map(|n| q.arrow_id(n).ok_or_else(|| Error::MalformedRelation(format!("unknown arrow `{n}`"))))
            .collect::<Result<Vec<_>>>()?;
        let start = q.arrow(arrows[0]).source;
        out.push((crate::exactfield::reduce_i64(*c, p), Path { start, arrows }));
    }
    Ok(Relation::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXT: &str = "algebra A field 101 truncate 6\nvertex 0\narrow g1: 0 -> 0\narrow g2: 0 -> 0\narrow g3: 0 -> 0\n\
        relation g1*g1\nrelation g2*g2\nrelation g3*g3\nrelation g1*g2 + g2*g1\nrelation g1*g3 + g3*g1\nrelation g2*g3 + g3*g2\n";

    #[test]
    fn parses_exterior_algebra() {
        let src = parse_algebra(EXT).unwrap();
        assert_eq!(src.relations.len(), 6);
        assert_eq!(src.build().unwrap().dim(), 8);
        assert_eq!(parse_algebra(&print_algebra(&src)).unwrap(), src);
    }

    #[test]
    fn positioned_errors() {
        let bad = "algebra X\nvertex 1 2\narrow a: 1 -> 3\n";
        match parse_algebra(bad) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("unknown vertex"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_algebra("algebra X\nvertex 1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_algebra("algebra X\nvertex 1\narrow a: 1 -> 1\nrelation 2 a*b\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_algebra("vertex 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_algebra("algebra X\nvertex 1\narrow a: 1 -> 1\nrelation a*a +\n"), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn comments_and_signs() {
        let src = parse_algebra("# nakayama\nalgebra N\nvertex a b  # two\narrow x: a -> b\narrow y: b -> a\nrelation 3 x*y - 2 x*y\n").unwrap();
        assert_eq!(src.relations[0], vec![(3, vec!["x".into(), "y".into()]), (-2, vec!["x".into(), "y".into()])]);
        assert_eq!(src.prime, DEFAULT_PRIME);
    }

    fn source_strategy() -> impl Strategy<Value = AlgebraSource> {
        (1usize..4, 1usize..5, 0usize..4, any::<u64>()).prop_map(|(nv, na, nr, seed)| {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            let arrows: Vec<(String, String, String)> = (0..na)
                .map(|i| (format!("a{i}"), vertices[rng.gen_range(0..nv)].clone(), vertices[rng.gen_range(0..nv)].clone()))
                .collect();
            let relations = (0..nr)
                .map(|_| {
                    (0..rng.gen_range(1..4))
                        .map(|_| {
                            let len = rng.gen_range(1..4);
                            let path = (0..len).map(|_| arrows[rng.gen_range(0..na)].0.clone()).collect();
                            (rng.gen_range(-5i64..6).max(1) * if rng.gen() { 1 } else { -1 }, path)
                        })
                        .collect()
                })
                .collect();
            AlgebraSource { name: format!("F{seed}"), prime: 101, truncation: rng.gen_range(2..9), vertices, arrows, relations }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn round_trip(src in source_strategy()) {
            let text = print_algebra(&src);
            let back = parse_algebra(&text).unwrap();
            prop_assert_eq!(&back, &src);
            prop_assert_eq!(print_algebra(&back), text);
        }
    }
}
