//! Algebra and gluing sources shipped with the tool.

pub const ALL: &[(&str, &str)] = &[
    ("exA.alg", include_str!("../../fixtures/exA.alg")),
    ("exB.alg", include_str!("../../fixtures/exB.alg")),
    ("a2.alg", include_str!("../../fixtures/a2.alg")),
    ("nakayama-selfinj.alg", include_str!("../../fixtures/nakayama-selfinj.alg")),
    ("nakayama-gldim.alg", include_str!("../../fixtures/nakayama-gldim.alg")),
    ("point.alg", include_str!("../../fixtures/point.alg")),
    ("loop.alg", include_str!("../../fixtures/loop.alg")),
    ("exC.glue", include_str!("../../fixtures/exC.glue")),
    ("exCop.glue", include_str!("../../fixtures/exCop.glue")),
    ("remark54.glue", include_str!("../../fixtures/remark54.glue")),
    ("rad-square-zero-pair.glue", include_str!("../../fixtures/rad-square-zero-pair.glue")),
];

/// Looks a fixture up by file name, with or without a `fixtures/` prefix
/// or extension.
pub fn get(name: &str) -> Option<&'static str> {
    let base = name.rsplit('/').next().unwrap_or(name);
    ALL.iter()
        .find(|(n, _)| *n == base || n.rsplit_once('.').map(|(stem, _)| stem) == Some(base))
        .map(|(_, text)| *text)
}

pub fn is_gluing(name: &str) -> bool {
    name.ends_with(".glue")
}
