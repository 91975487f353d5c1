//! Apply the gluing propositions to a bundled gluing, with asserted facts.

use quiverit::cli::load_glued;
use quiverit::decomp::Config;
use quiverit::morita::{classify_gluing, Fact, FactKind, GluedSession, Side};

fn main() -> quiverit::Result<()> {
    let (g, _) = load_glued("exCop.glue", None)?;
    let mut gs = GluedSession::new(g, Config::default());
    let facts = [Fact::asserted(Side::B, FactKind::Lit(1))];
    let report = classify_gluing(&mut gs, &facts, 200)?;
    for c in &report.conclusions {
        println!("{}: {}", c.proposition, c.statement);
    }
    for n in &report.notes {
        println!("note: {n}");
    }
    Ok(())
}
