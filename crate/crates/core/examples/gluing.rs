//! Build a gluing from a glue file, check its hypotheses and the syzygy split.

use quiverit::cli::load_glued;
use quiverit::decomp::Config;
use quiverit::morita::{GluedSession, H4Form};
use quiverit::repmod::random_module;

fn main() -> quiverit::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "exC.glue".into());
    let (g, inputs) = load_glued(&name, None)?;
    println!("{}: C has dimension {} ({} inputs)", name, g.c.dim(), inputs.len());
    let c = g.c.clone();
    let mut gs = GluedSession::new(g, Config::default());
    for form in [H4Form::CrossSemisimple, H4Form::FullSemisimple] {
        println!("H4 {form:?}: {:?}", gs.check_h4(form, 200)?);
    }
    let mut split = 0;
    for seed in 0..20 {
        let r = gs.verify_syzygy_split(&random_module(&c, seed, 6))?;
        if r.top_clause != Some(false) {
            split += 1;
        }
    }
    println!("syzygy split holds on {split}/20 random modules");
    Ok(())
}
