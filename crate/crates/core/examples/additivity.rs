//! Decide whether φ is additive on φ-zero modules, or find a witness.

use quiverit::cli::load_algebra;
use quiverit::decomp::Session;
use quiverit::analysis::AdditivityVerdict;

fn main() -> quiverit::Result<()> {
    for name in ["a2.alg", "exA.alg", "remark54.glue"] {
        for op in [false, true] {
            let alg = load_algebra(name, None, op)?.alg;
            let mut s = Session::with_defaults(&alg);
            let verdict = s.phi_zero_probe(100)?;
            let side = if op { "opposite" } else { "algebra" };
            match &verdict {
                AdditivityVerdict::Witness(w) => println!(
                    "{name} {side}: witness {:?} and {:?}, φ of the sum {} ({:?})",
                    w.m1.dims(),
                    w.m2.dims(),
                    w.phi_sum.value,
                    w.phi_sum.status
                ),
                v => println!("{name} {side}: {}", v.class_name()),
            }
        }
    }
    Ok(())
}
