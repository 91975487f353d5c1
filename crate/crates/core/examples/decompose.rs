//! Krull-Schmidt decomposition and isomorphism testing of random modules.

use quiverit::cli::load_algebra;
use quiverit::decomp::Session;
use quiverit::repmod::{random_module, Rep};

fn main() -> quiverit::Result<()> {
    let alg = load_algebra("exB.alg", None, false)?.alg;
    let mut s = Session::with_defaults(&alg);
    for seed in 0..5 {
        let m = random_module(&alg, seed, 10);
        let d = s.decompose(&m)?;
        let parts: Vec<String> = d
            .summands
            .iter()
            .map(|&(id, k)| format!("{k}x{:?}", s.representative(id).dims()))
            .collect();
        println!("seed {seed}: dims {:?} = {}", m.dims(), parts.join(" + "));
    }
    let p = Rep::projective(&alg, 0);
    let twisted = Rep::sum_of(&[p.clone(), Rep::simple(&alg, 0)]);
    let d1 = s.decompose(&twisted)?;
    let d2 = s.decompose(&Rep::sum_of(&[Rep::simple(&alg, 0), p]))?;
    println!("P1 + S1 and S1 + P1 decompose alike: {}", d1.summands == d2.summands);
    Ok(())
}
