//! Syzygies, projective dimension and φ for the simples of a bundled algebra.

use quiverit::cli::load_algebra;
use quiverit::decomp::Session;
use quiverit::homology::syzygy;
use quiverit::repmod::Rep;

fn main() -> quiverit::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "exB.alg".into());
    let alg = load_algebra(&name, None, false)?.alg;
    let mut s = Session::with_defaults(&alg);
    for v in 0..alg.vertex_count() {
        let simple = Rep::simple(&alg, v);
        let omega = syzygy(&simple);
        let pd = s.pd(&simple)?;
        let phi = s.phi(&simple)?;
        println!(
            "S{}: Ω dims {:?}, pd {:?}, φ = {} ({:?}), trace {:?}",
            alg.quiver().vertex_name(v),
            omega.dims(),
            pd,
            phi.value,
            phi.status,
            phi.rank_trace
        );
    }
    let all = Rep::sum_of(&(0..alg.vertex_count()).map(|v| Rep::simple(&alg, v)).collect::<Vec<_>>());
    let phi = s.phi(&all)?;
    println!("φ of the sum of simples: {} ({:?})", phi.value, phi.status);
    Ok(())
}
