//! Parse an algebra from the text format and inspect it.

use quiverit::cli::dsl::{parse_algebra, print_algebra, AlgebraSource};
use quiverit::decomp::Session;
use quiverit::repmod::Rep;

const KRONECKER_LOOP: &str = "\
algebra K field 101
vertex 1 2
arrow a: 1 -> 2
arrow b: 1 -> 2
arrow c: 2 -> 2
relation 1 c*c
relation 1 a*c - 1 b*c
";

fn main() -> quiverit::Result<()> {
    let src = parse_algebra(KRONECKER_LOOP)?;
    let alg = src.build()?;
    println!("{} over F_{}: dimension {}", alg.name(), alg.prime(), alg.dim());
    for (v, p) in (0..alg.vertex_count()).map(|v| (v, Rep::projective(&alg, v))) {
        println!("  P{}: dims {:?}, socle {:?}", alg.quiver().vertex_name(v), p.dims(), p.socle_dims());
    }
    let mut s = Session::with_defaults(&alg);
    let d = s.decompose(&Rep::projective(&alg, 0).radical().module)?;
    println!("  rad P1 has {} indecomposable summands", d.count());
    print!("{}", print_algebra(&AlgebraSource::of(&alg)));
    Ok(())
}
