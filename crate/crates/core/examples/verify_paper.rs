//! Runs the acceptance criteria one by one with wall-clock times.
//! Pass criterion numbers as arguments to run a subset.

use std::time::Instant;

use quiverit::cli::verify;
use quiverit::decomp::Config;

fn main() {
    let ids: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids = if ids.is_empty() { (1..=9).collect() } else { ids };
    let config = Config::default();
    for id in ids {
        let t = Instant::now();
        let o = verify::run(id, &config);
        println!("{o}  [{:.1}s]", t.elapsed().as_secs_f64());
        for d in &o.details {
            println!("    {d}");
        }
    }
}
