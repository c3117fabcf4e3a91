//! Periodic standard tableaux of shape tau at integer kappa and the two
//! weight conditions of the spectral criterion.
//!
//!     cargo run --example tableaux -- 2,2 2 8

use cherednik::typea::{hook_stats, parse_partition, spectra_unitary_check};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let tau = parse_partition(args.first().map_or("2,1", |s| s)).unwrap();
    let kappa: i64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(hook_stats(&tau.conjugate()).big_n as i64);
    let bound: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3 * tau.n());
    match spectra_unitary_check(&tau, kappa, bound) {
        Ok(reps) => {
            println!("tau {} kappa {} bound {}: {} tableaux", tau, kappa, bound, reps.len());
            for r in &reps {
                let window: Vec<String> = r.tableau.window.iter().map(|(_, v)| v.to_string()).collect();
                let alpha: Vec<String> = r.content.alpha.iter().map(|a| a.to_string()).collect();
                println!("  window [{}] alpha [{}] {}", window.join(" "), alpha.join(" "), if r.passes() { "ok" } else { "FAIL" });
            }
        }
        Err(e) => println!("{}", e),
    }
}
