//! Hook statistics, the f_(tau,i) product formula and the closed-form
//! unitarity locus for every partition of n.

use cherednik::groups::Partition;
use cherednik::typea::{f_closed_uni, genera_locus, hook_stats, tau_line_gram};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    for t in Partition::all(n) {
        let s = hook_stats(&t);
        println!("{:<10} ell {} m* {} N {} ct {:>3}   locus {}", t.to_string(), s.ell, s.m_star, s.big_n, s.content, genera_locus(&t));
        if t.parts()[0] > 1 {
            for i in 1..=s.m_star {
                let gram = tau_line_gram(&t, i).unwrap();
                println!("    i = {}: f = {}   line Gram = {}", i, f_closed_uni(&t, i), gram);
            }
        }
    }
}
