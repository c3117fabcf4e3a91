//! Sweep the (c1, c2) plane for an even dihedral group and draw the verdicts
//! next to the closed-form locus. '+' consistent, '.' negative, '!' disagreement.

use cherednik::groups::build_dihedral_even;
use cherednik::scalars::rational::farey_range;
use cherednik::scalars::rat;
use cherednik::unitarity::{predictor_dihedral, Certifier};

fn main() {
    let g = build_dihedral_even(2).unwrap();
    let axis = farey_range(&rat(-1, 1), &rat(1, 1), 4);
    for label in ["triv", "eps1", "tau1"] {
        let tau = g.parse_irrep(label).unwrap();
        let locus = predictor_dihedral(&g, tau).unwrap();
        let cert = Certifier::new(&g, tau, 6).unwrap();
        println!("{} {}: {}", g.kind, label, locus);
        for c2 in axis.iter().rev() {
            let row: Vec<_> = axis.iter().map(|c1| vec![c1.clone(), c2.clone()]).collect();
            let line: String = cert
                .sweep(&row, None)
                .into_iter()
                .zip(&row)
                .map(|(v, p)| match (v.unwrap().is_non_unitary(), locus.contains(p)) {
                    (false, true) => '+',
                    (true, false) => '.',
                    _ => '!',
                })
                .collect();
            println!("  {:>5} {}", c2.to_string(), line);
        }
    }
}
