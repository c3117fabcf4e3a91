//! Contravariant form on M_c(tau) degree by degree, computed twice: from
//! the Dunkl y-action and from the F-operator recursion.

use cherednik::groups::build_dihedral_odd;
use cherednik::scalars::ParamPoly;
use cherednik::verma::{param_arity, symbolic_params, Verma};

fn main() {
    let g = build_dihedral_odd(1).unwrap();
    let tau = g.parse_irrep("tau1").unwrap();
    let mut v = Verma::new(&g, tau, symbolic_params(&g).unwrap(), ParamPoly::one(param_arity(&g)));
    println!("{} tau1, h_c(tau) = {}", g.kind, v.h_weight());
    for m in 0..=3 {
        let gram = v.gram(m).clone();
        assert_eq!(gram, v.gram_via_f(m));
        println!("degree {} ({}x{}):", m, gram.rows, gram.cols);
        for i in 0..gram.rows {
            let row: Vec<String> = gram.row(i).iter().map(|p| p.to_string()).collect();
            println!("  [{}]", row.join(", "));
        }
    }
}
