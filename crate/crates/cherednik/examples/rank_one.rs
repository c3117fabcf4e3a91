//! Z/m in b-coordinates: the degree-n Gram entry is a_n = prod (k - b_k),
//! and L(chi_k) is unitary iff the shifted entries are positive up to the
//! first zero.

use cherednik::groups::build_cyclic;
use cherednik::scalars::{rat, Rational};
use cherednik::unitarity::{fmt_point, predictor_rank1, rank1_shift, Certifier};

fn main() {
    let m = 4;
    let g = build_cyclic(m).unwrap();
    let points: Vec<Vec<Rational>> = vec![
        vec![rat(1, 2), rat(1, 1), rat(5, 2)],
        vec![rat(1, 1), rat(7, 1), rat(-3, 1)],
        vec![rat(3, 2), rat(0, 1), rat(0, 1)],
    ];
    for k in 0..m {
        let cert = Certifier::new(&g, g.parse_irrep(&k.to_string()).unwrap(), 10).unwrap();
        for b in &points {
            let v = cert.certify(b).unwrap();
            let pred = predictor_rank1(&rank1_shift(b, k));
            println!("chi{} b = ({}): predictor {:<5} verdict {:?}", k, fmt_point(b), pred, v.witness_degree().map_or("consistent".into(), |w| format!("negative in degree {}", w)));
        }
    }
}
