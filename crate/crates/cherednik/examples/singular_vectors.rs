//! Singular vectors in the polynomial representation of S_n at c = 1/m,
//! against the predicted lowest weights.

use cherednik::groups::build_symmetric;
use cherednik::scalars::{rat, Cyclotomic};
use cherednik::typea::kasatani_weights;
use cherednik::verma::{point_params, singular_vectors, Verma};

fn main() {
    for (n, m) in [(3usize, 2usize), (4, 3), (4, 2)] {
        let g = build_symmetric(n).unwrap();
        let c = rat(1, m as i64);
        let predicted: Vec<String> = kasatani_weights(n, 1, m).unwrap().iter().map(|w| format!("{} @ {}", w.tau, w.degree)).collect();
        println!("S_{} c = {}: predicted {}", n, c, predicted.join(", "));
        let mut v = Verma::new(&g, g.trivial(), point_params(&g, &[c]).unwrap(), Cyclotomic::one());
        for d in 1..=6 {
            let s = singular_vectors(&mut v, d);
            if s.dimension > 0 {
                let types: Vec<String> = s.types.iter().map(|(l, k)| format!("{} x{}", l, k)).collect();
                println!("  degree {}: dim {} [{}]", d, s.dimension, types.join(", "));
            }
        }
    }
}
