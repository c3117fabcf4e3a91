//! Intertwiner identities on low degrees of M_kappa(triv) for S_n.

use cherednik::scalars::rat;
use cherednik::typea::intertwiner_check;

fn main() {
    for n in 2..=4 {
        let r = intertwiner_check(n, &rat(1000003, 999983), 3);
        println!("n = {}: all identities hold: {}", n, r.all_ok());
        println!("{}", serde_json::to_string(&r.to_json()).unwrap());
    }
}
