//! Certify one parameter point and show the cheap necessary conditions.
//!
//!     cargo run --example certify -- Sn:4 2,2 1/2

use cherednik::groups::{GroupKind, ReflectionGroup};
use cherednik::scalars::parse_rational;
use cherednik::unitarity::{certify_point, necessary_conditions};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (spec, tau, point) = match args.as_slice() {
        [a, b, c] => (a.as_str(), b.as_str(), c.as_str()),
        _ => ("Sn:4", "2,2", "1/2"),
    };
    let g = ReflectionGroup::build(spec.parse::<GroupKind>().unwrap()).unwrap();
    let tau = g.parse_irrep(tau).unwrap();
    let c: Vec<_> = point.split(',').map(|s| parse_rational(s).unwrap()).collect();

    let nec = necessary_conditions(&g, tau, &c).unwrap();
    println!("necessary conditions: {}", serde_json::to_string(&nec.to_json()).unwrap());
    let v = certify_point(&g, tau, &c, 8).unwrap();
    println!("{}", serde_json::to_string_pretty(&v.to_json()).unwrap());
}
