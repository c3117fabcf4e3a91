//! Build the reflection groups in scope and list their irreps and
//! reflection classes.
//!
//!     cargo run --example groups -- DihEven:3

use cherednik::groups::{GroupKind, ReflectionGroup};

fn main() {
    let specs: Vec<String> = std::env::args().skip(1).collect();
    let specs = if specs.is_empty() { vec!["Sn:4".into(), "Cyc:3".into(), "DihOdd:2".into(), "DihEven:2".into()] } else { specs };
    for spec in specs {
        let kind: GroupKind = spec.parse().expect("group spec like Sn:4");
        let g = ReflectionGroup::build(kind).expect("group in range");
        println!("{}: order {}, dim h {}, {} reflections in {} classes, degrees {:?}", kind, g.order(), g.dim_h, g.num_reflections(), g.num_reflection_classes(), g.degrees);
        for (i, irr) in g.irreps.iter().enumerate() {
            println!("  irrep {:>2}  {:<8} dim {}", i, irr.label.to_string(), irr.dim);
        }
    }
}
