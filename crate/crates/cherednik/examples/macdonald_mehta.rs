//! Pole bookkeeping for the Macdonald-Mehta factor: the first pole in c > 0
//! sits at 1/h.

use cherednik::groups::{build_dihedral_odd, build_symmetric};
use cherednik::scalars::rational::farey_range;
use cherednik::scalars::rat;
use cherednik::unitarity::{mm_first_pole, mm_pole_order, MMData};

fn main() {
    let groups = vec![build_symmetric(4).unwrap(), build_symmetric(6).unwrap(), build_dihedral_odd(2).unwrap()];
    for g in &groups {
        let data = MMData::of_group(g);
        let poles: Vec<String> = farey_range(&rat(0, 1), &rat(1, 1), g.coxeter_number() as u64)
            .into_iter()
            .filter_map(|c| {
                let k = mm_pole_order(&data, &c);
                (k != 0).then(|| format!("{}:{}", c, k))
            })
            .collect();
        println!("{} degrees {:?}: first pole {:?}; orders in (0,1] {}", g.kind, data.degrees, mm_first_pole(&data).map(|c| c.to_string()), poles.join(" "));
    }
}
