use reflfact_core::config::Caps;
use reflfact_core::group::{build_group, GroupSpec};
use reflfact_core::characters::{conjugacy_classes, character_table};
use std::time::Instant;

fn main() {
    for spec in ["S5", "S6", "D4", "G(3,1,3)", "B3", "I2(8)"] {
        let t0 = Instant::now();
        let g = build_group(&GroupSpec::parse(spec).unwrap(), &Caps::default()).unwrap();
        let t1 = Instant::now();
        let classes = conjugacy_classes(&g);
        let table = character_table(&g, &classes, &Caps::default(), 0).unwrap();
        let t2 = Instant::now();
        println!("{spec}: |W|={} rank={} |R|={} classes={} degrees={:?} build={:?} table={:?}",
            g.order(), g.rank(), g.num_reflections(), classes.len(),
            table.degrees, t1-t0, t2-t1);
    }
}
