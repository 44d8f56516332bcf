use reflfact_core::config::Caps;
use reflfact_core::group::GroupSpec;
use reflfact_core::verify::run_verify;
use std::time::Instant;

fn main() {
    let caps = Caps::default();
    let groups = [
        "S3", "S4", "S5", "S6", "B2", "B3", "D4", "G(3,1,2)", "G(4,4,2)",
        "I2(2)", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "I2(7)", "I2(8)", "G(3,1,3)",
    ];
    let mut all_ok = true;
    for spec in groups {
        let t = Instant::now();
        match run_verify(&GroupSpec::parse(spec).unwrap(), &caps, 0, None) {
            Ok(m) => {
                let fails: Vec<_> = m.checks.iter().filter(|c| !c.passed).collect();
                println!("{spec}: passed={} checks={} elapsed={:?}", m.passed, m.checks.len(), t.elapsed());
                for f in fails {
                    all_ok = false;
                    println!("   FAIL {}: {}", f.name, f.detail);
                }
            }
            Err(e) => {
                all_ok = false;
                println!("{spec}: ERROR {e}");
            }
        }
    }
    std::process::exit(if all_ok { 0 } else { 1 });
}
