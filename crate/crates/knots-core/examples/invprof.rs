use knots_core::codes::parse_code;
use knots_core::groups::{partitions_of, realizes_class, wirtinger};
use std::time::Instant;

fn main() {
    for s in ["", "1:4 3:6 5:2", "1:4 3:6 5:8 7:2"] {
        let code = parse_code(s).unwrap();
        let pres = wirtinger(&code).unwrap();
        for m in 1..=5u32 {
            for p in partitions_of(m) {
                let t = Instant::now();
                let yes = realizes_class(&pres, &p).unwrap();
                let dt = t.elapsed();
                if dt.as_millis() > 100 {
                    println!("code={s:?} partition={p} -> {yes} in {dt:?}");
                }
            }
        }
    }
    println!("done");
}
