use knots_core::enumerate::{enumerate_knots, RunConfig};
use std::time::Instant;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let up: u8 = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    let cfg = RunConfig { max_crossings: max, up_budget: up, ..RunConfig::default() };
    let t = Instant::now();
    let result = enumerate_knots(&cfg).unwrap();
    println!("elapsed: {:?}", t.elapsed());
    println!("n\tshadows\tassign\tknots");
    for row in &result.summary {
        println!("{}\t{}\t{}\t{}", row.n, row.shadows, row.assignments, row.survivors);
    }
    for r in &result.catalog.records {
        if r.n() >= 3 { println!("n={} code={} shadow={} bits={}", r.n(), r.code, r.shadow_id, r.assignment_bits); }
    }
}
