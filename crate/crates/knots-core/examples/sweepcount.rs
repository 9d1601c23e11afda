use std::collections::BTreeSet;
use knots_core::enumerate::{reduce_fully, ReduceOptions};
use knots_core::lattice::{project_any, LatticePolygon};
use std::time::Instant;

include!("../tests/sweep_enum.rs");

fn main() {
    let t = Instant::now();
    let words = enumerate_cyclic_min_polygons(14);
    println!("{} cyclic-min polygons <= 14 edges in {:?}", words.len(), t.elapsed());
    let mut by_len = std::collections::BTreeMap::new();
    for w in &words { *by_len.entry(w.len()).or_insert(0usize) += 1; }
    println!("{by_len:?}");
    let t = Instant::now();
    let opts = ReduceOptions::default();
    let mut stubborn = 0usize;
    for (i, word) in words.iter().enumerate() {
        let p = LatticePolygon::new(word.clone()).unwrap();
        let (code, _, _) = match project_any(&p, 200) {
            Ok(x) => x,
            Err(_) => { stubborn += 1; project_any(&p, 200_000).unwrap_or_else(|e| panic!("{p}: {e}")) }
        };
        let r = reduce_fully(&code, &opts).unwrap();
        assert_eq!(r.n(), 0, "{p} reduced to {r}");
        if (i + 1) % 100000 == 0 { println!("  {} done {:?}", i + 1, t.elapsed()); }
    }
    println!("sweep {:?}; {} needed deep perturbation", t.elapsed(), stubborn);
}
