use knots_core::lattice::{project_any, LatticePolygon};
use std::time::Instant;
fn main() {
    let p: LatticePolygon = "1,1,2,2,3,5,6,2,6,4,1,5,6,5".parse().unwrap();
    let t = Instant::now();
    match project_any(&p, 100_000) {
        Ok((code, variant, axis)) => println!("ok axis={axis} via {variant}: {code} ({:?})", t.elapsed()),
        Err(e) => println!("fail: {e} ({:?})", t.elapsed()),
    }
}
