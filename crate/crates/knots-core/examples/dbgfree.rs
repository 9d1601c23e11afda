use knots_core::codes::parse_code;
use knots_core::planarity::{Shadow, ShadowAnalysis, intersection_count};

fn main() {
    let c = parse_code("1:4 3:6 5:8 7:2").unwrap();
    let s = Shadow::of_code(&c);
    let a = ShadowAnalysis::new(&s).unwrap();
    println!("total loops: {}", a.loops().len());
    for l in a.free_loops() {
        println!("free: corners={:?} labels={:010b} arcs={:?}", l.corners, l.labels, l.arc_list(8));
    }
    // check the two specific loops crossing status
    for l in a.free_loops() {
        for b in a.loops() {
            let ic = intersection_count(&s, l, b);
            if ic != 0 { println!("  !! free loop {:?} crossed by {:?} ({} times)", l.corners, b.corners, ic); }
        }
    }
}
