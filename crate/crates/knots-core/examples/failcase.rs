use knots_core::codes::parse_code;
use knots_core::planarity::{Shadow, is_realizable};
use knots_core::moves;

fn main() {
    for start in [parse_code("1:4 3:6 5:2").unwrap(), parse_code("1:4 3:6 5:8 7:2").unwrap()] {
        for pos in 1..=start.two_n() + 1 {
            if let Ok(y) = moves::apply_r1_up(&start, pos) {
                let s = Shadow::of_code(&y);
                if knots_core::planarity::embed(&s).is_none() {
                    println!("twist pos={pos} of {start}: embed says NO, loops say {}", is_realizable(&s).unwrap());
                    println!("  y = {y}");
                }
                for site in moves::r3_sites(&y).into_iter().take(2) {
                    let z = moves::apply_r3(&y, &site).unwrap();
                    let s = Shadow::of_code(&z);
                    if knots_core::planarity::embed(&s).is_none() {
                        println!("slide after twist pos={pos}: embed NO, loops {}", is_realizable(&s).unwrap());
                        println!("  z = {z}");
                    }
                }
            }
        }
        let analysis = knots_core::planarity::ShadowAnalysis::new(&Shadow::of_code(&start)).unwrap();
        for pair in moves::r2_up_sites(&analysis) {
            for of in [true, false] {
                let y = moves::apply_r2_up(&start, pair, of).unwrap();
                let s = Shadow::of_code(&y);
                if knots_core::planarity::embed(&s).is_none() {
                    println!("poke {pair:?} of={of} of {start}: embed NO, loops {}", is_realizable(&s).unwrap());
                    println!("  y = {y}");
                }
            }
        }
    }
    println!("scan done");
}
