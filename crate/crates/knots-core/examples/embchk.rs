use knots_core::planarity::{Shadow, is_realizable};
use knots_core::enumerate::{ShadowCursor, next_shadow};

fn main() {
    for n in 1..=5usize {
        let mut cur = Some(ShadowCursor::first(n));
        let mut total = 0;
        let mut mismatch = 0;
        while let Some(c) = cur {
            let s = c.shadow();
            let loops = is_realizable(&s).unwrap();
            let emb = knots_core::planarity::embed(&s).is_some();
            total += 1;
            if loops != emb {
                mismatch += 1;
                if mismatch <= 5 {
                    println!("n={n} f={:?} loops={loops} embed={emb}", c.permutation());
                }
            }
            cur = next_shadow(&c);
        }
        println!("n={n}: {total} shadows, {mismatch} mismatches");
    }
}
