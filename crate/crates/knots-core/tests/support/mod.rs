//! Shared oracles for the integration suites, kept independent of the
//! library's own decision paths.

use std::collections::{BTreeSet, VecDeque};

use knots_core::codes::PairCode;
use knots_core::moves;
use knots_core::planarity::{Shadow, ShadowAnalysis};

/// Brute-force planarity oracle: try every transversal corner arrangement of
/// the 4-valent projection graph and accept when some arrangement has the
/// face count a sphere demands.
///
/// Written against its own vertex/slot graph representation, not the
/// library's dart encoding.
pub fn embeddable_oracle(shadow: &Shadow) -> bool {
    let n = shadow.n();
    if n == 0 {
        return true;
    }
    let two_n = shadow.two_n();
    // vertex of each passage label (0-based), in odd-label order
    let mut vertex = vec![usize::MAX; two_n as usize + 1];
    for (v, (odd, even)) in shadow.crossings().into_iter().enumerate() {
        vertex[odd as usize] = v;
        vertex[even as usize] = v;
    }
    // edge e joins the vertices of labels e and e+1 (1-based, wrapping)
    let succ = |l: u32| if l == two_n { 1 } else { l + 1 };
    // each vertex has 4 slots holding (edge, end) pairs; slots are filled in
    // strand order per passage: [in(odd), out(odd), in(even), out(even)]
    let mut slot_of = vec![[(0u32, 0u8); 4]; n];
    for (v, (odd, even)) in shadow.crossings().into_iter().enumerate() {
        let in_edge = |l: u32| if l == 1 { two_n } else { l - 1 };
        slot_of[v] = [
            (in_edge(odd), 1),
            (odd, 0),
            (in_edge(even), 1),
            (even, 0),
        ];
    }
    // an arrangement maps strand slots onto the cross layout
    //   0 -(2)-   with the odd passage fixed on the horizontal
    // and picks which vertical end receives the even in-passage.
    for mask in 0u32..(1 << n) {
        // geometric position (0..4, counterclockwise) of each slot
        let mut pos = vec![[0usize; 4]; n];
        for v in 0..n {
            // odd in -> west, odd out -> east
            pos[v][0] = 0;
            pos[v][1] = 2;
            let flip = mask >> v & 1 == 1;
            // even in -> south or north
            pos[v][2] = if flip { 3 } else { 1 };
            pos[v][3] = if flip { 1 } else { 3 };
        }
        // face walk: a corner is (vertex, geometric position); step to the
        // other end of the edge leaving that position, then turn clockwise
        let mut corner_seen = vec![[false; 4]; n];
        let mut faces = 0usize;
        for v0 in 0..n {
            for p0 in 0..4 {
                if corner_seen[v0][p0] {
                    continue;
                }
                faces += 1;
                let (mut v, mut p) = (v0, p0);
                while !corner_seen[v][p] {
                    corner_seen[v][p] = true;
                    // edge occupying position p at v
                    let s = pos[v].iter().position(|&q| q == p).expect("slot");
                    let (edge, end) = slot_of[v][s];
                    // the same edge at its far end
                    let (fv, fend) = {
                        let (a, b) = (vertex[edge as usize], vertex[succ(edge) as usize]);
                        if end == 0 {
                            (b, 1)
                        } else {
                            (a, 0)
                        }
                    };
                    let fs = slot_of[fv]
                        .iter()
                        .position(|&(e, en)| e == edge && en == fend)
                        .expect("far slot");
                    // turn clockwise at the far vertex
                    p = (pos[fv][fs] + 3) % 4;
                    v = fv;
                }
            }
        }
        if faces == n + 2 {
            return true;
        }
    }
    false
}

/// Raw kink insertion without any fruitfulness filtering, for the reference
/// reducer.
pub fn raw_twist_up(code: &PairCode, pos: u32) -> PairCode {
    let shift = |x: u32| if x >= pos { x + 2 } else { x };
    let mut pairs: Vec<(u32, u32)> = code
        .pairs()
        .iter()
        .map(|&(o, u)| (shift(o), shift(u)))
        .collect();
    pairs.push((pos, pos + 1));
    PairCode::from_pairs_normalizing(pairs).expect("kink insertion stays valid")
}

/// Unbounded breadth-first closure of a code under every move, capped at
/// `max_n` crossings, everything held canonically.
pub fn move_closure(start: &PairCode, max_n: usize) -> BTreeSet<PairCode> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let c0 = start.canonical_relabel();
    seen.insert(c0.clone());
    queue.push_back(c0);
    while let Some(cur) = queue.pop_front() {
        let mut nexts = Vec::new();
        for site in moves::r1_sites(&cur) {
            nexts.push(moves::apply_r1_down(&cur, site).unwrap());
        }
        for site in moves::r2_sites(&cur) {
            nexts.push(moves::apply_r2_down(&cur, site).unwrap());
        }
        for site in moves::r3_sites(&cur) {
            nexts.push(moves::apply_r3(&cur, &site).unwrap());
        }
        if cur.n() + 1 <= max_n {
            for pos in 1..=cur.two_n() + 1 {
                nexts.push(raw_twist_up(&cur, pos));
            }
        }
        if cur.n() + 2 <= max_n {
            let analysis = ShadowAnalysis::new(&Shadow::of_code(&cur)).unwrap();
            for pair in moves::r2_up_sites(&analysis) {
                let (over, under) = moves::apply_r2_up_unchecked(&cur, pair);
                nexts.push(over);
                nexts.push(under);
            }
        }
        for next in nexts {
            let c = next.canonical_relabel();
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    seen
}

/// The minimum of a move closure under the crossing-count-then-lex order.
pub fn closure_minimum(closure: &BTreeSet<PairCode>) -> &PairCode {
    closure.iter().next().expect("closure contains its seed")
}

/// Every admissible code with `n` crossings: the assignment sweep over
/// admissible shadows.
pub fn admissible_codes(n: usize) -> Vec<PairCode> {
    use knots_core::enumerate::{assignments, next_shadow, shadow_admissible, ShadowCursor};
    let mut out = Vec::new();
    if n == 0 {
        out.push(PairCode::unknot());
        return out;
    }
    let mut cur = Some(ShadowCursor::first(n));
    while let Some(c) = cur {
        let shadow = c.shadow();
        let (verdict, _) = shadow_admissible(&shadow).unwrap();
        if verdict.is_admissible() {
            out.extend(assignments(&shadow));
        }
        cur = next_shadow(&c);
    }
    out
}

/// All parity shadows with `n` crossings (every pairing permutation).
pub fn all_shadows(n: usize) -> Vec<Shadow> {
    use knots_core::enumerate::{next_shadow, ShadowCursor};
    let mut out = Vec::new();
    let mut cur = Some(ShadowCursor::first(n));
    while let Some(c) = cur {
        out.push(c.shadow());
        cur = next_shadow(&c);
    }
    out
}
