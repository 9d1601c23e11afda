//! Label arithmetic on the strand circle.
//!
//! Crossing passage labels live in `{1..=2n}` and all label arithmetic is
//! modulo `2n` with `0` normalizing to `2n`. Every module goes through these
//! helpers; nothing else may reduce labels.

/// Normalize an integer into the label range `{1..=2n}`.
pub fn norm(x: i64, two_n: u32) -> u32 {
    debug_assert!(two_n > 0);
    let m = two_n as i64;
    let r = x.rem_euclid(m);
    if r == 0 {
        two_n
    } else {
        r as u32
    }
}

/// Label following `x` on the strand.
pub fn succ(x: u32, two_n: u32) -> u32 {
    norm(x as i64 + 1, two_n)
}

/// Label preceding `x` on the strand.
pub fn pred(x: u32, two_n: u32) -> u32 {
    norm(x as i64 - 1, two_n)
}

/// Circular distance between two labels, in `{0..=n}`.
pub fn circ_dist(a: u32, b: u32, two_n: u32) -> u32 {
    let d = (a as i64 - b as i64).rem_euclid(two_n as i64) as u32;
    d.min(two_n - d)
}

/// True when `x` lies strictly between `a` and `b` walking upward from `a`.
///
/// The interval is open on both ends and empty when `b` immediately follows
/// `a` on the circle.
pub fn between_open(x: u32, a: u32, b: u32, two_n: u32) -> bool {
    let span = (b as i64 - a as i64).rem_euclid(two_n as i64);
    let off = (x as i64 - a as i64).rem_euclid(two_n as i64);
    off > 0 && off < span
}
