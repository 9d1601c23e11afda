//! Pair codes: the primary knot diagram encoding.
//!
//! A code with `n` crossings is a set of `n` ordered pairs `(o, u)` over the
//! labels `{1..=2n}`, `o` being the overcrossing passage and `u` the
//! undercrossing passage of one crossing. Stored pairs are sorted by
//! overcrossing label so equality is structural and serialization canonical.
//!
//! Invariants upheld by every constructor and operation:
//! - each label in `{1..=2n}` occurs exactly once,
//! - label `1` sits on the left (overcrossing) side of its pair,
//! - each pair holds one odd and one even label.
//!
//! The text format is `o:u` pairs in ascending-`o` order, single-space
//! separated; the empty string is the zero-crossing unknot.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::label::norm;

/// Largest supported crossing count; label masks elsewhere rely on `2n + 4`
/// fitting in 64 bits with room to spare.
pub const MAX_CROSSINGS: usize = 28;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("malformed pair-code text: {0}")]
    MalformedText(String),
    #[error("duplicate label {0}")]
    DuplicateLabel(u32),
    #[error("label {0} out of range 1..={1}")]
    LabelOutOfRange(u32, u32),
    #[error("pair ({0},{1}) has two labels of equal parity")]
    ParityViolation(u32, u32),
    #[error("label 1 must be the overcrossing side of its pair")]
    OneNotLeft,
    #[error("crossing counts differ: {0} vs {1}")]
    CrossingCountMismatch(usize, usize),
    #[error("crossing count {0} exceeds supported maximum {MAX_CROSSINGS}")]
    TooLarge(usize),
}

/// A validated knot projection name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairCode {
    pairs: Vec<(u32, u32)>,
}

impl PairCode {
    /// The zero-crossing unknot code.
    pub fn unknot() -> Self {
        PairCode { pairs: Vec::new() }
    }

    /// Build a code from raw pairs, validating every invariant.
    ///
    /// A raw set whose label `1` sits on the right is flipped wholesale
    /// (mirror identification) only by [`PairCode::from_pairs_normalizing`];
    /// here it is an error.
    pub fn from_pairs(mut pairs: Vec<(u32, u32)>) -> Result<Self, CodeError> {
        let n = pairs.len();
        if n > MAX_CROSSINGS {
            return Err(CodeError::TooLarge(n));
        }
        let two_n = 2 * n as u32;
        let mut seen = vec![false; n * 2 + 1];
        for &(o, u) in &pairs {
            for l in [o, u] {
                if l == 0 || l > two_n {
                    return Err(CodeError::LabelOutOfRange(l, two_n));
                }
                if seen[l as usize] {
                    return Err(CodeError::DuplicateLabel(l));
                }
                seen[l as usize] = true;
            }
            if (o + u) % 2 == 0 {
                return Err(CodeError::ParityViolation(o, u));
            }
            if u == 1 {
                return Err(CodeError::OneNotLeft);
            }
        }
        pairs.sort_unstable();
        Ok(PairCode { pairs })
    }

    /// Like [`PairCode::from_pairs`] but restores the label-1-left invariant
    /// by transposing every pair when needed.
    pub fn from_pairs_normalizing(pairs: Vec<(u32, u32)>) -> Result<Self, CodeError> {
        let one_right = pairs.iter().any(|&(_, u)| u == 1);
        let pairs = if one_right {
            pairs.into_iter().map(|(o, u)| (u, o)).collect()
        } else {
            pairs
        };
        Self::from_pairs(pairs)
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn two_n(&self) -> u32 {
        2 * self.pairs.len() as u32
    }

    /// Pairs sorted by overcrossing label.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Signed companion of each label, indexed by `label - 1`.
    ///
    /// For a pair `(o, u)` the companion of `o` is `+u` and the companion of
    /// `u` is `-o`; the sign records which side of its pair a label occupies.
    pub fn companions(&self) -> Vec<i64> {
        let mut a = vec![0i64; self.two_n() as usize];
        for &(o, u) in &self.pairs {
            a[o as usize - 1] = u as i64;
            a[u as usize - 1] = -(o as i64);
        }
        a
    }

    /// Partner of a label with over/under forgotten.
    pub fn partner(&self, label: u32) -> u32 {
        let l = norm(label as i64, self.two_n());
        for &(o, u) in &self.pairs {
            if o == l {
                return u;
            }
            if u == l {
                return o;
            }
        }
        unreachable!("label {l} not present in a validated code")
    }

    /// Permutation/bit form: `f[i-1] = j` when `2i-1` is paired with `2j`,
    /// `g[i-1]` set when the odd label sits on the right.
    pub fn fg_form(&self) -> (Vec<u32>, Vec<bool>) {
        let n = self.n();
        let mut f = vec![0u32; n];
        let mut g = vec![false; n];
        for &(o, u) in &self.pairs {
            let (odd, even, odd_right) = if o % 2 == 1 { (o, u, false) } else { (u, o, true) };
            let i = (odd as usize + 1) / 2;
            f[i - 1] = even / 2;
            g[i - 1] = odd_right;
        }
        (f, g)
    }

    /// Relabel by shifting the base point by `k`, reversing orientation when
    /// `reverse` is set. The label-1-left invariant is restored internally.
    pub fn rotate(&self, k: u32, reverse: bool) -> PairCode {
        if self.n() == 0 {
            return self.clone();
        }
        let two_n = self.two_n();
        let mapped = self
            .pairs
            .iter()
            .map(|&(o, u)| {
                if reverse {
                    (
                        norm(k as i64 - o as i64, two_n),
                        norm(k as i64 - u as i64, two_n),
                    )
                } else {
                    (norm(k as i64 + o as i64, two_n), norm(k as i64 + u as i64, two_n))
                }
            })
            .collect();
        PairCode::from_pairs_normalizing(mapped).expect("relabeling preserves validity")
    }

    /// Transpose every pair, then restore the label-1-left invariant.
    ///
    /// Under the mirror identification the normalized name space only holds
    /// codes with label 1 on the left, so the restoring flip undoes the
    /// transposition: on normalized names this is the identity. It exists so
    /// callers can state the identification explicitly.
    pub fn transpose(&self) -> PairCode {
        let flipped = self.pairs.iter().map(|&(o, u)| (u, o)).collect();
        PairCode::from_pairs_normalizing(flipped).expect("transposition preserves validity")
    }

    /// Orientation-reversed name: each `(i, j)` becomes `(2n+1-i, 2n+1-j)`.
    pub fn inverse_code(&self) -> PairCode {
        if self.n() == 0 {
            return self.clone();
        }
        let two_n = self.two_n();
        let mapped = self
            .pairs
            .iter()
            .map(|&(o, u)| {
                (
                    norm(two_n as i64 + 1 - o as i64, two_n),
                    norm(two_n as i64 + 1 - u as i64, two_n),
                )
            })
            .collect();
        PairCode::from_pairs_normalizing(mapped).expect("inversion preserves validity")
    }

    /// Strict lexicographic comparison of names with equal crossing count:
    /// permutation sequences first, bit sequences as the tie breaker.
    pub fn lex_less(&self, other: &PairCode) -> Result<bool, CodeError> {
        if self.n() != other.n() {
            return Err(CodeError::CrossingCountMismatch(self.n(), other.n()));
        }
        Ok(self.cmp(other) == Ordering::Less)
    }

    /// The lexicographic minimum over all `4n` relabelings; idempotent.
    pub fn canonical_relabel(&self) -> PairCode {
        if self.n() == 0 {
            return self.clone();
        }
        let two_n = self.two_n();
        let mut scratch = [(0u32, 0u32); MAX_CROSSINGS + 4];
        let mut best_key = LexKey::of_pairs(&self.pairs);
        let mut best = (0u32, false);
        for k in 0..two_n {
            for reverse in [false, true] {
                if k == 0 && !reverse {
                    continue;
                }
                let key = self.rotated_key(k, reverse, &mut scratch);
                if key.cmp_key(&best_key) == Ordering::Less {
                    best_key = key;
                    best = (k, reverse);
                }
            }
        }
        self.rotate(best.0, best.1)
    }

    /// Comparison key of `rotate(k, reverse)` without building the code.
    fn rotated_key(&self, k: u32, reverse: bool, scratch: &mut [(u32, u32)]) -> LexKey {
        let two_n = self.two_n();
        let mut one_right = false;
        for (slot, &(o, u)) in scratch.iter_mut().zip(self.pairs.iter()) {
            let (no, nu) = if reverse {
                (
                    norm(k as i64 - o as i64, two_n),
                    norm(k as i64 - u as i64, two_n),
                )
            } else {
                (
                    norm(k as i64 + o as i64, two_n),
                    norm(k as i64 + u as i64, two_n),
                )
            };
            one_right |= nu == 1;
            *slot = (no, nu);
        }
        let n = self.n();
        if one_right {
            for slot in scratch[..n].iter_mut() {
                *slot = (slot.1, slot.0);
            }
        }
        LexKey::of_pairs(&scratch[..n])
    }

    /// All distinct members of the relabeling orbit.
    pub fn relabel_orbit(&self) -> Vec<PairCode> {
        let two_n = self.two_n().max(1);
        let mut orbit: Vec<PairCode> = Vec::new();
        for k in 0..two_n {
            for reverse in [false, true] {
                let cand = self.rotate(k, reverse);
                if !orbit.contains(&cand) {
                    orbit.push(cand);
                }
            }
        }
        orbit
    }

    /// Name of the composite knot: `self`'s pairs unchanged, `other`'s pairs
    /// shifted past them.
    pub fn connected_sum(&self, other: &PairCode) -> PairCode {
        let shift = self.two_n();
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().map(|&(o, u)| (o + shift, u + shift)));
        PairCode::from_pairs(pairs).expect("shifted union preserves validity")
    }

    /// True when some proper label interval `[k, l]` closes under pairing,
    /// exposing the name as a connected sum.
    pub fn is_composite(&self) -> bool {
        interval_closed(&self.partner_map())
    }

    fn partner_map(&self) -> Vec<u32> {
        let mut h = vec![0u32; self.two_n() as usize];
        for &(o, u) in &self.pairs {
            h[o as usize - 1] = u;
            h[u as usize - 1] = o;
        }
        h
    }
}

/// Interval scan shared by codes and shadows: is there a proper interval
/// `[k, l]` with `2 <= l-k+1 <= 2n-2` closed under the partner map?
pub(crate) fn interval_closed(h: &[u32]) -> bool {
    let two_n = h.len() as u32;
    if two_n < 4 {
        return false;
    }
    for len in 2..=(two_n - 2) {
        for k in 1..=(two_n - len + 1) {
            let l = k + len - 1;
            let closed = (k..=l).all(|x| {
                let p = h[x as usize - 1];
                p >= k && p <= l
            });
            if closed {
                return true;
            }
        }
    }
    false
}

/// Stack-allocated `(f, g)` comparison key; labels fit `MAX_CROSSINGS + 4`
/// crossings so grown codes from up moves compare without heap traffic.
#[derive(Clone, Copy)]
pub(crate) struct LexKey {
    n: usize,
    f: [u16; MAX_CROSSINGS + 4],
    g: [bool; MAX_CROSSINGS + 4],
}

impl LexKey {
    pub(crate) fn of_pairs(pairs: &[(u32, u32)]) -> LexKey {
        let n = pairs.len();
        debug_assert!(n <= MAX_CROSSINGS + 4);
        let mut partner = [0u16; 2 * (MAX_CROSSINGS + 4) + 1];
        let mut left = [false; 2 * (MAX_CROSSINGS + 4) + 1];
        for &(o, u) in pairs {
            partner[o as usize] = u as u16;
            partner[u as usize] = o as u16;
            left[o as usize] = true;
        }
        let mut key = LexKey {
            n,
            f: [0; MAX_CROSSINGS + 4],
            g: [false; MAX_CROSSINGS + 4],
        };
        for i in 0..n {
            let odd = 2 * i + 1;
            key.f[i] = partner[odd] / 2;
            key.g[i] = !left[odd];
        }
        key
    }

    pub(crate) fn cmp_key(&self, other: &LexKey) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        self.f[..self.n]
            .cmp(&other.f[..other.n])
            .then_with(|| self.g[..self.n].cmp(&other.g[..other.n]))
    }
}

impl Ord for PairCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n().cmp(&other.n()).then_with(|| {
            LexKey::of_pairs(&self.pairs).cmp_key(&LexKey::of_pairs(&other.pairs))
        })
    }
}

impl PartialOrd for PairCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PairCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (o, u)) in self.pairs.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{o}:{u}")?;
        }
        Ok(())
    }
}

impl FromStr for PairCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, CodeError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PairCode::unknot());
        }
        let mut pairs = Vec::new();
        for tok in s.split_whitespace() {
            let (o, u) = tok
                .split_once(':')
                .ok_or_else(|| CodeError::MalformedText(tok.to_string()))?;
            let o = o
                .parse::<u32>()
                .map_err(|_| CodeError::MalformedText(tok.to_string()))?;
            let u = u
                .parse::<u32>()
                .map_err(|_| CodeError::MalformedText(tok.to_string()))?;
            pairs.push((o, u));
        }
        PairCode::from_pairs(pairs)
    }
}

/// Parse the pair-code text format.
pub fn parse_code(text: &str) -> Result<PairCode, CodeError> {
    text.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> PairCode {
        parse_code(s).unwrap()
    }

    const TREFOIL: &str = "1:4 3:6 5:2";

    #[test]
    fn parses_figure_six_name() {
        let c = code("1:12 2:7 10:3 4:9 5:14 6:15 8:11 16:13");
        assert_eq!(c.n(), 8);
        assert_eq!(c.to_string(), "1:12 2:7 4:9 5:14 6:15 8:11 10:3 16:13");
    }

    #[test]
    fn empty_text_is_the_unknot() {
        let c = code("");
        assert_eq!(c.n(), 0);
        assert_eq!(c.to_string(), "");
    }

    #[test]
    fn rejects_parity_violation() {
        assert!(matches!(
            parse_code("1:3 2:4"),
            Err(CodeError::ParityViolation(1, 3))
        ));
    }

    #[test]
    fn rejects_duplicates_and_range() {
        assert!(matches!(
            parse_code("1:2 3:2"),
            Err(CodeError::DuplicateLabel(2))
        ));
        assert!(matches!(
            parse_code("1:2 3:9"),
            Err(CodeError::LabelOutOfRange(9, 4))
        ));
        assert!(matches!(parse_code("2:1"), Err(CodeError::OneNotLeft)));
        assert!(matches!(parse_code("1;2"), Err(CodeError::MalformedText(_))));
    }

    #[test]
    fn round_trip_is_bit_exact() {
        for s in ["", TREFOIL, "1:12 2:7 4:9 5:14 6:15 8:11 10:3 16:13"] {
            let c = code(s);
            assert_eq!(parse_code(&c.to_string()).unwrap(), c);
        }
    }

    #[test]
    fn rotate_zero_is_identity() {
        let c = code(TREFOIL);
        assert_eq!(c.rotate(0, false), c);
    }

    #[test]
    fn rotate_composes_to_identity() {
        let c = code("1:12 2:7 10:3 4:9 5:14 6:15 8:11 16:13");
        let two_n = c.two_n();
        for k in 0..two_n {
            let r = c.rotate(k, false);
            assert_eq!(r.rotate(two_n - k, false), c, "k={k}");
        }
    }

    #[test]
    fn orbit_size_is_at_most_4n() {
        let c = code("1:12 2:7 10:3 4:9 5:14 6:15 8:11 16:13");
        let orbit = c.relabel_orbit();
        assert!(orbit.len() <= 4 * c.n());
        assert!(orbit.len() > 1);
    }

    #[test]
    fn transpose_is_involution_and_identity_on_normalized_names() {
        let c = code(TREFOIL);
        assert_eq!(c.transpose().transpose(), c);
        assert_eq!(c.transpose(), c);
        assert_eq!(PairCode::unknot().transpose(), PairCode::unknot());
    }

    #[test]
    fn inverse_lands_in_relabel_orbit() {
        let c = code(TREFOIL);
        assert_eq!(c.inverse_code().canonical_relabel(), c.canonical_relabel());
        assert_eq!(PairCode::unknot().inverse_code(), PairCode::unknot());
        let big = code("1:12 2:7 10:3 4:9 5:14 6:15 8:11 16:13");
        let twice = big.inverse_code().inverse_code();
        assert!(big.relabel_orbit().contains(&twice));
    }

    #[test]
    fn lex_less_is_a_strict_total_order() {
        let a = code(TREFOIL);
        assert!(!a.lex_less(&a).unwrap());
        let b = code("1:4 2:5 3:6");
        assert_ne!(a, b);
        assert_ne!(a.lex_less(&b).unwrap(), b.lex_less(&a).unwrap());
        assert!(matches!(
            a.lex_less(&PairCode::unknot()),
            Err(CodeError::CrossingCountMismatch(3, 0))
        ));
    }

    #[test]
    fn canonical_relabel_is_idempotent_and_orbit_constant() {
        let c = code("1:12 2:7 10:3 4:9 5:14 6:15 8:11 16:13");
        let canon = c.canonical_relabel();
        assert_eq!(canon.canonical_relabel(), canon);
        for member in c.relabel_orbit() {
            assert_eq!(member.canonical_relabel(), canon);
        }
        assert_eq!(PairCode::unknot().canonical_relabel(), PairCode::unknot());
    }

    #[test]
    fn trefoil_is_canonical() {
        let c = code(TREFOIL);
        assert_eq!(c.canonical_relabel(), c);
    }

    #[test]
    fn connected_sum_shifts_and_counts() {
        let t = code(TREFOIL);
        let granny = t.connected_sum(&t);
        assert_eq!(granny.n(), 6);
        assert_eq!(granny.to_string(), "1:4 3:6 5:2 7:10 9:12 11:8");
        assert_eq!(t.connected_sum(&PairCode::unknot()), t);
        assert!(granny.is_composite());
    }

    #[test]
    fn primality_scan() {
        assert!(!code(TREFOIL).is_composite());
        assert!(!PairCode::unknot().is_composite());
        assert!(!code("1:2").is_composite());
    }

    #[test]
    fn connected_sum_is_associative_on_small_inputs() {
        let pool = [code(""), code("1:2"), code(TREFOIL)];
        for a in &pool {
            for b in &pool {
                for c3 in &pool {
                    let left = a.connected_sum(b).connected_sum(c3);
                    let right = a.connected_sum(&b.connected_sum(c3));
                    assert_eq!(left.canonical_relabel(), right.canonical_relabel());
                }
            }
        }
    }

}
