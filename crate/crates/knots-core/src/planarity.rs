//! Realizability of shadows via the loop-parity test.
//!
//! A *shadow* forgets over/under information: it is the fixed-point-free
//! involution `h` pairing each strand label with its crossing partner. Not
//! every involution can be drawn as a closed curve in the plane; the Jordan
//! curve theorem forces every pair of closed sub-loops that share no strand
//! segment to cross an even number of times.
//!
//! A *loop* is a closed walk on the shadow that follows the strand between
//! chosen corner labels and jumps `j -> h(j)` at each corner. Loops may not
//! revisit a label, and may not pass through a crossing twice except at a
//! corner bounce. Each loop is kept as a label set plus the set of unit arcs
//! it traverses (arc `k` joins labels `k` and `k+1` on the strand circle);
//! that data suffices for the segment and intersection tests.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::codes::{interval_closed, PairCode};
use crate::label::{circ_dist, norm, pred, succ};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarityError {
    #[error("shadow involution is invalid: {0}")]
    BadInvolution(String),
    #[error("loops share a strand segment")]
    SharedSegment,
    #[error("loop enumeration exceeded the budget of {0} walks")]
    LoopBudgetExceeded(usize),
}

/// Budget for loop enumeration; generous enough that every shadow the
/// enumeration pipeline touches at desk scale completes without tripping it.
pub const DEFAULT_LOOP_BUDGET: usize = 4_000_000;

/// Unoriented crossing structure: a parity-respecting involution on labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shadow {
    h: Vec<u32>,
}

impl Shadow {
    /// Build from the partner vector `h[label-1]`.
    pub fn from_partners(h: Vec<u32>) -> Result<Self, PlanarityError> {
        let two_n = h.len() as u32;
        if two_n % 2 != 0 {
            return Err(PlanarityError::BadInvolution("odd label count".into()));
        }
        for (i, &p) in h.iter().enumerate() {
            let x = i as u32 + 1;
            if p == 0 || p > two_n {
                return Err(PlanarityError::BadInvolution(format!(
                    "partner {p} of {x} out of range"
                )));
            }
            if p == x {
                return Err(PlanarityError::BadInvolution(format!("fixed point {x}")));
            }
            if h[p as usize - 1] != x {
                return Err(PlanarityError::BadInvolution(format!(
                    "h(h({x})) != {x}"
                )));
            }
            if (p + x) % 2 == 0 {
                return Err(PlanarityError::BadInvolution(format!(
                    "labels {x},{p} paired with equal parity"
                )));
            }
        }
        Ok(Shadow { h })
    }

    /// Shadow of the pairing `{2i-1, 2f(i)}` given a permutation `f` of
    /// `{1..=n}`.
    pub fn from_permutation(f: &[u32]) -> Result<Self, PlanarityError> {
        let n = f.len();
        let mut h = vec![0u32; 2 * n];
        for (i, &j) in f.iter().enumerate() {
            if j == 0 || j as usize > n {
                return Err(PlanarityError::BadInvolution(format!(
                    "permutation value {j} out of range"
                )));
            }
            let odd = 2 * i as u32 + 1;
            let even = 2 * j;
            if h[even as usize - 1] != 0 {
                return Err(PlanarityError::BadInvolution(format!(
                    "permutation repeats value {j}"
                )));
            }
            h[odd as usize - 1] = even;
            h[even as usize - 1] = odd;
        }
        Shadow::from_partners(h)
    }

    pub fn of_code(code: &PairCode) -> Self {
        let mut h = vec![0u32; code.two_n() as usize];
        for &(o, u) in code.pairs() {
            h[o as usize - 1] = u;
            h[u as usize - 1] = o;
        }
        Shadow { h }
    }

    pub fn n(&self) -> usize {
        self.h.len() / 2
    }

    pub fn two_n(&self) -> u32 {
        self.h.len() as u32
    }

    /// Crossing partner of a label, periodic in the label.
    pub fn partner(&self, label: u32) -> u32 {
        let l = norm(label as i64, self.two_n());
        self.h[l as usize - 1]
    }

    /// The permutation `f` with `f(i) = partner(2i-1) / 2`.
    pub fn permutation(&self) -> Vec<u32> {
        (0..self.n())
            .map(|i| self.h[2 * i] / 2)
            .collect()
    }

    /// Crossings as `(odd, even)` label pairs, odd ascending.
    pub fn crossings(&self) -> Vec<(u32, u32)> {
        (0..self.n())
            .map(|i| (2 * i as u32 + 1, self.h[2 * i]))
            .collect()
    }

    /// Relabel by base-point shift `k`, optionally reversing orientation.
    pub fn relabel(&self, k: u32, reverse: bool) -> Shadow {
        let two_n = self.two_n();
        let mut h = vec![0u32; two_n as usize];
        for x in 1..=two_n {
            let (nx, np) = if reverse {
                (
                    norm(k as i64 - x as i64, two_n),
                    norm(k as i64 - self.partner(x) as i64, two_n),
                )
            } else {
                (
                    norm(k as i64 + x as i64, two_n),
                    norm(k as i64 + self.partner(x) as i64, two_n),
                )
            };
            h[nx as usize - 1] = np;
        }
        Shadow { h }
    }

    /// True when the shadow splits as a connected sum along a label interval.
    pub fn is_composite(&self) -> bool {
        interval_closed(&self.h)
    }

    /// Lexicographic comparison key: the permutation sequence.
    pub fn lex_key(&self) -> Vec<u32> {
        self.permutation()
    }

    /// True when this labeling is the lexicographic minimum of its orbit.
    pub fn is_lex_minimal(&self) -> bool {
        let mine = self.lex_key();
        for k in 0..self.two_n() {
            for reverse in [false, true] {
                if k == 0 && !reverse {
                    continue;
                }
                if self.relabel(k, reverse).lex_key() < mine {
                    return false;
                }
            }
        }
        true
    }
}

/// A non-self-intersecting closed walk on a shadow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    /// Corner labels in traversal order, starting from the minimal corner.
    pub corners: Vec<u32>,
    /// Bit `l-1` set when label `l` is visited.
    pub labels: u64,
    /// Bit `a-1` set when arc `a` (between labels `a` and `a+1`) is traversed.
    pub arcs: u64,
}

impl Loop {
    pub fn contains_label(&self, label: u32) -> bool {
        self.labels >> (label - 1) & 1 == 1
    }

    pub fn arc_list(&self, two_n: u32) -> Vec<u32> {
        (1..=two_n).filter(|a| self.arcs >> (a - 1) & 1 == 1).collect()
    }
}

/// Loop analysis of one shadow: the full loop list, pairwise tests, and the
/// face structure of a sphere embedding when one exists.
#[derive(Debug)]
pub struct ShadowAnalysis {
    shadow: Shadow,
    loops: Vec<Loop>,
    embedding: Option<Embedding>,
}

impl ShadowAnalysis {
    pub fn new(shadow: &Shadow) -> Result<Self, PlanarityError> {
        Self::with_budget(shadow, DEFAULT_LOOP_BUDGET)
    }

    pub fn with_budget(shadow: &Shadow, budget: usize) -> Result<Self, PlanarityError> {
        let loops = enumerate_loops_budgeted(shadow, budget)?;
        Ok(ShadowAnalysis {
            shadow: shadow.clone(),
            loops,
            embedding: embed(shadow),
        })
    }

    pub fn loops(&self) -> &[Loop] {
        &self.loops
    }

    pub fn shadow(&self) -> &Shadow {
        &self.shadow
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    /// True when every segment-disjoint loop pair crosses an even number of
    /// times.
    pub fn is_realizable(&self) -> bool {
        let m = self.loops.len();
        for i in 0..m {
            for j in (i + 1)..m {
                let (a, b) = (&self.loops[i], &self.loops[j]);
                if a.arcs & b.arcs != 0 {
                    continue;
                }
                if intersection_count(&self.shadow, a, b) % 2 == 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Loops whose every crossing is a bounce and that cross no other loop:
    /// the face boundaries of the embedding. Their arcs are the attachment
    /// sites for poke (R2-up) moves. Empty on unrealizable shadows.
    ///
    /// Faces pinched at a nugatory crossing are not expressible as loops and
    /// are skipped here; [`ShadowAnalysis::poke_arc_pairs`] includes them.
    pub fn free_loops(&self) -> Vec<&Loop> {
        let mut out = Vec::new();
        for arcs in self.face_arc_sets() {
            let mask = arcs
                .iter()
                .fold(0u64, |m, &a| m | 1u64 << (a - 1));
            if let Some(l) = self.loops.iter().find(|l| l.arcs == mask) {
                out.push(l);
            }
        }
        out
    }

    /// Arc pairs lying on a common face, the legal poke sites.
    pub fn poke_arc_pairs(&self) -> Vec<(u32, u32)> {
        let mut out = BTreeSet::new();
        for arcs in self.face_arc_sets() {
            for i in 0..arcs.len() {
                for j in (i + 1)..arcs.len() {
                    out.insert((arcs[i], arcs[j]));
                }
            }
        }
        out.into_iter().collect()
    }

    fn face_arc_sets(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.embedding.iter().flat_map(|e| e.face_arcs.iter())
    }
}

/// All loops of a shadow, each geometric curve once, deterministically
/// ordered.
pub fn enumerate_loops(shadow: &Shadow) -> Result<Vec<Loop>, PlanarityError> {
    enumerate_loops_budgeted(shadow, DEFAULT_LOOP_BUDGET)
}

fn enumerate_loops_budgeted(shadow: &Shadow, budget: usize) -> Result<Vec<Loop>, PlanarityError> {
    let two_n = shadow.two_n();
    let mut out: Vec<Loop> = Vec::new();
    let mut seen_arcs: HashSet<u64> = HashSet::new();
    let mut steps = 0usize;
    if two_n == 0 {
        return Ok(out);
    }

    struct Dfs<'a> {
        shadow: &'a Shadow,
        two_n: u32,
        start: u32,
        out: Vec<(Vec<u32>, u64, u64)>,
    }

    impl Dfs<'_> {
        fn bit(l: u32) -> u64 {
            1u64 << (l - 1)
        }

        /// Arc between adjacent labels `x` and `y`, identified by its lower
        /// endpoint along the strand direction.
        fn arc_between(&self, x: u32, y: u32) -> u64 {
            debug_assert_eq!(circ_dist(x, y, self.two_n), 1);
            if succ(x, self.two_n) == y {
                Self::bit(x)
            } else {
                Self::bit(y)
            }
        }

        fn walk(
            &mut self,
            cur: u32,
            dir: i64,
            labels: u64,
            arcs: u64,
            corners: &mut Vec<u32>,
            steps: &mut usize,
            budget: usize,
        ) -> Result<(), ()> {
            *steps += 1;
            if *steps > budget {
                return Err(());
            }
            let nxt = norm(cur as i64 + dir, self.two_n);
            let step_arc = self.arc_between(cur, nxt);
            if nxt == self.start {
                self.out
                    .push((corners.clone(), labels | Self::bit(nxt), arcs | step_arc));
                return Ok(());
            }
            if labels & Self::bit(nxt) != 0 {
                return Ok(());
            }
            let partner = self.shadow.partner(nxt);
            if labels & Self::bit(partner) != 0 {
                // crossing already used; passing or bouncing here would
                // self-intersect
                return Ok(());
            }
            // pass straight through
            self.walk(
                nxt,
                dir,
                labels | Self::bit(nxt),
                arcs | step_arc,
                corners,
                steps,
                budget,
            )?;
            // bounce: nxt becomes a corner, jump to its partner
            if nxt > self.start {
                corners.push(nxt);
                for next_dir in [1i64, -1] {
                    self.walk(
                        partner,
                        next_dir,
                        labels | Self::bit(nxt) | Self::bit(partner),
                        arcs | step_arc,
                        corners,
                        steps,
                        budget,
                    )?;
                }
                corners.pop();
            }
            Ok(())
        }
    }

    for start in 1..=two_n {
        let partner = shadow.partner(start);
        let mut dfs = Dfs {
            shadow,
            two_n,
            start,
            out: Vec::new(),
        };
        let labels = Dfs::bit(start) | Dfs::bit(partner);
        let mut corners = vec![start];
        for dir in [1i64, -1] {
            dfs.walk(partner, dir, labels, 0, &mut corners, &mut steps, budget)
                .map_err(|_| PlanarityError::LoopBudgetExceeded(budget))?;
        }
        for (corners, labels, arcs) in dfs.out {
            if seen_arcs.insert(arcs) {
                out.push(Loop {
                    corners,
                    labels,
                    arcs,
                });
            }
        }
    }
    out.sort_by(|a, b| a.corners.cmp(&b.corners).then(a.arcs.cmp(&b.arcs)));
    Ok(out)
}

/// Do two loops traverse a common unit arc?
pub fn loops_share_segment(a: &Loop, b: &Loop) -> bool {
    a.arcs & b.arcs != 0
}

/// Transversal crossings between two segment-disjoint loops.
///
/// A crossing `{x, h(x)}` counts when each loop passes through exactly one of
/// its two strands; crossings where both labels belong to both loops are
/// shared corners where the loops bounce without crossing.
pub fn intersection_count(shadow: &Shadow, a: &Loop, b: &Loop) -> usize {
    let mut count = 0;
    for (x, y) in shadow.crossings() {
        let ax = a.contains_label(x);
        let ay = a.contains_label(y);
        let bx = b.contains_label(x);
        let by = b.contains_label(y);
        if (ax != ay) && (bx != by) && (ax != bx) {
            count += 1;
        }
    }
    count
}

/// Crossing parity of two loops: `+1` even, `-1` odd.
pub fn intersection_parity(shadow: &Shadow, a: &Loop, b: &Loop) -> Result<i8, PlanarityError> {
    if loops_share_segment(a, b) {
        return Err(PlanarityError::SharedSegment);
    }
    Ok(if intersection_count(shadow, a, b) % 2 == 0 {
        1
    } else {
        -1
    })
}

/// Loop-parity realizability of a shadow.
pub fn is_realizable(shadow: &Shadow) -> Result<bool, PlanarityError> {
    if shadow.n() == 0 {
        return Ok(true);
    }
    Ok(ShadowAnalysis::new(shadow)?.is_realizable())
}

/// A sphere embedding of a shadow: the rotation choice per crossing and the
/// face boundaries it induces.
#[derive(Debug, Clone)]
pub struct Embedding {
    /// One bit per crossing, in stored crossing order. With the crossing
    /// `{x, y}`, `x` the odd label, bit `false` places the `y`-strand entry
    /// counterclockwise right after the `x`-strand entry, `true` the other
    /// way.
    pub rotations: Vec<bool>,
    /// Arcs bounding each face; an arc may bound a pinched face twice but is
    /// listed once.
    pub face_arcs: Vec<Vec<u32>>,
}

/// Search for a transversal rotation system of genus zero, returning the
/// first one in rotation-vector order. `None` when the shadow cannot be drawn
/// in the sphere.
pub fn embed(shadow: &Shadow) -> Option<Embedding> {
    let n = shadow.n();
    if n == 0 {
        return Some(Embedding {
            rotations: Vec::new(),
            face_arcs: Vec::new(),
        });
    }
    let two_n = shadow.two_n();
    let crossings = shadow.crossings();
    let mut cross_of = vec![0usize; two_n as usize];
    for (idx, &(x, y)) in crossings.iter().enumerate() {
        cross_of[x as usize - 1] = idx;
        cross_of[y as usize - 1] = idx;
    }
    // darts: 2k = arc k+1 forward, 2k+1 = backward
    let fwd = |arc: u32| 2 * (arc - 1) as usize;
    let rev = |arc: u32| 2 * (arc - 1) as usize + 1;
    let tail_of = |dart: usize| -> usize {
        let arc = dart as u32 / 2 + 1;
        if dart % 2 == 0 {
            cross_of[arc as usize - 1]
        } else {
            cross_of[succ(arc, two_n) as usize - 1]
        }
    };
    let dart_count = 4 * n;
    for choice in 0u32..(1 << n) {
        // counterclockwise successor among the out-darts of each crossing
        let mut next_at = vec![0usize; dart_count];
        for (idx, &(x, y)) in crossings.iter().enumerate() {
            let x_in = rev(pred(x, two_n));
            let y_in = rev(pred(y, two_n));
            let x_out = fwd(norm(x as i64, two_n));
            let y_out = fwd(norm(y as i64, two_n));
            let order = if choice >> idx & 1 == 0 {
                [x_in, y_in, x_out, y_out]
            } else {
                [x_in, y_out, x_out, y_in]
            };
            for i in 0..4 {
                next_at[order[i]] = order[(i + 1) % 4];
            }
        }
        // face tracing: next dart in face = rotation successor of the reversal
        let mut face_next = vec![0usize; dart_count];
        for d in 0..dart_count {
            let twin = d ^ 1;
            debug_assert_eq!(tail_of(next_at[twin]), tail_of(twin));
            face_next[d] = next_at[twin];
        }
        let mut visited = vec![false; dart_count];
        let mut faces: Vec<Vec<u32>> = Vec::new();
        for d in 0..dart_count {
            if visited[d] {
                continue;
            }
            let mut arcs = BTreeSet::new();
            let mut at = d;
            while !visited[at] {
                visited[at] = true;
                arcs.insert(at as u32 / 2 + 1);
                at = face_next[at];
            }
            faces.push(arcs.into_iter().collect());
        }
        if faces.len() == n + 2 {
            return Some(Embedding {
                rotations: (0..n).map(|i| choice >> i & 1 == 1).collect(),
                face_arcs: faces,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_code;

    fn shadow_of(s: &str) -> Shadow {
        Shadow::of_code(&parse_code(s).unwrap())
    }

    fn trefoil_shadow() -> Shadow {
        shadow_of("1:4 3:6 5:2")
    }

    /// The impossible five-crossing pairing used to motivate the loop test.
    fn figure_11_shadow() -> Shadow {
        shadow_of("1:4 3:6 5:8 7:10 9:2")
    }

    #[test]
    fn empty_shadow_has_no_loops_and_is_realizable() {
        let s = Shadow::from_partners(vec![]).unwrap();
        assert!(enumerate_loops(&s).unwrap().is_empty());
        assert!(is_realizable(&s).unwrap());
    }

    #[test]
    fn rejects_bad_involutions() {
        assert!(Shadow::from_partners(vec![1, 2]).is_err());
        assert!(Shadow::from_partners(vec![3, 4, 1, 2]).is_err());
        assert!(Shadow::from_partners(vec![2, 1, 4, 3]).is_ok());
    }

    #[test]
    fn trefoil_contains_the_expected_single_corner_loop() {
        let s = trefoil_shadow();
        let loops = enumerate_loops(&s).unwrap();
        let found = loops.iter().any(|l| {
            l.corners == vec![1]
                && [1u32, 4, 5, 6].iter().all(|&x| l.contains_label(x))
                && !l.contains_label(2)
                && !l.contains_label(3)
        });
        assert!(found, "loop with corner 1 over labels 1,4,5,6 missing");
    }

    #[test]
    fn every_loop_closes_and_balances() {
        let s = figure_11_shadow();
        for l in enumerate_loops(&s).unwrap() {
            // one arc per non-corner transition: labels = arcs + corners
            assert_eq!(
                l.labels.count_ones(),
                l.arcs.count_ones() + l.corners.len() as u32
            );
            // no crossing visited twice outside a corner bounce
            for x in 1..=s.two_n() {
                if l.contains_label(x) && l.contains_label(s.partner(x)) {
                    let c = x.min(s.partner(x));
                    assert!(
                        l.corners.contains(&c) || l.corners.contains(&s.partner(c)),
                        "labels {x} and {} both interior",
                        s.partner(x)
                    );
                }
            }
        }
    }

    #[test]
    fn figure_11_loop_pair_is_odd() {
        let s = figure_11_shadow();
        let loops = enumerate_loops(&s).unwrap();
        let a = loops
            .iter()
            .find(|l| l.labels == 0b1111)
            .expect("loop over labels 1..4");
        let b = loops
            .iter()
            .find(|l| l.labels == 0b11110000)
            .expect("loop over labels 5..8");
        assert!(!loops_share_segment(a, b));
        assert_eq!(intersection_count(&s, a, b), 1);
        assert_eq!(intersection_parity(&s, a, b).unwrap(), -1);
        assert_eq!(
            intersection_parity(&s, b, a).unwrap(),
            intersection_parity(&s, a, b).unwrap()
        );
    }

    #[test]
    fn shared_segment_is_an_error() {
        let s = trefoil_shadow();
        let loops = enumerate_loops(&s).unwrap();
        let l = &loops[0];
        assert!(loops_share_segment(l, l));
        assert!(matches!(
            intersection_parity(&s, l, l),
            Err(PlanarityError::SharedSegment)
        ));
    }

    #[test]
    fn realizability_verdicts() {
        assert!(is_realizable(&trefoil_shadow()).unwrap());
        assert!(!is_realizable(&figure_11_shadow()).unwrap());
        // single kink is drawable
        assert!(is_realizable(&shadow_of("1:2")).unwrap());
    }

    #[test]
    fn realizability_is_relabel_invariant() {
        for s in [trefoil_shadow(), figure_11_shadow()] {
            let base = is_realizable(&s).unwrap();
            for k in 0..s.two_n() {
                for reverse in [false, true] {
                    assert_eq!(is_realizable(&s.relabel(k, reverse)).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn trefoil_has_free_loops_with_even_pairings() {
        let s = trefoil_shadow();
        let analysis = ShadowAnalysis::new(&s).unwrap();
        let free = analysis.free_loops();
        assert!(!free.is_empty());
        for f in &free {
            for other in analysis.loops() {
                if !loops_share_segment(f, other) {
                    assert_eq!(intersection_count(&s, f, other), 0);
                }
            }
        }
    }

    #[test]
    fn loop_budget_trips() {
        let s = trefoil_shadow();
        assert!(matches!(
            ShadowAnalysis::with_budget(&s, 2),
            Err(PlanarityError::LoopBudgetExceeded(2))
        ));
    }

    #[test]
    fn permutation_round_trip() {
        let s = Shadow::from_permutation(&[2, 3, 1]).unwrap();
        assert_eq!(s, trefoil_shadow());
        assert_eq!(s.permutation(), vec![2, 3, 1]);
        assert!(!s.is_composite());
    }
}
