//! Closed self-avoiding polygons on the cubic lattice.
//!
//! A polygon is a word over `{1..=6}`: letters `1, 2, 3` step along the
//! positive x, y, z axes and `4, 5, 6` along negative z, y, x, so `7 - d`
//! reverses `d`. A valid word closes up and never revisits a vertex. Two
//! moves preserve the knot class: an *exchange* swaps adjacent letters and a
//! *pair creation/annihilation* inserts or removes a detour `d, a, 7-d`
//! around a letter `a`. Words are compared up to rotation of the starting
//! vertex; among equivalent words the shortest wins, ties going to the
//! lexicographically smaller.
//!
//! Projecting along a coordinate axis turns a polygon into a pair code, with
//! over/under read from the height along the projection axis; the projection
//! must be regular (no overlapping plane edges, at most two transversal
//! passages per plane point).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::codes::{CodeError, PairCode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("letter {0} at position {1} outside 1..=6")]
    AlphabetError(u32, usize),
    #[error("polygon violation: {0}")]
    Violation(String),
    #[error("no regular projection found (tried all axes and {0} perturbations)")]
    IrregularProjection(usize),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Projection direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// A validated closed self-avoiding lattice polygon.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePolygon {
    word: Vec<u8>,
}

fn step(d: u8) -> (i32, i32, i32) {
    match d {
        1 => (1, 0, 0),
        2 => (0, 1, 0),
        3 => (0, 0, 1),
        4 => (0, 0, -1),
        5 => (0, -1, 0),
        6 => (-1, 0, 0),
        _ => unreachable!("validated letter"),
    }
}

/// Check closure and self-avoidance of a word.
pub fn validate_polygon(word: &[u8]) -> Result<(), LatticeError> {
    for (i, &d) in word.iter().enumerate() {
        if d == 0 || d > 6 {
            return Err(LatticeError::AlphabetError(d as u32, i + 1));
        }
    }
    if word.len() < 4 {
        return Err(LatticeError::Violation(format!(
            "{} letters cannot bound a polygon; the minimum is 4",
            word.len()
        )));
    }
    let mut pos = (0i32, 0i32, 0i32);
    let mut seen = BTreeSet::new();
    seen.insert(pos);
    for (i, &d) in word.iter().enumerate() {
        let (dx, dy, dz) = step(d);
        pos = (pos.0 + dx, pos.1 + dy, pos.2 + dz);
        if i + 1 == word.len() {
            break;
        }
        if !seen.insert(pos) {
            return Err(LatticeError::Violation(format!(
                "vertex revisited after letter {} (the sub-word 1..={} balances)",
                i + 1,
                i + 1
            )));
        }
    }
    if pos != (0, 0, 0) {
        return Err(LatticeError::Violation(
            "letter counts do not balance; the walk does not close".into(),
        ));
    }
    Ok(())
}

impl LatticePolygon {
    pub fn new(word: Vec<u8>) -> Result<Self, LatticeError> {
        validate_polygon(&word)?;
        Ok(LatticePolygon { word })
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// The lexicographically smallest rotation of the word.
    pub fn canonical(&self) -> LatticePolygon {
        let n = self.word.len();
        let mut best = self.word.clone();
        for k in 1..n {
            let rotated: Vec<u8> = self
                .word
                .iter()
                .cycle()
                .skip(k)
                .take(n)
                .copied()
                .collect();
            if rotated < best {
                best = rotated;
            }
        }
        LatticePolygon { word: best }
    }

    /// Vertices visited, starting at the origin.
    pub fn vertices(&self) -> Vec<(i32, i32, i32)> {
        let mut pos = (0, 0, 0);
        let mut out = vec![pos];
        for &d in &self.word[..self.word.len() - 1] {
            let (dx, dy, dz) = step(d);
            pos = (pos.0 + dx, pos.1 + dy, pos.2 + dz);
            out.push(pos);
        }
        out
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for LatticePolygon {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let mut word = Vec::new();
        for (i, tok) in s.split(',').enumerate() {
            let d: u8 = tok
                .trim()
                .parse()
                .map_err(|_| LatticeError::AlphabetError(0, i + 1))?;
            word.push(d);
        }
        LatticePolygon::new(word)
    }
}

/// Swap the letters at cyclic positions `k` and `k+1` (0-based); `None` when
/// the swapped walk collides with itself.
pub fn exchange(polygon: &LatticePolygon, k: usize) -> Option<LatticePolygon> {
    let n = polygon.len();
    let mut word = polygon.word().to_vec();
    word.swap(k % n, (k + 1) % n);
    LatticePolygon::new(word).ok()
}

/// Insert the detour `flavor, a_k, 7-flavor` around cyclic position `k`;
/// `None` when the detour collides.
pub fn pair_create(polygon: &LatticePolygon, k: usize, flavor: u8) -> Option<LatticePolygon> {
    if flavor == 0 || flavor > 6 {
        return None;
    }
    let n = polygon.len();
    let k = k % n;
    let mut word = Vec::with_capacity(n + 2);
    word.extend_from_slice(&polygon.word()[..k]);
    word.push(flavor);
    word.push(polygon.word()[k]);
    word.push(7 - flavor);
    word.extend_from_slice(&polygon.word()[k + 1..]);
    LatticePolygon::new(word).ok()
}

/// Remove the detour at cyclic position `k`: the letters at `k` and `k+2`
/// must cancel around the one between them.
pub fn pair_annihilate(polygon: &LatticePolygon, k: usize) -> Option<LatticePolygon> {
    let n = polygon.len();
    let (a, b) = (polygon.word()[k % n], polygon.word()[(k + 2) % n]);
    if b != 7 - a {
        return None;
    }
    let keep: Vec<usize> = (0..n)
        .filter(|&i| i != k % n && i != (k + 2) % n)
        .collect();
    let word: Vec<u8> = keep.into_iter().map(|i| polygon.word()[i]).collect();
    LatticePolygon::new(word).ok()
}

/// The preferred of two words: shorter, then lexicographically smaller on the
/// rotation-minimal forms.
pub fn preferred(a: LatticePolygon, b: LatticePolygon) -> LatticePolygon {
    let ka = (a.len(), a.canonical());
    let kb = (b.len(), b.canonical());
    if kb < ka {
        b
    } else {
        a
    }
}

/// How a reduction run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReduceEnd {
    /// The whole move closure within the length budget was explored.
    Converged,
    /// The step budget ran out first.
    BudgetExhausted,
}

/// Best-first search for the preferred word reachable by moves without
/// exceeding `length_budget` letters, expanding at most `step_budget` words.
pub fn reduce_lattice(
    polygon: &LatticePolygon,
    length_budget: usize,
    step_budget: usize,
) -> (LatticePolygon, ReduceEnd) {
    let start = polygon.canonical();
    let mut best = start.clone();
    let mut seen: BTreeSet<LatticePolygon> = BTreeSet::new();
    let mut frontier: BTreeSet<(usize, LatticePolygon)> = BTreeSet::new();
    seen.insert(start.clone());
    frontier.insert((start.len(), start));
    let mut steps = 0usize;
    while let Some(entry) = frontier.iter().next().cloned() {
        frontier.remove(&entry);
        let (_, cur) = entry;
        if steps >= step_budget {
            return (best, ReduceEnd::BudgetExhausted);
        }
        steps += 1;
        if (cur.len(), cur.canonical()) < (best.len(), best.canonical()) {
            best = cur.canonical();
        }
        let n = cur.len();
        let mut neighbors = Vec::new();
        for k in 0..n {
            if let Some(w) = exchange(&cur, k) {
                neighbors.push(w);
            }
            if let Some(w) = pair_annihilate(&cur, k) {
                neighbors.push(w);
            }
            if n + 2 <= length_budget {
                for flavor in 1..=6 {
                    if let Some(w) = pair_create(&cur, k, flavor) {
                        neighbors.push(w);
                    }
                }
            }
        }
        for w in neighbors {
            let c = w.canonical();
            if seen.insert(c.clone()) {
                frontier.insert((c.len(), c));
            }
        }
    }
    (best, ReduceEnd::Converged)
}

/// One maximal stay of the projected walk at a plane point.
struct Passage {
    point: (i32, i32),
    enter: (i32, i32),
    exit: (i32, i32),
    height: (i32, i32),
}

/// Project along `axis` and read off the pair code; the projection must be
/// regular.
pub fn project_to_code(polygon: &LatticePolygon, axis: Axis) -> Result<PairCode, LatticeError> {
    let verts = polygon.vertices();
    let n = verts.len();
    // plane coordinates and height per vertex
    let split = |v: (i32, i32, i32)| -> ((i32, i32), i32) {
        match axis {
            Axis::Z => ((v.0, v.1), v.2),
            Axis::Y => ((v.2, v.0), v.1),
            Axis::X => ((v.1, v.2), v.0),
        }
    };
    // group the cyclic walk into passages at fixed plane points
    let plane: Vec<(i32, i32)> = verts.iter().map(|&v| split(v).0).collect();
    let height: Vec<i32> = verts.iter().map(|&v| split(v).1).collect();
    let mut run_starts = Vec::new();
    for i in 0..n {
        let prev = (i + n - 1) % n;
        if plane[i] != plane[prev] {
            run_starts.push(i);
        }
    }
    if run_starts.is_empty() {
        return Err(LatticeError::Violation(
            "polygon projects onto a single point".into(),
        ));
    }
    // rotate so the run containing vertex 0 comes first
    let first = if run_starts[0] == 0 {
        0
    } else {
        run_starts.len() - 1
    };
    let mut passages = Vec::with_capacity(run_starts.len());
    let mut plane_edges: BTreeSet<((i32, i32), (i32, i32))> = BTreeSet::new();
    for idx in 0..run_starts.len() {
        let s = run_starts[(first + idx) % run_starts.len()];
        let e_next = run_starts[(first + idx + 1) % run_starts.len()];
        let prev = (s + n - 1) % n;
        let last = (e_next + n - 1) % n;
        let dir = |from: usize, to: usize| -> (i32, i32) {
            (plane[to].0 - plane[from].0, plane[to].1 - plane[from].1)
        };
        let mut hs = Vec::new();
        let mut at = s;
        loop {
            hs.push(height[at]);
            if at == last {
                break;
            }
            at = (at + 1) % n;
        }
        passages.push(Passage {
            point: plane[s],
            enter: dir(prev, s),
            exit: dir(last, e_next),
            height: (
                *hs.iter().min().expect("nonempty run"),
                *hs.iter().max().expect("nonempty run"),
            ),
        });
        // record the exit edge of this passage
        let a = plane[last];
        let b = plane[e_next % n];
        let edge = if a <= b { (a, b) } else { (b, a) };
        if !plane_edges.insert(edge) {
            return Err(LatticeError::IrregularProjection(0));
        }
    }
    // bucket passages per plane point
    let mut by_point: std::collections::BTreeMap<(i32, i32), Vec<usize>> =
        std::collections::BTreeMap::new();
    for (i, p) in passages.iter().enumerate() {
        by_point.entry(p.point).or_default().push(i);
    }
    let mut crossing_of_passage = vec![None; passages.len()];
    let mut crossings = Vec::new();
    for (_, ids) in by_point.iter() {
        match ids.len() {
            1 => {}
            2 => {
                let (a, b) = (&passages[ids[0]], &passages[ids[1]]);
                let straight = |p: &Passage| p.enter == p.exit;
                if !straight(a) || !straight(b) {
                    return Err(LatticeError::IrregularProjection(0));
                }
                // transversal: one passage runs along each plane axis
                if (a.enter.0 == 0) == (b.enter.0 == 0) {
                    return Err(LatticeError::IrregularProjection(0));
                }
                debug_assert!(a.height.1 < b.height.0 || b.height.1 < a.height.0);
                let over = if a.height.0 > b.height.0 { ids[0] } else { ids[1] };
                let idx = crossings.len();
                crossings.push(over);
                crossing_of_passage[ids[0]] = Some(idx);
                crossing_of_passage[ids[1]] = Some(idx);
            }
            _ => return Err(LatticeError::IrregularProjection(0)),
        }
    }
    // walk passages in time order, numbering crossing passages
    let mut pairs: Vec<(Option<u32>, Option<u32>)> = vec![(None, None); crossings.len()];
    let mut label = 0u32;
    for (i, _) in passages.iter().enumerate() {
        if let Some(c) = crossing_of_passage[i] {
            label += 1;
            if crossings[c] == i {
                pairs[c].0 = Some(label);
            } else {
                pairs[c].1 = Some(label);
            }
        }
    }
    let pairs: Vec<(u32, u32)> = pairs
        .into_iter()
        .map(|(o, u)| (o.expect("crossing visited"), u.expect("crossing visited")))
        .collect();
    Ok(PairCode::from_pairs_normalizing(pairs)?)
}

/// Try every axis, perturbing with exchanges and detour creations until some
/// projection is regular.
///
/// Returns the code together with the polygon variant and axis that produced
/// it. Perturbed variants are equivalent to the input by construction; the
/// search allows the word to grow by up to four letters.
pub fn project_any(
    polygon: &LatticePolygon,
    max_perturbations: usize,
) -> Result<(PairCode, LatticePolygon, Axis), LatticeError> {
    let mut tried = 0usize;
    let mut seen = BTreeSet::new();
    let mut queue = std::collections::VecDeque::new();
    let start = polygon.clone();
    let length_cap = polygon.len() + 4;
    seen.insert(start.canonical());
    queue.push_back(start);
    while let Some(cand) = queue.pop_front() {
        for axis in Axis::ALL {
            if let Ok(code) = project_to_code(&cand, axis) {
                return Ok((code, cand, axis));
            }
        }
        tried += 1;
        if tried > max_perturbations {
            break;
        }
        for k in 0..cand.len() {
            if let Some(w) = exchange(&cand, k) {
                if seen.insert(w.canonical()) {
                    queue.push_back(w.clone());
                }
            }
            if cand.len() + 2 <= length_cap {
                for flavor in 1..=6 {
                    if let Some(w) = pair_create(&cand, k, flavor) {
                        if seen.insert(w.canonical()) {
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
    }
    Err(LatticeError::IrregularProjection(tried))
}
