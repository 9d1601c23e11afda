//! Reidemeister rewriting on pair codes.
//!
//! Three move families act on names:
//! - *untwist / twist* (R1): remove or insert a kink pair `(i, i±1)`;
//! - *poke* (R2): remove two pairs whose over labels and under labels are both
//!   strand-adjacent, or insert such a pair along a free loop;
//! - *triangle slide* (R3): slide one strand across a crossing of the other
//!   two, leaving the crossing count unchanged.
//!
//! Down moves strictly shrink names and up moves strictly grow them; the
//! triangle slide generates finite orbits explored breadth-first in canonical
//! form.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::codes::{CodeError, PairCode};
use crate::label::{circ_dist, norm, pred, succ};
use crate::planarity::{PlanarityError, Shadow, ShadowAnalysis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("move site not present in code")]
    SiteNotFound,
    #[error("triangle strands have cyclic over/under roles")]
    InconsistentRoles,
    #[error("kink insertion at {0} enables no triangle slide")]
    FruitlessInsertion(u32),
    #[error("arcs {0} and {1} do not lie on one free loop")]
    NotNeighboringSegments(u32, u32),
    #[error("statistic undefined on the empty code")]
    EmptyCode,
    #[error("triangle-slide orbit exceeded budget of {0} members")]
    BudgetExceeded(usize),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Planarity(#[from] PlanarityError),
}

/// First kink pair `(i, i±1)` in ascending overcrossing order, if any.
pub fn r1_site(code: &PairCode) -> Option<(u32, u32)> {
    let two_n = code.two_n();
    code.pairs()
        .iter()
        .copied()
        .find(|&(o, u)| circ_dist(o, u, two_n) == 1)
}

/// All kink pairs in ascending overcrossing order.
pub fn r1_sites(code: &PairCode) -> Vec<(u32, u32)> {
    let two_n = code.two_n();
    code.pairs()
        .iter()
        .copied()
        .filter(|&(o, u)| circ_dist(o, u, two_n) == 1)
        .collect()
}

/// A poke site: two pairs with adjacent over labels and adjacent under labels.
pub type R2Site = ((u32, u32), (u32, u32));

fn pair_of(code: &PairCode, label: u32) -> (u32, u32) {
    let p = code.partner(label);
    if code.pairs().contains(&(label, p)) {
        (label, p)
    } else {
        (p, label)
    }
}

/// First poke site in label scan order: the least `i` whose signed companions
/// at `i` and `i+1` share a side and have strand-adjacent partners.
pub fn r2_site(code: &PairCode) -> Option<R2Site> {
    r2_scan(code, true).into_iter().next()
}

/// All poke sites, deduplicated, in label scan order.
pub fn r2_sites(code: &PairCode) -> Vec<R2Site> {
    r2_scan(code, false)
}

fn r2_scan(code: &PairCode, first_only: bool) -> Vec<R2Site> {
    let two_n = code.two_n();
    if two_n < 4 {
        return Vec::new();
    }
    let a = code.companions();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for i in 1..=two_n {
        let j = succ(i, two_n);
        let (ci, cj) = (a[i as usize - 1], a[j as usize - 1]);
        if (ci > 0) == (cj > 0)
            && circ_dist(ci.unsigned_abs() as u32, cj.unsigned_abs() as u32, two_n) == 1
        {
            let p1 = pair_of(code, i);
            let p2 = pair_of(code, j);
            let site = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
            if seen.insert(site) {
                out.push(site);
                if first_only {
                    return out;
                }
            }
        }
    }
    out
}

/// Remove a set of labels and re-pack the survivors onto `{1..}`, preserving
/// strand order.
fn repack(code: &PairCode, removed: &[u32]) -> PairCode {
    let shift = |x: u32| -> u32 { x - removed.iter().filter(|&&r| r < x).count() as u32 };
    let pairs = code
        .pairs()
        .iter()
        .filter(|&&(o, u)| !removed.contains(&o) && !removed.contains(&u))
        .map(|&(o, u)| (shift(o), shift(u)))
        .collect();
    PairCode::from_pairs_normalizing(pairs).expect("repacking preserves validity")
}

/// Remove one kink pair; the crossing count drops by one.
pub fn apply_r1_down(code: &PairCode, site: (u32, u32)) -> Result<PairCode, MoveError> {
    let two_n = code.two_n();
    let present = code.pairs().contains(&site) && circ_dist(site.0, site.1, two_n) == 1;
    if !present {
        return Err(MoveError::SiteNotFound);
    }
    Ok(repack(code, &[site.0, site.1]))
}

/// Remove a poke site; the crossing count drops by two.
pub fn apply_r2_down(code: &PairCode, site: R2Site) -> Result<PairCode, MoveError> {
    let ((o1, u1), (o2, u2)) = site;
    let two_n = code.two_n();
    let present = code.pairs().contains(&(o1, u1))
        && code.pairs().contains(&(o2, u2))
        && circ_dist(o1, o2, two_n) == 1
        && circ_dist(u1, u2, two_n) == 1;
    if !present {
        return Err(MoveError::SiteNotFound);
    }
    Ok(repack(code, &[o1, u1, o2, u2]))
}

/// A triangle-slide site: three unit arcs, each joining two of three distinct
/// crossings along one strand passage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct R3Site {
    /// Sides as `(x, succ(x))` label pairs, sorted by lower label.
    pub sides: [(u32, u32); 3],
}

struct Triangle {
    /// Per side, the two `(label, crossing index)` endpoints.
    ends: [((u32, usize), (u32, usize)); 3],
}

/// Label-to-crossing-index lookup, index `label - 1`.
fn crossing_lookup(code: &PairCode) -> Vec<usize> {
    let mut by_label = vec![usize::MAX; code.two_n() as usize];
    for (idx, &(o, u)) in code.pairs().iter().enumerate() {
        by_label[o as usize - 1] = idx;
        by_label[u as usize - 1] = idx;
    }
    by_label
}

fn resolve_triangle(
    code: &PairCode,
    site: &R3Site,
    cross_of: &[usize],
) -> Result<Triangle, MoveError> {
    let two_n = code.two_n();
    let mut ends = [((0, 0), (0, 0)); 3];
    let mut labels = BTreeSet::new();
    let mut crossings = BTreeSet::new();
    for (s, &(x, y)) in site.sides.iter().enumerate() {
        if x == 0 || x > two_n || y == 0 || y > two_n || succ(x, two_n) != y {
            return Err(MoveError::SiteNotFound);
        }
        let cx = cross_of[x as usize - 1];
        let cy = cross_of[y as usize - 1];
        if cx == cy {
            return Err(MoveError::SiteNotFound);
        }
        labels.extend([x, y]);
        crossings.extend([cx, cy]);
        ends[s] = ((x, cx), (y, cy));
    }
    if labels.len() != 6 || crossings.len() != 3 {
        return Err(MoveError::SiteNotFound);
    }
    // each crossing is met by exactly two sides, one per strand passage
    for &c in &crossings {
        let hits: Vec<u32> = ends
            .iter()
            .flat_map(|&((x, cx), (y, cy))| {
                [(x, cx), (y, cy)]
                    .into_iter()
                    .filter(move |&(_, ci)| ci == c)
                    .map(|(l, _)| l)
            })
            .collect();
        if hits.len() != 2 || hits[0] == hits[1] {
            return Err(MoveError::SiteNotFound);
        }
    }
    Ok(Triangle { ends })
}

fn shared_crossing(tri: &Triangle, s: usize, t: usize) -> Option<usize> {
    let ((_, a1), (_, a2)) = tri.ends[s];
    let ((_, b1), (_, b2)) = tri.ends[t];
    [a1, a2].into_iter().find(|c| *c == b1 || *c == b2)
}

fn side_label_at(tri: &Triangle, s: usize, crossing: usize) -> u32 {
    let ((x, cx), (y, _)) = tri.ends[s];
    if cx == crossing {
        x
    } else {
        y
    }
}

fn side_label_not_at(tri: &Triangle, s: usize, crossing: usize) -> u32 {
    let ((x, cx), (y, _)) = tri.ends[s];
    if cx == crossing {
        y
    } else {
        x
    }
}

/// Over/under order of the three sides; `None` when the roles are cyclic and
/// the slide is illegal.
fn side_order(code: &PairCode, tri: &Triangle) -> Option<()> {
    let mut over_count = [0usize; 3];
    for s in 0..3 {
        for t in (s + 1)..3 {
            let shared = shared_crossing(tri, s, t)?;
            let (o, _) = code.pairs()[shared];
            if side_label_at(tri, s, shared) == o {
                over_count[s] += 1;
            } else {
                over_count[t] += 1;
            }
        }
    }
    if over_count.contains(&2) && over_count.contains(&0) {
        Some(())
    } else {
        None
    }
}

/// All legal triangle-slide sites, deterministically ordered.
pub fn r3_sites(code: &PairCode) -> Vec<R3Site> {
    let two_n = code.two_n();
    if code.n() < 3 {
        return Vec::new();
    }
    let cross_of = crossing_lookup(code);
    let mut sides = Vec::new();
    for x in 1..=two_n {
        let y = succ(x, two_n);
        if cross_of[x as usize - 1] != cross_of[y as usize - 1] {
            sides.push((x, y));
        }
    }
    let mut out = Vec::new();
    for i in 0..sides.len() {
        for j in (i + 1)..sides.len() {
            // sides meeting in a crossing cut the triple scan early
            let meet_ij = sides_touch(&cross_of, sides[i], sides[j]);
            if !meet_ij {
                continue;
            }
            for k in (j + 1)..sides.len() {
                let site = R3Site {
                    sides: [sides[i], sides[j], sides[k]],
                };
                if let Ok(tri) = resolve_triangle(code, &site, &cross_of) {
                    if side_order(code, &tri).is_some() {
                        out.push(site);
                    }
                }
            }
        }
    }
    out
}

fn sides_touch(cross_of: &[usize], a: (u32, u32), b: (u32, u32)) -> bool {
    let ca = [cross_of[a.0 as usize - 1], cross_of[a.1 as usize - 1]];
    let cb = [cross_of[b.0 as usize - 1], cross_of[b.1 as usize - 1]];
    ca.iter().any(|c| cb.contains(c))
}

/// Slide the triangle: each strand's two labels swap crossing assignments,
/// over/under kept per strand pair.
pub fn apply_r3(code: &PairCode, site: &R3Site) -> Result<PairCode, MoveError> {
    let cross_of = crossing_lookup(code);
    let tri = resolve_triangle(code, site, &cross_of)?;
    side_order(code, &tri).ok_or(MoveError::InconsistentRoles)?;
    let triangle_crossings: BTreeSet<usize> = tri
        .ends
        .iter()
        .flat_map(|&((_, c1), (_, c2))| [c1, c2])
        .collect();
    let mut pairs: Vec<(u32, u32)> = code
        .pairs()
        .iter()
        .enumerate()
        .filter(|(idx, _)| !triangle_crossings.contains(idx))
        .map(|(_, &p)| p)
        .collect();
    for s in 0..3 {
        for t in (s + 1)..3 {
            let shared = shared_crossing(&tri, s, t).expect("triangle");
            let (o, _) = code.pairs()[shared];
            let s_new = side_label_not_at(&tri, s, shared);
            let t_new = side_label_not_at(&tri, t, shared);
            if side_label_at(&tri, s, shared) == o {
                pairs.push((s_new, t_new));
            } else {
                pairs.push((t_new, s_new));
            }
        }
    }
    Ok(PairCode::from_pairs_normalizing(pairs)?)
}

/// Closure of a code under triangle slides, all members held in canonical
/// relabeled form in breadth-first discovery order.
#[derive(Debug, Clone)]
pub struct R3Orbit {
    members: Vec<PairCode>,
    complete: bool,
}

impl R3Orbit {
    pub fn members(&self) -> &[PairCode] {
        &self.members
    }

    /// False when the budget truncated the closure.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn lex_min(&self) -> &PairCode {
        self.members.iter().min().expect("orbit is never empty")
    }

    pub fn contains(&self, code: &PairCode) -> bool {
        self.members.contains(code)
    }
}

/// Default cap on orbit size.
pub const DEFAULT_ORBIT_BUDGET: usize = 20_000;

pub fn r3_orbit(code: &PairCode, max_size: usize) -> R3Orbit {
    let start = code.canonical_relabel();
    let mut seen: BTreeSet<PairCode> = BTreeSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    order.push(start.clone());
    queue.push_back(start);
    let mut complete = true;
    'bfs: while let Some(cur) = queue.pop_front() {
        for site in r3_sites(&cur) {
            let next = apply_r3(&cur, &site)
                .expect("enumerated site is legal")
                .canonical_relabel();
            if seen.insert(next.clone()) {
                if order.len() >= max_size {
                    complete = false;
                    break 'bfs;
                }
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    R3Orbit {
        members: order,
        complete,
    }
}

/// Companion-gap statistic; `1` exactly when an untwist or poke reduction is
/// available on the name itself.
///
/// Gaps fold to circular distance and only side-consistent companion
/// comparisons enter, keeping the statistic relabel-invariant.
pub fn reduction_gap(code: &PairCode) -> Result<u32, MoveError> {
    if code.n() == 0 {
        return Err(MoveError::EmptyCode);
    }
    let two_n = code.two_n();
    let a = code.companions();
    let mut partner_min = u32::MAX;
    let mut partner_max = 0u32;
    for (idx, &c) in a.iter().enumerate() {
        if c > 0 {
            let d = circ_dist(c as u32, idx as u32 + 1, two_n);
            partner_min = partner_min.min(d);
            partner_max = partner_max.max(d);
        }
    }
    let mut m = partner_min.min(two_n - partner_max);
    let mut step_min = u32::MAX;
    let mut step_max = 0u32;
    for i in 0..two_n as usize {
        let j = (i + 1) % two_n as usize;
        if (a[i] > 0) == (a[j] > 0) {
            let d = circ_dist(a[j].unsigned_abs() as u32, a[i].unsigned_abs() as u32, two_n);
            step_min = step_min.min(d);
            step_max = step_max.max(d);
        }
    }
    if step_min != u32::MAX {
        m = m.min(step_min).min(two_n - step_max);
    }
    Ok(m)
}

/// Insert a kink pair `(pos, pos+1)`, shifting old labels `>= pos` up by two.
///
/// Insertions that split or sit beside an existing kink are rejected (their
/// net effect is a poke), as are insertions enabling no triangle slide at the
/// new crossing.
pub fn apply_r1_up(code: &PairCode, pos: u32) -> Result<PairCode, MoveError> {
    let two_n = code.two_n();
    if pos == 0 || pos > two_n + 1 {
        return Err(MoveError::SiteNotFound);
    }
    if code.n() > 0 {
        let here = norm(pos as i64, two_n);
        let before = pred(here, two_n);
        let after = succ(here, two_n);
        if code.partner(before) == here || code.partner(here) == after {
            return Err(MoveError::FruitlessInsertion(pos));
        }
    }
    let result = insert_kink(code, pos);
    let new_labels = [pos, pos + 1];
    let enables = r3_sites(&result).iter().any(|site| {
        site.sides
            .iter()
            .any(|&(x, y)| new_labels.contains(&x) || new_labels.contains(&y))
    });
    if !enables {
        return Err(MoveError::FruitlessInsertion(pos));
    }
    Ok(result)
}

fn insert_kink(code: &PairCode, pos: u32) -> PairCode {
    let shift = |x: u32| if x >= pos { x + 2 } else { x };
    let mut pairs: Vec<(u32, u32)> = code
        .pairs()
        .iter()
        .map(|&(o, u)| (shift(o), shift(u)))
        .collect();
    pairs.push((pos, pos + 1));
    PairCode::from_pairs_normalizing(pairs).expect("kink insertion preserves validity")
}

/// Arc pairs eligible for a poke insertion: distinct arcs on a common face.
pub fn r2_up_sites(analysis: &ShadowAnalysis) -> Vec<(u32, u32)> {
    analysis.poke_arc_pairs()
}

/// Poke two new crossings across the arcs `seg_pair = (a, b)`, `a < b`, of a
/// free loop. When `over_first` is set the strand carrying arc `a` passes
/// over at both new crossings.
pub fn apply_r2_up(
    code: &PairCode,
    seg_pair: (u32, u32),
    over_first: bool,
) -> Result<PairCode, MoveError> {
    let shadow = Shadow::of_code(code);
    let analysis = ShadowAnalysis::new(&shadow)?;
    if !r2_up_sites(&analysis).contains(&seg_pair) {
        return Err(MoveError::NotNeighboringSegments(seg_pair.0, seg_pair.1));
    }
    let (over, under) = apply_r2_up_unchecked(code, seg_pair);
    Ok(if over_first { over } else { under })
}

/// Both over/under variants of the poke; the caller guarantees the arc pair
/// lies on a free loop. The relative orientation of the two new crossings is
/// forced by the parity rule: exactly one pairing keeps every pair odd-even.
pub fn apply_r2_up_unchecked(code: &PairCode, (a, b): (u32, u32)) -> (PairCode, PairCode) {
    debug_assert!(a < b);
    let shift = |x: u32| {
        if x > b {
            x + 4
        } else if x > a {
            x + 2
        } else {
            x
        }
    };
    let base: Vec<(u32, u32)> = code
        .pairs()
        .iter()
        .map(|&(o, u)| (shift(o), shift(u)))
        .collect();
    let (p1, p2, q1, q2) = (a + 1, a + 2, b + 3, b + 4);
    let (first, second) = if (a + b) % 2 == 0 {
        ((p1, q2), (p2, q1))
    } else {
        ((p1, q1), (p2, q2))
    };
    let mut over = base.clone();
    over.extend([first, second]);
    let mut under = base;
    under.extend([(first.1, first.0), (second.1, second.0)]);
    (
        PairCode::from_pairs_normalizing(over).expect("poke preserves validity"),
        PairCode::from_pairs_normalizing(under).expect("poke preserves validity"),
    )
}
