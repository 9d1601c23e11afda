//! Knot group presentations and permutation-class realizability.
//!
//! The group of a knot is presented with one generator per underpass arc and
//! one conjugation relation per crossing. Mapping generators onto a conjugacy
//! class of the permutation group and asking whether the relations can be
//! satisfied while the images generate the whole class yields a YES/NO answer
//! per class; differing answers certify inequivalent knots.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::codes::PairCode;
use crate::label::{norm, pred};
use crate::planarity::{self, PlanarityError, Shadow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("code is not realizable as a planar projection")]
    NotRealizable,
    #[error("partition of {0} exceeds the configured bound {1}")]
    ClassTooLarge(u32, u32),
    #[error(transparent)]
    Planarity(#[from] PlanarityError),
}

/// Hard bound on the symmetric group degree; class enumeration is factorial.
pub const MAX_CLASS_DEGREE: u32 = 8;

/// A decreasing positive sequence summing to its weight `m`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Option<Partition> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return None;
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        Some(Partition(parts))
    }

    /// The one-part partition `(m)`, head of the successor chain.
    pub fn initial(m: u32) -> Partition {
        Partition(vec![m])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Successor in the enumeration order: decrement the last part that is at
/// least 2, then refill with copies of the new value and a remainder. `None`
/// after the all-ones partition.
pub fn next_partition(p: &Partition) -> Option<Partition> {
    let parts = p.parts();
    let m = p.weight();
    let sigma = parts.iter().rposition(|&x| x >= 2)?;
    let mut out: Vec<u32> = parts[..sigma].to_vec();
    let new = parts[sigma] - 1;
    out.push(new);
    let mut sum: u32 = out.iter().sum();
    while sum + new <= m {
        out.push(new);
        sum += new;
    }
    if sum < m {
        out.push(m - sum);
    }
    Some(Partition(out))
}

/// All partitions of `m` in successor order.
pub fn partitions_of(m: u32) -> Vec<Partition> {
    let mut out = vec![Partition::initial(m)];
    while let Some(next) = next_partition(out.last().unwrap()) {
        out.push(next);
    }
    out
}

/// Relation `g_target = g_conj^sign · g_source · g_conj^(-sign)`, generators
/// named by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relation {
    pub target: usize,
    pub conj: usize,
    pub source: usize,
    /// `+1`: conjugate by `g_conj`; `-1`: by its inverse.
    pub sign: i8,
}

/// Wirtinger-style presentation: one generator per underpass arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relations: Vec<Relation>,
}

/// Relation-form signs per crossing, in stored pair order.
///
/// Signs come from a transversal genus-zero embedding of the code's shadow:
/// a crossing is positive when turning the over strand counterclockwise by a
/// quarter turn aligns it with the under strand. The convention is fixed by
/// making the crossing holding label 1 positive; the one global choice is
/// free, and for classes with largest part 2 the signs are irrelevant since
/// those permutations are involutions.
pub fn crossing_signs(code: &PairCode) -> Result<Vec<i8>, GroupError> {
    let n = code.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let shadow = Shadow::of_code(code);
    let embedding = planarity::embed(&shadow).ok_or(GroupError::NotRealizable)?;
    let rotations = embedding.rotations;
    let mut signs: Vec<i8> = code
        .pairs()
        .iter()
        .map(|&(o, u)| {
            let odd = if o % 2 == 1 { o } else { u };
            let flipped = rotations[(odd as usize - 1) / 2];
            let over_is_odd = o == odd;
            if over_is_odd != flipped {
                1
            } else {
                -1
            }
        })
        .collect();
    // normalize: the crossing holding label 1 is the positive one
    let anchor = code
        .pairs()
        .iter()
        .position(|&(o, u)| o == 1 || u == 1)
        .expect("label 1 present");
    if signs[anchor] < 0 {
        for s in &mut signs {
            *s = -*s;
        }
    }
    Ok(signs)
}

/// Build the presentation of a code's knot group.
///
/// Arcs start at each undercrossing label; the relation at a crossing links
/// the arc entering its underpass, the arc leaving it, and the arc passing
/// over, with the conjugation side taken from [`crossing_signs`].
pub fn wirtinger(code: &PairCode) -> Result<Presentation, GroupError> {
    if code.n() == 0 {
        return Ok(Presentation {
            generators: 1,
            relations: Vec::new(),
        });
    }
    let two_n = code.two_n();
    let mut unders: Vec<u32> = code.pairs().iter().map(|&(_, u)| u).collect();
    unders.sort_unstable();
    let arc_of = |label: u32| -> usize {
        let l = norm(label as i64, two_n);
        // the arc begins at the largest undercrossing not after l, wrapping
        match unders.binary_search(&l) {
            Ok(i) => i,
            Err(0) => unders.len() - 1,
            Err(i) => i - 1,
        }
    };
    let signs = crossing_signs(code)?;
    let relations = code
        .pairs()
        .iter()
        .zip(&signs)
        .map(|(&(o, u), &sign)| Relation {
            target: arc_of(u),
            conj: arc_of(o),
            source: arc_of(pred(u, two_n)),
            sign,
        })
        .collect();
    Ok(Presentation {
        generators: code.n(),
        relations,
    })
}

/// A permutation of `{0..m}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Perm(Vec<u8>);

impl Perm {
    fn identity(m: u32) -> Perm {
        Perm((0..m as u8).collect())
    }

    fn compose(&self, other: &Perm) -> Perm {
        // apply `other` first, then `self`
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    fn conjugate(&self, by: &Perm) -> Perm {
        by.compose(self).compose(&by.inverse())
    }

    fn cycle_type(&self) -> Vec<u32> {
        let m = self.0.len();
        let mut seen = vec![false; m];
        let mut cycles = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = self.0[at] as usize;
                len += 1;
            }
            cycles.push(len);
        }
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        cycles
    }
}

/// All members of the conjugacy class named by a partition.
fn conjugacy_class(p: &Partition) -> Vec<Perm> {
    let m = p.weight() as usize;
    let target = p.parts().to_vec();
    let mut out = Vec::new();
    let mut current = Perm::identity(m as u32);
    // iterate all permutations in lexicographic one-line order
    loop {
        if current.cycle_type() == target {
            out.push(current.clone());
        }
        // next permutation
        let v = &mut current.0;
        let Some(pivot) = (0..m.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
            break;
        };
        let swap = (pivot + 1..m).rev().find(|&i| v[i] > v[pivot]).unwrap();
        v.swap(pivot, swap);
        v[pivot + 1..].reverse();
    }
    out
}

/// Does some class assignment satisfy every relation while its values
/// generate the whole class under mutual conjugation?
pub fn realizes_class(pres: &Presentation, partition: &Partition) -> Result<bool, GroupError> {
    let m = partition.weight();
    if m > MAX_CLASS_DEGREE {
        return Err(GroupError::ClassTooLarge(m, MAX_CLASS_DEGREE));
    }
    let class = conjugacy_class(partition);
    let class_set: BTreeSet<&Perm> = class.iter().collect();
    let k = pres.generators;
    // by symmetry the first generator may be pinned to one representative
    let mut assignment: Vec<Option<Perm>> = vec![None; k];
    assignment[0] = Some(class[0].clone());
    let mut found = false;
    backtrack(
        pres,
        &class,
        &class_set,
        &mut assignment,
        &mut found,
    );
    Ok(found)
}

fn propagate(
    pres: &Presentation,
    assignment: &mut Vec<Option<Perm>>,
    touched: &mut Vec<usize>,
) -> bool {
    loop {
        let mut progress = false;
        for r in &pres.relations {
            let conj = match &assignment[r.conj] {
                Some(p) => p.clone(),
                None => continue,
            };
            let by = if r.sign > 0 { conj } else { conj.inverse() };
            match (&assignment[r.source], &assignment[r.target]) {
                (Some(src), None) => {
                    let val = src.conjugate(&by);
                    assignment[r.target] = Some(val);
                    touched.push(r.target);
                    progress = true;
                }
                (None, Some(tgt)) => {
                    let val = tgt.conjugate(&by.inverse());
                    assignment[r.source] = Some(val);
                    touched.push(r.source);
                    progress = true;
                }
                (Some(src), Some(tgt)) => {
                    if src.conjugate(&by) != *tgt {
                        return false;
                    }
                }
                (None, None) => {}
            }
        }
        if !progress {
            return true;
        }
    }
}

fn backtrack(
    pres: &Presentation,
    class: &[Perm],
    class_set: &BTreeSet<&Perm>,
    assignment: &mut Vec<Option<Perm>>,
    found: &mut bool,
) {
    if *found {
        return;
    }
    let mut touched = Vec::new();
    if !propagate(pres, assignment, &mut touched) {
        for t in touched {
            assignment[t] = None;
        }
        return;
    }
    match assignment.iter().position(|a| a.is_none()) {
        None => {
            // complete and consistent; check class generation
            let values: Vec<&Perm> = assignment.iter().map(|a| a.as_ref().unwrap()).collect();
            if generates_class(&values, class_set) {
                *found = true;
            }
        }
        Some(idx) => {
            for candidate in class {
                assignment[idx] = Some(candidate.clone());
                backtrack(pres, class, class_set, assignment, found);
                if *found {
                    break;
                }
            }
            assignment[idx] = None;
        }
    }
    for t in touched {
        assignment[t] = None;
    }
}

/// Close the assigned permutations under mutual conjugation and compare with
/// the full class.
fn generates_class(values: &[&Perm], class: &BTreeSet<&Perm>) -> bool {
    let mut set: BTreeSet<Perm> = values.iter().map(|&p| p.clone()).collect();
    loop {
        let mut fresh = Vec::new();
        for a in &set {
            for b in &set {
                for c in [b.conjugate(a), b.conjugate(&a.inverse())] {
                    if !set.contains(&c) && !fresh.contains(&c) {
                        fresh.push(c);
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        set.extend(fresh);
    }
    set.len() == class.len()
}

/// The YES/NO vector over all partitions of weight `1..=m_max`, in successor
/// order.
pub fn invariant_vector(
    code: &PairCode,
    m_max: u32,
) -> Result<Vec<(Partition, bool)>, GroupError> {
    let pres = wirtinger(code)?;
    let mut out = Vec::new();
    for m in 1..=m_max {
        for p in partitions_of(m) {
            let yes = realizes_class(&pres, &p)?;
            out.push((p, yes));
        }
    }
    Ok(out)
}

/// Render a vector in the certificate format.
pub fn format_vector(vector: &[(Partition, bool)]) -> String {
    vector
        .iter()
        .map(|(p, yes)| format!("partition={p};answer={}", if *yes { "Y" } else { "N" }))
        .collect::<Vec<_>>()
        .join(";")
}
