//! The enumeration sweep: shadow iteration, admissibility, over/under
//! assignment, and the reduction pipeline keeping one name per knot class.
//!
//! Shadows are visited as permutations in lexicographic order. A shadow is
//! admissible when it has no kink adjacency, is not a connected sum, is the
//! lexicographic minimum of its relabelings, and passes the loop-parity
//! realizability test. Each admissible shadow contributes `2^(n-1)`
//! projections; every projection is kept only if no sequence of moves within
//! the configured budgets reaches a smaller name or a lexicographically
//! preferred name of equal size.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use thiserror::Error;

use crate::catalog::{Catalog, KnotRecord, RecordStatus, SummaryRow};
use crate::codes::{PairCode, MAX_CROSSINGS};
use crate::exec;
use crate::moves::{
    apply_r1_down, apply_r1_up, apply_r2_down, apply_r2_up_unchecked, r1_site, r1_sites, r2_site,
    r2_sites, r3_orbit, R3Orbit, DEFAULT_ORBIT_BUDGET,
};
use crate::planarity::{PlanarityError, Shadow, ShadowAnalysis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("shadow {shadow_id}: {source}")]
    Shadow {
        shadow_id: u64,
        source: ReduceError,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("triangle-slide orbit exceeded {0} members")]
    OrbitBudget(usize),
    #[error("descent explored more than {0} orbits")]
    NodeBudget(usize),
    #[error(transparent)]
    Planarity(#[from] PlanarityError),
}

/// Iteration state over shadows: a permutation of `{1..=n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowCursor {
    f: Vec<u32>,
}

impl ShadowCursor {
    /// The first shadow, `f(i) = i`.
    pub fn first(n: usize) -> ShadowCursor {
        ShadowCursor {
            f: (1..=n as u32).collect(),
        }
    }

    pub fn permutation(&self) -> &[u32] {
        &self.f
    }

    pub fn shadow(&self) -> Shadow {
        Shadow::from_permutation(&self.f).expect("cursor holds a permutation")
    }

    /// Lexicographic rank of the permutation, `0..n!`.
    pub fn rank(&self) -> u64 {
        let n = self.f.len();
        let mut rank = 0u64;
        let mut factorial = 1u64;
        for i in (0..n).rev() {
            let smaller = self.f[i + 1..].iter().filter(|&&x| x < self.f[i]).count() as u64;
            rank += smaller * factorial;
            factorial *= (n - i) as u64;
        }
        rank
    }
}

/// Lexicographic successor; `None` after the final shadow `f(i) = n+1-i`.
pub fn next_shadow(cur: &ShadowCursor) -> Option<ShadowCursor> {
    let mut f = cur.f.clone();
    let n = f.len();
    if n < 2 {
        return None;
    }
    let mut l = n - 1;
    while l > 0 && f[l - 1] >= f[l] {
        l -= 1;
    }
    if l == 0 {
        return None;
    }
    let pivot = l - 1;
    let mut swap = n - 1;
    while f[swap] <= f[pivot] {
        swap -= 1;
    }
    f.swap(pivot, swap);
    f[l..].reverse();
    Some(ShadowCursor { f })
}

/// Why a shadow was rejected, or that it was not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    /// Some label is paired with a strand neighbor (untwist available).
    KinkAdjacency,
    /// A proper label interval closes under pairing (connected sum).
    CompositeInterval,
    /// Another relabeling of the shadow is lexicographically preferred.
    NotLexMinimal,
    /// Some segment-disjoint loop pair crosses an odd number of times.
    JordanObstruction,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

/// Run the four admissibility tests in order, reporting the first failure.
///
/// On success the loop analysis computed for the final test is returned for
/// reuse.
pub fn shadow_admissible(
    shadow: &Shadow,
) -> Result<(Admissibility, Option<ShadowAnalysis>), PlanarityError> {
    let two_n = shadow.two_n();
    for x in 1..=two_n {
        if crate::label::circ_dist(x, shadow.partner(x), two_n) == 1 {
            return Ok((Admissibility::KinkAdjacency, None));
        }
    }
    if shadow.is_composite() {
        return Ok((Admissibility::CompositeInterval, None));
    }
    if !shadow.is_lex_minimal() {
        return Ok((Admissibility::NotLexMinimal, None));
    }
    let analysis = ShadowAnalysis::new(shadow)?;
    if !analysis.is_realizable() {
        return Ok((Admissibility::JordanObstruction, None));
    }
    Ok((Admissibility::Admissible, Some(analysis)))
}

/// The `2^(n-1)` projections of a shadow with label 1 on the overcrossing
/// side, in binary-counter order; the first is the alternating projection.
pub fn assignments(shadow: &Shadow) -> Vec<PairCode> {
    let n = shadow.n();
    let crossings = shadow.crossings();
    let count = 1usize << n.saturating_sub(1);
    let mut out = Vec::with_capacity(count);
    for c in 0..count {
        let mut pairs = Vec::with_capacity(n);
        for (i, &(odd, even)) in crossings.iter().enumerate() {
            // bit for g_i, i >= 2; g_1 stays 0
            let flipped = i > 0 && (c >> (n - 1 - i)) & 1 == 1;
            pairs.push(if flipped { (even, odd) } else { (odd, even) });
        }
        out.push(PairCode::from_pairs(pairs).expect("assignment is valid"));
    }
    out
}

/// Assignment bits `g_1..g_n` of a code relative to its shadow.
pub fn assignment_bits(code: &PairCode) -> String {
    let (_, g) = code.fg_form();
    g.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Search budgets for one reduction attempt.
#[derive(Debug, Clone)]
pub struct ReduceOptions {
    /// Poke-up moves allowed per excursion: 0 or 1.
    pub up_budget: u8,
    /// Cap on any single triangle-slide orbit.
    pub orbit_budget: usize,
    /// Cap on orbits expanded across one reduction attempt.
    pub node_budget: usize,
    /// Allow a twist excursion to continue with a poke.
    pub chain_twist_then_poke: bool,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            up_budget: 1,
            orbit_budget: DEFAULT_ORBIT_BUDGET,
            node_budget: 2_000_000,
            chain_twist_then_poke: true,
        }
    }
}

/// Verdict of the reduction pipeline on one projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The projection is the preferred representative of everything the
    /// bounded search reached.
    Keep(PairCode),
    /// A smaller or lexicographically preferred equivalent name exists.
    RejectedBy(PairCode),
}

struct Search<'a> {
    opts: &'a ReduceOptions,
    orbits_expanded: usize,
    /// Poke sites per shadow: arc pairs on a common embedded face.
    poke_sites: HashMap<Shadow, Rc<Vec<(u32, u32)>>>,
    /// Codes whose descent neighborhood found no witness for the current
    /// base; shared across excursions of one reduction attempt.
    explored: BTreeSet<PairCode>,
}

impl<'a> Search<'a> {
    fn new(opts: &'a ReduceOptions) -> Self {
        Search {
            opts,
            orbits_expanded: 0,
            poke_sites: HashMap::new(),
            explored: BTreeSet::new(),
        }
    }

    fn orbit(&mut self, code: &PairCode) -> Result<R3Orbit, ReduceError> {
        self.orbits_expanded += 1;
        if self.orbits_expanded > self.opts.node_budget {
            return Err(ReduceError::NodeBudget(self.opts.node_budget));
        }
        let orbit = r3_orbit(code, self.opts.orbit_budget);
        if !orbit.is_complete() {
            return Err(ReduceError::OrbitBudget(self.opts.orbit_budget));
        }
        Ok(orbit)
    }

    fn poke_sites(&mut self, shadow: Shadow) -> Rc<Vec<(u32, u32)>> {
        if let Some(sites) = self.poke_sites.get(&shadow) {
            return sites.clone();
        }
        // faces come straight from the embedding; loop analysis not needed
        let mut pairs = BTreeSet::new();
        if let Some(embedding) = crate::planarity::embed(&shadow) {
            for arcs in &embedding.face_arcs {
                for i in 0..arcs.len() {
                    for j in (i + 1)..arcs.len() {
                        pairs.insert((arcs[i], arcs[j]));
                    }
                }
            }
        }
        let sites = Rc::new(pairs.into_iter().collect::<Vec<_>>());
        self.poke_sites.insert(shadow, sites.clone());
        sites
    }

    /// Explore triangle slides and down moves from `start`, hunting for a
    /// witness strictly below `base` or lexicographically before it.
    ///
    /// Each triangle-slide orbit is expanded once per reduction attempt: all
    /// its members are marked explored together, and the marks persist across
    /// excursions since every hunt targets the same base.
    fn descend(
        &mut self,
        start: PairCode,
        base: &PairCode,
    ) -> Result<Option<PairCode>, ReduceError> {
        let mut stack = vec![start.canonical_relabel()];
        while let Some(c) = stack.pop() {
            if self.explored.contains(&c) {
                continue;
            }
            let orbit = self.orbit(&c)?;
            for m in orbit.members() {
                self.explored.insert(m.clone());
            }
            for m in orbit.members() {
                if m.n() == base.n() && m < base {
                    return Ok(Some(m.clone()));
                }
                for d in down_results(m) {
                    let dc = d.canonical_relabel();
                    match dc.n().cmp(&base.n()) {
                        std::cmp::Ordering::Less => return Ok(Some(dc)),
                        std::cmp::Ordering::Equal => {
                            if dc < *base {
                                return Ok(Some(dc));
                            }
                            if dc != *base && !self.explored.contains(&dc) {
                                stack.push(dc);
                            }
                        }
                        std::cmp::Ordering::Greater => {
                            if !self.explored.contains(&dc) {
                                stack.push(dc);
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Poke excursions from `x`: every arc pair of an embedded face, both
    /// over/under variants.
    fn poke_excursions(
        &mut self,
        x: &PairCode,
        base: &PairCode,
    ) -> Result<Option<PairCode>, ReduceError> {
        let sites = self.poke_sites(Shadow::of_code(x));
        for &pair in sites.iter() {
            let (over, under) = apply_r2_up_unchecked(x, pair);
            for z in [over, under] {
                if let Some(w) = self.descend(z, base)? {
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }
}

fn down_results(code: &PairCode) -> Vec<PairCode> {
    let mut out = Vec::new();
    for s in r1_sites(code) {
        out.push(apply_r1_down(code, s).expect("site enumerated"));
    }
    for s in r2_sites(code) {
        out.push(apply_r2_down(code, s).expect("site enumerated"));
    }
    out
}

/// Decide whether a projection survives as the preferred name of its class.
///
/// The pipeline rejects a code when it has an untwist or poke site, when any
/// triangle-slide orbit member has one, when its orbit holds a
/// lexicographically preferred member, or when an up excursion (twists, then
/// at most `up_budget` pokes, then slides and down moves) reaches a smaller
/// or preferred name. Budget exhaustion is an error, never a silent verdict.
pub fn reduce_to_preferred(
    code: &PairCode,
    opts: &ReduceOptions,
) -> Result<Outcome, ReduceError> {
    let mut search = Search::new(opts);
    reduce_with_search(code, opts, &mut search)
}

fn reduce_with_search(
    code: &PairCode,
    opts: &ReduceOptions,
    search: &mut Search,
) -> Result<Outcome, ReduceError> {
    let base = code.canonical_relabel();
    if base.n() == 0 {
        return Ok(Outcome::Keep(base));
    }
    // exploration marks are relative to the base; start afresh
    search.explored.clear();
    if let Some(s) = r1_site(&base) {
        let w = apply_r1_down(&base, s).expect("site present").canonical_relabel();
        return Ok(Outcome::RejectedBy(w));
    }
    if let Some(s) = r2_site(&base) {
        let w = apply_r2_down(&base, s).expect("site present").canonical_relabel();
        return Ok(Outcome::RejectedBy(w));
    }
    let orbit = search.orbit(&base)?;
    for m in orbit.members() {
        if let Some(s) = r1_site(m) {
            let w = apply_r1_down(m, s).expect("site present").canonical_relabel();
            return Ok(Outcome::RejectedBy(w));
        }
        if let Some(s) = r2_site(m) {
            let w = apply_r2_down(m, s).expect("site present").canonical_relabel();
            return Ok(Outcome::RejectedBy(w));
        }
    }
    let rep = orbit.lex_min();
    if *rep < base {
        return Ok(Outcome::RejectedBy(rep.clone()));
    }
    // members are slide-closed and irreducible: nothing to find among them
    for m in orbit.members() {
        search.explored.insert(m.clone());
    }
    for x in orbit.members() {
        for pos in 1..=x.two_n() + 1 {
            let Ok(y) = apply_r1_up(x, pos) else { continue };
            if let Some(w) = search.descend(y.clone(), &base)? {
                return Ok(Outcome::RejectedBy(w));
            }
            if opts.up_budget >= 1 && opts.chain_twist_then_poke {
                let yorbit = search.orbit(&y)?;
                for y2 in yorbit.members() {
                    if let Some(w) = search.poke_excursions(y2, &base)? {
                        return Ok(Outcome::RejectedBy(w));
                    }
                }
            }
        }
        if opts.up_budget >= 1 {
            if let Some(w) = search.poke_excursions(x, &base)? {
                return Ok(Outcome::RejectedBy(w));
            }
        }
    }
    Ok(Outcome::Keep(base))
}

/// Iterate the pipeline down to its fixed point: follow every rejection to
/// its witness until a name is kept. The witness chain strictly decreases in
/// crossing count then lexicographic order, so this terminates.
pub fn reduce_fully(code: &PairCode, opts: &ReduceOptions) -> Result<PairCode, ReduceError> {
    let mut cur = code.canonical_relabel();
    loop {
        match reduce_to_preferred(&cur, opts)? {
            Outcome::Keep(c) => return Ok(c),
            Outcome::RejectedBy(w) => {
                debug_assert!(w.n() < cur.n() || w < cur);
                cur = w;
            }
        }
    }
}

/// Default crossing cap; larger runs must be acknowledged explicitly.
pub const DEFAULT_CROSSING_CAP: usize = 9;

/// Enumeration run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub max_crossings: usize,
    pub up_budget: u8,
    pub orbit_budget: usize,
    /// Worker threads; 0 lets the pool pick.
    pub workers: usize,
    /// Acknowledge runs past [`DEFAULT_CROSSING_CAP`].
    pub allow_beyond_cap: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_crossings: 8,
            up_budget: 1,
            orbit_budget: DEFAULT_ORBIT_BUDGET,
            workers: 0,
            allow_beyond_cap: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), EnumerateError> {
        if self.up_budget > 1 {
            return Err(EnumerateError::Config(format!(
                "up budget {} unsupported; only 0 and 1 are",
                self.up_budget
            )));
        }
        if self.max_crossings > DEFAULT_CROSSING_CAP && !self.allow_beyond_cap {
            return Err(EnumerateError::Config(format!(
                "{} crossings exceeds the default cap of {DEFAULT_CROSSING_CAP}; \
                 pass the acknowledgment flag for larger runs",
                self.max_crossings
            )));
        }
        if self.max_crossings > MAX_CROSSINGS {
            return Err(EnumerateError::Config(format!(
                "{} crossings exceeds the supported maximum {MAX_CROSSINGS}",
                self.max_crossings
            )));
        }
        Ok(())
    }

    fn reduce_options(&self) -> ReduceOptions {
        ReduceOptions {
            up_budget: self.up_budget,
            orbit_budget: self.orbit_budget,
            ..ReduceOptions::default()
        }
    }
}

/// Catalog plus the per-crossing summary of an enumeration run.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub catalog: Catalog,
    pub summary: Vec<SummaryRow>,
}

struct ShadowOutcome {
    admissible: bool,
    records: Vec<KnotRecord>,
}

fn process_shadow(
    rank: u64,
    f: &[u32],
    opts: &ReduceOptions,
) -> Result<ShadowOutcome, EnumerateError> {
    let shadow = Shadow::from_permutation(f).expect("cursor permutation");
    let wrap = |source: ReduceError| EnumerateError::Shadow {
        shadow_id: rank,
        source,
    };
    let (verdict, analysis) = shadow_admissible(&shadow)
        .map_err(|e| wrap(ReduceError::Planarity(e)))?;
    if !verdict.is_admissible() {
        return Ok(ShadowOutcome {
            admissible: false,
            records: Vec::new(),
        });
    }
    let _ = analysis;
    let mut search = Search::new(opts);
    let status = if shadow.n() >= 9 {
        RecordStatus::Unconfirmed
    } else {
        RecordStatus::Confirmed
    };
    let mut records = Vec::new();
    for code in assignments(&shadow) {
        // a shadow symmetry may map this projection onto an earlier one
        if code.canonical_relabel() != code {
            continue;
        }
        match reduce_with_search(&code, opts, &mut search).map_err(wrap)? {
            Outcome::Keep(canonical) => records.push(KnotRecord {
                assignment_bits: assignment_bits(&code),
                code: canonical,
                shadow_id: rank,
                invariants: String::new(),
                status,
            }),
            Outcome::RejectedBy(_) => {}
        }
    }
    Ok(ShadowOutcome {
        admissible: true,
        records,
    })
}

/// Enumerate all knot classes with at most `max_crossings` crossings.
///
/// Deterministic for a fixed config regardless of worker count: shadows are
/// processed independently and merged in shadow order.
pub fn enumerate_knots(cfg: &RunConfig) -> Result<EnumerationResult, EnumerateError> {
    cfg.validate()?;
    let opts = cfg.reduce_options();
    let mut catalog = Catalog::default();
    let mut summary = Vec::new();

    catalog.records.push(KnotRecord {
        code: PairCode::unknot(),
        shadow_id: 0,
        assignment_bits: String::new(),
        invariants: String::new(),
        status: RecordStatus::Confirmed,
    });
    summary.push(SummaryRow {
        n: 0,
        shadows: 1,
        assignments: 1,
        survivors: 1,
    });

    for n in 1..=cfg.max_crossings {
        let mut cursors = Vec::new();
        let mut cur = ShadowCursor::first(n);
        let mut rank = 0u64;
        loop {
            cursors.push((rank, cur.permutation().to_vec()));
            match next_shadow(&cur) {
                Some(next) => {
                    cur = next;
                    rank += 1;
                }
                None => break,
            }
        }
        let outcomes = exec::map_vec(cursors, |(rank, f)| process_shadow(rank, &f, &opts));
        let mut admissible = 0usize;
        let mut by_code: BTreeMap<PairCode, KnotRecord> = BTreeMap::new();
        for outcome in outcomes {
            let outcome = outcome?;
            if outcome.admissible {
                admissible += 1;
            }
            for rec in outcome.records {
                by_code.entry(rec.code.clone()).or_insert(rec);
            }
        }
        let survivors = by_code.len();
        summary.push(SummaryRow {
            n,
            shadows: admissible,
            assignments: admissible << (n - 1),
            survivors,
        });
        catalog.records.extend(by_code.into_values());
    }
    catalog.sort();
    Ok(EnumerationResult { catalog, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_code;

    #[test]
    fn successor_follows_lexicographic_order() {
        let c = ShadowCursor::first(3);
        assert_eq!(c.permutation(), &[1, 2, 3]);
        let c2 = next_shadow(&c).unwrap();
        assert_eq!(c2.permutation(), &[1, 3, 2]);
        let last = ShadowCursor {
            f: vec![3, 2, 1],
        };
        assert!(next_shadow(&last).is_none());
    }

    #[test]
    fn successor_visits_every_permutation_once() {
        for n in 1..=5usize {
            let mut count = 1;
            let mut cur = ShadowCursor::first(n);
            let mut seen = BTreeSet::new();
            seen.insert(cur.f.clone());
            while let Some(next) = next_shadow(&cur) {
                assert!(seen.insert(next.f.clone()));
                assert_eq!(next.rank(), count as u64);
                cur = next;
                count += 1;
            }
            assert_eq!(count, (1..=n).product::<usize>());
        }
    }

    #[test]
    fn identity_shadow_fails_the_kink_test() {
        let s = Shadow::from_permutation(&[1, 2, 3]).unwrap();
        let (verdict, _) = shadow_admissible(&s).unwrap();
        assert_eq!(verdict, Admissibility::KinkAdjacency);
    }

    #[test]
    fn trefoil_shadow_is_admissible() {
        let s = Shadow::from_permutation(&[2, 3, 1]).unwrap();
        let (verdict, analysis) = shadow_admissible(&s).unwrap();
        assert!(verdict.is_admissible());
        assert!(analysis.is_some());
    }

    #[test]
    fn assignment_sweep_shape() {
        let s = Shadow::from_permutation(&[2, 3, 1]).unwrap();
        let codes = assignments(&s);
        assert_eq!(codes.len(), 4);
        // first assignment is the alternating projection: odd labels over
        assert_eq!(codes[0], parse_code("1:4 3:6 5:2").unwrap());
        for c in &codes {
            let (_, g) = c.fg_form();
            assert!(!g[0]);
        }
        assert_eq!(assignment_bits(&codes[1]), "001");
    }

    #[test]
    fn reduce_keeps_unknot_and_trefoil() {
        let opts = ReduceOptions::default();
        assert_eq!(
            reduce_to_preferred(&PairCode::unknot(), &opts).unwrap(),
            Outcome::Keep(PairCode::unknot())
        );
        let trefoil = parse_code("1:4 3:6 5:2").unwrap();
        assert_eq!(
            reduce_to_preferred(&trefoil, &opts).unwrap(),
            Outcome::Keep(trefoil)
        );
    }

    #[test]
    fn reduce_rejects_kinked_codes() {
        let opts = ReduceOptions::default();
        let kink = parse_code("1:2").unwrap();
        assert_eq!(
            reduce_to_preferred(&kink, &opts).unwrap(),
            Outcome::RejectedBy(PairCode::unknot())
        );
    }

    #[test]
    fn config_validation() {
        let mut cfg = RunConfig::default();
        cfg.up_budget = 2;
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::default();
        cfg.max_crossings = 10;
        assert!(cfg.validate().is_err());
        cfg.allow_beyond_cap = true;
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn small_counts_match_the_reference_table() {
        let cfg = RunConfig {
            max_crossings: 5,
            ..RunConfig::default()
        };
        let result = enumerate_knots(&cfg).unwrap();
        let counts = result.catalog.counts_up_to(5);
        assert_eq!(counts, vec![1, 0, 0, 1, 1, 2]);
        let shadows: Vec<usize> = result.summary.iter().map(|r| r.shadows).collect();
        assert_eq!(shadows, vec![1, 0, 0, 1, 1, 2]);
    }
}
