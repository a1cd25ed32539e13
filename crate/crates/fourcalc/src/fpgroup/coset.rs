//! Todd–Coxeter coset enumeration.
//!
//! Deterministic enumeration of the cosets of a finitely generated subgroup
//! of a finitely presented group. The default strategy is HLT with
//! lookahead: relator-driven scanning that fills gaps eagerly, falling back
//! to a deduction-free lookahead pass (plus table compression) when the
//! live-coset bound is hit. A Felsch strategy (definition-minimal, with a
//! deduction stack over relator rotations) is available as an option.
//!
//! Completion is always validated against the final table before an index
//! is reported, so `CompletedIndex(n)` is a checked certificate.

use super::{FpGroupError, Presentation, Word};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};

const UNDEF: u32 = u32::MAX;

/// Resource limits for one enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBounds {
    /// Maximum number of simultaneously live cosets.
    pub max_cosets: usize,
    /// Maximum number of coset definitions over the whole run.
    pub max_definitions: usize,
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds {
            max_cosets: 1_000_000,
            max_definitions: 10_000_000,
        }
    }
}

/// Enumeration strategy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Relator-driven HLT with a lookahead pass when the coset bound is hit.
    #[default]
    HltLookahead,
    /// Definition-minimal Felsch with a deduction stack.
    Felsch,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::HltLookahead => write!(f, "hlt"),
            Strategy::Felsch => write!(f, "felsch"),
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hlt" | "hlt-lookahead" => Ok(Strategy::HltLookahead),
            "felsch" => Ok(Strategy::Felsch),
            other => Err(format!("unknown strategy '{other}'")),
        }
    }
}

/// Terminal state of an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompletionVerdict {
    /// The coset table closed; the subgroup has exactly this index.
    CompletedIndex(usize),
    /// A resource bound was reached before the table closed.
    BoundExceeded,
}

/// Outcome of an enumeration together with resource accounting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationOutcome {
    pub verdict: CompletionVerdict,
    /// Total cosets ever defined (including the subgroup coset).
    pub cosets_defined: usize,
    /// Peak number of simultaneously live cosets.
    pub max_live_cosets: usize,
}

impl EnumerationOutcome {
    pub fn completed_index(&self) -> Option<usize> {
        match self.verdict {
            CompletionVerdict::CompletedIndex(n) => Some(n),
            CompletionVerdict::BoundExceeded => None,
        }
    }
}

enum Stop {
    CosetLimit,
    DefinitionLimit,
}

struct CosetTable {
    ncols: usize,
    rows: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    defined: usize,
    max_live: usize,
    bounds: EnumerationBounds,
    queue: VecDeque<u32>,
    deductions: Vec<(u32, u32)>,
    record_deductions: bool,
}

#[inline]
fn inv(col: u32) -> u32 {
    col ^ 1
}

/// Converts a word to column indices: generator `g` ↦ `2g`, inverse ↦ `2g+1`.
fn word_cols(w: &Word) -> Vec<u32> {
    w.letters()
        .map(|(g, s)| (2 * g as u32) + u32::from(s < 0))
        .collect()
}

impl CosetTable {
    fn new(ncols: usize, bounds: EnumerationBounds) -> Self {
        let mut t = CosetTable {
            ncols,
            rows: Vec::new(),
            parent: Vec::new(),
            live: 0,
            defined: 0,
            max_live: 0,
            bounds,
            queue: VecDeque::new(),
            deductions: Vec::new(),
            record_deductions: false,
        };
        // Coset 0 is the subgroup itself.
        t.alloc();
        t
    }

    fn alloc(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.rows.extend(std::iter::repeat(UNDEF).take(self.ncols));
        self.live += 1;
        self.defined += 1;
        self.max_live = self.max_live.max(self.live);
        id
    }

    fn nalloc(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, a: u32, x: u32) -> u32 {
        self.rows[a as usize * self.ncols + x as usize]
    }

    #[inline]
    fn set_entry(&mut self, a: u32, x: u32, v: u32) {
        self.rows[a as usize * self.ncols + x as usize] = v;
        if self.record_deductions && v != UNDEF {
            self.deductions.push((a, x));
        }
    }

    /// Both directions of a new table edge.
    fn set_pair(&mut self, a: u32, x: u32, b: u32) {
        self.set_entry(a, x, b);
        self.set_entry(b, inv(x), a);
    }

    #[inline]
    fn is_root(&self, a: u32) -> bool {
        self.parent[a as usize] == a
    }

    fn rep(&mut self, start: u32) -> u32 {
        let mut r = start;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = start;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn define(&mut self, a: u32, x: u32) -> Result<u32, Stop> {
        if self.defined >= self.bounds.max_definitions {
            return Err(Stop::DefinitionLimit);
        }
        if self.live >= self.bounds.max_cosets {
            return Err(Stop::CosetLimit);
        }
        let b = self.alloc();
        self.set_pair(a, x, b);
        Ok(b)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let ra = self.rep(a);
        let rb = self.rep(b);
        if ra != rb {
            let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[drop as usize] = keep;
            self.live -= 1;
            self.queue.push_back(drop);
        }
    }

    /// Standard coincidence processing: merges two cosets and transfers the
    /// table rows of every coset that dies in the cascade.
    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(dead) = self.queue.pop_front() {
            for x in 0..self.ncols as u32 {
                let d = self.get(dead, x);
                if d == UNDEF {
                    continue;
                }
                if self.get(d, inv(x)) == dead {
                    self.set_entry(d, inv(x), UNDEF);
                }
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != UNDEF {
                    self.merge(nu, mx);
                } else {
                    let ni = self.get(nu, inv(x));
                    if ni != UNDEF {
                        self.merge(mu, ni);
                    } else {
                        self.set_pair(mu, x, nu);
                    }
                }
            }
        }
    }

    /// Scans relator `w` from `a`, filling undefined transitions (HLT).
    fn scan_and_fill(&mut self, a: u32, w: &[u32]) -> Result<(), Stop> {
        debug_assert!(!w.is_empty());
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        let mut f = a;
        let mut b = a;
        loop {
            while i <= j {
                let d = self.get(f, w[i as usize]);
                if d == UNDEF {
                    break;
                }
                debug_assert!(self.is_root(d), "scan walked into a dead coset");
                f = d;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let d = self.get(b, inv(w[j as usize]));
                if d == UNDEF {
                    break;
                }
                debug_assert!(self.is_root(d), "scan walked into a dead coset");
                b = d;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i {
                self.set_pair(f, w[i as usize], b);
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    /// Scan without filling; used by lookahead and by Felsch deduction
    /// processing. Completes coincidences and single-gap deductions only.
    fn scan(&mut self, a: u32, w: &[u32]) {
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        let mut f = a;
        let mut b = a;
        while i <= j {
            let d = self.get(f, w[i as usize]);
            if d == UNDEF {
                break;
            }
            f = d;
            i += 1;
        }
        if i > j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        while j >= i {
            let d = self.get(b, inv(w[j as usize]));
            if d == UNDEF {
                break;
            }
            b = d;
            j -= 1;
        }
        if j < i {
            self.coincidence(f, b);
        } else if j == i {
            self.set_pair(f, w[i as usize], b);
        }
    }

    /// Deduction-free pass over all live cosets and all relators.
    fn lookahead(&mut self, relators: &[Vec<u32>]) {
        let mut a = 0u32;
        while (a as usize) < self.nalloc() {
            if self.is_root(a) {
                for w in relators {
                    self.scan(a, w);
                    if !self.is_root(a) {
                        break;
                    }
                }
            }
            a += 1;
        }
    }

    /// Renumbers live cosets contiguously, dropping dead rows. Returns the
    /// old-to-new map (dead cosets map to their representative's new id).
    fn compress(&mut self) -> Vec<u32> {
        let n = self.nalloc();
        let mut map = vec![UNDEF; n];
        let mut next = 0u32;
        for old in 0..n as u32 {
            if self.is_root(old) {
                map[old as usize] = next;
                next += 1;
            }
        }
        for old in 0..n as u32 {
            if !self.is_root(old) {
                let r = self.rep(old);
                map[old as usize] = map[r as usize];
            }
        }
        let mut rows = vec![UNDEF; next as usize * self.ncols];
        for old in 0..n as u32 {
            if !self.is_root(old) {
                continue;
            }
            let new = map[old as usize];
            for x in 0..self.ncols {
                let v = self.rows[old as usize * self.ncols + x];
                if v != UNDEF {
                    let rv = self.rep(v);
                    rows[new as usize * self.ncols + x] = map[rv as usize];
                }
            }
        }
        self.rows = rows;
        self.parent = (0..next).collect();
        self.live = next as usize;
        self.deductions.clear();
        map
    }

    fn row_complete(&self, a: u32) -> bool {
        (0..self.ncols as u32).all(|x| self.get(a, x) != UNDEF)
    }

    /// Forward-walks `w` from `a`; `None` if a transition is missing.
    fn trace(&self, a: u32, w: &[u32]) -> Option<u32> {
        let mut c = a;
        for &x in w {
            let d = self.get(c, x);
            if d == UNDEF {
                return None;
            }
            c = d;
        }
        Some(c)
    }
}

/// Enumerates cosets of `⟨subgroup_gens⟩` in the presented group with the
/// default HLT-with-lookahead strategy.
pub fn coset_enumerate(
    p: &Presentation,
    subgroup_gens: &[Word],
    bounds: EnumerationBounds,
) -> Result<EnumerationOutcome, FpGroupError> {
    coset_enumerate_with(p, subgroup_gens, bounds, Strategy::default())
}

/// Enumerates cosets with an explicit strategy.
///
/// On `CompletedIndex(n)`, `n` is exactly the index of the subgroup: the
/// final table is checked to be closed under all relators and subgroup
/// generators before the verdict is issued. `BoundExceeded` is an ordinary
/// value, not an error. The run is fully deterministic for fixed inputs.
pub fn coset_enumerate_with(
    p: &Presentation,
    subgroup_gens: &[Word],
    bounds: EnumerationBounds,
    strategy: Strategy,
) -> Result<EnumerationOutcome, FpGroupError> {
    if bounds.max_cosets == 0 || bounds.max_definitions == 0 {
        return Err(FpGroupError::NonPositiveBounds);
    }
    for w in subgroup_gens {
        if let Some(g) = w.max_generator() {
            if g >= p.gen_count() {
                return Err(FpGroupError::GeneratorOutOfRange {
                    index: g,
                    count: p.gen_count(),
                });
            }
        }
    }
    if p.gen_count() == 0 {
        return Ok(EnumerationOutcome {
            verdict: CompletionVerdict::CompletedIndex(1),
            cosets_defined: 1,
            max_live_cosets: 1,
        });
    }

    let relators: Vec<Vec<u32>> = p
        .relators()
        .iter()
        .filter(|r| !r.is_empty())
        .map(word_cols)
        .collect();
    let subgroup: Vec<Vec<u32>> = subgroup_gens
        .iter()
        .map(|w| w.free_reduce())
        .filter(|w| !w.is_empty())
        .map(|w| word_cols(&w))
        .collect();

    let ncols = 2 * p.gen_count();
    let mut t = CosetTable::new(ncols, bounds);

    let completed = match strategy {
        Strategy::HltLookahead => run_hlt(&mut t, &relators, &subgroup),
        Strategy::Felsch => run_felsch(&mut t, &relators, &subgroup),
    };

    let outcome = |t: &CosetTable, verdict| EnumerationOutcome {
        verdict,
        cosets_defined: t.defined,
        max_live_cosets: t.max_live,
    };

    if !completed {
        return Ok(outcome(&t, CompletionVerdict::BoundExceeded));
    }

    // Certify the closed table before reporting an index.
    t.compress();
    let index = t.live;
    for a in 0..index as u32 {
        if !t.row_complete(a) {
            return Err(FpGroupError::Internal(format!(
                "completed table has an undefined entry at coset {a}"
            )));
        }
        for w in &relators {
            if t.trace(a, w) != Some(a) {
                return Err(FpGroupError::Internal(format!(
                    "completed table does not close a relator at coset {a}"
                )));
            }
        }
    }
    for w in &subgroup {
        if t.trace(0, w) != Some(0) {
            return Err(FpGroupError::Internal(
                "completed table does not fix the subgroup coset".to_string(),
            ));
        }
    }

    Ok(outcome(&t, CompletionVerdict::CompletedIndex(index)))
}

/// HLT main loop. Returns true when the table closed.
fn run_hlt(t: &mut CosetTable, relators: &[Vec<u32>], subgroup: &[Vec<u32>]) -> bool {
    for w in subgroup {
        match t.scan_and_fill(0, w) {
            Ok(()) => {}
            Err(Stop::DefinitionLimit) => return false,
            Err(Stop::CosetLimit) => {
                if !relieve(t, relators) {
                    return false;
                }
                if t.scan_and_fill(0, w).is_err() {
                    return false;
                }
            }
        }
    }

    let mut alpha: u32 = 0;
    while (alpha as usize) < t.nalloc() {
        if !t.is_root(alpha) {
            alpha += 1;
            continue;
        }
        match process_coset(t, alpha, relators) {
            Ok(()) => alpha += 1,
            Err(Stop::DefinitionLimit) => return false,
            Err(Stop::CosetLimit) => {
                let before = t.live;
                t.lookahead(relators);
                let map = t.compress();
                if t.live >= before.min(t.bounds.max_cosets) {
                    return false;
                }
                // Resume at the renumbered current coset.
                alpha = map[alpha as usize];
            }
        }
    }
    true
}

/// Scans all relators at one coset, then fills its remaining entries.
fn process_coset(t: &mut CosetTable, alpha: u32, relators: &[Vec<u32>]) -> Result<(), Stop> {
    for w in relators {
        t.scan_and_fill(alpha, w)?;
        if !t.is_root(alpha) {
            return Ok(());
        }
    }
    for x in 0..t.ncols as u32 {
        if t.get(alpha, x) == UNDEF {
            t.define(alpha, x)?;
        }
        if !t.is_root(alpha) {
            return Ok(());
        }
    }
    Ok(())
}

/// Lookahead plus compression; true if space was actually reclaimed.
fn relieve(t: &mut CosetTable, relators: &[Vec<u32>]) -> bool {
    let before = t.live;
    t.lookahead(relators);
    t.compress();
    t.live < before
}

/// Felsch main loop. Returns true when the table closed.
fn run_felsch(t: &mut CosetTable, relators: &[Vec<u32>], subgroup: &[Vec<u32>]) -> bool {
    t.record_deductions = true;
    // Rotations of every relator and its inverse, grouped by first column.
    let mut by_initial: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); t.ncols];
    for w in relators {
        for base in [w.clone(), w.iter().rev().map(|&x| inv(x)).collect()] {
            for k in 0..base.len() {
                let mut rot = base[k..].to_vec();
                rot.extend_from_slice(&base[..k]);
                let first = rot[0] as usize;
                by_initial[first].insert(rot);
            }
        }
    }
    let by_initial: Vec<Vec<Vec<u32>>> = by_initial
        .into_iter()
        .map(|s| s.into_iter().collect())
        .collect();

    for w in subgroup {
        if t.scan_and_fill(0, w).is_err() {
            return false;
        }
    }
    loop {
        while let Some((a, x)) = t.deductions.pop() {
            let a = t.rep(a);
            for w in &by_initial[x as usize] {
                t.scan(a, w);
                if !t.is_root(a) {
                    break;
                }
            }
        }
        // Find the first hole in the table.
        let mut hole = None;
        'outer: for a in 0..t.nalloc() as u32 {
            if !t.is_root(a) {
                continue;
            }
            for x in 0..t.ncols as u32 {
                if t.get(a, x) == UNDEF {
                    hole = Some((a, x));
                    break 'outer;
                }
            }
        }
        match hole {
            None => return true,
            Some((a, x)) => {
                if t.define(a, x).is_err() {
                    return false;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    fn index_of(p: &Presentation, subgroup: &[Word], strategy: Strategy) -> usize {
        let out =
            coset_enumerate_with(p, subgroup, EnumerationBounds::default(), strategy).unwrap();
        out.completed_index().expect("enumeration should complete")
    }

    #[test]
    fn cyclic_groups_have_their_order() {
        for k in 1..=50 {
            let p = parse(&format!("gens: a; rels: a^{k}"));
            for strategy in [Strategy::HltLookahead, Strategy::Felsch] {
                assert_eq!(index_of(&p, &[], strategy), k, "k={k} {strategy}");
            }
        }
    }

    #[test]
    fn a4_relative_to_order_two_subgroup_has_index_six() {
        let p = parse("gens: a b; rels: a^2 b^3 (a*b)^3");
        let sub = vec![p.gen_word("a").unwrap()];
        assert_eq!(index_of(&p, &sub, Strategy::HltLookahead), 6);
        assert_eq!(index_of(&p, &sub, Strategy::Felsch), 6);
    }

    #[test]
    fn accounting_invariants_hold() {
        let p = parse("gens: a b; rels: a^2 b^3 (a*b)^3");
        let out = coset_enumerate(&p, &[], EnumerationBounds::default()).unwrap();
        let index = out.completed_index().unwrap();
        assert_eq!(index, 12);
        assert!(out.cosets_defined >= out.max_live_cosets);
        assert!(out.max_live_cosets >= index);
    }

    #[test]
    fn whole_group_subgroup_gives_index_one() {
        let p = parse("gens: a b; rels: a^3 b^2 (a*b)^2");
        let sub = vec![p.gen_word("a").unwrap(), p.gen_word("b").unwrap()];
        assert_eq!(index_of(&p, &sub, Strategy::HltLookahead), 1);
    }

    #[test]
    fn free_group_exceeds_tight_bounds() {
        let p = parse("gens: a b; rels:");
        let out = coset_enumerate(
            &p,
            &[],
            EnumerationBounds {
                max_cosets: 100,
                max_definitions: 100,
            },
        )
        .unwrap();
        assert_eq!(out.verdict, CompletionVerdict::BoundExceeded);
    }

    #[test]
    fn infinite_group_hits_coset_limit_with_lookahead() {
        // Z × Z is infinite; the enumerator must terminate via its bounds.
        let p = parse("gens: a b; rels: [a,b]");
        let out = coset_enumerate(
            &p,
            &[],
            EnumerationBounds {
                max_cosets: 200,
                max_definitions: 100_000,
            },
        )
        .unwrap();
        assert_eq!(out.verdict, CompletionVerdict::BoundExceeded);
    }

    #[test]
    fn bounds_must_be_positive() {
        let p = parse("gens: a; rels: a^2");
        assert!(matches!(
            coset_enumerate(
                &p,
                &[],
                EnumerationBounds {
                    max_cosets: 0,
                    max_definitions: 1
                }
            ),
            Err(FpGroupError::NonPositiveBounds)
        ));
    }

    #[test]
    fn malformed_subgroup_generators_are_input_errors() {
        let p = parse("gens: a; rels: a^2");
        let bad = Word::generator(3);
        assert!(matches!(
            coset_enumerate(&p, &[bad], EnumerationBounds::default()),
            Err(FpGroupError::GeneratorOutOfRange { .. })
        ));
    }

    #[test]
    fn no_generators_means_trivial_group() {
        let p = Presentation::new(Vec::<String>::new(), vec![]).unwrap();
        let out = coset_enumerate(&p, &[], EnumerationBounds::default()).unwrap();
        assert_eq!(out.verdict, CompletionVerdict::CompletedIndex(1));
    }

    #[test]
    fn relator_order_does_not_change_the_index() {
        let p = parse("gens: r s; rels: r^5 s^2 (r*s)^2");
        let base = index_of(&p, &[], Strategy::HltLookahead);
        assert_eq!(base, 10);
        for order in [[2usize, 1, 0], [1, 2, 0], [2, 0, 1]] {
            let q = p.with_relator_order(&order).unwrap();
            assert_eq!(index_of(&q, &[], Strategy::HltLookahead), base);
            assert_eq!(index_of(&q, &[], Strategy::Felsch), base);
        }
    }
}
