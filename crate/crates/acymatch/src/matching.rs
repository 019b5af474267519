//! Matchings of a subset pair: pruned lexicographic enumeration,
//! multiplicity functions, supports and acyclicity sequences.
//!
//! A matching assigns `A[i] → B[perm[i]]`. Strict mode yields exactly the
//! bijections avoiding forbidden cells (`a + f(a) ∉ A`); bijection-compat
//! mode yields all `n!` permutations and exists only to reproduce published
//! figures computed without the validity filter. Stream order is
//! lexicographic on `perm` in both modes.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::group::GroupElement;
use crate::pair::SubsetPair;

/// Default cap on materialized matchings (10!). Factorial growth must fail
/// loudly instead of exhausting memory; counting and streaming analyses are
/// not subject to it.
pub const DEFAULT_CAP: u64 = 3_628_800;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchError {
    #[error("{candidates} candidate matchings exceed the materialization cap of {cap} (n = {n})")]
    CapExceeded { candidates: u64, cap: u64, n: usize },
}

/// Enumeration semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    /// Only bijections with `a + f(a) ∉ A` for every `a`.
    Strict,
    /// All bijections, ignoring the validity condition.
    BijectionCompat,
}

impl fmt::Display for MatchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatchMode::Strict => "strict",
            MatchMode::BijectionCompat => "bijection-compat",
        })
    }
}

/// A bijection `A → B` encoded as a permutation of B-indices:
/// `f(A[i]) = B[perm[i]]`. Ordering is lexicographic on `perm`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    perm: Vec<u32>,
}

impl Matching {
    pub fn from_perm(perm: Vec<u32>) -> Self {
        Matching { perm }
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }
}

/// The multiplicity function `m_f`: for each group element `x`, the number
/// of `a ∈ A` with `a + f(a) = x`. Only positive entries are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityMap {
    entries: BTreeMap<GroupElement, u32>,
}

impl MultiplicityMap {
    pub fn get(&self, x: &GroupElement) -> u32 {
        self.entries.get(x).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, u32)> {
        self.entries.iter().map(|(e, &c)| (e, c))
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn total(&self) -> u32 {
        self.entries.values().sum()
    }
}

/// The multiplicities of a matching over its support, sorted non-increasing.
/// A partition of `n`; ordering is lexicographic, which is total here since
/// no partition of `n` is a proper prefix of another.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AcyclicitySeq(Vec<u32>);

impl AcyclicitySeq {
    pub fn terms(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&t| t == 1)
    }
}

impl fmt::Display for AcyclicitySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self
            .0
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(",");
        f.write_str(&text)
    }
}

pub(crate) fn factorial_checked(n: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for k in 2..=n as u64 {
        acc = acc.checked_mul(k)?;
    }
    Some(acc)
}

impl SubsetPair {
    /// Streaming enumeration in lexicographic `perm` order. Strict mode
    /// prunes on the forbidden mask during backtracking.
    pub fn matchings(&self, mode: MatchMode) -> MatchingIter<'_> {
        MatchingIter::new(self, mode)
    }

    /// Materializes the full enumeration, refusing when `n!` exceeds `cap`.
    pub fn collect_matchings(
        &self,
        mode: MatchMode,
        cap: u64,
    ) -> Result<Vec<Matching>, MatchError> {
        self.check_cap(cap)?;
        Ok(self.matchings(mode).collect())
    }

    /// Refuses with [`MatchError::CapExceeded`] when `n!` (the candidate
    /// count, an upper bound in strict mode) exceeds `cap`.
    pub fn check_cap(&self, cap: u64) -> Result<(), MatchError> {
        let n = self.n();
        let candidates = factorial_checked(n).unwrap_or(u64::MAX);
        if candidates > cap {
            return Err(MatchError::CapExceeded { candidates, cap, n });
        }
        Ok(())
    }

    /// Number of strict matchings, counted by backtracking without
    /// materialization. Not subject to the cap.
    pub fn count_matchings(&self) -> u64 {
        let n = self.n();
        let mut used = vec![false; n];
        self.count_rec(0, &mut used)
    }

    fn count_rec(&self, row: usize, used: &mut [bool]) -> u64 {
        let n = self.n();
        if row == n {
            return 1;
        }
        let mut total = 0;
        for j in 0..n {
            if !used[j] && !self.is_forbidden(row, j) {
                used[j] = true;
                total += self.count_rec(row + 1, used);
                used[j] = false;
            }
        }
        total
    }

    /// True iff the matching avoids every forbidden cell.
    pub fn is_strict_valid(&self, m: &Matching) -> bool {
        m.perm()
            .iter()
            .enumerate()
            .all(|(i, &j)| !self.is_forbidden(i, j as usize))
    }

    /// Per-sum-id counts `(id, count)` sorted by id. Because ids are
    /// assigned in canonical element order this doubles as the multiplicity
    /// fingerprint.
    pub(crate) fn fingerprint_ids(&self, m: &Matching) -> Vec<(u32, u32)> {
        let mut counts: Vec<(u32, u32)> = Vec::with_capacity(m.n());
        for (i, &j) in m.perm().iter().enumerate() {
            let id = self.sum_id(i, j as usize);
            match counts.iter_mut().find(|(k, _)| *k == id) {
                Some((_, c)) => *c += 1,
                None => counts.push((id, 1)),
            }
        }
        counts.sort_unstable();
        counts
    }

    /// The multiplicity function of a matching.
    pub fn multiplicity(&self, m: &Matching) -> MultiplicityMap {
        let entries = self
            .fingerprint_ids(m)
            .into_iter()
            .map(|(id, c)| (self.sum_elements()[id as usize].clone(), c))
            .collect();
        MultiplicityMap { entries }
    }

    /// `supp(f)`: the elements where the multiplicity is positive, in
    /// canonical order.
    pub fn support(&self, m: &Matching) -> Vec<GroupElement> {
        self.fingerprint_ids(m)
            .into_iter()
            .map(|(id, _)| self.sum_elements()[id as usize].clone())
            .collect()
    }

    /// The acyclicity sequence: multiplicity values over the support, sorted
    /// non-increasing. Its length is the support size and its sum is `n`.
    pub fn acyclicity_sequence(&self, m: &Matching) -> AcyclicitySeq {
        let mut terms: Vec<u32> = self
            .fingerprint_ids(m)
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        terms.sort_unstable_by(|a, b| b.cmp(a));
        AcyclicitySeq(terms)
    }

    /// Rule list `a->f(a)` in A-order, e.g. `1->7;3->9;5->3;7->1`.
    pub fn rule_text(&self, m: &Matching) -> String {
        let spec = self.spec();
        m.perm()
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                format!(
                    "{}->{}",
                    spec.element_display(&self.a()[i]),
                    spec.element_display(&self.b()[j as usize])
                )
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parses a rule list back into a matching of this pair. Used by
    /// fixtures and tests to address specific matchings.
    pub fn matching_from_rules(&self, rules: &str) -> Option<Matching> {
        let mut perm = vec![u32::MAX; self.n()];
        let mut used = vec![false; self.n()];
        for part in rules.split(';') {
            let (lhs, rhs) = part.split_once("->")?;
            let a = self.spec().parse_element(lhs.trim()).ok()?;
            let b = self.spec().parse_element(rhs.trim()).ok()?;
            let i = self.a().binary_search(&a).ok()?;
            let j = self.b().binary_search(&b).ok()?;
            if perm[i] != u32::MAX || used[j] {
                return None;
            }
            perm[i] = j as u32;
            used[j] = true;
        }
        if perm.contains(&u32::MAX) {
            return None;
        }
        Some(Matching::from_perm(perm))
    }
}

/// Resumable backtracking enumerator. Yields matchings in strictly
/// increasing lexicographic order without duplicates.
pub struct MatchingIter<'p> {
    pair: &'p SubsetPair,
    strict: bool,
    cols: Vec<u32>,
    used: Vec<bool>,
    next_col: usize,
    exhausted: bool,
}

impl<'p> MatchingIter<'p> {
    fn new(pair: &'p SubsetPair, mode: MatchMode) -> Self {
        MatchingIter {
            pair,
            strict: mode == MatchMode::Strict,
            cols: Vec::with_capacity(pair.n()),
            used: vec![false; pair.n()],
            next_col: 0,
            exhausted: false,
        }
    }

    fn allowed(&self, row: usize, col: usize) -> bool {
        !self.used[col] && !(self.strict && self.pair.is_forbidden(row, col))
    }

    fn retreat(&mut self) -> bool {
        match self.cols.pop() {
            Some(j) => {
                self.used[j as usize] = false;
                self.next_col = j as usize + 1;
                true
            }
            None => {
                self.exhausted = true;
                false
            }
        }
    }
}

impl Iterator for MatchingIter<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.exhausted {
            return None;
        }
        let n = self.pair.n();
        loop {
            let row = self.cols.len();
            if row == n {
                let found = Matching::from_perm(self.cols.clone());
                self.retreat();
                return Some(found);
            }
            match (self.next_col..n).find(|&j| self.allowed(row, j)) {
                Some(j) => {
                    self.cols.push(j as u32);
                    self.used[j] = true;
                    self.next_col = 0;
                }
                None => {
                    if !self.retreat() {
                        return None;
                    }
                }
            }
        }
    }
}
