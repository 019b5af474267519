//! Exhaustive generation of candidate subset pairs in finite groups.
//!
//! Streams all ordered pairs `(A, B)` with `|A| = |B| = s` for each `s` in
//! the requested range, `0 ∉ B`, and optionally `A ∩ (A+B) = ∅`, in
//! lexicographic order over `(s, A, B)` where subsets are combinations of
//! canonical element indices. Symmetric variants are emitted separately; an
//! opt-in normalization keeps only translation-class representatives of `A`.

use thiserror::Error;

use crate::group::{GroupElement, GroupSpec};
use crate::pair::SubsetPair;

/// Practical bound on enumerable group orders.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("pair generation requires a finite group; {0} has an infinite factor")]
    InfiniteGroup(String),
    #[error("group order {0} exceeds the enumeration bound {MAX_ORDER}")]
    OrderTooLarge(u64),
    #[error("invalid size range {min}..{max}: need 1 <= min <= max <= {limit} (group order - 1)")]
    BadSizes {
        min: usize,
        max: usize,
        limit: usize,
    },
}

/// A validated pair-generation request.
#[derive(Debug, Clone)]
pub struct PairQuery {
    spec: GroupSpec,
    size_min: usize,
    size_max: usize,
    require_weak: bool,
    normalize_translations: bool,
    limit: Option<u64>,
}

impl PairQuery {
    /// Validates sizes against the group order: `1 ≤ min ≤ max ≤ order - 1`.
    pub fn new(spec: GroupSpec, size_min: usize, size_max: usize) -> Result<Self, GenError> {
        let order = spec
            .order()
            .ok_or_else(|| GenError::InfiniteGroup(spec.to_string()))?;
        if order > MAX_ORDER {
            return Err(GenError::OrderTooLarge(order));
        }
        let limit = (order - 1) as usize;
        if size_min < 1 || size_min > size_max || size_max > limit {
            return Err(GenError::BadSizes {
                min: size_min,
                max: size_max,
                limit,
            });
        }
        Ok(PairQuery {
            spec,
            size_min,
            size_max,
            require_weak: true,
            normalize_translations: false,
            limit: None,
        })
    }

    /// Same validation, but clamps `size_max` to `order - 1` instead of
    /// rejecting, and returns `None` when the group is too small for
    /// `size_min`. Used by multi-group scans.
    pub fn clamped(spec: GroupSpec, size_min: usize, size_max: usize) -> Option<Self> {
        let order = spec.order()? as usize;
        let max = size_max.min(order - 1);
        if size_min > max {
            return None;
        }
        Self::new(spec, size_min, max).ok()
    }

    pub fn require_weak(mut self, yes: bool) -> Self {
        self.require_weak = yes;
        self
    }

    pub fn normalize_translations(mut self, yes: bool) -> Self {
        self.normalize_translations = yes;
        self
    }

    pub fn limit(mut self, limit: Option<u64>) -> Self {
        self.limit = limit;
        self
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.size_min, self.size_max)
    }

    /// Streams the matching pairs.
    pub fn pairs(&self) -> PairStream {
        PairStream {
            inner: IndexPairs::new(self),
            query: self.clone(),
            emitted: 0,
        }
    }

    /// Stream cardinality without materializing any [`SubsetPair`].
    pub fn count(&self) -> u64 {
        let mut inner = IndexPairs::new(self);
        let mut count = 0;
        while count < self.limit.unwrap_or(u64::MAX) && inner.advance() {
            count += 1;
        }
        count
    }
}

/// Streams all ordered pairs matching a query. See [`PairQuery::pairs`].
pub fn generate_pairs(query: &PairQuery) -> PairStream {
    query.pairs()
}

/// Counts the pairs a query would stream. See [`PairQuery::count`].
pub fn count_pairs(query: &PairQuery) -> u64 {
    query.count()
}

pub struct PairStream {
    inner: IndexPairs,
    query: PairQuery,
    emitted: u64,
}

impl Iterator for PairStream {
    type Item = SubsetPair;

    fn next(&mut self) -> Option<SubsetPair> {
        if self.emitted >= self.query.limit.unwrap_or(u64::MAX) {
            return None;
        }
        if !self.inner.advance() {
            return None;
        }
        self.emitted += 1;
        let a = self.inner.a_elements();
        let b = self.inner.b_elements();
        Some(
            SubsetPair::new(self.query.spec.clone(), a, b)
                .expect("generated pairs are valid by construction"),
        )
    }
}

/// The index-level state machine shared by streaming and counting.
struct IndexPairs {
    elems: Vec<GroupElement>,
    /// `add_table[i * n + j]` = index of `elems[i] + elems[j]`.
    add_table: Vec<u32>,
    n: usize,
    size_max: usize,
    require_weak: bool,
    normalize: bool,
    s: usize,
    a: Vec<u32>,
    b: Vec<u32>,
    in_a: Vec<bool>,
    need_a: bool,
    done: bool,
}

impl IndexPairs {
    fn new(query: &PairQuery) -> Self {
        let spec = &query.spec;
        let elems: Vec<GroupElement> = spec.elements().collect();
        let n = elems.len();
        let mut add_table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let sum = spec.add(&elems[i], &elems[j]).expect("same-rank elements");
                add_table[i * n + j] = spec.index_of(&sum).expect("sum stays in the group") as u32;
            }
        }
        IndexPairs {
            elems,
            add_table,
            n,
            size_max: query.size_max,
            require_weak: query.require_weak,
            normalize: query.normalize_translations,
            s: query.size_min,
            a: Vec::new(),
            b: Vec::new(),
            in_a: vec![false; n],
            need_a: true,
            done: false,
        }
    }

    fn a_elements(&self) -> Vec<GroupElement> {
        self.a
            .iter()
            .map(|&i| self.elems[i as usize].clone())
            .collect()
    }

    fn b_elements(&self) -> Vec<GroupElement> {
        self.b
            .iter()
            .map(|&i| self.elems[i as usize].clone())
            .collect()
    }

    /// Moves to the next pair in `(s, A, B)` order; false when exhausted.
    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        loop {
            if self.need_a {
                if !self.step_a() {
                    self.done = true;
                    return false;
                }
                if self.normalize && !self.a_is_translation_minimal() {
                    continue;
                }
                self.need_a = false;
                self.b.clear();
            }
            if !self.step_b() {
                self.need_a = true;
                continue;
            }
            if self.require_weak && !self.weak_ok() {
                continue;
            }
            return true;
        }
    }

    fn step_a(&mut self) -> bool {
        loop {
            if self.s > self.size_max {
                return false;
            }
            if self.a.is_empty() {
                if self.s <= self.n {
                    self.a = (0..self.s as u32).collect();
                    self.refresh_in_a();
                    return true;
                }
            } else if next_combination(&mut self.a, self.n as u32) {
                self.refresh_in_a();
                return true;
            }
            self.a.clear();
            self.s += 1;
        }
    }

    fn step_b(&mut self) -> bool {
        if self.b.is_empty() {
            // B avoids the neutral element, which is always index 0
            if self.s > self.n - 1 {
                return false;
            }
            self.b = (1..=self.s as u32).collect();
            true
        } else {
            next_combination(&mut self.b, self.n as u32)
        }
    }

    fn refresh_in_a(&mut self) {
        self.in_a.iter_mut().for_each(|x| *x = false);
        for &i in &self.a {
            self.in_a[i as usize] = true;
        }
    }

    fn weak_ok(&self) -> bool {
        for &i in &self.a {
            let row = i as usize * self.n;
            for &j in &self.b {
                if self.in_a[self.add_table[row + j as usize] as usize] {
                    return false;
                }
            }
        }
        true
    }

    /// True iff `A` sorts lexicographically at or below every translate
    /// `A + g`.
    fn a_is_translation_minimal(&self) -> bool {
        let mut translated = vec![0u32; self.a.len()];
        for g in 1..self.n {
            for (slot, &i) in translated.iter_mut().zip(&self.a) {
                *slot = self.add_table[i as usize * self.n + g];
            }
            translated.sort_unstable();
            if translated.as_slice() < self.a.as_slice() {
                return false;
            }
        }
        true
    }
}

/// Advances a strictly increasing combination over values `0..n`; the
/// minimum value of the leading slot is preserved by monotonicity.
fn next_combination(v: &mut [u32], n: u32) -> bool {
    let k = v.len();
    for i in (0..k).rev() {
        let max = n - (k - i) as u32;
        if v[i] < max {
            v[i] += 1;
            for j in i + 1..k {
                v[j] = v[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::MatchMode;

    fn query(n: i64, lo: usize, hi: usize) -> PairQuery {
        PairQuery::new(GroupSpec::cyclic(n).unwrap(), lo, hi).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (1..=k).fold(1, |acc, i| acc * (n - i + 1) / i)
    }

    #[test]
    fn worked_pair_appears_in_its_group() {
        let q = query(14, 4, 4);
        let target = "14 A={1,3,5,7} B={1,3,7,9}";
        assert!(
            q.pairs().any(|p| p.describe() == target),
            "the worked Z/14 pair must be among size-4 weak pairs"
        );
    }

    #[test]
    fn z4_weak_pair_is_generated() {
        let q = query(4, 2, 2);
        let found: Vec<String> = q.pairs().map(|p| p.describe()).collect();
        assert!(found.contains(&"4 A={0,2} B={1,3}".to_string()));
        // every emitted pair passes the weak condition
        for p in q.pairs() {
            assert!(p.weak_condition().0);
            assert_eq!(p.count_matchings(), 2, "weak pairs have s! matchings");
        }
    }

    #[test]
    fn unrestricted_count_matches_binomials() {
        for n in [5u64, 7, 8] {
            for s in 1..=3usize {
                let q = query(n as i64, s, s).require_weak(false);
                assert_eq!(
                    q.count(),
                    binom(n, s as u64) * binom(n - 1, s as u64),
                    "n={n} s={s}"
                );
            }
        }
    }

    #[test]
    fn count_equals_stream_length() {
        for n in 4..=10i64 {
            for s in 1..=3usize {
                if s + 1 > n as usize {
                    continue;
                }
                let q = query(n, s, s);
                assert_eq!(q.count(), q.pairs().count() as u64, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn stream_is_deterministic_and_duplicate_free() {
        let q = query(8, 2, 3);
        let first: Vec<String> = q.pairs().map(|p| p.describe()).collect();
        let second: Vec<String> = q.pairs().map(|p| p.describe()).collect();
        assert_eq!(first, second);
        let mut dedup = first.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), first.len());
    }

    #[test]
    fn limit_truncates_the_stream() {
        let q = query(14, 4, 4).limit(Some(5));
        assert_eq!(q.pairs().count(), 5);
        assert_eq!(q.count(), 5);
    }

    #[test]
    fn empty_when_min_exceeds_available_sizes() {
        assert!(PairQuery::new(GroupSpec::cyclic(4).unwrap(), 3, 2).is_err());
        assert!(matches!(
            PairQuery::new(GroupSpec::cyclic(4).unwrap(), 1, 9),
            Err(GenError::BadSizes { limit: 3, .. })
        ));
        assert!(PairQuery::clamped(GroupSpec::cyclic(4).unwrap(), 1, 9).is_some());
        assert!(PairQuery::clamped(GroupSpec::cyclic(3).unwrap(), 4, 6).is_none());
    }

    #[test]
    fn infinite_groups_are_unsupported() {
        assert_eq!(
            PairQuery::new(GroupSpec::cyclic(0).unwrap(), 1, 1).unwrap_err(),
            GenError::InfiniteGroup("0".into())
        );
    }

    #[test]
    fn normalization_keeps_translation_representatives() {
        let full = query(7, 2, 2);
        let norm = query(7, 2, 2).normalize_translations(true);
        let full_count = full.count();
        let norm_count = norm.count();
        assert!(norm_count < full_count);
        // every normalized A starts at the canonical representative; check
        // that each surviving A is lex-minimal among its translates
        let g = GroupSpec::cyclic(7).unwrap();
        for p in norm.pairs() {
            let a_idx: Vec<u64> = p.a().iter().map(|e| g.index_of(e).unwrap()).collect();
            for t in 1..7u64 {
                let mut shifted: Vec<u64> = a_idx.iter().map(|&i| (i + t) % 7).collect();
                shifted.sort_unstable();
                assert!(shifted.as_slice() >= a_idx.as_slice());
            }
        }
    }

    #[test]
    fn works_on_product_groups() {
        let spec: GroupSpec = "2x4".parse().unwrap();
        let q = PairQuery::new(spec, 2, 2).unwrap();
        for p in q.pairs().take(20) {
            assert!(p.weak_condition().0);
            assert_eq!(
                p.matchings(MatchMode::Strict).count() as u64,
                p.count_matchings()
            );
        }
        assert!(q.count() > 0);
    }
}
