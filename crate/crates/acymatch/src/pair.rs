//! Validated subset pairs `(A, B)` with precomputed sum table and
//! forbidden-assignment mask.
//!
//! `forbidden[i][j]` records whether `A[i] + B[j] ∈ A`, i.e. whether the
//! assignment `A[i] → B[j]` would violate the matching condition. All sums
//! are interned once: downstream multiplicity computations work on small
//! integer ids instead of group elements.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::group::{GroupElement, GroupError, GroupSpec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairError {
    #[error("|A| = {a} but |B| = {b}; the subsets must have equal size")]
    SizeMismatch { a: usize, b: usize },
    #[error("subsets must be non-empty")]
    Empty,
    #[error("duplicate element {0} in A")]
    DuplicateInA(String),
    #[error("duplicate element {0} in B")]
    DuplicateInB(String),
    #[error("B contains the neutral element")]
    ZeroInB,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// One witness that the weak condition fails: `a + b ∈ A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakViolation {
    pub a: GroupElement,
    pub b: GroupElement,
    pub sum: GroupElement,
}

/// A validated pair of equal-size subsets with `0 ∉ B`, plus the cached
/// `n × n` sum table and forbidden mask.
#[derive(Debug, Clone)]
pub struct SubsetPair {
    spec: GroupSpec,
    a: Vec<GroupElement>,
    b: Vec<GroupElement>,
    /// Distinct values of `A + B` in canonical order; `sums` indexes into it.
    sum_elems: Vec<GroupElement>,
    /// Row-major `n * n`: id of `a[i] + b[j]` within `sum_elems`.
    sums: Vec<u32>,
    forbidden: Vec<bool>,
    forbidden_count: usize,
}

impl SubsetPair {
    /// Validates and builds a pair. Elements are canonicalized and sorted
    /// into canonical order; duplicates (after canonicalization), a size
    /// mismatch, empty sets and `0 ∈ B` are each rejected with a distinct
    /// error.
    pub fn new(
        spec: GroupSpec,
        a: Vec<GroupElement>,
        b: Vec<GroupElement>,
    ) -> Result<Self, PairError> {
        if a.len() != b.len() {
            return Err(PairError::SizeMismatch {
                a: a.len(),
                b: b.len(),
            });
        }
        if a.is_empty() {
            return Err(PairError::Empty);
        }
        let mut a: Vec<GroupElement> = a
            .into_iter()
            .map(|e| spec.element(e.coords().to_vec()))
            .collect::<Result<_, _>>()?;
        let mut b: Vec<GroupElement> = b
            .into_iter()
            .map(|e| spec.element(e.coords().to_vec()))
            .collect::<Result<_, _>>()?;
        a.sort();
        b.sort();
        if let Some(w) = a.windows(2).find(|w| w[0] == w[1]) {
            return Err(PairError::DuplicateInA(spec.element_text(&w[0])));
        }
        if let Some(w) = b.windows(2).find(|w| w[0] == w[1]) {
            return Err(PairError::DuplicateInB(spec.element_text(&w[0])));
        }
        if b.binary_search(&spec.zero()).is_ok() {
            return Err(PairError::ZeroInB);
        }

        let n = a.len();
        let mut raw = Vec::with_capacity(n * n);
        for x in &a {
            for y in &b {
                raw.push(spec.add(x, y)?);
            }
        }
        let mut interner: BTreeMap<GroupElement, u32> = BTreeMap::new();
        for s in &raw {
            interner.entry(s.clone()).or_insert(0);
        }
        let sum_elems: Vec<GroupElement> = interner.keys().cloned().collect();
        for (id, (_, slot)) in interner.iter_mut().enumerate() {
            *slot = id as u32;
        }
        let sums: Vec<u32> = raw.iter().map(|s| interner[s]).collect();
        let forbidden: Vec<bool> = raw.iter().map(|s| a.binary_search(s).is_ok()).collect();
        let forbidden_count = forbidden.iter().filter(|&&f| f).count();

        Ok(SubsetPair {
            spec,
            a,
            b,
            sum_elems,
            sums,
            forbidden,
            forbidden_count,
        })
    }

    /// Convenience constructor from text inputs.
    pub fn parse(spec: &GroupSpec, a: &str, b: &str) -> Result<Self, PairError> {
        let a = spec.parse_elements(a)?;
        let b = spec.parse_elements(b)?;
        Self::new(spec.clone(), a, b)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn a(&self) -> &[GroupElement] {
        &self.a
    }

    pub fn b(&self) -> &[GroupElement] {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn is_forbidden(&self, i: usize, j: usize) -> bool {
        self.forbidden[i * self.a.len() + j]
    }

    pub fn forbidden_count(&self) -> usize {
        self.forbidden_count
    }

    /// Distinct values of the sumset `A + B`, canonical order.
    pub fn sum_elements(&self) -> &[GroupElement] {
        &self.sum_elems
    }

    /// Interned id of `A[i] + B[j]`; ids are assigned in canonical element
    /// order, so id order equals element order.
    pub fn sum_id(&self, i: usize, j: usize) -> u32 {
        self.sums[i * self.a.len() + j]
    }

    pub fn sum_element(&self, i: usize, j: usize) -> &GroupElement {
        &self.sum_elems[self.sum_id(i, j) as usize]
    }

    /// Checks `A ∩ (A + B) = ∅` and lists every violating triple
    /// `(a, b, a+b)` in `(A-index, B-index)` order.
    pub fn weak_condition(&self) -> (bool, Vec<WeakViolation>) {
        let n = self.n();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.forbidden[i * n + j] {
                    violations.push(WeakViolation {
                        a: self.a[i].clone(),
                        b: self.b[j].clone(),
                        sum: self.sum_elems[self.sums[i * n + j] as usize].clone(),
                    });
                }
            }
        }
        (violations.is_empty(), violations)
    }

    /// Identity string `group / A / B` used in reports and error messages.
    pub fn describe(&self) -> String {
        format!(
            "{} A={} B={}",
            self.spec,
            self.spec.set_display(&self.a),
            self.spec.set_display(&self.b)
        )
    }
}
