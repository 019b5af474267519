//! Grouping of matchings by multiplicity function and acyclicity decisions.
//!
//! Two matchings are equivalent exactly when their multiplicity functions
//! agree; a matching is *acyclic* when its class is a singleton. A pair is
//! *acyclically matched* when some class is a singleton and *strongly
//! acyclically matched* when additionally every class is.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::group::GroupElement;
use crate::matching::{MatchError, MatchMode, Matching};
use crate::pair::SubsetPair;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Cap(#[from] MatchError),
    #[error("matching {0} does not belong to the classified matching set")]
    MatchingNotInClasses(String),
}

/// One multiplicity class: the shared fingerprint and its members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityClass {
    /// `(element, count)` entries in canonical element order.
    pub fingerprint: Vec<(GroupElement, u32)>,
    /// Members in lexicographic order.
    pub members: Vec<Matching>,
}

impl MultiplicityClass {
    pub fn is_singleton(&self) -> bool {
        self.members.len() == 1
    }
}

/// Partitions the pair's matchings by multiplicity fingerprint. Classes are
/// returned in lexicographic fingerprint order; refuses when `n!` exceeds
/// `cap`.
pub fn classify(
    pair: &SubsetPair,
    mode: MatchMode,
    cap: u64,
) -> Result<Vec<MultiplicityClass>, MatchError> {
    pair.check_cap(cap)?;
    // id-fingerprints sort identically to element fingerprints because sum
    // ids are assigned in canonical element order
    let mut groups: BTreeMap<Vec<(u32, u32)>, Vec<Matching>> = BTreeMap::new();
    for m in pair.matchings(mode) {
        groups.entry(pair.fingerprint_ids(&m)).or_default().push(m);
    }
    Ok(groups
        .into_iter()
        .map(|(fp, members)| MultiplicityClass {
            fingerprint: fp
                .into_iter()
                .map(|(id, c)| (pair.sum_elements()[id as usize].clone(), c))
                .collect(),
            members,
        })
        .collect())
}

/// True iff the matching's class is a singleton. The classes must come from
/// [`classify`] on the same pair and mode; an unknown matching is a
/// structural error.
pub fn is_acyclic(
    pair: &SubsetPair,
    m: &Matching,
    classes: &[MultiplicityClass],
) -> Result<bool, ClassifyError> {
    let fp: Vec<(GroupElement, u32)> = pair
        .fingerprint_ids(m)
        .into_iter()
        .map(|(id, c)| (pair.sum_elements()[id as usize].clone(), c))
        .collect();
    let idx = classes
        .binary_search_by(|cl| cl.fingerprint.cmp(&fp))
        .map_err(|_| ClassifyError::MatchingNotInClasses(pair.rule_text(m)))?;
    let class = &classes[idx];
    if class.members.binary_search(m).is_err() {
        return Err(ClassifyError::MatchingNotInClasses(pair.rule_text(m)));
    }
    Ok(class.is_singleton())
}

/// Matchings whose acyclicity sequence is `(1,…,1)`, i.e. whose support has
/// full size `n`. Lexicographic order.
pub fn all_ones_matchings(
    pair: &SubsetPair,
    mode: MatchMode,
    cap: u64,
) -> Result<Vec<Matching>, MatchError> {
    pair.check_cap(cap)?;
    Ok(pair
        .matchings(mode)
        .filter(|m| pair.fingerprint_ids(m).len() == pair.n())
        .collect())
}

/// True iff at least one acyclic matching exists. False when the pair has
/// no matchings at all: the definition demands existence.
pub fn acyclically_matched(
    pair: &SubsetPair,
    mode: MatchMode,
    cap: u64,
) -> Result<bool, MatchError> {
    Ok(classify(pair, mode, cap)?
        .iter()
        .any(MultiplicityClass::is_singleton))
}

/// True iff the pair is acyclically matched and every matching is acyclic.
pub fn strongly_acyclically_matched(
    pair: &SubsetPair,
    mode: MatchMode,
    cap: u64,
) -> Result<bool, MatchError> {
    let classes = classify(pair, mode, cap)?;
    Ok(!classes.is_empty() && classes.iter().all(MultiplicityClass::is_singleton))
}
