//! The refinement filter over a pair's matchings: maxima `C_i`, survivor
//! sets `F^(i)` and the acyclicity index `t`.
//!
//! `C_1` is the largest first sequence term over all matchings and `F^(1)`
//! its argmax set; `C_i` / `F^(i)` refine recursively on the i-th term.
//! Every acyclicity sequence is a partition of `n` and all survivors of
//! `F^(i)` share the prefix `(C_1,…,C_i)`, so the process stops exactly when
//! the prefix sums reach `n` (equivalently `F^(t+1) = ∅`). The survivor set
//! `F^(t)` equals the set of matchings whose full acyclicity sequence is
//! lexicographically maximal, which is what the default single-pass
//! implementation computes.

use thiserror::Error;

use crate::matching::{AcyclicitySeq, MatchMode, Matching};
use crate::pair::SubsetPair;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FilterError {
    #[error("no matchings exist for this pair")]
    NoMatchings,
}

/// Outcome of the refinement process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterTrace {
    /// `(C_1, …, C_t)`; non-increasing, sums to `n`.
    pub c_values: Vec<u32>,
    /// `|F^(1)|, …, |F^(t)|`; non-increasing.
    pub survivor_counts: Vec<u64>,
    /// `F^(t)` in lexicographic order.
    pub survivors: Vec<Matching>,
    /// The acyclicity index `t` (equals `c_values.len()`).
    pub t: usize,
}

impl FilterTrace {
    pub fn survivor_count(&self) -> u64 {
        self.survivors.len() as u64
    }
}

/// The full acyclicity sequence viewed as the filter's sort key: the
/// survivor set is exactly the class attaining the lexicographic maximum.
pub fn sequence_key(pair: &SubsetPair, m: &Matching) -> AcyclicitySeq {
    pair.acyclicity_sequence(m)
}

/// Single-pass streaming filter. Maintains the best sequence seen so far,
/// the matchings attaining it, and per-prefix survivor tallies; never holds
/// more than the current survivor class.
pub fn run_filter(pair: &SubsetPair, mode: MatchMode) -> Result<FilterTrace, FilterError> {
    let mut best: Option<AcyclicitySeq> = None;
    let mut survivors: Vec<Matching> = Vec::new();
    let mut counts: Vec<u64> = Vec::new();

    for m in pair.matchings(mode) {
        let seq = pair.acyclicity_sequence(&m);
        match &best {
            None => {
                counts = vec![1; seq.len()];
                best = Some(seq);
                survivors.push(m);
            }
            Some(cur) => {
                if seq == *cur {
                    for c in counts.iter_mut() {
                        *c += 1;
                    }
                    survivors.push(m);
                } else {
                    // partitions of n: unequal sequences always differ at
                    // some index before either runs out
                    let diff = cur
                        .terms()
                        .iter()
                        .zip(seq.terms())
                        .position(|(a, b)| a != b)
                        .expect("unequal partitions of n differ at an index");
                    if seq.terms()[diff] > cur.terms()[diff] {
                        // new best; prefixes before the divergence keep their
                        // tallies, deeper levels restart at this matching
                        counts.truncate(diff);
                        for c in counts.iter_mut() {
                            *c += 1;
                        }
                        counts.resize(seq.len(), 1);
                        best = Some(seq);
                        survivors.clear();
                        survivors.push(m);
                    } else {
                        for c in counts.iter_mut().take(diff) {
                            *c += 1;
                        }
                    }
                }
            }
        }
    }

    let best = best.ok_or(FilterError::NoMatchings)?;
    Ok(FilterTrace {
        t: best.len(),
        c_values: best.terms().to_vec(),
        survivor_counts: counts,
        survivors,
    })
}

/// Materializing stepwise refinement, kept as an independently-shaped
/// implementation for cross-checking the streaming pass. The survivor set
/// shrinks monotonically by construction.
pub fn run_filter_iterative(
    pair: &SubsetPair,
    mode: MatchMode,
) -> Result<FilterTrace, FilterError> {
    let all: Vec<Matching> = pair.matchings(mode).collect();
    if all.is_empty() {
        return Err(FilterError::NoMatchings);
    }
    let seqs: Vec<AcyclicitySeq> = all.iter().map(|m| pair.acyclicity_sequence(m)).collect();
    let n = pair.n() as u64;

    let mut survivors: Vec<usize> = (0..all.len()).collect();
    let mut c_values: Vec<u32> = Vec::new();
    let mut survivor_counts: Vec<u64> = Vec::new();
    let mut prefix_sum: u64 = 0;
    for i in 0.. {
        let ci = survivors
            .iter()
            .map(|&k| seqs[k].terms()[i])
            .max()
            .expect("survivor set never empties before the prefix sums reach n");
        survivors.retain(|&k| seqs[k].terms()[i] == ci);
        c_values.push(ci);
        survivor_counts.push(survivors.len() as u64);
        prefix_sum += ci as u64;
        if prefix_sum >= n {
            break;
        }
    }

    Ok(FilterTrace {
        t: c_values.len(),
        c_values,
        survivor_counts,
        survivors: survivors.into_iter().map(|k| all[k].clone()).collect(),
    })
}
