//! Acyclic matchings between finite subsets of abelian groups.
//!
//! Given two finite subsets `A`, `B` of an abelian group with `|A| = |B|` and
//! `0 ∉ B`, a *matching* is a bijection `f: A → B` with `a + f(a) ∉ A` for
//! every `a ∈ A`. Each matching induces a multiplicity function
//! `m_f(x) = #{a ∈ A : a + f(a) = x}`; a matching is *acyclic* when no other
//! matching shares its multiplicity function. This crate provides:
//!
//! * arithmetic in products of cyclic groups ([`group`]),
//! * subset pairs with validation and the weak condition `A ∩ (A+B) = ∅`
//!   ([`pair`]),
//! * pruned lexicographic enumeration of matchings, multiplicity maps,
//!   supports and acyclicity sequences ([`matching`]),
//! * the refinement filter producing the maxima `C_i`, survivor sets `F^(i)`
//!   and the acyclicity index `t` ([`filter`]),
//! * grouping of matchings by multiplicity function and acyclicity
//!   classification ([`mod@classify`]),
//! * exhaustive generation of candidate pairs in finite groups ([`pairgen`]),
//! * conjecture evaluation on single pairs and deterministic parallel scans
//!   ([`harness`]),
//! * report rendering and line-delimited verdict records ([`report`]), and
//! * built-in regression fixtures for known worked examples ([`fixtures`]).
//!
//! ```
//! use acymatch::{run_filter, GroupSpec, MatchMode, SubsetPair};
//!
//! let group = GroupSpec::cyclic(14)?;
//! let pair = SubsetPair::parse(&group, "1,3,5,7", "1,3,7,9")?;
//! assert!(pair.weak_condition().0);
//! assert_eq!(pair.count_matchings(), 24);
//!
//! let trace = run_filter(&pair, MatchMode::Strict)?;
//! assert_eq!(trace.c_values, [3, 1]);
//! assert_eq!(trace.survivor_count(), 2);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod classify;
pub mod filter;
pub mod fixtures;
pub mod group;
pub mod harness;
pub mod matching;
pub mod pair;
pub mod pairgen;
pub mod report;

pub use classify::{classify, MultiplicityClass};
pub use filter::{run_filter, FilterTrace};
pub use group::{GroupElement, GroupSpec};
pub use harness::{evaluate_pair, scan, ConjectureId, PairVerdict, ScanConfig, ScanSummary};
pub use matching::{MatchMode, Matching, DEFAULT_CAP};
pub use pair::SubsetPair;
pub use pairgen::PairQuery;
