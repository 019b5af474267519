//! Conjecture evaluation on single pairs and deterministic scans over
//! exhaustive pair streams.
//!
//! A scan is a counterexample search: every generated pair gets a
//! [`PairVerdict`], and the summary collects pairs that refute each tracked
//! statement. Evaluations are pure, so pair-level parallelism cannot change
//! any output; verdicts are finalized in canonical pair order regardless of
//! worker count.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use crate::classify::{self, MultiplicityClass};
use crate::filter::{self, FilterError};
use crate::group::{GroupElement, GroupSpec};
use crate::matching::{MatchMode, DEFAULT_CAP};
use crate::pair::{SubsetPair, WeakViolation};
use crate::pairgen::PairQuery;

/// Statements the harness can hunt counterexamples for.
///
/// The numeric ids follow the statement numbering used throughout this
/// tool's reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjectureId {
    /// 2.1: every weak pair admits at least one acyclic matching.
    C21,
    /// 3.1: for weak pairs, every filter survivor (member of `F^(t)`)
    /// is acyclic.
    C31,
    /// 3.7: for weak pairs, some acyclic matching has an all-ones
    /// acyclicity sequence. Refuted at desk scale; see the scan summary.
    C37,
    /// 3.14: an acyclically matched pair whose matchings all have all-ones
    /// sequences is strongly acyclically matched.
    C314,
    /// 3.5: proved: weak pair with `B ∪ {0}` a subgroup and `n > 1` forces
    /// all-ones sequences and acyclicity everywhere. Tracked as a
    /// regression guard.
    Thm35,
}

impl ConjectureId {
    pub fn parse(token: &str) -> Option<Self> {
        match token.trim() {
            "2.1" => Some(ConjectureId::C21),
            "3.1" => Some(ConjectureId::C31),
            "3.7" => Some(ConjectureId::C37),
            "3.14" => Some(ConjectureId::C314),
            "3.5" | "thm3.5" => Some(ConjectureId::Thm35),
            _ => None,
        }
    }
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjectureId::C21 => "2.1",
            ConjectureId::C31 => "3.1",
            ConjectureId::C37 => "3.7",
            ConjectureId::C314 => "3.14",
            ConjectureId::Thm35 => "thm3.5",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerdictStatus {
    Ok,
    /// Analysis skipped because `n!` exceeds the materialization cap; the
    /// cheap fields (weak condition, violations) are still filled in.
    SkippedCap {
        candidates: u64,
        cap: u64,
    },
}

/// Everything the harness derives from one pair in one mode.
#[derive(Debug, Clone)]
pub struct PairVerdict {
    pub spec: GroupSpec,
    pub a: Vec<GroupElement>,
    pub b: Vec<GroupElement>,
    pub mode: MatchMode,
    pub n: usize,
    pub status: VerdictStatus,
    pub weak_ok: bool,
    pub violations: Vec<WeakViolation>,
    pub matching_count: u64,
    pub all_ones_count: u64,
    pub acyclic_count: u64,
    pub acyclic_all_ones_count: u64,
    pub c_values: Vec<u32>,
    pub t: usize,
    pub survivor_count: u64,
    /// Every filter survivor acyclic; `None` unless the weak condition
    /// holds (the conjecture's hypothesis).
    pub c31: Option<bool>,
    /// Some acyclic matching has an all-ones sequence; `None` unless the
    /// weak condition holds.
    pub c37: Option<bool>,
    pub c314_applicable: bool,
    pub c314: Option<bool>,
    pub thm35_applicable: bool,
    pub thm35: Option<bool>,
    pub elapsed_ms: u64,
}

impl PairVerdict {
    pub fn describe_pair(&self) -> String {
        format!(
            "{} A={} B={}",
            self.spec,
            self.spec.set_display(&self.a),
            self.spec.set_display(&self.b)
        )
    }

    /// Whether this verdict refutes the given statement.
    pub fn violates(&self, id: ConjectureId) -> bool {
        match id {
            ConjectureId::C21 => {
                self.status == VerdictStatus::Ok && self.weak_ok && self.acyclic_count == 0
            }
            ConjectureId::C31 => self.c31 == Some(false),
            ConjectureId::C37 => self.c37 == Some(false),
            ConjectureId::C314 => self.c314 == Some(false),
            ConjectureId::Thm35 => self.thm35 == Some(false),
        }
    }
}

/// Computes a full verdict. Never fails: a pair too large for the cap gets
/// a `SkippedCap` status with the cheap fields filled in.
pub fn evaluate_pair(pair: &SubsetPair, mode: MatchMode, cap: u64) -> PairVerdict {
    let start = Instant::now();
    let (weak_ok, violations) = pair.weak_condition();
    let n = pair.n();

    let mut verdict = PairVerdict {
        spec: pair.spec().clone(),
        a: pair.a().to_vec(),
        b: pair.b().to_vec(),
        mode,
        n,
        status: VerdictStatus::Ok,
        weak_ok,
        violations,
        matching_count: 0,
        all_ones_count: 0,
        acyclic_count: 0,
        acyclic_all_ones_count: 0,
        c_values: Vec::new(),
        t: 0,
        survivor_count: 0,
        c31: None,
        c37: None,
        c314_applicable: false,
        c314: None,
        thm35_applicable: false,
        thm35: None,
        elapsed_ms: 0,
    };

    if let Err(crate::matching::MatchError::CapExceeded {
        candidates, cap, ..
    }) = pair.check_cap(cap)
    {
        verdict.status = VerdictStatus::SkippedCap { candidates, cap };
        verdict.elapsed_ms = start.elapsed().as_millis() as u64;
        return verdict;
    }

    let classes = classify::classify(pair, mode, cap).expect("cap already checked");
    let full_support = |c: &MultiplicityClass| c.fingerprint.len() == n;
    verdict.matching_count = classes.iter().map(|c| c.members.len() as u64).sum();
    verdict.all_ones_count = classes
        .iter()
        .filter(|c| full_support(c))
        .map(|c| c.members.len() as u64)
        .sum();
    verdict.acyclic_count = classes.iter().filter(|c| c.is_singleton()).count() as u64;
    verdict.acyclic_all_ones_count = classes
        .iter()
        .filter(|c| c.is_singleton() && full_support(c))
        .count() as u64;

    match filter::run_filter(pair, mode) {
        Ok(trace) => {
            let survivors_acyclic = trace.survivors.iter().all(|m| {
                classify::is_acyclic(pair, m, &classes)
                    .expect("survivors come from the classified set")
            });
            verdict.survivor_count = trace.survivor_count();
            verdict.c_values = trace.c_values;
            verdict.t = trace.t;
            if weak_ok {
                verdict.c31 = Some(survivors_acyclic);
                verdict.c37 = Some(verdict.acyclic_all_ones_count > 0);
            }
        }
        Err(FilterError::NoMatchings) => {
            // only possible when the forbidden mask blocks everything; the
            // weak hypothesis then fails, so c31/c37 stay not-applicable
        }
    }

    let acyclically_matched = verdict.acyclic_count > 0;
    verdict.c314_applicable = acyclically_matched
        && verdict.matching_count > 0
        && verdict.all_ones_count == verdict.matching_count;
    if verdict.c314_applicable {
        let strongly = verdict.acyclic_count == verdict.matching_count;
        verdict.c314 = Some(strongly);
    }

    let subgroup_b = pair
        .spec()
        .is_subgroup_with_zero(pair.b())
        .expect("pair elements are canonical");
    verdict.thm35_applicable = n > 1 && weak_ok && subgroup_b;
    if verdict.thm35_applicable {
        let verified = verdict.matching_count > 0
            && verdict.all_ones_count == verdict.matching_count
            && verdict.acyclic_count == verdict.matching_count;
        verdict.thm35 = Some(verified);
    }

    verdict.elapsed_ms = start.elapsed().as_millis() as u64;
    verdict
}

/// Scan configuration over one or more finite groups.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub groups: Vec<GroupSpec>,
    pub size_min: usize,
    pub size_max: usize,
    pub mode: MatchMode,
    pub require_weak: bool,
    /// Worker threads; 0 uses the rayon default. Output is identical for
    /// every value.
    pub jobs: usize,
    pub cap: u64,
}

impl ScanConfig {
    pub fn new(groups: Vec<GroupSpec>, size_min: usize, size_max: usize) -> Self {
        ScanConfig {
            groups,
            size_min,
            size_max,
            mode: MatchMode::Strict,
            require_weak: true,
            jobs: 1,
            cap: DEFAULT_CAP,
        }
    }
}

/// Totals and counterexample lists of one scan. Built from verdicts in
/// canonical pair order, hence identical across worker counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub pairs_scanned: u64,
    pub weak_pairs: u64,
    pub skipped_cap: u64,
    /// Weak pairs with no all-ones matching at all (the trivial way the
    /// literal 3.7 statement fails).
    pub weak_without_all_ones: u64,
    pub c21_counterexamples: Vec<String>,
    pub c31_counterexamples: Vec<String>,
    pub c37_refutations: Vec<String>,
    pub c314_applicable: u64,
    pub c314_counterexamples: Vec<String>,
    pub thm35_applicable: u64,
    pub thm35_violations: Vec<String>,
}

impl ScanSummary {
    fn absorb(&mut self, v: &PairVerdict) {
        self.pairs_scanned += 1;
        if v.weak_ok {
            self.weak_pairs += 1;
        }
        if matches!(v.status, VerdictStatus::SkippedCap { .. }) {
            self.skipped_cap += 1;
            return;
        }
        if v.weak_ok && v.all_ones_count == 0 {
            self.weak_without_all_ones += 1;
        }
        if v.violates(ConjectureId::C21) {
            self.c21_counterexamples.push(v.describe_pair());
        }
        if v.violates(ConjectureId::C31) {
            self.c31_counterexamples.push(v.describe_pair());
        }
        if v.violates(ConjectureId::C37) {
            self.c37_refutations.push(v.describe_pair());
        }
        if v.c314_applicable {
            self.c314_applicable += 1;
        }
        if v.violates(ConjectureId::C314) {
            self.c314_counterexamples.push(v.describe_pair());
        }
        if v.thm35_applicable {
            self.thm35_applicable += 1;
        }
        if v.violates(ConjectureId::Thm35) {
            self.thm35_violations.push(v.describe_pair());
        }
    }
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pairs scanned:        {}", self.pairs_scanned)?;
        writeln!(f, "weak pairs:           {}", self.weak_pairs)?;
        writeln!(f, "skipped (cap):        {}", self.skipped_cap)?;
        writeln!(
            f,
            "2.1  weak-property counterexamples: {}",
            self.c21_counterexamples.len()
        )?;
        writeln!(
            f,
            "3.1  survivor-acyclicity counterexamples: {}",
            self.c31_counterexamples.len()
        )?;
        writeln!(
            f,
            "3.7  acyclic-all-ones refutations: {} ({} weak pairs have no all-ones matching at all)",
            self.c37_refutations.len(),
            self.weak_without_all_ones
        )?;
        writeln!(
            f,
            "3.14 applicable: {}, counterexamples: {}",
            self.c314_applicable,
            self.c314_counterexamples.len()
        )?;
        write!(
            f,
            "3.5  applicable: {}, violations: {}",
            self.thm35_applicable,
            self.thm35_violations.len()
        )
    }
}

const SCAN_BATCH: usize = 1024;

/// Evaluates every pair the config generates, feeding verdicts to `sink` in
/// canonical pair order, and returns the summary.
pub fn scan(config: &ScanConfig, mut sink: impl FnMut(&PairVerdict)) -> ScanSummary {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .expect("thread pool construction");
    let mut summary = ScanSummary::default();

    for spec in &config.groups {
        let Some(query) = PairQuery::clamped(spec.clone(), config.size_min, config.size_max) else {
            continue;
        };
        let query = query.require_weak(config.require_weak);
        let mut stream = query.pairs();
        loop {
            let batch: Vec<SubsetPair> = stream.by_ref().take(SCAN_BATCH).collect();
            if batch.is_empty() {
                break;
            }
            let verdicts: Vec<PairVerdict> = pool.install(|| {
                batch
                    .par_iter()
                    .map(|pair| evaluate_pair(pair, config.mode, config.cap))
                    .collect()
            });
            for v in &verdicts {
                summary.absorb(v);
                sink(v);
            }
        }
    }
    summary
}

/// First verdict (in canonical order) satisfying `pred`, evaluated
/// sequentially with early exit.
pub fn find_violation(
    config: &ScanConfig,
    pred: impl Fn(&PairVerdict) -> bool,
) -> Option<PairVerdict> {
    for spec in &config.groups {
        let Some(query) = PairQuery::clamped(spec.clone(), config.size_min, config.size_max) else {
            continue;
        };
        let query = query.require_weak(config.require_weak);
        for pair in query.pairs() {
            let v = evaluate_pair(&pair, config.mode, config.cap);
            if pred(&v) {
                return Some(v);
            }
        }
    }
    None
}

/// First pair refuting the given statement, or `None`.
pub fn find_counterexample(config: &ScanConfig, id: ConjectureId) -> Option<PairVerdict> {
    find_violation(config, |v| v.violates(id))
}
