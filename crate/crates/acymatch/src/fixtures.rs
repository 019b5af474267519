//! Built-in regression fixtures: three known pairs with hand-checked
//! acyclicity tables and published counts, re-verified on every run.
//!
//! The Z/23 pair is special: its published analysis counts all 40320
//! bijections as matchings although 15+8 = 0 lands in A, violating the
//! matching premise. The strict fixture reports that violation as an
//! expected discrepancy rather than a failure, and the compat fixtures
//! reproduce the published figures under bijection-compat enumeration.

use crate::classify;
use crate::filter;
use crate::group::GroupSpec;
use crate::matching::{MatchMode, Matching};
use crate::pair::SubsetPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureStatus {
    Pass,
    /// An expected or flagged discrepancy notice; not a failure.
    Notice,
    Fail,
}

#[derive(Debug, Clone)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub status: FixtureStatus,
    pub detail: String,
}

pub fn has_failures(outcomes: &[FixtureOutcome]) -> bool {
    outcomes.iter().any(|o| o.status == FixtureStatus::Fail)
}

/// The full acyclicity table of the Z/14 pair A={1,3,5,7}, B={1,3,7,9}:
/// (rule, support, sequence) per row, in the published row order.
pub const Z14_TABLE: [(&str, &str, &str); 24] = [
    ("1->1;3->3;5->7;7->9", "2;6;12", "2,1,1"),
    ("1->1;3->3;5->9;7->7", "0;2;6", "2,1,1"),
    ("1->1;3->9;5->3;7->7", "0;2;8;12", "1,1,1,1"),
    ("1->1;3->9;5->7;7->3", "2;10;12", "2,1,1"),
    ("1->1;3->7;5->3;7->9", "2;8;10", "2,1,1"),
    ("1->1;3->7;5->9;7->3", "0;2;10", "2,1,1"),
    ("1->3;3->1;5->7;7->9", "2;4;12", "2,1,1"),
    ("1->3;3->1;5->9;7->7", "0;4", "2,2"),
    ("1->3;3->7;5->9;7->1", "0;4;8;10", "1,1,1,1"),
    ("1->3;3->7;5->1;7->9", "2;4;6;10", "1,1,1,1"),
    ("1->3;3->9;5->1;7->7", "0;4;6;12", "1,1,1,1"),
    ("1->3;3->9;5->7;7->1", "4;8;12", "2,1,1"),
    ("1->7;3->1;5->3;7->9", "2;4;8", "2,1,1"),
    ("1->7;3->1;5->9;7->3", "0;4;8;10", "1,1,1,1"),
    ("1->7;3->3;5->1;7->9", "2;6;8", "2,1,1"),
    ("1->7;3->3;5->9;7->1", "0;6;8", "2,1,1"),
    ("1->7;3->9;5->1;7->3", "6;8;10;12", "1,1,1,1"),
    ("1->7;3->9;5->3;7->1", "8;12", "3,1"),
    ("1->9;3->1;5->3;7->7", "0;4;8;10", "1,1,1,1"),
    ("1->9;3->1;5->7;7->3", "4;10;12", "2,1,1"),
    ("1->9;3->3;5->1;7->7", "0;6;10", "2,1,1"),
    ("1->9;3->3;5->7;7->1", "6;8;10;12", "1,1,1,1"),
    ("1->9;3->7;5->3;7->1", "8;10", "2,2"),
    ("1->9;3->7;5->1;7->3", "6;10", "3,1"),
];

pub const Z14_SURVIVOR_RULES: [&str; 2] = ["1->7;3->9;5->3;7->1", "1->9;3->7;5->1;7->3"];

/// The two Z/14 matchings that share a multiplicity function.
pub const Z14_SHARED_RULES: [&str; 2] = ["1->3;3->7;5->9;7->1", "1->9;3->1;5->3;7->7"];

/// Survivors of the Z/23 pair under bijection-compat enumeration, with their
/// supports; every sequence is 7,1.
pub const Z23_SURVIVORS: [(&str, &str); 3] = [
    ("0->7;1->6;2->5;3->4;12->18;13->17;14->16;15->8", "0;7"),
    ("0->8;1->7;2->6;3->5;12->4;13->18;14->17;15->16", "8;16"),
    ("0->8;1->18;2->17;3->16;12->7;13->6;14->5;15->4", "8;19"),
];

/// Two Z/23 bijections with equal multiplicity functions whose sequences are
/// all-ones; neither is acyclic.
pub const Z23_SHARED_RULES: [&str; 2] = [
    "0->18;1->16;2->17;3->5;12->4;13->7;14->8;15->6",
    "0->18;1->16;2->17;3->5;12->4;13->8;14->6;15->7",
];

/// Published all-ones / acyclic-all-ones counts for the Z/23 pair under
/// bijection-compat enumeration.
pub const Z23_PUBLISHED_ALL_ONES: u64 = 2436;
pub const Z23_PUBLISHED_ACYCLIC_ALL_ONES: u64 = 8;

fn z14_pair() -> SubsetPair {
    let g = GroupSpec::cyclic(14).unwrap();
    SubsetPair::parse(&g, "1,3,5,7", "1,3,7,9").unwrap()
}

fn z23_pair() -> SubsetPair {
    let g = GroupSpec::cyclic(23).unwrap();
    SubsetPair::parse(&g, "0,1,2,3,12,13,14,15", "4,5,6,7,8,16,17,18").unwrap()
}

fn outcome(name: &'static str, result: Result<String, String>) -> FixtureOutcome {
    match result {
        Ok(detail) => FixtureOutcome {
            name,
            status: FixtureStatus::Pass,
            detail,
        },
        Err(detail) => FixtureOutcome {
            name,
            status: FixtureStatus::Fail,
            detail,
        },
    }
}

fn require(cond: bool, detail: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail.to_string())
    }
}

fn lookup(pair: &SubsetPair, rules: &str) -> Result<Matching, String> {
    pair.matching_from_rules(rules)
        .ok_or_else(|| format!("rule list '{rules}' does not describe a bijection of the pair"))
}

fn z14_table_fixture() -> Result<String, String> {
    let p = z14_pair();
    let g = p.spec().clone();
    let enumerated: Vec<Matching> = p.matchings(MatchMode::Strict).collect();
    require(
        enumerated.len() == 24,
        &format!("expected 24 matchings, found {}", enumerated.len()),
    )?;
    let mut seen = Vec::new();
    for (row, (rule, support, sequence)) in Z14_TABLE.iter().enumerate() {
        let m = lookup(&p, rule)?;
        require(
            p.is_strict_valid(&m),
            &format!("row {}: {rule} is not a valid matching", row + 1),
        )?;
        let got_support = g.set_text(&p.support(&m));
        require(
            got_support == *support,
            &format!("row {}: support {got_support} != {support}", row + 1),
        )?;
        let got_seq = p.acyclicity_sequence(&m).to_string();
        require(
            got_seq == *sequence,
            &format!("row {}: sequence {got_seq} != {sequence}", row + 1),
        )?;
        seen.push(m);
    }
    seen.sort();
    seen.dedup();
    require(
        seen == enumerated,
        "table rows and enumerated matchings are not the same set",
    )?;
    Ok("all 24 rows match (rule, support, sequence)".into())
}

fn z14_filter_fixture() -> Result<String, String> {
    let p = z14_pair();
    let tr = filter::run_filter(&p, MatchMode::Strict).map_err(|e| e.to_string())?;
    require(
        tr.c_values == vec![3, 1] && tr.t == 2,
        &format!("C values {:?}, t={}", tr.c_values, tr.t),
    )?;
    let rules: Vec<String> = tr.survivors.iter().map(|m| p.rule_text(m)).collect();
    require(rules == Z14_SURVIVOR_RULES, &format!("survivors {rules:?}"))?;
    let classes = classify::classify(&p, MatchMode::Strict, u64::MAX).map_err(|e| e.to_string())?;
    for m in &tr.survivors {
        require(
            classify::is_acyclic(&p, m, &classes).map_err(|e| e.to_string())?,
            &format!("survivor {} is not acyclic", p.rule_text(m)),
        )?;
    }
    Ok("C values 3,1; t=2; both survivors acyclic".into())
}

fn z14_shared_multiplicity_fixture() -> Result<String, String> {
    let p = z14_pair();
    let f = lookup(&p, Z14_SHARED_RULES[0])?;
    let g = lookup(&p, Z14_SHARED_RULES[1])?;
    require(
        p.multiplicity(&f) == p.multiplicity(&g),
        "the two rules do not share a multiplicity function",
    )?;
    let classes = classify::classify(&p, MatchMode::Strict, u64::MAX).map_err(|e| e.to_string())?;
    require(
        !classify::is_acyclic(&p, &f, &classes).map_err(|e| e.to_string())?
            && !classify::is_acyclic(&p, &g, &classes).map_err(|e| e.to_string())?,
        "shared-class members must not be acyclic",
    )?;
    require(
        classify::acyclically_matched(&p, MatchMode::Strict, u64::MAX)
            .map_err(|e| e.to_string())?,
        "pair should be acyclically matched",
    )?;
    require(
        !classify::strongly_acyclically_matched(&p, MatchMode::Strict, u64::MAX)
            .map_err(|e| e.to_string())?,
        "pair must not be strongly acyclically matched",
    )?;
    Ok("equal multiplicity maps; both non-acyclic; pair not strongly matched".into())
}

fn z23_compat_fixture() -> Result<String, String> {
    let p = z23_pair();
    let g = p.spec().clone();
    let total = p.matchings(MatchMode::BijectionCompat).count();
    require(
        total == 40320,
        &format!("expected 40320 bijections, found {total}"),
    )?;
    let tr = filter::run_filter(&p, MatchMode::BijectionCompat).map_err(|e| e.to_string())?;
    require(
        tr.c_values == vec![7, 1] && tr.t == 2 && tr.survivor_count() == 3,
        &format!(
            "C values {:?}, t={}, survivors={}",
            tr.c_values,
            tr.t,
            tr.survivor_count()
        ),
    )?;
    let classes =
        classify::classify(&p, MatchMode::BijectionCompat, u64::MAX).map_err(|e| e.to_string())?;
    for (k, (rule, support)) in Z23_SURVIVORS.iter().enumerate() {
        let m = lookup(&p, rule)?;
        require(
            tr.survivors[k] == m,
            &format!("survivor {} is not {rule}", k + 1),
        )?;
        let got = g.set_text(&p.support(&m));
        require(got == *support, &format!("support {got} != {support}"))?;
        require(
            p.acyclicity_sequence(&m).to_string() == "7,1",
            "survivor sequence must be 7,1",
        )?;
        require(
            classify::is_acyclic(&p, &m, &classes).map_err(|e| e.to_string())?,
            &format!("survivor {rule} is not acyclic"),
        )?;
    }
    let f = lookup(&p, Z23_SHARED_RULES[0])?;
    let fg = lookup(&p, Z23_SHARED_RULES[1])?;
    require(
        p.multiplicity(&f) == p.multiplicity(&fg),
        "the published pair of bijections must share one multiplicity class",
    )?;
    require(
        p.acyclicity_sequence(&f).is_all_ones(),
        "the shared pair must have all-ones sequences",
    )?;
    require(
        !classify::is_acyclic(&p, &f, &classes).map_err(|e| e.to_string())?,
        "a shared-class bijection cannot be acyclic",
    )?;
    Ok("40320 bijections; C values 7,1; 3 survivors with published supports, all acyclic".into())
}

fn compare_published(what: &str, computed: u64, published: u64) -> (FixtureStatus, String) {
    if computed == published {
        (
            FixtureStatus::Pass,
            format!("{what}: computed {computed} matches the published count"),
        )
    } else {
        (
            FixtureStatus::Notice,
            format!(
                "{what}: computed {computed} differs from the published {published} (flagged discrepancy)"
            ),
        )
    }
}

fn z23_published_counts_fixture() -> FixtureOutcome {
    let p = z23_pair();
    let classes = match classify::classify(&p, MatchMode::BijectionCompat, u64::MAX) {
        Ok(c) => c,
        Err(e) => {
            return FixtureOutcome {
                name: "z23-published-counts",
                status: FixtureStatus::Fail,
                detail: e.to_string(),
            }
        }
    };
    let n = p.n();
    let all_ones: u64 = classes
        .iter()
        .filter(|c| c.fingerprint.len() == n)
        .map(|c| c.members.len() as u64)
        .sum();
    let acyclic_all_ones = classes
        .iter()
        .filter(|c| c.fingerprint.len() == n && c.is_singleton())
        .count() as u64;
    let (s1, d1) = compare_published("all-ones bijections", all_ones, Z23_PUBLISHED_ALL_ONES);
    let (s2, d2) = compare_published(
        "acyclic all-ones bijections",
        acyclic_all_ones,
        Z23_PUBLISHED_ACYCLIC_ALL_ONES,
    );
    let status = if s1 == FixtureStatus::Notice || s2 == FixtureStatus::Notice {
        FixtureStatus::Notice
    } else {
        FixtureStatus::Pass
    };
    FixtureOutcome {
        name: "z23-published-counts",
        status,
        detail: format!("{d1}; {d2}"),
    }
}

fn z23_strict_fixture() -> FixtureOutcome {
    let p = z23_pair();
    let (weak, violations) = p.weak_condition();
    let texts: Vec<String> = violations
        .iter()
        .map(|v| crate::report::violation_text(p.spec(), v))
        .collect();
    let count = p.count_matchings();
    if weak || texts != ["15+8=0"] || count != 35280 {
        return FixtureOutcome {
            name: "z23-strict-premise",
            status: FixtureStatus::Fail,
            detail: format!("violations {texts:?}, strict count {count}"),
        };
    }
    FixtureOutcome {
        name: "z23-strict-premise",
        status: FixtureStatus::Notice,
        detail: "expected discrepancy: 15+8=0 lands in A, so only 35280 of the 40320 \
                 published bijections are matchings (8! - 7!)"
            .into(),
    }
}

fn integers_fixture() -> Result<String, String> {
    let g = GroupSpec::cyclic(0).unwrap();
    let p = SubsetPair::parse(&g, "2;4", "3;1").map_err(|e| e.to_string())?;
    let ms: Vec<Matching> = p.matchings(MatchMode::Strict).collect();
    require(
        ms.len() == 2,
        &format!("expected 2 matchings, found {}", ms.len()),
    )?;
    require(
        classify::strongly_acyclically_matched(&p, MatchMode::Strict, u64::MAX)
            .map_err(|e| e.to_string())?,
        "pair must be strongly acyclically matched",
    )?;
    let special = lookup(&p, "2->3;4->1")?;
    require(
        p.acyclicity_sequence(&special).terms() == [2],
        "the matching 2->3,4->1 must have sequence (2)",
    )?;
    Ok("2 matchings, both acyclic, strongly matched; 2->3,4->1 has sequence 2".into())
}

fn z9_subgroup_fixture() -> Result<String, String> {
    let g = GroupSpec::cyclic(9).unwrap();
    let p = SubsetPair::parse(&g, "1,2", "3,6").map_err(|e| e.to_string())?;
    require(
        g.is_subgroup_with_zero(p.b()).map_err(|e| e.to_string())?,
        "B ∪ {0} must be a subgroup of Z/9",
    )?;
    require(
        p.weak_condition().0,
        "the pair must satisfy the weak condition",
    )?;
    require(
        classify::strongly_acyclically_matched(&p, MatchMode::Strict, u64::MAX)
            .map_err(|e| e.to_string())?,
        "subgroup criterion forces strong matchedness",
    )?;
    let all_ones =
        classify::all_ones_matchings(&p, MatchMode::Strict, u64::MAX).map_err(|e| e.to_string())?;
    require(all_ones.len() == 2, "both matchings must be all-ones")?;
    Ok("subgroup criterion verified: both matchings all-ones and acyclic".into())
}

/// Runs every fixture. `Notice` marks expected or flagged discrepancies;
/// only `Fail` indicates a broken fixture.
pub fn run_fixtures() -> Vec<FixtureOutcome> {
    vec![
        outcome("z14-table", z14_table_fixture()),
        outcome("z14-filter", z14_filter_fixture()),
        outcome("z14-shared-multiplicity", z14_shared_multiplicity_fixture()),
        outcome("z23-compat", z23_compat_fixture()),
        z23_published_counts_fixture(),
        z23_strict_fixture(),
        outcome("integers-pair", integers_fixture()),
        outcome("z9-subgroup-pair", z9_subgroup_fixture()),
    ]
}
