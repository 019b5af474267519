//! Acceptance suite: one test per criterion, each printing a pass line with
//! the measured facts. Expected values are frozen from the published tables
//! where available and from independent brute-force recomputation otherwise.
//! Every tolerance is exact integer equality; runtime budgets are asserted
//! with wall-clock checks.

mod common;

use std::time::{Duration, Instant};

use acymatch::classify;
use acymatch::filter;
use acymatch::fixtures::{self, FixtureStatus};
use acymatch::group::GroupSpec;
use acymatch::harness::{self, PairVerdict, ScanConfig};
use acymatch::matching::{MatchMode, Matching};
use acymatch::pair::SubsetPair;
use acymatch::pairgen::PairQuery;
use acymatch::report;

fn cyclic(n: i64) -> GroupSpec {
    GroupSpec::cyclic(n).unwrap()
}

fn z14_pair() -> SubsetPair {
    SubsetPair::parse(&cyclic(14), "1,3,5,7", "1,3,7,9").unwrap()
}

fn z23_pair() -> SubsetPair {
    SubsetPair::parse(&cyclic(23), "0,1,2,3,12,13,14,15", "4,5,6,7,8,16,17,18").unwrap()
}

const CAP: u64 = acymatch::DEFAULT_CAP;

#[test]
fn criterion_1_table_reproduction() {
    let start = Instant::now();
    let p = z14_pair();
    let g = p.spec().clone();
    let enumerated: Vec<Matching> = p.matchings(MatchMode::Strict).collect();
    assert_eq!(enumerated.len(), 24);

    let mut from_table = Vec::new();
    for (row, (rule, support, sequence)) in fixtures::Z14_TABLE.iter().enumerate() {
        let m = p
            .matching_from_rules(rule)
            .unwrap_or_else(|| panic!("row {}: bad rule {rule}", row + 1));
        assert!(p.is_strict_valid(&m), "row {}", row + 1);
        assert_eq!(g.set_text(&p.support(&m)), *support, "row {}", row + 1);
        assert_eq!(
            p.acyclicity_sequence(&m).to_string(),
            *sequence,
            "row {}",
            row + 1
        );
        from_table.push(m);
    }
    from_table.sort();
    from_table.dedup();
    assert_eq!(from_table, enumerated, "table rows = enumerated matchings");

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("criterion 1 (table reproduction): PASS: 24/24 rows exact in {elapsed:?}");
}

#[test]
fn criterion_2_filter_reproduction() {
    let p = z14_pair();
    let tr = filter::run_filter(&p, MatchMode::Strict).unwrap();
    assert_eq!(tr.c_values, vec![3, 1]);
    assert_eq!(tr.t, 2);
    let rules: Vec<String> = tr.survivors.iter().map(|m| p.rule_text(m)).collect();
    assert_eq!(rules, fixtures::Z14_SURVIVOR_RULES);
    let classes = classify::classify(&p, MatchMode::Strict, CAP).unwrap();
    for m in &tr.survivors {
        assert!(classify::is_acyclic(&p, m, &classes).unwrap());
    }
    println!("criterion 2 (filter reproduction): PASS: C=(3,1), t=2, survivors acyclic");
}

#[test]
fn criterion_3_shared_multiplicity_fixture() {
    let p = z14_pair();
    let f9 = p
        .matching_from_rules(fixtures::Z14_SHARED_RULES[0])
        .unwrap();
    let f19 = p
        .matching_from_rules(fixtures::Z14_SHARED_RULES[1])
        .unwrap();
    assert_eq!(p.multiplicity(&f9), p.multiplicity(&f19));
    let classes = classify::classify(&p, MatchMode::Strict, CAP).unwrap();
    assert!(!classify::is_acyclic(&p, &f9, &classes).unwrap());
    assert!(!classify::is_acyclic(&p, &f19, &classes).unwrap());
    assert!(!classify::strongly_acyclically_matched(&p, MatchMode::Strict, CAP).unwrap());
    println!(
        "criterion 3 (shared multiplicity): PASS: equal maps, both non-acyclic, not strongly matched"
    );
}

#[test]
fn criterion_4_z23_bijection_compat() {
    let start = Instant::now();
    let p = z23_pair();
    let g = p.spec().clone();

    let total = p.matchings(MatchMode::BijectionCompat).count();
    assert_eq!(total, 40320);

    let tr = filter::run_filter(&p, MatchMode::BijectionCompat).unwrap();
    assert_eq!(tr.c_values, vec![7, 1]);
    assert_eq!(tr.t, 2);
    assert_eq!(tr.survivor_count(), 3);

    let classes = classify::classify(&p, MatchMode::BijectionCompat, CAP).unwrap();
    for (k, (rule, support)) in fixtures::Z23_SURVIVORS.iter().enumerate() {
        let m = p.matching_from_rules(rule).unwrap();
        assert_eq!(tr.survivors[k], m, "survivor {}", k + 1);
        assert_eq!(g.set_text(&p.support(&m)), *support);
        assert_eq!(p.acyclicity_sequence(&m).to_string(), "7,1");
        assert!(classify::is_acyclic(&p, &m, &classes).unwrap());
    }

    // the published pair of all-ones bijections shares one class
    let f = p
        .matching_from_rules(fixtures::Z23_SHARED_RULES[0])
        .unwrap();
    let h = p
        .matching_from_rules(fixtures::Z23_SHARED_RULES[1])
        .unwrap();
    assert_eq!(p.multiplicity(&f), p.multiplicity(&h));
    assert!(p.acyclicity_sequence(&f).is_all_ones());
    assert!(!classify::is_acyclic(&p, &f, &classes).unwrap());

    // all-ones and acyclic-all-ones counts against the published figures;
    // a mismatch must surface as a flagged discrepancy, not a silent pass
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
    let outcomes = fixtures::run_fixtures();
    let counts_fixture = outcomes
        .iter()
        .find(|o| o.name == "z23-published-counts")
        .unwrap();
    match (
        all_ones == fixtures::Z23_PUBLISHED_ALL_ONES,
        acyclic_all_ones == fixtures::Z23_PUBLISHED_ACYCLIC_ALL_ONES,
    ) {
        (true, true) => assert_eq!(counts_fixture.status, FixtureStatus::Pass),
        _ => assert_eq!(
            counts_fixture.status,
            FixtureStatus::Notice,
            "mismatches must be flagged discrepancies"
        ),
    }
    assert_eq!(all_ones, 2436, "matches the published all-ones count");
    assert_eq!(acyclic_all_ones, 8, "matches the published acyclic count");

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!(
        "criterion 4 (bijection-compat reproduction): PASS: 40320 bijections, C=(7,1), \
         3 acyclic survivors, counts 2436/8 in {elapsed:?}"
    );
}

#[test]
fn criterion_5_z23_strict_mode() {
    let p = z23_pair();
    let (weak, violations) = p.weak_condition();
    assert!(!weak);
    let texts: Vec<String> = violations
        .iter()
        .map(|v| report::violation_text(p.spec(), v))
        .collect();
    assert_eq!(texts, ["15+8=0"], "exactly one violation");
    assert_eq!(p.count_matchings(), 35280, "8! - 7!");
    println!(
        "criterion 5 (strict-mode premise check): PASS: one violation (15,8,0), 35280 matchings"
    );
}

#[test]
fn criterion_6_subgroup_criterion_suite() {
    let start = Instant::now();
    let groups: Vec<GroupSpec> = (2..=12).map(cyclic).collect();
    let config = ScanConfig {
        size_max: 11,
        ..ScanConfig::new(groups, 2, 11)
    };
    let mut applicable: Vec<PairVerdict> = Vec::new();
    let summary = harness::scan(&config, |v| {
        if v.thm35_applicable {
            applicable.push(v.clone());
        }
    });
    assert_eq!(
        summary.thm35_applicable, 154,
        "independently recomputed count"
    );
    assert_eq!(applicable.len(), 154);
    assert!(
        summary.thm35_violations.is_empty(),
        "{:?}",
        summary.thm35_violations
    );
    for v in &applicable {
        let factorial: u64 = (1..=v.n as u64).product();
        assert_eq!(v.matching_count, factorial, "{}", v.describe_pair());
        assert_eq!(v.all_ones_count, v.matching_count, "{}", v.describe_pair());
        assert_eq!(v.acyclic_count, v.matching_count, "{}", v.describe_pair());
        assert_eq!(v.thm35, Some(true), "{}", v.describe_pair());
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!(
        "criterion 6 (subgroup criterion suite): PASS: {} applicable pairs over Z/2..Z/12, \
         zero violations in {elapsed:?}",
        applicable.len()
    );
}

#[test]
fn criterion_7_integers_fixture() {
    let g = cyclic(0);
    let p = SubsetPair::parse(&g, "2;4", "3;1").unwrap();
    let ms: Vec<Matching> = p.matchings(MatchMode::Strict).collect();
    assert_eq!(ms.len(), 2);
    let classes = classify::classify(&p, MatchMode::Strict, CAP).unwrap();
    for m in &ms {
        assert!(classify::is_acyclic(&p, m, &classes).unwrap());
    }
    assert!(classify::strongly_acyclically_matched(&p, MatchMode::Strict, CAP).unwrap());
    let special = p.matching_from_rules("2->3;4->1").unwrap();
    assert_eq!(p.acyclicity_sequence(&special).terms(), &[2]);
    println!("criterion 7 (integers fixture): PASS: 2 matchings, strongly matched, sequence (2)");
}

#[test]
fn criterion_8_oracle_equivalence() {
    let start = Instant::now();
    let mut pairs_checked = 0u64;
    for n in 2..=8i64 {
        let order = n as usize;
        let max_s = 4.min(order - 1);
        let query = PairQuery::new(cyclic(n), 1, max_s).unwrap();
        for pair in query.pairs() {
            pairs_checked += 1;
            // enumeration routes
            let pruned: Vec<Matching> = pair.matchings(MatchMode::Strict).collect();
            let naive = common::naive_matchings(&pair);
            assert_eq!(pruned, naive, "{}", pair.describe());
            // filter routes
            let streaming = filter::run_filter(&pair, MatchMode::Strict).unwrap();
            let iterative = filter::run_filter_iterative(&pair, MatchMode::Strict).unwrap();
            assert_eq!(streaming, iterative, "{}", pair.describe());
            let naive_surv = common::naive_survivors(&pair, &pruned);
            assert_eq!(streaming.survivors, naive_surv, "{}", pair.describe());
            // acyclicity routes
            let classes = classify::classify(&pair, MatchMode::Strict, CAP).unwrap();
            let mut lib_acyclic: Vec<Matching> = classes
                .iter()
                .filter(|c| c.is_singleton())
                .flat_map(|c| c.members.iter().cloned())
                .collect();
            lib_acyclic.sort();
            let mut naive_acyclic = common::naive_acyclic_set(&pair, &pruned);
            naive_acyclic.sort();
            assert_eq!(lib_acyclic, naive_acyclic, "{}", pair.describe());
        }
    }
    assert_eq!(
        pairs_checked, 712,
        "all weak pairs of Z/2..Z/8 at sizes 1..4"
    );
    let elapsed = start.elapsed();
    println!(
        "criterion 8 (oracle equivalence): PASS: {pairs_checked} weak pairs, three routes agree, \
         zero divergences in {elapsed:?}"
    );
}

// Refutation tallies for the literal all-ones-existence statement (3.7) over
// the scan range, frozen from independent brute force: the statement fails
// on weak pairs whose matchings are all concentrated (e.g. Z/4, A={0,2},
// B={1,3}: both matchings have sequence (2)) and on pairs whose all-ones
// matchings all collide in one multiplicity class (e.g. Z/6, A={0,2,4},
// B={1,3,5}).
const C37_REFUTATIONS_3_TO_11: usize = 222;
const C37_FIRST_REFUTATION: &str = "4 A={0,2} B={1,3}";

#[test]
fn criterion_9_conjecture_scan_determinism() {
    let start = Instant::now();
    let groups: Vec<GroupSpec> = (3..=11).map(cyclic).collect();

    let run = |jobs: usize| {
        let cfg = ScanConfig {
            jobs,
            ..ScanConfig::new(groups.clone(), 2, 4)
        };
        let mut lines: Vec<String> = Vec::new();
        let summary = harness::scan(&cfg, |v| {
            lines.push(report::verdict_json_line(v, false));
        });
        (summary, lines.join("\n"))
    };

    let (summary, bytes_1) = run(1);
    let (summary_8, bytes_8) = run(8);
    assert_eq!(summary, summary_8, "summary independent of worker count");
    assert_eq!(bytes_1, bytes_8, "byte-identical records at 1 vs 8 workers");

    assert_eq!(
        summary.pairs_scanned, 6027,
        "weak pairs of Z/3..Z/11, sizes 2..4"
    );
    assert_eq!(summary.weak_pairs, 6027);
    assert_eq!(summary.skipped_cap, 0);

    // zero counterexamples to 3.1, and zero weak pairs without an acyclic
    // matching (the simulation claim behind the conjecture chain)
    assert!(
        summary.c31_counterexamples.is_empty(),
        "{:?}",
        summary.c31_counterexamples
    );
    assert!(
        summary.c21_counterexamples.is_empty(),
        "{:?}",
        summary.c21_counterexamples
    );
    assert!(summary.thm35_violations.is_empty());
    assert!(summary.c314_counterexamples.is_empty());

    // the literal all-ones-existence statement is refuted on exactly the
    // pairs found by the independent oracle; the scan must report them
    // rather than hide them
    assert_eq!(summary.c37_refutations.len(), C37_REFUTATIONS_3_TO_11);
    assert_eq!(summary.c37_refutations[0], C37_FIRST_REFUTATION);
    assert_eq!(summary.weak_without_all_ones, 42);

    // per-group breakdown of the refutations, frozen from the same oracle;
    // guards against compensating miscounts across groups
    for (n, expected) in [
        (3, 0),
        (4, 2),
        (5, 0),
        (6, 8),
        (7, 0),
        (8, 46),
        (9, 6),
        (10, 160),
        (11, 0),
    ] {
        let prefix = format!("{n} A=");
        let got = summary
            .c37_refutations
            .iter()
            .filter(|s| s.starts_with(&prefix))
            .count();
        assert_eq!(got, expected, "refutations in Z/{n}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(900), "took {elapsed:?}");
    println!(
        "criterion 9 (conjecture scan): PASS: 6027 weak pairs; 3.1: 0 counterexamples; \
         weak-property (2.1): 0 counterexamples; literal 3.7 refuted on {} pairs \
         (first {}), reported not hidden; outputs byte-identical at 1 vs 8 workers; {elapsed:?}",
        summary.c37_refutations.len(),
        summary.c37_refutations[0]
    );
}

// Applicability tallies for the all-ones-strongness statement (3.14) over
// every pair (weak or not) of Z/3..Z/8 at sizes 2..4, frozen from
// independent brute force. The premise has no weak-condition requirement,
// so checking it honestly needs the unrestricted stream.
const C314_APPLICABLE_3_TO_8_ALL_PAIRS: u64 = 1056;

#[test]
fn all_ones_strongness_holds_without_the_weak_hypothesis() {
    let groups: Vec<GroupSpec> = (3..=8).map(cyclic).collect();
    let cfg = ScanConfig {
        require_weak: false,
        ..ScanConfig::new(groups, 2, 4)
    };
    let summary = harness::scan(&cfg, |_| {});
    // every ordered candidate pair of each size is evaluated
    assert_eq!(summary.pairs_scanned, 3 + 22 + 105 + 425 + 1540 + 4998);
    assert_eq!(summary.weak_pairs, 544);
    assert_eq!(summary.c314_applicable, C314_APPLICABLE_3_TO_8_ALL_PAIRS);
    assert!(summary.c314_counterexamples.is_empty());
    assert!(summary.c31_counterexamples.is_empty());
    assert!(summary.c21_counterexamples.is_empty());
}
