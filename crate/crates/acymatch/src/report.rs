//! Report building and serialization: the per-pair analysis table in the
//! layout of the published acyclicity tables, plus line-delimited verdict
//! records for scans.
//!
//! All renderings of one report carry the same numeric content, and every
//! writer is deterministic byte-for-byte for fixed inputs. Timing is
//! serialized only on request so that scan outputs stay reproducible.

use std::io::{self, Write};

use serde::Serialize;

use crate::classify;
use crate::filter;
use crate::harness::{PairVerdict, VerdictStatus};
use crate::matching::{MatchError, MatchMode};
use crate::pair::SubsetPair;

/// One row of the matching table: label, rule, support, sequence plus the
/// classification flags.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ReportRow {
    pub matching: String,
    pub rule: String,
    pub support: Vec<String>,
    pub sequence: Vec<u32>,
    pub acyclic: bool,
    pub survivor: bool,
}

/// Full analysis of one pair in one mode.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub group: String,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    pub mode: String,
    pub n: usize,
    pub weak_ok: bool,
    pub violations: Vec<String>,
    pub matching_count: u64,
    pub rows: Vec<ReportRow>,
    pub c_values: Vec<u32>,
    pub t: usize,
    pub survivor_count: u64,
    pub survivors: Vec<String>,
    pub class_count: u64,
    pub acyclic_count: u64,
    pub all_ones_count: u64,
    pub acyclic_all_ones_count: u64,
    pub acyclically_matched: bool,
    pub strongly_acyclically_matched: bool,
}

pub fn violation_text(
    pair_spec: &crate::group::GroupSpec,
    v: &crate::pair::WeakViolation,
) -> String {
    format!(
        "{}+{}={}",
        pair_spec.element_display(&v.a),
        pair_spec.element_display(&v.b),
        pair_spec.element_display(&v.sum)
    )
}

/// Builds the table, filter trace and class summary for a pair. Refuses
/// (like every materializing analysis) when `n!` exceeds the cap.
pub fn build_report(
    pair: &SubsetPair,
    mode: MatchMode,
    cap: u64,
) -> Result<AnalysisReport, MatchError> {
    let spec = pair.spec();
    let classes = classify::classify(pair, mode, cap)?;
    let trace = filter::run_filter(pair, mode).ok();
    let survivor_set: Vec<_> = trace.iter().flat_map(|t| t.survivors.iter()).collect();

    let mut rows = Vec::new();
    for (idx, m) in pair.matchings(mode).enumerate() {
        let acyclic =
            classify::is_acyclic(pair, &m, &classes).expect("enumerated matchings are classified");
        rows.push(ReportRow {
            matching: format!("f{}", idx + 1),
            rule: pair.rule_text(&m),
            // display form: rank-1 elements print bare, higher ranks as (a,b)
            support: pair
                .support(&m)
                .iter()
                .map(|e| spec.element_display(e))
                .collect(),
            sequence: pair.acyclicity_sequence(&m).terms().to_vec(),
            acyclic,
            survivor: survivor_set.iter().any(|s| **s == m),
        });
    }

    let (weak_ok, violations) = pair.weak_condition();
    let n = pair.n();
    let matching_count = rows.len() as u64;
    let full_support = |c: &&classify::MultiplicityClass| c.fingerprint.len() == n;
    let acyclic_count = classes.iter().filter(|c| c.is_singleton()).count() as u64;
    let all_ones_count: u64 = classes
        .iter()
        .filter(full_support)
        .map(|c| c.members.len() as u64)
        .sum();
    let acyclic_all_ones_count = classes
        .iter()
        .filter(full_support)
        .filter(|c| c.is_singleton())
        .count() as u64;

    Ok(AnalysisReport {
        group: spec.to_string(),
        a: spec.set_text(pair.a()),
        b: spec.set_text(pair.b()),
        mode: mode.to_string(),
        n,
        weak_ok,
        violations: violations.iter().map(|v| violation_text(spec, v)).collect(),
        matching_count,
        rows,
        c_values: trace
            .as_ref()
            .map(|t| t.c_values.clone())
            .unwrap_or_default(),
        t: trace.as_ref().map(|t| t.t).unwrap_or(0),
        survivor_count: trace.as_ref().map(|t| t.survivor_count()).unwrap_or(0),
        survivors: trace
            .as_ref()
            .map(|t| t.survivors.iter().map(|m| pair.rule_text(m)).collect())
            .unwrap_or_default(),
        class_count: classes.len() as u64,
        acyclic_count,
        all_ones_count,
        acyclic_all_ones_count,
        acyclically_matched: acyclic_count > 0,
        strongly_acyclically_matched: matching_count > 0 && acyclic_count == matching_count,
    })
}

fn pad(s: &str, width: usize) -> String {
    format!("{s:<width$}")
}

/// Human-readable table in the layout matching / rule / support / sequence,
/// followed by the filter trace and class summary.
pub fn render_table(r: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("pair:  {} A={} B={}\n", r.group, r.a, r.b));
    out.push_str(&format!("mode:  {}\n", r.mode));
    if r.weak_ok {
        out.push_str("weak condition: ok (A and A+B are disjoint)\n");
    } else {
        out.push_str(&format!(
            "weak condition: VIOLATED ({})\n",
            r.violations.join(", ")
        ));
    }
    out.push_str(&format!("matchings: {}\n\n", r.matching_count));

    let headers = [
        "matching", "rule", "support", "sequence", "acyclic", "survivor",
    ];
    let cells: Vec<[String; 6]> = r
        .rows
        .iter()
        .map(|row| {
            [
                row.matching.clone(),
                row.rule.clone(),
                format!("{{{}}}", row.support.join(",")),
                row.sequence
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                if row.acyclic { "yes" } else { "no" }.into(),
                if row.survivor { "yes" } else { "no" }.into(),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |row: &[String]| -> String {
        row.iter()
            .zip(&widths)
            .map(|(c, &w)| pad(c, w))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    out.push_str(&line(&headers.map(String::from)));
    out.push('\n');
    for row in &cells {
        out.push_str(&line(row));
        out.push('\n');
    }

    out.push('\n');
    if r.matching_count == 0 {
        out.push_str("no matchings exist; filter not applicable\n");
    } else {
        out.push_str(&format!(
            "C values: {} (acyclicity index t = {})\n",
            r.c_values
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
            r.t
        ));
        out.push_str(&format!(
            "survivors ({}): {}\n",
            r.survivor_count,
            r.survivors.join("  ")
        ));
    }
    out.push_str(&format!(
        "classes: {} ({} singleton); all-ones matchings: {} ({} acyclic)\n",
        r.class_count, r.acyclic_count, r.all_ones_count, r.acyclic_all_ones_count
    ));
    out.push_str(&format!(
        "acyclically matched: {}; strongly acyclically matched: {}\n",
        if r.acyclically_matched { "yes" } else { "no" },
        if r.strongly_acyclically_matched {
            "yes"
        } else {
            "no"
        }
    ));
    out
}

/// Pretty JSON with the same content as the table rendering.
pub fn render_json(r: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serialization cannot fail");
    s.push('\n');
    s
}

fn csv_escape(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// CSV rendering of the matching table with a header row.
pub fn render_csv(r: &AnalysisReport) -> String {
    let mut out = String::from("matching,rule,support,sequence,acyclic,survivor\n");
    for row in &r.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_escape(&row.matching),
            csv_escape(&row.rule),
            csv_escape(&row.support.join(";")),
            csv_escape(
                &row.sequence
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            row.acyclic,
            row.survivor,
        ));
    }
    out
}

/// The line-delimited verdict record. Field order is part of the format.
#[derive(Serialize)]
struct VerdictRecord {
    group: String,
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
    mode: String,
    n: usize,
    matching_count: u64,
    c_values: Vec<u32>,
    t: usize,
    survivor_count: u64,
    acyclic_count: u64,
    all_ones_count: u64,
    weak_ok: bool,
    c31: Option<bool>,
    c37: Option<bool>,
    c314: Option<bool>,
    thm35: Option<bool>,
    violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    status: Option<String>,
}

fn record_of(v: &PairVerdict, include_timings: bool) -> VerdictRecord {
    VerdictRecord {
        group: v.spec.to_string(),
        a: v.spec.set_text(&v.a),
        b: v.spec.set_text(&v.b),
        mode: v.mode.to_string(),
        n: v.n,
        matching_count: v.matching_count,
        c_values: v.c_values.clone(),
        t: v.t,
        survivor_count: v.survivor_count,
        acyclic_count: v.acyclic_count,
        all_ones_count: v.all_ones_count,
        weak_ok: v.weak_ok,
        c31: v.c31,
        c37: v.c37,
        c314: v.c314,
        thm35: v.thm35,
        violations: v
            .violations
            .iter()
            .map(|w| violation_text(&v.spec, w))
            .collect(),
        elapsed_ms: include_timings.then_some(v.elapsed_ms),
        status: match &v.status {
            VerdictStatus::Ok => None,
            VerdictStatus::SkippedCap { .. } => Some("skipped: cap".to_string()),
        },
    }
}

/// One JSON line per verdict.
pub fn verdict_json_line(v: &PairVerdict, include_timings: bool) -> String {
    serde_json::to_string(&record_of(v, include_timings))
        .expect("verdict serialization cannot fail")
}

pub fn write_verdict_line(
    out: &mut impl Write,
    v: &PairVerdict,
    include_timings: bool,
) -> io::Result<()> {
    out.write_all(verdict_json_line(v, include_timings).as_bytes())?;
    out.write_all(b"\n")
}

pub const VERDICT_CSV_HEADER: &str = "group,A,B,mode,n,matching_count,c_values,t,survivor_count,acyclic_count,all_ones_count,weak_ok,c31,c37,c314,thm35,violations";

fn opt_bool(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "na",
    }
}

/// One CSV line per verdict, matching [`VERDICT_CSV_HEADER`].
pub fn verdict_csv_line(v: &PairVerdict) -> String {
    let r = record_of(v, false);
    [
        csv_escape(&r.group),
        csv_escape(&r.a),
        csv_escape(&r.b),
        r.mode,
        r.n.to_string(),
        r.matching_count.to_string(),
        csv_escape(
            &r.c_values
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ),
        r.t.to_string(),
        r.survivor_count.to_string(),
        r.acyclic_count.to_string(),
        r.all_ones_count.to_string(),
        r.weak_ok.to_string(),
        opt_bool(r.c31).to_string(),
        opt_bool(r.c37).to_string(),
        opt_bool(r.c314).to_string(),
        opt_bool(r.thm35).to_string(),
        csv_escape(&r.violations.join(";")),
    ]
    .join(",")
}
