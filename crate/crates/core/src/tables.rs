//! The published non-existence tables for `p in {2, 3, 5, 7}`, their
//! regeneration from the mod-p criterion, and an audit comparing the two.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::ops::RangeInclusive;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::{p_adic_valuation, PrimePowerField};
use crate::rules::{rule_mod_p, Conclusion, ParamSet};
use crate::volume::congruence_poly;

/// Published entries as `p,k,t` rows.
pub const PUBLISHED_TABLES_CSV: &str = include_str!("../data/tables.csv");

pub const DEFAULT_PRIMES: [u64; 4] = [2, 3, 5, 7];
pub const DEFAULT_K_RANGE: RangeInclusive<u32> = 1..=10;
pub const DEFAULT_T_RANGE: RangeInclusive<u32> = 2..=25;

#[derive(Debug, Deserialize)]
struct Row {
    p: u64,
    k: u32,
    t: u32,
}

/// Every published `(p, k, t)`.
pub fn published_entries() -> &'static BTreeSet<(u64, u32, u32)> {
    static ENTRIES: OnceLock<BTreeSet<(u64, u32, u32)>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        csv::Reader::from_reader(PUBLISHED_TABLES_CSV.as_bytes())
            .deserialize::<Row>()
            .map(|r| {
                let r = r.expect("embedded table is well-formed");
                (r.p, r.k, r.t)
            })
            .collect()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableStatus {
    /// Listed, and the criterion excludes it.
    Confirmed,
    /// Listed, but the criterion does not fire.
    PaperOnly,
    /// The criterion excludes it, but it is not listed.
    CriterionOnly,
    /// Neither listed nor excluded.
    Absent,
}

impl fmt::Display for TableStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableStatus::Confirmed => "Confirmed",
            TableStatus::PaperOnly => "PaperOnly",
            TableStatus::CriterionOnly => "CriterionOnly",
            TableStatus::Absent => "Absent",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub p: u64,
    pub k: u32,
    pub t: u32,
    pub in_paper: bool,
    pub criterion: Conclusion,
    pub status: TableStatus,
    /// `P(t, k)`
    pub poly: BigInt,
    /// `v_p(P(t, k))`, `None` when `P = 0`.
    pub valuation: Option<u32>,
}

fn classify(in_paper: bool, fires: bool) -> TableStatus {
    match (in_paper, fires) {
        (true, true) => TableStatus::Confirmed,
        (true, false) => TableStatus::PaperOnly,
        (false, true) => TableStatus::CriterionOnly,
        (false, false) => TableStatus::Absent,
    }
}

/// Smallest `n >= 2` with room for `d = 2k + 1` in `t` blocks; the mod-p
/// verdict does not depend on `n` or `alpha`.
fn representative(p: u64, k: u32, t: u32) -> Result<ParamSet> {
    let d = 2 * k + 1;
    let n = d.div_ceil(t).max(2);
    ParamSet::new(PrimePowerField::new(p, 1)?, n, t, d, None)
}

/// One entry per `(k, t)`, `k` outer.
pub fn regenerate_table(p: u64, k_range: RangeInclusive<u32>, t_range: RangeInclusive<u32>) -> Result<Vec<TableEntry>> {
    PrimePowerField::new(p, 1)?;
    if *t_range.start() == 0 {
        return Err(Error::InvalidParams("t must be positive".into()));
    }
    let listed = published_entries();
    let mut out = Vec::new();
    for k in k_range {
        for t in t_range.clone() {
            let verdict = rule_mod_p(&representative(p, k, t)?);
            let fires = verdict.conclusion == Conclusion::NonExistent;
            let in_paper = listed.contains(&(p, k, t));
            let poly = congruence_poly(u64::from(t), u64::from(k));
            out.push(TableEntry {
                p,
                k,
                t,
                in_paper,
                criterion: verdict.conclusion,
                status: classify(in_paper, fires),
                valuation: p_adic_valuation(&poly, p).ok(),
                poly,
            });
        }
    }
    Ok(out)
}

/// Classification of one `(p, k)` row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditRow {
    pub p: u64,
    pub k: u32,
    pub confirmed: Vec<u32>,
    pub paper_only: Vec<u32>,
    pub criterion_only: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
    /// Published entries outside the audited ranges.
    pub unclassified: Vec<(u64, u32, u32)>,
}

pub fn audit_report(primes: &[u64], k_range: RangeInclusive<u32>, t_range: RangeInclusive<u32>) -> Result<AuditReport> {
    let mut report = AuditReport::default();
    for &p in primes {
        let entries = regenerate_table(p, k_range.clone(), t_range.clone())?;
        for k in k_range.clone() {
            let pick = |s: TableStatus| -> Vec<u32> {
                entries.iter().filter(|e| e.k == k && e.status == s).map(|e| e.t).collect()
            };
            report.rows.push(AuditRow {
                p,
                k,
                confirmed: pick(TableStatus::Confirmed),
                paper_only: pick(TableStatus::PaperOnly),
                criterion_only: pick(TableStatus::CriterionOnly),
            });
        }
        report.unclassified.extend(
            published_entries()
                .iter()
                .filter(|&&(q, k, t)| q == p && !(k_range.contains(&k) && t_range.contains(&t))),
        );
    }
    Ok(report)
}

fn join(ts: &[u32]) -> String {
    ts.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

impl AuditReport {
    pub fn count(&self, status: TableStatus) -> usize {
        self.rows
            .iter()
            .map(|r| match status {
                TableStatus::Confirmed => r.confirmed.len(),
                TableStatus::PaperOnly => r.paper_only.len(),
                TableStatus::CriterionOnly => r.criterion_only.len(),
                TableStatus::Absent => 0,
            })
            .sum()
    }

    pub fn row(&self, p: u64, k: u32) -> Option<&AuditRow> {
        self.rows.iter().find(|r| r.p == p && r.k == k)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
        w.write_record([
            "p",
            "k",
            "confirmed",
            "paper_only",
            "criterion_only",
            "confirmed_t",
            "paper_only_t",
            "criterion_only_t",
        ])
        .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.p.to_string(),
                r.k.to_string(),
                r.confirmed.len().to_string(),
                r.paper_only.len().to_string(),
                r.criterion_only.len().to_string(),
                join(&r.confirmed),
                join(&r.paper_only),
                join(&r.criterion_only),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut last_p = None;
        for r in &self.rows {
            if last_p != Some(r.p) {
                if last_p.is_some() {
                    out.push('\n');
                }
                let _ = writeln!(out, "p = {}", r.p);
                last_p = Some(r.p);
            }
            let _ = writeln!(
                out,
                "  k = {:>2}  confirmed: [{}]  paper only: [{}]  criterion only: [{}]",
                r.k,
                join(&r.confirmed),
                join(&r.paper_only),
                join(&r.criterion_only)
            );
        }
        if !self.rows.is_empty() {
            let _ = writeln!(
                out,
                "\ntotals: {} confirmed, {} paper only, {} criterion only",
                self.count(TableStatus::Confirmed),
                self.count(TableStatus::PaperOnly),
                self.count(TableStatus::CriterionOnly)
            );
        }
        out
    }
}
