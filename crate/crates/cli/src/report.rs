//! Report structures and their two renderings. The JSON form is the
//! serde serialization of these structs; the human form prints the same
//! numbers as `key value` lines so the two can be compared mechanically.

use std::fmt::Write as _;

use serde::Serialize;

use realh1::h1core::GaloisH1Result;
use realh1::torus::{RealTorus, TorusPart};
use realh1::Result;

fn small(n: u128) -> u64 {
    n.try_into().expect("counts here fit in 64 bits")
}

fn bits(v: &[u8]) -> String {
    if v.is_empty() {
        return "-".to_string();
    }
    v.iter().map(|&b| char::from(b'0' + (b & 1))).collect()
}

#[derive(Debug, Serialize)]
pub struct TorusReport {
    pub label: String,
    pub rank: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub points2_size: u64,
    pub h1_size: u64,
    pub lambda_kernel_size: u64,
    pub split_points2_size: u64,
    pub compact_points2_size: u64,
    pub intersection_size: u64,
}

pub fn torus_report(label: &str, torus: &RealTorus) -> Result<TorusReport> {
    let (p, q, r) = torus.lattice().decompose()?.multiplicities();
    let counts = torus.compact_intersection_counts();
    Ok(TorusReport {
        label: label.to_string(),
        rank: torus.rank(),
        p,
        q,
        r,
        points2_size: small(torus.points2().size()),
        h1_size: small(torus.h1().size()),
        lambda_kernel_size: small(torus.class_kernel_size()),
        split_points2_size: small(torus.part_points2_image(TorusPart::Split).size()),
        compact_points2_size: small(counts.compact_points2),
        intersection_size: small(counts.intersection),
    })
}

pub fn render_torus(report: &TorusReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "torus {}", report.label);
    let _ = writeln!(out, "  rank {}", report.rank);
    let _ = writeln!(out, "  p {}", report.p);
    let _ = writeln!(out, "  q {}", report.q);
    let _ = writeln!(out, "  r {}", report.r);
    let _ = writeln!(out, "  points2_size {}", report.points2_size);
    let _ = writeln!(out, "  h1_size {}", report.h1_size);
    let _ = writeln!(out, "  lambda_kernel_size {}", report.lambda_kernel_size);
    let _ = writeln!(out, "  split_points2_size {}", report.split_points2_size);
    let _ = writeln!(out, "  compact_points2_size {}", report.compact_points2_size);
    let _ = writeln!(out, "  intersection_size {}", report.intersection_size);
    out
}

#[derive(Debug, Serialize)]
pub struct GroupReport {
    pub label: String,
    pub rank: usize,
    pub h1_size: u64,
    pub w0_order: Option<u64>,
    pub representatives: Vec<Vec<u8>>,
    pub orbit_sizes: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub burnside: Option<u64>,
}

pub fn group_report(
    label: &str,
    rank: usize,
    result: &GaloisH1Result,
    burnside: Option<u128>,
) -> GroupReport {
    GroupReport {
        label: label.to_string(),
        rank,
        h1_size: small(result.cardinality),
        w0_order: result.w0_order.map(small),
        representatives: result.representatives.clone(),
        orbit_sizes: result.orbit_sizes.iter().map(|&s| small(s)).collect(),
        burnside: burnside.map(small),
    }
}

pub fn render_group(report: &GroupReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group {}", report.label);
    let _ = writeln!(out, "  rank {}", report.rank);
    let _ = writeln!(out, "  h1_size {}", report.h1_size);
    match report.w0_order {
        Some(order) => {
            let _ = writeln!(out, "  w0_order {order}");
        }
        None => {
            let _ = writeln!(out, "  w0_order unknown");
        }
    }
    for (rep, size) in report.representatives.iter().zip(&report.orbit_sizes) {
        let _ = writeln!(out, "  orbit {} size {}", bits(rep), size);
    }
    if let Some(b) = report.burnside {
        let _ = writeln!(out, "  burnside {b}");
    }
    out
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub label: String,
    pub rank: usize,
    pub h1_size: u64,
}

#[derive(Debug, Serialize)]
pub struct TableReport {
    pub series: String,
    pub rows: Vec<TableRow>,
}

pub fn render_table(report: &TableReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "compact forms, series {}", report.series);
    for row in &report.rows {
        let _ = writeln!(out, "  {} rank {} h1_size {}", row.label, row.rank, row.h1_size);
    }
    out
}

#[derive(Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub status: String,
    pub detail: String,
}

impl CheckLine {
    pub fn ok(name: &str, detail: impl Into<String>) -> CheckLine {
        CheckLine {
            name: name.to_string(),
            status: "ok".to_string(),
            detail: detail.into(),
        }
    }

    pub fn skipped(name: &str, detail: impl Into<String>) -> CheckLine {
        CheckLine {
            name: name.to_string(),
            status: "skipped".to_string(),
            detail: detail.into(),
        }
    }

    pub fn mismatch(name: &str, detail: impl Into<String>) -> CheckLine {
        CheckLine {
            name: name.to_string(),
            status: "mismatch".to_string(),
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub label: String,
    pub kind: String,
    pub checks: Vec<CheckLine>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != "mismatch")
    }
}

pub fn render_check(report: &CheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "check {} ({})", report.label, report.kind);
    for line in &report.checks {
        let _ = writeln!(out, "  {} {} {}", line.status, line.name, line.detail);
    }
    let _ = writeln!(
        out,
        "result {}",
        if report.passed() { "ok" } else { "mismatch" }
    );
    out
}
