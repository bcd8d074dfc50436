use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use vipclass::classification::{FamilyRecord, SearchSpec, StatusCounts, TableRow};
use vipclass::covering::AlgebraicDatum;
use vipclass::decomposition::{eigensheaf_table, EigensheafDegrees};
use vipclass::invariants::{invariant_set, InvariantSet};
use vipclass::maps::{MapAnalysis, MapStatus};
use vipclass::Result;

#[derive(Serialize)]
pub struct MapReport {
    pub m: u32,
    #[serde(rename = "P_m")]
    pub p_m: u64,
    pub bpf: bool,
    pub separates_group: bool,
    pub separates_base: bool,
    pub status: &'static str,
    pub reason: Option<String>,
    pub normalization_flag: bool,
}

impl From<&MapAnalysis> for MapReport {
    fn from(a: &MapAnalysis) -> Self {
        MapReport {
            m: a.m,
            p_m: a.pluri_dimension,
            bpf: a.bpf,
            separates_group: a.separates_group,
            separates_base: a.separates_base,
            status: match a.status {
                MapStatus::Birational(_) => "birational",
                MapStatus::NonBirational(_) => "non-birational",
                MapStatus::Unknown => "unknown",
            },
            reason: a.status.reason().map(str::to_owned),
            normalization_flag: a.normalization_flag,
        }
    }
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub group: Vec<u32>,
    pub genera: Vec<u32>,
    pub invariants: InvariantSet,
    pub maps: Vec<MapReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigensheaves: Option<BTreeMap<u32, Vec<EigensheafDegrees>>>,
}

pub fn analyze(d: &AlgebraicDatum, m_range: &[u32], eigensheaves: bool) -> Result<AnalyzeReport> {
    let invariants = invariant_set(d)?;
    let record = vipclass::classification::analyze_family(d.clone(), m_range)?;
    let eigensheaves = if eigensheaves {
        Some(
            m_range
                .iter()
                .map(|&m| Ok((m, eigensheaf_table(d, m)?)))
                .collect::<Result<_>>()?,
        )
    } else {
        None
    };
    Ok(AnalyzeReport {
        group: d.group().invariant_factors().to_vec(),
        genera: invariants.genera.clone(),
        invariants,
        maps: record.analyses.values().map(MapReport::from).collect(),
        eigensheaves,
    })
}

#[derive(Serialize)]
pub struct ClassifyReport<'a> {
    pub search: &'a SearchSpec,
    pub families: usize,
    pub rows: &'a [TableRow],
    pub records: &'a [FamilyRecord],
}

pub const CSV_HEADER: [&str; 20] = [
    "group", "k1", "k2", "k3", "t1", "t2", "t3", "h30", "h20", "h10", "h11", "h21", "bpf1", "bir1", "nbir1",
    "unknown1", "bpf2", "bir2", "nbir2", "unknown2",
];

fn counts(c: Option<StatusCounts>) -> Vec<String> {
    match c {
        Some(c) => c.as_array().iter().map(u64::to_string).collect(),
        None => vec![String::new(); 4],
    }
}

pub fn row_fields(r: &TableRow) -> Vec<String> {
    let mut f = vec![r
        .group
        .invariant_factors()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")];
    f.extend(r.kernel_orders.iter().map(u32::to_string));
    f.extend(r.types.iter().map(|t| t.exponent_notation()));
    match r.hodge {
        Some(h) => {
            let (a, b, c, d, e) = h.as_tuple();
            f.extend([a, b, c, d, e].iter().map(u64::to_string));
        }
        None => f.extend(vec![String::new(); 5]),
    }
    f.extend(counts(r.canonical));
    f.extend(counts(r.bicanonical));
    f
}

pub fn write_csv(rows: &[TableRow], out: impl Write) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(row_fields(r))?;
    }
    w.flush()?;
    Ok(())
}
