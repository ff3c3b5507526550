//! JSONL record files and CSV summaries.
//!
//! A record file is one header line, one line per `B`, and a trailing
//! summary line:
//!
//! ```text
//! {"header":{"k":2,"N":5,"x_bound":1000,"b_start":1,"version":"0.1.0"}}
//! {"B":5,"points":[[-1,7],[-1,-7]],"cube_free":true,"annotations":[...]}
//! {"summary":{"N":5,"curve_count":4,"point_sum":12,"point_sum_cubefree":12}}
//! ```

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{CensusRecord, CensusReport, PointAnnotation};
use crate::arith::cubefull_part;
use crate::mordell::MordellPoint;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Header {
    k: i64,
    #[serde(rename = "N")]
    n: u64,
    x_bound: i128,
    b_start: u64,
    version: String,
}

#[derive(Serialize, Deserialize)]
struct HeaderLine {
    header: Header,
}

#[derive(Serialize, Deserialize)]
struct RecordLine {
    #[serde(rename = "B")]
    b: u64,
    points: Vec<(i128, i128)>,
    cube_free: bool,
    annotations: Vec<PointAnnotation>,
}

/// The aggregate line of a record file, also one row of the CSV summary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    #[serde(rename = "N")]
    pub n: u64,
    pub curve_count: u64,
    pub point_sum: u64,
    pub point_sum_cubefree: u64,
}

#[derive(Serialize, Deserialize)]
struct SummaryLine {
    summary: CensusSummary,
}

pub fn write_jsonl<W: Write>(report: &CensusReport, mut w: W) -> Result<()> {
    let header = HeaderLine {
        header: Header {
            k: report.k,
            n: report.n,
            x_bound: report.x_bound,
            b_start: report.b_start,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
    };
    serde_json::to_writer(&mut w, &header)?;
    writeln!(w)?;
    for r in &report.records {
        let line = RecordLine {
            b: r.b,
            points: r.points.iter().map(|p| (p.x, p.y)).collect(),
            cube_free: r.cube_free,
            annotations: r.annotations.clone(),
        };
        serde_json::to_writer(&mut w, &line)?;
        writeln!(w)?;
    }
    serde_json::to_writer(&mut w, &SummaryLine { summary: report.summary() })?;
    writeln!(w)?;
    Ok(())
}

fn shard_err(msg: impl Into<String>) -> Error {
    Error::Shard(msg.into())
}

/// Parses a record file, re-checking every point against its curve and the
/// stored annotations and summary against the records.
pub fn read_jsonl<R: BufRead>(r: R) -> Result<CensusReport> {
    let mut lines = r.lines().filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
    let first = lines.next().ok_or_else(|| shard_err("empty file"))??;
    let header: HeaderLine = serde_json::from_str(&first)?;
    let h = header.header;
    let mut records = Vec::new();
    let mut summary = None;
    for line in lines {
        let line = line?;
        if summary.is_some() {
            return Err(shard_err("data after summary line"));
        }
        let value: serde_json::Value = serde_json::from_str(&line)?;
        if value.get("summary").is_some() {
            summary = Some(serde_json::from_value::<SummaryLine>(value)?.summary);
            continue;
        }
        let rec: RecordLine = serde_json::from_value(value)?;
        let points = rec
            .points
            .iter()
            .map(|&(x, y)| MordellPoint::new(h.k, rec.b, x, y))
            .collect::<Result<Vec<_>>>()?;
        let annotations = points
            .iter()
            .map(PointAnnotation::for_point)
            .collect::<Result<Vec<_>>>()?;
        if annotations != rec.annotations || rec.cube_free != (cubefull_part(rec.b) == 1) {
            return Err(shard_err(format!("annotations for B = {} do not match", rec.b)));
        }
        records.push(CensusRecord {
            b: rec.b,
            points,
            cube_free: rec.cube_free,
            annotations,
        });
    }
    let expected: Vec<u64> = (h.b_start..=h.n).collect();
    if records.iter().map(|r| r.b).collect::<Vec<_>>() != expected {
        return Err(shard_err("records do not cover the header range"));
    }
    let report = CensusReport::from_records(h.k, h.b_start, h.n, h.x_bound, records);
    match summary {
        Some(s) if s == report.summary() => Ok(report),
        Some(_) => Err(shard_err("summary does not match records")),
        None => Err(shard_err("missing summary line")),
    }
}

pub fn write_summary_csv<W: Write>(summaries: &[CensusSummary], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for s in summaries {
        out.serialize(s)?;
    }
    out.flush()?;
    Ok(())
}

/// Concatenates shards with equal `k` and `x_bound` whose `B`-ranges are
/// disjoint and together contiguous.
pub fn merge_shards(mut shards: Vec<CensusReport>) -> Result<CensusReport> {
    let first = shards.first().ok_or_else(|| shard_err("no shards"))?;
    let (k, x_bound) = (first.k, first.x_bound);
    if let Some(s) = shards.iter().find(|s| s.k != k || s.x_bound != x_bound) {
        return Err(shard_err(format!(
            "shard (k = {}, x_bound = {}) differs from (k = {k}, x_bound = {x_bound})",
            s.k, s.x_bound
        )));
    }
    shards.sort_by_key(|s| s.b_start);
    for w in shards.windows(2) {
        if w[0].n + 1 != w[1].b_start {
            return Err(shard_err(format!(
                "ranges {}..={} and {}..={} are not adjacent",
                w[0].b_start, w[0].n, w[1].b_start, w[1].n
            )));
        }
    }
    let b_start = shards[0].b_start;
    let n = shards.last().expect("nonempty").n;
    let records = shards.into_iter().flat_map(|s| s.records).collect();
    Ok(CensusReport::from_records(k, b_start, n, x_bound, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{curve_census, CensusConfig};

    #[test]
    fn record_line_shape() {
        let r = CensusConfig::new(2, 5, 100).with_range(5, 5).run().unwrap();
        let mut buf = Vec::new();
        write_jsonl(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with(r#"{"header":{"k":2,"N":5,"x_bound":100,"b_start":5,"#));
        assert!(lines[1].starts_with(r#"{"B":5,"points":[[-1,7],[-1,-7]"#), "{}", lines[1]);
        assert!(lines[1].contains(r#""cube_free":true"#));
        // x^3 + 3xy^2 + 14y^3 vanishes at (-2, 1)
        assert!(lines[1].contains(r#"{"g0":1,"g1":1,"reducible":true}"#), "{}", lines[1]);
        assert!(lines[2].starts_with(r#"{"summary":{"N":5,"#));
    }

    #[test]
    fn jsonl_round_trip() {
        let r = curve_census(-2, 30, 2000).unwrap();
        let mut buf = Vec::new();
        write_jsonl(&r, &mut buf).unwrap();
        assert_eq!(read_jsonl(&buf[..]).unwrap(), r);
    }

    #[test]
    fn tampered_file_is_rejected() {
        let r = curve_census(2, 5, 100).unwrap();
        let mut buf = Vec::new();
        write_jsonl(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap().replace("[-1,7]", "[-1,8]");
        assert!(read_jsonl(text.as_bytes()).is_err());
    }

    #[test]
    fn csv_summary() {
        let s = CensusSummary {
            n: 10,
            curve_count: 7,
            point_sum: 30,
            point_sum_cubefree: 20,
        };
        let mut buf = Vec::new();
        write_summary_csv(&[s], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "N,curve_count,point_sum,point_sum_cubefree\n10,7,30,20\n"
        );
    }

    #[test]
    fn merging_shards() {
        let whole = curve_census(2, 40, 3000).unwrap();
        let parts = vec![
            CensusConfig::new(2, 40, 3000).with_range(21, 40).run().unwrap(),
            CensusConfig::new(2, 20, 3000).run().unwrap(),
        ];
        assert_eq!(merge_shards(parts).unwrap(), whole);

        let gap = vec![
            CensusConfig::new(2, 10, 3000).run().unwrap(),
            CensusConfig::new(2, 40, 3000).with_range(12, 40).run().unwrap(),
        ];
        assert!(merge_shards(gap).is_err());
        let mixed = vec![
            CensusConfig::new(2, 10, 3000).run().unwrap(),
            CensusConfig::new(2, 20, 2000).with_range(11, 20).run().unwrap(),
        ];
        assert!(merge_shards(mixed).is_err());
    }
}
