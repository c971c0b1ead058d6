//! Exhaustive sweep over labeled graphs on a fixed vertex set.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::engine::{wlp_report, Characteristic, Failure, FailureMode, WlpReport};
use crate::error::{Error, Result};
use crate::flag::{Graph, Relabeler};
use crate::monomial::{Algebra, HilbertFunction};

pub const MIN_VERTICES: usize = 2;
pub const MAX_VERTICES: usize = 8;
const CHUNK: u64 = 512;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Bucket {
    #[serde(rename = "wlp")]
    Wlp,
    /// `A_1 -> A_2` has a kernel while `dim A_1 <= dim A_2`.
    #[serde(rename = "degree1-injectivity")]
    Degree1Injectivity,
    #[serde(rename = "exceptional")]
    Exceptional,
}

impl Bucket {
    pub fn of(report: &WlpReport) -> Bucket {
        if report.has_wlp {
            return Bucket::Wlp;
        }
        let degree_one = report.failures.iter().any(|f| {
            f.degree == 1 && matches!(f.mode, FailureMode::Injectivity | FailureMode::Both)
        });
        if degree_one && report.hilbert.get(1) <= report.hilbert.get(2) {
            Bucket::Degree1Injectivity
        } else {
            Bucket::Exceptional
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Bucket::Wlp => "wlp",
            Bucket::Degree1Injectivity => "degree1-injectivity",
            Bucket::Exceptional => "exceptional",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub num_vertices: usize,
    /// Keep one graph per isomorphism class (the one with minimal code).
    pub dedup: bool,
    pub max_edges: Option<usize>,
    pub jobs: usize,
    pub characteristic: Characteristic,
}

impl CensusOptions {
    pub fn new(num_vertices: usize) -> Self {
        CensusOptions {
            num_vertices,
            dedup: false,
            max_edges: None,
            jobs: default_jobs(),
            characteristic: Characteristic::Zero,
        }
    }
}

/// `LEFSCHETZ_JOBS` when set to a positive integer, else the available parallelism.
pub fn default_jobs() -> usize {
    std::env::var("LEFSCHETZ_JOBS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&j| j > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CensusRecord {
    pub code: u64,
    pub edges: usize,
    pub hilbert: HilbertFunction,
    pub wlp: bool,
    pub failures: Vec<Failure>,
    pub bucket: Bucket,
    /// Whether surjectivity, once reached, held in all later degrees.
    pub surjectivity_persists: bool,
    /// Labeled graphs in the isomorphism class; filled in only when deduplicating.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_size: Option<usize>,
}

fn record(n: usize, code: u64, ch: Characteristic) -> CensusRecord {
    let g = Graph::from_code(n, code);
    let report = wlp_report(&Algebra::new(g.to_ideal()).expect("flag ideals are Artinian"), ch);
    CensusRecord {
        code,
        edges: g.num_edges(),
        bucket: Bucket::of(&report),
        surjectivity_persists: report.surjectivity_persists(),
        hilbert: report.hilbert,
        wlp: report.has_wlp,
        failures: report.failures,
        orbit_size: None,
    }
}

fn sweep_chunk(opts: &CensusOptions, relabeler: Option<&Relabeler>, lo: u64, hi: u64) -> Vec<CensusRecord> {
    let n = opts.num_vertices;
    (lo..hi)
        .filter(|c| opts.max_edges.is_none_or(|m| c.count_ones() as usize <= m))
        .filter(|&c| relabeler.is_none_or(|r| r.canonical(c) == c))
        .map(|c| {
            let mut rec = record(n, c, opts.characteristic);
            rec.orbit_size = relabeler.map(|r| r.orbit_size(c));
            rec
        })
        .collect()
}

/// Every graph (or class representative) in code order, computed by
/// `opts.jobs` workers pulling fixed-size code ranges.
pub fn census(opts: &CensusOptions) -> Result<Vec<CensusRecord>> {
    let n = opts.num_vertices;
    if !(MIN_VERTICES..=MAX_VERTICES).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "census needs {MIN_VERTICES} to {MAX_VERTICES} vertices, got {n}"
        )));
    }
    let total = 1u64 << (n * (n - 1) / 2);
    let relabeler = opts.dedup.then(|| Relabeler::new(n));
    let next = AtomicU64::new(0);
    let done = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..opts.jobs.max(1) {
            s.spawn(|| loop {
                let lo = next.fetch_add(CHUNK, Ordering::Relaxed);
                if lo >= total {
                    break;
                }
                let part = sweep_chunk(opts, relabeler.as_ref(), lo, (lo + CHUNK).min(total));
                done.lock().expect("no worker panics while holding the lock").push((lo, part));
            });
        }
    });
    let mut parts = done.into_inner().expect("workers finished");
    parts.sort_unstable_by_key(|&(lo, _)| lo);
    Ok(parts.into_iter().flat_map(|(_, p)| p).collect())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ShapeCount {
    pub edges: usize,
    pub hilbert: HilbertFunction,
    pub graphs: usize,
    pub wlp: usize,
}

/// An isomorphism class met in the exceptional bucket.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ExceptionalClass {
    pub canonical_code: u64,
    pub edges: usize,
    pub hilbert: HilbertFunction,
    pub failures: Vec<Failure>,
    pub orbit_size: usize,
    /// Exceptional records in the sweep that belong to this class.
    pub seen: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CensusSummary {
    pub num_vertices: usize,
    pub records: usize,
    pub buckets: BTreeMap<Bucket, usize>,
    pub shapes: Vec<ShapeCount>,
    pub exceptional_classes: Vec<ExceptionalClass>,
    pub propagation_violations: usize,
}

pub fn summarize(n: usize, records: &[CensusRecord]) -> CensusSummary {
    let mut buckets: BTreeMap<Bucket, usize> =
        [Bucket::Wlp, Bucket::Degree1Injectivity, Bucket::Exceptional].into_iter().map(|b| (b, 0)).collect();
    let mut shapes: BTreeMap<(usize, Vec<usize>), ShapeCount> = BTreeMap::new();
    let mut classes: BTreeMap<u64, ExceptionalClass> = BTreeMap::new();
    let relabeler = Relabeler::new(n);
    for r in records {
        *buckets.entry(r.bucket).or_default() += 1;
        let shape = shapes.entry((r.edges, r.hilbert.values().to_vec())).or_insert_with(|| ShapeCount {
            edges: r.edges,
            hilbert: r.hilbert.clone(),
            graphs: 0,
            wlp: 0,
        });
        shape.graphs += 1;
        shape.wlp += usize::from(r.wlp);
        if r.bucket == Bucket::Exceptional {
            let canon = relabeler.canonical(r.code);
            classes
                .entry(canon)
                .or_insert_with(|| ExceptionalClass {
                    canonical_code: canon,
                    edges: r.edges,
                    hilbert: r.hilbert.clone(),
                    failures: r.failures.clone(),
                    orbit_size: relabeler.orbit_size(canon),
                    seen: 0,
                })
                .seen += 1;
        }
    }
    CensusSummary {
        num_vertices: n,
        records: records.len(),
        buckets,
        shapes: shapes.into_values().collect(),
        exceptional_classes: classes.into_values().collect(),
        propagation_violations: records.iter().filter(|r| !r.surjectivity_persists).count(),
    }
}

/// `code,edges,hilbert,wlp,bucket`, one row per record.
pub fn write_csv<W: Write>(records: &[CensusRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Parse(format!("csv output: {e}"));
    w.write_record(["code", "edges", "hilbert", "wlp", "bucket"]).map_err(io)?;
    for r in records {
        let hilbert = serde_json::to_string(&r.hilbert).expect("a list of integers serializes");
        w.write_record([
            r.code.to_string(),
            r.edges.to_string(),
            hilbert,
            r.wlp.to_string(),
            r.bucket.as_str().to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Parse(format!("csv output: {e}")))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(n: usize, jobs: usize) -> CensusOptions {
        CensusOptions { jobs, ..CensusOptions::new(n) }
    }

    #[test]
    fn three_vertices_all_have_wlp() {
        let recs = census(&opts(3, 1)).unwrap();
        assert_eq!(recs.len(), 8);
        assert!(recs.iter().all(|r| r.wlp && r.bucket == Bucket::Wlp));
    }

    #[test]
    fn parallel_matches_serial() {
        let serial = census(&opts(5, 1)).unwrap();
        let parallel = census(&opts(5, 4)).unwrap();
        assert_eq!(serial, parallel);
        assert_eq!(serial.len(), 1024);
        assert!(serial.windows(2).all(|w| w[0].code < w[1].code));
    }

    #[test]
    fn dedup_counts_classes() {
        let recs = census(&CensusOptions { dedup: true, ..opts(4, 2) }).unwrap();
        // 11 graphs on 4 vertices up to isomorphism, 64 labeled
        assert_eq!(recs.len(), 11);
        assert_eq!(recs.iter().map(|r| r.orbit_size.unwrap()).sum::<usize>(), 64);
    }

    #[test]
    fn four_vertex_buckets() {
        let recs = census(&opts(4, 2)).unwrap();
        let s = summarize(4, &recs);
        assert_eq!(s.propagation_violations, 0);
        assert_eq!(s.buckets.values().sum::<usize>(), 64);
        // C_4 fails in degree 1 with equal dimensions: the injectivity regime
        let c4 = Graph::cycle(4).unwrap().code();
        assert_eq!(recs.iter().find(|r| r.code == c4).unwrap().bucket, Bucket::Degree1Injectivity);
    }

    #[test]
    fn edge_filter() {
        let recs = census(&CensusOptions { max_edges: Some(1), ..opts(4, 1) }).unwrap();
        assert_eq!(recs.len(), 7);
    }

    #[test]
    fn csv_layout() {
        let recs = census(&opts(2, 1)).unwrap();
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "code,edges,hilbert,wlp,bucket\n0,0,\"[1,2]\",true,wlp\n1,1,\"[1,2,1]\",true,wlp\n");
    }

    #[test]
    fn vertex_bounds() {
        assert!(census(&opts(1, 1)).is_err());
        assert!(census(&opts(9, 1)).is_err());
    }
}
