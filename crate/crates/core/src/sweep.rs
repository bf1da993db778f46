//! Grid sweeps: enumerate specs in a fixed order, evaluate them in parallel,
//! and write the results atomically.

use std::fmt;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::Result;
use crate::invariants::{report, spin_check};
use crate::record::{write_csv, write_jsonl, OutputRecord};
use crate::spec::TwistSpec;

/// Inclusive integer interval, written `a..b` or a single `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> std::result::Result<Self, String> {
        if lo > hi {
            return Err(format!("empty interval {lo}..{hi}"));
        }
        Ok(Interval { lo, hi })
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for Interval {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad bound {t:?}: {e}"))
        };
        match s.split_once("..") {
            Some((a, b)) => Interval::new(parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                Interval::new(v, v)
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// Where the twist vectors of a sweep come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistSource {
    /// Fixed vectors; each is used only with the matching `n2`.
    Explicit(Vec<Vec<i64>>),
    /// Every vector with at most `max_nonzero` nonzero entries, each in
    /// `[-bound, bound]`.
    Generated { max_nonzero: usize, bound: i64 },
}

impl TwistSource {
    pub fn vectors(&self, n2: u32) -> Vec<Vec<i64>> {
        match self {
            TwistSource::Explicit(vs) => {
                let mut out: Vec<_> = vs
                    .iter()
                    .filter(|v| v.len() == n2 as usize)
                    .cloned()
                    .collect();
                out.sort();
                out.dedup();
                out
            }
            TwistSource::Generated { max_nonzero, bound } => {
                twist_vectors(n2 as usize, *max_nonzero, *bound)
            }
        }
    }
}

/// All length-`n2` vectors with at most `max_nonzero` nonzero entries drawn
/// from `[-bound, bound]`, sorted.
pub fn twist_vectors(n2: usize, max_nonzero: usize, bound: i64) -> Vec<Vec<i64>> {
    fn go(pos: usize, left: usize, bound: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in -bound..=bound {
            if v != 0 && left == 0 {
                continue;
            }
            cur[pos] = v;
            go(pos + 1, left - usize::from(v != 0), bound, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    go(0, max_nonzero, bound.max(0), &mut vec![0; n2], &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRange {
    pub n1: Interval,
    pub n2: Interval,
    pub twists: TwistSource,
    pub d1: Interval,
    pub d2: Interval,
    pub spin_only: bool,
}

impl SweepRange {
    /// Every spec in the range, in ascending `(n1, n2, twist, d1, d2)` order.
    /// Non-positive `n1`, `n2` are skipped.
    pub fn specs(&self) -> Vec<TwistSpec> {
        let mut out = Vec::new();
        for n1 in self.n1.iter().filter(|&n| n >= 1) {
            for n2 in self.n2.iter().filter(|&n| n >= 1) {
                let (n1, n2) = (n1 as u32, n2 as u32);
                for twist in self.twists.vectors(n2) {
                    for d1 in self.d1.iter() {
                        for d2 in self.d2.iter() {
                            let spec = TwistSpec::new(n1, n2, twist.clone(), d1, d2)
                                .expect("twist length matches n2 by construction");
                            if !self.spin_only || spin_check(&spec).is_spin() {
                                out.push(spec);
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

fn evaluate(spec: &TwistSpec, timing: bool) -> Result<OutputRecord> {
    let start = Instant::now();
    let mut record = OutputRecord::from_report(&report(spec)?);
    if timing {
        record.elapsed_us = Some(start.elapsed().as_micros() as u64);
    }
    Ok(record)
}

/// Runs `f` on `jobs` worker threads, or on the global pool when `None`.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Evaluates every spec; results come back in input order whatever the
/// thread count.
pub fn evaluate_all(
    specs: &[TwistSpec],
    jobs: Option<usize>,
    timing: bool,
) -> Result<Vec<OutputRecord>> {
    with_jobs(jobs, || {
        specs.par_iter().map(|s| evaluate(s, timing)).collect()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

impl OutputFormat {
    /// `.csv` means CSV; anything else is JSON lines.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => OutputFormat::Csv,
            _ => OutputFormat::Jsonl,
        }
    }
}

/// Writes to a temporary file beside `path` and renames it into place, so
/// readers never observe a partial file.
pub fn write_atomic(path: &Path, format: OutputFormat, records: &[OutputRecord]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut w = io::BufWriter::new(tmp.as_file_mut());
        match format {
            OutputFormat::Csv => write_csv(&mut w, records)?,
            OutputFormat::Jsonl => write_jsonl(&mut w, records)?,
        }
        w.flush()?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
