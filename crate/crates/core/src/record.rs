//! Serialisable form of an [`InvariantReport`]: one JSON object or one
//! flattened CSV row per hypersurface.
//!
//! Big integers and rationals travel as decimal strings so nothing is lost
//! past 64 bits. Inputs (`n1`, `n2`, `twist`, `d1`, `d2`) stay numeric.

use std::io;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::invariants::{InvariantReport, KoClass};
use crate::spec::TwistSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaRecord {
    pub n_mod_8: u8,
    /// `"Z"`, `"Z2"` or `"0"`.
    pub group: String,
    /// Absent for the trivial group.
    pub value: Option<String>,
}

impl From<&KoClass> for AlphaRecord {
    fn from(k: &KoClass) -> Self {
        AlphaRecord {
            n_mod_8: k.n_mod_8(),
            group: k.group().as_str().to_string(),
            value: k.value_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionsRecord {
    pub simply_connected_assumed: bool,
    pub dim_ge_5: bool,
}

/// Field order here is the serialised order and is part of the format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n1: u32,
    pub n2: u32,
    pub twist: Vec<i64>,
    pub d1: i64,
    pub d2: i64,
    pub dim_real: u64,
    pub spin: bool,
    pub k1: Option<String>,
    pub k2: Option<String>,
    pub sigma1: String,
    pub sigma2: String,
    pub a_hat: String,
    /// `null` when the hypersurface is not spin.
    pub alpha: Option<AlphaRecord>,
    /// `"exists"`, `"obstructed"` or `"inapplicable"`.
    pub psc: String,
    pub no_circle_action: bool,
    pub assumptions: AssumptionsRecord,
    /// Wall-clock evaluation time; only present when requested, since it
    /// would otherwise break byte-identical output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

impl OutputRecord {
    pub fn from_report(r: &InvariantReport) -> Self {
        let (k1, k2) = match r.spin.ks() {
            Some((k1, k2)) => (Some(k1.to_string()), Some(k2.to_string())),
            None => (None, None),
        };
        OutputRecord {
            n1: r.spec.n1(),
            n2: r.spec.n2(),
            twist: r.spec.twist().to_vec(),
            d1: r.spec.d1(),
            d2: r.spec.d2(),
            dim_real: r.dim_real,
            spin: r.spin.is_spin(),
            k1,
            k2,
            sigma1: r.sigma1.to_string(),
            sigma2: r.sigma2.to_string(),
            a_hat: r.a_hat.to_string(),
            alpha: r.alpha.as_ref().map(AlphaRecord::from),
            psc: r.psc.as_str().to_string(),
            no_circle_action: r.no_circle_action,
            assumptions: AssumptionsRecord {
                simply_connected_assumed: r.assumptions.simply_connected_assumed,
                dim_ge_5: r.assumptions.dim_ge_5,
            },
            elapsed_us: None,
        }
    }

    pub fn spec(&self) -> Result<TwistSpec> {
        TwistSpec::new(self.n1, self.n2, self.twist.clone(), self.d1, self.d2)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record is always serialisable")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_csv_row(&self) -> CsvRow {
        let alpha = self.alpha.as_ref();
        CsvRow {
            n1: self.n1,
            n2: self.n2,
            twist: self
                .twist
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(";"),
            d1: self.d1,
            d2: self.d2,
            dim_real: self.dim_real,
            spin: self.spin,
            k1: self.k1.clone(),
            k2: self.k2.clone(),
            sigma1: self.sigma1.clone(),
            sigma2: self.sigma2.clone(),
            a_hat: self.a_hat.clone(),
            alpha_n_mod_8: alpha.map(|a| a.n_mod_8),
            alpha_group: alpha.map(|a| a.group.clone()),
            alpha_value: alpha.and_then(|a| a.value.clone()),
            psc: self.psc.clone(),
            no_circle_action: self.no_circle_action,
            simply_connected_assumed: self.assumptions.simply_connected_assumed,
            dim_ge_5: self.assumptions.dim_ge_5,
        }
    }
}

/// [`OutputRecord`] flattened for CSV. The twist vector is `;`-separated;
/// an absent α leaves the three `alpha_*` columns empty. Timing is not
/// carried.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub n1: u32,
    pub n2: u32,
    pub twist: String,
    pub d1: i64,
    pub d2: i64,
    pub dim_real: u64,
    pub spin: bool,
    pub k1: Option<String>,
    pub k2: Option<String>,
    pub sigma1: String,
    pub sigma2: String,
    pub a_hat: String,
    pub alpha_n_mod_8: Option<u8>,
    pub alpha_group: Option<String>,
    pub alpha_value: Option<String>,
    pub psc: String,
    pub no_circle_action: bool,
    pub simply_connected_assumed: bool,
    pub dim_ge_5: bool,
}

pub const CSV_HEADER: [&str; 19] = [
    "n1",
    "n2",
    "twist",
    "d1",
    "d2",
    "dim_real",
    "spin",
    "k1",
    "k2",
    "sigma1",
    "sigma2",
    "a_hat",
    "alpha_n_mod_8",
    "alpha_group",
    "alpha_value",
    "psc",
    "no_circle_action",
    "simply_connected_assumed",
    "dim_ge_5",
];

impl CsvRow {
    pub fn to_record(&self) -> std::result::Result<OutputRecord, String> {
        let twist = if self.twist.is_empty() {
            Vec::new()
        } else {
            self.twist
                .split(';')
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|e| format!("twist entry {t:?}: {e}"))
                })
                .collect::<std::result::Result<_, _>>()?
        };
        let alpha = match (self.alpha_n_mod_8, &self.alpha_group) {
            (Some(n), Some(g)) => Some(AlphaRecord {
                n_mod_8: n,
                group: g.clone(),
                value: self.alpha_value.clone(),
            }),
            (None, None) => None,
            _ => return Err("alpha_n_mod_8 and alpha_group must both be set or both empty".into()),
        };
        Ok(OutputRecord {
            n1: self.n1,
            n2: self.n2,
            twist,
            d1: self.d1,
            d2: self.d2,
            dim_real: self.dim_real,
            spin: self.spin,
            k1: self.k1.clone(),
            k2: self.k2.clone(),
            sigma1: self.sigma1.clone(),
            sigma2: self.sigma2.clone(),
            a_hat: self.a_hat.clone(),
            alpha,
            psc: self.psc.clone(),
            no_circle_action: self.no_circle_action,
            assumptions: AssumptionsRecord {
                simply_connected_assumed: self.simply_connected_assumed,
                dim_ge_5: self.dim_ge_5,
            },
            elapsed_us: None,
        })
    }
}

fn csv_writer<W: io::Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

/// Writes the header and one row per record; an empty slice yields a
/// header-only file.
pub fn write_csv<W: io::Write>(w: W, records: &[OutputRecord]) -> io::Result<()> {
    let mut wr = csv_writer(w);
    wr.write_record(CSV_HEADER)?;
    for r in records {
        wr.serialize(r.to_csv_row())?;
    }
    wr.flush()
}

pub fn read_csv<R: io::Read>(r: R) -> std::result::Result<Vec<OutputRecord>, String> {
    let mut rd = csv::Reader::from_reader(r);
    let header: Vec<String> = rd
        .headers()
        .map_err(|e| e.to_string())?
        .iter()
        .map(str::to_string)
        .collect();
    if header != CSV_HEADER {
        return Err(format!("unexpected CSV header {header:?}"));
    }
    rd.deserialize::<CsvRow>()
        .map(|row| row.map_err(|e| e.to_string())?.to_record())
        .collect()
}

/// One compact JSON object per line.
pub fn write_jsonl<W: io::Write>(mut w: W, records: &[OutputRecord]) -> io::Result<()> {
    for r in records {
        writeln!(w, "{}", r.to_json())?;
    }
    w.flush()
}
