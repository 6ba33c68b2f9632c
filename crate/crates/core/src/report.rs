//! CSV and JSON report emission.
//!
//! CSV carries the data (one row per checkpoint, documented headers); the
//! JSON variant wraps the same report in run metadata (rep string, bounds,
//! seed, data provenance). Floats are printed with the shortest
//! round-trip representation, so identical runs produce identical bytes.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::experiments::{DecayReport, MaassBoundReport, MertensReport};
use crate::sieve::PartialSumSeries;

pub const TOOL_NAME: &str = "mupi";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct MaassProvenance {
    pub id: String,
    pub path: String,
    pub spectral_r: f64,
}

/// Run metadata attached to JSON reports.
#[derive(Clone, Debug, Serialize)]
pub struct RunMeta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rep: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_max: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    /// mu vanishes off (degree+1)-th power-free integers
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power_free_support: Option<u64>,
    pub seed: u64,
    pub threads: String,
    pub checkpoints: Vec<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub maass_data: Vec<MaassProvenance>,
}

impl RunMeta {
    pub fn new(command: &str) -> Self {
        RunMeta {
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            command: command.to_string(),
            rep: None,
            n: None,
            x_max: None,
            degree: None,
            power_free_support: None,
            seed: 0,
            threads: "auto".to_string(),
            checkpoints: Vec::new(),
            maass_data: Vec::new(),
        }
    }
}

/// JSON envelope: metadata plus the report payload.
pub fn write_json<T: Serialize>(w: &mut dyn Write, meta: &RunMeta, data: &T) -> Result<()> {
    #[derive(Serialize)]
    struct Envelope<'a, T> {
        meta: &'a RunMeta,
        data: &'a T,
    }
    serde_json::to_writer_pretty(&mut *w, &Envelope { meta, data })
        .map_err(|e| crate::error::Error::internal(format!("json: {e}")))?;
    writeln!(w)?;
    Ok(())
}

pub fn write_partial_sums_csv(w: &mut dyn Write, s: &PartialSumSeries) -> Result<()> {
    writeln!(w, "x,{}", s.kind.name())?;
    for &(x, v) in &s.points {
        writeln!(w, "{x},{v}")?;
    }
    Ok(())
}

/// `x,abs_sum,ratio` plus the series kind column layout used by `mobius`.
pub fn write_abs_sums_csv(w: &mut dyn Write, s: &PartialSumSeries) -> Result<()> {
    writeln!(w, "x,abs_sum,ratio")?;
    for &(x, v) in &s.points {
        writeln!(w, "{x},{v},{}", v / x as f64)?;
    }
    Ok(())
}

pub fn write_mertens_csv(w: &mut dyn Write, r: &MertensReport) -> Result<()> {
    writeln!(w, "x,sum,loglog_x,drift")?;
    for p in &r.points {
        match p.drift {
            Some(d) => writeln!(w, "{},{},{},{}", p.x, p.sum, p.loglog_x, d)?,
            None => writeln!(w, "{},{},{},", p.x, p.sum, p.loglog_x)?,
        }
    }
    Ok(())
}

pub fn write_decay_csv(w: &mut dyn Write, r: &DecayReport) -> Result<()> {
    writeln!(w, "x,abs_sum,ratio,weighted")?;
    for p in &r.points {
        writeln!(w, "{},{},{},{}", p.x, p.abs_sum, p.ratio, p.weighted)?;
    }
    Ok(())
}

pub fn write_maass_bound_csv(w: &mut dyn Write, r: &MaassBoundReport) -> Result<()> {
    writeln!(w, "x,sum_abs_over_p,bound,margin")?;
    for p in &r.points {
        writeln!(w, "{},{},{},{}", p.x, p.sum_abs_over_p, p.bound, p.margin)?;
    }
    Ok(())
}
