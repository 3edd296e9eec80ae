use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use fracperm::families::{FracConjectureReport, TableRow, VerificationReport};
use serde::Serialize;

use crate::commands::frac_status;

/// A bad command line detected after parsing.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_json<T: Serialize + ?Sized>(out: Option<&Path>, value: &T) -> Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub const REPORT_COLUMNS: [&str; 13] = [
    "family",
    "p",
    "k",
    "l",
    "q",
    "conditions_hold",
    "exponents",
    "is_permutation",
    "method",
    "witness",
    "full_field",
    "status",
    "elapsed_ms",
];

fn enum_str<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|j| j.as_str().map(str::to_owned)).unwrap_or_default()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One row per report; list-valued cells are joined with `;`. Fractional
/// conjectures follow with method `subgroup`, l = 0 and no exponents.
pub fn write_csv_reports(
    out: Option<&Path>,
    reports: &[VerificationReport],
    fracs: &[FracConjectureReport],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink(out)?);
    w.write_record(REPORT_COLUMNS)?;
    for r in reports {
        w.write_record([
            r.family.clone(),
            r.p.to_string(),
            r.k.to_string(),
            r.l.to_string(),
            r.q.to_string(),
            r.conditions_hold.to_string(),
            opt(r.exponents.map(|e| format!("{};{};{}", e[0], e[1], e[2]))),
            r.is_permutation.to_string(),
            enum_str(&r.method),
            opt(r.witness.map(|(a, b)| format!("{a};{b}"))),
            opt(r.full_field),
            enum_str(&r.status),
            format!("{:.3}", r.elapsed_ms),
        ])?;
    }
    for f in fracs {
        w.write_record([
            f.id.clone(),
            "3".into(),
            f.k.to_string(),
            "0".into(),
            f.q.to_string(),
            f.condition_holds.to_string(),
            String::new(),
            f.permutes.to_string(),
            "subgroup".into(),
            opt(f.witness.map(|(a, b)| format!("{a};{b}"))),
            String::new(),
            enum_str(&frac_status(f)),
            String::new(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_table(out: Option<&Path>, rows: &[TableRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink(out)?);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
