//! File formats shared by the command-line tools.
//!
//! * signals: CSV rows `x, w, qw, qx, qy, qz` (node, weight, sample);
//! * kernel tables: CSV rows `x, y, Re, I-part, unit-x, unit-y, unit-z`;
//! * series coefficients: JSON array of `[w, x, y, z]` quadruples.
//!
//! Reals are written with 17 significant digits, which round-trips `f64`
//! exactly.

use std::io::{Read, Write};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hilbert::{build_rule, GaussLaguerreRule, RadialSignal};
use crate::quaternion::{ImaginaryUnit, Quaternion};

pub const SIGNAL_HEADER: [&str; 6] = ["x", "w", "qw", "qx", "qy", "qz"];
pub const KERNEL_HEADER: [&str; 7] = ["x", "y", "Re", "I-part", "unit-x", "unit-y", "unit-z"];

/// Relative tolerance when matching stored nodes against a rebuilt rule.
const NODE_MATCH_TOL: f64 = 1e-12;

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("{other:?}")),
    }
}

pub fn write_signal<W: Write>(out: W, f: &RadialSignal) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SIGNAL_HEADER).map_err(csv_err)?;
    let rule = f.rule();
    for ((&x, &wt), q) in rule.nodes().iter().zip(rule.weights()).zip(f.values()) {
        w.write_record([fmt(x), fmt(wt), fmt(q.w), fmt(q.x), fmt(q.y), fmt(q.z)])
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a signal and rebuilds its rule from `alpha` and the row count.
///
/// Fails unless the stored nodes are those of the rebuilt rule.
pub fn read_signal<R: Read>(input: R, alpha: f64) -> Result<RadialSignal> {
    let rows = read_rows(input, SIGNAL_HEADER.len())?;
    if rows.is_empty() {
        return Err(Error::Parse("signal file has no rows".into()));
    }
    let rule = Arc::new(build_rule(alpha, rows.len())?);
    check_nodes(&rule, rows.iter().map(|r| r[0]))?;
    let values = rows.iter().map(|r| Quaternion::new(r[2], r[3], r[4], r[5])).collect();
    RadialSignal::new(rule, values)
}

fn check_nodes(rule: &GaussLaguerreRule, xs: impl Iterator<Item = f64>) -> Result<()> {
    for (i, (x, &node)) in xs.zip(rule.nodes()).enumerate() {
        if (x - node).abs() > NODE_MATCH_TOL * node.max(1.0) {
            return Err(Error::ConfigMismatch(format!(
                "row {i}: node {x} is not node {node} of the {}-point rule for alpha = {}",
                rule.count(),
                rule.alpha()
            )));
        }
    }
    Ok(())
}

fn read_rows<R: Read>(input: R, width: usize) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input);
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        if line == 0 && rec.get(0).is_some_and(|s| s.parse::<f64>().is_err()) {
            continue;
        }
        if rec.len() != width {
            return Err(Error::Parse(format!(
                "line {}: expected {width} fields, found {}",
                line + 1,
                rec.len()
            )));
        }
        let row = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("line {}: {s:?} is not a number", line + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// One kernel value `re + im·unit` at `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelRow {
    pub x: f64,
    pub y: f64,
    pub re: f64,
    pub im: f64,
    pub unit: ImaginaryUnit,
}

impl KernelRow {
    /// Splits `v` along `unit`; `v` must lie in `ℂ_unit`.
    pub fn new(x: f64, y: f64, v: Quaternion, unit: ImaginaryUnit) -> Self {
        let c = unit.project(&v);
        KernelRow { x, y, re: c.re, im: c.im, unit }
    }

    pub fn value(&self) -> Quaternion {
        self.unit.embed(num_complex::Complex64::new(self.re, self.im))
    }
}

pub fn write_kernel_table<W: Write>(out: W, rows: &[KernelRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(KERNEL_HEADER).map_err(csv_err)?;
    for r in rows {
        let u = r.unit.as_quaternion();
        w.write_record([fmt(r.x), fmt(r.y), fmt(r.re), fmt(r.im), fmt(u.x), fmt(u.y), fmt(u.z)])
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_kernel_table<R: Read>(input: R) -> Result<Vec<KernelRow>> {
    read_rows(input, KERNEL_HEADER.len())?
        .into_iter()
        .map(|r| {
            Ok(KernelRow {
                x: r[0],
                y: r[1],
                re: r[2],
                im: r[3],
                unit: ImaginaryUnit::new([r[4], r[5], r[6]])?,
            })
        })
        .collect()
}

pub fn write_coeffs<W: Write>(mut out: W, coeffs: &[Quaternion]) -> Result<()> {
    serde_json::to_writer(&mut out, coeffs).map_err(|e| Error::Parse(e.to_string()))?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn read_coeffs<R: Read>(input: R) -> Result<Vec<Quaternion>> {
    serde_json::from_reader(input).map_err(|e| Error::Parse(format!("coefficient file: {e}")))
}
