//! Rectangular grids in one coordinate with the other two fixed.

use std::io::Write;

use lerch::continuation::{classify, evaluate_on_cover};
use lerch::{BranchState, Complex64, Point3};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{fmt17, CliError, Num};

/// CSV header, fixed.
pub const CSV_HEADER: [&str; 6] = ["coord_re", "coord_im", "z_re", "z_im", "abs_err", "method"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    S,
    A,
    C,
}

/// `steps` equally spaced values from `lo` to `hi`; a single step gives `lo`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.lo + (self.hi - self.lo) * (i as f64) / last).collect()
    }
}

#[derive(Debug, Clone)]
pub struct GridSpec {
    pub axis: Axis,
    pub re: Range,
    pub im: Range,
    /// Base point; the coordinate on `axis` is replaced.
    pub fixed: Point3<f64>,
    pub branch: BranchState,
    pub tol: f64,
}

/// One evaluated grid point; `value` is `None` for skipped points.
#[derive(Debug, Clone)]
pub struct Row {
    pub coord: Complex64,
    pub value: Option<(Complex64, f64)>,
    pub method: String,
}

impl GridSpec {
    /// Points in row-major order: imaginary part outer, real part inner.
    pub fn points(&self) -> Vec<(Complex64, Point3<f64>)> {
        let mut out = Vec::with_capacity(self.re.steps * self.im.steps);
        for y in self.im.values() {
            for x in self.re.values() {
                let z = Complex64::new(x, y);
                let mut p = self.fixed;
                match self.axis {
                    Axis::S => p.s = z,
                    Axis::A => p.a = z,
                    Axis::C => p.c = z,
                }
                out.push((z, p));
            }
        }
        out
    }

    fn row(&self, coord: Complex64, p: &Point3<f64>) -> Row {
        let result = classify(p).and_then(|tag| Ok((tag, evaluate_on_cover(p, &self.branch, self.tol)?)));
        match result {
            Ok((tag, v)) => Row { coord, value: Some((v.value, v.abs_err)), method: tag.as_str().to_string() },
            Err(_) => Row { coord, value: None, method: "skipped".to_string() },
        }
    }

    /// Evaluates every point in parallel; rows keep grid order.
    pub fn evaluate(&self) -> Vec<Row> {
        self.points().par_iter().map(|(z, p)| self.row(*z, p)).collect()
    }
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io(format!("csv output: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        let (zr, zi, err) = match r.value {
            Some((z, e)) => (fmt17(z.re), fmt17(z.im), fmt17(e)),
            None => (String::new(), String::new(), String::new()),
        };
        w.write_record([fmt17(r.coord.re), fmt17(r.coord.im), zr, zi, err, r.method.clone()]).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(format!("csv output: {e}")))
}

#[derive(Serialize)]
struct JsonRow<'a> {
    coord_re: Num,
    coord_im: Num,
    z_re: Option<Num>,
    z_im: Option<Num>,
    abs_err: Option<Num>,
    method: &'a str,
}

pub fn write_json<W: Write>(rows: &[Row], mut out: W) -> Result<(), CliError> {
    let recs: Vec<JsonRow> = rows
        .iter()
        .map(|r| JsonRow {
            coord_re: Num(r.coord.re),
            coord_im: Num(r.coord.im),
            z_re: r.value.map(|v| Num(v.0.re)),
            z_im: r.value.map(|v| Num(v.0.im)),
            abs_err: r.value.map(|v| Num(v.1)),
            method: &r.method,
        })
        .collect();
    let text = serde_json::to_string_pretty(&recs).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| CliError::Io(format!("json output: {e}")))
}
