//! Wavefunction CSV and coefficient JSON formats.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{BasisParams, CoefficientExpansion, HermiteError, SampledWavefunction};

/// Reads `x,re,im` rows after the header.
pub fn read_wavefunction_csv<R: Read>(reader: R) -> Result<SampledWavefunction, HermiteError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| HermiteError::Parse(e.to_string()))?;
    if header.iter().collect::<Vec<_>>() != ["x", "re", "im"] {
        return Err(HermiteError::Parse(format!(
            "expected header x,re,im, got {}",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut grid = Vec::new();
    let mut values = Vec::new();
    for (i, row) in rdr.deserialize::<(f64, f64, f64)>().enumerate() {
        let (x, re, im) = row.map_err(|e| HermiteError::Parse(format!("row {}: {e}", i + 1)))?;
        grid.push(x);
        values.push(Complex64::new(re, im));
    }
    SampledWavefunction::new(grid, values)
}

pub fn write_wavefunction_csv<W: Write>(
    wf: &SampledWavefunction,
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "x,re,im")?;
    for (x, v) in wf.grid().iter().zip(wf.values()) {
        writeln!(
            out,
            "{},{},{}",
            format_float(*x),
            format_float(v.re),
            format_float(v.im)
        )?;
    }
    Ok(())
}

/// Shortest round-trip text, with negative zero written as `0.0`.
pub fn format_float(v: f64) -> String {
    ryu::Buffer::new().format(v + 0.0).to_owned()
}

#[derive(Serialize, Deserialize)]
struct CoefficientFile {
    #[serde(rename = "X")]
    x: f64,
    #[serde(rename = "P")]
    p: f64,
    #[serde(rename = "B")]
    b: f64,
    cutoff: usize,
    coeffs: Vec<[f64; 2]>,
}

pub fn read_coefficients<R: Read>(reader: R) -> Result<CoefficientExpansion, HermiteError> {
    let f: CoefficientFile =
        serde_json::from_reader(reader).map_err(|e| HermiteError::Parse(e.to_string()))?;
    if f.coeffs.len() != f.cutoff {
        return Err(HermiteError::Parse(format!(
            "cutoff {} but {} coefficients",
            f.cutoff,
            f.coeffs.len()
        )));
    }
    if f.coeffs.iter().flatten().any(|v| !v.is_finite()) {
        return Err(HermiteError::Parse("non-finite coefficient".into()));
    }
    let params = BasisParams::new(f.x, f.p, f.b)?;
    CoefficientExpansion::new(
        params,
        f.coeffs
            .iter()
            .map(|[r, i]| Complex64::new(*r, *i))
            .collect(),
    )
}

pub fn coefficients_json(e: &CoefficientExpansion) -> serde_json::Value {
    serde_json::to_value(CoefficientFile {
        x: e.params.x(),
        p: e.params.p(),
        b: e.params.b(),
        cutoff: e.cutoff(),
        coeffs: e.coeffs.iter().map(|c| [c.re + 0.0, c.im + 0.0]).collect(),
    })
    .expect("plain data serializes")
}

pub fn write_coefficients<W: Write>(e: &CoefficientExpansion, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, &coefficients_json(e))?;
    writeln!(out)
}
