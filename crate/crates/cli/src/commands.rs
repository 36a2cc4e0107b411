use std::path::{Path, PathBuf};

use lct_core::fock_rep::{
    dispersion_matrices, ladder_matrices, quadrature_matrices, sigma_operators, TruncatedOperator,
};
use lct_core::hermite_basis::{
    coefficients_json, dispersion_estimate, format_float, phi, project, read_wavefunction_csv,
    synthesize, uniform_grid, write_wavefunction_csv, BasisParams, CoefficientExpansion,
    SampledWavefunction,
};
use lct_core::metaplectic_rep::{build_unitary, MIN_UNITARY_CUTOFF};
use lct_core::metric::Metric;
use lct_core::symplectic_group::{exp_sl2, exp_sp, from_angles, AnglesInput, ThetaAngles};
use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::args::{
    BasisArgs, DispersionArgs, ExpmapArgs, Format, Operator, RepArgs, TransformArgs,
};
use crate::output::{clean, csv_table, format_or, read_input, Rendered};
use crate::{CliError, CliResult, Outcome};

pub fn parse_list<const K: usize>(s: &str, what: &str) -> CliResult<[f64; K]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != K {
        return Err(CliError(format!(
            "{what}: expected {K} comma-separated numbers, got {s:?}"
        )));
    }
    let mut out = [0.0; K];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| CliError(format!("{what}: {p:?} is not a finite number")))?;
    }
    Ok(out)
}

fn wavefunction_json(wf: &SampledWavefunction) -> Value {
    json!({
        "x": wf.grid(),
        "re": wf.values().iter().map(|v| clean(v.re)).collect::<Vec<_>>(),
        "im": wf.values().iter().map(|v| clean(v.im)).collect::<Vec<_>>(),
    })
}

fn wavefunction_csv(wf: &SampledWavefunction) -> String {
    let mut buf = Vec::new();
    write_wavefunction_csv(wf, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("formatted numbers are ASCII")
}

fn read_wavefunction(path: &Path) -> CliResult<SampledWavefunction> {
    Ok(read_wavefunction_csv(&read_input(path)?[..])?)
}

pub fn basis(a: &BasisArgs, format: Option<Format>) -> CliResult<Outcome> {
    let params = BasisParams::new(a.params.x, a.params.p, a.params.b)?;
    let grid = match &a.grid {
        Some(g) => {
            let [lo, hi, count] = parse_list::<3>(g, "--grid")?;
            if count < 2.0 || count.fract() != 0.0 || hi <= lo {
                return Err(CliError(format!(
                    "--grid: need lo < hi and an integer count ≥ 2, got {g:?}"
                )));
            }
            uniform_grid(lo, hi, count as usize)
        }
        None => {
            // the n-th function lives inside |x − X| ≲ √(2(2n+1)𝒜)
            let half = (12.0 + 2.0 * (2.0 * a.n as f64 + 1.0).sqrt()) * params.a().sqrt();
            uniform_grid(params.x() - half, params.x() + half, 801)
        }
    };
    let wf = SampledWavefunction::from_fn(grid, |x| phi(a.n, x, &params))?;
    let rendered = match format_or(format, Format::Csv) {
        Format::Csv => Rendered::Csv(wavefunction_csv(&wf)),
        Format::Json => {
            let mut v = wavefunction_json(&wf);
            v["n"] = json!(a.n);
            v["X"] = json!(params.x());
            v["P"] = json!(params.p());
            v["B"] = json!(params.b());
            Rendered::Json(v)
        }
    };
    Ok(Outcome::ok(rendered))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TransformSpec {
    #[serde(rename = "X", default)]
    pub x: f64,
    #[serde(rename = "P", default)]
    pub p: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub cutoff: usize,
    #[serde(default)]
    pub theta_plus: f64,
    #[serde(default)]
    pub theta_minus: f64,
    #[serde(default)]
    pub theta_cross: f64,
}

impl Default for TransformSpec {
    fn default() -> Self {
        Self {
            x: 0.0,
            p: 0.0,
            b: 0.5,
            cutoff: 64,
            theta_plus: 0.0,
            theta_minus: 0.0,
            theta_cross: 0.0,
        }
    }
}

fn transform_spec(a: &TransformArgs) -> CliResult<TransformSpec> {
    let mut spec = match &a.spec {
        Some(path) => serde_json::from_slice(&read_input(path)?)
            .map_err(|e| CliError(format!("{}: {e}", path.display())))?,
        None => TransformSpec::default(),
    };
    spec.x = a.x.unwrap_or(spec.x);
    spec.p = a.p.unwrap_or(spec.p);
    spec.b = a.b.unwrap_or(spec.b);
    spec.cutoff = a.cutoff.unwrap_or(spec.cutoff);
    if let Some(s) = &a.angles {
        [spec.theta_plus, spec.theta_minus, spec.theta_cross] = parse_list::<3>(s, "--angles")?;
    }
    if spec.cutoff < MIN_UNITARY_CUTOFF {
        return Err(CliError(format!(
            "cutoff must be at least {MIN_UNITARY_CUTOFF}, got {}",
            spec.cutoff
        )));
    }
    Ok(spec)
}

fn moments_or_error(wf: &SampledWavefunction) -> Value {
    match dispersion_estimate(wf) {
        Ok(m) => serde_json::to_value(m).expect("plain data"),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn sidecar_path(explicit: Option<&Path>, output: Option<&Path>) -> Option<PathBuf> {
    explicit.map(Path::to_path_buf).or_else(|| {
        output.map(|o| {
            let mut s = o.as_os_str().to_owned();
            s.push(".dispersion.json");
            PathBuf::from(s)
        })
    })
}

/// Projects onto the basis, applies the truncated unitary and resynthesizes
/// on the input grid.
pub fn transform(
    a: &TransformArgs,
    format: Option<Format>,
    output: Option<&Path>,
) -> CliResult<Outcome> {
    let spec = transform_spec(a)?;
    let params = BasisParams::new(spec.x, spec.p, spec.b)?;
    let wf = read_wavefunction(&a.input)?;
    let before = dispersion_estimate(&wf)?;
    let expansion = project(&wf, &params, spec.cutoff)?;
    let angles = ThetaAngles::single(spec.theta_plus, spec.theta_minus, spec.theta_cross);
    let u = build_unitary(&angles, spec.b, spec.cutoff)?;
    // U acts on ladder kets, which differ from phi(n) by iⁿ
    let c = DVector::from_vec(expansion.ket_coefficients());
    let rotated: Vec<Complex64> = (&u.u.matrix * c).iter().copied().collect();
    let out_expansion = CoefficientExpansion::from_ket_coefficients(params, &rotated)?;
    let out = synthesize(&out_expansion, wf.grid().to_vec())?;

    let s = exp_sl2(&from_angles(&angles, Metric::euclidean(1))?)?;
    let sidecar = json!({
        "spec": spec,
        "symplectic": s.blocks_json(),
        "captured_norm": expansion.norm_sqr(),
        "before": serde_json::to_value(before).expect("plain data"),
        "after": moments_or_error(&out),
    });
    let text = serde_json::to_string_pretty(&sidecar).expect("values serialize") + "\n";
    match sidecar_path(a.sidecar.as_deref(), output) {
        Some(p) => {
            std::fs::write(&p, text).map_err(|e| CliError(format!("{}: {e}", p.display())))?
        }
        None => eprint!("{text}"),
    }

    let rendered = match format_or(format, Format::Csv) {
        Format::Csv => Rendered::Csv(wavefunction_csv(&out)),
        Format::Json => Rendered::Json(coefficients_json(&out_expansion)),
    };
    Ok(Outcome::ok(rendered))
}

pub fn expmap(a: &ExpmapArgs, format: Option<Format>) -> CliResult<Outcome> {
    let input: AnglesInput = serde_json::from_slice(&read_input(&a.input)?)
        .map_err(|e| CliError(format!("{}: {e}", a.input.display())))?;
    let metric = input.metric()?;
    let s = exp_sp(&from_angles(&input.angles()?, metric)?)?;
    let blocks = s.blocks_json();
    let rendered = match format_or(format, Format::Json) {
        Format::Json => {
            let mut v = serde_json::to_value(&blocks).expect("plain data");
            v["residual"] = json!(s.residual());
            Rendered::Json(v)
        }
        Format::Csv => {
            let named = [
                ("Pi", &blocks.pi),
                ("Xi", &blocks.xi),
                ("Theta", &blocks.theta),
                ("Lambda", &blocks.lambda),
            ];
            let rows = named.into_iter().flat_map(|(name, b)| {
                b.iter().enumerate().flat_map(move |(r, row)| {
                    row.iter().enumerate().map(move |(c, v)| {
                        vec![
                            name.to_string(),
                            r.to_string(),
                            c.to_string(),
                            format_float(*v),
                        ]
                    })
                })
            });
            Rendered::Csv(csv_table(&["block", "row", "col", "value"], rows))
        }
    };
    Ok(Outcome::ok(rendered))
}

fn operator(op: Operator, b: f64, cutoff: usize) -> CliResult<TruncatedOperator> {
    Ok(match op {
        Operator::Zminus => ladder_matrices(cutoff)?.0,
        Operator::Zplus => ladder_matrices(cutoff)?.1,
        Operator::P => quadrature_matrices(cutoff)?.0,
        Operator::X => quadrature_matrices(cutoff)?.1,
        Operator::Jplus => dispersion_matrices(b, cutoff)?.0,
        Operator::Jminus => dispersion_matrices(b, cutoff)?.1,
        Operator::Jcross => dispersion_matrices(b, cutoff)?.2,
        Operator::SigmaP => sigma_operators(b, cutoff)?.0,
        Operator::SigmaX => sigma_operators(b, cutoff)?.1,
    })
}

pub fn rep(a: &RepArgs, format: Option<Format>) -> CliResult<Outcome> {
    let op = operator(a.op, a.b, a.cutoff)?;
    let rendered = match format_or(format, Format::Json) {
        Format::Json => Rendered::Json(op.to_json()),
        Format::Csv => {
            let n = op.cutoff();
            let rows = (0..n)
                .flat_map(|r| (0..n).map(move |c| (r, c)))
                .map(|(r, c)| {
                    let v = op.entry(r, c);
                    vec![
                        r.to_string(),
                        c.to_string(),
                        format_float(v.re),
                        format_float(v.im),
                    ]
                });
            Rendered::Csv(csv_table(&["row", "col", "re", "im"], rows))
        }
    };
    Ok(Outcome::ok(rendered))
}

pub fn dispersion(a: &DispersionArgs, format: Option<Format>) -> CliResult<Outcome> {
    let m = dispersion_estimate(&read_wavefunction(&a.input)?)?;
    let rendered = match format_or(format, Format::Json) {
        Format::Json => Rendered::Json(serde_json::to_value(m).expect("plain data")),
        Format::Csv => Rendered::Csv(csv_table(
            &["X", "P", "dx2", "dp2"],
            [[m.x_mean, m.p_mean, m.dx2, m.dp2]
                .map(format_float)
                .to_vec()],
        )),
    };
    Ok(Outcome::ok(rendered))
}
