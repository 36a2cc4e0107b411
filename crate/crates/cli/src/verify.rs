//! `lct verify`: symbolic tables, closure, Fock-space identities and the
//! metaplectic checks. Printed-equation mismatches are WARN; numeric checks
//! that miss their tolerance are FAIL.

use lct_core::fock_rep::truncated_commutator_check;
use lct_core::metaplectic_rep::{verify_basis_transformation, verify_homomorphism};
use lct_core::metric::Metric;
use lct_core::symplectic_group::ThetaAngles;
use lct_core::weyl_symbolic::{closure_and_constants, verify_table, Algebra, Convention, TableId};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Format, VerifyArgs};
use crate::commands::parse_list;
use crate::output::{csv_table, format_or, Rendered};
use crate::{CliError, CliResult, Outcome};

/// Largest dimension the symbolic suites accept.
const MAX_SYMBOLIC_DIM: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
enum Status {
    Pass,
    Warn,
    Fail,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        }
    }
}

struct Report {
    name: String,
    status: Status,
    summary: String,
    body: Value,
}

fn metric_from(a: &VerifyArgs) -> CliResult<Metric> {
    let metric = match &a.signature {
        Some(s) => {
            let [np, nm] = parse_list::<2>(s, "--signature")?;
            if np < 0.0 || nm < 0.0 || np.fract() != 0.0 || nm.fract() != 0.0 {
                return Err(CliError(format!(
                    "--signature: expected two non-negative integers, got {s:?}"
                )));
            }
            let m = Metric::new(np as usize, nm as usize)?;
            if let Some(d) = a.dim.filter(|d| *d != m.dim()) {
                return Err(CliError(format!(
                    "--signature {s} has dimension {} but --dim is {d}",
                    m.dim()
                )));
            }
            m
        }
        None => match a.dim.unwrap_or(2) {
            0 => return Err(CliError("--dim must be at least 1".into())),
            d => Metric::euclidean(d),
        },
    };
    if metric.dim() > MAX_SYMBOLIC_DIM {
        return Err(CliError(format!(
            "symbolic suites support N ≤ {MAX_SYMBOLIC_DIM}, got {}",
            metric.dim()
        )));
    }
    Ok(metric)
}

fn table_report(id: TableId, metric: Metric) -> Report {
    let r = verify_table(id, metric);
    let status = if r.all_hold() {
        Status::Pass
    } else {
        Status::Warn
    };
    let summary = if r.all_hold() {
        format!("{} identities hold", r.checked)
    } else {
        let lines: Vec<String> = r
            .lines
            .iter()
            .filter(|l| l.failed > 0)
            .map(|l| format!("line {} ({}/{})", l.line, l.failed, l.checked))
            .collect();
        format!(
            "printed form differs at {}; engine values reported",
            lines.join(", ")
        )
    };
    let mut body = serde_json::to_value(&r).expect("plain data");
    body["max_residual"] = Value::Null;
    body["block"] = Value::Null;
    Report {
        name: id.name().to_string(),
        status,
        summary,
        body,
    }
}

fn closure_report(metric: Metric) -> CliResult<Report> {
    let c = closure_and_constants(&Algebra::new(metric, Convention::MomentumPosition))?;
    let n = metric.dim();
    let expected = n * (2 * n + 1);
    let jacobi = c.jacobi_holds();
    let antisymmetric = c.is_antisymmetric();
    let mut failed = Vec::new();
    if c.dimension() != expected {
        failed.push(json!({ "indices": [], "residual": format!("dimension {} ≠ {expected}", c.dimension()) }));
    }
    if !jacobi {
        failed.push(json!({ "indices": [], "residual": "Jacobi identity violated" }));
    }
    if !antisymmetric {
        failed.push(json!({ "indices": [], "residual": "bracket not antisymmetric" }));
    }
    let status = if failed.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(Report {
        name: "closure".into(),
        status,
        summary: format!("dimension {}, Jacobi {jacobi}", c.dimension()),
        body: json!({
            "table": "closure",
            "metric": [metric.n_plus, metric.n_minus],
            "checked": 3,
            "failed": failed,
            "dimension": c.dimension(),
            "expected_dimension": expected,
            "jacobi": jacobi,
            "antisymmetric": antisymmetric,
            "max_residual": null,
            "block": null,
        }),
    })
}

fn fock_report(a: &VerifyArgs) -> CliResult<Report> {
    let r = truncated_commutator_check(a.cutoff, a.b)?;
    let failed: Vec<Value> = r
        .identities
        .iter()
        .enumerate()
        .filter(|(_, id)| !(id.block_residual < a.tol))
        .map(|(i, id)| json!({ "indices": [i], "identity": id.identity, "residual": id.block_residual }))
        .collect();
    let max = r.max_block_residual();
    let status = if failed.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(Report {
        name: "fock".into(),
        status,
        summary: format!("max block residual {max:e} (tol {:e})", a.tol),
        body: json!({
            "table": "fock",
            "metric": [1, 0],
            "checked": r.identities.len(),
            "failed": failed,
            "cutoff": r.cutoff,
            "B": r.b,
            "tol": a.tol,
            "identities": r.identities,
            "max_residual": max,
            "block": a.cutoff - 2,
        }),
    })
}

fn angles_from(a: &VerifyArgs) -> CliResult<([f64; 3], ThetaAngles)> {
    let t = parse_list::<3>(&a.angles, "--angles")?;
    Ok((t, ThetaAngles::single(t[0], t[1], t[2])))
}

fn homomorphism_report(a: &VerifyArgs) -> CliResult<Report> {
    let (t, angles) = angles_from(a)?;
    let r = verify_homomorphism(&angles, a.b, a.cutoff, a.tol)?;
    let mut failed = Vec::new();
    for (i, (op, res)) in [("p", r.residual_p), ("x", r.residual_x)]
        .into_iter()
        .enumerate()
    {
        if !(res < a.tol) {
            failed.push(json!({ "indices": [i], "operator": op, "residual": res }));
        }
    }
    let status = if r.passed { Status::Pass } else { Status::Fail };
    Ok(Report {
        name: "homomorphism".into(),
        status,
        summary: format!(
            "max residual {:e} on the leading {} block (tol {:e})",
            r.max_residual, r.block, a.tol
        ),
        body: json!({
            "table": "homomorphism",
            "metric": [1, 0],
            "checked": 2,
            "failed": failed,
            "angles": t,
            "B": a.b,
            "cutoff": r.cutoff,
            "tol": r.tol,
            "symplectic": r.symplectic,
            "residual_p": r.residual_p,
            "residual_x": r.residual_x,
            "max_residual": r.max_residual,
            "block": r.block,
        }),
    })
}

fn basis_law_report(a: &VerifyArgs) -> CliResult<Report> {
    let (t, angles) = angles_from(a)?;
    let r = verify_basis_transformation(&angles, a.b, a.cutoff, a.tol)?;
    // printed rows that disagree with the engine are errata, not failures
    let failed: Vec<Value> = r
        .rows
        .iter()
        .enumerate()
        .filter(|(_, row)| !(row.printed_deviation < a.tol))
        .map(|(i, row)| {
            json!({
                "indices": [i],
                "generator": row.generator,
                "printed": row.printed,
                "residual": row.printed_deviation,
                "corrected_rhs": {
                    "basis": "generators",
                    "terms": { "bplus": row.engine[0], "bminus": row.engine[1], "bcross": row.engine[2] },
                },
            })
        })
        .collect();
    let status = if !r.passed {
        Status::Fail
    } else if failed.is_empty() {
        Status::Pass
    } else {
        Status::Warn
    };
    let summary = format!(
        "numeric residual {:e} (tol {:e}); {} printed row(s) differ from the engine",
        r.max_residual,
        a.tol,
        failed.len()
    );
    Ok(Report {
        name: "basis-law".into(),
        status,
        summary,
        body: json!({
            "table": "basis-law",
            "metric": [1, 0],
            "checked": r.rows.len(),
            "failed": failed,
            "angles": t,
            "B": a.b,
            "cutoff": r.cutoff,
            "tol": r.tol,
            "symplectic": r.symplectic,
            "rows": r.rows,
            "max_residual": r.max_residual,
            "block": r.block,
        }),
    })
}

pub fn run(a: &VerifyArgs, format: Option<Format>) -> CliResult<Outcome> {
    let mut tables: Vec<TableId> = a
        .table
        .iter()
        .map(|s| s.parse::<TableId>())
        .collect::<Result<_, _>>()?;
    if a.all {
        tables = TableId::ALL.to_vec();
    }
    if tables.is_empty() && !a.all && !a.homomorphism && !a.basis_law && !a.fock {
        return Err(CliError(
            "nothing selected: pass --table, --all, --homomorphism, --basis-law or --fock".into(),
        ));
    }
    if !(a.tol > 0.0) {
        return Err(CliError(format!("--tol must be positive, got {}", a.tol)));
    }
    let symbolic = !tables.is_empty() || a.all;
    let metric = if symbolic {
        Some(metric_from(a)?)
    } else {
        None
    };

    let mut reports = Vec::new();
    if let Some(metric) = metric {
        for id in tables {
            reports.push(table_report(id, metric));
        }
        if a.all {
            reports.push(closure_report(metric)?);
        }
    }
    if a.fock {
        reports.push(fock_report(a)?);
    }
    if a.homomorphism {
        reports.push(homomorphism_report(a)?);
    }
    if a.basis_law {
        reports.push(basis_law_report(a)?);
    }

    for r in &reports {
        eprintln!("{} {}: {}", r.status.label(), r.name, r.summary);
    }
    let overall = reports
        .iter()
        .map(|r| r.status)
        .max()
        .unwrap_or(Status::Pass);
    let rendered = match format_or(format, Format::Json) {
        Format::Json => {
            let mut bodies: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let mut b = r.body.clone();
                    b["status"] = json!(r.status);
                    b
                })
                .collect();
            if bodies.len() == 1 {
                Rendered::Json(bodies.pop().expect("one report"))
            } else {
                Rendered::Json(json!({ "status": overall, "reports": bodies }))
            }
        }
        Format::Csv => {
            let rows = reports.iter().map(|r| {
                let b = &r.body;
                vec![
                    r.name.clone(),
                    format!("{}:{}", b["metric"][0], b["metric"][1]),
                    b["checked"].to_string(),
                    b["failed"].as_array().map_or(0, Vec::len).to_string(),
                    match &b["max_residual"] {
                        Value::Null => String::new(),
                        v => v.to_string(),
                    },
                    r.status.label().to_string(),
                ]
            });
            Rendered::Csv(csv_table(
                &[
                    "check",
                    "metric",
                    "checked",
                    "failed",
                    "max_residual",
                    "status",
                ],
                rows,
            ))
        }
    };
    Ok(Outcome {
        rendered,
        failed: overall == Status::Fail,
    })
}
