use crate::args::*;
use crate::output::{self, emit, real, round_sig};
use crate::verify;
use mahler::experiments::{run_convergence, ConvergenceRecord, ExperimentSpec, Family, InnerParams};
use mahler::laurent::LaurentPoly;
use mahler::measures::{measure, torus_qmc, MeasureKind, Method, QmcConfig};
use mahler::torushom::TorusHom;
use serde_json::{json, Value};
use std::path::Path;

/// A command failure carrying its exit code: 1 for verification failures,
/// 2 for usage/parse errors, 3 for computation errors.
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn computation(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

fn lib_error(err: mahler::Error) -> Failure {
    use mahler::Error::*;
    match err {
        Parse { .. } | InvalidConfig(_) | DimensionMismatch(_) | KindMismatch { .. } => {
            Failure::usage(err.to_string())
        }
        ZeroPolynomial | InapplicableMethod(_) | RootFinding { .. } | ZeroSubstitution { .. }
        | AllStepsSkipped => Failure::computation(err.to_string()),
    }
}

fn io_error(err: std::io::Error) -> Failure {
    Failure::computation(format!("io error: {err}"))
}

/// Resolves `--poly` values: plain text, or `@path` to read from a file.
fn load_poly_text(spec: &str) -> Result<String, Failure> {
    if let Some(path) = spec.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map(|s| s.trim().to_owned())
            .map_err(|e| Failure::usage(format!("cannot read polynomial file {path}: {e}")))
    } else {
        Ok(spec.to_owned())
    }
}

/// Parses the polynomial list and lifts everything to a common variable
/// count (the explicit `--nvars`, or the largest index mentioned).
fn load_polys(specs: &[String], nvars: Option<usize>) -> Result<Vec<LaurentPoly>, Failure> {
    if specs.is_empty() {
        return Err(Failure::usage("at least one --poly is required"));
    }
    let mut polys = Vec::with_capacity(specs.len());
    for spec in specs {
        let text = load_poly_text(spec)?;
        polys.push(LaurentPoly::parse(&text, nvars).map_err(lib_error)?);
    }
    let target = nvars.unwrap_or_else(|| polys.iter().map(LaurentPoly::nvars).max().unwrap());
    polys
        .into_iter()
        .map(|p| p.with_nvars(target).map_err(lib_error))
        .collect()
}

fn kind_for(kind: KindArg, count: usize) -> Result<MeasureKind, Failure> {
    match kind {
        KindArg::Classic => {
            if count != 1 {
                return Err(Failure::usage(format!(
                    "--kind classic takes exactly one --poly, got {count}"
                )));
            }
            Ok(MeasureKind::Classic)
        }
        KindArg::Max => Ok(MeasureKind::Max(count)),
        KindArg::Prod => Ok(MeasureKind::Prod(count)),
    }
}

pub fn cmd_measure(args: &MeasureArgs) -> Result<(), Failure> {
    if args.format != FormatArg::Json {
        return Err(Failure::usage("measure supports --format json only"));
    }
    let polys = load_polys(&args.polys, args.nvars)?;
    let kind = kind_for(args.kind, polys.len())?;
    let nvars = polys[0].nvars();

    let method_arg = args.method.unwrap_or(match (args.kind, nvars) {
        (KindArg::Classic, 1) => MethodArg::Jensen,
        (_, 1) => MethodArg::Circle,
        _ => MethodArg::Qmc,
    });
    let method = match method_arg {
        MethodArg::Jensen => Method::JensenExact {
            root_tol: args.tol.unwrap_or(1e-12),
        },
        MethodArg::Circle => Method::CircleQuadrature {
            panel_tol: args.tol.unwrap_or(1e-8),
        },
        MethodArg::Qmc => Method::TorusQmc(QmcConfig {
            samples: args.samples,
            shifts: args.shifts,
            seed: args.seed,
            clip: args.clip,
        }),
        MethodArg::BoydLawton => Method::BoydLawtonLimit {
            b: args
                .b
                .ok_or_else(|| Failure::usage("--method boyd-lawton requires --b"))?,
            root_tol: args.tol.unwrap_or(1e-12),
            panel_tol: args.tol.unwrap_or(1e-8),
        },
    };

    let estimate = measure(&kind, &polys, &method).map_err(lib_error)?;
    let text = format!("{}\n", output::estimate_json(&estimate));
    emit(args.out.output.as_deref(), &text).map_err(io_error)
}

pub fn cmd_height(args: &HeightArgs) -> Result<(), Failure> {
    let matrix = TorusHom::parse(&args.matrix).map_err(lib_error)?;
    let result = matrix.boyd_height();
    let text = format!("{}\n", output::height_result_json(&result));
    emit(args.out.output.as_deref(), &text).map_err(io_error)
}

pub fn cmd_substitute(args: &SubstituteArgs) -> Result<(), Failure> {
    let matrix = TorusHom::parse(&args.matrix).map_err(lib_error)?;
    let text = load_poly_text(&args.poly)?;
    let poly = LaurentPoly::parse(&text, Some(matrix.rows())).map_err(lib_error)?;
    let image = poly.substitute(&matrix).map_err(lib_error)?;
    emit(args.out.output.as_deref(), &format!("{}\n", image.format())).map_err(io_error)
}

pub fn cmd_converge(args: &ConvergeArgs) -> Result<(), Failure> {
    let polys = load_polys(&args.polys, args.nvars)?;
    let kind = kind_for(args.kind, polys.len())?;

    if args.b_start > args.b_end {
        return Err(Failure::usage(format!(
            "--b-start {} exceeds --b-end {}",
            args.b_start, args.b_end
        )));
    }
    if args.b_step == 0 {
        return Err(Failure::usage("--b-step must be positive"));
    }
    let b_schedule: Vec<u64> = (args.b_start..=args.b_end)
        .step_by(args.b_step as usize)
        .collect();

    let family = match args.family {
        FamilyArg::Vector => {
            if args.m.is_some() {
                return Err(Failure::usage("--m applies to --family matrix only"));
            }
            Family::Vector
        }
        FamilyArg::Matrix => Family::Matrix {
            target_vars: args
                .m
                .ok_or_else(|| Failure::usage("--family matrix requires --m"))?,
        },
    };

    let qmc = QmcConfig {
        samples: args.samples,
        shifts: args.shifts,
        seed: args.seed,
        clip: args.clip,
    };
    let reference = match args.reference.as_deref() {
        None => None,
        Some("auto") => {
            let cfg = QmcConfig {
                samples: args.samples * 4,
                ..qmc
            };
            Some(torus_qmc(&kind, &polys, &cfg).map_err(lib_error)?.value)
        }
        Some(text) => Some(
            text.parse::<f64>()
                .map_err(|_| Failure::usage(format!("invalid --reference {text:?}")))?,
        ),
    };

    let spec = ExperimentSpec {
        kind,
        polys,
        family,
        b_schedule,
        reference,
        params: InnerParams {
            root_tol: args.tol.unwrap_or(1e-12),
            panel_tol: args.tol.unwrap_or(1e-8),
            qmc,
        },
    };
    let records = run_convergence(&spec).map_err(lib_error)?;

    let text = match args.format {
        FormatArg::Csv => records_csv(&records),
        FormatArg::Json => format!("{}\n", records_json(&records)),
        FormatArg::Table => return Err(Failure::usage("converge supports --format csv or json")),
    };
    emit(args.out.output.as_deref(), &text).map_err(io_error)
}

fn fmt_real(x: f64) -> String {
    real(x).to_string()
}

fn records_csv(records: &[ConvergenceRecord]) -> String {
    let mut out = String::from("b,mu,m_vars,value,error,reference,deviation,status\n");
    for r in records {
        let (value, error, deviation, status) = match &r.estimate {
            Some(est) => (
                fmt_real(est.value),
                fmt_real(est.error_estimate),
                r.deviation.map(fmt_real).unwrap_or_default(),
                "ok",
            ),
            None => (String::new(), String::new(), String::new(), "skipped"),
        };
        let reference = r.reference.map(fmt_real).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.b, r.mu, r.target_vars, value, error, reference, deviation, status
        ));
    }
    out
}

fn records_json(records: &[ConvergenceRecord]) -> Value {
    let rows: Vec<Value> = records
        .iter()
        .map(|r| {
            json!({
                "b": r.b,
                "mu": output::height_json(&r.mu),
                "m_vars": r.target_vars,
                "value": r.estimate.as_ref().map_or(Value::Null, |e| real(e.value)),
                "error": r.estimate.as_ref().map_or(Value::Null, |e| real(e.error_estimate)),
                "reference": r.reference.map_or(Value::Null, real),
                "deviation": r.deviation.map_or(Value::Null, real),
                "skipped": r.skipped(),
            })
        })
        .collect();
    json!({ "records": rows })
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let rows = verify::run(args.full).map_err(lib_error)?;
    let all_pass = rows.iter().all(|r| r.pass);

    let text = match args.format {
        FormatArg::Json => {
            let cases: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "computed": real(r.computed),
                        "reference": real(r.reference),
                        "tolerance": real(r.tolerance),
                        "error": real(r.error_estimate),
                        "pass": r.pass,
                    })
                })
                .collect();
            format!("{}\n", json!({ "cases": cases, "pass": all_pass }))
        }
        FormatArg::Table => {
            let mut out = format!(
                "{:<28} {:>18} {:>18} {:>10} {:>7}\n",
                "case", "computed", "reference", "tolerance", "status"
            );
            for r in &rows {
                out.push_str(&format!(
                    "{:<28} {:>18} {:>18} {:>10} {:>7}\n",
                    r.name,
                    trim_cell(round_sig(r.computed)),
                    trim_cell(round_sig(r.reference)),
                    format!("{:.0e}", r.tolerance),
                    if r.pass { "pass" } else { "FAIL" }
                ));
            }
            out.push_str(&format!(
                "overall: {}\n",
                if all_pass { "pass" } else { "FAIL" }
            ));
            out
        }
        FormatArg::Csv => return Err(Failure::usage("verify supports --format table or json")),
    };
    emit(args.out.output.as_deref(), &text).map_err(io_error)?;

    if all_pass {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: "verification failed".into(),
        })
    }
}

fn trim_cell(x: f64) -> String {
    let s = format!("{x:.12}");
    s.trim_end_matches('0').trim_end_matches('.').to_owned()
}

/// Reads a `key=value` config file and returns synthesized flags for every
/// key that the explicit command line does not already set.
pub fn config_flags(path: &Path, explicit: &[String]) -> Result<Vec<String>, Failure> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut flags = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Failure::usage(format!(
                "config {}:{}: expected key=value",
                path.display(),
                lineno + 1
            )));
        };
        let key = key.trim();
        let flag = format!("--{key}");
        let already_set = explicit
            .iter()
            .any(|a| a == &flag || a.starts_with(&format!("{flag}=")));
        if already_set {
            continue;
        }
        flags.push(flag);
        flags.push(value.trim().to_owned());
    }
    Ok(flags)
}
