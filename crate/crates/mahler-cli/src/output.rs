//! Deterministic output shaping: reals rounded to 12 significant digits
//! (shortest round-trip rendering of the rounded value), atomic file
//! writes, and JSON views of the library types.

use mahler::measures::{MeasureEstimate, MethodDetail};
use mahler::torushom::{BoydHeight, HeightResult};
use serde_json::{json, Value};
use std::io::Write;
use std::path::Path;

/// Rounds to 12 significant decimal digits; serde_json then prints the
/// shortest string that round-trips the rounded value.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap()
}

pub fn real(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
}

pub fn detail_json(detail: &MethodDetail) -> Value {
    match detail {
        MethodDetail::Jensen {
            degree,
            max_residual,
            root_tol,
        } => json!({
            "degree": degree,
            "max_residual": real(*max_residual),
            "root_tol": real(*root_tol),
        }),
        MethodDetail::Circle { panels, panel_tol } => json!({
            "panels": panels,
            "panel_tol": real(*panel_tol),
        }),
        MethodDetail::Qmc {
            samples,
            shifts,
            seed,
            clip,
        } => json!({
            "samples": samples,
            "shifts": shifts,
            "seed": seed,
            "clip": real(*clip),
        }),
        MethodDetail::BoydLawton { b, mu, inner } => json!({
            "b": b,
            "mu": height_json(mu),
            "inner": detail_json(inner),
        }),
    }
}

pub fn estimate_json(est: &MeasureEstimate) -> Value {
    json!({
        "value": real(est.value),
        "error": real(est.error_estimate),
        "method": est.method.to_string(),
        "detail": detail_json(&est.detail),
    })
}

pub fn height_json(height: &BoydHeight) -> Value {
    match height {
        BoydHeight::Finite(v) => json!(v),
        BoydHeight::Infinite => json!("infinite"),
    }
}

pub fn height_result_json(result: &HeightResult) -> Value {
    json!({
        "height": height_json(&result.height),
        "witness": result.witness.as_ref().map_or(Value::Null, |w| json!(w)),
    })
}

/// Writes to stdout, or atomically to a file (temp in the same directory,
/// renamed on success) so failures never leave partial output behind.
pub fn emit(output: Option<&Path>, content: &str) -> std::io::Result<()> {
    match output {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            let mut tmp = match dir {
                Some(d) => tempfile::NamedTempFile::new_in(d)?,
                None => tempfile::NamedTempFile::new_in(".")?,
            };
            tmp.write_all(content.as_bytes())?;
            tmp.flush()?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}
