//! Report emission: rounded JSON, or versioned CSV where a table makes sense.

use std::fs;
use std::path::Path;

use serde::Serialize;
use zeroerr::bounds::{BoundInterval, Certificate};
use zeroerr::info::report_json;

use crate::CliError;

pub const BOUNDS_CSV_VERSION: &str = "zeroerr-bounds-csv v1";

/// Writes `text` to `out`, or to stdout.
pub fn write(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Failed(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = report_json(value)?;
    text.push('\n');
    write(&text, out)
}

pub fn bounds_csv(b: &BoundInterval) -> String {
    format!(
        "# {BOUNDS_CSV_VERSION}\nquantity,lo,hi,lo_method,hi_method\n{},{},{},{},{}\n",
        b.quantity,
        zeroerr::verifier::format_sig9(b.lo),
        zeroerr::verifier::format_sig9(b.hi),
        method_name(&b.lo_cert),
        method_name(&b.hi_cert),
    )
}

fn method_name(c: &Certificate) -> String {
    serde_json::to_value(c.method)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// Whether any certificate in the tree records a budget shortfall or an assumption.
pub fn flagged(c: &Certificate) -> bool {
    !c.flags.is_empty() || c.sub.iter().any(flagged)
}
