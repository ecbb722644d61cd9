//! Output formatting shared by the command-line tool and the examples:
//! 6-significant-digit numbers, CSV assembly, and a JSON envelope that
//! embeds the resolved configuration, seed and crate version next to
//! every result.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;

/// Formats a number with 6 significant digits (CSV/report convention).
pub fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (5 - mag).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Builds a CSV document from a header and rows of prerendered fields.
pub fn csv_document(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Wraps a result payload with the provenance needed to reproduce it.
pub fn envelope<C: Serialize, P: Serialize>(
    command: &str,
    config: &C,
    seed: u64,
    payload: &P,
) -> Result<serde_json::Value> {
    Ok(serde_json::json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "config": serde_json::to_value(config)?,
        "result": serde_json::to_value(payload)?,
    }))
}

/// Writes text to the given path, or to stdout when no path is given.
pub fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                f.write_all(b"\n")?;
            }
            Ok(())
        }
        None => {
            println!("{}", text.trim_end_matches('\n'));
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig6_keeps_six_significant_digits() {
        assert_eq!(sig6(3.4854021), "3.4854");
        assert_eq!(sig6(0.0012345678), "0.00123457");
        assert_eq!(sig6(123456.78), "123457");
        assert_eq!(sig6(-1.1144), "-1.1144");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(27000.0), "27000");
    }

    #[test]
    fn envelope_embeds_provenance() {
        let e = envelope("bounds", &serde_json::json!({"a": 1}), 7, &42).unwrap();
        assert_eq!(e["command"], "bounds");
        assert_eq!(e["seed"], 7);
        assert_eq!(e["result"], 42);
        assert!(e["version"].as_str().unwrap().contains('.'));
    }

    #[test]
    fn csv_document_layout() {
        let doc = csv_document(&["a", "b"], &[vec!["1".into(), "2".into()]]);
        assert_eq!(doc, "a,b\n1,2\n");
    }
}
