//! Number formatting shared by the text and JSON outputs.

use num_complex::Complex64;
use serde_json::{json, Value};

/// Zeroes values that are rounding noise, so `-0` and `1e-17` never show up.
pub fn clean(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        x
    }
}

pub fn complex_json(z: Complex64) -> Value {
    json!([clean(z.re), clean(z.im)])
}

fn real(x: f64) -> String {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        format!("{}", r as i64)
    } else {
        let s = format!("{x:.4}");
        s.trim_end_matches('0').to_string()
    }
}

/// `2`, `-1`, `0.5+0.866i`, `-i`.
pub fn complex(z: Complex64) -> String {
    let (re, im) = (clean(z.re), clean(z.im));
    if im.abs() < 1e-9 {
        return real(re);
    }
    let imag = match real(im).as_str() {
        "1" => "i".to_string(),
        "-1" => "-i".to_string(),
        s => format!("{s}i"),
    };
    if re.abs() < 1e-9 {
        imag
    } else if imag.starts_with('-') {
        format!("{}{imag}", real(re))
    } else {
        format!("{}+{imag}", real(re))
    }
}

/// Fixed-width table with left-aligned columns.
pub fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<width$}", width = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
