//! Text input and output: distribution lists, joint-distribution CSV and
//! fixed-precision number formatting.

use crate::classical::JointDistribution;
use crate::dist::Distribution;
use crate::error::{Error, Result};

fn parse_number(token: &str, what: &str) -> Result<f64> {
    let token = token.trim();
    let value: f64 = token.parse().map_err(|_| Error::Parse(format!("{what}: `{token}` is not a number")))?;
    if !value.is_finite() {
        return Err(Error::Parse(format!("{what}: `{token}` is not finite")));
    }
    Ok(value)
}

/// Parses a comma-separated probability list such as `0.9,0.1`.
///
/// Entries must be nonnegative and sum to one (within `1e-12`).
pub fn parse_distribution(text: &str) -> Result<Distribution> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty distribution".into()));
    }
    let probs = text
        .split(',')
        .enumerate()
        .map(|(i, t)| parse_number(t, &format!("entry {}", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    Distribution::new(probs).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses a joint distribution from CSV: one row per `x`, one column per
/// `y`, comma-separated. Blank lines and lines starting with `#` are skipped.
pub fn parse_joint_csv(text: &str) -> Result<JointDistribution> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(',')
            .enumerate()
            .map(|(j, t)| parse_number(t, &format!("line {}, column {}", lineno + 1, j + 1)))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(Error::Parse(format!(
                    "line {}: expected {first} columns, found {}",
                    lineno + 1,
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("no data rows".into()));
    }
    JointDistribution::new(rows).map_err(|e| Error::Parse(e.to_string()))
}

/// Formats with `sig` significant digits, fixed notation for moderate
/// magnitudes and scientific otherwise.
pub fn format_sig(x: f64, sig: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return format!("{:.*}", sig - 1, 0.0);
    }
    // Exponent after rounding, so 0.99999999999999 counts as 1.0.
    let sci = format!("{:.*e}", sig - 1, x);
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-5..15).contains(&exp) {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}
