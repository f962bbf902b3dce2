//! Plain-text twist lists: one `coeff genus k1 k2 ... kn` record per line,
//! `#` comments and blank lines ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::johnson::{TwistEntry, TwistList};
use crate::surface::Barcode;

pub fn parse_twist_file(text: &str, genus: usize) -> Result<TwistList> {
    let mut list = TwistList::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let perr = |msg: String| Error::Parse { line, msg };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let nums = trimmed
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|_| perr(format!("`{tok}` is not a signed integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        let [coeff, h, entries @ ..] = nums.as_slice() else {
            return Err(perr("expected `coeff genus k1 ... kn`".into()));
        };
        let h = u8::try_from(*h)
            .ok()
            .filter(|h| (1..=2).contains(h))
            .ok_or_else(|| perr(format!("twist genus must be 1 or 2, got {h}")))?;
        if *coeff == 0 {
            return Err(perr("twist exponent must be nonzero".into()));
        }
        let entries = entries
            .iter()
            .map(|&k| i32::try_from(k).map_err(|_| perr(format!("barcode entry {k} out of range"))))
            .collect::<Result<Vec<_>>>()?;
        let barcode = Barcode::new(entries).map_err(|e| perr(e.to_string()))?;
        barcode.validate(genus).map_err(|e| perr(e.to_string()))?;
        let entry = TwistEntry::new(*coeff, h, barcode).map_err(|e| perr(e.to_string()))?;
        list.push(entry);
    }
    Ok(list)
}

/// Serializes `twists`, preceded by `header` lines as comments.
pub fn write_twist_file(twists: &TwistList, header: &[&str]) -> String {
    let mut out = String::new();
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    for e in twists.entries() {
        let _ = write!(out, "{} {}", e.coeff, e.genus);
        if !e.barcode.is_empty() {
            let _ = write!(out, " {}", e.barcode);
        }
        out.push('\n');
    }
    out
}
