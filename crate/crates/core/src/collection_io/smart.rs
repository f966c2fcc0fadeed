//! SMART marker format used by MED, CRAN and CISI: `.I <id>` opens a record,
//! `.T`, `.A`, `.W`, `.B`, `.X` (or any other `.<letter>` line) open a section.

use crate::error::{Error, Result};

/// Parse `.I` blocks, keeping the text of the sections named in `keep`.
/// Kept sections are joined with single spaces in input order.
pub(crate) fn parse_records(content: &str, keep: &[char]) -> Result<Vec<(u32, String)>> {
    let mut records: Vec<(u32, Vec<String>)> = Vec::new();
    let mut keeping = false;

    for (idx, raw) in content.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end();
        if let Some(marker) = section_marker(line) {
            if marker == 'I' {
                let id = line[2..].trim();
                let id = id
                    .parse::<u32>()
                    .ok()
                    .filter(|&id| id > 0)
                    .ok_or_else(|| Error::parse(line_no, format!("invalid record id `{id}`")))?;
                records.push((id, Vec::new()));
                keeping = false;
            } else {
                if records.is_empty() {
                    return Err(Error::parse(line_no, "section marker before first `.I` line"));
                }
                keeping = keep.contains(&marker);
                // Some files put text on the marker line itself (`.T title`).
                let rest = line[2..].trim();
                if keeping && !rest.is_empty() {
                    records.last_mut().expect("checked above").1.push(rest.to_string());
                }
            }
            continue;
        }
        match records.last_mut() {
            Some((_, parts)) => {
                let text = line.trim();
                if keeping && !text.is_empty() {
                    parts.push(text.to_string());
                }
            }
            None if line.trim().is_empty() => {}
            None => return Err(Error::parse(line_no, "text before first `.I` line")),
        }
    }

    Ok(records.into_iter().map(|(id, parts)| (id, parts.join(" "))).collect())
}

/// `.X` followed by end of line or whitespace.
fn section_marker(line: &str) -> Option<char> {
    let mut chars = line.chars();
    if chars.next() != Some('.') {
        return None;
    }
    let marker = chars.next().filter(char::is_ascii_uppercase)?;
    match chars.next() {
        None => Some(marker),
        Some(c) if c.is_whitespace() => Some(marker),
        _ => None,
    }
}
