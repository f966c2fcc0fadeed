//! LISA layouts. Documents: `Document <n>` header, text, then a line of
//! asterisks. Queries: an id line, then text up to a line ending in `#`.

use crate::error::{Error, Result};

pub(crate) fn parse_documents(content: &str) -> Result<Vec<(u32, String)>> {
    let mut out = Vec::new();
    let mut current: Option<(u32, Vec<&str>)> = None;
    for (idx, raw) in content.lines().enumerate() {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("Document") {
            if let Some((id, parts)) = current.take() {
                out.push((id, parts.join(" ")));
            }
            let id = rest
                .trim()
                .parse::<u32>()
                .ok()
                .filter(|&id| id > 0)
                .ok_or_else(|| Error::parse(idx + 1, format!("invalid document header `{line}`")))?;
            current = Some((id, Vec::new()));
            continue;
        }
        if !line.is_empty() && line.bytes().all(|b| b == b'*') {
            if let Some((id, parts)) = current.take() {
                out.push((id, parts.join(" ")));
            }
            continue;
        }
        match current.as_mut() {
            Some((_, parts)) => {
                if !line.is_empty() {
                    parts.push(line);
                }
            }
            None if line.is_empty() => {}
            None => return Err(Error::parse(idx + 1, "text outside a `Document` block")),
        }
    }
    if let Some((id, parts)) = current {
        out.push((id, parts.join(" ")));
    }
    Ok(out)
}

pub(crate) fn parse_queries(content: &str) -> Result<Vec<(u32, String)>> {
    let mut out = Vec::new();
    let mut current: Option<(u32, Vec<&str>)> = None;
    for (idx, raw) in content.lines().enumerate() {
        let line = raw.trim();
        match current.as_mut() {
            None => {
                if line.is_empty() {
                    continue;
                }
                let id = line
                    .parse::<u32>()
                    .ok()
                    .filter(|&id| id > 0)
                    .ok_or_else(|| Error::parse(idx + 1, format!("expected query id, found `{line}`")))?;
                current = Some((id, Vec::new()));
            }
            Some((_, parts)) => {
                if let Some(text) = line.strip_suffix('#') {
                    let text = text.trim();
                    if !text.is_empty() {
                        parts.push(text);
                    }
                    let (id, parts) = current.take().expect("inside a query");
                    out.push((id, parts.join(" ")));
                } else if !line.is_empty() {
                    parts.push(line);
                }
            }
        }
    }
    if let Some((id, _)) = current {
        return Err(Error::parse(content.lines().count(), format!("query {id} is not terminated by `#`")));
    }
    Ok(out)
}
