//! NPL layout: each record is an id line followed by content lines and closed
//! by a line holding a single `/`. Used for documents, queries and judgments.

use crate::error::{Error, Result};

/// Returns (id, content lines joined by spaces) for each `/`-terminated block.
pub(crate) fn parse_blocks(content: &str) -> Result<Vec<(u32, String)>> {
    let mut out = Vec::new();
    let mut current: Option<(u32, Vec<&str>)> = None;
    for (idx, raw) in content.lines().enumerate() {
        let line = raw.trim();
        if line == "/" {
            match current.take() {
                Some((id, parts)) => out.push((id, parts.join(" "))),
                None => return Err(Error::parse(idx + 1, "`/` terminator without a record")),
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
            None => {
                let id = line
                    .parse::<u32>()
                    .ok()
                    .filter(|&id| id > 0)
                    .ok_or_else(|| Error::parse(idx + 1, format!("expected record id, found `{line}`")))?;
                current = Some((id, Vec::new()));
            }
        }
    }
    // A final block without terminator is accepted.
    if let Some((id, parts)) = current {
        out.push((id, parts.join(" ")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks() {
        let content = "1\ncompact memories have\nflexible capacities\n   /\n2\nfoo\n   /\n";
        assert_eq!(
            parse_blocks(content).unwrap(),
            vec![(1, "compact memories have flexible capacities".into()), (2, "foo".into())]
        );
    }

    #[test]
    fn unterminated_tail() {
        assert_eq!(parse_blocks("3\nbar").unwrap(), vec![(3, "bar".into())]);
    }

    #[test]
    fn bad_id() {
        assert!(matches!(parse_blocks("x\n/\n"), Err(Error::Parse { line: 1, .. })));
    }
}
