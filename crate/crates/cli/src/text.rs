//! Argument parsing for element lists and plain-text tables.

use sact_core::sets::ElemSet;

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>, String> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|t| {
            t.trim().parse::<usize>().map_err(|_| {
                format!(
                    "bad {what} `{text}`: `{}` is not an element index",
                    t.trim()
                )
            })
        })
        .collect()
}

/// `"0,2,3"`.
pub fn elements(text: &str) -> Result<ElemSet, String> {
    let mut v = parse_list(text, "element list")?;
    if v.is_empty() {
        return Err("element list is empty".into());
    }
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// `"0,1|2"`: blocks separated by `|`.
pub fn blocks(text: &str) -> Result<Vec<Vec<usize>>, String> {
    text.split('|')
        .map(|b| parse_list(b, "block list"))
        .collect()
}

/// `"0;0,1;0,1,2"`: an ascending chain, bottom first.
pub fn chain(text: &str) -> Result<Vec<ElemSet>, String> {
    text.split(';').map(elements).collect()
}

/// `"0,0,1"`: images of `0, 1, 2, ...`.
pub fn map(text: &str) -> Result<Vec<usize>, String> {
    parse_list(text, "map")
}

/// Left-aligned columns separated by two spaces.
pub fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c + 1 == row.len() {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{cell:<w$}  ", w = widths[c]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn flags(pairs: &[(&str, bool)]) -> String {
    let on: Vec<&str> = pairs.iter().filter(|p| p.1).map(|p| p.0).collect();
    if on.is_empty() {
        "-".into()
    } else {
        on.join(",")
    }
}
