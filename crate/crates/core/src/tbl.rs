//! Plain-text Cayley tables (`.tbl`) and their sidecar files.
//!
//! ```text
//! 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! Line 1 holds the order `n`; the next `n` lines hold row `i` of the table,
//! whose column `j` is the 0-based index of `i·j`. Blank lines and lines
//! starting with `#` are ignored.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Numbered, non-comment lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (i, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, i)),
            (true, Some((sc, si))) => {
                out.push((sc, &line[si..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((sc, si)) = start {
        out.push((sc, &line[si..]));
    }
    out
}

/// Whitespace-separated non-negative integers, with their columns.
fn parse_row(line_no: usize, line: &str) -> Result<Vec<(usize, usize)>, ParseError> {
    tokens(line)
        .into_iter()
        .map(|(col, tok)| {
            tok.parse::<usize>()
                .map(|v| (col, v))
                .map_err(|_| err(line_no, col, format!("expected a non-negative integer, found {tok:?}")))
        })
        .collect()
}

/// Parses a `.tbl` document. Checks shape and range only; algebraic axioms
/// are left to `make_group` / `make_loop`.
pub fn parse_table(text: &str) -> Result<Vec<Vec<usize>>, ParseError> {
    let mut lines = content_lines(text);
    let (first_no, first) = lines.next().ok_or_else(|| err(1, 1, "missing order line"))?;
    let header = parse_row(first_no, first)?;
    let n = match header.as_slice() {
        [(_, n)] if *n > 0 => *n,
        _ => return Err(err(first_no, 1, "first line must be a single positive order")),
    };
    let mut rows = Vec::with_capacity(n);
    let mut last_line = first_no;
    for (line_no, line) in lines {
        last_line = line_no;
        if rows.len() == n {
            return Err(err(line_no, 1, format!("more than {n} rows")));
        }
        let row = parse_row(line_no, line)?;
        if row.len() != n {
            return Err(err(line_no, 1, format!("row has {} entries, expected {n}", row.len())));
        }
        if let Some(&(column, v)) = row.iter().find(|&&(_, v)| v >= n) {
            return Err(err(line_no, column, format!("entry {v} out of range 0..{n}")));
        }
        rows.push(row.into_iter().map(|(_, v)| v).collect());
    }
    if rows.len() != n {
        return Err(err(last_line + 1, 1, format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(rows)
}

pub fn write_table(rows: &[Vec<usize>]) -> String {
    let mut s = format!("{}\n", rows.len());
    for r in rows {
        let line: Vec<String> = r.iter().map(|v| v.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

/// Sidecar for factor loops and subloops: `block-index: member list`.
pub fn write_block_sidecar(blocks: &[Vec<usize>]) -> String {
    let mut s = String::new();
    for (i, b) in blocks.iter().enumerate() {
        let members: Vec<String> = b.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{i}: {}", members.join(" "));
    }
    s
}

pub fn parse_block_sidecar(text: &str) -> Result<Vec<Vec<usize>>, ParseError> {
    let mut blocks = Vec::new();
    for (line_no, line) in content_lines(text) {
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| err(line_no, 1, "expected `index: members`"))?;
        let idx: usize = head
            .trim()
            .parse()
            .map_err(|_| err(line_no, 1, "block index is not an integer"))?;
        if idx != blocks.len() {
            return Err(err(line_no, 1, format!("expected block {}, found {idx}", blocks.len())));
        }
        let members = parse_row(line_no, rest)?;
        blocks.push(members.into_iter().map(|(_, v)| v).collect());
    }
    Ok(blocks)
}

/// One line of whitespace-separated signed integers per item.
pub fn write_int_rows(rows: &[Vec<i64>]) -> String {
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().map(|v| v.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_int_rows(text: &str, width: usize) -> Result<Vec<Vec<i64>>, ParseError> {
    content_lines(text)
        .map(|(line_no, line)| {
            let row = line
                .split_whitespace()
                .map(|p| p.parse::<i64>().map_err(|_| err(line_no, 1, format!("bad integer {p:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != width {
                return Err(err(line_no, 1, format!("expected {width} integers, found {}", row.len())));
            }
            Ok(row)
        })
        .collect()
}
