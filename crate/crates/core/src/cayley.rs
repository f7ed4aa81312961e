//! Shared validation for square Cayley tables: shape, Latin property, identity.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({row},{col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("not a Latin square: value {value} repeated in row {row} (column {col})")]
    RepeatedInRow { row: usize, col: usize, value: usize },
    #[error("not a Latin square: value {value} repeated in column {col} (row {row})")]
    RepeatedInColumn { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
}

/// Flattens a square table, checking shape and range.
pub(crate) fn flatten(rows: &[Vec<usize>]) -> Result<(usize, Vec<usize>), TableError> {
    let n = rows.len();
    if n == 0 {
        return Err(TableError::Empty);
    }
    let mut flat = Vec::with_capacity(n * n);
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(TableError::NotSquare { row, len: r.len(), expected: n });
        }
        for (col, &value) in r.iter().enumerate() {
            if value >= n {
                return Err(TableError::OutOfRange { row, col, value });
            }
            flat.push(value);
        }
    }
    Ok((n, flat))
}

/// Checks every row, then every column, reporting the first repeat found.
pub(crate) fn check_latin(n: usize, t: &[usize]) -> Result<(), TableError> {
    let mut seen = vec![usize::MAX; n];
    for row in 0..n {
        for col in 0..n {
            let value = t[row * n + col];
            if seen[value] == row {
                return Err(TableError::RepeatedInRow { row, col, value });
            }
            seen[value] = row;
        }
    }
    seen.iter_mut().for_each(|s| *s = usize::MAX);
    for col in 0..n {
        for row in 0..n {
            let value = t[row * n + col];
            if seen[value] == col {
                return Err(TableError::RepeatedInColumn { row, col, value });
            }
            seen[value] = col;
        }
    }
    Ok(())
}

pub(crate) fn find_identity(n: usize, t: &[usize]) -> Option<usize> {
    (0..n).find(|&e| (0..n).all(|x| t[e * n + x] == x && t[x * n + e] == x))
}

/// Swaps the labels `0` and `e` throughout the table.
pub(crate) fn relabel_identity(n: usize, t: &[usize], e: usize) -> Vec<usize> {
    if e == 0 {
        return t.to_vec();
    }
    let swap = |x: usize| {
        if x == 0 {
            e
        } else if x == e {
            0
        } else {
            x
        }
    };
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[swap(a) * n + swap(b)] = swap(t[a * n + b]);
        }
    }
    out
}

/// Shape, Latin and identity checks; returns the table with identity at 0.
pub(crate) fn normalize(rows: &[Vec<usize>]) -> Result<(usize, Vec<usize>), TableError> {
    let (n, flat) = flatten(rows)?;
    check_latin(n, &flat)?;
    let e = find_identity(n, &flat).ok_or(TableError::NoIdentity)?;
    Ok((n, relabel_identity(n, &flat, e)))
}
