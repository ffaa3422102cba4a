//! The DOOBPC text format for check matrices.
//!
//! ```text
//! DOOBPC 1
//! rows=3 m=8 nprime=1 npp=4
//! 1022011221231110|10|1001
//! ...
//! ```
//!
//! One line per matrix row: 2m Z4 digits, a pipe, 2n′ Z2 digits, a pipe, n″
//! Z4 digits.  Writing is deterministic and byte-exact; parsing reports the
//! 1-based line and column of the first offending byte.

use std::fmt;

use crate::matrix::{CheckMatrix, MatrixError, MAX_COORDS, MAX_ROWS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl FormatError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> FormatError {
        FormatError { line, column, message: message.into() }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for FormatError {}

/// Renders a matrix in DOOBPC form, ending with a newline.
pub fn write_matrix(matrix: &CheckMatrix) -> String {
    let shape = matrix.shape();
    let rows = matrix.rows();
    let mut out = String::new();
    out.push_str("DOOBPC 1\n");
    out.push_str(&format!("rows={rows} m={} nprime={} npp={}\n", shape.m, shape.nprime, shape.npp));
    for r in 0..rows {
        for col in matrix.left() {
            out.push((b'0' + col[r]) as char);
        }
        out.push('|');
        for col in matrix.middle() {
            out.push((b'0' + col[r]) as char);
        }
        out.push('|');
        for col in matrix.right() {
            out.push((b'0' + col[r]) as char);
        }
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<CheckMatrix, FormatError> {
    let mut lines = text.split('\n').enumerate();

    let (_, magic) = lines.next().unwrap_or((0, ""));
    if magic != "DOOBPC 1" {
        return Err(FormatError::new(1, 1, "expected header \"DOOBPC 1\""));
    }

    let (_, header) = lines
        .next()
        .ok_or_else(|| FormatError::new(2, 1, "missing dimension line"))?;
    let dims = parse_dims(header)?;
    let [rows, m, nprime, npp] = dims;
    if rows == 0 || rows > MAX_ROWS {
        return Err(FormatError::new(2, 1, format!("rows must lie in 1..={MAX_ROWS}, got {rows}")));
    }
    let width = m
        .checked_mul(2)
        .and_then(|a| nprime.checked_mul(2).and_then(|b| a.checked_add(b)))
        .and_then(|a| a.checked_add(npp))
        .filter(|&w| w.saturating_mul(rows) <= MAX_COORDS)
        .ok_or_else(|| FormatError::new(2, 1, "dimensions too large"))?;

    let mut left = vec![vec![0u8; rows]; 2 * m];
    let mut middle = vec![vec![0u8; rows]; 2 * nprime];
    let mut right = vec![vec![0u8; rows]; npp];
    for r in 0..rows {
        let (idx, line) = lines
            .next()
            .ok_or_else(|| FormatError::new(3 + r, 1, format!("missing row {} of {rows}", r + 1)))?;
        let lineno = idx + 1;
        // Sections: Z4 digits | Z2 digits | Z4 digits with fixed widths.
        let bytes = line.as_bytes();
        let expected_len = width + 2;
        let pipe1 = 2 * m;
        let pipe2 = 2 * m + 2 * nprime + 1;
        for (i, &b) in bytes.iter().enumerate() {
            if i >= expected_len {
                break;
            }
            let col = i + 1;
            if i == pipe1 || i == pipe2 {
                if b != b'|' {
                    return Err(FormatError::new(lineno, col, "expected '|'"));
                }
            } else if i < pipe1 {
                left[i][r] = z4_digit(b, lineno, col)?;
            } else if i < pipe2 {
                let d = z4_digit(b, lineno, col)?;
                if d > 1 {
                    return Err(FormatError::new(lineno, col, "middle block digits must be 0 or 1"));
                }
                middle[i - pipe1 - 1][r] = d;
            } else {
                right[i - pipe2 - 1][r] = z4_digit(b, lineno, col)?;
            }
        }
        if bytes.len() != expected_len {
            return Err(FormatError::new(
                lineno,
                bytes.len().min(expected_len) + 1,
                format!("row line must have {expected_len} characters, got {}", bytes.len()),
            ));
        }
    }
    for (idx, line) in lines {
        if !line.trim().is_empty() {
            return Err(FormatError::new(idx + 1, 1, "unexpected content after matrix rows"));
        }
    }

    CheckMatrix::new(rows, left, middle, right).map_err(|e: MatrixError| {
        // Everything the matrix constructor checks is already enforced above.
        FormatError::new(2, 1, e.to_string())
    })
}

fn parse_dims(header: &str) -> Result<[usize; 4], FormatError> {
    let keys = ["rows", "m", "nprime", "npp"];
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 4 {
        return Err(FormatError::new(2, 1, "expected \"rows=R m=M nprime=N npp=K\""));
    }
    let mut out = [0usize; 4];
    let mut col = 1;
    for (i, (field, key)) in fields.iter().zip(keys).enumerate() {
        let value = field
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| FormatError::new(2, col, format!("expected {key}=<number>")))?;
        out[i] = value
            .parse::<usize>()
            .map_err(|_| FormatError::new(2, col + key.len() + 1, format!("bad number {value:?}")))?;
        col += field.len() + 1;
    }
    Ok(out)
}

fn z4_digit(b: u8, line: usize, column: usize) -> Result<u8, FormatError> {
    match b {
        b'0'..=b'3' => Ok(b - b'0'),
        _ => Err(FormatError::new(line, column, format!("invalid digit {:?}", b as char))),
    }
}
