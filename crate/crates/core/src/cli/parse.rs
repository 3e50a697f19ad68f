//! Matrix input: whitespace text with `#` comments, or a JSON object with a
//! `matrix` key. Both parse integers exactly.

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::intmat::IntMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty matrix")]
    Empty,
    #[error("ragged rows: row {row} has {got} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: not an integer: {token:?}")]
    BadToken { line: usize, token: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("JSON input must be an object with a \"matrix\" array of integer arrays")]
    JsonShape,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    Text,
    Json,
}

/// A parsed matrix together with where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixDocument {
    pub source: String,
    pub format: InputFormat,
    pub matrix: IntMatrix,
}

/// JSON when the first non-blank character is `{`, text otherwise.
pub fn detect_format(text: &str) -> InputFormat {
    if text.trim_start().starts_with('{') {
        InputFormat::Json
    } else {
        InputFormat::Text
    }
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix, ParseError> {
    match detect_format(text) {
        InputFormat::Text => parse_text(text),
        InputFormat::Json => parse_json(text),
    }
}

pub fn parse_document(source: impl Into<String>, text: &str) -> Result<MatrixDocument, ParseError> {
    let format = detect_format(text);
    let matrix = parse_matrix(text)?;
    Ok(MatrixDocument {
        source: source.into(),
        format,
        matrix,
    })
}

fn parse_integer(token: &str, line: usize) -> Result<BigInt, ParseError> {
    let digits = token.strip_prefix('-').unwrap_or(token);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::BadToken {
            line,
            token: token.to_string(),
        });
    }
    token.parse().map_err(|_| ParseError::BadToken {
        line,
        token: token.to_string(),
    })
}

fn build(rows: Vec<Vec<BigInt>>) -> Result<IntMatrix, ParseError> {
    let expected = match rows.first() {
        Some(r) if !r.is_empty() => r.len(),
        _ => return Err(ParseError::Empty),
    };
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != expected) {
        return Err(ParseError::Ragged {
            row: i + 1,
            expected,
            got: r.len(),
        });
    }
    IntMatrix::from_rows(rows).map_err(|_| ParseError::Empty)
}

pub fn parse_text(text: &str) -> Result<IntMatrix, ParseError> {
    let mut rows = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        rows.push(
            tokens
                .iter()
                .map(|t| parse_integer(t, n + 1))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    build(rows)
}

pub fn parse_json(text: &str) -> Result<IntMatrix, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let rows = value
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or(ParseError::JsonShape)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let entries = row.as_array().ok_or(ParseError::JsonShape)?;
        let parsed = entries
            .iter()
            .map(|v| match v {
                // the literal as written, so no float coercion happens
                Value::Number(n) => parse_integer(&n.to_string(), i + 1),
                other => Err(ParseError::BadToken {
                    line: i + 1,
                    token: other.to_string(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(parsed);
    }
    build(out)
}
