//! Shared pieces of the line-oriented text formats.

use thiserror::Error;

/// A parse failure with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// A whitespace-separated token and its 1-based column.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

/// Non-blank, non-comment lines with 1-based line numbers. `#` starts a comment.
pub(crate) fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if line.trim().is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

pub(crate) fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..pos],
                    column: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(pos);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    out
}

/// Splits `key=value`, checking the key.
pub(crate) fn key_value<'a>(
    line_no: usize,
    token: Token<'a>,
    key: &str,
) -> Result<&'a str, ParseError> {
    match token.text.split_once('=') {
        Some((k, v)) if k == key => Ok(v),
        _ => Err(ParseError::new(
            line_no,
            token.column,
            format!("expected `{key}=...`, found `{}`", token.text),
        )),
    }
}

pub(crate) fn is_label(text: &str) -> bool {
    !text.is_empty() && text.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Parses a bracketed list of signed labels such as `[+a,-b]`, returning
/// each label with its column.
pub(crate) fn signed_labels(
    line_no: usize,
    column: usize,
    text: &str,
) -> Result<Vec<(crate::Orientation, String, usize)>, ParseError> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| {
            ParseError::new(line_no, column, format!("expected `[...]`, found `{text}`"))
        })?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut offset = column + 1;
    let mut out = Vec::new();
    for item in inner.split(',') {
        let sign = match item.as_bytes().first() {
            Some(b'+') => crate::Orientation::Plus,
            Some(b'-') => crate::Orientation::Minus,
            _ => {
                return Err(ParseError::new(
                    line_no,
                    offset,
                    format!("expected `+label` or `-label`, found `{item}`"),
                ))
            }
        };
        let label = &item[1..];
        if !is_label(label) {
            return Err(ParseError::new(
                line_no,
                offset + 1,
                format!("invalid label `{label}`"),
            ));
        }
        out.push((sign, label.to_owned(), offset + 1));
        offset += item.len() + 1;
    }
    Ok(out)
}
