//! The plain-text incidence document:
//!
//! ```text
//! points N
//! lines M
//! <ascending point indices of line 0>
//! ...
//! ```
//!
//! One geometry line per text line, single spaces, LF endings. The
//! serializer writes lines in canonical order so parse/serialize is the
//! identity on canonical documents.

use std::fmt::Write as _;

use thiserror::Error;

use super::{IncidenceError, IncidenceStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line_no}: {message}")]
pub struct ParseError {
    /// 1-based line number in the document.
    pub line_no: usize,
    pub message: String,
}

impl ParseError {
    fn new(line_no: usize, message: impl Into<String>) -> Self {
        Self {
            line_no,
            message: message.into(),
        }
    }
}

fn header(text: Option<&str>, key: &str, line_no: usize) -> Result<usize, ParseError> {
    let text = text.ok_or_else(|| ParseError::new(line_no, format!("missing `{key} N` header")))?;
    let mut parts = text.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => v
            .parse()
            .map_err(|_| ParseError::new(line_no, format!("malformed header: bad count `{v}`"))),
        _ => Err(ParseError::new(
            line_no,
            format!("malformed header: expected `{key} N`, found `{text}`"),
        )),
    }
}

pub fn parse_incidence(text: &str) -> Result<IncidenceStructure, ParseError> {
    let mut rows = text.lines();
    let point_count = header(rows.next(), "points", 1)?;
    let line_count = header(rows.next(), "lines", 2)?;

    let mut lines = Vec::with_capacity(line_count);
    for (offset, row) in rows.enumerate() {
        let line_no = offset + 3;
        if row.trim().is_empty() && lines.len() == line_count {
            continue;
        }
        if lines.len() == line_count {
            return Err(ParseError::new(
                line_no,
                format!("more than the declared {line_count} lines"),
            ));
        }
        let mut line = Vec::new();
        for tok in row.split_whitespace() {
            let p: usize = tok
                .parse()
                .map_err(|_| ParseError::new(line_no, format!("bad point index `{tok}`")))?;
            line.push(p);
        }
        lines.push(line);
    }
    if lines.len() != line_count {
        return Err(ParseError::new(
            lines.len() + 3,
            format!("expected {line_count} lines, found {}", lines.len()),
        ));
    }

    IncidenceStructure::new(point_count, lines).map_err(|e| {
        let at = |l: usize| l + 3;
        match &e {
            IncidenceError::OutOfRange { line, .. }
            | IncidenceError::RepeatedPoint { line, .. }
            | IncidenceError::ShortLine { line, .. } => ParseError::new(at(*line), e.to_string()),
            IncidenceError::DuplicateLine { second, .. } => ParseError::new(at(*second), e.to_string()),
            _ => ParseError::new(1, e.to_string()),
        }
    })
}

pub fn serialize_incidence(g: &IncidenceStructure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "points {}", g.point_count());
    let _ = writeln!(out, "lines {}", g.line_count());
    for line in g.lines() {
        let row: Vec<String> = line.iter().map(|p| p.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let g = parse_incidence("points 3\nlines 1\n0 1 2").unwrap();
        assert_eq!(g.point_count(), 3);
        assert_eq!(g.lines(), &[vec![0, 1, 2]]);
        assert_eq!(serialize_incidence(&g), "points 3\nlines 1\n0 1 2\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_incidence("points 2\nlines 1\n0 5").unwrap_err();
        assert_eq!(e.line_no, 3);
        assert!(e.message.contains("out of range"));

        let e = parse_incidence("pts 2\nlines 1\n0 1").unwrap_err();
        assert_eq!(e.line_no, 1);
        assert!(e.message.contains("malformed header"));

        let e = parse_incidence("points 4\nlines 3\n0 1\n2 3\n1 0").unwrap_err();
        assert_eq!(e.line_no, 5);
        assert!(e.message.contains("same point set"));

        let e = parse_incidence("points 4\nlines 2\n0 1\n2").unwrap_err();
        assert_eq!(e.line_no, 4);

        let e = parse_incidence("points 4\nlines 2\n0 1").unwrap_err();
        assert!(e.message.contains("expected 2 lines"));

        let e = parse_incidence("points 4\nlines 1\n0 x").unwrap_err();
        assert!(e.message.contains("bad point index"));
    }

    #[test]
    fn non_canonical_input_is_canonicalized() {
        let g = parse_incidence("points 4\nlines 2\n3 2\n1 0\n").unwrap();
        assert_eq!(serialize_incidence(&g), "points 4\nlines 2\n0 1\n2 3\n");
    }
}
