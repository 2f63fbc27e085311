//! Plain-text matrix files.
//!
//! ```text
//! # a comment
//! matrix 2 3
//! 1 -1/2 0
//! 0 2/3 4
//! ```
//!
//! A block file has the header `block m1 m2 n1 n2` followed by the
//! assembled `(m1+m2)×(n1+n2)` body. Blank lines and lines starting with `#`
//! are skipped everywhere. Printing is canonical (reduced fractions, `p`
//! for integers, single spaces), so `print(parse(print(m))) == print(m)`.

use pseudoschur::ratmat::{format_rational, parse_rational};
use pseudoschur::{BlockMatrix, Error, Matrix, Rational, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(line: usize, field: &str, s: Option<&str>) -> Result<usize> {
    let s = s.ok_or_else(|| parse_err(line, format!("missing {field}")))?;
    s.parse()
        .map_err(|_| parse_err(line, format!("{field} must be a non-negative integer, got {s:?}")))
}

fn parse_entry(line: usize, s: &str) -> Result<Rational> {
    if let Some((_, d)) = s.split_once('/') {
        if d.trim_start().starts_with('-') {
            return Err(parse_err(line, format!("denominator must be positive in {s:?}")));
        }
    }
    parse_rational(s).ok_or_else(|| parse_err(line, format!("not a rational: {s:?}")))
}

fn parse_body<'a>(
    mut lines: impl Iterator<Item = (usize, &'a str)>,
    rows: usize,
    cols: usize,
    header_line: usize,
) -> Result<Matrix> {
    let mut data = Vec::with_capacity(rows * cols);
    let mut last = header_line;
    // Rows of a zero-column matrix are empty and therefore not written.
    let written_rows = if cols == 0 { 0 } else { rows };
    for r in 0..written_rows {
        let (n, l) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {rows} rows, found {r}")))?;
        last = n;
        let row: Vec<Rational> = l
            .split_whitespace()
            .map(|tok| parse_entry(n, tok))
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(parse_err(n, format!("expected {cols} entries, found {}", row.len())));
        }
        data.extend(row);
    }
    if let Some((n, _)) = lines.next() {
        return Err(parse_err(n, format!("unexpected content after {written_rows} rows")));
    }
    Matrix::from_vec(rows, cols, data)
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
) -> Result<(usize, Vec<&'a str>)> {
    let (n, l) = lines
        .next()
        .ok_or_else(|| parse_err(1, format!("empty file, expected `{keyword}` header")))?;
    let mut parts = l.split_whitespace();
    match parts.next() {
        Some(k) if k == keyword => Ok((n, parts.collect())),
        Some(k) => Err(parse_err(n, format!("expected `{keyword}` header, found {k:?}"))),
        None => unreachable!("content lines are non-empty"),
    }
}

fn exact_fields(n: usize, fields: &[&str], names: &[&str]) -> Result<Vec<usize>> {
    if fields.len() > names.len() {
        return Err(parse_err(n, format!("too many header fields: {}", fields.len())));
    }
    names
        .iter()
        .enumerate()
        .map(|(i, name)| parse_usize(n, name, fields.get(i).copied()))
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = content_lines(text);
    let (n, fields) = header(&mut lines, "matrix")?;
    let dims = exact_fields(n, &fields, &["rows", "cols"])?;
    parse_body(lines, dims[0], dims[1], n)
}

pub fn parse_block(text: &str) -> Result<BlockMatrix> {
    let mut lines = content_lines(text);
    let (n, fields) = header(&mut lines, "block")?;
    let p = exact_fields(n, &fields, &["m1", "m2", "n1", "n2"])?;
    let body = parse_body(lines, p[0] + p[1], p[2] + p[3], n)?;
    BlockMatrix::split(&body, p[0], p[2]).map_err(|e| parse_err(n, e.to_string()))
}

fn body(m: &Matrix) -> String {
    let mut out = String::new();
    if m.cols() == 0 {
        return out;
    }
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(format_rational).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn print_matrix(m: &Matrix) -> String {
    format!("matrix {} {}\n{}", m.rows(), m.cols(), body(m))
}

pub fn print_block(m: &BlockMatrix) -> String {
    let (m1, m2, n1, n2) = m.partition();
    format!("block {m1} {m2} {n1} {n2}\n{}", body(&m.assemble()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pseudoschur::{matrix, q};

    #[test]
    fn parses_with_comments_and_fractions() {
        let m = parse_matrix("# header comment\n\nmatrix 2 2\n1 2/4\n  -3/1 0\n# trailing\n").unwrap();
        assert_eq!(m, matrix![[1, "1/2"], [-3, 0]]);
        assert_eq!(print_matrix(&m), "matrix 2 2\n1 1/2\n-3 0\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("matrix 2 2\n1 2\n3\n", 3),
            ("\n\nmatrix 1 1\n1/0\n", 4),
            ("matrix 1 1\n1/-2\n", 2),
            ("matrix 1 x\n", 1),
            ("matrix 1 1\n1\n2\n", 3),
            ("matrix 2 1\n1\n", 3),
            ("", 1),
        ];
        for (text, line) in cases {
            match parse_matrix(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} parsed as {other:?}"),
            }
        }
    }

    #[test]
    fn block_errors() {
        for (text, line) in [
            ("block 1 1 1\n", 1),
            ("matrix 1 1\n1\n", 1),
            ("block 1 1 1 1\n1 2\n3 x\n", 3),
        ] {
            match parse_block(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} parsed as {other:?}"),
            }
        }
    }

    #[test]
    fn block_round_trip() {
        let text = "block 1 2 2 1\n1 0 1/3\n0 1 0\n2 2 -1\n";
        let b = parse_block(text).unwrap();
        assert_eq!(b.partition(), (1, 2, 2, 1));
        assert_eq!(b.c()[(1, 0)], q(2, 1));
        assert_eq!(print_block(&b), text);
    }

    #[test]
    fn zero_column_matrices_have_no_body() {
        let m = Matrix::zeros(3, 0);
        assert_eq!(print_matrix(&m), "matrix 3 0\n");
        assert_eq!(parse_matrix("matrix 3 0\n").unwrap(), m);
        assert!(parse_matrix("matrix 3 0\n1\n").is_err());
    }

    #[test]
    fn empty_blocks_are_allowed() {
        let b = parse_block("block 0 2 1 1\n1 2\n3 4\n").unwrap();
        assert_eq!(b.a().shape(), (0, 1));
        assert_eq!(b.d(), &matrix![[2], [4]]);
    }
}
