//! Text formats for matroids and weight matrices.
//!
//! ```text
//! graph n          vector m n          uniform n r      weights d n
//! 0 1 1 ...        1 0 1/2 ...                          3 1 4 ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Errors carry 1-based
//! line and column positions.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::matroid::{Backend, Matroid};
use crate::multicriteria::WeightMatrix;

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

struct Lines<'a> {
    lines: Vec<(usize, Vec<Token<'a>>)>,
    pos: std::cell::Cell<usize>,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 1;
        for (i, line) in text.lines().enumerate() {
            last_line = i + 1;
            let trimmed = line.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = Vec::new();
            let mut start = None;
            for (j, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
                match (c.is_whitespace(), start) {
                    (false, None) => start = Some(j),
                    (true, Some(s)) => {
                        tokens.push(Token { text: &line[s..j], line: i + 1, column: s + 1 });
                        start = None;
                    }
                    _ => {}
                }
            }
            lines.push((i + 1, tokens));
        }
        Lines { lines, pos: std::cell::Cell::new(0), last_line }
    }

    fn next(&self, what: &str) -> Result<(usize, &[Token<'a>])> {
        let Some((line, tokens)) = self.lines.get(self.pos.get()) else {
            return Err(Error::parse(self.last_line + 1, 1, format!("unexpected end of input, expected {what}")));
        };
        self.pos.set(self.pos.get() + 1);
        Ok((*line, tokens.as_slice()))
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.pos.get()) {
            Some((line, _)) => Err(Error::parse(*line, 1, "unexpected trailing content")),
            None => Ok(()),
        }
    }
}

fn parse_usize(t: &Token) -> Result<usize> {
    t.text.parse().map_err(|_| Error::parse(t.line, t.column, format!("expected a non-negative integer, found `{}`", t.text)))
}

fn parse_i64(t: &Token) -> Result<i64> {
    t.text.parse().map_err(|_| Error::parse(t.line, t.column, format!("expected an integer, found `{}`", t.text)))
}

/// Integer or `p/q`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.parse::<BigInt>().ok()?, q.parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

fn parse_rat_token(t: &Token) -> Result<Rational> {
    parse_rational(t.text).ok_or_else(|| Error::parse(t.line, t.column, format!("expected a rational `p/q` or integer, found `{}`", t.text)))
}

fn expect_count(line: usize, tokens: &[Token], count: usize, what: &str) -> Result<()> {
    if tokens.len() != count {
        let column = tokens.get(count).or(tokens.last()).map_or(1, |t| t.column);
        return Err(Error::parse(line, column, format!("expected {count} {what}, found {}", tokens.len())));
    }
    Ok(())
}

/// Rows of a `vector m n` block.
pub fn parse_vector_rows(text: &str) -> Result<Vec<Vec<Rational>>> {
    let lines = Lines::new(text);
    let (line, header) = lines.next("header `vector m n`")?;
    if header.first().map(|t| t.text) != Some("vector") {
        return Err(Error::parse(line, 1, "expected header `vector m n`"));
    }
    expect_count(line, header, 3, "header fields")?;
    let (m, n) = (parse_usize(&header[1])?, parse_usize(&header[2])?);
    let rows = read_rows(&lines, m, n, parse_rat_token)?;
    lines.finish()?;
    Ok(rows)
}

fn read_rows<T>(lines: &Lines, m: usize, n: usize, parse: impl Fn(&Token) -> Result<T>) -> Result<Vec<Vec<T>>> {
    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, tokens) = lines.next("a matrix row")?;
        expect_count(line, tokens, n, "entries")?;
        rows.push(tokens.iter().map(&parse).collect::<Result<Vec<T>>>()?);
    }
    Ok(rows)
}

pub fn parse_matroid(text: &str) -> Result<Matroid> {
    let lines = Lines::new(text);
    let (line, header) = lines.next("a matroid header")?;
    let kind = header.first().map(|t| t.text).unwrap_or("");
    let m = match kind {
        "graph" => {
            expect_count(line, header, 2, "header fields")?;
            let n = parse_usize(&header[1])?;
            let rows = read_rows(&lines, n, n, |t| match t.text {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                _ => Err(Error::parse(t.line, t.column, format!("adjacency entries are 0 or 1, found `{}`", t.text))),
            })?;
            Matroid::graphical(&rows)?
        }
        "vector" => {
            expect_count(line, header, 3, "header fields")?;
            let (m, n) = (parse_usize(&header[1])?, parse_usize(&header[2])?);
            let rows = read_rows(&lines, m, n, parse_rat_token)?;
            if m == 0 {
                return Err(Error::parse(line, header[1].column, "a vector matroid needs at least one row"));
            }
            Matroid::vector(rows)?
        }
        "uniform" => {
            expect_count(line, header, 3, "header fields")?;
            let (n, r) = (parse_usize(&header[1])?, parse_usize(&header[2])?);
            Matroid::uniform(n, r)?
        }
        _ => return Err(Error::parse(line, 1, "expected `graph`, `vector` or `uniform`")),
    };
    lines.finish()?;
    Ok(m)
}

pub fn parse_weights(text: &str) -> Result<WeightMatrix> {
    let lines = Lines::new(text);
    let (line, header) = lines.next("header `weights d n`")?;
    if header.first().map(|t| t.text) != Some("weights") {
        return Err(Error::parse(line, 1, "expected header `weights d n`"));
    }
    expect_count(line, header, 3, "header fields")?;
    let (d, n) = (parse_usize(&header[1])?, parse_usize(&header[2])?);
    let rows = read_rows(&lines, d, n, parse_i64)?;
    lines.finish()?;
    WeightMatrix::new(rows)
}

/// Text form accepted by [`parse_matroid`].
pub fn format_matroid(m: &Matroid) -> String {
    match m.backend() {
        Backend::Uniform { rank } => format!("uniform {} {rank}\n", m.n()),
        Backend::Graphical { vertices, edges } => {
            let mut adj = vec![vec![0u8; *vertices]; *vertices];
            for &(a, b) in edges {
                adj[a][b] = 1;
                adj[b][a] = 1;
            }
            let mut s = format!("graph {vertices}\n");
            for row in adj {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                s.push_str(&cells.join(" "));
                s.push('\n');
            }
            s
        }
        Backend::Vector { rows } => {
            let mut s = format!("vector {} {}\n", rows.len(), m.n());
            for row in rows {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                s.push_str(&cells.join(" "));
                s.push('\n');
            }
            s
        }
    }
}

pub fn format_weights(w: &WeightMatrix) -> String {
    let mut s = format!("weights {} {}\n", w.d(), w.n());
    for row in w.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{k4, sample_vector_matroid};

    fn parse_err(text: &str) -> (usize, usize) {
        match parse_matroid(text) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn round_trips() {
        for m in [k4(), sample_vector_matroid(), Matroid::uniform(5, 2).unwrap()] {
            let text = format_matroid(&m);
            let back = parse_matroid(&text).unwrap();
            assert_eq!(format_matroid(&back), text);
            assert_eq!(back.n(), m.n());
            assert_eq!(back.rank_of_matroid(), m.rank_of_matroid());
        }
        let w = parse_weights("weights 2 3\n1 2 3\n-4 5 6\n").unwrap();
        assert_eq!(format_weights(&w), "weights 2 3\n1 2 3\n-4 5 6\n");
    }

    #[test]
    fn vector_entries_may_be_fractions() {
        let m = parse_matroid("# comment\nvector 2 3\n1/2 0 1\n0 2/3 1\n").unwrap();
        assert_eq!(m.rank_of_matroid(), 2);
        assert_eq!(parse_rational("-3/6"), Some(Rational::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse_err("graph 2\n0 1\n1 x\n"), (3, 3));
        assert_eq!(parse_err("vector 1 2\n1 2 3\n"), (2, 5));
        assert_eq!(parse_err("matrix 2\n"), (1, 1));
        assert_eq!(parse_err("uniform 4 2\nextra\n"), (2, 1));
        assert_eq!(parse_err("graph 3\n0 1 0\n"), (3, 1));
        assert!(matches!(parse_weights("weights 1 2\n1 2.5\n"), Err(Error::Parse { line: 2, column: 3, .. })));
    }

    #[test]
    fn semantic_errors_are_not_parse_errors() {
        assert!(matches!(parse_matroid("graph 2\n1 0\n0 0\n"), Err(Error::Invalid(_))));
        assert!(matches!(parse_matroid("uniform 2 3\n"), Err(e) if !matches!(e, Error::Parse { .. })));
    }
}
