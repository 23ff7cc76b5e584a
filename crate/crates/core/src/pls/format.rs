//! Text formats.
//!
//! * triple list: one `r c s` per line, 1-based integers;
//! * grid: one line per row, whitespace-separated tokens, `.` for an empty
//!   cell, any other token is a symbol.
//!
//! `#` starts a comment in both. Files holding several squares separate them
//! with blank lines.

use std::collections::HashMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Pls, PlsError, Triple, MAX_LABELS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlsFormat {
    Triples,
    Grid,
}

impl PlsFormat {
    /// Triple list when every content line is three integers, grid otherwise.
    pub fn detect(text: &str) -> PlsFormat {
        let mut any = false;
        for line in content_lines(text) {
            any = true;
            let toks: Vec<_> = line.1.split_whitespace().collect();
            if toks.len() != 3 || toks.iter().any(|t| t.parse::<u32>().is_err()) {
                return PlsFormat::Grid;
            }
        }
        if any {
            PlsFormat::Triples
        } else {
            PlsFormat::Grid
        }
    }

    pub fn write(self, p: &Pls) -> String {
        match self {
            PlsFormat::Triples => write_triples(p),
            PlsFormat::Grid => p.to_string(),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_triples(text: &str) -> Result<Pls, PlsError> {
    let mut raw = Vec::new();
    for (line, content) in content_lines(text) {
        let nums: Result<Vec<u32>, _> = content.split_whitespace().map(str::parse).collect();
        match nums {
            Ok(v) if v.len() == 3 => raw.push((v[0], v[1], v[2])),
            _ => {
                return Err(PlsError::Parse {
                    line,
                    msg: format!("expected `r c s`, got {content:?}"),
                })
            }
        }
    }
    Pls::from_raw(&raw)
}

/// Rows and columns keep their positional order; empty ones are dropped.
/// Symbols are numbered by first appearance in reading order.
pub fn parse_grid(text: &str) -> Result<Pls, PlsError> {
    let mut cells: Vec<(usize, usize, u8)> = Vec::new();
    let mut syms: HashMap<&str, u8> = HashMap::new();
    for (row, (line, content)) in content_lines(text).enumerate() {
        for (col, tok) in content.split_whitespace().enumerate() {
            if tok == "." {
                continue;
            }
            if !tok.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-') {
                return Err(PlsError::Parse {
                    line,
                    msg: format!("bad symbol token {tok:?}"),
                });
            }
            let next = syms.len();
            let id = *syms.entry(tok).or_insert(next.min(MAX_LABELS) as u8);
            if next >= MAX_LABELS {
                return Err(PlsError::TooManyLabels);
            }
            cells.push((row, col, id));
        }
    }
    if cells.is_empty() {
        return Err(PlsError::EmptyInput);
    }
    let rank = |used: Vec<usize>| -> Result<HashMap<usize, u8>, PlsError> {
        let mut used = used;
        used.sort_unstable();
        used.dedup();
        if used.len() > MAX_LABELS {
            return Err(PlsError::TooManyLabels);
        }
        Ok(used.into_iter().enumerate().map(|(i, v)| (v, i as u8)).collect())
    };
    let rows = rank(cells.iter().map(|c| c.0).collect())?;
    let cols = rank(cells.iter().map(|c| c.1).collect())?;
    let triples = cells
        .iter()
        .map(|&(r, c, s)| Triple::new(rows[&r], cols[&c], s))
        .collect();
    Pls::from_dense(triples)
}

pub fn parse_pls(text: &str) -> Result<Pls, PlsError> {
    match PlsFormat::detect(text) {
        PlsFormat::Triples => parse_triples(text),
        PlsFormat::Grid => parse_grid(text),
    }
}

/// Parses blank-line separated blocks, each in either format.
pub fn parse_pls_list(text: &str) -> Result<Vec<Pls>, PlsError> {
    let mut out = Vec::new();
    let mut block = String::new();
    let mut first_line = 1;
    let flush = |block: &mut String, first_line: usize, out: &mut Vec<Pls>| {
        if content_lines(block).next().is_some() {
            let p = parse_pls(block).map_err(|e| match e {
                PlsError::Parse { line, msg } => PlsError::Parse {
                    line: line + first_line - 1,
                    msg,
                },
                e => e,
            })?;
            out.push(p);
        }
        block.clear();
        Ok::<(), PlsError>(())
    };
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            flush(&mut block, first_line, &mut out)?;
            first_line = i + 2;
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    flush(&mut block, first_line, &mut out)?;
    Ok(out)
}

pub fn write_triples(p: &Pls) -> String {
    let mut s = String::new();
    for t in p.triples() {
        let (r, c, y) = t.one_based();
        writeln!(s, "{r} {c} {y}").unwrap();
    }
    s
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::pls::canonical_form;

    #[test]
    fn grid_keeps_column_positions() {
        let p = parse_grid("a . . . . c\n. a . . b .\n. . b c . .").unwrap();
        assert_eq!(p.counts(), [3, 6, 3]);
        assert!(p.contains(&Triple::new(0, 5, 1)));
        assert!(p.contains(&Triple::new(1, 4, 2)));
    }

    #[test]
    fn detect_and_round_trip() {
        let grid = "a b .\nc a b\n. c d\n";
        assert_eq!(PlsFormat::detect(grid), PlsFormat::Grid);
        let p = parse_pls(grid).unwrap();
        let triples = write_triples(&p);
        assert_eq!(PlsFormat::detect(&triples), PlsFormat::Triples);
        let q = parse_pls(&triples).unwrap();
        assert_eq!(p, q);
        assert_eq!(parse_pls(&p.to_string()).unwrap(), p);
        assert_eq!(canonical_form(&q), canonical_form(&p));
    }

    #[test]
    fn comments_blank_blocks_and_errors() {
        let text = "# first\n1 1 1\n1 2 2\n\n\na b\nb a # cycle\n";
        let list = parse_pls_list(text).unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(list[1].size(), 4);
        let err = parse_triples("1 1 1\n1 x 2\n").unwrap_err();
        assert!(matches!(err, PlsError::Parse { line: 2, .. }));
        let err = parse_pls_list("1 1 1\n\n1 2 3\n2 2 2 @\n").unwrap_err();
        assert!(matches!(err, PlsError::Parse { line: 4, .. }), "{err:?}");
        assert_eq!(parse_grid(". .\n. ."), Err(PlsError::EmptyInput));
        assert!(matches!(
            parse_grid("a a"),
            Err(PlsError::LatinConflict { .. })
        ));
    }
}
