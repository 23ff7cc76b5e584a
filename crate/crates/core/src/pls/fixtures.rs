//! Named squares used throughout the classification, with known cyclic
//! embeddings for the nine size-6 squares that survive screening at orders
//! `2, 4 mod 6`.

use std::collections::BTreeMap;

use super::{canonical_form, gen_diagonal, gen_evans, gen_row_cycle, parse_grid, Pls, PlsError, SpeciesKey};

/// A label in `Z_n`, `base + half * n/2`. Labels with `half != 0` only make
/// sense for even `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZnLabel {
    pub base: i64,
    pub half: i64,
}

impl ZnLabel {
    pub const fn fixed(base: i64) -> Self {
        ZnLabel { base, half: 0 }
    }

    pub fn resolve(self, n: usize) -> Option<usize> {
        if self.half != 0 && n % 2 == 1 {
            return None;
        }
        let n = n as i64;
        Some((self.base + self.half * (n / 2)).rem_euclid(n) as usize)
    }
}

/// Row and column images of an embedding into `Z_n` (additive, so the image
/// of a symbol is row + column). Indexed by the square's dense labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZnWitness {
    pub rows: Vec<ZnLabel>,
    pub cols: Vec<ZnLabel>,
    /// Smallest order for which the labels are pairwise distinct.
    pub min_order: usize,
}

impl ZnWitness {
    /// `(rows, cols, syms)` as residues mod `n`, or `None` if the witness does
    /// not apply to this order.
    pub fn resolve(&self, pls: &Pls, n: usize) -> Option<(Vec<usize>, Vec<usize>, Vec<usize>)> {
        if n < self.min_order {
            return None;
        }
        let rows: Vec<usize> = self.rows.iter().map(|l| l.resolve(n)).collect::<Option<_>>()?;
        let cols: Vec<usize> = self.cols.iter().map(|l| l.resolve(n)).collect::<Option<_>>()?;
        let mut syms = vec![usize::MAX; pls.n_syms()];
        for t in pls.triples() {
            syms[t.sym as usize] = (rows[t.row as usize] + cols[t.col as usize]) % n;
        }
        Some((rows, cols, syms))
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub grid: &'static str,
    pub pls: Pls,
    pub witness: Option<ZnWitness>,
}

const F: fn(i64) -> ZnLabel = ZnLabel::fixed;

fn labels(v: &[i64]) -> Vec<ZnLabel> {
    v.iter().map(|&x| F(x)).collect()
}

fn zn(rows: &[i64], cols: &[i64]) -> Option<ZnWitness> {
    Some(ZnWitness {
        rows: labels(rows),
        cols: labels(cols),
        min_order: 6,
    })
}

/// The sixteen named squares.
///
/// `sixcell_8` embeds only in cyclic groups of even order: with rows
/// `e, x, y` and columns `e, u, v`, the cells force `v^2 = u^2` with `u != v`.
/// Its witness uses the element of order 2.
pub fn fixtures() -> BTreeMap<&'static str, Fixture> {
    let entries: Vec<(&'static str, &'static str, Option<ZnWitness>)> = vec![
        ("quadcrit_a", "a b .\nc a b\n. c d", None),
        ("quadcrit_b", "a b .\nc a b\n. d a", None),
        (
            "interesting",
            "a . . . . c\n. a . . b .\n. . b c . .",
            None,
        ),
        ("nonab", "a b .\nc . b\n. c d", None),
        ("noninterc", "a b .\n. a b", None),
        ("overlapinterc", "a b c\nb a .\nc . a", None),
        ("order4", "a b c\nb c .\nc . a", None),
        (
            "sixcell_1",
            "a b . .\n. a . .\n. . a b\n. . b .",
            zn(&[0, 1, 3, 2], &[0, -1, -3, -4]),
        ),
        (
            "sixcell_2",
            "a b . .\n. a c .\n. . a b",
            zn(&[0, 1, 3], &[0, -1, -3, -4]),
        ),
        ("sixcell_3", "a b .\n. a c\nd . a", zn(&[0, 1, 3], &[0, -1, -3])),
        (
            "sixcell_4",
            "a c . .\n. a . b\n. . b c",
            zn(&[0, -2, 1], &[0, 2, -2, 1]),
        ),
        (
            "sixcell_5",
            "a . . c\n. a . b\nc . b .",
            zn(&[0, -2, 1], &[0, 2, -2, 1]),
        ),
        (
            "sixcell_6",
            "a b . .\n. a b .\n. . a b",
            zn(&[0, 1, 2], &[0, -1, -2, -3]),
        ),
        ("sixcell_7", "a b .\n. a b\nc . a", zn(&[0, 1, 2], &[0, -1, -2])),
        (
            "sixcell_8",
            "a b .\n. a c\nc . b",
            Some(ZnWitness {
                rows: vec![F(0), F(2), ZnLabel { base: 0, half: 1 }],
                cols: vec![F(0), F(-2), ZnLabel { base: -2, half: 1 }],
                min_order: 6,
            }),
        ),
        ("sixcell_9", "a . c\n. a b\nb c .", zn(&[0, 1, 2], &[0, -1, 1])),
    ];
    entries
        .into_iter()
        .map(|(name, grid, witness)| {
            let pls = parse_grid(grid).expect("fixture grids are valid");
            (
                name,
                Fixture {
                    name,
                    grid,
                    pls,
                    witness,
                },
            )
        })
        .collect()
}

/// Names of the nine size-6 squares with cyclic witnesses.
pub const SIXCELL_NAMES: [&str; 9] = [
    "sixcell_1",
    "sixcell_2",
    "sixcell_3",
    "sixcell_4",
    "sixcell_5",
    "sixcell_6",
    "sixcell_7",
    "sixcell_8",
    "sixcell_9",
];

/// Reads named grids: a `[name]` header line followed by the grid rows.
/// `#` starts a comment.
pub fn parse_fixture_file(text: &str) -> Result<BTreeMap<String, Pls>, PlsError> {
    let mut out = BTreeMap::new();
    let mut current: Option<(String, usize, Vec<&str>)> = None;
    let mut finish = |entry: Option<(String, usize, Vec<&str>)>| -> Result<(), PlsError> {
        if let Some((name, line, rows)) = entry {
            let pls = parse_grid(&rows.join("\n")).map_err(|e| PlsError::Parse {
                line,
                msg: format!("fixture {name}: {e}"),
            })?;
            out.insert(name, pls);
        }
        Ok(())
    };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            finish(current.take())?;
            current = Some((name.trim().to_string(), i + 1, Vec::new()));
        } else if let Some((_, _, rows)) = current.as_mut() {
            rows.push(line);
        } else {
            return Err(PlsError::Parse {
                line: i + 1,
                msg: "grid row before any [name] header".into(),
            });
        }
    }
    finish(current.take())?;
    Ok(out)
}

/// The built-in fixtures in [`parse_fixture_file`] format.
pub fn write_fixture_file() -> String {
    let mut out = String::new();
    for (name, f) in fixtures() {
        out.push_str(&format!("[{name}]\n{}\n\n", f.grid));
    }
    out
}

/// A readable name for a species when it is a fixture or a generated
/// family member: `C3`, `T4`, `E(6,2)`, `nonab`.
pub fn describe(key: &SpeciesKey) -> Option<String> {
    for (name, f) in fixtures() {
        if canonical_form(&f.pls) == *key {
            return Some(name.to_string());
        }
    }
    let size = key.size();
    if size % 2 == 0 && size >= 4 && canonical_form(&gen_row_cycle(size / 2).ok()?) == *key {
        return Some(format!("C{}", size / 2));
    }
    if canonical_form(&gen_diagonal(size).ok()?) == *key {
        return Some(format!("T{size}"));
    }
    (1..size)
        .find(|&a| gen_evans(size, a).is_ok_and(|p| canonical_form(&p) == *key))
        .map(|a| format!("E({size},{a})"))
}
