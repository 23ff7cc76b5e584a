//! Partial latin squares as sets of `(row, column, symbol)` triples.
//!
//! Every [`Pls`] is stored densely: rows are `0..n_rows`, columns `0..n_cols`
//! and symbols `0..n_syms`, each label used by at least one triple. Text
//! formats and the raw constructor use 1-based ids.

mod canon;
mod enumerate;
mod fixtures;
mod format;
mod generators;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

pub use canon::{canonical_form, SpeciesKey};
pub use enumerate::{enumerate_keys, enumerate_species, sub_species_contains, MAX_ENUMERATION_SIZE};
pub use fixtures::{
    describe, fixtures, parse_fixture_file, write_fixture_file, Fixture, ZnLabel, ZnWitness, SIXCELL_NAMES,
};
pub use format::{parse_grid, parse_pls, parse_pls_list, parse_triples, write_triples, PlsFormat};
pub use generators::{gen_delta, gen_diagonal, gen_diagonal_partition, gen_evans, gen_row_cycle};

/// Largest number of distinct labels per coordinate.
pub const MAX_LABELS: usize = u8::MAX as usize;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PlsError {
    #[error("empty input: a partial latin square needs at least one filled cell")]
    EmptyInput,
    #[error("ids are 1-based, got 0 in triple {0:?}")]
    ZeroId((u32, u32, u32)),
    #[error("latin conflict on {kind}: {first:?} and {second:?}")]
    LatinConflict {
        kind: ConflictKind,
        first: (u32, u32, u32),
        second: (u32, u32, u32),
    },
    #[error("too many distinct labels (limit {MAX_LABELS})")]
    TooManyLabels,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("size {size} exceeds the enumeration limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// The pair of coordinates two conflicting triples share.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConflictKind {
    RowCol,
    RowSym,
    ColSym,
}

impl fmt::Display for ConflictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConflictKind::RowCol => "row-col",
            ConflictKind::RowSym => "row-sym",
            ConflictKind::ColSym => "col-sym",
        })
    }
}

/// One filled cell, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub row: u8,
    pub col: u8,
    pub sym: u8,
}

impl Triple {
    pub const fn new(row: u8, col: u8, sym: u8) -> Self {
        Triple { row, col, sym }
    }

    pub const fn coords(self) -> [u8; 3] {
        [self.row, self.col, self.sym]
    }

    pub const fn from_coords(c: [u8; 3]) -> Self {
        Triple::new(c[0], c[1], c[2])
    }

    pub fn get(self, role: Role) -> u8 {
        self.coords()[role as usize]
    }

    /// 1-based `(row, col, sym)`.
    pub fn one_based(self) -> (u32, u32, u32) {
        (self.row as u32 + 1, self.col as u32 + 1, self.sym as u32 + 1)
    }
}

/// A coordinate role of a triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Row = 0,
    Col = 1,
    Sym = 2,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::Row, Role::Col, Role::Sym];
}

/// A permutation of the three coordinate roles.
///
/// Applying a parastrophe to a triple `t` yields the triple whose coordinate
/// `i` is `t[perm[i]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parastrophe {
    Identity,
    /// rows and columns swapped (transpose)
    RowCol,
    RowSym,
    ColSym,
    /// `(r, c, s) -> (c, s, r)`
    Forward,
    /// `(r, c, s) -> (s, r, c)`
    Backward,
}

impl Parastrophe {
    /// Fixed enumeration order used wherever results must be deterministic.
    pub const ALL: [Parastrophe; 6] = [
        Parastrophe::Identity,
        Parastrophe::RowCol,
        Parastrophe::RowSym,
        Parastrophe::ColSym,
        Parastrophe::Forward,
        Parastrophe::Backward,
    ];

    pub const fn perm(self) -> [usize; 3] {
        match self {
            Parastrophe::Identity => [0, 1, 2],
            Parastrophe::RowCol => [1, 0, 2],
            Parastrophe::RowSym => [2, 1, 0],
            Parastrophe::ColSym => [0, 2, 1],
            Parastrophe::Forward => [1, 2, 0],
            Parastrophe::Backward => [2, 0, 1],
        }
    }

    pub fn from_perm(p: [usize; 3]) -> Option<Parastrophe> {
        Parastrophe::ALL.into_iter().find(|s| s.perm() == p)
    }

    pub fn apply(self, t: Triple) -> Triple {
        let c = t.coords();
        let p = self.perm();
        Triple::from_coords([c[p[0]], c[p[1]], c[p[2]]])
    }

    /// `self.then(other)` applies `self` first, then `other`.
    pub fn then(self, other: Parastrophe) -> Parastrophe {
        let a = self.perm();
        let b = other.perm();
        Parastrophe::from_perm([a[b[0]], a[b[1]], a[b[2]]]).expect("S3 is closed")
    }

    pub fn inverse(self) -> Parastrophe {
        let p = self.perm();
        let mut inv = [0; 3];
        for (i, &pi) in p.iter().enumerate() {
            inv[pi] = i;
        }
        Parastrophe::from_perm(inv).expect("S3 is closed")
    }

    pub fn name(self) -> &'static str {
        match self {
            Parastrophe::Identity => "identity",
            Parastrophe::RowCol => "row-col",
            Parastrophe::RowSym => "row-sym",
            Parastrophe::ColSym => "col-sym",
            Parastrophe::Forward => "forward",
            Parastrophe::Backward => "backward",
        }
    }
}

/// A validated partial latin square with dense 0-based labels.
///
/// Triples are kept sorted, so two `Pls` values compare equal exactly when
/// they have the same cells under the same labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pls {
    triples: Vec<Triple>,
    counts: [usize; 3],
}

impl Pls {
    /// Validates raw 1-based triples, relabelling each coordinate densely in
    /// order of first appearance.
    pub fn from_raw(raw: &[(u32, u32, u32)]) -> Result<Pls, PlsError> {
        if let Some(&t) = raw.iter().find(|t| t.0 == 0 || t.1 == 0 || t.2 == 0) {
            return Err(PlsError::ZeroId(t));
        }
        let cells: Vec<_> = raw.iter().map(|&(r, c, s)| (r, c, s)).collect();
        Pls::from_labels(&cells).map_err(|e| match e {
            LabelError::Empty => PlsError::EmptyInput,
            LabelError::TooMany => PlsError::TooManyLabels,
            LabelError::Conflict {
                kind,
                first,
                second,
                ..
            } => PlsError::LatinConflict {
                kind,
                first: raw[first],
                second: raw[second],
            },
        })
    }

    /// Validates cells labelled by arbitrary tokens (used by the grid format).
    pub fn from_tokens<R, C, S>(cells: &[(R, C, S)]) -> Result<Pls, PlsError>
    where
        R: Eq + Hash + Clone,
        C: Eq + Hash + Clone,
        S: Eq + Hash + Clone,
    {
        Pls::from_labels(cells).map_err(|e| match e {
            LabelError::Empty => PlsError::EmptyInput,
            LabelError::TooMany => PlsError::TooManyLabels,
            LabelError::Conflict { kind, dense, .. } => PlsError::LatinConflict {
                kind,
                first: dense.0.one_based(),
                second: dense.1.one_based(),
            },
        })
    }

    fn from_labels<R, C, S>(cells: &[(R, C, S)]) -> Result<Pls, LabelError>
    where
        R: Eq + Hash + Clone,
        C: Eq + Hash + Clone,
        S: Eq + Hash + Clone,
    {
        if cells.is_empty() {
            return Err(LabelError::Empty);
        }
        let mut rows = Dense::default();
        let mut cols = Dense::default();
        let mut syms = Dense::default();
        let mut triples = Vec::with_capacity(cells.len());
        for (r, c, s) in cells {
            let t = Triple::new(rows.id(r)?, cols.id(c)?, syms.id(s)?);
            triples.push(t);
        }
        let counts = [rows.len(), cols.len(), syms.len()];
        if let Some((kind, i, j)) = find_conflict(&triples, counts) {
            return Err(LabelError::Conflict {
                kind,
                first: i,
                second: j,
                dense: (triples[i], triples[j]),
            });
        }
        triples.sort_unstable();
        Ok(Pls { triples, counts })
    }

    /// Builds from 0-based triples that may leave label gaps; relabels densely.
    pub fn from_triples(triples: &[Triple]) -> Result<Pls, PlsError> {
        let raw: Vec<_> = triples.iter().map(|t| t.one_based()).collect();
        Pls::from_raw(&raw)
    }

    /// Validates 0-based triples whose labels must already be dense.
    pub fn from_dense(triples: Vec<Triple>) -> Result<Pls, PlsError> {
        if triples.is_empty() {
            return Err(PlsError::EmptyInput);
        }
        let mut seen = [vec![false; 256], vec![false; 256], vec![false; 256]];
        for t in &triples {
            for (k, v) in t.coords().into_iter().enumerate() {
                seen[k][v as usize] = true;
            }
        }
        for (k, s) in seen.iter().enumerate() {
            let used = s.iter().filter(|&&b| b).count();
            if s[..used].iter().any(|&b| !b) {
                return Err(PlsError::ParameterOutOfRange(format!(
                    "{:?} labels are not dense",
                    Role::ALL[k]
                )));
            }
        }
        let p = Pls::from_dense_unchecked_nocheck(triples);
        if let Some((kind, i, j)) = find_conflict(&p.triples, p.counts) {
            return Err(PlsError::LatinConflict {
                kind,
                first: p.triples[i].one_based(),
                second: p.triples[j].one_based(),
            });
        }
        Ok(p)
    }

    /// Trusted constructor for triples already known to be dense and latin.
    pub(crate) fn from_dense_unchecked(triples: Vec<Triple>) -> Pls {
        let p = Pls::from_dense_unchecked_nocheck(triples);
        debug_assert!(find_conflict(&p.triples, p.counts).is_none());
        p
    }

    fn from_dense_unchecked_nocheck(mut triples: Vec<Triple>) -> Pls {
        triples.sort_unstable();
        let mut counts = [0usize; 3];
        for t in &triples {
            for (k, v) in t.coords().into_iter().enumerate() {
                counts[k] = counts[k].max(v as usize + 1);
            }
        }
        Pls { triples, counts }
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn size(&self) -> usize {
        self.triples.len()
    }

    pub fn n_rows(&self) -> usize {
        self.counts[0]
    }

    pub fn n_cols(&self) -> usize {
        self.counts[1]
    }

    pub fn n_syms(&self) -> usize {
        self.counts[2]
    }

    pub fn count(&self, role: Role) -> usize {
        self.counts[role as usize]
    }

    pub fn counts(&self) -> [usize; 3] {
        self.counts
    }

    pub fn order(&self) -> usize {
        self.counts.into_iter().max().unwrap_or(0)
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.binary_search(t).is_ok()
    }

    pub fn parastrophe(&self, sigma: Parastrophe) -> Pls {
        let p = sigma.perm();
        let triples = self.triples.iter().map(|&t| sigma.apply(t)).collect::<Vec<_>>();
        let counts = [self.counts[p[0]], self.counts[p[1]], self.counts[p[2]]];
        let mut triples = triples;
        triples.sort_unstable();
        Pls { triples, counts }
    }

    /// Applies label permutations, `rows[r]` being the new label of row `r`.
    pub fn relabel(&self, rows: &[u8], cols: &[u8], syms: &[u8]) -> Pls {
        let triples = self
            .triples
            .iter()
            .map(|t| Triple::new(rows[t.row as usize], cols[t.col as usize], syms[t.sym as usize]))
            .collect();
        Pls::from_dense_unchecked(triples)
    }

    /// The sub-PLS on the given subset of triples, relabelled densely.
    pub fn subset(&self, keep: impl Fn(usize, &Triple) -> bool) -> Option<Pls> {
        let kept: Vec<_> = self
            .triples
            .iter()
            .enumerate()
            .filter(|(i, t)| keep(*i, t))
            .map(|(_, t)| *t)
            .collect();
        if kept.is_empty() {
            None
        } else {
            Some(Pls::from_triples(&kept).expect("subset of a PLS is latin"))
        }
    }

    /// Triples in the given row/column/symbol.
    pub fn line(&self, role: Role, label: u8) -> impl Iterator<Item = &Triple> + '_ {
        self.triples.iter().filter(move |t| t.get(role) == label)
    }

    /// Whether each row, column and symbol occurs exactly once, i.e. the
    /// square lies in the species of a diagonal with distinct symbols.
    pub fn is_transversal_like(&self) -> bool {
        self.counts.iter().all(|&c| c == self.size())
    }
}

impl fmt::Display for Pls {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut grid = vec![vec![None; self.n_cols()]; self.n_rows()];
        for t in &self.triples {
            grid[t.row as usize][t.col as usize] = Some(t.sym);
        }
        for row in grid {
            let line: Vec<String> = row
                .into_iter()
                .map(|cell| cell.map_or(".".to_string(), |s| symbol_token(s)))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Display token for a 0-based symbol: `a`..`z`, then `s27`, `s28`, ...
pub fn symbol_token(s: u8) -> String {
    if s < 26 {
        ((b'a' + s) as char).to_string()
    } else {
        format!("s{}", s as u32 + 1)
    }
}

/// Validates 1-based triples into a PLS.
pub fn validate_pls(triples: &[(u32, u32, u32)]) -> Result<Pls, PlsError> {
    Pls::from_raw(triples)
}

/// Applies a parastrophe.
pub fn parastrophe(p: &Pls, sigma: Parastrophe) -> Pls {
    p.parastrophe(sigma)
}

enum LabelError {
    Empty,
    TooMany,
    Conflict {
        kind: ConflictKind,
        first: usize,
        second: usize,
        dense: (Triple, Triple),
    },
}

struct Dense<T> {
    ids: HashMap<T, u8>,
}

impl<T> Default for Dense<T> {
    fn default() -> Self {
        Dense { ids: HashMap::new() }
    }
}

impl<T: Eq + Hash + Clone> Dense<T> {
    fn id(&mut self, key: &T) -> Result<u8, LabelError> {
        if let Some(&id) = self.ids.get(key) {
            return Ok(id);
        }
        let next = self.ids.len();
        if next >= MAX_LABELS {
            return Err(LabelError::TooMany);
        }
        self.ids.insert(key.clone(), next as u8);
        Ok(next as u8)
    }

    fn len(&self) -> usize {
        self.ids.len()
    }
}

/// First pair of triples (by input position) sharing two coordinates.
fn find_conflict(triples: &[Triple], counts: [usize; 3]) -> Option<(ConflictKind, usize, usize)> {
    let pairs = [
        (ConflictKind::RowCol, 0usize, 1usize),
        (ConflictKind::RowSym, 0, 2),
        (ConflictKind::ColSym, 1, 2),
    ];
    let mut best: Option<(ConflictKind, usize, usize)> = None;
    for (kind, a, b) in pairs {
        let width = counts[b];
        let mut seen = vec![usize::MAX; counts[a] * width];
        for (i, t) in triples.iter().enumerate() {
            let c = t.coords();
            let slot = &mut seen[c[a] as usize * width + c[b] as usize];
            if *slot != usize::MAX {
                if best.map_or(true, |(_, _, j)| i < j) {
                    best = Some((kind, *slot, i));
                }
                break;
            }
            *slot = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell() {
        let p = validate_pls(&[(1, 1, 1)]).unwrap();
        assert_eq!(p.size(), 1);
        assert_eq!(p.order(), 1);
    }

    #[test]
    fn repeated_symbol_in_row() {
        let err = validate_pls(&[(1, 1, 1), (1, 2, 1)]).unwrap_err();
        assert_eq!(
            err,
            PlsError::LatinConflict {
                kind: ConflictKind::RowSym,
                first: (1, 1, 1),
                second: (1, 2, 1),
            }
        );
    }

    #[test]
    fn duplicate_cell_and_empty_input() {
        assert!(matches!(
            validate_pls(&[(2, 3, 1), (2, 3, 1)]),
            Err(PlsError::LatinConflict { kind: ConflictKind::RowCol, .. })
        ));
        assert!(matches!(
            validate_pls(&[(1, 2, 1), (3, 2, 1)]),
            Err(PlsError::LatinConflict { kind: ConflictKind::ColSym, .. })
        ));
        assert_eq!(validate_pls(&[]), Err(PlsError::EmptyInput));
        assert_eq!(validate_pls(&[(0, 1, 1)]), Err(PlsError::ZeroId((0, 1, 1))));
    }

    #[test]
    fn dense_relabel_first_appearance() {
        let p = validate_pls(&[(7, 9, 4), (3, 9, 2)]).unwrap();
        assert_eq!(p.triples(), &[Triple::new(0, 0, 0), Triple::new(1, 0, 1)]);
        assert_eq!(p.counts(), [2, 1, 2]);
    }

    #[test]
    fn quadcrit_dimensions() {
        // a b . / c a b / . c d
        let p = validate_pls(&[
            (1, 1, 1),
            (1, 2, 2),
            (2, 1, 3),
            (2, 2, 1),
            (2, 3, 2),
            (3, 2, 3),
            (3, 3, 4),
        ])
        .unwrap();
        assert_eq!(p.size(), 7);
        assert_eq!(p.counts(), [3, 3, 4]);
        assert_eq!(p.order(), 4);
    }

    #[test]
    fn s3_composition_table() {
        for a in Parastrophe::ALL {
            assert_eq!(a.then(a.inverse()), Parastrophe::Identity);
            for b in Parastrophe::ALL {
                let t = Triple::new(0, 1, 2);
                assert_eq!(b.apply(a.apply(t)), a.then(b).apply(t));
                for c in Parastrophe::ALL {
                    assert_eq!(a.then(b).then(c), a.then(b.then(c)));
                }
            }
        }
        let products: std::collections::HashSet<_> = Parastrophe::ALL
            .iter()
            .flat_map(|&a| Parastrophe::ALL.iter().map(move |&b| a.then(b)))
            .collect();
        assert_eq!(products.len(), 6);
    }

    #[test]
    fn parastrophe_involution_and_identity() {
        let p = gen_evans(5, 2).unwrap();
        assert_eq!(p.parastrophe(Parastrophe::Identity), p);
        let twice = p.parastrophe(Parastrophe::RowSym).parastrophe(Parastrophe::RowSym);
        assert_eq!(twice, p);
        let t = p.parastrophe(Parastrophe::RowSym);
        assert_eq!(t.counts(), [p.n_syms(), p.n_cols(), p.n_rows()]);
    }
}
