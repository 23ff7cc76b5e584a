//! Reduction rules that let a square inherit embeddability from a smaller
//! one, and the classification pipeline built on them.
//!
//! Both rules are stated for rows; they are applied to every parastrophe of a
//! square so that columns and symbols are covered too.

mod psi;

use serde::Serialize;

use crate::embed::transversal_fast_path;
use crate::pls::{enumerate_keys, Parastrophe, Pls, PlsError, SpeciesKey, Triple};

pub use crate::embed::row_cycle_species;
pub use psi::{
    class_of, psi, psi_formula, psi_with, ObstacleCertificate, ObstacleReport, PsiOptions, PsiResult,
    SizeStats, Variant,
};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ScreeningError {
    #[error("triple {0:?} is not in the square")]
    TripleNotInP((u32, u32, u32)),
    #[error("square has order {order}, more than n = {n}")]
    OrderExceedsN { order: usize, n: usize },
    #[error("row {0} is not in the square")]
    RowNotInP(u32),
    #[error("no built-in complete class of order {n} for variant {variant}; supply the groups and assert completeness")]
    IncompleteClass { n: usize, variant: Variant },
    #[error("group class does not match the request: {0}")]
    ClassMismatch(String),
    #[error(transparent)]
    Pls(#[from] PlsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    RemovableTriple,
    ShiftLine,
}

/// A rule application: `P' = σ(P)` minus `removed`, and the rule's
/// conditions hold for `σ(P)` at order `n`. Triples use the dense labels of
/// `σ(P)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionCertificate {
    pub rule: Rule,
    pub parastrophe: Parastrophe,
    pub removed: Vec<Triple>,
    pub reduced: Vec<Triple>,
    pub n: usize,
}

impl ReductionCertificate {
    /// `P'` relabelled densely, `None` when every triple was removed.
    pub fn reduced_pls(&self) -> Option<Pls> {
        if self.reduced.is_empty() {
            None
        } else {
            Some(Pls::from_triples(&self.reduced).expect("subset of a PLS"))
        }
    }

    /// Re-checks the certificate against `p`.
    pub fn verify(&self, p: &Pls) -> bool {
        let q = p.parastrophe(self.parastrophe);
        let mut rest: Vec<Triple> = q.triples().iter().filter(|t| !self.removed.contains(t)).copied().collect();
        rest.sort_unstable();
        let mut reduced = self.reduced.clone();
        reduced.sort_unstable();
        if rest != reduced || self.removed.iter().any(|t| !q.contains(t)) {
            return false;
        }
        match self.rule {
            Rule::RemovableTriple => {
                self.removed.len() == 1 && removable_triple(&q, self.removed[0], self.n) == Ok(true)
            }
            Rule::ShiftLine => {
                let r = self.removed[0].row;
                self.removed.iter().all(|t| t.row == r)
                    && self.removed.len() == q.line(crate::pls::Role::Row, r).count()
                    && shift_line(&q, r, self.n) == Ok(true)
            }
        }
    }
}

/// The removable-triple rule for `t = (r, c, s)` with `P' = P \ {t}`:
/// (i) `P'` has no triple in row `r`; (ii) every triple `(r', c', s')` of
/// `P'` has a triple `(r', c, •)` or `(r', •, s)` in `P'`. Requires the order
/// of `P` to be at most `n`.
pub fn removable_triple(p: &Pls, t: Triple, n: usize) -> Result<bool, ScreeningError> {
    if !p.contains(&t) {
        return Err(ScreeningError::TripleNotInP(t.one_based()));
    }
    if p.order() > n {
        return Err(ScreeningError::OrderExceedsN { order: p.order(), n });
    }
    let rest: Vec<&Triple> = p.triples().iter().filter(|&&u| u != t).collect();
    if rest.iter().any(|u| u.row == t.row) {
        return Ok(false);
    }
    Ok(rest
        .iter()
        .all(|u| rest.iter().any(|v| v.row == u.row && (v.col == t.col || v.sym == t.sym))))
}

/// The shift-line rule for row `r` holding `(r, c_i, s_i)`, `i = 1..l`, with
/// `P'` the square without row `r`, `C1 = {i : c_i in C'}` and
/// `S1 = {i : s_i in S'}`: (i) `C1 ∩ S1 = ∅`;
/// (ii) `n >= |R| + |C1|(|S'| - 1) + |S1|(|C'| - 1)`; (iii) `n >= |C| + |S| - l`.
pub fn shift_line(p: &Pls, r: u8, n: usize) -> Result<bool, ScreeningError> {
    let line: Vec<&Triple> = p.triples().iter().filter(|t| t.row == r).collect();
    if line.is_empty() {
        return Err(ScreeningError::RowNotInP(r as u32 + 1));
    }
    let rest: Vec<&Triple> = p.triples().iter().filter(|t| t.row != r).collect();
    let distinct = |f: fn(&Triple) -> u8| {
        let mut v: Vec<u8> = rest.iter().map(|t| f(t)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let cols_rest = distinct(|t| t.col);
    let syms_rest = distinct(|t| t.sym);
    let c1: Vec<usize> = (0..line.len()).filter(|&i| cols_rest.binary_search(&line[i].col).is_ok()).collect();
    let s1: Vec<usize> = (0..line.len()).filter(|&i| syms_rest.binary_search(&line[i].sym).is_ok()).collect();
    let l = line.len();
    let cond_i = c1.iter().all(|i| !s1.contains(i));
    let cond_ii = n as i64
        >= p.n_rows() as i64
            + c1.len() as i64 * (syms_rest.len() as i64 - 1)
            + s1.len() as i64 * (cols_rest.len() as i64 - 1);
    let cond_iii = n as i64 >= (p.n_cols() + p.n_syms()) as i64 - l as i64;
    Ok(cond_i && cond_ii && cond_iii)
}

/// The first rule application found, trying parastrophes in their fixed
/// order and, within each, the removable-triple rule on every triple before
/// the shift-line rule on every row.
pub fn reducible(p: &Pls, n: usize) -> Option<ReductionCertificate> {
    reductions(p, n).next()
}

/// Every rule application, in the order [`reducible`] tries them.
pub fn reductions(p: &Pls, n: usize) -> impl Iterator<Item = ReductionCertificate> + '_ {
    Parastrophe::ALL.into_iter().flat_map(move |sigma| {
        let q = p.parastrophe(sigma);
        let triples: Vec<Triple> = if q.order() <= n { q.triples().to_vec() } else { Vec::new() };
        let removable = triples.into_iter().filter_map({
            let q = q.clone();
            move |t| {
                (removable_triple(&q, t, n) == Ok(true))
                    .then(|| certificate(&q, sigma, Rule::RemovableTriple, |u| u == t, n))
            }
        });
        let shifts = (0..q.n_rows() as u8).filter_map(move |r| {
            (shift_line(&q, r, n) == Ok(true)).then(|| certificate(&q, sigma, Rule::ShiftLine, |u| u.row == r, n))
        });
        removable.chain(shifts)
    })
}

fn certificate(
    q: &Pls,
    sigma: Parastrophe,
    rule: Rule,
    removed: impl Fn(Triple) -> bool,
    n: usize,
) -> ReductionCertificate {
    let (gone, kept): (Vec<Triple>, Vec<Triple>) = q.triples().iter().partition(|&&t| removed(t));
    ReductionCertificate {
        rule,
        parastrophe: sigma,
        removed: gone,
        reduced: kept,
        n,
    }
}

/// Species of the given size not settled by the reduction rules or by the
/// transversal bound at order `n`; these need a direct search.
pub fn screen_size(size: usize, n: usize) -> Result<Vec<SpeciesKey>, ScreeningError> {
    if !(1..=7).contains(&size) {
        return Err(PlsError::SizeLimitExceeded { size, limit: 7 }.into());
    }
    let keys = enumerate_keys(size)?.remove(&size).expect("requested size");
    use rayon::prelude::*;
    let keep: Vec<bool> = keys
        .par_iter()
        .map(|k| {
            let p = k.decode();
            reducible(&p, n).is_none() && transversal_fast_path(&p, n).is_none()
        })
        .collect();
    Ok(keys.into_iter().zip(keep).filter_map(|(k, keep)| keep.then_some(k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pls::{canonical_form, fixtures, gen_row_cycle};

    fn pls(raw: &[(u32, u32, u32)]) -> Pls {
        Pls::from_raw(raw).unwrap()
    }

    #[test]
    fn removable_examples() {
        let p = pls(&[(1, 1, 1), (2, 1, 2)]);
        let t = Triple::new(1, 0, 1);
        assert_eq!(removable_triple(&p, t, 5), Ok(true));
        let c2 = gen_row_cycle(2).unwrap();
        for &t in c2.triples() {
            assert_eq!(removable_triple(&c2, t, 5), Ok(false));
        }
        let order3 = pls(&[(1, 1, 1), (2, 2, 2), (3, 3, 3)]);
        assert_eq!(
            removable_triple(&order3, Triple::new(0, 0, 0), 2),
            Err(ScreeningError::OrderExceedsN { order: 3, n: 2 })
        );
        assert!(matches!(
            removable_triple(&order3, Triple::new(0, 1, 0), 5),
            Err(ScreeningError::TripleNotInP(_))
        ));
    }

    #[test]
    fn shift_line_examples() {
        let p = pls(&[(1, 1, 1), (2, 2, 2)]);
        assert_eq!(shift_line(&p, 1, 3), Ok(true));
        assert_eq!(shift_line(&p, 1, 2), Ok(false));
        assert_eq!(shift_line(&gen_row_cycle(2).unwrap(), 0, 10), Ok(false));
        assert_eq!(shift_line(&p, 2, 3), Err(ScreeningError::RowNotInP(3)));
    }

    #[test]
    fn reducible_examples() {
        let c2 = gen_row_cycle(2).unwrap();
        for n in 1..=30 {
            assert!(reducible(&c2, n).is_none(), "n={n}");
        }
        assert!(reducible(&fixtures()["noninterc"].pls, 7).is_none());
        for p in crate::pls::enumerate_species(3).unwrap()[&3].iter() {
            let cert = reducible(p, 5).expect("size 3 reduces at n = 5");
            assert!(cert.verify(p));
        }
    }

    #[test]
    fn size_four_survivors() {
        let got = screen_size(4, 7).unwrap();
        let want = {
            let mut v = vec![
                canonical_form(&gen_row_cycle(2).unwrap()),
                canonical_form(&fixtures()["noninterc"].pls),
            ];
            v.sort();
            v
        };
        assert_eq!(got, want);
    }

    #[test]
    fn row_cycles() {
        assert_eq!(row_cycle_species(&gen_row_cycle(3).unwrap()), Some(3));
    }
}
