//! Embedding partial latin squares into Cayley tables.
//!
//! An embedding of `P` into `G` is a triple of injections `I1` (rows), `I2`
//! (columns), `I3` (symbols) into `G` with `I1(r) I2(c) = I3(s)` for every
//! filled cell `(r, c, s)`.

mod diagonal;
mod search;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::Group;
use crate::pls::{canonical_form, gen_row_cycle, Pls, Role};

pub use diagonal::embed_diagonal_partition;

/// Search node budget per call.
pub const NODE_LIMIT: u64 = 1_000_000_000;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("search exceeded {0} nodes")]
    NodeLimit(u64),
    #[error("invalid partition: {0}")]
    PartitionInvalid(String),
    #[error("invalid fixed symbol map: {0}")]
    BadFixedMap(String),
}

/// Images of rows, columns and symbols, indexed by the square's 0-based
/// labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    #[serde(rename = "I1")]
    pub rows: Vec<usize>,
    #[serde(rename = "I2")]
    pub cols: Vec<usize>,
    #[serde(rename = "I3")]
    pub syms: Vec<usize>,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("map {0} has the wrong length")]
    Length(&'static str),
    #[error("map {0} sends two labels to element {1}")]
    NotInjective(&'static str, usize),
    #[error("map {0} uses element {1} outside the group")]
    OutOfRange(&'static str, usize),
    #[error("cell ({0}, {1}) holds {2} but the product is not its image")]
    Product(u32, u32, u32),
}

impl EmbeddingWitness {
    pub fn map(&self, role: Role) -> &[usize] {
        match role {
            Role::Row => &self.rows,
            Role::Col => &self.cols,
            Role::Sym => &self.syms,
        }
    }

    /// Checks injectivity of the three maps and every cell product.
    pub fn verify(&self, p: &Pls, g: &Group) -> Result<(), WitnessError> {
        let names = ["I1", "I2", "I3"];
        for (i, role) in Role::ALL.into_iter().enumerate() {
            let m = self.map(role);
            if m.len() != p.count(role) {
                return Err(WitnessError::Length(names[i]));
            }
            let mut seen = vec![false; g.order()];
            for &x in m {
                if x >= g.order() {
                    return Err(WitnessError::OutOfRange(names[i], x));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(WitnessError::NotInjective(names[i], x));
                }
            }
        }
        for t in p.triples() {
            let (r, c, s) = (t.row as usize, t.col as usize, t.sym as usize);
            if g.mul(self.rows[r], self.cols[c]) != self.syms[s] {
                let (r1, c1, s1) = t.one_based();
                return Err(WitnessError::Product(r1, c1, s1));
            }
        }
        Ok(())
    }
}

/// Three lines `I1: 1→g 2→h ...`, labels 1-based, elements as group indices.
impl fmt::Display for EmbeddingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, m) in [("I1", &self.rows), ("I2", &self.cols), ("I3", &self.syms)] {
            let parts: Vec<String> = m.iter().enumerate().map(|(i, x)| format!("{}→{x}", i + 1)).collect();
            writeln!(f, "{name}: {}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Why a square does not embed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// The square itself violates the quadrangle criterion.
    Quadrangle { witness: QuadrangleWitness },
    /// A row cycle of length `cycle_length` needs a group order divisible by it.
    OrderDivisibility { cycle_length: usize, group_order: usize },
    /// Complete search found nothing.
    ExhaustedSearch { nodes: u64 },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Quadrangle { witness } => write!(
                f,
                "quadrangle criterion fails: cells {:?} and {:?} (1-based r1 r2 c1 c2) disagree",
                witness.first.map(|x| x + 1),
                witness.second.map(|x| x + 1)
            ),
            Obstruction::OrderDivisibility { cycle_length, group_order } => write!(
                f,
                "row cycle of length {cycle_length} needs an element of that order; {cycle_length} does not divide {group_order}"
            ),
            Obstruction::ExhaustedSearch { nodes } => write!(f, "exhaustive search, {nodes} nodes"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EmbedVerdict {
    Embeddable { witness: EmbeddingWitness },
    /// A diagonal with `t` distinct symbols, `t <= n - floor(sqrt n)`, which
    /// embeds in every group of order `n` by the transversal bound. No
    /// witness is computed.
    EmbeddableByTransversalBound { t: usize, n: usize },
    NotEmbeddable { obstruction: Obstruction },
}

impl EmbedVerdict {
    pub fn is_embeddable(&self) -> bool {
        !matches!(self, EmbedVerdict::NotEmbeddable { .. })
    }

    pub fn witness(&self) -> Option<&EmbeddingWitness> {
        match self {
            EmbedVerdict::Embeddable { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match self {
            EmbedVerdict::NotEmbeddable { obstruction } => Some(obstruction),
            _ => None,
        }
    }
}

fn to_witness(maps: [Vec<usize>; 3]) -> EmbeddingWitness {
    let [rows, cols, syms] = maps;
    EmbeddingWitness { rows, cols, syms }
}

/// Complete search for an embedding, with the first cell's row and column
/// mapped to the identity and interchangeable cells ordered.
pub fn try_find_embedding(p: &Pls, g: &Group) -> Result<EmbedVerdict, EmbedError> {
    let opts = search::Options {
        pin: true,
        twins: true,
        node_limit: NODE_LIMIT,
        ..Default::default()
    };
    let out = search::run(p, g, &opts)?;
    Ok(match out.witness {
        Some(maps) => EmbedVerdict::Embeddable {
            witness: to_witness(maps),
        },
        None => EmbedVerdict::NotEmbeddable {
            obstruction: Obstruction::ExhaustedSearch { nodes: out.nodes },
        },
    })
}

/// Like [`try_find_embedding`]; panics if the node budget runs out, which
/// does not happen for squares of size at most 8 and groups of order at
/// most 16.
pub fn find_embedding(p: &Pls, g: &Group) -> EmbedVerdict {
    try_find_embedding(p, g).expect("embedding search within node budget")
}

/// Number of embeddings `(I1, I2, I3)`, optionally with `I3` fixed.
pub fn try_count_embeddings(p: &Pls, g: &Group, fixed_syms: Option<&[usize]>) -> Result<u64, EmbedError> {
    let opts = search::Options {
        counting: true,
        fixed_syms: fixed_syms.map(<[usize]>::to_vec),
        node_limit: NODE_LIMIT,
        ..Default::default()
    };
    Ok(search::run(p, g, &opts)?.count)
}

pub fn count_embeddings(p: &Pls, g: &Group, fixed_syms: Option<&[usize]>) -> u64 {
    try_count_embeddings(p, g, fixed_syms).expect("valid counting request")
}

/// Embeddings with the first cell's row and column sent to the identity.
/// Every embedding is moved to exactly one of these by `I1 -> a I1`,
/// `I2 -> I2 b`, so the full count is `|G|^2` times this one.
pub fn count_normalized_embeddings(p: &Pls, g: &Group) -> u64 {
    let opts = search::Options {
        counting: true,
        pin: true,
        node_limit: NODE_LIMIT,
        ..Default::default()
    };
    search::run(p, g, &opts).expect("within node budget").count
}

/// Two quadrangles agreeing in three corresponding symbols but not the
/// fourth. Each is `(r1, r2, c1, c2)` with 0-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadrangleWitness {
    pub first: [u8; 4],
    pub second: [u8; 4],
}

/// In a group the fourth symbol of a quadrangle is `s21 s11^-1 s12`, so it is
/// determined by the other three.
pub fn quadrangle_witness(p: &Pls) -> Option<QuadrangleWitness> {
    let (nr, nc) = (p.n_rows(), p.n_cols());
    let mut grid = vec![None; nr * nc];
    for t in p.triples() {
        grid[t.row as usize * nc + t.col as usize] = Some(t.sym);
    }
    let cell = |r: usize, c: usize| grid[r * nc + c];
    let mut seen: HashMap<(u8, u8, u8), (u8, [u8; 4])> = HashMap::new();
    for r1 in 0..nr {
        for r2 in 0..nr {
            for c1 in 0..nc {
                let (Some(s11), Some(s21)) = (cell(r1, c1), cell(r2, c1)) else { continue };
                for c2 in 0..nc {
                    let (Some(s12), Some(s22)) = (cell(r1, c2), cell(r2, c2)) else { continue };
                    let quad = [r1 as u8, r2 as u8, c1 as u8, c2 as u8];
                    match seen.get(&(s11, s12, s21)) {
                        Some(&(other, first)) if other != s22 => {
                            return Some(QuadrangleWitness { first, second: quad });
                        }
                        Some(_) => {}
                        None => {
                            seen.insert((s11, s12, s21), (s22, quad));
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn quadrangle_violation(p: &Pls) -> bool {
    quadrangle_witness(p).is_some()
}

/// `Some(l)` if `p` lies in the species of the row cycle `C(l)`.
pub fn row_cycle_species(p: &Pls) -> Option<usize> {
    let m = p.size();
    if m < 4 || m % 2 == 1 {
        return None;
    }
    let l = m / 2;
    let mut counts = p.counts();
    counts.sort_unstable();
    if counts != [2, l, l] {
        return None;
    }
    let cycle = gen_row_cycle(l).expect("l >= 2");
    (canonical_form(p) == canonical_form(&cycle)).then_some(l)
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupVerdict {
    pub group: String,
    pub order: usize,
    pub verdict: EmbedVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub verdicts: Vec<GroupVerdict>,
    /// Embeds in at least one of the groups.
    pub some: bool,
    /// Embeds in every one of the groups.
    pub all: bool,
}

/// Decides embeddability in each group: the quadrangle criterion first, then
/// the divisibility condition for row cycles, then search.
pub fn embeds_in_class(p: &Pls, groups: &[Group]) -> ClassReport {
    let quad = quadrangle_witness(p);
    let cycle = row_cycle_species(p);
    let verdicts: Vec<GroupVerdict> = groups
        .iter()
        .map(|g| {
            let verdict = if let Some(w) = &quad {
                EmbedVerdict::NotEmbeddable {
                    obstruction: Obstruction::Quadrangle { witness: w.clone() },
                }
            } else if let Some(l) = cycle.filter(|l| g.order() % l != 0) {
                EmbedVerdict::NotEmbeddable {
                    obstruction: Obstruction::OrderDivisibility {
                        cycle_length: l,
                        group_order: g.order(),
                    },
                }
            } else {
                find_embedding(p, g)
            };
            GroupVerdict {
                group: g.name().to_string(),
                order: g.order(),
                verdict,
            }
        })
        .collect();
    let some = verdicts.iter().any(|v| v.verdict.is_embeddable());
    let all = verdicts.iter().all(|v| v.verdict.is_embeddable());
    ClassReport { verdicts, some, all }
}

/// `ceil(n - sqrt n)`, the largest `t` for which the diagonal `T(t)` is
/// known to embed in every group of order `n`.
pub fn transversal_bound(n: usize) -> usize {
    n - n.isqrt()
}

/// The fast path: `Some` when `p` is a diagonal with distinct symbols (up to
/// species) short enough for the transversal bound at order `n`.
pub fn transversal_fast_path(p: &Pls, n: usize) -> Option<EmbedVerdict> {
    (p.is_transversal_like() && p.size() <= transversal_bound(n)).then(|| {
        EmbedVerdict::EmbeddableByTransversalBound { t: p.size(), n }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian, cyclic, dihedral, groups_of_order};
    use crate::pls::{fixtures, gen_diagonal, Pls};

    fn single() -> Pls {
        Pls::from_raw(&[(1, 1, 1)]).unwrap()
    }

    #[test]
    fn nonab_in_dihedral_and_reference_table() {
        let f = fixtures();
        let nonab = &f["nonab"].pls;
        let d6 = dihedral(3).unwrap();
        let v = find_embedding(nonab, &d6);
        v.witness().unwrap().verify(nonab, &d6).unwrap();
        // r^i s^j is element i + 3j: rows e, r, r^2 s; columns e, rs, s
        let rows = vec![0, 1, 5];
        let cols = vec![0, 4, 3];
        let mut syms = vec![0; nonab.n_syms()];
        for t in nonab.triples() {
            syms[t.sym as usize] = d6.mul(rows[t.row as usize], cols[t.col as usize]);
        }
        let table = EmbeddingWitness { rows, cols, syms };
        table.verify(nonab, &d6).unwrap();
        assert!(!find_embedding(nonab, &cyclic(6).unwrap()).is_embeddable());
    }

    #[test]
    fn row_cycle_and_diagonal() {
        let c2 = gen_row_cycle(2).unwrap();
        assert!(!find_embedding(&c2, &cyclic(5).unwrap()).is_embeddable());
        for g in groups_of_order(8).unwrap() {
            let t5 = gen_diagonal(5).unwrap();
            let v = find_embedding(&t5, &g);
            v.witness().unwrap().verify(&t5, &g).unwrap();
        }
    }

    #[test]
    fn counts() {
        assert_eq!(count_embeddings(&single(), &cyclic(5).unwrap(), None), 25);
        assert_eq!(count_embeddings(&single(), &cyclic(5).unwrap(), Some(&[3])), 5);
        let c2 = gen_row_cycle(2).unwrap();
        assert_eq!(count_embeddings(&c2, &cyclic(2).unwrap(), None), brute_force_count(&c2, 2));
        assert_eq!(count_embeddings(&c2, &cyclic(2).unwrap(), None), 4);
        let quad = &fixtures()["quadcrit_a"].pls;
        for g in groups_of_order(8).unwrap() {
            assert_eq!(count_embeddings(quad, &g, None), 0);
        }
        assert!(try_count_embeddings(&c2, &cyclic(2).unwrap(), Some(&[0])).is_err());
        assert_eq!(count_embeddings(&c2, &cyclic(2).unwrap(), Some(&[0, 0])), 0);
    }

    /// All injection triples into `Z_n`, checked directly.
    fn brute_force_count(p: &Pls, n: usize) -> u64 {
        fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for v in injections(k - 1, n) {
                for x in 0..n {
                    if !v.contains(&x) {
                        let mut w = v.clone();
                        w.push(x);
                        out.push(w);
                    }
                }
            }
            out
        }
        let [nr, nc, ns] = p.counts();
        let mut count = 0;
        for r in injections(nr, n) {
            for c in injections(nc, n) {
                for s in injections(ns, n) {
                    if p.triples()
                        .iter()
                        .all(|t| (r[t.row as usize] + c[t.col as usize]) % n == s[t.sym as usize])
                    {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn quadrangles() {
        let f = fixtures();
        assert!(quadrangle_violation(&f["quadcrit_a"].pls));
        assert!(quadrangle_violation(&f["quadcrit_b"].pls));
        assert!(!quadrangle_violation(&single()));
        assert!(!quadrangle_violation(&f["nonab"].pls));
    }

    #[test]
    fn class_reports() {
        let f = fixtures();
        let r = embeds_in_class(&f["nonab"].pls, &groups_of_order(6).unwrap());
        assert!(r.some && !r.all);
        let r = embeds_in_class(&gen_row_cycle(3).unwrap(), &groups_of_order(8).unwrap());
        assert!(!r.some);
        assert!(matches!(
            r.verdicts[0].verdict.obstruction(),
            Some(Obstruction::OrderDivisibility { cycle_length: 3, .. })
        ));
        let cyclics: Vec<_> = (1..=30).map(|n| cyclic(n).unwrap()).collect();
        assert!(!embeds_in_class(&f["overlapinterc"].pls, &cyclics).some);
        assert!(find_embedding(&f["overlapinterc"].pls, &abelian(&[2, 2]).unwrap()).is_embeddable());
    }

    #[test]
    fn row_cycle_detection() {
        assert_eq!(row_cycle_species(&gen_row_cycle(3).unwrap()), Some(3));
        let t = gen_row_cycle(4).unwrap().parastrophe(crate::pls::Parastrophe::RowCol);
        assert_eq!(row_cycle_species(&t), Some(4));
        assert_eq!(row_cycle_species(&fixtures()["nonab"].pls), None);
    }

    #[test]
    fn bound_values() {
        assert_eq!(transversal_bound(8), 6);
        assert_eq!(transversal_bound(9), 6);
        assert_eq!(transversal_bound(2), 1);
        assert_eq!(transversal_bound(1), 0);
        assert!(transversal_fast_path(&gen_diagonal(5).unwrap(), 8).is_some());
        assert!(transversal_fast_path(&gen_diagonal(7).unwrap(), 8).is_none());
    }

    #[test]
    fn witness_text_and_json() {
        let w = EmbeddingWitness {
            rows: vec![0, 1],
            cols: vec![0],
            syms: vec![0, 1],
        };
        assert_eq!(w.to_string(), "I1: 1→0 2→1\nI2: 1→0\nI3: 1→0 2→1\n");
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"I1":[0,1],"I2":[0],"I3":[0,1]}"#);
        let back: EmbeddingWitness = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }
}
