//! Backtracking over the images of rows, columns and symbols.
//!
//! Whenever two coordinates of a triple are known the third is forced
//! (`s = r c`, `c = r^-1 s`, `r = s c^-1`). Branching picks the unfinished
//! triple with the most known coordinates, so once the first cell of a
//! connected component is placed most of the rest follows by propagation.

use crate::group::Group;
use crate::pls::Pls;

use super::EmbedError;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Default)]
pub(crate) struct Options {
    /// Map the first triple's row and column to the identity.
    pub pin: bool,
    /// Order interchangeable cells, see [`twin_classes`].
    pub twins: bool,
    pub fixed_syms: Option<Vec<usize>>,
    pub counting: bool,
    pub node_limit: u64,
}

pub(crate) struct Outcome {
    pub count: u64,
    pub witness: Option<[Vec<usize>; 3]>,
    pub nodes: u64,
}

struct Engine<'a> {
    g: &'a Group,
    n: usize,
    triples: Vec<[usize; 3]>,
    incident: [Vec<Vec<usize>>; 3],
    val: [Vec<usize>; 3],
    used: [Vec<bool>; 3],
    trail: Vec<(usize, usize)>,
    /// `(class, position)` for variables that carry an ordering constraint.
    twin: [Vec<Option<(usize, usize)>>; 3],
    classes: Vec<Vec<(usize, usize)>>,
    nodes: u64,
    limit: u64,
    counting: bool,
    count: u64,
    witness: Option<[Vec<usize>; 3]>,
}

pub(crate) fn run(p: &Pls, g: &Group, opts: &Options) -> Result<Outcome, EmbedError> {
    let n = g.order();
    let counts = p.counts();
    let triples: Vec<[usize; 3]> = p
        .triples()
        .iter()
        .map(|t| [t.row as usize, t.col as usize, t.sym as usize])
        .collect();
    let mut incident: [Vec<Vec<usize>>; 3] = Default::default();
    for role in 0..3 {
        incident[role] = vec![Vec::new(); counts[role]];
    }
    for (i, t) in triples.iter().enumerate() {
        for role in 0..3 {
            incident[role][t[role]].push(i);
        }
    }
    let mut twin: [Vec<Option<(usize, usize)>>; 3] = Default::default();
    for role in 0..3 {
        twin[role] = vec![None; counts[role]];
    }
    let classes = if opts.twins { twin_classes(&triples, &incident) } else { Vec::new() };
    for (k, class) in classes.iter().enumerate() {
        for (pos, &(role, label)) in class.iter().enumerate() {
            twin[role][label] = Some((k, pos));
        }
    }
    let mut e = Engine {
        g,
        n,
        val: [vec![NONE; counts[0]], vec![NONE; counts[1]], vec![NONE; counts[2]]],
        used: [vec![false; n], vec![false; n], vec![false; n]],
        triples,
        incident,
        trail: Vec::new(),
        twin,
        classes,
        nodes: 0,
        limit: opts.node_limit,
        counting: opts.counting,
        count: 0,
        witness: None,
    };
    let outcome = |e: Engine| Outcome {
        count: e.count,
        witness: e.witness,
        nodes: e.nodes,
    };
    if counts.iter().any(|&c| c > n) {
        return Ok(outcome(e));
    }
    if let Some(fixed) = &opts.fixed_syms {
        if fixed.len() != counts[2] || fixed.iter().any(|&x| x >= n) {
            return Err(EmbedError::BadFixedMap(format!(
                "need {} distinct elements below {n}",
                counts[2]
            )));
        }
        for (s, &x) in fixed.iter().enumerate() {
            if !e.assign(2, s, x) {
                // also reached when `fixed` is not injective
                return Ok(outcome(e));
            }
        }
    }
    if opts.pin && !e.triples.is_empty() {
        let [r, c, _] = e.triples[0];
        if !e.assign(0, r, 0) || !e.assign(1, c, 0) {
            return Ok(outcome(e));
        }
    }
    e.dfs()?;
    Ok(outcome(e))
}

/// Groups of cells whose images can be permuted among themselves without
/// affecting any other constraint, keyed by the variable that gets ordered:
///
/// - cells with private row and column sharing a symbol (key: row),
/// - cells with private row and symbol sharing a column (key: row),
/// - cells with private column and symbol sharing a row (key: column),
/// - cells whose row, column and symbol are all private (key: row).
///
/// Within each class the key images are required to increase with the cell
/// index. A cell pinned to the identity is always first in its class.
fn twin_classes(triples: &[[usize; 3]], incident: &[Vec<Vec<usize>>; 3]) -> Vec<Vec<(usize, usize)>> {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<(u8, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for t in triples {
        let private = |role: usize| incident[role][t[role]].len() == 1;
        let (pr, pc, ps) = (private(0), private(1), private(2));
        let entry = match (pr, pc, ps) {
            (true, true, true) => Some(((0, 0), (0, t[0]))),
            (true, true, false) => Some(((1, t[2]), (0, t[0]))),
            (true, false, true) => Some(((2, t[1]), (0, t[0]))),
            (false, true, true) => Some(((3, t[0]), (1, t[1]))),
            _ => None,
        };
        if let Some((key, var)) = entry {
            groups.entry(key).or_default().push(var);
        }
    }
    groups.into_values().filter(|c| c.len() > 1).collect()
}

impl Engine<'_> {
    fn assign(&mut self, role: usize, label: usize, x: usize) -> bool {
        let current = self.val[role][label];
        if current != NONE {
            return current == x;
        }
        if self.used[role][x] {
            return false;
        }
        if let Some((k, pos)) = self.twin[role][label] {
            let class = &self.classes[k];
            if pos > 0 {
                let (r, l) = class[pos - 1];
                let prev = self.val[r][l];
                if prev != NONE && prev > x {
                    return false;
                }
            }
            if let Some(&(r, l)) = class.get(pos + 1) {
                let next = self.val[r][l];
                if next != NONE && next < x {
                    return false;
                }
            }
        }
        self.val[role][label] = x;
        self.used[role][x] = true;
        self.trail.push((role, label));
        for i in 0..self.incident[role][label].len() {
            let [r, c, s] = self.triples[self.incident[role][label][i]];
            let (vr, vc, vs) = (self.val[0][r], self.val[1][c], self.val[2][s]);
            let g = self.g;
            let ok = match (vr != NONE, vc != NONE, vs != NONE) {
                (true, true, true) => g.mul(vr, vc) == vs,
                (true, true, false) => self.assign(2, s, g.mul(vr, vc)),
                (true, false, true) => self.assign(1, c, g.mul(g.inv(vr), vs)),
                (false, true, true) => self.assign(0, r, g.mul(vs, g.inv(vc))),
                _ => true,
            };
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (role, label) = self.trail.pop().expect("above mark");
            let x = std::mem::replace(&mut self.val[role][label], NONE);
            self.used[role][x] = false;
        }
    }

    /// Returns `true` once a witness is found in existence mode.
    fn dfs(&mut self) -> Result<bool, EmbedError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(EmbedError::NodeLimit(self.limit));
        }
        let mut best: Option<(usize, usize)> = None;
        for (i, t) in self.triples.iter().enumerate() {
            let known = (0..3).filter(|&role| self.val[role][t[role]] != NONE).count();
            if known < 3 && best.map_or(true, |(_, k)| known > k) {
                best = Some((i, known));
            }
        }
        let Some((i, _)) = best else {
            if self.counting {
                self.count += 1;
                return Ok(false);
            }
            self.count = 1;
            self.witness = Some(self.val.clone());
            return Ok(true);
        };
        let [r, c, _] = self.triples[i];
        let (role, label) = if self.val[0][r] == NONE { (0, r) } else { (1, c) };
        for x in 0..self.n {
            if self.used[role][x] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(role, label, x) && self.dfs()? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }
}
