//! Permutations `π` of a group whose products `g π(g)` take prescribed
//! multiplicities.

use crate::group::Group;

use super::EmbedError;

const NONE: usize = usize::MAX;

/// Finds a permutation `π` of `G` such that the multiset `{g π(g)}` has
/// multiplicities `parts` (in some order), i.e. such that the diagonal with
/// symbol multiplicities `parts` embeds in `G`. Returns `π` as `pi[g]`.
///
/// Right-multiplying `π` by a fixed element shifts every product, so the
/// products of the first part may be taken to be the identity. Parts of equal
/// size are opened in order.
pub fn embed_diagonal_partition(g: &Group, parts: &[usize]) -> Result<Option<Vec<usize>>, EmbedError> {
    let n = g.order();
    if parts.is_empty() || parts.contains(&0) || parts.iter().sum::<usize>() != n {
        return Err(EmbedError::PartitionInvalid(format!(
            "parts {parts:?} must be positive and sum to {n}"
        )));
    }
    let mut s = State {
        g,
        parts: parts.to_vec(),
        filled: vec![0; parts.len()],
        target: vec![NONE; parts.len()],
        pi: vec![NONE; n],
        used: vec![false; n],
    };
    s.target[0] = 0;
    Ok(s.place(0).then_some(s.pi))
}

struct State<'a> {
    g: &'a Group,
    parts: Vec<usize>,
    filled: Vec<usize>,
    target: Vec<usize>,
    pi: Vec<usize>,
    used: Vec<bool>,
}

impl State<'_> {
    fn place(&mut self, x: usize) -> bool {
        let n = self.g.order();
        if x == n {
            return true;
        }
        for j in 0..self.parts.len() {
            if self.filled[j] == self.parts[j] {
                continue;
            }
            if self.target[j] != NONE {
                let y = self.g.mul(self.g.inv(x), self.target[j]);
                if self.try_set(x, y, j) {
                    return true;
                }
                continue;
            }
            // an earlier unopened part of the same size is equivalent
            if (1..j).any(|k| self.parts[k] == self.parts[j] && self.target[k] == NONE) {
                continue;
            }
            for y in 0..n {
                let u = self.g.mul(x, y);
                if self.used[y] || self.target.contains(&u) {
                    continue;
                }
                self.target[j] = u;
                if self.try_set(x, y, j) {
                    return true;
                }
                self.target[j] = NONE;
            }
        }
        false
    }

    fn try_set(&mut self, x: usize, y: usize, j: usize) -> bool {
        if self.used[y] {
            return false;
        }
        self.used[y] = true;
        self.pi[x] = y;
        self.filled[j] += 1;
        if self.place(x + 1) {
            return true;
        }
        self.filled[j] -= 1;
        self.pi[x] = NONE;
        self.used[y] = false;
        false
    }
}
