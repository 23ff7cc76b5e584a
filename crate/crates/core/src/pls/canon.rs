//! Canonical species keys.
//!
//! For each of the six parastrophes we run a branch-and-bound labelling: at
//! every step the unplaced triple with the smallest image (unlabelled
//! coordinates take the next fresh label of their role) is emitted, ties are
//! branched, and branches whose prefix exceeds the best encoding found so far
//! are cut. The procedure never looks at the input labels, so its minimum is
//! a species invariant, and since it is the sorted encoding of a relabelled
//! parastrophe of the input it is also complete.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Parastrophe, Pls, PlsError, Triple};

const UNSET: u8 = u8::MAX;

/// Sorted `(row, col, sym)` byte tuples of the lexicographically least member
/// of a species.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpeciesKey(Vec<u8>);

impl SpeciesKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len() / 3
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<SpeciesKey, PlsError> {
        let bytes = hex::decode(s.trim()).map_err(|e| PlsError::Parse {
            line: 1,
            msg: format!("bad species key: {e}"),
        })?;
        SpeciesKey::from_bytes(bytes)
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Result<SpeciesKey, PlsError> {
        if bytes.is_empty() || bytes.len() % 3 != 0 {
            return Err(PlsError::Parse {
                line: 1,
                msg: "species key length must be a positive multiple of 3".into(),
            });
        }
        let key = SpeciesKey(bytes);
        let triples: Vec<_> = key.triples().collect();
        let pls = Pls::from_dense(triples)?;
        if canonical_form(&pls) != key {
            return Err(PlsError::Parse {
                line: 1,
                msg: "bytes are not a canonical species key".into(),
            });
        }
        Ok(key)
    }

    fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        self.0.chunks_exact(3).map(|c| Triple::new(c[0], c[1], c[2]))
    }

    /// The canonical representative of the species.
    pub fn decode(&self) -> Pls {
        Pls::from_dense_unchecked(self.triples().collect())
    }
}

impl fmt::Debug for SpeciesKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpeciesKey({})", self.to_hex())
    }
}

impl fmt::Display for SpeciesKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for SpeciesKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for SpeciesKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        SpeciesKey::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Canonical key of the species of `p`.
pub fn canonical_form(p: &Pls) -> SpeciesKey {
    let mut best: Vec<[u8; 3]> = Vec::new();
    for sigma in Parastrophe::ALL {
        let q = p.parastrophe(sigma);
        let mut search = Labelling::new(&q);
        search.descend(0, !best.is_empty(), &mut best);
    }
    SpeciesKey(best.into_iter().flatten().collect())
}

struct Labelling {
    triples: Vec<[u8; 3]>,
    labels: [Vec<u8>; 3],
    next: [u8; 3],
    placed: Vec<bool>,
    prefix: Vec<[u8; 3]>,
}

impl Labelling {
    fn new(p: &Pls) -> Labelling {
        let c = p.counts();
        Labelling {
            triples: p.triples().iter().map(|t| t.coords()).collect(),
            labels: [vec![UNSET; c[0]], vec![UNSET; c[1]], vec![UNSET; c[2]]],
            next: [0; 3],
            placed: vec![false; p.size()],
            prefix: Vec::with_capacity(p.size()),
        }
    }

    fn image(&self, t: [u8; 3]) -> [u8; 3] {
        let mut out = [0; 3];
        for k in 0..3 {
            let l = self.labels[k][t[k] as usize];
            out[k] = if l == UNSET { self.next[k] } else { l };
        }
        out
    }

    /// Returns true if `best` was replaced somewhere below this node.
    /// `tied` means the current prefix equals `best`'s prefix of equal length.
    fn descend(&mut self, depth: usize, mut tied: bool, best: &mut Vec<[u8; 3]>) -> bool {
        if depth == self.triples.len() {
            if !tied {
                best.clear();
                best.extend_from_slice(&self.prefix);
                return true;
            }
            return false;
        }

        let mut min = [UNSET; 3];
        let mut ties: Vec<usize> = Vec::new();
        for (i, &t) in self.triples.iter().enumerate() {
            if self.placed[i] {
                continue;
            }
            let img = self.image(t);
            if img < min {
                min = img;
                ties.clear();
                ties.push(i);
            } else if img == min {
                ties.push(i);
            }
        }

        let mut updated = false;
        for i in ties {
            let child_tied = if tied {
                match min.cmp(&best[depth]) {
                    std::cmp::Ordering::Greater => return updated,
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Equal => true,
                }
            } else {
                false
            };

            let t = self.triples[i];
            let mut fresh = [false; 3];
            for k in 0..3 {
                if self.labels[k][t[k] as usize] == UNSET {
                    self.labels[k][t[k] as usize] = self.next[k];
                    self.next[k] += 1;
                    fresh[k] = true;
                }
            }
            self.placed[i] = true;
            self.prefix.push(min);

            if self.descend(depth + 1, child_tied, best) {
                updated = true;
                tied = true;
            }

            self.prefix.pop();
            self.placed[i] = false;
            for k in 0..3 {
                if fresh[k] {
                    self.next[k] -= 1;
                    self.labels[k][t[k] as usize] = UNSET;
                }
            }
        }
        updated
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pls::{gen_diagonal, gen_evans, gen_row_cycle, validate_pls};

    #[test]
    fn key_is_sorted_dense_encoding() {
        let k = canonical_form(&gen_row_cycle(2).unwrap());
        assert_eq!(k.as_bytes(), &[0, 0, 0, 0, 1, 1, 1, 0, 1, 1, 1, 0]);
        assert_eq!(k.size(), 4);
    }

    #[test]
    fn evans_species_pairing() {
        let key = |a| canonical_form(&gen_evans(6, a).unwrap());
        assert_eq!(key(2), key(4));
        assert_eq!(key(1), key(5));
        assert_ne!(key(1), key(2));
        assert_ne!(key(2), key(3));
        assert_ne!(key(1), key(3));
    }

    #[test]
    fn transpose_of_row_cycle_same_species() {
        let c2 = gen_row_cycle(2).unwrap();
        let t = c2.parastrophe(Parastrophe::RowCol);
        assert_eq!(canonical_form(&c2), canonical_form(&t));
    }

    #[test]
    fn decode_round_trip() {
        let p = validate_pls(&[(1, 1, 1), (1, 2, 2), (2, 1, 3), (2, 2, 1), (3, 3, 2)]).unwrap();
        let k = canonical_form(&p);
        assert_eq!(canonical_form(&k.decode()), k);
        assert_eq!(SpeciesKey::from_hex(&k.to_hex()).unwrap(), k);
        let json = serde_json::to_string(&k).unwrap();
        assert_eq!(serde_json::from_str::<SpeciesKey>(&json).unwrap(), k);
    }

    #[test]
    fn rejects_non_canonical_bytes() {
        assert!(SpeciesKey::from_bytes(vec![0, 0, 0, 1, 1, 1, 1, 0, 0]).is_err());
        assert!(SpeciesKey::from_bytes(vec![0, 0]).is_err());
    }

    #[test]
    fn symmetric_diagonal_is_cheap_enough() {
        let t = gen_diagonal(8).unwrap();
        let k = canonical_form(&t);
        assert_eq!(k.decode(), t);
    }
}
