//! Isomorph-free generation of species by one-triple augmentation.
//!
//! Deleting any triple of a size-`m` square leaves a square of size `m - 1`,
//! so every species of size `m` arises from some size-`m - 1` representative
//! by adding one triple whose row, column and symbol are either existing
//! labels or one new label each.

use std::collections::{BTreeMap, HashSet};
use std::sync::Mutex;

use rayon::prelude::*;

use super::{canonical_form, Pls, PlsError, SpeciesKey, Triple};

pub const MAX_ENUMERATION_SIZE: usize = 8;

/// `levels[m - 1]` holds the sorted keys of size `m`.
static CACHE: Mutex<Vec<Vec<SpeciesKey>>> = Mutex::new(Vec::new());

/// One representative (the decoded canonical key) per species of each size
/// `1..=max_size`, sorted by key.
pub fn enumerate_species(max_size: usize) -> Result<BTreeMap<usize, Vec<Pls>>, PlsError> {
    Ok(enumerate_keys(max_size)?
        .into_iter()
        .map(|(m, keys)| (m, keys.iter().map(SpeciesKey::decode).collect()))
        .collect())
}

/// Like [`enumerate_species`] but returns the keys only.
pub fn enumerate_keys(max_size: usize) -> Result<BTreeMap<usize, Vec<SpeciesKey>>, PlsError> {
    if max_size == 0 || max_size > MAX_ENUMERATION_SIZE {
        return Err(PlsError::SizeLimitExceeded {
            size: max_size,
            limit: MAX_ENUMERATION_SIZE,
        });
    }
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(vec![canonical_form(&Pls::from_dense_unchecked(vec![Triple::new(0, 0, 0)]))]);
    }
    while cache.len() < max_size {
        let next = augment_level(cache.last().expect("seeded"));
        cache.push(next);
    }
    Ok((1..=max_size).map(|m| (m, cache[m - 1].clone())).collect())
}

fn augment_level(parents: &[SpeciesKey]) -> Vec<SpeciesKey> {
    let found: HashSet<SpeciesKey> = parents
        .par_iter()
        .map(|key| children(&key.decode()))
        .reduce(HashSet::new, |a, b| {
            let (mut big, small) = if a.len() < b.len() { (b, a) } else { (a, b) };
            big.extend(small);
            big
        });
    let mut out: Vec<_> = found.into_iter().collect();
    out.sort_unstable();
    out
}

fn children(p: &Pls) -> HashSet<SpeciesKey> {
    let [nr, nc, ns] = p.counts();
    let mut cell = vec![false; (nr + 1) * (nc + 1)];
    let mut row_sym = vec![false; (nr + 1) * (ns + 1)];
    let mut col_sym = vec![false; (nc + 1) * (ns + 1)];
    for t in p.triples() {
        let (r, c, s) = (t.row as usize, t.col as usize, t.sym as usize);
        cell[r * (nc + 1) + c] = true;
        row_sym[r * (ns + 1) + s] = true;
        col_sym[c * (ns + 1) + s] = true;
    }
    let mut out = HashSet::new();
    let mut triples = p.triples().to_vec();
    for r in 0..=nr {
        for c in 0..=nc {
            if cell[r * (nc + 1) + c] {
                continue;
            }
            for s in 0..=ns {
                if row_sym[r * (ns + 1) + s] || col_sym[c * (ns + 1) + s] {
                    continue;
                }
                triples.push(Triple::new(r as u8, c as u8, s as u8));
                out.insert(canonical_form(&Pls::from_dense_unchecked(triples.clone())));
                triples.pop();
            }
        }
    }
    out
}

/// Whether some subset of `p`'s triples lies in the species of `q`.
pub fn sub_species_contains(p: &Pls, q: &Pls) -> bool {
    let k = q.size();
    if k > p.size() {
        return false;
    }
    let target = canonical_form(q);
    let mut want = q.counts();
    want.sort_unstable();
    let mut chosen = Vec::with_capacity(k);
    subsets(p.triples(), k, 0, &mut chosen, &mut |sub| {
        let candidate = Pls::from_triples(sub).expect("subset is latin");
        let mut have = candidate.counts();
        have.sort_unstable();
        have == want && canonical_form(&candidate) == target
    })
}

fn subsets(
    all: &[Triple],
    k: usize,
    start: usize,
    chosen: &mut Vec<Triple>,
    hit: &mut impl FnMut(&[Triple]) -> bool,
) -> bool {
    if chosen.len() == k {
        return hit(chosen);
    }
    let need = k - chosen.len();
    for i in start..=all.len() - need {
        chosen.push(all[i]);
        let found = subsets(all, k, i + 1, chosen, hit);
        chosen.pop();
        if found {
            return true;
        }
    }
    false
}
