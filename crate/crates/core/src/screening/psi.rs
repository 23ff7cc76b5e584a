//! `ψ(n)`, `ψ+(n)` and `ψ∘(n)`: the largest `m` such that every square of
//! size `m` embeds in some group / some abelian group / the cyclic group of
//! order `n`, together with the species of size `ψ + 1` that do not.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::embed::{
    find_embedding, quadrangle_witness, row_cycle_species, transversal_fast_path, EmbedVerdict, QuadrangleWitness,
};
use crate::group::{abelian_groups_of_order, cyclic, groups_of_order, Group, MAX_CATALOGUE_ORDER};
use crate::pls::{canonical_form, enumerate_keys, Pls, SpeciesKey};

use super::{reducible, ScreeningError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Group,
    Abelian,
    Cyclic,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Group => "group",
            Variant::Abelian => "abelian",
            Variant::Cyclic => "cyclic",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "group" => Ok(Variant::Group),
            "abelian" => Ok(Variant::Abelian),
            "cyclic" => Ok(Variant::Cyclic),
            _ => Err(format!("unknown variant {s:?} (expected group, abelian or cyclic)")),
        }
    }
}

/// The closed forms: `ψ(n)` for [`Variant::Group`], and `ψ+(n) = ψ∘(n)`
/// otherwise.
pub fn psi_formula(n: usize, variant: Variant) -> usize {
    match n {
        0 => 0,
        1 | 2 => 1,
        3 => 2,
        4 => 3,
        _ if n % 2 == 1 => 3,
        _ if variant == Variant::Group && n % 6 == 0 && n > 6 => 6,
        _ => 5,
    }
}

/// Every group of order `n` in the class, up to isomorphism.
pub fn class_of(n: usize, variant: Variant) -> Result<Vec<Group>, ScreeningError> {
    let incomplete = || ScreeningError::IncompleteClass { n, variant };
    match variant {
        Variant::Group if n <= MAX_CATALOGUE_ORDER && n > 0 => groups_of_order(n).map_err(|_| incomplete()),
        Variant::Group => Err(incomplete()),
        Variant::Abelian => abelian_groups_of_order(n).map_err(|_| incomplete()),
        Variant::Cyclic => cyclic(n).map(|g| vec![g]).map_err(|_| incomplete()),
    }
}

#[derive(Debug, Clone)]
pub struct PsiOptions {
    /// Use the reduction rules and the transversal bound before searching.
    /// Without them every species is searched.
    pub screening: bool,
}

impl Default for PsiOptions {
    fn default() -> Self {
        PsiOptions { screening: true }
    }
}

/// Why no group in the class admits the obstacle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObstacleCertificate {
    /// Fails the quadrangle criterion, so embeds in no group at all.
    Quadrangle { witness: QuadrangleWitness },
    /// A row cycle of length `cycle_length`, which does not divide `n`.
    RowCycleDivisibility { cycle_length: usize, n: usize },
    /// Complete search in each listed group, with its node count.
    ExhaustedSearch { groups: Vec<(String, u64)> },
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstacleReport {
    pub species_key: SpeciesKey,
    /// 1-based `(row, col, sym)` triples of the decoded key.
    pub representative_triples: Vec<(u32, u32, u32)>,
    pub certificate: ObstacleCertificate,
}

/// How the species of one size were settled.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SizeStats {
    pub species: usize,
    pub reduced: usize,
    pub transversal_bound: usize,
    /// Species left for direct search (the screening survivors).
    pub searched: usize,
    pub found_by_search: usize,
    pub not_embeddable: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PsiResult {
    pub n: usize,
    pub variant: Variant,
    pub psi: usize,
    pub obstacles: Vec<ObstacleReport>,
    /// Screening survivors per size.
    pub survivor_counts: BTreeMap<usize, usize>,
    pub size_stats: BTreeMap<usize, SizeStats>,
    /// Names of the groups searched.
    pub groups: Vec<String>,
}

impl PsiResult {
    pub fn obstacle_keys(&self) -> Vec<SpeciesKey> {
        self.obstacles.iter().map(|o| o.species_key.clone()).collect()
    }
}

/// `ψ` for the standard class of `(n, variant)`.
pub fn psi(n: usize, variant: Variant) -> Result<PsiResult, ScreeningError> {
    let groups = class_of(n, variant)?;
    psi_with(n, variant, &groups, &PsiOptions::default())
}

enum Outcome {
    Reduced,
    Bound,
    Found,
    Obstacle(ObstacleCertificate),
}

/// `ψ` over the given groups, which the caller asserts form the complete
/// class for `(n, variant)`.
pub fn psi_with(n: usize, variant: Variant, groups: &[Group], opts: &PsiOptions) -> Result<PsiResult, ScreeningError> {
    if n == 0 || groups.is_empty() {
        return Err(ScreeningError::ClassMismatch("need n >= 1 and at least one group".into()));
    }
    for g in groups {
        let fits = g.order() == n
            && match variant {
                Variant::Group => true,
                Variant::Abelian => g.is_abelian(),
                Variant::Cyclic => g.has_element_of_order(n),
            };
        if !fits {
            return Err(ScreeningError::ClassMismatch(format!(
                "{} (order {}) is not a {variant} group of order {n}",
                g.name(),
                g.order()
            )));
        }
    }
    // for n <= 4 the (n+1)-cell squares beyond the quasigroup bound are enough
    let cap = if n <= 4 { n + 1 } else { 7 };
    let keys = enumerate_keys(cap)?;
    let mut proven: HashSet<SpeciesKey> = HashSet::new();
    let mut result = PsiResult {
        n,
        variant,
        psi: cap,
        obstacles: Vec::new(),
        survivor_counts: BTreeMap::new(),
        size_stats: BTreeMap::new(),
        groups: groups.iter().map(|g| g.name().to_string()).collect(),
    };
    for size in 1..=cap {
        let outcomes: Vec<Outcome> = keys[&size]
            .par_iter()
            .map(|k| classify(&k.decode(), n, groups, opts, &proven))
            .collect();
        let mut stats = SizeStats {
            species: outcomes.len(),
            ..Default::default()
        };
        let mut obstacles = Vec::new();
        for (key, outcome) in keys[&size].iter().zip(outcomes) {
            match outcome {
                Outcome::Reduced => stats.reduced += 1,
                Outcome::Bound => stats.transversal_bound += 1,
                Outcome::Found => stats.found_by_search += 1,
                Outcome::Obstacle(certificate) => {
                    stats.not_embeddable += 1;
                    let p = key.decode();
                    obstacles.push(ObstacleReport {
                        species_key: key.clone(),
                        representative_triples: p.triples().iter().map(|t| t.one_based()).collect(),
                        certificate,
                    });
                    continue;
                }
            }
            proven.insert(key.clone());
        }
        stats.searched = stats.found_by_search + stats.not_embeddable;
        result.survivor_counts.insert(size, stats.searched);
        result.size_stats.insert(size, stats);
        if !obstacles.is_empty() {
            result.psi = size - 1;
            result.obstacles = obstacles;
            break;
        }
    }
    Ok(result)
}

fn classify(p: &Pls, n: usize, groups: &[Group], opts: &PsiOptions, proven: &HashSet<SpeciesKey>) -> Outcome {
    if opts.screening {
        if let Some(cert) = reducible(p, n) {
            let inherited = cert.reduced_pls().map_or(true, |q| proven.contains(&canonical_form(&q)));
            if inherited {
                return Outcome::Reduced;
            }
        }
        if transversal_fast_path(p, n).is_some() {
            return Outcome::Bound;
        }
    }
    if let Some(witness) = quadrangle_witness(p) {
        return Outcome::Obstacle(ObstacleCertificate::Quadrangle { witness });
    }
    if let Some(l) = row_cycle_species(p).filter(|l| n % l != 0) {
        return Outcome::Obstacle(ObstacleCertificate::RowCycleDivisibility { cycle_length: l, n });
    }
    let mut attest = Vec::with_capacity(groups.len());
    for g in groups {
        match find_embedding(p, g) {
            EmbedVerdict::NotEmbeddable { obstruction } => {
                let nodes = match obstruction {
                    crate::embed::Obstruction::ExhaustedSearch { nodes } => nodes,
                    _ => 0,
                };
                attest.push((g.name().to_string(), nodes));
            }
            _ => return Outcome::Found,
        }
    }
    Outcome::Obstacle(ObstacleCertificate::ExhaustedSearch { groups: attest })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pls::{fixtures, gen_diagonal, gen_evans, gen_row_cycle};

    fn keys(ps: &[Pls]) -> Vec<SpeciesKey> {
        let mut v: Vec<_> = ps.iter().map(canonical_form).collect();
        v.sort();
        v.dedup();
        v
    }

    #[test]
    fn formula_values() {
        let group: Vec<usize> = (1..=13).map(|n| psi_formula(n, Variant::Group)).collect();
        assert_eq!(group, vec![1, 1, 2, 3, 3, 5, 3, 5, 3, 5, 3, 6, 3]);
        assert_eq!(psi_formula(12, Variant::Abelian), 5);
        assert_eq!(psi_formula(6, Variant::Cyclic), 5);
    }

    #[test]
    fn psi_six_group() {
        let r = psi(6, Variant::Group).unwrap();
        assert_eq!(r.psi, 5);
        let f = fixtures();
        let want = keys(&[
            gen_evans(6, 1).unwrap(),
            gen_evans(6, 2).unwrap(),
            gen_evans(6, 3).unwrap(),
            gen_diagonal(6).unwrap(),
            f["interesting"].pls.clone(),
        ]);
        assert_eq!(r.obstacle_keys(), want);
    }

    #[test]
    fn psi_small_cyclic() {
        let r = psi(7, Variant::Cyclic).unwrap();
        assert_eq!(r.psi, 3);
        assert_eq!(r.obstacle_keys(), keys(&[gen_row_cycle(2).unwrap()]));
        let r = psi(4, Variant::Cyclic).unwrap();
        assert_eq!(r.psi, 3);
        assert!(r.obstacle_keys().contains(&canonical_form(&gen_diagonal(4).unwrap())));
    }

    #[test]
    fn incomplete_class() {
        assert_eq!(
            psi(20, Variant::Group).unwrap_err(),
            ScreeningError::IncompleteClass { n: 20, variant: Variant::Group }
        );
        let z4 = cyclic(4).unwrap();
        assert!(psi_with(6, Variant::Group, &[z4], &PsiOptions::default()).is_err());
    }
}
