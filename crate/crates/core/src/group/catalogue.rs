//! Groups of small order up to isomorphism.
//!
//! The per-order lists follow the classification of groups of order at most
//! 16 (counts 1,1,1,2,1,2,1,5,2,2,1,5,1,2,1,14). Pairwise non-isomorphism of
//! the entries is checked by the tests; completeness is taken from the
//! classification and re-derived by brute force for small orders in tests.

use super::constructors::{abelian, cyclic, dicyclic, dihedral, direct_product, from_perm_generators, semidirect_cyclic};
use super::{Group, GroupError};

pub const MAX_CATALOGUE_ORDER: usize = 16;

/// Largest order served by [`abelian_groups_of_order`].
pub const MAX_ABELIAN_ORDER: usize = 64;

/// All groups of order `n` up to isomorphism, abelian ones first.
pub fn groups_of_order(n: usize) -> Result<Vec<Group>, GroupError> {
    if n == 0 || n > MAX_CATALOGUE_ORDER {
        return Err(GroupError::OrderUnsupported(n));
    }
    let mut out = abelian_groups_of_order(n)?;
    out.extend(nonabelian(n)?);
    Ok(out)
}

fn nonabelian(n: usize) -> Result<Vec<Group>, GroupError> {
    Ok(match n {
        6 | 10 | 14 => vec![dihedral(n / 2)?],
        8 => vec![dihedral(4)?, dicyclic(2)?],
        12 => vec![
            dihedral(6)?,
            dicyclic(3)?,
            from_perm_generators(4, &[vec![1, 0, 3, 2], vec![1, 2, 0, 3]])?.with_name("A4"),
        ],
        16 => order_16_nonabelian()?,
        _ => Vec::new(),
    })
}

fn order_16_nonabelian() -> Result<Vec<Group>, GroupError> {
    let z8 = cyclic(8)?;
    let z4 = cyclic(4)?;
    let z2 = cyclic(2)?;
    let mult = |m: usize, k: usize| -> Vec<usize> { (0..m).map(|x| x * k % m).collect() };

    // Z4 x Z2 as abelian([2, 4]): element x = a + 2*b with a in Z2, b in Z4.
    // Write u = (0,1) of order 4 and v = (1,0) of order 2.
    let z4z2 = abelian(&[2, 4])?;
    let elt = |a: usize, b: usize| a % 2 + 2 * (b % 4);
    // u -> u v, v -> v
    let phi_16_3: Vec<usize> = (0..8).map(|x| elt(x % 2 + x / 2, x / 2)).collect();
    // u -> u, v -> u^2 v
    let phi_pauli: Vec<usize> = (0..8).map(|x| elt(x % 2, x / 2 + 2 * (x % 2))).collect();

    Ok(vec![
        dihedral(8)?,
        dicyclic(4)?.with_name("Q16"),
        semidirect_cyclic(&z8, &mult(8, 3), 2, "SD16")?,
        semidirect_cyclic(&z8, &mult(8, 5), 2, "M16")?,
        semidirect_cyclic(&z4, &mult(4, 3), 4, "Z4:Z4")?,
        direct_product(&dihedral(4)?, &z2)?,
        direct_product(&dicyclic(2)?, &z2)?,
        semidirect_cyclic(&z4z2, &phi_pauli, 2, "Pauli")?,
        semidirect_cyclic(&z4z2, &phi_16_3, 2, "(Z4xZ2):Z2")?,
    ])
}

/// All abelian groups of order `n`, one per choice of invariant factors.
pub fn abelian_groups_of_order(n: usize) -> Result<Vec<Group>, GroupError> {
    if n == 0 || n > MAX_ABELIAN_ORDER {
        return Err(GroupError::OrderUnsupported(n));
    }
    invariant_factor_lists(n).iter().map(|f| abelian(f)).collect()
}

/// Invariant factor lists `d1 | ... | dk` with product `n`, the cyclic one first.
pub fn invariant_factor_lists(n: usize) -> Vec<Vec<usize>> {
    let factors = prime_powers(n);
    let mut lists: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for part in partitions(e) {
            for base in &lists {
                // merge: largest parts go to the largest invariant factors
                let len = base.len().max(part.len());
                let mut merged = vec![1usize; len];
                for (i, &d) in base.iter().rev().enumerate() {
                    merged[len - 1 - i] *= d;
                }
                for (i, &k) in part.iter().enumerate() {
                    merged[len - 1 - i] *= p.pow(k as u32);
                }
                next.push(merged);
            }
        }
        lists = next;
    }
    lists.sort_by(|a, b| a.len().cmp(&b.len()).then(b.cmp(a)));
    lists
}

fn prime_powers(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `e` as non-increasing part lists.
fn partitions(e: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{group_from_table, isomorphic};

    #[test]
    fn catalogue_counts() {
        let counts: Vec<usize> = (1..=16).map(|n| groups_of_order(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]);
        assert_eq!(groups_of_order(17), Err(GroupError::OrderUnsupported(17)));
    }

    #[test]
    fn catalogue_pairwise_non_isomorphic_and_valid() {
        for n in 1..=16 {
            let gs = groups_of_order(n).unwrap();
            for (i, g) in gs.iter().enumerate() {
                assert_eq!(g.order(), n);
                group_from_table(&g.table_rows()).unwrap();
                assert!(isomorphic(g, g));
                for h in &gs[i + 1..] {
                    assert!(!isomorphic(g, h), "{} ~ {}", g.name(), h.name());
                }
            }
        }
    }

    #[test]
    fn abelian_lists() {
        assert_eq!(invariant_factor_lists(12), vec![vec![12], vec![2, 6]]);
        assert_eq!(
            invariant_factor_lists(16),
            vec![vec![16], vec![4, 4], vec![2, 8], vec![2, 2, 4], vec![2, 2, 2, 2]]
        );
        assert_eq!(invariant_factor_lists(1), vec![Vec::<usize>::new()]);
        let counts: Vec<usize> = (1..=64).map(|n| abelian_groups_of_order(n).unwrap().len()).collect();
        assert_eq!(counts[63], 11); // p(6)
        assert_eq!(counts[35], 4); // 36 = 2^2 3^2
    }

    #[test]
    fn cauchy_census() {
        for n in 1..=16 {
            for g in groups_of_order(n).unwrap() {
                for p in [2, 3, 5, 7, 11, 13] {
                    if n % p == 0 {
                        assert!(g.has_element_of_order(p), "{} lacks order {p}", g.name());
                    }
                }
                for x in 0..n {
                    assert_eq!(n % g.element_order(x), 0);
                }
            }
        }
    }
}
