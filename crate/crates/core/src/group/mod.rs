//! Finite groups as dense Cayley tables.
//!
//! The identity is always element `0`. Products are table lookups, which is
//! what the embedding search spends its time on.

mod catalogue;
mod constructors;
mod iso;
mod spec;

use std::fmt;

use serde::Serialize;

pub use catalogue::{abelian_groups_of_order, groups_of_order, MAX_CATALOGUE_ORDER};
pub use constructors::{
    abelian, cyclic, dicyclic, dihedral, direct_product, from_perm_generators, invariant_factors,
    semidirect_cyclic, CLOSURE_LIMIT,
};
pub use iso::isomorphic;
pub use spec::{parse_group_file, write_group_file, GroupSpec};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not a latin square: {0}")]
    NotLatin(String),
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("generated group exceeds {0} elements")]
    ClosureTooLarge(usize),
    #[error("no built-in catalogue for order {0}; supply the groups as table files")]
    OrderUnsupported(usize),
    #[error("bad group spec {spec:?}: {msg}")]
    BadSpec { spec: String, msg: String },
    #[error("group file: {0}")]
    File(String),
}

/// A validated finite group.
#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    element_orders: Vec<u32>,
    name: String,
}

impl Group {
    /// Validates a Cayley table: latin, two-sided identity, associative.
    /// Elements are renumbered so that the identity becomes `0`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Group, GroupError> {
        Group::from_table_named(table, "table")
    }

    pub fn from_table_named(table: &[Vec<usize>], name: &str) -> Result<Group, GroupError> {
        let g = Group::build(table, name)?;
        g.check_associative()?;
        Ok(g)
    }

    /// Latin and identity checks only; callers guarantee associativity.
    pub(crate) fn build(table: &[Vec<usize>], name: &str) -> Result<Group, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NotLatin("empty table".into()));
        }
        if n > u32::MAX as usize {
            return Err(GroupError::ParameterOutOfRange("order too large".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotLatin(format!("row {i} has length {}", row.len())));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(GroupError::NotLatin(format!("entry {v} out of range in row {i}")));
            }
        }
        let mut seen = vec![usize::MAX; n];
        for (i, row) in table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if seen[v] == i {
                    return Err(GroupError::NotLatin(format!("row {i} repeats {v} (column {j})")));
                }
                seen[v] = i;
            }
        }
        seen.fill(usize::MAX);
        for j in 0..n {
            for i in 0..n {
                let v = table[i][j];
                if seen[v] == j {
                    return Err(GroupError::NotLatin(format!("column {j} repeats {v} (row {i})")));
                }
                seen[v] = j;
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;

        // swap e <-> 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut flat = vec![0u32; n * n];
        for (i, row) in table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                flat[relabel(i) * n + relabel(j)] = relabel(v) as u32;
            }
        }
        Ok(Group::from_flat(n, flat, name.to_string()))
    }

    /// `flat` is latin with identity 0; fills in inverses and element orders.
    pub(crate) fn from_flat(order: usize, table: Vec<u32>, name: String) -> Group {
        let mut inverse = vec![0u32; order];
        for x in 0..order {
            let row = &table[x * order..(x + 1) * order];
            inverse[x] = row.iter().position(|&v| v == 0).expect("latin row contains identity") as u32;
        }
        let mut g = Group {
            order,
            table,
            inverse,
            element_orders: Vec::new(),
            name,
        };
        g.element_orders = (0..order).map(|x| g.power_order(x) as u32).collect();
        g
    }

    fn power_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut p = x;
        while p != 0 {
            p = self.mul(p, x);
            k += 1;
            if k > self.order {
                // only reachable for non-associative input
                return 0;
            }
        }
        k
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Group {
        self.name = name.into();
        self
    }

    /// Least `m >= 1` with `g^m = e`.
    pub fn element_order(&self, g: usize) -> usize {
        self.element_orders[g] as usize
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.element_orders.iter().map(|&o| o as usize).collect()
    }

    /// Sorted element orders.
    pub fn order_census(&self) -> Vec<usize> {
        let mut v = self.element_orders();
        v.sort_unstable();
        v
    }

    pub fn has_element_of_order(&self, m: usize) -> bool {
        self.element_orders.iter().any(|&o| o as usize == m)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center_size(&self) -> usize {
        let n = self.order;
        (0..n)
            .filter(|&a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .count()
    }

    /// The group with multiplication `a * b := b a`.
    pub fn opposite(&self) -> Group {
        let n = self.order;
        let mut flat = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[a * n + b] = self.mul(b, a) as u32;
            }
        }
        Group::from_flat(n, flat, format!("{}^op", self.name))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            name: self.name.clone(),
            order: self.order,
            abelian: self.is_abelian(),
            center_size: self.center_size(),
            order_census: census_pairs(&self.order_census()),
        }
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.name, self.order)
    }
}

/// Invariants of a group, for reports.
#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: usize,
    pub abelian: bool,
    pub center_size: usize,
    /// `(element order, how many elements)` pairs.
    pub order_census: Vec<(usize, usize)>,
}

fn census_pairs(sorted: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &o in sorted {
        match out.last_mut() {
            Some((k, c)) if *k == o => *c += 1,
            _ => out.push((o, 1)),
        }
    }
    out
}

/// Validates a Cayley table.
pub fn group_from_table(table: &[Vec<usize>]) -> Result<Group, GroupError> {
    Group::from_table(table)
}

/// Least `m >= 1` with `g^m = e`.
pub fn element_order(g: &Group, x: usize) -> usize {
    g.element_order(x)
}

pub fn is_abelian(g: &Group) -> bool {
    g.is_abelian()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z6_table() -> Vec<Vec<usize>> {
        (0..6).map(|a| (0..6).map(|b| (a + b) % 6).collect()).collect()
    }

    #[test]
    fn z6_from_table() {
        let g = group_from_table(&z6_table()).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.order(), 6);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.order_census(), vec![1, 2, 3, 3, 6, 6]);
    }

    #[test]
    fn rejects_non_latin() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(group_from_table(&t), Err(GroupError::NotLatin(_))));
        assert!(matches!(
            group_from_table(&[vec![0, 1]]),
            Err(GroupError::NotLatin(_))
        ));
    }

    #[test]
    fn identity_is_moved_to_zero() {
        // Z3 written with identity 2
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = group_from_table(&t).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), g.inv(1));
    }

    #[test]
    fn no_identity() {
        // latin, no identity: x*y = x - y mod 3
        let t: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (a + 3 - b) % 3).collect()).collect();
        assert_eq!(group_from_table(&t), Err(GroupError::NoIdentity));
    }

    /// Order-5 loop found by brute-force search over normalized latin squares:
    /// the first one (in lexicographic row order) that is not associative.
    #[test]
    fn non_associative_loop_of_order_5() {
        let loop5 = first_nonassociative_loop(5);
        assert!(matches!(
            group_from_table(&loop5),
            Err(GroupError::NotAssociative(..))
        ));
    }

    fn first_nonassociative_loop(n: usize) -> Vec<Vec<usize>> {
        fn fill(t: &mut Vec<Vec<usize>>, cell: usize, n: usize) -> bool {
            if cell == n * n {
                let assoc = (0..n).all(|a| {
                    (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]]))
                });
                return !assoc;
            }
            let (i, j) = (cell / n, cell % n);
            if i == 0 || j == 0 {
                t[i][j] = i.max(j);
                return fill(t, cell + 1, n);
            }
            for v in 0..n {
                if (0..j).any(|k| t[i][k] == v) || (0..i).any(|k| t[k][j] == v) {
                    continue;
                }
                t[i][j] = v;
                if fill(t, cell + 1, n) {
                    return true;
                }
            }
            false
        }
        let mut t = vec![vec![0; n]; n];
        assert!(fill(&mut t, 0, n));
        t
    }

    #[test]
    fn opposite_of_nonabelian_differs_in_table() {
        let d = dihedral(3).unwrap();
        let op = d.opposite();
        assert!(isomorphic(&d, &op));
        assert_ne!(d.table_rows(), op.table_rows());
    }
}
