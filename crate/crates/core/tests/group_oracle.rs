//! Re-derives the catalogue at orders 6 and 8 by enumerating every
//! associative latin square with identity 0 and sorting them into
//! isomorphism classes with a local bijection search.

use cayley_embed::group::{groups_of_order, isomorphic, Group};

const EMPTY: usize = usize::MAX;

fn all_group_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut t = vec![vec![EMPTY; n]; n];
    for i in 0..n {
        t[0][i] = i;
        t[i][0] = i;
    }
    let mut out = Vec::new();
    fill(&mut t, n + 1, n, &mut out);
    out
}

fn fill(t: &mut Vec<Vec<usize>>, cell: usize, n: usize, out: &mut Vec<Vec<Vec<usize>>>) {
    if cell >= n * n {
        out.push(t.clone());
        return;
    }
    let (a, b) = (cell / n, cell % n);
    if b == 0 {
        return fill(t, cell + 1, n, out);
    }
    for v in 0..n {
        if (0..b).any(|k| t[a][k] == v) || (0..a).any(|k| t[k][b] == v) {
            continue;
        }
        t[a][b] = v;
        if partial_associative(t, n) {
            fill(t, cell + 1, n, out);
        }
    }
    t[a][b] = EMPTY;
}

fn partial_associative(t: &[Vec<usize>], n: usize) -> bool {
    for x in 0..n {
        for y in 0..n {
            let xy = t[x][y];
            if xy == EMPTY {
                continue;
            }
            for z in 0..n {
                let yz = t[y][z];
                if yz == EMPTY {
                    continue;
                }
                let (l, r) = (t[xy][z], t[x][yz]);
                if l != EMPTY && r != EMPTY && l != r {
                    return false;
                }
            }
        }
    }
    true
}

/// Bijection search with `f(0) = 0`, extending one element at a time and
/// checking every product whose operands and result are already mapped.
fn tables_isomorphic(g: &[Vec<usize>], h: &[Vec<usize>]) -> bool {
    let n = g.len();
    let mut f = vec![EMPTY; n];
    let mut used = vec![false; n];
    f[0] = 0;
    used[0] = true;
    extend(g, h, 1, &mut f, &mut used)
}

fn extend(g: &[Vec<usize>], h: &[Vec<usize>], x: usize, f: &mut [usize], used: &mut [bool]) -> bool {
    let n = g.len();
    if x == n {
        return true;
    }
    for y in 0..n {
        if used[y] {
            continue;
        }
        f[x] = y;
        used[y] = true;
        let ok = (0..=x).all(|a| {
            (0..=x).all(|b| {
                let p = g[a][b];
                p > x || f[p] == h[f[a]][f[b]]
            })
        });
        if ok && extend(g, h, x + 1, f, used) {
            return true;
        }
        used[y] = false;
    }
    f[x] = EMPTY;
    false
}

fn classes(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut reps: Vec<Vec<Vec<usize>>> = Vec::new();
    for t in all_group_tables(n) {
        if !reps.iter().any(|r| tables_isomorphic(r, &t)) {
            reps.push(t);
        }
    }
    reps
}

fn check_order(n: usize, expect: usize) {
    let reps = classes(n);
    assert_eq!(reps.len(), expect);
    let cat = groups_of_order(n).unwrap();
    assert_eq!(cat.len(), expect);
    // each brute-force class matches exactly one catalogue entry
    for r in &reps {
        let matches = cat.iter().filter(|g| tables_isomorphic(r, &g.table_rows())).count();
        assert_eq!(matches, 1);
        let g = Group::from_table(r).unwrap();
        assert_eq!(cat.iter().filter(|c| isomorphic(c, &g)).count(), 1);
    }
}

#[test]
fn order_6_has_two_groups() {
    check_order(6, 2);
    let cat = groups_of_order(6).unwrap();
    assert_eq!(cat.iter().filter(|g| g.is_abelian()).count(), 1);
}

#[test]
fn order_8_has_five_groups() {
    check_order(8, 5);
}

#[test]
fn small_orders_match() {
    for (n, k) in [(1, 1), (2, 1), (3, 1), (4, 2), (5, 1)] {
        check_order(n, k);
    }
}
