//! Group isomorphism by invariant screening and generator-image search.

use super::Group;

/// Whether `g` and `h` are isomorphic.
pub fn isomorphic(g: &Group, h: &Group) -> bool {
    if g.order() != h.order()
        || g.order_census() != h.order_census()
        || g.is_abelian() != h.is_abelian()
        || g.center_size() != h.center_size()
    {
        return false;
    }
    // finite abelian groups are determined by their element-order census
    if g.is_abelian() {
        return true;
    }
    let gens = generating_set(g);
    let words = spanning_tree(g, &gens);
    let mut images = Vec::with_capacity(gens.len());
    assign(g, h, &gens, &words, &mut images)
}

/// Greedy generating set: repeatedly add an element of largest order outside
/// the subgroup generated so far.
fn generating_set(g: &Group) -> Vec<usize> {
    let n = g.order();
    let mut by_order: Vec<usize> = (0..n).collect();
    by_order.sort_by_key(|&x| std::cmp::Reverse(g.element_order(x)));
    let mut gens = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    for x in by_order {
        if inside[x] {
            continue;
        }
        gens.push(x);
        // close the subgroup under right multiplication by all generators
        let mut i = 0;
        let mut members = vec![0];
        inside.fill(false);
        inside[0] = true;
        while i < members.len() {
            for &s in &gens {
                let p = g.mul(members[i], s);
                if !inside[p] {
                    inside[p] = true;
                    members.push(p);
                }
            }
            i += 1;
        }
        if members.len() == n {
            break;
        }
    }
    gens
}

/// `(element, parent, generator index)` in BFS order from the identity, with
/// `element = parent * gens[index]`.
fn spanning_tree(g: &Group, gens: &[usize]) -> Vec<(usize, usize, usize)> {
    let n = g.order();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut order = vec![0];
    let mut tree = Vec::with_capacity(n);
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for (k, &s) in gens.iter().enumerate() {
            let p = g.mul(x, s);
            if !seen[p] {
                seen[p] = true;
                order.push(p);
                tree.push((p, x, k));
            }
        }
        i += 1;
    }
    tree
}

fn assign(
    g: &Group,
    h: &Group,
    gens: &[usize],
    tree: &[(usize, usize, usize)],
    images: &mut Vec<usize>,
) -> bool {
    if images.len() == gens.len() {
        return check_map(g, h, tree, images);
    }
    let want = g.element_order(gens[images.len()]);
    for y in 0..h.order() {
        if h.element_order(y) != want || images.contains(&y) {
            continue;
        }
        images.push(y);
        if assign(g, h, gens, tree, images) {
            return true;
        }
        images.pop();
    }
    false
}

fn check_map(g: &Group, h: &Group, tree: &[(usize, usize, usize)], images: &[usize]) -> bool {
    let n = g.order();
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    f[0] = 0;
    used[0] = true;
    for &(x, parent, k) in tree {
        let y = h.mul(f[parent], images[k]);
        if used[y] {
            return false;
        }
        used[y] = true;
        f[x] = y;
    }
    (0..n).all(|a| (0..n).all(|b| f[g.mul(a, b)] == h.mul(f[a], f[b])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian, cyclic, dicyclic, dihedral, direct_product, from_perm_generators};

    #[test]
    fn crt_and_klein() {
        let z6 = abelian(&[6]).unwrap();
        let z2z3 = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert!(isomorphic(&z6, &z2z3));
        assert!(!isomorphic(&cyclic(4).unwrap(), &abelian(&[2, 2]).unwrap()));
    }

    #[test]
    fn nonabelian_search() {
        // S3 from permutations against the dihedral presentation
        let s3 = from_perm_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert!(isomorphic(&s3, &dihedral(3).unwrap()));
        assert!(!isomorphic(&dihedral(4).unwrap(), &dicyclic(2).unwrap()));
        // D12 = D6 x Z2
        let d6z2 = direct_product(&dihedral(3).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert!(isomorphic(&d6z2, &dihedral(6).unwrap()));
        assert!(!isomorphic(&d6z2, &dicyclic(3).unwrap()));
    }

    #[test]
    fn relabelled_copy_is_isomorphic() {
        let d = dihedral(5).unwrap();
        let n = d.order();
        // reverse the labels of the non-identity elements
        let perm: Vec<usize> = (0..n).map(|x| if x == 0 { 0 } else { n - x }).collect();
        let mut t = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                t[perm[a]][perm[b]] = perm[d.mul(a, b)];
            }
        }
        let copy = Group::from_table(&t).unwrap();
        assert_ne!(copy.table_rows(), d.table_rows());
        assert!(isomorphic(&copy, &d));
    }
}
