//! Constructors for the group families used by the catalogue.

use std::collections::HashMap;

use super::{Group, GroupError};

/// Largest closure [`from_perm_generators`] will build.
pub const CLOSURE_LIMIT: usize = 10_000;

fn bad(msg: impl Into<String>) -> GroupError {
    GroupError::ParameterOutOfRange(msg.into())
}

fn tabulate(n: usize, name: String, mul: impl Fn(usize, usize) -> usize) -> Group {
    let mut flat = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            flat.push(mul(a, b) as u32);
        }
    }
    Group::from_flat(n, flat, name)
}

/// `Z_n`, element `k` is the residue `k`.
pub fn cyclic(n: usize) -> Result<Group, GroupError> {
    if n == 0 {
        return Err(bad("cyclic group needs n >= 1"));
    }
    Ok(tabulate(n, format!("Z{n}"), |a, b| (a + b) % n))
}

/// The invariant factors of `Z_{f1} x ... x Z_{fk}`, smallest first. Each
/// prime's powers are dealt from largest to the last factor, next largest to
/// the one before, and so on.
pub fn invariant_factors(factors: &[usize]) -> Result<Vec<usize>, GroupError> {
    if factors.contains(&0) {
        return Err(bad(format!("cyclic factors must be >= 1: {factors:?}")));
    }
    let mut powers: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &f in factors {
        let mut m = f;
        let mut p = 2;
        while m > 1 {
            if p * p > m {
                p = m;
            }
            let mut q = 1;
            while m % p == 0 {
                m /= p;
                q *= p;
            }
            if q > 1 {
                powers.entry(p).or_default().push(q);
            }
            p += 1;
        }
    }
    let len = powers.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1; len];
    for mut qs in powers.into_values() {
        qs.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in qs.into_iter().enumerate() {
            out[len - 1 - i] *= q;
        }
    }
    Ok(out)
}

/// Abelian group with invariant factors `d1 | d2 | ... | dk`, elements in
/// mixed radix with the first factor least significant. `[]` is the trivial
/// group.
pub fn abelian(factors: &[usize]) -> Result<Group, GroupError> {
    if factors.iter().any(|&d| d < 2) {
        return Err(bad(format!("invariant factors must be >= 2: {factors:?}")));
    }
    if factors.windows(2).any(|w| w[1] % w[0] != 0) {
        return Err(bad(format!("each invariant factor must divide the next: {factors:?}")));
    }
    let n: usize = factors.iter().product();
    if n > CLOSURE_LIMIT {
        return Err(GroupError::ClosureTooLarge(CLOSURE_LIMIT));
    }
    let name = if factors.is_empty() {
        "Z1".to_string()
    } else {
        factors.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x")
    };
    let f = factors.to_vec();
    Ok(tabulate(n, name, move |a, b| {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for &d in &f {
            out += ((a % d + b % d) % d) * scale;
            a /= d;
            b /= d;
            scale *= d;
        }
        out
    }))
}

/// Dihedral group of order `2k`: `<r, s | r^k = s^2 = e, s r = r^-1 s>`.
/// Element `i + k*j` is `r^i s^j`.
pub fn dihedral(k: usize) -> Result<Group, GroupError> {
    if k < 2 {
        return Err(bad(format!("dihedral group needs k >= 2, got {k}")));
    }
    Ok(tabulate(2 * k, format!("D{}", 2 * k), move |a, b| {
        let (i1, j1) = (a % k, a / k);
        let (i2, j2) = (b % k, b / k);
        let i = if j1 == 0 { (i1 + i2) % k } else { (i1 + k - i2) % k };
        i + k * ((j1 + j2) % 2)
    }))
}

/// Dicyclic group of order `4k`: `<a, x | a^2k = e, x^2 = a^k, x a x^-1 = a^-1>`.
/// Element `i + 2k*j` is `a^i x^j`. `dicyclic(2)` is the quaternion group.
pub fn dicyclic(k: usize) -> Result<Group, GroupError> {
    if k < 2 {
        return Err(bad(format!("dicyclic group needs k >= 2, got {k}")));
    }
    let m = 2 * k;
    let name = if k == 2 { "Q8".to_string() } else { format!("Dic{k}") };
    Ok(tabulate(4 * k, name, move |a, b| {
        let (i1, j1) = (a % m, a / m);
        let (i2, j2) = (b % m, b / m);
        match (j1, j2) {
            (0, _) => (i1 + i2) % m + m * j2,
            (1, 0) => (i1 + m - i2) % m + m,
            _ => (i1 + m - i2 + k) % m,
        }
    }))
}

/// `G x H`, element `g * |H| + h`.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group, GroupError> {
    let m = h.order();
    let n = g.order() * m;
    if n > CLOSURE_LIMIT {
        return Err(GroupError::ClosureTooLarge(CLOSURE_LIMIT));
    }
    Ok(tabulate(n, format!("{}x{}", g.name(), h.name()), |a, b| {
        g.mul(a / m, b / m) * m + h.mul(a % m, b % m)
    }))
}

/// `N x| Z_k` where the generator of `Z_k` acts on `N` by the automorphism
/// `phi` (given as the image of each element) with `phi^k = id`.
/// Element `x + |N|*j` is `(x, j)`, and `(x, i)(y, j) = (x phi^i(y), i + j)`.
pub fn semidirect_cyclic(n: &Group, phi: &[usize], k: usize, name: &str) -> Result<Group, GroupError> {
    let m = n.order();
    if k == 0 || phi.len() != m {
        return Err(bad("automorphism must list one image per element and k >= 1"));
    }
    for a in 0..m {
        for b in 0..m {
            if phi[n.mul(a, b)] != n.mul(phi[a], phi[b]) {
                return Err(bad("map is not a homomorphism"));
            }
        }
    }
    let mut powers = vec![(0..m).collect::<Vec<_>>()];
    for _ in 1..=k {
        let last = powers.last().expect("nonempty");
        powers.push(last.iter().map(|&x| phi[x]).collect());
    }
    if powers[k].iter().enumerate().any(|(i, &x)| i != x) {
        return Err(bad("automorphism order must divide k"));
    }
    let mut seen = vec![false; m];
    for &x in phi {
        if std::mem::replace(&mut seen[x], true) {
            return Err(bad("map is not bijective"));
        }
    }
    Ok(tabulate(m * k, name.to_string(), |a, b| {
        let (x, i) = (a % m, a / m);
        let (y, j) = (b % m, b / m);
        n.mul(x, powers[i][y]) + m * ((i + j) % k)
    }))
}

/// Closure of permutations of `0..degree`; `(g*h)(x) = g(h(x))`.
pub fn from_perm_generators(degree: usize, generators: &[Vec<usize>]) -> Result<Group, GroupError> {
    for g in generators {
        if g.len() != degree {
            return Err(bad(format!("generator {g:?} has wrong degree")));
        }
        let mut seen = vec![false; degree];
        for &x in g {
            if x >= degree || std::mem::replace(&mut seen[x], true) {
                return Err(bad(format!("{g:?} is not a permutation")));
            }
        }
    }
    let identity: Vec<usize> = (0..degree).collect();
    let compose = |g: &[usize], h: &[usize]| -> Vec<usize> { h.iter().map(|&x| g[x]).collect() };
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let p = compose(&elements[i], g);
            if !index.contains_key(&p) {
                if elements.len() >= CLOSURE_LIMIT {
                    return Err(GroupError::ClosureTooLarge(CLOSURE_LIMIT));
                }
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
        i += 1;
    }
    let n = elements.len();
    let name = format!("perm({n})");
    Ok(tabulate(n, name, |a, b| index[&compose(&elements[a], &elements[b])]))
}
