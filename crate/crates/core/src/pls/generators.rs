//! The named families: tight quasigroup obstacles `E(n,a)`, diagonals `T(t)`,
//! row cycles `C(l)` and the two-symbol diagonal `Δ(n)`.

use super::{Pls, PlsError};

fn out_of_range(msg: String) -> PlsError {
    PlsError::ParameterOutOfRange(msg)
}

/// `E(n,a)`: row 1 holds `1..=a` in columns `1..=a`, column `n` holds
/// `a+1..=n` in rows `a+1..=n`. Size `n`; fits in no quasigroup of order `n`.
pub fn gen_evans(n: usize, a: usize) -> Result<Pls, PlsError> {
    if a < 1 || a >= n {
        return Err(out_of_range(format!("evans square needs 1 <= a < n, got n={n}, a={a}")));
    }
    let n32 = n as u32;
    let mut raw: Vec<(u32, u32, u32)> = (1..=a as u32).map(|i| (1, i, i)).collect();
    raw.extend((a as u32 + 1..=n32).map(|i| (i, n32, i)));
    Pls::from_raw(&raw)
}

/// `T(t)`: the diagonal with `t` distinct symbols.
pub fn gen_diagonal(t: usize) -> Result<Pls, PlsError> {
    if t < 1 {
        return Err(out_of_range("diagonal needs t >= 1".into()));
    }
    let raw: Vec<_> = (1..=t as u32).map(|i| (i, i, i)).collect();
    Pls::from_raw(&raw)
}

/// `C(l)`: two rows, the second a cyclic shift of the first.
pub fn gen_row_cycle(l: usize) -> Result<Pls, PlsError> {
    if l < 2 {
        return Err(out_of_range(format!("row cycle needs l >= 2, got {l}")));
    }
    let l32 = l as u32;
    let mut raw: Vec<_> = (1..=l32).map(|i| (1, i, i)).collect();
    raw.extend((1..=l32).map(|i| (2, i, i % l32 + 1)));
    Pls::from_raw(&raw)
}

/// `Δ(n)`: diagonal of size `n` with symbol `a` in the first three cells and
/// `b` in the remaining `n - 3`.
pub fn gen_delta(n: usize) -> Result<Pls, PlsError> {
    if n < 4 {
        return Err(out_of_range(format!("delta needs n >= 4, got {n}")));
    }
    gen_diagonal_partition(&[3, n - 3])
}

/// Diagonal PLS whose symbol multiplicities are `parts`, symbols in order.
pub fn gen_diagonal_partition(parts: &[usize]) -> Result<Pls, PlsError> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(out_of_range(format!("partition parts must be positive: {parts:?}")));
    }
    let mut raw = Vec::new();
    let mut cell = 0u32;
    for (s, &m) in parts.iter().enumerate() {
        for _ in 0..m {
            cell += 1;
            raw.push((cell, cell, s as u32 + 1));
        }
    }
    Pls::from_raw(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pls::Triple;

    #[test]
    fn evans_6_2_layout() {
        let p = gen_evans(6, 2).unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(p.n_syms(), 6);
        // dense rows: 1,3,4,5,6 -> 0..5; dense cols: 1,2,6 -> 0,1,2
        assert_eq!(p.counts(), [5, 3, 6]);
        assert!(p.contains(&Triple::new(0, 0, 0)));
        assert!(p.contains(&Triple::new(0, 1, 1)));
        for (row, sym) in [(1, 2), (2, 3), (3, 4), (4, 5)] {
            assert!(p.contains(&Triple::new(row, 2, sym)));
        }
    }

    #[test]
    fn sizes_match_families() {
        for n in 2..9 {
            for a in 1..n {
                assert_eq!(gen_evans(n, a).unwrap().size(), n);
            }
        }
        for t in 1..10 {
            let d = gen_diagonal(t).unwrap();
            assert_eq!(d.size(), t);
            assert!(d.is_transversal_like());
        }
        for l in 2..10 {
            let c = gen_row_cycle(l).unwrap();
            assert_eq!(c.size(), 2 * l);
            assert_eq!(c.counts(), [2, l, l]);
        }
        for n in 4..17 {
            let d = gen_delta(n).unwrap();
            assert_eq!(d.size(), n);
            assert_eq!(d.n_syms(), 2);
            assert_eq!(d.line(crate::pls::Role::Sym, 0).count(), 3);
        }
    }

    #[test]
    fn row_cycle_2_shape() {
        let c = gen_row_cycle(2).unwrap();
        let expect = [
            Triple::new(0, 0, 0),
            Triple::new(0, 1, 1),
            Triple::new(1, 0, 1),
            Triple::new(1, 1, 0),
        ];
        assert_eq!(c.triples(), &expect);
    }

    #[test]
    fn parameter_errors() {
        assert!(gen_evans(4, 0).is_err());
        assert!(gen_evans(4, 4).is_err());
        assert!(gen_diagonal(0).is_err());
        assert!(gen_row_cycle(1).is_err());
        assert!(gen_delta(3).is_err());
        assert!(gen_diagonal_partition(&[2, 0]).is_err());
    }
}
