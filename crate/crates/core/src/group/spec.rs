//! Textual group specifications and the group table file format.
//!
//! Spec syntax:
//!
//! | spec | group |
//! |---|---|
//! | `cyclic:12` | `Z12` |
//! | `abelian:2,6` | `Z2 x Z6`; any factors, so `abelian:2,3` is `Z6` |
//! | `dihedral:6` | dihedral group of order 12 |
//! | `dicyclic:3` | dicyclic group of order 12 |
//! | `perm:1,0,2;1,2,0` | closure of permutations of `0..degree` |
//! | `catalogue:8:4` | entry 4 (0-based) of `groups_of_order(8)` |
//! | `file:path` | table file |
//! | `A*B` | direct product |

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::{
    abelian, cyclic, dicyclic, dihedral, direct_product, from_perm_generators, groups_of_order, invariant_factors,
    Group,
    GroupError,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    Dihedral(usize),
    Dicyclic(usize),
    Perm { degree: usize, generators: Vec<Vec<usize>> },
    Catalogue { order: usize, index: usize },
    File(PathBuf),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group, GroupError> {
        match self {
            GroupSpec::Cyclic(n) => cyclic(*n),
            GroupSpec::Abelian(f) => {
                let normal = invariant_factors(f)?;
                let g = abelian(&normal)?;
                Ok(if normal == *f { g } else { g.with_name(format!("Z{}", join(f, "xZ"))) })
            }
            GroupSpec::Dihedral(k) => dihedral(*k),
            GroupSpec::Dicyclic(k) => dicyclic(*k),
            GroupSpec::Perm { degree, generators } => from_perm_generators(*degree, generators),
            GroupSpec::Catalogue { order, index } => {
                let mut all = groups_of_order(*order)?;
                if *index >= all.len() {
                    return Err(GroupError::ParameterOutOfRange(format!(
                        "order {order} has {} catalogue groups",
                        all.len()
                    )));
                }
                Ok(all.swap_remove(*index))
            }
            GroupSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| GroupError::File(format!("{}: {e}", path.display())))?;
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "file".into());
                Ok(parse_group_file(&text)?.with_name(name))
            }
            GroupSpec::Product(a, b) => direct_product(&a.build()?, &b.build()?),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let spec = spec.trim();
        let err = |msg: &str| GroupError::BadSpec {
            spec: spec.to_string(),
            msg: msg.to_string(),
        };
        if let Some((a, b)) = spec.split_once('*') {
            return Ok(GroupSpec::Product(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        let (tag, arg) = spec.split_once(':').ok_or_else(|| err("expected tag:parameters"))?;
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| err("expected a non-negative integer"));
        let list = |s: &str, sep: char| s.split(sep).map(num).collect::<Result<Vec<_>, _>>();
        match tag.trim() {
            "cyclic" => Ok(GroupSpec::Cyclic(num(arg)?)),
            "abelian" => Ok(GroupSpec::Abelian(list(arg, ',')?)),
            "dihedral" => Ok(GroupSpec::Dihedral(num(arg)?)),
            "dicyclic" => Ok(GroupSpec::Dicyclic(num(arg)?)),
            "perm" => {
                let generators = arg.split(';').map(|g| list(g, ',')).collect::<Result<Vec<_>, _>>()?;
                let degree = generators.first().map_or(0, Vec::len);
                Ok(GroupSpec::Perm { degree, generators })
            }
            "catalogue" => {
                let v = list(arg, ':')?;
                match v[..] {
                    [order, index] => Ok(GroupSpec::Catalogue { order, index }),
                    _ => Err(err("expected catalogue:order:index")),
                }
            }
            "file" => Ok(GroupSpec::File(PathBuf::from(arg))),
            _ => Err(err("unknown tag")),
        }
    }
}

fn join(v: &[usize], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Abelian(v) => write!(f, "abelian:{}", join(v, ",")),
            GroupSpec::Dihedral(k) => write!(f, "dihedral:{k}"),
            GroupSpec::Dicyclic(k) => write!(f, "dicyclic:{k}"),
            GroupSpec::Perm { generators, .. } => {
                let gens: Vec<String> = generators.iter().map(|g| join(g, ",")).collect();
                write!(f, "perm:{}", gens.join(";"))
            }
            GroupSpec::Catalogue { order, index } => write!(f, "catalogue:{order}:{index}"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
            GroupSpec::Product(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

/// Parses a table file: the order `n` on the first line, then `n` rows of `n`
/// integers in `0..n`. Blank lines and `#` comments are ignored.
pub fn parse_group_file(text: &str) -> Result<Group, GroupError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let bad = |msg: String| GroupError::File(msg);
    let n: usize = lines
        .next()
        .ok_or_else(|| bad("empty file".into()))?
        .parse()
        .map_err(|_| bad("first line must be the order".into()))?;
    let mut table = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad(format!("row {i}: expected integers")))?;
        table.push(row);
    }
    if table.len() != n {
        return Err(bad(format!("expected {n} rows, found {}", table.len())));
    }
    Group::from_table(&table)
}

pub fn write_group_file(g: &Group) -> String {
    let mut out = format!("{}\n", g.order());
    for row in g.table_rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::isomorphic;

    #[test]
    fn parse_and_build() {
        let g: GroupSpec = "cyclic:12".parse().unwrap();
        assert_eq!(g, GroupSpec::Cyclic(12));
        assert_eq!(g.build().unwrap().order(), 12);
        assert_eq!("dihedral:6".parse::<GroupSpec>().unwrap().build().unwrap().order(), 12);
        let a: GroupSpec = "abelian:2,6".parse().unwrap();
        assert_eq!(a.to_string(), "abelian:2,6");
        let p: GroupSpec = "cyclic:2*dihedral:3".parse().unwrap();
        assert_eq!(p.build().unwrap().order(), 12);
        let s3: GroupSpec = "perm:1,0,2;1,2,0".parse().unwrap();
        assert!(isomorphic(&s3.build().unwrap(), &dihedral(3).unwrap()));
        assert_eq!(s3.to_string().parse::<GroupSpec>().unwrap(), s3);
        let q: GroupSpec = "catalogue:8:4".parse().unwrap();
        assert_eq!(q.build().unwrap().name(), "Q8");
    }

    #[test]
    fn bad_specs() {
        for s in ["cyclic", "cyclic:x", "torus:3", "catalogue:8", "abelian:2,,3"] {
            assert!(matches!(s.parse::<GroupSpec>(), Err(GroupError::BadSpec { .. })), "{s}");
        }
        assert!("catalogue:8:9".parse::<GroupSpec>().unwrap().build().is_err());
        assert!("catalogue:20:0".parse::<GroupSpec>().unwrap().build().is_err());
    }

    #[test]
    fn file_round_trip() {
        let g = dicyclic(3).unwrap();
        let text = write_group_file(&g);
        let back = parse_group_file(&text).unwrap();
        assert_eq!(back.table_rows(), g.table_rows());
        assert!(parse_group_file("2\n0 1\n").is_err());
        assert!(parse_group_file("2\n0 1\n1 1\n").is_err());
    }
}
