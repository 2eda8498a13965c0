//! Group specifications: `cyclic:k`, `dihedral:n`, `symmetric:n`,
//! `product:<spec>,<spec>`, `file:<path>`.
//!
//! Products nest (`product:product:cyclic:2,cyclic:2,cyclic:3`). A file path
//! runs to the next comma or the end of the string.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use symdisc_core::group::{cyclic_group_with, dihedral_group_with, direct_product_with, symmetric_group_with};
use symdisc_core::{FiniteGroup, Limits};

use crate::error::CliError;
use crate::formats::load_cayley;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    File(PathBuf),
}

impl GroupSpec {
    pub fn build(&self, limits: &Limits) -> Result<Arc<FiniteGroup>, CliError> {
        Ok(Arc::new(self.build_plain(limits)?))
    }

    fn build_plain(&self, limits: &Limits) -> Result<FiniteGroup, CliError> {
        Ok(match self {
            GroupSpec::Cyclic(k) => cyclic_group_with(*k, limits)?,
            GroupSpec::Dihedral(n) => dihedral_group_with(*n, limits)?,
            GroupSpec::Symmetric(n) => symmetric_group_with(*n, limits)?,
            GroupSpec::Product(a, b) => direct_product_with(&a.build_plain(limits)?, &b.build_plain(limits)?, limits)?,
            GroupSpec::File(path) => load_cayley(path, limits)?,
        })
    }

    /// The odd `n` when this is `dihedral:n` with `n` odd.
    pub fn odd_dihedral(&self) -> Option<usize> {
        match self {
            GroupSpec::Dihedral(n) if n % 2 == 1 => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "cyclic:{k}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Product(a, b) => write!(f, "product:{a},{b}"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let (spec, rest) = parse(s)?;
        if !rest.is_empty() {
            return Err(CliError::Usage(format!("trailing input {rest:?} in group spec {s:?}")));
        }
        Ok(spec)
    }
}

fn parse(s: &str) -> Result<(GroupSpec, &str), CliError> {
    let (kind, rest) = s.split_once(':').ok_or_else(|| CliError::Usage(format!("group spec {s:?} is missing ':'")))?;
    match kind {
        "cyclic" | "dihedral" | "symmetric" => {
            let end = rest.find(',').unwrap_or(rest.len());
            let n: usize = rest[..end].parse().map_err(|_| {
                CliError::Usage(format!("expected a positive integer after {kind:?}, got {:?}", &rest[..end]))
            })?;
            if n == 0 {
                return Err(CliError::Usage(format!("{kind}:0 is not a group")));
            }
            let spec = match kind {
                "cyclic" => GroupSpec::Cyclic(n),
                "dihedral" => GroupSpec::Dihedral(n),
                _ => GroupSpec::Symmetric(n),
            };
            Ok((spec, &rest[end..]))
        }
        "product" => {
            let (left, rest) = parse(rest)?;
            let rest = rest
                .strip_prefix(',')
                .ok_or_else(|| CliError::Usage("product spec needs two factors separated by ','".into()))?;
            let (right, rest) = parse(rest)?;
            Ok((GroupSpec::Product(Box::new(left), Box::new(right)), rest))
        }
        "file" => {
            let end = rest.find(',').unwrap_or(rest.len());
            if end == 0 {
                return Err(CliError::Usage("file spec needs a path".into()));
            }
            Ok((GroupSpec::File(PathBuf::from(&rest[..end])), &rest[end..]))
        }
        other => Err(CliError::Usage(format!("unknown group family {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_displays() {
        for s in [
            "cyclic:12",
            "dihedral:5",
            "symmetric:3",
            "product:cyclic:2,dihedral:3",
            "product:product:cyclic:2,cyclic:2,symmetric:3",
            "file:t.json",
        ] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        assert_eq!(
            "product:file:a.json,cyclic:3".parse::<GroupSpec>().unwrap(),
            GroupSpec::Product(Box::new(GroupSpec::File("a.json".into())), Box::new(GroupSpec::Cyclic(3)))
        );
    }

    #[test]
    fn rejects_malformed() {
        for s in [
            "cyclic:0",
            "cyclic",
            "cyclic:x",
            "torus:3",
            "product:cyclic:2",
            "cyclic:2,cyclic:3",
            "file:",
            "dihedral:-1",
        ] {
            assert!(matches!(s.parse::<GroupSpec>(), Err(CliError::Usage(_))), "{s}");
        }
    }

    #[test]
    fn builds_products() {
        let g = "product:symmetric:3,cyclic:2".parse::<GroupSpec>().unwrap().build(&Limits::default()).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.classes().len(), 6);
    }
}
