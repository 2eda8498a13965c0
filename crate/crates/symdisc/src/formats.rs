//! JSON file formats.
//!
//! Cayley table: `{"order": n, "table": [[...]], "labels": [...]?}`, row `g`
//! column `h` holding the index of `gh`.
//!
//! Representation: `{"group": <spec>, "dim": d, "matrices": [...]}` with one
//! `d × d` matrix per group element, rows of `[re, im]` pairs.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use symdisc_core::group::group_from_cayley_with;
use symdisc_core::{CMatrix, Complex64, FiniteGroup, Limits, RepTag, UnitaryRep};

use crate::error::CliError;
use crate::spec::GroupSpec;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CayleyFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl CayleyFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        CayleyFile {
            order: g.order(),
            table: (0..g.order()).map(|a| g.table_row(a).to_vec()).collect(),
            labels: g.labels().map(<[String]>::to_vec),
        }
    }

    pub fn into_group(self, limits: &Limits) -> Result<FiniteGroup, CliError> {
        if self.order != self.table.len() {
            return Err(CliError::Input(format!(
                "order is {} but the table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.order {
                return Err(CliError::Input(format!("{} labels for a group of order {}", labels.len(), self.order)));
            }
        }
        Ok(group_from_cayley_with(&self.table, self.labels, limits)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub group: String,
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
}

impl RepFile {
    pub fn from_rep(rep: &UnitaryRep, group_spec: &str) -> Self {
        let matrices = (0..rep.group().order())
            .map(|g| {
                let m = rep.matrix(g);
                (0..m.rows()).map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect()).collect()
            })
            .collect();
        RepFile { group: group_spec.to_string(), dim: rep.dim(), matrices }
    }

    pub fn into_rep(self, limits: &Limits) -> Result<UnitaryRep, CliError> {
        let spec: GroupSpec = self.group.parse()?;
        let group = spec.build(limits)?;
        self.into_rep_over(group)
    }

    pub fn into_rep_over(self, group: Arc<FiniteGroup>) -> Result<UnitaryRep, CliError> {
        let d = self.dim;
        if d == 0 {
            return Err(CliError::Input("representation dimension must be positive".into()));
        }
        if self.matrices.len() != group.order() {
            return Err(CliError::Input(format!(
                "{} matrices for a group of order {}",
                self.matrices.len(),
                group.order()
            )));
        }
        let mut out = Vec::with_capacity(self.matrices.len());
        for (g, rows) in self.matrices.into_iter().enumerate() {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(CliError::Input(format!("matrix {g} is not {d} x {d}")));
            }
            let data = rows.into_iter().flatten().map(|[re, im]| Complex64::new(re, im)).collect();
            out.push(CMatrix::from_vec(d, d, data));
        }
        Ok(UnitaryRep::from_matrices(group, out, RepTag::File)?)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_cayley(path: &Path, limits: &Limits) -> Result<FiniteGroup, CliError> {
    parse_json::<CayleyFile>(path, &read(path)?)?.into_group(limits)
}

pub fn read_rep_file(path: &Path) -> Result<RepFile, CliError> {
    parse_json(path, &read(path)?)
}

pub fn load_rep(path: &Path, limits: &Limits) -> Result<UnitaryRep, CliError> {
    read_rep_file(path)?.into_rep(limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use symdisc_core::{regular_representation, symmetric_group};

    #[test]
    fn cayley_round_trip() {
        let g = symmetric_group(3).unwrap();
        let text = serde_json::to_string(&CayleyFile::from_group(&g)).unwrap();
        let back: CayleyFile = serde_json::from_str(&text).unwrap();
        let h = back.into_group(&Limits::default()).unwrap();
        assert_eq!(h.order(), 6);
        assert_eq!(h.label(1), g.label(1));
        assert_eq!(h.classes().sizes(), vec![1, 3, 2]);
    }

    #[test]
    fn rejects_bad_tables() {
        let bad = CayleyFile { order: 2, table: vec![vec![0, 1], vec![1, 1]], labels: None };
        assert!(bad.into_group(&Limits::default()).is_err());
        let short = CayleyFile { order: 3, table: vec![vec![0, 1], vec![1, 0]], labels: None };
        assert!(matches!(short.into_group(&Limits::default()), Err(CliError::Input(_))));
    }

    #[test]
    fn rep_round_trip() {
        let g = Arc::new(symmetric_group(3).unwrap());
        let rep = regular_representation(&g).unwrap();
        let file = RepFile::from_rep(&rep, "symmetric:3");
        let back = file.into_rep(&Limits::default()).unwrap();
        assert_eq!(back.dim(), 6);
        for x in 0..6 {
            assert!(back.matrix(x).max_abs_diff(&rep.matrix(x)) == 0.0);
        }
    }

    #[test]
    fn rejects_non_homomorphism() {
        let g = Arc::new(symmetric_group(3).unwrap());
        let mut file = RepFile::from_rep(&regular_representation(&g).unwrap(), "symmetric:3");
        file.matrices.swap(1, 2);
        assert!(file.into_rep(&Limits::default()).is_err());
    }
}
