//! Complete character tables, read off the regular representation.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::decompose::decompose;
use crate::error::Result;
use crate::group::{ConjugacyClassPartition, FiniteGroup};
use crate::rep::{regular_representation, Character};

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group: Arc<FiniteGroup>,
    pub classes: ConjugacyClassPartition,
    /// Irreducible characters, sorted by dimension then rounded values.
    pub rows: Vec<Character>,
    pub class_sizes: Vec<usize>,
}

/// Every irreducible occurs in the regular representation, so its isotypes
/// give the full table.
pub fn character_table(group: &Arc<FiniteGroup>, seed: u64) -> Result<CharacterTable> {
    let decomp = decompose(&regular_representation(group)?, seed)?;
    let classes = group.classes().clone();
    let class_sizes = classes.sizes();
    let rows = decomp.isotypes.into_iter().map(|t| t.character).collect();
    Ok(CharacterTable { group: group.clone(), classes, rows, class_sizes })
}

impl CharacterTable {
    pub fn dims(&self) -> Vec<usize> {
        self.rows.iter().map(Character::dim).collect()
    }

    /// Largest deviation of `(1/|G|) Σ_c |c| χ_i(c) conj(χ_j(c))` from `δ_ij`.
    pub fn row_orthogonality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                let v = b.inner(a, &self.group);
                worst = worst.max((v - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    /// Largest deviation of `Σ_χ χ(c) conj(χ(c'))` from `δ_cc' · |C_G(c)|`.
    pub fn column_orthogonality_residual(&self) -> f64 {
        let n = self.group.order();
        let k = self.class_sizes.len();
        let mut worst = 0.0f64;
        for c in 0..k {
            for c2 in 0..k {
                let v: Complex64 = self.rows.iter().map(|chi| chi.values[c] * chi.values[c2].conj()).sum();
                let target = if c == c2 { (n / self.class_sizes[c]) as f64 } else { 0.0 };
                worst = worst.max((v - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    /// Sum of a row over class representatives.
    pub fn row_sum(&self, row: usize) -> Complex64 {
        self.rows[row].values.iter().sum()
    }
}
