//! Oracle families over `Z_2^n`: Bernstein-Vazirani and van Dam's
//! low-weight variant.
//!
//! Both act on `C^{2^n} ⊗ C²` with basis index `x + 2^n·b` (bits of `x` little
//! endian). The oracle for `a` maps `|x, b⟩ ↦ |x, b ⊕ (a·x)⟩`; van Dam's
//! variant only flips for `|x| ≤ k`, which is what `k` classical queries
//! can assemble.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;

use crate::decompose::{decompose, IsotypicDecomposition};
use crate::discrimination::{
    confusion_matrix, construct_optimal_input, max_cyclic_dimension, srm_povm, success_probability,
};
use crate::error::{Error, Result};
use crate::group::{elementary_abelian_2_with, FiniteGroup, Limits};
use crate::rep::{RepTag, UnitaryRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    BernsteinVazirani { n: usize },
    VanDam { n: usize, k: usize },
}

impl OracleKind {
    pub fn name(&self) -> String {
        match self {
            OracleKind::BernsteinVazirani { n } => format!("bernstein-vazirani(n={n})"),
            OracleKind::VanDam { n, k } => format!("van-dam(n={n},k={k})"),
        }
    }

    /// Classical queries spent building the oracle that is then queried once.
    pub fn first_stage_queries(&self) -> usize {
        match *self {
            OracleKind::BernsteinVazirani { .. } => 1,
            OracleKind::VanDam { k, .. } => k,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleFamily {
    pub kind: OracleKind,
    pub rep: UnitaryRep,
    pub decomposition: IsotypicDecomposition,
    /// `d_Θ`.
    pub dimension_bound: usize,
    /// `d_Θ / 2^n`.
    pub p_bound: f64,
    /// Simulated success of the constructed optimal strategy.
    pub p_success: f64,
}

/// `|x, b⟩ ↦ |x, b ⊕ (a·x)⟩` for every `a`.
pub fn bernstein_vazirani_rep(n: usize, seed: u64) -> Result<OracleFamily> {
    oracle_family(OracleKind::BernsteinVazirani { n }, seed, &Limits::default())
}

/// As [`bernstein_vazirani_rep`], but the phase kicks only on `|x| ≤ k`.
pub fn vandam_rep(n: usize, k: usize, seed: u64) -> Result<OracleFamily> {
    oracle_family(OracleKind::VanDam { n, k }, seed, &Limits::default())
}

pub fn oracle_family(kind: OracleKind, seed: u64, limits: &Limits) -> Result<OracleFamily> {
    let (n, k) = match kind {
        OracleKind::BernsteinVazirani { n } => (n, n),
        OracleKind::VanDam { n, k } => (n, k),
    };
    if k > n {
        return Err(Error::InvalidParameter(format!("need k <= n, got k = {k}, n = {n}")));
    }
    let group: Arc<FiniteGroup> = Arc::new(elementary_abelian_2_with(n, limits)?);
    let size = 1usize << n;
    let perms = (0..size)
        .map(|a| {
            (0..2 * size)
                .map(|i| {
                    let (x, b) = (i % size, i / size);
                    let kick = if (x.count_ones() as usize) <= k { (a & x).count_ones() as usize & 1 } else { 0 };
                    x + size * (b ^ kick)
                })
                .collect()
        })
        .collect();
    let rep = UnitaryRep::from_permutations(group, perms, RepTag::OracleFamily(kind.name()))?;
    let decomposition = decompose(&rep, seed)?;
    let optimal = construct_optimal_input(&decomposition);
    let povm = srm_povm(&rep, &optimal.state, &decomposition)?;
    let p_success = success_probability(&confusion_matrix(&rep, &povm, &optimal.state));
    let dimension_bound = max_cyclic_dimension(&decomposition);
    Ok(OracleFamily {
        kind,
        rep,
        decomposition,
        dimension_bound,
        p_bound: dimension_bound as f64 / size as f64,
        p_success,
    })
}

/// `Σ_{i ≤ k} C(n, i) / 2^n`.
pub fn vandam_formula(n: usize, k: usize) -> f64 {
    let mut binom = 1u64;
    let mut total = 0u64;
    for i in 0..=k.min(n) {
        total += binom;
        binom = binom * (n - i) as u64 / (i + 1) as u64;
    }
    total as f64 / (1u64 << n) as f64
}
