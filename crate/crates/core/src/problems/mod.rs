//! The concrete discrimination problems built on the general machinery.

pub mod abelian;
pub mod conjugation;
pub mod groupmult;

pub use abelian::{bernstein_vazirani_rep, oracle_family, vandam_formula, vandam_rep, OracleFamily, OracleKind};
pub use conjugation::{
    classical_conjugation_baseline, conjugation_multiplicities, conjugation_rep, hidden_conjugation_report,
    ConjugationReport,
};
pub use groupmult::{
    check_dual_balance, dual_balance, group_mult_confusion_term, group_mult_irrep_variant, group_mult_rep,
    group_mult_success, mixed_srm_product_success, product_success, verify_mult_optimality, Construction, DualBalance,
    GroupMultInstance, OptimalityTrials, ProductSuccess,
};
