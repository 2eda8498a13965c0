//! Numerical isotypic decomposition.
//!
//! A seeded random Hermitian `H` is averaged over the group,
//! `T = (1/|G|) Σ_g Θ(g) H Θ(g)†`. `T` lies in the commutant of the
//! representation; on an isotype `W_k ⊗ C^{m_k}` it acts as `I ⊗ A` for a
//! generic Hermitian `A`, so its eigenspaces are single irreducible copies.
//! Copies with equal characters are grouped into isotypes and rebased so that
//! every copy induces the same irrep matrices as the first one.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;
#[allow(unused_imports)] // f64 methods are inherent whenever std is linked
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{polar_unitary, CMatrix, HermitianEigen};
use crate::rep::{Character, SubRep, UnitaryRep, TAU_CHAR};

/// Relative eigenvalue gap separating commutant eigenspaces.
pub const TAU_EIG: f64 = 1e-8;
/// Equivariance of section maps.
pub const TAU_EQUIV: f64 = 1e-8;
/// Random redraws allowed before giving up.
pub const RETRY_BUDGET: usize = 8;

/// One isomorphism type of irreducible inside a representation.
#[derive(Clone, Debug)]
pub struct Isotype {
    pub character: Character,
    pub irrep_dim: usize,
    /// Section maps `α_{k,i}`: `dim V × d_k` matrices with orthonormal columns.
    /// The projection `π_{k,i}` is the adjoint.
    pub copies: Vec<CMatrix>,
    /// Model irrep `ρ_k(g) = α_{k,1}† Θ(g) α_{k,1}` for every group element;
    /// all copies induce these same matrices.
    pub irrep_matrices: Vec<CMatrix>,
}

impl Isotype {
    pub fn multiplicity(&self) -> usize {
        self.copies.len()
    }

    /// Number of copies usable by a single cyclic subspace, `min(m_k, d_k)`.
    pub fn usable_copies(&self) -> usize {
        self.multiplicity().min(self.irrep_dim)
    }

    /// Orthonormal basis (all copies concatenated) of the isotypic subspace.
    pub fn subspace_basis(&self) -> CMatrix {
        let refs: Vec<&CMatrix> = self.copies.iter().collect();
        CMatrix::hstack(&refs)
    }

    /// Orthogonal projector onto the isotypic subspace.
    pub fn projector(&self) -> CMatrix {
        let b = self.subspace_basis();
        b.matmul(&b.adjoint())
    }
}

#[derive(Clone, Debug)]
pub struct IsotypicDecomposition {
    pub rep: UnitaryRep,
    pub isotypes: Vec<Isotype>,
    /// Largest `‖Θ(g)α − αρ(g)‖` over all sections and elements.
    pub residual_check: f64,
    /// Largest deviation between a copy's induced irrep matrices and the model's.
    pub alignment_residual: f64,
    pub seed: u64,
}

impl IsotypicDecomposition {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.rep.group()
    }

    pub fn len(&self) -> usize {
        self.isotypes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.isotypes.is_empty()
    }

    pub fn isotype(&self, k: usize) -> Result<&Isotype> {
        self.isotypes.get(k).ok_or(Error::InvalidIndex { index: k, count: self.isotypes.len() })
    }

    /// `(d_k, m_k)` per isotype.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.isotypes.iter().map(|t| (t.irrep_dim, t.multiplicity())).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.isotypes.iter().map(Isotype::multiplicity).collect()
    }

    /// Index of the trivial isotype, if present.
    pub fn trivial_index(&self) -> Option<usize> {
        self.isotypes.iter().position(|t| t.character.is_trivial())
    }

    /// Index of the isotype with character `χ`, if present.
    pub fn find(&self, chi: &Character) -> Option<usize> {
        self.isotypes.iter().position(|t| t.character.distance(chi) <= TAU_CHAR)
    }

    /// Whether every irreducible of the group occurs (isotype count equals class count).
    pub fn contains_every_irrep(&self) -> bool {
        self.isotypes.len() == self.group().classes().len()
    }

    /// Largest entrywise deviation of `Σ_k Σ_i α_{k,i} ρ_k(g) α_{k,i}†` from `Θ(g)`.
    pub fn reassembly_residual(&self) -> f64 {
        let n = self.group().order();
        let dim = self.rep.dim();
        (0..n)
            .map(|g| {
                let mut acc = CMatrix::zeros(dim, dim);
                for t in &self.isotypes {
                    for a in &t.copies {
                        acc = &acc + &a.matmul(&t.irrep_matrices[g]).matmul(&a.adjoint());
                    }
                }
                acc.max_abs_diff(&self.rep.matrix(g))
            })
            .fold(0.0, f64::max)
    }

    /// Largest deviation of the concatenated sections from an isometry
    /// (orthonormal columns within and across copies).
    pub fn orthonormality_defect(&self) -> f64 {
        let all: Vec<&CMatrix> = self.isotypes.iter().flat_map(|t| t.copies.iter()).collect();
        CMatrix::hstack(&all).isometry_defect()
    }
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let a = CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    a.hermitian_part()
}

fn random_square(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Character of the subrepresentation on the span of `section`, from class representatives.
fn section_character(rep: &UnitaryRep, section: &CMatrix) -> Character {
    let reps = &rep.group().classes().representatives;
    let values = reps.iter().map(|&g| section.adjoint_matmul(&rep.apply_left(g, section)).trace()).collect();
    Character { values }
}

fn rounded_key(chi: &Character) -> Vec<(i64, i64)> {
    chi.values.iter().map(|v| ((v.re / TAU_CHAR).round() as i64, (v.im / TAU_CHAR).round() as i64)).collect()
}

/// Canonical isotype order: dimension ascending, then values rounded to `TAU_CHAR`.
pub(crate) fn character_order(a: &Character, b: &Character) -> Ordering {
    a.dim().cmp(&b.dim()).then_with(|| rounded_key(a).cmp(&rounded_key(b)))
}

/// Decomposes `rep` into isotypes. Deterministic for a fixed seed.
pub fn decompose(rep: &UnitaryRep, seed: u64) -> Result<IsotypicDecomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_reason = alloc::string::String::new();
    for _ in 0..RETRY_BUDGET {
        match try_decompose(rep, &mut rng) {
            Ok((isotypes, residual_check, alignment_residual)) => {
                return Ok(IsotypicDecomposition {
                    rep: rep.clone(),
                    isotypes,
                    residual_check,
                    alignment_residual,
                    seed,
                })
            }
            Err(reason) => last_reason = reason,
        }
    }
    Err(Error::DecompositionFailed { attempts: RETRY_BUDGET, reason: last_reason })
}

type Attempt = core::result::Result<(Vec<Isotype>, f64, f64), alloc::string::String>;

fn try_decompose(rep: &UnitaryRep, rng: &mut ChaCha8Rng) -> Attempt {
    let group = rep.group().clone();
    let n = group.order();
    let dim = rep.dim();

    let h = random_hermitian(rng, dim);
    let t = rep.group_average(&h);
    let eig = HermitianEigen::new(&t);

    // Each eigenvalue cluster should carry one irreducible copy.
    let mut components: Vec<(Character, CMatrix)> = Vec::new();
    for range in eig.clusters(TAU_EIG) {
        let section = eig.vectors.columns(range.start, range.len());
        let chi = section_character(rep, &section);
        let norm = chi.norm_sqr(&group);
        if (norm - 1.0).abs() > TAU_CHAR {
            return Err(format!("eigenspace of dimension {} has ⟨χ,χ⟩ = {norm:.6}", range.len()));
        }
        if chi.dim() != range.len() {
            return Err(format!("eigenspace dimension {} disagrees with χ(e)", range.len()));
        }
        components.push((chi, section));
    }

    // Group copies by character, preserving eigenvalue order within a type.
    let mut groups: Vec<(Character, Vec<CMatrix>)> = Vec::new();
    for (chi, section) in components {
        match groups.iter_mut().find(|(c, _)| c.distance(&chi) <= TAU_CHAR) {
            Some((_, copies)) => copies.push(section),
            None => groups.push((chi, alloc::vec![section])),
        }
    }
    groups.sort_by(|a, b| character_order(&a.0, &b.0));
    for w in groups.windows(2) {
        if character_order(&w[0].0, &w[1].0) == Ordering::Equal {
            return Err("two isotypes share a rounded character".into());
        }
    }

    let mut isotypes = Vec::with_capacity(groups.len());
    let mut residual = 0.0f64;
    let mut alignment = 0.0f64;
    for (chi, copies) in groups {
        let (iso, res, align) = align_copies(rep, chi, copies, rng)?;
        residual = residual.max(res);
        alignment = alignment.max(align);
        isotypes.push(iso);
    }
    if residual > TAU_EQUIV || alignment > TAU_EQUIV {
        return Err(format!("equivariance residual {residual:e}, alignment residual {alignment:e}"));
    }
    let total: usize = isotypes.iter().map(|t| t.irrep_dim * t.multiplicity()).sum();
    if total != dim {
        return Err(format!("isotypes cover {total} of {dim} dimensions"));
    }
    debug_assert!(n > 0);
    Ok((isotypes, residual, alignment))
}

/// Induced matrices `α†Θ(g)α` for all `g`, and the largest equivariance residual.
fn induced_matrices(rep: &UnitaryRep, section: &CMatrix) -> (Vec<CMatrix>, f64) {
    let mut residual = 0.0f64;
    let mats = (0..rep.group().order())
        .map(|g| {
            let image = rep.apply_left(g, section);
            let rho = section.adjoint_matmul(&image);
            residual = residual.max(image.max_abs_diff(&section.matmul(&rho)));
            rho
        })
        .collect();
    (mats, residual)
}

/// Rebases copies `2..m` so they induce the same irrep matrices as copy 1,
/// using the Schur-averaged intertwiner `S = (d/|G|) Σ_g ρ_1(g) X ρ_i(g)†`.
fn align_copies(
    rep: &UnitaryRep,
    character: Character,
    mut copies: Vec<CMatrix>,
    rng: &mut ChaCha8Rng,
) -> core::result::Result<(Isotype, f64, f64), alloc::string::String> {
    let n = rep.group().order();
    let d = copies[0].cols();
    let (model, mut residual) = induced_matrices(rep, &copies[0]);
    let mut alignment = 0.0f64;
    for copy in copies.iter_mut().skip(1) {
        let (rho_i, res) = induced_matrices(rep, copy);
        residual = residual.max(res);
        let x = random_square(rng, d);
        let mut s = CMatrix::zeros(d, d);
        for g in 0..n {
            s = &s + &model[g].matmul(&x).matmul(&rho_i[g].adjoint());
        }
        let s = s.scale_real(d as f64 / n as f64);
        let u = polar_unitary(&s).ok_or_else(|| alloc::string::String::from("degenerate intertwiner"))?;
        *copy = copy.matmul(&u.adjoint());
        for g in 0..n {
            let aligned = u.matmul(&rho_i[g]).matmul(&u.adjoint());
            alignment = alignment.max(aligned.max_abs_diff(&model[g]));
        }
    }
    for copy in copies.iter_mut() {
        canonicalize_phase(copy);
    }
    let iso = Isotype { irrep_dim: d, character, copies, irrep_matrices: model };
    Ok((iso, residual, alignment))
}

/// Multiplies a section by the scalar phase making the first non-negligible
/// entry of its first column real and positive. Induced matrices are unchanged.
fn canonicalize_phase(section: &mut CMatrix) {
    let first = section.column(0).into_iter().find(|x| x.norm() > 1e-6);
    if let Some(x) = first {
        *section = section.scale(x.conj() / x.norm());
    }
}

/// Representation on the orthogonal complement of isotype `k`, in the
/// orthonormal basis formed by the sections of all other isotypes.
pub fn restrict_to_complement_of_isotype(decomp: &IsotypicDecomposition, k: usize) -> Result<SubRep> {
    decomp.isotype(k)?;
    let rest: Vec<&CMatrix> =
        decomp.isotypes.iter().enumerate().filter(|(j, _)| *j != k).flat_map(|(_, t)| t.copies.iter()).collect();
    if rest.is_empty() {
        return Err(Error::NotARepresentation("complement of the only isotype is zero".into()));
    }
    decomp.rep.restrict_to(&CMatrix::hstack(&rest))
}

/// Index of the isotype whose character is the complex conjugate of isotype `k`'s.
pub fn dual_isotype_index(decomp: &IsotypicDecomposition, k: usize) -> Result<usize> {
    let chi = decomp.isotype(k)?.character.conj();
    decomp.find(&chi).ok_or(Error::DualNotPresent(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_group, dihedral_group, symmetric_group};
    use crate::rep::{character_of, regular_representation, tensor_with_trivial, RepTag};
    use alloc::vec;

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    #[test]
    fn s3_regular_shape() {
        let d = decompose(&regular_representation(&arc(symmetric_group(3).unwrap())).unwrap(), 0).unwrap();
        assert_eq!(d.shape(), vec![(1, 1), (1, 1), (2, 2)]);
        assert!(d.reassembly_residual() < 1e-8);
        assert!(d.orthonormality_defect() < 1e-10);
        assert!(d.alignment_residual < 1e-8);
    }

    #[test]
    fn z3_regular_gives_cube_roots_of_unity() {
        let d = decompose(&regular_representation(&arc(cyclic_group(3).unwrap())).unwrap(), 4).unwrap();
        assert_eq!(d.shape(), vec![(1, 1); 3]);
        let w = Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI / 3.0);
        let mut on_generator: Vec<Complex64> = d.isotypes.iter().map(|t| t.character.values[1]).collect();
        for target in [Complex64::new(1.0, 0.0), w, w * w] {
            let pos = on_generator.iter().position(|v| (v - target).norm() < 1e-9).expect("root present");
            on_generator.remove(pos);
        }
        // ω and ω² are duals of each other.
        let k = d.find(&Character { values: vec![Complex64::new(1.0, 0.0), w, w * w] }).unwrap();
        let j = dual_isotype_index(&d, k).unwrap();
        assert!((d.isotypes[j].character.values[1] - w * w).norm() < 1e-9);
    }

    #[test]
    fn irreducible_input_is_single_isotype() {
        let s3 = arc(symmetric_group(3).unwrap());
        let d = decompose(&regular_representation(&s3).unwrap(), 1).unwrap();
        let two_dim = d.isotypes.iter().find(|t| t.irrep_dim == 2).unwrap();
        let irrep = d.rep.restrict_to(&two_dim.copies[0]).unwrap().rep;
        let di = decompose(&irrep, 2).unwrap();
        assert_eq!(di.shape(), vec![(2, 1)]);
        assert!(dual_isotype_index(&di, 0).unwrap() == 0);
    }

    #[test]
    fn complement_of_trivial_in_z2_regular_is_sign() {
        let d = decompose(&regular_representation(&arc(cyclic_group(2).unwrap())).unwrap(), 0).unwrap();
        let triv = d.trivial_index().unwrap();
        let sub = restrict_to_complement_of_isotype(&d, triv).unwrap();
        assert_eq!(sub.rep.dim(), 1);
        let chi = character_of(&sub.rep).unwrap();
        assert!((chi.values[1] + Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(matches!(restrict_to_complement_of_isotype(&d, 7), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn dual_missing_is_reported() {
        let z3 = arc(cyclic_group(3).unwrap());
        let w = Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI / 3.0);
        let mats = (0..3).map(|g| CMatrix::identity(1).scale(w.powu(g as u32))).collect();
        let rep = UnitaryRep::from_matrices(z3, mats, RepTag::Custom("omega".into())).unwrap();
        let d = decompose(&rep, 0).unwrap();
        assert_eq!(dual_isotype_index(&d, 0), Err(Error::DualNotPresent(0)));
    }

    #[test]
    fn multiplicities_match_character_inner_products() {
        let d5 = arc(dihedral_group(5).unwrap());
        let rep = tensor_with_trivial(&regular_representation(&d5).unwrap(), 2).unwrap();
        let d = decompose(&rep, 3).unwrap();
        let chi_v = character_of(&rep).unwrap();
        for t in &d.isotypes {
            let m = t.character.inner(&chi_v, &d5);
            assert!((m.re - t.multiplicity() as f64).abs() < 1e-6);
            assert_eq!(t.multiplicity(), 2 * t.irrep_dim);
        }
    }

    #[test]
    fn decomposition_is_deterministic_per_seed() {
        let rep = regular_representation(&arc(symmetric_group(3).unwrap())).unwrap();
        let a = decompose(&rep, 11).unwrap();
        let b = decompose(&rep, 11).unwrap();
        for (x, y) in a.isotypes.iter().zip(&b.isotypes) {
            for (cx, cy) in x.copies.iter().zip(&y.copies) {
                assert_eq!(cx, cy);
            }
        }
    }
}
