//! Unitary representations as explicit matrices, and their characters.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // f64 methods are inherent whenever std is linked
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::linalg::{CMatrix, ZERO};

/// Unitarity and homomorphism tolerance for input representations.
pub const TAU_UNITARY: f64 = 1e-9;
pub const TAU_HOM: f64 = 1e-9;
/// Character comparisons (isotype identity, integrality).
pub const TAU_CHAR: f64 = 1e-6;

/// Reps of groups up to this order get an exhaustive homomorphism check.
const EXHAUSTIVE_HOM_ORDER: usize = 60;
const SAMPLED_HOM_PAIRS: usize = 400;

/// Where a representation came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepTag {
    Regular,
    Permutation,
    Conjugation,
    OracleFamily(String),
    File,
    Restriction,
    Tensor,
    Custom(String),
}

/// Matrix storage. Permutation representations keep only the permutations,
/// which makes regular and conjugation representations of large groups cheap.
#[derive(Clone, Debug)]
pub enum RepMatrices {
    /// `perms[g][x]` is the image of basis vector `x` under `Θ(g)`.
    Permutation(Vec<Vec<usize>>),
    Dense(Vec<CMatrix>),
}

#[derive(Clone, Debug)]
pub struct UnitaryRep {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: RepMatrices,
    tag: RepTag,
}

impl UnitaryRep {
    /// Validates and wraps dense matrices indexed by group element.
    pub fn from_matrices(group: Arc<FiniteGroup>, matrices: Vec<CMatrix>, tag: RepTag) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::NotARepresentation(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices.first().map_or(0, CMatrix::rows);
        if dim == 0 {
            return Err(Error::NotARepresentation("dimension must be positive".into()));
        }
        if let Some(g) = matrices.iter().position(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::NotARepresentation(format!("matrix for element {g} is not {dim}x{dim}")));
        }
        let rep = UnitaryRep { group, dim, matrices: RepMatrices::Dense(matrices), tag };
        rep.validate()?;
        Ok(rep)
    }

    /// Validates and wraps permutation matrices.
    pub fn from_permutations(group: Arc<FiniteGroup>, perms: Vec<Vec<usize>>, tag: RepTag) -> Result<Self> {
        let dim = perms.first().map_or(0, Vec::len);
        if perms.len() != group.order() || dim == 0 {
            return Err(Error::NotARepresentation("permutation list does not match group".into()));
        }
        for (g, p) in perms.iter().enumerate() {
            let mut hit = vec![false; dim];
            if p.len() != dim || p.iter().any(|&x| x >= dim || core::mem::replace(&mut hit[x], true)) {
                return Err(Error::NotARepresentation(format!("entry {g} is not a permutation of 0..{dim}")));
            }
        }
        let rep = UnitaryRep { group, dim, matrices: RepMatrices::Permutation(perms), tag };
        rep.validate()?;
        Ok(rep)
    }

    pub(crate) fn from_parts_unchecked(
        group: Arc<FiniteGroup>,
        dim: usize,
        matrices: RepMatrices,
        tag: RepTag,
    ) -> Self {
        UnitaryRep { group, dim, matrices, tag }
    }

    fn validate(&self) -> Result<()> {
        let n = self.group.order();
        let e = self.group.identity();
        if self.matrix(e).max_abs_diff(&CMatrix::identity(self.dim)) > TAU_HOM {
            return Err(Error::NotARepresentation("identity element does not act as I".into()));
        }
        if let RepMatrices::Dense(ms) = &self.matrices {
            for (g, m) in ms.iter().enumerate() {
                let defect = m.isometry_defect();
                if defect > TAU_UNITARY {
                    return Err(Error::NotARepresentation(format!("matrix {g} not unitary (defect {defect:e})")));
                }
            }
        }
        let check = |a: usize, b: usize| -> Result<()> {
            let ab = self.group.mul(a, b);
            let err = match &self.matrices {
                RepMatrices::Permutation(p) => {
                    if (0..self.dim).all(|x| p[a][p[b][x]] == p[ab][x]) {
                        0.0
                    } else {
                        1.0
                    }
                }
                RepMatrices::Dense(m) => m[a].matmul(&m[b]).max_abs_diff(&m[ab]),
            };
            if err > TAU_HOM {
                return Err(Error::NotARepresentation(format!("Θ({a})Θ({b}) != Θ({ab}) (error {err:e})")));
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_HOM_ORDER {
            for a in 0..n {
                for b in 0..n {
                    check(a, b)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64 ^ 0x5eed);
            for _ in 0..SAMPLED_HOM_PAIRS {
                check(rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> &RepTag {
        &self.tag
    }

    pub fn with_tag(mut self, tag: RepTag) -> Self {
        self.tag = tag;
        self
    }

    pub fn storage(&self) -> &RepMatrices {
        &self.matrices
    }

    pub fn is_permutation(&self) -> bool {
        matches!(self.matrices, RepMatrices::Permutation(_))
    }

    /// Dense `Θ(g)`.
    pub fn matrix(&self, g: usize) -> CMatrix {
        match &self.matrices {
            RepMatrices::Dense(m) => m[g].clone(),
            RepMatrices::Permutation(p) => {
                let mut m = CMatrix::zeros(self.dim, self.dim);
                for (x, &y) in p[g].iter().enumerate() {
                    m[(y, x)] = Complex64::new(1.0, 0.0);
                }
                m
            }
        }
    }

    /// `Θ(g)·v`.
    pub fn apply(&self, g: usize, v: &[Complex64]) -> Vec<Complex64> {
        match &self.matrices {
            RepMatrices::Dense(m) => m[g].matvec(v),
            RepMatrices::Permutation(p) => {
                let mut out = vec![ZERO; self.dim];
                for (x, &y) in p[g].iter().enumerate() {
                    out[y] = v[x];
                }
                out
            }
        }
    }

    /// `Θ(g)·A` for a `dim × k` matrix `A`.
    pub fn apply_left(&self, g: usize, a: &CMatrix) -> CMatrix {
        match &self.matrices {
            RepMatrices::Dense(m) => m[g].matmul(a),
            RepMatrices::Permutation(p) => {
                let mut out = CMatrix::zeros(a.rows(), a.cols());
                for (x, &y) in p[g].iter().enumerate() {
                    for j in 0..a.cols() {
                        out[(y, j)] = a[(x, j)];
                    }
                }
                out
            }
        }
    }

    /// `Θ(g)·H·Θ(g)†`.
    pub fn conjugate_by(&self, g: usize, h: &CMatrix) -> CMatrix {
        match &self.matrices {
            RepMatrices::Dense(m) => m[g].matmul(h).matmul(&m[g].adjoint()),
            RepMatrices::Permutation(p) => {
                let p = &p[g];
                let mut out = CMatrix::zeros(self.dim, self.dim);
                for x in 0..self.dim {
                    for y in 0..self.dim {
                        out[(p[x], p[y])] = h[(x, y)];
                    }
                }
                out
            }
        }
    }

    /// `(1/|G|) Σ_g Θ(g)·H·Θ(g)†`, which commutes with every `Θ(g)`.
    pub fn group_average(&self, h: &CMatrix) -> CMatrix {
        let n = self.group.order();
        let mut acc = CMatrix::zeros(self.dim, self.dim);
        match &self.matrices {
            RepMatrices::Permutation(perms) => {
                for p in perms {
                    for x in 0..self.dim {
                        for y in 0..self.dim {
                            acc[(p[x], p[y])] += h[(x, y)];
                        }
                    }
                }
            }
            RepMatrices::Dense(_) => {
                for g in 0..n {
                    acc = &acc + &self.conjugate_by(g, h);
                }
            }
        }
        acc.scale_real(1.0 / n as f64)
    }

    pub fn trace(&self, g: usize) -> Complex64 {
        match &self.matrices {
            RepMatrices::Dense(m) => m[g].trace(),
            RepMatrices::Permutation(p) => {
                let fixed = p[g].iter().enumerate().filter(|(x, y)| x == *y).count();
                Complex64::new(fixed as f64, 0.0)
            }
        }
    }

    /// Representation on the span of the orthonormal columns of `basis`,
    /// assumed invariant: `g ↦ basis† Θ(g) basis`.
    pub fn restrict_to(&self, basis: &CMatrix) -> Result<SubRep> {
        assert_eq!(basis.rows(), self.dim, "basis rows must equal the representation dimension");
        if basis.cols() == 0 {
            return Err(Error::NotARepresentation("empty subspace".into()));
        }
        let matrices: Vec<CMatrix> =
            (0..self.group.order()).map(|g| basis.adjoint_matmul(&self.apply_left(g, basis))).collect();
        let rep = UnitaryRep::from_matrices(self.group.clone(), matrices, RepTag::Restriction)?;
        Ok(SubRep { rep, embedding: basis.clone() })
    }
}

/// A subrepresentation expressed in an orthonormal basis of its subspace;
/// `embedding` (parent dim × sub dim) maps sub-coordinates into the parent space.
#[derive(Clone, Debug)]
pub struct SubRep {
    pub rep: UnitaryRep,
    pub embedding: CMatrix,
}

impl SubRep {
    pub fn lift(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.embedding.matvec(v)
    }
}

/// Left-multiplication action of `G` on `C^G`: `Θ(g)|h⟩ = |gh⟩`.
pub fn regular_representation(g: &Arc<FiniteGroup>) -> Result<UnitaryRep> {
    regular_representation_with(g, &Limits::default())
}

pub fn regular_representation_with(g: &Arc<FiniteGroup>, limits: &Limits) -> Result<UnitaryRep> {
    limits.check_dim(g.order())?;
    let perms = (0..g.order()).map(|a| g.table_row(a).to_vec()).collect();
    Ok(UnitaryRep::from_parts_unchecked(g.clone(), g.order(), RepMatrices::Permutation(perms), RepTag::Regular))
}

/// Permutation representation of a group action on `npoints` points.
pub fn permutation_representation(
    g: &Arc<FiniteGroup>,
    npoints: usize,
    action: impl Fn(usize, usize) -> usize,
) -> Result<UnitaryRep> {
    if npoints == 0 {
        return Err(Error::NotAnAction("no points".into()));
    }
    Limits::default().check_dim(npoints)?;
    let perms: Vec<Vec<usize>> = (0..g.order()).map(|a| (0..npoints).map(|x| action(a, x)).collect()).collect();
    for (a, p) in perms.iter().enumerate() {
        if let Some(x) = p.iter().position(|&y| y >= npoints) {
            return Err(Error::NotAnAction(format!("element {a} sends point {x} out of range")));
        }
    }
    match UnitaryRep::from_permutations(g.clone(), perms, RepTag::Permutation) {
        Ok(rep) => Ok(rep),
        Err(Error::NotARepresentation(msg)) => Err(Error::NotAnAction(msg)),
        Err(e) => Err(e),
    }
}

/// `Θ ⊗ I_r` on `V ⊗ C^r`; basis index `v·r + z`.
pub fn tensor_with_trivial(rep: &UnitaryRep, r: usize) -> Result<UnitaryRep> {
    tensor_with_trivial_with(rep, r, &Limits::default())
}

pub fn tensor_with_trivial_with(rep: &UnitaryRep, r: usize, limits: &Limits) -> Result<UnitaryRep> {
    if r < 1 {
        return Err(Error::InvalidParameter("ancilla dimension must be >= 1".into()));
    }
    let dim = rep.dim() * r;
    limits.check_dim(dim)?;
    let matrices = match rep.storage() {
        RepMatrices::Permutation(perms) => {
            RepMatrices::Permutation(perms.iter().map(|p| (0..dim).map(|x| p[x / r] * r + x % r).collect()).collect())
        }
        RepMatrices::Dense(ms) => {
            let id = CMatrix::identity(r);
            RepMatrices::Dense(ms.iter().map(|m| m.kron(&id)).collect())
        }
    };
    Ok(UnitaryRep::from_parts_unchecked(rep.group().clone(), dim, matrices, RepTag::Tensor))
}

/// A class function: one value per conjugacy class of the group.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub values: Vec<Complex64>,
}

impl Character {
    /// `χ(e)`, rounded.
    pub fn dim(&self) -> usize {
        self.values[0].re.round() as usize
    }

    /// Value at an arbitrary element.
    pub fn at(&self, group: &FiniteGroup, g: usize) -> Complex64 {
        self.values[group.classes().class_of[g]]
    }

    /// `⟨χ, ψ⟩ = (1/|G|) Σ_g conj(χ(g)) ψ(g)`.
    pub fn inner(&self, other: &Character, group: &FiniteGroup) -> Complex64 {
        let classes = group.classes();
        let total: Complex64 = classes
            .classes
            .iter()
            .enumerate()
            .map(|(c, members)| self.values[c].conj() * other.values[c] * members.len() as f64)
            .sum();
        total / group.order() as f64
    }

    pub fn norm_sqr(&self, group: &FiniteGroup) -> f64 {
        self.inner(self, group).re
    }

    pub fn conj(&self) -> Character {
        Character { values: self.values.iter().map(|v| v.conj()).collect() }
    }

    /// Maximum absolute difference of class values.
    pub fn distance(&self, other: &Character) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im.abs() <= TAU_CHAR)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() <= TAU_CHAR)
    }
}

/// Character of a representation: traces at every element, checked constant on classes.
pub fn character_of(rep: &UnitaryRep) -> Result<Character> {
    let group = rep.group();
    let classes = group.classes();
    let mut values = Vec::with_capacity(classes.len());
    for (c, members) in classes.classes.iter().enumerate() {
        let v = rep.trace(members[0]);
        if members.iter().any(|&g| (rep.trace(g) - v).norm() > TAU_CHAR) {
            return Err(Error::NotClassConstant { class: c });
        }
        values.push(v);
    }
    Ok(Character { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_group, dihedral_group, symmetric_group};

    #[test]
    fn regular_rep_of_z2_is_identity_and_swap() {
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let rep = regular_representation(&z2).unwrap();
        assert_eq!(rep.matrix(0), CMatrix::identity(2));
        let swap = rep.matrix(1);
        assert_eq!(swap[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(swap[(0, 0)], ZERO);
    }

    #[test]
    fn regular_character_is_order_at_identity_only() {
        let d5 = Arc::new(dihedral_group(5).unwrap());
        let chi = character_of(&regular_representation(&d5).unwrap()).unwrap();
        assert_eq!(chi.values[0], Complex64::new(10.0, 0.0));
        assert!(chi.values[1..].iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn conjugation_action_character_is_centralizer_sizes() {
        let s3 = Arc::new(symmetric_group(3).unwrap());
        let g = s3.clone();
        let rep = permutation_representation(&s3, 6, |a, x| g.conjugate(a, x)).unwrap();
        let chi = character_of(&rep).unwrap();
        let mut values: Vec<f64> = chi.values.iter().map(|v| v.re).collect();
        // identity class first: |C(e)| = 6
        assert_eq!(values[0], 6.0);
        values.sort_by(f64::total_cmp);
        assert_eq!(values, vec![2.0, 3.0, 6.0]);
    }

    #[test]
    fn trivial_and_left_actions() {
        let s3 = Arc::new(symmetric_group(3).unwrap());
        let triv = permutation_representation(&s3, 4, |_, x| x).unwrap();
        assert!((0..6).all(|g| triv.matrix(g) == CMatrix::identity(4)));
        let g = s3.clone();
        let left = permutation_representation(&s3, 6, |a, x| g.mul(a, x)).unwrap();
        let reg = regular_representation(&s3).unwrap();
        assert!((0..6).all(|g| left.matrix(g) == reg.matrix(g)));
    }

    #[test]
    fn non_actions_are_rejected() {
        let z3 = Arc::new(cyclic_group(3).unwrap());
        // x ↦ x + 2a mod 4 is not an action of Z_3.
        let err = permutation_representation(&z3, 4, |a, x| (x + 2 * a) % 4).unwrap_err();
        assert!(matches!(err, Error::NotAnAction(_)));
        let err = permutation_representation(&z3, 2, |_, _| 5).unwrap_err();
        assert!(matches!(err, Error::NotAnAction(_)));
    }

    #[test]
    fn dense_validation_catches_non_unitary_and_non_homomorphic() {
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let two = CMatrix::identity(1).scale_real(2.0);
        let err = UnitaryRep::from_matrices(z2.clone(), vec![CMatrix::identity(1), two], RepTag::File).unwrap_err();
        assert!(matches!(err, Error::NotARepresentation(_)));
        let i = CMatrix::identity(1).scale(Complex64::new(0.0, 1.0));
        let err = UnitaryRep::from_matrices(z2.clone(), vec![CMatrix::identity(1), i], RepTag::File).unwrap_err();
        assert!(matches!(err, Error::NotARepresentation(_)));
        let sign = CMatrix::identity(1).scale_real(-1.0);
        assert!(UnitaryRep::from_matrices(z2, vec![CMatrix::identity(1), sign], RepTag::File).is_ok());
    }

    #[test]
    fn tensor_with_trivial_multiplies_character() {
        let d3 = Arc::new(dihedral_group(3).unwrap());
        let reg = regular_representation(&d3).unwrap();
        let t = tensor_with_trivial(&reg, 3).unwrap();
        assert_eq!(t.dim(), 18);
        let chi = character_of(&t).unwrap();
        assert_eq!(chi.values[0].re, 18.0);
        let dense = reg.restrict_to(&CMatrix::identity(6)).unwrap().rep;
        let td = tensor_with_trivial(&dense, 2).unwrap();
        for g in 0..6 {
            assert!(td.matrix(g).max_abs_diff(&tensor_with_trivial(&reg, 2).unwrap().matrix(g)) < 1e-15);
        }
        assert!(tensor_with_trivial(&reg, 0).is_err());
    }
}
