//! Dense complex linear algebra used throughout the crate.
//!
//! Matrices are row-major `Complex64` buffers. The only factorization needed is
//! the Hermitian eigendecomposition, implemented with cyclic complex Jacobi
//! rotations; everything else (projectors, square roots, polar factors) is
//! derived from it.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // f64 methods are inherent whenever std is linked
use num_traits::Float;
use num_traits::Zero;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds a matrix from row-major data. Panics if the length does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        CMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Complex64>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[Complex64]) {
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = *x;
        }
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, start: usize, count: usize) -> CMatrix {
        CMatrix::from_fn(self.rows, count, |i, j| self[(i, start + j)])
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `self† · rhs` without materializing the adjoint.
    pub fn adjoint_matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.rows, rhs.rows, "adjoint_matmul shape mismatch");
        let mut out = CMatrix::zeros(self.cols, rhs.cols);
        for k in 0..self.rows {
            let lhs_row = self.row(k);
            let rhs_row = rhs.row(k);
            for (i, a) in lhs_row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let a = a.conj();
                let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows).map(|i| dot_u(self.row(i), v)).collect()
    }

    /// `self† · v`.
    pub fn adjoint_matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.rows, v.len(), "adjoint_matvec shape mismatch");
        let mut out = vec![ZERO; self.cols];
        for (k, x) in v.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(k)) {
                *o += a.conj() * x;
            }
        }
        out
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`; row index is `i·other.rows + k`.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        CMatrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        })
    }

    /// Horizontal concatenation.
    pub fn hstack(blocks: &[&CMatrix]) -> CMatrix {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = CMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, offset + j)] = b[(i, j)];
                }
            }
            offset += b.cols;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation of `self† self` from the identity.
    pub fn isometry_defect(&self) -> f64 {
        self.adjoint_matmul(self).max_abs_diff(&CMatrix::identity(self.cols))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// `(self + self†)/2`.
    pub fn hermitian_part(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

/// Unconjugated dot product `Σ a_i b_i`.
#[inline]
pub fn dot_u(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Inner product `⟨a|b⟩ = Σ conj(a_i) b_i`.
#[inline]
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn scale_vec(v: &[Complex64], s: f64) -> Vec<Complex64> {
    v.iter().map(|x| x * s).collect()
}

/// `v / ‖v‖`; returns `None` for a (numerically) zero vector.
pub fn normalized(v: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = norm(v);
    if n < 1e-300 {
        None
    } else {
        Some(scale_vec(v, 1.0 / n))
    }
}

/// Uniformly random unit vector (normalized complex Gaussian via Box-Muller).
pub fn random_unit_vector<R: rand::Rng>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| {
                let u1: f64 = 1.0 - rng.gen::<f64>();
                let u2: f64 = rng.gen::<f64>();
                Complex64::from_polar((-2.0 * u1.ln()).sqrt(), 2.0 * core::f64::consts::PI * u2)
            })
            .collect();
        if let Some(v) = normalized(&v) {
            return v;
        }
    }
}

/// Rank-one outer product `|a⟩⟨b|`.
pub fn outer(a: &[Complex64], b: &[Complex64]) -> CMatrix {
    CMatrix::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
}

/// Accumulates `|v⟩⟨v|` into `acc`.
pub fn add_projector(acc: &mut CMatrix, v: &[Complex64]) {
    let n = v.len();
    for i in 0..n {
        if v[i].is_zero() {
            continue;
        }
        for j in 0..n {
            acc[(i, j)] += v[i] * v[j].conj();
        }
    }
}

/// Eigendecomposition `A = V diag(λ) V†` of a Hermitian matrix with
/// eigenvalues sorted ascending and eigenvectors stored as columns of `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

const JACOBI_MAX_SWEEPS: usize = 100;

impl HermitianEigen {
    /// Cyclic complex Jacobi. The input is symmetrized first, so tiny
    /// anti-Hermitian roundoff in `a` is ignored.
    pub fn new(a: &CMatrix) -> Self {
        assert!(a.is_square(), "eigendecomposition of a non-square matrix");
        let n = a.rows();
        let mut m = a.hermitian_part();
        let mut v = CMatrix::identity(n);
        let scale = m.frobenius_norm();
        if n <= 1 || scale == 0.0 {
            return Self::sorted(m, v);
        }
        let tol = scale * f64::EPSILON;

        for _ in 0..JACOBI_MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| m[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= tol {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let apq = m[(p, q)];
                    let b = apq.norm();
                    if b <= tol * 1e-3 {
                        continue;
                    }
                    let phase = apq / b; // e^{iφ}
                    let app = m[(p, p)].re;
                    let aqq = m[(q, q)].re;
                    let theta = (aqq - app) / (2.0 * b);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    // U = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on (p, q).
                    let ph_conj = phase.conj();
                    // Columns: M ← M U.
                    for k in 0..n {
                        let mkp = m[(k, p)];
                        let mkq = m[(k, q)];
                        m[(k, p)] = mkp * c - mkq * (ph_conj * s);
                        m[(k, q)] = mkp * s + mkq * (ph_conj * c);
                    }
                    // Rows: M ← U† M.
                    for k in 0..n {
                        let mpk = m[(p, k)];
                        let mqk = m[(q, k)];
                        m[(p, k)] = mpk * c - mqk * (phase * s);
                        m[(q, k)] = mpk * s + mqk * (phase * c);
                    }
                    m[(p, q)] = ZERO;
                    m[(q, p)] = ZERO;
                    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c - vkq * (ph_conj * s);
                        v[(k, q)] = vkp * s + vkq * (ph_conj * c);
                    }
                }
            }
        }
        Self::sorted(m, v)
    }

    fn sorted(m: CMatrix, v: CMatrix) -> Self {
        let n = m.rows();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
        let values = order.iter().map(|&i| m[(i, i)].re).collect();
        let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
        HermitianEigen { values, vectors }
    }

    pub fn max_abs_value(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Groups consecutive (sorted) eigenvalues whose gap is at most
    /// `rel_gap · max|λ|`. Returns half-open index ranges.
    pub fn clusters(&self, rel_gap: f64) -> Vec<core::ops::Range<usize>> {
        let scale = self.max_abs_value().max(f64::MIN_POSITIVE);
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.values.len() {
            if i == self.values.len() || self.values[i] - self.values[i - 1] > rel_gap * scale {
                out.push(start..i);
                start = i;
            }
        }
        out
    }

    /// Indices of eigenvalues above `rel_tol · max|λ|`.
    pub fn support(&self, rel_tol: f64) -> Vec<usize> {
        let cut = rel_tol * self.max_abs_value();
        (0..self.values.len()).filter(|&i| self.values[i] > cut).collect()
    }

    /// `Σ f(λ_i) v_i v_i†` over the selected indices.
    pub fn spectral_sum(&self, indices: &[usize], f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.vectors.rows();
        let mut out = CMatrix::zeros(n, n);
        for &idx in indices {
            let w = f(self.values[idx]);
            let col = self.vectors.column(idx);
            for i in 0..n {
                let a = col[i] * w;
                for j in 0..n {
                    out[(i, j)] += a * col[j].conj();
                }
            }
        }
        out
    }
}

/// Unitary factor of the polar decomposition `S = U P` of a square matrix with
/// trivial kernel. `None` if `S` is numerically singular.
pub fn polar_unitary(s: &CMatrix) -> Option<CMatrix> {
    let gram = s.adjoint_matmul(s);
    let eig = HermitianEigen::new(&gram);
    let max = eig.max_abs_value();
    if max == 0.0 || eig.values.iter().any(|&x| x <= 1e-12 * max) {
        return None;
    }
    let all: Vec<usize> = (0..eig.values.len()).collect();
    let inv_sqrt = eig.spectral_sum(&all, |x| 1.0 / x.sqrt());
    Some(s.matmul(&inv_sqrt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, seed: u64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        a.hermitian_part()
    }

    #[test]
    fn jacobi_reconstructs_random_hermitian() {
        for (n, seed) in [(1, 0), (2, 1), (7, 2), (30, 3)] {
            let a = random_hermitian(n, seed);
            let eig = HermitianEigen::new(&a);
            assert!(eig.vectors.isometry_defect() < 1e-12);
            let all: Vec<usize> = (0..n).collect();
            let back = eig.spectral_sum(&all, |x| x);
            assert!(back.max_abs_diff(&a) < 1e-12, "n={n}");
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn jacobi_handles_degenerate_spectrum() {
        // Diagonal 2,2,5 conjugated by a unitary built from a Hermitian eigenbasis.
        let u = HermitianEigen::new(&random_hermitian(3, 9)).vectors;
        let d = CMatrix::from_fn(3, 3, |i, j| if i == j { Complex64::new([2.0, 2.0, 5.0][i], 0.0) } else { ZERO });
        let a = u.matmul(&d).matmul(&u.adjoint());
        let eig = HermitianEigen::new(&a);
        assert!((eig.values[0] - 2.0).abs() < 1e-12);
        assert!((eig.values[1] - 2.0).abs() < 1e-12);
        assert!((eig.values[2] - 5.0).abs() < 1e-12);
        assert_eq!(eig.clusters(1e-8), vec![0..2, 2..3]);
    }

    #[test]
    fn polar_factor_of_scaled_unitary_is_the_unitary() {
        let u = HermitianEigen::new(&random_hermitian(4, 5)).vectors;
        let s = u.scale(Complex64::new(0.0, 3.0));
        let w = polar_unitary(&s).unwrap();
        assert!(w.isometry_defect() < 1e-12);
        assert!(w.max_abs_diff(&u.scale(Complex64::new(0.0, 1.0))) < 1e-12);
        assert!(polar_unitary(&CMatrix::zeros(2, 2)).is_none());
    }

    #[test]
    fn kron_and_direct_sum_shapes() {
        let a = CMatrix::identity(2);
        let b = CMatrix::from_fn(3, 3, |i, j| Complex64::new((i * 3 + j) as f64, 0.0));
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert_eq!(k[(4, 5)], b[(1, 2)]);
        assert_eq!(k[(1, 4)], ZERO);
        let s = a.direct_sum(&b);
        assert_eq!(s[(3, 4)], b[(1, 2)]);
    }
}
