//! Dense complex matrices, a cyclic Jacobi eigensolver for Hermitian input,
//! and spectral matrix functions (powers and the deformed logarithm).
//!
//! Matrices are small (d <= 8 in practice) and stored row-major.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Entrywise Hermiticity tolerance.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues in `[-PSD_TOL, 0)` are rounding noise and clamp to zero.
pub const PSD_TOL: f64 = 1e-10;
/// Eigenvalues below this multiple of the spectral radius are indistinguishable
/// from zero at double precision and are flushed to zero.
pub const SPECTRAL_NOISE_FLOOR: f64 = 4.0 * f64::EPSILON;
/// Below this distance from `q = 1` the von Neumann branch is used.
pub const Q_BRANCH_TOL: f64 = 1e-12;
/// Off-diagonal Frobenius norm at which Jacobi sweeps stop.
pub const JACOBI_TOL: f64 = 1e-13;

const MAX_SWEEPS: usize = 64;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a `dim x dim` matrix from row-major entries.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::Shape {
                expected: dim * dim,
                got: data.len(),
            });
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let data: Vec<Complex64> = rows.iter().flatten().copied().collect();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Shape {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Self::new(dim, data)
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(&vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max_ij |m_ij - conj(m_ji)|`.
    pub fn hermitian_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let mut out = Self::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let x = self[(i, j)];
                for k in 0..b {
                    for l in 0..b {
                        out[(i * b + k, j * b + l)] = x * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| format!("{}", self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Eigenvalues in descending order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    /// `V f(Λ) V†`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += v[(i, k)] * v[(j, k)].conj() * fl[k];
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)].im = 0.0;
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|l| l)
    }

    /// Eigenvalues with rounding noise in `[-PSD_TOL, SPECTRAL_NOISE_FLOOR·ρ(M))` set to zero.
    pub fn clamped_eigenvalues(&self) -> Result<Vec<f64>> {
        clamp_spectrum(&self.eigenvalues)
    }

    fn clamped(self) -> Result<Self> {
        Ok(Self {
            eigenvalues: clamp_spectrum(&self.eigenvalues)?,
            eigenvectors: self.eigenvectors,
        })
    }
}

pub(crate) fn clamp_spectrum(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    let floor = SPECTRAL_NOISE_FLOOR * eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    eigenvalues
        .iter()
        .map(|&l| {
            if l < -PSD_TOL {
                Err(Error::NotPsd(l))
            } else if l < floor {
                Ok(0.0)
            } else {
                Ok(l)
            }
        })
        .collect()
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi diagonalisation of a Hermitian matrix.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let residual = m.hermitian_residual();
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian(residual));
    }
    let n = m.dim();
    // Work on the exactly Hermitian part.
    let mut a = m.clone();
    for i in 0..n {
        a[(i, i)].im = 0.0;
        for j in (i + 1)..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let stop = JACOBI_TOL * a.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    while off_diagonal_norm(&a) > stop {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(off_diagonal_norm(&a)));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps ties in original index order.
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));

    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(SpectralDecomposition {
        eigenvalues: order.iter().map(|&i| diag[i]).collect(),
        eigenvectors: vectors,
    })
}

/// Annihilates `a[p][q]` with the unitary `U = diag(1, e^{-iφ}) R(θ)` on rows/cols p, q.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = -phase.conj() * s;
    let uqq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * upp + akq * uqp;
        a[(k, q)] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
        a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[(p, p)] = Complex64::new(app - t * r, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * r, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.diagonal().into_iter().sum()
}

/// `x^q` with `0^q = 0` for every `q > 0`.
#[inline]
pub(crate) fn pow_nonneg(x: f64, q: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.powf(q)
    }
}

/// Deformed logarithm `(x^{q-1} - 1)/(q - 1)` of a positive scalar, falling
/// back to `ln x` within `Q_BRANCH_TOL` of `q = 1`.
#[inline]
pub fn q_log_scalar(x: f64, q: f64) -> f64 {
    let dq = q - 1.0;
    if dq.abs() <= Q_BRANCH_TOL {
        x.ln()
    } else if x == 0.0 {
        // Only reached for q > 1, where 0^{q-1} = 0.
        -1.0 / dq
    } else {
        (dq * x.ln()).exp_m1() / dq
    }
}

fn check_q(q: f64) -> Result<()> {
    if q.is_finite() && q > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidQ(q))
    }
}

/// `m^q` of a Hermitian positive semidefinite matrix.
pub fn matrix_power(m: &ComplexMatrix, q: f64) -> Result<ComplexMatrix> {
    check_q(q)?;
    let eig = hermitian_eigen(m)?.clamped()?;
    Ok(eig.map(|l| pow_nonneg(l, q)))
}

/// Matrix deformed logarithm `ln_q m`.
///
/// For `q <= 1` the input must be strictly positive definite; for `q > 1`
/// zero eigenvalues map to `-1/(q-1)`.
pub fn q_log(m: &ComplexMatrix, q: f64) -> Result<ComplexMatrix> {
    check_q(q)?;
    let eig = hermitian_eigen(m)?.clamped()?;
    if q - 1.0 <= Q_BRANCH_TOL {
        if let Some(&l) = eig.eigenvalues.iter().find(|&&l| l <= 0.0) {
            return Err(Error::SingularLog(l));
        }
    }
    Ok(eig.map(|l| q_log_scalar(l, q)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn werner(p: f64) -> ComplexMatrix {
        let a = (1.0 + p) / 4.0;
        let b = (1.0 - p) / 4.0;
        let mut m = ComplexMatrix::from_diagonal(&[a, b, b, a]);
        m[(0, 3)] = c(p / 2.0, 0.0);
        m[(3, 0)] = c(p / 2.0, 0.0);
        m
    }

    /// Roots of det(B - λI) for a real symmetric 2x2 block, from the quadratic formula.
    fn block_roots(a: f64, b: f64, off: f64) -> [f64; 2] {
        let tr = a + b;
        let det = a * b - off * off;
        let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
        [(tr + disc) / 2.0, (tr - disc) / 2.0]
    }

    #[test]
    fn identity_and_pauli_x() {
        let e = hermitian_eigen(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0]);

        let x = ComplexMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]])
            .unwrap();
        let e = hermitian_eigen(&x).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn werner_pure_spectrum_matches_characteristic_polynomial() {
        let outer = block_roots(0.5, 0.5, 0.5);
        let inner = block_roots(0.0, 0.0, 0.0);
        let mut expected = vec![outer[0], outer[1], inner[0], inner[1]];
        expected.sort_by(|a, b| b.total_cmp(a));
        assert_eq!(expected, vec![1.0, 0.0, 0.0, 0.0]);

        let e = hermitian_eigen(&werner(1.0)).unwrap();
        for (got, want) in e.eigenvalues.iter().zip(&expected) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[vec![c(1., 0.), c(1., 0.)], vec![c(0., 0.), c(1., 0.)]])
            .unwrap();
        assert!(matches!(hermitian_eigen(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.3, -0.7), c(0.0, 1.1)],
            vec![c(0.3, 0.7), c(-1.0, 0.0), c(0.5, 0.25)],
            vec![c(0.0, -1.1), c(0.5, -0.25), c(0.4, 0.0)],
        ])
        .unwrap();
        let e = hermitian_eigen(&m).unwrap();
        assert!(e.reconstruct().sub(&m).frobenius_norm() < 1e-11);
        let v = &e.eigenvectors;
        let gram = &v.adjoint() * v;
        assert!(gram.sub(&ComplexMatrix::identity(3)).frobenius_norm() < 1e-12);
        assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn ties_keep_original_order() {
        let e = hermitian_eigen(&ComplexMatrix::from_diagonal(&[0.25, 0.5, 0.25])).unwrap();
        assert_eq!(e.eigenvalues, vec![0.5, 0.25, 0.25]);
        // Column 1 is e_0, column 2 is e_2.
        assert_eq!(e.eigenvectors[(0, 1)], c(1.0, 0.0));
        assert_eq!(e.eigenvectors[(2, 2)], c(1.0, 0.0));
    }

    #[test]
    fn powers_of_scalar_and_projector() {
        let half = ComplexMatrix::identity(2).scale(0.5);
        let p = matrix_power(&half, 2.0).unwrap();
        assert!(p.max_abs_diff(&ComplexMatrix::identity(2).scale(0.25)) < 1e-15);

        let proj = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        assert!(matrix_power(&proj, 0.5).unwrap().max_abs_diff(&proj) < 1e-15);

        let mixed = werner(0.0);
        let cube = matrix_power(&mixed, 3.0).unwrap();
        assert!(cube.max_abs_diff(&ComplexMatrix::identity(4).scale(1.0 / 64.0)) < 1e-15);
    }

    #[test]
    fn power_rejects_negative_spectrum() {
        let m = ComplexMatrix::from_diagonal(&[1.0, -1e-6]);
        assert!(matches!(matrix_power(&m, 2.0), Err(Error::NotPsd(_))));
        // Rounding-level negatives are clamped.
        let m = ComplexMatrix::from_diagonal(&[1.0, -1e-12]);
        let p = matrix_power(&m, 0.5).unwrap();
        assert_eq!(p[(1, 1)], c(0.0, 0.0));
    }

    #[test]
    fn q_log_cases() {
        let id = ComplexMatrix::identity(3);
        for q in [0.3, 1.0, 2.0, 4.5] {
            assert!(q_log(&id, q).unwrap().frobenius_norm() < 1e-15);
        }
        // ln_2(ρ) = ρ - I.
        let half = ComplexMatrix::identity(2).scale(0.5);
        let l = q_log(&half, 2.0).unwrap();
        assert!(l.max_abs_diff(&ComplexMatrix::identity(2).scale(-0.5)) < 1e-15);

        let e = std::f64::consts::E;
        let l = q_log(&ComplexMatrix::from_diagonal(&[e, e]), 1.0).unwrap();
        assert!(l.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn q_log_singular_inputs() {
        let proj = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        assert!(matches!(q_log(&proj, 1.0), Err(Error::SingularLog(_))));
        assert!(matches!(q_log(&proj, 0.5), Err(Error::SingularLog(_))));
        let l = q_log(&proj, 3.0).unwrap();
        assert!((l[(1, 1)].re + 0.5).abs() < 1e-15);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace(&ComplexMatrix::identity(4)), c(4.0, 0.0));
        assert_eq!(trace(&ComplexMatrix::zeros(3)), c(0.0, 0.0));
        for p in [-1.0 / 3.0, 0.0, 0.5, 1.0] {
            assert!((trace(&werner(p)) - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn invalid_construction() {
        assert!(matches!(
            ComplexMatrix::new(2, vec![c(0., 0.); 3]),
            Err(Error::Shape { .. })
        ));
        let mut d = vec![c(0., 0.); 4];
        d[3] = c(f64::NAN, 0.0);
        assert_eq!(
            ComplexMatrix::new(2, d),
            Err(Error::NonFinite { row: 1, col: 1 })
        );
    }
}
