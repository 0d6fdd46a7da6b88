//! Dense complex linear algebra for one- and two-qubit operators.
//!
//! The closed-form simulation path only ever touches dimensions 2 and 4;
//! the brute-force teleportation oracle additionally builds 8-dimensional
//! joint states, so [`ComplexMatrix`] itself is dimension-agnostic.
//! Eigenvalues come from a cyclic Jacobi iteration specialised for Hermitian
//! matrices of this size, which keeps the kernel dependency-free and exact
//! to near machine precision.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::tol;
use crate::{Error, Result};

/// Which qubit of a two-qubit operator an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Small square complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries; `entries.len()` must be a
    /// perfect square.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        Ok(Self { dim, data: entries })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::from_entries(
            dim,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out[(r, c)] = self[(c, r)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }

    /// Largest entrywise absolute difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from Hermitian symmetry, `max |m[i][j] - conj(m[j][i])|`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

/// Pauli x on a single qubit.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
}

/// Pauli y on a single qubit.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_entries(
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .unwrap()
}

/// Pauli z on a single qubit.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
}

/// Kronecker product `a (x) b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(da * db);
    for ar in 0..da {
        for ac in 0..da {
            let f = a[(ar, ac)];
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for br in 0..db {
                for bc in 0..db {
                    out[(ar * db + br, ac * db + bc)] = f * b[(br, bc)];
                }
            }
        }
    }
    out
}

/// Trace-one positive-semidefinite Hermitian matrix of dimension 2 or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity before wrapping.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() != 2 && matrix.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                actual: matrix.dim(),
            });
        }
        let asymmetry = matrix.hermitian_asymmetry();
        if asymmetry > tol::HERMITICITY || asymmetry.is_nan() {
            return Err(Error::NotHermitian { asymmetry });
        }
        let trace_dev = (matrix.trace() - Complex64::new(1.0, 0.0)).norm();
        if trace_dev > tol::UNIT_TRACE || trace_dev.is_nan() {
            return Err(Error::TraceNotUnit {
                deviation: trace_dev,
            });
        }
        let eigenvalues = hermitian_eigenvalues(&matrix)?;
        let smallest = eigenvalues[0];
        if smallest < tol::PSD_MIN_EIGENVALUE {
            return Err(Error::NotPositiveSemidefinite {
                eigenvalue: smallest,
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Ascending spectrum of the state.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)
    }
}

/// Real three-vector describing a qubit state, `rho = (I + v . sigma) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn scaled(&self, f: f64) -> Self {
        Self::new(self.x * f, self.y * f, self.z * f)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }

    /// Largest componentwise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

/// Applies the weighted Kraus map `rho' = sum_i w_i K_i rho K_i^dag`.
///
/// The family must resolve the identity, `sum_i w_i K_i^dag K_i = I`,
/// otherwise the channel is malformed and `CompletenessViolation` is raised.
pub fn apply_kraus(
    rho: &DensityMatrix,
    operators: &[ComplexMatrix],
    weights: &[f64],
) -> Result<DensityMatrix> {
    assert_eq!(
        operators.len(),
        weights.len(),
        "one weight per Kraus operator"
    );
    let dim = rho.dim();
    for op in operators {
        if op.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: op.dim(),
            });
        }
    }
    if let Some(&w) = weights.iter().find(|&&w| w < 0.0) {
        return Err(Error::RangeError {
            what: "kraus weight",
            value: w,
            range: "[0, inf)",
        });
    }
    let mut completeness = ComplexMatrix::zeros(dim);
    for (op, &w) in operators.iter().zip(weights) {
        completeness = completeness.add(&op.adjoint().mul(op).scaled(w));
    }
    let deviation = completeness.max_abs_diff(&ComplexMatrix::identity(dim));
    if deviation > tol::KRAUS_COMPLETENESS || deviation.is_nan() {
        return Err(Error::CompletenessViolation { deviation });
    }

    let mut out = ComplexMatrix::zeros(dim);
    for (op, &w) in operators.iter().zip(weights) {
        out = out.add(&op.mul(rho.matrix()).mul(&op.adjoint()).scaled(w));
    }
    DensityMatrix::new(out)
}

/// Partial transpose of a two-qubit state with respect to one qubit.
///
/// The result is Hermitian and trace preserving but in general indefinite,
/// so it comes back as a plain matrix rather than a density matrix.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: Subsystem) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    Ok(partial_transpose_matrix(rho.matrix(), subsystem))
}

fn partial_transpose_matrix(m: &ComplexMatrix, subsystem: Subsystem) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(4);
    for a in 0..2 {
        for b in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    let src = match subsystem {
                        Subsystem::A => (a2 * 2 + b, a * 2 + b2),
                        Subsystem::B => (a * 2 + b2, a2 * 2 + b),
                    };
                    out[(a * 2 + b, a2 * 2 + b2)] = m[src];
                }
            }
        }
    }
    out
}

/// Traces out one qubit of a two-qubit state, returning the reduced state of
/// the kept qubit.
pub fn partial_trace(rho: &DensityMatrix, traced: Subsystem) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(2);
    for k in 0..2 {
        for k2 in 0..2 {
            let mut sum = Complex64::new(0.0, 0.0);
            for s in 0..2 {
                sum += match traced {
                    Subsystem::A => m[(s * 2 + k, s * 2 + k2)],
                    Subsystem::B => m[(k * 2 + s, k2 * 2 + s)],
                };
            }
            out[(k, k2)] = sum;
        }
    }
    DensityMatrix::new(out)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Asymmetry up to [`tol::EIGEN_SYMMETRIZE`] is absorbed by symmetrising
/// `h <- (h + h^dag) / 2`; anything larger is reported as `NotHermitian`
/// instead of being silently repaired.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let asymmetry = h.hermitian_asymmetry();
    if asymmetry > tol::EIGEN_SYMMETRIZE || asymmetry.is_nan() {
        return Err(Error::NotHermitian { asymmetry });
    }
    let mut a = h.add(&h.adjoint()).scaled(0.5);
    let n = a.dim();
    if n == 1 {
        return Ok(vec![a[(0, 0)].re]);
    }

    // Cyclic Jacobi sweeps; each rotation annihilates one off-diagonal pair.
    for _sweep in 0..60 {
        if off_diagonal_norm(&a) < tol::JACOBI_OFF_DIAGONAL {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }

    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    eigenvalues.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    Ok(eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += a[(r, c)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing `a[p][q]` via a unitary similarity.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let phase = apq / r;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.dim();
    // Right multiplication by the rotation: updates columns p and q.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s * phase.conj();
        a[(k, q)] = akp * s * phase + akq * c;
    }
    // Left multiplication by its adjoint: updates rows p and q.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s * phase;
        a[(q, k)] = apk * s * phase.conj() + aqk * c;
    }
}

/// Bloch vector of a qubit state, `v_k = tr(rho sigma_k)`.
pub fn bloch_from_density(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: rho.dim(),
        });
    }
    let m = rho.matrix();
    Ok(BlochVector::new(
        2.0 * m[(0, 1)].re,
        -2.0 * m[(0, 1)].im,
        m[(0, 0)].re - m[(1, 1)].re,
    ))
}

/// Qubit state with the given Bloch vector, `rho = (I + v . sigma) / 2`.
pub fn density_from_bloch(v: BlochVector) -> Result<DensityMatrix> {
    let norm = v.norm();
    if norm > 1.0 + tol::BLOCH_BALL || norm.is_nan() {
        return Err(Error::BlochOutOfBall { norm });
    }
    // Clip round-off so the eigenvalue check cannot trip on |v| = 1 + 1e-12.
    let v = if norm > 1.0 { v.scaled(1.0 / norm) } else { v };
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 0)] = Complex64::new((1.0 + v.z) / 2.0, 0.0);
    m[(1, 1)] = Complex64::new((1.0 - v.z) / 2.0, 0.0);
    m[(0, 1)] = Complex64::new(v.x / 2.0, -v.y / 2.0);
    m[(1, 0)] = Complex64::new(v.x / 2.0, v.y / 2.0);
    DensityMatrix::new(m)
}
