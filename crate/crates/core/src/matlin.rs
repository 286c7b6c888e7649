//! Dense complex linear algebra for one-qubit payloads and full `2^n x 2^n`
//! unitaries.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

/// Unitarity tolerance for gate payloads (entrywise max norm of `M M^† - I`).
pub const UNITARY_TOL: f64 = 1e-10;
/// Tolerance used by rewrite-rule predicates and local rule verification.
pub const RULE_TOL: f64 = 1e-9;
/// End-to-end equivalence tolerance for synthesized circuits.
pub const EQUIV_TOL: f64 = 1e-8;

/// Entries of `v` below this magnitude are never used to align global phases.
const PHASE_PIVOT_MIN: f64 = 1e-6;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix has {rows} rows, expected a power of two")]
    NotPowerOfTwo { rows: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not unitary (deviation {deviation:.3e} > {tol:.1e})")]
    NotUnitary { deviation: f64, tol: f64 },
}

/// `e^{i theta}`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// A 2x2 complex matrix, row-major. Used for every one-qubit payload.
#[derive(Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(
            f,
            "[[{:.6}, {:.6}], [{:.6}, {:.6}]]",
            m[0][0], m[0][1], m[1][0], m[1][1]
        )
    }
}

impl Mat2 {
    pub const fn new(a00: C64, a01: C64, a10: C64, a11: C64) -> Self {
        Mat2([[a00, a01], [a10, a11]])
    }

    pub const fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn pauli_x() -> Self {
        Mat2::new(ZERO, ONE, ONE, ZERO)
    }

    pub const fn pauli_y() -> Self {
        Mat2::new(ZERO, C64::new(0.0, -1.0), I, ZERO)
    }

    pub const fn pauli_z() -> Self {
        Mat2::new(ONE, ZERO, ZERO, C64::new(-1.0, 0.0))
    }

    pub fn hadamard() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Mat2::new(h, h, h, -h)
    }

    pub const fn diag(a: C64, b: C64) -> Self {
        Mat2::new(a, ZERO, ZERO, b)
    }

    /// `diag(1, e^{i theta})`.
    pub fn phase(theta: f64) -> Self {
        Mat2::diag(ONE, cis(theta))
    }

    /// `c * I`.
    pub const fn scalar(c: C64) -> Self {
        Mat2::diag(c, c)
    }

    /// `Rz(theta) = diag(e^{-i theta/2}, e^{i theta/2})`.
    pub fn rz(theta: f64) -> Self {
        Mat2::diag(cis(-theta / 2.0), cis(theta / 2.0))
    }

    /// `Ry(theta)`, a real rotation.
    pub fn ry(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Mat2::new(C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0))
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.0[r][c]
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn scale(&self, c: C64) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0] * c, m[0][1] * c, m[1][0] * c, m[1][1] * c)
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut d: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                d = d.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        d
    }

    pub fn approx_eq(&self, other: &Mat2, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Deviation of `M M^†` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        (*self * self.dagger()).max_abs_diff(&Mat2::identity())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_finite() && self.unitarity_error() <= tol
    }

    /// True iff both off-diagonal entries vanish within `tol`.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.0[0][1].norm() <= tol && self.0[1][0].norm() <= tol
    }

    /// True iff both diagonal entries vanish within `tol`.
    pub fn is_antidiagonal(&self, tol: f64) -> bool {
        self.0[0][0].norm() <= tol && self.0[1][1].norm() <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.approx_eq(&self.dagger(), tol)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Mat2::identity(), tol)
    }

    /// `Some(c)` if the matrix is `c * I` within `tol`.
    pub fn as_scalar(&self, tol: f64) -> Option<C64> {
        (self.is_diagonal(tol) && (self.0[0][0] - self.0[1][1]).norm() <= tol)
            .then_some(self.0[0][0])
    }

    /// `Some(z)` if the matrix is `diag(1, z)` within `tol`.
    pub fn as_controlled_phase(&self, tol: f64) -> Option<C64> {
        (self.is_diagonal(tol) && (self.0[0][0] - ONE).norm() <= tol).then_some(self.0[1][1])
    }

    /// `Some(c)` if the matrix is `c * sigma_x` within `tol`.
    pub fn as_scaled_x(&self, tol: f64) -> Option<C64> {
        (self.is_antidiagonal(tol) && (self.0[0][1] - self.0[1][0]).norm() <= tol)
            .then_some(self.0[0][1])
    }

    pub fn commutes_with(&self, other: &Mat2, tol: f64) -> bool {
        (*self * *other).approx_eq(&(*other * *self), tol)
    }

    /// Principal square root of a unitary.
    ///
    /// Each eigenvalue `e^{i a}` with `a` in `(-pi, pi]` maps to `e^{i a/2}`.
    /// With `r1, r2` the two roots, `sqrt(M) = (M + r1 r2 I) / (r1 + r2)`,
    /// which stays well defined when the eigenvalues coincide.
    pub fn sqrt(&self) -> Mat2 {
        let half_tr = self.trace() / 2.0;
        let disc = (half_tr * half_tr - self.det()).sqrt();
        let r1 = (half_tr + disc).sqrt();
        let r2 = (half_tr - disc).sqrt();
        let sum = r1 + r2;
        if sum.norm() < 1e-300 {
            // Unreachable for unitary input: principal roots never cancel.
            return *self;
        }
        let m = &self.0;
        let p = r1 * r2;
        Mat2::new(
            (m[0][0] + p) / sum,
            m[0][1] / sum,
            m[1][0] / sum,
            (m[1][1] + p) / sum,
        )
    }

    /// `V` with `V^(2^k) = M`, by `k` principal square roots.
    pub fn root_pow2(&self, k: u32) -> Mat2 {
        (0..k).fold(*self, |m, _| m.sqrt())
    }

    /// Euler angles `(delta, gamma, theta, lambda)` with
    /// `M = e^{i delta} Rz(gamma) Ry(theta) Rz(lambda)`.
    pub fn zyz_angles(&self) -> ZyzAngles {
        let delta = self.det().arg() / 2.0;
        let w = self.scale(cis(-delta));
        let c = w.0[0][0].norm();
        let s = w.0[1][0].norm();
        let theta = 2.0 * s.atan2(c);
        // w11 = e^{i(g+l)/2} cos, w10 = e^{i(g-l)/2} sin
        let sum = if c > 1e-12 { 2.0 * w.0[1][1].arg() } else { 0.0 };
        let diff = if s > 1e-12 { 2.0 * w.0[1][0].arg() } else { 0.0 };
        let gamma = (sum + diff) / 2.0;
        let lambda = (sum - diff) / 2.0;
        let angles = ZyzAngles { delta, gamma, theta, lambda };
        // The SU(2) lift is fixed only up to sign; fold a sign flip into delta.
        if angles.to_mat2().max_abs_diff(self) > 1e-6 {
            ZyzAngles { delta: delta + std::f64::consts::PI, ..angles }
        } else {
            angles
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZyzAngles {
    pub delta: f64,
    pub gamma: f64,
    pub theta: f64,
    pub lambda: f64,
}

impl ZyzAngles {
    pub fn to_mat2(&self) -> Mat2 {
        (Mat2::rz(self.gamma) * Mat2::ry(self.theta) * Mat2::rz(self.lambda)).scale(cis(self.delta))
    }
}

/// A dense `2^n x 2^n` complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct UnitaryMatrix {
    n_qubits: usize,
    dim: usize,
    data: Vec<C64>,
}

impl fmt::Debug for UnitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "UnitaryMatrix({} qubits)", self.n_qubits)?;
        for r in 0..self.dim {
            let row: Vec<String> = self.row(r).iter().map(|z| format!("{z:.4}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl UnitaryMatrix {
    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        UnitaryMatrix { n_qubits, dim, data }
    }

    pub fn zeros(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        UnitaryMatrix { n_qubits, dim, data: vec![ZERO; dim * dim] }
    }

    /// Builds a matrix from rows. The row count must be a power of two and
    /// every row must have the same length; unitarity is not checked here.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self, MatrixError> {
        let dim = rows.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(MatrixError::NotPowerOfTwo { rows: dim });
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(MatrixError::RaggedRow { row: r, len: row.len(), expected: dim });
            }
            for (c, z) in row.iter().enumerate() {
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(MatrixError::NonFinite { row: r, col: c });
                }
            }
            data.extend(row);
        }
        Ok(UnitaryMatrix { n_qubits: dim.trailing_zeros() as usize, dim, data })
    }

    pub fn from_mat2(m: &Mat2) -> Self {
        UnitaryMatrix { n_qubits: 1, dim: 2, data: m.0.iter().flatten().copied().collect() }
    }

    pub fn diagonal(phases: &[C64]) -> Result<Self, MatrixError> {
        let dim = phases.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(MatrixError::NotPowerOfTwo { rows: dim });
        }
        let mut m = UnitaryMatrix::zeros(dim.trailing_zeros() as usize);
        for (i, &p) in phases.iter().enumerate() {
            m.set(i, i, p);
        }
        Ok(m)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn scale(&self, c: C64) -> Self {
        UnitaryMatrix { data: self.data.iter().map(|z| z * c).collect(), ..self.clone() }
    }

    pub fn dagger(&self) -> Self {
        let mut out = UnitaryMatrix::zeros(self.n_qubits);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &UnitaryMatrix) -> Result<UnitaryMatrix, MatrixError> {
        self.check_dims(rhs)?;
        let n = self.dim;
        let mut out = UnitaryMatrix::zeros(self.n_qubits);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                let out_row = &mut out.data[r * n..(r + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Left-multiplies rows `q` and `p` by the 2x2 block `g` (row `q` first).
    pub fn apply_rows(&mut self, q: usize, p: usize, g: &Mat2) {
        let n = self.dim;
        for c in 0..n {
            let a = self.data[q * n + c];
            let b = self.data[p * n + c];
            self.data[q * n + c] = g.0[0][0] * a + g.0[0][1] * b;
            self.data[p * n + c] = g.0[1][0] * a + g.0[1][1] * b;
        }
    }

    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> Result<f64, MatrixError> {
        self.check_dims(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// Deviation of `U U^†` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let prod = self.matmul(&self.dagger()).expect("same dimensions");
        prod.max_abs_diff(&UnitaryMatrix::identity(self.n_qubits)).expect("same dimensions")
    }

    pub fn check_unitary(&self, tol: f64) -> Result<(), MatrixError> {
        let deviation = self.unitarity_error();
        if deviation <= tol {
            Ok(())
        } else {
            Err(MatrixError::NotUnitary { deviation, tol })
        }
    }

    /// Aligns `other` to `self` by a unit-modulus scalar and reports the
    /// residual. The scalar comes from the largest-magnitude entry of `other`.
    pub fn phase_aligned_distance(&self, other: &UnitaryMatrix) -> Result<PhaseAlignment, MatrixError> {
        self.check_dims(other)?;
        let (k, mag) = other
            .data
            .iter()
            .enumerate()
            .map(|(i, z)| (i, z.norm()))
            .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        let phase = if mag < PHASE_PIVOT_MIN {
            ONE
        } else {
            let ratio = self.data[k] / other.data[k];
            if ratio.norm() < 1e-300 {
                ONE
            } else {
                ratio / ratio.norm()
            }
        };
        let max_deviation = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - phase * b).norm())
            .fold(0.0, f64::max);
        Ok(PhaseAlignment { phase, max_deviation })
    }

    pub fn equal_up_to_global_phase(&self, other: &UnitaryMatrix, tol: f64) -> Result<bool, MatrixError> {
        Ok(self.phase_aligned_distance(other)?.max_deviation <= tol)
    }

    fn check_dims(&self, other: &UnitaryMatrix) -> Result<(), MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }
}

/// Result of aligning two matrices by a global phase: `self ~ phase * other`.
#[derive(Debug, Clone, Copy)]
pub struct PhaseAlignment {
    pub phase: C64,
    pub max_deviation: f64,
}

/// Free-function form of [`UnitaryMatrix::equal_up_to_global_phase`].
pub fn equal_up_to_global_phase(u: &UnitaryMatrix, v: &UnitaryMatrix, tol: f64) -> Result<bool, MatrixError> {
    u.equal_up_to_global_phase(v, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{haar_mat2, haar_unitary, seeded_rng};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Entry-by-entry product written out independently of `Mul`.
    fn brute_mul(a: &Mat2, b: &Mat2) -> Mat2 {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                for k in 0..2 {
                    *e += a.0[i][k] * b.0[k][j];
                }
            }
        }
        Mat2(out)
    }

    #[test]
    fn products_of_named_gates() {
        assert_eq!(Mat2::identity() * Mat2::identity(), Mat2::identity());
        assert_eq!(Mat2::pauli_x() * Mat2::pauli_x(), Mat2::identity());
        let xz = Mat2::pauli_x() * Mat2::pauli_z();
        let expected = Mat2::new(ZERO, c(-1.0, 0.0), ONE, ZERO);
        assert_eq!(xz, brute_mul(&Mat2::pauli_x(), &Mat2::pauli_z()));
        assert!(xz.approx_eq(&expected, 0.0));
        assert!(xz.approx_eq(&Mat2::pauli_y().scale(c(0.0, -1.0)), 1e-15));
    }

    #[test]
    fn dagger_cases() {
        assert_eq!(Mat2::pauli_x().dagger(), Mat2::pauli_x());
        let phi = 0.7;
        assert!(Mat2::diag(cis(phi), ONE).dagger().approx_eq(&Mat2::diag(cis(-phi), ONE), 0.0));
        let mut rng = seeded_rng(3);
        for _ in 0..100 {
            let m = haar_mat2(&mut rng);
            assert!((m * m.dagger()).is_identity(UNITARY_TOL));
            assert_eq!(m.dagger().dagger(), m);
        }
    }

    #[test]
    fn shape_predicates() {
        assert!(Mat2::phase(0.3).is_diagonal(0.0));
        assert!(!Mat2::pauli_x().is_diagonal(1e-12));
        assert!(!Mat2::hadamard().is_diagonal(1e-12));
        assert!(Mat2::pauli_x().is_antidiagonal(0.0));
        assert!(!Mat2::pauli_z().is_antidiagonal(1e-12));
        let t = 1.1;
        assert!(Mat2::new(ZERO, cis(t), cis(-t), ZERO).is_antidiagonal(0.0));
    }

    #[test]
    fn global_phase_equality() {
        let mut rng = seeded_rng(11);
        let u = haar_unitary(2, &mut rng);
        assert!(u.equal_up_to_global_phase(&u, 1e-12).unwrap());
        assert!(u.equal_up_to_global_phase(&u.scale(cis(PI / 7.0)), 1e-12).unwrap());
        let id = UnitaryMatrix::identity(1);
        let x = UnitaryMatrix::from_mat2(&Mat2::pauli_x());
        assert!(!id.equal_up_to_global_phase(&x, 1e-8).unwrap());
        assert!(matches!(
            id.equal_up_to_global_phase(&u, 1e-8),
            Err(MatrixError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sqrt_cases() {
        assert!(Mat2::identity().sqrt().approx_eq(&Mat2::identity(), 1e-15));
        let half = 0.5;
        let expected = Mat2::new(c(half, half), c(half, -half), c(half, -half), c(half, half));
        let v = Mat2::pauli_x().sqrt();
        assert!(v.approx_eq(&expected, 1e-14), "{v:?}");
        assert!((v * v).approx_eq(&Mat2::pauli_x(), 1e-14));
        let th = 2.5;
        assert!(Mat2::phase(th).sqrt().approx_eq(&Mat2::phase(th / 2.0), 1e-14));
        // eigenvalue exactly -1 goes to +i, not -i
        assert!(Mat2::scalar(c(-1.0, 0.0)).sqrt().approx_eq(&Mat2::scalar(I), 1e-14));
    }

    #[test]
    fn zyz_round_trip() {
        let mut rng = seeded_rng(5);
        for _ in 0..200 {
            let m = haar_mat2(&mut rng);
            let a = m.zyz_angles();
            assert!(a.to_mat2().approx_eq(&m, 1e-12), "{m:?} -> {a:?}");
        }
        for m in [Mat2::identity(), Mat2::pauli_x(), Mat2::pauli_y(), Mat2::phase(1.0), Mat2::hadamard()] {
            assert!(m.zyz_angles().to_mat2().approx_eq(&m, 1e-12), "{m:?}");
        }
    }

    #[test]
    fn matmul_agrees_with_mat2() {
        let mut rng = seeded_rng(9);
        let a = haar_mat2(&mut rng);
        let b = haar_mat2(&mut rng);
        let prod = UnitaryMatrix::from_mat2(&a).matmul(&UnitaryMatrix::from_mat2(&b)).unwrap();
        assert!(prod.max_abs_diff(&UnitaryMatrix::from_mat2(&(a * b))).unwrap() < 1e-15);
    }
}
