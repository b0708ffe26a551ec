//! Small dense complex linear algebra.
//!
//! Everything here is sized for the 2, 3 and 6 dimensional operators of a
//! qubit–qutrit system. Matrices are stored row-major.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Default absolute tolerance for the Hermiticity precondition of the eigensolver.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Sweeping stops once the off-diagonal Frobenius norm drops below this
/// fraction of the full Frobenius norm.
const JACOBI_REL_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

pub const fn c(re: f64, im: f64) -> ComplexScalar {
    Complex64::new(re, im)
}

/// Primitive cube root of unity e^{2πi/3}.
pub fn omega() -> ComplexScalar {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexScalar>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![c(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[ComplexScalar]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub(crate) fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> ComplexScalar,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting ragged shapes and
    /// non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<ComplexScalar>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<ComplexScalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(rows.len(), cols, rows.concat())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<ComplexScalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.data
    }

    pub fn scaled(&self, k: ComplexScalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * k).collect(),
        }
    }

    pub fn scaled_real(&self, k: f64) -> Self {
        self.scaled(c(k, 0.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub(crate) fn sub(&self, other: &Self) -> Result<Self> {
        same_shape(self, other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// max |a[i,j] − conj(a[j,i])|.
    pub fn hermiticity_residual(&self) -> Result<f64> {
        self.require_square()?;
        let n = self.rows;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        Ok(worst)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = ComplexScalar;

    fn index(&self, (i, j): (usize, usize)) -> &ComplexScalar {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexScalar {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn same_shape(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.rows == b.rows && a.cols == b.cols {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )))
    }
}

pub fn mat_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = ComplexMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.data[i * a.cols + k];
            if aik == c(0.0, 0.0) {
                continue;
            }
            let brow = &b.data[k * b.cols..(k + 1) * b.cols];
            let orow = &mut out.data[i * b.cols..(i + 1) * b.cols];
            for (o, &bkj) in orow.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
    }
    Ok(out)
}

/// Kronecker product: `(a⊗b)[i·b.rows + k, j·b.cols + l] = a[i,j]·b[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.cols, a.rows, |i, j| a[(j, i)].conj())
}

pub fn trace(a: &ComplexMatrix) -> Result<ComplexScalar> {
    a.require_square()?;
    Ok((0..a.rows).map(|i| a[(i, i)]).sum())
}

pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    Ok(a.sub(b)?.frobenius_norm())
}

/// Eigen-decomposition of a Hermitian matrix; `vectors` holds eigenvectors
/// as columns, in the same order as `values`.
#[derive(Debug, Clone)]
pub(crate) struct HermitianEigen {
    pub values: Vec<f64>,
    #[cfg_attr(not(test), allow(dead_code))]
    pub vectors: ComplexMatrix,
}

/// Ascending real spectrum of a Hermitian matrix via cyclic complex Jacobi.
pub fn hermitian_eigenvalues(a: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    Ok(jacobi_eigen(a, tol)?.values)
}

pub(crate) fn jacobi_eigen(a: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    let residual = a.hermiticity_residual()?;
    if residual > tol {
        return Err(Error::NotHermitian { residual, tol });
    }
    let n = a.rows;
    // Work on the exactly Hermitian part.
    let mut m = ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    for i in 0..n {
        m[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);
    let target = JACOBI_REL_TOL * m.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m);
        if off <= target {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `m[p,q]` with the unitary `G = diag(1, e^{-iφ}) · R(θ)` acting
/// on the (p, q) plane, where φ = arg m[p,q] and R is the real Jacobi rotation
/// of the phase-corrected real pair. Updates `m ← G† m G`, `v ← v G`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = t * cs;

    let gpp = c(cs, 0.0);
    let gpq = c(sn, 0.0);
    let gqp = -phase.conj() * sn;
    let gqq = phase.conj() * cs;

    let n = m.rows;
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * gpp + mkq * gqp;
        m[(k, q)] = mkp * gpq + mkq * gqq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = gpp.conj() * mpk + gqp.conj() * mqk;
        m[(q, k)] = gpq.conj() * mpk + gqq.conj() * mqk;
    }
    m[(p, q)] = c(0.0, 0.0);
    m[(q, p)] = c(0.0, 0.0);
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y3() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap()
    }

    fn z3() -> ComplexMatrix {
        let w = omega();
        ComplexMatrix::from_diag(&[c(1.0, 0.0), w, w * w])
    }

    fn assert_close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) {
        let d = frobenius_distance(a, b).unwrap();
        assert!(d <= tol, "distance {d:e} > {tol:e}\n{a:?}\n{b:?}");
    }

    #[test]
    fn identity_times_z_is_z() {
        let z = z3();
        assert_eq!(mat_mul(&ComplexMatrix::identity(3), &z).unwrap(), z);
    }

    #[test]
    fn y_squared_is_reverse_cycle() {
        // Y: e0 -> e2, e1 -> e0, e2 -> e1; Y² sends e0 -> e1.
        let y2 = ComplexMatrix::from_real_rows(&[
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(mat_mul(&y3(), &y3()).unwrap(), y2);
    }

    #[test]
    fn z_squared() {
        let w = omega();
        let expected = ComplexMatrix::from_diag(&[c(1.0, 0.0), w * w, w]);
        assert_close(&mat_mul(&z3(), &z3()).unwrap(), &expected, 1e-15);
    }

    #[test]
    fn mat_mul_rejects_mismatch() {
        let err = mat_mul(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3));
        assert!(matches!(err, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3)),
            ComplexMatrix::identity(6)
        );
        let e0 = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(
            kron(&e0, &ComplexMatrix::identity(3)),
            ComplexMatrix::identity(6)
        );

        let s = 0.2_f64.sqrt();
        let e1 = ComplexMatrix::from_real_rows(&[vec![0.0, s], vec![0.0, 0.0]]).unwrap();
        let k = kron(&e1, &ComplexMatrix::identity(3));
        for i in 0..6 {
            for j in 0..6 {
                let expected = if [(0, 3), (1, 4), (2, 5)].contains(&(i, j)) {
                    s
                } else {
                    0.0
                };
                assert_eq!(k[(i, j)], c(expected, 0.0), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(
            adjoint(&ComplexMatrix::identity(3)),
            ComplexMatrix::identity(3)
        );
        let w = omega();
        let expected = ComplexMatrix::from_diag(&[c(1.0, 0.0), w * w, w]);
        assert_close(&adjoint(&z3()), &expected, 1e-15);
        assert_eq!(adjoint(&adjoint(&y3())), y3());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace(&ComplexMatrix::identity(6)).unwrap(), c(6.0, 0.0));
        assert!(trace(&z3()).unwrap().norm() < 1e-15);
        assert!(matches!(
            trace(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn frobenius_examples() {
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(frobenius_distance(&i3, &i3).unwrap(), 0.0);
        let d =
            frobenius_distance(&ComplexMatrix::identity(2), &ComplexMatrix::zeros(2, 2)).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        let d = frobenius_distance(&z3(), &adjoint(&z3())).unwrap();
        assert!((d - 6f64.sqrt()).abs() < 1e-14);
        assert!(frobenius_distance(&i3, &ComplexMatrix::identity(2)).is_err());
    }

    #[test]
    fn rejects_non_finite_entries() {
        let err = ComplexMatrix::from_vec(1, 2, vec![c(0.0, 0.0), c(f64::NAN, 0.0)]);
        assert_eq!(err, Err(Error::NonFinite { row: 0, col: 1 }));
    }

    #[test]
    fn eigenvalues_of_small_cases() {
        let d = ComplexMatrix::from_diag(&[c(3.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(
            hermitian_eigenvalues(&d, HERMITIAN_TOL).unwrap(),
            vec![1.0, 2.0, 3.0]
        );

        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 0.5], vec![0.5, 0.0]]).unwrap();
        let ev = hermitian_eigenvalues(&m, HERMITIAN_TOL).unwrap();
        assert!((ev[0] + 0.5).abs() < 1e-15 && (ev[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_matrix_converges_immediately() {
        let ev = hermitian_eigenvalues(&ComplexMatrix::zeros(6, 6), HERMITIAN_TOL).unwrap();
        assert_eq!(ev, vec![0.0; 6]);
    }

    #[test]
    fn complex_two_by_two_closed_form() {
        // [[a, b], [b*, d]] has eigenvalues (a+d)/2 ± sqrt(((a-d)/2)² + |b|²).
        let (a, d, b) = (0.3, -1.2, c(0.4, -0.7));
        let m = ComplexMatrix::from_rows(&[vec![c(a, 0.0), b], vec![b.conj(), c(d, 0.0)]]).unwrap();
        let mid = (a + d) / 2.0;
        let rad = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
        let ev = hermitian_eigenvalues(&m, HERMITIAN_TOL).unwrap();
        assert!((ev[0] - (mid - rad)).abs() < 1e-14);
        assert!((ev[1] - (mid + rad)).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            hermitian_eigenvalues(&m, HERMITIAN_TOL),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            hermitian_eigenvalues(&ComplexMatrix::zeros(2, 3), HERMITIAN_TOL),
            Err(Error::NotSquare { .. })
        ));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n * n).prop_map(move |v| {
            ComplexMatrix::from_vec(n, n, v.into_iter().map(|(r, i)| c(r, i)).collect()).unwrap()
        })
    }

    /// Small integer entries keep every product exact.
    fn arb_int_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec((-8i32..8, -8i32..8), n * n).prop_map(move |v| {
            let data = v.into_iter().map(|(r, i)| c(r as f64, i as f64)).collect();
            ComplexMatrix::from_vec(n, n, data).unwrap()
        })
    }

    fn arb_hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        arb_matrix(n).prop_map(|m| {
            let mut h = m.clone();
            h.add_assign_unchecked(&adjoint(&m));
            h
        })
    }

    /// Independent oracle: nalgebra's Hermitian eigensolver.
    fn oracle_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
        let n = m.rows();
        let na = nalgebra::DMatrix::from_fn(n, n, |i, j| m[(i, j)]);
        let mut ev: Vec<f64> = na.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    proptest! {
        #[test]
        fn kron_is_associative(a in arb_int_matrix(2), b in arb_int_matrix(3), d in arb_int_matrix(2)) {
            prop_assert_eq!(kron(&kron(&a, &b), &d), kron(&a, &kron(&b, &d)));
        }

        #[test]
        fn adjoint_reverses_products(a in arb_matrix(3), b in arb_matrix(3)) {
            let lhs = adjoint(&mat_mul(&a, &b).unwrap());
            let rhs = mat_mul(&adjoint(&b), &adjoint(&a)).unwrap();
            prop_assert!(frobenius_distance(&lhs, &rhs).unwrap() < 1e-14);
        }

        #[test]
        fn eigenvalues_sum_to_trace(h in arb_hermitian(6)) {
            let ev = hermitian_eigenvalues(&h, HERMITIAN_TOL).unwrap();
            let tr = trace(&h).unwrap().re;
            prop_assert!((ev.iter().sum::<f64>() - tr).abs() <= 1e-10);
            prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn rotations_reconstruct_input(h in arb_hermitian(6)) {
            let eig = jacobi_eigen(&h, HERMITIAN_TOL).unwrap();
            let d = ComplexMatrix::from_diag(
                &eig.values.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>(),
            );
            let vdv = mat_mul(&mat_mul(&eig.vectors, &d).unwrap(), &adjoint(&eig.vectors)).unwrap();
            let err = frobenius_distance(&vdv, &h).unwrap();
            prop_assert!(err <= 1e-10 * h.frobenius_norm(), "reconstruction error {err:e}");
        }

        #[test]
        fn eigenvalues_agree_with_oracle(h in arb_hermitian(6)) {
            let ours = hermitian_eigenvalues(&h, HERMITIAN_TOL).unwrap();
            let theirs = oracle_eigenvalues(&h);
            let scale = h.frobenius_norm().max(1.0);
            for (x, y) in ours.iter().zip(&theirs) {
                prop_assert!((x - y).abs() <= 1e-12 * scale, "{x} vs {y}");
            }
        }
    }
}
