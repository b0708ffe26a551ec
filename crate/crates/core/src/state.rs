//! Initial qubit–qutrit state seen by an inertial and an accelerated observer.
//!
//! Basis ordering is qubit-major: `|i, a⟩` has flat index `3·i + a` with the
//! qubit `i ∈ {0, 1}` and the qutrit `a ∈ {0, 1, 2}`.

use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigenvalues, trace, ComplexMatrix, HERMITIAN_TOL};

pub const DIM: usize = 6;

/// Tolerance for the trace, Hermiticity and positivity checks on states.
pub const STATE_TOL: f64 = 1e-10;

/// Flat index for qubit level `i` and qutrit level `a`.
pub const fn basis_index(qubit: usize, qutrit: usize) -> usize {
    3 * qubit + qutrit
}

/// Dimensionless acceleration parameter `r ∈ [0, π/4]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Acceleration(f64);

impl Acceleration {
    pub const MAX: f64 = FRAC_PI_4;

    pub fn new(r: f64) -> Result<Self> {
        if (0.0..=Self::MAX).contains(&r) {
            Ok(Self(r))
        } else {
            Err(Error::OutOfRange {
                name: "r",
                value: r,
                min: 0.0,
                max: Self::MAX,
            })
        }
    }

    pub fn r(self) -> f64 {
        self.0
    }
}

/// 6×6 Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

/// Worst-case violations of the density-matrix conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    pub trace_error: f64,
    pub hermiticity: f64,
    pub min_eigenvalue: f64,
}

impl StateDiagnostics {
    pub fn of(m: &ComplexMatrix) -> Result<Self> {
        let tr = trace(m)?;
        let hermiticity = m.hermiticity_residual()?;
        let min_eigenvalue = hermitian_eigenvalues(m, HERMITIAN_TOL.max(hermiticity))?[0];
        Ok(Self {
            trace_error: (tr - c(1.0, 0.0)).norm(),
            hermiticity,
            min_eigenvalue,
        })
    }

    pub fn check(&self, tol: f64) -> std::result::Result<(), String> {
        if self.trace_error > tol {
            Err(format!("|trace - 1| = {:e}", self.trace_error))
        } else if self.hermiticity > tol {
            Err(format!("Hermiticity residual {:e}", self.hermiticity))
        } else if self.min_eigenvalue < -tol {
            Err(format!("minimum eigenvalue {:e}", self.min_eigenvalue))
        } else {
            Ok(())
        }
    }
}

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.rows() != DIM || m.cols() != DIM {
            return Err(Error::DimensionMismatch(format!(
                "density matrix must be {DIM}x{DIM}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        StateDiagnostics::of(&m)?
            .check(STATE_TOL)
            .map_err(Error::Consistency)?;
        Ok(Self(m))
    }

    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        debug_assert_eq!((m.rows(), m.cols()), (DIM, DIM));
        Self(m)
    }

    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix::identity(DIM).scaled_real(1.0 / DIM as f64))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }
}

/// ½[cos²r (|01⟩+|10⟩)(⟨01|+⟨10|) + sin²r (|02⟩⟨02| + |12⟩⟨12|)].
pub fn initial_state(acc: Acceleration) -> DensityMatrix {
    let (s, co) = acc.r().sin_cos();
    let half_cos2 = c(0.5 * co * co, 0.0);
    let half_sin2 = c(0.5 * s * s, 0.0);
    let mut m = ComplexMatrix::zeros(DIM, DIM);
    let correlated = [basis_index(0, 1), basis_index(1, 0)];
    for &i in &correlated {
        for &j in &correlated {
            m[(i, j)] = half_cos2;
        }
    }
    m[(basis_index(0, 2), basis_index(0, 2))] = half_sin2;
    m[(basis_index(1, 2), basis_index(1, 2))] = half_sin2;
    DensityMatrix(m)
}
