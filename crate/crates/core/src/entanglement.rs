use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, HERMITIAN_TOL};
use crate::state::{basis_index, DensityMatrix, DIM};

/// Eigenvalues above this are treated as roundoff rather than negative.
pub const NEGATIVE_THRESHOLD: f64 = -1e-12;

/// Transposes the qubit factor: `out[(i,a),(j,b)] = m[(j,a),(i,b)]`.
pub fn transpose_qubit_factor(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.rows() != DIM || m.cols() != DIM {
        return Err(Error::DimensionMismatch(format!(
            "partial transpose expects {DIM}x{DIM}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let mut out = ComplexMatrix::zeros(DIM, DIM);
    for i in 0..2 {
        for j in 0..2 {
            for a in 0..3 {
                for b in 0..3 {
                    out[(basis_index(i, a), basis_index(j, b))] =
                        m[(basis_index(j, a), basis_index(i, b))];
                }
            }
        }
    }
    Ok(out)
}

pub fn partial_transpose_qubit(rho: &DensityMatrix) -> ComplexMatrix {
    transpose_qubit_factor(rho.matrix()).expect("density matrices are 6x6")
}

/// Ascending spectrum of ρ^{T_A}.
pub fn partial_transpose_spectrum(rho: &DensityMatrix) -> Result<Vec<f64>> {
    hermitian_eigenvalues(&partial_transpose_qubit(rho), HERMITIAN_TOL)
}

/// Sum of |λ| over eigenvalues below [`NEGATIVE_THRESHOLD`].
pub fn negativity_of_spectrum(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&x| x < NEGATIVE_THRESHOLD)
        .fold(0.0, |acc, x| acc - x)
}

pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    Ok(negativity_of_spectrum(&partial_transpose_spectrum(rho)?))
}
