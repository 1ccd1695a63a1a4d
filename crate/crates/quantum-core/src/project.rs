use crate::{DensityMatrix, HermitianMatrix};

/// Frobenius-nearest density matrix to a unit-trace Hermitian matrix.
///
/// Eigendecomposes, then repairs the spectrum: walking the eigenvalues in
/// ascending order, any eigenvalue that would stay negative after absorbing
/// its share of the accumulated deficit is zeroed and its value spread
/// uniformly over the remaining (nonzero) eigenvalues. The matrix is rebuilt
/// in the original eigenbasis. Inputs whose trace deviates from 1 by more
/// than 1e-8 are rescaled to unit trace first.
pub fn project_to_physical(h: &HermitianMatrix) -> DensityMatrix {
    let trace = h.trace();
    let work = if (trace - 1.0).abs() > 1e-8 {
        h.scale(1.0 / trace)
    } else {
        h.clone()
    };

    let eig = work.eigendecompose();
    let d = eig.eigenvalues.len();
    let mut values = eig.eigenvalues.clone(); // ascending
    let mut deficit = 0.0f64;
    let mut first_kept = d;
    for i in 0..d {
        let share = deficit / (d - i) as f64;
        if values[i] + share < 0.0 {
            deficit += values[i];
            values[i] = 0.0;
        } else {
            first_kept = i;
            break;
        }
    }
    if first_kept < d {
        let share = deficit / (d - first_kept) as f64;
        for v in values.iter_mut().skip(first_kept) {
            *v += share;
        }
    }

    DensityMatrix::from_hermitian_unchecked(eig.rebuild_from_spectrum(&values))
}
