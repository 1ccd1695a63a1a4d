use nalgebra::DMatrix;
use num_complex::Complex64;
use quantum_core::HermitianMatrix;

use crate::{Error, Result};

const INVOLUTION_TOLERANCE: f64 = 1e-10;

fn single_qubit_paulis() -> [DMatrix<Complex64>; 4] {
    let z = |re: f64, im: f64| Complex64::new(re, im);
    [
        DMatrix::from_row_slice(2, 2, &[z(1.0, 0.0), z(0.0, 0.0), z(0.0, 0.0), z(1.0, 0.0)]),
        DMatrix::from_row_slice(2, 2, &[z(0.0, 0.0), z(1.0, 0.0), z(1.0, 0.0), z(0.0, 0.0)]),
        DMatrix::from_row_slice(2, 2, &[z(0.0, 0.0), z(0.0, -1.0), z(0.0, 1.0), z(0.0, 0.0)]),
        DMatrix::from_row_slice(2, 2, &[z(1.0, 0.0), z(0.0, 0.0), z(0.0, 0.0), z(-1.0, 0.0)]),
    ]
}

/// The d²−1 non-identity tensor-product Pauli observables for an m-qubit
/// system, with the (Π↑, Π↓) eigenprojector pair cached per observable.
///
/// Ordering is deterministic: observables are indexed by their base-4 word
/// (I=0, X=1, Y=2, Z=3, leftmost qubit most significant), skipping the
/// all-identity word 0, so index `i` holds word `i + 1`.
#[derive(Debug, Clone)]
pub struct PauliBasis {
    num_qubits: usize,
    dim: usize,
    observables: Vec<HermitianMatrix>,
    projectors: Vec<(HermitianMatrix, HermitianMatrix)>,
}

impl PauliBasis {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if !(1..=7).contains(&num_qubits) {
            return Err(Error::QubitCountOutOfRange(num_qubits));
        }
        let singles = single_qubit_paulis();
        let dim = 1usize << num_qubits;
        let word_count = 4usize.pow(num_qubits as u32);

        let mut observables = Vec::with_capacity(word_count - 1);
        let mut projectors = Vec::with_capacity(word_count - 1);
        let half = Complex64::new(0.5, 0.0);
        for word in 1..word_count {
            let mut matrix = DMatrix::identity(1, 1);
            for qubit in 0..num_qubits {
                let digit = (word >> (2 * (num_qubits - 1 - qubit))) & 0b11;
                matrix = matrix.kronecker(&singles[digit]);
            }
            let identity = DMatrix::<Complex64>::identity(dim, dim);
            let up = (&identity + &matrix) * half;
            let down = (&identity - &matrix) * half;
            observables.push(HermitianMatrix::symmetrized(matrix));
            projectors.push((
                HermitianMatrix::symmetrized(up),
                HermitianMatrix::symmetrized(down),
            ));
        }

        Ok(Self {
            num_qubits,
            dim,
            observables,
            projectors,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Hilbert-space dimension d = 2^m.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of observables, d²−1.
    pub fn len(&self) -> usize {
        self.observables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observables.is_empty()
    }

    pub fn observable(&self, index: usize) -> Result<&HermitianMatrix> {
        self.observables.get(index).ok_or(Error::ObservableIndexOutOfRange {
            index,
            count: self.observables.len(),
        })
    }

    pub fn projectors(&self, index: usize) -> Result<&(HermitianMatrix, HermitianMatrix)> {
        self.projectors.get(index).ok_or(Error::ObservableIndexOutOfRange {
            index,
            count: self.projectors.len(),
        })
    }

    pub fn observables(&self) -> &[HermitianMatrix] {
        &self.observables
    }

    pub fn projector_pairs(&self) -> &[(HermitianMatrix, HermitianMatrix)] {
        &self.projectors
    }
}

/// Split an involution into its ±1 eigenprojectors `((I+X)/2, (I−X)/2)`.
///
/// Rejects operators with `X² ≠ I`.
pub fn eigen_projectors(x: &HermitianMatrix) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let d = x.dim();
    let squared = x.data() * x.data();
    let mut violation = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let expected = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            violation = violation.max((squared[(i, j)] - expected).norm());
        }
    }
    if violation > INVOLUTION_TOLERANCE {
        return Err(Error::NotInvolutive(violation));
    }

    let identity = HermitianMatrix::identity(d);
    let mut up = identity.clone();
    up.add_scaled_assign(1.0, x);
    let mut down = identity;
    down.add_scaled_assign(-1.0, x);
    Ok((up.scale(0.5), down.scale(0.5)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_basis_is_x_y_z() {
        let basis = PauliBasis::new(1).unwrap();
        assert_eq!(basis.len(), 3);
        assert_eq!(basis.dim(), 2);
        let x = basis.observable(0).unwrap();
        assert_eq!(x.data()[(0, 1)], Complex64::new(1.0, 0.0));
        let y = basis.observable(1).unwrap();
        assert_eq!(y.data()[(0, 1)], Complex64::new(0.0, -1.0));
        let z = basis.observable(2).unwrap();
        assert_eq!(z.data()[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(z.data()[(1, 1)], Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn two_qubit_basis_counts_and_structure() {
        let basis = PauliBasis::new(2).unwrap();
        assert_eq!(basis.len(), 15);
        for i in 0..basis.len() {
            let x = basis.observable(i).unwrap();
            assert!(x.trace().abs() < 1e-12, "traceless");
            let sq = x.data() * x.data();
            let id = DMatrix::<Complex64>::identity(4, 4);
            assert!((sq - id).norm() < 1e-12, "involution");
        }
    }

    #[test]
    fn two_qubit_spectra_are_balanced() {
        let basis = PauliBasis::new(2).unwrap();
        for i in 0..basis.len() {
            let eig = basis.observable(i).unwrap().eigendecompose();
            let plus = eig.eigenvalues.iter().filter(|&&l| (l - 1.0).abs() < 1e-10).count();
            let minus = eig.eigenvalues.iter().filter(|&&l| (l + 1.0).abs() < 1e-10).count();
            assert_eq!((plus, minus), (2, 2), "observable {i}");
        }
    }

    #[test]
    fn rejects_out_of_range_qubits() {
        assert!(matches!(PauliBasis::new(0), Err(Error::QubitCountOutOfRange(0))));
        assert!(matches!(PauliBasis::new(8), Err(Error::QubitCountOutOfRange(8))));
    }

    #[test]
    fn cached_projectors_match_definition() {
        let basis = PauliBasis::new(2).unwrap();
        for i in 0..basis.len() {
            let x = basis.observable(i).unwrap();
            let (up, down) = basis.projectors(i).unwrap();
            // X = Π↑ − Π↓ and Π↑ + Π↓ = I
            let diff = up - down;
            assert!(diff.max_abs_diff(x) < 1e-12);
            let sum = up + down;
            assert!(sum.max_abs_diff(&HermitianMatrix::identity(4)) < 1e-12);
            // idempotency
            let up_sq = HermitianMatrix::symmetrized(up.data() * up.data());
            assert!(up_sq.max_abs_diff(up) < 1e-12);
            let down_sq = HermitianMatrix::symmetrized(down.data() * down.data());
            assert!(down_sq.max_abs_diff(down) < 1e-12);
        }
    }

    #[test]
    fn eigen_projectors_of_z() {
        let basis = PauliBasis::new(1).unwrap();
        let z = basis.observable(2).unwrap();
        let (up, down) = eigen_projectors(z).unwrap();
        let expected_up = HermitianMatrix::from_real_diagonal(&[1.0, 0.0]);
        let expected_down = HermitianMatrix::from_real_diagonal(&[0.0, 1.0]);
        assert!(up.max_abs_diff(&expected_up) < 1e-14);
        assert!(down.max_abs_diff(&expected_down) < 1e-14);
    }

    #[test]
    fn eigen_projectors_of_x_are_rank_one() {
        let basis = PauliBasis::new(1).unwrap();
        let x = basis.observable(0).unwrap();
        let (up, down) = eigen_projectors(x).unwrap();
        assert!((up.trace() - 1.0).abs() < 1e-12);
        assert!((down.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_projectors_of_z_tensor_i() {
        // word ZI = 3*4 = 12 → index 11
        let basis = PauliBasis::new(2).unwrap();
        let zi = basis.observable(11).unwrap();
        assert_eq!(zi.data()[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(zi.data()[(2, 2)], Complex64::new(-1.0, 0.0));
        let (up, down) = eigen_projectors(zi).unwrap();
        assert!((up.trace() - 2.0).abs() < 1e-12, "rank 2");
        assert!((down.trace() - 2.0).abs() < 1e-12, "rank 2");
        let sum = &up + &down;
        assert!(sum.max_abs_diff(&HermitianMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn eigen_projectors_reject_non_involution() {
        let h = HermitianMatrix::from_real_diagonal(&[2.0, 1.0]);
        assert!(matches!(eigen_projectors(&h), Err(Error::NotInvolutive(_))));
    }
}
