//! Range and row-space inclusion tests.
//!
//! `R(a) ⊆ R(b)` is decided as `rank([b | a]) == rank(b)`, which keeps this
//! module independent of the generalized-inverse machinery. The projector
//! characterization `b·b†·a == a` is exercised as a cross-check in tests.

use crate::error::{Error, Result};
use crate::ratmat::Matrix;

/// `R(a) ⊆ R(b)`: every column of `a` lies in the column space of `b`.
pub fn range_included(a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension {
            op: "range_included",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(b.hstack(a)?.rank() == b.rank())
}

/// `R(aᵀ) ⊆ R(bᵀ)`: every row of `a` lies in the row space of `b`.
pub fn rowspace_included(a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.cols() != b.cols() {
        return Err(Error::Dimension {
            op: "rowspace_included",
            left: a.shape(),
            right: b.shape(),
        });
    }
    range_included(&a.transpose(), &b.transpose())
}

/// `R(aᵀ) = R(a)` (an EP matrix).
pub fn is_range_symmetric(a: &Matrix) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "is_range_symmetric",
            shape: a.shape(),
        });
    }
    let t = a.transpose();
    Ok(range_included(a, &t)? && range_included(&t, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix;

    #[test]
    fn range_examples() {
        let a = matrix![[1, 2], [0, 3], [1, 1]];
        assert!(range_included(&a, &a).unwrap());
        assert!(range_included(&matrix![[1], [1]], &matrix![[1, 0], [1, 0]]).unwrap());
        let d = matrix![[-1, -1], [0, 0]];
        let c = matrix![[2, -1], [-1, 2]];
        assert!(range_included(&d, &c).unwrap());
        assert!(!range_included(&c, &d).unwrap());
    }

    #[test]
    fn rowspace_examples() {
        let b = matrix![[1, 1], [1, 1]];
        assert!(rowspace_included(&Matrix::zeros(3, 2), &b).unwrap());
        assert!(rowspace_included(&matrix![[-1, -1], [0, 0]], &b).unwrap());
        assert!(!rowspace_included(&Matrix::identity(2), &matrix![[1, 1], [0, 0]]).unwrap());
    }

    #[test]
    fn range_symmetry_examples() {
        assert!(is_range_symmetric(&matrix![[1, 2], [2, -5]]).unwrap());
        assert!(!is_range_symmetric(&matrix![[0, 1], [0, 0]]).unwrap());
        assert!(is_range_symmetric(&matrix![["1/2", "1/2"], [-2, 1]]).unwrap());
    }

    #[test]
    fn shape_errors() {
        let a = Matrix::zeros(2, 2);
        assert!(range_included(&a, &Matrix::zeros(3, 2)).is_err());
        assert!(rowspace_included(&a, &Matrix::zeros(2, 3)).is_err());
        assert!(matches!(
            is_range_symmetric(&Matrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }
}
