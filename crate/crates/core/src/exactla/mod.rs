//! Exact linear algebra over the integers.
//!
//! Everything here is pure and allocation-only: Smith and Hermite normal
//! forms with transforms, ranks, kernel lattices and cokernel groups.

mod hnf;
mod matrix;
mod snf;

use alloc::vec::Vec;

use num_traits::{One, Zero};

pub use hnf::{hnf, HnfDecomposition, Lattice};
pub use matrix::IntMatrix;
pub use snf::{snf, snf_diagonal, SnfDecomposition};

use crate::abgroup::FgAbGroup;

/// `Z^rows / column-span(a)` in invariant-factor form.
pub fn cokernel_presentation(a: &IntMatrix) -> FgAbGroup {
    let d = snf_diagonal(a);
    let factors: Vec<_> = (0..a.rows().min(a.cols()))
        .map(|i| d[(i, i)].clone())
        .filter(|x| !x.is_zero())
        .collect();
    let free = a.rows() - factors.len();
    FgAbGroup::from_canonical_parts(
        free,
        factors.into_iter().filter(|d| !d.is_one()).collect(),
    )
}

/// Basis of the integer kernel `{x : a·x = 0}`, as the columns of the result.
///
/// The basis is returned in Hermite form so that equal kernels give equal
/// matrices.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let n = a.cols();
    let dec = hnf(&a.transpose());
    let r = dec.rank();
    // Rows r.. of U annihilate A^T from the left.
    let rows: Vec<Vec<_>> = (r..n).map(|i| dec.u.row(i).to_vec()).collect();
    let k = IntMatrix::from_rows(rows, n).expect("rows of U have length n");
    let canon = hnf(&k);
    let mut out = IntMatrix::zeros(n, canon.rank());
    for j in 0..canon.rank() {
        for i in 0..n {
            out[(i, j)] = canon.h[(j, i)].clone();
        }
    }
    out
}

pub fn rank(a: &IntMatrix) -> usize {
    hnf(a).rank()
}

/// Whether every entry of `a` is zero except possibly the diagonal.
pub fn is_diagonal(a: &IntMatrix) -> bool {
    (0..a.rows()).all(|i| (0..a.cols()).all(|j| i == j || a[(i, j)].is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use num_bigint::BigInt;

    #[test]
    fn cokernel_examples() {
        let k = IntMatrix::from_i64_rows(&[[-2, 1], [-1, -1]]);
        assert_eq!(cokernel_presentation(&k).to_string(), "Z/3");
        assert_eq!(cokernel_presentation(&IntMatrix::zeros(2, 2)).to_string(), "Z^2");
        let kr = IntMatrix::from_i64_rows(&[[0, 3], [-3, -9]]);
        assert_eq!(cokernel_presentation(&kr).to_string(), "Z/3 (+) Z/3");
    }

    #[test]
    fn cokernel_of_empty_maps() {
        assert_eq!(cokernel_presentation(&IntMatrix::zeros(0, 0)).to_string(), "0");
        assert_eq!(cokernel_presentation(&IntMatrix::zeros(3, 0)).to_string(), "Z^3");
        assert_eq!(cokernel_presentation(&IntMatrix::zeros(0, 2)).to_string(), "0");
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&IntMatrix::identity(2)).cols(), 0);
        assert_eq!(kernel_basis(&IntMatrix::zeros(1, 2)).cols(), 2);
        let k = kernel_basis(&IntMatrix::from_i64_rows(&[[2, -2]]));
        assert_eq!(k, IntMatrix::from_i64_rows(&[[1], [1]]));
    }

    #[test]
    fn kernel_is_saturated() {
        // The kernel of [2, 4] is spanned by (2, -1), not by a multiple.
        let k = kernel_basis(&IntMatrix::from_i64_rows(&[[2, 4]]));
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        assert_eq!(v[0].clone() * 2 + v[1].clone() * 4, BigInt::zero());
        assert!(num_integer::Integer::gcd(&v[0], &v[1]).is_one());
    }
}
