use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form `U·A = H`.
///
/// `H` is in row echelon form: the first `rank` rows are nonzero with strictly
/// increasing pivot columns, pivots are positive, and entries above a pivot
/// lie in `[0, pivot)`. The remaining rows are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfDecomposition {
    pub u: IntMatrix,
    pub h: IntMatrix,
    pub pivots: Vec<usize>,
}

impl HnfDecomposition {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn hnf(a: &IntMatrix) -> HnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;

    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let Some(p) = (r..m)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by_key(|&i| h[(i, c)].abs())
            else {
                break;
            };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -(&h[(i, c)] / &h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                clean &= h[(i, c)].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }

    HnfDecomposition { u, h, pivots }
}

/// A sublattice of `Z^n`, held as a basis in column echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    /// The lattice spanned by the columns of `generators`.
    pub fn from_generators(generators: &IntMatrix) -> Self {
        let ambient = generators.rows();
        let dec = hnf(&generators.transpose());
        let rank = dec.rank();
        let mut basis = IntMatrix::zeros(ambient, rank);
        for k in 0..rank {
            for i in 0..ambient {
                basis[(i, k)] = dec.h[(k, i)].clone();
            }
        }
        Self {
            basis,
            pivots: dec.pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Basis vectors as columns.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coordinates of `w` in the stored basis, or `None` if `w` is not in the
    /// lattice.
    pub fn coordinates(&self, w: &[BigInt]) -> Option<Vec<BigInt>> {
        if w.len() != self.ambient_dim() {
            return None;
        }
        let mut residual = w.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (k, &p) in self.pivots.iter().enumerate() {
            let (q, r) = residual[p].div_rem(&self.basis[(p, k)]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (i, x) in residual.iter_mut().enumerate() {
                    *x -= &q * &self.basis[(i, k)];
                }
            }
            coords.push(q);
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, w: &[BigInt]) -> bool {
        self.coordinates(w).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_is_echelon_and_reduced() {
        let a = IntMatrix::from_i64_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let dec = hnf(&a);
        assert_eq!(&dec.u * &a, dec.h);
        assert!(dec.u.is_unimodular());
        for (k, &p) in dec.pivots.iter().enumerate() {
            let piv = &dec.h[(k, p)];
            assert!(piv.is_positive());
            for i in 0..k {
                assert!(!dec.h[(i, p)].is_negative() && &dec.h[(i, p)] < piv);
            }
            for i in k + 1..a.rows() {
                assert!(dec.h[(i, p)].is_zero());
            }
        }
    }

    #[test]
    fn lattice_membership() {
        let gens = IntMatrix::from_i64_rows(&[[2, 0], [0, 3]]);
        let l = Lattice::from_generators(&gens);
        assert_eq!(l.rank(), 2);
        let v = |a: i64, b: i64| [BigInt::from(a), BigInt::from(b)];
        assert!(l.contains(&v(4, -3)));
        assert!(!l.contains(&v(1, 0)));
        let c = l.coordinates(&v(4, 9)).unwrap();
        let back = l.basis().mul_vec(&c).unwrap();
        assert_eq!(back, v(4, 9));
    }

    #[test]
    fn dependent_generators_collapse() {
        let gens = IntMatrix::from_i64_rows(&[[2, 4, 6], [2, 4, 6]]);
        let l = Lattice::from_generators(&gens);
        assert_eq!(l.rank(), 1);
        assert!(l.contains(&[BigInt::from(2), BigInt::from(2)]));
        assert!(!l.contains(&[BigInt::from(1), BigInt::from(1)]));
    }
}
