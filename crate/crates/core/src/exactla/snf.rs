use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` in Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// The `min(rows, cols)` diagonal entries of `D`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }
}

/// Smith normal form with both transforms.
///
/// Pivots are chosen by smallest absolute value, and off-pivot entries are
/// reduced with the nearest quotient so that remainders stay within half the
/// pivot. The resulting `D` is unique: nonnegative, each entry dividing the
/// next, zeros last.
pub fn snf(a: &IntMatrix) -> SnfDecomposition {
    let (d, t) = reduce(a, true);
    let (u, v) = t.expect("transforms requested");
    SnfDecomposition { u, d, v }
}

/// The diagonal form `D` alone, skipping the transforms.
pub fn snf_diagonal(a: &IntMatrix) -> IntMatrix {
    reduce(a, false).0
}

fn reduce(a: &IntMatrix, with_transforms: bool) -> (IntMatrix, Option<(IntMatrix, IntMatrix)>) {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut uv = with_transforms.then(|| (IntMatrix::identity(m), IntMatrix::identity(n)));
    let swap_rows = |d: &mut IntMatrix, uv: &mut Option<(IntMatrix, IntMatrix)>, i: usize, k: usize| {
        d.swap_rows(i, k);
        if let Some((u, _)) = uv {
            u.swap_rows(i, k);
        }
    };
    let swap_cols = |d: &mut IntMatrix, uv: &mut Option<(IntMatrix, IntMatrix)>, j: usize, k: usize| {
        d.swap_cols(j, k);
        if let Some((_, v)) = uv {
            v.swap_cols(j, k);
        }
    };
    let add_row = |d: &mut IntMatrix, uv: &mut Option<(IntMatrix, IntMatrix)>, i: usize, k: usize, q: &BigInt| {
        d.add_row_multiple(i, k, q);
        if let Some((u, _)) = uv {
            u.add_row_multiple(i, k, q);
        }
    };
    let add_col = |d: &mut IntMatrix, uv: &mut Option<(IntMatrix, IntMatrix)>, j: usize, k: usize, q: &BigInt| {
        d.add_col_multiple(j, k, q);
        if let Some((_, v)) = uv {
            v.add_col_multiple(j, k, q);
        }
    };

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&d, t) else {
            break;
        };
        swap_rows(&mut d, &mut uv, t, pi);
        swap_cols(&mut d, &mut uv, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -nearest_quotient(&d[(i, t)], &d[(t, t)]);
                add_row(&mut d, &mut uv, i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -nearest_quotient(&d[(t, j)], &d[(t, t)]);
                add_col(&mut d, &mut uv, j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }

            if dirty {
                // A remainder is now strictly smaller than the pivot.
                let mut best: Option<(bool, usize)> = None;
                let mut best_abs = d[(t, t)].abs();
                for i in t + 1..m {
                    let x = d[(i, t)].abs();
                    if !x.is_zero() && x < best_abs {
                        best_abs = x;
                        best = Some((true, i));
                    }
                }
                for j in t + 1..n {
                    let x = d[(t, j)].abs();
                    if !x.is_zero() && x < best_abs {
                        best_abs = x;
                        best = Some((false, j));
                    }
                }
                match best {
                    Some((true, i)) => swap_rows(&mut d, &mut uv, t, i),
                    Some((false, j)) => swap_cols(&mut d, &mut uv, t, j),
                    None => {}
                }
                continue;
            }

            let pivot = d[(t, t)].clone();
            if pivot.abs().is_one() {
                break;
            }
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => add_row(&mut d, &mut uv, t, i, &BigInt::one()),
                None => break,
            }
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            if let Some((u, _)) = &mut uv {
                u.negate_row(t);
            }
        }
    }

    (d, uv)
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), &BigUint)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d[(i, j)].magnitude();
            if x.is_zero() {
                continue;
            }
            if x.is_one() {
                return Some((i, j));
            }
            if best.is_none_or(|(_, b)| x < b) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// `q` minimizing `|a - q b|`.
pub(crate) fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let twice = r.abs() * 2;
    if twice > b.abs() {
        if r.is_negative() == b.is_negative() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SnfDecomposition {
        let s = snf(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        s
    }

    #[test]
    fn kleinian_two_by_two() {
        let s = check(&IntMatrix::from_i64_rows(&[[-2, 1], [-1, -1]]));
        assert_eq!(s.diagonal(), [BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(4));
        assert_eq!(s.d, IntMatrix::identity(4));
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(2, 3));
        assert_eq!(s.d, IntMatrix::zeros(2, 3));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (2, 0)] {
            let s = check(&IntMatrix::zeros(r, c));
            assert_eq!(s.u.rows(), r);
            assert_eq!(s.v.rows(), c);
        }
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) is not in normal form; diag(1, 6) is.
        let s = check(&IntMatrix::from_i64_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.diagonal(), [BigInt::from(1), BigInt::from(6)]);
        let s = check(&IntMatrix::from_i64_rows(&[[4, 0, 0], [0, 6, 0], [0, 0, 10]]));
        assert_eq!(
            s.diagonal(),
            [BigInt::from(2), BigInt::from(2), BigInt::from(60)]
        );
    }

    #[test]
    fn nearest_quotient_rounds() {
        let q = |a: i64, b: i64| nearest_quotient(&BigInt::from(a), &BigInt::from(b));
        assert_eq!(q(7, 3), BigInt::from(2));
        assert_eq!(q(8, 3), BigInt::from(3));
        assert_eq!(q(-8, 3), BigInt::from(-3));
        assert_eq!(q(8, -3), BigInt::from(-3));
        assert_eq!(q(-7, -3), BigInt::from(2));
    }
}
