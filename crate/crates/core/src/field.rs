//! Linear algebra over a field: the rationals or a prime field.
//!
//! Matrices act on column vectors. A [`Field`] value carries whatever context
//! its elements need (the modulus, for prime fields), so every operation takes
//! the field explicitly.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactla::IntMatrix;

pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_int(&self, v: &BigInt) -> Self::Elem;
    /// Image of a rational number; fails when the denominator vanishes.
    fn from_rational(&self, v: &BigRational) -> Result<Self::Elem>;
    /// Characteristic, `0` for the rationals.
    fn characteristic(&self) -> u64;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_int(&BigInt::from(v))
    }

    /// `(-1)^k`.
    fn sign(&self, k: i64) -> Self::Elem {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_int(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_rational(&self, v: &BigRational) -> Result<BigRational> {
        Ok(v.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// `Z/p` for a prime `p < 2^32`, so products fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Elements of a prime field, in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp(pub u64);

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        Fp(0)
    }
    fn one(&self) -> Fp {
        Fp(1)
    }
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        Fp((a.0 + b.0) % self.p)
    }
    fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        Fp((a.0 + self.p - b.0) % self.p)
    }
    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        Fp(a.0 * b.0 % self.p)
    }
    fn neg(&self, a: &Fp) -> Fp {
        Fp((self.p - a.0) % self.p)
    }
    fn inv(&self, a: &Fp) -> Option<Fp> {
        if a.0 == 0 {
            return None;
        }
        // Fermat: a^(p-2).
        let (mut base, mut exp, mut acc) = (a.0, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(Fp(acc))
    }
    fn is_zero(&self, a: &Fp) -> bool {
        a.0 == 0
    }
    fn from_int(&self, v: &BigInt) -> Fp {
        let r = v.mod_floor(&BigInt::from(self.p));
        Fp(r.to_u64().expect("residue fits in u64"))
    }
    fn from_rational(&self, v: &BigRational) -> Result<Fp> {
        let den = self.from_int(v.denom());
        let inv = self
            .inv(&den)
            .ok_or_else(|| Error::NotRepresentable(alloc::format!("{v}")))?;
        Ok(self.mul(&self.from_int(v.numer()), &inv))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// Dense matrix over a field, row-major.
#[derive(Clone, PartialEq)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Matrix with the given vectors as columns; `rows` fixes the shape when
    /// the list is empty.
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn submatrix(&self, rows: core::ops::Range<usize>, cols: core::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }
}

impl<E: Clone + fmt::Display> fmt::Debug for Mat<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (k, x) in self.row(i).iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<E: Clone> Mat<E> {
    pub fn zeros<F: Field<Elem = E>>(k: &F, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| k.zero())
    }

    pub fn identity<F: Field<Elem = E>>(k: &F, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { k.one() } else { k.zero() })
    }

    pub fn from_int_matrix<F: Field<Elem = E>>(k: &F, m: &IntMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| k.from_int(&m[(i, j)]))
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, k: &F) -> bool {
        self.data.iter().all(|x| k.is_zero(x))
    }

    pub fn mul<F: Field<Elem = E>>(&self, k: &F, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if k.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !k.is_zero(b) {
                        let v = k.add(out.get(i, j), &k.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply<F: Field<Elem = E>>(&self, k: &F, v: &[E]) -> Vec<E> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(k.zero(), |acc, (a, b)| k.add(&acc, &k.mul(a, b)))
            })
            .collect()
    }

    pub fn add<F: Field<Elem = E>>(&self, k: &F, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| k.add(a, b))
    }

    pub fn sub<F: Field<Elem = E>>(&self, k: &F, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| k.sub(a, b))
    }

    pub fn scale<F: Field<Elem = E>>(&self, k: &F, c: &E) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| k.mul(c, self.get(i, j)))
    }

    pub fn minus_identity<F: Field<Elem = E>>(&self, k: &F) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            let x = self.get(i, j);
            if i == j {
                k.sub(x, &k.one())
            } else {
                x.clone()
            }
        }))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&E, &E) -> E) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            f(self.get(i, j), other.get(i, j))
        }))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(k: &F, m: &Mat<F::Elem>) -> (Mat<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !k.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = k.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in 0..a.cols {
            let v = k.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || k.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in 0..a.cols {
                let v = k.sub(a.get(i, j), &k.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(k: &F, m: &Mat<F::Elem>) -> usize {
    rref(k, m).1.len()
}

/// Basis of `{x : m·x = 0}`.
pub fn kernel<F: Field>(k: &F, m: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(k, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v: Vec<F::Elem> = (0..m.cols).map(|_| k.zero()).collect();
            v[fc] = k.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(r.get(row, fc));
            }
            v
        })
        .collect()
}

/// A basis of the column space, chosen among the columns of `m`.
pub fn column_basis<F: Field>(k: &F, m: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (_, pivots) = rref(k, m);
    pivots.into_iter().map(|c| m.column(c)).collect()
}

/// Solves `m·x = b`, returning one solution if any exists.
pub fn solve<F: Field>(k: &F, m: &Mat<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let aug = m.hstack(&Mat::from_columns(m.rows, &[b.to_vec()])).ok()?;
    let (r, pivots) = rref(k, &aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x: Vec<F::Elem> = (0..m.cols).map(|_| k.zero()).collect();
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, m.cols).clone();
    }
    Some(x)
}

/// Inverse of a square matrix, if it exists.
pub fn inverse<F: Field>(k: &F, m: &Mat<F::Elem>) -> Option<Mat<F::Elem>> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let aug = m.hstack(&Mat::identity(k, n)).ok()?;
    let (r, pivots) = rref(k, &aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return if n == 0 { Some(Mat::zeros(k, 0, 0)) } else { None };
    }
    Some(r.submatrix(0..n, n..2 * n))
}

/// A subquotient `Z / B` of a vector space, with `B ⊆ Z` given by spanning
/// sets. Coordinates of classes are taken against a fixed complement of `B`
/// inside `Z`.
#[derive(Clone, Debug)]
pub struct Subquotient<E> {
    ambient: usize,
    /// basis of B followed by complement representatives
    basis: Vec<Vec<E>>,
    boundary_dim: usize,
}

impl<E: Clone + PartialEq + fmt::Debug + fmt::Display> Subquotient<E> {
    pub fn new<F: Field<Elem = E>>(
        k: &F,
        ambient: usize,
        cycles: &[Vec<E>],
        boundaries: &[Vec<E>],
    ) -> Self {
        let b = column_basis(k, &Mat::from_columns(ambient, boundaries));
        let boundary_dim = b.len();
        let mut all = b;
        all.extend_from_slice(cycles);
        let basis = column_basis(k, &Mat::from_columns(ambient, &all));
        debug_assert!(basis[..boundary_dim.min(basis.len())].len() == boundary_dim);
        Self {
            ambient,
            basis,
            boundary_dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len() - self.boundary_dim
    }

    /// Representatives of a basis of the quotient.
    pub fn representatives(&self) -> &[Vec<E>] {
        &self.basis[self.boundary_dim..]
    }

    /// Coordinates of the class of `z`; `None` if `z` is not a cycle.
    pub fn class_of<F: Field<Elem = E>>(&self, k: &F, z: &[E]) -> Option<Vec<E>> {
        let m = Mat::from_columns(self.ambient, &self.basis);
        let x = solve(k, &m, z)?;
        Some(x[self.boundary_dim..].to_vec())
    }
}

/// Parses `"3"`, `"-1/2"` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidSpec(alloc::format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `true` when the rational is an integer.
pub fn is_integral(q: &BigRational) -> bool {
    q.denom().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn prime_field_arithmetic() {
        let k = PrimeField::new(7).unwrap();
        assert_eq!(k.inv(&Fp(3)), Some(Fp(5)));
        assert_eq!(k.neg(&Fp(0)), Fp(0));
        assert_eq!(k.from_i64(-1), Fp(6));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(k.from_rational(&half).unwrap(), Fp(4));
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        let k2 = PrimeField::new(2).unwrap();
        assert!(k2.from_rational(&half).is_err());
    }

    #[test]
    fn rank_and_kernel() {
        let k = Rationals;
        let m = Mat::from_fn(2, 3, |i, j| q((i * 3 + j) as i64));
        assert_eq!(rank(&k, &m), 2);
        let ker = kernel(&k, &m);
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&k, &ker[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let m = IntMatrix::from_i64_rows(&[[2, 0], [0, 3]]);
        assert_eq!(rank(&Rationals, &Mat::from_int_matrix(&Rationals, &m)), 2);
        let k = PrimeField::new(3).unwrap();
        assert_eq!(rank(&k, &Mat::from_int_matrix(&k, &m)), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let k = Rationals;
        let m = Mat::from_int_matrix(&k, &IntMatrix::from_i64_rows(&[[2, 1], [1, 1]]));
        let inv = inverse(&k, &m).unwrap();
        assert_eq!(m.mul(&k, &inv).unwrap(), Mat::identity(&k, 2));
        let sing = Mat::from_int_matrix(&k, &IntMatrix::from_i64_rows(&[[1, 2], [2, 4]]));
        assert!(inverse(&k, &sing).is_none());
    }

    #[test]
    fn subquotient_of_two_term_complex() {
        // Z = span(e0, e1), B = span(e0 + e1) inside Q^2.
        let k = Rationals;
        let sq = Subquotient::new(
            &k,
            2,
            &[vec![q(1), q(0)], vec![q(0), q(1)]],
            &[vec![q(1), q(1)]],
        );
        assert_eq!(sq.dim(), 1);
        let a = sq.class_of(&k, &[q(1), q(0)]).unwrap();
        let b = sq.class_of(&k, &[q(0), q(-1)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
