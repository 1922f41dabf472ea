//! Degreewise consequences of the orbit triangle
//! `E(A) --E(F)−Id--> E(A) → E(A/F^ℤ) → ΣE(A)`.
//!
//! An [`InvariantSpec`] presents the graded groups `E_n(A)` together with the
//! automorphisms `E_n(F)`. For each degree the long exact sequence yields
//!
//! ```text
//! 0 → coker(E_n(F) − Id) → E_n(A/F^ℤ) → ker(E_{n−1}(F) − Id) → 0
//! ```
//!
//! and the middle group is only reported when the extension is forced: the
//! kernel piece is free (so the sequence splits), either piece vanishes,
//! coefficients lie in a field, or `F` acts trivially in both degrees (the
//! fundamental theorem splits `E(A[t, t⁻¹]) ≃ E(A) ⊕ ΣE(A)`).

use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::abgroup::{AbPresentation, FgAbGroup, GroupHom};
use crate::error::{Error, Result};
use crate::exactla::IntMatrix;
use crate::field::{self, Field, Mat, PrimeField, Rationals};

/// Coefficient field for vector-space valued invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

impl FieldKind {
    fn rank(&self, m: &Mat<BigRational>) -> Result<usize> {
        match *self {
            FieldKind::Rationals => Ok(field::rank(&Rationals, m)),
            FieldKind::Prime(p) => {
                let k = PrimeField::new(p)?;
                let mut entries = Vec::with_capacity(m.rows() * m.cols());
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        entries.push(k.from_rational(m.get(i, j))?);
                    }
                }
                let reduced = Mat::from_fn(m.rows(), m.cols(), |i, j| entries[i * m.cols() + j]);
                Ok(field::rank(&k, &reduced))
            }
        }
    }
}

/// One stored degree: the group `E_n(A)` and the automorphism `E_n(F)`.
#[derive(Clone, Debug, PartialEq)]
pub enum DegreeData {
    /// Integral coefficients: an endomorphism of a presented group.
    Integral(GroupHom),
    /// Field coefficients: a square matrix of the given size. Entries are
    /// rationals, reduced into the field when it has positive characteristic.
    Linear(Mat<BigRational>),
}

impl DegreeData {
    pub fn zero_integral() -> Self {
        DegreeData::Integral(GroupHom::identity(AbPresentation::free(0)))
    }

    pub fn zero_linear() -> Self {
        DegreeData::Linear(Mat::zeros(&Rationals, 0, 0))
    }

    /// Identity automorphism on the canonical presentation of `group`.
    pub fn identity_on(group: &FgAbGroup) -> Self {
        DegreeData::Integral(GroupHom::identity(group.presentation()))
    }

    pub fn dim(&self) -> usize {
        match self {
            DegreeData::Integral(f) => f.source().generators(),
            DegreeData::Linear(m) => m.rows(),
        }
    }

    /// The same underlying group with automorphism `c · Id`.
    fn with_scalar_auto(&self, c: i64) -> Self {
        match self {
            DegreeData::Integral(f) => DegreeData::Integral(
                GroupHom::identity(f.source().clone()).scale(&BigInt::from(c)),
            ),
            DegreeData::Linear(m) => {
                let k = Rationals;
                DegreeData::Linear(Mat::identity(&k, m.rows()).scale(&k, &k.from_i64(c)))
            }
        }
    }

    /// `E_n(A)` for integral data; for linear data, `Z^dim` stands in for the
    /// vector space.
    pub fn group(&self) -> FgAbGroup {
        match self {
            DegreeData::Integral(f) => f.source().canonical(),
            DegreeData::Linear(m) => FgAbGroup::free(m.rows()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpecFlags {
    /// `E_n = 0` for every degree outside the stored window.
    pub connective: bool,
    /// Degrees are read modulo 2; only degrees 0 and 1 may be stored.
    pub two_periodic: bool,
    /// Caller's assertion that `KH` agrees with algebraic K-theory. Recorded,
    /// never checked.
    pub regular: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantSpec {
    degrees: BTreeMap<i64, DegreeData>,
    flags: SpecFlags,
    field: Option<FieldKind>,
}

impl InvariantSpec {
    /// Validates every stored degree: data kind matches the coefficients and
    /// each automorphism is invertible.
    pub fn new(
        degrees: BTreeMap<i64, DegreeData>,
        flags: SpecFlags,
        field: Option<FieldKind>,
    ) -> Result<Self> {
        if flags.connective && flags.two_periodic {
            return Err(Error::InvalidSpec(
                "a spec cannot be both connective and two-periodic".into(),
            ));
        }
        if let Some(FieldKind::Prime(p)) = field {
            PrimeField::new(p)?;
        }
        for (&n, data) in &degrees {
            if flags.two_periodic && !(0..=1).contains(&n) {
                return Err(Error::InvalidSpec(alloc::format!(
                    "two-periodic specs store degrees 0 and 1 only, found {n}"
                )));
            }
            match (data, field) {
                (DegreeData::Integral(f), None) => {
                    if !f.is_endomorphism() {
                        return Err(Error::InvalidSpec(alloc::format!(
                            "degree {n}: automorphism must be an endomorphism"
                        )));
                    }
                    if !f.is_automorphism() {
                        return Err(Error::NonInvertibleAuto { degree: n });
                    }
                }
                (DegreeData::Linear(m), Some(kind)) => {
                    if m.rows() != m.cols() {
                        return Err(Error::NotSquare {
                            rows: m.rows(),
                            cols: m.cols(),
                        });
                    }
                    if kind.rank(m)? != m.rows() {
                        return Err(Error::NonInvertibleAuto { degree: n });
                    }
                }
                _ => {
                    return Err(Error::InvalidSpec(alloc::format!(
                        "degree {n}: data does not match the coefficient type"
                    )))
                }
            }
        }
        Ok(Self {
            degrees,
            flags,
            field,
        })
    }

    pub fn flags(&self) -> SpecFlags {
        self.flags
    }

    pub fn field(&self) -> Option<FieldKind> {
        self.field
    }

    pub fn stored_degrees(&self) -> impl Iterator<Item = (i64, &DegreeData)> {
        self.degrees.iter().map(|(&n, d)| (n, d))
    }

    /// `(E_n(A), E_n(F))` in any degree the flags determine.
    pub fn entry(&self, n: i64) -> Result<Cow<'_, DegreeData>> {
        let key = if self.flags.two_periodic {
            n.rem_euclid(2)
        } else {
            n
        };
        if let Some(d) = self.degrees.get(&key) {
            return Ok(Cow::Borrowed(d));
        }
        if self.flags.two_periodic || self.flags.connective {
            return Ok(Cow::Owned(self.zero_entry()));
        }
        Err(Error::DegreeOutOfWindow { degree: n })
    }

    fn zero_entry(&self) -> DegreeData {
        match self.field {
            None => DegreeData::zero_integral(),
            Some(_) => DegreeData::zero_linear(),
        }
    }

    /// `E_n(A)` in canonical form.
    pub fn group(&self, n: i64) -> Result<FgAbGroup> {
        Ok(self.entry(n)?.group())
    }

    /// The same groups with every automorphism replaced by `c · Id`.
    pub fn with_scalar_autos(&self, c: i64) -> Self {
        Self {
            degrees: self
                .degrees
                .iter()
                .map(|(&n, d)| (n, d.with_scalar_auto(c)))
                .collect(),
            flags: self.flags,
            field: self.field,
        }
    }

    /// Degrees for which [`orbit_groups`] reports a result.
    pub fn output_degrees(&self) -> Vec<i64> {
        if self.flags.two_periodic {
            return alloc::vec![0, 1];
        }
        if self.flags.connective {
            let top = self.degrees.keys().next_back().copied().unwrap_or(-1).max(-1);
            return (0..=top + 1).collect();
        }
        self.degrees
            .keys()
            .copied()
            .filter(|n| self.degrees.contains_key(&(n - 1)))
            .collect()
    }
}

/// The two pieces of `E_n(A/F^ℤ)` and, when forced, the group itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDegreeResult {
    pub degree: i64,
    /// `coker(E_n(F) − Id)`
    pub coker_piece: FgAbGroup,
    /// `ker(E_{n−1}(F) − Id)`
    pub ker_piece: FgAbGroup,
    pub resolved: Option<FgAbGroup>,
    /// Set exactly when `resolved` is absent.
    pub ambiguous: bool,
    /// Pieces are vector spaces, encoded as free groups of rank = dimension.
    pub field_coefficients: bool,
}

impl OrbitDegreeResult {
    fn assemble(degree: i64, coker: FgAbGroup, ker: FgAbGroup, field: bool, split: bool) -> Self {
        let forced = split || field || ker.is_free() || coker.is_trivial();
        let resolved = forced.then(|| coker.direct_sum(&ker));
        Self {
            degree,
            coker_piece: coker,
            ker_piece: ker,
            ambiguous: resolved.is_none(),
            resolved,
            field_coefficients: field,
        }
    }
}

/// `E_n(F) − Id` is zero. A finitely generated group is Hopfian, so the
/// image vanishes exactly when the cokernel is the whole group.
fn acts_trivially(data: &DegreeData, coker: &FgAbGroup) -> bool {
    match data {
        DegreeData::Integral(f) => *coker == f.source().canonical(),
        DegreeData::Linear(m) => coker.rank() == m.rows(),
    }
}

fn coker_and_ker_of_difference(data: &DegreeData, field: Option<FieldKind>) -> Result<(FgAbGroup, FgAbGroup)> {
    match data {
        DegreeData::Integral(f) => {
            let d = f.minus_identity()?;
            Ok((d.cokernel(), d.kernel()))
        }
        DegreeData::Linear(m) => {
            let kind = field.ok_or_else(|| Error::InvalidSpec("linear data without a field".into()))?;
            let r = kind.rank(&m.minus_identity(&Rationals)?)?;
            let free = FgAbGroup::free(m.rows() - r);
            Ok((free.clone(), free))
        }
    }
}

/// `E_n(A/F^ℤ)` pieces in a single degree.
pub fn orbit_degree(spec: &InvariantSpec, n: i64) -> Result<OrbitDegreeResult> {
    let here = spec.entry(n)?;
    let below = spec.entry(n - 1)?;
    let (coker, _) = coker_and_ker_of_difference(&here, spec.field)?;
    let (below_coker, ker) = coker_and_ker_of_difference(&below, spec.field)?;
    let split = acts_trivially(&here, &coker) && acts_trivially(&below, &below_coker);
    Ok(OrbitDegreeResult::assemble(n, coker, ker, spec.field.is_some(), split))
}

/// Results for every degree in [`InvariantSpec::output_degrees`], ascending.
pub fn orbit_groups(spec: &InvariantSpec) -> Result<Vec<OrbitDegreeResult>> {
    spec.output_degrees()
        .into_iter()
        .map(|n| orbit_degree(spec, n))
        .collect()
}

/// The `F = Id` case: every degree resolves to `E_n ⊕ E_{n−1}`.
pub fn fundamental_split(spec: &InvariantSpec) -> Result<Vec<OrbitDegreeResult>> {
    orbit_groups(&spec.with_scalar_autos(1))
}

/// Orbit by the `n`-fold suspension, which acts as `(−1)^n · Id`.
pub fn suspension_orbit(spec: &InvariantSpec, n: i64) -> Result<Vec<OrbitDegreeResult>> {
    let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
    orbit_groups(&spec.with_scalar_autos(sign))
}

/// `KH_0` of the orbit category for a regular input: `coker(K_0(F) − Id)`.
/// Negative degrees vanish; positive ones are not determined by `K_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kh0Orbit {
    pub kh0: FgAbGroup,
}

impl Kh0Orbit {
    pub fn kh(&self, n: i64) -> Option<FgAbGroup> {
        match n {
            _ if n < 0 => Some(FgAbGroup::trivial()),
            0 => Some(self.kh0.clone()),
            _ => None,
        }
    }
}

pub fn kh0_orbit(k0: &AbPresentation, f: &GroupHom) -> Result<Kh0Orbit> {
    if f.source() != k0 || f.target() != k0 {
        return Err(Error::IllFormedHom("K_0 map must be an endomorphism of K_0".into()));
    }
    if !f.is_automorphism() {
        return Err(Error::NonInvertibleAuto { degree: 0 });
    }
    Ok(Kh0Orbit {
        kh0: f.minus_identity()?.cokernel(),
    })
}

/// Dimensions of `HP^+` and `HP^-` of the orbit category.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HpDims {
    pub plus: usize,
    pub minus: usize,
}

/// Six-term sequence over a field, from the automorphisms `HP^±(F)`.
pub fn hp_sixterm_over<F: Field>(
    k: &F,
    even_dim: usize,
    odd_dim: usize,
    f_even: &Mat<F::Elem>,
    f_odd: &Mat<F::Elem>,
) -> Result<HpDims> {
    check_square(f_even, even_dim)?;
    check_square(f_odd, odd_dim)?;
    hp_from_ranks(
        even_dim,
        odd_dim,
        field::rank(k, &f_even.minus_identity(k)?),
        field::rank(k, &f_odd.minus_identity(k)?),
    )
}

/// Six-term sequence over the rationals.
pub fn hp_sixterm(
    even_dim: usize,
    odd_dim: usize,
    f_even: &Mat<BigRational>,
    f_odd: &Mat<BigRational>,
) -> Result<HpDims> {
    hp_sixterm_over(&Rationals, even_dim, odd_dim, f_even, f_odd)
}

/// Six-term sequence from the maps `HP^±(F) − Id` directly.
pub fn hp_sixterm_from_differences(
    d_even: &Mat<BigRational>,
    d_odd: &Mat<BigRational>,
) -> Result<HpDims> {
    let k = Rationals;
    let (e, o) = (d_even.rows(), d_odd.rows());
    check_square(d_even, e)?;
    check_square(d_odd, o)?;
    hp_from_ranks(e, o, field::rank(&k, d_even), field::rank(&k, d_odd))
}

fn check_square<E: Clone>(m: &Mat<E>, n: usize) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::ShapeMismatch {
            left: (m.rows(), m.cols()),
            right: (n, n),
        });
    }
    Ok(())
}

fn hp_from_ranks(even: usize, odd: usize, rank_even: usize, rank_odd: usize) -> Result<HpDims> {
    // coker and ker of an endomorphism of V both have dimension dim V − rank.
    let (c_even, k_even) = (even - rank_even, even - rank_even);
    let (c_odd, k_odd) = (odd - rank_odd, odd - rank_odd);
    Ok(HpDims {
        plus: c_even + k_odd,
        minus: c_odd + k_even,
    })
}

/// For a result computed with automorphism `−Id`: the cokernel piece is
/// `E_m ⊗ Z/2` and the kernel piece is the 2-torsion of `E_{m−1}`.
pub fn universal_coeff_check(
    result: &OrbitDegreeResult,
    e_m: &FgAbGroup,
    e_m_minus_1: &FgAbGroup,
) -> bool {
    let two = BigInt::from(2);
    result.coker_piece == e_m.tensor_cyclic(&two) && result.ker_piece == e_m_minus_1.m_torsion(&two)
}

/// Convenience constructor: `Z^rank ⊕ torsion` with an integer matrix
/// automorphism on the canonical generators.
pub fn integral_degree(group: &FgAbGroup, auto: IntMatrix) -> Result<DegreeData> {
    Ok(DegreeData::Integral(GroupHom::endomorphism(group.presentation(), auto)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use alloc::string::ToString;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    fn connective(entries: &[(i64, DegreeData)]) -> InvariantSpec {
        InvariantSpec::new(
            entries.iter().cloned().collect(),
            SpecFlags {
                connective: true,
                ..Default::default()
            },
            None,
        )
        .unwrap()
    }

    #[test]
    fn regular_degree_zero_is_a_cokernel() {
        let phi = Quiver::preset("A3").unwrap().coxeter_matrix();
        let spec = connective(&[(0, integral_degree(&FgAbGroup::free(3), phi).unwrap())]);
        let r = orbit_degree(&spec, 0).unwrap();
        assert_eq!(r.coker_piece, g("Z/4"));
        assert!(r.ker_piece.is_trivial());
        assert_eq!(r.resolved, Some(g("Z/4")));
        assert!(!r.ambiguous);
        // KH_{-1} vanishes.
        assert!(orbit_degree(&spec, -1).unwrap().resolved.unwrap().is_trivial());
    }

    #[test]
    fn identity_functor_splits() {
        let spec = connective(&[
            (0, DegreeData::identity_on(&g("Z^2"))),
            (1, DegreeData::identity_on(&g("Z/2 + Z/4"))),
        ]);
        let res = fundamental_split(&spec).unwrap();
        let got: Vec<_> = res.iter().map(|r| r.resolved.clone().unwrap().to_string()).collect();
        assert_eq!(got, ["Z^2", "Z^2 (+) Z/2 (+) Z/4", "Z/2 (+) Z/4"]);
    }

    #[test]
    fn minus_one_on_z_in_every_degree() {
        let minus = integral_degree(&FgAbGroup::free(1), IntMatrix::from_i64_rows(&[[-1]])).unwrap();
        let spec = InvariantSpec::new(
            [(0, minus.clone()), (1, minus)].into_iter().collect(),
            SpecFlags {
                two_periodic: true,
                ..Default::default()
            },
            None,
        )
        .unwrap();
        for r in orbit_groups(&spec).unwrap() {
            assert_eq!(r.coker_piece, g("Z/2"));
            assert!(r.ker_piece.is_trivial());
            assert_eq!(r.resolved, Some(g("Z/2")));
        }
    }

    #[test]
    fn torsion_kernel_is_ambiguous() {
        // E_0 = Z, E_{-1}... connective, E_1 = Z/2 with -Id: ker(-2) on Z/2 is Z/2.
        let spec = connective(&[
            (0, integral_degree(&g("Z"), IntMatrix::from_i64_rows(&[[-1]])).unwrap()),
            (1, integral_degree(&g("Z/2"), IntMatrix::from_i64_rows(&[[-1]])).unwrap()),
        ]);
        let r = orbit_degree(&spec, 2).unwrap();
        assert_eq!(r.ker_piece, g("Z/2"));
        assert!(r.coker_piece.is_trivial());
        assert_eq!(r.resolved, Some(g("Z/2")));
        let r1 = orbit_degree(&spec, 1).unwrap();
        assert_eq!(r1.coker_piece, g("Z/2"));
        assert!(r1.ker_piece.is_trivial());
        let spec2 = connective(&[
            (0, integral_degree(&g("Z/2"), IntMatrix::from_i64_rows(&[[-1]])).unwrap()),
            (1, integral_degree(&g("Z"), IntMatrix::from_i64_rows(&[[-1]])).unwrap()),
        ]);
        let r = orbit_degree(&spec2, 1).unwrap();
        assert_eq!((r.coker_piece.to_string(), r.ker_piece.to_string()), ("Z/2".into(), "Z/2".into()));
        assert!(r.ambiguous && r.resolved.is_none());
    }

    #[test]
    fn non_invertible_auto_is_rejected() {
        let d = integral_degree(&g("Z"), IntMatrix::from_i64_rows(&[[2]])).unwrap();
        let err = InvariantSpec::new([(0, d)].into_iter().collect(), SpecFlags::default(), None);
        assert_eq!(err, Err(Error::NonInvertibleAuto { degree: 0 }));
    }

    #[test]
    fn plain_window_outside_is_an_error() {
        let spec = InvariantSpec::new(
            [(3, DegreeData::identity_on(&g("Z")))].into_iter().collect(),
            SpecFlags::default(),
            None,
        )
        .unwrap();
        assert_eq!(
            orbit_degree(&spec, 3),
            Err(Error::DegreeOutOfWindow { degree: 2 })
        );
        assert!(orbit_groups(&spec).unwrap().is_empty());
    }

    #[test]
    fn odd_suspension_pieces() {
        let spec = connective(&[
            (0, DegreeData::identity_on(&g("Z"))),
            (1, DegreeData::identity_on(&g("Z/6"))),
        ]);
        let res = suspension_orbit(&spec, 1).unwrap();
        assert_eq!(res[1].coker_piece, g("Z/2"));
        assert!(res[1].ker_piece.is_trivial());
        assert_eq!(res[2].ker_piece, g("Z/2"));
        for r in &res {
            let e = spec.group(r.degree).unwrap();
            let below = spec.group(r.degree - 1).unwrap();
            assert!(universal_coeff_check(r, &e, &below));
        }
        let even = suspension_orbit(&spec, 2).unwrap();
        assert_eq!(even[1].resolved, Some(g("Z + Z/6")));
    }

    #[test]
    fn odd_suspension_vanishes_over_q() {
        let k = Rationals;
        let spec = InvariantSpec::new(
            [(0, DegreeData::Linear(Mat::identity(&k, 3))), (1, DegreeData::Linear(Mat::identity(&k, 2)))]
                .into_iter()
                .collect(),
            SpecFlags {
                two_periodic: true,
                ..Default::default()
            },
            Some(FieldKind::Rationals),
        )
        .unwrap();
        for r in suspension_orbit(&spec, 3).unwrap() {
            assert!(r.resolved.unwrap().is_trivial());
        }
        let even: Vec<usize> = suspension_orbit(&spec, 0)
            .unwrap()
            .into_iter()
            .map(|r| r.resolved.unwrap().rank())
            .collect();
        assert_eq!(even, [5, 5]);
    }

    #[test]
    fn odd_suspension_in_characteristic_two_does_not_vanish() {
        let k = Rationals;
        let spec = InvariantSpec::new(
            [(0, DegreeData::Linear(Mat::identity(&k, 1)))].into_iter().collect(),
            SpecFlags {
                two_periodic: true,
                ..Default::default()
            },
            Some(FieldKind::Prime(2)),
        )
        .unwrap();
        let res = suspension_orbit(&spec, 1).unwrap();
        assert_eq!(res[0].resolved, Some(FgAbGroup::free(1)));
        assert_eq!(res[1].resolved, Some(FgAbGroup::free(1)));
    }

    #[test]
    fn kh0_examples() {
        let a5 = Quiver::preset("A5").unwrap().coxeter_matrix();
        let p = AbPresentation::free(5);
        let f = GroupHom::endomorphism(p.clone(), a5).unwrap();
        let r = kh0_orbit(&p, &f).unwrap();
        assert_eq!(r.kh0, g("Z/6"));
        assert_eq!(r.kh(-3), Some(FgAbGroup::trivial()));
        assert_eq!(r.kh(1), None);

        let p3 = AbPresentation::free(3);
        let id = GroupHom::identity(p3.clone());
        assert_eq!(kh0_orbit(&p3, &id).unwrap().kh0, g("Z^3"));

        let kr = Quiver::preset("kronecker3").unwrap().coxeter_matrix().neg();
        let p2 = AbPresentation::free(2);
        let f = GroupHom::endomorphism(p2.clone(), kr).unwrap();
        assert_eq!(kh0_orbit(&p2, &f).unwrap().kh0.to_string(), "Z/3 (+) Z/3");

        let bad = GroupHom::endomorphism(p2.clone(), IntMatrix::from_i64_rows(&[[2, 0], [0, 1]])).unwrap();
        assert_eq!(kh0_orbit(&p2, &bad), Err(Error::NonInvertibleAuto { degree: 0 }));
    }

    #[test]
    fn hp_sixterm_examples() {
        let k = Rationals;
        let id = |n| Mat::identity(&k, n);
        let minus = |n| Mat::identity(&k, n).scale(&k, &k.from_i64(-1));
        assert_eq!(hp_sixterm(3, 2, &id(3), &id(2)).unwrap(), HpDims { plus: 5, minus: 5 });
        assert_eq!(hp_sixterm(3, 2, &minus(3), &minus(2)).unwrap(), HpDims { plus: 0, minus: 0 });
        for gen in 0..4usize {
            for d in 1..4i64 {
                let f_even = Mat::from_int_matrix(&k, &IntMatrix::from_i64_rows(&[[1, 0], [d, 1]]));
                let dims = hp_sixterm(2, 2 * gen, &f_even, &id(2 * gen)).unwrap();
                assert_eq!(dims, HpDims { plus: 1 + 2 * gen, minus: 2 * gen + 1 });
            }
        }
        assert!(hp_sixterm(2, 0, &id(3), &id(0)).is_err());
    }

    #[test]
    fn universal_coefficient_examples() {
        let minus = |grp: &str| integral_degree(&g(grp), IntMatrix::identity(g(grp).presentation().generators()).neg()).unwrap();
        for (em, em1) in [("Z", "Z"), ("Z/4", "Z"), ("Z", "Z/6")] {
            let spec = connective(&[(0, minus(em1)), (1, minus(em))]);
            let r = orbit_degree(&spec, 1).unwrap();
            assert!(universal_coeff_check(&r, &g(em), &g(em1)), "{em} {em1}");
        }
        let spec = connective(&[(0, minus("Z")), (1, minus("Z/4"))]);
        assert_eq!(orbit_degree(&spec, 1).unwrap().coker_piece, g("Z/2"));
    }
}
