//! Grothendieck groups of cluster categories and Kleinian singularities.
//!
//! For an acyclic quiver `Q` with Coxeter matrix `Φ`, the `n`-cluster
//! category is the orbit of `D^b(kQ)` under `τ⁻¹Σⁿ`, which acts on `K₀` by
//! `(−1)ⁿΦ`. Its `K₀` is therefore `coker((−1)ⁿΦ − Id)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::abgroup::{FgAbGroup, GroupHom};
use crate::error::{Error, Result};
use crate::exactla::{cokernel_presentation, IntMatrix};
use crate::field::{Field, Mat, Rationals};
use crate::orbit_triangle::{orbit_groups, DegreeData, InvariantSpec, OrbitDegreeResult};
use crate::quiver::Quiver;
use crate::warning::Warning;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterK0 {
    pub group: FgAbGroup,
    /// `(−1)ⁿΦ − Id`, the presentation matrix of `group`.
    pub matrix: IntMatrix,
    pub warnings: Vec<Warning>,
}

/// `(−1)ⁿΦ` for the quiver.
pub fn signed_coxeter(q: &Quiver, n: i64) -> IntMatrix {
    let phi = q.coxeter_matrix();
    if n.rem_euclid(2) == 0 {
        phi
    } else {
        phi.neg()
    }
}

/// `K₀` of the `n`-cluster category of `q`.
///
/// For `n = 0` the orbit category need not be triangulated outside Dynkin
/// type; the group is still computed and a warning is attached.
pub fn cluster_k0(q: &Quiver, n: u64) -> ClusterK0 {
    let matrix = signed_coxeter(q, n as i64)
        .minus_identity()
        .expect("Coxeter matrix is square");
    let mut warnings = Vec::new();
    if n == 0 {
        warnings.push(Warning::new(
            "n0-not-triangulated",
            "the 0-cluster category may fail to be triangulated unless the quiver is of Dynkin type A, D or E",
        ));
    }
    ClusterK0 {
        group: cokernel_presentation(&matrix),
        matrix,
        warnings,
    }
}

/// Orbit long exact sequence with `E_d(A) = E_d(k)^m` on the simple-module
/// basis and automorphism `(−1)ⁿΦ` acting blockwise.
///
/// Only the groups of `template` are used; its automorphisms are ignored
/// because the functor acts on `E(k)^m` through an integer matrix.
pub fn cluster_triangle(
    q: &Quiver,
    n: i64,
    template: &InvariantSpec,
) -> Result<Vec<OrbitDegreeResult>> {
    let phi = signed_coxeter(q, n);
    let m = q.vertex_count();
    let mut degrees = BTreeMap::new();
    for (d, data) in template.stored_degrees() {
        let lifted = match data {
            DegreeData::Integral(f) => {
                let group = f.source().power(m);
                let auto = phi.kronecker(&IntMatrix::identity(f.source().generators()));
                DegreeData::Integral(GroupHom::endomorphism(group, auto)?)
            }
            DegreeData::Linear(a) => DegreeData::Linear(rational_block(&phi, a.rows())),
        };
        degrees.insert(d, lifted);
    }
    let spec = InvariantSpec::new(degrees, template.flags(), template.field())?;
    orbit_groups(&spec)
}

fn rational_block(phi: &IntMatrix, dim: usize) -> Mat<BigRational> {
    let k = Rationals;
    let big = phi.kronecker(&IntMatrix::identity(dim));
    Mat::from_fn(big.rows(), big.cols(), |i, j| k.from_int(&big[(i, j)]))
}

/// The `s × s` matrix presenting `K₀` of the Kleinian singularity
/// `x^{s+1} + yz`: first column `(−2, −1, …, −1)`, `1` on the
/// superdiagonal, `−1` on the diagonal after the first entry.
pub fn kleinian_matrix(s: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(s, s);
    for i in 0..s {
        m[(i, 0)] = BigInt::from(-1);
        if i > 0 {
            m[(i, i)] = BigInt::from(-1);
        }
        if i + 1 < s {
            m[(i, i + 1)] = BigInt::from(1);
        }
    }
    if s > 0 {
        m[(0, 0)] = BigInt::from(-2);
    }
    m
}

/// `K₀` of the Kleinian singularity of type `A_s`, computed from
/// [`kleinian_matrix`] and from the Coxeter matrix of `A_s`; the two must
/// agree.
pub fn kleinian_k0(s: usize) -> Result<FgAbGroup> {
    if s == 0 {
        return Err(Error::InvalidQuiver("Kleinian type needs s >= 1".into()));
    }
    let direct = cokernel_presentation(&kleinian_matrix(s));
    let via_coxeter = cluster_k0(&Quiver::linear(s), 0).group;
    if direct != via_coxeter {
        return Err(Error::InternalInvariant(format!(
            "Kleinian presentations disagree for s = {s}: {direct} vs {via_coxeter}"
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit_triangle::{FieldKind, SpecFlags};
    use alloc::string::ToString;

    #[test]
    fn kleinian_matrix_small_cases() {
        assert_eq!(kleinian_matrix(1), IntMatrix::from_i64_rows(&[[-2]]));
        assert_eq!(kleinian_matrix(2), IntMatrix::from_i64_rows(&[[-2, 1], [-1, -1]]));
        assert_eq!(
            kleinian_matrix(3),
            IntMatrix::from_i64_rows(&[[-2, 1, 0], [-1, -1, 1], [-1, 0, -1]])
        );
    }

    #[test]
    fn kleinian_groups() {
        assert_eq!(kleinian_k0(1).unwrap().to_string(), "Z/2");
        assert_eq!(kleinian_k0(2).unwrap().to_string(), "Z/3");
        assert_eq!(kleinian_k0(7).unwrap().to_string(), "Z/8");
        for s in 1..=30 {
            assert_eq!(kleinian_k0(s).unwrap(), FgAbGroup::cyclic(s as i64 + 1));
        }
        assert!(kleinian_k0(0).is_err());
    }

    #[test]
    fn cluster_k0_examples() {
        let kr = Quiver::preset("kronecker3").unwrap();
        let r = cluster_k0(&kr, 1);
        assert_eq!(r.group.to_string(), "Z/3 (+) Z/3");
        assert_eq!(r.matrix, IntMatrix::from_i64_rows(&[[0, 3], [-3, -9]]));
        assert!(r.warnings.is_empty());

        let a2 = Quiver::preset("A2").unwrap();
        assert!(cluster_k0(&a2, 1).group.is_trivial());
        assert_eq!(cluster_k0(&a2, 0).warnings.len(), 1);
    }

    #[test]
    fn torsion_order_matches_determinant() {
        for name in ["A3", "D4", "D5", "E6", "E7", "E8", "kronecker2", "kronecker4"] {
            let q = Quiver::preset(name).unwrap();
            for n in 0..4 {
                let r = cluster_k0(&q, n);
                let det = r.matrix.determinant().unwrap();
                if det != BigInt::from(0) {
                    assert_eq!(r.group.rank(), 0);
                    assert_eq!(r.group.torsion_order(), det.magnitude().clone().into());
                }
                assert_eq!(r.group, cluster_k0(&q, n + 2).group);
            }
        }
    }

    #[test]
    fn triangle_over_integers_and_fields() {
        let z0 = InvariantSpec::new(
            [(0, DegreeData::identity_on(&FgAbGroup::free(1)))].into_iter().collect(),
            SpecFlags {
                connective: true,
                ..Default::default()
            },
            None,
        )
        .unwrap();
        let res = cluster_triangle(&Quiver::linear(4), 0, &z0).unwrap();
        assert_eq!(res[0].resolved, Some(FgAbGroup::cyclic(5)));

        let one = cluster_triangle(&Quiver::linear(1), 2, &z0).unwrap();
        // A1 has Φ = −1, so n = 2 gives −1 as well; n = 1 gives Id.
        assert_eq!(one[0].resolved, Some(FgAbGroup::cyclic(2)));
        let split = cluster_triangle(&Quiver::linear(1), 1, &z0).unwrap();
        assert_eq!(split[0].resolved, Some(FgAbGroup::free(1)));
        assert_eq!(split[1].resolved, Some(FgAbGroup::free(1)));

        let k = Rationals;
        let field = InvariantSpec::new(
            [
                (0, DegreeData::Linear(Mat::identity(&k, 1))),
                (1, DegreeData::Linear(Mat::identity(&k, 1))),
            ]
            .into_iter()
            .collect(),
            SpecFlags {
                two_periodic: true,
                ..Default::default()
            },
            Some(FieldKind::Rationals),
        )
        .unwrap();
        for r in cluster_triangle(&Quiver::linear(2), 1, &field).unwrap() {
            assert!(r.resolved.unwrap().is_trivial());
        }
    }

    #[test]
    fn triangle_with_torsion_template() {
        let z2 = InvariantSpec::new(
            [(0, DegreeData::identity_on(&FgAbGroup::cyclic(2)))].into_iter().collect(),
            SpecFlags {
                connective: true,
                ..Default::default()
            },
            None,
        )
        .unwrap();
        // coker(Φ_{A3} − Id) ⊗ Z/2 = Z/4 ⊗ Z/2.
        let res = cluster_triangle(&Quiver::linear(3), 0, &z2).unwrap();
        assert_eq!(res[0].coker_piece, FgAbGroup::cyclic(2));
    }
}
