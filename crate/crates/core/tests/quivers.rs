use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use orbitk_core::cluster::{cluster_k0, cluster_triangle, kleinian_k0, kleinian_matrix, signed_coxeter};
use orbitk_core::exactla::cokernel_presentation;
use orbitk_core::orbit_triangle::{DegreeData, InvariantSpec, SpecFlags};
use orbitk_core::{FgAbGroup, IntMatrix, Quiver};
use proptest::prelude::*;

/// Random acyclic quiver: arrows only go from an earlier to a later vertex of
/// a hidden order, and vertices are declared in a shuffled order.
fn dag() -> impl Strategy<Value = Quiver> {
    (1usize..=7).prop_flat_map(|n| {
        (
            proptest::collection::vec(0usize..3, n * (n - 1) / 2),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
            .prop_map(move |(mult, order)| {
                let names: Vec<String> = order.iter().map(|i| format!("v{i}")).collect();
                let mut arrows = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        for _ in 0..mult[k] {
                            arrows.push((format!("v{i}"), format!("v{j}")));
                        }
                        k += 1;
                    }
                }
                Quiver::new(&names, &arrows).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cartan_is_unimodular(q in dag()) {
        prop_assert_eq!(q.cartan_matrix().determinant().unwrap().abs(), BigInt::from(1));
    }

    #[test]
    fn coxeter_is_invertible_over_z(q in dag()) {
        prop_assert_eq!(q.coxeter_matrix().determinant().unwrap().abs(), BigInt::from(1));
    }

    #[test]
    fn cluster_k0_depends_on_parity(q in dag(), n in 0u64..6) {
        prop_assert_eq!(cluster_k0(&q, n).group, cluster_k0(&q, n + 2).group);
    }

    #[test]
    fn cluster_torsion_is_determinant(q in dag(), n in 0u64..2) {
        let c = cluster_k0(&q, n);
        let det = signed_coxeter(&q, n as i64).minus_identity().unwrap().determinant().unwrap();
        if !det.is_zero() {
            prop_assert_eq!(c.group.rank(), 0);
            prop_assert_eq!(c.group.torsion_order(), det.abs());
        }
    }
}

#[test]
fn kleinian_presentations_agree() {
    for s in 1..=30 {
        let via_matrix = cokernel_presentation(&kleinian_matrix(s));
        let via_coxeter = cokernel_presentation(&Quiver::linear(s).coxeter_matrix().minus_identity().unwrap());
        assert_eq!(via_matrix, via_coxeter, "s = {s}");
        assert_eq!(kleinian_k0(s).unwrap(), FgAbGroup::cyclic(s as i64 + 1));
    }
}

#[test]
fn dynkin_zero_cluster_categories() {
    // Oracle: |det(Φ − Id)| is the number of elements of the cokernel.
    for name in ["A4", "D4", "D5", "E6", "E7", "E8"] {
        let q = Quiver::preset(name).unwrap();
        let c = cluster_k0(&q, 0);
        let det = q.coxeter_matrix().minus_identity().unwrap().determinant().unwrap();
        assert_eq!(c.group.torsion_order(), det.abs(), "{name}");
        assert_eq!(c.warnings.len(), 1);
    }
    assert_eq!(cluster_k0(&Quiver::preset("D4").unwrap(), 0).group.to_string(), "Z/2 (+) Z/2");
    assert_eq!(cluster_k0(&Quiver::preset("E8").unwrap(), 0).group.to_string(), "0");
}

#[test]
fn kronecker_three_and_a2() {
    assert_eq!(cluster_k0(&Quiver::kronecker(3), 1).group.to_string(), "Z/3 (+) Z/3");
    assert!(cluster_k0(&Quiver::kronecker(3), 1).warnings.is_empty());
    assert!(cluster_k0(&Quiver::linear(2), 1).group.is_trivial());
}

#[test]
fn single_vertex_triangle_is_fundamental() {
    let template = InvariantSpec::new(
        [(0, DegreeData::identity_on(&FgAbGroup::free(1)))].into_iter().collect(),
        SpecFlags {
            connective: true,
            ..Default::default()
        },
        None,
    )
    .unwrap();
    let q = Quiver::new(&["1"], &[]).unwrap();
    // Φ = −1 for a single vertex, so n odd gives the identity.
    let r = cluster_triangle(&q, 1, &template).unwrap();
    assert_eq!(r[0].resolved, Some(FgAbGroup::free(1)));
    assert_eq!(r[1].resolved, Some(FgAbGroup::free(1)));
    let phi = signed_coxeter(&q, 1);
    assert_eq!(phi, IntMatrix::identity(1));
}
