use num_bigint::BigInt;
use num_rational::BigRational;
use orbitk_core::exactla::rank;
use orbitk_core::field::{self, Field, Mat, Rationals};
use orbitk_core::mukai::{
    curve_model, curve_orbit_kh0, k3_model, line_bundle_hp, line_bundle_hp_map, p1_model,
    spherical_k0_map, spherical_k0_orbit, spherical_projection, CohomologyModel, CurveK0,
};
use orbitk_core::{AbPresentation, FgAbGroup, IntMatrix};
use proptest::prelude::*;

type Q = BigRational;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec((0..n, 0..n, -2i64..=2), 0..8).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, c) in ops {
            if i != j {
                m.add_row_multiple(i, j, &BigInt::from(c));
            }
        }
        m
    })
}

fn with_v(m: CohomologyModel, v: Vec<Q>) -> CohomologyModel {
    let n = m.dim();
    let mut one = vec![Q::from_integer(0.into()); n];
    one[0] = Q::from_integer(1.into());
    m.with_class("ch_E", v).unwrap().with_class("sqrt_Td", one).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn projection_is_scaled_idempotent(g in 0usize..3, raw in proptest::collection::vec(-4i64..=4, 6)) {
        let k = Rationals;
        let base = curve_model(g, 1);
        let n = base.dim();
        let v: Vec<Q> = (0..n).map(|i| k.from_i64(raw[i % raw.len()])).collect();
        let m = with_v(base, v.clone());
        let p = spherical_projection(&m).unwrap();
        let vv = m.pair(&v, &v);
        prop_assert_eq!(p.mul(&k, &p).unwrap(), p.scale(&k, &vv));
        // Every column is a multiple of v.
        let span = Mat::from_columns(n, std::slice::from_ref(&v));
        for j in 0..n {
            let stacked = span.hstack(&Mat::from_columns(n, &[p.column(j)])).unwrap();
            prop_assert!(field::rank(&k, &stacked) <= 1);
        }
    }

    #[test]
    fn spherical_k0_rank_at_most_one(
        (chi, e) in (1usize..5).prop_flat_map(|m| (
            proptest::collection::vec(-5i64..=5, m),
            proptest::collection::vec(-5i64..=5, m),
        ))
    ) {
        let f = spherical_k0_map(&ints(&chi), &ints(&e)).unwrap();
        prop_assert!(rank(f.matrix()) <= 1);
    }

    #[test]
    fn spherical_k0_basis_change(
        (chi, e, p) in (1usize..5).prop_flat_map(|m| (
            proptest::collection::vec(-5i64..=5, m),
            proptest::collection::vec(-5i64..=5, m),
            unimodular(m),
        ))
    ) {
        // e transforms by P, chi by P⁻ᵀ; the map becomes P·M·P⁻¹.
        let (chi, e) = (ints(&chi), ints(&e));
        let new_e = p.mul_vec(&e).unwrap();
        let p_inv = {
            let k = Rationals;
            let inv = field::inverse(&k, &Mat::from_int_matrix(&k, &p)).unwrap();
            IntMatrix::from_rows(
                (0..inv.rows()).map(|i| inv.row(i).iter().map(|x| x.to_integer()).collect()).collect(),
                p.cols(),
            ).unwrap()
        };
        let new_chi = p_inv.transpose().mul_vec(&chi).unwrap();
        prop_assert_eq!(
            spherical_k0_orbit(&chi, &e).unwrap(),
            spherical_k0_orbit(&new_chi, &new_e).unwrap()
        );
    }

    #[test]
    fn curve_even_keeps_rank(torsion in proptest::collection::vec(2i64..8, 0..3), l in proptest::collection::vec(-6i64..=6, 4), n in 0i64..3) {
        let orders: Vec<BigInt> = torsion.iter().map(|&t| BigInt::from(t)).collect();
        let pic = FgAbGroup::from_orders(1, &orders).presentation();
        let l: Vec<BigInt> = ints(&l[..pic.generators()]);
        let c = CurveK0::new(pic, l).unwrap();
        prop_assert!(curve_orbit_kh0(&c, 2 * n).unwrap().computed.rank() >= 1);
    }

    #[test]
    fn line_bundle_maps_multiply(d1 in -5i64..=5, d2 in -5i64..=5, g in 0usize..3) {
        let k = Rationals;
        let m1 = curve_model(g, d1);
        let m2 = curve_model(g, d2);
        let a = m1.multiplication_matrix(m1.class("ch_L").unwrap());
        let b = m2.multiplication_matrix(m2.class("ch_L").unwrap());
        let prod = m1.multiply(m1.class("ch_L").unwrap(), m2.class("ch_L").unwrap());
        prop_assert_eq!(a.mul(&k, &b).unwrap(), m1.multiplication_matrix(&prod));
    }
}

#[test]
fn trivial_bundle_gives_zero_map() {
    for m in [p1_model(0), curve_model(2, 0), k3_model()] {
        let m = m.clone().with_class("ch_L", m.unit().to_vec()).unwrap();
        let (even, odd) = line_bundle_hp_map(&m, 0).unwrap();
        assert!(even.is_zero(&Rationals) && odd.is_zero(&Rationals));
    }
}

#[test]
fn genus_family_six_term() {
    // Oracle: ranks of the explicit matrices f_even − Id = [[0,0],[d,0]], f_odd − Id = 0.
    let k = Rationals;
    for g in 0..=5 {
        for d in 1..=5 {
            let hp = line_bundle_hp(&curve_model(g, d), 0).unwrap();
            let mut even = Mat::zeros(&k, 2, 2);
            even.set(1, 0, k.from_i64(d));
            let r_even = field::rank(&k, &even);
            let want = (2 - r_even) + 2 * g;
            assert_eq!((hp.plus, hp.minus), (want, want), "g = {g}, d = {d}");
        }
    }
}

#[test]
fn curve_odd_branch_is_flagged() {
    let c = CurveK0::new(AbPresentation::free(1), ints(&[1])).unwrap();
    let r = curve_orbit_kh0(&c, 1).unwrap();
    assert_eq!(r.computed.to_string(), "Z/4");
    assert_eq!(r.product_formula.to_string(), "Z/2");
    assert_eq!(r.warnings[0].code, "product-formula-mismatch");
}
