//! The square-zero extension `A ⋉ B₁` with `B₁(y, x) = A(x, Fy)[1]`.
//!
//! A morphism `x → y` is a pair `(f, s f′)` with `f ∈ A(x, y)` and
//! `f′ ∈ A(x, Fy)`; `s` lowers degree by one and `d(s b) = −s(db)`. The
//! bimodule actions are `g·(s b) = (−1)^{|g|} s(F(g) ∘ b)` and
//! `(s b)·f = s(b ∘ f)`, and composition is
//! `(g, g′) ∘ (f, f′) = (g ∘ f, g′·f + g·f′)`.

use alloc::vec::Vec;

use super::{basis_vec, zero_vec, DgEndofunctor, FiniteDgCategory, GradedComplex, Sparse};
use crate::error::Result;
use crate::field::{Field, Mat};

pub fn square_zero<F: Field>(
    a: &FiniteDgCategory<F>,
    f: &DgEndofunctor<F::Elem>,
) -> Result<FiniteDgCategory<F>> {
    f.validate(a)?;
    let k = a.field();
    let n = a.object_count();
    let minus = k.from_i64(-1);

    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (base, shifted) = (a.hom(x, y), a.hom(x, f.object(y)));
            let (p, q) = (base.dim(), shifted.dim());
            let mut degrees = base.degrees().to_vec();
            degrees.extend(shifted.degrees().iter().map(|d| d - 1));
            let mut d = Mat::zeros(k, p + q, p + q);
            for i in 0..p {
                for j in 0..p {
                    d.set(i, j, base.differential().get(i, j).clone());
                }
            }
            for i in 0..q {
                for j in 0..q {
                    d.set(p + i, p + j, k.mul(&minus, shifted.differential().get(i, j)));
                }
            }
            homs.push(GradedComplex::new(k, degrees, d)?);
        }
    }

    let sparse = |v: Vec<F::Elem>, offset: usize| -> Sparse<F::Elem> {
        v.into_iter()
            .enumerate()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(l, c)| (offset + l, c))
            .collect()
    };
    let mut table = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (fy, fz) = (f.object(y), f.object(z));
                let (pxy, qxy) = (a.dim(x, y), a.dim(x, fy));
                let (pyz, qyz) = (a.dim(y, z), a.dim(y, fz));
                let pxz = a.dim(x, z);
                let dxy = pxy + qxy;
                let mut entries = alloc::vec![Vec::new(); (pyz + qyz) * dxy];
                for gi in 0..pyz {
                    let g = basis_vec(k, pyz, gi);
                    let fg = f.apply(k, y, z, &g);
                    let sign = k.sign(a.hom(y, z).degrees()[gi]);
                    for fj in 0..pxy {
                        let v = a.compose(x, y, z, &g, &basis_vec(k, pxy, fj));
                        entries[gi * dxy + fj] = sparse(v, 0);
                    }
                    for fj in 0..qxy {
                        let v = a.compose(x, fy, fz, &fg, &basis_vec(k, qxy, fj));
                        let v = v.iter().map(|c| k.mul(&sign, c)).collect();
                        entries[gi * dxy + pxy + fj] = sparse(v, pxz);
                    }
                }
                for gi in 0..qyz {
                    let g = basis_vec(k, qyz, gi);
                    for fj in 0..pxy {
                        let v = a.compose(x, y, fz, &g, &basis_vec(k, pxy, fj));
                        entries[(pyz + gi) * dxy + fj] = sparse(v, pxz);
                    }
                }
                table.push(entries);
            }
        }
    }
    let units = (0..n)
        .map(|x| {
            let mut u = zero_vec(k, a.dim(x, x) + a.dim(x, f.object(x)));
            u[..a.dim(x, x)].clone_from_slice(a.unit(x));
            u
        })
        .collect();
    FiniteDgCategory::from_raw(k.clone(), a.objects().to_vec(), homs, table, units)
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn field_object_extension() {
        let k = Rationals;
        let a = field_object(k);
        let e = square_zero(&a, &DgEndofunctor::identity(&a)).unwrap();
        assert_eq!(e.hom(0, 0).dims_by_degree(), [(-1, 1), (0, 1)].into_iter().collect());
        let s = basis_vec(&k, 2, 1);
        assert_eq!(e.compose(0, 0, 0, &s, &s), zero_vec(&k, 2));
        assert_eq!(e.unit(0), &basis_vec(&k, 2, 0)[..]);
    }

    #[test]
    fn b_part_squares_to_zero() {
        let k = Rationals;
        for a in [dual_numbers(k), arrow(k), contractible_extra(k)] {
            let e = square_zero(&a, &DgEndofunctor::identity(&a)).unwrap();
            let n = a.object_count();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for i in a.dim(y, z)..e.dim(y, z) {
                            for j in a.dim(x, y)..e.dim(x, y) {
                                let v = e.compose(
                                    x,
                                    y,
                                    z,
                                    &basis_vec(&k, e.dim(y, z), i),
                                    &basis_vec(&k, e.dim(x, y), j),
                                );
                                assert!(v.iter().all(|c| k.is_zero(c)));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_by_a_nontrivial_functor() {
        let k = Rationals;
        let a = dual_numbers(k);
        let mut m = Mat::identity(&k, 2);
        m.set(1, 1, k.from_i64(3));
        let f = DgEndofunctor::new(&a, alloc::vec![0], [((0, 0), m)].into_iter().collect()).unwrap();
        let e = square_zero(&a, &f).unwrap();
        // ε · (s 1) = −s(F(ε)) = −3 s ε, while (s 1) · ε = s ε.
        let eps = basis_vec(&k, 4, 1);
        let s1 = basis_vec(&k, 4, 2);
        let mut want = zero_vec(&k, 4);
        want[3] = k.from_i64(-3);
        assert_eq!(e.compose(0, 0, 0, &eps, &s1), want);
        assert_eq!(e.compose(0, 0, 0, &s1, &eps), basis_vec(&k, 4, 3));
    }
}
