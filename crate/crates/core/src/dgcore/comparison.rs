//! Comparison of the square-zero rows with the cone complexes in `A/F^ℕ`.
//!
//! For objects `x, y` the top row is `A(x, y) --0--> A(x, Fy)` in horizontal
//! degrees 0 and 1, and the bottom row is
//!
//! ```text
//! O(Fx, y) --d₋₁--> O(x, y) ⊕ O(Fx, Fy) --d₀--> O(x, Fy)
//! d₋₁(h)    = (h ∘ ε′_x, ε′_y ∘ h)
//! d₀(f, g)  = ε′_y ∘ f − g ∘ ε′_x
//! ```
//!
//! with `O = A/F^ℕ`. The vertical maps are `(π′, π′ ∘ F)` and `π′`. Both
//! horizontal maps raise weight by one, so the rows split into strands of
//! constant `weight − horizontal degree`; strand `g` involves weights up to
//! `g + 1` and is checked for `−1 ≤ g ≤ N − 2`, so that no weight above
//! `N − 1` enters.

use alloc::vec::Vec;

use super::orbit::{orbit_n, GradedOrbitCategory};
use super::{basis_vec, DgEndofunctor, FiniteDgCategory};
use crate::error::{Error, Result};
use crate::field::{self, Field, Mat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairComparison {
    pub x: usize,
    pub y: usize,
    pub d_minus1_injective: bool,
    /// Induced map on horizontal `H⁻¹`, `H⁰`, `H¹` is an isomorphism.
    pub iso: [bool; 3],
    /// The vertical maps commute with the horizontal differentials.
    pub commutes: bool,
    /// First `(strand, horizontal degree)` that failed.
    pub first_failure: Option<(i64, i64)>,
}

impl PairComparison {
    pub fn passed(&self) -> bool {
        self.d_minus1_injective && self.commutes && self.iso.iter().all(|&b| b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub bound: usize,
    pub pairs: Vec<PairComparison>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(PairComparison::passed)
    }
}

/// A three-term complex `C₋₁ → C₀ → C₁` with both maps.
struct ThreeTerm<E> {
    dims: [usize; 3],
    d: [Mat<E>; 2],
}

impl<E: Clone + PartialEq + core::fmt::Debug + core::fmt::Display> ThreeTerm<E> {
    fn cycles<F: Field<Elem = E>>(&self, k: &F, h: usize) -> Vec<Vec<E>> {
        if h == 2 {
            return (0..self.dims[2]).map(|i| basis_vec(k, self.dims[2], i)).collect();
        }
        field::kernel(k, &self.d[h])
    }

    fn boundaries<F: Field<Elem = E>>(&self, k: &F, h: usize) -> Vec<Vec<E>> {
        if h == 0 {
            return Vec::new();
        }
        field::column_basis(k, &self.d[h - 1])
    }
}

/// Whether `phi` induces an isomorphism `H^h(top) → H^h(bottom)`.
fn induces_iso<F: Field>(k: &F, top: &ThreeTerm<F::Elem>, bottom: &ThreeTerm<F::Elem>, phi: &Mat<F::Elem>, h: usize) -> bool {
    let zt = top.cycles(k, h);
    let bt = top.boundaries(k, h);
    let zb = bottom.cycles(k, h);
    let bb = bottom.boundaries(k, h);
    let h_top = zt.len() - bt.len();
    let h_bottom = zb.len() - bb.len();
    if h_top != h_bottom {
        return false;
    }
    let n = bottom.dims[h];
    let images: Vec<Vec<F::Elem>> = zt.iter().map(|z| phi.apply(k, z)).collect();
    let mut all = bb.clone();
    all.extend(images);
    field::rank(k, &Mat::from_columns(n, &all)) - bb.len() == h_top
}

pub fn comparison_map_check<F: Field>(
    a: &FiniteDgCategory<F>,
    f: &DgEndofunctor<F::Elem>,
    bound: usize,
) -> Result<ComparisonReport> {
    if bound < 2 {
        return Err(Error::TruncationTooSmall { bound, required: 2 });
    }
    let o = orbit_n(a, f, bound)?;
    let n = a.object_count();
    let mut pairs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            pairs.push(check_pair(a, f, &o, x, y, bound));
        }
    }
    Ok(ComparisonReport { bound, pairs })
}

fn check_pair<F: Field>(
    a: &FiniteDgCategory<F>,
    f: &DgEndofunctor<F::Elem>,
    o: &GradedOrbitCategory<F>,
    x: usize,
    y: usize,
    bound: usize,
) -> PairComparison {
    let k = a.field();
    let c = o.category();
    let (fx, fy) = (f.object(x), f.object(y));
    let mut report = PairComparison {
        x,
        y,
        d_minus1_injective: true,
        iso: [true; 3],
        commutes: true,
        first_failure: None,
    };
    for g in -1..bound as i64 - 1 {
        // Bottom-row coordinates for this strand.
        let weight = |w: i64, p: usize, q: usize| -> Vec<usize> {
            if w < 0 || w as usize > bound {
                Vec::new()
            } else {
                o.weight_range(p, q, w as usize).collect()
            }
        };
        let b_m1 = weight(g - 1, fx, y);
        let b_0a = weight(g, x, y);
        let b_0b = weight(g, fx, fy);
        let b_1 = weight(g + 1, x, fy);
        let restrict = |v: &[F::Elem], idx: &[usize]| -> Vec<F::Elem> { idx.iter().map(|&i| v[i].clone()).collect() };

        let d_m1_cols: Vec<Vec<F::Elem>> = b_m1
            .iter()
            .map(|&i| {
                let h = basis_vec(k, c.dim(fx, y), i);
                let mut v = restrict(&o.pre_epsilon(x, y, &h), &b_0a);
                v.extend(restrict(&o.post_epsilon(fx, y, &h), &b_0b));
                v
            })
            .collect();
        let mid = b_0a.len() + b_0b.len();
        let d0_cols: Vec<Vec<F::Elem>> = b_0a
            .iter()
            .map(|&i| restrict(&o.post_epsilon(x, y, &basis_vec(k, c.dim(x, y), i)), &b_1))
            .chain(b_0b.iter().map(|&i| {
                let v = o.pre_epsilon(x, fy, &basis_vec(k, c.dim(fx, fy), i));
                restrict(&v, &b_1).iter().map(|e| k.neg(e)).collect()
            }))
            .collect();
        let bottom = ThreeTerm {
            dims: [b_m1.len(), mid, b_1.len()],
            d: [Mat::from_columns(mid, &d_m1_cols), Mat::from_columns(b_1.len(), &d0_cols)],
        };

        // Top row: A(x, y) in strand 0, A(x, Fy) in strand −1.
        let t0 = if g == 0 { a.dim(x, y) } else { 0 };
        let t1 = if g == -1 { a.dim(x, fy) } else { 0 };
        let top = ThreeTerm {
            dims: [0, t0, t1],
            d: [Mat::zeros(k, t0, 0), Mat::zeros(k, t1, t0)],
        };
        let phi0_cols: Vec<Vec<F::Elem>> = (0..t0)
            .map(|i| {
                let e = basis_vec(k, a.dim(x, y), i);
                let mut v = restrict(&o.pi_prime(x, y, &e), &b_0a);
                v.extend(restrict(&o.pi_prime(fx, fy, &f.apply(k, x, y, &e)), &b_0b));
                v
            })
            .collect();
        let phi1_cols: Vec<Vec<F::Elem>> = (0..t1)
            .map(|i| restrict(&o.pi_prime(x, fy, &basis_vec(k, a.dim(x, fy), i)), &b_1))
            .collect();
        let phi = [
            Mat::zeros(k, b_m1.len(), 0),
            Mat::from_columns(mid, &phi0_cols),
            Mat::from_columns(b_1.len(), &phi1_cols),
        ];

        let fail = |hdeg: i64, r: &mut PairComparison| {
            if r.first_failure.is_none() {
                r.first_failure = Some((g, hdeg));
            }
        };
        // d₀ ∘ φ₀ = φ₁ ∘ 0
        let square = bottom.d[1].mul(k, &phi[1]).expect("shapes agree");
        if !square.is_zero(k) {
            report.commutes = false;
            fail(0, &mut report);
        }
        if field::rank(k, &bottom.d[0]) < bottom.dims[0] {
            report.d_minus1_injective = false;
            fail(-1, &mut report);
        }
        for h in 0..3 {
            if !induces_iso(k, &top, &bottom, &phi[h], h) {
                report.iso[h] = false;
                fail(h as i64 - 1, &mut report);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn passes_on_examples() {
        let k = Rationals;
        for a in [field_object(k), arrow(k), two_points(k), dual_numbers(k), contractible_extra(k)] {
            let r = comparison_map_check(&a, &DgEndofunctor::identity(&a), 4).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn passes_for_swap_and_scaling() {
        let k = PrimeField::new(7).unwrap();
        let a = two_points(k);
        let swap = DgEndofunctor::new(
            &a,
            alloc::vec![1, 0],
            [((0, 0), Mat::identity(&k, 1)), ((1, 1), Mat::identity(&k, 1))].into_iter().collect(),
        )
        .unwrap();
        assert!(comparison_map_check(&a, &swap, 3).unwrap().passed());

        let d = dual_numbers(k);
        let mut m = Mat::identity(&k, 2);
        m.set(1, 1, k.from_i64(3));
        let f = DgEndofunctor::new(&d, alloc::vec![0], [((0, 0), m)].into_iter().collect()).unwrap();
        assert!(comparison_map_check(&d, &f, 3).unwrap().passed());
    }

    #[test]
    fn bound_too_small() {
        let a = field_object(Rationals);
        assert_eq!(
            comparison_map_check(&a, &DgEndofunctor::identity(&a), 1),
            Err(Error::TruncationTooSmall { bound: 1, required: 2 })
        );
    }
}
