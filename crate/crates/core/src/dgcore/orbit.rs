//! `A/F^ℕ` truncated at a weight bound, and the colimit stages of `A/F^ℤ`.
//!
//! `(A/F^ℕ)(x, y) = ⊕_{w ≤ N} A(F^w x, y)`; the weight-`w` block is a copy of
//! `A(F^w x, y)`. The product of weights `a` and `b` is
//! `g_b ∘ F^b(f_a)` in weight `a + b`, dropped when `a + b > N`. Weights above
//! `N` form a dg ideal, so the truncation is again a dg category.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use super::{
    basis_vec, check_h0_equivalence, scatter, select_columns, select_rows, zero_vec,
    DgEndofunctor, FiniteDgCategory, GradedComplex, Sparse,
};
use crate::error::Result;
use crate::field::{self, Field, Mat, Subquotient};

#[derive(Clone, Debug)]
pub struct GradedOrbitCategory<F: Field> {
    category: FiniteDgCategory<F>,
    bound: usize,
    /// `offsets[x * n + y][w]` = first basis index of weight `w`
    offsets: Vec<Vec<usize>>,
    /// `F^0, …, F^bound`
    powers: Vec<DgEndofunctor<F::Elem>>,
    functor: DgEndofunctor<F::Elem>,
}

/// `A/F^ℕ` with weights `≤ bound`.
pub fn orbit_n<F: Field>(
    a: &FiniteDgCategory<F>,
    f: &DgEndofunctor<F::Elem>,
    bound: usize,
) -> Result<GradedOrbitCategory<F>> {
    f.validate(a)?;
    let k = a.field();
    let n = a.object_count();
    let mut powers = vec![DgEndofunctor::identity(a)];
    for p in 0..bound {
        let next = powers[p].then(k, f)?;
        powers.push(next);
    }
    let obj = |w: usize, x: usize| powers[w].object(x);

    let mut homs = Vec::with_capacity(n * n);
    let mut offsets = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mut degrees = Vec::new();
            let mut offs = vec![0];
            for w in 0..=bound {
                degrees.extend_from_slice(a.hom(obj(w, x), y).degrees());
                offs.push(degrees.len());
            }
            let dim = degrees.len();
            let mut d = Mat::zeros(k, dim, dim);
            for w in 0..=bound {
                let block = a.hom(obj(w, x), y).differential();
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        d.set(offs[w] + i, offs[w] + j, block.get(i, j).clone());
                    }
                }
            }
            homs.push(GradedComplex::new(k, degrees, d)?);
            offsets.push(offs);
        }
    }

    let mut table: Vec<Vec<Sparse<F::Elem>>> = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (oxy, oyz, oxz) = (&offsets[x * n + y], &offsets[y * n + z], &offsets[x * n + z]);
                let dxy = oxy[bound + 1];
                let mut entries = vec![Vec::new(); oyz[bound + 1] * dxy];
                for b in 0..=bound {
                    for a_w in 0..=bound - b {
                        // g ∈ A(F^b y, z), f ∈ A(F^a x, y), F^b f ∈ A(F^{a+b} x, F^b y)
                        let (fax, fby) = (obj(a_w, x), obj(b, y));
                        let lift = powers[b].hom_map(fax, y);
                        let src = obj(a_w + b, x);
                        for j in 0..oxy[a_w + 1] - oxy[a_w] {
                            let fj = lift.column(j);
                            for i in 0..oyz[b + 1] - oyz[b] {
                                let gi = basis_vec(k, a.dim(fby, z), i);
                                let v = a.compose(src, fby, z, &gi, &fj);
                                entries[(oyz[b] + i) * dxy + oxy[a_w] + j] = v
                                    .into_iter()
                                    .enumerate()
                                    .filter(|(_, c)| !k.is_zero(c))
                                    .map(|(l, c)| (oxz[a_w + b] + l, c))
                                    .collect();
                            }
                        }
                    }
                }
                table.push(entries);
            }
        }
    }
    let units = (0..n)
        .map(|x| {
            let mut u = zero_vec(k, offsets[x * n + x][bound + 1]);
            u[..a.dim(x, x)].clone_from_slice(a.unit(x));
            u
        })
        .collect();
    let category = FiniteDgCategory::from_raw(k.clone(), a.objects().to_vec(), homs, table, units)?;
    Ok(GradedOrbitCategory {
        category,
        bound,
        offsets,
        powers,
        functor: f.clone(),
    })
}

impl<F: Field> GradedOrbitCategory<F> {
    pub fn category(&self) -> &FiniteDgCategory<F> {
        &self.category
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `F(x)` in the underlying category.
    pub fn functor_object(&self, x: usize) -> usize {
        self.functor.object(x)
    }

    /// `F^p(x)`, for `p ≤ bound`.
    pub fn power_object(&self, p: usize, x: usize) -> usize {
        self.powers[p].object(x)
    }

    fn offsets(&self, x: usize, y: usize) -> &[usize] {
        &self.offsets[x * self.category.object_count() + y]
    }

    /// Basis indices of the weight-`w` block, a copy of `A(F^w x, y)`.
    pub fn weight_range(&self, x: usize, y: usize, w: usize) -> Range<usize> {
        let o = self.offsets(x, y);
        o[w]..o[w + 1]
    }

    pub fn weight_of(&self, x: usize, y: usize, i: usize) -> usize {
        let o = self.offsets(x, y);
        (0..=self.bound).find(|&w| i < o[w + 1]).expect("index in range")
    }

    pub fn weight_dims(&self, x: usize, y: usize) -> Vec<usize> {
        (0..=self.bound).map(|w| self.weight_range(x, y, w).len()).collect()
    }

    /// Basis indices of weight at most `w`.
    pub fn indices_up_to(&self, x: usize, y: usize, w: usize) -> Vec<usize> {
        (0..self.offsets(x, y)[(w + 1).min(self.bound + 1)]).collect()
    }

    /// `ε′_x ∈ (A/F^ℕ)(x, Fx)`: the identity of `Fx` in weight 1.
    pub fn epsilon(&self, x: usize) -> Vec<F::Elem> {
        let k = self.category.field();
        let fx = self.functor_object(x);
        let mut v = zero_vec(k, self.category.dim(x, fx));
        if self.bound >= 1 {
            let r = self.weight_range(x, fx, 1);
            let len = r.len();
            v[r].clone_from_slice(&self.category.unit(fx)[..len]);
        }
        v
    }

    /// `π′`: the weight-0 inclusion of `A(x, y)`.
    pub fn pi_prime(&self, x: usize, y: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = zero_vec(self.category.field(), self.category.dim(x, y));
        out[..v.len()].clone_from_slice(v);
        out
    }

    /// `h ∘ ε′_x` for `h ∈ (A/F^ℕ)(Fx, y)`.
    pub fn pre_epsilon(&self, x: usize, y: usize, h: &[F::Elem]) -> Vec<F::Elem> {
        let fx = self.functor_object(x);
        self.category.compose(x, fx, y, h, &self.epsilon(x))
    }

    /// `ε′_y ∘ h` for `h ∈ (A/F^ℕ)(x, y)`.
    pub fn post_epsilon(&self, x: usize, y: usize, h: &[F::Elem]) -> Vec<F::Elem> {
        let fy = self.functor_object(y);
        self.category.compose(x, y, fy, &self.epsilon(y), h)
    }

    /// `F^p` applied blockwise: `(A/F^ℕ)(x, y) → (A/F^ℕ)(F^p x, F^p y)`.
    pub fn map_power(&self, p: usize, x: usize, y: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let k = self.category.field();
        let (px, py) = (self.power_object(p, x), self.power_object(p, y));
        let mut out = zero_vec(k, self.category.dim(px, py));
        for w in 0..=self.bound {
            let src = self.weight_range(x, y, w);
            let dst = self.weight_range(px, py, w);
            let wx = self.power_object(w, x);
            let image = self.powers[p].apply(k, wx, y, &v[src]);
            out[dst].clone_from_slice(&image);
        }
        out
    }
}

/// Stage dimensions of one hom of the `ℤ`-orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageReport {
    pub x: usize,
    pub y: usize,
    /// `stage_dims[p]` = dimensions by degree of `(A/F^ℕ)(x, F^p y)` in
    /// weights `≤ N + p`.
    pub stage_dims: Vec<BTreeMap<i64, usize>>,
    pub transitions_injective: bool,
    /// The last two stages have equal dimension in every degree.
    pub stabilized: bool,
}

/// Truncated colimit stages `(A/F^ℕ)(x, F^p y)`, `p ≤ P`, along
/// `h ↦ ε′_{F^p y} ∘ h`.
///
/// Stage `p` keeps weights `≤ N + p`, so stage `p` sits inside stage `p + 1`
/// and the window covers Laurent degrees `−p ≤ w − p ≤ N`. The colimit of the
/// truncated system is its last stage.
#[derive(Clone, Debug)]
pub struct OrbitZ<F: Field> {
    orbit: GradedOrbitCategory<F>,
    window: usize,
    stages: usize,
    reports: Vec<StageReport>,
}

pub fn orbit_z<F: Field>(
    a: &FiniteDgCategory<F>,
    f: &DgEndofunctor<F::Elem>,
    window: usize,
    stages: usize,
) -> Result<OrbitZ<F>> {
    let orbit = orbit_n(a, f, window + stages)?;
    let k = a.field().clone();
    let n = a.object_count();
    let mut reports = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mut stage_dims = Vec::new();
            let mut injective = true;
            for p in 0..=stages {
                let target = orbit.power_object(p, y);
                let idx = orbit.indices_up_to(x, target, window + p);
                let hom = orbit.category.hom(x, target);
                let mut dims = BTreeMap::new();
                for &i in &idx {
                    *dims.entry(hom.degrees()[i]).or_insert(0) += 1;
                }
                stage_dims.push(dims);
                if p < stages {
                    let next = orbit.power_object(p + 1, y);
                    let cols: Vec<Vec<F::Elem>> = idx
                        .iter()
                        .map(|&i| orbit.post_epsilon(x, target, &basis_vec(&k, hom.dim(), i)))
                        .collect();
                    let m = Mat::from_columns(orbit.category.dim(x, next), &cols);
                    injective &= field::rank(&k, &m) == idx.len();
                }
            }
            let stabilized = stages >= 1 && stage_dims[stages] == stage_dims[stages - 1];
            reports.push(StageReport {
                x,
                y,
                stage_dims,
                transitions_injective: injective,
                stabilized,
            });
        }
    }
    Ok(OrbitZ {
        orbit,
        window,
        stages,
        reports,
    })
}

impl<F: Field> OrbitZ<F> {
    pub fn orbit(&self) -> &GradedOrbitCategory<F> {
        &self.orbit
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn stages(&self) -> usize {
        self.stages
    }

    pub fn reports(&self) -> &[StageReport] {
        &self.reports
    }

    pub fn report(&self, x: usize, y: usize) -> &StageReport {
        &self.reports[x * self.orbit.category.object_count() + y]
    }

    /// Dimensions of the truncated colimit, i.e. of the last stage.
    pub fn hom_dims(&self, x: usize, y: usize) -> &BTreeMap<i64, usize> {
        self.report(x, y).stage_dims.last().expect("at least one stage")
    }

    /// `F^p(g) ∘ f` for `f ∈ (A/F^ℕ)(x, F^p y)` and `g ∈ (A/F^ℕ)(y, F^q z)`,
    /// landing in `(A/F^ℕ)(x, F^{p+q} z)`; requires `p + q ≤ N + P`.
    pub fn compose(
        &self,
        (x, y, z): (usize, usize, usize),
        (q, g): (usize, &[F::Elem]),
        (p, f): (usize, &[F::Elem]),
    ) -> Vec<F::Elem> {
        let o = &self.orbit;
        let (py, qz) = (o.power_object(p, y), o.power_object(q, z));
        let fg = o.map_power(p, y, qz, g);
        o.category.compose(x, py, o.power_object(p, qz), &fg, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectEpsilon {
    pub object: usize,
    pub passed: bool,
    pub first_failing_degree: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonReport {
    pub window: usize,
    pub stages: usize,
    pub objects: Vec<ObjectEpsilon>,
}

impl EpsilonReport {
    pub fn passed(&self) -> bool {
        self.objects.iter().all(|o| o.passed)
    }
}

/// Data of `α_p = − ∘ ε′_x : (A/F^ℕ)(Fx, F^p y) → (A/F^ℕ)(x, F^p y)` on the
/// truncation-safe windows of stage `p`.
struct EpsilonStage<E> {
    target: usize,
    /// target window, as indices into the full hom
    window: Vec<usize>,
    /// differential restricted to the window
    d: Mat<E>,
    /// `α_p` in window coordinates
    alpha: Mat<E>,
    /// degrees of the source window
    source_degrees: Vec<i64>,
}

/// Checks that precomposition with `ε_x` induces a quasi-isomorphism
/// `(A/F^ℤ)(Fx, y) → (A/F^ℤ)(x, y)` at the level of the truncated colimit.
///
/// For every stage `p ≤ P`, `α_p` must be injective on source weights
/// `≤ N + p − 1`; for `p < P`, the transition must induce the zero map
/// `H(coker α_p) → H(coker α_{p+1})`. Together these make the colimit of
/// `α_p` a quasi-isomorphism in the window.
pub fn epsilon_quasi_iso_check<F: Field>(
    a: &FiniteDgCategory<F>,
    f: &DgEndofunctor<F::Elem>,
    window: usize,
    stages: usize,
) -> Result<EpsilonReport> {
    f.validate(a)?;
    check_h0_equivalence(a, f)?;
    let o = orbit_n(a, f, window + stages)?;
    let k = a.field();
    let n = a.object_count();
    let mut objects = Vec::with_capacity(n);
    for x in 0..n {
        let fx = o.functor_object(x);
        let mut first: Option<i64> = None;
        let mut fail = |deg: i64| first = Some(first.map_or(deg, |d| d.min(deg)));
        for y in 0..n {
            let stage = |p: usize| -> EpsilonStage<F::Elem> {
                let target = o.power_object(p, y);
                let win = o.indices_up_to(x, target, window + p);
                let src: Vec<usize> = if window + p == 0 {
                    Vec::new()
                } else {
                    o.indices_up_to(fx, target, window + p - 1)
                };
                let full_d = o.category.hom(x, target).differential();
                let d = select_columns(&select_rows(full_d, &win), &win);
                let src_dim = o.category.dim(fx, target);
                let cols: Vec<Vec<F::Elem>> = src
                    .iter()
                    .map(|&s| {
                        let img = o.pre_epsilon(x, target, &basis_vec(k, src_dim, s));
                        win.iter().map(|&i| img[i].clone()).collect()
                    })
                    .collect();
                let degs = o.category.hom(fx, target).degrees();
                EpsilonStage {
                    target,
                    alpha: Mat::from_columns(win.len(), &cols),
                    source_degrees: src.iter().map(|&s| degs[s]).collect(),
                    window: win,
                    d,
                }
            };
            let mut current = stage(0);
            for p in 0..=stages {
                let alpha = &current.alpha;
                if field::rank(k, alpha) < alpha.cols() {
                    let kernel = field::kernel(k, alpha);
                    let deg = kernel[0]
                        .iter()
                        .zip(&current.source_degrees)
                        .filter(|(c, _)| !k.is_zero(c))
                        .map(|(_, &d)| d)
                        .min()
                        .expect("kernel vector is nonzero");
                    fail(deg);
                }
                if p == stages {
                    break;
                }
                let next = stage(p + 1);
                for (z, deg) in coker_cohomology(k, &current, &o, x) {
                    let full = scatter(k, o.category.dim(x, current.target), &current.window, &z);
                    let image = o.post_epsilon(x, current.target, &full);
                    let restricted: Vec<F::Elem> = next.window.iter().map(|&i| image[i].clone()).collect();
                    let span = next.alpha.hstack(&next.d)?;
                    let with = span.hstack(&Mat::from_columns(next.window.len(), &[restricted]))?;
                    if field::rank(k, &with) != field::rank(k, &span) {
                        fail(deg);
                    }
                }
                current = next;
            }
        }
        objects.push(ObjectEpsilon {
            object: x,
            passed: first.is_none(),
            first_failing_degree: first,
        });
    }
    Ok(EpsilonReport {
        window,
        stages,
        objects,
    })
}

/// Representatives of `H(coker α)` in window coordinates, each with the
/// lowest degree in its support.
fn coker_cohomology<F: Field>(
    k: &F,
    s: &EpsilonStage<F::Elem>,
    o: &GradedOrbitCategory<F>,
    x: usize,
) -> Vec<(Vec<F::Elem>, i64)> {
    let w = s.window.len();
    // z is a cycle of the cokernel iff d z = α u for some u.
    let neg_alpha = s.alpha.scale(k, &k.from_i64(-1));
    let system = s.d.hstack(&neg_alpha).expect("same row count");
    let cycles: Vec<Vec<F::Elem>> = field::kernel(k, &system)
        .into_iter()
        .map(|v| v[..w].to_vec())
        .collect();
    let mut boundaries: Vec<Vec<F::Elem>> = (0..s.alpha.cols()).map(|j| s.alpha.column(j)).collect();
    boundaries.extend((0..w).map(|j| s.d.column(j)));
    let q = Subquotient::new(k, w, &cycles, &boundaries);
    let degs = o.category.hom(x, s.target).degrees();
    q.representatives()
        .iter()
        .map(|z| {
            let deg = z
                .iter()
                .zip(&s.window)
                .filter(|(c, _)| !k.is_zero(c))
                .map(|(_, &i)| degs[i])
                .min()
                .expect("representative is nonzero");
            (z.clone(), deg)
        })
        .collect()
}
