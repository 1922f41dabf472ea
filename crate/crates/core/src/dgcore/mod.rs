//! Finite dg categories over a field and explicit orbit constructions.
//!
//! Hom complexes are finite-dimensional with a basis of homogeneous elements;
//! differentials have degree `+1` and act on column vectors. Composition is
//! `∘ : A(y, z) ⊗ A(x, y) → A(x, z)`, stored as structure constants on basis
//! pairs. Every constructor re-verifies `d² = 0`, the Leibniz rule,
//! associativity and the unit laws on basis elements.

mod comparison;
mod orbit;
mod square_zero;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{self, Field, Mat, Subquotient};

pub use comparison::{comparison_map_check, ComparisonReport, PairComparison};
pub use orbit::{
    epsilon_quasi_iso_check, orbit_n, orbit_z, EpsilonReport, GradedOrbitCategory,
    ObjectEpsilon, OrbitZ, StageReport,
};
pub use square_zero::square_zero;

fn invalid(msg: String) -> Error {
    Error::InvalidDgData(msg)
}

pub(crate) fn zero_vec<F: Field>(k: &F, n: usize) -> Vec<F::Elem> {
    (0..n).map(|_| k.zero()).collect()
}

pub(crate) fn basis_vec<F: Field>(k: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = zero_vec(k, n);
    v[i] = k.one();
    v
}

/// `acc += c · x`.
pub(crate) fn axpy<F: Field>(k: &F, acc: &mut [F::Elem], c: &F::Elem, x: &[F::Elem]) {
    for (a, b) in acc.iter_mut().zip(x) {
        if !k.is_zero(b) {
            *a = k.add(a, &k.mul(c, b));
        }
    }
}

fn is_zero_vec<F: Field>(k: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| k.is_zero(x))
}

/// A bounded complex with a homogeneous basis.
#[derive(Clone, PartialEq)]
pub struct GradedComplex<E> {
    degrees: Vec<i64>,
    differential: Mat<E>,
}

impl<E: Clone + core::fmt::Display> core::fmt::Debug for GradedComplex<E> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("GradedComplex")
            .field("degrees", &self.degrees)
            .field("differential", &self.differential)
            .finish()
    }
}

impl<E: Clone + PartialEq + core::fmt::Debug + core::fmt::Display> GradedComplex<E> {
    /// `differential[i][j]` is the `e_i` coefficient of `d(e_j)`; it must
    /// vanish unless `deg e_i = deg e_j + 1`.
    pub fn new<F: Field<Elem = E>>(k: &F, degrees: Vec<i64>, differential: Mat<E>) -> Result<Self> {
        let n = degrees.len();
        if differential.rows() != n || differential.cols() != n {
            return Err(Error::ShapeMismatch {
                left: (differential.rows(), differential.cols()),
                right: (n, n),
            });
        }
        for i in 0..n {
            for j in 0..n {
                if !k.is_zero(differential.get(i, j)) && degrees[i] != degrees[j] + 1 {
                    return Err(invalid(format!(
                        "differential entry ({i}, {j}) does not have degree +1"
                    )));
                }
            }
        }
        Ok(Self {
            degrees,
            differential,
        })
    }

    /// Zero differential.
    pub fn formal<F: Field<Elem = E>>(k: &F, degrees: Vec<i64>) -> Self {
        let n = degrees.len();
        Self {
            degrees,
            differential: Mat::zeros(k, n, n),
        }
    }

    pub fn zero<F: Field<Elem = E>>(k: &F) -> Self {
        Self::formal(k, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn differential(&self) -> &Mat<E> {
        &self.differential
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    fn indices_of_degree(&self, n: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == n).collect()
    }

    /// `dim Hⁿ` for every degree carrying basis elements.
    pub fn cohomology_dims<F: Field<Elem = E>>(&self, k: &F) -> BTreeMap<i64, usize> {
        let rank_from = |n: i64| {
            let cols = self.indices_of_degree(n);
            field::rank(k, &select_columns(&self.differential, &cols))
        };
        self.dims_by_degree()
            .into_iter()
            .map(|(n, c)| (n, c - rank_from(n) - rank_from(n - 1)))
            .collect()
    }

    /// `H⁰` as a subquotient of the whole space.
    pub fn h0<F: Field<Elem = E>>(&self, k: &F) -> Subquotient<E> {
        let n = self.dim();
        let deg0 = self.indices_of_degree(0);
        let d0 = select_columns(&self.differential, &deg0);
        let cycles: Vec<Vec<E>> = field::kernel(k, &d0)
            .into_iter()
            .map(|c| scatter(k, n, &deg0, &c))
            .collect();
        let boundaries: Vec<Vec<E>> = self
            .indices_of_degree(-1)
            .into_iter()
            .map(|j| self.differential.column(j))
            .collect();
        Subquotient::new(k, n, &cycles, &boundaries)
    }
}

pub(crate) fn select_columns<E: Clone>(m: &Mat<E>, cols: &[usize]) -> Mat<E> {
    Mat::from_fn(m.rows(), cols.len(), |i, j| m.get(i, cols[j]).clone())
}

pub(crate) fn select_rows<E: Clone>(m: &Mat<E>, rows: &[usize]) -> Mat<E> {
    Mat::from_fn(rows.len(), m.cols(), |i, j| m.get(rows[i], j).clone())
}

/// Embeds coordinates on `idx` into a vector of length `n`.
pub(crate) fn scatter<F: Field>(k: &F, n: usize, idx: &[usize], v: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = zero_vec(k, n);
    for (&i, x) in idx.iter().zip(v) {
        out[i] = x.clone();
    }
    out
}

/// One structure constant: `e_g ∘ e_f = value` for `e_g ∈ A(y, z)`,
/// `e_f ∈ A(x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionEntry<E> {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub g: usize,
    pub f: usize,
    pub value: Vec<E>,
}

type Sparse<E> = Vec<(usize, E)>;

#[derive(Clone, Debug)]
pub struct FiniteDgCategory<F: Field> {
    field: F,
    objects: Vec<String>,
    /// `homs[x * n + y] = A(x, y)`
    homs: Vec<GradedComplex<F::Elem>>,
    /// `table[(x * n + y) * n + z][g * dim A(x, y) + f] = e_g ∘ e_f`
    table: Vec<Vec<Sparse<F::Elem>>>,
    units: Vec<Vec<F::Elem>>,
}

impl<F: Field> FiniteDgCategory<F> {
    /// Missing homs are zero; unlisted compositions are zero.
    pub fn new(
        field: F,
        objects: Vec<String>,
        homs: BTreeMap<(usize, usize), GradedComplex<F::Elem>>,
        compositions: Vec<CompositionEntry<F::Elem>>,
        units: Vec<Vec<F::Elem>>,
    ) -> Result<Self> {
        let cat = Self::assemble(field, objects, homs, compositions, units)?;
        cat.validate()?;
        Ok(cat)
    }

    /// Like [`FiniteDgCategory::new`], with each unit given as a basis index
    /// of `A(x, x)`. Unit compositions `id ∘ f = f` and `g ∘ id = g` are
    /// filled in unless listed explicitly.
    pub fn with_basis_units(
        field: F,
        objects: Vec<String>,
        homs: BTreeMap<(usize, usize), GradedComplex<F::Elem>>,
        mut compositions: Vec<CompositionEntry<F::Elem>>,
        unit_basis: Vec<usize>,
    ) -> Result<Self> {
        let n = objects.len();
        if unit_basis.len() != n {
            return Err(invalid(format!("expected {n} units, found {}", unit_basis.len())));
        }
        let dim = |x: usize, y: usize| homs.get(&(x, y)).map_or(0, |h| h.dim());
        for (x, &u) in unit_basis.iter().enumerate() {
            if u >= dim(x, x) {
                return Err(invalid(format!("unit index {u} out of range for object {x}")));
            }
        }
        let mut given: alloc::collections::BTreeSet<(usize, usize, usize, usize, usize)> = compositions
            .iter()
            .map(|e| (e.x, e.y, e.z, e.g, e.f))
            .collect();
        let mut push = |e: CompositionEntry<F::Elem>, out: &mut Vec<CompositionEntry<F::Elem>>| {
            if given.insert((e.x, e.y, e.z, e.g, e.f)) {
                out.push(e);
            }
        };
        let mut extra = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let d = dim(x, y);
                for i in 0..d {
                    let value = basis_vec(&field, d, i);
                    // id_y ∘ f and g ∘ id_x
                    push(CompositionEntry { x, y, z: y, g: unit_basis[y], f: i, value: value.clone() }, &mut extra);
                    push(CompositionEntry { x, y: x, z: y, g: i, f: unit_basis[x], value }, &mut extra);
                }
            }
        }
        compositions.extend(extra);
        let units = unit_basis
            .iter()
            .enumerate()
            .map(|(x, &u)| basis_vec(&field, dim(x, x), u))
            .collect();
        Self::new(field, objects, homs, compositions, units)
    }

    fn assemble(
        field: F,
        objects: Vec<String>,
        mut homs: BTreeMap<(usize, usize), GradedComplex<F::Elem>>,
        compositions: Vec<CompositionEntry<F::Elem>>,
        units: Vec<Vec<F::Elem>>,
    ) -> Result<Self> {
        let n = objects.len();
        if let Some(&(x, y)) = homs.keys().find(|&&(x, y)| x >= n || y >= n) {
            return Err(invalid(format!("hom ({x}, {y}) refers to an unknown object")));
        }
        let hom_list: Vec<GradedComplex<F::Elem>> = (0..n * n)
            .map(|i| homs.remove(&(i / n, i % n)).unwrap_or_else(|| GradedComplex::zero(&field)))
            .collect();
        let mut table: Vec<Vec<Sparse<F::Elem>>> = (0..n * n * n)
            .map(|t| {
                let (xy, z) = (t / n, t % n);
                let (x, y) = (xy / n, xy % n);
                vec![Vec::new(); hom_list[y * n + z].dim() * hom_list[x * n + y].dim()]
            })
            .collect();
        let mut seen = alloc::collections::BTreeSet::new();
        for e in compositions {
            if e.x >= n || e.y >= n || e.z >= n {
                return Err(invalid("composition entry refers to an unknown object".into()));
            }
            let (dxy, dyz, dxz) = (
                hom_list[e.x * n + e.y].dim(),
                hom_list[e.y * n + e.z].dim(),
                hom_list[e.x * n + e.z].dim(),
            );
            if e.g >= dyz || e.f >= dxy || e.value.len() != dxz {
                return Err(invalid(format!(
                    "composition entry ({}, {}, {}; {}, {}) has the wrong shape",
                    e.x, e.y, e.z, e.g, e.f
                )));
            }
            if !seen.insert((e.x, e.y, e.z, e.g, e.f)) {
                return Err(invalid(format!(
                    "composition entry ({}, {}, {}; {}, {}) given twice",
                    e.x, e.y, e.z, e.g, e.f
                )));
            }
            table[(e.x * n + e.y) * n + e.z][e.g * dxy + e.f] = e
                .value
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !field.is_zero(c))
                .collect();
        }
        if units.len() != n {
            return Err(invalid(format!("expected {n} units, found {}", units.len())));
        }
        Ok(Self {
            field,
            objects,
            homs: hom_list,
            table,
            units,
        })
    }

    pub(crate) fn from_raw(
        field: F,
        objects: Vec<String>,
        homs: Vec<GradedComplex<F::Elem>>,
        table: Vec<Vec<Sparse<F::Elem>>>,
        units: Vec<Vec<F::Elem>>,
    ) -> Result<Self> {
        let cat = Self {
            field,
            objects,
            homs,
            table,
            units,
        };
        cat.validate()?;
        Ok(cat)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn hom(&self, x: usize, y: usize) -> &GradedComplex<F::Elem> {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.hom(x, y).dim()
    }

    pub fn unit(&self, x: usize) -> &[F::Elem] {
        &self.units[x]
    }

    fn entry(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> &Sparse<F::Elem> {
        let n = self.objects.len();
        &self.table[(x * n + y) * n + z][g * self.dim(x, y) + f]
    }

    /// `g ∘ f` for `g ∈ A(y, z)`, `f ∈ A(x, y)`.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &[F::Elem], f: &[F::Elem]) -> Vec<F::Elem> {
        let k = &self.field;
        let mut out = zero_vec(k, self.dim(x, z));
        for (i, gi) in g.iter().enumerate().filter(|(_, c)| !k.is_zero(c)) {
            for (j, fj) in f.iter().enumerate().filter(|(_, c)| !k.is_zero(c)) {
                let c = k.mul(gi, fj);
                for (l, v) in self.entry(x, y, z, i, j) {
                    out[*l] = k.add(&out[*l], &k.mul(&c, v));
                }
            }
        }
        out
    }

    pub fn d(&self, x: usize, y: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        self.hom(x, y).differential().apply(&self.field, v)
    }

    fn basis(&self, x: usize, y: usize, i: usize) -> Vec<F::Elem> {
        basis_vec(&self.field, self.dim(x, y), i)
    }

    /// Re-checks every structural law on basis elements.
    pub fn validate(&self) -> Result<()> {
        let k = &self.field;
        let n = self.objects.len();
        for x in 0..n {
            for y in 0..n {
                let h = self.hom(x, y);
                let dd = h.differential().mul(k, h.differential())?;
                if !dd.is_zero(k) {
                    return Err(invalid(format!("d² ≠ 0 on A({}, {})", self.objects[x], self.objects[y])));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    self.check_triple(x, y, z)?;
                }
            }
        }
        for x in 0..n {
            let u = &self.units[x];
            let h = self.hom(x, x);
            if u.len() != h.dim() {
                return Err(invalid(format!("unit of {} has the wrong length", self.objects[x])));
            }
            if u.iter().zip(h.degrees()).any(|(c, &d)| !k.is_zero(c) && d != 0) {
                return Err(invalid(format!("unit of {} is not of degree 0", self.objects[x])));
            }
            if !is_zero_vec(k, &self.d(x, x, u)) {
                return Err(invalid(format!("unit of {} is not a cycle", self.objects[x])));
            }
            for y in 0..n {
                for i in 0..self.dim(x, y) {
                    let f = self.basis(x, y, i);
                    if self.compose(x, y, y, &self.units[y], &f) != f || self.compose(x, x, y, &f, u) != f {
                        return Err(invalid(format!(
                            "unit law fails on A({}, {}) basis element {i}",
                            self.objects[x], self.objects[y]
                        )));
                    }
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        self.check_associativity(x, y, z, w)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Degrees and the Leibniz rule on `A(y, z) ⊗ A(x, y)`.
    fn check_triple(&self, x: usize, y: usize, z: usize) -> Result<()> {
        let k = &self.field;
        let (dxy, dyz) = (self.dim(x, y), self.dim(y, z));
        let degs = |a: usize, b: usize| self.hom(a, b).degrees();
        for g in 0..dyz {
            for f in 0..dxy {
                let want = degs(y, z)[g] + degs(x, y)[f];
                if self.entry(x, y, z, g, f).iter().any(|(l, _)| degs(x, z)[*l] != want) {
                    return Err(invalid(format!(
                        "composition ({x}, {y}, {z}; {g}, {f}) does not add degrees"
                    )));
                }
                let (eg, ef) = (self.basis(y, z, g), self.basis(x, y, f));
                let lhs = self.d(x, z, &self.compose(x, y, z, &eg, &ef));
                let mut rhs = self.compose(x, y, z, &self.d(y, z, &eg), &ef);
                let sign = k.sign(degs(y, z)[g]);
                axpy(k, &mut rhs, &sign, &self.compose(x, y, z, &eg, &self.d(x, y, &ef)));
                if lhs != rhs {
                    return Err(invalid(format!(
                        "Leibniz rule fails on ({}, {}, {}; {g}, {f})",
                        self.objects[x], self.objects[y], self.objects[z]
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self, x: usize, y: usize, z: usize, w: usize) -> Result<()> {
        for h in 0..self.dim(z, w) {
            let eh = self.basis(z, w, h);
            for g in 0..self.dim(y, z) {
                let eg = self.basis(y, z, g);
                let hg = self.compose(y, z, w, &eh, &eg);
                for f in 0..self.dim(x, y) {
                    let ef = self.basis(x, y, f);
                    let left = self.compose(x, y, w, &hg, &ef);
                    let right = self.compose(x, z, w, &eh, &self.compose(x, y, z, &eg, &ef));
                    if left != right {
                        return Err(invalid(format!(
                            "composition is not associative on ({}, {}, {}, {}; {h}, {g}, {f})",
                            self.objects[x], self.objects[y], self.objects[z], self.objects[w]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A dg endofunctor: an object map and degree-zero chain maps
/// `A(x, y) → A(Fx, Fy)`.
#[derive(Clone, PartialEq)]
pub struct DgEndofunctor<E> {
    object_map: Vec<usize>,
    /// `hom_maps[x * n + y]`, of shape `dim A(Fx, Fy) × dim A(x, y)`
    hom_maps: Vec<Mat<E>>,
}

impl<E: Clone + core::fmt::Display> core::fmt::Debug for DgEndofunctor<E> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("DgEndofunctor")
            .field("object_map", &self.object_map)
            .field("hom_maps", &self.hom_maps)
            .finish()
    }
}

impl<E: Clone + PartialEq + core::fmt::Debug + core::fmt::Display> DgEndofunctor<E> {
    /// Missing hom maps are allowed only for zero homs.
    pub fn new<F: Field<Elem = E>>(
        cat: &FiniteDgCategory<F>,
        object_map: Vec<usize>,
        mut hom_maps: BTreeMap<(usize, usize), Mat<E>>,
    ) -> Result<Self> {
        let n = cat.object_count();
        if object_map.len() != n || object_map.iter().any(|&o| o >= n) {
            return Err(invalid("object map must send each object to an object".into()));
        }
        let k = cat.field();
        let mut maps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (fx, fy) = (object_map[x], object_map[y]);
                let m = match hom_maps.remove(&(x, y)) {
                    Some(m) => m,
                    None if cat.dim(x, y) == 0 || cat.dim(fx, fy) == 0 => {
                        Mat::zeros(k, cat.dim(fx, fy), cat.dim(x, y))
                    }
                    None => return Err(invalid(format!("missing hom map for ({x}, {y})"))),
                };
                maps.push(m);
            }
        }
        let f = Self {
            object_map,
            hom_maps: maps,
        };
        f.validate(cat)?;
        Ok(f)
    }

    pub fn identity<F: Field<Elem = E>>(cat: &FiniteDgCategory<F>) -> Self {
        let n = cat.object_count();
        Self {
            object_map: (0..n).collect(),
            hom_maps: (0..n * n)
                .map(|i| Mat::identity(cat.field(), cat.dim(i / n, i % n)))
                .collect(),
        }
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn object(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn hom_map(&self, x: usize, y: usize) -> &Mat<E> {
        &self.hom_maps[x * self.object_map.len() + y]
    }

    pub fn apply<F: Field<Elem = E>>(&self, k: &F, x: usize, y: usize, v: &[E]) -> Vec<E> {
        self.hom_map(x, y).apply(k, v)
    }

    /// `G ∘ self`.
    pub fn then<F: Field<Elem = E>>(&self, k: &F, g: &Self) -> Result<Self> {
        let n = self.object_map.len();
        let mut maps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (fx, fy) = (self.object(x), self.object(y));
                maps.push(g.hom_map(fx, fy).mul(k, self.hom_map(x, y))?);
            }
        }
        Ok(Self {
            object_map: (0..n).map(|x| g.object(self.object(x))).collect(),
            hom_maps: maps,
        })
    }

    /// `F^p`.
    pub fn power<F: Field<Elem = E>>(&self, cat: &FiniteDgCategory<F>, p: usize) -> Result<Self> {
        let mut acc = Self::identity(cat);
        for _ in 0..p {
            acc = acc.then(cat.field(), self)?;
        }
        Ok(acc)
    }

    /// Shapes, degree preservation, chain-map property and functoriality.
    pub fn validate<F: Field<Elem = E>>(&self, cat: &FiniteDgCategory<F>) -> Result<()> {
        let k = cat.field();
        let n = cat.object_count();
        if self.object_map.len() != n || self.hom_maps.len() != n * n {
            return Err(invalid("functor does not match the category".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let (fx, fy) = (self.object(x), self.object(y));
                let m = self.hom_map(x, y);
                let (src, dst) = (cat.hom(x, y), cat.hom(fx, fy));
                if m.rows() != dst.dim() || m.cols() != src.dim() {
                    return Err(invalid(format!("hom map for ({x}, {y}) has the wrong shape")));
                }
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        if !k.is_zero(m.get(i, j)) && dst.degrees()[i] != src.degrees()[j] {
                            return Err(invalid(format!("hom map for ({x}, {y}) does not preserve degree")));
                        }
                    }
                }
                if dst.differential().mul(k, m)? != m.mul(k, src.differential())? {
                    return Err(invalid(format!("hom map for ({x}, {y}) is not a chain map")));
                }
            }
            let fu = self.apply(k, x, x, cat.unit(x));
            if fu != cat.unit(self.object(x)) {
                return Err(invalid(format!("functor does not preserve the unit of {}", cat.objects()[x])));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (fx, fy, fz) = (self.object(x), self.object(y), self.object(z));
                    for g in 0..cat.dim(y, z) {
                        let eg = cat.basis(y, z, g);
                        let feg = self.apply(k, y, z, &eg);
                        for f in 0..cat.dim(x, y) {
                            let ef = cat.basis(x, y, f);
                            let lhs = self.apply(k, x, z, &cat.compose(x, y, z, &eg, &ef));
                            let rhs = cat.compose(fx, fy, fz, &feg, &self.apply(k, x, y, &ef));
                            if lhs != rhs {
                                return Err(invalid(format!(
                                    "functor does not preserve composition on ({x}, {y}, {z}; {g}, {f})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Checks that `F` induces an equivalence on `H⁰` at the finite level: the
/// object map is a bijection and every `H⁰(A(x, y)) → H⁰(A(Fx, Fy))` is
/// bijective.
pub fn check_h0_equivalence<F: Field>(cat: &FiniteDgCategory<F>, f: &DgEndofunctor<F::Elem>) -> Result<()> {
    let k = cat.field();
    let n = cat.object_count();
    let mut hit = vec![false; n];
    for x in 0..n {
        hit[f.object(x)] = true;
    }
    if let Some(miss) = hit.iter().position(|h| !h) {
        return Err(Error::NotH0Equivalence(format!(
            "object {} is not in the image of the object map",
            cat.objects()[miss]
        )));
    }
    for x in 0..n {
        for y in 0..n {
            let (fx, fy) = (f.object(x), f.object(y));
            let src = cat.hom(x, y).h0(k);
            let dst = cat.hom(fx, fy).h0(k);
            if src.dim() != dst.dim() {
                return Err(Error::NotH0Equivalence(format!(
                    "H0 of ({}, {}) has dimension {} but its image hom has {}",
                    cat.objects()[x],
                    cat.objects()[y],
                    src.dim(),
                    dst.dim()
                )));
            }
            let images: Vec<Vec<F::Elem>> = src
                .representatives()
                .iter()
                .map(|r| {
                    dst.class_of(k, &f.apply(k, x, y, r))
                        .expect("chain maps send cycles to cycles")
                })
                .collect();
            if field::rank(k, &Mat::from_columns(dst.dim(), &images)) != dst.dim() {
                return Err(Error::NotH0Equivalence(format!(
                    "H0 map on ({}, {}) is not bijective",
                    cat.objects()[x],
                    cat.objects()[y]
                )));
            }
        }
    }
    Ok(())
}

/// `H⁰(A)`: dimensions and composition in a chosen basis of classes.
#[derive(Clone, Debug, PartialEq)]
pub struct H0Category<E> {
    pub objects: Vec<String>,
    /// `dims[x][y] = dim H⁰A(x, y)`
    pub dims: Vec<Vec<usize>>,
    /// `compositions[(x, y, z)][g][f]` = coordinates of `[g] ∘ [f]`.
    pub compositions: BTreeMap<(usize, usize, usize), Vec<Vec<Vec<E>>>>,
}

pub fn h0_category<F: Field>(cat: &FiniteDgCategory<F>) -> H0Category<F::Elem> {
    let k = cat.field();
    let n = cat.object_count();
    let h0: Vec<Vec<Subquotient<F::Elem>>> = (0..n)
        .map(|x| (0..n).map(|y| cat.hom(x, y).h0(k)).collect())
        .collect();
    let mut compositions = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let table = h0[y][z]
                    .representatives()
                    .iter()
                    .map(|g| {
                        h0[x][y]
                            .representatives()
                            .iter()
                            .map(|f| {
                                h0[x][z]
                                    .class_of(k, &cat.compose(x, y, z, g, f))
                                    .expect("product of cycles is a cycle")
                            })
                            .collect()
                    })
                    .collect();
                compositions.insert((x, y, z), table);
            }
        }
    }
    H0Category {
        objects: cat.objects().to_vec(),
        dims: h0.iter().map(|row| row.iter().map(Subquotient::dim).collect()).collect(),
        compositions,
    }
}

/// Small categories used by tests, examples and the acceptance suite.
pub mod examples {
    use super::*;

    fn single<F: Field>(k: F, degrees: Vec<i64>, compositions: Vec<CompositionEntry<F::Elem>>) -> FiniteDgCategory<F> {
        let homs = [((0, 0), GradedComplex::formal(&k, degrees))].into_iter().collect();
        FiniteDgCategory::with_basis_units(k, vec!["x".into()], homs, compositions, vec![0])
            .expect("example category is valid")
    }

    /// One object with `End = k` in degree 0.
    pub fn field_object<F: Field>(k: F) -> FiniteDgCategory<F> {
        single(k, vec![0], Vec::new())
    }

    /// One object with `End = k ⊕ k·ε`, `deg ε = 1`, `dε = 0`, `ε² = 0`.
    pub fn dual_numbers<F: Field>(k: F) -> FiniteDgCategory<F> {
        let zero = zero_vec(&k, 2);
        let eps_sq = CompositionEntry { x: 0, y: 0, z: 0, g: 1, f: 1, value: zero };
        single(k, vec![0, 1], vec![eps_sq])
    }

    /// Two objects with identity endomorphisms only.
    pub fn two_points<F: Field>(k: F) -> FiniteDgCategory<F> {
        let homs = [
            ((0, 0), GradedComplex::formal(&k, vec![0])),
            ((1, 1), GradedComplex::formal(&k, vec![0])),
        ]
        .into_iter()
        .collect();
        FiniteDgCategory::with_basis_units(k, vec!["x".into(), "y".into()], homs, Vec::new(), vec![0, 0])
            .expect("example category is valid")
    }

    /// Two objects with a single degree-0 morphism `x → y`.
    pub fn arrow<F: Field>(k: F) -> FiniteDgCategory<F> {
        let homs = [
            ((0, 0), GradedComplex::formal(&k, vec![0])),
            ((1, 1), GradedComplex::formal(&k, vec![0])),
            ((0, 1), GradedComplex::formal(&k, vec![0])),
        ]
        .into_iter()
        .collect();
        FiniteDgCategory::with_basis_units(k, vec!["x".into(), "y".into()], homs, Vec::new(), vec![0, 0])
            .expect("example category is valid")
    }

    /// One object with `End = k·1 ⊕ k·u ⊕ k·v`, `deg u = −1`, `deg v = 0`,
    /// `du = v`, and all products among `u`, `v` zero. `H⁰` is spanned by 1.
    pub fn contractible_extra<F: Field>(k: F) -> FiniteDgCategory<F> {
        let mut d = Mat::zeros(&k, 3, 3);
        d.set(2, 1, k.one());
        let hom = GradedComplex::new(&k, vec![0, -1, 0], d).expect("degree +1");
        let homs = [((0, 0), hom)].into_iter().collect();
        let mut comps = Vec::new();
        for g in 1..3 {
            for f in 1..3 {
                comps.push(CompositionEntry { x: 0, y: 0, z: 0, g, f, value: zero_vec(&k, 3) });
            }
        }
        FiniteDgCategory::with_basis_units(k, vec!["x".into()], homs, comps, vec![0])
            .expect("example category is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    #[test]
    fn examples_validate() {
        field_object(Rationals).validate().unwrap();
        dual_numbers(Rationals).validate().unwrap();
        two_points(PrimeField::new(5).unwrap()).validate().unwrap();
        arrow(Rationals).validate().unwrap();
        contractible_extra(Rationals).validate().unwrap();
    }

    #[test]
    fn rejects_bad_differential() {
        let k = Rationals;
        let mut d = Mat::zeros(&k, 2, 2);
        d.set(1, 0, k.one());
        assert!(GradedComplex::new(&k, vec![0, 0], d.clone()).is_err());
        let hom = GradedComplex::new(&k, vec![0, 1], d).unwrap();
        // d(1) = e breaks d(unit) = 0.
        let homs = [((0, 0), hom)].into_iter().collect();
        let comps = vec![CompositionEntry { x: 0, y: 0, z: 0, g: 1, f: 1, value: zero_vec(&k, 2) }];
        let err = FiniteDgCategory::with_basis_units(k, vec!["x".into()], homs, comps, vec![0]);
        assert!(matches!(err, Err(Error::InvalidDgData(_))));
    }

    #[test]
    fn rejects_non_associative_table() {
        let k = Rationals;
        // End = span(1, a, b) in degree 0 with a·a = b, a·b = 0, b·a = a.
        let homs = [((0, 0), GradedComplex::formal(&k, vec![0, 0, 0]))].into_iter().collect();
        let v = |i: usize| basis_vec(&k, 3, i);
        let e = |g, f, value| CompositionEntry { x: 0, y: 0, z: 0, g, f, value };
        let comps = vec![e(1, 1, v(2)), e(1, 2, zero_vec(&k, 3)), e(2, 1, v(1)), e(2, 2, zero_vec(&k, 3))];
        let err = FiniteDgCategory::with_basis_units(k, vec!["x".into()], homs, comps, vec![0]);
        assert!(matches!(err, Err(Error::InvalidDgData(m)) if m.contains("associative")));
    }

    #[test]
    fn rejects_leibniz_violation() {
        let k = Rationals;
        // basis 1, u, v with du = v and v·v = v: d(v·u) = 0 but v·du = v.
        let mut d = Mat::zeros(&k, 3, 3);
        d.set(2, 1, k.one());
        let hom = GradedComplex::new(&k, vec![0, -1, 0], d).unwrap();
        let homs = [((0, 0), hom)].into_iter().collect();
        let e = |g, f, value| CompositionEntry { x: 0, y: 0, z: 0, g, f, value };
        let comps = vec![
            e(1, 1, zero_vec(&k, 3)),
            e(1, 2, zero_vec(&k, 3)),
            e(2, 1, zero_vec(&k, 3)),
            e(2, 2, basis_vec(&k, 3, 2)),
        ];
        let err = FiniteDgCategory::with_basis_units(k, vec!["x".into()], homs, comps, vec![0]);
        assert!(matches!(err, Err(Error::InvalidDgData(m)) if m.contains("Leibniz")));
    }

    #[test]
    fn h0_examples() {
        let k = Rationals;
        let one = |n: i64| BigRational::from_integer(n.into());
        let h = h0_category(&field_object(k));
        assert_eq!(h.dims, vec![vec![1]]);
        assert_eq!(h.compositions[&(0, 0, 0)], vec![vec![vec![one(1)]]]);
        assert_eq!(h0_category(&dual_numbers(k)).dims, vec![vec![1]]);
        let mut d = Mat::zeros(&k, 2, 2);
        d.set(1, 0, k.one());
        let c = GradedComplex::new(&k, vec![0, 1], d).unwrap();
        assert_eq!(c.h0(&k).dim(), 0);
        assert_eq!(c.cohomology_dims(&k), [(0, 0), (1, 0)].into_iter().collect());
        assert_eq!(h0_category(&contractible_extra(k)).dims, vec![vec![1]]);
    }

    #[test]
    fn functor_checks() {
        let k = Rationals;
        let a = two_points(k);
        let swap = DgEndofunctor::new(
            &a,
            vec![1, 0],
            [((0, 0), Mat::identity(&k, 1)), ((1, 1), Mat::identity(&k, 1))].into_iter().collect(),
        )
        .unwrap();
        check_h0_equivalence(&a, &swap).unwrap();
        assert_eq!(swap.power(&a, 2).unwrap(), DgEndofunctor::identity(&a));

        let collapse = DgEndofunctor::new(
            &a,
            vec![0, 0],
            [((0, 0), Mat::identity(&k, 1)), ((1, 1), Mat::identity(&k, 1))].into_iter().collect(),
        )
        .unwrap();
        assert!(matches!(check_h0_equivalence(&a, &collapse), Err(Error::NotH0Equivalence(_))));

        // Killing ε is a functor only if it is compatible with composition;
        // scaling ε by 2 is, and is an H0 equivalence.
        let dual = dual_numbers(k);
        let mut m = Mat::identity(&k, 2);
        m.set(1, 1, k.from_i64(2));
        let scale = DgEndofunctor::new(&dual, vec![0], [((0, 0), m)].into_iter().collect()).unwrap();
        check_h0_equivalence(&dual, &scale).unwrap();

        let bad = DgEndofunctor::new(&dual, vec![0], [((0, 0), Mat::zeros(&k, 2, 2))].into_iter().collect());
        assert!(bad.is_err());
    }
}
