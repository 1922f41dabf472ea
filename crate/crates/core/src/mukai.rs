//! Fourier–Mukai actions on `K₀` and on a de Rham cohomology model.
//!
//! A [`CohomologyModel`] is pure data: a graded basis, cup-product structure
//! constants, a Mukai pairing and a few named classes (`ch_L`, `ch_E`,
//! `sqrt_Td`). Matrices act on column vectors in the model's basis; even
//! degrees form `HP⁺`, odd degrees `HP⁻`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::abgroup::{AbPresentation, FgAbGroup, GroupHom};
use crate::error::{Error, Result};
use crate::exactla::IntMatrix;
use crate::field::{inverse, solve, Field, Mat, Rationals};
use crate::orbit_triangle::{hp_sixterm_from_differences, HpDims};
use crate::quiver::Quiver;
use crate::warning::Warning;

type Q = BigRational;
type Vector = Vec<Q>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyModel {
    basis: Vec<BasisElement>,
    /// `products[i][j]` = sparse coordinates of `e_i · e_j`.
    products: Vec<Vec<Vec<(usize, Q)>>>,
    pairing: Mat<Q>,
    classes: BTreeMap<String, Vector>,
    unit: Vector,
}

impl CohomologyModel {
    /// `products` lists `(i, j, e_i·e_j)`; unlisted products are zero.
    ///
    /// Checks that the product is graded, associative and unital, that the
    /// pairing is invertible, that classes have the right length, and that
    /// `sqrt_Td` (if given) has degree-zero part equal to the unit.
    pub fn new(
        basis: Vec<BasisElement>,
        products: Vec<(usize, usize, Vector)>,
        pairing: Mat<Q>,
        classes: BTreeMap<String, Vector>,
    ) -> Result<Self> {
        let n = basis.len();
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        let mut table = vec![vec![Vec::new(); n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (i, j, v) in products {
            if i >= n || j >= n || v.len() != n {
                return bad(format!("product entry ({i}, {j}) out of range"));
            }
            if core::mem::replace(&mut seen[i][j], true) {
                return bad(format!("product ({i}, {j}) given twice"));
            }
            for (k, c) in v.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if basis[k].degree != basis[i].degree + basis[j].degree {
                    return bad(format!(
                        "product {} * {} has a component in {} of the wrong degree",
                        basis[i].label, basis[j].label, basis[k].label
                    ));
                }
                table[i][j].push((k, c));
            }
        }
        if pairing.rows() != n || pairing.cols() != n {
            return bad(format!("pairing must be {n}x{n}"));
        }
        if n > 0 && inverse(&Rationals, &pairing).is_none() {
            return bad("pairing is degenerate".into());
        }
        for (name, v) in &classes {
            if v.len() != n {
                return bad(format!("class {name} has length {}, expected {n}", v.len()));
            }
        }
        let mut model = Self {
            basis,
            products: table,
            pairing,
            classes,
            unit: vec![Q::zero(); n],
        };
        model.unit = model.find_unit()?;
        model.check_associative()?;
        if let Some(td) = model.classes.get("sqrt_Td") {
            let head: Vector = (0..n)
                .map(|k| if model.basis[k].degree == 0 { td[k].clone() } else { Q::zero() })
                .collect();
            if head != model.unit {
                return bad("sqrt_Td must have degree-zero part 1".into());
            }
        }
        Ok(model)
    }

    fn find_unit(&self) -> Result<Vector> {
        let n = self.dim();
        if n == 0 {
            return Ok(Vec::new());
        }
        // u · e_j = e_j for all j: n² equations in the n coordinates of u.
        let k = Rationals;
        let mut sys = Mat::zeros(&k, n * n, n);
        let mut rhs = vec![Q::zero(); n * n];
        for j in 0..n {
            rhs[j * n + j] = Q::one();
            for i in 0..n {
                for (kk, c) in &self.products[i][j] {
                    sys.set(j * n + kk, i, c.clone());
                }
            }
        }
        let u = solve(&k, &sys, &rhs)
            .ok_or_else(|| Error::InvalidModel("product has no unit".into()))?;
        for j in 0..n {
            if self.multiply(&self.basis_vector(j), &u) != self.basis_vector(j) {
                return Err(Error::InvalidModel("unit is not two-sided".into()));
            }
        }
        Ok(u)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.multiply(&self.basis_vector(i), &self.basis_vector(j));
                for k in 0..n {
                    let left = self.multiply(&ij, &self.basis_vector(k));
                    let jk = self.multiply(&self.basis_vector(j), &self.basis_vector(k));
                    let right = self.multiply(&self.basis_vector(i), &jk);
                    if left != right {
                        return Err(Error::InvalidModel(format!(
                            "product is not associative on ({}, {}, {})",
                            self.basis[i].label, self.basis[j].label, self.basis[k].label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn pairing(&self) -> &Mat<Q> {
        &self.pairing
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn classes(&self) -> &BTreeMap<String, Vector> {
        &self.classes
    }

    pub fn class(&self, name: &str) -> Result<&[Q]> {
        self.classes
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::MissingClass(name.to_string()))
    }

    /// Adds or replaces a named class.
    pub fn with_class(mut self, name: &str, v: Vector) -> Result<Self> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        self.classes.insert(name.to_string(), v);
        Ok(self)
    }

    /// Cup product.
    pub fn multiply(&self, a: &[Q], b: &[Q]) -> Vector {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                for (k, c) in &self.products[i][j] {
                    out[*k] += x * y * c;
                }
            }
        }
        out
    }

    /// Mukai pairing `⟨a, b⟩ = aᵀ·G·b`.
    pub fn pair(&self, a: &[Q], b: &[Q]) -> Q {
        let gb = self.pairing.apply(&Rationals, b);
        a.iter().zip(&gb).map(|(x, y)| x * y).sum()
    }

    /// Matrix of `α ↦ α · c`.
    pub fn multiplication_matrix(&self, c: &[Q]) -> Mat<Q> {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.multiply(&self.basis_vector(j), c)).collect();
        Mat::from_columns(n, &cols)
    }

    fn parity_indices(&self, odd: bool) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| (self.basis[i].degree.rem_euclid(2) == 1) == odd)
            .collect()
    }

    /// Splits an endomorphism into its even and odd diagonal blocks; fails if
    /// it does not preserve parity.
    pub fn parity_blocks(&self, m: &Mat<Q>) -> Result<(Mat<Q>, Mat<Q>)> {
        let even = self.parity_indices(false);
        let odd = self.parity_indices(true);
        for &i in &even {
            for &j in &odd {
                if !m.get(i, j).is_zero() || !m.get(j, i).is_zero() {
                    return Err(Error::InvalidModel("map does not preserve parity".into()));
                }
            }
        }
        let block = |idx: &[usize]| Mat::from_fn(idx.len(), idx.len(), |a, b| m.get(idx[a], idx[b]).clone());
        Ok((block(&even), block(&odd)))
    }
}

/// `(even, odd)` blocks of `α ↦ (−1)ⁿ(α·ch_L) − α`.
pub fn line_bundle_hp_map(m: &CohomologyModel, n: i64) -> Result<(Mat<Q>, Mat<Q>)> {
    let k = Rationals;
    let ch = m.class("ch_L")?;
    let f = m.multiplication_matrix(ch).scale(&k, &k.sign(n));
    m.parity_blocks(&f.minus_identity(&k)?)
}

/// `HP±` dimensions of the orbit by `− ⊗ L ∘ Σⁿ`.
pub fn line_bundle_hp(m: &CohomologyModel, n: i64) -> Result<HpDims> {
    let (even, odd) = line_bundle_hp_map(m, n)?;
    hp_sixterm_from_differences(&even, &odd)
}

/// `v = ch_E · sqrt_Td`.
pub fn mukai_vector(m: &CohomologyModel) -> Result<Vector> {
    Ok(m.multiply(m.class("ch_E")?, m.class("sqrt_Td")?))
}

/// Matrix of `α ↦ ⟨α, v⟩·v` with `v = ch_E · sqrt_Td`, i.e. `v·(G·v)ᵀ`.
pub fn spherical_projection(m: &CohomologyModel) -> Result<Mat<Q>> {
    let v = mukai_vector(m)?;
    let n = m.dim();
    let cols: Vec<Vector> = (0..n)
        .map(|j| {
            let c = m.pair(&m.basis_vector(j), &v);
            v.iter().map(|x| x * &c).collect()
        })
        .collect();
    Ok(Mat::from_columns(n, &cols))
}

/// `HP±` dimensions of the orbit by a spherical twist, whose `F − Id` is
/// minus the projection.
pub fn spherical_hp(m: &CohomologyModel) -> Result<HpDims> {
    let k = Rationals;
    let p = spherical_projection(m)?.scale(&k, &k.from_i64(-1));
    let (even, odd) = m.parity_blocks(&p)?;
    hp_sixterm_from_differences(&even, &odd)
}

/// `x ↦ (chi_row · x)·e_class` on `Z^m`.
pub fn spherical_k0_map(chi_row: &[BigInt], e_class: &[BigInt]) -> Result<GroupHom> {
    if chi_row.len() != e_class.len() {
        return Err(Error::DimensionMismatch {
            expected: chi_row.len(),
            found: e_class.len(),
        });
    }
    let m = chi_row.len();
    let mut a = IntMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            a[(i, j)] = &e_class[i] * &chi_row[j];
        }
    }
    GroupHom::endomorphism(AbPresentation::free(m), a)
}

/// `K₀` of the orbit by a spherical twist: `coker(−map)`.
pub fn spherical_k0_orbit(chi_row: &[BigInt], e_class: &[BigInt]) -> Result<FgAbGroup> {
    Ok(spherical_k0_map(chi_row, e_class)?.neg().cokernel())
}

/// `K₀(C) ≅ Z ⊕ Pic(C)` with the class of a line bundle `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveK0 {
    pic: AbPresentation,
    l_class: Vec<BigInt>,
}

impl CurveK0 {
    pub fn new(pic: AbPresentation, l_class: Vec<BigInt>) -> Result<Self> {
        if l_class.len() != pic.generators() {
            return Err(Error::DimensionMismatch {
                expected: pic.generators(),
                found: l_class.len(),
            });
        }
        Ok(Self { pic, l_class })
    }

    pub fn pic(&self) -> &AbPresentation {
        &self.pic
    }

    pub fn l_class(&self) -> &[BigInt] {
        &self.l_class
    }

    /// `Z ⊕ Pic`, the rank summand first.
    pub fn presentation(&self) -> AbPresentation {
        AbPresentation::free(1).direct_sum(&self.pic)
    }

    /// `T_L(r, e) = (r, e + r·l)`.
    pub fn twist_matrix(&self) -> IntMatrix {
        let g = self.pic.generators();
        let mut t = IntMatrix::identity(g + 1);
        for (i, l) in self.l_class.iter().enumerate() {
            t[(i + 1, 0)] = l.clone();
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveOrbitKh0 {
    /// `coker((−1)ⁿ·T_L − Id)` by Smith normal form.
    pub computed: FgAbGroup,
    /// `Z ⊕ Pic/⟨L⟩` for `n` even, `Z/2 ⊕ Pic/⟨L⟩` for `n` odd.
    pub product_formula: FgAbGroup,
    pub warnings: Vec<Warning>,
}

/// `KH₀` of the orbit of a curve by `− ⊗ L ∘ Σⁿ`.
pub fn curve_orbit_kh0(c: &CurveK0, n: i64) -> Result<CurveOrbitKh0> {
    let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
    let t = c.twist_matrix().scale(&BigInt::from(sign));
    let f = GroupHom::endomorphism(c.presentation(), t)?;
    let computed = f.minus_identity()?.cokernel();
    let pic_mod_l = c.pic.quotient_by_elements(core::slice::from_ref(&c.l_class))?;
    let head = if sign == 1 { FgAbGroup::free(1) } else { FgAbGroup::cyclic(2) };
    let product_formula = head.direct_sum(&pic_mod_l);
    let mut warnings = Vec::new();
    if computed != product_formula {
        warnings.push(Warning::new(
            "product-formula-mismatch",
            format!(
                "cokernel computed by Smith normal form is {computed}, \
                 while the product formula gives {product_formula}; reporting the cokernel"
            ),
        ));
    }
    Ok(CurveOrbitKh0 {
        computed,
        product_formula,
        warnings,
    })
}

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn frac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn element(label: &str, degree: i64) -> BasisElement {
    BasisElement {
        label: label.to_string(),
        degree,
    }
}

fn unit_vector(n: usize, i: usize, c: Q) -> Vector {
    let mut v = vec![Q::zero(); n];
    v[i] = c;
    v
}

/// Unit products `1·x = x·1 = x` for a model whose basis starts with `1`.
fn unit_products(n: usize) -> Vec<(usize, usize, Vector)> {
    let mut out = vec![(0, 0, unit_vector(n, 0, q(1)))];
    for i in 1..n {
        out.push((0, i, unit_vector(n, i, q(1))));
        out.push((i, 0, unit_vector(n, i, q(1))));
    }
    out
}

/// A point: `H = Q` in degree 0, all classes equal to 1.
pub fn point_model() -> CohomologyModel {
    let one = vec![q(1)];
    CohomologyModel::new(
        vec![element("1", 0)],
        unit_products(1),
        Mat::identity(&Rationals, 1),
        [("ch_L", one.clone()), ("ch_E", one.clone()), ("sqrt_Td", one)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    )
    .expect("point model is valid")
}

/// Curve of genus `g` with a line bundle of degree `d`.
///
/// Basis `1, a_1, b_1, …, a_g, b_g, pt` in degrees 0, 1, 2 with
/// `a_i·b_i = pt = −b_i·a_i`. The pairing is `⟨α, β⟩ = ∫ α^∨·β`, where `∨`
/// negates the degree-2 part. `ch_L = 1 + d·pt`, `ch_E = 1`,
/// `sqrt_Td = 1 + (1−g)/2·pt`.
pub fn curve_model(g: usize, d: i64) -> CohomologyModel {
    let n = 2 * g + 2;
    let top = n - 1;
    let mut basis = vec![element("1", 0)];
    for i in 1..=g {
        basis.push(element(&format!("a{i}"), 1));
        basis.push(element(&format!("b{i}"), 1));
    }
    basis.push(element(if g == 0 { "h" } else { "pt" }, 2));
    let mut products = unit_products(n);
    for i in 0..g {
        let (a, b) = (1 + 2 * i, 2 + 2 * i);
        products.push((a, b, unit_vector(n, top, q(1))));
        products.push((b, a, unit_vector(n, top, q(-1))));
    }
    // ∫ α^∨ β: (1, pt) ↦ 1, (pt, 1) ↦ −1, (a_i, b_i) ↦ 1, (b_i, a_i) ↦ −1.
    let mut pairing = Mat::zeros(&Rationals, n, n);
    pairing.set(0, top, q(1));
    pairing.set(top, 0, q(-1));
    for i in 0..g {
        let (a, b) = (1 + 2 * i, 2 + 2 * i);
        pairing.set(a, b, q(1));
        pairing.set(b, a, q(-1));
    }
    let mut ch_l = unit_vector(n, 0, q(1));
    ch_l[top] = q(d);
    let mut td = unit_vector(n, 0, q(1));
    td[top] = frac(1 - g as i64, 2);
    let classes = [("ch_L", ch_l), ("ch_E", unit_vector(n, 0, q(1))), ("sqrt_Td", td)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    CohomologyModel::new(basis, products, pairing, classes).expect("curve model is valid")
}

/// `P¹` with `O(d)`: basis `1, h` and `h² = 0`.
pub fn p1_model(d: i64) -> CohomologyModel {
    curve_model(0, d)
}

/// Even-degree model on the K3 lattice `U³ ⊕ E8(−1)²`.
///
/// Basis `1`, 22 degree-2 classes, `pt`. The product is `c·c' = Q(c, c')·pt`
/// and the pairing is `⟨(r,c,s),(r',c',s')⟩ = Q(c,c') − r·s' − s·r'`.
/// `ch_E = 1`, `sqrt_Td = 1 + pt`, and `ch_L = 1 + e` for an isotropic `e`
/// in the first hyperbolic plane.
pub fn k3_model() -> CohomologyModel {
    let form = k3_lattice();
    let n = 24;
    let mut basis = vec![element("1", 0)];
    basis.extend((1..=22).map(|i| element(&format!("c{i}"), 2)));
    basis.push(element("pt", 4));
    let mut products = unit_products(n);
    for i in 0..22 {
        for j in 0..22 {
            let v = &form[(i, j)];
            if !v.is_zero() {
                products.push((i + 1, j + 1, unit_vector(n, 23, Q::from_integer(v.clone()))));
            }
        }
    }
    let mut pairing = Mat::zeros(&Rationals, n, n);
    pairing.set(0, 23, q(-1));
    pairing.set(23, 0, q(-1));
    for i in 0..22 {
        for j in 0..22 {
            pairing.set(i + 1, j + 1, Q::from_integer(form[(i, j)].clone()));
        }
    }
    let mut td = unit_vector(n, 0, q(1));
    td[23] = q(1);
    let mut ch_l = unit_vector(n, 0, q(1));
    ch_l[1] = q(1);
    let classes = [("ch_L", ch_l), ("ch_E", unit_vector(n, 0, q(1))), ("sqrt_Td", td)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    CohomologyModel::new(basis, products, pairing, classes).expect("K3 model is valid")
}

/// Gram matrix of `U³ ⊕ E8(−1)²`.
pub fn k3_lattice() -> IntMatrix {
    let mut form = IntMatrix::zeros(22, 22);
    for h in 0..3 {
        form[(2 * h, 2 * h + 1)] = BigInt::one();
        form[(2 * h + 1, 2 * h)] = BigInt::one();
    }
    // E8(−1) = −(2·Id − adjacency); the adjacency is read off the E8 quiver.
    let e8 = Quiver::preset("E8").expect("E8 preset exists");
    let index = |v: &str| e8.vertices().iter().position(|x| x == v).expect("known vertex");
    for off in [6, 14] {
        for i in 0..8 {
            form[(off + i, off + i)] = BigInt::from(-2);
        }
        for (s, t) in e8.arrows() {
            let (i, j) = (index(s), index(t));
            form[(off + i, off + j)] = BigInt::one();
            form[(off + j, off + i)] = BigInt::one();
        }
    }
    form
}

/// Named models: `point`, `P1`, `genus<g>`, `k3`. `degree` sets `deg L` for
/// curves.
pub fn builtin_model(name: &str, degree: i64) -> Result<CohomologyModel> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "point" => Ok(point_model()),
        "p1" => Ok(p1_model(degree)),
        "k3" => Ok(k3_model()),
        _ => lower
            .strip_prefix("genus")
            .and_then(|g| g.parse::<usize>().ok())
            .map(|g| curve_model(g, degree))
            .ok_or_else(|| Error::InvalidModel(format!("unknown built-in model {name:?}"))),
    }
}
