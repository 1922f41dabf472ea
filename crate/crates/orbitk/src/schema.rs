//! JSON input and output formats.
//!
//! Integers and rationals are written as decimal strings (`"3"`, `"-1/2"`)
//! so that no consumer truncates them to 64 bits; plain JSON integers are
//! accepted on input.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use orbitk_core::abgroup::{AbPresentation, FgAbGroup};
use orbitk_core::dgcore::{CompositionEntry, DgEndofunctor, FiniteDgCategory, GradedComplex};
use orbitk_core::field::{parse_rational, Field, Mat, Rationals};
use orbitk_core::mukai::{BasisElement, CohomologyModel};
use orbitk_core::orbit_triangle::{
    integral_degree, DegreeData, FieldKind, InvariantSpec, OrbitDegreeResult, SpecFlags,
};
use orbitk_core::{Error, IntMatrix, Quiver};
use serde::{Deserialize, Serialize};

pub type Result<T> = std::result::Result<T, Error>;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

/// A number given either as a JSON integer or as a decimal string.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    pub fn integer(&self) -> Result<BigInt> {
        match self {
            Num::Int(v) => Ok(BigInt::from(*v)),
            Num::Text(s) => s.trim().parse().map_err(|_| invalid(format!("bad integer {s:?}"))),
        }
    }

    pub fn rational(&self) -> Result<BigRational> {
        match self {
            Num::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
            Num::Text(s) => parse_rational(s),
        }
    }
}

pub type MatrixJson = Vec<Vec<Num>>;

fn shape(rows: &MatrixJson, cols: Option<usize>) -> Result<(usize, usize)> {
    let r = rows.len();
    let c = cols.unwrap_or_else(|| rows.first().map_or(0, Vec::len));
    if let Some(bad) = rows.iter().position(|row| row.len() != c) {
        return Err(invalid(format!("matrix row {bad} has length {}, expected {c}", rows[bad].len())));
    }
    Ok((r, c))
}

pub fn int_matrix(rows: &MatrixJson, cols: Option<usize>) -> Result<IntMatrix> {
    let (r, c) = shape(rows, cols)?;
    let entries = rows.iter().flatten().map(Num::integer).collect::<Result<Vec<_>>>()?;
    IntMatrix::new(r, c, entries)
}

pub fn rational_matrix(rows: &MatrixJson, cols: Option<usize>) -> Result<Mat<BigRational>> {
    let (r, c) = shape(rows, cols)?;
    let entries = rows.iter().flatten().map(Num::rational).collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_fn(r, c, |i, j| entries[i * c + j].clone()))
}

pub fn field_matrix<F: Field>(k: &F, rows: &MatrixJson, cols: Option<usize>) -> Result<Mat<F::Elem>> {
    let (r, c) = shape(rows, cols)?;
    let entries = rows
        .iter()
        .flatten()
        .map(|x| k.from_rational(&x.rational()?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_fn(r, c, |i, j| entries[i * c + j].clone()))
}

pub fn field_vector<F: Field>(k: &F, v: &[Num]) -> Result<Vec<F::Elem>> {
    v.iter().map(|x| k.from_rational(&x.rational()?)).collect()
}

/// Integer matrix as rows of decimal strings.
pub fn render_int_matrix(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

pub fn render_matrix<E: Clone + std::fmt::Display>(m: &Mat<E>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

/// Compact single-line rendering, `[[1,0],[0,1]]`.
pub fn matrix_line(rows: &[Vec<String>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(","))).collect();
    format!("[{}]", inner.join(","))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<(String, String)>,
}

impl QuiverJson {
    pub fn to_core(&self) -> Result<Quiver> {
        Quiver::new(&self.vertices, &self.arrows)
    }
}

/// `"Z^2 (+) Z/3"` or `{"rank": 2, "torsion": [3]}`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum GroupJson {
    Text(String),
    Parts {
        #[serde(default)]
        rank: usize,
        #[serde(default)]
        torsion: Vec<Num>,
    },
}

impl GroupJson {
    pub fn to_core(&self) -> Result<FgAbGroup> {
        match self {
            GroupJson::Text(s) => s.parse(),
            GroupJson::Parts { rank, torsion } => {
                let orders = torsion.iter().map(Num::integer).collect::<Result<Vec<_>>>()?;
                if orders.iter().any(|d| *d < BigInt::from(1)) {
                    return Err(invalid("torsion orders must be positive"));
                }
                Ok(FgAbGroup::from_orders(*rank, &orders))
            }
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsJson {
    #[serde(default)]
    pub connective: bool,
    #[serde(default)]
    pub two_periodic: bool,
    #[serde(default)]
    pub regular: bool,
    /// `"Q"` or `"F<p>"`; absent for integral coefficients.
    #[serde(default)]
    pub field_coefficients: Option<String>,
}

pub fn parse_field(s: &str) -> Result<FieldKind> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldKind::Rationals);
    }
    t.strip_prefix(['F', 'f'])
        .and_then(|p| p.parse::<u64>().ok())
        .map(FieldKind::Prime)
        .ok_or_else(|| invalid(format!("unknown field {s:?}, expected Q or F<p>")))
}

/// One stored degree. Integral degrees give `group`; field degrees give
/// `dim`. A missing `auto` means the identity.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeJson {
    #[serde(default)]
    pub group: Option<GroupJson>,
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub auto: Option<MatrixJson>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SpecJson {
    #[serde(default)]
    pub flags: FlagsJson,
    pub degrees: BTreeMap<String, DegreeJson>,
}

impl SpecJson {
    pub fn to_core(&self) -> Result<InvariantSpec> {
        let field = self.flags.field_coefficients.as_deref().map(parse_field).transpose()?;
        let mut degrees = BTreeMap::new();
        for (key, d) in &self.degrees {
            let n: i64 = key.trim().parse().map_err(|_| invalid(format!("bad degree key {key:?}")))?;
            let data = match (field, &d.group, d.dim) {
                (None, Some(g), None) => {
                    let g = g.to_core()?;
                    let size = g.presentation().generators();
                    let auto = match &d.auto {
                        Some(m) => int_matrix(m, Some(size))?,
                        None => IntMatrix::identity(size),
                    };
                    if auto.rows() != size {
                        return Err(invalid(format!("degree {n}: auto must be {size}x{size}")));
                    }
                    integral_degree(&g, auto)?
                }
                (Some(_), None, Some(dim)) => {
                    let k = Rationals;
                    let auto = match &d.auto {
                        Some(m) => rational_matrix(m, Some(dim))?,
                        None => Mat::identity(&k, dim),
                    };
                    if auto.rows() != dim {
                        return Err(invalid(format!("degree {n}: auto must be {dim}x{dim}")));
                    }
                    DegreeData::Linear(auto)
                }
                (None, _, _) => return Err(invalid(format!("degree {n}: integral data needs \"group\" only"))),
                (Some(_), _, _) => return Err(invalid(format!("degree {n}: field data needs \"dim\" only"))),
            };
            degrees.insert(n, data);
        }
        let flags = SpecFlags {
            connective: self.flags.connective,
            two_periodic: self.flags.two_periodic,
            regular: self.flags.regular,
        };
        InvariantSpec::new(degrees, flags, field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeResultJson {
    pub degree: i64,
    pub coker: String,
    pub ker: String,
    pub resolved: Option<String>,
    pub ambiguous: bool,
}

impl From<&OrbitDegreeResult> for DegreeResultJson {
    fn from(r: &OrbitDegreeResult) -> Self {
        Self {
            degree: r.degree,
            coker: r.coker_piece.to_string(),
            ker: r.ker_piece.to_string(),
            resolved: r.resolved.as_ref().map(ToString::to_string),
            ambiguous: r.ambiguous,
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BasisJson {
    pub label: String,
    pub degree: i64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProductJson {
    pub left: String,
    pub right: String,
    pub value: Vec<Num>,
}

/// Cohomology model: basis, structure constants (unlisted products are
/// zero), pairing matrix and named classes, all in basis coordinates.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ModelJson {
    pub basis: Vec<BasisJson>,
    #[serde(default)]
    pub mult: Vec<ProductJson>,
    pub pairing: MatrixJson,
    #[serde(default)]
    pub classes: BTreeMap<String, Vec<Num>>,
}

fn label_index(labels: &[String], l: &str) -> Result<usize> {
    labels
        .iter()
        .position(|x| x == l)
        .ok_or_else(|| invalid(format!("unknown label {l:?}")))
}

impl ModelJson {
    pub fn to_core(&self) -> Result<CohomologyModel> {
        let labels: Vec<String> = self.basis.iter().map(|b| b.label.clone()).collect();
        let n = labels.len();
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement { label: b.label.clone(), degree: b.degree })
            .collect();
        let mut products = Vec::with_capacity(self.mult.len());
        for p in &self.mult {
            let v = p.value.iter().map(Num::rational).collect::<Result<Vec<_>>>()?;
            products.push((label_index(&labels, &p.left)?, label_index(&labels, &p.right)?, v));
        }
        let pairing = rational_matrix(&self.pairing, Some(n))?;
        if pairing.rows() != n {
            return Err(invalid(format!("pairing must be {n}x{n}")));
        }
        let classes = self
            .classes
            .iter()
            .map(|(k, v)| Ok((k.clone(), v.iter().map(Num::rational).collect::<Result<Vec<_>>>()?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        CohomologyModel::new(basis, products, pairing, classes)
    }
}

/// A finite dg category. Objects are referred to by name; `units` gives, per
/// object, the basis index of its identity in `End(x)`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub field: String,
    pub objects: Vec<String>,
    #[serde(default)]
    pub homs: Vec<HomJson>,
    #[serde(default)]
    pub compositions: Vec<CompositionJson>,
    pub units: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct HomJson {
    pub source: String,
    pub target: String,
    pub degrees: Vec<i64>,
    /// `differential[i][j]` is the `e_i` coefficient of `d(e_j)`; zero when absent.
    #[serde(default)]
    pub differential: Option<MatrixJson>,
}

/// `e_g ∘ e_f = value` for `e_f ∈ A(x, y)`, `e_g ∈ A(y, z)`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionJson {
    pub x: String,
    pub y: String,
    pub z: String,
    pub g: usize,
    pub f: usize,
    pub value: Vec<Num>,
}

impl CategoryJson {
    pub fn field_kind(&self) -> Result<FieldKind> {
        parse_field(&self.field)
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::InvalidDgData(format!("unknown object {name:?}")))
    }

    pub fn to_core<F: Field>(&self, k: F) -> Result<FiniteDgCategory<F>> {
        let mut homs = BTreeMap::new();
        for h in &self.homs {
            let key = (self.index(&h.source)?, self.index(&h.target)?);
            let n = h.degrees.len();
            let d = match &h.differential {
                Some(m) => field_matrix(&k, m, Some(n))?,
                None => Mat::zeros(&k, n, n),
            };
            if d.rows() != n {
                return Err(Error::InvalidDgData(format!("differential of {key:?} must be {n}x{n}")));
            }
            if homs.insert(key, GradedComplex::new(&k, h.degrees.clone(), d)?).is_some() {
                return Err(Error::InvalidDgData(format!("hom {key:?} given twice")));
            }
        }
        let mut compositions = Vec::with_capacity(self.compositions.len());
        for c in &self.compositions {
            compositions.push(CompositionEntry {
                x: self.index(&c.x)?,
                y: self.index(&c.y)?,
                z: self.index(&c.z)?,
                g: c.g,
                f: c.f,
                value: field_vector(&k, &c.value)?,
            });
        }
        let mut units = Vec::with_capacity(self.objects.len());
        for o in &self.objects {
            units.push(
                *self
                    .units
                    .get(o)
                    .ok_or_else(|| Error::InvalidDgData(format!("no unit for object {o:?}")))?,
            );
        }
        FiniteDgCategory::with_basis_units(k, self.objects.clone(), homs, compositions, units)
    }
}

/// A dg endofunctor: object map by name, and the matrix of each nonzero hom
/// map `A(x, y) → A(Fx, Fy)`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorJson {
    pub object_map: BTreeMap<String, String>,
    #[serde(default)]
    pub hom_maps: Vec<HomMapJson>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct HomMapJson {
    pub source: String,
    pub target: String,
    pub matrix: MatrixJson,
}

impl FunctorJson {
    pub fn to_core<F: Field>(&self, cat: &FiniteDgCategory<F>) -> Result<DgEndofunctor<F::Elem>> {
        let k = cat.field();
        let index = |name: &str| {
            cat.objects()
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| Error::InvalidDgData(format!("unknown object {name:?}")))
        };
        let mut object_map = Vec::with_capacity(cat.object_count());
        for o in cat.objects() {
            let image = self
                .object_map
                .get(o)
                .ok_or_else(|| Error::InvalidDgData(format!("object map misses {o:?}")))?;
            object_map.push(index(image)?);
        }
        let mut maps = BTreeMap::new();
        for h in &self.hom_maps {
            let (x, y) = (index(&h.source)?, index(&h.target)?);
            let cols = cat.dim(x, y);
            maps.insert((x, y), field_matrix(k, &h.matrix, Some(cols))?);
        }
        DgEndofunctor::new(cat, object_map, maps)
    }
}

/// `Pic` presentation from a group string such as `"Z"` or `"Z (+) Z/4"`.
pub fn pic_presentation(s: &str) -> Result<AbPresentation> {
    Ok(s.parse::<FgAbGroup>()?.presentation())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(text: &str) -> Result<InvariantSpec> {
        serde_json::from_str::<SpecJson>(text).unwrap().to_core()
    }

    #[test]
    fn numbers_accept_both_forms() {
        let m: MatrixJson = serde_json::from_str(r#"[[1, "-2"], ["1/2", 0]]"#).unwrap();
        assert!(int_matrix(&m, None).is_err());
        let q = rational_matrix(&m, None).unwrap();
        assert_eq!(render_matrix(&q), [["1", "-2"], ["1/2", "0"]]);
        let big: MatrixJson = serde_json::from_str(r#"[["123456789012345678901234567890"]]"#).unwrap();
        assert_eq!(render_int_matrix(&int_matrix(&big, None).unwrap())[0][0], "123456789012345678901234567890");
    }

    #[test]
    fn ragged_matrices_are_rejected() {
        let m: MatrixJson = serde_json::from_str("[[1, 2], [3]]").unwrap();
        assert!(int_matrix(&m, None).is_err());
    }

    #[test]
    fn fields_parse() {
        assert_eq!(parse_field("Q").unwrap(), FieldKind::Rationals);
        assert_eq!(parse_field("F7").unwrap(), FieldKind::Prime(7));
        assert!(parse_field("R").is_err());
    }

    #[test]
    fn group_forms_agree() {
        let a: GroupJson = serde_json::from_str(r#""Z^2 (+) Z/3""#).unwrap();
        let b: GroupJson = serde_json::from_str(r#"{"rank": 2, "torsion": [3]}"#).unwrap();
        assert_eq!(a.to_core().unwrap(), b.to_core().unwrap());
    }

    #[test]
    fn missing_auto_is_identity() {
        let s = spec(r#"{"flags": {"connective": true}, "degrees": {"0": {"group": "Z^2"}}}"#).unwrap();
        let DegreeData::Integral(f) = s.entry(0).unwrap().into_owned() else { panic!("integral") };
        assert_eq!(*f.matrix(), IntMatrix::identity(2));
    }

    #[test]
    fn spec_validation() {
        assert!(spec(r#"{"degrees": {"x": {"group": "Z"}}}"#).is_err());
        assert!(spec(r#"{"degrees": {"0": {"dim": 2}}}"#).is_err());
        assert!(spec(r#"{"degrees": {"0": {"group": "Z", "auto": [[2]]}}}"#).is_err());
        assert!(spec(r#"{"flags": {"field_coefficients": "F3"}, "degrees": {"0": {"dim": 1, "auto": [[2]]}}}"#).is_ok());
        assert!(serde_json::from_str::<SpecJson>(r#"{"degrees": {}, "extra": 1}"#).is_err());
    }

    #[test]
    fn category_round_trip() {
        let text = r#"{
            "field": "F5",
            "objects": ["x", "y"],
            "homs": [
                {"source": "x", "target": "x", "degrees": [0]},
                {"source": "y", "target": "y", "degrees": [0]},
                {"source": "x", "target": "y", "degrees": [0]}
            ],
            "units": {"x": 0, "y": 0}
        }"#;
        let j: CategoryJson = serde_json::from_str(text).unwrap();
        assert_eq!(j.field_kind().unwrap(), FieldKind::Prime(5));
        let cat = j.to_core(orbitk_core::field::PrimeField::new(5).unwrap()).unwrap();
        assert_eq!(cat.dim(0, 1), 1);
        assert_eq!(cat.dim(1, 0), 0);
        let f: FunctorJson = serde_json::from_str(r#"{"object_map": {"x": "y", "y": "x"}}"#).unwrap();
        assert!(f.to_core(&cat).is_err());
    }
}
