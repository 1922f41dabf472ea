//! Finitely generated abelian groups.
//!
//! [`FgAbGroup`] is always canonical (free rank plus an invariant-factor
//! chain), so isomorphism is field equality. Presentations by generators and
//! relations only appear as the endpoints of a [`GroupHom`].

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactla::{cokernel_presentation, kernel_basis, IntMatrix, Lattice};

/// `Z^rank ⊕ Z/d1 ⊕ … ⊕ Z/dk` with `2 ≤ d1 | d2 | … | dk`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z/d`; `d = 0` gives `Z` and `|d| = 1` the trivial group.
    pub fn cyclic(d: impl Into<BigInt>) -> Self {
        Self::from_orders(0, &[d.into()])
    }

    /// `Z^rank ⊕ ⊕ Z/orders[i]` for arbitrary orders, canonicalized.
    /// A zero order contributes a free summand.
    pub fn from_orders(rank: usize, orders: &[BigInt]) -> Self {
        let diag = IntMatrix::diagonal(orders);
        let torsion_part = cokernel_presentation(&diag);
        Self {
            rank: rank + torsion_part.rank,
            invariant_factors: torsion_part.invariant_factors,
        }
    }

    /// Caller guarantees canonical form.
    pub(crate) fn from_canonical_parts(rank: usize, invariant_factors: Vec<BigInt>) -> Self {
        debug_assert!(invariant_factors.iter().all(|d| d > &BigInt::one()));
        debug_assert!(invariant_factors
            .windows(2)
            .all(|w| w[1].is_multiple_of(&w[0])));
        Self {
            rank,
            invariant_factors,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn torsion(&self) -> Self {
        Self {
            rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        Self::from_orders(self.rank + other.rank, &orders)
    }

    /// `G ⊗ Z/m`, for `m ≥ 1`.
    pub fn tensor_cyclic(&self, m: &BigInt) -> Self {
        let mut orders: Vec<BigInt> = (0..self.rank).map(|_| m.clone()).collect();
        orders.extend(self.invariant_factors.iter().map(|d| d.gcd(m)));
        Self::from_orders(0, &orders)
    }

    /// The `m`-torsion subgroup `{g : m·g = 0}`, for `m ≥ 1`.
    pub fn m_torsion(&self, m: &BigInt) -> Self {
        let orders: Vec<BigInt> = self.invariant_factors.iter().map(|d| d.gcd(m)).collect();
        Self::from_orders(0, &orders)
    }

    /// The presentation with one generator per summand.
    pub fn presentation(&self) -> AbPresentation {
        let gens = self.rank + self.invariant_factors.len();
        let mut rel = IntMatrix::zeros(gens, self.invariant_factors.len());
        for (k, d) in self.invariant_factors.iter().enumerate() {
            rel[(self.rank + k, k)] = d.clone();
        }
        AbPresentation {
            generators: gens,
            relations: rel,
        }
    }
}

impl fmt::Display for FgAbGroup {
    /// `0`, `Z^r`, `Z/d1 (+) Z/d2 …`, or `Z^r (+) Z/d1 …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        if self.rank > 0 {
            write!(f, "Z^{}", self.rank)?;
            first = false;
        }
        for d in &self.invariant_factors {
            if !first {
                f.write_str(" (+) ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for FgAbGroup {
    type Err = Error;

    /// Accepts the canonical rendering plus the looser `Z`, `Z/6 (+) Z/4`
    /// (non-canonical orders) and `+` as separator.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(alloc::format!("cannot parse group {s:?}"));
        let s = s.trim();
        if s == "0" {
            return Ok(Self::trivial());
        }
        let mut rank = 0usize;
        let mut orders = Vec::new();
        for term in s.split("(+)").flat_map(|t| t.split('+')) {
            let term = term.trim();
            if term == "0" {
                continue;
            }
            let rest = term.strip_prefix('Z').ok_or_else(bad)?;
            if rest.is_empty() {
                rank += 1;
            } else if let Some(r) = rest.strip_prefix('^') {
                rank += r.trim().parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = rest.strip_prefix('/') {
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_negative() {
                    return Err(bad());
                }
                orders.push(d);
            } else {
                return Err(bad());
            }
        }
        Ok(Self::from_orders(rank, &orders))
    }
}

/// `Z^generators / column-span(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbPresentation {
    generators: usize,
    relations: IntMatrix,
}

impl AbPresentation {
    pub fn new(relations: IntMatrix) -> Self {
        Self {
            generators: relations.rows(),
            relations,
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            generators: rank,
            relations: IntMatrix::zeros(rank, 0),
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn canonical(&self) -> FgAbGroup {
        cokernel_presentation(&self.relations)
    }

    /// Direct sum of presentations; generators of `self` come first.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let g = self.generators + other.generators;
        let k1 = self.relations.cols();
        let mut rel = IntMatrix::zeros(g, k1 + other.relations.cols());
        for i in 0..self.generators {
            for j in 0..k1 {
                rel[(i, j)] = self.relations[(i, j)].clone();
            }
        }
        for i in 0..other.generators {
            for j in 0..other.relations.cols() {
                rel[(self.generators + i, k1 + j)] = other.relations[(i, j)].clone();
            }
        }
        Self::new(rel)
    }

    /// `self^copies`, as the block-diagonal presentation.
    pub fn power(&self, copies: usize) -> Self {
        (0..copies).fold(Self::free(0), |acc, _| acc.direct_sum(self))
    }

    /// Quotient by additional elements, given in generator coordinates.
    pub fn quotient_by_elements(&self, elems: &[Vec<BigInt>]) -> Result<FgAbGroup> {
        let mut extra = IntMatrix::zeros(self.generators, elems.len());
        for (j, e) in elems.iter().enumerate() {
            if e.len() != self.generators {
                return Err(Error::DimensionMismatch {
                    expected: self.generators,
                    found: e.len(),
                });
            }
            for (i, x) in e.iter().enumerate() {
                extra[(i, j)] = x.clone();
            }
        }
        Ok(cokernel_presentation(&self.relations.hstack(&extra)?))
    }

    fn relation_lattice(&self) -> Lattice {
        Lattice::from_generators(&self.relations)
    }
}

impl From<&FgAbGroup> for AbPresentation {
    fn from(g: &FgAbGroup) -> Self {
        g.presentation()
    }
}

/// A homomorphism between presented groups, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: AbPresentation,
    target: AbPresentation,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Validates the shape and that relations of the source land in the
    /// relation lattice of the target.
    pub fn new(source: AbPresentation, target: AbPresentation, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.generators || matrix.cols() != source.generators {
            return Err(Error::ShapeMismatch {
                left: (matrix.rows(), matrix.cols()),
                right: (target.generators, source.generators),
            });
        }
        let images = matrix.checked_mul(&source.relations)?;
        let lattice = target.relation_lattice();
        for j in 0..images.cols() {
            if !lattice.contains(&images.column(j)) {
                return Err(Error::IllFormedHom(alloc::format!(
                    "source relation {j} maps outside the target relations"
                )));
            }
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn endomorphism(group: AbPresentation, matrix: IntMatrix) -> Result<Self> {
        Self::new(group.clone(), group, matrix)
    }

    pub fn identity(group: AbPresentation) -> Self {
        let n = group.generators;
        Self {
            source: group.clone(),
            target: group,
            matrix: IntMatrix::identity(n),
        }
    }

    pub fn zero(source: AbPresentation, target: AbPresentation) -> Self {
        let matrix = IntMatrix::zeros(target.generators, source.generators);
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn source(&self) -> &AbPresentation {
        &self.source
    }

    pub fn target(&self) -> &AbPresentation {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// `self - Id`, for endomorphisms.
    pub fn minus_identity(&self) -> Result<Self> {
        if !self.is_endomorphism() {
            return Err(Error::IllFormedHom("not an endomorphism".to_string()));
        }
        Ok(Self {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.minus_identity()?,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.neg(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(c),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::IllFormedHom(
                "composition of incompatible homomorphisms".to_string(),
            ));
        }
        Ok(Self {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.checked_mul(&other.matrix)?,
        })
    }

    /// Target modulo the image.
    pub fn cokernel(&self) -> FgAbGroup {
        let stacked = self
            .target
            .relations
            .hstack(&self.matrix)
            .expect("target relations and matrix share the row count");
        cokernel_presentation(&stacked)
    }

    pub fn kernel(&self) -> FgAbGroup {
        let s = self.source.generators;
        // x with M x in span(R_t) is the projection of ker [M | R_t].
        let block = self
            .matrix
            .hstack(&self.target.relations)
            .expect("matrix and target relations share the row count");
        let k = kernel_basis(&block);
        let mut proj = IntMatrix::zeros(s, k.cols());
        for i in 0..s {
            for j in 0..k.cols() {
                proj[(i, j)] = k[(i, j)].clone();
            }
        }
        let preimage = Lattice::from_generators(&proj);
        let rels = &self.source.relations;
        let mut coords = IntMatrix::zeros(preimage.rank(), rels.cols());
        for j in 0..rels.cols() {
            let c = preimage
                .coordinates(&rels.column(j))
                .expect("well-defined hom: source relations lie in the preimage lattice");
            for (i, x) in c.into_iter().enumerate() {
                coords[(i, j)] = x;
            }
        }
        cokernel_presentation(&coords)
    }

    /// Bijective on the presented groups.
    pub fn is_automorphism(&self) -> bool {
        self.is_endomorphism() && self.cokernel().is_trivial() && self.kernel().is_trivial()
    }
}

/// Convenience: `coker(f)`.
pub fn cokernel_of_hom(f: &GroupHom) -> FgAbGroup {
    f.cokernel()
}

/// Convenience: `ker(f)`.
pub fn kernel_of_hom(f: &GroupHom) -> FgAbGroup {
    f.kernel()
}

pub fn direct_sum(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    a.direct_sum(b)
}

pub fn quotient_by_elements(g: &AbPresentation, elems: &[Vec<BigInt>]) -> Result<FgAbGroup> {
    g.quotient_by_elements(elems)
}

/// Parses a comma-separated integer vector such as `"2,0,-1"`.
pub fn parse_int_vector(s: &str) -> Result<Vec<BigInt>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidSpec(alloc::format!("bad integer {t:?}")))
        })
        .collect()
}
