//! Finite acyclic quivers with Cartan, Euler and Coxeter matrices.
//!
//! Matrices are indexed by vertex declaration order. The Coxeter matrix is
//! `Φ = −C⁻ᵀ·C`, where `C[i][j]` counts directed paths from `i` to `j`.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactla::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
    /// a topological order of the vertex indices
    order: Vec<usize>,
}

impl Quiver {
    /// Validates unique labels, known endpoints and acyclicity.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_owned()).collect();
        for (i, v) in labels.iter().enumerate() {
            if labels[..i].contains(v) {
                return Err(Error::InvalidQuiver(alloc::format!("duplicate vertex {v:?}")));
            }
        }
        let index = |s: &str| {
            labels
                .iter()
                .position(|v| v == s)
                .ok_or_else(|| Error::InvalidQuiver(alloc::format!("unknown vertex {s:?}")))
        };
        let arrows = arrows
            .iter()
            .map(|(s, t)| Ok((index(s.as_ref())?, index(t.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(labels, arrows)
    }

    fn from_indices(vertices: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let mut indegree = vec![0usize; n];
        for &(_, t) in &arrows {
            indegree[t] += 1;
        }
        // Kahn's algorithm, smallest index first so the order is stable.
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).rev().collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &(s, t) in &arrows {
                if s == v {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        ready.push(t);
                        ready.sort_unstable_by(|a, b| b.cmp(a));
                    }
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&v| indegree[v] > 0).expect("some vertex is on a cycle");
            return Err(Error::CyclicQuiver(vertices[stuck].clone()));
        }
        Ok(Self {
            vertices,
            arrows,
            order,
        })
    }

    /// Named presets: `A<s>`, `D<s>` (s ≥ 4), `E6`, `E7`, `E8`, `kronecker<m>`.
    ///
    /// `A<s>` is the linear orientation `1 → 2 → ⋯ → s`. `D<s>` is the chain
    /// `1 → ⋯ → s−1` with an extra arrow `s−2 → s`; `E<s>` is the chain
    /// `1 → ⋯ → s−1` with an extra arrow `3 → s`. Vertices are labelled
    /// `"1"`, `"2"`, ….
    pub fn preset(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownPreset(name.to_owned());
        let lower = name.trim().to_ascii_lowercase();
        let parse = |s: &str| s.trim_start_matches('-').parse::<usize>().map_err(|_| unknown());
        if let Some(m) = lower.strip_prefix("kronecker") {
            return Ok(Self::kronecker(parse(m)?));
        }
        let (kind, rest) = lower.split_at(lower.chars().next().map_or(0, char::len_utf8));
        let s = parse(rest)?;
        match kind {
            "a" if s >= 1 => Ok(Self::linear(s)),
            "d" if s >= 4 => Ok(Self::branched(s, s - 2)),
            "e" if (6..=8).contains(&s) => Ok(Self::branched(s, 3)),
            _ => Err(unknown()),
        }
    }

    /// `1 → 2 → ⋯ → s`.
    pub fn linear(s: usize) -> Self {
        let arrows = (1..s).map(|i| (i - 1, i)).collect();
        Self::from_indices(numbered(s), arrows).expect("linear quiver is acyclic")
    }

    /// Two vertices with `m` parallel arrows `1 → 2`.
    pub fn kronecker(m: usize) -> Self {
        Self::from_indices(numbered(2), vec![(0, 1); m]).expect("Kronecker quiver is acyclic")
    }

    /// Chain `1 → ⋯ → s−1` plus an arrow from vertex `branch` to vertex `s`.
    fn branched(s: usize, branch: usize) -> Self {
        let mut arrows: Vec<(usize, usize)> = (1..s - 1).map(|i| (i - 1, i)).collect();
        arrows.push((branch - 1, s - 1));
        Self::from_indices(numbered(s), arrows).expect("tree quiver is acyclic")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> impl Iterator<Item = (&str, &str)> {
        self.arrows
            .iter()
            .map(|&(s, t)| (self.vertices[s].as_str(), self.vertices[t].as_str()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// `C[i][j]` = number of directed paths `i → j`, trivial paths included.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let n = self.vertices.len();
        let mut c = IntMatrix::zeros(n, n);
        // Sinks first: paths(i, ·) = e_i + Σ_{i→k} paths(k, ·).
        for &i in self.order.iter().rev() {
            c[(i, i)] = BigInt::one();
            for &(s, t) in &self.arrows {
                if s == i {
                    for j in 0..n {
                        let v = c[(t, j)].clone();
                        c[(i, j)] += v;
                    }
                }
            }
        }
        c
    }

    /// `C⁻ᵀ`, the Gram matrix of the Euler form on the simple basis.
    ///
    /// Path counting gives `C = Σ_k A^k = (I − A)⁻¹` for the arrow-count
    /// matrix `A`, so `C⁻ᵀ = (I − A)ᵀ`.
    pub fn euler_form(&self) -> IntMatrix {
        let n = self.vertices.len();
        let mut out = IntMatrix::identity(n);
        for &(s, t) in &self.arrows {
            out[(t, s)] -= BigInt::one();
        }
        out
    }

    /// `Φ = −C⁻ᵀ·C`.
    pub fn coxeter_matrix(&self) -> IntMatrix {
        (&self.euler_form() * &self.cartan_matrix()).neg()
    }
}

fn numbered(s: usize) -> Vec<String> {
    (1..=s).map(|i| alloc::format!("{i}")).collect()
}

pub fn cartan_matrix(q: &Quiver) -> IntMatrix {
    q.cartan_matrix()
}

pub fn coxeter_matrix(q: &Quiver) -> IntMatrix {
    q.coxeter_matrix()
}

pub fn euler_form(q: &Quiver) -> IntMatrix {
    q.euler_form()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[[i64; 2]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn a2_matrices() {
        let q = Quiver::preset("A2").unwrap();
        assert_eq!(q.cartan_matrix(), m(&[[1, 1], [0, 1]]));
        assert_eq!(q.euler_form(), m(&[[1, 0], [-1, 1]]));
        assert_eq!(q.coxeter_matrix(), m(&[[-1, -1], [1, 0]]));
    }

    #[test]
    fn euler_form_inverts_cartan() {
        use crate::field::{inverse, Mat, Rationals};
        let k = Rationals;
        for name in ["A5", "D6", "E8", "kronecker4"] {
            let q = Quiver::preset(name).unwrap();
            let inv = inverse(&k, &Mat::from_int_matrix(&k, &q.cartan_matrix())).unwrap();
            let e = q.euler_form();
            for i in 0..q.vertex_count() {
                for j in 0..q.vertex_count() {
                    assert_eq!(inv.get(j, i).to_integer(), e[(i, j)], "{name}");
                }
            }
        }
    }

    #[test]
    fn single_vertex() {
        let q = Quiver::preset("A1").unwrap();
        assert_eq!(q.cartan_matrix(), IntMatrix::from_i64_rows(&[[1]]));
        assert_eq!(q.euler_form(), IntMatrix::from_i64_rows(&[[1]]));
        assert_eq!(q.coxeter_matrix(), IntMatrix::from_i64_rows(&[[-1]]));
    }

    #[test]
    fn kronecker3_matrices() {
        let q = Quiver::preset("kronecker3").unwrap();
        assert_eq!(q.cartan_matrix(), m(&[[1, 3], [0, 1]]));
        assert_eq!(q.euler_form(), m(&[[1, 0], [-3, 1]]));
        assert_eq!(q.coxeter_matrix(), m(&[[-1, -3], [3, 8]]));
        assert_eq!(Quiver::preset("kronecker-3").unwrap(), q);
    }

    #[test]
    fn path_counts_through_a_diamond() {
        let q = Quiver::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap();
        let c = q.cartan_matrix();
        assert_eq!(c[(0, 3)], BigInt::from(2));
        assert_eq!(c[(3, 0)], BigInt::from(0));
    }

    #[test]
    fn declaration_order_need_not_be_topological() {
        let q = Quiver::new(&["2", "1"], &[("1", "2")]).unwrap();
        assert_eq!(q.cartan_matrix(), m(&[[1, 0], [1, 1]]));
    }

    #[test]
    fn rejects_cycles_and_bad_labels() {
        assert!(matches!(
            Quiver::new(&["1", "2"], &[("1", "2"), ("2", "1")]),
            Err(Error::CyclicQuiver(_))
        ));
        assert!(matches!(
            Quiver::new(&["1"], &[("1", "1")]),
            Err(Error::CyclicQuiver(_))
        ));
        assert!(Quiver::new(&["1", "1"], &[]).is_err());
        assert!(Quiver::new(&["1"], &[("1", "9")]).is_err());
    }

    #[test]
    fn presets() {
        assert_eq!(Quiver::preset("D4").unwrap().arrow_count(), 3);
        assert_eq!(Quiver::preset("E8").unwrap().vertex_count(), 8);
        assert!(Quiver::preset("E9").is_err());
        assert!(Quiver::preset("D3").is_err());
        assert!(Quiver::preset("A0").is_err());
        assert!(Quiver::preset("X2").is_err());
    }

    #[test]
    fn dynkin_coxeter_orders() {
        // Coxeter numbers: A_s → s+1, D_s → 2s−2, E6/7/8 → 12/18/30.
        for (name, h) in [("A4", 5), ("D5", 8), ("E6", 12), ("E7", 18), ("E8", 30)] {
            let phi = Quiver::preset(name).unwrap().coxeter_matrix();
            let n = phi.rows();
            let mut p = IntMatrix::identity(n);
            for k in 1..=h {
                p = &p * &phi;
                assert_eq!(p == IntMatrix::identity(n), k == h, "{name} at power {k}");
            }
        }
    }
}
