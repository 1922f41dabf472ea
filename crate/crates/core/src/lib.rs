//! Exact homological invariants of dg orbit categories.
//!
//! The crate is `no_std` (it needs `alloc`). It covers integer normal forms,
//! finitely generated abelian groups, quivers and their Coxeter matrices, the
//! long exact sequence attached to an orbit category, cluster and Kleinian
//! presets, Fourier–Mukai actions on K₀ and cohomology, and a small finite
//! dg-category engine that builds orbit categories explicitly.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod abgroup;
pub mod cluster;
pub mod dgcore;
pub mod error;
pub mod exactla;
pub mod field;
pub mod mukai;
pub mod orbit_triangle;
pub mod quiver;
pub mod warning;

pub use abgroup::{AbPresentation, FgAbGroup, GroupHom};
pub use error::{Error, Result};
pub use exactla::IntMatrix;
pub use quiver::Quiver;
pub use warning::Warning;
