//! Exact algorithms for matroid polytopes.
//!
//! Covers matroid oracles, multi-criteria projections and search heuristics,
//! brute-force oracles, Ehrhart polynomials and h*-vectors (closed forms for
//! uniform matroids and a rational generating-function pipeline for general
//! ones), and determinant checks on incidence-vector simplices.

pub mod catalog;
pub mod combinatorics;
pub mod ehrhart;
pub mod error;
pub mod heuristics;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod multicriteria;
pub mod oracles;
pub mod polynomial;
pub mod uniform;

pub use error::{Error, Result};
pub use linalg::Rational;
pub use matroid::{Backend, Basis, Caps, Matroid, PolytopeConstraints};
pub use multicriteria::{BoundingBox, Objective, ProjectedPoint, WeightMatrix};
pub use polynomial::{EhrhartPolynomial, HStarVector, LatticeCountTable};
pub use ehrhart::{GenFunTerm, LatticeFrame, Triangulation};
pub use heuristics::{SearchOutcome, SearchParams, SearchReport, Searcher, Termination};
