//! Gluing equations, Ptolemy relations and cusp equations for `PGL(n,C)`
//! representations of 3-manifolds given by concrete ideal triangulations,
//! together with numerical solving, Neumann-Zagier data and the 1-loop
//! invariant.
//!
//! The central objects are:
//!
//! * [`triangulation::ConcreteTriangulation`] — tetrahedra with S4 face
//!   pairings, orientation signs and peripheral curves;
//! * [`lattice`] — integral points of `Δ³_n`, their classification and the
//!   quotient under face identifications;
//! * [`gluing`] — the generalized gluing equations, Neumann-Zagier matrices
//!   and the `β`/`β*` chain complex;
//! * [`ptolemy`] — Ptolemy relations with identification signs, decorations,
//!   the monomial map `μ` and X/diamond/ratio coordinates;
//! * [`cocycle`] — the natural `(PGL(n,C),B,H)` and `(SL(n,C),N)` cocycles on
//!   doubly truncated simplices, holonomy and unipotence tests;
//! * [`cusp`] — level cusp equations along peripheral edge paths;
//! * [`solver`] — damped Newton solving, NZ reduction, flattenings and the
//!   1-loop invariant.
//!
//! See the `examples/` directory for end-to-end usage; each major capability
//! has a runnable example driven by the bundled figure-eight fixture.

pub mod cmatrix;
pub mod cocycle;
pub mod cusp;
pub mod error;
pub mod fixtures;
pub mod gluing;
pub mod intmat;
pub mod lattice;
pub mod perm;
pub mod ptolemy;
pub mod shape;
pub mod solver;
pub mod triangulation;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;
