//! Solver library for two-dimensional high-frequency scattering of a plane
//! wave by a penetrable convex polygon.
//!
//! The boundary integral formulation couples the exterior and interior
//! Helmholtz problems through the Cauchy data on the polygon boundary. The
//! unknown trace is written as a geometrical-optics part, computed by beam
//! tracing, plus a diffracted remainder approximated in a space of
//! corner-phased Legendre polynomials on graded meshes and solved for by a
//! Galerkin method. A conventional hp boundary element solver provides
//! reference solutions, and post-processing produces boundary errors, near
//! fields and far-field patterns.

mod dd;

pub mod beamtrace;
pub mod bie;
pub mod geometry;
pub mod hnaspace;
pub mod par;
pub mod postproc;
pub mod solver;
pub mod specfun;

pub use beamtrace::{GoField, MediumWave, ScatteringProblem};
pub use geometry::{BoundaryPoint, ConvexPolygon, PolygonSpec, Vec2};
pub use hnaspace::{ApproximationSpace, BasisFunction};
pub use solver::{GalerkinSystem, SolveResult};

/// Complex scalar used throughout.
pub type Complex = num_complex::Complex64;
