//! Exact computations with differential graded path algebras.
//!
//! The crate builds DG quiver algebras (minimal models of Koszul algebras,
//! McKay-quiver models of cyclic quotient singularities, Ginzburg algebras of
//! quivers with potential), quotients them by vertex idempotents, and checks
//! their structure degree by degree with exact rational linear algebra:
//! `d² = 0`, cohomology in a window of bidegrees, presentations of `H⁰`, and
//! the pairing element `ω` attached to the ascending/descending split of a
//! McKay model.
//!
//! Paths compose left to right: `p · q` runs through `p` first and vanishes
//! unless `target(p) = source(q)`.

pub mod cy;
pub mod dg;
pub mod element;
pub mod error;
pub mod ginzburg;
pub mod homology;
pub mod io;
pub mod koszul;
pub mod linalg;
pub mod path;
pub mod presentation;
pub mod quiver;
pub mod report;

pub use dg::{check_d_squared, check_grading, Differential};
pub use element::{graded_commutator, Coeff, Element};
pub use error::{Error, Result};
pub use koszul::{delete_vertex, mckay_model, polynomial_model, McKayData, MinimalModel};
pub use path::Path;
pub use presentation::{PresentedAlgebra, QuadraticPresentation};
pub use quiver::{Arrow, ArrowId, GradedQuiver, Vertex};
pub use report::{CheckReport, ReportSet, Status};
