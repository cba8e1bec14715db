//! Finite monoids acting on finite sets.
//!
//! The crate builds monoids from tables or transformations, constructs right
//! acts, enumerates their subact and congruence lattices, and checks
//! structural statements about chain conditions, Rees exact sequences and
//! Fitting decompositions on exhaustive small instances.

pub mod act;
pub mod analyze;
pub mod congruence;
pub mod dot;
pub mod error;
pub mod exact;
pub mod io;
pub mod monoid;
pub mod morphism;
pub mod sets;
pub mod union_find;

pub use act::{ActClassification, CoproductMode, RightAct, Subact};
pub use analyze::{LatticeReport, SuiteConfig, VerificationReport};
pub use congruence::{Congruence, Method};
pub use error::{Error, Result};
pub use exact::{FittingReport, ReesSes};
pub use io::{MonoidDef, Workspace, WorkspaceFile};
pub use monoid::{Monoid, MonoidClassification, MonoidHom};
pub use morphism::ActHom;
