//! Higher-level analyses built on the algebra modules: lattice statistics,
//! exhaustive census, the shipped corpus, seeded random generation and the
//! verification suites.

pub mod census;
pub mod chain;
pub mod corpus;
pub mod random;
pub mod suites;

pub use chain::{
    chain_report, lattice_dot, min_family_act, truncation_family_report, LatticeReport,
};
pub use random::{random_act, random_monoid, RandomConfig};
pub use suites::{
    replay, verify_suite, Instance, ReplayFile, SuiteConfig, VerificationReport, SUITES,
};
