//! Exact computations on bounded, finitely additive charge spaces.
//!
//! A charge space is a field of subsets with a nonnegative, finitely additive
//! charge. Two universes are supported: finite ground sets, where a field is
//! a partition into atoms carrying rational weights, and the natural numbers
//! with fields of eventually periodic sets charged by density. Everything is
//! decided in exact rational arithmetic.
//!
//! Runnable tours of each capability live in `examples/`:
//!
//! ```text
//! cargo run --example finite_spaces        # fields, charges, ideals, field-plus-ideal
//! cargo run --example periodic_sets        # eventually periodic sets and density
//! cargo run --example outer_completion     # outer charge, Peano-Jordan sets, completion
//! cargo run --example measurability        # T1/T2, smoothness, distance, equality a.e.
//! cargo run --example dyadic_sequences     # determining sequences from dyadic grids
//! cargo run --example integration          # integrals, L_p pseudonorms, order of integrals
//! cargo run --example null_modification    # chains, null modification, isomorphism check
//! cargo run --example theorem_suites       # seeded randomized checks with repro files
//! ```
//!
//! The `chargelab` binary exposes the same operations on JSON documents.

pub mod chain;
pub mod cli;
pub mod completion;
pub mod doc;
pub mod dyadic;
pub mod error;
pub mod function;
pub mod integration;
pub mod oracle;
pub mod periodic;
pub mod rational;
pub mod sets;

pub use completion::{ChargeSpace, PjReport, Subset, Universe};
pub use error::{Error, Result};
pub use function::{FunctionRep, Realized, SimpleFunction};
pub use periodic::{EpSet, NatFieldKind};
pub use rational::Q;
pub use sets::{Field, FiniteChargeSpace, PointSet};
