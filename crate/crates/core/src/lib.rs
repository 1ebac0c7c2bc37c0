//! A workbench for second-order logic.
//!
//! * [`syntax`]: one formula type for the second-order language and the
//!   first-order language of application symbols `Ap_n`, with
//!   capture-avoiding substitution, alpha-equivalence, parsing and printing.
//! * [`coding`]: the variable bijections `φ_n`, the star coding into the
//!   first-order language, the reverse coding, and comprehension instances.
//! * [`deduction`]: a natural-deduction kernel and proof translators in both
//!   directions.
//! * [`classical`] and [`kripke`]: finite model evaluators and the semantic
//!   translations of first-order models into second-order ones.
//! * [`workbench`]: countermodel search, worked-example reports, and the
//!   machinery behind the `sologic` command line.

pub mod classical;
pub mod coding;
pub mod deduction;
pub mod kripke;
pub mod relation;
pub mod sexpr;
pub mod stock;
pub mod syntax;
pub mod workbench;

pub use syntax::{alpha_eq, parse_formula, parse_term, Abstraction, Binder, Formula, Term, Var1, Var2};
