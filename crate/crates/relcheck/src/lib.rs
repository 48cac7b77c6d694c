//! Double categories of relations at desk scale.
//!
//! This crate builds double categories whose proarrows are relations in a
//! finite category equipped with a proper, stable orthogonal factorization
//! system, audits arbitrary finite double categories against the structural
//! conditions that characterize such double categories (unit-purity,
//! equipment structure, strong/discrete/functorial tabulators, the Frobenius
//! law for local products, Beck-Chevalley), synthesizes the cover/inclusion
//! factorization system on the base category from the double-categorical
//! data, and constructs and verifies the oplax/lax adjoint equivalence
//! between a double category and the relation double category rebuilt from
//! its base.
//!
//! Everything is exhaustive and witness-producing: a failed condition always
//! comes with a concrete, replayable counterexample.
//!
//! The main entry points are:
//!
//! - [`category`] — finite categories as explicit tables, limits by
//!   universal-property search, factorization systems and their validation;
//! - [`finset`] — the skeletal category of finite sets, function tables,
//!   and relations as boolean matrices (the fast reference backend);
//! - [`dbl`] — the [`dbl::DoubleCategory`] interface and its backends;
//! - [`audit`] — the condition-by-condition audit with witnesses;
//! - [`equivalence`] — the functors `F` and `G`, the adjunction data, and
//!   the equivalence verdict;
//! - [`formats`] — the `.fcat`, `.fs`, `.dblcat` and `.dblrep` file formats.

pub mod audit;
pub mod budget;
pub mod category;
pub mod dbl;
pub mod equivalence;
pub mod finset;
pub mod formats;

pub use budget::Budget;
