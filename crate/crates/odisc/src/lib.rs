//! Orthogonal discriminants of ordinary and modular characters.
//!
//! The crate has three layers:
//!
//! * exact arithmetic: [`gf`] (finite fields) and [`numfield`] (small abelian
//!   number fields with prime ideals and square classes);
//! * form algebra: [`quadform`] (quadratic forms over finite fields, O+/O-
//!   classification) and [`invform`] (invariant forms of a matrix
//!   representation);
//! * character machinery: [`chardata`] (decomposition data, orthogonal
//!   stability, the modular discriminant combiner), [`solver`] (ordinary
//!   discriminants from modular constraints) and [`bundle`] (JSON group-data
//!   ingestion for the CLI).

pub mod bundle;
pub mod chardata;
pub mod gf;
pub mod invform;
pub mod numfield;
pub mod quadform;
pub mod solver;
