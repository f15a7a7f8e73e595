//! Reed-Solomon list recovery under random inputs.
//!
//! The crate covers exact finite-field arithmetic ([`gf`]), Reed-Solomon
//! codes and their weight distributions ([`rscode`]), the list-recovery
//! decision and counting problem ([`recovery`]), random instance models and
//! closed-form predictors ([`randmodel`]), finite-field Fourier analysis of
//! the codeword count ([`fourier`]), Monte Carlo threshold scans
//! ([`experiments`]) and the biased-coin CNF ([`coincnf`]).

pub mod coincnf;
pub mod error;
pub mod experiments;
pub mod fourier;
pub mod gf;
pub mod randmodel;
pub mod recovery;
pub mod rng;
pub mod rscode;
pub mod selfcheck;
pub mod stats;

pub use error::{Error, Result};
pub use gf::{Field, FieldElem, FieldSpec};
