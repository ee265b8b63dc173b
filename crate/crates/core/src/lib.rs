//! Multigraded Betti numbers of monomial ideals.
//!
//! The crate computes minimal free resolution data of `S/M` for a monomial
//! ideal `M` three independent ways: by strand homology of the Taylor
//! complex ([`oracle`]), by consecutive cancellation ([`taylor`]), and by
//! recursive structural decomposition into dominant and purely nondominant
//! pieces ([`decompose`], [`engine`]).

pub mod conjecture;
pub mod decompose;
pub mod engine;
pub mod error;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod random;
pub mod table;
pub mod taylor;

pub use error::{Error, Result};
pub use field::FieldSpec;
pub use ideal::{classify, minimalize, DominanceClass, DominanceReport, MonomialIdeal};
pub use monomial::{Monomial, VariableSet};
pub use parse::{parse_ideal, parse_ideal_json, parse_monomial, ParsedIdeal};
pub use table::BettiTable;
pub use engine::{betti, pd, Method};
