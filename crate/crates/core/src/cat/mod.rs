//! The locative category of projects, MALL formulas and proofs, and their
//! interpretation.

pub mod dsl;
pub mod figure1;
pub mod formula;
pub mod interpret;
pub mod morphism;
pub mod proof;
pub mod relocation;

pub use formula::Formula;
pub use interpret::{interpret, Valuation};
pub use proof::Proof;
pub use relocation::{LocVertex, Relocation};
