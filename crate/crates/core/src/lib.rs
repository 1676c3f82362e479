//! Congruences of combinatorial sequences through digit expansions.

pub mod cli;
pub mod digits;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod lucas;
pub mod residues;
pub mod thue_morse;
pub mod verify;

pub use digits::{DigitString, Natural};
pub use error::{Error, Result};
pub use exact::{SequenceId, SignedBig};
pub use lucas::Residue;
