//! Groebner representations of binary linear codes and the gradient descent
//! decoders built on them.
//!
//! The coset monoid GF(2)^n / C is stored as a transversal of coset leaders
//! plus the table of unit-step transitions between cosets
//! ([`representation`]). Decoding by walking that table toward the zero
//! coset and decoding by subtracting test-set codewords ([`decoders`]) both
//! read off the same structure; the border of the transversal
//! ([`border`]) links the two by producing a test set of minimal codewords.

pub mod border;
pub mod code;
pub mod codes;
pub mod decoders;
pub mod error;
pub mod gf2;
pub mod harness;
pub mod par;
pub mod representation;

pub use code::{BinaryCode, Syndrome};
pub use decoders::{DecodeResult, Step};
pub use error::{Error, ErrorKind, Result};
pub use gf2::{BitWord, Gf2Matrix, WeightOrder};
pub use par::Exec;
pub use representation::{
    BuildLimits, CompactRepresentation, CosetTable, GroebnerRepresentation, Representation,
};
