//! Entanglement-assisted, classically enhanced quantum codes `[[n, q:c, d; e]]`.
//!
//! The building blocks are bit-packed symplectic vectors over GF(2) ([`gf2`]), Pauli operators
//! ([`pauli`]), the code object ([`code`]), syndrome decoding and distance search
//! ([`correction`]), sign-tracking stabilizer simulation ([`simulator`]) and the built-in codes
//! ([`catalog`]).

pub mod catalog;
pub mod code;
pub mod correction;
pub mod error;
pub mod gf2;
pub mod gf2m;
pub mod pauli;
pub mod simulator;

pub use code::{canonical_f, parse_code_file, CodeParams, EacqCode};
pub use error::{Error, Result};
pub use gf2::{symplectic_product, BitMat, BitVec, GramSchmidtResult, SympMat, SympVec};
pub use pauli::PauliOp;
