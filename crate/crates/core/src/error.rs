use thiserror::Error;

use crate::gf2::SympVec;
use crate::pauli::PauliOp;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("row {row} is linearly dependent on the preceding rows")]
    DependentRows { row: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("infeasible code structure: {0}")]
    Infeasible(String),

    #[error(
        "declared split c1={declared_c1} c2={declared_c2} does not match derived c1={derived_c1} c2={derived_c2}{}",
        anticommuting_note(.anticommuting)
    )]
    SplitMismatch {
        declared_c1: usize,
        declared_c2: usize,
        derived_c1: usize,
        derived_c2: usize,
        /// First pair of g_quantum rows (1-based) with symplectic product 1, if any.
        anticommuting: Option<(usize, usize)>,
    },

    #[error("invalid Pauli string {0:?}")]
    PauliParse(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(
        "uncorrectable error pair {} and {}",
        PauliOp::from_symplectic(.0.clone()),
        PauliOp::from_symplectic(.1.clone())
    )]
    Uncorrectable(SympVec, SympVec),

    #[error("syndrome is nonzero; apply a recovery before readout")]
    NonzeroSyndrome,

    #[error("operator acts on receiver qubit {0}")]
    ReceiverQubit(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn anticommuting_note(pair: &Option<(usize, usize)>) -> String {
    match pair {
        Some((a, b)) => format!(" (g_quantum rows {a} and {b} anticommute)"),
        None => String::new(),
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}
