//! Syndromes, the error-correcting conditions, decoder tables and distance search.
//!
//! Errors act on the sender's `n` qubits only. A pair of errors is correctable when their
//! difference either anticommutes with some generator of `S_Q` or lies in the isotropic part
//! `⟨S_Q,I, S_C,I⟩` of the full stabilizer.

mod decoder;
mod distance;
pub(crate) mod enumerate;

use std::collections::HashMap;

use crate::code::EacqCode;
use crate::error::{check_len, Result};
use crate::gf2::{BitVec, SympVec};

pub use decoder::{build_decoder, DecodeTable};
pub use distance::{distance, distance_with, DistanceOptions, DistanceReport, Strategy};
pub use enumerate::errors_up_to;

/// How a pair of errors relates under a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorClass {
    /// Different syndromes.
    Distinguishable,
    /// Equal syndromes; the difference lies in `S_Q,I`.
    DegenerateQuantum,
    /// Equal syndromes; the difference lies in `⟨S_Q,I, S_C,I⟩` but not in `S_Q,I`.
    DegenerateClassical,
    /// Equal syndromes; the difference is a nontrivial logical or classical operator.
    Uncorrectable,
}

impl ErrorClass {
    pub fn is_correctable(self) -> bool {
        self != ErrorClass::Uncorrectable
    }
}

/// Bit `j` is the symplectic product of `g_quantum` row `j` with `error`.
pub fn syndrome(code: &EacqCode, error: &SympVec) -> Result<BitVec> {
    check_len(code.n(), error.n())?;
    Ok(BitVec::from_bools(
        code.g_quantum().rows().iter().map(|g| g.product(error)),
    ))
}

pub fn classify_pair(code: &EacqCode, e1: &SympVec, e2: &SympVec) -> Result<ErrorClass> {
    check_len(code.n(), e1.n())?;
    check_len(code.n(), e2.n())?;
    let diff = e1 + e2;
    Ok(classify_difference(code, &diff))
}

fn classify_difference(code: &EacqCode, diff: &SympVec) -> ErrorClass {
    if code.g_quantum().rows().iter().any(|g| g.product(diff)) {
        ErrorClass::Distinguishable
    } else if code.quantum_radical_contains(diff) {
        ErrorClass::DegenerateQuantum
    } else if code.radical_contains(diff) {
        ErrorClass::DegenerateClassical
    } else {
        ErrorClass::Uncorrectable
    }
}

/// Whether `E_m†E_p = diff` meets the code's correctability criterion: outside `N(S_Q)`, or
/// inside `⟨S_Q,I, S_C,I⟩`. For a code with `c = 0` this is the EAQECC criterion.
pub fn satisfies_condition(code: &EacqCode, diff: &SympVec) -> Result<bool> {
    check_len(code.n(), diff.n())?;
    Ok(classify_difference(code, diff).is_correctable())
}

/// The first pair of indices `(i, j)`, `i < j`, of an uncorrectable pair in `errors`.
pub fn first_uncorrectable_pair(
    code: &EacqCode,
    errors: &[SympVec],
) -> Result<Option<(usize, usize)>> {
    // Within one syndrome, pairs are correctable iff both lie in the same radical coset.
    let mut groups: HashMap<BitVec, (usize, Vec<u64>)> = HashMap::new();
    let mut witness: Option<(usize, usize)> = None;
    for (j, e) in errors.iter().enumerate() {
        let syn = syndrome(code, e)?;
        let class = code.radical_class(e);
        match groups.get(&syn) {
            Some((i, first_class)) => {
                if *first_class != class && witness.is_none_or(|w| (*i, j) < w) {
                    witness = Some((*i, j));
                }
            }
            None => {
                groups.insert(syn, (j, class));
            }
        }
    }
    Ok(witness)
}

/// True iff no pair of `errors` is [`ErrorClass::Uncorrectable`].
pub fn is_correctable_set(code: &EacqCode, errors: &[SympVec]) -> Result<bool> {
    Ok(first_uncorrectable_pair(code, errors)?.is_none())
}
