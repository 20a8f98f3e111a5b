//! Built-in codes: the modified Shor code, the eight-qubit entanglement-assisted code, and the
//! BCH-derived 63-qubit family.

use crate::code::{CodeParams, EacqCode};
use crate::error::{Error, Result};
use crate::gf2::{BitMat, SympMat};
use crate::gf2m::{bch_generator_polynomial, cyclic_parity_check_matrix, GF2m, Gf2Poly};

#[derive(Clone, Debug)]
pub struct NamedCode {
    pub name: &'static str,
    /// Bracket with the literature distance in `d_claimed`.
    pub params: CodeParams,
    pub code: EacqCode,
    pub notes: &'static str,
}

fn named(name: &'static str, code: EacqCode, d: usize, notes: &'static str) -> NamedCode {
    let mut params = code.params();
    params.d_claimed = Some(d);
    NamedCode {
        name,
        params,
        code,
        notes,
    }
}

/// Check matrix of the nine-qubit Shor code.
pub fn shor_hq() -> SympMat {
    SympMat::from_strs(
        9,
        &[
            "110000000|000000000",
            "011000000|000000000",
            "000110000|000000000",
            "000011000|000000000",
            "000000110|000000000",
            "000000011|000000000",
            "000000000|111111000",
            "000000000|000111111",
        ],
    )
    .expect("well-formed literal")
}

/// The [8,3] classical code paired with the Shor code.
pub fn classical_8_3_a() -> BitMat {
    BitMat::from_strs(&["10101000", "00010100", "11100000", "10010010", "11111101"])
        .expect("well-formed literal")
}

/// The [8,3] classical code paired with the eight-qubit code.
pub fn classical_8_3_b() -> BitMat {
    BitMat::from_strs(&["10101000", "01100000", "10110100", "00110010", "01101101"])
        .expect("well-formed literal")
}

/// Check matrix of the [[8,1,3;1]] entanglement-assisted code.
pub fn hq_8_1_3_1() -> SympMat {
    SympMat::from_strs(
        8,
        &[
            "11000000|00000000",
            "10100000|00000000",
            "00011000|00000000",
            "00010100|00000000",
            "00000011|00000000",
            "00000000|11111100",
            "00000001|00000000",
            "00000000|11100011",
        ],
    )
    .expect("well-formed literal")
}

/// The [[9,1,3;0]] Shor code.
pub fn shor_code() -> EacqCode {
    EacqCode::eaqecc(shor_hq()).expect("Shor code is valid")
}

pub fn eacq_9_1_3() -> NamedCode {
    let code = EacqCode::build(shor_hq(), classical_8_3_a()).expect("catalog code is valid");
    named(
        "eacq-9-1-3",
        code,
        3,
        "Shor code with an [8,3] classical code on its check rows",
    )
}

pub fn eacq_8_1_3_1() -> NamedCode {
    let code = EacqCode::build(hq_8_1_3_1(), classical_8_3_b()).expect("catalog code is valid");
    named(
        "eacq-8-1-3-1",
        code,
        3,
        "[[8,1,3;1]] entanglement-assisted code with an [8,3] classical code",
    )
}

pub fn eaqecc_8_1_3_1() -> NamedCode {
    let code = EacqCode::eaqecc(hq_8_1_3_1()).expect("catalog code is valid");
    named(
        "eaqecc-8-1-3-1",
        code,
        3,
        "[[8,1,3;1]] entanglement-assisted code",
    )
}

pub fn shor_9_1_3() -> NamedCode {
    named("shor-9-1-3", shor_code(), 3, "nine-qubit Shor code")
}

/// GF(2⁶) modulo x⁶ + x + 1.
pub fn gf64() -> GF2m {
    GF2m::new(6, 0b100_0011).expect("x^6 + x + 1 is primitive")
}

/// Generator polynomial of the narrow-sense [63,39,9] BCH code.
pub fn bch_63_39_9_generator() -> Gf2Poly {
    bch_generator_polynomial(&gf64(), 9)
}

/// 24×63 cyclic parity-check matrix of the [63,39,9] BCH code.
pub fn bch_63_39_9() -> BitMat {
    cyclic_parity_check_matrix(&bch_63_39_9_generator(), 63)
}

/// EA-CSS code with quantum check rows `(h|0)` and `(0|h)`.
pub fn ea_css(h: &BitMat) -> Result<EacqCode> {
    if let Some(row) = h.first_dependent_row() {
        return Err(Error::DependentRows { row });
    }
    let zeros = BitMat::zeros(h.nrows(), h.ncols());
    let z_part = SympMat::from_halves(h, &zeros)?;
    let x_part = SympMat::from_halves(&zeros, h)?;
    EacqCode::eaqecc(z_part.concat(&x_part)?)
}

pub fn eaqecc_63_21_9() -> NamedCode {
    let code = ea_css(&bch_63_39_9()).expect("BCH check matrix has independent rows");
    named(
        "eaqecc-63-21-9",
        code,
        9,
        "EA-CSS code of the [63,39,9] BCH code over GF(64) mod x^6+x+1",
    )
}

pub fn eacq_63_21_12() -> NamedCode {
    let base = ea_css(&bch_63_39_9()).expect("BCH check matrix has independent rows");
    let code = base.enhance(0, 6).expect("six pairs available");
    named(
        "eacq-63-21-12",
        code,
        7,
        "EA-CSS BCH code with all six symplectic pairs moved to the classical stabilizer",
    )
}

pub fn all() -> Vec<NamedCode> {
    vec![
        eacq_9_1_3(),
        eacq_8_1_3_1(),
        eacq_63_21_12(),
        shor_9_1_3(),
        eaqecc_8_1_3_1(),
        eaqecc_63_21_9(),
    ]
}

pub fn names() -> [&'static str; 6] {
    [
        "eacq-9-1-3",
        "eacq-8-1-3-1",
        "eacq-63-21-12",
        "shor-9-1-3",
        "eaqecc-8-1-3-1",
        "eaqecc-63-21-9",
    ]
}

pub fn by_name(name: &str) -> Option<NamedCode> {
    match name {
        "eacq-9-1-3" => Some(eacq_9_1_3()),
        "eacq-8-1-3-1" => Some(eacq_8_1_3_1()),
        "eacq-63-21-12" => Some(eacq_63_21_12()),
        "shor-9-1-3" => Some(shor_9_1_3()),
        "eaqecc-8-1-3-1" => Some(eaqecc_8_1_3_1()),
        "eaqecc-63-21-9" => Some(eaqecc_63_21_9()),
        _ => None,
    }
}
