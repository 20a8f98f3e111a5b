//! Pauli operators with phase tracking.
//!
//! A [`PauliOp`] is `i^phase · Z^z X^x` (the product taken qubit by qubit), so its binary part is
//! exactly a [`SympVec`]. The Hermitian representative of a vector carries phase
//! `3·|z ∧ x| mod 4`, because `ZX = iY`; with that phase every `(1|1)` position prints as `Y`.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_len, Error, Result};
use crate::gf2::SympVec;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PauliOp {
    phase: u8,
    v: SympVec,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        Self {
            phase: 0,
            v: SympVec::zeros(n),
        }
    }

    /// The Hermitian operator whose binary image is `v`.
    pub fn from_symplectic(v: SympVec) -> Self {
        let phase = hermitian_phase(&v);
        Self { phase, v }
    }

    /// `i^phase · Z^z X^x`, with the exponent taken mod 4.
    pub fn with_raw_phase(phase: u8, v: SympVec) -> Self {
        Self {
            phase: phase % 4,
            v,
        }
    }

    /// Exponent of `i` in front of `Z^z X^x`.
    pub fn raw_phase(&self) -> u8 {
        self.phase
    }

    /// Exponent of `i` relative to the Hermitian representative: 0 for `+P`, 2 for `−P`.
    pub fn sign_phase(&self) -> u8 {
        (self.phase + 4 - hermitian_phase(&self.v)) % 4
    }

    pub fn is_hermitian(&self) -> bool {
        self.sign_phase().is_multiple_of(2)
    }

    pub fn symplectic(&self) -> &SympVec {
        &self.v
    }

    pub fn into_symplectic(self) -> SympVec {
        self.v
    }

    pub fn n(&self) -> usize {
        self.v.n()
    }

    pub fn weight(&self) -> usize {
        self.v.weight()
    }

    /// True for `±I`, `±iI` as well.
    pub fn is_identity(&self) -> bool {
        self.v.is_zero()
    }

    /// The operator with the opposite sign.
    pub fn negated(&self) -> Self {
        Self {
            phase: (self.phase + 2) % 4,
            v: self.v.clone(),
        }
    }

    /// `self · other`.
    pub fn multiply(&self, other: &PauliOp) -> Result<PauliOp> {
        check_len(self.n(), other.n())?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &PauliOp) -> PauliOp {
        // Z^z X^x · Z^z' X^x' = (−1)^{x·z'} Z^{z+z'} X^{x+x'}
        let swap: u32 = self
            .v
            .x_words()
            .iter()
            .zip(other.v.z_words())
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        let phase = (self.phase + other.phase + 2 * (swap % 2) as u8) % 4;
        PauliOp {
            phase,
            v: &self.v + &other.v,
        }
    }

    pub fn commutes(&self, other: &PauliOp) -> bool {
        !self.v.product(&other.v)
    }
}

fn hermitian_phase(v: &SympVec) -> u8 {
    ((3 * v.y_count()) % 4) as u8
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.sign_phase() {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for q in 0..self.n() {
            let c = match (self.v.z_bit(q), self.v.x_bit(q)) {
                (false, false) => 'I',
                (true, false) => 'Z',
                (false, true) => 'X',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    /// Grammar: `['+'|'-'|'−']? ['i']? [IXYZ]+`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::PauliParse(s.to_string());
        let mut rest = s;
        let mut sign = 0u8;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-').or_else(|| rest.strip_prefix('−')) {
            rest = r;
            sign = 2;
        }
        if let Some(r) = rest.strip_prefix('i') {
            rest = r;
            sign += 1;
        }
        if rest.is_empty() {
            return Err(bad());
        }
        let n = rest.chars().count();
        let mut v = SympVec::zeros(n);
        for (q, c) in rest.chars().enumerate() {
            let (z, x) = match c {
                'I' => (false, false),
                'Z' => (true, false),
                'X' => (false, true),
                'Y' => (true, true),
                _ => return Err(bad()),
            };
            v.set_z(q, z);
            v.set_x(q, x);
        }
        let phase = (hermitian_phase(&v) + sign) % 4;
        Ok(PauliOp { phase, v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn hermitian_representatives() {
        let y = PauliOp::from_symplectic("1|1".parse().unwrap());
        assert_eq!(y.to_string(), "Y");
        assert!(y.is_hermitian());
        let id = PauliOp::from_symplectic(SympVec::zeros(3));
        assert_eq!(id.weight(), 0);
        assert_eq!(id.to_string(), "III");
    }

    #[test]
    fn z_times_x_is_i_y() {
        let zx = p("Z").multiply(&p("X")).unwrap();
        assert_eq!(zx.symplectic(), p("Y").symplectic());
        assert_eq!(zx.sign_phase(), 1);
        assert_eq!(zx.to_string(), "+iY");
        let xz = p("X").multiply(&p("Z")).unwrap();
        assert_eq!(xz.to_string(), "-iY");
    }

    #[test]
    fn parse_examples() {
        let g1 = p("ZZIZZIZZI");
        assert_eq!(g1.symplectic().to_string(), "110110110|000000000");
        assert_eq!(g1.raw_phase(), 0);
        let minus_y = p("-Y");
        assert_eq!(minus_y.sign_phase(), 2);
        assert_eq!(minus_y.to_string(), "-Y");
        assert!(matches!("QQ".parse::<PauliOp>(), Err(Error::PauliParse(_))));
        assert!("".parse::<PauliOp>().is_err());
        assert!("-".parse::<PauliOp>().is_err());
    }

    #[test]
    fn identity_is_neutral() {
        let a = p("XYZI");
        assert_eq!(a.multiply(&PauliOp::identity(4)).unwrap(), a);
        assert!(a.multiply(&PauliOp::identity(3)).is_err());
    }

    #[test]
    fn commutation() {
        assert!(!p("Z").commutes(&p("X")));
        assert!(p("XYZ").commutes(&p("XYZ")));
        assert!(p("XX").commutes(&p("ZZ")));
    }

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliOp> {
        (0u8..4, proptest::collection::vec(0u8..4, n)).prop_map(|(phase, qs)| {
            let mut v = SympVec::zeros(qs.len());
            for (q, k) in qs.iter().enumerate() {
                v.set_z(q, k & 1 == 1);
                v.set_x(q, k & 2 == 2);
            }
            PauliOp::with_raw_phase(phase, v)
        })
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(a in arb_pauli(7)) {
            prop_assert_eq!(a.to_string().parse::<PauliOp>().unwrap(), a);
        }

        #[test]
        fn multiplication_laws(a in arb_pauli(6), b in arb_pauli(6), c in arb_pauli(6)) {
            let ab = a.multiply(&b).unwrap();
            let ba = b.multiply(&a).unwrap();
            prop_assert_eq!(ab.symplectic(), &(a.symplectic() + b.symplectic()));
            prop_assert_eq!(
                ab.multiply(&c).unwrap(),
                a.multiply(&b.multiply(&c).unwrap()).unwrap()
            );
            let diff = (ab.raw_phase() + 4 - ba.raw_phase()) % 4;
            prop_assert_eq!(diff, if a.commutes(&b) { 0 } else { 2 });
            prop_assert!(ab.weight() <= a.weight() + b.weight());
        }

        #[test]
        fn hermitian_squares_to_identity(a in arb_pauli(6)) {
            let h = PauliOp::from_symplectic(a.symplectic().clone());
            let sq = h.multiply(&h).unwrap();
            prop_assert!(sq.is_identity());
            prop_assert_eq!(sq.raw_phase(), 0);
        }
    }
}
