//! The EACQ code object and its transformations.
//!
//! A code is the pair `(Ĥ, H)`: a quantum check matrix `Ĥ` whose `s + 2e` independent rows
//! generate `⟨S_Q, S_C⟩`, and a classical check matrix `H` with `s + 2e − c` independent rows.
//! The quantum stabilizer is generated by the rows of `H·Ĥ`; the codeword carrying classical
//! word `y ∈ ker H` is the joint eigenstate with `N_{Ĥ_l} = (−1)^{y_l}`.

mod format;

use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{check_len, Error, Result};
use crate::gf2::{BitMat, BitVec, Echelon, GramSchmidtResult, SympMat, SympVec};

pub use format::parse_code_file;

/// The bracket `[[n, q:c, d; e]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub n: usize,
    pub q: usize,
    pub c: usize,
    pub d_claimed: Option<usize>,
    pub e: usize,
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}:{},", self.n, self.q, self.c)?;
        match self.d_claimed {
            Some(d) => write!(f, "{d}")?,
            None => f.write_str("?")?,
        }
        write!(f, ";{}]]", self.e)
    }
}

#[derive(Clone, Debug)]
pub struct EacqCode {
    n: usize,
    q: usize,
    c: usize,
    e: usize,
    s: usize,
    c1: usize,
    c2: usize,
    h_quantum: SympMat,
    h_classical: BitMat,
    g_quantum: SympMat,
    structure: GramSchmidtResult,
    quantum_structure: GramSchmidtResult,
    classical_kernel: BitMat,
    readout_positions: Vec<usize>,
    classical_readout_gens: SympMat,
    logical_z: SympMat,
    logical_x: SympMat,
    radical: Echelon,
    quantum_radical: Echelon,
}

impl PartialEq for EacqCode {
    fn eq(&self, other: &Self) -> bool {
        self.h_quantum == other.h_quantum && self.h_classical == other.h_classical
    }
}

impl Eq for EacqCode {}

impl EacqCode {
    /// Builds and validates a code from its quantum and classical check matrices.
    pub fn build(h_quantum: SympMat, h_classical: BitMat) -> Result<Self> {
        let n = h_quantum.n();
        let m = h_quantum.nrows();
        if h_classical.ncols() != m {
            return Err(Error::Dimension(format!(
                "classical check matrix has {} columns but the quantum check matrix has {m} rows",
                h_classical.ncols()
            )));
        }
        if let Some(row) = h_quantum.first_dependent_row() {
            return Err(Error::DependentRows { row });
        }
        if let Some(row) = h_classical.first_dependent_row() {
            return Err(Error::DependentRows { row });
        }
        let structure = h_quantum.gram_schmidt()?;
        let (s, e) = (structure.s(), structure.e());
        if s + e > n {
            return Err(Error::Infeasible(format!(
                "s + e = {} exceeds n = {n}",
                s + e
            )));
        }
        let q = n - s - e;
        let c = m - h_classical.nrows();

        let g_quantum = h_quantum.left_mul(&h_classical)?;
        let quantum_structure = g_quantum.gram_schmidt()?;
        let radical = structure.isotropic.echelon();

        // ⟨S_Q,I⟩ must sit inside ⟨S_Q,I, S_C,I⟩; otherwise no symplectic basis realizes the
        // split between quantum and classical stabilizers.
        for (k, row) in quantum_structure.isotropic.rows().iter().enumerate() {
            if !radical.contains(row.words()) {
                let l = h_quantum
                    .rows()
                    .iter()
                    .position(|h| h.product(row))
                    .map_or(0, |l| l + 1);
                return Err(Error::Infeasible(format!(
                    "isotropic element {} of the quantum stabilizer anticommutes with h_quantum row {l}",
                    k + 1
                )));
            }
        }
        let (s_q, e_q) = (quantum_structure.s(), quantum_structure.e());
        if s_q > s || e_q > e || (s - s_q) + 2 * (e - e_q) != c {
            return Err(Error::Infeasible(format!(
                "quantum stabilizer has {s_q} isotropic generators and {e_q} pairs, incompatible with s={s}, e={e}, c={c}"
            )));
        }
        let (c1, c2) = (s - s_q, e - e_q);
        let quantum_radical = quantum_structure.isotropic.echelon();

        let kb = h_classical.kernel_basis();
        debug_assert_eq!(kb.free.len(), c);
        let classical_readout_gens = SympMat::from_rows(
            n,
            kb.free.iter().map(|&p| h_quantum.row(p).clone()).collect(),
        )?;

        let (logical_z, logical_x) = logical_operators_for(&h_quantum, q)?;

        Ok(Self {
            n,
            q,
            c,
            e,
            s,
            c1,
            c2,
            h_quantum,
            h_classical,
            g_quantum,
            structure,
            quantum_structure,
            classical_kernel: kb.basis,
            readout_positions: kb.free,
            classical_readout_gens,
            logical_z,
            logical_x,
            radical,
            quantum_radical,
        })
    }

    /// A plain EAQECC (`c = 0`) with stabilizer generated by `h_quantum`.
    pub fn eaqecc(h_quantum: SympMat) -> Result<Self> {
        let m = h_quantum.nrows();
        Self::build(h_quantum, BitMat::identity(m))
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn c(&self) -> usize {
        self.c
    }
    pub fn e(&self) -> usize {
        self.e
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn c1(&self) -> usize {
        self.c1
    }
    pub fn c2(&self) -> usize {
        self.c2
    }

    pub fn params(&self) -> CodeParams {
        CodeParams {
            n: self.n,
            q: self.q,
            c: self.c,
            d_claimed: None,
            e: self.e,
        }
    }

    /// Rows `u′_l` of the quantum check matrix.
    pub fn h_quantum(&self) -> &SympMat {
        &self.h_quantum
    }

    pub fn h_classical(&self) -> &BitMat {
        &self.h_classical
    }

    /// Generators of the quantum stabilizer, `H·Ĥ`.
    pub fn g_quantum(&self) -> &SympMat {
        &self.g_quantum
    }

    /// Basis of `⟨S_Q,I, S_C,I⟩`, the radical of the row space of `Ĥ`.
    pub fn radical_basis(&self) -> &SympMat {
        &self.structure.isotropic
    }

    /// Basis of `S_Q,I`, the radical of the row space of `H·Ĥ`.
    pub fn quantum_radical_basis(&self) -> &SympMat {
        &self.quantum_structure.isotropic
    }

    /// Symplectic decomposition of `Ĥ`.
    pub fn structure(&self) -> &GramSchmidtResult {
        &self.structure
    }

    /// Symplectic decomposition of `H·Ĥ`.
    pub fn quantum_structure(&self) -> &GramSchmidtResult {
        &self.quantum_structure
    }

    /// Kernel basis of `H`; basis vector `j` is selected by classical index bit `j`.
    pub fn classical_kernel(&self) -> &BitMat {
        &self.classical_kernel
    }

    /// Rows of `Ĥ` whose eigenvalues carry the classical index bits, in index order.
    pub fn readout_positions(&self) -> &[usize] {
        &self.readout_positions
    }

    pub fn classical_readout_gens(&self) -> &SympMat {
        &self.classical_readout_gens
    }

    pub fn logical_z(&self) -> &SympMat {
        &self.logical_z
    }

    pub fn logical_x(&self) -> &SympMat {
        &self.logical_x
    }

    /// The logical pairs `(Z̄_k, X̄_k)`.
    pub fn logical_operators(&self) -> (&SympMat, &SympMat) {
        (&self.logical_z, &self.logical_x)
    }

    pub(crate) fn radical_contains(&self, v: &SympVec) -> bool {
        self.radical.contains(v.words())
    }

    pub(crate) fn quantum_radical_contains(&self, v: &SympVec) -> bool {
        self.quantum_radical.contains(v.words())
    }

    /// Canonical representative of `v` modulo the radical; equal exactly on radical cosets.
    pub(crate) fn radical_class(&self, v: &SympVec) -> Vec<u64> {
        let mut w = v.words().to_vec();
        self.radical.reduce(&mut w);
        w
    }

    /// The sign vector `y` on the rows of `Ĥ` for a classical index.
    pub fn codeword_sign_vector(&self, classical_index: &BitVec) -> Result<BitVec> {
        check_len(self.c, classical_index.len())?;
        self.classical_kernel.combine_rows(classical_index)
    }

    /// Inverse of [`Self::codeword_sign_vector`] on kernel vectors.
    pub fn classical_index_of(&self, signs: &BitVec) -> Result<BitVec> {
        check_len(self.s + 2 * self.e, signs.len())?;
        Ok(BitVec::from_bools(
            self.readout_positions.iter().map(|&p| signs.get(p)),
        ))
    }

    /// Moves the last `move_isotropic` radical generators and the last `move_pairs` hyperbolic
    /// pairs of `Ĥ`'s canonical decomposition from the quantum to the classical stabilizer.
    ///
    /// `⟨S_Q, S_C⟩` is unchanged, so `n`, `q`, `s` and `e` are preserved and
    /// `c = move_isotropic + 2·move_pairs`.
    pub fn enhance(&self, move_isotropic: usize, move_pairs: usize) -> Result<EacqCode> {
        if self.c != 0 {
            return Err(Error::InvalidArgument(format!(
                "enhance expects a code without classical bits, this one has c = {}",
                self.c
            )));
        }
        if move_isotropic > self.s || move_pairs > self.e {
            return Err(Error::InvalidArgument(format!(
                "cannot move {move_isotropic} isotropic generators and {move_pairs} pairs from a code with s = {}, e = {}",
                self.s, self.e
            )));
        }
        if move_isotropic == 0 && move_pairs == 0 {
            return Ok(self.clone());
        }
        let (s, e) = (self.s, self.e);
        let iso = self.structure.isotropic.rows();
        let pairs = &self.structure.pairs;
        let mut rows: Vec<SympVec> = Vec::with_capacity(s + 2 * e);
        rows.extend(iso[s - move_isotropic..].iter().cloned());
        rows.extend(iso[..s - move_isotropic].iter().cloned());
        let pair_order: Vec<usize> = (e - move_pairs..e).chain(0..e - move_pairs).collect();
        rows.extend(pair_order.iter().map(|&k| pairs[k].0.clone()));
        rows.extend(pair_order.iter().map(|&k| pairs[k].1.clone()));
        let h_quantum = SympMat::from_rows(self.n, rows)?;
        let h_classical = canonical_f(s, e, move_isotropic, move_pairs)?;
        EacqCode::build(h_quantum, h_classical)
    }

    /// Adds the last `count` logical Z operators as classical isotropic generators, trading
    /// `count` logical qubits for `count` classical bits.
    pub fn adjoin_logicals(&self, count: usize) -> Result<EacqCode> {
        if count > self.q {
            return Err(Error::InvalidArgument(format!(
                "cannot adjoin {count} logical operators to a code with q = {}",
                self.q
            )));
        }
        let m = self.h_quantum.nrows();
        let mut rows: Vec<SympVec> = self.logical_z.rows()[self.q - count..].to_vec();
        rows.extend(self.h_quantum.rows().iter().cloned());
        let h_quantum = SympMat::from_rows(self.n, rows)?;
        // Keep the old constraints, expressed on the shifted coordinates.
        let mut h_classical = BitMat::empty(m + count);
        for r in self.h_classical.rows() {
            h_classical.push_row(BitVec::zeros(count).concat(r))?;
        }
        EacqCode::build(h_quantum, h_classical)
    }

    /// The EAQECC stabilized by all of `⟨S_Q, S_C⟩`.
    pub fn strip(&self) -> EacqCode {
        EacqCode::eaqecc(self.h_quantum.clone()).expect("a valid code strips to a valid EAQECC")
    }

    /// The EAQECC stabilized by `S_Q` alone, carrying the classical bits as qubits.
    pub fn quantum_part(&self) -> EacqCode {
        EacqCode::eaqecc(self.g_quantum.clone()).expect("quantum stabilizer has independent rows")
    }

    /// Serializes in the `eacq v1` text format.
    pub fn to_file_string(&self) -> String {
        format::write_code_file(self)
    }

    /// Short hex digest of the serialized code.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_file_string().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// The selector matrix that keeps isotropic generators `c1..s`, pair firsts `c2..e` and pair
/// seconds `c2..e` of a canonically ordered `(s + 2e)`-row check matrix.
pub fn canonical_f(s: usize, e: usize, c1: usize, c2: usize) -> Result<BitMat> {
    if c1 > s || c2 > e {
        return Err(Error::InvalidArgument(format!(
            "block sizes require c1 <= s and c2 <= e, got c1={c1}, s={s}, c2={c2}, e={e}"
        )));
    }
    let m = s + 2 * e;
    let kept = (c1..s).chain(s + c2..s + e).chain(s + e + c2..m);
    BitMat::from_rows(m, kept.map(|col| BitVec::unit(m, col)).collect())
}

/// `q` hyperbolic pairs commuting with every row of `h_quantum` and independent of its span.
fn logical_operators_for(h_quantum: &SympMat, q: usize) -> Result<(SympMat, SympMat)> {
    let n = h_quantum.n();
    let complement = h_quantum.symplectic_complement();
    let gs = complement.gram_schmidt()?;
    if gs.e() != q {
        return Err(Error::Infeasible(format!(
            "normalizer splits into {} logical pairs, expected {q}",
            gs.e()
        )));
    }
    let (z, x): (Vec<_>, Vec<_>) = gs.pairs.into_iter().unzip();
    Ok((SympMat::from_rows(n, z)?, SympMat::from_rows(n, x)?))
}
