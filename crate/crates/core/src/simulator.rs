//! Exact sign-tracking simulation of encode, Pauli noise, syndrome decoding and readout.
//!
//! A state is a full set of `n + e` commuting generators on the sender's `n` qubits followed by
//! the receiver's `e` qubits, each with a sign bit. Pauli errors flip the signs of the
//! generators they anticommute with; measuring a stabilizer element reads its sign off the
//! generator decomposition, including the phase picked up by the product.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::code::EacqCode;
use crate::correction::{self, DecodeTable};
use crate::error::{check_len, Error, Result};
use crate::gf2::{BitVec, Echelon, SympMat, SympVec};
use crate::pauli::PauliOp;

/// Generators shared by every state built on them.
#[derive(Debug)]
struct Frame {
    n_alice: usize,
    gens: SympMat,
    ops: Vec<PauliOp>,
    echelon: Echelon,
}

/// A stabilizer state: commuting generators with one sign bit each (`1` means eigenvalue −1).
#[derive(Clone, Debug)]
pub struct StabState {
    frame: Arc<Frame>,
    signs: BitVec,
}

/// The outcome of measuring a fixed stabilizer element, reduced to a parity of sign bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measurement {
    coeffs: BitVec,
    flip: bool,
}

impl Measurement {
    /// `true` for eigenvalue −1.
    pub fn outcome(&self, state: &StabState) -> bool {
        self.coeffs.dot(&state.signs) ^ self.flip
    }
}

impl StabState {
    /// `gens` acts on `n_alice` sender qubits followed by receiver qubits.
    pub fn new(n_alice: usize, gens: SympMat, signs: BitVec) -> Result<Self> {
        let total = gens.n();
        check_len(gens.nrows(), signs.len())?;
        if n_alice > total {
            return Err(Error::Dimension(format!(
                "{n_alice} sender qubits exceed the {total} qubits of the generators"
            )));
        }
        if gens.nrows() != total {
            return Err(Error::Infeasible(format!(
                "a stabilizer state on {total} qubits needs {total} generators, got {}",
                gens.nrows()
            )));
        }
        if let Some(row) = gens.first_dependent_row() {
            return Err(Error::DependentRows { row });
        }
        if let Some((a, b)) = gens.first_anticommuting_pair() {
            return Err(Error::Infeasible(format!(
                "generators {a} and {b} anticommute"
            )));
        }
        let echelon = gens.tracked_echelon();
        let ops = gens
            .rows()
            .iter()
            .map(|r| PauliOp::from_symplectic(r.clone()))
            .collect();
        Ok(Self {
            frame: Arc::new(Frame {
                n_alice,
                gens,
                ops,
                echelon,
            }),
            signs,
        })
    }

    /// The same generators with different signs.
    pub fn with_signs(&self, signs: BitVec) -> Result<Self> {
        check_len(self.signs.len(), signs.len())?;
        Ok(Self {
            frame: Arc::clone(&self.frame),
            signs,
        })
    }

    pub fn generators(&self) -> &SympMat {
        &self.frame.gens
    }

    pub fn signs(&self) -> &BitVec {
        &self.signs
    }

    pub fn n_alice(&self) -> usize {
        self.frame.n_alice
    }

    pub fn n_bob(&self) -> usize {
        self.frame.gens.n() - self.frame.n_alice
    }

    /// Widens a sender-side error to all qubits, rejecting support on the receiver's qubits.
    fn lift(&self, err: &SympVec) -> Result<SympVec> {
        let (n, total) = (self.frame.n_alice, self.frame.gens.n());
        if err.n() == n {
            return Ok(err.extend_to(total));
        }
        check_len(total, err.n())?;
        if let Some(q) = (n..total).find(|&q| err.z_bit(q) || err.x_bit(q)) {
            return Err(Error::ReceiverQubit(q));
        }
        Ok(err.clone())
    }

    /// Applies a Pauli on the sender's qubits.
    pub fn apply_error(&mut self, err: &PauliOp) -> Result<()> {
        let e = self.lift(err.symplectic())?;
        self.flip_by(&e);
        Ok(())
    }

    fn flip_by(&mut self, e: &SympVec) {
        for (k, g) in self.frame.gens.rows().iter().enumerate() {
            if g.product(e) {
                self.signs.flip(k);
            }
        }
    }

    /// Precomputes the measurement of `obs`; `None` if `obs` is not, up to sign, in the
    /// stabilizer group (its outcome would be random). `obs` may act on the sender's qubits
    /// only or on all qubits.
    pub fn prepare(&self, obs: &PauliOp) -> Result<Option<Measurement>> {
        let total = self.frame.gens.n();
        let (v, phase) = if obs.n() == self.frame.n_alice && obs.n() != total {
            (obs.symplectic().extend_to(total), obs.raw_phase())
        } else {
            check_len(total, obs.n())?;
            (obs.symplectic().clone(), obs.raw_phase())
        };
        let Some(coeffs) = self.frame.echelon.solve(v.words()) else {
            return Ok(None);
        };
        let mut product = PauliOp::identity(total);
        for k in coeffs.ones() {
            product = product.mul_unchecked(&self.frame.ops[k]);
        }
        debug_assert_eq!(product.symplectic(), &v);
        let delta = (phase + 4 - product.raw_phase()) % 4;
        if delta % 2 == 1 {
            return Err(Error::InvalidArgument(format!(
                "observable {obs} is not Hermitian"
            )));
        }
        Ok(Some(Measurement {
            coeffs,
            flip: delta == 2,
        }))
    }

    /// Deterministic outcome of measuring `obs` (`true` for −1), or `None` if random.
    pub fn measure(&self, obs: &PauliOp) -> Result<Option<bool>> {
        Ok(self.prepare(obs)?.map(|m| m.outcome(self)))
    }
}

/// Which logical operators carry the logical bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Z,
    X,
}

/// Rows of `Ĥ` extended to the receiver: each hyperbolic pair `(u, v)` of the canonical
/// decomposition becomes `(u ⊗ Z_b, v ⊗ X_b)` on its own receiver qubit `b`.
pub fn bob_extension(code: &EacqCode) -> Result<SympMat> {
    let (n, e) = (code.n(), code.e());
    let st = code.structure();
    let total = n + e;
    let mut canon: Vec<SympVec> = Vec::with_capacity(code.s() + 2 * e);
    canon.extend(st.isotropic.rows().iter().map(|r| r.extend_to(total)));
    for (b, (u, _)) in st.pairs.iter().enumerate() {
        let mut w = u.extend_to(total);
        w.set_z(n + b, true);
        canon.push(w);
    }
    for (b, (_, v)) in st.pairs.iter().enumerate() {
        let mut w = v.extend_to(total);
        w.set_x(n + b, true);
        canon.push(w);
    }
    let canon = SympMat::from_rows(total, canon)?;
    let back = st
        .transform
        .inverse()
        .ok_or_else(|| Error::Infeasible("Gram-Schmidt transform is singular".into()))?;
    canon.left_mul(&back)
}

fn generators_for(code: &EacqCode, extended: &SympMat, basis: Basis) -> Result<SympMat> {
    let total = code.n() + code.e();
    let logical = match basis {
        Basis::Z => code.logical_z(),
        Basis::X => code.logical_x(),
    };
    extended.concat(&logical.extend_to(total))
}

/// The codeword for `classical_index` with logical qubit `k` in the `+1`/`−1` eigenstate of
/// `Z̄_k` (`X̄_k` in the X basis) according to `logical_bits[k]`.
pub fn encode_in_basis(
    code: &EacqCode,
    classical_index: &BitVec,
    logical_bits: &BitVec,
    basis: Basis,
) -> Result<StabState> {
    check_len(code.q(), logical_bits.len())?;
    let y = code.codeword_sign_vector(classical_index)?;
    let gens = generators_for(code, &bob_extension(code)?, basis)?;
    StabState::new(code.n(), gens, y.concat(logical_bits))
}

/// [`encode_in_basis`] in the Z basis.
pub fn encode(
    code: &EacqCode,
    classical_index: &BitVec,
    logical_bits: &BitVec,
) -> Result<StabState> {
    encode_in_basis(code, classical_index, logical_bits, Basis::Z)
}

/// `S_Q` generators `g_j` as the exact products of the extended `Ĥ` rows selected by row `j`
/// of `H`, so a fresh codeword has eigenvalue `+1` on each of them.
fn syndrome_observables(code: &EacqCode, extended: &SympMat) -> Vec<PauliOp> {
    let total = extended.n();
    code.h_classical()
        .rows()
        .iter()
        .map(|h| {
            h.ones().fold(PauliOp::identity(total), |acc, l| {
                acc.mul_unchecked(&PauliOp::from_symplectic(extended.row(l).clone()))
            })
        })
        .collect()
}

fn readout_observables(code: &EacqCode, extended: &SympMat, basis: Basis) -> Vec<PauliOp> {
    let total = extended.n();
    let logical = match basis {
        Basis::Z => code.logical_z(),
        Basis::X => code.logical_x(),
    };
    code.readout_positions()
        .iter()
        .map(|&p| extended.row(p).clone())
        .chain(logical.rows().iter().map(|r| r.extend_to(total)))
        .map(PauliOp::from_symplectic)
        .collect()
}

fn measure_all(state: &StabState, observables: &[PauliOp]) -> Result<BitVec> {
    let mut out = BitVec::zeros(observables.len());
    for (j, obs) in observables.iter().enumerate() {
        let bit = state.measure(obs)?.ok_or_else(|| {
            Error::Infeasible(format!("{obs} is not in the state's stabilizer group"))
        })?;
        out.set(j, bit);
    }
    Ok(out)
}

/// Signs of the `S_Q` generators.
pub fn measure_syndrome(state: &StabState, code: &EacqCode) -> Result<BitVec> {
    let extended = bob_extension(code)?;
    measure_all(state, &syndrome_observables(code, &extended))
}

/// Classical index and logical bits of a state with zero syndrome.
pub fn readout_in_basis(
    state: &StabState,
    code: &EacqCode,
    basis: Basis,
) -> Result<(BitVec, BitVec)> {
    if !measure_syndrome(state, code)?.is_zero() {
        return Err(Error::NonzeroSyndrome);
    }
    let extended = bob_extension(code)?;
    let bits = measure_all(state, &readout_observables(code, &extended, basis))?;
    let c = code.c();
    Ok((bits.slice(0, c), bits.slice(c, bits.len())))
}

/// [`readout_in_basis`] in the Z basis.
pub fn readout(state: &StabState, code: &EacqCode) -> Result<(BitVec, BitVec)> {
    readout_in_basis(state, code, Basis::Z)
}

/// One encode, error, decode, recover and readout cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialResult {
    pub injected_error: PauliOp,
    pub syndrome: BitVec,
    pub recovery: PauliOp,
    /// Table had an entry for the syndrome.
    pub decoded: bool,
    pub classical_ok: bool,
    /// The logical bits survived in both the Z and the X basis.
    pub quantum_ok: bool,
    /// Every generator sign of both encodings is back to its encoded value.
    pub state_restored: bool,
}

struct Prepared {
    template: StabState,
    syndrome: Vec<Measurement>,
    readout: Vec<Measurement>,
}

/// Everything needed to run trials of one code with one decoder table.
pub struct Simulator<'a> {
    code: &'a EacqCode,
    table: &'a DecodeTable,
    bases: [Prepared; 2],
}

impl<'a> Simulator<'a> {
    pub fn new(code: &'a EacqCode, table: &'a DecodeTable) -> Result<Self> {
        if !table.matches(code) {
            return Err(Error::InvalidArgument(format!(
                "decoder table was built for code {}, not {}",
                table.fingerprint(),
                code.fingerprint()
            )));
        }
        let extended = bob_extension(code)?;
        let syn_obs = syndrome_observables(code, &extended);
        let prep = |basis| -> Result<Prepared> {
            let gens = generators_for(code, &extended, basis)?;
            let template = StabState::new(code.n(), gens, BitVec::zeros(code.n() + code.e()))?;
            let measure = |ops: &[PauliOp]| -> Result<Vec<Measurement>> {
                ops.iter()
                    .map(|o| {
                        template.prepare(o)?.ok_or_else(|| {
                            Error::Infeasible(format!("{o} is not a stabilizer element"))
                        })
                    })
                    .collect()
            };
            Ok(Prepared {
                syndrome: measure(&syn_obs)?,
                readout: measure(&readout_observables(code, &extended, basis))?,
                template,
            })
        };
        Ok(Self {
            code,
            table,
            bases: [prep(Basis::Z)?, prep(Basis::X)?],
        })
    }

    pub fn code(&self) -> &EacqCode {
        self.code
    }

    /// Runs the cycle for a given error, classical index and logical bits.
    pub fn run_cycle(
        &self,
        error: &SympVec,
        classical_index: &BitVec,
        logical_bits: &BitVec,
    ) -> Result<TrialResult> {
        check_len(self.code.n(), error.n())?;
        check_len(self.code.q(), logical_bits.len())?;
        let y = self.code.codeword_sign_vector(classical_index)?;
        let signs = y.concat(logical_bits);
        let mut syndrome = None;
        let mut recovery = None;
        let (mut classical_ok, mut quantum_ok, mut restored) = (true, true, true);
        let mut decoded = true;
        for prep in &self.bases {
            let mut state = prep.template.with_signs(signs.clone())?;
            state.flip_by(&error.extend_to(state.frame.gens.n()));
            let syn = BitVec::from_bools(prep.syndrome.iter().map(|m| m.outcome(&state)));
            let r = match self.table.recovery(&syn) {
                Some(r) => r.clone(),
                None => {
                    decoded = false;
                    PauliOp::identity(self.code.n())
                }
            };
            state.apply_error(&r)?;
            let clean = prep.syndrome.iter().all(|m| !m.outcome(&state));
            let bits = BitVec::from_bools(prep.readout.iter().map(|m| m.outcome(&state)));
            let c = self.code.c();
            classical_ok &= clean && bits.slice(0, c) == *classical_index;
            quantum_ok &= clean && bits.slice(c, bits.len()) == *logical_bits;
            restored &= *state.signs() == signs;
            syndrome.get_or_insert(syn);
            recovery.get_or_insert(r);
        }
        Ok(TrialResult {
            injected_error: PauliOp::from_symplectic(error.clone()),
            syndrome: syndrome.expect("two bases"),
            recovery: recovery.expect("two bases"),
            decoded,
            classical_ok,
            quantum_ok,
            state_restored: restored,
        })
    }

    /// Trial `index` of a seeded run: depolarizing error, uniform index and logical bits.
    pub fn run_trial(&self, ch: &ChannelSpec, index: u64) -> Result<TrialResult> {
        let mut rng = trial_rng(ch.seed, index);
        let n = self.code.n();
        let mut error = SympVec::zeros(n);
        for q in 0..n {
            if rng.random::<f64>() < ch.p {
                let code: u8 = rng.random_range(1..=3);
                error.set_z(q, code & 1 == 1);
                error.set_x(q, code & 2 == 2);
            }
        }
        let classical = BitVec::from_bools((0..self.code.c()).map(|_| rng.random::<bool>()));
        let logical = BitVec::from_bools((0..self.code.q()).map(|_| rng.random::<bool>()));
        self.run_cycle(&error, &classical, &logical)
    }
}

/// Identifier of the per-trial random stream, recorded in every output.
pub const RNG_ID: &str = "chacha8-seed_from_u64-stream_per_trial";

fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Independent single-qubit depolarizing noise: X, Y and Z each with probability `p/3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelSpec {
    pub p: f64,
    pub seed: u64,
}

impl ChannelSpec {
    pub fn depolarizing(p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "probability {p} is outside [0, 1]"
            )));
        }
        Ok(Self { p, seed })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub p: f64,
    pub trials: u64,
    pub classical_failures: u64,
    pub quantum_failures: u64,
    /// Trials in which either payload failed.
    pub failures: u64,
    pub seed: u64,
    pub rng_id: &'static str,
}

impl RunSummary {
    pub const CSV_HEADER: &'static str = "p,trials,classical_failures,quantum_failures,seed,rng_id";

    pub fn failure_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.failures as f64 / self.trials as f64
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.p,
            self.trials,
            self.classical_failures,
            self.quantum_failures,
            self.seed,
            self.rng_id
        )
    }
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.csv_row())
    }
}

const CHUNK: u64 = 4096;

/// Runs `trials` seeded trials on the global rayon pool.
pub fn run_trials(
    code: &EacqCode,
    table: &DecodeTable,
    ch: &ChannelSpec,
    trials: u64,
) -> Result<RunSummary> {
    let sim = Simulator::new(code, table)?;
    sim.run(ch, trials)
}

/// [`run_trials`] on a dedicated pool of `threads` workers. Counts do not depend on it.
pub fn run_trials_threaded(
    code: &EacqCode,
    table: &DecodeTable,
    ch: &ChannelSpec,
    trials: u64,
    threads: usize,
) -> Result<RunSummary> {
    let sim = Simulator::new(code, table)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
        .install(|| sim.run(ch, trials))
}

impl Simulator<'_> {
    /// Aggregates trials `0..trials` of the seeded run.
    pub fn run(&self, ch: &ChannelSpec, trials: u64) -> Result<RunSummary> {
        let sim = self;
        let chunks = trials.div_ceil(CHUNK);
        let counts = (0..chunks)
            .into_par_iter()
            .map(|k| -> Result<(u64, u64, u64)> {
                let mut acc = (0, 0, 0);
                for i in k * CHUNK..((k + 1) * CHUNK).min(trials) {
                    let r = sim.run_trial(ch, i)?;
                    acc.0 += u64::from(!r.classical_ok);
                    acc.1 += u64::from(!r.quantum_ok);
                    acc.2 += u64::from(!(r.classical_ok && r.quantum_ok));
                }
                Ok(acc)
            })
            .try_reduce(|| (0, 0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1, a.2 + b.2)))?;
        Ok(RunSummary {
            p: ch.p,
            trials,
            classical_failures: counts.0,
            quantum_failures: counts.1,
            failures: counts.2,
            seed: ch.seed,
            rng_id: RNG_ID,
        })
    }
}

/// Syndrome the decoder sees for `err`.
pub fn expected_syndrome(code: &EacqCode, err: &PauliOp) -> Result<BitVec> {
    correction::syndrome(code, err.symplectic())
}
