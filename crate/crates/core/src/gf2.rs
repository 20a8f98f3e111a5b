//! Bit-packed linear algebra over GF(2) and the symplectic form on (Z₂)^{2n}.
//!
//! Vectors are stored as little-endian arrays of `u64` words: bit `i` lives in word `i / 64`
//! at position `i % 64`. Unused high bits of the last word are always zero, so equality,
//! hashing and popcounts can work on whole words.
//!
//! A [`SympVec`] over `n` qubits keeps its z half and x half in separate word blocks of the
//! same array (`[z words | x words]`), which makes the symplectic product two ANDs and a
//! popcount per word, and lets row reduction treat the vector as one flat bit string.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use crate::error::{check_len, Error, Result};

const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
fn and_parity(a: &[u64], b: &[u64]) -> bool {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones())
        .sum::<u32>()
        & 1
        == 1
}

#[inline]
fn lowest_set_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
}

#[inline]
fn test_bit(words: &[u64], bit: usize) -> bool {
    (words[bit / WORD_BITS] >> (bit % WORD_BITS)) & 1 == 1
}

/// Compares two equal-length word arrays as bit strings read from bit 0 upward.
fn lex_cmp(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let diff = x ^ y;
        if diff != 0 {
            let bit = diff.trailing_zeros();
            return if (x >> bit) & 1 == 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        }
    }
    Ordering::Equal
}

// ---------------------------------------------------------------------------------------------
// BitVec
// ---------------------------------------------------------------------------------------------

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The standard basis vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if b {
                words[len / WORD_BITS] |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        Self { len, words }
    }

    /// Packs the low `len` bits of `value` (bit 0 first).
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD_BITS);
        let mask = if len == WORD_BITS {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value & mask;
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        test_bit(&self.words, i)
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "dot product of unequal lengths");
        and_parity(&self.words, &other.words)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| test_bit(&self.words, i))
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    /// Copies bits `start..end` into a new vector.
    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        BitVec::from_bools((start..end).map(|i| self.get(i)))
    }

    pub fn concat(&self, other: &BitVec) -> BitVec {
        BitVec::from_bools(self.iter().chain(other.iter()))
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        Self { len, words }
    }
}

impl AddAssign<&BitVec> for BitVec {
    fn add_assign(&mut self, rhs: &BitVec) {
        assert_eq!(self.len, rhs.len, "adding vectors of unequal lengths");
        xor_words(&mut self.words, &rhs.words);
    }
}

impl Add<&BitVec> for &BitVec {
    type Output = BitVec;
    fn add(self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Ord for BitVec {
    /// Length first, then lexicographic from bit 0.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| lex_cmp(&self.words, &other.words))
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!(
                    "bit strings use only '0' and '1', found {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitVec::from_bools)
    }
}

// ---------------------------------------------------------------------------------------------
// Row reduction
// ---------------------------------------------------------------------------------------------

/// Semi-echelon basis of a row space, optionally remembering how each basis vector was combined
/// from the inserted rows.
///
/// Every stored row has its pivot (lowest set bit) cleared in all rows inserted after it, so a
/// single pass in insertion order fully reduces a query vector.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    width_words: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    combos: Option<Vec<BitVec>>,
    inserted: usize,
    capacity: usize,
}

impl Echelon {
    pub(crate) fn new(width_words: usize) -> Self {
        Self {
            width_words,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: None,
            inserted: 0,
            capacity: 0,
        }
    }

    /// Tracks combinations over up to `capacity` inserted rows.
    pub(crate) fn with_tracking(width_words: usize, capacity: usize) -> Self {
        Self {
            combos: Some(Vec::new()),
            capacity,
            ..Self::new(width_words)
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` in place; returns the combination of inserted rows that was subtracted when
    /// tracking is enabled.
    pub(crate) fn reduce(&self, v: &mut [u64]) -> Option<BitVec> {
        debug_assert_eq!(v.len(), self.width_words);
        let mut combo = self.combos.as_ref().map(|_| BitVec::zeros(self.capacity));
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if test_bit(v, p) {
                xor_words(v, row);
                if let (Some(c), Some(cs)) = (combo.as_mut(), self.combos.as_ref()) {
                    *c += &cs[k];
                }
            }
        }
        combo
    }

    pub(crate) fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| *x == 0)
    }

    /// Inserts a row; returns false (and leaves the basis unchanged) if it is dependent.
    pub(crate) fn insert(&mut self, v: &[u64]) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let mut w = v.to_vec();
        let combo = self.reduce(&mut w);
        let Some(p) = lowest_set_bit(&w) else {
            return false;
        };
        if let Some(cs) = self.combos.as_mut() {
            let mut c = combo.expect("tracking enabled");
            assert!(index < self.capacity, "tracked echelon over capacity");
            c.flip(index);
            cs.push(c);
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// Expresses `v` as a combination of the inserted rows, if it lies in their span.
    pub(crate) fn solve(&self, v: &[u64]) -> Option<BitVec> {
        let mut w = v.to_vec();
        let combo = self.reduce(&mut w);
        if w.iter().all(|x| *x == 0) {
            combo
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------------------------
// BitMat
// ---------------------------------------------------------------------------------------------

/// A dense matrix over GF(2), stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitMat {
    ncols: usize,
    rows: Vec<BitVec>,
}

/// Kernel basis together with the coordinates that parametrize it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    /// One basis vector per free coordinate; vector `j` is 1 at `free[j]` and 0 at every other
    /// free coordinate.
    pub basis: BitMat,
    /// Free coordinates, ascending.
    pub free: Vec<usize>,
}

impl BitMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            ncols,
            rows: vec![BitVec::zeros(ncols); nrows],
        }
    }

    /// An empty matrix with the given row width.
    pub fn empty(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            ncols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<BitVec>) -> Result<Self> {
        for r in &rows {
            check_len(ncols, r.len())?;
        }
        Ok(Self { ncols, rows })
    }

    /// Parses rows written as strings of '0'/'1'.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.parse::<BitVec>())
            .collect::<Result<Vec<_>>>()?;
        let ncols = parsed.first().map_or(0, BitVec::len);
        Self::from_rows(ncols, parsed)
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value)
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<()> {
        check_len(self.ncols, row.len())?;
        self.rows.push(row);
        Ok(())
    }

    pub fn transpose(&self) -> BitMat {
        let mut t = BitMat::zeros(self.ncols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// `coeffs · self`: the sum of the rows selected by `coeffs`.
    pub fn combine_rows(&self, coeffs: &BitVec) -> Result<BitVec> {
        check_len(self.nrows(), coeffs.len())?;
        let mut out = BitVec::zeros(self.ncols);
        for i in coeffs.ones() {
            out += &self.rows[i];
        }
        Ok(out)
    }

    /// `self · vᵀ`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        check_len(self.ncols, v.len())?;
        Ok(BitVec::from_bools(self.rows.iter().map(|r| r.dot(v))))
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BitMat) -> Result<BitMat> {
        check_len(self.ncols, other.nrows())?;
        let rows = self
            .rows
            .iter()
            .map(|r| other.combine_rows(r))
            .collect::<Result<Vec<_>>>()?;
        BitMat::from_rows(other.ncols, rows)
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(words_for(self.ncols));
        for r in &self.rows {
            ech.insert(r.words());
        }
        ech.rank()
    }

    pub fn has_independent_rows(&self) -> bool {
        self.rank() == self.nrows()
    }

    /// Index of the first row that depends on the rows before it.
    pub fn first_dependent_row(&self) -> Option<usize> {
        let mut ech = Echelon::new(words_for(self.ncols));
        self.rows.iter().position(|r| !ech.insert(r.words()))
    }

    /// True iff `v` is a GF(2) combination of the rows.
    pub fn rowspace_contains(&self, v: &BitVec) -> Result<bool> {
        check_len(self.ncols, v.len())?;
        let mut ech = Echelon::new(words_for(self.ncols));
        for r in &self.rows {
            ech.insert(r.words());
        }
        Ok(ech.contains(v.words()))
    }

    /// Reduced row echelon form with pivots searched from the last column toward the first.
    /// Returns the nonzero rows and their pivot columns.
    fn rref_from_right(&self) -> (Vec<BitVec>, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in (0..self.ncols).rev() {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(col) {
                    *row += &pivot_row;
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        (rows, pivots)
    }

    /// Basis of `{y : self · yᵀ = 0}` parametrized by its free coordinates.
    ///
    /// Pivots are chosen from the highest column downward, so the free coordinates are the
    /// lowest-indexed ones possible.
    pub fn kernel_basis(&self) -> KernelBasis {
        let (rows, pivots) = self.rref_from_right();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.ncols).filter(|&c| !is_pivot[c]).collect();
        let basis_rows = free
            .iter()
            .map(|&f| {
                let mut y = BitVec::unit(self.ncols, f);
                for (row, &p) in rows.iter().zip(&pivots) {
                    if row.get(f) {
                        y.set(p, true);
                    }
                }
                y
            })
            .collect();
        KernelBasis {
            basis: BitMat {
                ncols: self.ncols,
                rows: basis_rows,
            },
            free,
        }
    }

    /// Basis of the kernel; its size is `ncols − rank`.
    pub fn kernel(&self) -> BitMat {
        self.kernel_basis().basis
    }

    pub fn inverse(&self) -> Option<BitMat> {
        let n = self.nrows();
        if n != self.ncols {
            return None;
        }
        let mut a = self.rows.clone();
        let mut inv = BitMat::identity(n).rows;
        for col in 0..n {
            let p = (col..n).find(|&i| a[i].get(col))?;
            a.swap(col, p);
            inv.swap(col, p);
            let (ar, ir) = (a[col].clone(), inv[col].clone());
            for i in 0..n {
                if i != col && a[i].get(col) {
                    a[i] += &ar;
                    inv[i] += &ir;
                }
            }
        }
        Some(BitMat {
            ncols: n,
            rows: inv,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }
}

impl fmt::Display for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------------------------
// SympVec
// ---------------------------------------------------------------------------------------------

/// A vector `(z|x)` in (Z₂)^{2n}, the binary image of an n-qubit Pauli operator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SympVec {
    n: usize,
    words: Vec<u64>,
}

impl SympVec {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            words: vec![0; 2 * words_for(n)],
        }
    }

    pub fn from_zx(z: &BitVec, x: &BitVec) -> Result<Self> {
        check_len(z.len(), x.len())?;
        let half = words_for(z.len());
        let mut words = Vec::with_capacity(2 * half);
        words.extend_from_slice(z.words());
        words.extend_from_slice(x.words());
        Ok(Self { n: z.len(), words })
    }

    /// Single-qubit operator on `qubit`.
    pub fn single(n: usize, qubit: usize, z: bool, x: bool) -> Self {
        let mut v = Self::zeros(n);
        v.set_z(qubit, z);
        v.set_x(qubit, x);
        v
    }

    /// Number of qubits.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn half(&self) -> usize {
        self.words.len() / 2
    }

    pub(crate) fn z_words(&self) -> &[u64] {
        &self.words[..self.half()]
    }

    pub(crate) fn x_words(&self) -> &[u64] {
        &self.words[self.half()..]
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn z(&self) -> BitVec {
        BitVec::from_words(self.n, self.z_words().to_vec())
    }

    pub fn x(&self) -> BitVec {
        BitVec::from_words(self.n, self.x_words().to_vec())
    }

    #[inline]
    pub fn z_bit(&self, qubit: usize) -> bool {
        assert!(qubit < self.n);
        test_bit(self.z_words(), qubit)
    }

    #[inline]
    pub fn x_bit(&self, qubit: usize) -> bool {
        assert!(qubit < self.n);
        test_bit(self.x_words(), qubit)
    }

    pub fn set_z(&mut self, qubit: usize, value: bool) {
        assert!(qubit < self.n);
        let mask = 1u64 << (qubit % WORD_BITS);
        let w = &mut self.words[qubit / WORD_BITS];
        if value {
            *w |= mask
        } else {
            *w &= !mask
        }
    }

    pub fn set_x(&mut self, qubit: usize, value: bool) {
        assert!(qubit < self.n);
        let h = self.half();
        let mask = 1u64 << (qubit % WORD_BITS);
        let w = &mut self.words[h + qubit / WORD_BITS];
        if value {
            *w |= mask
        } else {
            *w &= !mask
        }
    }

    /// Symplectic product `z·x′ + x·z′` mod 2. Panics if the qubit counts differ.
    #[inline]
    pub fn product(&self, other: &SympVec) -> bool {
        assert_eq!(
            self.n, other.n,
            "symplectic product of unequal qubit counts"
        );
        and_parity(self.z_words(), other.x_words()) ^ and_parity(self.x_words(), other.z_words())
    }

    /// Number of qubits acted on nontrivially.
    pub fn weight(&self) -> usize {
        self.z_words()
            .iter()
            .zip(self.x_words())
            .map(|(z, x)| (z | x).count_ones() as usize)
            .sum()
    }

    /// Qubits acted on nontrivially, ascending.
    pub fn support(&self) -> Vec<usize> {
        let occupied: Vec<u64> = self
            .z_words()
            .iter()
            .zip(self.x_words())
            .map(|(z, x)| z | x)
            .collect();
        BitVec::from_words(self.n, occupied).ones().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    /// `|z ∧ x|`, the number of Y positions.
    pub fn y_count(&self) -> usize {
        self.z_words()
            .iter()
            .zip(self.x_words())
            .map(|(z, x)| (z & x).count_ones() as usize)
            .sum()
    }

    /// The `2n`-bit vector `z` followed by `x`.
    pub fn to_bitvec(&self) -> BitVec {
        self.z().concat(&self.x())
    }

    pub fn from_bitvec(bits: &BitVec) -> Result<Self> {
        if !bits.len().is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "symplectic vector needs an even length, got {}",
                bits.len()
            )));
        }
        let n = bits.len() / 2;
        Self::from_zx(&bits.slice(0, n), &bits.slice(n, 2 * n))
    }

    /// Pads with identity on qubits `n..total`.
    pub fn extend_to(&self, total: usize) -> SympVec {
        assert!(total >= self.n);
        let mut out = SympVec::zeros(total);
        for q in 0..self.n {
            out.set_z(q, self.z_bit(q));
            out.set_x(q, self.x_bit(q));
        }
        out
    }

    /// Restriction to the first `k` qubits.
    pub fn truncate(&self, k: usize) -> SympVec {
        assert!(k <= self.n);
        let mut out = SympVec::zeros(k);
        for q in 0..k {
            out.set_z(q, self.z_bit(q));
            out.set_x(q, self.x_bit(q));
        }
        out
    }

    /// Orders by the bit string `z₁…zₙ x₁…xₙ`, lexicographically.
    pub fn lex_cmp(&self, other: &SympVec) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            lex_cmp(self.z_words(), other.z_words())
                .then_with(|| lex_cmp(self.x_words(), other.x_words()))
        })
    }
}

/// Symplectic product with a length check.
pub fn symplectic_product(u: &SympVec, v: &SympVec) -> Result<bool> {
    check_len(u.n(), v.n())?;
    Ok(u.product(v))
}

impl AddAssign<&SympVec> for SympVec {
    fn add_assign(&mut self, rhs: &SympVec) {
        assert_eq!(
            self.n, rhs.n,
            "adding symplectic vectors of unequal qubit counts"
        );
        xor_words(&mut self.words, &rhs.words);
    }
}

impl Add<&SympVec> for &SympVec {
    type Output = SympVec;
    fn add(self, rhs: &SympVec) -> SympVec {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl fmt::Display for SympVec {
    /// `z bits|x bits`, the layout used by code files.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.z(), self.x())
    }
}

impl fmt::Debug for SympVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SympVec({self})")
    }
}

impl FromStr for SympVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (z, x) = s.split_once('|').ok_or_else(|| {
            Error::InvalidArgument(format!("symplectic vector {s:?} lacks a '|' separator"))
        })?;
        SympVec::from_zx(&z.trim().parse()?, &x.trim().parse()?)
    }
}

// ---------------------------------------------------------------------------------------------
// SympMat
// ---------------------------------------------------------------------------------------------

/// Rows of symplectic vectors over a common number of qubits.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SympMat {
    n: usize,
    rows: Vec<SympVec>,
}

/// Output of [`SympMat::gram_schmidt`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramSchmidtResult {
    /// Rows spanning the radical of the input row space.
    pub isotropic: SympMat,
    /// Hyperbolic pairs `(u, v)` with `u ⊙ v = 1`.
    pub pairs: Vec<(SympVec, SympVec)>,
    /// `transform · input = canonical rows`, see [`GramSchmidtResult::canonical`].
    pub transform: BitMat,
}

impl GramSchmidtResult {
    pub fn s(&self) -> usize {
        self.isotropic.nrows()
    }

    pub fn e(&self) -> usize {
        self.pairs.len()
    }

    /// Rows in the order isotropic, pair firsts, pair seconds.
    pub fn canonical(&self) -> SympMat {
        let mut rows = self.isotropic.rows.clone();
        rows.extend(self.pairs.iter().map(|(u, _)| u.clone()));
        rows.extend(self.pairs.iter().map(|(_, v)| v.clone()));
        SympMat {
            n: self.isotropic.n,
            rows,
        }
    }
}

impl SympMat {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(n: usize, rows: Vec<SympVec>) -> Result<Self> {
        for r in &rows {
            check_len(n, r.n())?;
        }
        Ok(Self { n, rows })
    }

    /// Builds from separate z and x halves of equal shape.
    pub fn from_halves(z: &BitMat, x: &BitMat) -> Result<Self> {
        check_len(z.nrows(), x.nrows())?;
        check_len(z.ncols(), x.ncols())?;
        let rows = z
            .rows()
            .iter()
            .zip(x.rows())
            .map(|(zr, xr)| SympVec::from_zx(zr, xr))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(z.ncols(), rows)
    }

    /// Parses rows written as `zzz|xxx`.
    pub fn from_strs(n: usize, rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.parse::<SympVec>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(n, parsed)
    }

    /// Number of qubits.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &SympVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SympVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SympVec> {
        self.rows
    }

    pub fn push(&mut self, row: SympVec) -> Result<()> {
        check_len(self.n, row.n())?;
        self.rows.push(row);
        Ok(())
    }

    pub(crate) fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new(2 * words_for(self.n));
        for r in &self.rows {
            ech.insert(r.words());
        }
        ech
    }

    pub(crate) fn tracked_echelon(&self) -> Echelon {
        let mut ech = Echelon::with_tracking(2 * words_for(self.n), self.nrows());
        for r in &self.rows {
            ech.insert(r.words());
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn first_dependent_row(&self) -> Option<usize> {
        let mut ech = Echelon::new(2 * words_for(self.n));
        self.rows.iter().position(|r| !ech.insert(r.words()))
    }

    pub fn rowspace_contains(&self, v: &SympVec) -> Result<bool> {
        check_len(self.n, v.n())?;
        Ok(self.echelon().contains(v.words()))
    }

    /// True iff every row of `other` lies in the row space of `self`.
    pub fn rowspace_includes(&self, other: &SympMat) -> Result<bool> {
        check_len(self.n, other.n)?;
        let ech = self.echelon();
        Ok(other.rows.iter().all(|r| ech.contains(r.words())))
    }

    pub fn same_rowspace(&self, other: &SympMat) -> Result<bool> {
        Ok(self.rank() == other.rank() && self.rowspace_includes(other)?)
    }

    /// All pairwise symplectic products.
    pub fn gram_matrix(&self) -> BitMat {
        let m = self.nrows();
        let rows = (0..m)
            .map(|i| BitVec::from_bools((0..m).map(|j| self.rows[i].product(&self.rows[j]))))
            .collect();
        BitMat { ncols: m, rows }
    }

    /// True iff all rows pairwise commute.
    pub fn is_isotropic(&self) -> bool {
        self.first_anticommuting_pair().is_none()
    }

    /// First pair `(i, j)`, `i < j`, with `row_i ⊙ row_j = 1`.
    pub fn first_anticommuting_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.nrows() {
            for j in i + 1..self.nrows() {
                if self.rows[i].product(&self.rows[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `coeffs · self`.
    pub fn combine_rows(&self, coeffs: &BitVec) -> Result<SympVec> {
        check_len(self.nrows(), coeffs.len())?;
        let mut out = SympVec::zeros(self.n);
        for i in coeffs.ones() {
            out += &self.rows[i];
        }
        Ok(out)
    }

    /// The product `h · self`, each output row a combination of rows of `self`.
    pub fn left_mul(&self, h: &BitMat) -> Result<SympMat> {
        check_len(self.nrows(), h.ncols())?;
        let rows = h
            .rows()
            .iter()
            .map(|c| self.combine_rows(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(SympMat { n: self.n, rows })
    }

    /// Rows as `2n`-bit vectors `(z|x)`.
    pub fn to_bitmat(&self) -> BitMat {
        BitMat {
            ncols: 2 * self.n,
            rows: self.rows.iter().map(SympVec::to_bitvec).collect(),
        }
    }

    /// Basis of the symplectic complement `{w : w ⊙ r = 0 for every row r}`.
    pub fn symplectic_complement(&self) -> SympMat {
        // w ⊙ (z|x) = w_z·x + w_x·z, so the kernel of the half-swapped rows.
        let swapped = BitMat {
            ncols: 2 * self.n,
            rows: self.rows.iter().map(|r| r.x().concat(&r.z())).collect(),
        };
        let rows = swapped
            .kernel()
            .rows()
            .iter()
            .map(|b| SympVec::from_bitvec(b).expect("even width"))
            .collect();
        SympMat { n: self.n, rows }
    }

    /// Pads every row with identity on qubits `n..total`.
    pub fn extend_to(&self, total: usize) -> SympMat {
        SympMat {
            n: total,
            rows: self.rows.iter().map(|r| r.extend_to(total)).collect(),
        }
    }

    pub fn concat(&self, other: &SympMat) -> Result<SympMat> {
        check_len(self.n, other.n)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(SympMat { n: self.n, rows })
    }

    /// Symplectic Gram–Schmidt decomposition into radical rows and hyperbolic pairs.
    ///
    /// Rows are taken in input order. A row that commutes with every remaining row joins the
    /// isotropic set; otherwise it is paired with the first remaining row it anticommutes with,
    /// and both are swept out of every other remaining row. Dependent input rows are rejected.
    pub fn gram_schmidt(&self) -> Result<GramSchmidtResult> {
        let m = self.nrows();
        if let Some(row) = self.first_dependent_row() {
            return Err(Error::DependentRows { row });
        }
        let mut work: Vec<(SympVec, BitVec)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), BitVec::unit(m, i)))
            .collect();
        let mut isotropic = Vec::new();
        let mut pairs = Vec::new();
        let mut iso_t = Vec::new();
        let mut pair_t = Vec::new();
        let mut start = 0;
        while start < work.len() {
            let partner = (start + 1..work.len()).find(|&j| work[start].0.product(&work[j].0));
            match partner {
                None => {
                    let (v, t) = work[start].clone();
                    isotropic.push(v);
                    iso_t.push(t);
                    start += 1;
                }
                Some(j) => {
                    work.swap(start + 1, j);
                    let (u, tu) = work[start].clone();
                    let (v, tv) = work[start + 1].clone();
                    for (w, tw) in work.iter_mut().skip(start + 2) {
                        let with_u = w.product(&u);
                        let with_v = w.product(&v);
                        if with_v {
                            *w += &u;
                            *tw += &tu;
                        }
                        if with_u {
                            *w += &v;
                            *tw += &tv;
                        }
                    }
                    pairs.push((u, v));
                    pair_t.push((tu, tv));
                    start += 2;
                }
            }
        }
        let mut t_rows = iso_t;
        t_rows.extend(pair_t.iter().map(|(a, _)| a.clone()));
        t_rows.extend(pair_t.into_iter().map(|(_, b)| b));
        Ok(GramSchmidtResult {
            isotropic: SympMat {
                n: self.n,
                rows: isotropic,
            },
            pairs,
            transform: BitMat {
                ncols: m,
                rows: t_rows,
            },
        })
    }
}

impl fmt::Display for SympMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Textbook elimination on `Vec<Vec<u8>>`, independent of the packed routines.
    fn naive_rank(rows: &[Vec<u8>]) -> usize {
        let mut a: Vec<Vec<u8>> = rows.to_vec();
        let ncols = a.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..a.len()).find(|&i| a[i][c] == 1) else {
                continue;
            };
            a.swap(r, p);
            let pivot = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && row[c] == 1 {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn to_rows(m: &BitMat) -> Vec<Vec<u8>> {
        m.rows()
            .iter()
            .map(|r| r.iter().map(u8::from).collect())
            .collect()
    }

    fn h_8_3() -> BitMat {
        BitMat::from_strs(&["10101000", "00010100", "11100000", "10010010", "11111101"]).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMat::identity(3).rank(), 3);
        assert_eq!(BitMat::zeros(4, 6).rank(), 0);
        let h = h_8_3();
        assert_eq!(naive_rank(&to_rows(&h)), 5);
        assert_eq!(h.rank(), 5);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(BitMat::identity(3).kernel().nrows(), 0);

        let rep = BitMat::from_strs(&["11"]).unwrap();
        let k = rep.kernel();
        assert_eq!(k.rows(), &["11".parse::<BitVec>().unwrap()]);

        let h = h_8_3();
        let k = h.kernel();
        assert_eq!(k.nrows(), 3);
        for y in k.rows() {
            assert!(h.mul_vec(y).unwrap().is_zero());
        }
        // Same space as one hand-derived basis.
        let reference = BitMat::from_strs(&["11001011", "01101001", "00010110"]).unwrap();
        for y in reference.rows() {
            assert!(h.mul_vec(y).unwrap().is_zero());
            assert!(k.rowspace_contains(y).unwrap());
        }
        assert_eq!(reference.rank(), 3);
    }

    #[test]
    fn kernel_free_coordinates_are_lowest() {
        let kb = h_8_3().kernel_basis();
        assert_eq!(kb.free, vec![0, 1, 3]);
        for (j, y) in kb.basis.rows().iter().enumerate() {
            for (i, &f) in kb.free.iter().enumerate() {
                assert_eq!(y.get(f), i == j);
            }
        }
    }

    #[test]
    fn symplectic_product_examples() {
        let z: SympVec = "1|0".parse().unwrap();
        let x: SympVec = "0|1".parse().unwrap();
        assert!(symplectic_product(&z, &x).unwrap());
        let a: SympVec = "10|01".parse().unwrap();
        let b: SympVec = "01|10".parse().unwrap();
        assert!(!a.product(&b));
        assert!(!a.product(&a));
        assert!(matches!(
            symplectic_product(&z, &a),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn gram_schmidt_single_pair() {
        let m = SympMat::from_strs(1, &["1|0", "0|1"]).unwrap();
        let gs = m.gram_schmidt().unwrap();
        assert_eq!((gs.s(), gs.e()), (0, 1));
        assert_eq!(m.gram_matrix().rows()[0].to_string(), "01");
    }

    #[test]
    fn gram_schmidt_rejects_dependent_rows() {
        let m = SympMat::from_strs(2, &["10|00", "01|00", "11|00"]).unwrap();
        assert_eq!(m.gram_schmidt(), Err(Error::DependentRows { row: 2 }));
    }

    #[test]
    fn rowspace_contains_examples() {
        let m = BitMat::from_strs(&["1100", "0110", "0011"]).unwrap();
        assert!(m.rowspace_contains(&BitVec::zeros(4)).unwrap());
        let sum = m.row(0) + m.row(2);
        assert!(m.rowspace_contains(&sum).unwrap());
        // Rank-deficient: every row has even weight.
        assert!(!m.rowspace_contains(&BitVec::unit(4, 0)).unwrap());
        assert!(m.rowspace_contains(&BitVec::zeros(3)).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = BitMat::from_strs(&["110", "011", "001"]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), BitMat::identity(3));
        assert!(BitMat::from_strs(&["11", "11"])
            .unwrap()
            .inverse()
            .is_none());
    }

    #[test]
    fn bitvec_order_is_lexicographic() {
        let a: BitVec = "0001".parse().unwrap();
        let b: BitVec = "0100".parse().unwrap();
        assert!(a < b);
        let long_a = BitVec::unit(130, 129);
        let long_b = BitVec::unit(130, 70);
        assert!(long_a < long_b);
    }

    fn arb_bitmat(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMat> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BitMat::from_rows(c, rows.into_iter().map(BitVec::from_bools).collect())
                        .unwrap()
                },
            )
        })
    }

    fn arb_sympmat(max_rows: usize, n: usize) -> impl Strategy<Value = SympMat> {
        (1..=max_rows).prop_flat_map(move |r| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), 2 * n), r).prop_map(
                move |rows| {
                    let rows = rows
                        .into_iter()
                        .map(|b| SympVec::from_bitvec(&BitVec::from_bools(b)).unwrap())
                        .collect();
                    SympMat::from_rows(n, rows).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_bitmat(12, 80)) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.nrows(), m.ncols());
            prop_assert_eq!(m.rank(), naive_rank(&to_rows(&m)));
            for y in k.rows() {
                prop_assert!(m.mul_vec(y).unwrap().is_zero());
            }
            prop_assert_eq!(k.rank(), k.nrows());
        }

        #[test]
        fn product_is_bilinear_and_alternating(
            a in proptest::collection::vec(any::<bool>(), 140),
            b in proptest::collection::vec(any::<bool>(), 140),
            c in proptest::collection::vec(any::<bool>(), 140),
        ) {
            let to = |v: Vec<bool>| SympVec::from_bitvec(&BitVec::from_bools(v)).unwrap();
            let (u, v, w) = (to(a), to(b), to(c));
            prop_assert_eq!((&u + &v).product(&w), u.product(&w) ^ v.product(&w));
            prop_assert!(!u.product(&u));
            prop_assert_eq!(u.product(&v), v.product(&u));
        }

        #[test]
        fn gram_schmidt_structure(m in arb_sympmat(8, 5)) {
            prop_assume!(m.rank() == m.nrows());
            let gs = m.gram_schmidt().unwrap();
            prop_assert_eq!(gs.s() + 2 * gs.e(), m.nrows());
            let canon = gs.canonical();
            let gram = canon.gram_matrix();
            let (s, e) = (gs.s(), gs.e());
            for i in 0..canon.nrows() {
                for j in 0..canon.nrows() {
                    let hyperbolic = i >= s && j >= s && (i - s) % e.max(1) == (j - s) % e.max(1)
                        && i != j && e > 0 && ((i < s + e) != (j < s + e));
                    prop_assert_eq!(gram.get(i, j), hyperbolic, "entry ({}, {})", i, j);
                }
            }
            // transform · input = canonical, and the transform is invertible.
            prop_assert_eq!(&m.left_mul(&gs.transform).unwrap(), &canon);
            prop_assert!(gs.transform.inverse().is_some());
            prop_assert!(canon.same_rowspace(&m).unwrap());
            // The isotropic rows span the radical.
            let comp = m.symplectic_complement();
            let both = comp.concat(&m).unwrap();
            let radical_dim = comp.rank() + m.rank() - both.rank();
            prop_assert_eq!(radical_dim, s);
        }
    }
}
