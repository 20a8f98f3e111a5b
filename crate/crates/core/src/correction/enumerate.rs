//! Enumeration of low-weight Pauli errors with incrementally accumulated syndromes.

use crate::code::EacqCode;
use crate::gf2::{words_for, SympVec};

/// Single-qubit Pauli codes: bit 0 is the z component, bit 1 the x component.
pub(crate) const PAULI_CODES: [u8; 3] = [1, 2, 3];

/// Syndromes of every single-qubit Pauli, packed for XOR accumulation.
pub(crate) struct SyndromeMap {
    n: usize,
    bits: usize,
    width: usize,
    cols: Vec<u64>,
}

impl SyndromeMap {
    pub(crate) fn new(code: &EacqCode) -> Self {
        let g = code.g_quantum();
        let n = code.n();
        let bits = g.nrows();
        let width = words_for(bits).max(1);
        let mut cols = vec![0u64; n * 3 * width];
        for (j, row) in g.rows().iter().enumerate() {
            for q in 0..n {
                // Z_q anticommutes with rows carrying X on q, and vice versa.
                let (on_z, on_x) = (row.x_bit(q), row.z_bit(q));
                for (slot, code) in PAULI_CODES.iter().enumerate() {
                    let flips = (code & 1 == 1 && on_z) ^ (code & 2 == 2 && on_x);
                    if flips {
                        cols[(q * 3 + slot) * width + j / 64] |= 1 << (j % 64);
                    }
                }
            }
        }
        Self {
            n,
            bits,
            width,
            cols,
        }
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    /// Syndrome length in bits.
    pub(crate) fn bits(&self) -> usize {
        self.bits
    }

    pub(crate) fn width(&self) -> usize {
        self.width
    }

    #[inline]
    fn col(&self, qubit: usize, code: u8) -> &[u64] {
        let at = (qubit * 3 + code as usize - 1) * self.width;
        &self.cols[at..at + self.width]
    }

    /// Syndrome words of an arbitrary error.
    #[cfg(test)]
    pub(crate) fn of(&self, e: &SympVec) -> Vec<u64> {
        let mut acc = vec![0u64; self.width];
        for q in e.support() {
            let code = e.z_bit(q) as u8 | (e.x_bit(q) as u8) << 1;
            for (a, c) in acc.iter_mut().zip(self.col(q, code)) {
                *a ^= c;
            }
        }
        acc
    }

    /// Visits every error of weight exactly `weight` whose lowest qubit is `first`, in
    /// increasing support order. The callback sees `(qubit, code)` terms and the syndrome.
    pub(crate) fn walk_from<F>(&self, weight: usize, first: usize, f: &mut F)
    where
        F: FnMut(&[(usize, u8)], &[u64]),
    {
        if weight == 0 || first + weight > self.n {
            return;
        }
        let mut terms = Vec::with_capacity(weight);
        let mut acc = vec![0u64; weight * self.width];
        for code in PAULI_CODES {
            terms.push((first, code));
            acc[..self.width].copy_from_slice(self.col(first, code));
            self.extend(weight, &mut terms, &mut acc, f);
            terms.pop();
        }
    }

    /// Visits every error of weight exactly `weight`.
    pub(crate) fn walk<F>(&self, weight: usize, f: &mut F)
    where
        F: FnMut(&[(usize, u8)], &[u64]),
    {
        if weight == 0 {
            f(&[], &vec![0u64; self.width]);
            return;
        }
        for first in 0..self.n {
            self.walk_from(weight, first, f);
        }
    }

    fn extend<F>(&self, weight: usize, terms: &mut Vec<(usize, u8)>, acc: &mut [u64], f: &mut F)
    where
        F: FnMut(&[(usize, u8)], &[u64]),
    {
        let depth = terms.len();
        let w = self.width;
        if depth == weight {
            f(terms, &acc[(depth - 1) * w..depth * w]);
            return;
        }
        let last = terms[depth - 1].0;
        let remaining = weight - depth;
        for q in last + 1..=self.n - remaining {
            for code in PAULI_CODES {
                let (done, rest) = acc.split_at_mut(depth * w);
                let prev = &done[(depth - 1) * w..];
                for ((dst, p), c) in rest[..w].iter_mut().zip(prev).zip(self.col(q, code)) {
                    *dst = p ^ c;
                }
                terms.push((q, code));
                self.extend(weight, terms, acc, f);
                terms.pop();
            }
        }
    }
}

pub(crate) fn error_from_terms(n: usize, terms: &[(usize, u8)]) -> SympVec {
    let mut v = SympVec::zeros(n);
    for &(q, code) in terms {
        v.set_z(q, code & 1 == 1);
        v.set_x(q, code & 2 == 2);
    }
    v
}

/// Number of n-qubit Paulis of weight at most `w`, saturating.
pub(crate) fn count_up_to(n: usize, w: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    let mut pow3: u128 = 1;
    for k in 0..=w.min(n) {
        total = total.saturating_add(binom.saturating_mul(pow3));
        binom = binom.saturating_mul((n - k) as u128) / (k as u128 + 1);
        pow3 = pow3.saturating_mul(3);
    }
    total
}

/// All Paulis of weight at most `w`, by weight and then support order.
pub fn errors_up_to(n: usize, w: usize) -> Vec<SympVec> {
    let mut out = Vec::new();
    let dummy = SyndromeMap {
        n,
        bits: 0,
        width: 1,
        cols: vec![0; n * 3],
    };
    for k in 0..=w.min(n) {
        dummy.walk(k, &mut |terms, _| out.push(error_from_terms(n, terms)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::correction::syndrome;
    use std::collections::HashSet;

    #[test]
    fn counts_match_enumeration() {
        for (n, w) in [(1, 1), (4, 2), (5, 5), (9, 3)] {
            let all = errors_up_to(n, w);
            assert_eq!(all.len() as u128, count_up_to(n, w), "n={n} w={w}");
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
            assert!(all.iter().all(|e| e.weight() <= w));
        }
        assert_eq!(count_up_to(63, 3), 1 + 189 + 17_577 + 1_072_197);
    }

    #[test]
    fn accumulated_syndromes_agree_with_direct_computation() {
        let code = catalog::eacq_8_1_3_1().code;
        let map = SyndromeMap::new(&code);
        let mut seen = 0;
        for w in 0..=2 {
            map.walk(w, &mut |terms, syn| {
                let e = error_from_terms(code.n(), terms);
                let direct = syndrome(&code, &e).unwrap();
                assert_eq!(syn, direct.words(), "{e}");
                assert_eq!(map.of(&e), syn);
                seen += 1;
            });
        }
        assert_eq!(seen as u128, count_up_to(8, 2));
    }
}
