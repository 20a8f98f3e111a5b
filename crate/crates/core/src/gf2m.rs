//! GF(2^m) arithmetic and binary BCH generator polynomials.

use crate::error::{Error, Result};
use crate::gf2::{BitMat, BitVec};

/// An element of GF(2^m), as a polynomial in α of degree `< m` packed into the low bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2mElement(pub u16);

/// GF(2^m) modulo a primitive polynomial, with exp/log tables.
#[derive(Clone, Debug)]
pub struct GF2m {
    m: u32,
    modulus: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl GF2m {
    /// `modulus` includes the leading `x^m` term, e.g. `0b100_0011` for `x⁶ + x + 1`.
    pub fn new(m: u32, modulus: u32) -> Result<Self> {
        if !(1..=15).contains(&m) || modulus >> m != 1 {
            return Err(Error::InvalidArgument(format!(
                "modulus {modulus:#b} is not a degree-{m} polynomial"
            )));
        }
        let order = (1usize << m) - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; order + 1];
        let mut v: u32 = 1;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            if i > 0 && v == 1 {
                return Err(Error::InvalidArgument(format!(
                    "{modulus:#b} is not primitive: x has order {i}"
                )));
            }
            *slot = v as u16;
            log[v as usize] = i as u16;
            v <<= 1;
            if v >> m & 1 == 1 {
                v ^= modulus;
            }
        }
        if v != 1 {
            return Err(Error::InvalidArgument(format!(
                "{modulus:#b} is not primitive"
            )));
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(Self {
            m,
            modulus,
            exp,
            log,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Multiplicative group order `2^m − 1`.
    pub fn order(&self) -> usize {
        (1 << self.m) - 1
    }

    /// α^k.
    pub fn alpha_pow(&self, k: usize) -> GF2mElement {
        GF2mElement(self.exp[k % self.order()])
    }

    pub fn add(&self, a: GF2mElement, b: GF2mElement) -> GF2mElement {
        GF2mElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: GF2mElement, b: GF2mElement) -> GF2mElement {
        if a.0 == 0 || b.0 == 0 {
            return GF2mElement(0);
        }
        let k = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        GF2mElement(self.exp[k])
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: GF2mElement) -> Option<usize> {
        if a.0 == 0 {
            return None;
        }
        let l = self.log[a.0 as usize] as usize;
        let n = self.order();
        Some(n / gcd(n, l))
    }

    /// Minimal polynomial of α^k over GF(2), coefficients low to high.
    pub fn minimal_polynomial(&self, k: usize) -> Gf2Poly {
        let mut poly: Vec<GF2mElement> = vec![GF2mElement(1)];
        for j in cyclotomic_coset(k, self.order()) {
            // multiply by (x + α^j)
            let root = self.alpha_pow(j);
            let mut next = vec![GF2mElement(0); poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.add(next[i], self.mul(c, root));
            }
            poly = next;
        }
        let mut bits = 0u128;
        for (i, c) in poly.iter().enumerate() {
            debug_assert!(
                c.0 <= 1,
                "minimal polynomial has coefficients outside GF(2)"
            );
            if c.0 == 1 {
                bits |= 1 << i;
            }
        }
        Gf2Poly(bits)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `{k·2^j mod n}`, in generation order.
pub fn cyclotomic_coset(k: usize, n: usize) -> Vec<usize> {
    let start = k % n;
    let mut coset = vec![start];
    let mut c = (2 * start) % n;
    while c != start {
        coset.push(c);
        c = (2 * c) % n;
    }
    coset
}

/// A polynomial over GF(2) of degree below 128; bit `i` is the coefficient of `x^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Gf2Poly(pub u128);

impl Gf2Poly {
    pub fn one() -> Self {
        Gf2Poly(1)
    }

    /// `x^n + 1`.
    pub fn x_pow_plus_one(n: u32) -> Self {
        Gf2Poly((1u128 << n) | 1)
    }

    pub fn degree(&self) -> Option<u32> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros())
    }

    pub fn coeff(&self, i: u32) -> bool {
        i < 128 && (self.0 >> i) & 1 == 1
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut acc = 0u128;
        let mut a = self.0;
        let mut shift = 0;
        while a != 0 {
            if a & 1 == 1 {
                let d = other.degree().unwrap_or(0) + shift;
                assert!(d < 128, "polynomial product overflows degree 127");
                acc ^= other.0 << shift;
            }
            a >>= 1;
            shift += 1;
        }
        Gf2Poly(acc)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, divisor: &Gf2Poly) -> (Gf2Poly, Gf2Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.0;
        let mut quot = 0u128;
        while let Some(rd) = Gf2Poly(rem).degree() {
            if rd < dd {
                break;
            }
            quot |= 1 << (rd - dd);
            rem ^= divisor.0 << (rd - dd);
        }
        (Gf2Poly(quot), Gf2Poly(rem))
    }

    /// Coefficient vector of length `len`, low degree first.
    pub fn to_bitvec(&self, len: usize) -> BitVec {
        BitVec::from_bools((0..len as u32).map(|i| self.coeff(i)))
    }
}

/// Generator polynomial of the narrow-sense binary BCH code of length `2^m − 1` with the given
/// designed distance: the product of the minimal polynomials of α¹, …, α^{δ−1}, one per coset.
pub fn bch_generator_polynomial(field: &GF2m, designed_distance: usize) -> Gf2Poly {
    let n = field.order();
    let mut seen = vec![false; n];
    let mut g = Gf2Poly::one();
    for k in 1..designed_distance {
        if seen[k % n] {
            continue;
        }
        for j in cyclotomic_coset(k, n) {
            seen[j] = true;
        }
        g = g.mul(&field.minimal_polynomial(k));
    }
    g
}

/// Cyclic generator matrix: rows are `x^i g(x)` for `i < n − deg g`.
pub fn cyclic_generator_matrix(g: &Gf2Poly, n: usize) -> BitMat {
    let r = g.degree().unwrap_or(0) as usize;
    let rows = (0..n - r).map(|i| Gf2Poly(g.0 << i).to_bitvec(n)).collect();
    BitMat::from_rows(n, rows).expect("rows have length n")
}

/// Cyclic parity-check matrix: rows are shifts of the reciprocal of `h = (xⁿ + 1)/g`.
pub fn cyclic_parity_check_matrix(g: &Gf2Poly, n: usize) -> BitMat {
    let (h, rem) = Gf2Poly::x_pow_plus_one(n as u32).div_rem(g);
    assert_eq!(rem, Gf2Poly(0), "g does not divide x^n + 1");
    let k = h.degree().unwrap_or(0) as usize;
    let r = n - k;
    let rows = (0..r)
        .map(|i| {
            let mut row = BitVec::zeros(n);
            for j in 0..=k {
                if h.coeff((k - j) as u32) {
                    row.set(i + j, true);
                }
            }
            row
        })
        .collect();
    BitMat::from_rows(n, rows).expect("rows have length n")
}
