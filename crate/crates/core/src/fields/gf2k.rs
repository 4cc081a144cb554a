//! The finite fields GF(2^k), 1 <= k <= 8, in the power basis.
//!
//! Elements are bit vectors over the power basis of `GF(2)[x] / (m(x))`, where
//! `m` is the lexicographically smallest irreducible polynomial of degree `k`.
//! Multiplication goes through logarithm tables that are built at compile time.

use alloc::vec::Vec;

use rand_core::RngCore;

use super::{Family, Field, FieldDesc, FieldValue, Repr};
use crate::error::{Error, Result};

pub const MAX_DEGREE: u8 = 8;

const fn clmul_mod(a: u16, b: u16, modulus: u16, k: u32) -> u16 {
    let mut acc: u16 = 0;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & (1 << k) != 0 {
            a ^= modulus;
        }
    }
    acc
}

const fn poly_degree(p: u16) -> i32 {
    15 - p.leading_zeros() as i32
}

/// Remainder of carry-less polynomial division over GF(2).
const fn poly_rem(mut a: u16, b: u16) -> u16 {
    let db = poly_degree(b);
    while poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

const fn is_irreducible(p: u16) -> bool {
    let d = poly_degree(p);
    if d <= 0 {
        return false;
    }
    let mut cand: u16 = 2;
    while poly_degree(cand) * 2 <= d {
        if poly_rem(p, cand) == 0 {
            return false;
        }
        cand += 1;
    }
    true
}

/// The lexicographically smallest irreducible polynomial of degree `k` over GF(2).
pub const fn smallest_irreducible(k: u32) -> u16 {
    let mut p: u16 = 1 << k;
    while !is_irreducible(p) {
        p += 1;
    }
    p
}

#[derive(Clone, Copy)]
struct Tables {
    modulus: u16,
    order: u16,
    exp: [u8; 512],
    log: [u16; 256],
}

const fn build_tables(k: u32) -> Tables {
    let modulus = smallest_irreducible(k);
    let order = (1u16 << k) - 1;
    let mut generator: u16 = 1;
    // Find an element of multiplicative order 2^k - 1.
    loop {
        let mut x = generator;
        let mut ord: u16 = 1;
        while x != 1 {
            x = clmul_mod(x, generator, modulus, k);
            ord += 1;
        }
        if ord == order {
            break;
        }
        generator += 1;
    }
    let mut exp = [0u8; 512];
    let mut log = [0u16; 256];
    let mut x: u16 = 1;
    let mut i = 0usize;
    while i < 512 {
        exp[i] = x as u8;
        if i < order as usize {
            log[x as usize] = i as u16;
        }
        x = clmul_mod(x, generator, modulus, k);
        i += 1;
    }
    Tables {
        modulus,
        order,
        exp,
        log,
    }
}

const fn build_all() -> [Tables; 9] {
    let empty = Tables {
        modulus: 0,
        order: 0,
        exp: [0; 512],
        log: [0; 256],
    };
    let mut all = [empty; 9];
    let mut k = 1;
    while k <= 8 {
        all[k] = build_tables(k as u32);
        k += 1;
    }
    all
}

static TABLES: [Tables; 9] = build_all();

/// GF(2^k) for a fixed extension degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gf2k {
    k: u8,
}

impl Gf2k {
    pub fn new(k: u8) -> Result<Self> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::UnsupportedField(alloc::format!(
                "GF(2^{k}) is outside 1..=8"
            )));
        }
        Ok(Gf2k { k })
    }

    /// GF(2).
    pub fn gf2() -> Self {
        Gf2k { k: 1 }
    }

    /// GF(4) with `w^2 = w + 1`.
    pub fn gf4() -> Self {
        Gf2k { k: 2 }
    }

    pub fn degree(&self) -> u8 {
        self.k
    }

    pub fn modulus(&self) -> u16 {
        TABLES[self.k as usize].modulus
    }

    pub fn size(&self) -> usize {
        1 << self.k
    }

    #[inline]
    fn tables(&self) -> &'static Tables {
        &TABLES[self.k as usize]
    }

    #[inline]
    pub fn mul_u8(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = self.tables();
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    #[inline]
    pub fn inv_u8(&self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        let t = self.tables();
        let l = t.log[a as usize];
        Some(t.exp[((t.order - l) % t.order) as usize])
    }

    #[inline]
    pub fn sqrt_u8(&self, a: u8) -> u8 {
        if a == 0 {
            return 0;
        }
        // The inverse of Frobenius is a -> a^(2^(k-1)).
        let t = self.tables();
        let l = t.log[a as usize] as u32;
        let e = (l << (self.k - 1)) % t.order as u32;
        t.exp[e as usize]
    }

    /// Solves `x^2 + x = a`; the smaller of the two roots is returned.
    pub fn artin_schreier_u8(&self, a: u8) -> Option<u8> {
        (0..self.size() as u16)
            .map(|x| x as u8)
            .find(|&x| self.mul_u8(x, x) ^ x == a)
    }

    pub fn contains(&self, a: u8) -> bool {
        (a as usize) < self.size()
    }
}

impl Field for Gf2k {
    type Elem = u8;

    fn desc(&self) -> FieldDesc {
        FieldDesc {
            family: Family::Galois,
            k: self.k,
        }
    }

    fn zero(&self) -> u8 {
        0
    }

    fn one(&self) -> u8 {
        1
    }

    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }

    fn add(&self, a: &u8, b: &u8) -> u8 {
        a ^ b
    }

    fn mul(&self, a: &u8, b: &u8) -> u8 {
        self.mul_u8(*a, *b)
    }

    fn inv(&self, a: &u8) -> Option<u8> {
        self.inv_u8(*a)
    }

    fn is_square(&self, _a: &u8) -> bool {
        true
    }

    fn sqrt(&self, a: &u8) -> Option<u8> {
        Some(self.sqrt_u8(*a))
    }

    fn square_class_rep(&self, a: &u8) -> Option<u8> {
        (*a != 0).then_some(1)
    }

    fn artin_schreier(&self, a: &u8) -> Option<u8> {
        self.artin_schreier_u8(*a)
    }

    fn sqrt_basis(&self) -> Vec<u8> {
        alloc::vec![1]
    }

    fn sqrt_coords(&self, a: &u8) -> Vec<u8> {
        alloc::vec![self.sqrt_u8(*a)]
    }

    fn order(&self) -> Option<u64> {
        Some(self.size() as u64)
    }

    fn elements(&self, _degree_bound: u32) -> Vec<u8> {
        (0..self.size() as u16).map(|x| x as u8).collect()
    }

    fn random(&self, rng: &mut dyn RngCore, _degree_bound: u32) -> u8 {
        (rng.next_u32() as usize % self.size()) as u8
    }

    fn gf2_bit(&self, a: &u8) -> Option<bool> {
        (self.k == 1).then_some(*a == 1)
    }

    fn to_value(&self, a: &u8) -> FieldValue {
        FieldValue {
            desc: self.desc(),
            repr: Repr::Bits(*a),
        }
    }

    fn from_value(&self, v: &FieldValue) -> Result<u8> {
        match (&v.repr, v.desc == self.desc()) {
            (Repr::Bits(b), true) => Ok(*b),
            _ => Err(Error::FieldMismatch),
        }
    }

    fn from_u64(&self, n: u64) -> u8 {
        (n & 1) as u8
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_smallest_irreducibles() {
        let expected = [0u16, 0b10, 0b111, 0b1011, 0b10011, 0b100101, 0b1000011, 0b10000011, 0x11b];
        for k in 1..=8u8 {
            let f = Gf2k::new(k).unwrap();
            assert_eq!(f.modulus(), expected[k as usize], "k = {k}");
            // Every smaller monic polynomial of degree k has a factor.
            for p in (1u16 << k)..f.modulus() {
                assert!(!is_irreducible(p));
            }
        }
    }

    #[test]
    fn gf4_relations() {
        let f = Gf2k::gf4();
        let w = 0b10;
        assert_eq!(f.mul(&w, &w), 0b11);
        assert_eq!(f.sqrt(&w), Some(0b11));
        assert_eq!(f.artin_schreier(&1), Some(w));
        assert_eq!(Gf2k::gf2().artin_schreier(&0), Some(0));
        assert_eq!(Gf2k::gf2().artin_schreier(&1), None);
    }

    #[test]
    fn log_tables_agree_with_carryless_product() {
        for k in 1..=8u8 {
            let f = Gf2k::new(k).unwrap();
            for a in 0..f.size() as u16 {
                for b in 0..f.size() as u16 {
                    let slow = clmul_mod(a, b, f.modulus(), k as u32) as u8;
                    assert_eq!(f.mul_u8(a as u8, b as u8), slow);
                }
                if a != 0 {
                    let inv = f.inv_u8(a as u8).unwrap();
                    assert_eq!(f.mul_u8(a as u8, inv), 1);
                    let r = f.sqrt_u8(a as u8);
                    assert_eq!(f.mul_u8(r, r), a as u8);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_degree() {
        assert!(Gf2k::new(0).is_err());
        assert!(Gf2k::new(9).is_err());
    }
}
