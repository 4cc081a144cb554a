//! Dense univariate polynomials over GF(2^k).

use alloc::vec;
use alloc::vec::Vec;

use super::gf2k::Gf2k;

/// Coefficients from the constant term upward; never has trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly(Vec<u8>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![1])
    }

    pub fn constant(c: u8) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `c * t^n`.
    pub fn monomial(c: u8, n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = c;
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut v: Vec<u8>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Poly(v)
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0] == 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> u8 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.coeff(i) ^ other.coeff(i)).collect();
        Poly::from_coeffs(v)
    }

    pub fn scale(&self, f: &Gf2k, c: u8) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&a| f.mul_u8(a, c)).collect())
    }

    pub fn mul(&self, f: &Gf2k, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0u8; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                v[i + j] ^= f.mul_u8(a, b);
            }
        }
        Poly::from_coeffs(v)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, f: &Gf2k, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = f.inv_u8(d.leading()).unwrap();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0u8; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = f.mul_u8(c, lead_inv);
            quot[i - dd] = q;
            for (j, &b) in d.0.iter().enumerate() {
                rem[i - dd + j] ^= f.mul_u8(q, b);
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn monic(&self, f: &Gf2k) -> Poly {
        match f.inv_u8(self.leading()) {
            Some(inv) => self.scale(f, inv),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, f: &Gf2k, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Formal derivative; in characteristic 2 only odd-degree terms survive.
    pub fn derivative(&self) -> Poly {
        let v = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { 0 })
            .collect();
        Poly::from_coeffs(v)
    }

    /// A polynomial over a perfect field of characteristic 2 is a square iff
    /// all of its odd-degree coefficients vanish.
    pub fn is_square(&self) -> bool {
        self.0.iter().skip(1).step_by(2).all(|&c| c == 0)
    }

    /// Splits `self = even(t)^2 + t * odd(t)^2`.
    pub fn frobenius_split(&self, f: &Gf2k) -> (Poly, Poly) {
        let even = self.0.iter().step_by(2).map(|&c| f.sqrt_u8(c)).collect();
        let odd = self
            .0
            .iter()
            .skip(1)
            .step_by(2)
            .map(|&c| f.sqrt_u8(c))
            .collect();
        (Poly::from_coeffs(even), Poly::from_coeffs(odd))
    }

    pub fn sqrt(&self, f: &Gf2k) -> Option<Poly> {
        self.is_square().then(|| self.frobenius_split(f).0)
    }

    /// The product of the monic irreducible factors that occur to an odd power.
    ///
    /// With `f = c * prod p_i^{e_i}`, `gcd(f, f')` keeps `p_i^{e_i}` for even
    /// `e_i` and `p_i^{e_i - 1}` for odd `e_i`, so the quotient is squarefree.
    pub fn odd_radical(&self, f: &Gf2k) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(f, &self.derivative());
        self.div_rem(f, &g).0.monic(f)
    }

    pub fn eval(&self, f: &Gf2k, x: u8) -> u8 {
        self.0.iter().rev().fold(0u8, |acc, &c| f.mul_u8(acc, x) ^ c)
    }
}
