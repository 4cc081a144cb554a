//! The rational function field GF(2^k)(t).

use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use super::{Family, Field, FieldDesc, FieldValue, Gf2k, Poly, Repr};
use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic; zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational {
    num: Poly,
    den: Poly,
}

impl Rational {
    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    base: Gf2k,
}

impl RatFunc {
    pub fn new(base: Gf2k) -> Self {
        RatFunc { base }
    }

    /// F_2(t).
    pub fn f2t() -> Self {
        RatFunc::new(Gf2k::gf2())
    }

    pub fn base(&self) -> Gf2k {
        self.base
    }

    pub fn t(&self) -> Rational {
        self.from_poly(Poly::monomial(1, 1))
    }

    pub fn from_poly(&self, p: Poly) -> Rational {
        Rational {
            num: p,
            den: Poly::one(),
        }
    }

    /// Builds `num / den`, normalizing; `None` if `den` is zero.
    pub fn fraction(&self, num: Poly, den: Poly) -> Option<Rational> {
        if den.is_zero() {
            return None;
        }
        let f = &self.base;
        if num.is_zero() {
            return Some(self.from_poly(Poly::zero()));
        }
        let g = num.gcd(f, &den);
        let (n, _) = num.div_rem(f, &g);
        let (d, _) = den.div_rem(f, &g);
        let li = f.inv_u8(d.leading()).unwrap();
        Some(Rational {
            num: n.scale(f, li),
            den: d.scale(f, li),
        })
    }

    /// Solves `r^2 + r s = p` for a polynomial `r`, as a GF(2)-linear system.
    fn solve_as_poly(&self, p: &Poly, s: &Poly) -> Option<Poly> {
        let f = &self.base;
        let k = f.degree() as usize;
        let ds = s.degree().unwrap_or(0);
        let n = p.degree().unwrap_or(0).max(ds);
        let out_len = 2 * n + ds + 1;
        let cols = (n + 1) * k;
        let mut m = BitMatrix::zeros(out_len * k, cols);
        for i in 0..=n {
            for b in 0..k {
                let r = Poly::monomial(1 << b, i);
                let img = r.mul(f, &r).add(&r.mul(f, s));
                for (j, &c) in img.coeffs().iter().enumerate() {
                    for bit in 0..k {
                        if (c >> bit) & 1 == 1 {
                            m.set(j * k + bit, i * k + b, true);
                        }
                    }
                }
            }
        }
        let mut rhs = vec![false; out_len * k];
        for (j, &c) in p.coeffs().iter().enumerate() {
            for bit in 0..k {
                rhs[j * k + bit] = (c >> bit) & 1 == 1;
            }
        }
        let x = m.solve(&rhs)?;
        let coeffs = (0..=n)
            .map(|i| (0..k).fold(0u8, |acc, b| acc | ((x[i * k + b] as u8) << b)))
            .collect();
        Some(Poly::from_coeffs(coeffs))
    }
}

impl Field for RatFunc {
    type Elem = Rational;

    fn desc(&self) -> FieldDesc {
        FieldDesc {
            family: Family::RationalFunction,
            k: self.base.degree(),
        }
    }

    fn zero(&self) -> Rational {
        self.from_poly(Poly::zero())
    }

    fn one(&self) -> Rational {
        self.from_poly(Poly::one())
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        let f = &self.base;
        if a.den == b.den {
            return self.fraction(a.num.add(&b.num), a.den.clone()).unwrap();
        }
        let num = a.num.mul(f, &b.den).add(&b.num.mul(f, &a.den));
        self.fraction(num, a.den.mul(f, &b.den)).unwrap()
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        let f = &self.base;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        self.fraction(a.num.mul(f, &b.num), a.den.mul(f, &b.den))
            .unwrap()
    }

    fn inv(&self, a: &Rational) -> Option<Rational> {
        self.fraction(a.den.clone(), a.num.clone())
    }

    fn is_square(&self, a: &Rational) -> bool {
        a.num.is_square() && a.den.is_square()
    }

    fn sqrt(&self, a: &Rational) -> Option<Rational> {
        let f = &self.base;
        let n = a.num.sqrt(f)?;
        let d = a.den.sqrt(f)?;
        self.fraction(n, d)
    }

    fn square_class_rep(&self, a: &Rational) -> Option<Rational> {
        if a.num.is_zero() {
            return None;
        }
        // p/q and pq differ by the square q^2.
        let f = &self.base;
        let pq = a.num.mul(f, &a.den);
        Some(self.from_poly(pq.odd_radical(f)))
    }

    fn artin_schreier(&self, a: &Rational) -> Option<Rational> {
        // With x = r/s in lowest terms, x^2 + x = (r^2 + rs)/s^2 is again in
        // lowest terms, so the denominator of `a` must be a square.
        let s = a.den.sqrt(&self.base)?;
        let r = self.solve_as_poly(&a.num, &s)?;
        self.fraction(r, s)
    }

    fn sqrt_basis(&self) -> Vec<Rational> {
        vec![self.one(), self.t()]
    }

    fn sqrt_coords(&self, a: &Rational) -> Vec<Rational> {
        // p/q = pq/q^2 and pq = e^2 + t o^2.
        let f = &self.base;
        let (e, o) = a.num.mul(f, &a.den).frobenius_split(f);
        vec![
            self.fraction(e, a.den.clone()).unwrap(),
            self.fraction(o, a.den.clone()).unwrap(),
        ]
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn elements(&self, degree_bound: u32) -> Vec<Rational> {
        let q = self.base.size();
        let len = degree_bound as usize + 1;
        let total = q.checked_pow(len as u32).unwrap_or(usize::MAX);
        let mut out = Vec::new();
        for idx in 0..total {
            let mut c = Vec::with_capacity(len);
            let mut x = idx;
            for _ in 0..len {
                c.push((x % q) as u8);
                x /= q;
            }
            out.push(self.from_poly(Poly::from_coeffs(c)));
        }
        out
    }

    fn random(&self, rng: &mut dyn RngCore, degree_bound: u32) -> Rational {
        let mut poly = |deg: u32| {
            let c = (0..=deg).map(|_| self.base.random(rng, 0)).collect();
            Poly::from_coeffs(c)
        };
        let num = poly(degree_bound);
        let mut den = poly(degree_bound / 2);
        if den.is_zero() {
            den = Poly::one();
        }
        self.fraction(num, den).unwrap()
    }

    fn gf2_bit(&self, _a: &Rational) -> Option<bool> {
        None
    }

    fn to_value(&self, a: &Rational) -> FieldValue {
        FieldValue {
            desc: self.desc(),
            repr: Repr::Fraction(a.num.clone(), a.den.clone()),
        }
    }

    fn from_value(&self, v: &FieldValue) -> Result<Rational> {
        match (&v.repr, v.desc == self.desc()) {
            (Repr::Fraction(n, d), true) => self.fraction(n.clone(), d.clone()).ok_or(Error::DivisionByZero),
            _ => Err(Error::FieldMismatch),
        }
    }

    fn from_u64(&self, n: u64) -> Rational {
        self.from_poly(Poly::constant((n & 1) as u8))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[u8]) -> Poly {
        Poly::from_coeffs(c.to_vec())
    }

    #[test]
    fn normalization() {
        let f = RatFunc::f2t();
        // (t^2 + t) / (t^2) = (t + 1) / t
        let x = f.fraction(p(&[0, 1, 1]), p(&[0, 0, 1])).unwrap();
        assert_eq!(x.num(), &p(&[1, 1]));
        assert_eq!(x.den(), &p(&[0, 1]));
        let g = RatFunc::new(Gf2k::gf4());
        let y = g.fraction(p(&[1]), p(&[3, 2])).unwrap();
        assert!(y.den().is_monic());
        assert_eq!(f.fraction(p(&[]), p(&[1, 1])).unwrap(), f.zero());
    }

    #[test]
    fn artin_schreier_exact() {
        let f = RatFunc::f2t();
        let t = f.t();
        assert_eq!(f.artin_schreier(&t), None);
        // t^2 + t = x^2 + x with x = t
        let a = f.add(&f.mul(&t, &t), &t);
        let x = f.artin_schreier(&a).unwrap();
        assert_eq!(f.add(&f.mul(&x, &x), &x), a);
        // 1/t^2 + 1/t, from x = 1/t
        let ti = f.inv(&t).unwrap();
        let b = f.add(&f.mul(&ti, &ti), &ti);
        let y = f.artin_schreier(&b).unwrap();
        assert_eq!(f.add(&f.mul(&y, &y), &y), b);
        // over GF(4)(t), 1 = w^2 + w
        let g = RatFunc::new(Gf2k::gf4());
        let z = g.artin_schreier(&g.one()).unwrap();
        assert_eq!(g.add(&g.mul(&z, &z), &z), g.one());
        assert_eq!(f.artin_schreier(&f.one()), None);
    }

    #[test]
    fn sqrt_coords_reassemble() {
        let f = RatFunc::new(Gf2k::gf4());
        let x = f.fraction(p(&[1, 2, 0, 3]), p(&[2, 1, 1])).unwrap();
        let c = f.sqrt_coords(&x);
        let b = f.sqrt_basis();
        let back = f.add(&f.mul(&b[0], &f.square(&c[0])), &f.mul(&b[1], &f.square(&c[1])));
        assert_eq!(back, x);
    }
}
