//! Exact arithmetic in GF(2^k) and GF(2^k)(t).
//!
//! Algorithms elsewhere in the crate are generic over [`Field`], which keeps
//! the finite-field inner loops monomorphized. [`FieldValue`] is the
//! family-erased representation used for parsing, reports and the dynamic
//! operations at the bottom of this module.

use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;

use rand_core::RngCore;

use crate::error::{Error, Result};

mod gf2k;
mod poly;
mod ratfunc;
mod syntax;

pub use gf2k::{smallest_irreducible, Gf2k, MAX_DEGREE};
pub use poly::Poly;
pub use ratfunc::{RatFunc, Rational};
pub use syntax::{format_value, parse_value};

/// Default coefficient-degree bound for searches over function fields.
pub const DEFAULT_DEGREE_BOUND: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Galois,
    RationalFunction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldDesc {
    pub family: Family,
    pub k: u8,
}

impl FieldDesc {
    pub fn galois(k: u8) -> Self {
        FieldDesc {
            family: Family::Galois,
            k,
        }
    }

    pub fn rational(k: u8) -> Self {
        FieldDesc {
            family: Family::RationalFunction,
            k,
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Galois => write!(f, "GF(2^{})", self.k),
            Family::RationalFunction => write!(f, "GF(2^{})(t)", self.k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Repr {
    /// Coefficients over the power basis, bit `i` for `x^i`.
    Bits(u8),
    /// Normalized numerator and denominator.
    Fraction(Poly, Poly),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldValue {
    pub desc: FieldDesc,
    pub repr: Repr,
}

impl FieldValue {
    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Bits(b) => *b == 0,
            Repr::Fraction(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Bits(b) => *b == 1,
            Repr::Fraction(n, d) => n.is_one() && d.is_one(),
        }
    }
}

impl SquareClass {
    pub fn is_trivial(&self) -> bool {
        self.rep.is_one()
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_value(self))
    }
}

/// A class in `F^x / F^x2`, held by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    pub rep: FieldValue,
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// A field of characteristic 2 with decidable squareness.
pub trait Field: Copy + fmt::Debug + PartialEq + Eq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn desc(&self) -> FieldDesc;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_square(&self, a: &Self::Elem) -> bool;
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Canonical representative of the square class, `None` for zero.
    fn square_class_rep(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Some `x` with `x^2 + x = a`.
    fn artin_schreier(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// A basis `b_j` of `F` over `F^2`.
    fn sqrt_basis(&self) -> Vec<Self::Elem>;
    /// The unique `c_j` with `a = sum b_j c_j^2`.
    fn sqrt_coords(&self, a: &Self::Elem) -> Vec<Self::Elem>;
    /// Number of elements, `None` if infinite.
    fn order(&self) -> Option<u64>;
    /// All elements (finite fields) or all polynomials of degree at most
    /// `degree_bound`, in a fixed order starting with 0 and 1.
    fn elements(&self, degree_bound: u32) -> Vec<Self::Elem>;
    fn random(&self, rng: &mut dyn RngCore, degree_bound: u32) -> Self::Elem;
    /// For GF(2) only, the element as a bit.
    fn gf2_bit(&self, a: &Self::Elem) -> Option<bool>;
    fn to_value(&self, a: &Self::Elem) -> FieldValue;
    fn from_value(&self, v: &FieldValue) -> Result<Self::Elem>;
    /// The image of an integer, i.e. its parity.
    fn from_u64(&self, n: u64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn square_class(&self, a: &Self::Elem) -> Result<SquareClass> {
        let rep = self.square_class_rep(a).ok_or(Error::ZeroElement)?;
        Ok(SquareClass {
            rep: self.to_value(&rep),
        })
    }

    fn sum<'a, I>(&self, it: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A field chosen at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnyField {
    Galois(Gf2k),
    Rational(RatFunc),
}

impl AnyField {
    pub fn new(desc: FieldDesc) -> Result<Self> {
        let base = Gf2k::new(desc.k)?;
        Ok(match desc.family {
            Family::Galois => AnyField::Galois(base),
            Family::RationalFunction => AnyField::Rational(RatFunc::new(base)),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Div,
}

macro_rules! with_field {
    ($desc:expr, |$f:ident| $body:expr) => {
        match AnyField::new($desc)? {
            AnyField::Galois($f) => $body,
            AnyField::Rational($f) => $body,
        }
    };
}

fn check_same(x: &FieldValue, y: &FieldValue) -> Result<()> {
    if x.desc == y.desc {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

/// Field arithmetic on family-erased values. `Inv` ignores `y`.
pub fn arith(x: &FieldValue, y: &FieldValue, op: ArithOp) -> Result<FieldValue> {
    if op != ArithOp::Inv {
        check_same(x, y)?;
    }
    with_field!(x.desc, |f| {
        let a = f.from_value(x)?;
        let r = match op {
            ArithOp::Add => f.add(&a, &f.from_value(y)?),
            ArithOp::Mul => f.mul(&a, &f.from_value(y)?),
            ArithOp::Inv => f.inv(&a).ok_or(Error::DivisionByZero)?,
            ArithOp::Div => f.div(&a, &f.from_value(y)?).ok_or(Error::DivisionByZero)?,
        };
        Ok(f.to_value(&r))
    })
}

pub fn is_square(x: &FieldValue) -> Result<bool> {
    with_field!(x.desc, |f| Ok(f.is_square(&f.from_value(x)?)))
}

pub fn sqrt(x: &FieldValue) -> Result<FieldValue> {
    with_field!(x.desc, |f| {
        let r = f.sqrt(&f.from_value(x)?).ok_or(Error::NotASquare)?;
        Ok(f.to_value(&r))
    })
}

pub fn square_class(x: &FieldValue) -> Result<SquareClass> {
    with_field!(x.desc, |f| f.square_class(&f.from_value(x)?))
}

pub fn artin_schreier_solve(x: &FieldValue) -> Result<Option<FieldValue>> {
    with_field!(x.desc, |f| {
        Ok(f.artin_schreier(&f.from_value(x)?).map(|r| f.to_value(&r)))
    })
}
