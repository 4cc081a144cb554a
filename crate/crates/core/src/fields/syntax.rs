//! Text syntax for field elements.
//!
//! Galois elements are bit strings over the power basis (`0b101`, with `0`
//! and `1` as shorthands). Rational functions are `num/den` with polynomials
//! in `t`, for example `t^3+t+1/t^2`; coefficients other than 1 are written
//! as `0b11*t^2`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Family, Field, FieldDesc, FieldValue, Gf2k, Poly, RatFunc, Repr};
use crate::error::{Error, Result};

fn parse_coeff(s: &str, base: &Gf2k) -> Result<u8> {
    let v = if let Some(b) = s.strip_prefix("0b") {
        u16::from_str_radix(b, 2)
    } else if let Some(h) = s.strip_prefix("0x") {
        u16::from_str_radix(h, 16)
    } else {
        s.parse::<u16>()
    }
    .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
    if v >= base.size() as u16 {
        return Err(Error::Parse(format!("{s} does not lie in GF(2^{})", base.degree())));
    }
    Ok(v as u8)
}

fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .map(str::trim)
        .unwrap_or(s)
}

fn parse_poly(s: &str, base: &Gf2k) -> Result<Poly> {
    let s = strip_parens(s);
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".to_string()));
    }
    let mut acc = Poly::zero();
    for term in s.split('+') {
        let term = term.trim();
        let (coeff, mono) = match term.split_once('*') {
            Some((c, m)) => (parse_coeff(c.trim(), base)?, Some(m.trim())),
            None if term.starts_with('t') => (1, Some(term)),
            None => (parse_coeff(term, base)?, None),
        };
        let exp = match mono {
            None => 0,
            Some("t") => 1,
            Some(m) => m
                .strip_prefix("t^")
                .and_then(|e| e.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("bad monomial {m:?}")))?,
        };
        acc = acc.add(&Poly::monomial(coeff, exp));
    }
    Ok(acc)
}

pub fn parse_value(desc: FieldDesc, s: &str) -> Result<FieldValue> {
    let base = Gf2k::new(desc.k)?;
    let s = s.trim();
    match desc.family {
        Family::Galois => Ok(base.to_value(&parse_coeff(s, &base)?)),
        Family::RationalFunction => {
            let f = RatFunc::new(base);
            let (n, d) = match s.split_once('/') {
                Some((n, d)) => (parse_poly(n, &base)?, parse_poly(d, &base)?),
                None => (parse_poly(s, &base)?, Poly::one()),
            };
            let r = f.fraction(n, d).ok_or(Error::DivisionByZero)?;
            Ok(f.to_value(&r))
        }
    }
}

fn format_bits(b: u8) -> String {
    match b {
        0 | 1 => b.to_string(),
        _ => format!("0b{b:b}"),
    }
}

fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (i, &c) in p.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => format_bits(c),
            (1, _) => mono,
            _ => format!("{}*{mono}", format_bits(c)),
        });
    }
    terms.join("+")
}

pub fn format_value(v: &FieldValue) -> String {
    match &v.repr {
        Repr::Bits(b) => format_bits(*b),
        Repr::Fraction(n, d) if d.is_one() => format_poly(n),
        Repr::Fraction(n, d) => format!("{}/{}", format_poly(n), format_poly(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let r = FieldDesc::rational(1);
        for s in ["0", "1", "t", "t^3+t+1/t^2", "t^2+t", "1/t", "t+1/t^2+t+1"] {
            let v = parse_value(r, s).unwrap();
            assert_eq!(format_value(&v), s, "{s}");
        }
        let r4 = FieldDesc::rational(2);
        let v = parse_value(r4, "0b11*t^2+0b10").unwrap();
        assert_eq!(format_value(&v), "0b11*t^2+0b10");
        let g = FieldDesc::galois(3);
        assert_eq!(format_value(&parse_value(g, "0b101").unwrap()), "0b101");
    }

    #[test]
    fn normalizes_on_parse() {
        let r = FieldDesc::rational(1);
        assert_eq!(parse_value(r, "(t^2+t)/(t^2)").unwrap(), parse_value(r, "t+1/t").unwrap());
        assert_eq!(parse_value(r, "t+t").unwrap(), parse_value(r, "0").unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_value(FieldDesc::galois(1), "0b10").is_err());
        assert!(parse_value(FieldDesc::rational(1), "t^x").is_err());
        assert!(parse_value(FieldDesc::rational(1), "1/0").is_err());
        assert!(parse_value(FieldDesc::rational(1), "").is_err());
    }
}
