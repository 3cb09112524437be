//! Sparse Laurent polynomials in `q` with big-integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial stored as `(exponent, coefficient)` pairs with strictly
/// increasing exponents and no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: Vec<(i32, BigInt)>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i32, coeff: BigInt) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Laurent {
                terms: vec![(exp, coeff)],
            }
        }
    }

    /// Builds from arbitrary pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigInt)>>(it: I) -> Self {
        let mut terms: Vec<(i32, BigInt)> = it.into_iter().collect();
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Laurent { terms: out }
    }

    pub fn terms(&self) -> &[(i32, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Lowest exponent; `None` for zero.
    pub fn low(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn high(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|t| &t.1)
    }

    /// Constant term when the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Gcd of the integer coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    pub fn div_exact_int(&self, c: &BigInt) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x / c)).collect(),
        }
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += BigRational::from_integer(c.clone()) * pow_rational(at, *e);
        }
        acc
    }

    /// Dense coefficients of `self * q^(-low)` from the constant term upward.
    pub(crate) fn to_dense(&self) -> (i32, Vec<BigInt>) {
        let Some(lo) = self.low() else {
            return (0, Vec::new());
        };
        let hi = self.high().unwrap();
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub(crate) fn from_dense(shift: i32, coeffs: &[BigInt]) -> Self {
        Laurent {
            terms: coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i32 + shift, c.clone()))
                .collect(),
        }
    }
}

pub(crate) fn pow_rational(x: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Laurent { terms: out }
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return Laurent {
                terms: self.terms.iter().map(|(x, y)| (x + e, y * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return rhs * self;
        }
        let lo = self.low().unwrap() + rhs.low().unwrap();
        let hi = self.high().unwrap() + rhs.high().unwrap();
        let width = (hi - lo + 1) as usize;
        if width <= 4 * (self.terms.len() * rhs.terms.len()) {
            let mut acc = vec![BigInt::zero(); width];
            for (ea, ca) in &self.terms {
                for (eb, cb) in &rhs.terms {
                    acc[(ea + eb - lo) as usize] += ca * cb;
                }
            }
            Laurent::from_dense(lo, &acc)
        } else {
            Laurent::from_terms(
                self.terms
                    .iter()
                    .flat_map(|(ea, ca)| rhs.terms.iter().map(move |(eb, cb)| (ea + eb, ca * cb))),
            )
        }
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if *e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---- dense polynomial helpers over Z (coefficients low -> high) ----

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let c = dense_content(v);
    if c.is_zero() || c.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (both non-zero, `b` trimmed).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        let off = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[off + i] -= &lr * c;
        }
        trim(&mut r);
    }
    r
}

/// Gcd in Z[q] of two non-zero dense polynomials, normalized to a positive leading coefficient.
pub(crate) fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let cont = dense_content(a).gcd(&dense_content(b));
    let (mut x, mut y) = (primitive(a), primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() && y.len() > 1 {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    let mut g = if y.is_empty() { x } else { vec![BigInt::one()] };
    g = primitive(&g);
    if g.last().is_some_and(|c| c.is_negative()) {
        for c in g.iter_mut() {
            *c = -c.clone();
        }
    }
    g.iter().map(|c| c * &cont).collect()
}

/// Exact division in Z[q]; the caller guarantees `b` divides `a`.
pub(crate) fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return r;
    }
    let db = b.len() - 1;
    let mut quot = vec![BigInt::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let (qc, rem) = r[dr].div_rem(&b[db]);
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        let off = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[off + i] -= &qc * c;
        }
        quot[off] = qc;
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_of_products() {
        // (q+1)(q-2) and (q+1)(3q+5)
        let a = p(&[-2, -1, 1]);
        let b = p(&[5, 8, 3]);
        assert_eq!(dense_gcd(&a, &b), p(&[1, 1]));
        assert_eq!(dense_div_exact(&a, &p(&[1, 1])), p(&[-2, 1]));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        assert_eq!(dense_gcd(&p(&[4, 4]), &p(&[6, 6])), p(&[2, 2]));
    }

    #[test]
    fn display_orders_by_degree() {
        let l = Laurent::from_terms([(2, BigInt::from(1)), (-1, BigInt::from(-3))]);
        assert_eq!(l.to_string(), "q^2 - 3*q^-1");
    }
}
