//! Exact arithmetic in the rational function field Q(q).
//!
//! A [`Scalar`] is a fraction of two Laurent polynomials kept in a canonical
//! form, so that structural equality coincides with equality in Q(q):
//!
//! * the numerator and denominator share no common factor in Z\[q\]
//!   (including integer content);
//! * the denominator has lowest exponent zero and a positive leading coefficient.
//!
//! Laurent polynomials (denominator `1`) never touch the gcd machinery, which
//! keeps braiding entries and most tensor arithmetic cheap.

mod laurent;
mod serial;

pub use laurent::Laurent;
pub use serial::{LaurentRepr, ScalarRepr};

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use laurent::{dense_div_exact, dense_gcd};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Laurent,
    den: Laurent,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Laurent::zero(),
            den: Laurent::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: Laurent::one(),
            den: Laurent::one(),
        }
    }

    /// The deformation parameter itself.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(k: i32) -> Self {
        Scalar {
            num: Laurent::monomial(k, BigInt::one()),
            den: Laurent::one(),
        }
    }

    pub fn int(n: i64) -> Self {
        Scalar {
            num: Laurent::monomial(0, BigInt::from(n)),
            den: Laurent::one(),
        }
    }

    pub fn rational(r: &BigRational) -> Self {
        Self::from_parts(
            Laurent::monomial(0, r.numer().clone()),
            Laurent::monomial(0, r.denom().clone()),
        )
        .expect("rational with non-zero denominator")
    }

    pub fn laurent(l: Laurent) -> Self {
        Scalar {
            num: l,
            den: Laurent::one(),
        }
    }

    /// `q - q^{-1}`, the ubiquitous Hecke constant.
    pub fn lambda() -> Self {
        &Self::q() - &Self::q_pow(-1)
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn from_parts(num: Laurent, den: Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Laurent, den: Laurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let dlow = den.low().unwrap();
        let (num, den) = if dlow != 0 {
            (num.shift(-dlow), den.shift(-dlow))
        } else {
            (num, den)
        };
        if den.terms().len() == 1 {
            // den is an integer constant
            let d = den.terms()[0].1.clone();
            let g = num_integer::Integer::gcd(&num.content(), &d);
            let g = if d.is_negative() { -g } else { g };
            if g.is_one() {
                return Scalar { num, den };
            }
            return Scalar {
                num: num.div_exact_int(&g),
                den: Laurent::monomial(0, &d / &g),
            };
        }
        let (nshift, ndense) = num.to_dense();
        let (_, ddense) = den.to_dense();
        let g = dense_gcd(&ndense, &ddense);
        let (mut nd, mut dd) = if g.len() == 1 && g[0].is_one() {
            (ndense, ddense)
        } else if g.len() == 1 {
            (
                ndense.iter().map(|c| c / &g[0]).collect(),
                ddense.iter().map(|c| c / &g[0]).collect(),
            )
        } else {
            (dense_div_exact(&ndense, &g), dense_div_exact(&ddense, &g))
        };
        if dd.last().is_some_and(|c| c.is_negative()) {
            nd.iter_mut().for_each(|c| *c = -c.clone());
            dd.iter_mut().for_each(|c| *c = -c.clone());
        }
        Scalar {
            num: Laurent::from_dense(nshift, &nd),
            den: Laurent::from_dense(0, &dd),
        }
    }

    pub fn numer(&self) -> &Laurent {
        &self.num
    }

    pub fn denom(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational number when the scalar does not depend on `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if rhs.is_one() {
            return Ok(self.clone());
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Scalar::one(), |acc, _| &acc * self)
    }

    /// Exact value at `q = at`.
    pub fn evaluate(&self, at: &BigRational) -> Result<BigRational> {
        if at.is_zero() {
            // only q-free scalars survive q = 0 unambiguously; treat as non-generic
            if let Some(r) = self.as_rational() {
                return Ok(r);
            }
            return Err(Error::NonGenericPoint {
                point: at.to_string(),
            });
        }
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::NonGenericPoint {
                point: at.to_string(),
            });
        }
        Ok(self.num.eval(at) / d)
    }

    /// Substitutes `q = at` and returns the result as a constant scalar.
    pub fn specialize(&self, at: &BigRational) -> Result<Self> {
        Ok(Scalar::rational(&self.evaluate(at)?))
    }

    /// Substitutes `q -> q^k` (k > 0).
    pub fn substitute_power(&self, k: i32) -> Self {
        let sub =
            |l: &Laurent| Laurent::from_terms(l.terms().iter().map(|(e, c)| (e * k, c.clone())));
        Self::canonical(sub(&self.num), sub(&self.den))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let n = &self.num + &rhs.num;
            if self.den.is_one() {
                return Scalar {
                    num: n,
                    den: Laurent::one(),
                };
            }
            return Scalar::canonical(n, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Scalar::canonical(n, &self.den * &rhs.den)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                num: &self.num * &rhs.num,
                den: Laurent::one(),
            };
        }
        Scalar::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] for a fallible version.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |l: &Laurent| {
            if l.terms().len() > 1 {
                format!("({l})")
            } else {
                l.to_string()
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a rational literal such as `3/2`, `-5` or `7/11`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn q_minus_inverse_has_common_denominator() {
        let d = &Scalar::q() - &Scalar::q_pow(-1);
        let expected = Scalar::from_parts(
            Laurent::from_terms([(2, 1.into()), (0, (-1).into())]),
            Laurent::monomial(1, 1.into()),
        )
        .unwrap();
        assert_eq!(d, expected);
        // canonical: q-power moved into the numerator
        assert!(d.is_laurent());
    }

    #[test]
    fn multiplicative_identity() {
        let a = Scalar::from_parts(
            Laurent::from_terms([(3, 2.into()), (0, (-1).into())]),
            Laurent::from_terms([(1, 1.into()), (0, 7.into())]),
        )
        .unwrap();
        assert_eq!(&a * &Scalar::one(), a);
    }

    #[test]
    fn reciprocal_of_q_plus_inverse() {
        let s = &Scalar::q() + &Scalar::q_pow(-1);
        let r = Scalar::one().checked_div(&s).unwrap();
        let expected = Scalar::from_parts(
            Laurent::monomial(1, 1.into()),
            Laurent::from_terms([(2, 1.into()), (0, 1.into())]),
        )
        .unwrap();
        assert_eq!(r, expected);
        assert_eq!(r.numer().to_string(), "q");
        assert_eq!(r.denom().to_string(), "q^2 + 1");
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            Scalar::one().checked_div(&Scalar::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(Scalar::lambda().evaluate(&rat(1, 1)).unwrap(), rat(0, 1));
        assert_eq!(Scalar::q_pow(2).evaluate(&rat(3, 2)).unwrap(), rat(9, 4));
        let pole = Scalar::one()
            .checked_div(&(&Scalar::q() - &Scalar::one()))
            .unwrap();
        assert!(matches!(
            pole.evaluate(&rat(1, 1)),
            Err(Error::NonGenericPoint { .. })
        ));
    }

    #[test]
    fn canonical_form_is_unique() {
        // (2q^2 - 2) / (2q - 2) == q + 1
        let a = Scalar::from_parts(
            Laurent::from_terms([(2, 2.into()), (0, (-2).into())]),
            Laurent::from_terms([(1, 2.into()), (0, (-2).into())]),
        )
        .unwrap();
        assert_eq!(a, &Scalar::q() + &Scalar::one());
        // negative leading denominator coefficient is flipped
        let b = Scalar::from_parts(
            Laurent::one(),
            Laurent::from_terms([(1, (-1).into()), (0, 1.into())]),
        )
        .unwrap();
        assert!(b.denom().leading_coeff().unwrap().is_positive());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("3/2"), Some(rat(3, 2)));
        assert_eq!(parse_rational("-5"), Some(rat(-5, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("generic"), None);
    }
}
