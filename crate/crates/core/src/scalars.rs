//! The coefficient field `K = Q` and the deformation parameter `q`.
//!
//! Every value in the crate is exact. The parameter `q` is ambient: each
//! thread carries a current value (default `2`) which the algebra reads when
//! it needs to commute `σ` past `z`. Use [`with_q`] to evaluate a closure
//! under a different parameter.

use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    /// `self^e` for any integer `e`; panics on `0^e` with `e < 0`.
    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.recip().expect("negative power of zero").pow(-e);
        }
        let mut base = self.0.clone();
        let mut acc = BigRational::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Scalar(acc)
    }

    /// `max(|numerator|, denominator)`: multiplicative under integer powers.
    pub fn height(&self) -> BigInt {
        let n = self.numer().abs();
        let d = self.denom().clone();
        if n > d {
            n
        } else {
            d
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Syntax {
            pos: 0,
            msg: format!("not a rational number: {s:?}"),
        };
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(n, d)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                Scalar(self.0.$m(&rhs.0))
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$m(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'b Scalar) -> Scalar {
                Scalar((&self.0).$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

/// A deformation parameter: a rational `q` with `q ∉ {0, 1, -1}`.
///
/// Over `Q` this is exactly the condition that `q` is not a root of unity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QParam(Scalar);

impl QParam {
    pub fn new(q: Scalar) -> Result<Self> {
        if q.is_zero() || q.abs().is_one() {
            return Err(Error::InvalidQ(q.to_string()));
        }
        Ok(QParam(q))
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }

    /// `q^e`.
    pub fn pow(&self, e: i64) -> Scalar {
        self.0.pow(e)
    }
}

impl Default for QParam {
    fn default() -> Self {
        QParam(Scalar::from_int(2))
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for QParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        QParam::new(s.parse()?)
    }
}

thread_local! {
    static AMBIENT_Q: RefCell<QParam> = RefCell::new(QParam::default());
}

/// The parameter currently in effect on this thread.
pub fn q() -> QParam {
    AMBIENT_Q.with(|c| c.borrow().clone())
}

/// Replaces the ambient parameter for the rest of this thread's session.
pub fn set_q(q: QParam) {
    AMBIENT_Q.with(|c| *c.borrow_mut() = q);
}

struct Restore(Option<QParam>);

impl Drop for Restore {
    fn drop(&mut self) {
        if let Some(prev) = self.0.take() {
            set_q(prev);
        }
    }
}

/// Runs `f` with `q` as the ambient parameter, restoring the previous one
/// afterwards (also on unwind).
pub fn with_q<R>(q: &QParam, f: impl FnOnce() -> R) -> R {
    let _restore = Restore(Some(self::q()));
    set_q(q.clone());
    f()
}

/// Decides whether `c = q^n` for some integer `n` and returns it.
///
/// Uses the height `max(|num|, den)`, which is exactly multiplicative
/// under powers of a rational in lowest terms, to pin down `|n|`.
pub fn q_power_class(c: &Scalar) -> Result<Option<i64>> {
    if c.is_zero() {
        return Err(Error::ZeroInput);
    }
    if c.is_one() {
        return Ok(Some(0));
    }
    let qp = q();
    let hq = qp.value().height();
    let hc = c.height();
    let mut h = hq.clone();
    let mut n: i64 = 1;
    while h < hc {
        h *= &hq;
        n += 1;
    }
    if h != hc {
        return Ok(None);
    }
    if &qp.pow(n) == c {
        Ok(Some(n))
    } else if &qp.pow(-n) == c {
        Ok(Some(-n))
    } else {
        Ok(None)
    }
}

/// Second decision route for [`q_power_class`]: read the exponent off the
/// multiplicity of a nontrivial part of `q` (its numerator or denominator)
/// in `c`, then confirm by exponentiation.
pub fn q_power_class_by_valuation(c: &Scalar) -> Result<Option<i64>> {
    if c.is_zero() {
        return Err(Error::ZeroInput);
    }
    let qp = q();
    let qn = qp.value().numer().abs();
    let qd = qp.value().denom().clone();
    let (d, in_num) = if qn > BigInt::one() {
        (qn, true)
    } else {
        (qd, false)
    };
    let multiplicity = |x: &BigInt| -> i64 {
        let mut x = x.abs();
        let mut k = 0;
        while !x.is_zero() && x.is_multiple_of(&d) {
            x /= &d;
            k += 1;
        }
        k
    };
    let e_num = multiplicity(c.numer());
    let e_den = multiplicity(c.denom());
    let n = match (in_num, e_num > 0) {
        (true, true) => e_num,
        (true, false) => -e_den,
        (false, true) => -e_num,
        (false, false) => e_den,
    };
    Ok((&qp.pow(n) == c).then_some(n))
}
