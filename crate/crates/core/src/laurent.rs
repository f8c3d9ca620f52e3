//! Laurent polynomials `K[z, z⁻¹]`.
//!
//! The same type doubles as an element of `K[σ, σ⁻¹]` wherever the algebra
//! needs the commutative subring generated by `σ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalars::{self, Scalar};

/// `Σ coeffs[i] · z^(lo + i)`, trimmed so both ends are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Scalar::one())
    }

    /// The variable `z`.
    pub fn z() -> Self {
        LaurentPoly::monomial(Scalar::one(), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// `c · z^e`.
    pub fn monomial(c: Scalar, e: i64) -> Self {
        LaurentPoly::new(e, vec![c])
    }

    pub fn new(lo: i64, coeffs: Vec<Scalar>) -> Self {
        let mut p = LaurentPoly { lo, coeffs };
        p.trim();
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, Scalar)>>(terms: I) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return LaurentPoly::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Scalar::zero(); (hi - lo + 1) as usize];
        for (e, c) in &terms {
            coeffs[(e - lo) as usize] += c;
        }
        LaurentPoly::new(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent (0 for the zero polynomial).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest exponent, `None` for zero.
    pub fn hi(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    /// `hi − lo`, the width of the support; `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        (!self.is_zero()).then(|| self.coeffs.len() as u64 - 1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> Scalar {
        let i = e - self.lo;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Scalar::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i64, c))
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&Scalar> {
        self.coeffs.first()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.lo == 0 && self.coeffs.len() == 1)
    }

    /// `(c, m)` with `self = c·z^m`, exactly when `self` is a unit of `A`.
    pub fn unit_decompose(&self) -> Option<(Scalar, i64)> {
        (self.coeffs.len() == 1).then(|| (self.coeffs[0].clone(), self.lo))
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Inverse of a unit `c·z^m`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (c, m) = self.unit_decompose()?;
        Some(LaurentPoly::monomial(c.recip().ok()?, -m))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `self · z^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            lo: self.lo + e,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `f(q^k z)` for the ambient `q`.
    pub fn qshift(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let qk = scalars::q().pow(k);
        let mut factor = qk.pow(self.lo);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &factor);
            factor *= &qk;
        }
        LaurentPoly {
            lo: self.lo,
            coeffs,
        }
    }

    /// `f(z⁻¹)`.
    pub fn reverse(&self) -> Self {
        match self.hi() {
            None => LaurentPoly::zero(),
            Some(hi) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                LaurentPoly { lo: -hi, coeffs }
            }
        }
    }

    /// Value at a nonzero point.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        if self.is_zero() {
            return Scalar::zero();
        }
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * x.pow(self.lo)
    }

    /// `self / d` when `d` divides `self` in `A`; `None` otherwise.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (quot, rem) = poly_divmod(&self.coeffs, &d.coeffs);
        rem.iter()
            .all(Scalar::is_zero)
            .then(|| LaurentPoly::new(self.lo - d.lo, quot))
    }

    /// Monic gcd in `A`, normalized to lowest exponent 0 (zero if both are zero).
    pub(crate) fn gcd(&self, other: &LaurentPoly) -> Self {
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        while !b.is_empty() {
            let (_, r) = poly_divmod(&a, &b);
            a = b;
            b = strip(r);
        }
        let g = LaurentPoly::new(0, a);
        match g.leading_coeff() {
            None => g,
            Some(lc) => g.scale(&lc.recip().unwrap()),
        }
    }

    /// Makes the representative of the associate class: lowest exponent 0 and
    /// leading coefficient 1. Returns the unit `u` with `self = u · normalized`.
    pub(crate) fn normalize_associate(&self) -> (LaurentPoly, LaurentPoly) {
        match self.leading_coeff() {
            None => (LaurentPoly::one(), LaurentPoly::zero()),
            Some(lc) => {
                let u = LaurentPoly::monomial(lc.clone(), self.lo);
                let n = LaurentPoly::new(0, self.coeffs.iter().map(|c| c / lc).collect());
                (u, n)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formats with a chosen variable name, in the expression grammar.
    pub fn fmt_var(&self, var: &str) -> String {
        let terms: Vec<(Scalar, String)> = self
            .terms()
            .map(|(e, c)| (c.clone(), monomial_text(var, e)))
            .collect();
        join_terms(&terms)
    }
}

fn strip(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.last().is_some_and(Scalar::is_zero) {
        v.pop();
    }
    v
}

/// Dense polynomial division (ascending coefficients, `b` trimmed and nonzero).
fn poly_divmod(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lb = b.last().unwrap().recip().expect("divisor is trimmed");
    let mut quot = vec![Scalar::zero(); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + b.len() - 1] * &lb;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            rem[k + j] -= &t;
        }
        quot[k] = c;
    }
    rem.truncate(b.len() - 1);
    (quot, rem)
}

/// `var^e` as text, empty for `e = 0`.
pub(crate) fn monomial_text(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// Joins `coefficient · monomial` pairs into `a + b - c` form.
pub(crate) fn join_terms(terms: &[(Scalar, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("z"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<Scalar> for LaurentPoly {
    fn from(c: Scalar) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(Scalar::from_int(c))
    }
}

fn add_sub(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let lo = a.lo.min(b.lo);
    let hi = a.hi().unwrap().max(b.hi().unwrap());
    let mut coeffs = vec![Scalar::zero(); (hi - lo + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.lo - lo) as usize + i] += c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.lo - lo) as usize + i];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    LaurentPoly::new(lo, coeffs)
}

fn mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    let mut coeffs = vec![Scalar::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            let t = x * y;
            coeffs[i + j] += &t;
        }
    }
    LaurentPoly::new(a.lo + b.lo, coeffs)
}

macro_rules! laurent_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &'b LaurentPoly) -> LaurentPoly {
                $body(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(&self, &rhs)
            }
        }
        impl<'b> $tr<&'b LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &'b LaurentPoly) -> LaurentPoly {
                $body(&self, rhs)
            }
        }
        impl<'a> $tr<LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(self, &rhs)
            }
        }
    };
}

laurent_binop!(Add, add, |a, b| add_sub(a, b, false));
laurent_binop!(Sub, sub, |a, b| add_sub(a, b, true));
laurent_binop!(Mul, mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{with_q, QParam};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn z() -> LaurentPoly {
        LaurentPoly::z()
    }

    fn zinv() -> LaurentPoly {
        LaurentPoly::monomial(s(1), -1)
    }

    #[test]
    fn ring_examples() {
        let one = LaurentPoly::one();
        assert_eq!(
            (&z() + &one) * (&z() - &one),
            LaurentPoly::from_terms([(2, s(1)), (0, s(-1))])
        );
        assert_eq!(zinv() * z(), one);
        assert_eq!((zinv() + one.clone()) + LaurentPoly::from(-1), zinv());
        assert!((&z() - &z()).is_zero());
        assert_eq!((&z() - &z()).lo(), 0);
    }

    #[test]
    fn unit_examples() {
        assert_eq!(
            LaurentPoly::monomial(s(3), -2).unit_decompose(),
            Some((s(3), -2))
        );
        assert_eq!((z() + LaurentPoly::one()).unit_decompose(), None);
        assert_eq!(LaurentPoly::zero().unit_decompose(), None);
    }

    #[test]
    fn qshift_examples() {
        assert_eq!(z().qshift(1), LaurentPoly::monomial(s(2), 1));
        let f = LaurentPoly::from_terms([(2, s(1)), (0, s(1))]);
        // substituting 2z by hand: (2z)^2 + 1
        assert_eq!(f.qshift(1), LaurentPoly::from_terms([(2, s(4)), (0, s(1))]));
        assert_eq!(f.qshift(0), f);
        let q = QParam::new(Scalar::new(-3, 5)).unwrap();
        with_q(&q, || {
            let g = LaurentPoly::from_terms([(-2, s(7)), (1, s(-1)), (3, Scalar::new(1, 2))]);
            assert_eq!(g.qshift(4).qshift(-4), g);
            let at = Scalar::new(2, 7);
            assert_eq!(g.qshift(2).eval(&at), g.eval(&(&at * &q.pow(2))));
        });
    }

    #[test]
    fn exact_division_and_gcd() {
        let one = LaurentPoly::one();
        let a = (&z() + &one) * (&z() - &one) * zinv();
        assert_eq!(a.div_exact(&(&z() - &one)), Some((&z() + &one) * zinv()));
        assert_eq!(a.div_exact(&(&z() + &LaurentPoly::from(2))), None);
        let g = a.gcd(&((&z() + &one).shift(5)));
        assert_eq!(g, &z() + &one);
    }

    #[test]
    fn display() {
        let f = LaurentPoly::from_terms([(-1, s(1)), (0, s(2)), (2, Scalar::new(-1, 2))]);
        assert_eq!(f.to_string(), "z^-1 + 2 - 1/2*z^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::from(-1).to_string(), "-1");
    }
}
