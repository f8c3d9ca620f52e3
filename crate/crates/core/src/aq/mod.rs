//! The quantum torus `A_q = K⟨z^±1, σ^±1⟩ / (σz − qzσ)`.
//!
//! Elements are stored in σ-normal form `Σ x_i(z) σ^i`; the commutation
//! rule `σ^i f(z) = f(q^i z) σ^i` drives every product.

mod division;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::laurent::{join_terms, monomial_text, LaurentPoly};
use crate::scalars::{self, Scalar};

pub use division::{is_sigma_witness, is_z_witness, sigma_divide, z_divide, DivMode, Division};
pub use parse::{parse, parse_laurent};

/// An element `Σ x_i(z) σ^i` of `A_q`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AqElement {
    terms: BTreeMap<i64, LaurentPoly>,
}

/// Degree data of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degrees {
    pub deg_sigma: Option<u64>,
    pub deg_z: Option<u64>,
    pub sigma_good: bool,
    pub z_good: bool,
}

impl AqElement {
    pub fn zero() -> Self {
        AqElement::default()
    }

    pub fn one() -> Self {
        AqElement::from_laurent(LaurentPoly::one())
    }

    pub fn z() -> Self {
        AqElement::from_laurent(LaurentPoly::z())
    }

    /// The generator `σ`.
    pub fn sigma() -> Self {
        AqElement::sigma_pow(1)
    }

    /// `σ^i`.
    pub fn sigma_pow(i: i64) -> Self {
        AqElement::from_term(i, LaurentPoly::one())
    }

    pub fn constant(c: Scalar) -> Self {
        AqElement::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_laurent(f: LaurentPoly) -> Self {
        AqElement::from_term(0, f)
    }

    /// `f(z) σ^i`.
    pub fn from_term(i: i64, f: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(i, f);
        }
        AqElement { terms }
    }

    /// `c z^a σ^i`.
    pub fn monomial(c: Scalar, a: i64, i: i64) -> Self {
        AqElement::from_term(i, LaurentPoly::monomial(c, a))
    }

    /// Sums the given `(σ-exponent, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i64, LaurentPoly)>>(it: I) -> Self {
        let mut x = AqElement::zero();
        for (i, f) in it {
            x.add_term(i, &f);
        }
        x
    }

    /// Polynomial in `σ` with constant coefficients, read from a Laurent
    /// polynomial whose variable stands for `σ`.
    pub fn from_sigma_poly(g: &LaurentPoly) -> Self {
        AqElement::from_terms(
            g.terms()
                .map(|(e, c)| (e, LaurentPoly::constant(c.clone()))),
        )
    }

    fn add_term(&mut self, i: i64, f: &LaurentPoly) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.get(&i) {
            Some(old) => old + f,
            None => f.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&i);
        } else {
            self.terms.insert(i, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(LaurentPoly::is_one)
    }

    /// `(σ-exponent, coefficient)` pairs, ascending in σ.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> + '_ {
        self.terms.iter().map(|(i, f)| (*i, f))
    }

    /// Coefficient of `σ^i` (zero if absent).
    pub fn coeff(&self, i: i64) -> LaurentPoly {
        self.terms.get(&i).cloned().unwrap_or_default()
    }

    pub fn sigma_lo(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn sigma_hi(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn z_lo(&self) -> Option<i64> {
        self.terms.values().map(LaurentPoly::lo).min()
    }

    pub fn z_hi(&self) -> Option<i64> {
        self.terms.values().filter_map(LaurentPoly::hi).max()
    }

    pub fn deg_sigma(&self) -> Option<u64> {
        Some((self.sigma_hi()? - self.sigma_lo()?) as u64)
    }

    pub fn deg_z(&self) -> Option<u64> {
        Some((self.z_hi()? - self.z_lo()?) as u64)
    }

    /// Top σ-coefficient.
    pub fn leading(&self) -> Option<&LaurentPoly> {
        self.terms.values().next_back()
    }

    /// Bottom σ-coefficient.
    pub fn trailing(&self) -> Option<&LaurentPoly> {
        self.terms.values().next()
    }

    /// Both extreme σ-coefficients are units of `A`.
    pub fn is_sigma_good(&self) -> bool {
        match (self.leading(), self.trailing()) {
            (Some(a), Some(b)) => a.is_unit() && b.is_unit(),
            _ => false,
        }
    }

    /// Both extreme z-coefficients (in z-normal form) are units of `S`.
    pub fn is_z_good(&self) -> bool {
        let (Some(lo), Some(hi)) = (self.z_lo(), self.z_hi()) else {
            return false;
        };
        let count = |e: i64| {
            self.terms
                .values()
                .filter(|f| !f.coeff(e).is_zero())
                .count()
        };
        count(lo) == 1 && count(hi) == 1
    }

    pub fn degrees(&self) -> Degrees {
        Degrees {
            deg_sigma: self.deg_sigma(),
            deg_z: self.deg_z(),
            sigma_good: self.is_sigma_good(),
            z_good: self.is_z_good(),
        }
    }

    /// `(c, m, n)` with `self = c z^m σ^n`, exactly for the units of `A_q`.
    pub fn unit_decompose(&self) -> Option<(Scalar, i64, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (i, f) = self.terms.iter().next().unwrap();
        let (c, m) = f.unit_decompose()?;
        Some((c, m, *i))
    }

    pub fn is_unit(&self) -> bool {
        self.unit_decompose().is_some()
    }

    /// Two-sided inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (c, m, n) = self.unit_decompose()?;
        // (c z^m σ^n)^{-1} = σ^{-n} c^{-1} z^{-m} = c^{-1} q^{nm} z^{-m} σ^{-n}
        let coef = c.recip().ok()? * scalars::q().pow(n * m);
        Some(AqElement::monomial(coef, -m, -n))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        AqElement::from_terms(self.terms().map(|(i, f)| (i, f.scale(c))))
    }

    /// `f(z) · self`.
    pub fn left_mul_laurent(&self, f: &LaurentPoly) -> Self {
        AqElement::from_terms(self.terms().map(|(i, x)| (i, f * x)))
    }

    /// `self · σ^k`.
    pub fn mul_sigma_right(&self, k: i64) -> Self {
        AqElement {
            terms: self.terms.iter().map(|(i, f)| (i + k, f.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = AqElement::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The anti-automorphism with `z ↦ z`, `σ ↦ σ⁻¹`.
    pub fn epsilon(&self) -> Self {
        // σ^{-i} w_i(z) = w_i(q^{-i} z) σ^{-i}
        AqElement::from_terms(self.terms().map(|(i, w)| (-i, w.qshift(-i))))
    }

    /// The automorphism with `z ↦ σ`, `σ ↦ z⁻¹`.
    pub fn fourier(&self) -> Self {
        // z^n σ^i ↦ σ^n z^{-i} = q^{-ni} z^{-i} σ^n
        let q = scalars::q();
        let mut out = AqElement::zero();
        for (i, f) in self.terms() {
            for (n, c) in f.terms() {
                let coef = c * &q.pow(-n * i);
                out.add_term(n, &LaurentPoly::monomial(coef, -i));
            }
        }
        out
    }

    /// Inverse of [`AqElement::fourier`].
    pub fn fourier_inv(&self) -> Self {
        self.fourier().fourier().fourier()
    }

    /// z-normal form `Σ x_k(σ) z^k`: map from z-exponent to a Laurent
    /// polynomial in `σ`.
    pub fn z_normal_form(&self) -> BTreeMap<i64, LaurentPoly> {
        let q = scalars::q();
        let mut acc: BTreeMap<i64, Vec<(i64, Scalar)>> = BTreeMap::new();
        for (i, f) in self.terms() {
            for (n, c) in f.terms() {
                // c z^n σ^i = c q^{-in} σ^i z^n
                acc.entry(n).or_default().push((i, c * &q.pow(-i * n)));
            }
        }
        acc.into_iter()
            .map(|(n, ts)| (n, LaurentPoly::from_terms(ts)))
            .collect()
    }

    /// Rebuilds an element from its z-normal form.
    pub fn from_z_normal_form(form: &BTreeMap<i64, LaurentPoly>) -> Self {
        let q = scalars::q();
        let mut out = AqElement::zero();
        for (n, g) in form {
            for (i, c) in g.terms() {
                out.add_term(i, &LaurentPoly::monomial(c * &q.pow(i * n), *n));
            }
        }
        out
    }

    /// Whether every coefficient is a constant (the element lies in `S`).
    pub fn is_in_s(&self) -> bool {
        self.terms.values().all(LaurentPoly::is_constant)
    }
}

fn mul_elements(x: &AqElement, y: &AqElement) -> AqElement {
    let mut out = AqElement::zero();
    for (i, xi) in x.terms() {
        for (j, yj) in y.terms() {
            out.add_term(i + j, &(xi * &yj.qshift(i)));
        }
    }
    out
}

fn add_elements(x: &AqElement, y: &AqElement, neg: bool) -> AqElement {
    let mut out = x.clone();
    for (j, f) in y.terms() {
        if neg {
            out.add_term(j, &-f);
        } else {
            out.add_term(j, f);
        }
    }
    out
}

macro_rules! aq_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b AqElement> for &'a AqElement {
            type Output = AqElement;
            fn $m(self, rhs: &'b AqElement) -> AqElement {
                $body(self, rhs)
            }
        }
        impl $tr<AqElement> for AqElement {
            type Output = AqElement;
            fn $m(self, rhs: AqElement) -> AqElement {
                $body(&self, &rhs)
            }
        }
        impl<'b> $tr<&'b AqElement> for AqElement {
            type Output = AqElement;
            fn $m(self, rhs: &'b AqElement) -> AqElement {
                $body(&self, rhs)
            }
        }
        impl<'a> $tr<AqElement> for &'a AqElement {
            type Output = AqElement;
            fn $m(self, rhs: AqElement) -> AqElement {
                $body(self, &rhs)
            }
        }
    };
}

aq_binop!(Add, add, |a, b| add_elements(a, b, false));
aq_binop!(Sub, sub, |a, b| add_elements(a, b, true));
aq_binop!(Mul, mul, mul_elements);

impl Neg for &AqElement {
    type Output = AqElement;
    fn neg(self) -> AqElement {
        AqElement {
            terms: self.terms.iter().map(|(i, f)| (*i, -f)).collect(),
        }
    }
}

impl Neg for AqElement {
    type Output = AqElement;
    fn neg(self) -> AqElement {
        -&self
    }
}

impl From<LaurentPoly> for AqElement {
    fn from(f: LaurentPoly) -> Self {
        AqElement::from_laurent(f)
    }
}

impl fmt::Display for AqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, x) in self.terms() {
            let s = monomial_text("s", i);
            for (a, c) in x.terms() {
                let zt = monomial_text("z", a);
                let mono = match (zt.is_empty(), s.is_empty()) {
                    (true, _) => s.clone(),
                    (false, true) => zt,
                    (false, false) => format!("{zt}*{s}"),
                };
                parts.push((c.clone(), mono));
            }
        }
        f.write_str(&join_terms(&parts))
    }
}

impl fmt::Debug for AqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AqElement({self})")
    }
}

impl std::str::FromStr for AqElement {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        parse(s)
    }
}
