//! Division with remainder in `A_q`, with respect to either degree.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

use super::AqElement;

/// Which extreme coefficient is eliminated at each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DivMode {
    #[default]
    Top,
    Bottom,
}

/// A witness `g·r = h·w + rem`.
///
/// For σ-division `g` is a Laurent polynomial in `z`; for z-division it is a
/// Laurent polynomial in `σ` (its variable then stands for `σ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub g: LaurentPoly,
    pub h: AqElement,
    pub rem: AqElement,
}

/// Divides `r` by `w` until the σ-degree of the remainder drops below
/// `deg_σ w`. A dividend that is already small is its own remainder.
///
/// Each step clears one extreme coefficient of the running remainder. When
/// the matching coefficient of `w`, suitably shifted, divides it in `A`, the
/// step needs no left factor; otherwise the running remainder is multiplied
/// on the left by that coefficient. A unit extreme coefficient of `w`
/// therefore always gives `g = 1`.
pub fn sigma_divide(r: &AqElement, w: &AqElement, mode: DivMode) -> Result<Division> {
    if w.is_zero() {
        return Err(Error::PreconditionViolation("divisor is zero".into()));
    }
    if r.is_zero() {
        return Ok(Division {
            g: LaurentPoly::one(),
            h: AqElement::zero(),
            rem: AqElement::zero(),
        });
    }
    let dw = w.deg_sigma().unwrap();
    let (k, wk) = match mode {
        DivMode::Top => (w.sigma_hi().unwrap(), w.leading().unwrap().clone()),
        DivMode::Bottom => (w.sigma_lo().unwrap(), w.trailing().unwrap().clone()),
    };
    let mut g = LaurentPoly::one();
    let mut h = AqElement::zero();
    let mut cur = r.clone();
    while !cur.is_zero() && cur.deg_sigma().unwrap() >= dw {
        let (l, rl) = match mode {
            DivMode::Top => (cur.sigma_hi().unwrap(), cur.leading().unwrap().clone()),
            DivMode::Bottom => (cur.sigma_lo().unwrap(), cur.trailing().unwrap().clone()),
        };
        // (b σ^{l−k}) · (w_k σ^k) = b · w_k(q^{l−k} z) σ^l
        let shifted = wk.qshift(l - k);
        let (a, b) = match rl.div_exact(&shifted) {
            Some(quot) => (LaurentPoly::one(), quot),
            None => (shifted, rl),
        };
        let step = AqElement::from_term(l - k, b);
        cur = cur.left_mul_laurent(&a) - &step * w;
        h = h.left_mul_laurent(&a) + step;
        g = &a * &g;
    }
    Ok(Division { g, h, rem: cur })
}

/// Division with respect to the z-degree, obtained by transporting
/// [`sigma_divide`] through the Fourier automorphism.
pub fn z_divide(r: &AqElement, w: &AqElement, mode: DivMode) -> Result<Division> {
    if w.is_zero() {
        return Err(Error::PreconditionViolation("divisor is zero".into()));
    }
    if r.is_zero() {
        return Ok(Division {
            g: LaurentPoly::one(),
            h: AqElement::zero(),
            rem: AqElement::zero(),
        });
    }
    let d = sigma_divide(&r.fourier(), &w.fourier(), mode)?;
    // the inverse transform sends g(z) to g(σ⁻¹)
    Ok(Division {
        g: d.g.reverse(),
        h: d.h.fourier_inv(),
        rem: d.rem.fourier_inv(),
    })
}

/// Checks `g·r − h·w = rem` with `g ≠ 0` and `rem` of σ-degree below `w`.
pub fn is_sigma_witness(
    r: &AqElement,
    w: &AqElement,
    g: &LaurentPoly,
    h: &AqElement,
    rem: &AqElement,
) -> bool {
    !g.is_zero()
        && &(&AqElement::from_laurent(g.clone()) * r) - &(h * w) == *rem
        && (rem.is_zero() || rem.deg_sigma() < w.deg_sigma())
}

/// Checks `g(σ)·r − h·w = rem` with `g ≠ 0` and `rem` of z-degree below `w`.
pub fn is_z_witness(
    r: &AqElement,
    w: &AqElement,
    g: &LaurentPoly,
    h: &AqElement,
    rem: &AqElement,
) -> bool {
    !g.is_zero()
        && &(&AqElement::from_sigma_poly(g) * r) - &(h * w) == *rem
        && (rem.is_zero() || rem.deg_z() < w.deg_z())
}

impl Division {
    /// `g` as an element of `A_q` for a σ-division.
    pub fn g_sigma_division(&self) -> AqElement {
        AqElement::from_laurent(self.g.clone())
    }

    /// `g` as an element of `A_q` for a z-division.
    pub fn g_z_division(&self) -> AqElement {
        AqElement::from_sigma_poly(&self.g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aq::parse;

    fn e(s: &str) -> AqElement {
        parse(s).unwrap()
    }

    fn check_sigma(r: &AqElement, w: &AqElement, d: &Division) {
        assert!(!d.g.is_zero());
        assert_eq!(&(&d.g_sigma_division() * r) - &(&d.h * w), d.rem);
        if !d.rem.is_zero() {
            assert!(d.rem.deg_sigma() < w.deg_sigma());
        }
    }

    #[test]
    fn two_generator_example() {
        let p = e("s^2 - (q+1)*s + q");
        let w = e("(z+1)*s - (q*z+1)");
        let d = sigma_divide(&p, &w, DivMode::Top).unwrap();
        check_sigma(&p, &w, &d);
        assert_eq!(d.g, parse_laurent_ok("q*z + 1"));
        assert_eq!(d.h, e("s - q"));
        assert!(d.rem.is_zero());
        assert_eq!(&e("q*z+1") * &p, &e("s - q") * &w);
    }

    fn parse_laurent_ok(s: &str) -> LaurentPoly {
        crate::aq::parse_laurent(s).unwrap()
    }

    #[test]
    fn trivial_examples() {
        let w = e("(z+1)*s - (q*z+1)");
        let d = sigma_divide(&w, &w, DivMode::Top).unwrap();
        assert!(d.g.is_one() && d.h.is_one() && d.rem.is_zero());
        // σ − (σ − 1) = 1 is a valid witness, and so is the algorithm's own
        let (r, w) = (e("s"), e("s - 1"));
        assert!(is_sigma_witness(
            &r,
            &w,
            &LaurentPoly::one(),
            &AqElement::one(),
            &AqElement::one()
        ));
        let d = sigma_divide(&r, &w, DivMode::Top).unwrap();
        assert!(is_sigma_witness(&r, &w, &d.g, &d.h, &d.rem));
        let d = sigma_divide(&AqElement::zero(), &w, DivMode::Bottom).unwrap();
        assert!(d.g.is_one() && d.h.is_zero() && d.rem.is_zero());
    }

    #[test]
    fn bottom_mode() {
        let r = e("z^2*s^3 + (z+1)*s - 4");
        let w = e("(z-1)*s + z^2");
        for mode in [DivMode::Top, DivMode::Bottom] {
            let d = sigma_divide(&r, &w, mode).unwrap();
            check_sigma(&r, &w, &d);
        }
        let d = sigma_divide(&r, &e("s - 3*z^2"), DivMode::Bottom).unwrap();
        assert!(d.g.is_unit());
    }

    #[test]
    fn preconditions() {
        assert!(sigma_divide(&e("s"), &AqElement::zero(), DivMode::Top).is_err());
        assert!(z_divide(&e("s"), &AqElement::zero(), DivMode::Top).is_err());
        let d = sigma_divide(&e("z"), &e("s+1"), DivMode::Top).unwrap();
        assert_eq!(d.rem, e("z"));
    }

    #[test]
    fn z_division_examples() {
        let check = |r: &AqElement, w: &AqElement, d: &Division| {
            assert_eq!(&(&d.g_z_division() * r) - &(&d.h * w), d.rem);
            if !d.rem.is_zero() {
                assert!(d.rem.deg_z() < w.deg_z());
            }
        };
        let d = z_divide(&e("z^2"), &e("z"), DivMode::Top).unwrap();
        check(&e("z^2"), &e("z"), &d);
        assert!(d.g.is_one() && d.rem.is_zero());
        assert_eq!(d.h, AqElement::z());

        let m = e("z - (s + s^-1)");
        let d = z_divide(&m, &m, DivMode::Top).unwrap();
        assert!(d.g.is_one() && d.h.is_one() && d.rem.is_zero());

        let (r, w) = (e("z^2 - 1"), e("z - s"));
        let d = z_divide(&r, &w, DivMode::Top).unwrap();
        check(&r, &w, &d);
        assert_eq!(d.rem.deg_z(), Some(0));
    }
}
