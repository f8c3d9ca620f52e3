//! Seeded random instances for the property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::aq::AqElement;
use crate::laurent::LaurentPoly;
use crate::lmatrix::LaurentMatrix;
use crate::modules::{JordanBlock, ModulePresentation};
use crate::scalars::{q_power_class, Scalar};

pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::new(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let c = scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A Laurent polynomial with exponents in `[lo, lo + span]`.
pub fn laurent<R: Rng>(rng: &mut R, lo: i64, span: i64) -> LaurentPoly {
    LaurentPoly::from_terms((lo..=lo + span).map(|e| {
        let c = if rng.gen_bool(0.6) {
            scalar(rng)
        } else {
            Scalar::zero()
        };
        (e, c)
    }))
}

pub fn unit<R: Rng>(rng: &mut R, max_exp: i64) -> LaurentPoly {
    LaurentPoly::monomial(nonzero_scalar(rng), rng.gen_range(-max_exp..=max_exp))
}

/// An element with σ-degree and z-degree at most `deg`.
pub fn element<R: Rng>(rng: &mut R, deg: i64) -> AqElement {
    let s_lo = rng.gen_range(-2..=1);
    let s_span = rng.gen_range(0..=deg);
    AqElement::from_terms((s_lo..=s_lo + s_span).map(|i| {
        let z_lo = rng.gen_range(-2..=1);
        let span = rng.gen_range(0..=deg);
        (i, laurent(rng, z_lo, span))
    }))
}

pub fn nonzero_element<R: Rng>(rng: &mut R, deg: i64) -> AqElement {
    loop {
        let x = element(rng, deg);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A σ-good element of σ-degree `1..=t_max`, coefficients spanning at most
/// `z_span`.
pub fn sigma_good<R: Rng>(rng: &mut R, t_max: i64, z_span: i64) -> AqElement {
    let t = rng.gen_range(1..=t_max);
    let m = rng.gen_range(-2..=2);
    let mut terms = vec![
        (m, unit(rng, z_span / 2 + 1)),
        (m + t, unit(rng, z_span / 2 + 1)),
    ];
    for i in m + 1..m + t {
        let lo = rng.gen_range(-z_span..=0);
        let span = rng.gen_range(0..=z_span);
        terms.push((i, laurent(rng, lo, span)));
    }
    AqElement::from_terms(terms)
}

/// A σ-good element that is also z-good.
pub fn free_good<R: Rng>(rng: &mut R, t_max: i64, z_span: i64) -> AqElement {
    loop {
        let p = sigma_good(rng, t_max, z_span);
        if p.is_z_good() {
            return p;
        }
    }
}

pub fn line<R: Rng>(rng: &mut R) -> ModulePresentation {
    ModulePresentation::line(nonzero_scalar(rng), rng.gen_range(-5..=5)).unwrap()
}

/// A degree-zero line bundle not isomorphic to `O`.
pub fn nontrivial_degree_zero_line<R: Rng>(rng: &mut R) -> ModulePresentation {
    loop {
        let c = nonzero_scalar(rng);
        if q_power_class(&c).unwrap().is_none() {
            return ModulePresentation::line(c, 0).unwrap();
        }
    }
}

pub fn line_of_nonzero_degree<R: Rng>(rng: &mut R) -> ModulePresentation {
    let d = *[-6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6]
        .choose(rng)
        .unwrap();
    ModulePresentation::line(nonzero_scalar(rng), d).unwrap()
}

/// Torsion data whose eigenvalues are often powers of `q` times small
/// rationals, so that q-orbits collide.
pub fn torsion<R: Rng>(rng: &mut R, max_blocks: usize, max_size: usize) -> ModulePresentation {
    let qv = crate::scalars::q();
    let blocks = (0..rng.gen_range(1..=max_blocks))
        .map(|_| {
            let base = [
                Scalar::one(),
                Scalar::from_int(3),
                Scalar::new(-1, 5),
                Scalar::new(7, 3),
            ]
            .choose(rng)
            .unwrap()
            .clone();
            JordanBlock {
                lambda: base * qv.pow(rng.gen_range(-3..=3)),
                size: rng.gen_range(1..=max_size),
            }
        })
        .collect();
    ModulePresentation::torsion(blocks).unwrap()
}

/// An invertible σ-matrix of size `n`, built from elementary operations and
/// unit diagonals.
pub fn sigma_matrix<R: Rng>(rng: &mut R, n: usize) -> LaurentMatrix {
    let mut m = LaurentMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, unit(rng, 1));
    }
    for _ in 0..2 * n {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let span = rng.gen_range(0..=2);
        let f = laurent(rng, -1, span);
        // row_i += f · row_j
        let mut e = LaurentMatrix::identity(n);
        e.set(i, j, f);
        m = if rng.gen_bool(0.5) {
            e.mul(&m)
        } else {
            m.mul(&e)
        };
    }
    m
}

pub fn matrix_module<R: Rng>(rng: &mut R, max_n: usize) -> ModulePresentation {
    let n = rng.gen_range(1..=max_n);
    ModulePresentation::matrix(sigma_matrix(rng, n)).unwrap()
}
