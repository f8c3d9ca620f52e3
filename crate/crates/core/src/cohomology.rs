//! `H⁰ = ker(σ − 1)` and `H¹ = coker(σ − 1)` of a module, and the Euler form.
//!
//! `h⁰` is computed from fixed vectors on a growing window. Independently,
//! an a-priori window is derived from a scalar equation every fixed vector
//! must satisfy; once the search window covers it, `h⁰` is proven. `h¹` is
//! always `h⁰ + rk_S`.

use serde::{Deserialize, Serialize};

use crate::ideals::{self, Bounds};
use crate::laurent::LaurentPoly;
use crate::lmatrix::LaurentMatrix;
use crate::modules::{AVector, ModulePresentation, RankS, SigmaMatrix};
use crate::qlinalg::{rational_roots, QMatrix};
use crate::scalars::{q_power_class, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub h0: u64,
    pub h1: Option<u64>,
    pub chi: Option<i64>,
    pub certified: bool,
    pub window_used: u64,
}

impl CohomologyReport {
    fn closed(h0: u64, h1: u64) -> Self {
        CohomologyReport {
            h0,
            h1: Some(h1),
            chi: Some(h0 as i64 - h1 as i64),
            certified: true,
            window_used: 0,
        }
    }
}

/// A basis of the solutions of `T(z)·f(qz) = f(z)` supported in `[lo, hi]`,
/// each checked against the untruncated equation.
pub fn fixed_space_in(t: &SigmaMatrix, lo: i64, hi: i64) -> Vec<AVector> {
    let n = t.n();
    if hi < lo {
        return Vec::new();
    }
    let width = (hi - lo + 1) as usize;
    let mut cols = Vec::with_capacity(n * width);
    for i in 0..n {
        for e in lo..=hi {
            let mut v = vec![LaurentPoly::zero(); n];
            v[i] = LaurentPoly::monomial(Scalar::one(), e);
            let image = t.act(&v);
            cols.push(
                image
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| a - b)
                    .collect::<AVector>(),
            );
        }
    }
    let sys = flatten(&cols, n * width);
    if sys.rank_mod_prime() == Some(sys.cols()) {
        return Vec::new();
    }
    sys.nullspace()
        .into_iter()
        .map(|x| {
            let f: AVector = (0..n)
                .map(|i| {
                    LaurentPoly::from_terms(
                        (lo..=hi).map(|e| (e, x[i * width + (e - lo) as usize].clone())),
                    )
                })
                .collect();
            assert_eq!(t.act(&f), f, "fixed vector check");
            f
        })
        .collect()
}

/// Fixed vectors supported in `[−window, window]`.
pub fn fixed_space(t: &SigmaMatrix, window: u64) -> Vec<AVector> {
    fixed_space_in(t, -(window as i64), window as i64)
}

fn flatten(cols: &[AVector], ncols: usize) -> QMatrix {
    let mut rows = std::collections::BTreeMap::new();
    for c in cols {
        for (i, f) in c.iter().enumerate() {
            for (e, _) in f.terms() {
                rows.insert((i, e), 0usize);
            }
        }
    }
    for (k, v) in rows.values_mut().enumerate() {
        *v = k;
    }
    let mut m = QMatrix::zeros(rows.len(), ncols);
    for (j, c) in cols.iter().enumerate() {
        for (i, f) in c.iter().enumerate() {
            for (e, x) in f.terms() {
                m.set(rows[&(i, e)], j, x.clone());
            }
        }
    }
    m
}

/// Exponents `k` with `q^k` a root of `Σ_i c_i x^i`.
fn q_exponent_roots(coeffs: &[(usize, Scalar)]) -> Vec<i64> {
    let deg = coeffs.iter().map(|(i, _)| *i).max().unwrap_or(0);
    let mut poly = vec![Scalar::zero(); deg + 1];
    for (i, c) in coeffs {
        poly[*i] += c;
    }
    rational_roots(&poly)
        .into_iter()
        .filter(|r| !r.is_zero())
        .filter_map(|r| q_power_class(&r).ok().flatten())
        .collect()
}

/// A window containing the support of every fixed vector, or `None` when
/// there are none at all.
///
/// For `u` in the dual with independent Krylov columns `K`, a fixed `f` gives
/// `y = ⟨u, f⟩` with `L·y = 0` for the minimal annihilator `L` of `u`, and
/// `f = (Kᵀ)⁻¹·(y, y(qz), …)`. The extreme exponents `k` of `y` make the
/// extreme coefficient of `L·y` vanish, which pins `q^k` to a root of an
/// explicit polynomial.
pub fn fixed_vector_window(t: &SigmaMatrix) -> Option<(i64, i64)> {
    let dual = t.dual();
    let n = t.n();
    let (u, kry) = dual_cyclic_vector(&dual)?;
    let l = ideals::minimal_annihilator(&dual, &u).expect("nonzero vector");
    let terms: Vec<(usize, LaurentPoly)> =
        l.terms().map(|(i, f)| (i as usize, f.clone())).collect();
    let top = terms.iter().filter_map(|(_, f)| f.hi()).max().unwrap();
    let bottom = terms.iter().map(|(_, f)| f.lo()).min().unwrap();
    let top_roots = q_exponent_roots(
        &terms
            .iter()
            .filter(|(_, f)| f.hi() == Some(top))
            .map(|(i, f)| (*i, f.leading_coeff().unwrap().clone()))
            .collect::<Vec<_>>(),
    );
    let bottom_roots = q_exponent_roots(
        &terms
            .iter()
            .filter(|(_, f)| f.lo() == bottom)
            .map(|(i, f)| (*i, f.trailing_coeff().unwrap().clone()))
            .collect::<Vec<_>>(),
    );
    let (y_hi, y_lo) = (*top_roots.iter().max()?, *bottom_roots.iter().min()?);
    if y_lo > y_hi {
        return None;
    }
    // f_i = Σ_j adj(Kᵀ)_ij · y(q^j z) / det K
    let kt = kry.transpose();
    let adj = kt.adjugate();
    let det = kt.det();
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for i in 0..n {
        for j in 0..n {
            let a = adj.get(i, j);
            if a.is_zero() {
                continue;
            }
            lo = lo.min(a.lo() + y_lo - det.lo());
            hi = hi.max(a.hi().unwrap() + y_hi - det.hi().unwrap());
        }
    }
    Some((lo, hi))
}

fn dual_cyclic_vector(dual: &SigmaMatrix) -> Option<(AVector, LaurentMatrix)> {
    let n = dual.n();
    let unit = |i: usize| {
        let mut v = vec![LaurentPoly::zero(); n];
        v[i] = LaurentPoly::one();
        v
    };
    let mut cands: Vec<AVector> = (0..n).rev().map(unit).collect();
    cands.push(vec![LaurentPoly::one(); n]);
    cands.push(
        (0..n)
            .map(|i| LaurentPoly::monomial(Scalar::one(), i as i64))
            .collect(),
    );
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut v = unit(i);
                v[j] = LaurentPoly::z();
                cands.push(v);
            }
        }
    }
    for v in cands {
        let orbit = dual.orbit(&v, 0, n as i64 - 1);
        let mut k = LaurentMatrix::zeros(n, n);
        for (j, col) in orbit.iter().enumerate() {
            for (i, f) in col.iter().enumerate() {
                k.set(i, j, f.clone());
            }
        }
        if !k.is_singular() {
            return Some((v, k));
        }
    }
    None
}

const START_WINDOW: u64 = 8;
const GROWTH: u64 = 4;

/// `h⁰` by the growing-window protocol: start at 8, grow by 4, stop after two
/// growths that add nothing or when `h⁰` reaches the A-rank. Certified when
/// the cap is reached or the window covers the a-priori bound.
pub fn h0(t: &SigmaMatrix) -> (u64, bool, u64) {
    let cap = t.n() as u64;
    let bound = fixed_vector_window(t);
    let needed = match bound {
        None => Some(0),
        Some((lo, hi)) => Some(lo.unsigned_abs().max(hi.unsigned_abs())),
    };
    let mut window = START_WINDOW;
    let mut dim = fixed_space(t, window).len() as u64;
    let mut idle = 0;
    while dim < cap && idle < 2 {
        window += GROWTH;
        let next = fixed_space(t, window).len() as u64;
        idle = if next > dim { 0 } else { idle + 1 };
        dim = next;
    }
    if dim < cap {
        if let Some(need) = needed {
            if need > window {
                // cover the proven window too, so the answer is exact
                let lo_hi = bound.unwrap();
                dim = fixed_space_in(t, lo_hi.0, lo_hi.1).len() as u64;
                window = need;
            }
        }
    }
    let certified = dim == cap || needed.is_some_and(|need| need <= window);
    (dim, certified, window)
}

pub fn cohomology(m: &ModulePresentation) -> CohomologyReport {
    cohomology_within(m, &Bounds::default())
}

pub fn cohomology_within(m: &ModulePresentation, bounds: &Bounds) -> CohomologyReport {
    match m {
        ModulePresentation::Line { c, m } => {
            if *m != 0 {
                CohomologyReport::closed(0, m.unsigned_abs())
            } else if q_power_class(c).expect("nonzero").is_some() {
                CohomologyReport::closed(1, 1)
            } else {
                CohomologyReport::closed(0, 0)
            }
        }
        ModulePresentation::Torsion { blocks } => {
            let k = blocks
                .iter()
                .filter(|b| q_power_class(&b.lambda).expect("nonzero").is_some())
                .count() as u64;
            CohomologyReport::closed(k, k)
        }
        ModulePresentation::Good { p } => {
            let rk_s = p.deg_z().unwrap();
            if p.is_z_good() && rk_s > 0 {
                // free modules have no invariants
                return CohomologyReport::closed(0, rk_s);
            }
            with_rank(m.to_matrix(), RankS::Exact(rk_s))
        }
        ModulePresentation::Matrix { t } => {
            with_rank(t.clone(), ideals::rank_s_certified(t, bounds))
        }
    }
}

fn with_rank(t: SigmaMatrix, rank: RankS) -> CohomologyReport {
    let (h0, certified, window) = h0(&t);
    let h1 = rank.exact().map(|r| h0 + r);
    CohomologyReport {
        h0,
        h1,
        chi: h1.map(|h1| h0 as i64 - h1 as i64),
        certified: certified && h1.is_some(),
        window_used: window,
    }
}

/// `χ(M, N) = χ(𝓗om(M, N))`, when it is known.
pub fn euler_form(m: &ModulePresentation, n: &ModulePresentation) -> Option<i64> {
    euler_form_within(m, n, &Bounds::default())
}

pub fn euler_form_within(
    m: &ModulePresentation,
    n: &ModulePresentation,
    bounds: &Bounds,
) -> Option<i64> {
    // χ = −rk_S, so no fixed vectors are needed
    m.hom(n).rank_s_within(bounds).exact().map(|r| -(r as i64))
}

/// `dim Hom(M, N) = h⁰(𝓗om(M, N))`, with its certification flag.
pub fn hom_dimension(m: &ModulePresentation, n: &ModulePresentation) -> (u64, bool) {
    let r = cohomology(&m.hom(n));
    (r.h0, r.certified)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aq::parse;
    use crate::modules::JordanBlock;

    fn one_by_one(f: LaurentPoly) -> SigmaMatrix {
        SigmaMatrix::new(LaurentMatrix::from_rows(vec![vec![f]])).unwrap()
    }

    #[test]
    fn fixed_space_examples() {
        let o = one_by_one(LaurentPoly::one());
        assert_eq!(fixed_space(&o, 5), vec![vec![LaurentPoly::one()]]);
        assert!(fixed_space(&one_by_one(LaurentPoly::z()), 10).is_empty());
        let j = SigmaMatrix::new(LaurentMatrix::from_q(&QMatrix::from_ints(&[
            &[1, 1],
            &[0, 1],
        ])))
        .unwrap();
        assert_eq!(
            fixed_space(&j, 6),
            vec![vec![LaurentPoly::one(), LaurentPoly::zero()]]
        );
    }

    #[test]
    fn a_priori_window() {
        // σ(1) = q^{-3}: fixed vectors are multiples of z^3
        let t = one_by_one(LaurentPoly::constant(Scalar::new(1, 8)));
        let (lo, hi) = fixed_vector_window(&t).unwrap();
        assert!(lo <= 3 && hi >= 3);
        assert_eq!(
            fixed_space_in(&t, lo, hi),
            vec![vec![LaurentPoly::monomial(Scalar::one(), 3)]]
        );
        assert_eq!(fixed_vector_window(&one_by_one(LaurentPoly::z())), None);
        assert_eq!(
            fixed_vector_window(&one_by_one(LaurentPoly::constant(Scalar::from_int(3)))),
            None
        );
        // far outside the starting window
        let far = one_by_one(LaurentPoly::constant(Scalar::new(1, 1 << 20)));
        assert_eq!(h0(&far), (1, true, 20));
    }

    #[test]
    fn closed_forms() {
        let o = ModulePresentation::trivial();
        assert_eq!(cohomology(&o), CohomologyReport::closed(1, 1));
        let l = ModulePresentation::line(Scalar::from_int(3), 0).unwrap();
        assert_eq!(cohomology(&l), CohomologyReport::closed(0, 0));
        let l = ModulePresentation::line(Scalar::one(), 3).unwrap();
        let r = cohomology(&l);
        assert_eq!((r.h0, r.h1, r.chi), (0, Some(3), Some(-3)));
        let t = ModulePresentation::torsion(vec![
            JordanBlock {
                lambda: Scalar::one(),
                size: 2,
            },
            JordanBlock {
                lambda: Scalar::from_int(3),
                size: 1,
            },
        ])
        .unwrap();
        let r = cohomology(&t);
        assert_eq!((r.h0, r.h1, r.chi), (1, Some(1), Some(0)));
        assert_eq!(h0(&t.to_matrix()), (1, true, START_WINDOW + 2 * GROWTH));
    }

    #[test]
    fn good_modules() {
        let m = ModulePresentation::good(parse("z - (s + s^-1)").unwrap()).unwrap();
        let r = cohomology(&m);
        assert_eq!(
            (r.h0, r.h1, r.chi, r.certified),
            (0, Some(1), Some(-1), true)
        );
        let o = ModulePresentation::good(parse("s^2 - (q+1)*s + q").unwrap()).unwrap();
        let r = cohomology(&o);
        assert_eq!(
            (r.h0, r.h1, r.chi, r.certified),
            (2, Some(2), Some(0), true)
        );
    }

    #[test]
    fn euler_form_examples() {
        let o = ModulePresentation::trivial();
        assert_eq!(euler_form(&o, &o), Some(0));
        for d in [-3, 2, 5] {
            let l = ModulePresentation::line(Scalar::one(), d).unwrap();
            assert_eq!(euler_form(&o, &l), Some(-d.abs()));
            assert_eq!(euler_form(&l, &o), Some(-d.abs()));
        }
    }
}
