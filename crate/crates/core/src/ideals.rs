//! Left ideals of `A_q` and annihilators of vectors in a module. S-ranks of
//! matrix modules and their line subbundles are found through them.
//!
//! Every search here is a bounded linear solve over `Q`, run in a fixed
//! order, so results are reproducible and `SearchExhausted` means exactly
//! that the bounds were too small.

use std::collections::BTreeMap;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::aq::{sigma_divide, AqElement, DivMode, Division};
use crate::duality::normalize_good;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::lmatrix::LaurentMatrix;
use crate::modules::{AVector, RankS, SigmaMatrix};
use crate::qlinalg::{rational_roots, QMatrix};
use crate::scalars::Scalar;

/// Search bounds on σ-degree and z-degree; `window` is the half-width of
/// coefficient supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub sigma: usize,
    pub z: usize,
    pub window: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            sigma: 6,
            z: 8,
            window: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealPresentation {
    Principal(AqElement),
    /// `p` σ-good, `w` of least σ-degree in the ideal.
    TwoGenerator {
        p: AqElement,
        w: AqElement,
    },
}

impl IdealPresentation {
    pub fn generators(&self) -> Vec<&AqElement> {
        match self {
            IdealPresentation::Principal(p) => vec![p],
            IdealPresentation::TwoGenerator { p, w } => vec![p, w],
        }
    }

    pub fn is_principal(&self) -> bool {
        matches!(self, IdealPresentation::Principal(_))
    }
}

/// Whether `r ∈ A_q·p`, for σ-good `p`.
pub fn membership_principal(r: &AqElement, p: &AqElement) -> Result<bool> {
    if !p.is_sigma_good() {
        return Err(Error::PreconditionViolation(
            "generator is not σ-good".into(),
        ));
    }
    // with a unit leading coefficient the cofactor is 1, and no nonzero
    // element of A_q·p has σ-degree below deg_σ p
    Ok(sigma_divide(r, p, DivMode::Top)?.rem.is_zero())
}

/// The relation `g·p = h·w` behind a two-generator presentation; `g` is not
/// a unit when `w` is not σ-good.
pub fn two_generator_relation(p: &AqElement, w: &AqElement) -> Result<Division> {
    sigma_divide(p, w, DivMode::Top)
}

fn columns_matrix(cols: &[AVector]) -> LaurentMatrix {
    let n = cols[0].len();
    let mut m = LaurentMatrix::zeros(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, f) in c.iter().enumerate() {
            m.set(i, j, f.clone());
        }
    }
    m
}

/// Flattens A-vectors into the columns of a matrix over `Q`, one row per
/// (coordinate, exponent) in the joint support.
fn flatten(cols: &[AVector]) -> QMatrix {
    let mut rows: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for c in cols {
        for (i, f) in c.iter().enumerate() {
            for (e, _) in f.terms() {
                rows.insert((i, e), 0);
            }
        }
    }
    for (k, v) in rows.values_mut().enumerate() {
        *v = k;
    }
    let mut m = QMatrix::zeros(rows.len(), cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, f) in c.iter().enumerate() {
            for (e, x) in f.terms() {
                m.set(rows[&(i, e)], j, x.clone());
            }
        }
    }
    m
}

fn scale_vec(f: &LaurentPoly, v: &AVector) -> AVector {
    v.iter().map(|x| f * x).collect()
}

fn shift_vec(v: &AVector, k: i64) -> AVector {
    v.iter().map(|x| x.shift(k)).collect()
}

fn is_zero_vec(v: &[LaurentPoly]) -> bool {
    v.iter().all(LaurentPoly::is_zero)
}

/// The primitive generator of the kernel of a matrix whose nullity is one.
///
/// Every kernel vector is a multiple of the primitive one, so the nonzero
/// kernel vector with coordinates in `z^0..z^D` for the least `D` is it.
fn primitive_kernel(m: &LaurentMatrix) -> Option<Vec<LaurentPoly>> {
    let cols = m.cols();
    let column = |j: usize| -> AVector { (0..m.rows()).map(|i| m.get(i, j).clone()).collect() };
    let base: Vec<AVector> = (0..cols).map(column).collect();
    // Cramer's rule bounds the span of the primitive vector
    let his: Vec<i64> = base
        .iter()
        .map(|c| c.iter().filter_map(LaurentPoly::hi).max().unwrap_or(0))
        .collect();
    let los: Vec<i64> = base
        .iter()
        .map(|c| {
            c.iter()
                .filter(|f| !f.is_zero())
                .map(LaurentPoly::lo)
                .min()
                .unwrap_or(0)
        })
        .collect();
    let bound = his.iter().sum::<i64>() - los.iter().sum::<i64>() + los.iter().max().unwrap_or(&0)
        - his.iter().min().unwrap_or(&0);
    let system = |d: i64| {
        let shifted: Vec<AVector> = base
            .iter()
            .flat_map(|c| (0..=d).map(move |k| shift_vec(c, k)))
            .collect();
        flatten(&shifted)
    };
    // a kernel over Q survives reduction, so the least d with a kernel
    // modulo a prime is a lower bound; having one is monotone in d
    let (mut lo, mut hi) = (0, bound.max(0));
    while lo < hi {
        let mid = (lo + hi) / 2;
        let m = system(mid);
        if m.rank_mod_prime().is_none_or(|r| r < m.cols()) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    (lo..=bound.max(lo)).find_map(|d| {
        let x = system(d).kernel_vector()?;
        let width = (d + 1) as usize;
        Some(
            (0..cols)
                .map(|j| {
                    LaurentPoly::from_terms((0..=d).map(|k| (k, x[j * width + k as usize].clone())))
                })
                .collect(),
        )
    })
}

/// `v, σv, …, σ^d v`.
fn krylov(t: &SigmaMatrix, v: &[LaurentPoly], d: usize) -> Vec<AVector> {
    t.orbit(v, 0, d as i64)
}

/// An element of least σ-degree killing `v`, with σ-exponents in `[0, d]`,
/// primitive, and with leading coefficient monic of lowest exponent 0.
/// It is unique with these properties.
pub fn minimal_annihilator(t: &SigmaMatrix, v: &[LaurentPoly]) -> Result<AqElement> {
    if v.len() != t.n() || is_zero_vec(v) {
        return Err(Error::PreconditionViolation(
            "vector must be nonzero and of matching size".into(),
        ));
    }
    let orbit = krylov(t, v, t.n());
    for d in 1..=t.n() {
        let m = columns_matrix(&orbit[..=d]);
        if m.rank() > d {
            continue;
        }
        let w = primitive_kernel(&m).expect("nullity is one");
        let (unit, _) = w[d].normalize_associate();
        let inv = unit.unit_inverse().unwrap();
        let el = AqElement::from_terms(
            w.into_iter()
                .enumerate()
                .map(|(i, f)| (i as i64, &inv * &f)),
        );
        return Ok(el);
    }
    unreachable!("n + 1 vectors in a rank n module are dependent")
}

fn bottom_order(bound: usize) -> impl Iterator<Item = i64> {
    let b = bound as i64;
    std::iter::once(0).chain((1..=b).flat_map(|k| [-k, k]))
}

/// A σ-good `c z^b + r₁σ + ⋯ + r_{d−1}σ^{d−1} + σ^d` killing `v`, middle
/// supports in `[−window, window]`.
fn sigma_good_of_degree(orbit: &[AVector], d: usize, b: i64, window: i64) -> Option<AqElement> {
    let mut cols = vec![shift_vec(&orbit[0], b)];
    let mut labels = vec![(0usize, b)];
    for i in 1..d {
        for k in -window..=window {
            cols.push(shift_vec(&orbit[i], k));
            labels.push((i, k));
        }
    }
    let n_unknowns = cols.len();
    cols.push(orbit[d].clone());
    let full = flatten(&cols);
    let a = QMatrix::new(
        full.rows(),
        n_unknowns,
        (0..full.rows())
            .flat_map(|r| (0..n_unknowns).map(move |c| (r, c)))
            .map(|(r, c)| full.get(r, c).clone())
            .collect(),
    );
    let rhs: Vec<Scalar> = (0..full.rows()).map(|r| -full.get(r, n_unknowns)).collect();
    let mut x = a.solve(&rhs)?;
    if x[0].is_zero() {
        let fix = a.nullspace().into_iter().find(|ns| !ns[0].is_zero())?;
        for (xi, fi) in x.iter_mut().zip(fix) {
            *xi += &fi;
        }
    }
    let mut terms: BTreeMap<i64, BTreeMap<i64, Scalar>> = BTreeMap::new();
    for ((i, k), c) in labels.into_iter().zip(x) {
        if !c.is_zero() {
            terms.entry(i as i64).or_default().insert(k, c);
        }
    }
    let el = AqElement::from_terms(
        terms
            .into_iter()
            .map(|(i, cs)| (i, LaurentPoly::from_terms(cs)))
            .chain([(d as i64, LaurentPoly::one())]),
    );
    Some(el)
}

/// Generators of `Ann(v)` in the module `t`: the minimal σ-degree element,
/// and if that is not σ-good, a σ-good element of least σ-degree within the
/// bounds.
pub fn annihilator(
    t: &SigmaMatrix,
    v: &[LaurentPoly],
    bounds: &Bounds,
) -> Result<IdealPresentation> {
    let w = minimal_annihilator(t, v)?;
    if w.is_sigma_good() {
        return Ok(IdealPresentation::Principal(w));
    }
    let dmin = w.deg_sigma().unwrap() as usize + 1;
    let orbit = krylov(t, v, bounds.sigma.max(dmin));
    for d in dmin..=bounds.sigma {
        for b in bottom_order(bounds.z) {
            if let Some(p) = sigma_good_of_degree(&orbit, d, b, bounds.window as i64) {
                debug_assert!(p.is_sigma_good() && is_zero_vec(&t.act_element(&p, v)));
                return Ok(IdealPresentation::TwoGenerator { p, w });
            }
        }
    }
    Err(Error::SearchExhausted {
        sigma: bounds.sigma,
        z: bounds.z,
        window: bounds.window,
    })
}

/// `Ann(f·e)` for the coset `f·e` in `A_q/A_q·p_m`.
pub fn annihilator_in_good(
    pm: &AqElement,
    f: &AqElement,
    bounds: &Bounds,
) -> Result<IdealPresentation> {
    let (_, nf) = normalize_good(pm)?;
    let t = SigmaMatrix::new(nf.companion())?;
    let mut e = vec![LaurentPoly::zero(); t.n()];
    e[0] = LaurentPoly::one();
    let v = t.act_element(f, &e);
    if is_zero_vec(&v) {
        return Err(Error::PreconditionViolation(
            "the coset of f is zero".into(),
        ));
    }
    annihilator(&t, &v, bounds)
}

/// Lower bound on the z-degree of every nonzero element of `Ann(v)` when
/// `w` is its minimal annihilator with σ-exponents `[0, n]`.
///
/// From `g·x = h·w` with `g ∈ A`, comparing extreme σ-coefficients gives
/// `deg_z h − deg g ≥ −min(deg w_0, deg w_n)`.
fn z_degree_lower_bound(w: &AqElement) -> u64 {
    let top = w.leading().unwrap().degree().unwrap();
    let bottom = w.trailing().unwrap().degree().unwrap();
    w.deg_z().unwrap().saturating_sub(top.min(bottom))
}

/// Whether `Ann(v)` has a nonzero element of z-degree at most `e` with
/// σ-exponents in `[0, s]`.
fn has_element_of_z_degree(orbit: &[AVector], s: usize, e: usize) -> bool {
    let mut cols = Vec::new();
    for x in orbit.iter().take(s + 1) {
        for k in 0..=e as i64 {
            cols.push(shift_vec(x, k));
        }
    }
    flatten(&cols).kernel_vector().is_some()
}

/// The outcome of analysing one candidate cyclic vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSearch {
    pub v: AVector,
    pub ann: Option<IdealPresentation>,
    pub rk_s_upper: u64,
    pub rk_s_lower: u64,
    pub certified: bool,
}

fn candidates(n: usize, seed: u64, random: usize) -> Vec<AVector> {
    let unit = |i: usize| {
        let mut v = vec![LaurentPoly::zero(); n];
        v[i] = LaurentPoly::one();
        v
    };
    let mut out: Vec<AVector> = (0..n).rev().map(unit).collect();
    out.push(vec![LaurentPoly::one(); n]);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for k in [0, 1, -1] {
                    let mut v = unit(i);
                    v[j] = LaurentPoly::monomial(Scalar::one(), k);
                    out.push(v);
                }
            }
        }
    }
    out.push(
        (0..n)
            .map(|i| LaurentPoly::monomial(Scalar::one(), i as i64))
            .collect(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        out.push(
            (0..n)
                .map(|_| {
                    LaurentPoly::from_terms(
                        (-1..=1).map(|e| (e, Scalar::from_int(rng.gen_range(-3..=3)))),
                    )
                })
                .collect(),
        );
    }
    out
}

/// Bounds on `rk_S` from one vector `v` with independent Krylov columns,
/// searching σ-exponents `[0, span]` and z-degrees below `cap`.
fn analyse_cyclic(
    t: &SigmaMatrix,
    v: &[LaurentPoly],
    span: usize,
    cap: Option<u64>,
) -> Option<(u64, u64)> {
    let n = t.n();
    let orbit = krylov(t, v, span.max(n));
    if columns_matrix(&orbit[..n]).is_singular() {
        return None;
    }
    // A_q·v has full A-rank, so M/A_q·v is finite-dimensional and
    // rk_S M = rk_S A_q·v, the least z-degree in Ann(v)
    let w = minimal_annihilator(t, v).ok()?;
    let lower = z_degree_lower_bound(&w);
    let mut upper = w.deg_z().unwrap();
    for e in lower..upper.min(cap.unwrap_or(u64::MAX)) {
        if has_element_of_z_degree(&orbit, span.max(n), e as usize) {
            upper = e;
            break;
        }
    }
    Some((lower, upper))
}

const RANDOM_CANDIDATES: usize = 12;
const STALE_CANDIDATES: usize = 6;
const DEEPENING_STEP: usize = 3;
const DEEPENING_FACTOR: usize = 3;

/// The best candidate vector with merged bounds. Candidates are tried at
/// σ-span `bounds.sigma`; if the bounds do not meet, the best one is
/// retried with the span growing up to `3·bounds.sigma`.
fn rank_bounds(t: &SigmaMatrix, bounds: &Bounds) -> Option<(AVector, u64, u64)> {
    let base = bounds.sigma.max(t.n());
    let mut best: Option<(AVector, u64, u64)> = None;
    let mut stale = 0;
    for v in candidates(t.n(), 0, RANDOM_CANDIDATES) {
        let cap = best.as_ref().map(|b| b.2);
        let Some((lo, hi)) = analyse_cyclic(t, &v, base, cap) else {
            continue;
        };
        best = Some(match best {
            None => (v, lo, hi),
            Some((bv, blo, bhi)) => {
                if hi < bhi {
                    stale = 0;
                    (v, lo.max(blo), hi)
                } else {
                    stale += 1;
                    (bv, lo.max(blo), bhi)
                }
            }
        });
        let (_, lo, hi) = best.as_ref().unwrap();
        if lo == hi || stale == STALE_CANDIDATES {
            break;
        }
    }
    let (v, mut lower, mut upper) = best?;
    let mut span = base;
    while lower < upper && span + DEEPENING_STEP <= DEEPENING_FACTOR * base {
        span += DEEPENING_STEP;
        let (lo, hi) = analyse_cyclic(t, &v, span, Some(upper)).expect("already accepted");
        lower = lower.max(lo);
        upper = upper.min(hi);
    }
    Some((v, lower, upper))
}

/// Looks for a vector generating a submodule of full A-rank, and bounds
/// `rk_S` through its annihilator. Certified when the bounds meet.
pub fn cyclic_search(t: &SigmaMatrix, bounds: &Bounds) -> Option<CyclicSearch> {
    let (v, lower, upper) = rank_bounds(t, bounds)?;
    let ann = annihilator(t, &v, bounds).ok();
    Some(CyclicSearch {
        v,
        ann,
        rk_s_upper: upper,
        rk_s_lower: lower,
        certified: lower == upper,
    })
}

/// Both bounds on `rk_S` for one diagonal block.
fn block_rank(t: &SigmaMatrix, bounds: &Bounds) -> (u64, Option<u64>) {
    if t.is_constant() {
        return (0, Some(0));
    }
    if t.n() == 1 {
        let (_, m) = t
            .matrix()
            .get(0, 0)
            .unit_decompose()
            .expect("determinant is a unit");
        let r = m.unsigned_abs();
        return (r, Some(r));
    }
    match rank_bounds(t, bounds) {
        Some((_, lo, hi)) => (lo, Some(hi)),
        None => (0, None),
    }
}

/// The strongly connected pieces of the support of `t`, each as a σ-matrix.
/// Ordered along the support they make `t` block triangular, so `rk_S` is the
/// sum over them.
pub fn diagonal_blocks(t: &SigmaMatrix) -> Vec<SigmaMatrix> {
    let n = t.n();
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && !t.matrix().get(i, j).is_zero() {
                g.add_edge(nodes[j], nodes[i], ());
            }
        }
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|comp| {
            let mut idx: Vec<usize> = comp.iter().map(|x| x.index()).collect();
            idx.sort_unstable();
            SigmaMatrix::new(t.matrix().select(&idx, &idx))
                .expect("diagonal blocks of a unit determinant are units")
        })
        .collect()
}

/// `rk_S` of the module with σ-matrix `t`: exact when every diagonal block
/// is certified, otherwise the best upper bound found.
pub fn rank_s_certified(t: &SigmaMatrix, bounds: &Bounds) -> RankS {
    let mut total = 0;
    let mut exact = true;
    let mut upper_known = true;
    for block in diagonal_blocks(t) {
        let (lo, hi) = block_rank(&block, bounds);
        match hi {
            Some(h) => {
                total += h;
                exact &= lo == h;
            }
            None => {
                exact = false;
                upper_known = false;
            }
        }
    }
    if exact {
        RankS::Exact(total)
    } else {
        RankS::Unknown {
            upper_bound: upper_known.then_some(total),
        }
    }
}

/// A rank-one submodule `A·v` with `σv = c z^k v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSubbundle {
    pub c: Scalar,
    pub k: i64,
    pub v: AVector,
}

/// All solutions of `T(z)·v(qz) = c z^k v(z)` with `c ≠ 0`, `k` in the given
/// range and every coordinate of `v` supported in `[−d, d]`, as eigenspace
/// bases of `Φ_k v = z^{−k} T v(qz)` on its largest invariant subspace of
/// that window.
pub fn line_subbundle_probe(
    t: &SigmaMatrix,
    k_range: std::ops::RangeInclusive<i64>,
    d: usize,
) -> Vec<LineSubbundle> {
    let n = t.n();
    let d = d as i64;
    let width = (2 * d + 1) as usize;
    let index = |i: usize, e: i64| i * width + (e + d) as usize;
    let dim = n * width;
    let mut out = Vec::new();
    for k in k_range {
        // Φ_k on the window basis, with rows for every exponent it reaches
        let images: Vec<AVector> = (0..dim)
            .map(|col| {
                let (i, e) = (col / width, (col % width) as i64 - d);
                let mut v = vec![LaurentPoly::zero(); n];
                v[i] = LaurentPoly::monomial(Scalar::one(), e);
                shift_vec(&t.act(&v), -k)
            })
            .collect();
        let inside = |v: &AVector| -> Option<Vec<Scalar>> {
            let mut x = vec![Scalar::zero(); dim];
            for (i, f) in v.iter().enumerate() {
                for (e, c) in f.terms() {
                    if e.abs() > d {
                        return None;
                    }
                    x[index(i, e)] = c.clone();
                }
            }
            Some(x)
        };
        let apply = |x: &[Scalar]| -> AVector {
            let mut acc = vec![LaurentPoly::zero(); n];
            for (col, c) in x.iter().enumerate() {
                if !c.is_zero() {
                    for (a, img) in acc.iter_mut().zip(&images[col]) {
                        *a = &*a + &img.scale(c);
                    }
                }
            }
            acc
        };
        // basis of the current subspace as columns
        let mut basis: Vec<Vec<Scalar>> = (0..dim)
            .map(|j| {
                (0..dim)
                    .map(|i| {
                        if i == j {
                            Scalar::one()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        loop {
            if basis.is_empty() {
                break;
            }
            // x ∈ span(basis) with Φx ∈ span(basis): solve [Φ B | B] y = 0
            let mut cols: Vec<AVector> = basis.iter().map(|b| apply(b)).collect();
            for b in &basis {
                let v: AVector = (0..n)
                    .map(|i| LaurentPoly::from_terms((-d..=d).map(|e| (e, b[index(i, e)].clone()))))
                    .collect();
                cols.push(v.iter().map(|f| -f).collect());
            }
            let sys = flatten(&cols);
            let ns = sys.nullspace();
            let m = basis.len();
            let next: Vec<Vec<Scalar>> = ns
                .iter()
                .map(|y| {
                    (0..dim)
                        .map(|r| (0..m).map(|j| &y[j] * &basis[j][r]).sum())
                        .collect()
                })
                .collect();
            let next = QMatrix::from_rows(next);
            let (rr, piv) = next.rref();
            let next: Vec<Vec<Scalar>> = (0..piv.len())
                .map(|r| (0..dim).map(|c| rr.get(r, c).clone()).collect())
                .collect();
            if next.len() == basis.len() {
                basis = next;
                break;
            }
            basis = next;
        }
        if basis.is_empty() {
            continue;
        }
        // matrix of Φ on the invariant subspace: Φ b_j = Σ_i R_ij b_i
        let m = basis.len();
        let bmat = QMatrix::new(
            dim,
            m,
            (0..dim)
                .flat_map(|r| basis.iter().map(move |b| b[r].clone()))
                .collect(),
        );
        let mut rmat = QMatrix::zeros(m, m);
        for (j, b) in basis.iter().enumerate() {
            let img = inside(&apply(b)).expect("subspace is invariant");
            let y = bmat.solve(&img).expect("subspace is invariant");
            for (i, yi) in y.into_iter().enumerate() {
                rmat.set(i, j, yi);
            }
        }
        for c in rational_roots(&rmat.charpoly()) {
            if c.is_zero() {
                continue;
            }
            for y in rmat.shift_diag(&c).nullspace() {
                let x = bmat.mul_vec(&y);
                let v: AVector = (0..n)
                    .map(|i| LaurentPoly::from_terms((-d..=d).map(|e| (e, x[index(i, e)].clone()))))
                    .collect();
                let lhs = t.act(&v);
                let rhs = scale_vec(&LaurentPoly::monomial(c.clone(), k), &v);
                assert_eq!(lhs, rhs, "eigenvector check");
                out.push(LineSubbundle { c: c.clone(), k, v });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aq::parse;
    use crate::modules::ModulePresentation;
    use crate::scalars::q;

    fn e(s: &str) -> AqElement {
        parse(s).unwrap()
    }

    #[test]
    fn principal_membership() {
        let p = e("z - (s + s^-1)");
        assert!(membership_principal(&(&e("z^2") * &p), &p).unwrap());
        assert!(membership_principal(&(&e("3*s^2 - z*s + z^-4") * &p), &p).unwrap());
        assert!(!membership_principal(&AqElement::one(), &e("s - 1")).unwrap());
        let r = e("s^2 - (q+1)*s + q");
        let w = e("(z+1)*s - (q*z+1)");
        assert!(membership_principal(&r, &w).is_err());
        let (_, nf) = normalize_good(&p).unwrap();
        assert!(!membership_principal(&r, &nf.to_element()).unwrap());
    }

    #[test]
    fn two_generator_example() {
        let b = Bounds::default();
        let ann = annihilator_in_good(&e("s - 1"), &e("1 + z"), &b).unwrap();
        let want = IdealPresentation::TwoGenerator {
            p: e("s^2 - (q+1)*s + q"),
            w: e("(z+1)*s - (q*z+1)"),
        };
        assert_eq!(ann, want);
        let rel = two_generator_relation(&e("s^2 - (q+1)*s + q"), &e("(z+1)*s - (q*z+1)")).unwrap();
        assert!(rel.rem.is_zero() && !rel.g.is_unit());
    }

    #[test]
    fn principal_annihilators() {
        let b = Bounds::default();
        assert_eq!(
            annihilator_in_good(&e("s - 1"), &AqElement::one(), &b).unwrap(),
            IdealPresentation::Principal(e("s - 1"))
        );
        for n in [-3i64, 1, 5] {
            let f = AqElement::monomial(Scalar::one(), n, 0);
            let want = &AqElement::sigma() - &AqElement::constant(q().pow(n));
            assert_eq!(
                annihilator_in_good(&e("s - 1"), &f, &b).unwrap(),
                IdealPresentation::Principal(want)
            );
        }
        assert!(annihilator_in_good(&e("s - 1"), &e("s - 1"), &b).is_err());
    }

    #[test]
    fn cyclic_search_examples() {
        let b = Bounds::default();
        let t = SigmaMatrix::new(LaurentMatrix::from_rows(vec![vec![LaurentPoly::monomial(
            Scalar::new(3, 2),
            -2,
        )]]))
        .unwrap();
        let r = cyclic_search(&t, &b).unwrap();
        assert_eq!(r.ann, Some(IdealPresentation::Principal(e("s - 3/2*z^-2"))));
        assert!(r.certified && r.rk_s_upper == 2);

        let m = ModulePresentation::good(e("z - (s + s^-1)"))
            .unwrap()
            .to_matrix();
        let r = cyclic_search(&m, &b).unwrap();
        let IdealPresentation::Principal(p) = r.ann.unwrap() else {
            panic!()
        };
        assert_eq!((p.deg_sigma(), p.deg_z()), (Some(2), Some(1)));
        assert!(r.certified && r.rk_s_upper == 1);

        let j = SigmaMatrix::new(LaurentMatrix::from_rows(vec![
            vec![LaurentPoly::one(), LaurentPoly::one()],
            vec![LaurentPoly::zero(), LaurentPoly::one()],
        ]))
        .unwrap();
        let r = cyclic_search(&j, &b).unwrap();
        assert!(r.certified && r.rk_s_upper == 0);
    }

    #[test]
    fn full_rank_vector_that_does_not_generate() {
        // 1 + z generates a proper submodule of O; the rank still comes out 0
        let t = SigmaMatrix::new(LaurentMatrix::identity(1)).unwrap();
        assert_eq!(
            analyse_cyclic(&t, &[e("1 + z").coeff(0)], 6, None),
            Some((0, 0))
        );
    }

    #[test]
    fn block_decomposition_adds_ranks() {
        let b = Bounds::default();
        let good = ModulePresentation::good(e("z - (s + s^-1)")).unwrap();
        let tor = ModulePresentation::torsion(vec![crate::modules::JordanBlock {
            lambda: Scalar::one(),
            size: 2,
        }])
        .unwrap();
        let t = good.to_matrix().tensor(&tor.to_matrix());
        assert_eq!(diagonal_blocks(&t).len(), 2);
        assert_eq!(rank_s_certified(&t, &b), RankS::Exact(2));
        let fixture = ModulePresentation::fixture_tf_counterexample().to_matrix();
        assert_eq!(rank_s_certified(&fixture, &b), RankS::Exact(1));
    }

    #[test]
    fn line_subbundles() {
        let simple = ModulePresentation::good(e("z - (s + s^-1)"))
            .unwrap()
            .to_matrix();
        assert!(line_subbundle_probe(&simple, -3..=3, 8).is_empty());

        let fixture = ModulePresentation::fixture_tf_counterexample().to_matrix();
        let found = line_subbundle_probe(&fixture, -1..=1, 4);
        assert!(found.iter().any(|l| l.c.is_one()
            && l.k == 1
            && l.v == vec![LaurentPoly::one(), LaurentPoly::zero()]));

        let c0 = Scalar::new(-2, 5);
        let t = SigmaMatrix::new(LaurentMatrix::from_rows(vec![vec![LaurentPoly::monomial(
            c0.clone(),
            2,
        )]]))
        .unwrap();
        let found = line_subbundle_probe(&t, -3..=3, 3);
        assert!(found
            .iter()
            .any(|l| l.c == c0 && l.k == 2 && l.v == vec![LaurentPoly::one()]));
    }
}
