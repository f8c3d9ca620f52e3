//! Dense exact linear algebra over `Q`, plus rational root finding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::laurent::LaurentPoly;
use crate::scalars::Scalar;

const MODULUS: u64 = (1 << 61) - 1;

const MAX_PRIMES: usize = 64;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    BASES.iter().all(|&a| {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

/// Primes descending from `2^61 − 1`.
fn primes() -> impl Iterator<Item = u64> {
    (0..).map(|k| MODULUS - 2 * k).filter(|&n| is_prime(n))
}

/// In-place reduced row echelon form modulo `p`; returns the pivot columns.
fn rref_mod(m: &mut [u64], cols: usize, p: u64) -> Vec<usize> {
    let rows = m.len() / cols.max(1);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            m.swap(piv * cols + j, r * cols + j);
        }
        let inv = inv_mod(m[r * cols + c], p);
        for j in c..cols {
            m[r * cols + j] = mul_mod(m[r * cols + j], inv, p);
        }
        for i in 0..rows {
            let f = m[i * cols + c];
            if i == r || f == 0 {
                continue;
            }
            for j in c..cols {
                let t = mul_mod(f, m[r * cols + j], p);
                m[i * cols + j] = (m[i * cols + j] + p - t) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// The rational `a/b` with `|a|, |b| ≤ sqrt(M/2)` congruent to `r` modulo `M`.
fn reconstruct(r: &BigInt, m: &BigInt) -> Option<Scalar> {
    let bound = (m / 2u8).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let quot = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &quot * &r1);
        (t0, t1) = (t1.clone(), &t0 - &quot * &t1);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Scalar::from_bigints(r1, t1).ok()
}

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        QMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix::new(rows, cols, vec![Scalar::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        QMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = QMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a * o.get(k, j);
                    out.data[i * o.cols + j] += &t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !v[j].is_zero() && !self.get(i, j).is_zero())
                    .map(|j| self.get(i, j) * &v[j])
                    .sum()
            })
            .collect()
    }

    /// `self − c·I`.
    pub fn shift_diag(&self, c: &Scalar) -> QMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i) - c;
            m.set(i, i, v);
        }
        m
    }

    pub fn pow(&self, k: u32) -> QMatrix {
        let mut acc = QMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let t = &f * m.get(r, j);
                    if !t.is_zero() {
                        m.data[i * m.cols + j] -= &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// The rank. Reduction modulo a prime can only lose rank, so a full
    /// rank there settles it without rational arithmetic.
    pub fn rank(&self) -> usize {
        if self.rank_mod_prime() == Some(self.rows.min(self.cols)) {
            return self.rows.min(self.cols);
        }
        self.rref().1.len()
    }

    /// The rank of the reduction modulo `2^61 − 1`, unless a denominator
    /// vanishes there.
    pub fn rank_mod_prime(&self) -> Option<usize> {
        let mut m = self.reduce(MODULUS)?;
        Some(rref_mod(&mut m, self.cols, MODULUS).len())
    }

    fn reduce(&self, p: u64) -> Option<Vec<u64>> {
        let big = BigInt::from(p);
        let mut inverses: std::collections::HashMap<u64, u64> = std::collections::HashMap::new();
        self.data
            .iter()
            .map(|x| {
                if x.is_zero() {
                    return Some(0);
                }
                let n = x.numer().mod_floor(&big).to_u64().unwrap();
                if x.denom().is_one() {
                    return Some(n);
                }
                let d = x.denom().mod_floor(&big).to_u64().unwrap();
                (d != 0).then(|| mul_mod(n, *inverses.entry(d).or_insert_with(|| inv_mod(d, p)), p))
            })
            .collect()
    }

    /// A nonzero rational kernel vector, or `None` when the columns are
    /// independent.
    ///
    /// Kernel vectors are found modulo several primes and lifted by CRT with
    /// rational reconstruction; a lift is accepted only after an exact check.
    /// Exact elimination is the fallback.
    pub fn kernel_vector(&self) -> Option<Vec<Scalar>> {
        let mut pattern: Option<Vec<usize>> = None;
        let mut residues: Vec<BigInt> = Vec::new();
        let mut modulus = BigInt::one();
        let mut previous: Option<Vec<Scalar>> = None;
        for p in primes().take(MAX_PRIMES) {
            let Some(mut m) = self.reduce(p) else {
                continue;
            };
            let pivots = rref_mod(&mut m, self.cols, p);
            if pivots.len() == self.cols {
                // the rank over Q is at least the rank modulo p
                return None;
            }
            match &pattern {
                Some(known) if known.len() > pivots.len() => continue,
                Some(known) if *known == pivots => {}
                _ => {
                    pattern = Some(pivots.clone());
                    residues.clear();
                    modulus = BigInt::one();
                    previous = None;
                }
            }
            let free = (0..self.cols).find(|c| !pivots.contains(c)).unwrap();
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[row * self.cols + free]) % p;
            }
            let pb = BigInt::from(p);
            if residues.is_empty() {
                residues = v.iter().map(|&x| BigInt::from(x)).collect();
            } else {
                // x ≡ r (mod M), x ≡ v (mod p)
                let m_inv = BigInt::from(inv_mod(modulus.mod_floor(&pb).to_u64().unwrap(), p));
                for (r, &x) in residues.iter_mut().zip(&v) {
                    let t = ((BigInt::from(x) - &*r) * &m_inv).mod_floor(&pb);
                    *r += t * &modulus;
                }
            }
            modulus *= pb;
            let cand = residues
                .iter()
                .map(|r| reconstruct(r, &modulus))
                .collect::<Option<Vec<_>>>();
            // only a reconstruction that survived one more prime is worth an exact check
            match cand {
                Some(v) if previous.as_ref() == Some(&v) => {
                    if self.mul_vec(&v).iter().all(Scalar::is_zero) {
                        return Some(v);
                    }
                    previous = None;
                }
                _ => previous = cand,
            }
        }
        self.nullspace().into_iter().next()
    }

    /// Canonical nullspace basis: one vector per free column, read off the RREF.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// One solution of `self · x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Characteristic polynomial `det(xI − A)`, ascending coefficients, via
    /// reduction to upper Hessenberg form.
    pub fn charpoly(&self) -> Vec<Scalar> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.clone();
        for k in 1..n.saturating_sub(1) {
            let Some(p) = (k..n).find(|&i| !h.get(i, k - 1).is_zero()) else {
                continue;
            };
            if p != k {
                for j in 0..n {
                    h.data.swap(p * n + j, k * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + k);
                }
            }
            let piv = h.get(k, k - 1).recip().unwrap();
            for i in k + 1..n {
                let f = h.get(i, k - 1) * &piv;
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = &f * h.get(k, j);
                    h.data[i * n + j] -= &t;
                }
                for j in 0..n {
                    let t = &f * h.get(j, i);
                    h.data[j * n + k] += &t;
                }
            }
        }
        // p_k(x) = (x − h_kk) p_{k−1} − Σ_i h_{k−i,k} (Π sub-diagonals) p_{k−i−1}
        let mut ps: Vec<Vec<Scalar>> = vec![vec![Scalar::one()]];
        for k in 0..n {
            let prev = &ps[k];
            let mut next = vec![Scalar::zero(); k + 2];
            for (i, c) in prev.iter().enumerate() {
                next[i + 1] += c;
                let t = c * h.get(k, k);
                next[i] -= &t;
            }
            let mut prod = Scalar::one();
            for i in 1..=k {
                prod *= h.get(k - i + 1, k - i);
                if prod.is_zero() {
                    break;
                }
                let f = &prod * h.get(k - i, k);
                if f.is_zero() {
                    continue;
                }
                for (j, c) in ps[k - i].iter().enumerate() {
                    let t = &f * c;
                    next[j] -= &t;
                }
            }
            ps.push(next);
        }
        ps.pop().unwrap()
    }
}

fn poly_from_vec(v: &[Scalar]) -> LaurentPoly {
    LaurentPoly::new(0, v.to_vec())
}

fn derivative(p: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(
        p.terms()
            .filter(|(e, _)| *e != 0)
            .map(|(e, c)| (e - 1, c * &Scalar::from_int(e))),
    )
}

/// Integer multiple of `p` with coprime coefficients (ascending).
fn primitive_integer(p: &LaurentPoly) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let mut out: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    if out.last().is_some_and(|x| x.is_negative()) {
        for x in &mut out {
            *x = -&*x;
        }
    }
    out
}

fn eval_big(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn mod_u(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn trim_mod(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Degree of `gcd(a, b)` over `F_p`.
fn gcd_degree_mod(a: Vec<u64>, b: Vec<u64>, p: u64) -> usize {
    let (mut a, mut b) = (trim_mod(a), trim_mod(b));
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let c = (*a.last().unwrap() as u128 * inv as u128 % p as u128) as u64;
            let off = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                let t = (c as u128 * *bj as u128 % p as u128) as u64;
                a[off + j] = (a[off + j] + p - t) % p;
            }
            a = trim_mod(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| {
        (3..)
            .step_by(2)
            .take_while(|d| d * d <= n)
            .all(|d| n % d != 0)
    })
}

/// Distinct rational roots of a nonzero polynomial (ascending coefficients),
/// in increasing order.
///
/// Works on the monic integer transform of the squarefree part: roots are
/// found modulo a prime of good reduction, Hensel-lifted past twice the
/// Cauchy bound, and kept only when they are exact roots.
pub fn rational_roots(coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut p = poly_from_vec(coeffs);
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let mut roots = Vec::new();
    if p.lo() > 0 {
        roots.push(Scalar::zero());
        p = p.shift(-p.lo());
    }
    let g = p.gcd(&derivative(&p));
    let sqf = p.div_exact(&g).expect("gcd divides");
    let f = primitive_integer(&sqf);
    let d = f.len() - 1;
    if d == 0 {
        return roots;
    }
    let lc = f[d].clone();
    // g(y) = lc^(d-1) f(y/lc), monic with integer coefficients; roots y = lc·x
    let mut mon = Vec::with_capacity(d + 1);
    for (i, c) in f.iter().enumerate() {
        if i == d {
            mon.push(BigInt::one());
        } else {
            mon.push(c * num_traits::pow(lc.clone(), d - 1 - i));
        }
    }
    let bound = mon[..d].iter().map(|c| c.abs()).max().unwrap() + BigInt::one();
    let dmon: Vec<BigInt> = (1..=d).map(|i| &mon[i] * BigInt::from(i)).collect();
    let mut found = Vec::new();
    for prime in small_primes() {
        let mp: Vec<u64> = mon.iter().map(|c| mod_u(c, prime)).collect();
        let dp: Vec<u64> = dmon.iter().map(|c| mod_u(c, prime)).collect();
        if gcd_degree_mod(mp.clone(), dp.clone(), prime) != 0 {
            continue;
        }
        let pb = BigInt::from(prime);
        for r0 in 0..prime {
            let val = mp.iter().rev().fold(0u128, |acc, c| {
                (acc * r0 as u128 + *c as u128) % prime as u128
            });
            if val != 0 {
                continue;
            }
            let mut r = BigInt::from(r0);
            let mut modulus = pb.clone();
            while modulus <= &bound * 2 {
                modulus = &modulus * &modulus;
                let fv = eval_big(&mon, &r);
                let dv = eval_big(&dmon, &r).mod_floor(&modulus);
                let inv = dv.extended_gcd(&modulus).x.mod_floor(&modulus);
                r = (&r - fv * inv).mod_floor(&modulus);
            }
            if &r * 2 > modulus {
                r -= &modulus;
            }
            if eval_big(&mon, &r).is_zero() {
                found.push(Scalar::from_bigints(r, lc.clone()).unwrap());
            }
        }
        break;
    }
    roots.extend(found);
    roots.sort();
    roots.dedup();
    roots
}

/// Multiplicity of `root` in the polynomial.
pub fn root_multiplicity(coeffs: &[Scalar], root: &Scalar) -> usize {
    let mut p = poly_from_vec(coeffs);
    let lin = LaurentPoly::new(0, vec![-root, Scalar::one()]);
    let mut k = 0;
    while let Some(q) = p.div_exact(&lin) {
        if p.is_zero() {
            break;
        }
        p = q;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn expand(roots: &[Scalar], lead: Scalar) -> Vec<Scalar> {
        let mut p = LaurentPoly::constant(lead);
        for r in roots {
            p = p * LaurentPoly::new(0, vec![-r, Scalar::one()]);
        }
        (0..=p.hi().unwrap()).map(|e| p.coeff(e)).collect()
    }

    #[test]
    fn nullspace_is_kernel() {
        let a = QMatrix::from_ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Scalar::is_zero));
        }
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = QMatrix::from_ints(&[&[1, 1], &[1, -1]]);
        assert_eq!(a.solve(&[s(3), s(1)]), Some(vec![s(2), s(1)]));
        let b = QMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(b.solve(&[s(1), s(3)]), None);
    }

    #[test]
    fn charpoly_matches_expansion() {
        let a = QMatrix::from_ints(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(a.charpoly(), expand(&[s(2), s(2), s(3)], s(1)));
        // a dense matrix: compare with det(xI − A) at several points
        let b = QMatrix::from_ints(&[&[0, 1, 5, -2], &[3, 0, 1, 1], &[1, 1, 1, 1], &[-4, 2, 0, 7]]);
        let cp = b.charpoly();
        for x in -3..4 {
            let xi = QMatrix::identity(4).mul(&QMatrix::from_ints(&[
                &[x, 0, 0, 0],
                &[0, x, 0, 0],
                &[0, 0, x, 0],
                &[0, 0, 0, x],
            ]));
            let mut m = xi.clone();
            for i in 0..4 {
                for j in 0..4 {
                    m.set(i, j, xi.get(i, j) - b.get(i, j));
                }
            }
            let det = crate::lmatrix::LaurentMatrix::from_q(&m).det().coeff(0);
            let val: Scalar = cp
                .iter()
                .enumerate()
                .map(|(i, c)| c * &s(x).pow(i as i64))
                .sum();
            assert_eq!(det, val);
        }
    }

    #[test]
    fn roots_of_products() {
        let rs = vec![Scalar::new(-3, 2), s(0), Scalar::new(5, 7), s(12), s(12)];
        let mut p = expand(&rs, Scalar::new(-9, 4));
        // multiply by an irreducible quadratic x^2 + 1
        let q = LaurentPoly::new(0, p.clone()) * LaurentPoly::new(0, vec![s(1), s(0), s(1)]);
        p = (0..=q.hi().unwrap()).map(|e| q.coeff(e)).collect();
        let mut want = rs.clone();
        want.sort();
        want.dedup();
        assert_eq!(rational_roots(&p), want);
        assert_eq!(root_multiplicity(&p, &s(12)), 2);
        assert_eq!(rational_roots(&[s(1), s(0), s(1)]), vec![]);
    }

    #[test]
    fn modular_kernel_matches_exact() {
        assert!(is_prime(MODULUS) && !is_prime(MODULUS - 2));
        let a = QMatrix::from_ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let v = a.kernel_vector().unwrap();
        assert!(v.iter().any(|x| !x.is_zero()));
        assert!(a.mul_vec(&v).iter().all(Scalar::is_zero));
        assert_eq!(QMatrix::identity(3).kernel_vector(), None);
        // kernel with large heights, so several primes are needed
        let big = Scalar::new(987_654_321_987, 123_456_789);
        let c = QMatrix::from_rows(vec![
            vec![big.clone(), s(1), &big * &big],
            vec![s(1), Scalar::new(1, 3), &big + &s(7)],
        ]);
        let w = c.kernel_vector().unwrap();
        assert!(c.mul_vec(&w).iter().all(Scalar::is_zero));
        assert_eq!(c.transpose().kernel_vector(), None);
    }

    #[test]
    fn denominators_divisible_by_the_modulus() {
        let p = Scalar::from_bigints(BigInt::one(), BigInt::from(MODULUS)).unwrap();
        let a = QMatrix::from_rows(vec![
            vec![p.clone(), s(1)],
            vec![s(2), s(2) * &p.recip().unwrap()],
        ]);
        assert_eq!(a.rank_mod_prime(), None);
        assert_eq!(a.rank(), 2 - usize::from(a.nullspace().len() == 1));
        assert_eq!(a.kernel_vector().is_some(), !a.nullspace().is_empty());
    }
}
