//! The dual of a good module, written down explicitly.
//!
//! For `p = p₀ + p₁σ + ⋯ + σᵗ` with `p₀` a unit, the dual of `A_q/A_q·p` is
//! `A_q/A_q·r` with `r = ε(p)·p₀⁻¹`. The element `f` of the dual pairing to
//! `1, 0, …, 0` against `e, σe, …, σ^{t−1}e` generates it, and the values
//! `a_s = ⟨f, σˢe⟩` obey a linear recurrence with a closed form in terms of
//! ordered compositions.

use std::collections::BTreeMap;
use std::fmt;

use crate::aq::{sigma_divide, AqElement, DivMode};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::lmatrix::LaurentMatrix;
use crate::modules::{ModulePresentation, SigmaMatrix};

/// `p₀ + p₁σ + ⋯ + p_{t−1}σ^{t−1} + σᵗ` with `p₀` a unit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GoodNormalForm {
    coeffs: Vec<LaurentPoly>,
}

impl GoodNormalForm {
    pub fn t(&self) -> usize {
        self.coeffs.len()
    }

    pub fn p0(&self) -> &LaurentPoly {
        &self.coeffs[0]
    }

    /// `p_i` for `0 ≤ i ≤ t`; the top coefficient is 1.
    pub fn coeff(&self, i: usize) -> LaurentPoly {
        if i == self.t() {
            LaurentPoly::one()
        } else {
            self.coeffs[i].clone()
        }
    }

    pub fn to_element(&self) -> AqElement {
        let t = self.t() as i64;
        AqElement::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, f)| (i as i64, f.clone()))
                .chain([(t, LaurentPoly::one())]),
        )
    }

    /// The σ-matrix in the basis `e, σe, …, σ^{t−1}e`.
    pub fn companion(&self) -> LaurentMatrix {
        let t = self.t();
        let mut m = LaurentMatrix::zeros(t, t);
        for j in 0..t - 1 {
            m.set(j + 1, j, LaurentPoly::one());
        }
        for (i, f) in self.coeffs.iter().enumerate() {
            m.set(i, t - 1, -f);
        }
        m
    }
}

/// A unit `u` with `u·p` in normal form. Requires `p` σ-good of positive
/// σ-degree.
pub fn normalize_good(p: &AqElement) -> Result<(AqElement, GoodNormalForm)> {
    if !p.is_sigma_good() {
        return Err(Error::PreconditionViolation("element is not σ-good".into()));
    }
    let m = p.sigma_lo().unwrap();
    let t = p.deg_sigma().unwrap() as usize;
    if t == 0 {
        return Err(Error::PreconditionViolation(
            "a unit generates the whole algebra".into(),
        ));
    }
    // σ^{-m}·p has top coefficient p_n(q^{-m}z)
    let top = p.leading().unwrap().qshift(-m);
    let u = AqElement::from_term(-m, top.unit_inverse().unwrap());
    let nf = &u * p;
    let coeffs = (0..t as i64).map(|i| nf.coeff(i)).collect();
    Ok((u, GoodNormalForm { coeffs }))
}

/// `r = ε(p)·p₀⁻¹` for the normal form of `p`, and the dual module it presents.
pub fn good_dual(p: &AqElement) -> Result<(AqElement, ModulePresentation)> {
    let (_, nf) = normalize_good(p)?;
    let r = dual_generator(&nf);
    let module = ModulePresentation::good(r.clone())?;
    Ok((r, module))
}

pub fn dual_generator(nf: &GoodNormalForm) -> AqElement {
    let p0_inv = AqElement::from_laurent(nf.p0().unit_inverse().unwrap());
    &nf.to_element().epsilon() * &p0_inv
}

/// The values `a_s = ⟨f, σˢe⟩` for `lo ≤ s ≤ hi`, from `a_0 = 1`,
/// `a_1 = ⋯ = a_{t−1} = 0` and `Σ_i p_{t−i}(q^{s−t}z)·a_{s−i} = 0`.
pub fn pairing_values(nf: &GoodNormalForm, lo: i64, hi: i64) -> BTreeMap<i64, LaurentPoly> {
    let t = nf.t() as i64;
    let mut a: BTreeMap<i64, LaurentPoly> = (0..t)
        .map(|s| {
            (
                s,
                if s == 0 {
                    LaurentPoly::one()
                } else {
                    LaurentPoly::zero()
                },
            )
        })
        .collect();
    for s in t..=hi {
        let mut acc = LaurentPoly::zero();
        for i in 1..=t {
            acc = &acc - &(&nf.coeff((t - i) as usize).qshift(s - t) * &a[&(s - i)]);
        }
        a.insert(s, acc);
    }
    // solve the same relation at index s for a_{s−t}, going down
    let mut s = t - 1;
    while s - t >= lo {
        let mut acc = LaurentPoly::zero();
        for i in 0..t {
            acc = &acc - &(&nf.coeff((t - i) as usize).qshift(s - t) * &a[&(s - i)]);
        }
        let p0 = nf.p0().qshift(s - t).unit_inverse().unwrap();
        a.insert(s - t, &p0 * &acc);
        s -= 1;
    }
    a.into_iter()
        .filter(|(s, _)| (lo..=hi).contains(s))
        .collect()
}

/// The `t × t` table `⟨σ^i f, σ^j e⟩`, `0 ≤ i, j < t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairingTable {
    pub entries: LaurentMatrix,
}

impl PairingTable {
    /// Lower unitriangular: ones on the diagonal, zeros above it.
    pub fn is_unitriangular(&self) -> bool {
        let n = self.entries.rows();
        (0..n).all(|i| {
            self.entries.get(i, i).is_one() && (i + 1..n).all(|j| self.entries.get(i, j).is_zero())
        })
    }
}

impl fmt::Display for PairingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.entries.fmt(f)
    }
}

/// Entry `(i, j)` is `σ^i⟨f, σ^{j−i}e⟩ = a_{j−i}(q^i z)`.
pub fn pairing_table(nf: &GoodNormalForm) -> PairingTable {
    let t = nf.t();
    let a = pairing_values(nf, 1 - t as i64, t as i64 - 1);
    let mut entries = LaurentMatrix::zeros(t, t);
    for i in 0..t {
        for j in 0..t {
            entries.set(i, j, a[&(j as i64 - i as i64)].qshift(i as i64));
        }
    }
    PairingTable { entries }
}

/// `X_{t,s}`: ordered tuples with entries in `[1, t]` summing to `s`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompositionSet {
    pub t: usize,
    pub s: i64,
    pub tuples: Vec<Vec<usize>>,
}

pub fn composition_sums(t: usize, s: i64) -> CompositionSet {
    fn extend(t: usize, rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for x in 1..=t.min(rest) {
            prefix.push(x);
            extend(t, rest - x, prefix, out);
            prefix.pop();
        }
    }
    let mut tuples = Vec::new();
    if s >= 0 && t >= 1 {
        extend(t, s as usize, &mut Vec::new(), &mut tuples);
    }
    CompositionSet { t, s, tuples }
}

/// `Π_x = (−1)^k ∏_j p_{t−x_j}(q^{x₁+⋯+x_j} z)`.
pub fn pi_product(nf: &GoodNormalForm, x: &[usize]) -> LaurentPoly {
    let t = nf.t();
    let mut acc = LaurentPoly::one();
    let mut partial = 0i64;
    for &xj in x {
        partial += xj as i64;
        acc = &acc * &nf.coeff(t - xj).qshift(partial);
    }
    if x.len() % 2 == 1 {
        -acc
    } else {
        acc
    }
}

fn pi_sum(nf: &GoodNormalForm, s: i64, shift: i64) -> LaurentPoly {
    composition_sums(nf.t(), s)
        .tuples
        .iter()
        .fold(LaurentPoly::zero(), |acc, x| {
            &acc + &pi_product(nf, x).qshift(shift)
        })
}

/// `−p₀ Σ_{x ∈ X_{t,s−t}} Π_x`, which equals `a_s` for `s ≥ t`.
pub fn pairing_closed_form(nf: &GoodNormalForm, s: i64) -> LaurentPoly {
    -(nf.p0() * &pi_sum(nf, s - nf.t() as i64, 0))
}

/// `Σ_{i=0}^t p_{t−i}(q^s z) Σ_{x ∈ X_{t,s−i}} Π_x`, zero for `s > 0`.
pub fn right_partition_sum(nf: &GoodNormalForm, s: i64) -> LaurentPoly {
    let t = nf.t();
    (0..=t).fold(LaurentPoly::zero(), |acc, i| {
        &acc + &(&nf.coeff(t - i).qshift(s) * &pi_sum(nf, s - i as i64, 0))
    })
}

/// `Σ_{i=0}^t p_{t−i}(q^i z) Σ_{x ∈ X_{t,s−i}} Π_x(q^i z)`, zero for `s > 0`.
pub fn left_partition_sum(nf: &GoodNormalForm, s: i64) -> LaurentPoly {
    let t = nf.t();
    (0..=t).fold(LaurentPoly::zero(), |acc, i| {
        &acc + &(&nf.coeff(t - i).qshift(i as i64) * &pi_sum(nf, s - i as i64, i as i64))
    })
}

/// `⟨r·f, σˢe⟩ = Σ_{i=0}^t σ^{−i}(p_i·p₀⁻¹·a_{s+i})`, zero for `s ≥ t`.
pub fn dual_generator_pairing(nf: &GoodNormalForm, s: i64) -> LaurentPoly {
    let t = nf.t();
    let a = pairing_values(nf, s.min(0), s + t as i64);
    let p0_inv = nf.p0().unit_inverse().unwrap();
    (0..=t).fold(LaurentPoly::zero(), |acc, i| {
        let term = &(&nf.coeff(i) * &p0_inv) * &a[&(s + i as i64)];
        &acc + &term.qshift(-(i as i64))
    })
}

/// Runs the duality construction against the dual σ-matrix `C^{−T}` of the
/// companion matrix: `f` is the first dual basis vector, `r` must kill it,
/// and the orbit `f, σf, …` must reproduce the pairing table.
pub fn dual_certificate(p: &AqElement) -> Result<bool> {
    let (_, nf) = normalize_good(p)?;
    let t = nf.t();
    let dual = SigmaMatrix::new(nf.companion())?.dual();
    let mut f = vec![LaurentPoly::zero(); t];
    f[0] = LaurentPoly::one();
    let r = dual_generator(&nf);
    if dual.act_element(&r, &f).iter().any(|x| !x.is_zero()) {
        return Ok(false);
    }
    let table = pairing_table(&nf);
    let orbit = dual.orbit(&f, 0, t as i64 - 1);
    let matches = (0..t).all(|i| (0..t).all(|j| &orbit[i][j] == table.entries.get(i, j)));
    Ok(matches && table.is_unitriangular() && r.deg_sigma() == Some(t as u64) && r.is_sigma_good())
}

/// Every identity of the construction for one σ-good `p`, over `s ≤ t + slack`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCheck {
    pub unitriangular: bool,
    pub closed_form: bool,
    pub right_partition: bool,
    pub left_partition: bool,
    pub generator_pairing: bool,
    pub certificate: bool,
    pub deg_z_preserved: bool,
    pub z_good_preserved: bool,
    pub double_dual: bool,
}

impl DualityCheck {
    pub fn all(&self) -> bool {
        self.unitriangular
            && self.closed_form
            && self.right_partition
            && self.left_partition
            && self.generator_pairing
            && self.certificate
            && self.deg_z_preserved
            && self.z_good_preserved
            && self.double_dual
    }
}

pub fn duality_check(p: &AqElement, slack: i64) -> Result<DualityCheck> {
    let (_, nf) = normalize_good(p)?;
    let t = nf.t() as i64;
    let (r, _) = good_dual(p)?;
    let a = pairing_values(&nf, 0, t + slack);
    Ok(DualityCheck {
        unitriangular: pairing_table(&nf).is_unitriangular(),
        closed_form: (t..=t + slack).all(|s| a[&s] == pairing_closed_form(&nf, s)),
        right_partition: (1..=t + slack).all(|s| right_partition_sum(&nf, s).is_zero()),
        left_partition: (1..=t + slack).all(|s| left_partition_sum(&nf, s).is_zero()),
        generator_pairing: (t..=t + slack).all(|s| dual_generator_pairing(&nf, s).is_zero()),
        certificate: dual_certificate(p)?,
        deg_z_preserved: r.deg_z() == p.deg_z(),
        z_good_preserved: r.is_z_good() == p.is_z_good(),
        double_dual: double_dual_check(p)?,
    })
}

/// Applies [`good_dual`] twice and checks that the result presents the same
/// module. With `P` the normal form of `p`, the second dual generates
/// `A_q·P·σ^{−t}P₀`, and right multiplication by the unit `σ^{−t}P₀` is an
/// isomorphism `A_q/A_q·P → A_q/A_q·P·σ^{−t}P₀`. Equality of the two left
/// ideals is decided by unit-cofactor σ-division in both directions.
pub fn double_dual_check(p: &AqElement) -> Result<bool> {
    let (_, nf) = normalize_good(p)?;
    let (r, _) = good_dual(p)?;
    let (r2, _) = good_dual(&r)?;
    let twist = &AqElement::sigma_pow(-(nf.t() as i64)) * &AqElement::from_laurent(nf.p0().clone());
    let target = &nf.to_element() * &twist;
    same_left_ideal(&r2, &target)
}

/// `A_q·a = A_q·b` for σ-good `a`, `b`.
pub fn same_left_ideal(a: &AqElement, b: &AqElement) -> Result<bool> {
    let divides = |x: &AqElement, y: &AqElement| -> Result<bool> {
        let d = sigma_divide(x, y, DivMode::Top)?;
        Ok(d.rem.is_zero() && d.g.is_unit())
    };
    Ok(divides(a, b)? && divides(b, a)?)
}

/// `(σⁿ + σ⁻ⁿ)·x + (zⁿ + z⁻ⁿ)·y` for the least `n ≤ n_max` making it both
/// σ-good and z-good.
pub fn mixed_good_element(
    x: &AqElement,
    y: &AqElement,
    n_max: u32,
) -> Result<Option<(AqElement, u32)>> {
    if !x.is_sigma_good() || !y.is_z_good() {
        return Err(Error::PreconditionViolation(
            "need x σ-good and y z-good".into(),
        ));
    }
    for n in 1..=n_max {
        let p = mixed_element(x, y, n);
        if p.is_sigma_good() && p.is_z_good() {
            return Ok(Some((p, n)));
        }
    }
    Ok(None)
}

pub fn mixed_element(x: &AqElement, y: &AqElement, n: u32) -> AqElement {
    let n = n as i64;
    let s = &AqElement::sigma_pow(n) + &AqElement::sigma_pow(-n);
    let z = AqElement::from_laurent(LaurentPoly::from_terms([(n, 1.into()), (-n, 1.into())]));
    &(&s * x) + &(&z * y)
}
