//! Objects of the module category: free `A`-modules of finite rank with an
//! invertible semilinear `σ`.
//!
//! A module is described in one of four ways (line bundle, torsion Jordan
//! data, cyclic quotient by a σ-good element, or an explicit σ-matrix); all
//! of them reduce to a [`SigmaMatrix`].

mod jordan;
mod json;
mod pic;
mod rigidity;

use std::fmt;

use crate::aq::AqElement;
use crate::duality::normalize_good;
use crate::error::{Error, Result};
use crate::ideals::{self, Bounds};
use crate::laurent::LaurentPoly;
use crate::lmatrix::LaurentMatrix;
use crate::scalars::Scalar;

pub use jordan::{jordan_matrix, jordan_structure, JordanBlock};
pub use json::ModuleDescriptor;
pub use pic::{pic_class, pic_eq, pic_inv, pic_mul, PicClass};
pub use rigidity::{
    coevaluation, ev_equivariant_on, evaluation, is_morphism, pairing, rigidity_check,
    RigidityCheck,
};

/// The σ-action on `A^n`: `σ(e_j) = Σ_i T_ij(z) e_i`, extended by
/// `σ(f(z) m) = f(qz) σ(m)`. So on coordinate vectors `σ(v) = T · v(qz)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SigmaMatrix {
    t: LaurentMatrix,
}

/// A coordinate vector over `A`.
pub type AVector = Vec<LaurentPoly>;

impl SigmaMatrix {
    /// Fails unless `t` is square with a unit determinant.
    pub fn new(t: LaurentMatrix) -> Result<Self> {
        if !t.is_square() || !t.det().is_unit() {
            return Err(Error::NotInvertible);
        }
        Ok(SigmaMatrix { t })
    }

    pub fn n(&self) -> usize {
        self.t.rows()
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.t
    }

    pub fn inverse_matrix(&self) -> LaurentMatrix {
        self.t.inverse().expect("determinant is a unit")
    }

    /// `σ(v) = T(z) v(qz)`.
    pub fn act(&self, v: &[LaurentPoly]) -> AVector {
        let shifted: AVector = v.iter().map(|f| f.qshift(1)).collect();
        self.t.apply(&shifted)
    }

    /// `σ⁻¹(v) = T⁻¹(q⁻¹z) v(q⁻¹z)`.
    pub fn act_inv(&self, v: &[LaurentPoly]) -> AVector {
        let inv = self.inverse_matrix().qshift(-1);
        let shifted: AVector = v.iter().map(|f| f.qshift(-1)).collect();
        inv.apply(&shifted)
    }

    /// `σ^i v` for every `i` in `lo..=hi` (`lo ≤ 0 ≤ hi`).
    pub fn orbit(&self, v: &[LaurentPoly], lo: i64, hi: i64) -> Vec<AVector> {
        assert!(lo <= 0 && hi >= 0);
        let mut up = vec![v.to_vec()];
        for _ in 0..hi {
            let next = self.act(up.last().unwrap());
            up.push(next);
        }
        let mut down = Vec::new();
        if lo < 0 {
            let inv = self.inverse_matrix().qshift(-1);
            let mut cur = v.to_vec();
            for _ in lo..0 {
                let shifted: AVector = cur.iter().map(|f| f.qshift(-1)).collect();
                cur = inv.apply(&shifted);
                down.push(cur.clone());
            }
        }
        down.reverse();
        down.extend(up);
        down
    }

    /// The action of an algebra element: `r · v = Σ r_i(z) σ^i v`.
    pub fn act_element(&self, r: &AqElement, v: &[LaurentPoly]) -> AVector {
        let n = self.n();
        if r.is_zero() {
            return vec![LaurentPoly::zero(); n];
        }
        let lo = r.sigma_lo().unwrap().min(0);
        let hi = r.sigma_hi().unwrap().max(0);
        let orbit = self.orbit(v, lo, hi);
        let mut out = vec![LaurentPoly::zero(); n];
        for (i, f) in r.terms() {
            let w = &orbit[(i - lo) as usize];
            for k in 0..n {
                out[k] = &out[k] + &(f * &w[k]);
            }
        }
        out
    }

    /// The σ-matrix of the dual module, `T(z)^{-T}`, characterized by
    /// `⟨σφ, σm⟩ = σ⟨φ, m⟩` for the pairing `⟨φ, m⟩ = φᵀm`.
    pub fn dual(&self) -> SigmaMatrix {
        SigmaMatrix {
            t: self.inverse_matrix().transpose(),
        }
    }

    /// `σ(m ⊗ n) = σm ⊗ σn`.
    pub fn tensor(&self, other: &SigmaMatrix) -> SigmaMatrix {
        SigmaMatrix {
            t: self.t.kronecker(&other.t),
        }
    }

    /// Change of basis by `U` (columns are the new basis): `U⁻¹ T U(qz)`.
    pub fn gauge(&self, u: &LaurentMatrix) -> Result<SigmaMatrix> {
        let ui = u.inverse().ok_or(Error::NotInvertible)?;
        Ok(SigmaMatrix {
            t: ui.mul(&self.t).mul(&u.qshift(1)),
        })
    }

    pub fn is_constant(&self) -> bool {
        self.t.is_constant()
    }
}

impl fmt::Display for SigmaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.t.fmt(f)
    }
}

impl fmt::Debug for SigmaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SigmaMatrix({})", self.t)
    }
}

/// An object of the module category, in one of its presentation classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ModulePresentation {
    /// `A` with `σ(1) = c·z^m`.
    Line {
        c: Scalar,
        m: i64,
    },
    /// `A ⊗ V` with `V` given by Jordan data, blocks in canonical order.
    Torsion {
        blocks: Vec<JordanBlock>,
    },
    /// `A_q / A_q·p` for σ-good `p`.
    Good {
        p: AqElement,
    },
    Matrix {
        t: SigmaMatrix,
    },
}

/// Rank over `S = K[σ, σ⁻¹]`: exact, or only bounded above.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RankS {
    Exact(u64),
    Unknown { upper_bound: Option<u64> },
}

impl RankS {
    pub fn exact(self) -> Option<u64> {
        match self {
            RankS::Exact(r) => Some(r),
            RankS::Unknown { .. } => None,
        }
    }
}

impl ModulePresentation {
    pub fn line(c: Scalar, m: i64) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(ModulePresentation::Line { c, m })
    }

    /// The unit object `O = A_q / A_q·(σ − 1)`.
    pub fn trivial() -> Self {
        ModulePresentation::Line {
            c: Scalar::one(),
            m: 0,
        }
    }

    pub fn torsion(mut blocks: Vec<JordanBlock>) -> Result<Self> {
        if blocks.iter().any(|b| b.lambda.is_zero() || b.size == 0) {
            return Err(Error::Descriptor(
                "Jordan blocks need nonzero eigenvalue and positive size".into(),
            ));
        }
        jordan::canonical_order(&mut blocks);
        Ok(ModulePresentation::Torsion { blocks })
    }

    pub fn good(p: AqElement) -> Result<Self> {
        if !p.is_sigma_good() {
            return Err(Error::PreconditionViolation(
                "generator is not σ-good".into(),
            ));
        }
        Ok(ModulePresentation::Good { p })
    }

    pub fn matrix(t: LaurentMatrix) -> Result<Self> {
        Ok(ModulePresentation::Matrix {
            t: SigmaMatrix::new(t)?,
        })
    }

    /// The module with basis `e₁, e₂`, `σe₁ = z e₁`, `σe₂ = e₁ + e₂`: torsion
    /// free, but its dual is not.
    pub fn fixture_tf_counterexample() -> Self {
        let t = LaurentMatrix::from_rows(vec![
            vec![LaurentPoly::z(), LaurentPoly::one()],
            vec![LaurentPoly::zero(), LaurentPoly::one()],
        ]);
        ModulePresentation::matrix(t).expect("determinant is z")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ModulePresentation::Line { .. } => "line",
            ModulePresentation::Torsion { .. } => "torsion",
            ModulePresentation::Good { .. } => "good",
            ModulePresentation::Matrix { .. } => "matrix",
        }
    }

    /// The σ-matrix in the natural basis of each class. For `Good`, the basis
    /// is `e, σe, …, σ^{t−1}e` of the normalized generator.
    pub fn to_matrix(&self) -> SigmaMatrix {
        match self {
            ModulePresentation::Line { c, m } => SigmaMatrix {
                t: LaurentMatrix::from_rows(vec![vec![LaurentPoly::monomial(c.clone(), *m)]]),
            },
            ModulePresentation::Torsion { blocks } => SigmaMatrix {
                t: LaurentMatrix::from_q(&jordan_matrix(blocks)),
            },
            ModulePresentation::Good { p } => {
                let (_, nf) = normalize_good(p).expect("σ-good by construction");
                SigmaMatrix { t: nf.companion() }
            }
            ModulePresentation::Matrix { t } => t.clone(),
        }
    }

    pub fn rank_a(&self) -> u64 {
        match self {
            ModulePresentation::Line { .. } => 1,
            ModulePresentation::Torsion { blocks } => blocks.iter().map(|b| b.size as u64).sum(),
            ModulePresentation::Good { p } => p.deg_sigma().unwrap(),
            ModulePresentation::Matrix { t } => t.n() as u64,
        }
    }

    pub fn rank_s(&self) -> RankS {
        self.rank_s_within(&Bounds::default())
    }

    pub fn rank_s_within(&self, bounds: &Bounds) -> RankS {
        match self {
            ModulePresentation::Line { m, .. } => RankS::Exact(m.unsigned_abs()),
            ModulePresentation::Torsion { .. } => RankS::Exact(0),
            ModulePresentation::Good { p } => RankS::Exact(p.deg_z().unwrap()),
            ModulePresentation::Matrix { t } => ideals::rank_s_certified(t, bounds),
        }
    }

    /// Whether this is the unit object up to isomorphism, decided only for
    /// line bundles.
    pub fn is_trivial_line(&self) -> bool {
        match self {
            ModulePresentation::Line { c, m } => {
                *m == 0 && crate::scalars::q_power_class(c).ok().flatten().is_some()
            }
            _ => false,
        }
    }

    pub fn dual(&self) -> ModulePresentation {
        match self {
            ModulePresentation::Line { c, m } => ModulePresentation::Line {
                c: c.recip().expect("nonzero"),
                m: -m,
            },
            ModulePresentation::Torsion { blocks } => {
                let mut b: Vec<JordanBlock> = blocks
                    .iter()
                    .map(|b| JordanBlock {
                        lambda: b.lambda.recip().expect("nonzero"),
                        size: b.size,
                    })
                    .collect();
                jordan::canonical_order(&mut b);
                ModulePresentation::Torsion { blocks: b }
            }
            ModulePresentation::Good { p } => {
                let (r, _) = crate::duality::good_dual(p).expect("σ-good by construction");
                ModulePresentation::Good { p: r }
            }
            ModulePresentation::Matrix { t } => ModulePresentation::Matrix { t: t.dual() },
        }
    }

    /// Tensor product over `A` with the diagonal σ-action.
    pub fn tensor(&self, other: &ModulePresentation) -> ModulePresentation {
        use ModulePresentation::*;
        if let (Line { c: c1, m: m1 }, Line { c: c2, m: m2 }) = (self, other) {
            return Line {
                c: c1 * c2,
                m: m1 + m2,
            };
        }
        let t = self.to_matrix().tensor(&other.to_matrix());
        if let Some(q) = t.matrix().to_q() {
            if let Ok(blocks) = jordan_structure(&q) {
                return ModulePresentation::torsion(blocks).expect("eigenvalues are nonzero");
            }
        }
        Matrix { t }
    }

    /// The inner Hom, `M^∨ ⊗ N`.
    pub fn hom(&self, other: &ModulePresentation) -> ModulePresentation {
        self.dual().tensor(other)
    }

    /// Torsion over `S`: exactly the modules of S-rank zero.
    pub fn is_torsion(&self) -> Option<bool> {
        self.rank_s().exact().map(|r| r == 0)
    }
}

/// Both sides of `rk_S(N ⊗ M) = rk_S(N) · rk_A(M)` for torsion `M`.
pub fn torsion_tensor_rank_check(
    n: &ModulePresentation,
    m: &ModulePresentation,
    bounds: &Bounds,
) -> Result<(u64, u64)> {
    if !matches!(m, ModulePresentation::Torsion { .. }) {
        return Err(Error::PreconditionViolation(
            "second factor must be torsion".into(),
        ));
    }
    let rn = n.rank_s_within(bounds).exact().ok_or_else(|| {
        Error::PreconditionViolation("S-rank of the first factor is not certified".into())
    })?;
    let t = n.to_matrix().tensor(&m.to_matrix());
    let lhs = ideals::rank_s_certified(&t, bounds)
        .exact()
        .ok_or_else(|| {
            Error::PreconditionViolation("S-rank of the product is not certified".into())
        })?;
    Ok((lhs, rn * m.rank_a()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aq::parse;
    use crate::qlinalg::QMatrix;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn to_matrix_examples() {
        let l = ModulePresentation::line(s(3), 2).unwrap();
        assert_eq!(
            l.to_matrix().matrix().get(0, 0),
            &LaurentPoly::monomial(s(3), 2)
        );
        let o = ModulePresentation::good(parse("s - 1").unwrap()).unwrap();
        assert_eq!(o.to_matrix().matrix(), &LaurentMatrix::identity(1));
        let t = ModulePresentation::torsion(vec![JordanBlock {
            lambda: s(1),
            size: 2,
        }])
        .unwrap();
        assert_eq!(
            t.to_matrix().matrix().to_q().unwrap(),
            QMatrix::from_ints(&[&[1, 1], &[0, 1]])
        );
    }

    #[test]
    fn rank_examples() {
        let m = ModulePresentation::good(parse("z - (s + s^-1)").unwrap()).unwrap();
        assert_eq!((m.rank_a(), m.rank_s()), (2, RankS::Exact(1)));
        let l = ModulePresentation::line(Scalar::new(5, 3), -4).unwrap();
        assert_eq!(l.rank_s(), RankS::Exact(4));
        let g = ModulePresentation::good(parse("s^2 - (q+1)*s + q").unwrap()).unwrap();
        assert_eq!((g.rank_a(), g.rank_s()), (2, RankS::Exact(0)));
    }

    #[test]
    fn dual_and_tensor_fast_paths() {
        let l = ModulePresentation::line(s(3), 2).unwrap();
        assert_eq!(
            l.dual(),
            ModulePresentation::line(Scalar::new(1, 3), -2).unwrap()
        );
        let t = ModulePresentation::torsion(vec![JordanBlock {
            lambda: s(3),
            size: 1,
        }])
        .unwrap();
        assert_eq!(
            t.dual(),
            ModulePresentation::torsion(vec![JordanBlock {
                lambda: Scalar::new(1, 3),
                size: 1
            }])
            .unwrap()
        );
        let a = ModulePresentation::line(s(2), 1).unwrap();
        let b = ModulePresentation::line(s(3), -1).unwrap();
        assert_eq!(a.tensor(&b), ModulePresentation::line(s(6), 0).unwrap());
    }

    #[test]
    fn torsion_tensor_is_torsion() {
        let a = ModulePresentation::torsion(vec![JordanBlock {
            lambda: s(2),
            size: 2,
        }])
        .unwrap();
        let b = ModulePresentation::torsion(vec![JordanBlock {
            lambda: s(3),
            size: 2,
        }])
        .unwrap();
        // J_2(2) ⊗ J_2(3) has the single eigenvalue 6 with blocks of sizes 3 and 1
        assert_eq!(
            a.tensor(&b),
            ModulePresentation::torsion(vec![
                JordanBlock {
                    lambda: s(6),
                    size: 3
                },
                JordanBlock {
                    lambda: s(6),
                    size: 1
                }
            ])
            .unwrap()
        );
    }

    #[test]
    fn sigma_action_is_semilinear() {
        let t = ModulePresentation::fixture_tf_counterexample().to_matrix();
        let v = vec![parse_l("z^2 + 1"), parse_l("3*z^-1")];
        let f = parse_l("z - 2");
        let fv: AVector = v.iter().map(|x| x * &f).collect();
        let lhs = t.act(&fv);
        let rhs: AVector = t.act(&v).iter().map(|x| x * &f.qshift(1)).collect();
        assert_eq!(lhs, rhs);
        assert_eq!(t.act_inv(&t.act(&v)), v);
        let orbit = t.orbit(&v, -2, 2);
        assert_eq!(orbit[2], v);
        assert_eq!(t.act(&orbit[1]), v);
        assert_eq!(orbit[4], t.act(&t.act(&v)));
    }

    fn parse_l(s: &str) -> LaurentPoly {
        crate::aq::parse_laurent(s).unwrap()
    }
}
