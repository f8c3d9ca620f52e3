//! Evaluation and coevaluation, and the triangle identities making a module
//! rigid.
//!
//! Morphisms are matrices over `A` in the standard bases; `Φ: M → N` is
//! σ-equivariant exactly when `T_N(z)·Φ(qz) = Φ(z)·T_M(z)`.

use crate::laurent::LaurentPoly;
use crate::lmatrix::LaurentMatrix;

use super::SigmaMatrix;

pub fn is_morphism(phi: &LaurentMatrix, source: &SigmaMatrix, target: &SigmaMatrix) -> bool {
    target.matrix().mul(&phi.qshift(1)) == phi.mul(source.matrix())
}

/// `⟨φ, m⟩ = φᵀm`, the pairing `M^∨ ⊗ M → O` on coordinates.
pub fn pairing(phi: &[LaurentPoly], m: &[LaurentPoly]) -> LaurentPoly {
    phi.iter()
        .zip(m)
        .fold(LaurentPoly::zero(), |acc, (a, b)| &acc + &(a * b))
}

/// `ev: M^∨ ⊗ M → O` as a `1 × n²` matrix, `e^i ⊗ e_j ↦ δ_ij`.
pub fn evaluation(n: usize) -> LaurentMatrix {
    let mut e = LaurentMatrix::zeros(1, n * n);
    for i in 0..n {
        e.set(0, i * n + i, LaurentPoly::one());
    }
    e
}

/// `coev: O → M ⊗ M^∨` as an `n² × 1` matrix, `1 ↦ Σ e_i ⊗ e^i`.
pub fn coevaluation(n: usize) -> LaurentMatrix {
    evaluation(n).transpose()
}

/// The rigidity data of one module, each entry an exact check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RigidityCheck {
    pub ev_equivariant: bool,
    pub coev_equivariant: bool,
    /// `(id_M ⊗ ev) ∘ (coev ⊗ id_M) = id_M`
    pub triangle_module: bool,
    /// `(ev ⊗ id_{M^∨}) ∘ (id_{M^∨} ⊗ coev) = id_{M^∨}`
    pub triangle_dual: bool,
}

impl RigidityCheck {
    pub fn all(&self) -> bool {
        self.ev_equivariant && self.coev_equivariant && self.triangle_module && self.triangle_dual
    }
}

pub fn rigidity_check(t: &SigmaMatrix) -> RigidityCheck {
    let n = t.n();
    let dual = t.dual();
    let unit = SigmaMatrix::new(LaurentMatrix::identity(1)).expect("identity");
    let id = LaurentMatrix::identity(n);
    let ev = evaluation(n);
    let coev = coevaluation(n);
    let module_side = id.kronecker(&ev).mul(&coev.kronecker(&id));
    let dual_side = ev.kronecker(&id).mul(&id.kronecker(&coev));
    RigidityCheck {
        ev_equivariant: is_morphism(&ev, &dual.tensor(t), &unit),
        coev_equivariant: is_morphism(&coev, &unit, &t.tensor(&dual)),
        triangle_module: module_side == id && is_morphism(&module_side, t, t),
        triangle_dual: dual_side == id && is_morphism(&dual_side, &dual, &dual),
    }
}

/// `⟨σφ, σm⟩ = σ⟨φ, m⟩` for one pair of coordinate vectors.
pub fn ev_equivariant_on(t: &SigmaMatrix, phi: &[LaurentPoly], m: &[LaurentPoly]) -> bool {
    pairing(&t.dual().act(phi), &t.act(m)) == pairing(phi, m).qshift(1)
}
