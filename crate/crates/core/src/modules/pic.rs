use serde::{Deserialize, Serialize};

use crate::scalars::{self, Scalar};

/// An isomorphism class of line bundles: the coset of `c` in `K*/q^ℤ`,
/// stored through a canonical representative, and the degree `m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PicClass {
    pub c_rep: Scalar,
    pub m: i64,
}

/// The unique `c·q^k` whose absolute value lies in `[1, Q)`, where
/// `Q = max(|q|, 1/|q|)`.
fn canonical_rep(c: &Scalar) -> Scalar {
    let q = scalars::q();
    let base = if q.value().abs() > Scalar::one() {
        q.value().clone()
    } else {
        q.value().recip().expect("q is nonzero")
    };
    let abs_base = base.abs();
    let mut rep = c.clone();
    while rep.abs() >= abs_base {
        rep = &rep / &base;
    }
    while rep.abs() < Scalar::one() {
        rep = &rep * &base;
    }
    rep
}

/// Class of the line bundle `σ(1) = c z^m`; panics on `c = 0`.
pub fn pic_class(c: &Scalar, m: i64) -> PicClass {
    assert!(!c.is_zero(), "line bundles need c ≠ 0");
    PicClass {
        c_rep: canonical_rep(c),
        m,
    }
}

pub fn pic_mul(a: &PicClass, b: &PicClass) -> PicClass {
    pic_class(&(&a.c_rep * &b.c_rep), a.m + b.m)
}

pub fn pic_inv(a: &PicClass) -> PicClass {
    pic_class(&a.c_rep.recip().expect("nonzero"), -a.m)
}

/// Whether two line bundles `(c, m)` are isomorphic.
pub fn pic_eq(a: (&Scalar, i64), b: (&Scalar, i64)) -> bool {
    pic_class(a.0, a.1) == pic_class(b.0, b.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{q_power_class, with_q, QParam};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn examples() {
        assert!(pic_eq((&s(2), 3), (&s(1), 3)));
        assert!(!pic_eq((&s(3), 0), (&s(1), 0)));
        let c = Scalar::new(7, 5);
        let prod = pic_mul(&pic_class(&c, 4), &pic_class(&c.recip().unwrap(), -4));
        assert_eq!(prod, pic_class(&s(1), 0));
    }

    #[test]
    fn representative_is_in_coset_and_range() {
        for q in ["2", "-3", "1/5", "-2/7"] {
            let qp: QParam = q.parse().unwrap();
            with_q(&qp, || {
                for c in [
                    s(1),
                    s(-1),
                    Scalar::new(81, 7),
                    Scalar::new(-2, 1000),
                    s(12),
                ] {
                    let rep = pic_class(&c, 0).c_rep;
                    assert!(q_power_class(&(&c / &rep)).unwrap().is_some());
                    let big = qp.value().abs().max(qp.value().abs().recip().unwrap());
                    assert!(rep.abs() >= Scalar::one() && rep.abs() < big);
                    assert_eq!(pic_class(&(&c * &qp.pow(5)), 0).c_rep, rep);
                }
            });
        }
    }
}
