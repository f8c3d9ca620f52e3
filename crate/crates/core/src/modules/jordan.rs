use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{rational_roots, root_multiplicity, QMatrix};
use crate::scalars::Scalar;

/// One Jordan block `J_size(lambda)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct JordanBlock {
    pub lambda: Scalar,
    pub size: usize,
}

/// Eigenvalue ascending, then size descending.
pub(crate) fn canonical_order(blocks: &mut [JordanBlock]) {
    blocks.sort_by(|a, b| a.lambda.cmp(&b.lambda).then(b.size.cmp(&a.size)));
}

/// Jordan data of a constant matrix whose spectrum lies in `Q`.
///
/// Block counts come from the ranks of `(T − λ)^k`: the number of blocks of
/// size at least `k` is `rank (T−λ)^{k−1} − rank (T−λ)^k`.
pub fn jordan_structure(t: &QMatrix) -> Result<Vec<JordanBlock>> {
    let n = t.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let cp = t.charpoly();
    let roots = rational_roots(&cp);
    let mults: Vec<usize> = roots.iter().map(|r| root_multiplicity(&cp, r)).collect();
    if mults.iter().sum::<usize>() != n {
        return Err(Error::NonSplitSpectrum);
    }
    let mut blocks = Vec::new();
    for (lambda, &a) in roots.iter().zip(&mults) {
        let nil = t.shift_diag(lambda);
        let mut ranks = vec![n];
        let mut pow = QMatrix::identity(n);
        for _ in 0..=a {
            pow = pow.mul(&nil);
            ranks.push(pow.rank());
        }
        for k in 1..=a {
            let at_least_k = ranks[k - 1] - ranks[k];
            let at_least_next = ranks[k] - ranks[k + 1];
            for _ in 0..at_least_k - at_least_next {
                blocks.push(JordanBlock {
                    lambda: lambda.clone(),
                    size: k,
                });
            }
        }
    }
    canonical_order(&mut blocks);
    Ok(blocks)
}

/// Block-diagonal matrix of upper Jordan blocks, in the given order.
pub fn jordan_matrix(blocks: &[JordanBlock]) -> QMatrix {
    let n: usize = blocks.iter().map(|b| b.size).sum();
    let mut m = QMatrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        for i in 0..b.size {
            m.set(at + i, at + i, b.lambda.clone());
            if i + 1 < b.size {
                m.set(at + i, at + i + 1, Scalar::one());
            }
        }
        at += b.size;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn examples() {
        assert_eq!(
            jordan_structure(&QMatrix::from_ints(&[&[1, 1], &[0, 1]])).unwrap(),
            vec![JordanBlock {
                lambda: s(1),
                size: 2
            }]
        );
        assert_eq!(
            jordan_structure(&QMatrix::from_ints(&[&[2, 0], &[0, 3]])).unwrap(),
            vec![
                JordanBlock {
                    lambda: s(2),
                    size: 1
                },
                JordanBlock {
                    lambda: s(3),
                    size: 1
                }
            ]
        );
        // companion matrix of x² + 1
        assert_eq!(
            jordan_structure(&QMatrix::from_ints(&[&[0, -1], &[1, 0]])),
            Err(Error::NonSplitSpectrum)
        );
    }

    #[test]
    fn round_trip_under_similarity() {
        let blocks = vec![
            JordanBlock {
                lambda: Scalar::new(-1, 2),
                size: 1,
            },
            JordanBlock {
                lambda: s(3),
                size: 3,
            },
            JordanBlock {
                lambda: s(3),
                size: 1,
            },
        ];
        let j = jordan_matrix(&blocks);
        // conjugate by a unimodular integer matrix
        let p = QMatrix::from_ints(&[
            &[1, 2, 0, 0, 1],
            &[0, 1, 3, 0, 0],
            &[0, 0, 1, -1, 0],
            &[0, 0, 0, 1, 4],
            &[0, 0, 0, 0, 1],
        ]);
        let pinv = crate::lmatrix::LaurentMatrix::from_q(&p)
            .inverse()
            .unwrap()
            .to_q()
            .unwrap();
        let conj = p.mul(&j).mul(&pinv);
        assert_eq!(jordan_structure(&conj).unwrap(), blocks);
    }
}
