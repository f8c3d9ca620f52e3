//! Matrices over the Laurent ring `A`.

use std::fmt;

use crate::laurent::LaurentPoly;
use crate::qlinalg::QMatrix;
use crate::scalars::Scalar;

/// Row-major matrix of Laurent polynomials. Square in public use; column
/// vectors and other rectangular shapes appear internally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            data: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LaurentMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        LaurentMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn column(entries: Vec<LaurentPoly>) -> Self {
        LaurentMatrix {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    /// A constant matrix.
    pub fn from_q(m: &QMatrix) -> Self {
        LaurentMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m
                .data()
                .iter()
                .cloned()
                .map(LaurentPoly::constant)
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPoly>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn column_vec(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entrywise `f(q^k z)`.
    pub fn qshift(&self, k: i64) -> Self {
        self.map(|p| p.qshift(k))
    }

    pub fn transpose(&self) -> Self {
        let mut t = LaurentMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &LaurentMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = LaurentMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &LaurentMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &LaurentMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, f: &LaurentPoly) -> Self {
        self.map(|p| p * f)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = LaurentPoly::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// `A ⊗ B` with `(A⊗B)[(i,k),(j,l)] = A[i,j]·B[k,l]`.
    pub fn kronecker(&self, other: &LaurentMatrix) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = LaurentMatrix::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_constant)
    }

    /// The constant matrix, if every entry is constant.
    pub fn to_q(&self) -> Option<QMatrix> {
        self.is_constant().then(|| {
            QMatrix::new(
                self.rows,
                self.cols,
                self.data.iter().map(|p| p.coeff(0)).collect(),
            )
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination; every division
    /// is exact in `A`.
    pub fn det(&self) -> LaurentPoly {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut m = self.to_rows();
        let mut sign = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return LaurentPoly::zero();
            };
            if p != k {
                m.swap(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = LaurentPoly::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Rank over the fraction field of `A`.
    /// The rank over `K(z)`. Evaluation at a point followed by reduction
    /// modulo a prime can only lose rank, so full rank there settles it.
    pub fn rank(&self) -> usize {
        let full = self.rows.min(self.cols);
        let z0 = Scalar::new(3, 7);
        let at = QMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|f| f.eval(&z0)).collect(),
        );
        if at.rank_mod_prime() == Some(full) {
            return full;
        }
        self.rank_exact()
    }

    pub fn is_singular(&self) -> bool {
        assert!(self.is_square());
        self.rank() < self.rows
    }

    fn rank_exact(&self) -> usize {
        let mut m = self.to_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = LaurentPoly::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(p, r);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[i][c] = LaurentPoly::zero();
            }
            prev = m[r][c].clone();
            r += 1;
        }
        r
    }

    /// The submatrix keeping the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = LaurentMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn adjugate(&self) -> Self {
        let n = self.rows;
        let mut adj = LaurentMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let rs: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cs: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.select(&rs, &cs).det();
                adj.set(i, j, if (i + j) % 2 == 0 { minor } else { -minor });
            }
        }
        adj
    }

    /// Inverse over `A`, present exactly when the determinant is a unit.
    pub fn inverse(&self) -> Option<Self> {
        self.det_and_inverse().1
    }

    pub fn det_and_inverse(&self) -> (LaurentPoly, Option<Self>) {
        let d = self.det();
        let inv = d.unit_inverse().map(|di| self.adjugate().scale(&di));
        (d, inv)
    }

    /// Parses a matrix from rows of expression strings in `z`.
    pub fn from_strings(rows: &[Vec<String>]) -> crate::Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| crate::aq::parse_laurent(s)).collect())
            .collect::<crate::Result<Vec<Vec<_>>>>()?;
        let c = parsed.first().map_or(0, Vec::len);
        if parsed.is_empty() || parsed.iter().any(|r| r.len() != c) {
            return Err(crate::Error::Descriptor(
                "matrix rows must be nonempty and of equal length".into(),
            ));
        }
        Ok(LaurentMatrix::from_rows(parsed))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }

    /// `c·I`.
    pub fn scalar(n: usize, c: &Scalar) -> Self {
        let mut m = LaurentMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::constant(c.clone()));
        }
        m
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.to_strings();
        write!(f, "[")?;
        for (i, r) in rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
