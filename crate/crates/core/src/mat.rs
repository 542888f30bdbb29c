//! Dense row-major matrices over the rationals.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{int, QStr, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Matrix unit `E_ij` of size `n`, indices 1-based.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i - 1, j - 1)] = Rational::one();
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "Mat::from_vec",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Mat { rows, cols, data })
    }

    /// Builds from nested rows; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    op: "Mat::from_rows",
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    /// Column vector.
    pub fn column(v: Vec<Rational>) -> Self {
        let n = v.len();
        Mat {
            rows: n,
            cols: 1,
            data: v,
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

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn trace(&self) -> Result<Rational> {
        self.require_square("trace")?;
        Ok((0..self.rows).map(|i| &self[(i, i)]).sum())
    }

    /// Matrix product, checking inner dimensions.
    pub fn try_mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "Mat::mul",
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Mat> {
        self.require_square("pow")?;
        let mut acc = Mat::identity(self.rows);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Returns `Self*v` for a coordinate vector `v`.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "Mat::mul_vec",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<&Rational> {
        self.data.iter().find(|v| !v.is_zero())
    }

    fn require_square(&self, op: &'static str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by pivoted elimination.
    pub fn det(&self) -> Result<Rational> {
        self.require_square("det")?;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &pivot;
                for j in c..n {
                    let d = &f * &m[(c, j)];
                    m[(i, j)] -= d;
                }
            }
            det *= pivot;
        }
        Ok(det)
    }

    /// Exact inverse via Gauss-Jordan on `[m | I]`.
    pub fn inverse(&self) -> Result<Mat> {
        self.require_square("inverse")?;
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular { op: "inverse" });
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(out)
    }

    /// Basis of the right null space, one column vector per element.
    /// Empty exactly when the matrix is injective.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// `det(xI - m)`, monic, via Faddeev-LeVerrier.
    pub fn charpoly(&self) -> Result<Poly> {
        self.require_square("charpoly")?;
        let n = self.rows;
        // coefficients c[0..=n], c[n] = 1
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        let mut mk = Mat::zeros(n, n);
        for k in 1..=n {
            mk = &self.try_mul(&mk)? + &Mat::identity(n).scale(&c[n - k + 1]);
            let am = self.try_mul(&mk)?;
            c[n - k] = -am.trace()? / int(k as i64);
        }
        Ok(Poly::new(c))
    }

    /// Nontrivial invariant factors of `xI - m`; see [`crate::smith`].
    pub fn invariant_factors(&self) -> Result<Vec<Poly>> {
        crate::smith::invariant_factors(self)
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

fn same_shape(a: &Mat, b: &Mat, op: &'static str) {
    assert!(
        a.rows == b.rows && a.cols == b.cols,
        "{op}: shape mismatch {}x{} vs {}x{}",
        a.rows,
        a.cols,
        b.rows,
        b.cols
    );
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        same_shape(self, rhs, "add");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        same_shape(self, rhs, "sub");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

/// Panics on inner-dimension mismatch; use [`Mat::try_mul`] for a checked product.
impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs)
            .expect("matrix product dimension mismatch")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

// JSON form: array of rows of rational strings.
impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<QStr>> = (0..self.rows)
            .map(|i| self.row(i).iter().cloned().map(QStr).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<QStr>>::deserialize(d)?;
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|q| q.0).collect())
                .collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    /// Cofactor expansion along the first row; independent of the elimination path.
    fn cofactor_det(m: &Mat) -> Rational {
        let n = m.rows();
        if n == 0 {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let minor_rows: Vec<Vec<Rational>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[(i, c)].clone())
                        .collect()
                })
                .collect();
            let minor = if n == 1 {
                Mat::zeros(0, 0)
            } else {
                Mat::from_rows(minor_rows).unwrap()
            };
            let term = &m[(0, j)] * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn det_examples() {
        assert_eq!(Mat::identity(3).det().unwrap(), int(1));
        assert_eq!(Mat::from_ints(&[&[0, 1], &[1, 0]]).det().unwrap(), int(-1));
        let t1 = Mat::from_ints(&[&[1, 0, 1], &[1, 2, 0], &[0, 1, 0]]);
        assert_eq!(cofactor_det(&t1), int(1));
        assert_eq!(t1.det().unwrap(), int(1));
        assert!(matches!(
            Mat::zeros(2, 3).det(),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn det_matches_cofactor_oracle() {
        let m = Mat::from_rows(vec![
            vec![frac(1, 2), int(3), int(0), int(-1)],
            vec![int(2), frac(-1, 3), int(4), int(1)],
            vec![int(0), int(5), int(1), frac(2, 7)],
            vec![int(1), int(1), int(-2), int(3)],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::zeros(3, 3).rank(), 0);
        let m = &Mat::unit(3, 3, 1) + &Mat::unit(3, 3, 2).scale(&int(2));
        assert_eq!(m.rank(), 1);
        let m = &Mat::unit(3, 3, 2) + &Mat::unit(3, 1, 3);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn inverse_examples() {
        let r = Mat::from_ints(&[&[0, 1], &[-1, 0]]);
        assert_eq!(r.inverse().unwrap(), Mat::from_ints(&[&[0, -1], &[1, 0]]));
        let t2 = Mat::from_ints(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert_eq!(&t2 * &t2, Mat::identity(3));
        assert_eq!(t2.inverse().unwrap(), t2);
        assert_eq!(
            Mat::from_ints(&[&[1, 1], &[1, 1]]).inverse(),
            Err(Error::Singular { op: "inverse" })
        );
    }

    #[test]
    fn kernel_examples() {
        assert!(Mat::identity(4).kernel_basis().is_empty());
        let k = Mat::zeros(4, 4).kernel_basis();
        assert_eq!(k.len(), 4);
        let span = Mat::from_rows(k).unwrap();
        assert_eq!(span.rank(), 4);

        // T -> eT - Te on 2x2 matrices, T flattened row-major.
        let e = Mat::from_ints(&[&[0, 1], &[0, 0]]);
        let mut op = Mat::zeros(4, 4);
        for c in 0..4 {
            let mut t = Mat::zeros(2, 2);
            t[(c / 2, c % 2)] = int(1);
            let img = &(&e * &t) - &(&t * &e);
            for (r, v) in img.entries().iter().enumerate() {
                op[(r, c)] = v.clone();
            }
        }
        let k = op.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(op.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        // Hand solution: eT = Te forces T = [[a, b], [0, a]], i.e. span{I, e}.
        let flat_i = vec![int(1), int(0), int(0), int(1)];
        let flat_e = vec![int(0), int(1), int(0), int(0)];
        let mut both = k.clone();
        both.push(flat_i);
        both.push(flat_e);
        assert_eq!(Mat::from_rows(both).unwrap().rank(), 2);
    }

    #[test]
    fn charpoly_examples() {
        let eh = Mat::from_ints(&[&[1, 1], &[0, -1]]);
        assert_eq!(eh.charpoly().unwrap(), Poly::from_ints(&[-1, 0, 1]));
        let ef = Mat::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(ef.charpoly().unwrap(), Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(
            Mat::zeros(2, 2).charpoly().unwrap(),
            Poly::from_ints(&[0, 0, 1])
        );
    }

    #[test]
    fn charpoly_matches_det_oracle_pointwise() {
        // det(cI - m) by cofactors at several points must equal charpoly(c).
        let m = Mat::from_rows(vec![
            vec![int(2), frac(1, 3), int(-1)],
            vec![int(0), int(1), int(4)],
            vec![frac(-5, 2), int(1), int(3)],
        ])
        .unwrap();
        let p = m.charpoly().unwrap();
        for c in -3..=3 {
            let shifted = &Mat::identity(3).scale(&int(c)) - &m;
            assert_eq!(p.eval(&int(c)), cofactor_det(&shifted));
        }
    }

    #[test]
    fn serializes_as_string_rows() {
        let m = Mat::from_rows(vec![vec![frac(1, 2), int(-3)]]).unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"[["1/2","-3"]]"#);
        let back: Mat = serde_json::from_str(r#"[["1/2","-3"]]"#).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<Mat>(r#"[["1"],["1","2"]]"#).is_err());
    }
}
