//! The Lie algebra sl_n of trace-zero n x n matrices.
//!
//! Elements are stored as coordinates in a fixed basis: every off-diagonal
//! matrix unit `E_ij` in lexicographic `(i, j)` order, followed by the
//! Cartan elements `h_k = E_kk - E_{k+1,k+1}` for `k = 1..n-1`. For `n = 2`
//! this is exactly `(e, f, h)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::rational::{QStr, Rational};

/// A canonical basis element, indices 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    OffDiag(usize, usize),
    Cartan(usize),
}

impl BasisIndex {
    pub fn matrix(self, n: usize) -> Mat {
        match self {
            BasisIndex::OffDiag(i, j) => Mat::unit(n, i, j),
            BasisIndex::Cartan(k) => &Mat::unit(n, k, k) - &Mat::unit(n, k + 1, k + 1),
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::OffDiag(i, j) => write!(f, "E{i}{j}"),
            BasisIndex::Cartan(k) => write!(f, "h{k}"),
        }
    }
}

/// Dimension of sl_n.
pub fn dim(n: usize) -> usize {
    n * n - 1
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::Domain(format!("sl_n requires n >= 2, got {n}")))
    } else {
        Ok(())
    }
}

/// Ordered canonical basis of sl_n.
pub fn basis(n: usize) -> Result<Vec<BasisIndex>> {
    check_n(n)?;
    let mut out = Vec::with_capacity(dim(n));
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push(BasisIndex::OffDiag(i, j));
            }
        }
    }
    out.extend((1..n).map(BasisIndex::Cartan));
    Ok(out)
}

/// Position of a basis element in [`basis`] order.
pub fn position(n: usize, b: BasisIndex) -> usize {
    match b {
        BasisIndex::OffDiag(i, j) => {
            debug_assert!(i != j && i <= n && j <= n);
            (i - 1) * (n - 1) + (j - 1) - usize::from(j > i)
        }
        BasisIndex::Cartan(k) => n * (n - 1) + k - 1,
    }
}

/// Element of sl_n in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlElement {
    n: usize,
    coords: Vec<Rational>,
}

impl SlElement {
    pub fn new(n: usize, coords: Vec<Rational>) -> Result<Self> {
        check_n(n)?;
        if coords.len() != dim(n) {
            return Err(Error::DimensionMismatch {
                op: "SlElement::new",
                expected: dim(n),
                found: coords.len(),
            });
        }
        Ok(SlElement { n, coords })
    }

    pub fn zero(n: usize) -> Self {
        SlElement {
            n,
            coords: vec![Rational::zero(); dim(n)],
        }
    }

    /// The `k`-th canonical basis vector.
    pub fn basis_element(n: usize, k: usize) -> Self {
        let mut x = Self::zero(n);
        x.coords[k] = Rational::from_integer(1.into());
        x
    }

    pub fn from_basis(n: usize, b: BasisIndex) -> Self {
        Self::basis_element(n, position(n, b))
    }

    /// Integer linear combination of basis elements.
    pub fn from_int_coords(n: usize, coords: &[i64]) -> Result<Self> {
        Self::new(n, coords.iter().map(|&c| crate::rational::int(c)).collect())
    }

    /// Coordinates of a trace-zero `n x n` matrix.
    pub fn from_matrix(m: &Mat) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                op: "SlElement::from_matrix",
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        check_n(n)?;
        let tr = m.trace()?;
        if !tr.is_zero() {
            return Err(Error::NonzeroTrace {
                trace: tr.to_string(),
            });
        }
        let mut coords = Vec::with_capacity(dim(n));
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    coords.push(m[(i, j)].clone());
                }
            }
        }
        // diag = sum_k c_k (e_k - e_{k+1})  =>  c_k = d_1 + ... + d_k
        let mut acc = Rational::zero();
        for k in 0..n - 1 {
            acc += &m[(k, k)];
            coords.push(acc.clone());
        }
        Ok(SlElement { n, coords })
    }

    pub fn to_matrix(&self) -> Mat {
        let n = self.n;
        let mut m = Mat::zeros(n, n);
        let mut it = self.coords.iter();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m[(i, j)] = it.next().expect("coordinate count").clone();
                }
            }
        }
        for (k, c) in it.enumerate() {
            m[(k, k)] += c;
            m[(k + 1, k + 1)] -= c;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> SlElement {
        SlElement {
            n: self.n,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    fn same_n(&self, other: &SlElement, op: &'static str) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                op,
                expected: self.n,
                found: other.n,
            })
        }
    }

    /// Lie bracket `[x, y] = xy - yx`.
    pub fn bracket(&self, other: &SlElement) -> Result<SlElement> {
        self.same_n(other, "bracket")?;
        let (x, y) = (self.to_matrix(), other.to_matrix());
        SlElement::from_matrix(&(&(&x * &y) - &(&y * &x)))
    }

    /// `Tr(xy)`.
    pub fn trace_form(&self, other: &SlElement) -> Result<Rational> {
        self.same_n(other, "trace_form")?;
        (&self.to_matrix() * &other.to_matrix()).trace()
    }

    /// Checked addition.
    pub fn try_add(&self, other: &SlElement) -> Result<SlElement> {
        self.same_n(other, "add")?;
        Ok(SlElement {
            n: self.n,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

impl Add for &SlElement {
    type Output = SlElement;
    fn add(self, rhs: &SlElement) -> SlElement {
        self.try_add(rhs).expect("sl_n size mismatch")
    }
}

impl Neg for &SlElement {
    type Output = SlElement;
    fn neg(self) -> SlElement {
        SlElement {
            n: self.n,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl Sub for &SlElement {
    type Output = SlElement;
    fn sub(self, rhs: &SlElement) -> SlElement {
        self + &(-rhs)
    }
}

impl fmt::Display for SlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = basis(self.n).map_err(|_| fmt::Error)?;
        let mut first = true;
        for (c, b) in self.coords.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c == &Rational::from_integer(1.into()) {
                write!(f, "{b}")?;
            } else {
                write!(f, "({c})*{b}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SlElementJson {
    Coords { n: usize, coords: Vec<QStr> },
    Matrix { n: usize, matrix: Mat },
}

// Written as {"n", "coords"}; the {"n", "matrix"} form is accepted on input.
impl Serialize for SlElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SlElementJson::Coords {
            n: self.n,
            coords: self.coords.iter().cloned().map(QStr).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SlElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match SlElementJson::deserialize(d)? {
            SlElementJson::Coords { n, coords } => {
                SlElement::new(n, coords.into_iter().map(|q| q.0).collect())
                    .map_err(D::Error::custom)
            }
            SlElementJson::Matrix { n, matrix } => {
                if matrix.rows() != n {
                    return Err(D::Error::custom(format!(
                        "matrix has {} rows but n = {n}",
                        matrix.rows()
                    )));
                }
                SlElement::from_matrix(&matrix).map_err(D::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn e() -> SlElement {
        SlElement::basis_element(2, 0)
    }
    fn f() -> SlElement {
        SlElement::basis_element(2, 1)
    }
    fn h() -> SlElement {
        SlElement::basis_element(2, 2)
    }

    #[test]
    fn basis_order() {
        assert_eq!(
            basis(2).unwrap(),
            vec![
                BasisIndex::OffDiag(1, 2),
                BasisIndex::OffDiag(2, 1),
                BasisIndex::Cartan(1)
            ]
        );
        assert_eq!(basis(3).unwrap().len(), 8);
        assert!(matches!(basis(1), Err(Error::Domain(_))));
        for n in 2..6 {
            for (k, b) in basis(n).unwrap().into_iter().enumerate() {
                assert_eq!(position(n, b), k);
            }
        }
    }

    #[test]
    fn coordinates() {
        let hm = Mat::from_ints(&[&[1, 0], &[0, -1]]);
        assert_eq!(SlElement::from_matrix(&hm).unwrap(), h());
        assert!(matches!(
            SlElement::from_matrix(&Mat::identity(2)),
            Err(Error::NonzeroTrace { .. })
        ));
        let m = Mat::from_ints(&[&[3, 1, -2], &[4, -5, 7], &[0, 9, 2]]);
        assert_eq!(SlElement::from_matrix(&m).unwrap().to_matrix(), m);
    }

    #[test]
    fn sl2_table() {
        assert_eq!(e().bracket(&f()).unwrap(), h());
        assert_eq!(h().bracket(&e()).unwrap(), e().scale(&int(2)));
        assert_eq!(f().bracket(&h()).unwrap(), f().scale(&int(2)));
    }

    #[test]
    fn sl3_matrix_units() {
        let e12 = SlElement::from_basis(3, BasisIndex::OffDiag(1, 2));
        let e23 = SlElement::from_basis(3, BasisIndex::OffDiag(2, 3));
        let e13 = SlElement::from_basis(3, BasisIndex::OffDiag(1, 3));
        assert_eq!(e12.bracket(&e23).unwrap(), e13);
        assert!(e12.bracket(&e12).unwrap().is_zero());
        assert!(e12.bracket(&e()).is_err());
    }

    #[test]
    fn trace_form_values() {
        assert_eq!(e().trace_form(&e()).unwrap(), int(0));
        assert_eq!(e().trace_form(&f()).unwrap(), int(1));
        assert_eq!(h().trace_form(&h()).unwrap(), int(2));
    }

    #[test]
    fn json_forms() {
        let x = SlElement::from_int_coords(2, &[1, -2, 3]).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"n":2,"coords":["1","-2","3"]}"#);
        let back: SlElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let m: SlElement =
            serde_json::from_str(r#"{"n":2,"matrix":[["3","1"],["-2","-3"]]}"#).unwrap();
        assert_eq!(m, x);
        assert!(
            serde_json::from_str::<SlElement>(r#"{"n":2,"matrix":[["1","0"],["0","1"]]}"#).is_err()
        );
        assert!(serde_json::from_str::<SlElement>(r#"{"n":2,"coords":["1"]}"#).is_err());
    }
}
