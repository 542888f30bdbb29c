//! Signed automorphisms of sl_n and linear endomorphisms in coordinates.
//!
//! A [`SignedAuto`] acts as `X -> sign * A^-1 * t(X) * A` with `t` either the
//! identity or transposition. `(+1, id)` and `(-1, transpose)` are
//! automorphisms, `(-1, id)` and `(+1, transpose)` anti-automorphisms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::rational::Rational;
use crate::simwit::{intertwiner_kernel, invertible_in_span, SearchBudget};
use crate::sl::{self, SlElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn apply(self, m: &Mat) -> Mat {
        match self {
            Sign::Plus => m.clone(),
            Sign::Minus => -m,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Twist {
    Identity,
    Transpose,
}

impl Twist {
    pub fn then(self, other: Twist) -> Twist {
        if self == other {
            Twist::Identity
        } else {
            Twist::Transpose
        }
    }

    fn apply(self, m: &Mat) -> Mat {
        match self {
            Twist::Identity => m.clone(),
            Twist::Transpose => m.transpose(),
        }
    }
}

/// Morphism type of a bijective linear map with respect to the bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorphismKind {
    Automorphism,
    AntiAutomorphism,
    Neither,
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismKind::Automorphism => "automorphism",
            MorphismKind::AntiAutomorphism => "anti-automorphism",
            MorphismKind::Neither => "neither",
        })
    }
}

/// `X -> sign * A^-1 * twist(X) * A`, with `A` scaled so its first nonzero
/// entry (row-major) is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedAuto {
    n: usize,
    sign: Sign,
    twist: Twist,
    a: Mat,
    a_inv: Mat,
}

impl SignedAuto {
    pub fn new(sign: Sign, twist: Twist, a: Mat) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                op: "SignedAuto::new",
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        if n < 2 {
            return Err(Error::Domain(format!("sl_n requires n >= 2, got {n}")));
        }
        let lead = a.first_nonzero().cloned().ok_or(Error::Singular {
            op: "SignedAuto::new",
        })?;
        let a = a.scale(&lead.recip());
        let a_inv = a.inverse().map_err(|_| Error::Singular {
            op: "SignedAuto::new",
        })?;
        Ok(SignedAuto {
            n,
            sign,
            twist,
            a,
            a_inv,
        })
    }

    /// `X -> A^-1 X A`
    pub fn inner(a: Mat) -> Result<Self> {
        Self::new(Sign::Plus, Twist::Identity, a)
    }

    /// `X -> -A^-1 X^T A`
    pub fn outer(a: Mat) -> Result<Self> {
        Self::new(Sign::Minus, Twist::Transpose, a)
    }

    /// `X -> A^-1 X^T A`
    pub fn anti(a: Mat) -> Result<Self> {
        Self::new(Sign::Plus, Twist::Transpose, a)
    }

    /// `X -> -A^-1 X A`
    pub fn neg_inner(a: Mat) -> Result<Self> {
        Self::new(Sign::Minus, Twist::Identity, a)
    }

    pub fn identity(n: usize) -> Self {
        Self::inner(Mat::identity(n)).expect("identity is invertible")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn twist(&self) -> Twist {
        self.twist
    }

    pub fn a(&self) -> &Mat {
        &self.a
    }

    pub fn kind(&self) -> MorphismKind {
        match (self.sign, self.twist) {
            (Sign::Plus, Twist::Identity) | (Sign::Minus, Twist::Transpose) => {
                MorphismKind::Automorphism
            }
            _ => MorphismKind::AntiAutomorphism,
        }
    }

    pub fn is_automorphism(&self) -> bool {
        self.kind() == MorphismKind::Automorphism
    }

    /// Same conjugator, opposite sign.
    pub fn negate(&self) -> SignedAuto {
        SignedAuto {
            sign: self.sign.flip(),
            ..self.clone()
        }
    }

    /// Acts on a matrix of the right size.
    pub fn apply_matrix(&self, x: &Mat) -> Mat {
        let tx = self.twist.apply(x);
        self.sign.apply(&(&(&self.a_inv * &tx) * &self.a))
    }

    pub fn apply(&self, x: &SlElement) -> Result<SlElement> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch {
                op: "SignedAuto::apply",
                expected: self.n,
                found: x.n(),
            });
        }
        SlElement::from_matrix(&self.apply_matrix(&x.to_matrix()))
    }

    /// `self o other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &SignedAuto) -> Result<SignedAuto> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                op: "SignedAuto::compose",
                expected: self.n,
                found: other.n,
            });
        }
        // With B the inner conjugator: a plain outer twist conjugates by BA;
        // an outer transpose turns B^-1 Y B into B^T Y^T B^-T, conjugating by B^-T A.
        let c = match self.twist {
            Twist::Identity => &other.a * &self.a,
            Twist::Transpose => &other.a_inv.transpose() * &self.a,
        };
        SignedAuto::new(self.sign.times(other.sign), other.twist.then(self.twist), c)
    }

    pub fn inverse(&self) -> SignedAuto {
        let c = match self.twist {
            Twist::Identity => self.a_inv.clone(),
            Twist::Transpose => self.a.transpose(),
        };
        SignedAuto::new(self.sign, self.twist, c).expect("inverse of an invertible conjugator")
    }

    /// Matrix of the action in the canonical basis of sl_n.
    pub fn induced_matrix(&self) -> LinMap {
        let images = (0..sl::dim(self.n))
            .map(|k| {
                self.apply(&SlElement::basis_element(self.n, k))
                    .expect("signed automorphisms preserve trace zero")
            })
            .collect::<Vec<_>>();
        LinMap::from_images(self.n, &images).expect("consistent sizes")
    }
}

impl fmt::Display for SignedAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.sign == Sign::Minus { "-" } else { "" };
        let x = if self.twist == Twist::Transpose {
            "X^T"
        } else {
            "X"
        };
        write!(f, "X -> {sign}A^-1 {x} A, A = {}", self.a)
    }
}

#[derive(Serialize, Deserialize)]
struct SignedAutoJson {
    n: usize,
    sign: i8,
    twist: String,
    #[serde(rename = "A")]
    a: Mat,
}

impl Serialize for SignedAuto {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SignedAutoJson {
            n: self.n,
            sign: self.sign.as_i8(),
            twist: match self.twist {
                Twist::Identity => "id".into(),
                Twist::Transpose => "transpose".into(),
            },
            a: self.a.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedAuto {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = SignedAutoJson::deserialize(d)?;
        let sign = match j.sign {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            s => return Err(D::Error::custom(format!("sign must be 1 or -1, got {s}"))),
        };
        let twist = match j.twist.as_str() {
            "id" => Twist::Identity,
            "transpose" => Twist::Transpose,
            t => return Err(D::Error::custom(format!("unknown twist {t:?}"))),
        };
        if j.a.rows() != j.n {
            return Err(D::Error::custom(format!("A must be {0}x{0}", j.n)));
        }
        SignedAuto::new(sign, twist, j.a).map_err(D::Error::custom)
    }
}

/// Linear endomorphism of sl_n as a `d x d` matrix on canonical coordinates,
/// `d = n^2 - 1`; column `j` holds the image of basis element `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    n: usize,
    m: Mat,
}

impl LinMap {
    pub fn new(n: usize, m: Mat) -> Result<Self> {
        sl::basis(n)?;
        let d = sl::dim(n);
        if m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch {
                op: "LinMap::new",
                expected: d,
                found: if m.rows() != d { m.rows() } else { m.cols() },
            });
        }
        Ok(LinMap { n, m })
    }

    pub fn identity(n: usize) -> Self {
        LinMap {
            n,
            m: Mat::identity(sl::dim(n)),
        }
    }

    /// Map sending basis element `k` to `images[k]`.
    pub fn from_images(n: usize, images: &[SlElement]) -> Result<Self> {
        let d = sl::dim(n);
        if images.len() != d {
            return Err(Error::DimensionMismatch {
                op: "LinMap::from_images",
                expected: d,
                found: images.len(),
            });
        }
        let mut m = Mat::zeros(d, d);
        for (j, img) in images.iter().enumerate() {
            if img.n() != n {
                return Err(Error::DimensionMismatch {
                    op: "LinMap::from_images",
                    expected: n,
                    found: img.n(),
                });
            }
            for (i, c) in img.coords().iter().enumerate() {
                m[(i, j)] = c.clone();
            }
        }
        Ok(LinMap { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn apply(&self, x: &SlElement) -> Result<SlElement> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch {
                op: "LinMap::apply",
                expected: self.n,
                found: x.n(),
            });
        }
        SlElement::new(self.n, self.m.mul_vec(x.coords())?)
    }

    /// `self o other`.
    pub fn compose(&self, other: &LinMap) -> Result<LinMap> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                op: "LinMap::compose",
                expected: self.n,
                found: other.n,
            });
        }
        Ok(LinMap {
            n: self.n,
            m: &self.m * &other.m,
        })
    }

    pub fn inverse(&self) -> Result<LinMap> {
        Ok(LinMap {
            n: self.n,
            m: self.m.inverse()?,
        })
    }

    pub fn scale(&self, c: &Rational) -> LinMap {
        LinMap {
            n: self.n,
            m: self.m.scale(c),
        }
    }

    pub fn image_of_basis(&self, k: usize) -> SlElement {
        SlElement::new(self.n, self.m.col(k)).expect("column length is dim")
    }

    /// Bracket-morphism type; checked on all basis pairs, which is complete by bilinearity.
    ///
    /// Works on `N = D * L` with `D` the common denominator of `L`, so the
    /// pair loop is integer arithmetic: `L` is an automorphism iff
    /// `D * N([b_i, b_j]) = [N b_i, N b_j]`, and an anti-automorphism iff
    /// the right side is negated.
    pub fn check_bracket_morphism(&self) -> MorphismKind {
        if !self.is_invertible() {
            return MorphismKind::Neither;
        }
        let n = self.n;
        let d = sl::dim(n);
        let denom = self
            .m
            .entries()
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let images: Vec<IntMat> = (0..d)
            .map(|k| IntMat::scaled(&self.image_of_basis(k).to_matrix(), &denom))
            .collect();
        let basis: Vec<Mat> = (0..d)
            .map(|k| SlElement::basis_element(n, k).to_matrix())
            .collect();
        let mut auto = true;
        let mut anti = true;
        for i in 0..d {
            for j in i + 1..d {
                let bracket = &(&basis[i] * &basis[j]) - &(&basis[j] * &basis[i]);
                let coords = SlElement::from_matrix(&bracket).expect("brackets are trace zero");
                let mut lhs = IntMat::zeros(n);
                for (k, c) in coords.coords().iter().enumerate() {
                    if !c.is_zero() {
                        lhs.add_scaled(&images[k], &(c.to_integer() * &denom));
                    }
                }
                let rhs = images[i].commutator(&images[j]);
                if auto && lhs.data != rhs.data {
                    auto = false;
                }
                if anti && !lhs.data.iter().zip(&rhs.data).all(|(a, b)| *a == -b) {
                    anti = false;
                }
                if !auto && !anti {
                    return MorphismKind::Neither;
                }
            }
        }
        if auto {
            MorphismKind::Automorphism
        } else {
            MorphismKind::AntiAutomorphism
        }
    }

    /// Recovers `(sign, twist, A)` for a bracket morphism, solving
    /// `A * L(b) = sign * twist(b) * A` over all basis elements `b`.
    ///
    /// For `n = 2` only the untwisted forms are tried: there every twisted
    /// form equals an untwisted one with a different conjugator.
    pub fn recognize(&self) -> Option<SignedAuto> {
        let kind = self.check_bracket_morphism();
        let candidates: &[(Sign, Twist)] = match (kind, self.n) {
            (MorphismKind::Neither, _) => return None,
            (MorphismKind::Automorphism, 2) => &[(Sign::Plus, Twist::Identity)],
            (MorphismKind::AntiAutomorphism, 2) => &[(Sign::Minus, Twist::Identity)],
            (MorphismKind::Automorphism, _) => &[
                (Sign::Plus, Twist::Identity),
                (Sign::Minus, Twist::Transpose),
            ],
            (MorphismKind::AntiAutomorphism, _) => &[
                (Sign::Minus, Twist::Identity),
                (Sign::Plus, Twist::Transpose),
            ],
        };
        let d = sl::dim(self.n);
        for &(sign, twist) in candidates {
            let pairs: Vec<(Mat, Mat)> = (0..d)
                .map(|k| {
                    let b = SlElement::basis_element(self.n, k).to_matrix();
                    (
                        sign.apply(&twist.apply(&b)),
                        self.image_of_basis(k).to_matrix(),
                    )
                })
                .collect();
            let Ok(kernel) = intertwiner_kernel(&pairs) else {
                continue;
            };
            if let Some(a) = invertible_in_span(&kernel, &SearchBudget::default()) {
                let phi = SignedAuto::new(sign, twist, a).ok()?;
                debug_assert_eq!(phi.induced_matrix(), *self);
                return Some(phi);
            }
        }
        None
    }

    pub fn is_invertible(&self) -> bool {
        self.m.det().is_ok_and(|d| !d.is_zero())
    }
}

impl fmt::Display for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinMap(n = {}, M = {})", self.n, self.m)
    }
}

#[derive(Serialize, Deserialize)]
struct LinMapJson {
    n: usize,
    #[serde(rename = "M")]
    m: Mat,
}

impl Serialize for LinMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LinMapJson {
            n: self.n,
            m: self.m.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = LinMapJson::deserialize(d)?;
        LinMap::new(j.n, j.m).map_err(D::Error::custom)
    }
}

/// Square integer matrix, row-major; only used by the bracket check.
struct IntMat {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    fn zeros(n: usize) -> Self {
        IntMat {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    /// `factor * m`; every entry of `m` must become integral.
    fn scaled(m: &Mat, factor: &BigInt) -> Self {
        let data = m
            .entries()
            .iter()
            .map(|q| {
                let v = q * Rational::from_integer(factor.clone());
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        IntMat { n: m.rows(), data }
    }

    fn add_scaled(&mut self, other: &IntMat, c: &BigInt) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }

    fn mul(&self, other: &IntMat) -> IntMat {
        let n = self.n;
        let mut out = IntMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * &other.data[k * n + j];
                }
            }
        }
        out
    }

    fn commutator(&self, other: &IntMat) -> IntMat {
        let mut out = self.mul(other);
        for (a, b) in out.data.iter_mut().zip(other.mul(self).data) {
            *a -= b;
        }
        out
    }
}

/// Scalar multiple of the identity.
pub fn scalar_map(n: usize, c: &Rational) -> LinMap {
    LinMap::identity(n).scale(c)
}

/// Transposition `X -> X^T` on sl_n.
pub fn transpose_map(n: usize) -> LinMap {
    let d = sl::dim(n);
    let images: Vec<SlElement> = (0..d)
        .map(|k| {
            SlElement::from_matrix(&SlElement::basis_element(n, k).to_matrix().transpose())
                .expect("transpose keeps trace")
        })
        .collect();
    LinMap::from_images(n, &images).expect("consistent sizes")
}
